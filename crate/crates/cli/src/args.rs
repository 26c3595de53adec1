use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hessloci", version, about = "Exact Hessian computations for projective hypersurfaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the JSON report here (`-` for standard output).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,

    /// Number of variables; inferred from the form when omitted.
    #[arg(long, global = true)]
    pub nvars: Option<usize>,

    /// The form, e.g. `x0^3 + x1^3 - 2*x0*x1*x2`.
    #[arg(long = "f", global = true)]
    pub f: Option<String>,

    /// Read the form from a file.
    #[arg(long = "f-file", global = true, conflicts_with = "f")]
    pub f_file: Option<PathBuf>,

    /// Expected degree of the form; checked when given.
    #[arg(long = "d", global = true)]
    pub degree: Option<u32>,
}

/// A linear subspace, given by points spanning it or forms cutting it out.
#[derive(Args, Debug, Clone)]
pub struct SpaceArg {
    /// Spanning points separated by `;`, e.g. `[1:0:0];[0:1:0]`.
    #[arg(long, conflicts_with = "cut")]
    pub span: Option<String>,

    /// Linear forms separated by `,`, e.g. `x2, x4`.
    #[arg(long)]
    pub cut: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hessian matrix of the form.
    Hess,
    /// Determinant of the Hessian matrix.
    Hesspoly,
    /// Rank of the Hessian matrix at a point.
    RankAt {
        #[arg(long)]
        point: String,
    },
    /// Kernel of the Hessian matrix at a point, as a linear space.
    Kernel {
        #[arg(long)]
        point: String,
    },
    /// Whether the Hessian has rank at most k at a point.
    InDk {
        #[arg(long)]
        point: String,
        #[arg(long)]
        k: usize,
    },
    /// Whether a linear space lies in D_k, with a minor as witness otherwise.
    SpaceInDk {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        k: usize,
    },
    /// Points whose Hessian kernel contains a linear space.
    KernelPreimage {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Whether the Hessian kernel is the same space at every point of a source space.
    ConstantKernel {
        #[command(flatten)]
        space: SpaceArg,
        /// Points spanning the expected kernel.
        #[arg(long = "target-span", conflicts_with = "target_cut")]
        target_span: Option<String>,
        /// Forms cutting out the expected kernel.
        #[arg(long = "target-cut")]
        target_cut: Option<String>,
    },
    /// Smoothness of V(f).
    Smooth,
    /// Vertex of V(g) for `--f g`, if it is a cone; `--of-hessian` tests V(h_f).
    Cone {
        #[arg(long)]
        of_hessian: bool,
    },
    /// Hilbert function of the Jacobian ring.
    Hilbert,
    /// Membership of a target in the Jacobian ideal, with certificate.
    Member {
        #[arg(long)]
        target: String,
    },
    /// One-dimensional top degree of the Jacobian ring and non-membership of h_f.
    Socle,
    /// Certificates for x_i d_j h_f - (d-2) delta_ij h_f in the Jacobian ideal.
    Thmd,
    /// Rank strata over prime fields.
    #[command(subcommand)]
    Strata(StrataCommand),
    /// Generators and verifiers for special families.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Recover a rank-six cubic from its third-derivative tensor.
    Reconstruct {
        /// JSON tensor file: `{"field", "size", "entries"}`.
        #[arg(long)]
        tensor: PathBuf,
        /// Normal vector, comma separated.
        #[arg(long)]
        a: String,
    },
    /// Compare the Hessians of two forms up to a scalar.
    HessianEqual {
        #[arg(long = "g")]
        g: String,
    },
    /// Run the registered checks and fold them into one report.
    VerifyPaper {
        /// Run only these check ids (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
        /// List the registered checks and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Full,
    Sample,
}

#[derive(Args, Debug, Clone)]
pub struct StratumArg {
    /// `k` for D_k, or `sing` for the singular locus of V(h_f).
    #[arg(long, default_value = "sing")]
    pub stratum: String,
}

#[derive(Subcommand, Debug)]
pub enum StrataCommand {
    /// Enumerate or sample the points of a stratum over F_p.
    Enum {
        #[command(flatten)]
        stratum: StratumArg,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "full")]
        mode: ModeArg,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Dimension estimate from two primes.
    Dim {
        #[command(flatten)]
        stratum: StratumArg,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        prime2: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// Direct sum of two forms in disjoint variables.
    Ts {
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        /// Run the random-split falsifier on the sum with this many trials.
        #[arg(long, default_value_t = 0)]
        trials: usize,
    },
    /// `x0^3 + f1(x1..)` for `--f f1`.
    Cyclic,
    /// `x_0^3 + ... + x_n^3 + (a_0 x_0 + ... + a_n x_n)^3`.
    Waring {
        /// Normal vector, comma separated.
        #[arg(long)]
        a: String,
        /// Check the closed forms (and the configuration, for five entries).
        #[arg(long)]
        verify: bool,
    },
    /// Random smooth member of the plane-carrying linear system.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
        /// Falsifier trials for the two-lines check when n = 4.
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// `sum alpha_k x_k^3 + lambda L x_4^2` and its Hessian minor.
    Step2 {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        a: String,
    },
}
