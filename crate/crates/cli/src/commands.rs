use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Context, Result};
use hessloci::claims::{registry, run_claims};
use hessloci::families::{
    closed_forms_check, gen_cyclic, gen_star, gen_ts, gen_waring_normal, rank6_config, star_two_lines_check,
    step2_family, ts_falsifier, verify_config, verify_star,
};
use hessloci::graded::{hessian_derivative_certificates, hilbert_function, ideal_membership, socle_check};
use hessloci::hessian::cone_check;
use hessloci::reconstruct::{hessian_equality_probe, reconstruct_g, HessianComparison, ThirdTensor};
use hessloci::report::{CheckVerdict, RunReport};
use hessloci::strata::{enumerate_stratum, estimate_stratum_dimension, Mode, Stratum};
use hessloci::DForm;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, FamilyCommand, Global, ModeArg, StrataCommand};
use crate::input;

pub struct Outcome {
    pub report: RunReport,
    pub text: String,
}

fn check(id: &str, claim: &str, passed: bool, detail: impl Serialize) -> CheckVerdict {
    CheckVerdict {
        id: id.to_string(),
        claim: claim.to_string(),
        passed,
        detail: serde_json::to_value(detail).expect("serializes"),
    }
}

fn base(name: &str, g: &Global) -> RunReport {
    let mut r = RunReport::new(name, &g.field, Some(g.seed));
    if let Ok(t) = input::form_text(g) {
        r = r.input("f", t.trim());
    }
    if let Some(n) = g.nvars {
        r = r.input("nvars", n);
    }
    r
}

fn single(mut report: RunReport, v: CheckVerdict, text: String) -> Outcome {
    report.push(v);
    Outcome { report, text }
}

fn stratum(text: &str) -> Result<Stratum> {
    if text.eq_ignore_ascii_case("sing") {
        return Ok(Stratum::HessianSingular);
    }
    let k = text
        .parse::<usize>()
        .with_context(|| format!("stratum must be `sing` or a rank bound, got `{text}`"))?;
    Ok(Stratum::Rank(k))
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cmd: &Command, g: &Global) -> Result<Outcome> {
    let field = input::field(&g.field)?;
    match cmd {
        Command::Hess => {
            let f = input::form(g)?;
            let rows: Vec<Vec<String>> = f
                .hessian()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|e| e.to_text()).collect())
                .collect();
            let mut text = String::new();
            for r in &rows {
                writeln!(text, "[{}]", r.join(", "))?;
            }
            Ok(single(base("hess", g), check("hessian", "Hessian matrix", true, json!({ "rows": rows })), text))
        }
        Command::Hesspoly => {
            let f = input::form(g)?;
            let h = f.hessian_poly().to_text();
            let detail = json!({ "hessian": h, "identically_zero": f.hessian_poly().is_zero() });
            Ok(single(base("hesspoly", g), check("hessian-poly", "determinant of the Hessian", true, detail), h + "\n"))
        }
        Command::RankAt { point } => {
            let f = input::form(g)?;
            let p = input::point(point, field, f.nvars())?;
            let rank = f.rank_at(&p)?;
            let r = base("rank-at", g).input("point", point.as_str());
            Ok(single(r, check("rank", "rank of H_f at the point", true, json!({ "rank": rank })), format!("{rank}\n")))
        }
        Command::Kernel { point } => {
            let f = input::form(g)?;
            let p = input::point(point, field, f.nvars())?;
            let k = f.iota(&p)?;
            let r = base("kernel", g).input("point", point.as_str());
            let text = format!("{k}\n");
            Ok(single(r, check("kernel", "projectivized kernel of H_f", true, json!({ "kernel": k })), text))
        }
        Command::InDk { point, k } => {
            let f = input::form(g)?;
            let p = input::point(point, field, f.nvars())?;
            let rank = f.rank_at(&p)?;
            let inside = rank <= *k;
            let r = base("in-dk", g).input("point", point.as_str()).input("k", *k);
            let text = format!("{} (rank {rank})\n", verdict_word(inside));
            Ok(single(r, check("in-dk", "rank of H_f at most k", inside, json!({ "rank": rank })), text))
        }
        Command::SpaceInDk { space, k } => {
            let f = input::form(g)?;
            let s = input::space(space, field, f.nvars())?;
            let res = f.verify_space_in_dk(&s, *k)?;
            let r = base("space-in-dk", g).input("space", s.to_string()).input("k", *k);
            let mut text = format!("{} (generic rank {})\n", verdict_word(res.contained), res.generic_rank);
            if let Some(w) = &res.witness {
                writeln!(text, "nonzero minor rows {:?} cols {:?}: {}", w.rows, w.cols, w.minor)?;
            }
            Ok(single(r, check("space-in-dk", "space lies in D_k", res.contained, &res), text))
        }
        Command::KernelPreimage { space } => {
            let f = input::form(g)?;
            let s = input::space(space, field, f.nvars())?;
            let res = f.kernel_preimage(&s)?;
            let r = base("kernel-preimage", g).input("space", s.to_string());
            let text = match &res.solutions {
                None => "empty\n".to_string(),
                Some(sol) => format!("{sol}\n"),
            };
            // informational: an empty preimage is a legal outcome
            Ok(single(r, check("kernel-preimage", "points whose kernel contains the space", true, &res), text))
        }
        Command::ConstantKernel {
            space,
            target_span,
            target_cut,
        } => {
            let f = input::form(g)?;
            let l = input::space(space, field, f.nvars())?;
            let t = input::target_space(target_span.as_deref(), target_cut.as_deref(), field, f.nvars())?;
            let res = f.verify_constant_kernel(&l, &t)?;
            let r = base("constant-kernel", g).input("source", l.to_string()).input("target", t.to_string());
            let text = format!("{} ({})\n", verdict_word(res.holds), res.diagnostic);
            Ok(single(r, check("constant-kernel", "kernel is the target along the source", res.holds, &res), text))
        }
        Command::Smooth => {
            let f = input::form(g)?;
            let smooth = f.is_smooth()?;
            let text = format!("{}\n", verdict_word(smooth));
            Ok(single(base("smooth", g), check("smooth", "V(f) is smooth", smooth, json!({ "smooth": smooth })), text))
        }
        Command::Cone { of_hessian } => {
            let f = input::form(g)?;
            let target = if *of_hessian { f.hessian_poly() } else { f.poly() };
            let vertex = cone_check(target)?;
            let text = match &vertex {
                None => "not a cone\n".to_string(),
                Some(v) => format!("cone with vertex {v}\n"),
            };
            let detail = json!({ "polynomial": target.to_text(), "vertex": vertex.map(|v| v.to_string()) });
            let r = base("cone", g).input("of_hessian", *of_hessian);
            Ok(single(r, check("cone", "vertex space of the hypersurface", true, detail), text))
        }
        Command::Hilbert => {
            let f = input::form(g)?;
            let h = hilbert_function(&f);
            let text = format!("{h:?}\n");
            Ok(single(base("hilbert", g), check("hilbert", "Hilbert function of S/J_f", true, json!({ "hilbert": h })), text))
        }
        Command::Member { target } => {
            let f = input::form(g)?;
            let t = input::poly(target, Some(f.nvars()), field)?;
            let cert = ideal_membership(&f, &t)?;
            let verified = cert.verify(&f)?;
            let r = base("member", g).input("target", target.as_str());
            let text = format!("{} (certificate {})\n", verdict_word(cert.is_member()), cert.hash);
            // the verdict is informational; the certificate must re-verify
            Ok(single(r, check("membership", "certificate re-verifies", verified, &cert), text))
        }
        Command::Socle => {
            let f = input::form(g)?;
            let s = socle_check(&f)?;
            let text = format!(
                "socle degree {} dim {}; h_f coefficient {}; {}\n",
                s.socle_degree,
                s.socle_dim,
                s.hessian_coefficient,
                if s.passed { "pass" } else { "fail" }
            );
            Ok(single(base("socle", g), check("socle", "one-dimensional socle generated by h_f", s.passed, &s), text))
        }
        Command::Thmd => {
            let f = input::form(g)?;
            let res = hessian_derivative_certificates(&f)?;
            let all_verified = res
                .certificates
                .iter()
                .map(|c| c.certificate.verify(&f))
                .collect::<hessloci::Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            let passed = res.vacuous || (res.all_members && all_verified);
            let text = if res.vacuous {
                "h_f vanishes identically; nothing to certify\n".to_string()
            } else {
                format!(
                    "{} membership certificates, all members: {}\n",
                    res.certificates.len(),
                    verdict_word(res.all_members)
                )
            };
            Ok(single(
                base("thmd", g),
                check("hessian-derivatives", "x_i d_j h - (d-2) delta_ij h in J_f", passed, &res),
                text,
            ))
        }
        Command::Strata(sc) => strata(sc, g),
        Command::Family(fc) => family(fc, g),
        Command::Reconstruct { tensor, a } => {
            let raw = fs::read_to_string(tensor).with_context(|| format!("reading {}", tensor.display()))?;
            let v: Value = serde_json::from_str(&raw).with_context(|| format!("parsing {}", tensor.display()))?;
            let t = ThirdTensor::from_json(&v)?;
            let av = input::scalars(a, t.field())?;
            let rel = hessloci::reconstruct::validate_relations(&t, &av)?;
            let mut report = base("reconstruct", g).input("tensor", tensor.display().to_string()).input("a", a.as_str());
            report.push(check("relations", "tensor relations for the normal vector", rel.passed(), &rel));
            if !rel.passed() {
                let text = format!("tensor relations fail ({:?})\n", rel.class);
                return Ok(Outcome { report, text });
            }
            let res = reconstruct_g(&t, &av)?;
            let text = format!("g = {}\nlambda = {}\nnormalized = {}\n", res.g, res.lambda, res.normalized);
            report.push(check("reconstruction", "cubic recovered from the tensor", true, &res));
            Ok(Outcome { report, text })
        }
        Command::HessianEqual { g: other } => {
            let f = input::form(g)?;
            let h = DForm::new(input::poly(other, Some(f.nvars()), field)?)?;
            let res = hessian_equality_probe(&f, &h)?;
            let text = match &res {
                HessianComparison::EqualUpToScalar { scalar } => format!("equal up to scalar {scalar}\n"),
                HessianComparison::Different => "different\n".to_string(),
            };
            let r = base("hessian-equal", g).input("g", other.as_str());
            Ok(single(r, check("hessian-equal", "h_f and h_g agree up to a scalar", true, &res), text))
        }
        Command::VerifyPaper { checks, list } => {
            if *list {
                let mut text = String::new();
                let mut report = RunReport::new("verify-paper", &g.field, Some(g.seed)).input("list", true);
                for c in registry() {
                    writeln!(text, "{}  {}", c.id, c.claim)?;
                    report.push(check(c.id, c.claim, true, Value::Null));
                }
                return Ok(Outcome { report, text });
            }
            let report = run_claims(checks, g.seed)?;
            let mut text = String::new();
            for c in &report.checks {
                writeln!(text, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.id)?;
            }
            Ok(Outcome { report, text })
        }
    }
}

fn strata(sc: &StrataCommand, g: &Global) -> Result<Outcome> {
    let f = input::form(g)?;
    match sc {
        StrataCommand::Enum {
            stratum: s,
            prime,
            mode,
            trials,
        } => {
            let st = stratum(&s.stratum)?;
            let m = match mode {
                ModeArg::Full => Mode::Full,
                ModeArg::Sample => Mode::Sampled { trials: *trials },
            };
            let res = enumerate_stratum(&f, *prime, st, m, g.seed)?;
            let mut text = format!("{st} over F_{prime}: {} points\n", res.count);
            for p in res.point_list() {
                writeln!(text, "{p}")?;
            }
            if let Some(w) = &res.warning {
                writeln!(text, "warning: {w}")?;
            }
            let r = base("strata enum", g).input("stratum", s.stratum.as_str()).input("prime", *prime);
            Ok(single(r, check("strata-enum", "points of the stratum over F_p", true, &res), text))
        }
        StrataCommand::Dim { stratum: s, prime, prime2 } => {
            let st = stratum(&s.stratum)?;
            let res = estimate_stratum_dimension(&f, st, [*prime, *prime2], g.seed)?;
            let est = res.estimate.map_or("none".to_string(), |d| d.to_string());
            let text = format!(
                "{st}: dimension estimate {est} ({}); counts {:?}\n",
                res.note,
                res.counts()
            );
            let r = base("strata dim", g)
                .input("stratum", s.stratum.as_str())
                .input("primes", vec![*prime, *prime2]);
            Ok(single(r, check("strata-dim", "two primes agree on the dimension", res.primes_agree, &res), text))
        }
    }
}

fn family(fc: &FamilyCommand, g: &Global) -> Result<Outcome> {
    let field = input::field(&g.field)?;
    match fc {
        FamilyCommand::Ts { f1, f2, trials } => {
            let p1 = input::poly(f1, None, field)?;
            let p2 = input::poly(f2, None, field)?;
            let ts = gen_ts(&p1, &p2)?;
            let mut report = base("family ts", g).input("f1", f1.as_str()).input("f2", f2.as_str());
            report.push(check("split-block", "first block's coordinate space lies in D_{k+1}", ts.block_in_stratum.contained, &ts));
            let mut text = format!("{}\n", ts.f);
            if *trials > 0 {
                let fal = ts_falsifier(ts.poly(), *trials, g.seed)?;
                writeln!(text, "falsifier: split found {:?}", fal.split_found)?;
                // the sum is split by construction, so the falsifier is expected to find it
                report.push(check("falsifier", "random changes recover the split", !fal.passed(), &fal));
            }
            Ok(Outcome { report, text })
        }
        FamilyCommand::Cyclic => {
            let f1 = input::poly(&input::form_text(g)?, g.nvars, field)?;
            let ts = gen_cyclic(&f1)?;
            let text = format!("{}\n", ts.f);
            Ok(single(
                base("family cyclic", g),
                check("split-block", "coordinate point P0 lies in D_1", ts.block_in_stratum.contained, &ts),
                text,
            ))
        }
        FamilyCommand::Waring { a, verify } => {
            let av = input::scalars(a, field)?;
            let w = gen_waring_normal(field, &av)?;
            let mut report = base("family waring", g).input("a", a.as_str());
            let mut text = format!("{}\n", w.poly().to_text());
            if *verify {
                let c = closed_forms_check(&w)?;
                writeln!(text, "closed forms: {} (scalar {})", verdict_word(c.holds()), c.scalar)?;
                report.push(check("closed-forms", "Hessian matrix and determinant in closed form", c.holds(), &c));
                if av.len() == 5 {
                    let f = w.dform()?;
                    let cfg = rank6_config(&w)?;
                    let rep = verify_config(&f, &cfg)?;
                    writeln!(text, "configuration: {}", verdict_word(rep.holds()))?;
                    report.push(check("configuration", "points, lines and planes of the six forms", rep.holds(), &rep));
                }
            } else {
                report.push(check("generated", "normal form built", true, json!({ "f": w.poly().to_text() })));
            }
            Ok(Outcome { report, text })
        }
        FamilyCommand::Star { n, verify, trials } => {
            let s = gen_star(*n, g.seed)?;
            let mut report = base("family star", g).input("n", *n);
            let mut text = format!("{}\n", s.form().poly().to_text());
            if *verify {
                let r = verify_star(&s)?;
                writeln!(text, "plane in Hessian and no preimage: {}", verdict_word(r.holds()))?;
                report.push(check("star", "plane in the Hessian, empty kernel preimage, smooth", r.holds(), &r));
                if *n == 4 {
                    let t = star_two_lines_check(&s, *trials)?;
                    writeln!(text, "two lines: {}", verdict_word(t.holds()))?;
                    report.push(check("two-lines", "minors on the plane meet in two lines", t.holds(), &t));
                }
            } else {
                report.push(check("generated", "smooth member drawn", true, &s));
            }
            Ok(Outcome { report, text })
        }
        FamilyCommand::Step2 { alpha, lambda, a } => {
            let al = input::scalars(alpha, field)?;
            let la = input::scalar(lambda, field)?;
            let av = input::scalars(a, field)?;
            if al.len() != 5 || av.len() != 5 {
                bail!("--alpha and --a need five entries each");
            }
            let (poly, r) = step2_family(&al, &la, &av)?;
            let text = format!("{}\nminor {} (expected {}), rank {}\n", poly.to_text(), r.minor, r.expected, r.rank);
            let rep = base("family step2", g)
                .input("alpha", alpha.as_str())
                .input("lambda", lambda.as_str())
                .input("a", a.as_str());
            Ok(single(rep, check("step2", "Hessian minor matches and rank exceeds two", r.holds(), &r), text))
        }
    }
}
