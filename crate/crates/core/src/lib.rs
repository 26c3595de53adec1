pub mod claims;
pub mod combin;
pub mod error;
pub mod families;
pub mod field;
pub mod graded;
pub mod hessian;
pub mod linalg;
pub mod poly;
pub mod polymatrix;
pub mod reconstruct;
pub mod report;
pub mod rng;
pub mod space;
pub mod strata;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use hessian::DForm;
pub use linalg::ScalarMatrix;
pub use poly::{parse_poly, LinearChange, Monomial, MultiPoly};
pub use polymatrix::PolyMatrix;
pub use space::{LinearSpace, ProjPoint};
