//! Exact multigraded Hilbert functions of ideals in the coordinate ring of a
//! product of projective spaces, computed from Macaulay-matrix ranks over
//! GF(p), and comparison against the truncated product series expected for
//! generic ideals.

pub mod cli;
pub mod error;
pub mod forms;
pub mod gfp;
pub mod hilbert;
pub mod multidegree;
pub mod series;

pub use error::{Error, Result};
pub use forms::{Form, Generator, IdealFile, IdealSpec};
pub use gfp::{DenseMatrix, FieldElement, PrimeField, DEFAULT_PRIME};
pub use hilbert::{hilbert_function, monomial_ideal_hf, verify, Generation, VerifyParams, VerifyReport};
pub use multidegree::{DegreeBox, Monomial, MultiDegree, Shape};
pub use series::{conjectured_series, free_series, positive_part, subtract_shifted, IntSeries};
