//! Integer polynomials: dense univariate, sparse multivariate, Horner views.

pub mod bounds;
pub mod horner;
pub mod modular;
pub mod multi;
pub mod parse;
pub mod ring;
pub mod sqfree;
pub mod uni;

pub use bounds::{root_bound, separation_bound};
pub use horner::{eval_interval, horner_rewrite, HornerForm};
pub use multi::MultiPoly;
pub use parse::{parse_system, split_input, System};
pub use sqfree::{is_squarefree, squarefree_decompose, squarefree_part, SquarefreeDecomposition};
pub use uni::{gcd_uni, try_gcd_uni, UniPoly};
