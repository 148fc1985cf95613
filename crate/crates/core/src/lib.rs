//! Exact arithmetic for deciding which regular n-gons are constructible and
//! for producing explicit nested square-root expressions for cos(2*pi/n).
//!
//! Three independent views of the same numbers cross-check each other:
//!
//! * [`dyadic`] / [`cosine`] — rigorous interval arithmetic with dyadic
//!   endpoints, including certified enclosures of cos(2*pi*k/n);
//! * [`cyclotomic`] — exact integer arithmetic in Z[x]/Phi_p(x), the
//!   symbolic oracle for period identities;
//! * [`tower`] — exact arithmetic in chains of quadratic extensions of Q,
//!   verifying each synthesized value against its defining quadratic.
//!
//! On top sit the decision procedure ([`constructible`]), the
//! Gaussian-period machinery ([`periods`]), nested-radical expression trees
//! ([`radical`]) and executable non-constructibility witnesses
//! ([`witness`]).

pub mod constructible;
pub mod cosine;
pub mod cyclotomic;
pub mod dyadic;
pub mod modular;
pub mod periods;
pub mod radical;
pub mod rational;
pub mod tower;
pub mod witness;

pub use constructible::{euler_phi, is_constructible, Obstruction, Verdict};
pub use cosine::cos_two_pi;
pub use cyclotomic::CycloElement;
pub use dyadic::{Dyadic, DyadicInterval};
pub use modular::{
    egcd, factorize, is_fermat_prime, is_prime, mod_pow, primitive_root, Factorization,
};
pub use periods::{
    build_period_tree, synthesize_cos, synthesize_full, synthesize_radical, BitString,
    LinearCombination, PeriodError, PeriodNode, PeriodTree, Synthesis,
};
pub use radical::{parse_sexpr, EvalError, Format, ParseError, RadicalExpr};
pub use rational::BigRational;
pub use tower::{embed_synthesis, EmbedReport, Embedding, TowerContext, TowerElement, TowerError};
pub use witness::{cyclotomic_poly, IntPolynomial, WitnessError};
