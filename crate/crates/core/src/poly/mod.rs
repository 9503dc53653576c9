//! Graded polynomial rings, free modules over them, and Groebner bases.

pub mod groebner;
pub mod hilbert;
pub mod monomial;
pub mod polynomial;
pub mod ring;

pub use groebner::{buchberger, buchberger_module, lift, minimal_generators_and_syzygies, syzygy_module, GroebnerBasis, MinimalSyzygies};
pub use hilbert::{krull_dim, HilbertSeries};
pub use monomial::{Monomial, MAX_VARS};
pub use polynomial::{render_monomial, ModuleElement, Polynomial};
pub use ring::{GradedRing, ModuleOrder, ModuleOrderKind, MonomialOrder};
