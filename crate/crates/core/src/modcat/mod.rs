//! Module categories over `Vect[K]`: internal homs computed grade by grade, the
//! cotensoring, the algebra `IHom(p, p)` and reconstruction of modules from it.
//!
//! Right `B`-module objects form a left `C`-module category (`c` acts on the left
//! factor); left `A`-module objects form a right one. Both variants of the internal
//! hom are provided; the algebra and reconstruction work on the right-module side.

mod ihom;
mod ostrik;

pub use ihom::{cotensor, AdjunctionReport, CotensorReport, InternalHom};
pub use ostrik::{
    generator_check, ostrik_algebra, projectivity_probe, ComparisonReport, GeneratorReport, OstrikAlgebra, Reconstruction,
};
