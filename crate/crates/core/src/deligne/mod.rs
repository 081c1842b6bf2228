//! Discrete Čech–Deligne cochains over the nerve of a finite cover,
//! optionally realized on a triangulated complex.

pub mod cochain;
pub mod cohomology;
pub mod complex;
pub mod nerve;
pub mod equivariant;
pub mod module_data;
pub mod random;

pub use cochain::{DeligneCochain, Realization, Scalar};
pub use cohomology::{
    cech_cohomology, dd_class, dd_class_of, solve_coboundary, solve_trivialization, torsion_generators, DdClass,
    Obstruction, Trivialization, TrivializationOutcome,
};
pub use complex::{BoundaryEmbedding, CoveredComplex};
pub use nerve::{CoverNerve, Orientation};
pub use equivariant::{check_equivariant_data, check_jandl_data, GroupActionOnCover, Involution};
pub use module_data::{check_module_data, CMatrix, ModuleData};
