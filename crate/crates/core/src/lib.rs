//! Sum complexes over prime fields: construction, homology in every
//! characteristic, integral torsion, the spectral and group-algebra formulas
//! for the top homology, and uncertainty numbers of subsets of `F_p`.

pub mod complex;
pub mod fields;
pub mod groupalg;
pub mod homology;
pub mod linalg;
pub mod scan;
pub mod spectral;
pub mod subsets;
pub mod uncertainty;
pub mod verify;
