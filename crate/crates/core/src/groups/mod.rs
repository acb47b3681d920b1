//! Group classes with computable invariants and checks of the hypotheses
//! (well-definedness, surjectivity, torsion image) the closed forms need.

mod abelian;
mod free;
mod stallings;
mod surface;

pub use abelian::{
    check_well_defined, is_epimorphism_abelian, normalize_presentation, normalize_with_basis,
    reduce_matrix, smith_normal_number, torsion_image_is_nonzero, AbelianHom, FgAbelianGroup,
    NormalizedPresentation,
};
pub use free::{fold, is_surjective_free, FreeGroup, FreeHom, Word};
pub use stallings::{Edge, StallingsGraph};
pub use surface::{SurfaceClassification, SurfaceHom};
