//! Characteristic and standard imsets, family vectors, and the maps between them.

mod family;
mod imsets;
mod json;
mod maps;
mod matrix;

pub use family::{
    all_families, family_at, family_count, family_index, family_vector, FamilyEntry,
    FamilyExponent, FamilyVector, FamilyVectorJson,
};
pub use imsets::{
    char_from_std, char_imset, imset_equivalent, skeleton_from_char, std_from_char, std_imset,
    subsets_by_size, CharImset, StdImset,
};
pub use json::{render_char, render_std, render_table, Imset, ImsetEntry, ImsetJson, ImsetKind};
pub use maps::{phi_apply, phi_matrix, psi_apply, psi_matrix, MATRIX_MAX_NODES};
pub use matrix::{IntMatrix, Label};
