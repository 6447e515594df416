//! Symmetric group characters and the Möller transform.
//!
//! Characters follow the Murnaghan–Nakayama rule. Border strips are found
//! in two independent ways: through beta-numbers (fast, used by the
//! recursive rule) and by walking the cells of candidate skew shapes (used
//! for the direct sum over border strip tableaux). Heights count rows
//! spanned minus one.

mod character;
mod moller;
mod strips;

pub use character::{character, character_bst, skew_character, z_factor, MAX_CHARACTER_SIZE};
pub use moller::{
    hook_moment_moller, hook_moment_quadratic, hook_moment_strips, moller, u_function,
    x_function, Block, X_SIZE_LIMIT,
};
pub use strips::{
    border_strip_tableaux, border_strip_tableaux_within, border_strips, border_strips_geometric, BorderStripRecord, SkewShape,
    BST_SIZE_LIMIT,
};
