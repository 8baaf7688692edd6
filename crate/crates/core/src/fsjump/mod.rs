//! Jump graphings over finite base spaces.
//!
//! A point of the jump is an eventually periodic sequence of ids of a
//! [`FinSpace`]; two sequences are equivalent when they meet the same
//! blocks. Everything here is decided exactly.

pub mod borel;
pub mod descent;
pub mod jump;
pub mod space;

pub use borel::{
    borel_jump_adjacent, borel_jump_path, borel_tilde, product_adjacent_seq, product_path,
    BorelJumpGraph,
};
pub use descent::{arrange_descents, g_eval, in_c, pair_distinct_form, pairs_distinct, Descents};
pub use jump::{
    claim1_construct, claim1_rearrange, claim2_midpoint, h1, h2, h2_bound, h2_upto, h_adjacent,
    h_edge, jump_equiv, jump_path, Claim1, JumpGraph,
};
pub use space::{fmt_dist, Dist, FinSpace};
