//! The first Weyl algebra and its relatives.

mod d1;
mod endo;
mod op;
mod text;

pub use d1::D1Op;
pub use endo::{parse_tame_word, word_to_endo, Endo, TameGen};
pub use op::WeylOp;
pub use text::{parse_weyl, weyl_from_json, weyl_from_json_str, weyl_to_json, PARSE_DEGREE_CAP};
