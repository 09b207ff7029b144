//! Parametrized germs over S = {0} union {1/n}: evaluation, composition,
//! sign selection, a comparison oracle, and the stability obstruction
//! harness.

mod compare;
mod expr;
#[allow(clippy::module_inception)]
mod germ;
mod obstruct;
mod parse;
mod signs;
mod witness;

pub use compare::{germ_compare, reduce_germ_word, GermWord};
pub use expr::{parse_expr, Expr};
pub use germ::{
    compose_param_germ, eval_param_germ, invert_param_germ, is_s_value, s_value, ParamGerm,
};
pub use obstruct::{stability_obstruction, word_germ, ObstructionReport, ObstructionVerdict};
pub use parse::{germs_to_text, parse_germ_file};
pub use signs::{
    composite_expr, diagonal_sequence, select_signs, FailedWord, GermOrderTranscript, TierRecord,
    VerificationRecord, WitnessPoint,
};
pub use witness::{find_nontriviality_witness, shell_s_values, shell_x_values, WitnessOutcome};
