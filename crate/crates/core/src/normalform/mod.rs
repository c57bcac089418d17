//! Graded elements of the completed ring, normalisation of differential operators,
//! Schur operators and normal forms.

mod change;
mod condition;
mod graded;
mod schur;

pub use change::{endo_operator, is_normalized, normalize, reversion, VariableChange};
pub use condition::{condition_aq, is_regular, is_regular_d1, symbol_regularity, AqWitness, Regularity};
pub use graded::GradedOp;
pub use schur::{normal_form, schur, tail_report, SchurData, TailReport};
