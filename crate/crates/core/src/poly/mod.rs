//! Exact polynomial arithmetic over Q and Z/p.

mod field;
mod monomial;
mod parse;
mod polynomial;
mod vars;

pub use field::{Field, FieldElem, MAX_PRIME};
pub use monomial::{cmp_grevlex, BiDegree, BiGrade, Exp, Monomial, OrderKind, TermOrder};
pub use parse::{parse_poly, print_poly};
pub use polynomial::Poly;
pub use vars::{Block, Ring, VarSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{0} is not a supported prime modulus")]
    BadModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the x-block and the T-block must each have at least one variable")]
    EmptyBlock,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },
}
