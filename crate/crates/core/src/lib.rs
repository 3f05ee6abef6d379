//! Defining equations of Rees algebras via modified Jacobian dual iterations,
//! with a Buchberger-based oracle for verification.

pub mod bourbaki;
pub mod groebner;
pub mod hypotheses;
pub mod matrix;
pub mod poly;
pub mod rees;
