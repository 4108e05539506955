//! Exact scalar and linear algebra over `Q` and cyclotomic fields.

pub mod cyclotomic;
pub mod hermitian;
pub mod matrix;
pub mod real_sign;

pub use cyclotomic::{common_order, Cyclotomic};
pub use hermitian::{hermitian_signature, HermitianForm, Signature};
pub use matrix::{exact_rank, Matrix, MatrixKey};
pub use real_sign::real_sign;

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Which field operation [`cyclotomic_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Mul,
    /// Conjugates the first operand.
    Conj,
    /// Re-expresses the first operand in the field of the second operand's order.
    Embed,
}

/// Single entry point for the scalar operations.
pub fn cyclotomic_arith(a: &Cyclotomic, b: &Cyclotomic, op: CycloOp) -> Cyclotomic {
    match op {
        CycloOp::Add => a + b,
        CycloOp::Mul => a * b,
        CycloOp::Conj => a.conj(),
        CycloOp::Embed => {
            let target = num_integer::Integer::lcm(&a.order(), &b.order());
            a.embed(target)
        }
    }
}
