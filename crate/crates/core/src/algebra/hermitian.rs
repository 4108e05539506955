use std::cmp::Ordering;

use super::real_sign::real_sign;
use super::{Cyclotomic, Matrix};
use crate::error::{Error, Result};

/// A hermitian form `h(x, y) = yᴴ G x`, linear in `x` and conjugate-linear in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    gram: Matrix,
}

/// Inertia of a hermitian form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub radical: usize,
}

impl Signature {
    pub fn pair(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical == 0
    }
}

impl HermitianForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch(
                "gram matrix must be square".into(),
            ));
        }
        if gram != gram.conj_transpose() {
            return Err(Error::InvalidInput("gram matrix is not hermitian".into()));
        }
        Ok(HermitianForm { gram })
    }

    /// Like [`HermitianForm::new`] but also rejects degenerate forms.
    pub fn new_nondegenerate(gram: Matrix) -> Result<Self> {
        let f = Self::new(gram)?;
        if f.gram.determinant().is_zero() {
            return Err(Error::DegenerateForm {
                radical: f.gram.cols() - f.gram.rank(),
            });
        }
        Ok(f)
    }

    pub fn identity(dim: usize) -> Self {
        HermitianForm {
            gram: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Cyclotomic {
        let gx = self.gram.apply(x);
        y.iter().zip(&gx).fold(Cyclotomic::zero(), |acc, (yi, gi)| {
            &acc + &(&yi.conj() * gi)
        })
    }

    /// True when `Tᴴ G T = G`.
    pub fn preserved_by(&self, t: &Matrix) -> bool {
        t.rows() == self.dim()
            && t.cols() == self.dim()
            && &(&t.conj_transpose() * &self.gram) * t == self.gram
    }

    /// Same form under the congruence `G ↦ Pᴴ G P`.
    pub fn congruent(&self, p: &Matrix) -> Self {
        HermitianForm {
            gram: &(&p.conj_transpose() * &self.gram) * p,
        }
    }

    pub fn signature(&self) -> Signature {
        hermitian_signature(self)
    }
}

/// Inertia by exact congruence diagonalization.
///
/// Nonzero diagonal pivots are eliminated directly and contribute the sign
/// of the pivot. When the remaining block has zero diagonal but a nonzero
/// entry `b` at `(i, j)`, the hyperbolic pair `[[0, b], [b̄, 0]]` is split off
/// and contributes `(+1, -1)`.
pub fn hermitian_signature(h: &HermitianForm) -> Signature {
    let n = h.dim();
    let mut a = h.gram.to_rows();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0usize, 0usize);

    while !active.is_empty() {
        if let Some(pi) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.swap_remove(pi);
            let piv = a[p][p].clone();
            match real_sign(&piv) {
                Ordering::Greater => pos += 1,
                Ordering::Less => neg += 1,
                Ordering::Equal => unreachable!(),
            }
            let inv = piv.inv().expect("nonzero pivot");
            // Schur complement: a[r][c] -= a[r][p] a[p][p]^{-1} a[p][c]
            let col: Vec<Cyclotomic> = active.iter().map(|&r| &a[r][p] * &inv).collect();
            for (ri, &r) in active.iter().enumerate() {
                if col[ri].is_zero() {
                    continue;
                }
                for &c in &active {
                    let v = &a[r][c] - &(&col[ri] * &a[p][c]);
                    a[r][c] = v;
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(ii, &i)| {
            active[ii + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            break;
        };
        active.retain(|&x| x != i && x != j);
        pos += 1;
        neg += 1;
        let b = a[i][j].clone();
        let b_inv = b.inv().expect("nonzero");
        let bc_inv = b.conj().inv().expect("nonzero");
        // Schur complement of the block [[0, b], [b̄, 0]]
        let coef: Vec<(Cyclotomic, Cyclotomic)> = active
            .iter()
            .map(|&r| (&a[r][j] * &b_inv, &a[r][i] * &bc_inv))
            .collect();
        for (ri, &r) in active.iter().enumerate() {
            let (alpha, beta) = &coef[ri];
            if alpha.is_zero() && beta.is_zero() {
                continue;
            }
            for &c in &active {
                let v = &(&a[r][c] - &(alpha * &a[i][c])) - &(beta * &a[j][c]);
                a[r][c] = v;
            }
        }
    }
    Signature {
        positive: pos,
        negative: neg,
        radical: n - pos - neg,
    }
}
