//! Local monodromy: Picard–Lefschetz transformations, complex reflections,
//! the vanishing lattice of `y^k = t`, suspension and joins.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{real_sign, Cyclotomic, HermitianForm, Matrix, Rational};
use crate::error::{Error, Result};

/// The reflection `x ↦ x + ε(λ − 1) h(x, δ) δ`, with `h(δ, δ) = ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReflection {
    lambda: Cyclotomic,
    delta: Vec<Cyclotomic>,
    epsilon: i32,
    form: HermitianForm,
}

impl ComplexReflection {
    pub fn new(
        lambda: Cyclotomic,
        delta: Vec<Cyclotomic>,
        epsilon: i32,
        form: HermitianForm,
    ) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::InvalidInput(format!(
                "epsilon must be ±1, got {}",
                epsilon
            )));
        }
        match lambda.root_order() {
            Some(1) => return Err(Error::InvalidInput("eigenvalue must differ from 1".into())),
            None => {
                return Err(Error::InvalidInput(format!(
                    "{} is not a root of unity",
                    lambda
                )))
            }
            _ => {}
        }
        if delta.len() != form.dim() {
            return Err(Error::DimensionMismatch(format!(
                "root has length {}, form has dimension {}",
                delta.len(),
                form.dim()
            )));
        }
        let h = form.eval(&delta, &delta);
        if h != Cyclotomic::from_int(epsilon as i64) {
            return Err(Error::NonUnitConditioning {
                found: h.to_string(),
                expected: epsilon,
            });
        }
        Ok(ComplexReflection {
            lambda,
            delta,
            epsilon,
            form,
        })
    }

    pub fn lambda(&self) -> &Cyclotomic {
        &self.lambda
    }

    pub fn delta(&self) -> &[Cyclotomic] {
        &self.delta
    }

    pub fn epsilon(&self) -> i32 {
        self.epsilon
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    /// Multiplicative order of the eigenvalue.
    pub fn order(&self) -> u32 {
        self.lambda.root_order().expect("validated root of unity")
    }
}

/// Matrix of the reflection: `I + ε(λ − 1) δ δᴴ G`.
pub fn reflection_matrix(r: &ComplexReflection) -> Matrix {
    let n = r.delta.len();
    let c = &(&r.lambda - &Cyclotomic::one()) * &Cyclotomic::from_int(r.epsilon as i64);
    let d = Matrix::column(&r.delta);
    let row = &d.conj_transpose() * r.form.gram();
    &Matrix::identity(n) + &(&d * &row).scale(&c)
}

/// Checks `κ⁻¹ s_δ κ = s_{κ⁻¹δ}` for a unitary `κ`.
pub fn reflection_conjugation_check(kappa: &Matrix, r: &ComplexReflection) -> Result<bool> {
    if !r.form.preserved_by(kappa) {
        return Err(Error::NotUnitary);
    }
    let inv = kappa.inverse()?;
    let lhs = &(&inv * &reflection_matrix(r)) * kappa;
    let moved = ComplexReflection::new(
        r.lambda.clone(),
        inv.apply(&r.delta),
        r.epsilon,
        r.form.clone(),
    )?;
    Ok(lhs == reflection_matrix(&moved))
}

fn bilinear(b: &Matrix, x: &[Cyclotomic], y: &[Cyclotomic]) -> Cyclotomic {
    x.iter()
        .zip(b.apply(y))
        .fold(Cyclotomic::zero(), |acc, (xi, by)| &acc + &(xi * &by))
}

/// Picard–Lefschetz transformation of `x` about the vanishing cycle `δ`
/// for the bilinear form `b`. `parity_sign` is `(−1)^n`: for even `n` the
/// form is symmetric and `(δ, δ) = ±2`, for odd `n` it is skew.
pub fn pl_transform(
    x: &[Cyclotomic],
    delta: &[Cyclotomic],
    b: &Matrix,
    parity_sign: i32,
) -> Result<Vec<Cyclotomic>> {
    if x.len() != b.cols() || delta.len() != b.cols() || !b.is_square() {
        return Err(Error::DimensionMismatch("vectors and form disagree".into()));
    }
    let dd = bilinear(b, delta, delta);
    let coeff = match parity_sign {
        1 => {
            let two = Cyclotomic::from_int(2);
            if dd == two {
                Cyclotomic::from_int(-1)
            } else if dd == -&two {
                Cyclotomic::one()
            } else {
                return Err(Error::BadVanishingCycle(dd.to_string()));
            }
        }
        -1 => {
            if !dd.is_zero() {
                return Err(Error::BadVanishingCycle(dd.to_string()));
            }
            Cyclotomic::from_int(-1)
        }
        _ => return Err(Error::InvalidInput("parity sign must be ±1".into())),
    };
    let c = &coeff * &bilinear(b, x, delta);
    Ok(x.iter()
        .zip(delta)
        .map(|(xi, di)| xi + &(&c * di))
        .collect())
}

/// Integral intersection lattice of vanishing cycles of dimension `cycle_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingLattice {
    pub gram: Matrix,
    pub basis_labels: Vec<String>,
    /// Dimension of the vanishing cycles; the gram is symmetric when even.
    pub cycle_dim: u32,
}

impl VanishingLattice {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_symmetric_parity(&self) -> bool {
        self.cycle_dim.is_multiple_of(2)
    }

    fn parity_holds(&self) -> bool {
        let t = self.gram.transpose();
        if self.is_symmetric_parity() {
            t == self.gram
        } else {
            t == -&self.gram
        }
    }
}

/// Lattice of `y^k = t`: the differences `ξ_i − ξ_{i+1}` of the `k` points
/// with `(ξ_i, ξ_j) = δ_ij`.
pub fn a_lattice(k: u32) -> Result<VanishingLattice> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    let k = k as usize;
    let roots: Vec<Vec<i64>> = (0..k - 1)
        .map(|i| {
            let mut v = vec![0i64; k];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect();
    let gram: Vec<Vec<i64>> = roots
        .iter()
        .map(|a| {
            roots
                .iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let gram = Matrix::from_i64(&gram);
    let sig = HermitianForm::new(gram.clone())?.signature();
    if sig.positive != k - 1 {
        return Err(Error::InternalInconsistency(
            "A lattice is not positive definite".into(),
        ));
    }
    Ok(VanishingLattice {
        gram,
        basis_labels: (1..k).map(|i| format!("xi{}-xi{}", i, i + 1)).collect(),
        cycle_dim: 0,
    })
}

/// Action of `ξ_i ↦ ξ_{i+1}` (indices mod `k`) on the difference basis.
pub fn monodromy_cycle_shift(k: u32) -> Result<Matrix> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    let m = k as usize - 1;
    let mut t = Matrix::zero(m, m);
    for j in 0..m {
        if j + 1 < m {
            t.set(j + 1, j, Cyclotomic::one());
        } else {
            for i in 0..m {
                t.set(i, j, Cyclotomic::from_int(-1));
            }
        }
    }
    Ok(t)
}

/// Intersection lattice after adding one square to the singularity.
///
/// From even to odd cycle dimension the diagonal becomes zero and the
/// entries above it change sign; the rest follows from skew-symmetry. From
/// odd to even the entries above the diagonal are kept, the matrix is
/// completed symmetrically and the diagonal becomes the self-intersection
/// `2(−1)^{m/2}` of an `m`-dimensional vanishing sphere.
pub fn suspend_lattice(v: &VanishingLattice) -> Result<VanishingLattice> {
    if !v.gram.is_square() || !v.parity_holds() {
        return Err(Error::NotSymmetric);
    }
    let n = v.dim();
    let m = v.cycle_dim + 1;
    let mut g = Matrix::zero(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let a = v.gram.get(i, j);
            if v.is_symmetric_parity() {
                g.set(i, j, -a);
                g.set(j, i, a.clone());
            } else {
                g.set(i, j, a.clone());
                g.set(j, i, a.clone());
            }
        }
        if !v.is_symmetric_parity() {
            let s = if (m / 2).is_multiple_of(2) { 2 } else { -2 };
            g.set(i, i, Cyclotomic::from_int(s));
        }
    }
    Ok(VanishingLattice {
        gram: g,
        basis_labels: v.basis_labels.clone(),
        cycle_dim: m,
    })
}

/// Monodromy of a join `f ⊕ g`: the tensor product of the two monodromies.
pub fn join_monodromy(tf: &Matrix, tg: &Matrix) -> Matrix {
    tf.kron(tg)
}

/// An eigenvector of the nodal monodromy with its hermitian norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenpair {
    pub lambda: Cyclotomic,
    pub vector: Vec<Cyclotomic>,
    /// `h(v, v)` after any normalization.
    pub h_value: Cyclotomic,
    /// True when `h(v, v)` was scaled to `±1`.
    pub normalized: bool,
}

/// Monodromy of `y^k + x_1² + ⋯ + x_{n+1}² = t` with its eigenvectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalMonodromy {
    pub matrix: Matrix,
    pub lattice: VanishingLattice,
    /// Hermitian form `i^{n+1} Bᵀ` built from the intersection form `B`.
    pub form: HermitianForm,
    pub eigenpairs: Vec<Eigenpair>,
}

/// `σ_0 ⊗ (−1) ⊗ ⋯ ⊗ (−1)` with `n + 1` factors of `−1`.
pub fn nodal_monodromy(k: u32, n: u32) -> Result<NodalMonodromy> {
    let mut t = monodromy_cycle_shift(k)?;
    let minus = Matrix::from_i64(&[vec![-1]]);
    let mut lattice = a_lattice(k)?;
    for _ in 0..=n {
        t = join_monodromy(&t, &minus);
        lattice = suspend_lattice(&lattice)?;
    }

    let field = (2 * k).lcm(&4);
    let scalar = Cyclotomic::i().pow(n as i64 + 1);
    let form = HermitianForm::new(lattice.gram.transpose().scale(&scalar))?;
    if !form.preserved_by(&t) {
        return Err(Error::InternalInconsistency(
            "nodal monodromy is not unitary".into(),
        ));
    }

    let sign = if n % 2 == 1 { 1 } else { -1 };
    let mut eigenpairs = Vec::new();
    for i in 1..k {
        let lambda = &Cyclotomic::root_of_unity(k, i as i64) * &Cyclotomic::from_int(sign);
        let shifted = &t.embed(field) - &Matrix::identity(t.rows()).scale(&lambda);
        let ker = shifted.kernel();
        if ker.len() != 1 {
            return Err(Error::InternalInconsistency(format!(
                "eigenvalue {} has a {}-dimensional eigenspace",
                lambda,
                ker.len()
            )));
        }
        let mut vector = ker.into_iter().next().expect("one kernel vector");
        let mut h_value = form.eval(&vector, &vector);
        let mut normalized = false;
        if let Some(s) = rational_sqrt_abs(&h_value) {
            let c = Cyclotomic::from_rational(s.recip());
            vector = vector.iter().map(|x| x * &c).collect();
            h_value = form.eval(&vector, &vector);
            normalized = true;
        }
        eigenpairs.push(Eigenpair {
            lambda,
            vector,
            h_value,
            normalized,
        });
    }
    Ok(NodalMonodromy {
        matrix: t,
        lattice,
        form,
        eigenpairs,
    })
}

/// `√|h|` when `h` is a nonzero rational square.
fn rational_sqrt_abs(h: &Cyclotomic) -> Option<Rational> {
    let r = h.as_rational()?.abs();
    if r.is_zero() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Sign of `h(v, v)` for an eigenpair.
pub fn eigenpair_sign(e: &Eigenpair) -> Ordering {
    real_sign(&e.h_value)
}
