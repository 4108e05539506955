//! Weighted graded polynomial rings and their Jacobian quotients.
//!
//! Graded pieces are handled one degree at a time. Monomial ideals are
//! treated by divisibility; general homogeneous ideals by exact row
//! reduction of the span of `monomial · generator` in each degree.

mod echelon;
mod polynomial;
mod quotient;

pub use echelon::SparseEchelon;
pub use polynomial::{Monomial, Polynomial};
pub use quotient::{
    graded_dim_linear, graded_dim_monomial, jacobian_graded_dim, macaulay_check,
    multiplication_map, torelli_witness, GradedPiece,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial ring with positive integer weights on its variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedRingDesc {
    weights: Vec<u32>,
}

impl WeightedRingDesc {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput(
                "ring needs at least one variable".into(),
            ));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidInput(
                "variable weights must be positive".into(),
            ));
        }
        Ok(WeightedRingDesc { weights })
    }

    /// All variables of weight one.
    pub fn standard(nvars: usize) -> Self {
        assert!(nvars > 0);
        WeightedRingDesc {
            weights: vec![1; nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
}

/// Homogeneous ideal in a weighted ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdealDesc {
    ring: WeightedRingDesc,
    generators: Vec<Polynomial>,
    degrees: Vec<u32>,
    monomial_fast_path: bool,
}

impl GradedIdealDesc {
    pub fn new(ring: WeightedRingDesc, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        let mut degrees = Vec::new();
        for g in generators {
            if g.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "generator in {} variables, ring has {}",
                    g.nvars(),
                    ring.nvars()
                )));
            }
            if g.is_zero() {
                continue;
            }
            let deg = g.homogeneous_degree(&ring).ok_or_else(|| {
                Error::InvalidInput(format!("generator {} is not homogeneous", g))
            })?;
            gens.push(g);
            degrees.push(deg);
        }
        let monomial_fast_path = gens.iter().all(|g| g.as_monomial().is_some());
        Ok(GradedIdealDesc {
            ring,
            generators: gens,
            degrees,
            monomial_fast_path,
        })
    }

    /// Ideal of partial derivatives of a homogeneous polynomial.
    pub fn jacobian(ring: WeightedRingDesc, p: &Polynomial) -> Result<Self> {
        if p.nvars() != ring.nvars() {
            return Err(Error::DimensionMismatch(
                "polynomial and ring disagree".into(),
            ));
        }
        let gens = (0..ring.nvars()).map(|i| p.derivative(i)).collect();
        Self::new(ring, gens)
    }

    /// Jacobian ideal `(x_i^{d-1})` of the Fermat polynomial of degree `d`.
    pub fn fermat(d: u32, nvars: usize) -> Self {
        assert!(d >= 2 && nvars > 0);
        Self::jacobian(
            WeightedRingDesc::standard(nvars),
            &Polynomial::fermat(d, nvars),
        )
        .expect("Fermat Jacobian is homogeneous")
    }

    /// Same generators, forced through the linear-algebra path.
    pub fn without_fast_path(&self) -> Self {
        GradedIdealDesc {
            monomial_fast_path: false,
            ..self.clone()
        }
    }

    pub fn ring(&self) -> &WeightedRingDesc {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn generator_degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn monomial_fast_path(&self) -> bool {
        self.monomial_fast_path
    }

    /// Leading monomials of a monomial ideal.
    fn monomial_generators(&self) -> Option<Vec<&Monomial>> {
        self.generators.iter().map(|g| g.as_monomial()).collect()
    }

    /// Membership of a monomial, only meaningful for monomial ideals.
    pub fn contains_monomial(&self, m: &Monomial) -> Option<bool> {
        let gens = self.monomial_generators()?;
        Some(gens.iter().any(|g| g.divides(m)))
    }
}

/// Top degree `nvars·(d-2)` of the Fermat Jacobian ring.
pub fn fermat_socle_degree(d: u32, nvars: usize) -> u32 {
    nvars as u32 * (d - 2)
}

/// All monomials of the given weighted degree, in descending lexicographic
/// order of exponent vectors (`x_0^a` first).
pub fn monomial_basis(ring: &WeightedRingDesc, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    enumerate(ring.weights(), degree, &mut |e| {
        out.push(Monomial::new(e.to_vec()));
        true
    });
    out
}

/// Walks monomials of a given degree in descending lex order. The callback
/// returns whether to continue.
pub(crate) fn enumerate(weights: &[u32], degree: u32, f: &mut dyn FnMut(&[u32]) -> bool) {
    let mut cur = vec![0u32; weights.len()];
    rec(weights, 0, degree, &mut cur, f, &|_, _| true);
}

/// Same walk with a pruning predicate on partial exponent vectors.
/// `keep(prefix_len, exps)` is asked after each variable is fixed.
pub(crate) fn enumerate_pruned(
    weights: &[u32],
    degree: u32,
    keep: &dyn Fn(usize, &[u32]) -> bool,
    f: &mut dyn FnMut(&[u32]) -> bool,
) {
    let mut cur = vec![0u32; weights.len()];
    rec(weights, 0, degree, &mut cur, f, keep);
}

fn rec(
    weights: &[u32],
    i: usize,
    left: u32,
    cur: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]) -> bool,
    keep: &dyn Fn(usize, &[u32]) -> bool,
) -> bool {
    let w = weights[i];
    if i + 1 == weights.len() {
        if !left.is_multiple_of(w) {
            return true;
        }
        cur[i] = left / w;
        let go = !keep(i + 1, cur) || f(cur);
        cur[i] = 0;
        return go;
    }
    let mut e = left / w;
    loop {
        cur[i] = e;
        if keep(i + 1, cur) && !rec(weights, i + 1, left - e * w, cur, f, keep) {
            cur[i] = 0;
            return false;
        }
        if e == 0 {
            break;
        }
        e -= 1;
    }
    cur[i] = 0;
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(v: &[Monomial]) -> Vec<Vec<u32>> {
        v.iter().map(|m| m.exponents.clone()).collect()
    }

    #[test]
    fn basis_in_two_variables() {
        let b = monomial_basis(&WeightedRingDesc::standard(2), 2);
        assert_eq!(exps(&b), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn basis_with_a_heavy_variable() {
        let r = WeightedRingDesc::new(vec![1, 1, 2]).unwrap();
        let b = monomial_basis(&r, 2);
        assert_eq!(
            exps(&b),
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![0, 0, 1]]
        );
        assert_eq!(monomial_basis(&r, 1).len(), 2);
    }

    #[test]
    fn degree_zero_is_constant() {
        let r = WeightedRingDesc::new(vec![3, 1, 2]).unwrap();
        assert_eq!(exps(&monomial_basis(&r, 0)), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn basis_counts_match_binomials() {
        // C(a + m - 1, m - 1)
        let r = WeightedRingDesc::standard(4);
        assert_eq!(monomial_basis(&r, 3).len(), 20);
        assert_eq!(monomial_basis(&r, 5).len(), 56);
    }

    #[test]
    fn fermat_ideal_uses_fast_path() {
        let j = GradedIdealDesc::fermat(4, 3);
        assert!(j.monomial_fast_path());
        assert_eq!(j.generator_degrees(), &[3, 3, 3]);
        assert!(!j.without_fast_path().monomial_fast_path());
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let r = WeightedRingDesc::standard(2);
        let p = Polynomial::monomial(Monomial::new(vec![1, 0]))
            .add(&Polynomial::monomial(Monomial::new(vec![1, 1])));
        assert!(GradedIdealDesc::new(r, vec![p]).is_err());
    }
}
