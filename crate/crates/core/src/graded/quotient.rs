use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{
    enumerate, enumerate_pruned, fermat_socle_degree, monomial_basis, GradedIdealDesc, Monomial,
    Polynomial, SparseEchelon,
};
use crate::algebra::{Cyclotomic, Matrix, Rational};
use crate::error::{Error, Result};

/// One graded piece `R^a` of a quotient ring with a fixed monomial basis.
///
/// The basis consists of the lexicographically earliest monomials whose
/// classes are independent: for a monomial ideal these are the monomials
/// outside the ideal, in general the non-pivot columns of the echelon form.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    reducer: Reducer,
}

#[derive(Clone, Debug)]
enum Reducer {
    Divisibility(Vec<Monomial>),
    Linear {
        columns: HashMap<Monomial, usize>,
        echelon: SparseEchelon,
        basis_of_column: HashMap<usize, usize>,
    },
}

impl GradedPiece {
    pub fn new(ideal: &GradedIdealDesc, degree: u32) -> Self {
        if ideal.monomial_fast_path() {
            let gens: Vec<Monomial> = ideal
                .generators()
                .iter()
                .map(|g| g.as_monomial().expect("monomial generator").clone())
                .collect();
            let basis = standard_monomials(ideal.ring().weights(), &gens, degree);
            let index = basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            return GradedPiece {
                degree,
                basis,
                index,
                reducer: Reducer::Divisibility(gens),
            };
        }
        let all = monomial_basis(ideal.ring(), degree);
        let columns: HashMap<Monomial, usize> = all
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let echelon = span_in_degree(ideal, degree, &columns);
        let mut basis = Vec::new();
        let mut basis_of_column = HashMap::new();
        for (c, m) in all.into_iter().enumerate() {
            if !echelon.is_pivot(c) {
                basis_of_column.insert(c, basis.len());
                basis.push(m);
            }
        }
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        GradedPiece {
            degree,
            basis,
            index,
            reducer: Reducer::Linear {
                columns,
                echelon,
                basis_of_column,
            },
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Coordinates of the class of `p` in this piece. Terms of other degrees
    /// must not occur.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        match &self.reducer {
            Reducer::Divisibility(_) => {
                for (m, c) in p.terms() {
                    if let Some(&i) = self.index.get(m) {
                        out[i] += c;
                    }
                }
            }
            Reducer::Linear {
                columns,
                echelon,
                basis_of_column,
            } => {
                let row: BTreeMap<usize, Rational> = p
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        (
                            *columns.get(m).expect("term of the wrong degree"),
                            c.clone(),
                        )
                    })
                    .collect();
                for (c, v) in echelon.reduce(row) {
                    out[basis_of_column[&c]] = v;
                }
            }
        }
        out
    }

    /// True when the class of the monomial vanishes.
    pub fn vanishes(&self, m: &Monomial) -> bool {
        match &self.reducer {
            Reducer::Divisibility(gens) => gens.iter().any(|g| g.divides(m)),
            Reducer::Linear { .. } => self
                .coordinates(&Polynomial::monomial(m.clone()))
                .iter()
                .all(|c| c.is_zero()),
        }
    }
}

fn standard_monomials(weights: &[u32], gens: &[Monomial], degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let outside = |_: usize, e: &[u32]| {
        !gens
            .iter()
            .any(|g| g.exponents.iter().zip(e).all(|(a, b)| a <= b))
    };
    enumerate_pruned(weights, degree, &outside, &mut |e| {
        out.push(Monomial::new(e.to_vec()));
        true
    });
    out
}

fn span_in_degree(
    ideal: &GradedIdealDesc,
    degree: u32,
    columns: &HashMap<Monomial, usize>,
) -> SparseEchelon {
    let mut ech = SparseEchelon::new();
    for (g, &dg) in ideal.generators().iter().zip(ideal.generator_degrees()) {
        if dg > degree {
            continue;
        }
        enumerate(ideal.ring().weights(), degree - dg, &mut |e| {
            let m = Monomial::new(e.to_vec());
            let row = g
                .terms()
                .iter()
                .map(|(t, c)| (columns[&t.mul(&m)], c.clone()))
                .collect();
            ech.insert(row);
            ech.rank() < columns.len()
        });
    }
    ech
}

/// `dim R^a` by counting monomials outside a monomial ideal.
pub fn graded_dim_monomial(ideal: &GradedIdealDesc, a: u32) -> Result<usize> {
    if ideal.generators().iter().any(|g| g.as_monomial().is_none()) {
        return Err(Error::InvalidInput(
            "ideal is not generated by monomials".into(),
        ));
    }
    let gens: Vec<Monomial> = ideal
        .generators()
        .iter()
        .map(|g| g.as_monomial().expect("monomial generator").clone())
        .collect();
    let mut count = 0usize;
    let outside = |_: usize, e: &[u32]| {
        !gens
            .iter()
            .any(|g| g.exponents.iter().zip(e).all(|(a, b)| a <= b))
    };
    enumerate_pruned(ideal.ring().weights(), a, &outside, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// `dim R^a` as `#monomials − rank` of the degree-`a` part of the ideal.
pub fn graded_dim_linear(ideal: &GradedIdealDesc, a: u32) -> usize {
    let all = monomial_basis(ideal.ring(), a);
    let columns: HashMap<Monomial, usize> = all
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    all.len() - span_in_degree(ideal, a, &columns).rank()
}

/// `dim R^a` for the quotient by a homogeneous ideal.
pub fn jacobian_graded_dim(ideal: &GradedIdealDesc, a: u32) -> usize {
    if ideal.monomial_fast_path() {
        graded_dim_monomial(ideal, a).expect("fast path ideal is monomial")
    } else {
        graded_dim_linear(ideal, a)
    }
}

/// Perfectness of the pairing `R^a × R^{t-a} → R^t` for the Fermat ring.
pub fn macaulay_check(d: u32, nvars: usize, a: u32) -> Result<bool> {
    if d < 2 || nvars < 2 {
        return Err(Error::InvalidInput(
            "need d >= 2 and at least two variables".into(),
        ));
    }
    let t = fermat_socle_degree(d, nvars);
    if a > t {
        return Err(Error::OutOfRange { degree: a, top: t });
    }
    let ideal = GradedIdealDesc::fermat(d, nvars);
    let top = GradedPiece::new(&ideal, t);
    if top.dim() != 1 {
        return Ok(false);
    }
    let left = GradedPiece::new(&ideal, a);
    let right = GradedPiece::new(&ideal, t - a);
    if left.dim() != right.dim() {
        return Ok(false);
    }
    let mut ech = SparseEchelon::new();
    for u in left.basis() {
        let row = right
            .basis()
            .iter()
            .enumerate()
            .filter_map(|(j, v)| {
                let c = top.coordinates(&Polynomial::monomial(u.mul(v)))[0].clone();
                (!c.is_zero()).then_some((j, c))
            })
            .collect();
        ech.insert(row);
    }
    Ok(ech.rank() == left.dim())
}

/// Matrix of multiplication by `q` from `R^a` to `R^{a + deg q}`, with rows
/// indexed by the target basis and columns by the source basis.
pub fn multiplication_map(ideal: &GradedIdealDesc, q: &Polynomial, a: u32) -> Result<Matrix> {
    if q.nvars() != ideal.ring().nvars() {
        return Err(Error::DimensionMismatch(
            "multiplier has the wrong number of variables".into(),
        ));
    }
    let deg = match q.homogeneous_degree(ideal.ring()) {
        Some(d) => d,
        None if q.is_zero() => 0,
        None => return Err(Error::InvalidInput(format!("{} is not homogeneous", q))),
    };
    let src = GradedPiece::new(ideal, a);
    let tgt = GradedPiece::new(ideal, a + deg);
    let mut m = Matrix::zero(tgt.dim(), src.dim());
    for (j, b) in src.basis().iter().enumerate() {
        for (i, c) in tgt.coordinates(&q.mul_monomial(b)).into_iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, Cyclotomic::from_rational(c));
            }
        }
    }
    Ok(m)
}

/// First monomial pair `(A, Q)` with `deg A = a`, `deg Q = d` and `A`, `Q`,
/// `AQ` all nonzero modulo a monomial ideal, scanning both bases in
/// lexicographic order.
pub fn torelli_witness(
    ideal: &GradedIdealDesc,
    a: u32,
    d: u32,
) -> Result<Option<(Monomial, Monomial)>> {
    if !ideal.monomial_fast_path() {
        return Err(Error::InvalidInput(
            "witness search needs a monomial ideal".into(),
        ));
    }
    let left = GradedPiece::new(ideal, a);
    if left.dim() == 0 {
        return Ok(None);
    }
    let right = GradedPiece::new(ideal, d);
    for u in left.basis() {
        for v in right.basis() {
            if ideal.contains_monomial(&u.mul(v)) == Some(false) {
                return Ok(Some((u.clone(), v.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::graded::WeightedRingDesc;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn fermat_graded_dims() {
        let cubic = GradedIdealDesc::fermat(3, 4);
        assert_eq!(jacobian_graded_dim(&cubic, 2), 6);
        assert_eq!(jacobian_graded_dim(&cubic, 5), 0);
        let quartic = GradedIdealDesc::fermat(4, 4);
        assert_eq!(jacobian_graded_dim(&quartic, 4), 19);
        assert_eq!(jacobian_graded_dim(&quartic, 9), 0);
        assert_eq!(graded_dim_linear(&quartic, 4), 19);
    }

    #[test]
    fn generic_ideal_by_elimination() {
        // (x^2 + y^2, xy) in two variables: R = 1, 2, 1
        let r = WeightedRingDesc::standard(2);
        let f = Polynomial::from_terms(2, [(mono(&[2, 0]), rat(1, 1)), (mono(&[0, 2]), rat(1, 1))]);
        let g = Polynomial::monomial(mono(&[1, 1]));
        let ideal = GradedIdealDesc::new(r, vec![f, g]).unwrap();
        assert!(!ideal.monomial_fast_path());
        let dims: Vec<usize> = (0..4).map(|a| jacobian_graded_dim(&ideal, a)).collect();
        assert_eq!(dims, vec![1, 2, 1, 0]);
        // y^2 ≡ -x^2, so the degree-2 basis is the non-pivot monomial y^2
        let p = GradedPiece::new(&ideal, 2);
        assert_eq!(p.basis(), &[mono(&[0, 2])]);
        assert_eq!(
            p.coordinates(&Polynomial::monomial(mono(&[2, 0]))),
            vec![rat(-1, 1)]
        );
    }

    #[test]
    fn macaulay_examples() {
        assert!(macaulay_check(3, 4, 2).unwrap());
        assert!(macaulay_check(4, 4, 0).unwrap());
        assert!(macaulay_check(3, 5, 1).unwrap());
        assert_eq!(
            macaulay_check(3, 4, 5),
            Err(Error::OutOfRange { degree: 5, top: 4 })
        );
    }

    #[test]
    fn multiplication_by_a_cubic_monomial() {
        let ideal = GradedIdealDesc::fermat(3, 4);
        let q = Polynomial::monomial(mono(&[1, 1, 1, 0]));
        let m = multiplication_map(&ideal, &q, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 4));
        // only x3 survives: x0 x1 x2 x3 is the socle
        assert_eq!(m.get(0, 3), &Cyclotomic::one());
        assert!(m.get(0, 0).is_zero());
        let q = Polynomial::monomial(mono(&[3, 0, 0, 0]));
        assert!(multiplication_map(&ideal, &q, 1).unwrap().is_zero());
    }

    #[test]
    fn witnesses() {
        let cubic = GradedIdealDesc::fermat(3, 4);
        assert_eq!(
            torelli_witness(&cubic, 1, 3).unwrap(),
            Some((mono(&[1, 0, 0, 0]), mono(&[0, 1, 1, 1])))
        );
        assert_eq!(torelli_witness(&cubic, 5, 3).unwrap(), None);
        let quartic = GradedIdealDesc::fermat(4, 3);
        let (a, q) = torelli_witness(&quartic, 2, 4).unwrap().unwrap();
        assert_eq!(a.mul(&q), mono(&[2, 2, 2]));
    }
}
