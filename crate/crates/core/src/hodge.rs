//! Hodge numbers, Betti numbers and related counts for Fermat hypersurfaces
//! and their cyclic covers.
//!
//! Every Hodge number is a graded dimension of a Jacobian ring: a residue
//! `A Ω / P^{q+1}` contributes to `F^{w-q}` and `A` ranges over the degree
//! that makes the form homogeneous of degree zero.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{jacobian_graded_dim, GradedIdealDesc, Monomial, Polynomial, WeightedRingDesc};

/// Hodge numbers of one weight, stored from `p = w` down to `p = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeVector {
    pub weight: u32,
    pub values: Vec<u64>,
    pub primitive: bool,
}

impl HodgeVector {
    /// `h^{p, w-p}`, zero outside `0..=w`.
    pub fn get(&self, p: i64) -> u64 {
        if p < 0 || p > self.weight as i64 {
            return 0;
        }
        self.values[(self.weight as i64 - p) as usize]
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.values.iter().eq(self.values.iter().rev())
    }

    /// `(p, q, h^{p,q})` triples from `p = w` down.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(j, &h)| (self.weight - j as u32, j as u32, h))
    }
}

/// A `k`-fold cyclic cover of projective space branched along a degree-`d`
/// hypersurface of dimension `n`, together with the eigenvalue `ζ_k^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverSpec {
    pub d: u32,
    pub n: u32,
    pub k: u32,
    pub i: u32,
}

impl CoverSpec {
    pub fn new(d: u32, n: u32, k: u32, i: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("degree {} is below 2", d)));
        }
        if k < 2 || !d.is_multiple_of(k) {
            return Err(Error::InvalidInput(format!(
                "cover degree {} must be >= 2 and divide {}",
                k, d
            )));
        }
        if i == 0 || i >= k {
            return Err(Error::InvalidInput(format!(
                "eigenvalue index {} outside 1..{}",
                i,
                k - 1
            )));
        }
        Ok(CoverSpec { d, n, k, i })
    }

    /// Whether `ζ_k^i = -1`.
    pub fn is_real(&self) -> bool {
        2 * self.i == self.k
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("degree {} is below 2", d)));
    }
    Ok(())
}

type DimKey = (u32, usize, u32);

fn dim_cache() -> &'static RwLock<HashMap<DimKey, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<DimKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `dim R^a` of the Fermat Jacobian ring of degree `d` in `nvars` variables;
/// zero for negative `a`.
pub fn fermat_dim(d: u32, nvars: usize, a: i64) -> u64 {
    if a < 0 || a > (nvars as i64) * (d as i64 - 2) {
        return 0;
    }
    let key = (d, nvars, a as u32);
    if let Some(&v) = dim_cache().read().unwrap().get(&key) {
        return v;
    }
    let v = jacobian_graded_dim(&GradedIdealDesc::fermat(d, nvars), a as u32) as u64;
    dim_cache().write().unwrap().insert(key, v);
    v
}

/// Euler characteristic of a smooth degree-`d` hypersurface of dimension `n`.
pub fn euler_characteristic(d: u32, n: u32) -> Result<i128> {
    if d < 1 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let d = d as i128;
    let mut chi = d;
    for m in 1..=n as i128 {
        chi = d
            .checked_mul(m + 1)
            .and_then(|a| (1 - d).checked_mul(chi).and_then(|b| a.checked_add(b)))
            .ok_or(Error::Overflow("euler characteristic"))?;
    }
    Ok(chi)
}

fn betti_recursive(d: u32, n: u32) -> Option<i128> {
    let d1 = d as i128 - 1;
    let mut b = d1;
    for m in 1..=n {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        b = d1.checked_mul(b + sign)?;
    }
    Some(b)
}

fn betti_closed(d: u32, n: u32) -> Option<i128> {
    let d = d as i128;
    let p = (d - 1).checked_pow(n)?;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let num = p - sign;
    if num % d != 0 {
        return None;
    }
    p.checked_mul(d - 2)?
        .checked_add(num / d)?
        .checked_add(sign)
}

/// Skip the Hodge-sum cross-check when the Jacobian ring is too large.
const HODGE_CHECK_LIMIT: u128 = 2_000_000;

fn hodge_feasible(d: u32, nvars: u32) -> bool {
    (d as u128 - 1)
        .checked_pow(nvars)
        .is_some_and(|v| v <= HODGE_CHECK_LIMIT)
}

/// Primitive middle Betti number, from the recursion and the closed form,
/// cross-checked against the Hodge numbers when those are cheap.
pub fn primitive_betti(d: u32, n: u32) -> Result<u64> {
    check_degree(d)?;
    let rec = betti_recursive(d, n).ok_or(Error::Overflow("primitive betti"))?;
    let closed = betti_closed(d, n).ok_or(Error::Overflow("primitive betti"))?;
    if rec != closed {
        return Err(Error::InternalInconsistency(format!(
            "betti recursion {} and closed form {} disagree at ({}, {})",
            rec, closed, d, n
        )));
    }
    if hodge_feasible(d, n + 2) {
        let sum = hodge_hypersurface(d, n)?.total() as i128;
        if sum != rec {
            return Err(Error::InternalInconsistency(format!(
                "betti {} but hodge numbers sum to {} at ({}, {})",
                rec, sum, d, n
            )));
        }
    }
    u64::try_from(rec).map_err(|_| Error::Overflow("primitive betti"))
}

/// The three independent Betti computations side by side. `hodge_sum` is
/// `None` when the Jacobian ring is too large to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiPaths {
    pub recursion: i128,
    pub closed_form: i128,
    pub hodge_sum: Option<u64>,
}

pub fn betti_paths(d: u32, n: u32) -> Result<BettiPaths> {
    check_degree(d)?;
    Ok(BettiPaths {
        recursion: betti_recursive(d, n).ok_or(Error::Overflow("primitive betti"))?,
        closed_form: betti_closed(d, n).ok_or(Error::Overflow("primitive betti"))?,
        hodge_sum: if hodge_feasible(d, n + 2) {
            Some(hodge_hypersurface(d, n)?.total())
        } else {
            None
        },
    })
}

/// Primitive Hodge numbers of the degree-`d` Fermat hypersurface of dimension `n`.
pub fn hodge_hypersurface(d: u32, n: u32) -> Result<HodgeVector> {
    check_degree(d)?;
    let nvars = n as usize + 2;
    let values = (0..=n)
        .map(|q| fermat_dim(d, nvars, (q as i64 + 1) * d as i64 - nvars as i64))
        .collect();
    Ok(HodgeVector {
        weight: n,
        values,
        primitive: true,
    })
}

/// Numerator degree for the `ζ_k^i` eigenspace: `(q+1)d − i·d/k − (n+2)`.
pub fn eigenspace_numerator_degree(spec: &CoverSpec, q: u32) -> i64 {
    (q as i64 + 1) * spec.d as i64 - (spec.i * (spec.d / spec.k)) as i64 - (spec.n as i64 + 2)
}

/// Hodge numbers `h^{p,q}(i)` of the `ζ_k^i` eigenspace in the middle
/// cohomology of the cyclic cover, `p + q = n + 1`.
pub fn hodge_cyclic_eigenspace(spec: &CoverSpec) -> Result<HodgeVector> {
    let spec = CoverSpec::new(spec.d, spec.n, spec.k, spec.i)?;
    let nvars = spec.n as usize + 2;
    let values = (0..=spec.n + 1)
        .map(|q| fermat_dim(spec.d, nvars, eigenspace_numerator_degree(&spec, q)))
        .collect();
    Ok(HodgeVector {
        weight: spec.n + 1,
        values,
        primitive: true,
    })
}

/// Whether the `k`-fold cover data agrees with the `d`-fold cover at the
/// eigenvalue index `i·d/k`.
pub fn substitution_isomorphism_check(d: u32, n: u32, k: u32, i: u32) -> Result<bool> {
    let a = hodge_cyclic_eigenspace(&CoverSpec::new(d, n, k, i)?)?;
    let b = hodge_cyclic_eigenspace(&CoverSpec::new(d, n, d, i * (d / k))?)?;
    Ok(a.values == b.values)
}

/// Dimension of one eigenspace of the `d`-fold cover, `B_{d,n+1}/(d−1)`.
pub fn eigenspace_dimension(d: u32, n: u32) -> Result<u64> {
    check_degree(d)?;
    let b = primitive_betti(d, n + 1)?;
    let m = d as u64 - 1;
    if b % m != 0 {
        return Err(Error::InternalInconsistency(format!(
            "B({}, {}) = {} is not divisible by {}",
            d,
            n + 1,
            b,
            m
        )));
    }
    let dim = b / m;
    if hodge_feasible(d, n + 2) {
        for i in 1..d {
            let h = hodge_cyclic_eigenspace(&CoverSpec::new(d, n, d, i)?)?;
            if h.total() != dim {
                return Err(Error::InternalInconsistency(format!(
                    "eigenspace {} of ({}, {}) has dimension {}, expected {}",
                    i,
                    d,
                    n,
                    h.total(),
                    dim
                )));
            }
        }
    }
    Ok(dim)
}

/// `(r, s)`: sums of primitive `h^{p,q}` over even and odd `p`.
pub fn signature_primitive(d: u32, n: u32) -> Result<(u64, u64)> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n as usize));
    }
    let h = hodge_hypersurface(d, n)?;
    Ok(parity_sums(h.entries().map(|(p, _, v)| (p, v))))
}

fn parity_sums(it: impl Iterator<Item = (u32, u64)>) -> (u64, u64) {
    it.fold(
        (0, 0),
        |(e, o), (j, v)| if j % 2 == 0 { (e + v, o) } else { (e, o + v) },
    )
}

/// Signature of the hermitian form on a non-real eigenspace: sums of
/// `h^{p,q}(i)` over even and odd `q`.
pub fn eigenspace_signature(spec: &CoverSpec) -> Result<(u64, u64)> {
    let spec = CoverSpec::new(spec.d, spec.n, spec.k, spec.i)?;
    if spec.is_real() {
        return Err(Error::RealEigenvalue);
    }
    let h = hodge_cyclic_eigenspace(&spec)?;
    Ok(parity_sums(h.entries().map(|(_, q, v)| (q, v))))
}

/// Complex rank of the Zariski closure of the monodromy group.
pub fn rank_complex(d: u32, n: u32) -> Result<u64> {
    Ok(primitive_betti(d, n)? / 2)
}

/// Real rank: half the Betti number for odd `n`, `min(r, s)` for even `n`.
pub fn rank_real(d: u32, n: u32) -> Result<u64> {
    if n % 2 == 1 {
        Ok(primitive_betti(d, n)? / 2)
    } else {
        let (r, s) = signature_primitive(d, n)?;
        Ok(r.min(s))
    }
}

/// First nonzero Hodge number `(p, q, h^{p,q})` of the cubic of dimension `n`.
pub fn first_hodge_cubic(n: u32) -> Result<(u32, u32, u64)> {
    if n < 1 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let k = n / 3;
    let expected = match n % 3 {
        0 => (2 * k, k, n as u64 + 2),
        1 => (2 * k + 1, k, 1),
        _ => (2 * k + 1, k + 1, (n as u64 + 1) * (n as u64 + 2) / 2),
    };
    let h = hodge_hypersurface(3, n)?;
    let found = h.entries().find(|&(_, _, v)| v > 0);
    if found != Some(expected) {
        return Err(Error::InternalInconsistency(format!(
            "cubic of dimension {}: expected first Hodge number {:?}, found {:?}",
            n, expected, found
        )));
    }
    Ok(expected)
}

/// Strict growth in `d` of `h^{p,q}` and strict decrease away from the middle.
pub fn hodge_monotonicity_check(d: u32, n: u32, p: u32) -> Result<bool> {
    check_degree(d)?;
    if p > n {
        return Err(Error::InvalidInput(format!("p = {} exceeds n = {}", p, n)));
    }
    let q = n - p;
    let here = hodge_hypersurface(d, n)?;
    let next = hodge_hypersurface(d + 1, n)?;
    let grows = next.get(p as i64) > here.get(p as i64);
    let peaks = p < q || here.get(p as i64) > here.get(p as i64 + 1);
    Ok(grows && peaks)
}

/// Number of points of `[0, dmax]^nvars` with coordinate sum `k`.
pub fn lattice_count(dmax: u32, nvars: u32, k: u32) -> Result<u128> {
    if nvars == 0 {
        return Err(Error::InvalidInput("need at least one coordinate".into()));
    }
    let top = (dmax as u64 * nvars as u64) as usize;
    if k as usize > top {
        return Ok(0);
    }
    let mut row: Vec<u128> = (0..=top).map(|s| (s <= dmax as usize) as u128).collect();
    for _ in 1..nvars {
        let mut next = vec![0u128; top + 1];
        let mut window = 0u128;
        for s in 0..=top {
            window = window
                .checked_add(row[s])
                .ok_or(Error::Overflow("lattice count"))?;
            if s > dmax as usize {
                window -= row[s - dmax as usize - 1];
            }
            next[s] = window;
        }
        row = next;
    }
    Ok(row[k as usize])
}

/// Compares the primitive Hodge numbers of the degree-`two_d` hypersurface of
/// dimension `n − 1` with those of its double suspension
/// `y1² + y2² + P` in weighted projective space, shifted by `(1, 1)`.
pub fn suspension_periodicity_check(two_d: u32, n: u32) -> Result<bool> {
    if two_d < 2 || two_d % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "degree {} must be even and >= 2",
            two_d
        )));
    }
    if n < 1 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let base = hodge_hypersurface(two_d, n - 1)?;

    let nx = n as usize + 1;
    let half = two_d / 2;
    let mut weights = vec![1; nx];
    weights.extend([half, half]);
    let total_weight: u32 = weights.iter().sum();
    let ring = WeightedRingDesc::new(weights)?;
    let mut p = Polynomial::fermat(two_d, nx + 2);
    for y in [nx, nx + 1] {
        p.add_term(
            Monomial::power(nx + 2, y, two_d),
            -crate::algebra::rat(1, 1),
        );
        p.add_term(Monomial::power(nx + 2, y, 2), crate::algebra::rat(1, 1));
    }
    let ideal = GradedIdealDesc::jacobian(ring, &p)?;
    let w = n + 1;
    let suspended: Vec<u64> = (0..=w)
        .map(|q| {
            let a = (q as i64 + 1) * two_d as i64 - total_weight as i64;
            if a < 0 {
                0
            } else {
                jacobian_graded_dim(&ideal, a as u32) as u64
            }
        })
        .collect();
    let shifted = HodgeVector {
        weight: w,
        values: suspended,
        primitive: true,
    };
    Ok((0..=w as i64).all(|pp| shifted.get(pp) == base.get(pp - 1)))
}
