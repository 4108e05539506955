//! Decision procedure for the monodromy kernel of the universal family of
//! degree-`d` hypersurfaces of dimension `n`.
//!
//! The kernel of the natural representation is certified large when a
//! second, cyclic-cover representation has a Zariski-dense image (witnessed
//! by a nonzero derivative of the period map), the natural group has real
//! rank at least two, and the two groups are not locally isomorphic.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{torelli_witness, GradedIdealDesc, Monomial};
use crate::hodge::{
    eigenspace_numerator_degree, eigenspace_signature, hodge_cyclic_eigenspace, hodge_hypersurface,
    primitive_betti, rank_complex, rank_real, signature_primitive, CoverSpec, HodgeVector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum RealForm {
    /// `sp(2ℓ, R)`.
    SplitSymplectic { dim: u64 },
    /// `so(r, s)`.
    Orthogonal { r: u64, s: u64 },
    /// `su(p, q)`.
    Unitary { p: u64, q: u64 },
}

/// A simple real Lie algebra by its complex Cartan type and real form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LieType {
    pub family: Family,
    pub rank: u64,
    pub real_form: RealForm,
    pub real_rank: u64,
}

impl LieType {
    fn symplectic(dim: u64) -> Self {
        LieType {
            family: Family::C,
            rank: dim / 2,
            real_form: RealForm::SplitSymplectic { dim },
            real_rank: dim / 2,
        }
    }

    fn orthogonal(r: u64, s: u64) -> Self {
        let m = r + s;
        LieType {
            family: if m % 2 == 1 { Family::B } else { Family::D },
            rank: m / 2,
            real_form: RealForm::Orthogonal { r, s },
            real_rank: r.min(s),
        }
    }

    fn unitary(p: u64, q: u64) -> Self {
        LieType {
            family: Family::A,
            rank: (p + q).saturating_sub(1),
            real_form: RealForm::Unitary { p, q },
            real_rank: p.min(q),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}:", self.family, self.rank)?;
        match self.real_form {
            RealForm::SplitSymplectic { dim } => write!(f, "sp({})", dim),
            RealForm::Orthogonal { r, s } => write!(f, "so({},{})", r, s),
            RealForm::Unitary { p, q } => write!(f, "su({},{})", p, q),
        }
    }
}

/// Complexified type up to the low-rank coincidences.
#[derive(Debug, PartialEq, Eq)]
enum Canonical {
    Simple(Family, u64),
    /// `D2 = A1 × A1`.
    D2,
    /// Abelian or trivial.
    Degenerate(Family, u64),
}

fn canonical(t: &LieType) -> Canonical {
    use Family::*;
    match (t.family, t.rank) {
        (_, 0) | (D, 1) => Canonical::Degenerate(t.family, t.rank),
        (A | B | C, 1) => Canonical::Simple(A, 1),
        (B | C, 2) => Canonical::Simple(B, 2),
        (A | D, 3) => Canonical::Simple(A, 3),
        (D, 2) => Canonical::D2,
        (fam, r) => Canonical::Simple(fam, r),
    }
}

/// Whether two types have isomorphic complexifications.
pub fn locally_isomorphic(t1: &LieType, t2: &LieType) -> bool {
    canonical(t1) == canonical(t2)
}

/// Zariski closure of the natural monodromy group: symplectic for odd `n`,
/// orthogonal of the primitive signature for even `n`.
pub fn group_type_natural(d: u32, n: u32) -> Result<LieType> {
    if n % 2 == 1 {
        Ok(LieType::symplectic(primitive_betti(d, n)?))
    } else {
        let (r, s) = signature_primitive(d, n)?;
        Ok(LieType::orthogonal(r, s))
    }
}

/// Zariski closure of the monodromy on the `ζ_k^i` eigenspace of the cover.
pub fn group_type_cover(d: u32, n: u32, k: u32, i: u32) -> Result<LieType> {
    let spec = CoverSpec::new(d, n, k, i)?;
    if !spec.is_real() {
        let (p, q) = eigenspace_signature(&spec)?;
        return Ok(LieType::unitary(p, q));
    }
    let h = hodge_cyclic_eigenspace(&spec)?;
    if (n + 1) % 2 == 1 {
        Ok(LieType::symplectic(h.total()))
    } else {
        let (r, s) = h.entries().fold(
            (0, 0),
            |(e, o), (p, _, v)| if p % 2 == 0 { (e + v, o) } else { (e, o + v) },
        );
        Ok(LieType::orthogonal(r, s))
    }
}

/// Degree `(n+2)(d−1)^{n+1}` of the discriminant hypersurface.
pub fn discriminant_degree(d: u32, n: u32) -> Result<u128> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("degree {} is below 2", d)));
    }
    (d as u128 - 1)
        .checked_pow(n + 1)
        .and_then(|p| p.checked_mul(n as u128 + 2))
        .ok_or(Error::Overflow("discriminant degree"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProductObstruction {
    pub holds: bool,
    /// Largest element order in the relevant quotient, `2k`.
    pub max_order: u128,
    /// Order of a meridian image, the discriminant degree for surfaces.
    pub discriminant_degree: u128,
}

/// For surfaces (`n = 2`) with `d` odd and `k | d`: whether `2k < 4(d−1)³`.
pub fn product_obstruction(d: u32, k: u32) -> Result<ProductObstruction> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k = {} must be at least 2", k)));
    }
    if d < 2 || !d.is_multiple_of(k) {
        return Err(Error::InvalidInput(format!(
            "k = {} does not divide d = {}",
            k, d
        )));
    }
    if d.is_multiple_of(2) {
        return Err(Error::ScopeError(format!("d = {} is even", d)));
    }
    let deg = discriminant_degree(d, 2)?;
    let max_order = 2 * k as u128;
    Ok(ProductObstruction {
        holds: max_order < deg,
        max_order,
        discriminant_degree: deg,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    KernelLarge,
    KernelFinite {
        order: u64,
    },
    PhiFinite,
    ExceptionalCase {
        description: String,
        phi_order: Option<u64>,
    },
}

impl Verdict {
    pub fn label(&self) -> String {
        match self {
            Verdict::KernelLarge => "KernelLarge".into(),
            Verdict::KernelFinite { order } => format!("KernelFinite({})", order),
            Verdict::PhiFinite => "PhiFinite".into(),
            Verdict::ExceptionalCase {
                phi_order: Some(o), ..
            } => format!("ExceptionalCase({})", o),
            Verdict::ExceptionalCase { .. } => "ExceptionalCase".into(),
        }
    }
}

/// Derivative witness `A·Q ≠ 0` in the Jacobian ring for one Hodge level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub q: u32,
    pub degree: u32,
    pub a: Monomial,
    pub multiplier: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub d: u32,
    pub n: u32,
    pub betti: u64,
    pub hodge: HodgeVector,
    pub signature: Option<(u64, u64)>,
    pub rank_real: u64,
    pub rank_complex: u64,
    pub g_type: LieType,
    pub chosen_k: Option<u32>,
    pub eigen_index: Option<u32>,
    pub eigen_hodge: Option<HodgeVector>,
    pub gprime_type: Option<LieType>,
    pub witness: Option<Witness>,
    pub torelli_witness_found: bool,
    pub rank_ok: bool,
    pub nonisomorphic: bool,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

/// Cover degree: double covers for even `d` except `(4, 1)`, else `d`.
pub fn choose_cover_degree(d: u32, n: u32) -> u32 {
    if d.is_multiple_of(2) && (d, n) != (4, 1) {
        2
    } else {
        d
    }
}

/// First eigenspace of dimension above one with a derivative witness.
fn find_witness(d: u32, n: u32, k: u32) -> Result<Option<(u32, HodgeVector, Witness)>> {
    let ideal = GradedIdealDesc::fermat(d, n as usize + 2);
    let first = if k == d && n == 0 { 2 } else { 1 };
    let last = if k == 2 { 1 } else { k - 1 };
    for i in first..=last {
        let spec = CoverSpec::new(d, n, k, i)?;
        let h = hodge_cyclic_eigenspace(&spec)?;
        if h.total() <= 1 {
            continue;
        }
        for q in 0..=n + 1 {
            let a = eigenspace_numerator_degree(&spec, q);
            if a < 0 {
                continue;
            }
            if let Some((am, qm)) = torelli_witness(&ideal, a as u32, d)? {
                let w = Witness {
                    q,
                    degree: a as u32,
                    a: am,
                    multiplier: qm,
                };
                return Ok(Some((i, h, w)));
            }
        }
    }
    Ok(None)
}

/// Runs the full witness chain for `(d, n)`.
pub fn classify(d: u32, n: u32) -> Result<ClassificationRecord> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("degree {} is below 2", d)));
    }
    let betti = primitive_betti(d, n)?;
    let hodge = hodge_hypersurface(d, n)?;
    let signature = if n.is_multiple_of(2) {
        Some(signature_primitive(d, n)?)
    } else {
        None
    };
    let g_type = group_type_natural(d, n)?;
    let mut rec = ClassificationRecord {
        d,
        n,
        betti,
        hodge,
        signature,
        rank_real: rank_real(d, n)?,
        rank_complex: rank_complex(d, n)?,
        g_type,
        chosen_k: None,
        eigen_index: None,
        eigen_hodge: None,
        gprime_type: None,
        witness: None,
        torelli_witness_found: false,
        rank_ok: g_type.real_rank >= 2,
        nonisomorphic: false,
        verdict: Verdict::PhiFinite,
        reasons: vec![format!("natural group {}", g_type)],
    };

    if d <= 2 {
        rec.reasons
            .push("quadric: the monodromy group is finite cyclic".into());
        return Ok(rec);
    }
    if (d, n) == (3, 0) {
        rec.verdict = Verdict::ExceptionalCase {
            description: "three points on the line: the monodromy group has order 12".into(),
            phi_order: Some(12),
        };
        rec.reasons
            .push("known exception: finite monodromy group of order 12".into());
        return Ok(rec);
    }
    if (d, n) == (3, 1) {
        rec.verdict = Verdict::KernelFinite { order: 27 };
        rec.reasons
            .push("known exception: plane cubics, kernel of order 27".into());
        return Ok(rec);
    }

    let k = choose_cover_degree(d, n);
    rec.chosen_k = Some(k);
    rec.reasons.push(format!("cyclic cover of degree {}", k));
    if let Some((i, h, w)) = find_witness(d, n, k)? {
        let gp = group_type_cover(d, n, k, i)?;
        rec.reasons.push(format!(
            "eigenspace {} carries {}; derivative witness {} * {} at level q = {}",
            i, gp, w.a, w.multiplier, w.q
        ));
        rec.eigen_index = Some(i);
        rec.eigen_hodge = Some(h);
        rec.gprime_type = Some(gp);
        rec.witness = Some(w);
        rec.torelli_witness_found = true;
        rec.nonisomorphic = !locally_isomorphic(&g_type, &gp);
    } else {
        rec.reasons.push("no derivative witness found".into());
    }
    rec.reasons.push(
        "density: nonzero period-map derivative plus irreducible discriminant (taken as given, not recomputed)"
            .into(),
    );

    let gp_noncompact = rec.gprime_type.is_some_and(|t| t.real_rank >= 1);
    if !rec.rank_ok {
        rec.reasons.push(format!(
            "natural group has real rank {}: finite or compact image, kernel detected through the cover alone",
            g_type.real_rank
        ));
        rec.verdict = if rec.torelli_witness_found && gp_noncompact {
            Verdict::KernelLarge
        } else {
            Verdict::ExceptionalCase {
                description: "cover representation does not certify an infinite image".into(),
                phi_order: None,
            }
        };
        return Ok(rec);
    }
    if rec.torelli_witness_found && rec.nonisomorphic {
        rec.reasons
            .push("lattice in a real-rank >= 2 group with non-isomorphic second image".into());
        rec.reasons
            .push("arithmeticity of the second image is not checked".into());
        rec.verdict = Verdict::KernelLarge;
    } else {
        rec.verdict = Verdict::ExceptionalCase {
            description: "witness chain incomplete".into(),
            phi_order: None,
        };
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_types() {
        let t = group_type_natural(3, 3).unwrap();
        assert_eq!((t.family, t.rank, t.real_rank), (Family::C, 5, 5));
        let t = group_type_natural(4, 2).unwrap();
        assert_eq!((t.family, t.rank, t.real_rank), (Family::B, 10, 2));
        assert_eq!(t.real_form, RealForm::Orthogonal { r: 2, s: 19 });
        let t = group_type_natural(3, 2).unwrap();
        assert_eq!(
            (t.real_form, t.real_rank),
            (RealForm::Orthogonal { r: 0, s: 6 }, 0)
        );
    }

    #[test]
    fn cover_types() {
        let t = group_type_cover(3, 2, 3, 1).unwrap();
        assert_eq!((t.family, t.rank, t.real_rank), (Family::A, 4, 1));
        assert_eq!(t.to_string(), "A4:su(1,4)");
        assert_eq!(group_type_cover(4, 2, 2, 1).unwrap().family, Family::C);
        let t = group_type_cover(6, 1, 2, 1).unwrap();
        assert!(matches!(t.real_form, RealForm::Orthogonal { .. }));
    }

    #[test]
    fn coincidences() {
        let b2 = LieType::orthogonal(2, 3);
        let c2 = LieType::symplectic(4);
        let a3 = LieType::unitary(2, 2);
        let d3 = LieType::orthogonal(3, 3);
        assert!(locally_isomorphic(&b2, &c2));
        assert!(locally_isomorphic(&a3, &d3));
        assert!(!locally_isomorphic(
            &LieType::symplectic(10),
            &LieType::unitary(1, 4)
        ));
        assert!(!locally_isomorphic(
            &LieType::orthogonal(2, 2),
            &LieType::unitary(1, 1)
        ));
    }

    #[test]
    fn discriminant_and_obstruction() {
        assert_eq!(discriminant_degree(3, 2).unwrap(), 32);
        assert_eq!(discriminant_degree(4, 2).unwrap(), 108);
        assert_eq!(discriminant_degree(2, 0).unwrap(), 2);
        let o = product_obstruction(3, 3).unwrap();
        assert!(o.holds);
        assert_eq!((o.max_order, o.discriminant_degree), (6, 32));
        assert!(product_obstruction(5, 5).unwrap().holds);
        assert!(product_obstruction(3, 1).is_err());
        assert!(matches!(
            product_obstruction(4, 2),
            Err(Error::ScopeError(_))
        ));
    }

    #[test]
    fn pinned_rows() {
        let r = classify(3, 2).unwrap();
        assert_eq!(r.verdict, Verdict::KernelLarge);
        assert!(!r.rank_ok);
        assert_eq!(r.gprime_type.unwrap().to_string(), "A4:su(1,4)");
        let w = r.witness.unwrap();
        assert_eq!(w.a.mul(&w.multiplier), Monomial::new(vec![1, 1, 1, 1]));

        let r = classify(4, 2).unwrap();
        assert_eq!(r.verdict, Verdict::KernelLarge);
        assert_eq!(r.chosen_k, Some(2));
        assert_eq!(r.gprime_type.unwrap().family, Family::C);
        assert!(r.rank_ok && r.nonisomorphic);

        assert_eq!(
            classify(3, 1).unwrap().verdict,
            Verdict::KernelFinite { order: 27 }
        );
        for (d, n, k) in [(5, 1, 5), (3, 3, 3), (4, 1, 4)] {
            let r = classify(d, n).unwrap();
            assert_eq!(r.verdict, Verdict::KernelLarge, "({}, {})", d, n);
            assert_eq!(r.chosen_k, Some(k));
            assert!(r.torelli_witness_found);
        }
        assert_eq!(
            classify(4, 1).unwrap().gprime_type.unwrap().to_string(),
            "A6:su(1,6)"
        );
        assert_eq!(
            classify(3, 3).unwrap().gprime_type.unwrap().to_string(),
            "A10:su(10,1)"
        );
    }
}
