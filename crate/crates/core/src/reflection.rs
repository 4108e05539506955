//! Groups generated by complex reflections: exact closure enumeration and
//! irreducibility probes.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::algebra::{Cyclotomic, HermitianForm, Matrix, MatrixKey};
use crate::error::{Error, Result};
use crate::vanishing::{reflection_matrix, ComplexReflection};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 20_000;

/// A finitely generated subgroup of the unitary group of a hermitian form.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    form: HermitianForm,
    generators: Vec<Matrix>,
    cap: usize,
}

impl GeneratedGroup {
    pub fn new(form: HermitianForm, generators: Vec<Matrix>, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidInput("cap must be positive".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if !form.preserved_by(g) {
                return Err(Error::NotUnitaryGenerator(i));
            }
        }
        Ok(GeneratedGroup {
            form,
            generators,
            cap,
        })
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Smallest field containing the form and every generator.
    pub fn field_order(&self) -> u32 {
        self.generators
            .iter()
            .map(Matrix::field_order)
            .fold(self.form.gram().field_order(), num_integer::lcm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "count")]
pub enum ClosureStatus {
    Finite(usize),
    ExceedsCap(usize),
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub status: ClosureStatus,
    /// Canonical keys of every enumerated element.
    pub element_hashes: HashSet<MatrixKey>,
    /// The enumerated elements, identity first.
    pub elements: Vec<Matrix>,
    /// Field in which all elements were expressed.
    pub field_order: u32,
}

impl ClosureResult {
    pub fn order(&self) -> Option<usize> {
        match self.status {
            ClosureStatus::Finite(n) => Some(n),
            ClosureStatus::ExceedsCap(_) => None,
        }
    }
}

/// Breadth-first closure under left multiplication by the generators and
/// their inverses.
pub fn group_closure(g: &GeneratedGroup) -> Result<ClosureResult> {
    for (i, m) in g.generators.iter().enumerate() {
        if !g.form.preserved_by(m) {
            return Err(Error::NotUnitaryGenerator(i));
        }
    }
    let order = g.field_order();
    let dim = g.form.dim();
    let mut steps = Vec::new();
    for m in &g.generators {
        steps.push(m.embed(order));
        steps.push(m.inverse()?.embed(order));
    }
    let id = Matrix::identity(dim).embed(order);
    let mut seen = HashSet::new();
    seen.insert(id.key_at(order));
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(ix) = queue.pop_front() {
        for s in &steps {
            let y = s * &elements[ix];
            if seen.insert(y.key_at(order)) {
                elements.push(y);
                if elements.len() > g.cap {
                    return Ok(ClosureResult {
                        status: ClosureStatus::ExceedsCap(elements.len()),
                        element_hashes: seen,
                        elements,
                        field_order: order,
                    });
                }
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(ClosureResult {
        status: ClosureStatus::Finite(elements.len()),
        element_hashes: seen,
        elements,
        field_order: order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "count")]
pub enum DichotomyOutcome {
    FiniteWitness(usize),
    GrowthEvidence(usize),
}

/// Closure of two reflections with eigenvalue `λ` on a rank-two form with
/// `h(δ_i, δ_i) = ε` and `h(δ_1, δ_2) = h12`. `ε` is `−1` only for a
/// negative definite form.
pub fn dichotomy_probe(
    lambda: &Cyclotomic,
    h12: &Cyclotomic,
    signature: (usize, usize),
    cap: usize,
) -> Result<DichotomyOutcome> {
    match lambda.root_order() {
        None => {
            return Err(Error::InvalidInput(format!(
                "{} is not a root of unity",
                lambda
            )))
        }
        Some(1) | Some(2) => {
            return Err(Error::InvalidInput("eigenvalue must not be ±1".into()));
        }
        _ => {}
    }
    if signature.0 + signature.1 != 2 {
        return Err(Error::BadSignature(format!(
            "signature {:?} does not have rank two",
            signature
        )));
    }
    let eps = if signature == (0, 2) { -1 } else { 1 };
    let e = Cyclotomic::from_int(eps);
    // h(δ1, δ2) = δ2ᴴ G δ1 = G[1][0]
    let gram = Matrix::from_rows(vec![vec![e.clone(), h12.conj()], vec![h12.clone(), e]]);
    let form = HermitianForm::new(gram)?;
    let sig = form.signature();
    if (sig.positive, sig.negative) != signature || sig.radical != 0 {
        return Err(Error::BadSignature(format!(
            "form has signature ({}, {}) with radical {}, requested {:?}",
            sig.positive, sig.negative, sig.radical, signature
        )));
    }
    let one = Cyclotomic::one();
    let zero = Cyclotomic::zero();
    let gens = [vec![one.clone(), zero.clone()], vec![zero, one]]
        .into_iter()
        .map(|d| ComplexReflection::new(lambda.clone(), d, eps as i32, form.clone()))
        .map(|r| r.map(|r| reflection_matrix(&r)))
        .collect::<Result<Vec<_>>>()?;
    let closure = group_closure(&GeneratedGroup::new(form, gens, cap)?)?;
    Ok(match closure.status {
        ClosureStatus::Finite(n) => DichotomyOutcome::FiniteWitness(n),
        ClosureStatus::ExceedsCap(n) => DichotomyOutcome::GrowthEvidence(n),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceOutcome {
    Irreducible,
    InvariantSubspace(Vec<Vec<Cyclotomic>>),
}

fn rank_of(vectors: &[Vec<Cyclotomic>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_rows(vectors.to_vec()).rank()
    }
}

/// Smallest subspace containing `seed` and stable under every generator.
fn invariant_span(seed: Vec<Cyclotomic>, gens: &[Matrix]) -> Vec<Vec<Cyclotomic>> {
    let mut basis = vec![seed];
    let mut next = 0;
    while next < basis.len() {
        let v = basis[next].clone();
        next += 1;
        for t in gens {
            let w = t.apply(&v);
            basis.push(w);
            if rank_of(&basis) < basis.len() {
                basis.pop();
            }
        }
    }
    basis
}

/// Looks for a proper subspace stable under all generators: the span of the
/// orbit of each root `(T − I)x`, then the common fixed space.
pub fn invariant_subspace_probe(g: &GeneratedGroup) -> Result<SubspaceOutcome> {
    let dim = g.form.dim();
    let id = Matrix::identity(dim);
    let mut moved = Vec::new();
    for t in &g.generators {
        let d = t - &id;
        let mut cols: Vec<Vec<Cyclotomic>> = Vec::new();
        for j in 0..dim {
            let c = d.col(j);
            if c.iter().all(Cyclotomic::is_zero) {
                continue;
            }
            cols.push(c);
            if rank_of(&cols) < cols.len() {
                cols.pop();
            }
        }
        moved.extend(cols);
    }
    for root in moved.iter() {
        let span = invariant_span(root.clone(), &g.generators);
        if span.len() < dim {
            return Ok(SubspaceOutcome::InvariantSubspace(span));
        }
    }
    if !g.generators.is_empty() {
        let rows: Vec<Vec<Cyclotomic>> = g
            .generators
            .iter()
            .flat_map(|t| (t - &id).to_rows())
            .collect();
        let fixed = Matrix::from_rows(rows).kernel();
        if !fixed.is_empty() && fixed.len() < dim {
            return Ok(SubspaceOutcome::InvariantSubspace(fixed));
        }
    } else if dim > 1 {
        let mut e = vec![Cyclotomic::zero(); dim];
        e[0] = Cyclotomic::one();
        return Ok(SubspaceOutcome::InvariantSubspace(vec![e]));
    }
    Ok(SubspaceOutcome::Irreducible)
}
