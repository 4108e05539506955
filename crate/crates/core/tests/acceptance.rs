//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All checks are exact unless a time limit is stated.

mod common;

use std::time::{Duration, Instant};

use monodromy::algebra::{Cyclotomic, HermitianForm};
use monodromy::classify::{classify, product_obstruction, Verdict};
use monodromy::cli::table_rows;
use monodromy::graded::{
    fermat_socle_degree, jacobian_graded_dim, macaulay_check, GradedIdealDesc, Monomial,
};
use monodromy::hodge::{
    betti_paths, eigenspace_signature, hodge_cyclic_eigenspace, hodge_hypersurface, lattice_count,
    primitive_betti, rank_real, signature_primitive, suspension_periodicity_check, CoverSpec,
};
use monodromy::reflection::{
    dichotomy_probe, group_closure, DichotomyOutcome, GeneratedGroup, DEFAULT_CAP,
};
use monodromy::vanishing::{
    a_lattice, nodal_monodromy, reflection_conjugation_check, reflection_matrix, suspend_lattice,
    ComplexReflection,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

const MACAULAY_LIMIT: Duration = Duration::from_secs(60);
const CLOSURE_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_CASES: usize = 200;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn golden_betti() -> Check {
    for (d, n, want) in [
        (3, 3, 10),
        (4, 2, 21),
        (5, 1, 12),
        (3, 1, 2),
        (3, 2, 6),
        (4, 1, 6),
    ] {
        let p = betti_paths(d, n).map_err(err)?;
        ensure(
            p.recursion == want && p.closed_form == want && p.hodge_sum == Some(want as u64),
            || format!("B({}, {}): {:?}, want {}", d, n, p, want),
        )?;
        ensure(primitive_betti(d, n).map_err(err)? == want as u64, || {
            format!("B({}, {})", d, n)
        })?;
    }
    Ok(())
}

fn quartic_surface() -> Check {
    let h = hodge_hypersurface(4, 2).map_err(err)?;
    ensure(h.values == [1, 19, 1], || format!("hodge {:?}", h.values))?;
    let sig = signature_primitive(4, 2).map_err(err)?;
    ensure(sig == (2, 19), || format!("signature {:?}", sig))?;
    let r = rank_real(4, 2).map_err(err)?;
    ensure(r == 2, || format!("real rank {}", r))
}

fn cubic_threefold() -> Check {
    let h = hodge_hypersurface(3, 3).map_err(err)?;
    ensure(h.get(3) == 0 && h.get(2) == 5, || {
        format!("hodge {:?}", h.values)
    })
}

fn triple_cover() -> Check {
    let one = hodge_cyclic_eigenspace(&CoverSpec::new(3, 2, 3, 1).map_err(err)?).map_err(err)?;
    let two = hodge_cyclic_eigenspace(&CoverSpec::new(3, 2, 3, 2).map_err(err)?).map_err(err)?;
    ensure(one.get(2) == 4 && one.get(1) == 1, || {
        format!("i = 1: {:?}", one.values)
    })?;
    ensure(two.get(2) == 1 && two.get(1) == 4, || {
        format!("i = 2: {:?}", two.values)
    })?;
    let sig = eigenspace_signature(&CoverSpec::new(3, 2, 3, 1).map_err(err)?).map_err(err)?;
    ensure(sig == (1, 4), || format!("eigensignature {:?}", sig))?;
    let whole = hodge_hypersurface(3, 3).map_err(err)?;
    for p in 0..=3 {
        ensure(one.get(p) + two.get(p) == whole.get(p), || {
            format!("sum at p = {}", p)
        })?;
    }
    Ok(())
}

fn torelli_witness_cubic_surface() -> Check {
    let rec = classify(3, 2).map_err(err)?;
    let w = rec.witness.ok_or("no witness")?;
    ensure(
        rec.chosen_k == Some(3) && rec.eigen_index == Some(1),
        || format!("cover {:?}", rec.chosen_k),
    )?;
    let socle = Monomial::new(vec![1, 1, 1, 1]);
    let product = w.a.mul(&w.multiplier);
    ensure(product == socle, || {
        format!("{} * {} = {}", w.a, w.multiplier, product)
    })?;
    // the product is the socle of the base Jacobian ring, so nonzero there
    let ideal = GradedIdealDesc::fermat(3, 4);
    ensure(ideal.contains_monomial(&product) == Some(false), || {
        "product lies in the ideal".into()
    })
}

fn macaulay_suite() -> Check {
    let start = Instant::now();
    for d in 2..=5 {
        for nvars in 2..=5usize {
            let ideal = GradedIdealDesc::fermat(d, nvars);
            let t = fermat_socle_degree(d, nvars);
            for a in 0..=t {
                let (x, y) = (
                    jacobian_graded_dim(&ideal, a),
                    jacobian_graded_dim(&ideal, t - a),
                );
                ensure(x == y, || {
                    format!("d = {}, nvars = {}, a = {}: {} vs {}", d, nvars, a, x, y)
                })?;
                ensure(macaulay_check(d, nvars, a).map_err(err)?, || {
                    format!(
                        "pairing degenerate at d = {}, nvars = {}, a = {}",
                        d, nvars, a
                    )
                })?;
            }
        }
    }
    let took = start.elapsed();
    ensure(took < MACAULAY_LIMIT, || format!("took {:?}", took))
}

fn lattice_counts() -> Check {
    for dmax in 1..=4 {
        for nvars in 2..=5 {
            let top = dmax * nvars;
            let counts: Vec<u128> = (0..=top)
                .map(|k| lattice_count(dmax, nvars, k))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            for k in 0..=top as usize {
                ensure(counts[k] == counts[top as usize - k], || {
                    format!("asymmetric at ({}, {}, {})", dmax, nvars, k)
                })?;
            }
            for k in 0..(top as usize / 2) {
                ensure(counts[k] < counts[k + 1], || {
                    format!("not increasing at ({}, {}, {})", dmax, nvars, k)
                })?;
            }
        }
    }
    let c = lattice_count(2, 4, 4).map_err(err)?;
    let h11 = hodge_hypersurface(4, 2).map_err(err)?.get(1);
    ensure(c == 19 && h11 == 19, || {
        format!("lattice count {}, h11 {}", c, h11)
    })
}

fn vanishing_lattices() -> Check {
    for k in 2..=8 {
        let l = a_lattice(k).map_err(err)?;
        let twice = suspend_lattice(&suspend_lattice(&l).map_err(err)?).map_err(err)?;
        ensure(
            twice.gram == l.gram.scale(&Cyclotomic::from_int(-1)),
            || format!("double suspension, k = {}", k),
        )?;
        let det = suspend_lattice(&l).map_err(err)?.gram.determinant();
        let want = if (k - 1) % 2 == 0 { 1 } else { 0 };
        ensure(det == Cyclotomic::from_int(want), || {
            format!("k = {}: determinant {}", k, det)
        })?;
    }
    for k in 2..=6 {
        for n in 0..=4 {
            let m = nodal_monodromy(k, n).map_err(err)?;
            let sign = if n % 2 == 1 { 1 } else { -1 };
            ensure(m.eigenpairs.len() == k as usize - 1, || {
                format!("({}, {}): eigenpair count", k, n)
            })?;
            for (i, e) in (1..k).zip(&m.eigenpairs) {
                let want = &Cyclotomic::root_of_unity(k, i as i64) * &Cyclotomic::from_int(sign);
                let image = m.matrix.apply(&e.vector);
                let scaled: Vec<Cyclotomic> = e.vector.iter().map(|x| x * &want).collect();
                ensure(e.lambda == want && image == scaled, || {
                    format!("({}, {}): eigenvalue {}", k, n, i)
                })?;
            }
        }
    }
    Ok(())
}

fn reflection_randomized() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut failures = 0;
    for _ in 0..RANDOM_CASES {
        let f = common::random_form(&mut rng);
        let r = common::random_reflection(&mut rng, &f);
        if !f.form.preserved_by(&reflection_matrix(&r)) {
            failures += 1;
        }
    }
    for _ in 0..RANDOM_CASES {
        let f = common::random_form(&mut rng);
        let r = common::random_reflection(&mut rng, &f);
        let kappa = common::random_unitary(&mut rng, &f);
        if !reflection_conjugation_check(&kappa, &r).map_err(err)? {
            failures += 1;
        }
    }
    ensure(failures == 0, || format!("{} failures", failures))
}

fn closures() -> Check {
    let start = Instant::now();
    let z3 = Cyclotomic::zeta(3);
    let pair = dichotomy_probe(&z3, &Cyclotomic::zero(), (2, 0), DEFAULT_CAP).map_err(err)?;
    ensure(pair == DichotomyOutcome::FiniteWitness(9), || {
        format!("orthogonal pair: {:?}", pair)
    })?;

    let form = HermitianForm::identity(1);
    let r = ComplexReflection::new(
        Cyclotomic::zeta(6),
        vec![Cyclotomic::one()],
        1,
        form.clone(),
    )
    .map_err(err)?;
    let single = group_closure(
        &GeneratedGroup::new(form, vec![reflection_matrix(&r)], DEFAULT_CAP).map_err(err)?,
    )
    .map_err(err)?;
    ensure(single.order() == Some(6), || {
        format!("single reflection: {:?}", single.status)
    })?;

    let probe = dichotomy_probe(&z3, &Cyclotomic::from_int(2), (1, 1), DEFAULT_CAP).map_err(err)?;
    ensure(
        matches!(probe, DichotomyOutcome::GrowthEvidence(n) if n > DEFAULT_CAP),
        || format!("indefinite probe: {:?}", probe),
    )?;
    let took = start.elapsed();
    ensure(took < CLOSURE_LIMIT, || format!("took {:?}", took))
}

fn classification_table() -> Check {
    let rows = table_rows(6, 4).map_err(err)?;
    ensure(rows.len() == 25, || format!("{} rows", rows.len()))?;
    for r in &rows {
        let large = r.d > 2 && !matches!((r.d, r.n), (3, 0) | (3, 1));
        let is_large = r.verdict == Verdict::KernelLarge;
        ensure(large == is_large, || {
            format!("({}, {}): {}", r.d, r.n, r.verdict.label())
        })?;
        if is_large && r.g_type.real_rank >= 2 {
            ensure(
                r.rank_ok && r.nonisomorphic && r.torelli_witness_found,
                || format!("({}, {}): main path incomplete", r.d, r.n),
            )?;
        }
        match (r.d, r.n) {
            (3, 1) => ensure(r.verdict == Verdict::KernelFinite { order: 27 }, || {
                r.verdict.label()
            })?,
            (3, 0) => ensure(
                matches!(
                    r.verdict,
                    Verdict::ExceptionalCase {
                        phi_order: Some(12),
                        ..
                    }
                ),
                || r.verdict.label(),
            )?,
            _ => {}
        }
    }
    Ok(())
}

fn product_obstruction_cubic() -> Check {
    let o = product_obstruction(3, 3).map_err(err)?;
    ensure(
        o.holds && o.max_order == 6 && o.discriminant_degree == 32,
        || format!("{:?}", o),
    )
}

fn suspension_periodicity() -> Check {
    for two_d in [4, 6] {
        ensure(suspension_periodicity_check(two_d, 2).map_err(err)?, || {
            format!("degree {}", two_d)
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("golden Betti numbers by three paths", golden_betti),
        (
            "quartic surface Hodge numbers, signature, real rank",
            quartic_surface,
        ),
        ("cubic threefold Hodge numbers", cubic_threefold),
        ("triple cover eigenspaces and eigensignature", triple_cover),
        (
            "derivative witness for the cubic surface cover",
            torelli_witness_cubic_surface,
        ),
        ("Macaulay duality for d <= 5, nvars <= 5", macaulay_suite),
        ("lattice count symmetry and unimodality", lattice_counts),
        (
            "vanishing lattice suspension and nodal eigenvalues",
            vanishing_lattices,
        ),
        (
            "reflection unitarity and conjugation, randomized",
            reflection_randomized,
        ),
        ("group closure orders and growth", closures),
        (
            "classification table for d <= 6, n <= 4",
            classification_table,
        ),
        (
            "product obstruction for cubic surfaces",
            product_obstruction_cubic,
        ),
        (
            "suspension periodicity for quartic and sextic curves",
            suspension_periodicity,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS {:>2} {} ({:.2?})", i + 1, name, start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {}: {}", i + 1, name, e);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
