//! Random exact test data shared by the integration targets.

#![allow(dead_code)]

use monodromy::algebra::{Cyclotomic, HermitianForm, Matrix};
use monodromy::vanishing::{reflection_matrix, ComplexReflection};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A nondegenerate form `G = Pᴴ D P` with `D = diag(±1)` and `P` unit upper
/// triangular over `Q(ζ_m)`, together with `P`.
pub struct RandomForm {
    pub order: u32,
    pub diag: Vec<i64>,
    pub p: Matrix,
    pub p_inv: Matrix,
    pub form: HermitianForm,
}

fn small_cyclo(rng: &mut ChaCha8Rng, m: u32) -> Cyclotomic {
    let a = Cyclotomic::from_int(rng.gen_range(-2..=2));
    let b = Cyclotomic::from_int(rng.gen_range(-1..=1));
    &a + &(&b * &Cyclotomic::root_of_unity(m, rng.gen_range(0..m as i64)))
}

pub fn random_form(rng: &mut ChaCha8Rng) -> RandomForm {
    let order = [3u32, 4, 6][rng.gen_range(0..3)];
    let dim = rng.gen_range(2..=4);
    let diag: Vec<i64> = (0..dim)
        .map(|_| if rng.gen_bool(0.7) { 1 } else { -1 })
        .collect();
    let mut p = Matrix::identity(dim);
    for i in 0..dim {
        for j in i + 1..dim {
            p.set(i, j, small_cyclo(rng, order));
        }
    }
    let p_inv = p.inverse().expect("unit triangular");
    let d = Matrix::diagonal(
        &diag
            .iter()
            .map(|&x| Cyclotomic::from_int(x))
            .collect::<Vec<_>>(),
    );
    let gram = &(&p.conj_transpose() * &d) * &p;
    let form = HermitianForm::new(gram).expect("hermitian");
    RandomForm {
        order,
        diag,
        p,
        p_inv,
        form,
    }
}

/// A reflection on the random form: `δ = P⁻¹ (u e_j)` with `|u| = 1`, so
/// `h(δ, δ) = D_jj`.
pub fn random_reflection(rng: &mut ChaCha8Rng, f: &RandomForm) -> ComplexReflection {
    let dim = f.diag.len();
    let j = rng.gen_range(0..dim);
    let mut w = vec![Cyclotomic::zero(); dim];
    w[j] = Cyclotomic::root_of_unity(f.order, rng.gen_range(0..f.order as i64));
    let delta = f.p_inv.apply(&w);
    let lambda = Cyclotomic::root_of_unity(f.order, rng.gen_range(1..f.order as i64));
    ComplexReflection::new(lambda, delta, f.diag[j] as i32, f.form.clone())
        .expect("conditioned root")
}

/// A unitary `κ = P⁻¹ U P · s` with `U` diagonal of roots of unity and `s`
/// a random reflection.
pub fn random_unitary(rng: &mut ChaCha8Rng, f: &RandomForm) -> Matrix {
    let u: Vec<Cyclotomic> = (0..f.diag.len())
        .map(|_| Cyclotomic::root_of_unity(f.order, rng.gen_range(0..f.order as i64)))
        .collect();
    let s = reflection_matrix(&random_reflection(rng, f));
    &(&(&f.p_inv * &Matrix::diagonal(&u)) * &f.p) * &s
}
