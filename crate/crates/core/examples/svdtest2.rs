use kacalg::{CMat, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for trial in 0..2000 {
        let n = 2 + (trial % 3);
        // random rank-deficient complex matrix: outer product
        let a = CMat::from_fn(n, 1, |_, _| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let b = CMat::from_fn(1, n, |_, _| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let m = &a * &b;
        let svd_full = m.clone().svd(true, true);
        let svd_part = m.clone().svd(true, false);
        let uf = svd_full.u.as_ref().unwrap().column(0).clone_owned();
        let up = svd_part.u.as_ref().unwrap().column(0).clone_owned();
        // compare the projections they span
        let pf = &uf * uf.adjoint();
        let pp = &up * up.adjoint();
        let d = (&pf - &pp).norm();
        if d > worst {
            worst = d;
            if d > 1e-8 {
                println!("trial {trial} (n={n}): projection mismatch {d:.3e}");
                println!("  sv full: {:?}", svd_full.singular_values.as_slice());
                println!("  sv part: {:?}", svd_part.singular_values.as_slice());
            }
        }
    }
    println!("worst u-projection mismatch between svd(true,true) and svd(true,false): {worst:.3e}");
}
