use kacalg::biproj::{enumerate_biprojections, enumerate_right_shifts, DEFAULT_DIMENSION_CAP};
use kacalg::builders::{group_algebra, GroupTable};
use kacalg::dual::build_dual;
use kacalg::fourier::convolve_in;
use kacalg::ToleranceConfig;

#[test]
fn failing_combo_details() {
    let tol = ToleranceConfig::default();
    let t = GroupTable::s3();
    let k = group_algebra(&t, &tol).unwrap();
    let pair = build_dual(&k, &tol).unwrap();
    let n = t.order;
    let lambda = match &k.provenance {
        kacalg::algebra::Provenance::GroupAlgebra { lambda, .. } => lambda.clone(),
        _ => panic!(),
    };
    let mut basis_change = kacalg::CMat::zeros(n, n);
    for (g, col) in lambda.iter().enumerate() {
        basis_change.set_column(g, col);
    }
    let to_lambda = basis_change.clone().full_piv_lu().try_inverse().unwrap();
    let fmt = |v: &kacalg::CVec| -> Vec<String> {
        v.iter()
            .map(|z| format!("{:.4}{:+.4}i", z.re, z.im))
            .collect()
    };

    let bips = enumerate_biprojections(&pair, &[], &tol, DEFAULT_DIMENSION_CAP).unwrap();
    let b = &bips[3];
    let shifts = enumerate_right_shifts(&pair, b, &tol).unwrap();
    let bg = &shifts[1];
    println!("bg lambda: {:?}", fmt(&(&to_lambda * k.coeffs(bg))));

    let bt = pair.fourier(b).range_projection(&tol);
    let rev = pair.reversed();
    let dual_shifts = enumerate_right_shifts(&rev, &bt, &tol).unwrap();
    let bh = &dual_shifts[2];
    let front = pair.inverse_fourier(bh);
    println!("front lambda: {:?}", fmt(&(&to_lambda * k.coeffs(&front))));

    let y = k.basis_op(1);
    let u = bg * &y;
    println!("u lambda: {:?}", fmt(&(&to_lambda * k.coeffs(&u))));
    let x = convolve_in(pair.primal(), &front, &u).unwrap();
    println!("x lambda: {:?}", fmt(&(&to_lambda * k.coeffs(&x))));

    // mul table row for t=1 and the coset structure
    println!("mul[1][.] = {:?}", t.mul[1]);
    println!("mul[.][1] column = {:?}", (0..6).map(|a| t.mul[a][1]).collect::<Vec<_>>());
}

#[test]
fn failing_combo_blocks() {
    let tol = ToleranceConfig::default();
    let t = GroupTable::s3();
    let k = group_algebra(&t, &tol).unwrap();
    let pair = build_dual(&k, &tol).unwrap();
    let bips = enumerate_biprojections(&pair, &[], &tol, DEFAULT_DIMENSION_CAP).unwrap();
    let b = &bips[3];
    let shifts = enumerate_right_shifts(&pair, b, &tol).unwrap();
    let bg = &shifts[1];
    let bt = pair.fourier(b).range_projection(&tol);
    let rev = pair.reversed();
    let dual_shifts = enumerate_right_shifts(&rev, &bt, &tol).unwrap();
    let bh = &dual_shifts[2];
    let front = pair.inverse_fourier(bh);
    let y = k.basis_op(1);
    let u = bg * &y;
    let x = convolve_in(pair.primal(), &front, &u).unwrap();
    let rx = x.range_projection(&tol);
    for i in 0..3 {
        println!("x block {i}:\n{:.5}", x.block(i));
        println!("R(x) block {i}:\n{:.5}", rx.block(i));
        println!("bg block {i}:\n{:.5}", bg.block(i));
    }
    println!("dims = {:?}", k.dims());
}

#[test]
fn lambda_convolution_primitive() {
    let tol = ToleranceConfig::default();
    let t = GroupTable::s3();
    let k = group_algebra(&t, &tol).unwrap();
    let lambda = match &k.provenance {
        kacalg::algebra::Provenance::GroupAlgebra { lambda, .. } => lambda.clone(),
        _ => panic!(),
    };
    let lam_op = |g: usize| k.from_coeffs(&lambda[g]);
    let mut worst = 0.0f64;
    for g in 0..6 {
        for h in 0..6 {
            let conv = convolve_in(&k, &lam_op(g), &lam_op(h)).unwrap();
            let expect = if g == h { lam_op(h) } else { k.zero() };
            let d = conv.distance(&expect);
            if d > worst {
                worst = d;
            }
            if d > 1e-9 {
                println!("conv(l{g}, l{h}) wrong by {d:.3e}");
            }
        }
    }
    println!("worst lambda-convolution deviation: {worst:.3e}");

    // also check the product primitive lambda_g lambda_h = lambda_{gh}
    let mut worst_mul = 0.0f64;
    for g in 0..6 {
        for h in 0..6 {
            let prod = &lam_op(g) * &lam_op(h);
            let d = prod.distance(&lam_op(t.mul[g][h]));
            worst_mul = worst_mul.max(d);
        }
    }
    println!("worst lambda-product deviation: {worst_mul:.3e}");
}

#[test]
fn identify_the_lie() {
    let tol = ToleranceConfig::default();
    let t = GroupTable::s3();
    let k = group_algebra(&t, &tol).unwrap();
    let pair = build_dual(&k, &tol).unwrap();
    let lambda = match &k.provenance {
        kacalg::algebra::Provenance::GroupAlgebra { lambda, .. } => lambda.clone(),
        _ => panic!(),
    };
    let lam_op = |g: usize| k.from_coeffs(&lambda[g]);

    let bips = enumerate_biprojections(&pair, &[], &tol, DEFAULT_DIMENSION_CAP).unwrap();
    let b = &bips[3];
    let shifts = enumerate_right_shifts(&pair, b, &tol).unwrap();
    let bg = &shifts[1];
    let p_triv = (&lam_op(0) + &lam_op(1)).scale(kacalg::Complex64::new(0.5, 0.0));
    println!("dist(bg, (l0+l1)/2) = {:.3e}", bg.distance(&p_triv));

    let bt = pair.fourier(b).range_projection(&tol);
    let rev = pair.reversed();
    let dual_shifts = enumerate_right_shifts(&rev, &bt, &tol).unwrap();
    let bh = &dual_shifts[2];
    let front = pair.inverse_fourier(bh);
    let lsum = &lam_op(2) + &lam_op(4);
    println!("dist(front, l2+l4) = {:.3e}", front.distance(&lsum));

    let y = k.basis_op(1);
    let u = bg * &y;
    let x = convolve_in(pair.primal(), &front, &u).unwrap();
    let xe = lsum.scale(kacalg::Complex64::new(1.0 / 6.0, 0.0));
    println!("dist(x, (l2+l4)/6) = {:.3e}", x.distance(&xe));

    let rx = x.range_projection(&tol);
    let rxe = xe.range_projection(&tol);
    println!("dist(R(x), R((l2+l4)/6)) = {:.3e}", rx.distance(&rxe));
    println!("dist(R(x), p_triv) = {:.3e}", rx.distance(&p_triv));
    println!("dist(R(x), bg) = {:.3e}", rx.distance(bg));

    // is lambda_1 * lambda_2 = lambda_4 in operators?
    let l12 = &lam_op(1) * &lam_op(2);
    println!("dist(l1*l2, l4) = {:.3e} (mul[1][2] = {})", l12.distance(&lam_op(4)), t.mul[1][2]);
}
