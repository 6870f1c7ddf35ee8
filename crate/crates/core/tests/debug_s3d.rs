use kacalg::biproj::{enumerate_biprojections, enumerate_right_shifts, DEFAULT_DIMENSION_CAP};
use kacalg::builders::{group_algebra, GroupTable};
use kacalg::dual::build_dual;
use kacalg::fourier::convolve_in;
use kacalg::ToleranceConfig;

#[test]
fn failing_case_lambda_pattern() {
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

    let bips = enumerate_biprojections(&pair, &[], &tol, DEFAULT_DIMENSION_CAP).unwrap();
    let b = &bips[3];
    let beta = &to_lambda * k.coeffs(b);
    let subgroup: Vec<usize> = (0..n).filter(|&g| beta[g].norm() > 1e-8).collect();
    println!("subgroup: {subgroup:?} (t = {})", subgroup[1]);
    let tt = subgroup[1];

    let shifts = enumerate_right_shifts(&pair, b, &tol).unwrap();
    let bg = &shifts[0]; // p_sign
    println!(
        "bg lambda: {:?}",
        (&to_lambda * k.coeffs(bg))
            .iter()
            .map(|z| format!("{:.3}{:+.3}i", z.re, z.im))
            .collect::<Vec<_>>()
    );

    let y = k.basis_op(0);
    let u = bg * &y;
    let uc = &to_lambda * k.coeffs(&u);
    println!(
        "u = bg*e0 lambda: {:?}",
        uc.iter()
            .map(|z| format!("{:.4}{:+.4}i", z.re, z.im))
            .collect::<Vec<_>>()
    );
    // check pattern u_{t h} = chi(t) u_h = -u_h
    for h in 0..n {
        let th = t.mul[tt][h];
        println!(
            "  pair (h={h}, th={th}): u_h = {:.4}{:+.4}i, u_th = {:.4}{:+.4}i",
            uc[h].re, uc[h].im, uc[th].re, uc[th].im
        );
    }

    let bt = pair.fourier(b).range_projection(&tol);
    let rev = pair.reversed();
    let dual_shifts = enumerate_right_shifts(&rev, &bt, &tol).unwrap();
    let bh = &dual_shifts[0];
    let front = pair.inverse_fourier(bh);
    println!(
        "front = F~(bh) lambda: {:?}",
        (&to_lambda * k.coeffs(&front))
            .iter()
            .map(|z| format!("{:.3}{:+.3}i", z.re, z.im))
            .collect::<Vec<_>>()
    );
    let x = convolve_in(pair.primal(), &front, &u).unwrap();
    let xc = &to_lambda * k.coeffs(&x);
    println!(
        "x lambda: {:?}",
        xc.iter()
            .map(|z| format!("{:.4}{:+.4}i", z.re, z.im))
            .collect::<Vec<_>>()
    );
}
