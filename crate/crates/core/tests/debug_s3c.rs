use kacalg::biproj::{enumerate_biprojections, enumerate_right_shifts, DEFAULT_DIMENSION_CAP};
use kacalg::builders::{group_algebra, GroupTable};
use kacalg::dual::build_dual;
use kacalg::fourier::convolve_in;
use kacalg::{CVec, Complex64, ToleranceConfig};

#[test]
fn inspect_cs3_structures() {
    let tol = ToleranceConfig::default();
    let t = GroupTable::s3();
    let k = group_algebra(&t, &tol).unwrap();
    let pair = build_dual(&k, &tol).unwrap();
    let n = t.order;

    // sigma: dual basis index of F(lambda_g)
    let lambda = match &k.provenance {
        kacalg::algebra::Provenance::GroupAlgebra { lambda, .. } => lambda.clone(),
        _ => panic!("expected group provenance"),
    };
    let mut sigma = vec![usize::MAX; n]; // group element -> dual index
    for g in 0..n {
        let f = pair.fourier(&k.from_coeffs(&lambda[g]));
        let coeffs = pair.dual().coeffs(&f);
        let mut hits = Vec::new();
        for (j, v) in coeffs.iter().enumerate() {
            if v.norm() > 1e-8 {
                hits.push((j, *v));
            }
        }
        println!("F(lambda_{g}) support: {hits:?}");
        assert_eq!(hits.len(), 1, "F(lambda_g) should be a single diagonal unit");
        sigma[g] = hits[0].0;
    }
    println!("sigma (group element -> dual index): {sigma:?}");

    let bips = enumerate_biprojections(&pair, &[], &tol, DEFAULT_DIMENSION_CAP).unwrap();
    let reversed = pair.reversed();
    let b = &bips[3];
    // identify subgroup
    let mut basis_change = kacalg::CMat::zeros(n, n);
    for (g, col) in lambda.iter().enumerate() {
        basis_change.set_column(g, col);
    }
    let beta = basis_change.clone().full_piv_lu().try_inverse().unwrap() * k.coeffs(b);
    let subgroup: Vec<usize> = (0..n).filter(|&g| beta[g].norm() > 1e-8).collect();
    println!("biproj3 subgroup: {subgroup:?}");

    let bt = pair.fourier(b).range_projection(&tol);
    let bt_coeffs = pair.dual().coeffs(&bt);
    let bt_supp: Vec<usize> = (0..n).filter(|&j| bt_coeffs[j].norm() > 1e-8).collect();
    println!("supp(B~) dual indices: {bt_supp:?}");
    let bt_group: Vec<usize> = bt_supp
        .iter()
        .map(|&j| sigma.iter().position(|&s| s == j).unwrap())
        .collect();
    println!("supp(B~) as group elements: {bt_group:?}");

    let dual_shifts = enumerate_right_shifts(&reversed, &bt, &tol).unwrap();
    for (di, s) in dual_shifts.iter().enumerate() {
        let sc = pair.dual().coeffs(s);
        let supp: Vec<usize> = (0..n).filter(|&j| sc[j].norm() > 1e-8).collect();
        let as_group: Vec<usize> = supp
            .iter()
            .map(|&j| sigma.iter().position(|&x| x == j).unwrap())
            .collect();
        // right coset? Hg = {hg}
        let g0 = as_group[0];
        let mut coset: Vec<usize> = subgroup.iter().map(|&h| t.mul[h][g0]).collect();
        coset.sort_unstable();
        let mut left: Vec<usize> = subgroup.iter().map(|&h| t.mul[g0][h]).collect();
        left.sort_unstable();
        let mut sorted = as_group.clone();
        sorted.sort_unstable();
        println!(
            "dualshift{di}: group elements {sorted:?}; right coset {coset:?}; left coset {left:?}"
        );
    }

    // now the u-pattern for the primal shifts
    let shifts = enumerate_right_shifts(&pair, b, &tol).unwrap();
    for (si, bg) in shifts.iter().enumerate() {
        let beta_s = basis_change.clone().full_piv_lu().try_inverse().unwrap() * k.coeffs(bg);
        println!(
            "shift{si} lambda-coords: {:?}",
            (0..n)
                .map(|g| (beta_s[g].re * 1e6).round() / 1e6)
                .collect::<Vec<_>>()
        );
        // x for witness y = basis 0, dual shift 0
        let y = k.basis_op(1);
        let u = bg * &y;
        let ucoords = basis_change.clone().full_piv_lu().try_inverse().unwrap() * k.coeffs(&u);
        println!(
            "  u = bg*y lambda-coords (re): {:?}",
            (0..n)
                .map(|g| (ucoords[g].re * 1e6).round() / 1e6)
                .collect::<Vec<_>>()
        );
        let front = pair.inverse_fourier(&dual_shifts[0]);
        let x = convolve_in(pair.primal(), &front, &u).unwrap();
        let xcoords: CVec =
            basis_change.clone().full_piv_lu().try_inverse().unwrap() * k.coeffs(&x);
        println!(
            "  x lambda-coords (re): {:?}",
            (0..n)
                .map(|g| (xcoords[g].re * 1e6).round() / 1e6)
                .collect::<Vec<_>>()
        );
        let _ = Complex64::new(0.0, 0.0);
    }
}
