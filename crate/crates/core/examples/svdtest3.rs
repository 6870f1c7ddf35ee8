use kacalg::biproj::{enumerate_biprojections, enumerate_right_shifts, DEFAULT_DIMENSION_CAP};
use kacalg::builders::{group_algebra, GroupTable};
use kacalg::dual::build_dual;
use kacalg::fourier::convolve_in;
use kacalg::{Complex64, ToleranceConfig};

fn main() {
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
    let bt = pair.fourier(b).range_projection(&tol);
    let rev = pair.reversed();
    let dual_shifts = enumerate_right_shifts(&rev, &bt, &tol).unwrap();
    let bh = &dual_shifts[2];
    let front = pair.inverse_fourier(bh);
    let y = k.basis_op(1);
    let u = bg * &y;
    let x = convolve_in(pair.primal(), &front, &u).unwrap();
    let xe = (&lam_op(2) + &lam_op(4)).scale(Complex64::new(1.0 / 6.0, 0.0));

    println!("block diffs: {:?}", (0..3).map(|i| (x.block(i) - xe.block(i)).norm()).collect::<Vec<_>>());
    for i in 0..3 {
        let sx = x.block(i).clone().svd(false, false).singular_values;
        let se = xe.block(i).clone().svd(false, false).singular_values;
        println!("block {i}: sv(x) = {:?} sv(xe) = {:?}", sx.as_slice(), se.as_slice());
    }
    let rx = x.range_projection(&tol);
    let re = xe.range_projection(&tol);
    println!("R(x) block2:\n{:.5}", rx.block(2));
    println!("R(xe) block2:\n{:.5}", re.block(2));
    println!("operator_norm(x) = {}, operator_norm(xe) = {}", x.operator_norm(), xe.operator_norm());
}
