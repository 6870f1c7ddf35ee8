use kacalg::biproj::{enumerate_biprojections, enumerate_right_shifts, DEFAULT_DIMENSION_CAP};
use kacalg::builders::{group_algebra, GroupTable};
use kacalg::dual::build_dual;
use kacalg::fourier::convolve_in;
use kacalg::{CMat, Complex64, ToleranceConfig};

fn main() {
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
    let front = pair.inverse_fourier(&dual_shifts[2]);
    let y = k.basis_op(1);
    let x = convolve_in(pair.primal(), &front, &(bg * &y)).unwrap();
    let m = x.block(2).clone();
    println!("exact bits:");
    for r in 0..2 {
        for c in 0..2 {
            println!("  m[({r},{c})] = {:e} + {:e} i", m[(r, c)].re, m[(r, c)].im);
        }
    }
    let svd = m.clone().svd(true, true);
    let u = svd.u.as_ref().unwrap();
    let vt = svd.v_t.as_ref().unwrap();
    let mut sigma = CMat::zeros(2, 2);
    sigma[(0, 0)] = Complex64::new(svd.singular_values[0], 0.0);
    sigma[(1, 1)] = Complex64::new(svd.singular_values[1], 0.0);
    let recon = u * &sigma * vt;
    println!("sv = {:?}", svd.singular_values.as_slice());
    println!("|M - U S V^H| = {:.3e}  (|M| = {:.3e})", (&recon - &m).norm(), m.norm());
    println!("u unitarity: {:.3e}", (u.adjoint() * u - CMat::identity(2, 2)).norm());
    // compare u0 with the true range direction from M M^H
    let mmh = &m * m.adjoint();
    let se = mmh.symmetric_eigen();
    let top = (0..2).max_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap()).unwrap();
    let w = se.eigenvectors.column(top);
    let overlap = (u.column(0).adjoint() * w)[(0, 0)].norm();
    println!("|<u0, range-direction>| = {overlap:.6} (should be 1)");
}
