use kacalg::{CMat, Complex64};

fn main() {
    // the 2x2 block of the failing bi-shift
    let m = CMat::from_row_slice(2, 2, &[
        Complex64::new(0.03545, -0.00464), Complex64::new(0.03779, 0.25839),
        Complex64::new(0.00022, 0.02768), Complex64::new(-0.20211, 0.00464),
    ]);
    let svd = m.clone().svd(true, true);
    println!("singular values: {:?}", svd.singular_values.as_slice());
    let u = svd.u.as_ref().unwrap();
    let vt = svd.v_t.as_ref().unwrap();
    println!("u unitarity: {:.3e}", (u.adjoint() * u - CMat::identity(2, 2)).norm());
    println!("v unitarity: {:.3e}", (vt * vt.adjoint() - CMat::identity(2, 2)).norm());
    let mut sigma = CMat::zeros(2, 2);
    sigma[(0,0)] = Complex64::new(svd.singular_values[0], 0.0);
    sigma[(1,1)] = Complex64::new(svd.singular_values[1], 0.0);
    let recon = u * sigma * vt;
    println!("reconstruction error: {:.3e}", (&recon - &m).norm());
    // top-left singular vector projection
    let u0 = u.column(0);
    let mut p = CMat::zeros(2,2);
    for r in 0..2 { for c in 0..2 { p[(r,c)] = u0[r] * u0[c].conj(); } }
    println!("P from svd:\n{:.5}", p);
    // oracle: range of rank-1 m = span of either column (normalize the larger)
    let col = m.column(1);
    let n = col.norm();
    let mut p2 = CMat::zeros(2,2);
    for r in 0..2 { for c in 0..2 { p2[(r,c)] = col[r] * col[c].conj() / Complex64::new(n*n, 0.0); } }
    println!("P from column span:\n{:.5}", p2);
    println!("dist = {:.3e}", (&p - &p2).norm());
}
