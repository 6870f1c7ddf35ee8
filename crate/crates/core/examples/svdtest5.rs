use kacalg::biproj::*;
use kacalg::builders::{group_algebra, GroupTable};
use kacalg::dual::build_dual;
use kacalg::ToleranceConfig;

fn main() {
    let tol = ToleranceConfig::default();
    let k = group_algebra(&GroupTable::q8(), &tol).unwrap();
    let pair = build_dual(&k, &tol).unwrap();
    let bips = enumerate_biprojections(&pair, &[], &tol, DEFAULT_DIMENSION_CAP).unwrap();
    for (bi, b) in bips.iter().enumerate() {
        let shifts = enumerate_right_shifts(&pair, b, &tol).unwrap();
        let bt = pair.fourier(b).range_projection(&tol);
        let rev = pair.reversed();
        let ds = enumerate_right_shifts(&rev, &bt, &tol).unwrap();
        println!(
            "biproj{bi}: phi = {:.4}, shifts = {}, dual shifts = {}",
            pair.primal().phi(b).re,
            shifts.len(),
            ds.len()
        );
    }
}
