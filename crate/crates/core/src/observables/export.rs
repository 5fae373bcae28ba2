//! CSV rendering with 17 significant digits.

use super::momentum::MomentumDistribution;
use super::sdm::{ReducedDensityMatrix, SpectralDecomposition};

/// Fixed 17-significant-digit rendering.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn rdm_csv(rho: &ReducedDensityMatrix) -> String {
    let z = rho.grid.nodes();
    let mut out = String::from("z1,z1_prime,re,im\n");
    for (i, zi) in z.iter().enumerate() {
        for (j, zj) in z.iter().enumerate() {
            let v = rho.values[(i, j)];
            out += &format!("{},{},{},{}\n", fmt17(*zi), fmt17(*zj), fmt17(v.re), fmt17(v.im));
        }
    }
    out
}

pub fn density_csv(rho: &ReducedDensityMatrix) -> String {
    let mut out = String::from("z,rho\n");
    for (z, d) in rho.grid.nodes().iter().zip(rho.density()) {
        out += &format!("{},{}\n", fmt17(*z), fmt17(d));
    }
    out
}

pub fn momentum_csv(n: &MomentumDistribution) -> String {
    let mut out = String::from("k,n\n");
    for (k, v) in n.k.iter().zip(&n.values) {
        out += &format!("{},{}\n", fmt17(*k), fmt17(*v));
    }
    out
}

pub fn populations_csv(dec: &SpectralDecomposition) -> String {
    let mut out = String::from("i,lambda\n");
    for (i, l) in dec.populations.iter().enumerate() {
        out += &format!("{i},{}\n", fmt17(*l));
    }
    out
}
