//! Small fixed-size complex matrix helpers shared by the gate and
//! entanglement code.

use core::f64::consts::PI;

use num_complex::Complex64;

pub type C64 = Complex64;

/// Row-major 2×2 complex matrix.
pub type Mat2 = [[C64; 2]; 2];

/// Row-major 4×4 complex matrix.
pub type Mat4 = [[C64; 4]; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub const TAU: f64 = 2.0 * PI;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

/// `e^{iθ}`
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::new(cos(theta), sin(theta))
}

/// Reduces `x` into `[0, 2π)`.
pub fn wrap_tau(x: f64) -> f64 {
    let r = libm::fmod(x, TAU);
    let r = if r < 0.0 { r + TAU } else { r };
    // fmod of values just below a multiple of 2π can round up to 2π itself
    if r >= TAU {
        0.0
    } else {
        r
    }
}

pub const fn identity2() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn matmul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn matmul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn adjoint2(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
        }
    }
    out
}

/// Largest entrywise modulus of `U†U − I`.
pub fn unitarity_defect2(u: &Mat2) -> f64 {
    let p = matmul2(&adjoint2(u), u);
    let mut worst = 0.0f64;
    for (i, row) in p.iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((z - target).norm());
        }
    }
    worst
}

/// `|tr(A†B)| / 2`; equals 1 exactly when the two unitaries agree up to a
/// global phase.
pub fn phase_overlap2(a: &Mat2, b: &Mat2) -> f64 {
    let mut tr = ZERO;
    for i in 0..2 {
        for k in 0..2 {
            tr += a[k][i].conj() * b[k][i];
        }
    }
    tr.norm() / 2.0
}

/// `|tr(A†B)| / 4` for 4×4 unitaries.
pub fn phase_overlap4(a: &Mat4, b: &Mat4) -> f64 {
    let mut tr = ZERO;
    for i in 0..4 {
        for k in 0..4 {
            tr += a[k][i].conj() * b[k][i];
        }
    }
    tr.norm() / 4.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_tau_lands_in_range() {
        for &x in &[-7.0, -TAU, -1e-18, 0.0, 1.0, TAU, 3.0 * TAU + 0.5, 100.0] {
            let w = wrap_tau(x);
            assert!((0.0..TAU).contains(&w), "{x} -> {w}");
            assert!((cis(w) - cis(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron2(&identity2(), &identity2());
        for (i, row) in k.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, if i == j { ONE } else { ZERO });
            }
        }
    }
}
