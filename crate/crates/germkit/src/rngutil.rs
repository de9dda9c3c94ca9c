//! Deterministic seeding helpers.
//!
//! All randomness in the crate flows from one master seed; modules receive
//! sub-seeds derived by hashing a text label, so independent operations
//! stay reproducible when run in any order.

use crate::poly::Coefficient;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stable 64-bit hash of a label mixed with the master seed (splitmix64
/// over the label bytes). Not cryptographic; only reproducibility matters.
pub fn subseed(master: u64, label: &str) -> u64 {
    let mut h = master ^ 0x9e37_79b9_7f4a_7c15;
    for &b in label.as_bytes() {
        h = h.wrapping_add(b as u64);
        h = splitmix64(h);
    }
    splitmix64(h)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn rng_from(master: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(master, label))
}

/// Random point on the unit sphere of C^n.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Rounds a float to a rational with denominator 2^20.
fn dyadic(x: f64) -> BigRational {
    let scale = (1u64 << 20) as f64;
    BigRational::new(BigInt::from((x * scale).round() as i64), BigInt::from(1u64 << 20))
}

/// A 2x2 matrix over Gaussian rationals of the form
/// `[[a, -conj(b)], [b, conj(a)]]`, which satisfies `M* M = s I` exactly
/// with `s = |a|^2 + |b|^2` close to 1. It is an exact scalar multiple of
/// a unitary matrix, so it preserves angles and scales all lengths by the
/// same factor, while keeping polynomial composition exact.
#[derive(Debug, Clone)]
pub struct ConformalMatrix {
    pub entries: [[Coefficient; 2]; 2],
}

impl ConformalMatrix {
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        loop {
            let raw: Vec<f64> = (0..4).map(|_| rng.gen::<f64>() - 0.5).collect();
            let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-3 {
                continue;
            }
            let a = Coefficient::new(dyadic(raw[0] / norm), dyadic(raw[1] / norm));
            let b = Coefficient::new(dyadic(raw[2] / norm), dyadic(raw[3] / norm));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            return ConformalMatrix {
                entries: [
                    [a.clone(), b.conj().neg()],
                    [b, a.conj()],
                ],
            };
        }
    }

    pub fn identity() -> Self {
        ConformalMatrix {
            entries: [
                [Coefficient::one(), Coefficient::zero()],
                [Coefficient::zero(), Coefficient::one()],
            ],
        }
    }

    /// Rows of the matrix as used by `Polynomial::compose_linear`: the
    /// composed polynomial is `f(M z)`.
    pub fn rows(&self) -> Vec<Vec<Coefficient>> {
        vec![
            vec![self.entries[0][0].clone(), self.entries[0][1].clone()],
            vec![self.entries[1][0].clone(), self.entries[1][1].clone()],
        ]
    }

    /// `s = |a|^2 + |b|^2`, the exact squared scale factor.
    pub fn scale_sqr(&self) -> BigRational {
        self.entries[0][0].norm_sqr() + self.entries[1][0].norm_sqr()
    }

    pub fn to_complex(&self) -> [[Complex64; 2]; 2] {
        [
            [
                self.entries[0][0].to_complex(),
                self.entries[0][1].to_complex(),
            ],
            [
                self.entries[1][0].to_complex(),
                self.entries[1][1].to_complex(),
            ],
        ]
    }

    /// Applies M to a complex vector.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = self.to_complex();
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Applies the exact inverse, `M^{-1} = M* / s`.
    pub fn apply_inverse(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = self.to_complex();
        let s: f64 = self
            .scale_sqr()
            .to_string()
            .parse()
            .unwrap_or(1.0_f64);
        let _ = s;
        let scale = m[0][0].norm_sqr() + m[1][0].norm_sqr();
        [
            (m[0][0].conj() * v[0] + m[1][0].conj() * v[1]) / scale,
            (m[0][1].conj() * v[0] + m[1][1].conj() * v[1]) / scale,
        ]
    }
}

use std::ops::Neg;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subseed_is_stable_and_label_sensitive() {
        assert_eq!(subseed(0, "alpha"), subseed(0, "alpha"));
        assert_ne!(subseed(0, "alpha"), subseed(0, "beta"));
        assert_ne!(subseed(0, "alpha"), subseed(1, "alpha"));
    }

    #[test]
    fn conformal_matrix_is_scaled_unitary() {
        let mut rng = rng_from(7, "test-conformal");
        for _ in 0..5 {
            let m = ConformalMatrix::random(&mut rng);
            let c = m.to_complex();
            // columns orthogonal, equal norm
            let dot = c[0][0].conj() * c[0][1] + c[1][0].conj() * c[1][1];
            assert!(dot.norm() < 1e-12);
            let n0 = c[0][0].norm_sqr() + c[1][0].norm_sqr();
            let n1 = c[0][1].norm_sqr() + c[1][1].norm_sqr();
            assert!((n0 - n1).abs() < 1e-12);
            assert!((n0 - 1.0).abs() < 1e-4, "scale close to 1");
            // inverse really inverts
            let v = [Complex64::new(0.3, -0.7), Complex64::new(1.1, 0.2)];
            let w = m.apply_inverse(m.apply(v));
            assert!((w[0] - v[0]).norm() < 1e-12);
            assert!((w[1] - v[1]).norm() < 1e-12);
        }
    }
}
