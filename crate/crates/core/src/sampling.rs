//! Seeded generators of rational sample points.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hyperkahler::RotationParam;
use crate::scalars::ExactComplex;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `-bound..=bound` and denominator in `1..=den`.
pub fn rational_complex<R: Rng>(rng: &mut R, bound: i64, den: i64) -> ExactComplex {
    ExactComplex::from_parts(
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=den),
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=den),
    )
}

pub fn nonzero_complex<R: Rng>(rng: &mut R, bound: i64, den: i64) -> ExactComplex {
    loop {
        let z = rational_complex(rng, bound, den);
        if !z.is_zero() {
            return z;
        }
    }
}

/// `count` pairs `(α, β)`: mostly generic, every fifth one near the diagonal
/// (`β = α + ε` with small `ε`), every seventh one exactly diagonal.
pub fn family_points(seed: u64, count: usize) -> Vec<(RotationParam, RotationParam)> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let a = rational_complex(&mut r, 4, 5);
            let b = if k % 7 == 6 {
                a.clone()
            } else if k % 5 == 4 {
                let eps = ExactComplex::from_parts(r.gen_range(1..=3), 97, r.gen_range(-3..=3), 89);
                &a + &eps
            } else {
                rational_complex(&mut r, 4, 5)
            };
            (RotationParam::Finite(a), RotationParam::Finite(b))
        })
        .collect()
}

/// Like [`family_points`] but with both coordinates nonzero.
pub fn nonzero_family_points(seed: u64, count: usize) -> Vec<(ExactComplex, ExactComplex)> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let a = nonzero_complex(&mut r, 4, 5);
            let b = if k % 7 == 6 {
                a.clone()
            } else {
                nonzero_complex(&mut r, 4, 5)
            };
            (a, b)
        })
        .collect()
}
