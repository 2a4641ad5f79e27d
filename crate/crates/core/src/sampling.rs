//! Seeded exact sample points.

use cr_algebra::GaussianRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hypersurface::{Hypersurface, SurfacePoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Gaussian rational `(a + bi)/d` with small numerators.
pub fn small_scalar(rng: &mut impl Rng) -> GaussianRational {
    let d = rng.gen_range(1..=3);
    GaussianRational::complex(rng.gen_range(-3..=3), d, rng.gen_range(-3..=3), d)
}

pub fn small_real(rng: &mut impl Rng) -> GaussianRational {
    GaussianRational::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Points lifted onto the surface from random free coordinates.
pub fn surface_points(s: &Hypersurface, count: usize, seed: u64) -> Vec<SurfacePoint> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let free: Vec<GaussianRational> = (0..s.ambient_dim() - 1).map(|_| small_scalar(&mut r)).collect();
            s.lift_point(&free, &small_real(&mut r)).expect("lift")
        })
        .collect()
}

/// Ambient points off the surface, with `ρ > 0`.
pub fn positive_side_points(s: &Hypersurface, count: usize, seed: u64) -> Vec<SurfacePoint> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let free: Vec<GaussianRational> = (0..s.ambient_dim() - 1).map(|_| small_scalar(&mut r)).collect();
        let base = s.lift_point(&free, &small_real(&mut r)).expect("lift");
        // raise Im w by a positive amount
        let mut holo = base.holomorphic(s.ambient_dim()).to_vec();
        let bump = GaussianRational::complex(0, 1, r.gen_range(1..=4), r.gen_range(1..=2));
        let last = holo.len() - 1;
        holo[last] = &holo[last] + &bump;
        let p = s.ambient_point(&holo).expect("point");
        if s.rho().eval(&p.coords).real_sign() == Some(std::cmp::Ordering::Greater) {
            out.push(p);
        }
    }
    out
}
