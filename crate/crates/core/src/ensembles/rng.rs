//! Counter-based random streams. Draw `i` of a run with seed `s` always
//! reads ChaCha8 stream `i` under key `s`, so a batch can be split across
//! any number of workers without changing a single value.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn draw_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard normal variates by the Box–Muller transform, consumed in pairs.
#[derive(Debug, Clone)]
pub struct GaussianStream<R> {
    rng: R,
    spare: Option<f64>,
}

impl<R: RngCore> GaussianStream<R> {
    pub fn new(rng: R) -> Self {
        Self { rng, spare: None }
    }

    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // 1 - U lies in (0, 1], keeping the log finite
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2 = self.rng.random::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    pub fn rng_mut(&mut self) -> &mut R {
        &mut self.rng
    }
}
