use std::fmt;
use std::str::FromStr;

use linrec::CoefficientSeries;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficient distributions for generated series. All presets draw
/// `b_t` from `[-10, 10]` and `x0` from `[-5, 5]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `a_t` in `(0, 1]`.
    PositiveDecay,
    /// `a_t` in `[-2, 2]` without zero.
    MixedSign,
    /// Mixed-sign with 1% of `a_t` (at least one) set to zero.
    WithZeros,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::PositiveDecay, Preset::MixedSign, Preset::WithZeros];

    pub fn as_str(self) -> &'static str {
        match self {
            Preset::PositiveDecay => "positive-decay",
            Preset::MixedSign => "mixed-sign",
            Preset::WithZeros => "with-zeros",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Preset::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| {
                format!("unknown preset `{s}` (expected positive-decay, mixed-sign or with-zeros)")
            })
    }
}

/// Same `(n, seed, preset)` always yields the same series.
pub fn generate(n: usize, seed: u64, preset: Preset) -> CoefficientSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a: Vec<f64> = match preset {
        Preset::PositiveDecay => (0..n).map(|_| 1.0 - rng.random::<f64>()).collect(),
        Preset::MixedSign | Preset::WithZeros => (0..n).map(|_| nonzero(&mut rng, 2.0)).collect(),
    };
    let b: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..=10.0)).collect();
    let x0 = rng.random_range(-5.0..=5.0);
    if preset == Preset::WithZeros && n > 0 {
        let zeros = (n / 100).max(1);
        for i in index::sample(&mut rng, n, zeros) {
            a[i] = 0.0;
        }
    }
    CoefficientSeries::new(a, b, x0).expect("generated values are finite")
}

fn nonzero(rng: &mut impl Rng, bound: f64) -> f64 {
    loop {
        let v = rng.random_range(-bound..=bound);
        if v != 0.0 {
            return v;
        }
    }
}
