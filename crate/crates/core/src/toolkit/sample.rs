use num_bigint::{BigUint, RandBigInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::count::DissectionCounts;
use crate::bop::Dissection;
use crate::error::{Error, Result};

/// The reproducible generator for sample `index` of polygon size `n`:
/// ChaCha8 keyed by `seed`, on stream `(n << 32) | index`.
pub fn sample_rng(seed: u64, n: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | index as u64);
    rng
}

/// Exactly uniform sampler over the dissections of a labelled `n`-gon.
#[derive(Debug, Clone)]
pub struct Sampler {
    n: usize,
    counts: DissectionCounts,
}

impl Sampler {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::PolygonTooSmall(n));
        }
        Ok(Sampler { n, counts: DissectionCounts::new(n) })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Dissection {
        let mut chords = Vec::new();
        let mut stack = vec![(0, self.n - 1)];
        while let Some((lo, hi)) = stack.pop() {
            // Walk the face on the base edge (lo, hi) from lo towards hi,
            // choosing each next corner in proportion to its completions.
            let mut x = lo;
            let mut first = true;
            while x != hi {
                let last = if first { hi - 1 } else { hi };
                let weight = |c: usize| -> BigUint {
                    let inside = self.counts.whole(c - x + 1);
                    if c < hi {
                        inside * self.counts.tail(hi - c)
                    } else {
                        inside.clone()
                    }
                };
                let total: BigUint = (x + 1..=last).map(weight).sum();
                let mut ticket = rng.gen_biguint_below(&total);
                let mut c = x + 1;
                loop {
                    let w = weight(c);
                    if ticket < w {
                        break;
                    }
                    ticket -= w;
                    c += 1;
                }
                if c - x >= 2 {
                    chords.push((x, c));
                    stack.push((x, c));
                }
                x = c;
                first = false;
            }
        }
        Dissection::new(self.n, chords).expect("sampled chords never cross")
    }
}

/// One uniform dissection of the `n`-gon.
pub fn sample_dissection<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Dissection> {
    Ok(Sampler::new(n)?.sample(rng))
}
