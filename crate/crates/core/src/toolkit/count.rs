use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dissection counts by the face on a base edge.
///
/// `whole(m)` counts dissections of a convex `m`-gon (`whole(2) = 1` for a
/// bare edge). `tail(j)` counts the ways to finish the base face once `j`
/// boundary steps remain: split `j` into one or more arcs and dissect the
/// sub-polygon cut off by each.
#[derive(Debug, Clone)]
pub struct DissectionCounts {
    whole: Vec<BigUint>,
    tail: Vec<BigUint>,
}

impl DissectionCounts {
    pub fn new(max_n: usize) -> Self {
        let top = max_n.max(3);
        let mut whole = vec![BigUint::zero(); top + 1];
        let mut tail = vec![BigUint::zero(); top + 1];
        whole[2] = BigUint::one();
        for m in 2..=top {
            if m >= 3 {
                // First arc takes p steps; at least one more arc follows.
                let mut w = BigUint::zero();
                for p in 1..=m - 2 {
                    w += &whole[p + 1] * &tail[m - 1 - p];
                }
                whole[m] = w;
            }
            let j = m - 1;
            let mut b = BigUint::zero();
            for p in 1..=j {
                if p == j {
                    b += &whole[p + 1];
                } else {
                    b += &whole[p + 1] * &tail[j - p];
                }
            }
            tail[j] = b;
        }
        DissectionCounts { whole, tail }
    }

    pub fn max_n(&self) -> usize {
        self.whole.len() - 1
    }

    pub fn whole(&self, m: usize) -> &BigUint {
        &self.whole[m]
    }

    pub fn tail(&self, j: usize) -> &BigUint {
        &self.tail[j]
    }
}

/// The number of non-crossing chord sets of a labelled convex `n`-gon.
pub fn count_dissections(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::PolygonTooSmall(n));
    }
    Ok(DissectionCounts::new(n).whole(n).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let got: Vec<BigUint> = (3..=10).map(|n| count_dissections(n).unwrap()).collect();
        let want: Vec<BigUint> = [1u32, 3, 11, 45, 197, 903, 4279, 20793].map(BigUint::from).to_vec();
        assert_eq!(got, want);
        assert_eq!(count_dissections(2), Err(Error::PolygonTooSmall(2)));
    }

    #[test]
    fn counts_exceed_machine_words() {
        assert!(count_dissections(60).unwrap().bits() > 64);
    }
}
