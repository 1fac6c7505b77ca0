use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{ExpVec, ExpVecSet};

const ATTEMPTS_PER_VECTOR: usize = 10_000;

/// Seeded greedy sample of `count` 0-1 vectors with `m` ones each, any two sharing
/// fewer than `⌊m/2⌋` ones.
pub fn cover_free_sample(n: usize, m: usize, count: usize, seed: u64) -> Result<ExpVecSet> {
    if m == 0 || m > n {
        return Err(Error::InfeasibleParameters(format!(
            "need 1 ≤ m ≤ n, got n = {n}, m = {m}"
        )));
    }
    let limit = m / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(count);
    let mut attempts = 0;
    while chosen.len() < count {
        if attempts >= ATTEMPTS_PER_VECTOR * count {
            return Err(Error::InfeasibleParameters(format!(
                "greedy sampling stalled at {} of {count} vectors",
                chosen.len()
            )));
        }
        attempts += 1;
        let mut cand = sample(&mut rng, n, m).into_vec();
        cand.sort_unstable();
        let ok = chosen.iter().all(|c| {
            let common = c.iter().filter(|i| cand.binary_search(i).is_ok()).count();
            common < limit
        });
        if ok && !chosen.contains(&cand) {
            chosen.push(cand);
        }
    }
    Ok(ExpVecSet::from_vecs(
        n,
        chosen.into_iter().map(ExpVec::from_support),
    ))
}
