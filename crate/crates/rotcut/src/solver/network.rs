/// Comparator rounds of Batcher's odd-even mergesort on `wires` wires.
/// Rounds are synchronous: within one round no wire appears twice, so a
/// round's comparisons can be resolved as one batch. All comparators point
/// the same way, which keeps the power-of-two network valid when restricted
/// to a prefix (the dropped wires behave as +infinity sentinels that never
/// move down). Depth is O(log^2 n).
pub fn batcher_rounds(wires: usize) -> Vec<Vec<(usize, usize)>> {
    let mut rounds = Vec::new();
    if wires <= 1 {
        return rounds;
    }
    let n = wires.next_power_of_two();
    let mut p = 1usize;
    while p < n {
        let mut q = p;
        loop {
            let mut round = Vec::new();
            let mut j = q % p;
            while j + q < n {
                for i in 0..q.min(n - j - q) {
                    let a = i + j;
                    let b = i + j + q;
                    if a / (2 * p) == b / (2 * p) && b < wires {
                        round.push((a, b));
                    }
                }
                j += 2 * q;
            }
            if !round.is_empty() {
                rounds.push(round);
            }
            if q == 1 {
                break;
            }
            q /= 2;
        }
        p *= 2;
    }
    rounds
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn run_network(rounds: &[Vec<(usize, usize)>], input: &mut [u32]) {
        for round in rounds {
            let mut seen = vec![false; input.len()];
            for &(a, b) in round {
                assert!(!seen[a] && !seen[b], "wire reused within a round");
                seen[a] = true;
                seen[b] = true;
                if input[a] > input[b] {
                    input.swap(a, b);
                }
            }
        }
    }

    #[test]
    fn sorts_all_binary_inputs() {
        // The 0-1 principle: a comparator network sorting every 0/1 vector
        // sorts everything.
        for wires in 1..=12usize {
            let rounds = batcher_rounds(wires);
            for mask in 0..(1u32 << wires) {
                let mut v: Vec<u32> = (0..wires).map(|i| (mask >> i) & 1).collect();
                run_network(&rounds, &mut v);
                assert!(
                    v.windows(2).all(|w| w[0] <= w[1]),
                    "wires={wires} mask={mask}"
                );
            }
        }
    }

    #[test]
    fn sorts_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for wires in [13usize, 20, 31, 32, 33, 50] {
            let rounds = batcher_rounds(wires);
            for _ in 0..30 {
                let mut v: Vec<u32> = (0..wires as u32).collect();
                for i in (1..v.len()).rev() {
                    let j = rng.random_range(0..=i);
                    v.swap(i, j);
                }
                run_network(&rounds, &mut v);
                assert!(v.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn depth_is_polylog() {
        for wires in [8usize, 16, 32, 64] {
            let rounds = batcher_rounds(wires);
            let lg = wires.next_power_of_two().trailing_zeros() as usize;
            assert!(rounds.len() <= lg * (lg + 1) / 2);
        }
    }
}
