//! Independent brute-force oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Gap partitions counted by largest part: `t[n][x]` partitions of `n` with
/// largest part `x`, parts `>= a`, consecutive parts at distance `>= d`.
pub fn gap_oracle(a: u64, d: u64, n_max: u64) -> Vec<u128> {
    let n_max = n_max as usize;
    let (a, d) = (a as usize, d as usize);
    // prefix[m][u] = number of gap partitions of m with largest part <= u.
    let mut prefix = vec![vec![0u128; n_max + 1]; n_max + 1];
    for u in 0..=n_max {
        prefix[0][u] = 1;
    }
    for n in 1..=n_max {
        let mut acc = 0u128;
        for x in 0..=n_max {
            if x >= a && x <= n {
                let rest = n - x;
                acc += if rest == 0 {
                    1
                } else if x >= d {
                    prefix[rest][x - d]
                } else {
                    0
                };
            }
            prefix[n][x] = acc;
        }
    }
    (0..=n_max).map(|n| prefix[n][n_max]).collect()
}

/// All partitions of `n`, parts in non-increasing order.
pub fn all_partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn is_gap_partition(parts: &[u64], a: u64, d: u64) -> bool {
    parts.iter().all(|&p| p >= a) && parts.windows(2).all(|w| w[0] >= w[1] + d)
}

/// Partitions into parts from `allowed` via `n c(n) = sum_k sigma(k) c(n-k)`,
/// where `sigma(k)` sums the allowed divisors of `k`.
pub fn euler_oracle(allowed: impl Fn(u64) -> bool, n_max: u64) -> Vec<BigUint> {
    let n_max = n_max as usize;
    let mut sigma = vec![0u64; n_max + 1];
    for s in 1..=n_max {
        if allowed(s as u64) {
            for k in (s..=n_max).step_by(s) {
                sigma[k] += s as u64;
            }
        }
    }
    let mut c = vec![BigUint::zero(); n_max + 1];
    c[0] = BigUint::one();
    for n in 1..=n_max {
        let mut acc = BigUint::zero();
        for k in 1..=n {
            if sigma[k] != 0 {
                acc += &c[n - k] * sigma[k];
            }
        }
        c[n] = acc / n as u64;
    }
    c
}

/// Partitions with unlimited parts from `unlimited` and at most one copy of
/// each part from `distinct`, by direct knapsack.
pub fn mixed_oracle(unlimited: impl Fn(u64) -> bool, distinct: impl Fn(u64) -> bool, n_max: u64) -> Vec<BigUint> {
    let n_max = n_max as usize;
    let mut t = vec![BigUint::zero(); n_max + 1];
    t[0] = BigUint::one();
    for p in 1..=n_max {
        if unlimited(p as u64) {
            for n in p..=n_max {
                let add = t[n - p].clone();
                t[n] += add;
            }
        }
    }
    for p in 1..=n_max {
        if distinct(p as u64) {
            for n in (p..=n_max).rev() {
                let add = t[n - p].clone();
                t[n] += add;
            }
        }
    }
    t
}

/// `g_d` as a mixed partition count with residues mod `2d`.
pub fn g_oracle(d: u64, n_max: u64) -> Vec<BigUint> {
    let r = 63 - (d + 1).leading_zeros() as u64;
    let mut res: Vec<u64> = vec![1];
    res.extend((1..=r - 2).map(|i| d + (1u64 << i)));
    let distinct = d + (1u64 << (r - 1));
    mixed_oracle(|p| res.contains(&(p % (2 * d))), |p| p % (2 * d) == distinct, n_max)
}

/// `L_d` for Mersenne `d` as a plain coin count.
pub fn l_oracle(d: u64, n_max: u64) -> Vec<BigUint> {
    let r = 63 - (d + 1).leading_zeros() as u64;
    let mut res: Vec<u64> = vec![1];
    res.extend((1..=r - 1).map(|i| d + (1u64 << i)));
    euler_oracle(|p| res.contains(&(p % (2 * d))), n_max)
}

pub fn congruence_allowed(a: u64, d: u64) -> impl Fn(u64) -> bool {
    let m = d + 3;
    move |p| p % m == a || p % m == m - a
}
