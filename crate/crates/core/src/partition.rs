//! Partition families: exact counts and exhaustive enumeration.
//!
//! Counts are arbitrary-precision. The gap-condition count `q_d^(a)(n)` uses
//! the staircase transform: subtracting `a + (k-1)d, ..., a + d, a` from the
//! parts of a k-part gap partition leaves a partition into at most `k` parts,
//! so
//!
//! ```text
//! q_d^(a)(n) = sum_k p_{<=k}(n - a·k - d·k(k-1)/2).
//! ```
//!
//! Congruence counts and counts over arbitrary part sets use a coin-change
//! dynamic program over the materialised part list.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::part_sets::{build_s_shift_alpha, EventuallyPeriodicSet, SetError};

/// Default bound on the number of partitions a single enumeration may return.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("enumeration exceeded the cap of {cap} partitions")]
    CapExceeded { cap: usize },
    #[error("partitions have positive parts only")]
    ZeroPart,
    #[error(transparent)]
    Set(#[from] SetError),
}

/// A multiset of positive parts, stored in nonincreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<u64>,
    weight: u64,
}

impl Partition {
    pub fn empty() -> Self {
        Self {
            parts: Vec::new(),
            weight: 0,
        }
    }

    pub fn new(mut parts: Vec<u64>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Ok(Self { parts, weight })
    }

    /// Builds from parts already in nonincreasing order.
    pub(crate) fn from_sorted(parts: &[u64]) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Self {
            parts: parts.to_vec(),
            weight: parts.iter().sum(),
        }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, part: u64) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    pub fn smallest(&self) -> Option<u64> {
        self.parts.last().copied()
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition {
            parts,
            weight: self.weight + other.weight,
        }
    }

    /// Compact byte key: `(part, multiplicity)` pairs as LEB128 varints.
    /// Two partitions have equal keys iff they are equal.
    pub fn compact_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8);
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == p {
                j += 1;
            }
            push_varint(&mut out, p);
            push_varint(&mut out, (j - i) as u64);
            i = j;
        }
        out
    }

    /// Every part satisfies the smallest-part and gap conditions of `spec`.
    pub fn satisfies_gap(&self, spec: &GapSpec) -> bool {
        self.parts.iter().all(|&p| p >= spec.a)
            && self.parts.windows(2).all(|w| w[0] - w[1] >= spec.d)
    }
}

fn push_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut i = 0;
        let mut first = true;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == p {
                j += 1;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if j - i > 3 {
                write!(f, "{p}^{}", j - i)?;
            } else {
                for k in 0..j - i {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
            }
            i = j;
        }
        write!(f, ")")
    }
}

/// Smallest part `>= a`, parts pairwise differing by at least `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GapSpec {
    pub a: u64,
    pub d: u64,
}

impl GapSpec {
    pub fn new(a: u64, d: u64) -> Result<Self, PartitionError> {
        if a == 0 || d == 0 {
            return Err(PartitionError::InvalidSpec(format!(
                "gap condition needs a >= 1 and d >= 1 (a = {a}, d = {d})"
            )));
        }
        Ok(Self { a, d })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// All parts `= ±a (mod d+3)`.
    Full,
    /// As `Full`, without the single part value `d+3-a`.
    ExcludeCoResidue,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::ExcludeCoResidue => "exclude-co-residue",
        })
    }
}

/// Parts `= ±a (mod d+3)`, optionally without the part `d+3-a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CongruenceSpec {
    pub a: u64,
    pub d: u64,
    pub variant: Variant,
}

impl CongruenceSpec {
    pub fn new(a: u64, d: u64, variant: Variant) -> Result<Self, PartitionError> {
        if a == 0 || d == 0 || 2 * a >= d + 3 {
            return Err(PartitionError::InvalidSpec(format!(
                "congruence condition needs a >= 1, d >= 1 and 2a < d+3 (a = {a}, d = {d})"
            )));
        }
        Ok(Self { a, d, variant })
    }

    pub fn full(a: u64, d: u64) -> Result<Self, PartitionError> {
        Self::new(a, d, Variant::Full)
    }

    pub fn modulus(&self) -> u64 {
        self.d + 3
    }

    /// The second residue representative `d+3-a`.
    pub fn co_residue(&self) -> u64 {
        self.d + 3 - self.a
    }

    pub fn part_set(&self) -> EventuallyPeriodicSet {
        let excludes: &[u64] = match self.variant {
            Variant::Full => &[],
            Variant::ExcludeCoResidue => &[self.co_residue()],
        };
        EventuallyPeriodicSet::new(
            self.modulus(),
            [self.a, self.co_residue()],
            [],
            excludes.iter().copied(),
        )
        .expect("validated congruence spec")
    }
}

/// `p_{<=k}(0..=n_max)`: partitions into parts each at most `k`.
pub fn parts_at_most_counts(k: u64, n_max: u64) -> Vec<BigUint> {
    let n_max = n_max as usize;
    let mut table = vec![BigUint::zero(); n_max + 1];
    table[0] = BigUint::one();
    for part in 1..=(k as usize).min(n_max) {
        for n in part..=n_max {
            let (lo, hi) = table.split_at_mut(n);
            hi[0] += &lo[n - part];
        }
    }
    table
}

pub fn count_parts_at_most(k: u64, n: u64) -> BigUint {
    parts_at_most_counts(k, n).pop().expect("nonempty table")
}

/// `q_d^(a)(0..=n_max)` by the staircase transform.
pub fn gap_counts(spec: &GapSpec, n_max: u64) -> Vec<BigUint> {
    let n_max = n_max as usize;
    let mut out = vec![BigUint::zero(); n_max + 1];
    out[0] = BigUint::one();
    // table[m] = partitions of m into parts <= k, valid on the prefix we still need.
    let mut table = vec![BigUint::zero(); n_max + 1];
    table[0] = BigUint::one();
    let mut k: usize = 1;
    loop {
        let base = staircase_weight(spec, k as u64);
        let Some(base) = base.filter(|&b| b <= n_max as u64) else {
            break;
        };
        let limit = n_max - base as usize;
        for m in k..=limit {
            let (lo, hi) = table.split_at_mut(m);
            hi[0] += &lo[m - k];
        }
        for m in 0..=limit {
            out[base as usize + m] += &table[m];
        }
        k += 1;
    }
    out
}

/// `a·k + d·k(k-1)/2`, the smallest weight of a k-part gap partition.
fn staircase_weight(spec: &GapSpec, k: u64) -> Option<u64> {
    let tri = k.checked_mul(k.checked_sub(1)?)? / 2;
    spec.a.checked_mul(k)?.checked_add(spec.d.checked_mul(tri)?)
}

pub fn count_gap(spec: &GapSpec, n: u64) -> BigUint {
    gap_counts(spec, n).pop().expect("nonempty table")
}

/// Coin-change counts over an explicit list of distinct positive parts.
pub fn part_list_counts(parts: &[u64], n_max: u64) -> Vec<BigUint> {
    let n_max = n_max as usize;
    let mut table = vec![BigUint::zero(); n_max + 1];
    table[0] = BigUint::one();
    for &p in parts {
        let p = p as usize;
        if p == 0 || p > n_max {
            continue;
        }
        for n in p..=n_max {
            let (lo, hi) = table.split_at_mut(n);
            hi[0] += &lo[n - p];
        }
    }
    table
}

/// `rho(universe; 0..=n_max)`.
pub fn set_counts(universe: &EventuallyPeriodicSet, n_max: u64) -> Vec<BigUint> {
    part_list_counts(&universe.members_up_to(n_max), n_max)
}

pub fn count_from_set(universe: &EventuallyPeriodicSet, n: u64) -> BigUint {
    set_counts(universe, n).pop().expect("nonempty table")
}

/// `Q_d^(a)(0..=n_max)` or `Q_d^(a,-)(0..=n_max)` depending on the variant.
pub fn congruence_counts(spec: &CongruenceSpec, n_max: u64) -> Vec<BigUint> {
    set_counts(&spec.part_set(), n_max)
}

pub fn count_congruence(spec: &CongruenceSpec, n: u64) -> BigUint {
    congruence_counts(spec, n).pop().expect("nonempty table")
}

/// Distinct parts `<= n` in decreasing order, with `reach[i][r]` true when
/// `r` is a sum of parts from `desc[i..]`.
fn reachability(parts: &[u64], n: u64) -> (Vec<u64>, Vec<Vec<bool>>) {
    let mut desc: Vec<u64> = parts.iter().copied().filter(|&p| p >= 1 && p <= n).collect();
    desc.sort_unstable_by(|a, b| b.cmp(a));
    desc.dedup();
    let n_us = n as usize;
    let mut reach = vec![vec![false; n_us + 1]; desc.len() + 1];
    reach[desc.len()][0] = true;
    for i in (0..desc.len()).rev() {
        let p = desc[i] as usize;
        let (cur, next) = reach.split_at_mut(i + 1);
        let cur = &mut cur[i];
        let next = &next[0];
        for r in 0..=n_us {
            cur[r] = next[r] || (r >= p && cur[r - p]);
        }
    }
    (desc, reach)
}

/// Depth-first walk over multiplicities, largest part first. `runs` holds
/// the `(part, multiplicity)` pairs chosen so far.
struct RunWalk<'a, F> {
    desc: &'a [u64],
    reach: &'a [Vec<bool>],
    runs: Vec<(u64, u64)>,
    count: usize,
    cap: usize,
    visit: F,
}

impl<F: FnMut(&[(u64, u64)])> RunWalk<'_, F> {
    fn go(&mut self, idx: usize, remaining: u64) -> Result<(), PartitionError> {
        if remaining == 0 {
            self.count += 1;
            if self.count > self.cap {
                return Err(PartitionError::CapExceeded { cap: self.cap });
            }
            (self.visit)(&self.runs);
            return Ok(());
        }
        if idx == self.desc.len() {
            return Ok(());
        }
        let p = self.desc[idx];
        for c in (0..=remaining / p).rev() {
            let rest = remaining - c * p;
            if !self.reach[idx + 1][rest as usize] {
                continue;
            }
            if c > 0 {
                self.runs.push((p, c));
            }
            let r = self.go(idx + 1, rest);
            if c > 0 {
                self.runs.pop();
            }
            r?;
        }
        Ok(())
    }
}

/// Calls `visit` with every partition of `n` into parts from `parts` as
/// `(part, multiplicity)` runs, parts decreasing. Returns the number visited.
pub fn visit_partition_runs(
    parts: &[u64],
    n: u64,
    cap: usize,
    visit: impl FnMut(&[(u64, u64)]),
) -> Result<usize, PartitionError> {
    if n == 0 {
        let mut visit = visit;
        if cap == 0 {
            return Err(PartitionError::CapExceeded { cap });
        }
        visit(&[]);
        return Ok(1);
    }
    let (desc, reach) = reachability(parts, n);
    if desc.is_empty() || !reach[0][n as usize] {
        return Ok(0);
    }
    let mut walk = RunWalk {
        desc: &desc,
        reach: &reach,
        runs: Vec::new(),
        count: 0,
        cap,
        visit,
    };
    walk.go(0, n)?;
    Ok(walk.count)
}

/// Calls `visit` with every partition of `n` into parts from `parts`
/// (parts given in any order, duplicates ignored), largest parts first.
/// Returns the number of partitions visited.
pub fn visit_partitions(
    parts: &[u64],
    n: u64,
    cap: usize,
    mut visit: impl FnMut(&[u64]),
) -> Result<usize, PartitionError> {
    let mut buf = Vec::new();
    visit_partition_runs(parts, n, cap, |runs| {
        buf.clear();
        for &(p, c) in runs {
            buf.extend(std::iter::repeat(p).take(c as usize));
        }
        visit(&buf);
    })
}

/// Compact key of a partition given as decreasing `(part, multiplicity)`
/// runs; equal to [`Partition::compact_key`] of the expanded partition.
pub fn runs_key(runs: &[(u64, u64)]) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 * runs.len() + 2);
    for &(p, c) in runs {
        push_varint(&mut out, p);
        push_varint(&mut out, c);
    }
    out
}

/// All partitions of `n` into parts from `universe`.
pub fn enumerate_from_set(
    universe: &EventuallyPeriodicSet,
    n: u64,
    cap: usize,
) -> Result<Vec<Partition>, PartitionError> {
    let mut out = Vec::new();
    visit_partitions(&universe.members_up_to(n), n, cap, |p| {
        out.push(Partition::from_sorted(p))
    })?;
    Ok(out)
}

/// All partitions counted by `q_d^(a)(n)`.
pub fn enumerate_gap(spec: &GapSpec, n: u64, cap: usize) -> Result<Vec<Partition>, PartitionError> {
    fn go(
        spec: &GapSpec,
        min_next: u64,
        remaining: u64,
        asc: &mut Vec<u64>,
        out: &mut Vec<Partition>,
        cap: usize,
    ) -> Result<(), PartitionError> {
        let mut v = min_next;
        while v <= remaining {
            let rest = remaining - v;
            if rest == 0 || rest >= v + spec.d {
                asc.push(v);
                if rest == 0 {
                    if out.len() == cap {
                        return Err(PartitionError::CapExceeded { cap });
                    }
                    let mut parts = asc.clone();
                    parts.reverse();
                    out.push(Partition::from_sorted(&parts));
                } else {
                    go(spec, v + spec.d, rest, asc, out, cap)?;
                }
                asc.pop();
            }
            v += 1;
        }
        Ok(())
    }

    let mut out = Vec::new();
    if n == 0 {
        if cap == 0 {
            return Err(PartitionError::CapExceeded { cap });
        }
        out.push(Partition::empty());
        return Ok(out);
    }
    go(spec, spec.a, n, &mut Vec::new(), &mut out, cap)?;
    // Reverse lexicographic order, largest first part first.
    out.sort_unstable_by(|x, y| y.cmp(x));
    Ok(out)
}

/// A partition split as `(pi, mu)`: `pi` from a finite menu of special
/// parts, `mu` over a designated part universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairDecomposition {
    pub pi: Partition,
    pub mu: Partition,
}

impl PairDecomposition {
    pub fn weight(&self) -> u64 {
        self.pi.weight() + self.mu.weight()
    }
}

/// Which `(pi, mu)` interpretation to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PairKind {
    /// `pi ∈ {∅, (d+3-a)}`, `mu` over `±a (mod d+3)` with the part `d+3-a`
    /// replaced by `2d+6-2a`. Counts `Q_d^(a)`.
    LevelA { a: u64, d: u64 },
    /// `pi ∈ {∅, (d-α+2), (d-α+4), (d-α+4, d-α+2)}`, `mu` over the
    /// shift-by-alpha source set. Counts `Q_{d-α}^(1)`.
    AlphaShift { d: u64, alpha: u64 },
}

impl PairKind {
    pub fn validate(&self) -> Result<(), PartitionError> {
        match *self {
            PairKind::LevelA { a, d } => {
                CongruenceSpec::full(a, d)?;
                if d + 3 == 3 * a {
                    return Err(PartitionError::InvalidSpec(format!(
                        "d+3 = 3a makes 2d+6-2a a second copy of the residue a (a = {a}, d = {d})"
                    )));
                }
                Ok(())
            }
            PairKind::AlphaShift { d, alpha } => build_s_shift_alpha(d, alpha).map(|_| ()).map_err(Into::into),
        }
    }

    pub fn menu(&self) -> Vec<Partition> {
        match *self {
            PairKind::LevelA { a, d } => vec![Partition::empty(), Partition::from_sorted(&[d + 3 - a])],
            PairKind::AlphaShift { d, alpha } => {
                let lo = d - alpha + 2;
                let hi = d - alpha + 4;
                vec![
                    Partition::empty(),
                    Partition::from_sorted(&[lo]),
                    Partition::from_sorted(&[hi]),
                    Partition::from_sorted(&[hi, lo]),
                ]
            }
        }
    }

    pub fn universe(&self) -> Result<EventuallyPeriodicSet, PartitionError> {
        self.validate()?;
        Ok(match *self {
            PairKind::LevelA { a, d } => {
                let m = d + 3;
                EventuallyPeriodicSet::new(m, [a, m - a], [2 * m - 2 * a], [m - a])?
            }
            PairKind::AlphaShift { d, alpha } => build_s_shift_alpha(d, alpha)?,
        })
    }

    /// The congruence count the pairs are equinumerous with.
    pub fn direct_count_spec(&self) -> Result<CongruenceSpec, PartitionError> {
        match *self {
            PairKind::LevelA { a, d } => CongruenceSpec::full(a, d),
            PairKind::AlphaShift { d, alpha } => CongruenceSpec::full(1, d - alpha),
        }
    }
}

/// Calls `visit` for every `(pi, mu)` of total weight `n`.
pub fn visit_pairs(
    kind: &PairKind,
    n: u64,
    cap: usize,
    mut visit: impl FnMut(&PairDecomposition),
) -> Result<usize, PartitionError> {
    let universe = kind.universe()?;
    let parts = universe.members_up_to(n);
    let mut total = 0usize;
    for pi in kind.menu() {
        if pi.weight() > n {
            continue;
        }
        let remaining_cap = cap - total;
        total += visit_partitions(&parts, n - pi.weight(), remaining_cap, |mu| {
            visit(&PairDecomposition {
                pi: pi.clone(),
                mu: Partition::from_sorted(mu),
            })
        })
        .map_err(|_| PartitionError::CapExceeded { cap })?;
    }
    Ok(total)
}

pub fn enumerate_pairs(
    kind: &PairKind,
    n: u64,
    cap: usize,
) -> Result<Vec<PairDecomposition>, PartitionError> {
    let mut out = Vec::new();
    visit_pairs(kind, n, cap, |p| out.push(p.clone()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_u64(v: &BigUint) -> u64 {
        u64::try_from(v).unwrap()
    }

    #[test]
    fn gap_examples() {
        assert_eq!(to_u64(&count_gap(&GapSpec::new(2, 254).unwrap(), 100)), 1);
        assert_eq!(to_u64(&count_gap(&GapSpec::new(1, 1).unwrap(), 0)), 1);
        assert_eq!(to_u64(&count_gap(&GapSpec::new(1, 1).unwrap(), 5)), 3);
        assert_eq!(to_u64(&count_gap(&GapSpec::new(2, 254).unwrap(), 260)), 3);
        assert!(GapSpec::new(0, 3).is_err());
        assert!(GapSpec::new(1, 0).is_err());
    }

    #[test]
    fn enumerate_gap_examples() {
        let spec = GapSpec::new(2, 254).unwrap();
        let got = enumerate_gap(&spec, 260, 10).unwrap();
        let want: Vec<Partition> = [vec![260], vec![258, 2], vec![257, 3]]
            .into_iter()
            .map(|p| Partition::new(p).unwrap())
            .collect();
        assert_eq!(got, want);
        assert_eq!(
            enumerate_gap(&GapSpec::new(1, 1).unwrap(), 1, 10).unwrap(),
            vec![Partition::new(vec![1]).unwrap()]
        );
        assert!(enumerate_gap(&GapSpec::new(3, 1).unwrap(), 2, 10).unwrap().is_empty());
        assert_eq!(
            enumerate_gap(&GapSpec::new(1, 1).unwrap(), 30, 5),
            Err(PartitionError::CapExceeded { cap: 5 })
        );
    }

    #[test]
    fn congruence_examples() {
        let q = |a, d, n| to_u64(&count_congruence(&CongruenceSpec::full(a, d).unwrap(), n));
        assert_eq!(q(2, 254, 259), 2);
        assert_eq!(q(2, 255, 256), 2);
        assert_eq!(q(1, 128, 260), 4);
        assert_eq!(q(1, 128, 256), 3);
        assert_eq!(q(2, 10, 0), 1);
        assert!(CongruenceSpec::full(3, 3).is_err());
    }

    #[test]
    fn from_set_examples() {
        let s12 = EventuallyPeriodicSet::new(3, [1, 2], [], []).unwrap();
        // {1, 2} as residues 1, 2 mod 3 would also admit 4, 5, ...; use an
        // explicit part list for the two-element universe instead.
        assert_eq!(to_u64(&part_list_counts(&[1, 2], 4)[4]), 3);
        assert_eq!(to_u64(&count_from_set(&s12, 0)), 1);
        let s = EventuallyPeriodicSet::residue_classes(131, [1, 130]).unwrap();
        assert_eq!(to_u64(&count_from_set(&s, 130)), 2);
    }

    #[test]
    fn parts_at_most_examples() {
        assert_eq!(to_u64(&count_parts_at_most(3, 6)), 7);
        assert_eq!(to_u64(&count_parts_at_most(1, 9)), 1);
        assert_eq!(to_u64(&count_parts_at_most(3, 0)), 1);
    }

    #[test]
    fn pair_examples() {
        let kind = PairKind::LevelA { a: 2, d: 254 };
        assert_eq!(enumerate_pairs(&kind, 259, 100).unwrap().len(), 2);
        let zero = enumerate_pairs(&kind, 0, 100).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].pi.is_empty() && zero[0].mu.is_empty());

        let alpha = PairKind::AlphaShift { d: 130, alpha: 4 };
        let pairs = enumerate_pairs(&alpha, 128, 1000).unwrap();
        assert!(pairs
            .iter()
            .any(|p| p.pi.parts() == [128] && p.mu.is_empty()));
        assert!(PairKind::LevelA { a: 3, d: 6 }.validate().is_err());
    }

    #[test]
    fn compact_key_and_display() {
        let p = Partition::new(vec![1, 5, 1, 1, 1, 5]).unwrap();
        assert_eq!(p.to_string(), "(5,5,1^4)");
        let q = Partition::new(vec![5, 5, 1, 1, 1]).unwrap();
        assert_ne!(p.compact_key(), q.compact_key());
        assert_eq!(Partition::empty().to_string(), "()");
        assert_eq!(runs_key(&[(5, 2), (1, 4)]), p.compact_key());
    }

    #[test]
    fn visit_counts_match_dp() {
        let parts = [2, 11, 15, 24, 28];
        let dp = part_list_counts(&parts, 80);
        for n in 0..=80u64 {
            let c = visit_partitions(&parts, n, usize::MAX, |_| {}).unwrap();
            assert_eq!(c as u64, to_u64(&dp[n as usize]), "n = {n}");
        }
    }
}
