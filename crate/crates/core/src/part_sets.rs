//! Eventually periodic part universes.
//!
//! Every part set used by the injections is a union of residue classes
//! modulo some `M`, adjusted by finitely many added and removed values. The
//! representation keeps membership O(1) and makes the i-th element a binary
//! search over an arithmetic counting function.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("at least one residue class is required for an infinite set")]
    NoResidues,
    #[error("value {0} is both included and excluded")]
    IncludeExcludeOverlap(u64),
    #[error("set members must be positive, got 0")]
    ZeroMember,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// `{v >= 1 : v mod M in residues, or v in includes} \ excludes`.
///
/// Construction normalises the adjustment lists: includes that are already
/// periodic members and excludes that are not periodic members are dropped,
/// so both lists only record genuine deviations from the periodic pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EventuallyPeriodicSet {
    modulus: u64,
    residues: BTreeSet<u64>,
    includes: BTreeSet<u64>,
    excludes: BTreeSet<u64>,
}

impl EventuallyPeriodicSet {
    pub fn new(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        includes: impl IntoIterator<Item = u64>,
        excludes: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SetError> {
        if modulus == 0 {
            return Err(SetError::ZeroModulus);
        }
        let residues: BTreeSet<u64> = residues.into_iter().map(|r| r % modulus).collect();
        if residues.is_empty() {
            return Err(SetError::NoResidues);
        }
        let includes: BTreeSet<u64> = includes.into_iter().collect();
        let excludes: BTreeSet<u64> = excludes.into_iter().collect();
        if includes.contains(&0) || excludes.contains(&0) {
            return Err(SetError::ZeroMember);
        }
        if let Some(v) = includes.intersection(&excludes).next() {
            return Err(SetError::IncludeExcludeOverlap(*v));
        }
        let periodic = |v: u64| residues.contains(&(v % modulus));
        let includes = includes.into_iter().filter(|&v| !periodic(v)).collect();
        let excludes = excludes.into_iter().filter(|&v| periodic(v)).collect();
        Ok(Self {
            modulus,
            residues,
            includes,
            excludes,
        })
    }

    /// Plain residue classes with no adjustments.
    pub fn residue_classes(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SetError> {
        Self::new(modulus, residues, [], [])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn includes(&self) -> &BTreeSet<u64> {
        &self.includes
    }

    pub fn excludes(&self) -> &BTreeSet<u64> {
        &self.excludes
    }

    pub fn contains(&self, v: u64) -> bool {
        if v == 0 {
            return false;
        }
        if self.includes.contains(&v) {
            return true;
        }
        self.residues.contains(&(v % self.modulus)) && !self.excludes.contains(&v)
    }

    /// Number of members in `[1, v]`.
    pub fn count_le(&self, v: u64) -> u64 {
        let m = self.modulus;
        let periodic: u64 = self
            .residues
            .iter()
            .map(|&r| {
                if r == 0 {
                    v / m
                } else if v >= r {
                    (v - r) / m + 1
                } else {
                    0
                }
            })
            .sum();
        let added = self.includes.range(..=v).count() as u64;
        let removed = self.excludes.range(..=v).count() as u64;
        periodic + added - removed
    }

    /// The i-th smallest member, 1-based.
    ///
    /// Panics if `i == 0`.
    pub fn element_at(&self, i: usize) -> u64 {
        assert!(i >= 1, "element indices are 1-based");
        let i = i as u64;
        let mut hi = self.modulus.max(1);
        while self.count_le(hi) < i {
            hi = hi.saturating_mul(2);
        }
        let mut lo = 1u64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.count_le(mid) >= i {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    /// 1-based position of `v` in the increasing enumeration, if `v` is a member.
    pub fn index_of(&self, v: u64) -> Option<usize> {
        self.contains(v).then(|| self.count_le(v) as usize)
    }

    /// All members `<= n` in increasing order.
    pub fn members_up_to(&self, n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut base = 0u64;
        while base <= n {
            for &r in &self.residues {
                let v = base + r;
                if v >= 1 && v <= n && !self.excludes.contains(&v) {
                    out.push(v);
                }
            }
            base = match base.checked_add(self.modulus) {
                Some(b) => b,
                None => break,
            };
        }
        out.extend(self.includes.range(..=n).copied());
        out.sort_unstable();
        out
    }

    /// First `count` members.
    pub fn first(&self, count: usize) -> Vec<u64> {
        (1..=count).map(|i| self.element_at(i)).collect()
    }

    /// Members per period and the value gained over one period.
    pub fn period(&self) -> (usize, u64) {
        (self.residues.len(), self.modulus)
    }

    /// Smallest index from which `x_{i+p} = x_i + M` holds for every later `i`.
    pub fn stable_from(&self) -> usize {
        let last_irregular = self
            .includes
            .iter()
            .chain(self.excludes.iter())
            .copied()
            .max()
            .unwrap_or(0);
        self.count_le(last_irregular) as usize + 1
    }
}

/// `1, d+2, d+4, ..., d+2^top` read as residues modulo `2d`.
pub fn doubling_residues(d: u64, top: u32) -> Vec<u64> {
    std::iter::once(1)
        .chain((1..=top).map(|i| d + (1u64 << i)))
        .collect()
}

/// `S = {x = 1, d (mod d+1)} ∪ {2d} \ {d}`, the source universe of the
/// level-one shift by two.
pub fn build_s_shift2(d: u64) -> Result<EventuallyPeriodicSet, SetError> {
    if d < 5 {
        return Err(SetError::InvalidParameters(format!(
            "S for the shift by two needs d >= 5, got {d}"
        )));
    }
    EventuallyPeriodicSet::new(d + 1, [1, d], [2 * d], [d])
}

/// Values allowed in the exclusion list of [`build_t_r`].
pub fn t_r_exclusion_menu(d: u64) -> [u64; 4] {
    [d + 2, d + 4, d + 8, d + 16]
}

/// `T_r = {y = 1, d+2, d+4, ..., d+2^(r-2) (mod 2d)} \ exclusions`.
pub fn build_t_r(d: u64, r: u32, exclusions: &[u64]) -> Result<EventuallyPeriodicSet, SetError> {
    if r < 2 || r > 62 {
        return Err(SetError::InvalidParameters(format!("r = {r} out of range")));
    }
    if d < 2 || (1u64 << (r - 2)) >= d {
        return Err(SetError::InvalidParameters(format!(
            "residues d + 2^i must stay distinct modulo 2d: need 2^(r-2) < d (d = {d}, r = {r})"
        )));
    }
    let menu = t_r_exclusion_menu(d);
    let residues = doubling_residues(d, r - 2);
    for &x in exclusions {
        if !menu.contains(&x) {
            return Err(SetError::InvalidParameters(format!(
                "exclusion {x} is not one of d+2, d+4, d+8, d+16"
            )));
        }
        if !residues.contains(&x) {
            return Err(SetError::InvalidParameters(format!(
                "exclusion {x} is not a residue of T_{r}"
            )));
        }
    }
    EventuallyPeriodicSet::new(2 * d, residues, [], exclusions.iter().copied())
}

/// `S = {x = 1, d-α+2 (mod d-α+3)} ∪ {2d-2α+4, 2d-2α+8} \ {d-α+2, d-α+4}`.
pub fn build_s_shift_alpha(d: u64, alpha: u64) -> Result<EventuallyPeriodicSet, SetError> {
    if alpha < 3 || d < 4 * alpha {
        return Err(SetError::InvalidParameters(format!(
            "S for the shift by alpha needs alpha >= 3 and d >= 4*alpha (d = {d}, alpha = {alpha})"
        )));
    }
    let m = d - alpha + 3;
    EventuallyPeriodicSet::new(
        m,
        [1, m - 1],
        [2 * m - 2, 2 * m + 2],
        [m - 1, m + 1],
    )
}

/// Outcome of an elementwise comparison `x_i >= y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Domination {
    pub holds: bool,
    pub first_failure: Option<usize>,
    pub horizon: usize,
    /// True when the checked window plus the per-period gains settle the
    /// comparison for every index, not just those up to `horizon`.
    pub conclusive: bool,
}

/// Index horizon after which `A` vs `B` is decided by periodicity alone.
pub fn conclusive_horizon(a: &EventuallyPeriodicSet, b: &EventuallyPeriodicSet) -> usize {
    let (pa, _) = a.period();
    let (pb, _) = b.period();
    let p = pa.lcm(&pb);
    a.stable_from().max(b.stable_from()) + p
}

fn period_gains(a: &EventuallyPeriodicSet, b: &EventuallyPeriodicSet) -> (u128, u128) {
    let (pa, ma) = a.period();
    let (pb, mb) = b.period();
    let p = pa.lcm(&pb);
    (
        ma as u128 * (p / pa) as u128,
        mb as u128 * (p / pb) as u128,
    )
}

/// Checks `element_at(A, i) >= element_at(B, i)` for `1 <= i <= horizon`.
pub fn dominates(
    a: &EventuallyPeriodicSet,
    b: &EventuallyPeriodicSet,
    horizon: usize,
) -> Domination {
    let first_failure = (1..=horizon).find(|&i| a.element_at(i) < b.element_at(i));
    let (gain_a, gain_b) = period_gains(a, b);
    let holds = first_failure.is_none();
    Domination {
        holds,
        first_failure,
        horizon,
        conclusive: first_failure.is_some()
            || (horizon >= conclusive_horizon(a, b) && gain_a >= gain_b),
    }
}

/// Domination for every index, decided with the conclusive horizon.
///
/// When the window passes but `B` gains more per period, the first failing
/// index is located by walking forward period by period.
pub fn dominates_everywhere(a: &EventuallyPeriodicSet, b: &EventuallyPeriodicSet) -> Domination {
    let horizon = conclusive_horizon(a, b);
    let mut result = dominates(a, b, horizon);
    if result.holds && !result.conclusive {
        let (gain_a, gain_b) = period_gains(a, b);
        let slack = (horizon.saturating_sub(horizon / 2)..=horizon)
            .map(|i| a.element_at(i) as i128 - b.element_at(i) as i128)
            .min()
            .unwrap_or(0);
        let deficit = (gain_b - gain_a) as i128;
        let periods = (slack / deficit + 2) as usize;
        let (pa, _) = a.period();
        let (pb, _) = b.period();
        let p = pa.lcm(&pb);
        let far = horizon + periods * p;
        let first = (horizon + 1..=far).find(|&i| a.element_at(i) < b.element_at(i));
        result = Domination {
            holds: false,
            first_failure: first,
            horizon: far,
            conclusive: true,
        };
    }
    result
}

/// One affine expression `c_d·d + c_b·B + c`, with `B = d + base_offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineValue {
    pub d_coeff: i64,
    pub base_coeff: i64,
    pub constant: i64,
}

impl AffineValue {
    pub const fn new(d_coeff: i64, base_coeff: i64, constant: i64) -> Self {
        Self {
            d_coeff,
            base_coeff,
            constant,
        }
    }

    fn eval(&self, d: i64, base: i64) -> i64 {
        self.d_coeff * d + self.base_coeff * base + self.constant
    }
}

/// Row family `i = period·k + offset (k >= k_min)`, whose value is
/// `(dk·k + d0)·d + (bk·k + b0)·B + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormFamily {
    pub period: u64,
    pub offset: u64,
    pub k_min: u64,
    pub d_per_k: i64,
    pub d_at_zero: i64,
    pub base_per_k: i64,
    pub base_at_zero: i64,
    pub constant: i64,
}

impl ClosedFormFamily {
    fn covers(&self, i: u64) -> Option<i64> {
        if i % self.period != self.offset % self.period || i < self.offset {
            return None;
        }
        let k = (i - self.offset) / self.period;
        (k >= self.k_min).then_some(k as i64)
    }
}

/// Prefix plus index-pattern families describing the i-th element of a set
/// as a closed form in `d` (and an auxiliary base `B = d + base_offset`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormTable {
    pub name: String,
    pub base_offset: i64,
    pub prefix: Vec<AffineValue>,
    pub families: Vec<ClosedFormFamily>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub table: String,
    pub d: u64,
    pub depth: usize,
    pub holds: bool,
    /// `(i, tabulated, actual)`; `tabulated` is `None` when no row covers `i`.
    pub first_mismatch: Option<(usize, Option<i64>, u64)>,
}

impl ClosedFormTable {
    /// Tabulated value at 1-based index `i`, if some row covers it.
    pub fn value_at(&self, i: usize, d: u64) -> Option<i64> {
        let d = d as i64;
        let base = d + self.base_offset;
        if i >= 1 && i <= self.prefix.len() {
            return Some(self.prefix[i - 1].eval(d, base));
        }
        self.families.iter().find_map(|f| {
            f.covers(i as u64).map(|k| {
                (f.d_per_k * k + f.d_at_zero) * d
                    + (f.base_per_k * k + f.base_at_zero) * base
                    + f.constant
            })
        })
    }
}

/// Compares a closed-form table with the enumerated set for `1 <= i <= depth`.
pub fn closed_form_check(
    set: &EventuallyPeriodicSet,
    table: &ClosedFormTable,
    d: u64,
    depth: usize,
) -> ClosedFormReport {
    let first_mismatch = (1..=depth).find_map(|i| {
        let actual = set.element_at(i);
        let tab = table.value_at(i, d);
        (tab != Some(actual as i64)).then_some((i, tab, actual))
    });
    ClosedFormReport {
        table: table.name.clone(),
        d,
        depth,
        holds: first_mismatch.is_none(),
        first_mismatch,
    }
}

/// Built-in closed-form tables for the part universes.
pub mod tables {
    use super::{AffineValue as V, ClosedFormFamily, ClosedFormTable};

    #[allow(clippy::too_many_arguments)]
    fn fam(
        period: u64,
        offset: u64,
        k_min: u64,
        d_per_k: i64,
        d_at_zero: i64,
        base_per_k: i64,
        base_at_zero: i64,
        constant: i64,
    ) -> ClosedFormFamily {
        ClosedFormFamily {
            period,
            offset,
            k_min,
            d_per_k,
            d_at_zero,
            base_per_k,
            base_at_zero,
            constant,
        }
    }

    /// `x_i` of `S = {1, d (mod d+1)} ∪ {2d} \ {d}`; base `B = d+1`.
    pub fn s_shift2() -> ClosedFormTable {
        ClosedFormTable {
            name: "S (shift by 2)".into(),
            base_offset: 1,
            prefix: vec![V::new(0, 0, 1), V::new(1, 0, 2), V::new(2, 0, 0)],
            families: vec![
                fam(6, 0, 1, 0, 0, 3, 0, -1),
                fam(6, 1, 1, 0, 0, 3, 0, 1),
                fam(6, 2, 1, 0, 0, 3, 1, -1),
                fam(6, 3, 1, 0, 0, 3, 1, 1),
                fam(6, 4, 0, 0, 0, 3, 2, -1),
                fam(6, 5, 0, 0, 0, 3, 2, 1),
            ],
        }
    }

    /// `y_{7,i}` of `T_7` with `d+4, d+8` removed.
    pub fn t7() -> ClosedFormTable {
        ClosedFormTable {
            name: "T_7".into(),
            base_offset: 0,
            prefix: vec![V::new(0, 0, 1), V::new(1, 0, 2), V::new(1, 0, 16)],
            families: vec![
                fam(6, 0, 1, 2, 1, 0, 0, 2),
                fam(6, 1, 1, 2, 1, 0, 0, 4),
                fam(6, 2, 1, 2, 1, 0, 0, 8),
                fam(6, 3, 1, 2, 1, 0, 0, 16),
                fam(6, 4, 0, 2, 1, 0, 0, 32),
                fam(6, 5, 0, 2, 2, 0, 0, 1),
            ],
        }
    }

    /// First ten elements of `T_r` (with `d+4, d+8` removed) for `8 <= r <= 12`.
    pub fn t_r_prefix(r: u32) -> Option<ClosedFormTable> {
        if !(8..=12).contains(&r) {
            return None;
        }
        let mut prefix = vec![V::new(0, 0, 1), V::new(1, 0, 2)];
        let mut e = 4;
        while prefix.len() < 10 && e <= r - 2 {
            prefix.push(V::new(1, 0, 1 << e));
            e += 1;
        }
        let mut tail = [
            V::new(2, 0, 1),
            V::new(3, 0, 2),
            V::new(3, 0, 4),
            V::new(3, 0, 8),
            V::new(3, 0, 16),
        ]
        .into_iter();
        while prefix.len() < 10 {
            prefix.push(tail.next().expect("ten entries"));
        }
        Some(ClosedFormTable {
            name: format!("T_{r} (first ten)"),
            base_offset: 0,
            prefix,
            families: vec![],
        })
    }

    /// `x_i` of the shift-by-alpha source set; base `B = d - α + 3`.
    pub fn s_shift_alpha(alpha: u64) -> ClosedFormTable {
        ClosedFormTable {
            name: format!("S (shift by alpha = {alpha})"),
            base_offset: 3 - alpha as i64,
            prefix: vec![
                V::new(0, 0, 1),
                V::new(0, 2, -2),
                V::new(0, 2, -1),
                V::new(0, 2, 1),
                V::new(0, 2, 2),
            ],
            families: vec![
                fam(10, 6, 0, 0, 0, 5, 3, -1),
                fam(10, 7, 0, 0, 0, 5, 3, 1),
                fam(10, 8, 0, 0, 0, 5, 4, -1),
                fam(10, 9, 0, 0, 0, 5, 4, 1),
                fam(10, 0, 1, 0, 0, 5, 0, -1),
                fam(10, 1, 1, 0, 0, 5, 0, 1),
                fam(10, 2, 1, 0, 0, 5, 1, -1),
                fam(10, 3, 1, 0, 0, 5, 1, 1),
                fam(10, 4, 1, 0, 0, 5, 2, -1),
                fam(10, 5, 1, 0, 0, 5, 2, 1),
            ],
        }
    }

    /// `y_{12,i}` as tabulated alongside the shift-by-alpha source set:
    /// ten elements per `2d`-period. This omits the members `2kd + 1`
    /// (k >= 1), so it disagrees with the actual set from `i = 8` on.
    pub fn t12_tabulated() -> ClosedFormTable {
        let mut families = vec![
            fam(10, 6, 0, 2, 1, 0, 0, 512),
            fam(10, 7, 0, 2, 1, 0, 0, 1024),
            fam(10, 8, 0, 2, 3, 0, 0, 2),
            fam(10, 9, 0, 2, 3, 0, 0, 4),
        ];
        for (s, c) in [(0, 8), (1, 16), (2, 32), (3, 64), (4, 128), (5, 256)] {
            families.push(fam(10, s, 1, 2, 1, 0, 0, c));
        }
        ClosedFormTable {
            name: "T_12 (tabulated)".into(),
            base_offset: 0,
            prefix: vec![
                V::new(0, 0, 1),
                V::new(1, 0, 32),
                V::new(1, 0, 64),
                V::new(1, 0, 128),
                V::new(1, 0, 256),
            ],
            families,
        }
    }

    /// Complete closed form of `T_12 \ {d+2, d+4, d+8, d+16}`: seven prefix
    /// elements, then eleven elements per `2d`-period.
    pub fn t12_complete() -> ClosedFormTable {
        let mut prefix = vec![V::new(0, 0, 1)];
        for e in 5..=10 {
            prefix.push(V::new(1, 0, 1 << e));
        }
        let mut families = vec![
            fam(11, 8, 0, 2, 2, 0, 0, 1),
            fam(11, 9, 0, 2, 3, 0, 0, 2),
            fam(11, 10, 0, 2, 3, 0, 0, 4),
        ];
        for s in 0..=7u64 {
            families.push(fam(11, s, 1, 2, 1, 0, 0, 1 << (s + 3)));
        }
        ClosedFormTable {
            name: "T_12 (complete)".into(),
            base_offset: 0,
            prefix,
            families,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_shift2_first_elements() {
        let s = build_s_shift2(130).unwrap();
        assert_eq!(s.first(3), vec![1, 132, 260]);
        assert_eq!(s.element_at(4), 261);
        assert_eq!(s.element_at(6), 392);
        assert!(!s.contains(130));
        assert!(build_s_shift2(4).is_err());
    }

    #[test]
    fn t_r_elements() {
        let t = build_t_r(130, 7, &[134, 138]).unwrap();
        assert_eq!(t.first(4), vec![1, 132, 146, 162]);
        assert!(t.contains(1));
        let t12 = build_t_r(5000, 12, &[5002, 5004, 5008, 5016]).unwrap();
        assert_eq!(t12.element_at(2), 5032);
        assert!(build_t_r(130, 7, &[133]).is_err());
        assert!(build_t_r(20, 8, &[]).is_err());
    }

    #[test]
    fn s_shift_alpha_elements() {
        let s = build_s_shift_alpha(4100, 4).unwrap();
        assert_eq!(s.first(5), vec![1, 8196, 8197, 8199, 8200]);
        assert_eq!(s.element_at(8), 16395);
        assert!(!s.contains(4098));
        assert!(!s.contains(4100));
        assert!(build_s_shift_alpha(11, 3).is_err());
    }

    #[test]
    fn index_of_inverts_element_at() {
        let s = build_s_shift_alpha(400, 5).unwrap();
        for i in 1..200 {
            assert_eq!(s.index_of(s.element_at(i)), Some(i));
        }
        assert_eq!(s.index_of(2), None);
    }

    #[test]
    fn members_up_to_matches_filter() {
        let s = build_s_shift2(9).unwrap();
        let brute: Vec<u64> = (1..=200).filter(|&v| s.contains(v)).collect();
        assert_eq!(s.members_up_to(200), brute);
    }

    #[test]
    fn domination_examples() {
        let s = build_s_shift2(130).unwrap();
        let t = build_t_r(130, 7, &[134, 138]).unwrap();
        let fwd = dominates(&s, &t, 200);
        assert!(fwd.holds && fwd.conclusive);
        let rev = dominates(&t, &s, 200);
        assert_eq!(rev.first_failure, Some(3));
        assert!(dominates(&s, &s, 50).holds);
    }

    #[test]
    fn dominates_everywhere_finds_late_failure() {
        // 3 members per 10 against 2 per 10: the denser set starts ahead but falls behind.
        let late: Vec<u64> = (0..10).flat_map(|k| [10 * k + 1, 10 * k + 2, 10 * k + 3]).collect();
        let b = EventuallyPeriodicSet::new(10, [1, 2, 3], [], late).unwrap();
        let a = EventuallyPeriodicSet::residue_classes(10, [1, 2]).unwrap();
        assert!(dominates(&b, &a, 7).holds);
        let dom = dominates_everywhere(&b, &a);
        assert!(!dom.holds);
        let i = dom.first_failure.unwrap();
        assert!(b.element_at(i) < a.element_at(i));
        assert!((1..i).all(|j| b.element_at(j) >= a.element_at(j)));
    }

    #[test]
    fn closed_form_tables() {
        let s = build_s_shift2(130).unwrap();
        assert!(closed_form_check(&s, &tables::s_shift2(), 130, 60).holds);
        let t = build_t_r(130, 7, &[134, 138]).unwrap();
        assert!(closed_form_check(&t, &tables::t7(), 130, 60).holds);
        let mut tampered = tables::t7();
        tampered.families[4].constant = 31;
        assert!(!closed_form_check(&t, &tampered, 130, 60).holds);
    }

    #[test]
    fn t_r_prefix_tables() {
        for r in 8..=12u32 {
            let d = 5000;
            let t = build_t_r(d, r, &[d + 4, d + 8]).unwrap();
            let table = tables::t_r_prefix(r).unwrap();
            assert!(closed_form_check(&t, &table, d, 10).holds, "r = {r}");
        }
    }

    #[test]
    fn t12_tabulated_skips_the_one_class() {
        let d = 5000;
        let t = build_t_r(d, 12, &t_r_exclusion_menu(d)).unwrap();
        let rep = closed_form_check(&t, &tables::t12_tabulated(), d, 60);
        assert_eq!(rep.first_mismatch, Some((8, Some(3 * 5000 + 2), 2 * 5000 + 1)));
        assert!(closed_form_check(&t, &tables::t12_complete(), d, 60).holds);
        let s = build_s_shift_alpha(d, 4).unwrap();
        assert!(closed_form_check(&s, &tables::s_shift_alpha(4), d, 60).holds);
    }
}
