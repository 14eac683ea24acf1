//! Weight-preserving maps between partition families and exhaustive
//! injectivity certificates.
//!
//! Three building blocks:
//!
//! - [`phi`]: replace the i-th source element by the i-th target element and
//!   pad with copies of the smallest target element `m`.
//! - [`ShiftTwoMap`] and [`AlphaShiftMap`]: maps from `(pi, mu)` pairs into
//!   the partitions generated by `g_d` (or `L_d` when `d = 2^r - 1`). Special
//!   parts in `pi` are traded for marker parts whose multiplicities encode the
//!   index of the smallest non-unit part of `mu`.
//! - [`BetaMap`]: parts `= ±2 (mod d+3)` of an odd weight to parts
//!   `= ±2 (mod d+2)` of weight one larger.
//!
//! [`verify_injection`] enumerates a whole domain slice, applies a map and
//! records whether images are distinct, have the right weight and lie in the
//! target family.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::part_sets::{build_s_shift2, build_s_shift_alpha, build_t_r, EventuallyPeriodicSet, SetError};
use crate::partition::{
    count_congruence, runs_key, visit_pairs, visit_partition_runs, visit_partitions, CongruenceSpec, PairDecomposition, PairKind,
    Partition, PartitionError,
};
use crate::series::{g_residues, g_series, l_residues, l_series, SeriesError};
use crate::{is_mersenne, log2_floor_succ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InjectionError {
    #[error("part {part} is not in the source set")]
    NotInSource { part: u64 },
    #[error("hypothesis fails at index {index}: source {source_value}, target {target_value}")]
    HypothesisViolation {
        index: usize,
        source_value: u64,
        target_value: u64,
    },
    #[error("weight {weight} is not divisible by {m}")]
    WeightNotDivisible { weight: u64, m: u64 },
    #[error("smallest target element is {found}, expected {expected}")]
    SmallestTargetMismatch { expected: u64, found: u64 },
    #[error("special part list {0} is not on the menu")]
    MenuViolation(String),
    #[error("padding would be negative ({padding}) at source index {m}")]
    NegativePadding { m: usize, padding: i128 },
    #[error("not enough weight: {0}")]
    TooSmall(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `m = ell(ell+1)/2 + j` with `0 <= j <= ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularIndex {
    pub m: u64,
    pub ell: u64,
    pub j: u64,
}

pub fn triangular(ell: u64) -> u64 {
    ell * (ell + 1) / 2
}

/// Largest `ell` with `T_ell <= m`, and the remainder `j = m - T_ell`.
pub fn triangular_decompose(m: u64) -> TriangularIndex {
    let mut ell = ((8 * m as u128 + 1).sqrt() as u64 - 1) / 2;
    // Guard against rounding at the boundary.
    while triangular(ell + 1) <= m {
        ell += 1;
    }
    while triangular(ell) > m {
        ell -= 1;
    }
    TriangularIndex {
        m,
        ell,
        j: m - triangular(ell),
    }
}

/// Replace-and-pad map from partitions over `source` to partitions over
/// `target`: the part `x_i` becomes `y_i`, then `sum (x_i - y_i) / m` parts of
/// size `m = y_1` are appended.
pub fn phi(
    source: &EventuallyPeriodicSet,
    target: &EventuallyPeriodicSet,
    m: u64,
    p: &Partition,
) -> Result<Partition, InjectionError> {
    if m == 0 || p.weight() % m != 0 {
        return Err(InjectionError::WeightNotDivisible { weight: p.weight(), m });
    }
    let y1 = target.element_at(1);
    if y1 != m {
        return Err(InjectionError::SmallestTargetMismatch { expected: m, found: y1 });
    }
    let out = phi_parts(source, target, m, p.parts())?;
    Ok(Partition::new(out)?)
}

// Replacement and padding without the divisibility check on the total weight.
fn phi_parts(
    source: &EventuallyPeriodicSet,
    target: &EventuallyPeriodicSet,
    m: u64,
    parts: &[u64],
) -> Result<Vec<u64>, InjectionError> {
    let mut out = Vec::with_capacity(parts.len() + 4);
    let mut excess = 0u64;
    let mut cached: Option<(u64, u64)> = None;
    for &x in parts {
        let y = match cached {
            Some((cx, cy)) if cx == x => cy,
            _ => {
                let index = source.index_of(x).ok_or(InjectionError::NotInSource { part: x })?;
                let y = target.element_at(index);
                if y > x || y % m != 0 {
                    return Err(InjectionError::HypothesisViolation {
                        index,
                        source_value: x,
                        target_value: y,
                    });
                }
                cached = Some((x, y));
                y
            }
        };
        excess += x - y;
        out.push(y);
    }
    if excess % m != 0 {
        return Err(InjectionError::WeightNotDivisible { weight: excess, m });
    }
    out.extend(std::iter::repeat(m).take((excess / m) as usize));
    Ok(out)
}

/// Which generating function the shift maps land in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftTarget {
    /// `g_d`: unlimited parts in the doubling residues up to `d+2^{r-2}`,
    /// distinct parts `= d+2^{r-1} (mod 2d)`.
    G,
    /// `L_d` with `d = 2^r - 1`: unlimited parts in the doubling residues up
    /// to `d+2^{r-1}`.
    L,
}

impl ShiftTarget {
    /// `L` when `d = 2^r - 1`, `G` otherwise.
    pub fn natural(d: u64) -> Self {
        if is_mersenne(d) {
            ShiftTarget::L
        } else {
            ShiftTarget::G
        }
    }
}

/// Membership test for the partitions generated by `g_d` or `L_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetUniverse {
    pub modulus: u64,
    pub unlimited: Vec<u64>,
    pub distinct: Option<u64>,
}

impl TargetUniverse {
    pub fn for_shift(d: u64, target: ShiftTarget) -> Result<Self, InjectionError> {
        Ok(match target {
            ShiftTarget::G => {
                let (unlimited, distinct) = g_residues(d)?;
                Self {
                    modulus: 2 * d,
                    unlimited,
                    distinct: Some(distinct),
                }
            }
            ShiftTarget::L => Self {
                modulus: 2 * d,
                unlimited: l_residues(d)?,
                distinct: None,
            },
        })
    }

    /// `Err` names the first offending part.
    pub fn admits(&self, p: &Partition) -> Result<(), String> {
        let mut prev: Option<u64> = None;
        for &x in p.parts() {
            let res = x % self.modulus;
            if self.unlimited.contains(&res) {
                prev = Some(x);
                continue;
            }
            if Some(res) == self.distinct {
                if prev == Some(x) {
                    return Err(format!("part {x} repeats but must be distinct"));
                }
                prev = Some(x);
                continue;
            }
            return Err(format!("part {x} is outside the target residues"));
        }
        Ok(())
    }

    pub fn counts(&self, d: u64, n: u64, target: ShiftTarget) -> Result<BigUint, InjectionError> {
        let s = match target {
            ShiftTarget::G => g_series(d, n as usize)?,
            ShiftTarget::L => l_series(d, n as usize)?,
        };
        Ok(s.coeff(n as usize).magnitude().clone())
    }
}

/// Which branch of a shift map produced an image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PsiCase {
    /// No special part: plain replace-and-pad.
    Case1,
    /// One special part, `mu` only ones.
    Case2a,
    /// One special part, `mu` has a part above one.
    Case2b,
    /// Both special parts, `mu` only ones.
    Case3a,
    /// Both special parts, `mu` has a part above one.
    Case3b,
}

impl fmt::Display for PsiCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PsiCase::Case1 => "1",
            PsiCase::Case2a => "2a",
            PsiCase::Case2b => "2b",
            PsiCase::Case3a => "3a",
            PsiCase::Case3b => "3b",
        })
    }
}

/// The smallest part above one in `mu` and `mu` with one copy of it removed.
fn split_smallest_nonunit(mu: &Partition) -> Option<(u64, Vec<u64>)> {
    let parts = mu.parts();
    let pos = parts.iter().rposition(|&x| x > 1)?;
    let mut rest = parts.to_vec();
    let x = rest.remove(pos);
    Some((x, rest))
}

fn push_copies(out: &mut Vec<u64>, value: u64, count: u64) {
    out.extend(std::iter::repeat(value).take(count as usize));
}

/// Map from the pairs counted by `Q_{d-2}^(1)` into the partitions counted by
/// `g_d` (or `L_d`).
///
/// `pi` is empty or `(d)`; `mu` runs over `S = {1, d (mod d+1)} ∪ {2d} \ {d}`.
/// The special part `d` is traded for `ell - j` copies of `d+4` and `j`
/// copies of `d+8`, where `T_ell + j` is the index of the smallest non-unit
/// part of `mu`.
#[derive(Clone, Debug)]
pub struct ShiftTwoMap {
    d: u64,
    r: u32,
    target: ShiftTarget,
    source: EventuallyPeriodicSet,
    phi_target: EventuallyPeriodicSet,
}

impl ShiftTwoMap {
    pub fn new(d: u64, target: ShiftTarget) -> Result<Self, InjectionError> {
        let r = log2_floor_succ(d);
        match target {
            ShiftTarget::G => {
                if d <= 127 || is_mersenne(d) {
                    return Err(InjectionError::InvalidParameters(format!(
                        "the g_d target needs d > 127 and d != 2^r - 1 (d = {d})"
                    )));
                }
            }
            ShiftTarget::L => {
                if !is_mersenne(d) || r < 6 {
                    return Err(InjectionError::InvalidParameters(format!(
                        "the L_d target needs d = 2^r - 1 with r >= 6 (d = {d})"
                    )));
                }
            }
        }
        Ok(Self {
            d,
            r,
            target,
            source: build_s_shift2(d)?,
            phi_target: build_t_r(d, r, &[d + 4, d + 8])?,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn target(&self) -> ShiftTarget {
        self.target
    }

    pub fn source(&self) -> &EventuallyPeriodicSet {
        &self.source
    }

    pub fn phi_target(&self) -> &EventuallyPeriodicSet {
        &self.phi_target
    }

    /// The pair family this map is defined on.
    pub fn pair_kind(&self) -> PairKind {
        PairKind::LevelA { a: 1, d: self.d - 2 }
    }

    pub fn markers(&self) -> (u64, u64) {
        (self.d + 4, self.d + 8)
    }

    /// Ones left over in Case 2b when the smallest non-unit part has source
    /// index `m`: `d + x_m - (d+4)ell - 4j`.
    pub fn padding(&self, m: usize) -> i128 {
        let t = triangular_decompose(m as u64);
        let (l1, l2) = self.markers();
        self.d as i128 + self.source.element_at(m) as i128
            - (t.ell - t.j) as i128 * l1 as i128
            - t.j as i128 * l2 as i128
    }

    pub fn apply(&self, pair: &PairDecomposition) -> Result<(Partition, PsiCase), InjectionError> {
        let d = self.d;
        let phi_mu = |parts: &[u64]| phi_parts(&self.source, &self.phi_target, 1, parts);
        match pair.pi.parts() {
            [] => Ok((Partition::new(phi_mu(pair.mu.parts())?)?, PsiCase::Case1)),
            [p] if *p == d => {
                let (l1, l2) = self.markers();
                match split_smallest_nonunit(&pair.mu) {
                    None => {
                        let ones = pair.mu.len() as u64;
                        if ones < 4 {
                            return Err(InjectionError::TooSmall(format!(
                                "case 2a needs n >= d+4, got n = {}",
                                pair.weight()
                            )));
                        }
                        let mut out = vec![l1];
                        push_copies(&mut out, 1, ones - 4);
                        Ok((Partition::new(out)?, PsiCase::Case2a))
                    }
                    Some((x, rest)) => {
                        let m = self.source.index_of(x).ok_or(InjectionError::NotInSource { part: x })?;
                        let padding = self.padding(m);
                        if padding < 0 {
                            return Err(InjectionError::NegativePadding { m, padding });
                        }
                        let t = triangular_decompose(m as u64);
                        let mut out = Vec::new();
                        push_copies(&mut out, l2, t.j);
                        push_copies(&mut out, l1, t.ell - t.j);
                        push_copies(&mut out, 1, padding as u64);
                        out.extend(phi_mu(&rest)?);
                        Ok((Partition::new(out)?, PsiCase::Case2b))
                    }
                }
            }
            _ => Err(InjectionError::MenuViolation(pair.pi.to_string())),
        }
    }
}

/// Map from the pairs counted by `Q_{d-α}^(1)` into the partitions counted
/// by `g_d` (or `L_d`).
///
/// `pi` is a sub-multiset of `{d-α+2, d-α+4}`. One special part is traded for
/// marker parts `(d+2, d+8)` or `(d+4, d+16)` as in [`ShiftTwoMap`]; both
/// special parts are traded for one part `d+2^{r-1}` plus markers chosen by
/// the parity of the source index `m` and the triangular decomposition of
/// `floor(m/2)`.
#[derive(Clone, Debug)]
pub struct AlphaShiftMap {
    d: u64,
    alpha: u64,
    r: u32,
    target: ShiftTarget,
    source: EventuallyPeriodicSet,
    phi_target: EventuallyPeriodicSet,
}

impl AlphaShiftMap {
    pub fn new(d: u64, alpha: u64, target: ShiftTarget) -> Result<Self, InjectionError> {
        if alpha < 3 || d < (4 * alpha).max(4095) {
            return Err(InjectionError::InvalidParameters(format!(
                "needs alpha >= 3 and d >= max(4 alpha, 4095) (d = {d}, alpha = {alpha})"
            )));
        }
        if target != ShiftTarget::natural(d) {
            return Err(InjectionError::InvalidParameters(format!(
                "d = {d} calls for the {:?} target",
                ShiftTarget::natural(d)
            )));
        }
        let r = log2_floor_succ(d);
        Ok(Self {
            d,
            alpha,
            r,
            target,
            source: build_s_shift_alpha(d, alpha)?,
            phi_target: build_t_r(d, r, &[d + 2, d + 4, d + 8, d + 16])?,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn target(&self) -> ShiftTarget {
        self.target
    }

    pub fn source(&self) -> &EventuallyPeriodicSet {
        &self.source
    }

    pub fn phi_target(&self) -> &EventuallyPeriodicSet {
        &self.phi_target
    }

    pub fn pair_kind(&self) -> PairKind {
        PairKind::AlphaShift {
            d: self.d,
            alpha: self.alpha,
        }
    }

    fn low_special(&self) -> u64 {
        self.d - self.alpha + 2
    }

    fn high_special(&self) -> u64 {
        self.d - self.alpha + 4
    }

    fn lead(&self) -> u64 {
        self.d + (1u64 << (self.r - 1))
    }

    /// Markers for a single special part `special`.
    fn single_markers(&self, special: u64) -> (u64, u64) {
        if special == self.low_special() {
            (self.d + 2, self.d + 8)
        } else {
            (self.d + 4, self.d + 16)
        }
    }

    /// Markers, triangular index and padding for the both-special case.
    pub fn both_special_layout(&self, m: usize) -> Result<((u64, u64), TriangularIndex, i128), InjectionError> {
        let m_half = (m / 2) as u64;
        if m_half == 0 {
            return Err(InjectionError::InvalidParameters(
                "source index 1 is the part 1, never the smallest non-unit part".into(),
            ));
        }
        let markers = if m % 2 == 0 {
            (self.d + 2, self.d + 8)
        } else {
            (self.d + 4, self.d + 16)
        };
        let t = triangular_decompose(m_half);
        let padding = (2 * self.d - 2 * self.alpha + 6) as i128 + self.source.element_at(m) as i128
            - self.lead() as i128
            - t.j as i128 * markers.1 as i128
            - (t.ell - t.j) as i128 * markers.0 as i128;
        Ok((markers, t, padding))
    }

    /// Padding for a single special part `special` at source index `m`.
    pub fn single_special_padding(&self, special: u64, m: usize) -> i128 {
        let (l1, l2) = self.single_markers(special);
        let t = triangular_decompose(m as u64);
        special as i128 + self.source.element_at(m) as i128
            - (t.ell - t.j) as i128 * l1 as i128
            - t.j as i128 * l2 as i128
    }

    pub fn apply(&self, pair: &PairDecomposition) -> Result<(Partition, PsiCase), InjectionError> {
        let phi_mu = |parts: &[u64]| phi_parts(&self.source, &self.phi_target, 1, parts);
        let ones = || pair.mu.len() as u64;
        let (lo, hi) = (self.low_special(), self.high_special());
        match pair.pi.parts() {
            [] => Ok((Partition::new(phi_mu(pair.mu.parts())?)?, PsiCase::Case1)),
            [p] if *p == lo || *p == hi => {
                let special = *p;
                let (l1, l2) = self.single_markers(special);
                match split_smallest_nonunit(&pair.mu) {
                    None => {
                        let total = special + ones();
                        if total < l1 {
                            return Err(InjectionError::TooSmall(format!(
                                "case 2a needs weight at least {l1}, got {total}"
                            )));
                        }
                        let mut out = vec![l1];
                        push_copies(&mut out, 1, total - l1);
                        Ok((Partition::new(out)?, PsiCase::Case2a))
                    }
                    Some((x, rest)) => {
                        let m = self.source.index_of(x).ok_or(InjectionError::NotInSource { part: x })?;
                        let padding = self.single_special_padding(special, m);
                        if padding < 0 {
                            return Err(InjectionError::NegativePadding { m, padding });
                        }
                        let t = triangular_decompose(m as u64);
                        let mut out = Vec::new();
                        push_copies(&mut out, l2, t.j);
                        push_copies(&mut out, l1, t.ell - t.j);
                        push_copies(&mut out, 1, padding as u64);
                        out.extend(phi_mu(&rest)?);
                        Ok((Partition::new(out)?, PsiCase::Case2b))
                    }
                }
            }
            [p, q] if *p == hi && *q == lo => {
                let lead = self.lead();
                match split_smallest_nonunit(&pair.mu) {
                    None => {
                        let total = lo + hi + ones();
                        if total < lead {
                            return Err(InjectionError::TooSmall(format!(
                                "case 3a needs weight at least {lead}, got {total}"
                            )));
                        }
                        let mut out = vec![lead];
                        push_copies(&mut out, 1, total - lead);
                        Ok((Partition::new(out)?, PsiCase::Case3a))
                    }
                    Some((x, rest)) => {
                        let m = self.source.index_of(x).ok_or(InjectionError::NotInSource { part: x })?;
                        let ((l1, l2), t, padding) = self.both_special_layout(m)?;
                        if padding < 0 {
                            return Err(InjectionError::NegativePadding { m, padding });
                        }
                        let mut out = vec![lead];
                        push_copies(&mut out, l2, t.j);
                        push_copies(&mut out, l1, t.ell - t.j);
                        push_copies(&mut out, 1, padding as u64);
                        out.extend(phi_mu(&rest)?);
                        Ok((Partition::new(out)?, PsiCase::Case3b))
                    }
                }
            }
            _ => Err(InjectionError::MenuViolation(pair.pi.to_string())),
        }
    }
}

/// Odd-weight partitions into parts `= ±2 (mod d+3)` to partitions into parts
/// `= ±2 (mod d+2)` of weight one larger, `d` even.
#[derive(Clone, Debug)]
pub struct BetaMap {
    d: u64,
    source: EventuallyPeriodicSet,
    target: EventuallyPeriodicSet,
}

impl BetaMap {
    pub fn new(d: u64) -> Result<Self, InjectionError> {
        if d % 2 != 0 || d < 4 {
            return Err(InjectionError::InvalidParameters(format!(
                "needs an even d >= 4 (d = {d})"
            )));
        }
        Ok(Self {
            d,
            source: CongruenceSpec::full(2, d)?.part_set(),
            target: CongruenceSpec::full(2, d - 1)?.part_set(),
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn source(&self) -> &EventuallyPeriodicSet {
        &self.source
    }

    pub fn target(&self) -> &EventuallyPeriodicSet {
        &self.target
    }

    pub fn apply(&self, p: &Partition) -> Result<Partition, InjectionError> {
        self.apply_parts(p.parts())
    }

    fn apply_parts(&self, parts: &[u64]) -> Result<Partition, InjectionError> {
        let weight: u64 = parts.iter().sum();
        if weight % 2 == 0 {
            return Err(InjectionError::Parity(format!("weight {weight} is even")));
        }
        let mut out = Vec::with_capacity(parts.len() + 4);
        let mut excess = 0u64;
        for &x in parts {
            let index = self.source.index_of(x).ok_or(InjectionError::NotInSource { part: x })?;
            let y = self.target.element_at(index);
            if y > x {
                return Err(InjectionError::HypothesisViolation {
                    index,
                    source_value: x,
                    target_value: y,
                });
            }
            excess += x - y;
            out.push(y);
        }
        // Every target element is even, so the excess is odd.
        push_copies(&mut out, 2, (excess + 1) / 2);
        Ok(Partition::new(out)?)
    }
}

/// Which map a certificate covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InjectionKind {
    Phi,
    PsiShift2,
    PsiShiftAlpha,
    Beta,
}

impl fmt::Display for InjectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InjectionKind::Phi => "phi",
            InjectionKind::PsiShift2 => "psi-shift2",
            InjectionKind::PsiShiftAlpha => "psi-shift-alpha",
            InjectionKind::Beta => "beta",
        })
    }
}

/// A map together with everything needed to enumerate its domain.
#[derive(Clone, Debug)]
pub enum InjectionSpec {
    Phi {
        source: EventuallyPeriodicSet,
        target: EventuallyPeriodicSet,
        m: u64,
    },
    PsiShift2(ShiftTwoMap),
    PsiShiftAlpha(AlphaShiftMap),
    Beta(BetaMap),
}

impl InjectionSpec {
    pub fn kind(&self) -> InjectionKind {
        match self {
            InjectionSpec::Phi { .. } => InjectionKind::Phi,
            InjectionSpec::PsiShift2(_) => InjectionKind::PsiShift2,
            InjectionSpec::PsiShiftAlpha(_) => InjectionKind::PsiShiftAlpha,
            InjectionSpec::Beta(_) => InjectionKind::Beta,
        }
    }

    fn parameters(&self) -> BTreeMap<String, u64> {
        let mut p = BTreeMap::new();
        match self {
            InjectionSpec::Phi { m, .. } => {
                p.insert("m".into(), *m);
            }
            InjectionSpec::PsiShift2(map) => {
                p.insert("d".into(), map.d());
                p.insert("r".into(), map.r() as u64);
            }
            InjectionSpec::PsiShiftAlpha(map) => {
                p.insert("d".into(), map.d());
                p.insert("alpha".into(), map.alpha());
                p.insert("r".into(), map.r() as u64);
            }
            InjectionSpec::Beta(map) => {
                p.insert("a".into(), 2);
                p.insert("d".into(), map.d());
            }
        }
        p
    }

    fn image_weight(&self, n: u64) -> u64 {
        match self {
            InjectionSpec::Beta(_) => n + 1,
            _ => n,
        }
    }
}

const MAX_COUNTEREXAMPLES: usize = 20;

/// Outcome of applying a map to every element of one domain slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectionCertificate {
    pub kind: InjectionKind,
    pub parameters: BTreeMap<String, u64>,
    pub n: u64,
    pub image_weight: u64,
    pub domain_size: u64,
    pub images_distinct: bool,
    pub weight_ok: bool,
    pub image_valid: bool,
    /// Size of the target family at the image weight.
    #[serde(with = "crate::bigserde::option")]
    pub target_count: Option<BigUint>,
    pub case_counts: BTreeMap<String, u64>,
    pub counterexamples: Vec<String>,
}

impl InjectionCertificate {
    pub fn passes(&self) -> bool {
        self.images_distinct && self.weight_ok && self.image_valid && self.counterexamples.is_empty()
    }

    /// `domain_size <= target_count`, when the target count was computed.
    pub fn count_bound_holds(&self) -> Option<bool> {
        self.target_count
            .as_ref()
            .map(|t| BigUint::from(self.domain_size) <= *t)
    }
}

struct Recorder {
    seen: HashSet<Vec<u8>>,
    cert: InjectionCertificate,
}

impl Recorder {
    fn note(&mut self, msg: String) {
        if self.cert.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.cert.counterexamples.push(msg);
        }
    }

    fn record(
        &mut self,
        input: &dyn fmt::Display,
        image: Result<(Partition, Option<PsiCase>), InjectionError>,
        valid: impl FnOnce(&Partition) -> Result<(), String>,
    ) {
        self.cert.domain_size += 1;
        let (image, case) = match image {
            Ok(v) => v,
            Err(e) => {
                self.cert.image_valid = false;
                self.note(format!("{input}: {e}"));
                return;
            }
        };
        if let Some(case) = case {
            *self.cert.case_counts.entry(case.to_string()).or_insert(0) += 1;
        }
        let describe = || format!("{input} -> {image}");
        self.check_image(image.compact_key(), image.weight(), valid(&image), describe);
    }

    fn check_image(
        &mut self,
        key: Vec<u8>,
        weight: u64,
        valid: Result<(), String>,
        describe: impl Fn() -> String,
    ) {
        if weight != self.cert.image_weight {
            self.cert.weight_ok = false;
            self.note(format!("{}: weight {weight}", describe()));
        }
        if let Err(e) = valid {
            self.cert.image_valid = false;
            self.note(format!("{}: {e}", describe()));
        }
        if !self.seen.insert(key) {
            self.cert.images_distinct = false;
            self.note(format!("{}: image already produced", describe()));
        }
    }
}

fn runs_partition(runs: &[(u64, u64)]) -> Partition {
    let parts: Vec<u64> = runs
        .iter()
        .flat_map(|&(p, c)| std::iter::repeat(p).take(c as usize))
        .collect();
    Partition::from_sorted(&parts)
}

struct PairDisplay<'a>(&'a PairDecomposition);

impl fmt::Display for PairDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}]", self.0.pi, self.0.mu)
    }
}

/// Enumerates the domain of `spec` at weight `n`, applies the map and checks
/// distinctness, weight and target membership of every image.
pub fn verify_injection(spec: &InjectionSpec, n: u64, cap: usize) -> Result<InjectionCertificate, InjectionError> {
    let image_weight = spec.image_weight(n);
    let mut rec = Recorder {
        seen: HashSet::new(),
        cert: InjectionCertificate {
            kind: spec.kind(),
            parameters: spec.parameters(),
            n,
            image_weight,
            domain_size: 0,
            images_distinct: true,
            weight_ok: true,
            image_valid: true,
            target_count: None,
            case_counts: BTreeMap::new(),
            counterexamples: Vec::new(),
        },
    };
    match spec {
        InjectionSpec::Phi { source, target, m } => {
            if *m == 0 || n % m != 0 {
                return Err(InjectionError::WeightNotDivisible { weight: n, m: *m });
            }
            let in_target = |p: &Partition| match p.parts().iter().find(|&&x| !target.contains(x)) {
                Some(x) => Err(format!("part {x} is outside the target set")),
                None => Ok(()),
            };
            visit_partitions(&source.members_up_to(n), n, cap, |parts| {
                let input = Partition::from_sorted(parts);
                let image = phi(source, target, *m, &input).map(|p| (p, None));
                rec.record(&input, image, in_target);
            })?;
            rec.cert.target_count = Some(crate::partition::count_from_set(target, n));
        }
        InjectionSpec::PsiShift2(map) => {
            let universe = TargetUniverse::for_shift(map.d(), map.target())?;
            visit_pairs(&map.pair_kind(), n, cap, |pair| {
                let image = map.apply(pair).map(|(p, c)| (p, Some(c)));
                rec.record(&PairDisplay(pair), image, |p| universe.admits(p));
            })?;
            rec.cert.target_count = Some(universe.counts(map.d(), n, map.target())?);
        }
        InjectionSpec::PsiShiftAlpha(map) => {
            let universe = TargetUniverse::for_shift(map.d(), map.target())?;
            visit_pairs(&map.pair_kind(), n, cap, |pair| {
                let image = map.apply(pair).map(|(p, c)| (p, Some(c)));
                rec.record(&PairDisplay(pair), image, |p| universe.admits(p));
            })?;
            rec.cert.target_count = Some(universe.counts(map.d(), n, map.target())?);
        }
        InjectionSpec::Beta(map) => {
            if n % 2 == 0 {
                return Err(InjectionError::Parity(format!("domain weight {n} is even")));
            }
            // Run-length form keeps the cost per partition independent of the
            // number of copies of 2.
            let members = map.source().members_up_to(n);
            let mut image_of = vec![0u64; n as usize + 1];
            for (i, &x) in members.iter().enumerate() {
                image_of[x as usize] = map.target().element_at(i + 1);
            }
            let target = map.target();
            let mut out: Vec<(u64, u64)> = Vec::new();
            visit_partition_runs(&members, n, cap, |runs| {
                rec.cert.domain_size += 1;
                out.clear();
                let mut excess = 0u64;
                for &(x, c) in runs {
                    let y = image_of[x as usize];
                    if y > x {
                        let input = runs_partition(runs);
                        let err = InjectionError::HypothesisViolation {
                            index: map.source().index_of(x).unwrap_or(0),
                            source_value: x,
                            target_value: y,
                        };
                        rec.cert.image_valid = false;
                        rec.note(format!("{input}: {err}"));
                        return;
                    }
                    excess += c * (x - y);
                    out.push((y, c));
                }
                let twos = (excess + 1) / 2;
                if twos > 0 {
                    match out.last_mut() {
                        Some((2, c)) => *c += twos,
                        _ => out.push((2, twos)),
                    }
                }
                let weight: u64 = out.iter().map(|&(y, c)| y * c).sum();
                let valid = match out.iter().find(|&&(y, _)| !target.contains(y)) {
                    Some((y, _)) => Err(format!("part {y} is outside the target set")),
                    None => Ok(()),
                };
                rec.check_image(runs_key(&out), weight, valid, || {
                    format!("{} -> {}", runs_partition(runs), runs_partition(&out))
                });
            })?;
            let spec = CongruenceSpec::full(2, map.d() - 1)?;
            rec.cert.target_count = Some(count_congruence(&spec, n + 1));
        }
    }
    Ok(rec.cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn beta_runs_path_agrees_with_apply() {
        let map = BetaMap::new(10).unwrap();
        for n in (1..=61).step_by(2) {
            let cert = verify_injection(&InjectionSpec::Beta(map.clone()), n, 1_000_000).unwrap();
            let domain = crate::partition::enumerate_from_set(map.source(), n, 1_000_000).unwrap();
            let keys: HashSet<Vec<u8>> = domain.iter().map(|p| map.apply(p).unwrap().compact_key()).collect();
            assert_eq!(cert.domain_size as usize, domain.len());
            assert_eq!(keys.len(), domain.len());
            assert!(cert.passes());
        }
    }

    #[test]
    fn triangular_examples() {
        let t = |m| {
            let x = triangular_decompose(m);
            (x.ell, x.j)
        };
        assert_eq!(t(1), (1, 0));
        assert_eq!(t(2), (1, 1));
        assert_eq!(t(6), (3, 0));
        assert_eq!(t(9), (3, 3));
        assert_eq!(t(10), (4, 0));
    }

    #[test]
    fn phi_examples() {
        let s = EventuallyPeriodicSet::residue_classes(3, [2]).unwrap();
        let t = EventuallyPeriodicSet::residue_classes(2, [0]).unwrap();
        assert_eq!(phi(&s, &t, 2, &part(&[5, 5, 2])).unwrap(), part(&[4, 4, 2, 2]));
        assert_eq!(phi(&s, &t, 2, &part(&[2, 2, 2])).unwrap(), part(&[2, 2, 2]));
        assert_eq!(phi(&t, &t, 2, &part(&[8, 4, 4])).unwrap(), part(&[8, 4, 4]));
        assert!(matches!(
            phi(&s, &t, 2, &part(&[5, 2])),
            Err(InjectionError::WeightNotDivisible { .. })
        ));
        assert!(matches!(
            phi(&t, &s, 2, &part(&[4])),
            Err(InjectionError::HypothesisViolation { index: 2, .. })
        ));
        assert!(matches!(
            phi(&s, &t, 2, &part(&[4])),
            Err(InjectionError::NotInSource { part: 4 })
        ));
    }

    #[test]
    fn shift_two_cases() {
        let map = ShiftTwoMap::new(130, ShiftTarget::G).unwrap();
        let n = 4 * 130 + 128;
        let ones = PairDecomposition {
            pi: part(&[130]),
            mu: Partition::new(vec![1; (n - 130) as usize]).unwrap(),
        };
        let (img, case) = map.apply(&ones).unwrap();
        assert_eq!(case, PsiCase::Case2a);
        assert_eq!(img.parts()[0], 134);
        assert_eq!(img.multiplicity(1) as u64, n - 134);

        let pair = PairDecomposition {
            pi: part(&[130]),
            mu: part(&[132]),
        };
        let (img, case) = map.apply(&pair).unwrap();
        assert_eq!(case, PsiCase::Case2b);
        assert_eq!(img.parts()[0], 138);
        assert_eq!(img.multiplicity(1), 124);

        let plain = PairDecomposition {
            pi: Partition::empty(),
            mu: part(&[1; 9]),
        };
        assert_eq!(map.apply(&plain).unwrap(), (part(&[1; 9]), PsiCase::Case1));

        let bad = PairDecomposition {
            pi: part(&[129]),
            mu: Partition::empty(),
        };
        assert!(matches!(map.apply(&bad), Err(InjectionError::MenuViolation(_))));
        let short = PairDecomposition {
            pi: part(&[130]),
            mu: part(&[1, 1]),
        };
        assert!(matches!(map.apply(&short), Err(InjectionError::TooSmall(_))));
        assert!(ShiftTwoMap::new(127, ShiftTarget::G).is_err());
        assert!(ShiftTwoMap::new(127, ShiftTarget::L).is_ok());
    }

    #[test]
    fn alpha_shift_leading_parts() {
        let (d, alpha) = (4100u64, 4u64);
        let map = AlphaShiftMap::new(d, alpha, ShiftTarget::G).unwrap();
        let lead = d + 2048;
        let both = part(&[d - alpha + 4, d - alpha + 2]);
        let s = map.source().clone();
        for (m, markers) in [(2usize, vec![d + 2]), (5, vec![d + 16]), (10, vec![d + 8, d + 8])] {
            let pair = PairDecomposition {
                pi: both.clone(),
                mu: part(&[s.element_at(m)]),
            };
            let (img, case) = map.apply(&pair).unwrap();
            assert_eq!(case, PsiCase::Case3b);
            assert_eq!(img.parts()[0], lead);
            assert_eq!(&img.parts()[1..=markers.len()], markers.as_slice());
            assert_eq!(img.parts()[markers.len() + 1], 1);
        }
        assert_eq!(s.element_at(2), 2 * d - 2 * alpha + 4);
        assert_eq!(s.element_at(5), 2 * d - 2 * alpha + 8);
    }

    #[test]
    fn beta_examples() {
        let map = BetaMap::new(10).unwrap();
        assert_eq!(map.apply(&part(&[11])).unwrap(), part(&[10, 2]));
        assert_eq!(map.apply(&part(&[11, 2, 2])).unwrap(), part(&[10, 2, 2, 2]));
        assert!(matches!(map.apply(&part(&[2, 2])), Err(InjectionError::Parity(_))));
        assert!(matches!(map.apply(&part(&[3])), Err(InjectionError::NotInSource { part: 3 })));
        assert!(BetaMap::new(11).is_err());
    }

    #[test]
    fn small_certificates() {
        let s = EventuallyPeriodicSet::residue_classes(3, [2]).unwrap();
        let t = EventuallyPeriodicSet::residue_classes(2, [0]).unwrap();
        let cert = verify_injection(&InjectionSpec::Phi { source: s, target: t, m: 2 }, 24, 10_000).unwrap();
        assert!(cert.passes(), "{cert:?}");
        assert_eq!(cert.count_bound_holds(), Some(true));

        let cert = verify_injection(&InjectionSpec::Beta(BetaMap::new(10).unwrap()), 15, 10_000).unwrap();
        assert!(cert.passes(), "{cert:?}");
        assert_eq!(cert.image_weight, 16);
    }

    #[test]
    fn target_universe_rules() {
        let u = TargetUniverse::for_shift(130, ShiftTarget::G).unwrap();
        assert!(u.admits(&part(&[194, 132, 1])).is_ok());
        assert!(u.admits(&part(&[194, 194])).is_err());
        assert!(u.admits(&part(&[2])).is_err());
        let l = TargetUniverse::for_shift(127, ShiftTarget::L).unwrap();
        assert!(l.admits(&part(&[191, 191])).is_ok());
    }
}
