//! Verification toolkit for Alder-type partition inequalities.
//!
//! The crate is organised bottom-up:
//!
//! - [`partition`]: exact counts and enumerations of the gap-condition
//!   partitions `q_d^(a)(n)`, the congruence partitions `Q_d^(a)(n)` and
//!   partitions into parts drawn from an arbitrary set.
//! - [`part_sets`]: eventually periodic part universes, their i-th elements,
//!   closed-form element tables and elementwise domination.
//! - [`series`]: truncated power series over big integers and the generating
//!   functions used throughout (`Q`, `g_d`, `L_d`).
//! - [`injection`]: the weight-preserving maps between partition families and
//!   exhaustive injectivity certificates.
//! - [`verifier`]: pointwise inequality reports, value-table reproduction,
//!   inequality chains and conjecture scans.

pub mod injection;
pub mod part_sets;
pub mod partition;
pub mod series;
pub mod verifier;

mod bigserde;

pub use injection::{InjectionCertificate, InjectionKind};
pub use part_sets::EventuallyPeriodicSet;
pub use partition::{CongruenceSpec, GapSpec, PairDecomposition, Partition, Variant};
pub use series::TruncatedSeries;
pub use verifier::{InequalityReport, TableCheck, Verdict};

/// `r = floor(log2(d + 1))`, the exponent that fixes the residue lists of
/// `g_d`, `L_d` and `T_r`.
pub fn log2_floor_succ(d: u64) -> u32 {
    63 - (d + 1).leading_zeros()
}

/// True when `d = 2^r - 1` for some `r >= 1`.
pub fn is_mersenne(d: u64) -> bool {
    (d + 1).is_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_floor_matches_definition() {
        assert_eq!(log2_floor_succ(130), 7);
        assert_eq!(log2_floor_succ(127), 7);
        assert_eq!(log2_floor_succ(126), 6);
        assert_eq!(log2_floor_succ(4100), 12);
        assert_eq!(log2_floor_succ(4095), 12);
        assert!(is_mersenne(127));
        assert!(!is_mersenne(128));
    }
}
