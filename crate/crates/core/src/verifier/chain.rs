//! Inequality chains reducing level `a` to level one and back.
//!
//! With `d' = ceil(d/a)` and `n' = ceil(n/a)` the chain reads
//!
//! ```text
//! q_d^(a)(n) >= q_{d'}^(1)(n') >= Q_{d'-α}^(1)(n') = Q_D^(a)(a n') >= Q_d^(a)(n)
//! ```
//!
//! where `D = a(d' - α + 3) - 3` comes from multiplying every part by `a`.
//! The shift `α` is 2 for level two and for level three with `3 | d`, and 4
//! otherwise. Where available the middle step is split through `g_{d'}` or
//! `L_{d'}`.

use num_bigint::BigUint;
use serde::Serialize;

use super::{ceil_div, cong_table, gap_table, CountProvider, VerifyError};
use crate::series::{g_series, l_series};
use crate::{is_mersenne, log2_floor_succ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub name: String,
    pub lhs_label: String,
    #[serde(with = "crate::bigserde")]
    pub lhs: BigUint,
    pub relation: Relation,
    pub rhs_label: String,
    #[serde(with = "crate::bigserde")]
    pub rhs: BigUint,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub a: u64,
    pub d: u64,
    pub n: u64,
    pub d_prime: u64,
    pub n_prime: u64,
    pub alpha: u64,
    pub links: Vec<ChainLink>,
    /// The parameters lie where every link is proved.
    pub proved_regime: bool,
    pub holds: bool,
}

fn link(name: &str, lhs_label: String, lhs: BigUint, relation: Relation, rhs_label: String, rhs: BigUint) -> ChainLink {
    let holds = match relation {
        Relation::Ge => lhs >= rhs,
        Relation::Eq => lhs == rhs,
    };
    ChainLink {
        name: name.into(),
        lhs_label,
        lhs,
        relation,
        rhs_label,
        rhs,
        holds,
    }
}

fn proved(a: u64, d: u64, n: u64) -> bool {
    match a {
        2 => {
            let even_ok = d % 2 == 0 && (d == 126 || d >= 254) && n >= d + 7;
            let odd_ok = d % 2 == 1 && d >= 253 && n % 2 == 0 && n >= d + 9;
            even_ok || odd_ok
        }
        3 if d % 3 == 0 && d >= 381 => n >= d + 12,
        _ => d >= a * 4095 && n >= d + 4 * a,
    }
}

/// Evaluates every link of the chain at `(a, d, n)`, `a >= 2`.
pub fn check_chain(provider: &dyn CountProvider, a: u64, d: u64, n: u64) -> Result<ChainReport, VerifyError> {
    if a < 2 || d == 0 {
        return Err(VerifyError::InvalidParameters(format!(
            "chains need a >= 2 and d >= 1 (a = {a}, d = {d})"
        )));
    }
    let alpha = if a == 2 || (a == 3 && d % 3 == 0) { 2 } else { 4 };
    let dp = ceil_div(d, a);
    let np = ceil_div(n, a);
    if dp < alpha + 1 {
        return Err(VerifyError::InvalidParameters(format!(
            "ceil(d/a) = {dp} must exceed the shift {alpha}"
        )));
    }
    let big_d = a * (dp - alpha + 3) - 3;
    if 2 * a >= d + 3 {
        return Err(VerifyError::InvalidParameters(format!("2a < d+3 fails (a = {a}, d = {d})")));
    }

    let q_top = gap_table(provider, a, d, n)?[n as usize].clone();
    let q_one = gap_table(provider, 1, dp, np)?[np as usize].clone();
    let cq_one = cong_table(provider, 1, dp - alpha, np)?[np as usize].clone();
    let cq_dilated = cong_table(provider, a, big_d, a * np)?[(a * np) as usize].clone();
    let cq_top = cong_table(provider, a, d, n)?[n as usize].clone();

    let q_one_label = format!("q_{dp}^(1)({np})");
    let cq_one_label = format!("Q_{}^(1)({np})", dp - alpha);
    let mut links = vec![link(
        "level reduction",
        format!("q_{d}^({a})({n})"),
        q_top,
        Relation::Ge,
        q_one_label.clone(),
        q_one.clone(),
    )];

    let r = log2_floor_succ(dp);
    let intermediate = if is_mersenne(dp) && r >= 4 {
        Some((format!("L_{dp}({np})"), l_series(dp, np as usize)?))
    } else if !is_mersenne(dp) && r >= 4 && np >= 4 * dp + (1u64 << r) {
        Some((format!("g_{dp}({np})"), g_series(dp, np as usize)?))
    } else {
        None
    };
    if let Some((label, series)) = intermediate {
        let mid = series.coeff(np as usize).magnitude().clone();
        links.push(link(
            "level-one bound",
            q_one_label.clone(),
            q_one.clone(),
            Relation::Ge,
            label.clone(),
            mid.clone(),
        ));
        links.push(link(
            "shift injection",
            label,
            mid,
            Relation::Ge,
            cq_one_label.clone(),
            cq_one.clone(),
        ));
    }
    links.push(link(
        "level-one shift",
        q_one_label,
        q_one,
        Relation::Ge,
        cq_one_label.clone(),
        cq_one.clone(),
    ));
    links.push(link(
        "dilation identity",
        cq_one_label,
        cq_one,
        Relation::Eq,
        format!("Q_{big_d}^({a})({})", a * np),
        cq_dilated.clone(),
    ));
    links.push(link(
        "modulus comparison",
        format!("Q_{big_d}^({a})({})", a * np),
        cq_dilated,
        Relation::Ge,
        format!("Q_{d}^({a})({n})"),
        cq_top,
    ));

    let holds = links.iter().all(|l| l.holds);
    Ok(ChainReport {
        a,
        d,
        n,
        d_prime: dp,
        n_prime: np,
        alpha,
        links,
        proved_regime: proved(a, d, n),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::DirectCounts;

    #[test]
    fn level_two_examples() {
        let p = DirectCounts;
        let r = check_chain(&p, 2, 254, 300).unwrap();
        let dil = r.links.iter().find(|l| l.name == "dilation identity").unwrap();
        assert!(dil.holds);
        assert!(r.holds && r.proved_regime);
        for n in (262..=400).step_by(2) {
            assert!(check_chain(&p, 2, 254, n).unwrap().holds, "n = {n}");
        }
        let zero = check_chain(&p, 2, 254, 0).unwrap();
        assert!(zero.links.iter().all(|l| l.lhs == BigUint::from(1u8) && l.rhs == BigUint::from(1u8)));
    }

    #[test]
    fn level_three_route_uses_shift_two() {
        let r = check_chain(&DirectCounts, 3, 381, 1780).unwrap();
        assert_eq!((r.alpha, r.d_prime, r.n_prime), (2, 127, 594));
        assert!(r.links.iter().any(|l| l.lhs_label.starts_with("L_127")));
        assert!(r.holds);
    }
}
