//! Truncated power series over big integers and the generating functions
//! built from them.
//!
//! A [`TruncatedSeries`] tracks `c_0..=c_N`. Products are expanded one factor
//! at a time; factors whose leading exponent exceeds `N` are skipped since they
//! cannot touch any tracked coefficient.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::log2_floor_succ;
use crate::part_sets::{doubling_residues, EventuallyPeriodicSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("exponent {0} is not positive")]
    InvalidExponent(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("coefficient {index} is negative")]
    NegativeCoefficient { index: usize },
}

/// Coefficients `c_0..=c_N` of a formal power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(truncation: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Series with the given coefficients; the truncation is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::InvalidParameters(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficients as counts, failing on the first negative one.
    pub fn to_counts(&self) -> Result<Vec<BigUint>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.sign() == Sign::Minus {
                    Err(SeriesError::NegativeCoefficient { index })
                } else {
                    Ok(c.magnitude().clone())
                }
            })
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<(), SeriesError> {
        if self.truncation() != other.truncation() {
            return Err(SeriesError::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x - y).collect(),
        })
    }

    /// Cauchy product truncated at `N`.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let n = self.truncation();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs[..=n - i].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplies in place by `1 - q^e`.
    pub fn mul_one_minus(&mut self, e: u64) -> Result<(), SeriesError> {
        self.shifted_update(e, false, true)
    }

    /// Multiplies in place by `1 + q^e`.
    pub fn mul_one_plus(&mut self, e: u64) -> Result<(), SeriesError> {
        self.shifted_update(e, true, true)
    }

    /// Divides in place by `1 - q^e`.
    pub fn div_one_minus(&mut self, e: u64) -> Result<(), SeriesError> {
        self.shifted_update(e, true, false)
    }

    // c_n += ±c_{n-e}; descending order reads old values, ascending reads new ones.
    fn shifted_update(&mut self, e: u64, plus: bool, descending: bool) -> Result<(), SeriesError> {
        if e == 0 {
            return Err(SeriesError::InvalidExponent(e));
        }
        let n = self.truncation();
        if e as usize > n || e > usize::MAX as u64 {
            return Ok(());
        }
        let e = e as usize;
        let step = |k: usize, coeffs: &mut Vec<BigInt>| {
            let (lo, hi) = coeffs.split_at_mut(k);
            if plus {
                hi[0] += &lo[k - e];
            } else {
                hi[0] -= &lo[k - e];
            }
        };
        if descending {
            for k in (e..=n).rev() {
                step(k, &mut self.coeffs);
            }
        } else {
            for k in e..=n {
                step(k, &mut self.coeffs);
            }
        }
        Ok(())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// `prod 1/(1 - q^e)` over the listed exponents (duplicates count twice).
pub fn inv_product(exponents: &[u64], truncation: usize) -> Result<TruncatedSeries, SeriesError> {
    let mut s = TruncatedSeries::one(truncation);
    for &e in exponents {
        s.div_one_minus(e)?;
    }
    Ok(s)
}

/// `prod 1/(1 - q^e)` over the members of `set` up to the truncation.
pub fn inv_product_set(set: &EventuallyPeriodicSet, truncation: usize) -> TruncatedSeries {
    inv_product(&set.members_up_to(truncation as u64), truncation).expect("set members are positive")
}

/// `(-q^c; q^m)_inf = prod_{k>=0} (1 + q^{c+km})`: distinct parts `= c (mod m)`.
pub fn neg_pochhammer(c: u64, m: u64, truncation: usize) -> Result<TruncatedSeries, SeriesError> {
    if c == 0 {
        return Err(SeriesError::InvalidExponent(c));
    }
    if m == 0 {
        return Err(SeriesError::InvalidParameters("step must be positive".into()));
    }
    let mut s = TruncatedSeries::one(truncation);
    let mut e = c;
    while e as usize <= truncation {
        s.mul_one_plus(e)?;
        e += m;
    }
    Ok(s)
}

/// Divides by `(q^c; q^m)_inf` in place.
fn div_pochhammer(s: &mut TruncatedSeries, c: u64, m: u64) -> Result<(), SeriesError> {
    let mut e = c;
    while e as usize <= s.truncation() {
        s.div_one_minus(e)?;
        e += m;
    }
    Ok(())
}

/// Which side of the two-form identity for the `Q` generating function to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QForm {
    /// `1/(q^a, q^{d+3-a}; q^{d+3})_inf`.
    Product,
    /// `(1 + q^{d+3-a}) / ((1 - q^{2d+6-2a}) (q^a, q^{2d+6-a}; q^{d+3})_inf)`.
    Rewritten,
}

/// `Q_d^(a)(0..=N)` expanded in the requested form.
pub fn q_series(a: u64, d: u64, truncation: usize, form: QForm) -> Result<TruncatedSeries, SeriesError> {
    if a == 0 || d == 0 || 2 * a >= d + 3 {
        return Err(SeriesError::InvalidParameters(format!(
            "needs a >= 1, d >= 1 and 2a < d+3 (a = {a}, d = {d})"
        )));
    }
    let m = d + 3;
    let mut s = TruncatedSeries::one(truncation);
    match form {
        QForm::Product => {
            div_pochhammer(&mut s, a, m)?;
            div_pochhammer(&mut s, m - a, m)?;
        }
        QForm::Rewritten => {
            s.mul_one_plus(m - a)?;
            s.div_one_minus(2 * m - 2 * a)?;
            div_pochhammer(&mut s, a, m)?;
            div_pochhammer(&mut s, 2 * m - a, m)?;
        }
    }
    Ok(s)
}

/// Residues mod `2d` of the unlimited parts of `g_d`, and the residue of its
/// distinct parts.
pub fn g_residues(d: u64) -> Result<(Vec<u64>, u64), SeriesError> {
    let r = log2_floor_succ(d);
    if r < 4 {
        return Err(SeriesError::InvalidParameters(format!(
            "g_d needs floor(log2(d+1)) >= 4, i.e. d >= 15 (d = {d})"
        )));
    }
    Ok((doubling_residues(d, r - 2), d + (1u64 << (r - 1))))
}

/// `g_d(0..=N)`: unlimited parts `= 1, d+2, d+4, ..., d+2^{r-2} (mod 2d)`
/// together with distinct parts `= d+2^{r-1} (mod 2d)`.
pub fn g_series(d: u64, truncation: usize) -> Result<TruncatedSeries, SeriesError> {
    let (residues, distinct) = g_residues(d)?;
    let mut s = neg_pochhammer(distinct, 2 * d, truncation)?;
    for c in residues {
        div_pochhammer(&mut s, c, 2 * d)?;
    }
    Ok(s)
}

/// Residues mod `2d` of the parts counted by `L_d`.
pub fn l_residues(d: u64) -> Result<Vec<u64>, SeriesError> {
    if !crate::is_mersenne(d) || d < 3 {
        return Err(SeriesError::InvalidParameters(format!(
            "L_d needs d = 2^r - 1 with r >= 2 (d = {d})"
        )));
    }
    Ok(doubling_residues(d, log2_floor_succ(d) - 1))
}

/// `L_d(0..=N)`: parts `= 1, d+2, d+4, ..., d+2^{r-1} (mod 2d)`, `d = 2^r - 1`.
pub fn l_series(d: u64, truncation: usize) -> Result<TruncatedSeries, SeriesError> {
    let residues = l_residues(d)?;
    let mut s = TruncatedSeries::one(truncation);
    for c in residues {
        div_pochhammer(&mut s, c, 2 * d)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{count_congruence, CongruenceSpec};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn inv_product_examples() {
        assert_eq!(inv_product(&[1], 5).unwrap().coeffs(), ints(&[1; 6]).as_slice());
        assert_eq!(inv_product(&[2, 3], 6).unwrap().coeff(6), &BigInt::from(2));
        assert_eq!(inv_product(&[0], 6), Err(SeriesError::InvalidExponent(0)));
        let spec = CongruenceSpec::full(2, 10).unwrap();
        let set = spec.part_set();
        let s = inv_product_set(&set, 30);
        assert_eq!(s.coeff(15).magnitude(), &count_congruence(&spec, 15));
    }

    #[test]
    fn neg_pochhammer_examples() {
        assert_eq!(neg_pochhammer(1, 1, 4).unwrap().coeffs(), ints(&[1, 1, 1, 2, 2]).as_slice());
        assert_eq!(
            neg_pochhammer(10, 5, 9).unwrap().coeffs(),
            ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).as_slice()
        );
        assert_eq!(neg_pochhammer(3, 100, 3).unwrap().coeff(3), &BigInt::one());
        assert!(neg_pochhammer(0, 3, 3).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = inv_product(&[1], 8).unwrap();
        let mut b = TruncatedSeries::one(8);
        b.mul_one_minus(1).unwrap();
        assert_eq!(a.mul(&b).unwrap(), TruncatedSeries::one(8));
        assert!(a.sub(&a).unwrap().is_zero());
        let c = inv_product(&[2, 5], 8).unwrap();
        assert_eq!(a.mul(&c).unwrap(), c.mul(&a).unwrap());
        assert_eq!(
            a.mul(&TruncatedSeries::one(7)),
            Err(SeriesError::TruncationMismatch { left: 8, right: 7 })
        );
        assert!(a.add(&TruncatedSeries::zero(3)).is_err());
    }

    #[test]
    fn q_series_examples() {
        let p = q_series(2, 10, 200, QForm::Product).unwrap();
        let r = q_series(2, 10, 200, QForm::Rewritten).unwrap();
        assert_eq!(p, r);
        assert_eq!(p.coeff(0), &BigInt::one());
        let q = q_series(2, 254, 260, QForm::Rewritten).unwrap();
        assert_eq!(q.coeff(259), &BigInt::from(2));
        assert!(q_series(3, 3, 10, QForm::Product).is_err());
    }

    #[test]
    fn g_and_l_examples() {
        let g = g_series(130, 10).unwrap();
        assert_eq!(g.coeff(0), &BigInt::one());
        assert_eq!(g.coeff(1), &BigInt::one());
        assert!(g_series(14, 10).is_err());
        assert!(g_series(15, 10).is_ok());
        let l = l_series(127, 200).unwrap();
        assert_eq!(l.coeff(0), &BigInt::one());
        assert_eq!(l.coeff(128), &BigInt::one());
        assert!(l_series(128, 10).is_err());
    }
}
