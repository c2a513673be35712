//! Closed forms, transfer rules and bounds for `dt_k` of degree-`k`
//! functions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::prob::ExactProb;

/// `∏_{i≥1} (1 - 2^-i)` to six digits: the floor under `dt_k(f)` for every
/// `f` of degree `k`.
pub const POCHHAMMER_FLOOR: f64 = 0.288788;

/// `∏_{i=from}^{to} (1 - 2^-i)`; one when the range is empty.
pub fn partial_product(from: usize, to: usize) -> ExactProb {
    (from..=to)
        .map(|i| ExactProb::one_minus_pow2_inv(i as u32))
        .product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// `x_1⋯x_k`
    Monomial(usize),
    /// `x_1⋯x_k ⊕ x_{k+1}⋯x_{2k}`
    TwoMonomials(usize),
    /// `x_{2k+1}⋯x_{2k+t}(x_1⋯x_k ⊕ x_{k+1}⋯x_{2k})`, tested at order `k+t`
    ProductExtension { k: usize, t: usize },
}

pub fn closed_form_dt(form: ClosedForm) -> Result<ExactProb> {
    let k = match form {
        ClosedForm::Monomial(k) | ClosedForm::TwoMonomials(k) => k,
        ClosedForm::ProductExtension { k, .. } => k,
    };
    if k < 1 {
        return Err(Error::domain("closed forms need k >= 1"));
    }
    let mono = partial_product(1, k);
    Ok(match form {
        ClosedForm::Monomial(_) => mono,
        ClosedForm::TwoMonomials(_) => {
            let two = ExactProb::from_ratio(2, 1);
            &(&two * &mono) * &mono.complement()
        }
        ClosedForm::ProductExtension { k, t } => {
            let two = ExactProb::from_ratio(2, 1);
            &(&two * &partial_product(1, k + t)) * &mono.complement()
        }
    })
}

/// `dt_k` of `g_1(x) ⊕ g_2(y)` on disjoint variables.
pub fn compose_dt_disjoint(p1: &ExactProb, p2: &ExactProb) -> ExactProb {
    let two = ExactProb::from_ratio(2, 1);
    &(p1 + p2) - &(&two * &(p1 * p2))
}

/// `dt_{k+1}(x_{n+1}·f)` from `p = dt_k(f)`.
pub fn lift_multiply_new_var(p: &ExactProb, k: usize) -> ExactProb {
    p * &ExactProb::one_minus_pow2_inv(k as u32 + 1)
}

/// `dt_{n-k}(f^c)` from `dt_k(f)` for `f` homogeneous of degree `k <= n/2`.
pub fn complement_transfer(dt_k: &ExactProb, n: usize, k: usize) -> Result<ExactProb> {
    Ok(dt_k * &complement_factor(n, k)?)
}

/// The factor `∏_{i=k+1}^{n-k} (1 - 2^-i)` used by [`complement_transfer`].
pub fn complement_factor(n: usize, k: usize) -> Result<ExactProb> {
    if k < 1 || 2 * k > n {
        return Err(Error::domain(format!(
            "complement transfer needs 1 <= k <= n/2 (n = {n}, k = {k})"
        )));
    }
    Ok(partial_product(k + 1, n - k))
}

/// `add_{n-k}(f^c) = add_k(f)`.
pub fn complement_transfer_add(add_k: &ExactProb, n: usize, k: usize) -> Result<ExactProb> {
    complement_factor(n, k)?;
    Ok(add_k.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundPair {
    pub lower: ExactProb,
    pub upper: ExactProb,
    pub n: usize,
    pub k: usize,
}

impl BoundPair {
    pub fn contains(&self, p: &ExactProb) -> bool {
        &self.lower <= p && p <= &self.upper
    }
}

/// `∏_{i=1}^{k}(1 - 2^-i) <= dt_k(f) <= ½(1 - 2^-n)^{k-1}` for `deg f = k`.
pub fn bounds(n: usize, k: usize) -> Result<BoundPair> {
    if k < 1 || k > n {
        return Err(Error::domain(format!(
            "bounds need 1 <= k <= n (n = {n}, k = {k})"
        )));
    }
    let lower = partial_product(1, k);
    let half = ExactProb::from_ratio(1, 2);
    let upper = &half * &ExactProb::one_minus_pow2_inv(n as u32).pow(k as u32 - 1);
    Ok(BoundPair { lower, upper, n, k })
}

/// Decimal expansion of `∏_{i≥1}(1 - 2^-i)` to `precision` digits. Factors
/// are multiplied in until the remaining tail moves the value by less than
/// `10^-(precision+2)`.
pub fn pochhammer_floor(precision: usize) -> String {
    let precision = precision.max(1);
    // the tail ∏_{i>m} changes the product by less than 2^-m
    let tolerance = (precision as f64 + 2.0) * std::f64::consts::LOG2_10;
    let terms = tolerance.ceil() as usize + 1;
    partial_product(1, terms).to_decimal(precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(
            closed_form_dt(ClosedForm::Monomial(3)).unwrap(),
            ExactProb::from_ratio(21, 64)
        );
        assert_eq!(
            closed_form_dt(ClosedForm::Monomial(8))
                .unwrap()
                .to_decimal(6),
            "0.289919"
        );
        let two = closed_form_dt(ClosedForm::TwoMonomials(3)).unwrap();
        assert_eq!(two, ExactProb::from_ratio(2 * 21 * 43, 64 * 64));
        assert_eq!(two.to_decimal(6), "0.440918");
        let ext = closed_form_dt(ClosedForm::ProductExtension { k: 2, t: 2 }).unwrap();
        assert_eq!(ext.to_decimal(9), "0.384521484");
        assert!(closed_form_dt(ClosedForm::Monomial(0)).is_err());
    }

    #[test]
    fn disjoint_composition() {
        let p = ExactProb::from_ratio(21, 64);
        assert_eq!(compose_dt_disjoint(&ExactProb::zero(), &p), p);
        let pp = compose_dt_disjoint(&p, &p);
        assert_eq!(pp.to_decimal(6), "0.440918");
        let ppp = compose_dt_disjoint(&p, &pp);
        assert_eq!(ppp, ExactProb::from_ratio(31437, 1 << 16));
        assert_eq!(ppp.to_decimal(5), "0.47969");
    }

    #[test]
    fn lifting() {
        let q = ExactProb::from_ratio(3, 8);
        let q2 = compose_dt_disjoint(&q, &ExactProb::from_ratio(15, 32));
        assert_eq!(q2.to_decimal(6), "0.492188");
        assert_eq!(lift_multiply_new_var(&q2, 2).to_decimal(6), "0.430664");
        assert!(lift_multiply_new_var(&ExactProb::zero(), 4).is_zero());
        for k in 1..10 {
            let m = closed_form_dt(ClosedForm::Monomial(k)).unwrap();
            assert_eq!(
                lift_multiply_new_var(&m, k),
                closed_form_dt(ClosedForm::Monomial(k + 1)).unwrap()
            );
        }
    }

    #[test]
    fn complement_factors() {
        assert_eq!(
            complement_factor(8, 3).unwrap(),
            ExactProb::from_ratio(15 * 31, 16 * 32)
        );
        assert_eq!(
            complement_factor(8, 2).unwrap(),
            ExactProb::from_ratio(7 * 15 * 31 * 63, 8 * 16 * 32 * 64)
        );
        assert_eq!(complement_factor(8, 4).unwrap(), ExactProb::one());
        assert!(complement_factor(8, 5).is_err());
        // dt_5(x1..x5) from dt_3(x6x7x8)
        let m3 = closed_form_dt(ClosedForm::Monomial(3)).unwrap();
        assert_eq!(
            complement_transfer(&m3, 8, 3).unwrap(),
            closed_form_dt(ClosedForm::Monomial(5)).unwrap()
        );
    }

    #[test]
    fn bound_examples() {
        let b = bounds(8, 4).unwrap();
        assert_eq!(b.lower.to_decimal(6), "0.307617");
        assert_eq!(b.upper.to_decimal(7), "0.4941635");
        let b = bounds(8, 3).unwrap();
        assert_eq!(b.lower.to_decimal(6), "0.328125");
        assert_eq!(b.upper.to_decimal(9), "0.496101379");
        for n in 1..10 {
            let b = bounds(n, 1).unwrap();
            assert_eq!(b.lower, ExactProb::from_ratio(1, 2));
            assert_eq!(b.upper, ExactProb::from_ratio(1, 2));
        }
        assert!(bounds(3, 4).is_err());
    }

    #[test]
    fn pochhammer_digits() {
        assert_eq!(pochhammer_floor(6), "0.288788");
        assert_eq!(pochhammer_floor(1), "0.3");
        assert_eq!(pochhammer_floor(12), "0.288788095087");
        let floor = partial_product(1, 60);
        assert!(partial_product(1, 8) > floor);
        assert!(partial_product(1, 9) < partial_product(1, 8));
    }
}
