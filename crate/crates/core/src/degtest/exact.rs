//! Exact failure probabilities by enumeration.
//!
//! Three independent routes compute `dt_k(f)`:
//! [`exact_dt_tuples`] walks every `(u_0, …, u_k)`, the subspace routes
//! ([`exact_add`], [`exact_add_bitsliced`], [`homogeneous_add`]) count failing
//! affine spaces and convert with [`dt_from_add`], and
//! [`dt_by_derivative_recursion`] peels off one direction at a time.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::boolfun::{BooleanFunction, Degree, TruthTable};
use crate::error::{Error, Result};
use crate::gf2::{
    coset_transversal, gaussian_binomial, lin_indep_probability, mask, pivot_patterns, span_points,
    PivotClass, PointVec,
};
use crate::prob::ExactProb;

/// `(k+1)·n` ceiling for brute-force tuple enumeration.
pub const TUPLE_BITS_LIMIT: u32 = 24;
/// Ceiling, in log2 evaluations, for the subspace routes.
pub const SUBSPACE_LOG2_LIMIT: u32 = 36;
/// Largest `n` for the derivative recursion.
pub const RECURSION_VARS_LIMIT: usize = 12;
const RECURSION_LOG2_LIMIT: u32 = 30;

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if k > n {
        return Err(Error::domain(format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

/// Ground truth: counts failing tuples over all of `(F_2^n)^{k+1}`.
/// The result has denominator dividing `2^{(k+1)n}`.
pub fn exact_dt_tuples<F: BooleanFunction + ?Sized>(f: &F, k: usize) -> Result<ExactProb> {
    let n = f.num_vars();
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let bits = ((k + 1) * n) as u32;
    if bits > TUPLE_BITS_LIMIT {
        return Err(Error::TooExpensive {
            operation: "tuple enumeration",
            log2_cost: bits + k as u32,
            log2_limit: TUPLE_BITS_LIMIT + k as u32,
        });
    }
    let m = mask(n);
    let points = 1u32 << n;
    let failing: u64 = (0..(1u64 << (k * n)))
        .into_par_iter()
        .map(|code| {
            let us: Vec<u32> = (0..k).map(|i| (code >> (i * n)) as u32 & m).collect();
            let span = span_points(&us);
            (0..points)
                .filter(|&u0| {
                    span.iter()
                        .fold(false, |acc, &s| acc ^ f.eval(PointVec(u0 ^ s)))
                })
                .count() as u64
        })
        .sum();
    Ok(ExactProb::from_ratio(failing, BigUint::from(1u8) << bits))
}

fn subspace_cost_guard(n: usize, k: usize, per_subspace_log2: u32) -> Result<BigUint> {
    let count = gaussian_binomial(n, k)?;
    let cost = count.bits() as u32 + per_subspace_log2;
    if cost > SUBSPACE_LOG2_LIMIT {
        return Err(Error::TooExpensive {
            operation: "subspace enumeration",
            log2_cost: cost,
            log2_limit: SUBSPACE_LOG2_LIMIT,
        });
    }
    Ok(count)
}

fn par_subspaces<T, M>(n: usize, k: usize, per_subspace: M) -> T
where
    T: Send + std::iter::Sum<T>,
    M: Fn(crate::gf2::SubspaceBasis) -> T + Sync,
{
    pivot_patterns(n, k)
        .into_par_iter()
        .map(|p| PivotClass::new(n, p).map(&per_subspace).sum::<T>())
        .sum()
}

/// `add_k(f)` from the oracle: sums `f` over every coset of every
/// `k`-dimensional subspace, `2^n` calls per subspace.
pub fn exact_add<F: BooleanFunction + ?Sized>(f: &F, k: usize) -> Result<ExactProb> {
    let n = f.num_vars();
    check_k(n, k)?;
    let count = subspace_cost_guard(n, k, n as u32)?;
    let failing: u64 = par_subspaces(n, k, |s| {
        let span = s.points();
        coset_transversal(&s)
            .into_iter()
            .filter(|u0| {
                span.iter()
                    .fold(false, |acc, &p| acc ^ f.eval(PointVec(u0.0 ^ p)))
            })
            .count() as u64
    });
    Ok(ExactProb::from_ratio(failing, count << (n - k)))
}

/// `add_k(f)` on a truth table: for each subspace `V` the table of
/// `x -> Σ_{v∈V} f(x ⊕ v)` is built with `k` word-parallel derivatives; its
/// weight is `2^k` times the number of failing cosets.
pub fn exact_add_bitsliced(tt: &TruthTable, k: usize) -> Result<ExactProb> {
    let n = tt.n();
    check_k(n, k)?;
    let words_log2 = n.saturating_sub(6) as u32;
    let count = subspace_cost_guard(n, k, words_log2 + k as u32)?;
    let weight: u64 = par_subspaces(n, k, |s| {
        let mut d = tt.clone();
        for &b in s.basis() {
            d = d.derivative(PointVec(b));
        }
        d.weight()
    });
    Ok(ExactProb::from_ratio(weight >> k, count << (n - k)))
}

/// `add_k(f)` when `deg(f) = k`, evaluating only the linear subspaces:
/// the top-degree part decides the sum, so every coset agrees with
/// `u_0 = 0`. The caller vouches for the degree.
pub fn homogeneous_add<F: BooleanFunction + ?Sized>(f: &F, k: usize) -> Result<ExactProb> {
    let n = f.num_vars();
    check_k(n, k)?;
    let count = subspace_cost_guard(n, k, k as u32)?;
    let failing: u64 = par_subspaces(n, k, |s| {
        let basis = s.basis();
        let mut p = 0u32;
        let mut acc = f.eval(PointVec(0));
        for c in 1u32..(1 << k) {
            p ^= basis[c.trailing_zeros() as usize];
            acc ^= f.eval(PointVec(p));
        }
        acc as u64
    });
    Ok(ExactProb::from_ratio(failing, count))
}

/// `dt_k(f)` for a table of degree exactly `k`, via [`homogeneous_add`].
pub fn exact_dt_homogeneous(tt: &TruthTable, k: usize) -> Result<ExactProb> {
    match tt.degree() {
        Degree::Exactly(d) if d == k => {}
        d => {
            return Err(Error::domain(format!(
                "homogeneous path needs degree {k}, function has degree {d}"
            )))
        }
    }
    Ok(dt_from_add(&homogeneous_add(tt, k)?, tt.n(), k))
}

/// `dt_k = add_k · ∏_{i=n-k+1}^{n} (1 - 2^-i)`.
pub fn dt_from_add(add: &ExactProb, n: usize, k: usize) -> ExactProb {
    add * &lin_indep_probability(n, k)
}

/// Inverse of [`dt_from_add`]; needs `k <= n`.
pub fn add_from_dt(dt: &ExactProb, n: usize, k: usize) -> Result<ExactProb> {
    check_k(n, k)?;
    Ok(dt / &lin_indep_probability(n, k))
}

/// Exact `add_k`, picking the cheapest subspace route for a table.
pub fn exact_add_auto(tt: &TruthTable, k: usize) -> Result<ExactProb> {
    let n = tt.n();
    check_k(n, k)?;
    match tt.degree() {
        d if d.is_below(k) => Ok(ExactProb::zero()),
        Degree::Exactly(d) if d == k => homogeneous_add(tt, k),
        _ => exact_add_bitsliced(tt, k),
    }
}

/// Exact `dt_k` for any `k >= 1`; zero when `k > n` since every tuple is
/// then dependent.
pub fn exact_dt(tt: &TruthTable, k: usize) -> Result<ExactProb> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if k > tt.n() {
        return Ok(ExactProb::zero());
    }
    Ok(dt_from_add(&exact_add_auto(tt, k)?, tt.n(), k))
}

fn recursion_guard(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let cost = (n * (k - 1)) as u32 + n.saturating_sub(6) as u32;
    if n > RECURSION_VARS_LIMIT || cost > RECURSION_LOG2_LIMIT {
        return Err(Error::TooExpensive {
            operation: "derivative recursion",
            log2_cost: cost.max(n as u32),
            log2_limit: RECURSION_LOG2_LIMIT,
        });
    }
    Ok(())
}

struct Recursion {
    n: usize,
    memo: Vec<HashMap<TruthTable, BigUint>>,
}

impl Recursion {
    fn new(n: usize, k: usize) -> Self {
        Recursion {
            n,
            memo: (0..=k).map(|_| HashMap::new()).collect(),
        }
    }

    /// Failing tuples of the order-`k` test in `(F_2^n)^{k+1}`.
    fn count(&mut self, f: &TruthTable, k: usize) -> BigUint {
        if k == 1 {
            // g(x) ≠ g(y) for x = u0, y = u0 ⊕ u1
            let w = f.weight();
            return BigUint::from(2u8) * w * ((1u64 << self.n) - w);
        }
        if f.is_zero() {
            return BigUint::zero();
        }
        if let Some(v) = self.memo[k].get(f) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for u in 1..(1u32 << self.n) {
            total += self.count(&f.derivative(PointVec(u)), k - 1);
        }
        self.memo[k].insert(f.clone(), total.clone());
        total
    }
}

/// `dt_k(f) = 2^-n Σ_u dt_{k-1}(D_u f)`, bottoming out at order one where
/// the failure probability is `2·wt(g)·(1 - wt(g))`.
pub fn dt_by_derivative_recursion(tt: &TruthTable, k: usize) -> Result<ExactProb> {
    let n = tt.n();
    recursion_guard(n, k)?;
    let mut r = Recursion::new(n, k);
    let count = r.count(tt, k);
    Ok(ExactProb::from_ratio(
        count,
        BigUint::from(1u8) << ((k + 1) * n),
    ))
}

/// The per-direction terms `dt_{k-1}(D_u f)` of the recursion, indexed by
/// `u`. Needs `k >= 2`.
pub fn derivative_recursion_terms(tt: &TruthTable, k: usize) -> Result<Vec<ExactProb>> {
    let n = tt.n();
    if k < 2 {
        return Err(Error::domain("recursion terms need k >= 2"));
    }
    recursion_guard(n, k)?;
    let mut r = Recursion::new(n, k);
    Ok((0..(1u32 << n))
        .map(|u| {
            let c = r.count(&tt.derivative(PointVec(u)), k - 1);
            ExactProb::from_ratio(c, BigUint::from(1u8) << (k * n))
        })
        .collect())
}
