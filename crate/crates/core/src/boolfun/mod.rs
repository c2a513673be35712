//! Boolean function representations and the transforms between them.
//!
//! [`BooleanFunction`] is the black-box interface every algorithm in the
//! crate consumes. [`TruthTable`] and [`Anf`] implement it; anything that
//! needs global structure (densities, complements) asks for an [`Anf`].

mod affine;
mod anf;
mod truth_table;

use std::sync::atomic::{AtomicU64, Ordering};

pub use affine::AffineMap;
pub use anf::{format_anf, Anf};
pub use truth_table::{TruthTable, MAX_TABLE_VARS};

use crate::error::{Error, Result};
use crate::gf2::{PointVec, MAX_VARS};

/// Algebraic degree. The zero function has its own variant and orders
/// below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    ZeroFunction,
    Exactly(usize),
}

impl Degree {
    pub fn value(self) -> Option<usize> {
        match self {
            Degree::ZeroFunction => None,
            Degree::Exactly(d) => Some(d),
        }
    }

    /// `deg(f) < k`, with the zero function below everything.
    pub fn is_below(self, k: usize) -> bool {
        match self {
            Degree::ZeroFunction => true,
            Degree::Exactly(d) => d < k,
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::ZeroFunction => write!(f, "zero function"),
            Degree::Exactly(d) => write!(f, "{d}"),
        }
    }
}

/// Evaluation access to `f: F_2^n -> F_2`. Implementations must be
/// deterministic and safe to call from several threads.
pub trait BooleanFunction: Sync {
    fn num_vars(&self) -> usize;

    fn eval(&self, x: PointVec) -> bool;
}

impl<T: BooleanFunction + ?Sized> BooleanFunction for &T {
    fn num_vars(&self) -> usize {
        (**self).num_vars()
    }

    fn eval(&self, x: PointVec) -> bool {
        (**self).eval(x)
    }
}

/// Adapts a closure to [`BooleanFunction`].
pub struct FnOracle<F> {
    n: usize,
    f: F,
}

impl<F: Fn(PointVec) -> bool + Sync> FnOracle<F> {
    pub fn new(n: usize, f: F) -> Self {
        assert!(n <= MAX_VARS, "too many variables");
        FnOracle { n, f }
    }
}

impl<F: Fn(PointVec) -> bool + Sync> BooleanFunction for FnOracle<F> {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn eval(&self, x: PointVec) -> bool {
        (self.f)(x)
    }
}

/// Wraps an oracle and counts calls.
pub struct CountingOracle<F> {
    inner: F,
    calls: AtomicU64,
}

impl<F: BooleanFunction> CountingOracle<F> {
    pub fn new(inner: F) -> Self {
        CountingOracle {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }
}

impl<F: BooleanFunction> BooleanFunction for CountingOracle<F> {
    fn num_vars(&self) -> usize {
        self.inner.num_vars()
    }

    fn eval(&self, x: PointVec) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(x)
    }
}

/// `x -> f(Mx ⊕ v)` over an oracle.
pub struct ComposedOracle<'a, F> {
    inner: F,
    map: &'a AffineMap,
}

impl<'a, F: BooleanFunction> ComposedOracle<'a, F> {
    pub fn new(inner: F, map: &'a AffineMap) -> Result<Self> {
        if inner.num_vars() != map.n() {
            return Err(Error::domain("map dimension differs from function"));
        }
        Ok(ComposedOracle { inner, map })
    }
}

impl<F: BooleanFunction> BooleanFunction for ComposedOracle<'_, F> {
    fn num_vars(&self) -> usize {
        self.inner.num_vars()
    }

    fn eval(&self, x: PointVec) -> bool {
        self.inner.eval(self.map.apply(x))
    }
}

/// Discrete derivative `x -> f(x ⊕ a) ⊕ f(x)` over an oracle.
pub struct DerivativeOracle<F> {
    inner: F,
    direction: PointVec,
}

impl<F: BooleanFunction> DerivativeOracle<F> {
    pub fn new(inner: F, direction: PointVec) -> Self {
        DerivativeOracle { inner, direction }
    }
}

impl<F: BooleanFunction> BooleanFunction for DerivativeOracle<F> {
    fn num_vars(&self) -> usize {
        self.inner.num_vars()
    }

    fn eval(&self, x: PointVec) -> bool {
        if self.direction == PointVec::ZERO {
            return false;
        }
        self.inner.eval(x ^ self.direction) ^ self.inner.eval(x)
    }
}

/// ANF coefficient of `∏_{i∈support} x_i`, read off the oracle as the sum
/// of `f` over the span of the matching canonical basis vectors. Uses
/// `2^|support|` calls. Indices are 1-based.
pub fn coefficient<F: BooleanFunction + ?Sized>(f: &F, support: &[usize]) -> Result<bool> {
    let n = f.num_vars();
    let mut mask = 0u32;
    for &i in support {
        if i == 0 || i > n {
            return Err(Error::domain(format!("variable index {i} outside 1..={n}")));
        }
        mask |= 1 << (i - 1);
    }
    // every submask of `mask`, i.e. the span of {e_i : i in support}
    let mut acc = false;
    let mut sub = mask;
    loop {
        acc ^= f.eval(PointVec(sub));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    Ok(acc)
}

/// Moebius transform of a truth table.
pub fn moebius(tt: &TruthTable) -> Anf {
    Anf::from_truth_table(tt)
}

/// Nonzero directions `a` with `deg(D_a f) < deg(f) - 1`.
pub fn fast_points(tt: &TruthTable) -> Result<Vec<PointVec>> {
    let k = match tt.degree() {
        Degree::Exactly(k) if k >= 1 => k,
        _ => return Err(Error::domain("fast points need a non-constant function")),
    };
    let n = tt.num_vars();
    Ok((1..(1u32 << n))
        .map(PointVec)
        .filter(|&a| tt.derivative(a).degree().is_below(k - 1))
        .collect())
}
