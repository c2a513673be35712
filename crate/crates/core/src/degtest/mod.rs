//! The `deg(f) < k` test: single runs, sampling, and the exact and
//! closed-form failure probabilities.
//!
//! One run picks `u_0, …, u_k` and checks whether `f` sums to zero over
//! `u_0 ⊕ ⟨u_1, …, u_k⟩`. Functions of degree below `k` always pass; the
//! failure probability over uniform tuples is `dt_k(f)`.

mod closed;
mod exact;

pub use closed::*;
pub use exact::*;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::{mask, rank_of_vectors, PointVec};

/// `(u_0, u_1, …, u_k)`; the `u_i` need not be independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestTuple {
    pub u0: PointVec,
    pub us: Vec<PointVec>,
}

impl TestTuple {
    pub fn k(&self) -> usize {
        self.us.len()
    }

    pub fn is_independent(&self) -> bool {
        let raw: Vec<u32> = self.us.iter().map(|u| u.0).collect();
        rank_of_vectors(&raw) == raw.len()
    }

    fn random<R: Rng>(n: usize, k: usize, independent: bool, rng: &mut R) -> Self {
        let m = mask(n);
        let u0 = PointVec(rng.gen::<u32>() & m);
        loop {
            let us: Vec<PointVec> = (0..k).map(|_| PointVec(rng.gen::<u32>() & m)).collect();
            let t = TestTuple { u0, us };
            if !independent || t.is_independent() {
                return t;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TestOutcome {
    Pass,
    Fail,
}

/// Sums `f` over `u_0 ⊕ ⟨u_1, …, u_k⟩` (with multiplicity) using exactly
/// `2^k` evaluations.
pub fn run_test<F: BooleanFunction + ?Sized>(f: &F, tuple: &TestTuple) -> TestOutcome {
    let mut p = tuple.u0;
    let mut acc = f.eval(p);
    for c in 1u32..(1 << tuple.k()) {
        p ^= tuple.us[c.trailing_zeros() as usize];
        acc ^= f.eval(p);
    }
    if acc {
        TestOutcome::Fail
    } else {
        TestOutcome::Pass
    }
}

/// Which tuples the sampler draws from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Sampling {
    /// Uniform over all of `(F_2^n)^{k+1}`; targets `dt_k`.
    #[default]
    AllTuples,
    /// `u_1..u_k` conditioned on independence; targets `add_k`.
    IndependentOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub p_hat: f64,
    pub trials: u64,
    pub stderr: f64,
    pub seed: u64,
}

impl Estimate {
    fn new(failures: u64, trials: u64, seed: u64) -> Self {
        let p_hat = failures as f64 / trials as f64;
        Estimate {
            p_hat,
            trials,
            stderr: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
            seed,
        }
    }
}

/// Trials per independently seeded chunk.
const CHUNK: u64 = 1 << 12;

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Monte-Carlo estimate of the failure probability. Trials are split into
/// fixed chunks, chunk `i` drawing from stream `i` of the seeded
/// generator, so the result depends only on `seed` and not on how many
/// worker threads ran.
pub fn estimate_dt<F: BooleanFunction + ?Sized>(
    f: &F,
    k: usize,
    trials: u64,
    seed: u64,
    sampling: Sampling,
) -> Result<Estimate> {
    let n = f.num_vars();
    if k == 0 || trials == 0 {
        return Err(Error::domain("need k >= 1 and at least one trial"));
    }
    if sampling == Sampling::IndependentOnly && k > n {
        return Err(Error::domain("no independent tuples exist when k > n"));
    }
    let independent = sampling == Sampling::IndependentOnly;
    let chunks = trials.div_ceil(CHUNK);
    let failures: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let len = CHUNK.min(trials - c * CHUNK);
            (0..len)
                .filter(|_| {
                    let t = TestTuple::random(n, k, independent, &mut rng);
                    run_test(f, &t) == TestOutcome::Fail
                })
                .count() as u64
        })
        .sum();
    Ok(Estimate::new(failures, trials, seed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    DegLessThanK,
    DegAtLeastK,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub runs_used: u32,
    pub runs_requested: u32,
    pub failures: u32,
    /// Probability of a wrong `DegLessThanK` verdict if in fact
    /// `deg f = k`; absent when a failure was observed.
    pub false_positive_bound: Option<f64>,
}

/// `(1 - 0.288788)^t`.
pub fn false_positive_bound(t: u32) -> f64 {
    (0..t).fold(1.0, |acc, _| acc * (1.0 - POCHHAMMER_FLOOR))
}

/// Runs the test up to `t` times on fresh uniform tuples and stops at the
/// first failure.
pub fn decide<F: BooleanFunction + ?Sized>(f: &F, k: usize, t: u32, seed: u64) -> Result<Decision> {
    if k == 0 || t == 0 {
        return Err(Error::domain("need k >= 1 and t >= 1"));
    }
    let n = f.num_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for run in 1..=t {
        let tuple = TestTuple::random(n, k, false, &mut rng);
        if run_test(f, &tuple) == TestOutcome::Fail {
            return Ok(Decision {
                verdict: Verdict::DegAtLeastK,
                runs_used: run,
                runs_requested: t,
                failures: 1,
                false_positive_bound: None,
            });
        }
    }
    Ok(Decision {
        verdict: Verdict::DegLessThanK,
        runs_used: t,
        runs_requested: t,
        failures: 0,
        false_positive_bound: Some(false_positive_bound(t)),
    })
}
