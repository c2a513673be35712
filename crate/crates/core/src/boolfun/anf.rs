use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use super::{AffineMap, BooleanFunction, Degree, TruthTable};
use crate::error::{Error, Result};
use crate::gf2::{check_vars, mask, PointVec, MAX_VARS};
use crate::prob::ExactProb;

/// Algebraic normal form: the set of monomials with coefficient one.
///
/// A monomial is the bitmask of its variables (bit `i-1` for `x_i`); the
/// empty mask is the constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Anf {
    n: usize,
    monomials: BTreeSet<u32>,
}

impl Anf {
    pub fn zero(n: usize) -> Self {
        Anf {
            n,
            monomials: BTreeSet::new(),
        }
    }

    /// Sums the given monomials over F_2, so repeated terms cancel.
    pub fn from_monomials(n: usize, monomials: impl IntoIterator<Item = u32>) -> Self {
        let mut a = Anf::zero(n);
        for m in monomials {
            assert!(m & !mask(n) == 0, "monomial uses variables beyond x{n}");
            a.toggle(m);
        }
        a
    }

    pub fn from_truth_table(tt: &TruthTable) -> Self {
        let coeffs = tt.anf_coefficients();
        let mut monomials = BTreeSet::new();
        for (i, &w) in coeffs.words().iter().enumerate() {
            let mut w = w;
            while w != 0 {
                monomials.insert(((i as u32) << 6) | w.trailing_zeros());
                w &= w - 1;
            }
        }
        Anf {
            n: tt.n(),
            monomials,
        }
    }

    pub fn to_truth_table(&self) -> TruthTable {
        let mut t = TruthTable::zero(self.n);
        for &m in &self.monomials {
            t.set(m, true);
        }
        t.butterfly();
        t
    }

    /// Random function of degree exactly `k` (`1 <= k <= n`): each monomial
    /// of degree at most `k` is kept with probability one half.
    pub fn random_of_degree<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        assert!(k >= 1 && k <= n);
        let mut a = Anf::zero(n);
        for m in 0..(1u32 << n) {
            if m.count_ones() as usize <= k && rng.gen::<bool>() {
                a.monomials.insert(m);
            }
        }
        if a.count_of_degree(k) == 0 {
            let tops: Vec<u32> = (0..(1u32 << n))
                .filter(|m| m.count_ones() as usize == k)
                .collect();
            a.monomials.insert(tops[rng.gen_range(0..tops.len())]);
        }
        a
    }

    /// Random homogeneous function of degree `k` (nonzero).
    pub fn random_homogeneous<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        let tops: Vec<u32> = (0..(1u32 << n))
            .filter(|m| m.count_ones() as usize == k)
            .collect();
        loop {
            let a = Anf::from_monomials(n, tops.iter().copied().filter(|_| rng.gen::<bool>()));
            if !a.is_zero() {
                return a;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &BTreeSet<u32> {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: u32) -> bool {
        self.monomials.contains(&m)
    }

    pub fn toggle(&mut self, m: u32) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn degree(&self) -> Degree {
        self.monomials
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .map_or(Degree::ZeroFunction, Degree::Exactly)
    }

    pub fn count_of_degree(&self, k: usize) -> usize {
        self.monomials
            .iter()
            .filter(|m| m.count_ones() as usize == k)
            .count()
    }

    /// The common degree of all monomials, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.monomials.iter().map(|m| m.count_ones() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Degree-`k` monomial density: present degree-`k` monomials over `C(n,k)`.
    pub fn dd_k(&self, k: usize) -> Result<ExactProb> {
        if k > self.n {
            return Err(Error::domain(format!("k = {k} exceeds n = {}", self.n)));
        }
        Ok(ExactProb::from_ratio(
            self.count_of_degree(k),
            binomial(self.n, k),
        ))
    }

    /// Monomial-wise complement `t -> x_1⋯x_n / t` of a homogeneous form.
    pub fn complement(&self) -> Result<Anf> {
        if !self.is_zero() && self.homogeneous_degree().is_none() {
            return Err(Error::domain("complement needs a homogeneous function"));
        }
        let full = mask(self.n);
        Ok(Anf {
            n: self.n,
            monomials: self.monomials.iter().map(|m| m ^ full).collect(),
        })
    }

    /// `f(x_1..x_n) ⊕ g(x_{n+1}..x_{n+m})`.
    pub fn disjoint_sum(&self, other: &Anf) -> Result<Anf> {
        let n = self.n + other.n;
        if n > MAX_VARS {
            return Err(Error::domain(format!("sum would need {n} variables")));
        }
        let shifted = other.monomials.iter().map(|m| m << self.n);
        Ok(Anf::from_monomials(
            n,
            self.monomials.iter().copied().chain(shifted),
        ))
    }

    /// The same polynomial viewed in `m >= n` variables.
    pub fn with_vars(&self, m: usize) -> Result<Anf> {
        if m < self.n || m > MAX_VARS {
            return Err(Error::domain(format!(
                "cannot view {}-variable form in {m}",
                self.n
            )));
        }
        Ok(Anf {
            n: m,
            monomials: self.monomials.clone(),
        })
    }

    /// Product with the monomial `mono` (masks combine by union).
    pub fn times_monomial(&self, mono: u32) -> Anf {
        Anf::from_monomials(self.n, self.monomials.iter().map(|m| m | mono))
    }

    pub fn compose_affine(&self, map: &AffineMap) -> Result<Anf> {
        Ok(Anf::from_truth_table(
            &self.to_truth_table().compose_affine(map)?,
        ))
    }

    pub fn derivative(&self, a: PointVec) -> Anf {
        Anf::from_truth_table(&self.to_truth_table().derivative(a))
    }

    /// Parses the `+`-separated term grammar, e.g. `"x1x2x7 + x3x4x7"`.
    pub fn parse(text: &str, n: usize) -> Result<Anf> {
        check_vars(n)?;
        let mut anf = Anf::zero(n);
        for (start, term) in split_terms(text) {
            let m = parse_term(term, start, n)?;
            if let Some(m) = m {
                anf.toggle(m);
            }
        }
        Ok(anf)
    }

    /// Parses with `n` taken as the largest variable index (at least 1).
    pub fn parse_infer_vars(text: &str) -> Result<Anf> {
        let mut top = 1;
        for (start, term) in split_terms(text) {
            if let Some(m) = parse_term(term, start, MAX_VARS)? {
                top = top.max(32 - m.leading_zeros() as usize);
            }
        }
        Anf::parse(text, top)
    }
}

impl BooleanFunction for Anf {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn eval(&self, x: PointVec) -> bool {
        self.monomials.iter().filter(|&&m| x.0 & m == m).count() % 2 == 1
    }
}

impl fmt::Display for Anf {
    /// Highest degree first, then by variable indices; "0" for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(usize, Vec<usize>)> = self
            .monomials
            .iter()
            .map(|&m| {
                let vars: Vec<usize> = (0..32)
                    .filter(|i| (m >> i) & 1 == 1)
                    .map(|i| i + 1)
                    .collect();
                (vars.len(), vars)
            })
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        let rendered: Vec<String> = terms
            .into_iter()
            .map(|(_, vars)| {
                if vars.is_empty() {
                    "1".to_string()
                } else {
                    vars.iter().map(|v| format!("x{v}")).collect()
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Text form of an ANF.
pub fn format_anf(a: &Anf) -> String {
    a.to_string()
}

fn split_terms(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == '+' || c == '⊕' {
            out.push((start, &text[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push((start, &text[start..]));
    out
}

// Returns None for the "0" term.
fn parse_term(term: &str, offset: usize, n: usize) -> Result<Option<u32>> {
    let trimmed = term.trim();
    let lead = term.len() - term.trim_start().len();
    let at = |i: usize| format!("position {}", offset + lead + i + 1);
    if trimmed.is_empty() {
        return Err(Error::parse(at(0), "empty term"));
    }
    if trimmed == "0" {
        return Ok(None);
    }
    if trimmed == "1" {
        return Ok(Some(0));
    }
    let bytes = trimmed.as_bytes();
    let mut m = 0u32;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'x' | b'X' => {
                let digits_start = i + 1;
                let mut j = digits_start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == digits_start {
                    return Err(Error::parse(at(i), "expected variable index after 'x'"));
                }
                let idx: usize = trimmed[digits_start..j]
                    .parse()
                    .map_err(|_| Error::parse(at(digits_start), "variable index too large"))?;
                if idx == 0 || idx > n {
                    return Err(Error::parse(
                        at(digits_start),
                        format!("variable x{idx} outside x1..x{n}"),
                    ));
                }
                m |= 1 << (idx - 1);
                i = j;
            }
            b'*' | b' ' | b'\t' => i += 1,
            _ => {
                let c = trimmed[i..].chars().next().unwrap_or('?');
                return Err(Error::parse(at(i), format!("unexpected token {c:?}")));
            }
        }
    }
    Ok(Some(m))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_force_anf(tt: &TruthTable) -> BTreeSet<u32> {
        // Solve for coefficients one mask at a time, smallest first:
        // b_a = f(a) ⊕ Σ_{m ⊊ a} b_m
        let n = tt.n();
        let mut coeffs = BTreeSet::new();
        let mut order: Vec<u32> = (0..(1u32 << n)).collect();
        order.sort_by_key(|m| m.count_ones());
        for a in order {
            let below = coeffs.iter().filter(|&&m| m & !a == 0).count() % 2 == 1;
            if tt.get(a) ^ below {
                coeffs.insert(a);
            }
        }
        coeffs
    }

    #[test]
    fn moebius_examples() {
        assert!(Anf::from_truth_table(&TruthTable::zero(3)).is_zero());
        let and = TruthTable::from_bit_string(2, "0001").unwrap();
        assert_eq!(Anf::from_truth_table(&and).to_string(), "x1x2");

        let f = Anf::parse("x1x2x3 + x1", 3).unwrap();
        let tt = TruthTable::from_fn(3, |x| f.eval(x));
        let anf = Anf::from_truth_table(&tt);
        assert_eq!(anf.monomials(), &brute_force_anf(&tt));
        assert_eq!(anf.monomials(), &BTreeSet::from([0b111, 0b001]));
    }

    #[test]
    fn anf_to_table_examples() {
        assert!(Anf::zero(3).to_truth_table().is_zero());
        assert_eq!(
            Anf::parse("x1", 1)
                .unwrap()
                .to_truth_table()
                .to_bit_string(),
            "01"
        );
    }

    #[test]
    fn density() {
        let one = Anf::parse("x1x2x3", 9).unwrap();
        assert_eq!(one.dd_k(3).unwrap(), ExactProb::from_ratio(1, 84));
        let three = Anf::parse("x1x2x3 + x4x5x6 + x7x8x9", 9).unwrap();
        let dd = three.dd_k(3).unwrap();
        assert_eq!(dd, ExactProb::from_ratio(3, 84));
        assert_eq!(dd.to_decimal(4), "0.0357");
        assert_eq!(
            Anf::parse("1 + x1", 4).unwrap().dd_k(0).unwrap(),
            ExactProb::one()
        );
        assert_eq!(
            Anf::parse("x1", 4).unwrap().dd_k(0).unwrap(),
            ExactProb::zero()
        );
        assert!(three.dd_k(10).is_err());
    }

    #[test]
    fn complement_examples() {
        let f = Anf::parse("x1x2x3", 8).unwrap();
        assert_eq!(f.complement().unwrap().to_string(), "x4x5x6x7x8");
        let g = Anf::parse("x1x2x5 + x3x4x5", 8).unwrap();
        let gc = g.complement().unwrap();
        assert_eq!(gc, Anf::parse("x3x4x6x7x8 + x1x2x6x7x8", 8).unwrap());
        assert_eq!(gc.complement().unwrap(), g);
        assert!(Anf::parse("x1x2 + x3", 4).unwrap().complement().is_err());
    }

    #[test]
    fn parse_examples() {
        let f = Anf::parse("x1x2x3 + x4x5x6", 8).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.degree(), Degree::Exactly(3));
        assert!(Anf::parse("0", 4).unwrap().is_zero());
        assert!(Anf::parse("x1x2 + x1x2", 4).unwrap().is_zero());
        assert_eq!(Anf::parse("x1x1", 2).unwrap(), Anf::parse("x1", 2).unwrap());
        assert_eq!(Anf::parse("x1*x2 ⊕ 1", 2).unwrap().to_string(), "x1x2 + 1");
        assert_eq!(Anf::parse_infer_vars("x3x7").unwrap().n(), 7);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Anf::parse("x1 + y2", 4).unwrap_err();
        assert!(err.to_string().contains("position 6"), "{err}");
        let err = Anf::parse("x1x9", 8).unwrap_err();
        assert!(err.to_string().contains("x9"), "{err}");
        assert!(Anf::parse("x0", 8).is_err());
        assert!(Anf::parse("x1 + ", 8).is_err());
        assert!(Anf::parse("x", 8).is_err());
    }

    #[test]
    fn disjoint_sums() {
        let m = Anf::parse("x1x2x3", 3).unwrap();
        assert_eq!(m.disjoint_sum(&m).unwrap().to_string(), "x1x2x3 + x4x5x6");
        let f = Anf::parse("x1 + x2x3", 3).unwrap();
        assert_eq!(
            f.disjoint_sum(&Anf::zero(2)).unwrap(),
            f.with_vars(5).unwrap()
        );
        let q = Anf::parse("x1x2", 2).unwrap();
        let chain = q
            .disjoint_sum(&q)
            .unwrap()
            .disjoint_sum(&q)
            .unwrap()
            .disjoint_sum(&q)
            .unwrap();
        assert_eq!(chain, Anf::parse("x1x2 + x3x4 + x5x6 + x7x8", 8).unwrap());
    }

    #[test]
    fn compose_examples() {
        let f = Anf::parse("x1", 2).unwrap();
        assert_eq!(f.compose_affine(&AffineMap::identity(2)).unwrap(), f);
        let swap = crate::gf2::Gf2Matrix::from_columns(2, vec![0b10, 0b01]).unwrap();
        let g = f
            .compose_affine(&AffineMap::new(swap, PointVec::ZERO).unwrap())
            .unwrap();
        assert_eq!(g.to_string(), "x2");
        let singular = crate::gf2::Gf2Matrix::from_columns(2, vec![0b01, 0b01]).unwrap();
        assert!(AffineMap::new(singular, PointVec::ZERO).is_err());
    }

    #[test]
    fn derivative_example() {
        let f = Anf::parse("x1x2", 2).unwrap();
        assert_eq!(f.derivative(PointVec(1)).to_string(), "x2");
        assert!(f.derivative(PointVec::ZERO).is_zero());
    }

    #[test]
    fn random_degree_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 1..=7 {
            for k in 1..=n {
                let f = Anf::random_of_degree(n, k, &mut rng);
                assert_eq!(f.degree(), Degree::Exactly(k));
                let h = Anf::random_homogeneous(n, k, &mut rng);
                assert_eq!(h.homogeneous_degree(), Some(k));
            }
        }
    }

    fn arb_anf() -> impl Strategy<Value = Anf> {
        (1usize..=10).prop_flat_map(|n| {
            proptest::collection::vec(0u32..(1 << n), 0..40)
                .prop_map(move |ms| Anf::from_monomials(n, ms))
        })
    }

    proptest! {
        #[test]
        fn table_round_trip(a in arb_anf()) {
            let tt = a.to_truth_table();
            prop_assert_eq!(Anf::from_truth_table(&tt), a.clone());
            for x in (0..(1u32 << a.n())).step_by(7) {
                prop_assert_eq!(tt.get(x), a.eval(PointVec(x)));
            }
        }

        #[test]
        fn text_round_trip(a in arb_anf()) {
            let text = format_anf(&a);
            prop_assert_eq!(Anf::parse(&text, a.n()).unwrap(), a);
        }
    }
}
