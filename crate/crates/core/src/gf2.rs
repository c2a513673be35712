//! Linear algebra over F_2 on machine-word packed vectors.
//!
//! Coordinate `x_i` (1-based) lives in bit `i - 1`, so a point read as a
//! little-endian integer is also its truth-table index.

use std::ops::{BitXor, BitXorAssign};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::prob::ExactProb;

/// Largest supported number of variables for packed points.
pub const MAX_VARS: usize = 24;

/// An element of F_2^n. The dimension is carried by the containing value
/// (function, matrix, subspace); bits at or above `n` must be zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct PointVec(pub u32);

impl PointVec {
    pub const ZERO: PointVec = PointVec(0);

    /// Canonical basis vector with a one at 0-based coordinate `i`.
    pub fn unit(i: usize) -> Self {
        PointVec(1 << i)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn coord(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    pub fn fits(self, n: usize) -> bool {
        self.0 & !mask(n) == 0
    }
}

impl BitXor for PointVec {
    type Output = PointVec;
    fn bitxor(self, rhs: PointVec) -> PointVec {
        PointVec(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for PointVec {
    fn bitxor_assign(&mut self, rhs: PointVec) {
        self.0 ^= rhs.0;
    }
}

/// All-ones mask of the low `n` bits.
#[inline]
pub fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn check_vars(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::domain(format!(
            "variable count {n} outside 1..={MAX_VARS}"
        )));
    }
    Ok(())
}

/// Rank of a list of packed vectors.
pub fn rank_of_vectors(vectors: &[u32]) -> usize {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for &v in vectors {
        let mut v = v;
        while v != 0 {
            let p = v.trailing_zeros() as usize;
            if basis[p] == 0 {
                basis[p] = v;
                rank += 1;
                break;
            }
            v ^= basis[p];
        }
    }
    rank
}

/// Square matrix over F_2 stored by columns: column `j` is `M·e_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    columns: Vec<u32>,
}

impl Gf2Matrix {
    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            n,
            columns: (0..n).map(|j| 1u32 << j).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Gf2Matrix {
            n,
            columns: vec![0; n],
        }
    }

    pub fn from_columns(n: usize, columns: Vec<u32>) -> Result<Self> {
        check_vars(n)?;
        if columns.len() != n {
            return Err(Error::domain(format!(
                "expected {n} columns, got {}",
                columns.len()
            )));
        }
        if columns.iter().any(|&c| c & !mask(n) != 0) {
            return Err(Error::domain("column has bits beyond dimension"));
        }
        Ok(Gf2Matrix { n, columns })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let mut out = 0;
        let mut x = x;
        while x != 0 {
            let j = x.trailing_zeros() as usize;
            out ^= self.columns[j];
            x &= x - 1;
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Gf2Matrix {
            n: self.n,
            columns: other.columns.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_vectors(&self.columns)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }
}

/// Rejection-samples a uniform element of GL(n, F_2).
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Gf2Matrix {
    let m = mask(n);
    loop {
        let columns: Vec<u32> = (0..n).map(|_| rng.gen::<u32>() & m).collect();
        if rank_of_vectors(&columns) == n {
            return Gf2Matrix { n, columns };
        }
    }
}

pub fn random_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PointVec {
    PointVec(rng.gen::<u32>() & mask(n))
}

/// `|GL(n, F_2)| = ∏_{i<n} (2^n - 2^i)`.
pub fn count_invertible(n: usize) -> BigUint {
    let full = BigUint::one() << n;
    (0..n).fold(BigUint::one(), |acc, i| {
        acc * (&full - (BigUint::one() << i))
    })
}

/// Number of `k`-dimensional subspaces of F_2^n.
pub fn gaussian_binomial(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::domain(format!("subspace dimension {k} exceeds {n}")));
    }
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= (&one << (n - i)) - &one;
        den *= (&one << (k - i)) - &one;
    }
    Ok(num / den)
}

/// Probability that `k` uniform vectors of F_2^n are linearly independent:
/// `∏_{i=n-k+1}^{n} (1 - 2^-i)`, and zero when `k > n`.
pub fn lin_indep_probability(n: usize, k: usize) -> ExactProb {
    if k > n {
        return ExactProb::zero();
    }
    ((n - k + 1)..=n)
        .map(|i| ExactProb::one_minus_pow2_inv(i as u32))
        .product()
}

/// A linear subspace in reduced echelon form.
///
/// Each basis vector's pivot is its lowest set bit; pivots strictly
/// increase along the basis and every other basis vector is zero in a
/// given vector's pivot column. This form is unique per subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceBasis {
    n: usize,
    basis: Vec<u32>,
}

impl SubspaceBasis {
    /// Canonical basis of the span of `vectors`, which must be independent.
    pub fn from_independent(n: usize, vectors: &[u32]) -> Result<Self> {
        let s = Self::span(n, vectors)?;
        if s.dim() != vectors.len() {
            return Err(Error::domain("vectors are linearly dependent"));
        }
        Ok(s)
    }

    /// Canonical basis of the span of arbitrary vectors.
    pub fn span(n: usize, vectors: &[u32]) -> Result<Self> {
        check_vars(n)?;
        if vectors.iter().any(|&v| v & !mask(n) != 0) {
            return Err(Error::domain("vector has bits beyond dimension"));
        }
        let mut by_pivot = [0u32; 32];
        for &v in vectors {
            let mut v = v;
            while v != 0 {
                let p = v.trailing_zeros() as usize;
                if by_pivot[p] == 0 {
                    by_pivot[p] = v;
                    break;
                }
                v ^= by_pivot[p];
            }
        }
        // clear every pivot column in the other rows, highest pivot first
        for p in (0..n).rev() {
            let row = by_pivot[p];
            if row == 0 {
                continue;
            }
            for other in &mut by_pivot[..p] {
                if (*other >> p) & 1 == 1 {
                    *other ^= row;
                }
            }
        }
        let basis = by_pivot[..n].iter().copied().filter(|&v| v != 0).collect();
        Ok(SubspaceBasis { n, basis })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn pivot_mask(&self) -> u32 {
        self.basis
            .iter()
            .fold(0, |acc, &b| acc | (b & b.wrapping_neg()))
    }

    /// Reduces `v` modulo the subspace; the result is zero on all pivots.
    #[inline]
    pub fn reduce(&self, v: u32) -> u32 {
        let mut v = v;
        for &b in &self.basis {
            let pivot = b & b.wrapping_neg();
            if v & pivot != 0 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    /// All `2^k` points, in Gray-code order starting at zero.
    pub fn points(&self) -> Vec<u32> {
        span_points(&self.basis)
    }
}

/// The `2^k` XOR combinations of `vectors`, with multiplicity, in
/// Gray-code order from zero.
pub fn span_points(vectors: &[u32]) -> Vec<u32> {
    let count = 1usize << vectors.len();
    let mut out = Vec::with_capacity(count);
    let mut acc = 0u32;
    out.push(acc);
    for c in 1..count {
        acc ^= vectors[c.trailing_zeros() as usize];
        out.push(acc);
    }
    out
}

/// A coset `offset ⊕ space` with `offset` reduced modulo the space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSpace {
    offset: PointVec,
    space: SubspaceBasis,
}

impl AffineSpace {
    pub fn new(u0: PointVec, space: SubspaceBasis) -> Self {
        let offset = PointVec(space.reduce(u0.0));
        AffineSpace { offset, space }
    }

    pub fn offset(&self) -> PointVec {
        self.offset
    }

    pub fn space(&self) -> &SubspaceBasis {
        &self.space
    }

    pub fn points(&self) -> Vec<u32> {
        self.space
            .points()
            .into_iter()
            .map(|p| p ^ self.offset.0)
            .collect()
    }
}

/// One canonical offset per coset of `s`: every vector supported on the
/// non-pivot coordinates.
pub fn coset_transversal(s: &SubspaceBasis) -> Vec<PointVec> {
    let free = mask(s.n) & !s.pivot_mask();
    let mut out = Vec::with_capacity(1 << free.count_ones());
    let mut sub = 0u32;
    loop {
        out.push(PointVec(sub));
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
    out
}

/// All `k`-subsets of `0..n` as bitmasks, in increasing numeric order of
/// the lexicographic combination sequence.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    // Gosper's hack
    let mut c: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while c < limit {
        out.push(c as u32);
        let lowest = c & c.wrapping_neg();
        let ripple = c + lowest;
        c = (((c ^ ripple) >> 2) / lowest) | ripple;
    }
    out
}

/// Iterator over the subspaces whose echelon pivots are exactly `pivots`.
#[derive(Clone, Debug)]
pub struct PivotClass {
    n: usize,
    pivots: Vec<u32>,
    // (basis row, bit) for every free entry
    slots: Vec<(usize, u32)>,
    next: u64,
    end: u64,
}

impl PivotClass {
    pub fn new(n: usize, pivot_mask: u32) -> Self {
        let pivots: Vec<u32> = (0..n as u32)
            .filter(|i| (pivot_mask >> i) & 1 == 1)
            .map(|i| 1u32 << i)
            .collect();
        let mut slots = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            let pos = p.trailing_zeros();
            for j in (pos + 1)..n as u32 {
                if (pivot_mask >> j) & 1 == 0 {
                    slots.push((row, 1u32 << j));
                }
            }
        }
        let end = 1u64 << slots.len();
        PivotClass {
            n,
            pivots,
            slots,
            next: 0,
            end,
        }
    }

    pub fn len(&self) -> u64 {
        self.end
    }

    pub fn is_empty(&self) -> bool {
        self.end == 0
    }
}

impl Iterator for PivotClass {
    type Item = SubspaceBasis;

    fn next(&mut self) -> Option<SubspaceBasis> {
        if self.next >= self.end {
            return None;
        }
        let counter = self.next;
        self.next += 1;
        let mut basis = self.pivots.clone();
        for (i, &(row, bit)) in self.slots.iter().enumerate() {
            if (counter >> i) & 1 == 1 {
                basis[row] |= bit;
            }
        }
        Some(SubspaceBasis { n: self.n, basis })
    }
}

/// Streams every `k`-dimensional subspace of F_2^n exactly once, in
/// canonical form and deterministic order.
pub fn enumerate_subspaces(n: usize, k: usize) -> Result<impl Iterator<Item = SubspaceBasis>> {
    check_vars(n)?;
    if k > n {
        return Err(Error::domain(format!("subspace dimension {k} exceeds {n}")));
    }
    Ok(pivot_patterns(n, k)
        .into_iter()
        .flat_map(move |p| PivotClass::new(n, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zero(3).rank(), 0);
        let m = Gf2Matrix::from_columns(3, vec![0b001, 0b010, 0b011]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(!m.is_invertible());
    }

    #[test]
    fn invertible_counts() {
        assert_eq!(count_invertible(1), BigUint::from(1u32));
        assert_eq!(count_invertible(2), BigUint::from(6u32));
        assert_eq!(count_invertible(3), BigUint::from(168u32));
    }

    #[test]
    fn gaussian_binomials() {
        for n in 1..10 {
            assert_eq!(gaussian_binomial(n, 0).unwrap(), BigUint::one());
        }
        assert_eq!(gaussian_binomial(8, 3).unwrap(), BigUint::from(97155u32));
        assert_eq!(gaussian_binomial(4, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binomial(3, 4).is_err());
    }

    #[test]
    fn enumerate_small() {
        let subs: Vec<_> = enumerate_subspaces(2, 1).unwrap().collect();
        let gens: HashSet<u32> = subs.iter().map(|s| s.basis()[0]).collect();
        assert_eq!(gens, HashSet::from([0b01, 0b10, 0b11]));
        let full: Vec<_> = enumerate_subspaces(3, 3).unwrap().collect();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].points().len(), 8);
        assert!(enumerate_subspaces(3, 4).is_err());
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomial() {
        for n in 1..=8 {
            for k in 0..=n {
                let count = enumerate_subspaces(n, k).unwrap().count();
                assert_eq!(
                    BigUint::from(count),
                    gaussian_binomial(n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn enumerated_subspaces_are_distinct_and_canonical() {
        let subs: Vec<_> = enumerate_subspaces(6, 3).unwrap().collect();
        let distinct: HashSet<_> = subs.iter().cloned().collect();
        assert_eq!(distinct.len(), subs.len());
        for s in &subs {
            let again = SubspaceBasis::span(6, s.basis()).unwrap();
            assert_eq!(&again, s);
        }
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for k in 1..=n.min(3) {
                for _ in 0..1000 {
                    let base: Vec<u32> = loop {
                        let v: Vec<u32> = (0..k).map(|_| rng.gen::<u32>() & mask(n)).collect();
                        if rank_of_vectors(&v) == k {
                            break v;
                        }
                    };
                    // random change of basis inside the span
                    let other: Vec<u32> = loop {
                        let coeffs: Vec<u32> = (0..k).map(|_| rng.gen::<u32>() & mask(k)).collect();
                        if rank_of_vectors(&coeffs) == k {
                            break coeffs
                                .iter()
                                .map(|&c| {
                                    (0..k)
                                        .filter(|&j| (c >> j) & 1 == 1)
                                        .fold(0, |a, j| a ^ base[j])
                                })
                                .collect();
                        }
                    };
                    assert_eq!(
                        SubspaceBasis::from_independent(n, &base).unwrap(),
                        SubspaceBasis::from_independent(n, &other).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn transversal_examples() {
        let full = SubspaceBasis::span(3, &[1, 2, 4]).unwrap();
        assert_eq!(coset_transversal(&full), vec![PointVec(0)]);

        let line = SubspaceBasis::span(2, &[0b01]).unwrap();
        assert_eq!(
            coset_transversal(&line),
            vec![PointVec(0b00), PointVec(0b10)]
        );
    }

    #[test]
    fn transversal_partitions_space() {
        for s in enumerate_subspaces(8, 3).unwrap().step_by(997) {
            let offsets = coset_transversal(&s);
            assert_eq!(offsets.len(), 32);
            let mut seen = vec![false; 256];
            for o in &offsets {
                assert_eq!(o.0 & s.pivot_mask(), 0);
                for p in AffineSpace::new(*o, s.clone()).points() {
                    assert!(!seen[p as usize], "point covered twice");
                    seen[p as usize] = true;
                }
            }
            assert!(seen.iter().all(|&b| b));
            for x in 0..256u32 {
                let r = s.reduce(x);
                assert!(offsets.contains(&PointVec(r)));
            }
        }
    }

    #[test]
    fn random_invertible_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_invertible(1, &mut rng), Gf2Matrix::identity(1));
        for _ in 0..10_000 {
            assert_eq!(random_invertible(3, &mut rng).rank(), 3);
        }
    }

    #[test]
    fn random_invertible_is_roughly_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let draws = 100_000;
        let ones = (0..draws)
            .filter(|_| random_invertible(8, &mut rng).columns()[0] & 1 == 1)
            .count();
        // P(entry = 1) over GL(8) is 128/255
        let p = 128.0 / 255.0;
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        let p_hat = ones as f64 / draws as f64;
        assert!((p_hat - p).abs() < 3.0 * sigma, "p_hat {p_hat}");
    }

    #[test]
    fn products_of_invertibles_stay_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            for _ in 0..200 {
                let a = random_invertible(n, &mut rng);
                let b = random_invertible(n, &mut rng);
                assert_eq!(a.mul(&b).rank(), n);
            }
        }
    }

    #[test]
    fn lin_indep_values() {
        assert_eq!(lin_indep_probability(1, 1), ExactProb::from_ratio(1, 2));
        let p83 = lin_indep_probability(8, 3);
        assert_eq!(p83, ExactProb::from_ratio(255u32 * 127 * 63, 1u32 << 21));
        assert_eq!(p83.to_decimal(6), "0.972869");
        assert_eq!(p83.to_decimal(5), "0.97287");
        assert_eq!(lin_indep_probability(8, 8).to_decimal(6), "0.289919");
        assert!(lin_indep_probability(3, 4).is_zero());
    }
}
