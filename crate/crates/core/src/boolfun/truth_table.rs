use rand::Rng;

use super::{AffineMap, BooleanFunction, Degree};
use crate::error::{Error, Result};
use crate::gf2::{check_vars, mask, PointVec};

/// Largest variable count for which full tables are materialised.
pub const MAX_TABLE_VARS: usize = 16;

// Masks selecting the positions whose bit `j` is zero, for j < 6.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// The `2^n` output bits of a function, bit `j` of the table being
/// `f(PointVec(j))`. Packed 64 outputs per word; for `n < 6` only the low
/// `2^n` bits of the single word are used.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn used_bits_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl TruthTable {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_TABLE_VARS).contains(&n), "table size out of range");
        TruthTable {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn try_zero(n: usize) -> Result<Self> {
        check_vars(n)?;
        if n > MAX_TABLE_VARS {
            return Err(Error::domain(format!(
                "truth tables are limited to {MAX_TABLE_VARS} variables"
            )));
        }
        Ok(Self::zero(n))
    }

    pub fn from_fn(n: usize, f: impl Fn(PointVec) -> bool) -> Self {
        let mut tt = Self::zero(n);
        for x in 0..(1u32 << n) {
            if f(PointVec(x)) {
                tt.set(x, true);
            }
        }
        tt
    }

    /// Tabulates any oracle with at most [`MAX_TABLE_VARS`] variables.
    pub fn from_oracle<F: BooleanFunction + ?Sized>(f: &F) -> Result<Self> {
        let mut tt = Self::try_zero(f.num_vars())?;
        for x in 0..(1u32 << tt.n) {
            if f.eval(PointVec(x)) {
                tt.set(x, true);
            }
        }
        Ok(tt)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut tt = Self::zero(n);
        let used = used_bits_mask(n);
        for w in &mut tt.words {
            *w = rng.gen::<u64>() & used;
        }
        tt
    }

    #[cfg(test)]
    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(n));
        TruthTable { n, words }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: u32, value: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        let bit = 1u64 << (x & 63);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    /// Number of points where the function is one.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &TruthTable) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// In-place Moebius butterfly. Maps values to ANF coefficients and,
    /// being an involution, coefficients back to values.
    pub fn butterfly(&mut self) {
        for (j, &low) in LOW_HALF.iter().enumerate().take(self.n.min(6)) {
            let shift = 1u32 << j;
            for w in &mut self.words {
                *w ^= (*w & low) << shift;
            }
        }
        for j in 6..self.n {
            let stride = 1usize << (j - 6);
            for i in 0..self.words.len() {
                if i & stride != 0 {
                    self.words[i] ^= self.words[i ^ stride];
                }
            }
        }
    }

    /// Table of ANF coefficients, indexed by monomial mask.
    pub fn anf_coefficients(&self) -> TruthTable {
        let mut t = self.clone();
        t.butterfly();
        t
    }

    pub fn degree(&self) -> Degree {
        let coeffs = self.anf_coefficients();
        let mut best: Option<usize> = None;
        for (i, &w) in coeffs.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let m = ((i as u32) << 6) | w.trailing_zeros();
                let d = m.count_ones() as usize;
                best = Some(best.map_or(d, |b| b.max(d)));
                w &= w - 1;
            }
        }
        best.map_or(Degree::ZeroFunction, Degree::Exactly)
    }

    /// Table of `x -> f(x ⊕ a)`.
    pub fn shifted(&self, a: PointVec) -> TruthTable {
        let a = a.0;
        debug_assert!(a & !mask(self.n) == 0);
        let high = (a >> 6) as usize;
        let low = a & 63;
        let mut words = vec![0u64; self.words.len()];
        for (i, out) in words.iter_mut().enumerate() {
            let mut w = self.words[i ^ high];
            for (j, &m) in LOW_HALF.iter().enumerate() {
                if (low >> j) & 1 == 1 {
                    let s = 1u32 << j;
                    w = ((w >> s) & m) | ((w & m) << s);
                }
            }
            *out = w;
        }
        TruthTable { n: self.n, words }
    }

    /// `D_a f(x) = f(x ⊕ a) ⊕ f(x)`; the zero function when `a = 0`.
    pub fn derivative(&self, a: PointVec) -> TruthTable {
        let mut d = self.shifted(a);
        d.xor_assign(self);
        d
    }

    /// `x -> f(Mx ⊕ v)`.
    pub fn compose_affine(&self, map: &AffineMap) -> Result<TruthTable> {
        if map.n() != self.n {
            return Err(Error::domain("map dimension differs from function"));
        }
        let cols = map.matrix().columns();
        let v = map.offset().0;
        let mut out = TruthTable::zero(self.n);
        // Gray-code walk keeps Mx ⊕ v incremental
        let mut image = v;
        let mut gray = 0u32;
        if self.get(image) {
            out.set(0, true);
        }
        for c in 1u32..(1 << self.n) {
            let j = c.trailing_zeros() as usize;
            gray ^= 1 << j;
            image ^= cols[j];
            if self.get(image) {
                out.set(gray, true);
            }
        }
        Ok(out)
    }

    /// Same function on `m >= n` variables, ignoring the new ones.
    pub fn extend_vars(&self, m: usize) -> TruthTable {
        assert!(m >= self.n);
        let mut out = TruthTable::zero(m);
        let low = mask(self.n);
        for x in 0..(1u32 << m) {
            if self.get(x & low) {
                out.set(x, true);
            }
        }
        out
    }

    pub fn to_bit_string(&self) -> String {
        (0..(1u32 << self.n))
            .map(|x| if self.get(x) { '1' } else { '0' })
            .collect()
    }

    /// Lowercase hex, nibble `j/4` holding bits `4(j/4)..` LSB first.
    pub fn to_hex_string(&self) -> String {
        let size = 1u32 << self.n;
        let nibbles = size.div_ceil(4);
        (0..nibbles)
            .map(|j| {
                let mut v = 0u32;
                for b in 0..4 {
                    let x = 4 * j + b;
                    if x < size && self.get(x) {
                        v |= 1 << b;
                    }
                }
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    pub fn from_bit_string(n: usize, s: &str) -> Result<Self> {
        let mut tt = Self::try_zero(n)?;
        let size = 1usize << n;
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != size {
            return Err(Error::parse(
                "table",
                format!("expected {size} bits, found {}", chars.len()),
            ));
        }
        for (i, c) in chars.into_iter().enumerate() {
            match c {
                '0' => {}
                '1' => tt.set(i as u32, true),
                other => {
                    return Err(Error::parse(
                        format!("column {}", i + 1),
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
        }
        Ok(tt)
    }

    pub fn from_hex_string(n: usize, s: &str) -> Result<Self> {
        let mut tt = Self::try_zero(n)?;
        let size = 1u32 << n;
        let expected = size.div_ceil(4) as usize;
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != expected {
            return Err(Error::parse(
                "table",
                format!("expected {expected} hex digits, found {}", chars.len()),
            ));
        }
        for (j, c) in chars.into_iter().enumerate() {
            let v = c
                .to_digit(16)
                .filter(|_| !c.is_ascii_uppercase())
                .ok_or_else(|| {
                    Error::parse(format!("column {}", j + 1), format!("bad hex digit {c:?}"))
                })?;
            for b in 0..4u32 {
                if (v >> b) & 1 == 1 {
                    let x = 4 * j as u32 + b;
                    if x >= size {
                        return Err(Error::parse(
                            format!("column {}", j + 1),
                            "bits set beyond table length",
                        ));
                    }
                    tt.set(x, true);
                }
            }
        }
        Ok(tt)
    }

    /// Parses the two-line table file: `n=<int>` then the bits (or hex).
    pub fn parse_file(text: &str, hex: bool) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("line 1", "missing n=<int> header"))?;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse("line 1", format!("bad header {header:?}")))?;
        let body = lines
            .next()
            .ok_or_else(|| Error::parse("line 2", "missing table line"))?;
        if let Some(extra) = lines.next() {
            return Err(Error::parse(
                "line 3",
                format!("unexpected content {extra:?}"),
            ));
        }
        let parsed = if hex {
            Self::from_hex_string(n, body)
        } else {
            Self::from_bit_string(n, body)
        };
        parsed.map_err(|e| match e {
            Error::Parse { location, message } => Error::Parse {
                location: format!("line 2, {location}"),
                message,
            },
            other => other,
        })
    }

    pub fn to_file_string(&self, hex: bool) -> String {
        let body = if hex {
            self.to_hex_string()
        } else {
            self.to_bit_string()
        };
        format!("n={}\n{}\n", self.n, body)
    }
}

impl BooleanFunction for TruthTable {
    fn num_vars(&self) -> usize {
        self.n
    }

    #[inline]
    fn eval(&self, x: PointVec) -> bool {
        self.get(x.0)
    }
}
