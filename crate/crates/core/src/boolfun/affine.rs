use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, PointVec};

/// Invertible affine map `x -> Mx ⊕ v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    m: Gf2Matrix,
    v: PointVec,
}

impl AffineMap {
    pub fn new(m: Gf2Matrix, v: PointVec) -> Result<Self> {
        if !m.is_invertible() {
            return Err(Error::domain("affine map needs an invertible matrix"));
        }
        if !v.fits(m.n()) {
            return Err(Error::domain("offset has bits beyond dimension"));
        }
        Ok(AffineMap { m, v })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            m: Gf2Matrix::identity(n),
            v: PointVec::ZERO,
        }
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.m
    }

    pub fn offset(&self) -> PointVec {
        self.v
    }

    #[inline]
    pub fn apply(&self, x: PointVec) -> PointVec {
        PointVec(self.m.apply(x.0) ^ self.v.0)
    }
}
