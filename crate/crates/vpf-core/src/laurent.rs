//! Lattice vectors and sparse multivariate Laurent polynomials over the
//! rationals, with the monomial notation `x^g = x_1^{g_1} ... x_n^{g_n}`.
//!
//! Term maps are ordered lexicographically on the exponent vector so printing
//! and iteration are deterministic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Integer lattice vector of a fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn scale_i64(&self, k: i64) -> IntVector {
        self.scale(&BigInt::from(k))
    }

    pub fn dot_int(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rat(&self, other: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| Rational::from_integer(a.clone()) * b)
            .sum()
    }

    /// Gcd of the coordinates (zero vector gives zero).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the content; the zero vector is returned unchanged.
    pub fn primitive(&self) -> (IntVector, BigInt) {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return (self.clone(), BigInt::one());
        }
        (IntVector(self.0.iter().map(|c| c / &g).collect()), g)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }
}

impl std::ops::Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

/// Sparse Laurent polynomial: finite map from exponent vectors to nonzero
/// rational coefficients. The zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<IntVector, Rational>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(IntVector::zero(dim), Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(IntVector::zero(dim), c)
    }

    pub fn monomial(exp: IntVector, coeff: Rational) -> Self {
        let dim = exp.dim();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &IntVector) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exp: IntVector, coeff: Rational) {
        assert_eq!(exp.dim(), self.dim);
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !coeff.is_zero() {
                    v.insert(coeff);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.dim, other.dim
            )));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.dim, other.dim
            )));
        }
        let mut out = LaurentPoly::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, exp: &IntVector, coeff: &Rational) -> LaurentPoly {
        if coeff.is_zero() {
            return LaurentPoly::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(exp), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one(self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// Exact evaluation at a point with all coordinates nonzero.
    pub fn substitute_point(&self, pt: &[Rational]) -> Result<Rational> {
        if pt.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point of dim {} for polynomial of dim {}",
                pt.len(),
                self.dim
            )));
        }
        if pt.iter().any(|c| c.is_zero()) {
            return Err(Error::ZeroCoordinate);
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            total += c * monomial_value(e, pt);
        }
        Ok(total)
    }

    /// Minimum exponent per coordinate over all terms (None when zero).
    pub fn min_exponents(&self) -> Option<Vec<BigInt>> {
        if self.terms.is_empty() {
            return None;
        }
        let mut mins = vec![BigInt::zero(); self.dim];
        let mut first = true;
        for e in self.terms.keys() {
            for j in 0..self.dim {
                if first || e[j] < mins[j] {
                    mins[j] = e[j].clone();
                }
            }
            first = false;
        }
        Some(mins)
    }

    /// Drop every term whose exponent exceeds `hi` in some coordinate.
    pub fn prune_above(&mut self, hi: &[BigInt]) {
        self.terms.retain(|e, _| (0..hi.len()).all(|j| e[j] <= hi[j]));
    }

    /// Restrict to the box `lo <= e <= hi` (componentwise).
    pub fn restrict_to_box(&self, lo: &[BigInt], hi: &[BigInt]) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| (0..self.dim).all(|j| lo[j] <= e[j] && e[j] <= hi[j]))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Value of `pt^e`, exponent coordinates may be negative.
pub fn monomial_value(e: &IntVector, pt: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for (j, c) in pt.iter().enumerate() {
        let k = &e[j];
        if k.is_zero() {
            continue;
        }
        let p = k.abs().to_u32().expect("exponent fits in u32");
        let mut powed = Rational::one();
        for _ in 0..p {
            powed *= c;
        }
        if k.is_negative() {
            powed = powed.recip();
        }
        acc *= powed;
    }
    acc
}
