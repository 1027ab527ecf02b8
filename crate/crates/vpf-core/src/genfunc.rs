//! The ring of sums `p(x) / prod (1-x^{l*a})^m` and the rewrite identities
//! used by the decomposition engine: the Szenes-Vergne formula, its elongated
//! variant, the elongation (geometric series) formula, and the two-term power
//! splits.
//!
//! A `DenominatorFactor` stores the direction as a primitive vector plus an
//! elongation, so two factors describe the same binomial `1-x^v` exactly when
//! their `(alpha, elongation)` keys agree. Canonical form sorts factors
//! lexicographically on that key and merges equal keys by adding
//! multiplicities.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::laurent::{monomial_value, IntVector, LaurentPoly};

/// One factor `1/(1-x^{l*alpha})^m` with `alpha` primitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DenominatorFactor {
    alpha: IntVector,
    elongation: BigInt,
    multiplicity: u32,
}

impl DenominatorFactor {
    /// Normalizes `vector` to primitive direction times elongation, so that
    /// factors with the same actual vector always compare equal.
    pub fn new(vector: IntVector, elongation: u32, multiplicity: u32) -> Self {
        assert!(!vector.is_zero(), "denominator vector must be nonzero");
        assert!(elongation >= 1 && multiplicity >= 1);
        let (alpha, content) = vector.primitive();
        DenominatorFactor {
            alpha,
            elongation: content * BigInt::from(elongation),
            multiplicity,
        }
    }

    pub fn alpha(&self) -> &IntVector {
        &self.alpha
    }

    pub fn elongation(&self) -> &BigInt {
        &self.elongation
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// The actual exponent vector `l * alpha`.
    pub fn vector(&self) -> IntVector {
        self.alpha.scale(&self.elongation)
    }
}

/// One fraction: a Laurent numerator over a canonical list of denominator
/// factors, plus the bookkeeping flags of the decomposition work list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingFraction {
    pub numerator: LaurentPoly,
    denominators: Vec<DenominatorFactor>,
    pub reduced: bool,
    pub preferred_relation: Option<PreferredRelation>,
}

/// An exact integral dependence `a0 * gaining = sum_j a_j * v_j` with
/// `a0 > 0` and all `a_j` nonzero, over the actual denominator vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferredRelation {
    pub a0: BigInt,
    pub gaining: IntVector,
    pub rhs: Vec<(BigInt, IntVector)>,
}

impl PreferredRelation {
    /// `a0 * gaining - sum a_j v_j` must vanish.
    pub fn is_valid(&self) -> bool {
        if !self.a0.is_positive() || self.rhs.iter().any(|(a, _)| a.is_zero()) {
            return false;
        }
        let mut acc = self.gaining.scale(&self.a0);
        for (a, v) in &self.rhs {
            acc = acc.sub(&v.scale(a));
        }
        acc.is_zero()
    }
}

impl GeneratingFraction {
    pub fn new(numerator: LaurentPoly, factors: Vec<DenominatorFactor>) -> Self {
        let mut f = GeneratingFraction {
            numerator,
            denominators: factors,
            reduced: false,
            preferred_relation: None,
        };
        f.normalize();
        f
    }

    /// Sort factors lexicographically on `(alpha, elongation)` and merge
    /// duplicates by adding multiplicities.
    fn normalize(&mut self) {
        self.denominators
            .sort_by(|a, b| (a.alpha(), a.elongation()).cmp(&(b.alpha(), b.elongation())));
        let mut merged: Vec<DenominatorFactor> = Vec::with_capacity(self.denominators.len());
        for f in self.denominators.drain(..) {
            match merged.last_mut() {
                Some(last) if last.alpha == f.alpha && last.elongation == f.elongation => {
                    last.multiplicity += f.multiplicity;
                }
                _ => merged.push(f),
            }
        }
        self.denominators = merged;
    }

    pub fn denominators(&self) -> &[DenominatorFactor] {
        &self.denominators
    }

    /// The distinct actual denominator vectors (the fraction's support).
    pub fn support(&self) -> Vec<IntVector> {
        self.denominators.iter().map(|f| f.vector()).collect()
    }

    pub fn dim(&self) -> usize {
        self.numerator.dim()
    }

    /// Exact value at a rational point, None at a pole.
    pub fn substitute(&self, pt: &[Rational]) -> Result<Rational> {
        let num = self.numerator.substitute_point(pt)?;
        let mut den = Rational::one();
        for f in &self.denominators {
            let base = Rational::one() - monomial_value(&f.vector(), pt);
            if base.is_zero() {
                return Err(Error::PoleHit);
            }
            for _ in 0..f.multiplicity {
                den *= &base;
            }
        }
        Ok(num / den)
    }
}

/// A formal sum of fractions, the work-list representation of an element of
/// `Q[x^(+-)][1/(1-x^a)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionSum {
    dim: usize,
    pub fractions: Vec<GeneratingFraction>,
}

impl FractionSum {
    pub fn new(dim: usize, fractions: Vec<GeneratingFraction>) -> Self {
        for f in &fractions {
            assert_eq!(f.dim(), dim, "all fractions must share the dimension");
        }
        FractionSum { dim, fractions }
    }

    pub fn zero(dim: usize) -> Self {
        FractionSum {
            dim,
            fractions: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Merge fractions with identical denominator lists and drop zero
    /// numerators; canonical order by denominator list.
    pub fn merge(&mut self) {
        use std::collections::BTreeMap;
        let mut groups: BTreeMap<Vec<DenominatorFactor>, LaurentPoly> = BTreeMap::new();
        for f in self.fractions.drain(..) {
            let key = f.denominators.clone();
            match groups.get_mut(&key) {
                Some(acc) => *acc = acc.add(&f.numerator).unwrap(),
                None => {
                    groups.insert(key, f.numerator);
                }
            }
        }
        self.fractions = groups
            .into_iter()
            .filter(|(_, num)| !num.is_zero())
            .map(|(dens, num)| {
                let mut f = GeneratingFraction::new(num, dens);
                f.reduced = true;
                f
            })
            .collect();
    }

    /// Exact value at a rational point.
    pub fn substitute(&self, pt: &[Rational]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for f in &self.fractions {
            acc += f.substitute(pt)?;
        }
        Ok(acc)
    }
}

/// Numerator `p_n(x^alpha)` of the elongation formula, so that
/// `1/(1-x^alpha) = p_n(x^alpha) / (1-x^{n*alpha})`.
///
/// For `n > 0` this is `1 + x^alpha + ... + x^{(n-1)alpha}`; for `n < 0` it is
/// `-x^{-alpha} - ... - x^{n*alpha}`.
pub fn elongation_numerator(alpha: &IntVector, n: i64) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::ZeroElongation);
    }
    elongation_numerator_big(alpha, &BigInt::from(n))
}

pub fn elongation_numerator_big(alpha: &IntVector, n: &BigInt) -> Result<LaurentPoly> {
    if n.is_zero() {
        return Err(Error::ZeroElongation);
    }
    let mut p = LaurentPoly::zero(alpha.dim());
    let count = n.abs().to_i64().expect("elongation fits in i64");
    if n.is_positive() {
        for k in 0..count {
            p.add_term(alpha.scale_i64(k), Rational::one());
        }
    } else {
        for k in 1..=count {
            p.add_term(alpha.scale_i64(-k), -Rational::one());
        }
    }
    Ok(p)
}

/// The elongated Szenes-Vergne formula: rewrites the product
/// `prod_j 1/(1-x^{alpha_j})` (one power each) against the integral
/// combination `w = sum_j a_j alpha_j`, which must be nonzero. Term `j`
/// carries numerator `x^{a_1 alpha_1} ... x^{a_{j-1} alpha_{j-1}} *
/// p_{a_j}(x^{alpha_j})`, keeps every factor except the j-th, and gains
/// `1/(1-x^w)`. Equality holds as rational functions.
pub fn szenes_vergne_elongated(
    factors: &[IntVector],
    coefficients: &[BigInt],
) -> Result<FractionSum> {
    assert!(!factors.is_empty());
    assert_eq!(factors.len(), coefficients.len());
    assert!(coefficients.iter().all(|a| !a.is_zero()));
    let dim = factors[0].dim();
    let mut sum_vec = IntVector::zero(dim);
    for (a, alpha) in coefficients.iter().zip(factors) {
        sum_vec = sum_vec.add(&alpha.scale(a));
    }
    if sum_vec.is_zero() {
        return Err(Error::ZeroSumVector);
    }
    let mut out = Vec::with_capacity(factors.len());
    let mut prefix = IntVector::zero(dim);
    for j in 0..factors.len() {
        let pj = elongation_numerator_big(&factors[j], &coefficients[j])?;
        let numerator = pj.mul_monomial(&prefix, &Rational::one());
        let mut dens = vec![DenominatorFactor::new(sum_vec.clone(), 1, 1)];
        for (i, alpha) in factors.iter().enumerate() {
            if i != j {
                dens.push(DenominatorFactor::new(alpha.clone(), 1, 1));
            }
        }
        out.push(GeneratingFraction::new(numerator, dens));
        prefix = prefix.add(&factors[j].scale(&coefficients[j]));
    }
    Ok(FractionSum::new(dim, out))
}

/// `1/((1-x^a)(1-x^b)) = 1/(1-x^{a-b}) * (1/(1-x^b) - x^{a-b}/(1-x^a))`.
pub fn two_term_split(alpha: &IntVector, beta: &IntVector) -> Result<FractionSum> {
    if alpha == beta {
        return Err(Error::EqualVectors);
    }
    power_two_term_split(alpha, beta, 1, 1, 1)
}

/// The two-term power split: with `p = -x^alpha (x^{-beta} + ... + x^{-n*beta})`,
///
/// `1/((1-x^a)^l (1-x^b)^m) = sum_{t=1..l} C(l+m-t-1, m-1) p^m /
/// ((1-x^a)^t (1-x^{a-nb})^{l+m-t}) + sum_{t=1..m} C(l+m-t-1, l-1) p^{m-t} /
/// ((1-x^b)^t (1-x^{a-nb})^{l+m-t})`.
pub fn power_two_term_split(
    alpha: &IntVector,
    beta: &IntVector,
    l: u32,
    m: u32,
    n: i64,
) -> Result<FractionSum> {
    assert!(l >= 1 && m >= 1 && n != 0);
    let dim = alpha.dim();
    let diff = alpha.sub(&beta.scale_i64(n));
    if diff.is_zero() {
        return Err(Error::DegenerateDifference);
    }
    // p = -x^{alpha - n beta} p_n(x^beta), the unique numerator with
    // (1 - x^alpha) + p (1 - x^beta) = 1 - x^{alpha - n beta}
    let mut p = LaurentPoly::zero(dim);
    if n > 0 {
        // -(x^{alpha-beta} + ... + x^{alpha-n beta})
        for k in 1..=n {
            p.add_term(alpha.sub(&beta.scale_i64(k)), -Rational::one());
        }
    } else {
        // +(x^alpha + x^{alpha+beta} + ... + x^{alpha+(|n|-1) beta})
        for j in 0..-n {
            p.add_term(alpha.add(&beta.scale_i64(j)), Rational::one());
        }
    }
    let mut fracs = Vec::new();
    for t in 1..=l {
        let c = binomial(BigInt::from(l + m - t - 1), BigInt::from(m - 1));
        let num = p.pow(m).scale(&Rational::from_integer(c));
        let dens = vec![
            DenominatorFactor::new(alpha.clone(), 1, t),
            DenominatorFactor::new(diff.clone(), 1, l + m - t),
        ];
        fracs.push(GeneratingFraction::new(num, dens));
    }
    for t in 1..=m {
        let c = binomial(BigInt::from(l + m - t - 1), BigInt::from(l - 1));
        let num = p.pow(m - t).scale(&Rational::from_integer(c));
        let dens = vec![
            DenominatorFactor::new(beta.clone(), 1, t),
            DenominatorFactor::new(diff.clone(), 1, l + m - t),
        ];
        fracs.push(GeneratingFraction::new(num, dens));
    }
    Ok(FractionSum::new(dim, fracs))
}

/// Truncated power-series expansion of a fraction sum on the exponent box
/// `[lo_i, hi_i]`. Every denominator vector must have nonnegative coordinates
/// and at least one positive one, so each geometric expansion is locally
/// finite inside the box.
pub fn series_truncate(s: &FractionSum, lo: &[BigInt], hi: &[BigInt]) -> Result<LaurentPoly> {
    assert_eq!(lo.len(), s.dim());
    assert_eq!(hi.len(), s.dim());
    let dim = s.dim();
    let mut total = LaurentPoly::zero(dim);
    for f in &s.fractions {
        let mut cur = f.numerator.clone();
        cur.prune_above(hi);
        for factor in f.denominators() {
            if cur.is_zero() {
                break;
            }
            let v = factor.vector();
            if !v.is_nonnegative() || v.is_zero() {
                return Err(Error::NonExpandableDenominator);
            }
            let mins = cur.min_exponents().unwrap();
            // largest k with k*v still able to land in the box from some term
            let mut kmax: i64 = 0;
            for j in 0..dim {
                if v[j].is_positive() {
                    let room = &hi[j] - &mins[j];
                    if room.is_negative() {
                        kmax = 0;
                        break;
                    }
                    let k = (room / &v[j]).to_i64().unwrap_or(0);
                    kmax = kmax.max(k);
                }
            }
            let m = factor.multiplicity();
            let mut expanded = LaurentPoly::zero(dim);
            for k in 0..=kmax {
                let coeff = binomial(BigInt::from(k + m as i64 - 1), BigInt::from(m - 1));
                let shifted = cur.mul_monomial(
                    &v.scale_i64(k),
                    &Rational::from_integer(coeff),
                );
                expanded = expanded.add(&shifted)?;
            }
            expanded.prune_above(hi);
            cur = expanded;
        }
        total = total.add(&cur)?;
    }
    Ok(total.restrict_to_box(lo, hi))
}

/// Exact rational value of the sum at a point; `PoleHit` when a denominator
/// vanishes.
pub fn substitute_fraction_sum(s: &FractionSum, pt: &[Rational]) -> Result<Rational> {
    s.substitute(pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn product_fraction(vectors: &[IntVector]) -> FractionSum {
        let dim = vectors[0].dim();
        let dens = vectors
            .iter()
            .map(|v| DenominatorFactor::new(v.clone(), 1, 1))
            .collect();
        FractionSum::new(
            dim,
            vec![GeneratingFraction::new(LaurentPoly::one(dim), dens)],
        )
    }

    #[test]
    fn elongation_cases() {
        let a = iv(&[1, 0]);
        assert_eq!(elongation_numerator(&a, 1).unwrap(), LaurentPoly::one(2));
        let p2 = elongation_numerator(&a, 2).unwrap();
        assert_eq!(p2.coeff(&iv(&[0, 0])), rat_int(1));
        assert_eq!(p2.coeff(&iv(&[1, 0])), rat_int(1));
        assert_eq!(p2.num_terms(), 2);
        let pm1 = elongation_numerator(&a, -1).unwrap();
        assert_eq!(pm1.coeff(&iv(&[-1, 0])), rat_int(-1));
        assert_eq!(pm1.num_terms(), 1);
        assert_eq!(elongation_numerator(&a, 0), Err(Error::ZeroElongation));
    }

    #[test]
    fn elongation_identity_checksum() {
        // 1/(1-x^a) = p_n(x^a)/(1-x^{n a}) at a generic point
        let pt = [rat(1, 2), rat(1, 3)];
        let a = iv(&[1, 2]);
        for n in [-3i64, -1, 1, 2, 5] {
            let lhs = product_fraction(&[a.clone()]).substitute(&pt).unwrap();
            let p = elongation_numerator(&a, n).unwrap();
            let den = DenominatorFactor::new(a.scale_i64(n).clone(), 1, 1);
            let rhs_frac = GeneratingFraction::new(p, vec![den]);
            assert_eq!(lhs, rhs_frac.substitute(&pt).unwrap(), "n={n}");
        }
    }

    #[test]
    fn szenes_vergne_unit_coefficients() {
        // 1/((1-x1)(1-x2)) = 1/(1-x1x2) * (1/(1-x2) + x1/(1-x1))
        let out = szenes_vergne_elongated(&[iv(&[1, 0]), iv(&[0, 1])], &[big(1), big(1)]).unwrap();
        assert_eq!(out.fractions.len(), 2);
        let pt = [rat(1, 2), rat(1, 3)];
        let lhs = product_fraction(&[iv(&[1, 0]), iv(&[0, 1])])
            .substitute(&pt)
            .unwrap();
        assert_eq!(lhs, out.substitute(&pt).unwrap());
        // term supports: {(1,1),(0,1)} and {(1,1),(1,0)}
        let supports: Vec<Vec<IntVector>> =
            out.fractions.iter().map(|f| f.support()).collect();
        assert!(supports.contains(&vec![iv(&[0, 1]), iv(&[1, 1])]));
        assert!(supports.contains(&vec![iv(&[1, 0]), iv(&[1, 1])]));
    }

    #[test]
    fn szenes_vergne_k1_degenerates_to_elongation() {
        let out = szenes_vergne_elongated(&[iv(&[1, 0])], &[big(2)]).unwrap();
        assert_eq!(out.fractions.len(), 1);
        let f = &out.fractions[0];
        // (1+x1)/(1-x1^2)
        assert_eq!(f.numerator, elongation_numerator(&iv(&[1, 0]), 2).unwrap());
        assert_eq!(f.denominators().len(), 1);
        assert_eq!(f.denominators()[0].vector(), iv(&[2, 0]));
    }

    #[test]
    fn szenes_vergne_zero_sum_rejected() {
        let r = szenes_vergne_elongated(&[iv(&[1, 0]), iv(&[1, 0])], &[big(1), big(-1)]);
        assert_eq!(r.unwrap_err(), Error::ZeroSumVector);
    }

    #[test]
    fn two_term_split_instantiation() {
        let out = two_term_split(&iv(&[1, 1]), &iv(&[0, 1])).unwrap();
        let pt = [rat(1, 2), rat(1, 3)];
        let lhs = product_fraction(&[iv(&[1, 1]), iv(&[0, 1])])
            .substitute(&pt)
            .unwrap();
        assert_eq!(lhs, out.substitute(&pt).unwrap());

        let out = two_term_split(&iv(&[2, 0]), &iv(&[0, 1])).unwrap();
        let mut supports: Vec<Vec<IntVector>> =
            out.fractions.iter().map(|f| f.support()).collect();
        supports.sort();
        assert_eq!(
            supports,
            vec![
                vec![iv(&[0, 1]), iv(&[2, -1])],
                vec![iv(&[2, 0]), iv(&[2, -1])]
            ]
        );
        assert_eq!(
            two_term_split(&iv(&[1, 1]), &iv(&[1, 1])).unwrap_err(),
            Error::EqualVectors
        );
    }

    #[test]
    fn power_split_reduces_to_two_term() {
        let a = iv(&[1, 1]);
        let b = iv(&[0, 1]);
        let simple = two_term_split(&a, &b).unwrap();
        let power = power_two_term_split(&a, &b, 1, 1, 1).unwrap();
        let lo = [big(0), big(0)];
        let hi = [big(8), big(8)];
        assert_eq!(
            series_truncate(&simple, &lo, &hi).unwrap(),
            series_truncate(&power, &lo, &hi).unwrap()
        );
    }

    #[test]
    fn power_split_checksum() {
        let a = iv(&[1, 1]);
        let b = iv(&[0, 1]);
        let out = power_two_term_split(&a, &b, 2, 1, 1).unwrap();
        let pt = [rat(1, 2), rat(1, 3)];
        let mut input = GeneratingFraction::new(
            LaurentPoly::one(2),
            vec![
                DenominatorFactor::new(a.clone(), 1, 2),
                DenominatorFactor::new(b.clone(), 1, 1),
            ],
        );
        input.reduced = false;
        assert_eq!(input.substitute(&pt).unwrap(), out.substitute(&pt).unwrap());
    }

    #[test]
    fn power_split_n2_matches_second_identity() {
        // l=m=1, n=2: 1/((1-x^a)(1-x^b)) =
        //   1/(1-x^{a-2b}) ( 1/(1-x^b) - (x^{a-b}+x^{a-2b})/(1-x^a) )
        let a = iv(&[1, 0]);
        let b = iv(&[0, 1]);
        let out = power_two_term_split(&a, &b, 1, 1, 2).unwrap();
        assert_eq!(out.fractions.len(), 2);
        for f in &out.fractions {
            assert!(f.support().contains(&iv(&[1, -2])));
        }
        let pt = [rat(1, 2), rat(1, 5)];
        let lhs = product_fraction(&[a, b]).substitute(&pt).unwrap();
        assert_eq!(lhs, out.substitute(&pt).unwrap());
    }

    #[test]
    fn series_geometric() {
        let s = product_fraction(&[iv(&[1, 0])]);
        let out = series_truncate(&s, &[big(0), big(0)], &[big(3), big(0)]).unwrap();
        let mut expect = LaurentPoly::zero(2);
        for k in 0..=3 {
            expect.add_term(iv(&[k, 0]), rat_int(1));
        }
        assert_eq!(out, expect);
    }

    #[test]
    fn series_two_factor_box() {
        let s = product_fraction(&[iv(&[1, 0]), iv(&[0, 1])]);
        let out = series_truncate(&s, &[big(0), big(0)], &[big(1), big(1)]).unwrap();
        assert_eq!(out.num_terms(), 4);
        for e in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            assert_eq!(out.coeff(&iv(&e)), rat_int(1));
        }
    }

    #[test]
    fn series_rejects_negative_direction() {
        let s = product_fraction(&[iv(&[1, -1])]);
        assert_eq!(
            series_truncate(&s, &[big(0), big(0)], &[big(2), big(2)]),
            Err(Error::NonExpandableDenominator)
        );
    }

    #[test]
    fn substitution_examples() {
        let s = product_fraction(&[iv(&[1])]);
        assert_eq!(s.substitute(&[rat(1, 2)]).unwrap(), rat_int(2));
        assert_eq!(s.substitute(&[rat_int(1)]).unwrap_err(), Error::PoleHit);
    }

    #[test]
    fn canonical_merge_of_equal_factors() {
        // (2,0) as a vector and (1,0) elongated by 2 are the same binomial
        let f = GeneratingFraction::new(
            LaurentPoly::one(2),
            vec![
                DenominatorFactor::new(iv(&[2, 0]), 1, 1),
                DenominatorFactor::new(iv(&[1, 0]), 2, 2),
            ],
        );
        assert_eq!(f.denominators().len(), 1);
        assert_eq!(f.denominators()[0].multiplicity(), 3);
        assert_eq!(f.denominators()[0].vector(), iv(&[2, 0]));
    }

    #[test]
    fn rewrites_preserve_series() {
        let a = iv(&[1, 1]);
        let b = iv(&[0, 1]);
        let input = product_fraction(&[a.clone(), b.clone()]);
        let lo = [big(0), big(0)];
        let hi = [big(8), big(8)];
        let base = series_truncate(&input, &lo, &hi).unwrap();
        let sv = szenes_vergne_elongated(&[a.clone(), b.clone()], &[big(1), big(1)]).unwrap();
        assert_eq!(series_truncate(&sv, &lo, &hi).unwrap(), base);
    }
}
