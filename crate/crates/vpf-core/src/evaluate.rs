//! Assembly of the chamber quasipolynomials from a decomposition, and the
//! dynamic-programming oracle they are verified against.
//!
//! For one reduced fraction with full-rank simplicial data `w_1..w_n`
//! (multiplicities `m_i`) and a numerator monomial `q x^delta`, the counting
//! function is `q * prod_i C(<b_i, g - delta> + m_i - 1, m_i - 1)` times the
//! indicator that `g - delta` lies in the lattice spanned by the `w_i`, where
//! `b_i` is the dual basis. A fraction contributes to a chamber exactly when
//! its cone contains the chamber's indicator point.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{inverse_of_columns, rank_of_vectors, Rational};
use crate::error::{Error, Result};
use crate::genfunc::GeneratingFraction;
use crate::geometry::{chambers, interior_point, spanned_hyperplanes, Cone};
use crate::laurent::{IntVector, LaurentPoly};
use crate::pfd::{decompose, PfdResult, Strategy};
use crate::quasi::{from_lattice_shift, QuasiNumber, QuasiPolynomial};

/// Dual basis of a full-rank vector list: `<b_i, w_k> = delta_ik` exactly.
#[derive(Debug, Clone)]
pub struct DualBasis {
    pub betas: Vec<Vec<Rational>>,
}

pub fn dual_basis(generators: &[IntVector]) -> Result<DualBasis> {
    let inv = inverse_of_columns(generators)?;
    Ok(DualBasis {
        betas: (0..inv.rows()).map(|i| inv.row(i)).collect(),
    })
}

/// A chamber together with the quasipolynomial counting function valid on it.
#[derive(Debug, Clone)]
pub struct ChamberFormula {
    pub chamber: Cone,
    pub formula: QuasiPolynomial,
}

/// Quasipolynomial contribution of one reduced fraction, relative to an
/// indicator point in general position.
///
/// Fractions whose support has rank below the dimension, or whose cone does
/// not contain the indicator, contribute nothing. An indicator on a support
/// hyperplane of the fraction is rejected.
pub fn brion_vergne_term(
    fraction: &GeneratingFraction,
    indicator: &[Rational],
) -> Result<QuasiPolynomial> {
    let n = fraction.dim();
    let mut generators: Vec<IntVector> = Vec::new();
    let mut mults: Vec<u32> = Vec::new();
    for f in fraction.denominators() {
        generators.push(f.vector());
        mults.push(f.multiplicity());
    }
    if generators.len() != n || rank_of_vectors(&generators) != n {
        return Ok(QuasiPolynomial::zero(n));
    }
    let duals = dual_basis(&generators)?;
    // indicator = sum c_i w_i; strictly inside iff all c_i > 0
    let coords: Vec<Rational> = duals
        .betas
        .iter()
        .map(|b| {
            let mut acc = Rational::zero();
            for (j, c) in b.iter().enumerate() {
                acc += c * &indicator[j];
            }
            acc
        })
        .collect();
    if coords.iter().any(|c| c.is_zero()) {
        return Err(Error::BadIndicator);
    }
    if coords.iter().any(|c| c.is_negative()) {
        return Ok(QuasiPolynomial::zero(n));
    }
    let mut total = QuasiPolynomial::zero(n);
    for (delta, q) in fraction.numerator.terms() {
        // polynomial part: prod_i C(<b_i, g - delta> + m_i - 1, m_i - 1)
        let mut poly = LaurentPoly::constant(n, q.clone());
        for (i, beta) in duals.betas.iter().enumerate() {
            let m = mults[i];
            if m == 1 {
                continue;
            }
            // linear form s(g) = <b_i, g> - <b_i, delta>
            let mut linear = LaurentPoly::zero(n);
            let mut shift = Rational::zero();
            for j in 0..n {
                if !beta[j].is_zero() {
                    linear.add_term(IntVector::unit(n, j), beta[j].clone());
                }
                shift += &beta[j] * Rational::from_integer(delta[j].clone());
            }
            linear.add_term(IntVector::zero(n), -shift);
            // C(s + m - 1, m - 1) = prod_{l=1..m-1} (s + l)/l
            for l in 1..m {
                let mut factor = linear.clone();
                factor.add_term(IntVector::zero(n), Rational::from_integer(BigInt::from(l)));
                poly = poly.mul(&factor)?.scale(&Rational::new(
                    BigInt::one(),
                    BigInt::from(l),
                ));
            }
        }
        let tau = from_lattice_shift(&generators, delta)?;
        for (e, c) in poly.terms() {
            total.add_term(e.clone(), QuasiNumber::from_basic(c.clone(), tau.clone()));
        }
    }
    Ok(total)
}

/// The chamber's counting function: the sum of the contributions of all
/// fractions whose cones contain an interior indicator of the chamber.
pub fn chamber_formula(pfd: &PfdResult, chamber: &Cone) -> Result<ChamberFormula> {
    let n = chamber.dim();
    let mut avoid = spanned_hyperplanes(n, &pfd.support.iter().cloned().collect::<Vec<_>>());
    avoid.retain(|v| !v.is_zero());
    let indicator = interior_point(chamber, &avoid)?;
    let mut formula = QuasiPolynomial::zero(n);
    for f in &pfd.fractions.fractions {
        formula = formula.add(&brion_vergne_term(f, &indicator)?);
    }
    Ok(ChamberFormula {
        chamber: chamber.clone(),
        formula,
    })
}

/// End-to-end: decompose the generating function of `vectors` and assemble the
/// counting function on `chamber`.
pub fn vpf_quasipoly(
    vectors: &[IntVector],
    chamber: &Cone,
    strategy: &Strategy,
) -> Result<ChamberFormula> {
    let input = crate::rootsys::vectors_input(vectors);
    let pfd = decompose(&input, strategy)?;
    chamber_formula(&pfd, chamber)
}

/// Number of ways to write `g` as a nonnegative integer combination of
/// `vectors`, by dynamic programming over one vector at a time.
pub fn vpf_bruteforce(vectors: &[IntVector], g: &IntVector) -> BigInt {
    if !g.is_nonnegative() {
        return BigInt::zero();
    }
    BruteForceTable::new(vectors, g).count(g)
}

/// DP table of partition counts for all lattice points below a bound.
pub struct BruteForceTable {
    dim: usize,
    counts: HashMap<Vec<i64>, BigInt>,
}

impl BruteForceTable {
    pub fn new(vectors: &[IntVector], bound: &IntVector) -> Self {
        let dim = bound.dim();
        let hi: Vec<i64> = bound
            .coords()
            .iter()
            .map(|c| c.to_i64().expect("bound fits in i64").max(0))
            .collect();
        let mut counts: HashMap<Vec<i64>, BigInt> = HashMap::new();
        let mut points: Vec<Vec<i64>> = Vec::new();
        let mut cur = vec![0i64; dim];
        loop {
            points.push(cur.clone());
            let mut i = 0;
            loop {
                if i == dim {
                    break;
                }
                cur[i] += 1;
                if cur[i] <= hi[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
            if i == dim {
                break;
            }
        }
        for p in &points {
            counts.insert(p.clone(), BigInt::zero());
        }
        counts.insert(vec![0; dim], BigInt::one());
        // points are odometer-ordered: every prefix-sum update sees smaller
        // points first coordinatewise because vectors are nonnegative
        for v in vectors {
            let vi: Vec<i64> = v
                .coords()
                .iter()
                .map(|c| c.to_i64().expect("vector fits in i64"))
                .collect();
            for p in &points {
                let prev: Vec<i64> = p.iter().zip(&vi).map(|(a, b)| a - b).collect();
                if prev.iter().all(|&c| c >= 0) {
                    let add = counts.get(&prev).cloned().unwrap_or_else(BigInt::zero);
                    if !add.is_zero() {
                        *counts.get_mut(p).unwrap() += add;
                    }
                }
            }
        }
        BruteForceTable { dim, counts }
    }

    pub fn count(&self, g: &IntVector) -> BigInt {
        let key: Vec<i64> = g
            .coords()
            .iter()
            .map(|c| c.to_i64().expect("point fits in i64"))
            .collect();
        assert_eq!(key.len(), self.dim);
        self.counts.get(&key).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// Report of a formula-vs-oracle sweep over the lattice points of a chamber.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub chamber_id: usize,
    pub points_tested: usize,
    pub mismatches: Vec<(IntVector, BigInt, Rational)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Evaluate formula and oracle at every lattice point of the chamber inside
/// `[0, box_side]^n`; records all disagreements.
pub fn verify_chamber(
    cf: &ChamberFormula,
    vectors: &[IntVector],
    box_side: i64,
    chamber_id: usize,
) -> VerifyReport {
    let n = cf.chamber.dim();
    let bound = IntVector::from_i64(&vec![box_side; n]);
    let table = BruteForceTable::new(vectors, &bound);
    let mut report = VerifyReport {
        chamber_id,
        points_tested: 0,
        mismatches: Vec::new(),
    };
    let mut cur = vec![0i64; n];
    loop {
        let g = IntVector::from_i64(&cur);
        if cf.chamber.contains_int(&g) {
            report.points_tested += 1;
            let expect = table.count(&g);
            let got = cf.formula.eval(&g);
            if got != Rational::from_integer(expect.clone()) {
                report.mismatches.push((g, expect, got));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            cur[i] += 1;
            if cur[i] <= box_side {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    report
}

/// Convenience: decompose, enumerate chambers, assemble every formula.
pub fn all_chamber_formulas(
    vectors: &[IntVector],
    strategy: &Strategy,
) -> Result<(PfdResult, Vec<ChamberFormula>)> {
    let input = crate::rootsys::vectors_input(vectors);
    let pfd = decompose(&input, strategy)?;
    let cc = chambers(vectors)?;
    let formulas = cc
        .chambers
        .iter()
        .map(|ch| chamber_formula(&pfd, ch))
        .collect::<Result<Vec<_>>>()?;
    Ok((pfd, formulas))
}
