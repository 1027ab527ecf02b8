//! Root-system data in simple-basis coordinates.
//!
//! Types A-D are built from their classical realizations in an orthonormal
//! `eta` basis and converted to simple coordinates; types E, F, G are
//! generated from their Cartan matrices by closing under simple reflections
//! (Bourbaki node numbering). The extended sets and the total order used by
//! the classical reduction are also provided here.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::IntMatrix;
use crate::error::{Error, Result};
use crate::genfunc::{DenominatorFactor, FractionSum, GeneratingFraction};
use crate::laurent::{IntVector, LaurentPoly};
use crate::pfd::choose_relation;

/// Simple root-system family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Label {
    pub fn parse(s: &str) -> Option<Label> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Some(Label::A),
            "B" => Some(Label::B),
            "C" => Some(Label::C),
            "D" => Some(Label::D),
            "E" => Some(Label::E),
            "F" => Some(Label::F),
            "G" => Some(Label::G),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Label::A => "A",
            Label::B => "B",
            Label::C => "C",
            Label::D => "D",
            Label::E => "E",
            Label::F => "F",
            Label::G => "G",
        }
    }

    pub fn rank_valid(&self, rank: usize) -> bool {
        match self {
            Label::A => rank >= 1,
            Label::B | Label::C => rank >= 2,
            Label::D => rank >= 4,
            Label::E => (6..=8).contains(&rank),
            Label::F => rank == 4,
            Label::G => rank == 2,
        }
    }
}

/// A root system: label, rank, Cartan matrix, and the positive roots in
/// simple coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub label: Label,
    pub rank: usize,
    pub cartan: IntMatrix,
    pub positive_roots: Vec<IntVector>,
}

impl RootSystem {
    pub fn expected_count(label: Label, n: usize) -> usize {
        match label {
            Label::A => n * (n + 1) / 2,
            Label::B | Label::C => n * n,
            Label::D => n * (n - 1),
            Label::G => 6,
            Label::F => 24,
            Label::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }
}

/// Cartan matrix with the convention `C[i][j] = <alpha_i, alpha_j^v>`.
pub fn cartan_matrix(label: Label, n: usize) -> Result<IntMatrix> {
    if !label.rank_valid(n) {
        return Err(Error::InvalidRank(format!("{}{}", label.as_str(), n)));
    }
    let mut c = IntMatrix::zero(n, n);
    for i in 0..n {
        c[(i, i)] = BigInt::from(2);
    }
    let edge = |c: &mut IntMatrix, i: usize, j: usize| {
        c[(i, j)] = BigInt::from(-1);
        c[(j, i)] = BigInt::from(-1);
    };
    match label {
        Label::A => {
            for i in 0..n - 1 {
                edge(&mut c, i, i + 1);
            }
        }
        Label::B => {
            for i in 0..n - 1 {
                edge(&mut c, i, i + 1);
            }
            // alpha_{n-1} long, alpha_n short
            c[(n - 2, n - 1)] = BigInt::from(-2);
        }
        Label::C => {
            for i in 0..n - 1 {
                edge(&mut c, i, i + 1);
            }
            c[(n - 1, n - 2)] = BigInt::from(-2);
        }
        Label::D => {
            for i in 0..n - 2 {
                edge(&mut c, i, i + 1);
            }
            edge(&mut c, n - 3, n - 1);
            c[(n - 2, n - 1)] = BigInt::zero();
            c[(n - 1, n - 2)] = BigInt::zero();
        }
        Label::E => {
            // chain 1-3-4-5-6(-7)(-8), branch 2-4
            let chain: &[(usize, usize)] = &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
            for &(i, j) in chain.iter().take(n - 2) {
                edge(&mut c, i, j);
            }
            edge(&mut c, 1, 3);
        }
        Label::F => {
            edge(&mut c, 0, 1);
            edge(&mut c, 2, 3);
            c[(1, 2)] = BigInt::from(-2);
            c[(2, 1)] = BigInt::from(-1);
        }
        Label::G => {
            // alpha_1 long, alpha_2 short
            c[(0, 1)] = BigInt::from(-3);
            c[(1, 0)] = BigInt::from(-1);
        }
    }
    Ok(c)
}

/// The positive roots in simple coordinates.
pub fn positive_roots(label: Label, rank: usize) -> Result<RootSystem> {
    if !label.rank_valid(rank) {
        return Err(Error::InvalidRank(format!("{}{}", label.as_str(), rank)));
    }
    let cartan = cartan_matrix(label, rank)?;
    let positive_roots = match label {
        Label::A | Label::B | Label::C | Label::D => classical_positive_roots(label, rank),
        Label::E | Label::F | Label::G => {
            let all = closure_from_cartan(&cartan);
            let mut pos: Vec<IntVector> = all
                .into_iter()
                .filter(|r| r.is_nonnegative() && !r.is_zero())
                .collect();
            pos.sort();
            pos
        }
    };
    assert_eq!(
        positive_roots.len(),
        RootSystem::expected_count(label, rank),
        "root count for {}{} off",
        label.as_str(),
        rank
    );
    Ok(RootSystem {
        label,
        rank,
        cartan,
        positive_roots,
    })
}

/// A-D realizations in eta coordinates, converted via the simple-basis change:
/// roots are sums of consecutive simple roots plus the familiar tail patterns.
fn classical_positive_roots(label: Label, n: usize) -> Vec<IntVector> {
    let mut out = Vec::new();
    let interval = |i: usize, j: usize| {
        // eta_i - eta_j = e_i + ... + e_{j-1}, 1-based, i < j
        IntVector::new(
            (1..=n)
                .map(|k| {
                    if i <= k && k < j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        )
    };
    match label {
        Label::A => {
            for i in 1..=n {
                for j in i + 1..=n + 1 {
                    out.push(interval(i, j));
                }
            }
        }
        Label::B => {
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(interval(i, j));
                    // eta_i + eta_j = e_i..e_{j-1} + 2 e_j..2 e_n
                    out.push(IntVector::new(
                        (1..=n)
                            .map(|k| {
                                if i <= k && k < j {
                                    BigInt::one()
                                } else if j <= k {
                                    BigInt::from(2)
                                } else {
                                    BigInt::zero()
                                }
                            })
                            .collect(),
                    ));
                }
                // eta_i = e_i + ... + e_n
                out.push(IntVector::new(
                    (1..=n)
                        .map(|k| if i <= k { BigInt::one() } else { BigInt::zero() })
                        .collect(),
                ));
            }
        }
        Label::C => {
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(interval(i, j));
                    // eta_i + eta_j = e_i..e_{j-1} + 2 e_j..2 e_{n-1} + e_n
                    out.push(IntVector::new(
                        (1..=n)
                            .map(|k| {
                                if (i <= k && k < j) || k == n {
                                    BigInt::one()
                                } else if j <= k && k < n {
                                    BigInt::from(2)
                                } else {
                                    BigInt::zero()
                                }
                            })
                            .collect(),
                    ));
                }
                // 2 eta_i = 2 e_i .. 2 e_{n-1} + e_n
                out.push(IntVector::new(
                    (1..=n)
                        .map(|k| {
                            if i <= k && k < n {
                                BigInt::from(2)
                            } else if k == n {
                                BigInt::one()
                            } else {
                                BigInt::zero()
                            }
                        })
                        .collect(),
                ));
            }
        }
        Label::D => {
            for i in 1..=n {
                for j in i + 1..=n {
                    // eta_i - eta_j: e_i..e_{j-1} for j <= n-1; special tails at the fork
                    out.push(d_minus(n, i, j));
                    out.push(d_plus(n, i, j));
                }
            }
        }
        _ => unreachable!(),
    }
    out.sort();
    out.dedup();
    out
}

// For D_n: eta_k = e_k + ... + e_{n-2} + (e_{n-1} + e_n)/2 for k <= n-1,
// eta_n = (e_n - e_{n-1})/2.
fn d_eta(n: usize, k: usize) -> Vec<Rationalish> {
    let mut v = vec![Rationalish::zero(); n];
    if k < n {
        for item in v.iter_mut().take(n - 2).skip(k - 1) {
            *item = Rationalish::int(1);
        }
        v[n - 2] = Rationalish::half(1);
        v[n - 1] = Rationalish::half(1);
    } else {
        v[n - 2] = Rationalish::half(-1);
        v[n - 1] = Rationalish::half(1);
    }
    v
}

// tiny half-integer helper, avoids dragging Rational into root construction
#[derive(Clone, Copy)]
struct Rationalish {
    twice: i64,
}

impl Rationalish {
    fn zero() -> Self {
        Rationalish { twice: 0 }
    }
    fn int(v: i64) -> Self {
        Rationalish { twice: 2 * v }
    }
    fn half(v: i64) -> Self {
        Rationalish { twice: v }
    }
}

fn d_combine(n: usize, i: usize, j: usize, sign: i64) -> IntVector {
    let a = d_eta(n, i);
    let b = d_eta(n, j);
    IntVector::new(
        (0..n)
            .map(|k| {
                let t = a[k].twice + sign * b[k].twice;
                assert!(t % 2 == 0, "root coordinates must be integral");
                BigInt::from(t / 2)
            })
            .collect(),
    )
}

fn d_minus(n: usize, i: usize, j: usize) -> IntVector {
    d_combine(n, i, j, -1)
}

fn d_plus(n: usize, i: usize, j: usize) -> IntVector {
    d_combine(n, i, j, 1)
}

/// Close the simple roots under all simple reflections.
fn closure_from_cartan(cartan: &IntMatrix) -> BTreeSet<IntVector> {
    let n = cartan.rows();
    let mut roots: BTreeSet<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    loop {
        let mut new_roots = Vec::new();
        for r in &roots {
            for j in 0..n {
                // <r, alpha_j^v> = sum_i r_i C[i][j]
                let mut pairing = BigInt::zero();
                for i in 0..n {
                    pairing += &r[i] * &cartan[(i, j)];
                }
                let mut img = r.coords().to_vec();
                img[j] = &img[j] - pairing;
                let img = IntVector::new(img);
                if !roots.contains(&img) {
                    new_roots.push(img);
                }
            }
        }
        if new_roots.is_empty() {
            break;
        }
        roots.extend(new_roots);
    }
    roots
}

/// The Kostant generating function: the single fraction
/// `prod_{a in positive roots} 1/(1-x^a)`.
pub fn kostant_input(label: Label, rank: usize) -> Result<FractionSum> {
    let rs = positive_roots(label, rank)?;
    Ok(vectors_input(&rs.positive_roots))
}

/// Generating-function product for an arbitrary vector list.
pub fn vectors_input(vectors: &[IntVector]) -> FractionSum {
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

// ---------------------------------------------------------------------------
// extended sets and the classical reduction order

/// Classical family selector for the reduction strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalLabel {
    pub label: Label,
    pub rank: usize,
}

impl ClassicalLabel {
    pub fn new(label: Label, rank: usize) -> Self {
        ClassicalLabel { label, rank }
    }
}

/// The extended vector set of a classical system (types B and D gain the
/// doubled short vectors `2 eta_i`), with the total order induced by the
/// lexicographic order on eta coordinates.
pub struct ExtendedSet {
    members: BTreeSet<IntVector>,
    label: Label,
    rank: usize,
}

impl ExtendedSet {
    pub fn new(sel: &ClassicalLabel) -> Result<ExtendedSet> {
        let (label, n) = (sel.label, sel.rank);
        if !matches!(label, Label::A | Label::B | Label::C | Label::D) {
            return Err(Error::InvalidRank(format!(
                "{}{} is not classical",
                label.as_str(),
                n
            )));
        }
        let rs = positive_roots(label, n)?;
        let mut members: BTreeSet<IntVector> = rs.positive_roots.into_iter().collect();
        if matches!(label, Label::B | Label::D) {
            for i in 1..=n {
                // 2 eta_i in simple coordinates
                let v = match label {
                    Label::B => IntVector::new(
                        (1..=n)
                            .map(|k| {
                                if i <= k {
                                    BigInt::from(2)
                                } else {
                                    BigInt::zero()
                                }
                            })
                            .collect(),
                    ),
                    Label::D => {
                        let e = d_eta(n, i);
                        IntVector::new(e.iter().map(|r| BigInt::from(r.twice)).collect())
                    }
                    _ => unreachable!(),
                };
                members.insert(v);
            }
        }
        Ok(ExtendedSet { members, label, rank: n })
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.members.contains(v)
    }

    pub fn members(&self) -> impl Iterator<Item = &IntVector> {
        self.members.iter()
    }

    /// Eta-coordinate vector of a simple-coordinate vector; lexicographic
    /// comparison of these keys is the reduction order.
    pub fn order_key(&self, v: &IntVector) -> Vec<BigInt> {
        let n = self.rank;
        let coord = |k: usize| -> BigInt {
            if k == 0 {
                BigInt::zero()
            } else {
                v[k - 1].clone()
            }
        };
        match self.label {
            Label::A => {
                // n+1 eta coordinates, u_k = v_k - v_{k-1}
                (1..=n + 1)
                    .map(|k| {
                        let hi = if k <= n { coord(k) } else { BigInt::zero() };
                        hi - coord(k - 1)
                    })
                    .collect()
            }
            Label::B => (1..=n).map(|k| coord(k) - coord(k - 1)).collect(),
            Label::C => (1..=n)
                .map(|k| {
                    if k < n {
                        coord(k) - coord(k - 1)
                    } else {
                        BigInt::from(2) * coord(n) - coord(n - 1)
                    }
                })
                .collect(),
            Label::D => (1..=n)
                .map(|k| {
                    if k < n - 1 {
                        coord(k) - coord(k - 1)
                    } else if k == n - 1 {
                        coord(n - 1) + coord(n) - coord(n - 2)
                    } else {
                        coord(n) - coord(n - 1)
                    }
                })
                .collect(),
            _ => unreachable!("order is defined for classical systems"),
        }
    }
}

/// Relation minimizing the absolute value of the distinguished coefficient,
/// over all circuits of the given dependent set.
pub fn minimal_relation(
    roots: &[IntVector],
) -> Result<crate::genfunc::PreferredRelation> {
    choose_relation(roots, &crate::pfd::Strategy::MinAbsCoefficient).ok_or(Error::IndependentInput)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rank_of_vectors;
    use num_traits::Signed;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn a2_roots() {
        let rs = positive_roots(Label::A, 2).unwrap();
        assert_eq!(rs.positive_roots, vec![iv(&[0, 1]), iv(&[1, 0]), iv(&[1, 1])]);
    }

    #[test]
    fn g2_roots_match_generating_factors() {
        let rs = positive_roots(Label::G, 2).unwrap();
        let expect: BTreeSet<IntVector> = [
            iv(&[1, 0]),
            iv(&[0, 1]),
            iv(&[1, 1]),
            iv(&[1, 2]),
            iv(&[1, 3]),
            iv(&[2, 3]),
        ]
        .into_iter()
        .collect();
        assert_eq!(rs.positive_roots.iter().cloned().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn b2_roots() {
        let rs = positive_roots(Label::B, 2).unwrap();
        let expect: BTreeSet<IntVector> =
            [iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1]), iv(&[1, 2])].into_iter().collect();
        assert_eq!(rs.positive_roots.iter().cloned().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn root_counts_match_classical_formulas() {
        let cases: Vec<(Label, usize)> = vec![
            (Label::A, 1),
            (Label::A, 2),
            (Label::A, 3),
            (Label::A, 4),
            (Label::A, 5),
            (Label::A, 6),
            (Label::B, 2),
            (Label::B, 3),
            (Label::B, 4),
            (Label::C, 2),
            (Label::C, 3),
            (Label::C, 4),
            (Label::D, 4),
            (Label::E, 6),
            (Label::E, 7),
            (Label::E, 8),
            (Label::F, 4),
            (Label::G, 2),
        ];
        for (label, rank) in cases {
            let rs = positive_roots(label, rank).unwrap();
            assert_eq!(
                rs.positive_roots.len(),
                RootSystem::expected_count(label, rank),
                "{}{}",
                label.as_str(),
                rank
            );
            for r in &rs.positive_roots {
                assert!(r.is_nonnegative());
            }
        }
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(positive_roots(Label::D, 3).is_err());
        assert!(positive_roots(Label::G, 3).is_err());
        assert!(positive_roots(Label::F, 5).is_err());
        assert!(positive_roots(Label::E, 9).is_err());
    }

    #[test]
    fn closure_regeneration_is_idempotent() {
        // the produced root set is stable under every simple reflection, so
        // regenerating the closure from it adds nothing
        for (label, rank) in [(Label::G, 2), (Label::F, 4), (Label::E, 6), (Label::E, 8)] {
            let rs = positive_roots(label, rank).unwrap();
            let all = closure_from_cartan(&rs.cartan);
            assert_eq!(all.len(), 2 * rs.positive_roots.len());
            let n = rank;
            for r in &all {
                for j in 0..n {
                    let mut pairing = BigInt::zero();
                    for i in 0..n {
                        pairing += &r[i] * &rs.cartan[(i, j)];
                    }
                    let mut img = r.coords().to_vec();
                    img[j] = &img[j] - pairing;
                    assert!(
                        all.contains(&IntVector::new(img)),
                        "closure not stable for {}{}",
                        label.as_str(),
                        rank
                    );
                }
            }
        }
    }

    #[test]
    fn kostant_inputs() {
        let a2 = kostant_input(Label::A, 2).unwrap();
        assert_eq!(a2.fractions.len(), 1);
        assert_eq!(a2.fractions[0].denominators().len(), 3);
        let g2 = kostant_input(Label::G, 2).unwrap();
        assert_eq!(g2.fractions[0].denominators().len(), 6);
        let c2 = kostant_input(Label::C, 2).unwrap();
        let support: BTreeSet<IntVector> = c2.fractions[0].support().into_iter().collect();
        let expect: BTreeSet<IntVector> =
            [iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1]), iv(&[2, 1])].into_iter().collect();
        assert_eq!(support, expect);
    }

    #[test]
    fn minimal_relation_examples() {
        let rel = minimal_relation(&[iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])]).unwrap();
        assert_eq!(rel.a0, BigInt::one());
        assert!(rel.is_valid());
        assert!(minimal_relation(&[iv(&[1, 0]), iv(&[0, 1])]).is_err());

        // G2: two long roots and a short one relate as 3*short = 2*long +- long
        let short = iv(&[0, 1]);
        let long1 = iv(&[1, 0]);
        let long2 = iv(&[1, 3]);
        let rel = minimal_relation(&[long1, long2, short]).unwrap();
        assert_eq!(rel.a0, BigInt::one());
        assert!(rel.is_valid());
        // the distinguished vector is a long root; the short root carries +-3
        let coeffs: Vec<BigInt> = rel.rhs.iter().map(|(a, _)| a.abs()).collect();
        assert!(coeffs.contains(&BigInt::from(3)) || coeffs.contains(&BigInt::from(2)));
    }

    #[test]
    fn g2_equal_length_triples_have_unit_coefficient() {
        let rs = positive_roots(Label::G, 2).unwrap();
        let long: Vec<IntVector> = vec![iv(&[1, 0]), iv(&[1, 3]), iv(&[2, 3])];
        // sum of two long roots directions: (1,0)+(1,3) = (2,3)
        let rel = minimal_relation(&long).unwrap();
        assert_eq!(rel.a0, BigInt::one());
        let short: Vec<IntVector> = rs
            .positive_roots
            .iter()
            .filter(|r| !long.contains(r))
            .cloned()
            .collect();
        let rel = minimal_relation(&short).unwrap();
        assert_eq!(rel.a0, BigInt::one());
    }

    #[test]
    fn extended_sets() {
        let ext = ExtendedSet::new(&ClassicalLabel::new(Label::B, 2)).unwrap();
        assert!(ext.contains(&iv(&[0, 2]))); // 2 eta_2
        assert!(ext.contains(&iv(&[2, 2]))); // 2 eta_1
        assert!(ext.contains(&iv(&[1, 2]))); // eta_1 + eta_2
        assert!(!ext.contains(&iv(&[2, 0])));
        // order: eta_1 + eta_2 dominates eta_1 dominates eta_1 - eta_2 dominates eta_2
        let k = |v: &[i64]| ext.order_key(&iv(v));
        assert!(k(&[1, 2]) > k(&[1, 1]));
        assert!(k(&[1, 1]) > k(&[1, 0]));
        assert!(k(&[1, 0]) > k(&[0, 1]));
    }

    #[test]
    fn d4_extended_set_contains_doubles() {
        let ext = ExtendedSet::new(&ClassicalLabel::new(Label::D, 4)).unwrap();
        // 2 eta_1 = 2e_1 + 2e_2 + e_3 + e_4
        assert!(ext.contains(&iv(&[2, 2, 1, 1])));
        // 2 eta_4 = e_4 - e_3
        assert!(ext.contains(&iv(&[0, 0, -1, 1])));
        assert_eq!(ext.members().count(), 12 + 4);
    }

    #[test]
    fn dependent_subsets_have_unit_coefficient_at_desk_scale() {
        for (label, rank) in [
            (Label::A, 2),
            (Label::B, 2),
            (Label::C, 2),
            (Label::G, 2),
            (Label::A, 3),
        ] {
            let rs = positive_roots(label, rank).unwrap();
            let roots = rs.positive_roots;
            let n = roots.len();
            let max = rank + 2;
            let mut idx: Vec<usize> = Vec::new();
            fn rec(
                start: usize,
                n: usize,
                max: usize,
                idx: &mut Vec<usize>,
                roots: &[IntVector],
            ) {
                if idx.len() >= 2 {
                    let sel: Vec<IntVector> = idx.iter().map(|&i| roots[i].clone()).collect();
                    if rank_of_vectors(&sel) < sel.len() {
                        let rel = minimal_relation(&sel).unwrap();
                        assert!(rel.a0.is_one(), "no unit coefficient for {sel:?}");
                    }
                }
                if idx.len() == max {
                    return;
                }
                for i in start..n {
                    idx.push(i);
                    rec(i + 1, n, max, idx, roots);
                    idx.pop();
                }
            }
            rec(0, n, max, &mut idx, &roots);
        }
    }
}
