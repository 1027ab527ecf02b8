//! Partial fraction decomposition: the work-list rewrite loop with pluggable
//! strategies for choosing the gaining-multiplicity vector, plus the faster
//! reduction variant for classical root systems.
//!
//! A fraction is done when its denominator vectors are linearly independent.
//! Until then we pick an integral dependence `a0*w0 = sum a_j w_j` among the
//! support vectors, split one power off each right-hand vector, rewrite that
//! product with the elongated Szenes-Vergne formula, and elongate the
//! remaining powers of `w0` by `a0` so everything lands on the vector `a0*w0`.
//! Children that keep the same support inherit the chosen dependence; children
//! with smaller support start fresh.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rank_of_vectors, Rational};
use crate::error::{Error, Result};
use crate::genfunc::{
    elongation_numerator_big, szenes_vergne_elongated, DenominatorFactor, FractionSum,
    GeneratingFraction, PreferredRelation,
};
use crate::laurent::{IntVector, LaurentPoly};
use crate::rootsys::{ClassicalLabel, ExtendedSet};

/// How Step 1 picks the preferred linear dependence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Among all circuits, the gaining vector with the smallest absolute
    /// coefficient; ties broken by the lexicographically smallest vector.
    MinAbsCoefficient,
    /// Greedy scan keeping an independent prefix; the first vector inside the
    /// prefix span gains. Yields non-broken-circuit denominator bases.
    NonBrokenCircuit,
    /// The reduction order for classical root systems; valid only when all
    /// input vectors lie in the associated extended root set.
    ClassicalOrder(ClassicalLabel),
}

/// Result of a decomposition: all fractions reduced, denominator vectors
/// linearly independent per fraction.
#[derive(Debug, Clone)]
pub struct PfdResult {
    pub fractions: FractionSum,
    pub support: BTreeSet<IntVector>,
    pub cone_support: Vec<Vec<IntVector>>,
}

impl PfdResult {
    fn from_sum(mut sum: FractionSum) -> Self {
        sum.merge();
        let mut cones: BTreeSet<Vec<IntVector>> = BTreeSet::new();
        let mut support = BTreeSet::new();
        for f in &sum.fractions {
            let s = f.support();
            for v in &s {
                support.insert(v.clone());
            }
            cones.insert(s);
        }
        PfdResult {
            fractions: sum,
            support,
            cone_support: cones.into_iter().collect(),
        }
    }
}

/// Options for the work-list loop. `checksum_point`, when set, revalidates the
/// rational-function value after every rewrite step (sequential mode only).
/// `parallel` processes work-list rounds with rayon; fractions rewrite
/// independently, so the final canonical sum is identical to sequential mode.
#[derive(Debug, Clone, Default)]
pub struct DecomposeOptions {
    pub checksum_point: Option<Vec<Rational>>,
    pub max_steps: Option<usize>,
    pub parallel: bool,
}

pub fn decompose(input: &FractionSum, strategy: &Strategy) -> Result<PfdResult> {
    decompose_with(input, strategy, &DecomposeOptions::default())
}

pub fn decompose_with(
    input: &FractionSum,
    strategy: &Strategy,
    opts: &DecomposeOptions,
) -> Result<PfdResult> {
    if let Strategy::ClassicalOrder(label) = strategy {
        return classical_decompose_with(input, label, opts);
    }
    if opts.parallel && opts.checksum_point.is_none() {
        return decompose_parallel(input, strategy, opts);
    }
    let max_steps = opts.max_steps.unwrap_or(2_000_000);
    let checksum = match &opts.checksum_point {
        Some(pt) => Some((pt.clone(), input.substitute(pt)?)),
        None => None,
    };
    let dim = input.dim();
    let mut work: std::collections::VecDeque<GeneratingFraction> =
        input.fractions.iter().cloned().collect();
    for f in &mut work {
        f.reduced = false;
        f.preferred_relation = None;
    }
    let mut done: Vec<GeneratingFraction> = Vec::new();
    let mut steps = 0usize;
    while let Some(mut frac) = pop_next(&mut work) {
        steps += 1;
        if steps > max_steps {
            return Err(Error::StepLimit);
        }
        if frac.preferred_relation.is_none() {
            match choose_relation(&frac.support(), strategy) {
                None => {
                    frac.reduced = true;
                    done.push(frac);
                    continue;
                }
                Some(rel) => frac.preferred_relation = Some(rel),
            }
        }
        let children = apply_relation(&frac)?;
        if let Some((pt, expected)) = &checksum {
            let mut total = Rational::zero();
            for f in work.iter().chain(done.iter()).chain(children.iter()) {
                total += f.substitute(pt)?;
            }
            assert_eq!(&total, expected, "value checksum failed after a rewrite");
        }
        for child in children {
            work.push_back(child);
        }
    }
    Ok(PfdResult::from_sum(FractionSum::new(dim, done)))
}

/// Round-based parallel variant: every unreduced fraction in the current
/// round rewrites independently; children join the next round. The final
/// canonical sum matches the sequential result because rewriting is local to
/// a fraction.
fn decompose_parallel(
    input: &FractionSum,
    strategy: &Strategy,
    opts: &DecomposeOptions,
) -> Result<PfdResult> {
    use rayon::prelude::*;
    let max_steps = opts.max_steps.unwrap_or(2_000_000);
    let dim = input.dim();
    let mut work: Vec<GeneratingFraction> = input.fractions.clone();
    for f in &mut work {
        f.reduced = false;
        f.preferred_relation = None;
    }
    let mut done: Vec<GeneratingFraction> = Vec::new();
    let mut steps = 0usize;
    while !work.is_empty() {
        steps += work.len();
        if steps > max_steps {
            return Err(Error::StepLimit);
        }
        let results: Vec<Result<Vec<GeneratingFraction>>> = work
            .par_iter()
            .map(|frac| {
                let mut frac = frac.clone();
                if frac.preferred_relation.is_none() {
                    match choose_relation(&frac.support(), strategy) {
                        None => {
                            frac.reduced = true;
                            return Ok(vec![frac]);
                        }
                        Some(rel) => frac.preferred_relation = Some(rel),
                    }
                }
                apply_relation(&frac)
            })
            .collect();
        let mut next = Vec::new();
        for r in results {
            for f in r? {
                if f.reduced {
                    done.push(f);
                } else {
                    next.push(f);
                }
            }
        }
        work = next;
    }
    Ok(PfdResult::from_sum(FractionSum::new(dim, done)))
}

/// Fractions holding a preferred dependence are served first, then FIFO.
fn pop_next(
    work: &mut std::collections::VecDeque<GeneratingFraction>,
) -> Option<GeneratingFraction> {
    if let Some(pos) = work.iter().position(|f| f.preferred_relation.is_some()) {
        return work.remove(pos);
    }
    work.pop_front()
}

/// One rewrite: split a single power of each relation vector off the fraction,
/// rewrite that product by the elongated Szenes-Vergne formula, and elongate
/// the gaining vector's remaining powers by `a0`.
fn apply_relation(frac: &GeneratingFraction) -> Result<Vec<GeneratingFraction>> {
    let rel = frac
        .preferred_relation
        .as_ref()
        .expect("rewrite needs a preferred relation");
    debug_assert!(rel.is_valid(), "stored relation must be exact");
    let parent_support: BTreeSet<IntVector> = frac.support().into_iter().collect();

    let mut mult: std::collections::BTreeMap<IntVector, u32> = frac
        .denominators()
        .iter()
        .map(|f| (f.vector(), f.multiplicity()))
        .collect();
    let m0 = mult.remove(&rel.gaining).expect("gaining vector in support");
    for (_, v) in &rel.rhs {
        let m = mult.get_mut(v).expect("relation vector in support");
        *m -= 1;
        if *m == 0 {
            mult.remove(v);
        }
    }

    let rhs_vectors: Vec<IntVector> = rel.rhs.iter().map(|(_, v)| v.clone()).collect();
    let rhs_coeffs: Vec<BigInt> = rel.rhs.iter().map(|(a, _)| a.clone()).collect();
    let sv = szenes_vergne_elongated(&rhs_vectors, &rhs_coeffs)?;

    let gained = rel.gaining.scale(&rel.a0);
    let elong_num = elongation_numerator_big(&rel.gaining, &rel.a0)?.pow(m0);

    let mut out = Vec::with_capacity(sv.fractions.len());
    for term in sv.fractions {
        let mut dens: Vec<DenominatorFactor> = term.denominators().to_vec();
        for (v, m) in &mult {
            dens.push(DenominatorFactor::new(v.clone(), 1, *m));
        }
        if m0 > 0 {
            dens.push(DenominatorFactor::new(gained.clone(), 1, m0));
        }
        let numerator = frac.numerator.mul(&term.numerator)?.mul(&elong_num)?;
        if numerator.is_zero() {
            continue;
        }
        let mut child = GeneratingFraction::new(numerator, dens);
        let child_support: BTreeSet<IntVector> = child.support().into_iter().collect();
        if child_support == parent_support {
            child.preferred_relation = frac.preferred_relation.clone();
        }
        out.push(child);
    }
    Ok(out)
}

/// Find an exact integral dependence among the vectors, or None when they are
/// linearly independent.
pub fn choose_relation(vectors: &[IntVector], strategy: &Strategy) -> Option<PreferredRelation> {
    if rank_of_vectors(vectors) == vectors.len() {
        return None;
    }
    match strategy {
        Strategy::MinAbsCoefficient | Strategy::ClassicalOrder(_) => min_abs_relation(vectors),
        Strategy::NonBrokenCircuit => non_broken_circuit_relation(vectors),
    }
}

/// Primitive integral coefficients of the unique (up to sign) dependence on a
/// circuit, in circuit order. None when the subset is not a circuit.
fn circuit_relation(circuit: &[IntVector]) -> Option<Vec<BigInt>> {
    let k = circuit.len();
    let n = circuit[0].dim();
    // row-reduce the n x k matrix whose columns are the circuit vectors
    let mut mat: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            (0..k)
                .map(|i| Rational::from_integer(circuit[i][j].clone()))
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let pv = mat[r][c].clone();
        for x in &mut mat[r] {
            *x /= pv.clone();
        }
        for i in 0..n {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for cc in 0..k {
                    let t = &mat[r][cc] * &f;
                    mat[i][cc] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let fc = free[0];
    let mut coeffs = vec![Rational::zero(); k];
    coeffs[fc] = Rational::one();
    for (ri, &pc) in pivot_cols.iter().enumerate() {
        coeffs[pc] = -mat[ri][fc].clone();
    }
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return None;
    }
    for c in &mut ints {
        *c /= &g;
    }
    if ints.iter().any(|c| c.is_zero()) {
        return None;
    }
    Some(ints)
}

/// Enumerate circuits (minimal dependent subsets) and return the relation
/// minimizing |a0| over all gaining choices; ties broken by lexicographically
/// smallest gaining vector.
fn min_abs_relation(vectors: &[IntVector]) -> Option<PreferredRelation> {
    let rank = rank_of_vectors(vectors);
    let mut best: Option<PreferredRelation> = None;
    for subset in subsets_up_to(vectors.len(), rank + 1) {
        if subset.len() < 2 {
            continue;
        }
        let sel: Vec<IntVector> = subset.iter().map(|&i| vectors[i].clone()).collect();
        if rank_of_vectors(&sel) != sel.len() - 1 {
            continue;
        }
        let Some(coeffs) = circuit_relation(&sel) else {
            continue;
        };
        for g in 0..sel.len() {
            let a0 = coeffs[g].abs();
            let flip = coeffs[g].is_negative();
            let rhs: Vec<(BigInt, IntVector)> = (0..sel.len())
                .filter(|&i| i != g)
                .map(|i| {
                    let a = if flip {
                        coeffs[i].clone()
                    } else {
                        -coeffs[i].clone()
                    };
                    (a, sel[i].clone())
                })
                .collect();
            let mut rhs = rhs;
            // positive terms first keeps prefixes of the rewrite nonnegative
            rhs.sort_by_key(|(a, v)| (a.is_negative(), v.clone()));
            let cand = PreferredRelation {
                a0,
                gaining: sel[g].clone(),
                rhs,
            };
            let better = match &best {
                None => true,
                Some(b) => (&cand.a0, &cand.gaining) < (&b.a0, &b.gaining),
            };
            if better {
                best = Some(cand);
            }
        }
    }
    debug_assert!(best.as_ref().map(|r| r.is_valid()).unwrap_or(false));
    best
}

/// Scan in canonical order keeping an independent prefix; the first vector
/// falling inside the prefix span gains multiplicity.
fn non_broken_circuit_relation(vectors: &[IntVector]) -> Option<PreferredRelation> {
    let mut prefix: Vec<IntVector> = Vec::new();
    for v in vectors {
        let mut with = prefix.clone();
        with.push(v.clone());
        if rank_of_vectors(&with) == prefix.len() {
            for subset in subsets_up_to(prefix.len(), prefix.len()) {
                let mut sel: Vec<IntVector> = subset.iter().map(|&i| prefix[i].clone()).collect();
                sel.push(v.clone());
                if rank_of_vectors(&sel) != sel.len() - 1 {
                    continue;
                }
                if let Some(coeffs) = circuit_relation(&sel) {
                    let g = sel.len() - 1;
                    let a0 = coeffs[g].abs();
                    let flip = coeffs[g].is_negative();
                    let rhs = (0..g)
                        .map(|i| {
                            let a = if flip {
                                coeffs[i].clone()
                            } else {
                                -coeffs[i].clone()
                            };
                            (a, sel[i].clone())
                        })
                        .collect();
                    let mut rhs: Vec<(BigInt, IntVector)> = rhs;
                    rhs.sort_by_key(|(a, v)| (a.is_negative(), v.clone()));
                    let rel = PreferredRelation {
                        a0,
                        gaining: v.clone(),
                        rhs,
                    };
                    debug_assert!(rel.is_valid());
                    return Some(rel);
                }
            }
            unreachable!("dependent vector must close a circuit");
        }
        prefix.push(v.clone());
    }
    None
}

fn subsets_up_to(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(0, n, max_size, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// classical root-system reduction

/// Reduction for Kostant-type inputs over a classical root system: pairs
/// `(alpha, beta)` with `alpha - n*beta` again in the extended set and
/// order-smaller than `beta` are rewritten by the two-term power split; at the
/// end, directions carrying both a vector and its double are folded onto the
/// double by the elongation formula.
pub fn classical_decompose(input: &FractionSum, label: &ClassicalLabel) -> Result<PfdResult> {
    classical_decompose_with(input, label, &DecomposeOptions::default())
}

pub fn classical_decompose_with(
    input: &FractionSum,
    label: &ClassicalLabel,
    opts: &DecomposeOptions,
) -> Result<PfdResult> {
    let extended = ExtendedSet::new(label)?;
    let dim = input.dim();
    for f in &input.fractions {
        for v in f.support() {
            if !extended.contains(&v) {
                return Err(Error::VectorOutsideExtendedSet);
            }
        }
    }
    let max_steps = opts.max_steps.unwrap_or(2_000_000);
    let mut work: Vec<GeneratingFraction> = input.fractions.clone();
    let mut done: Vec<GeneratingFraction> = Vec::new();
    let mut steps = 0usize;
    while let Some(frac) = work.pop() {
        steps += 1;
        if steps > max_steps {
            return Err(Error::StepLimit);
        }
        let mut support = frac.support();
        support.sort_by_key(|v| std::cmp::Reverse(extended.order_key(v)));
        let mut hit: Option<(IntVector, IntVector, i64)> = None;
        'search: for a in &support {
            for b in &support {
                if a == b {
                    continue;
                }
                for n in 1..=2i64 {
                    let diff = a.sub(&b.scale_i64(n));
                    if diff.is_zero() {
                        continue;
                    }
                    if extended.contains(&diff)
                        && extended.order_key(&diff) < extended.order_key(b)
                    {
                        hit = Some((a.clone(), b.clone(), n));
                        break 'search;
                    }
                }
            }
        }
        match hit {
            None => done.push(frac),
            Some((alpha, beta, n)) => {
                for child in split_pair(&frac, &alpha, &beta, n)? {
                    work.push(child);
                }
            }
        }
    }
    let folded: Vec<GeneratingFraction> = done
        .into_iter()
        .map(|f| fold_redundant_short_roots(&f))
        .collect::<Result<_>>()?;
    // anything still dependent goes through the generic engine
    let mut reduced = Vec::new();
    let mut leftovers = Vec::new();
    for f in folded {
        let support = f.support();
        if rank_of_vectors(&support) == support.len() {
            reduced.push(f);
        } else {
            leftovers.push(f);
        }
    }
    if !leftovers.is_empty() {
        let rest = decompose_with(
            &FractionSum::new(dim, leftovers),
            &Strategy::MinAbsCoefficient,
            opts,
        )?;
        reduced.extend(rest.fractions.fractions);
    }
    Ok(PfdResult::from_sum(FractionSum::new(dim, reduced)))
}

/// Rewrite the `(alpha, beta)` powers of one fraction by the two-term power
/// split, keeping every other factor.
fn split_pair(
    frac: &GeneratingFraction,
    alpha: &IntVector,
    beta: &IntVector,
    n: i64,
) -> Result<Vec<GeneratingFraction>> {
    let mut l = 0u32;
    let mut m = 0u32;
    let mut rest: Vec<DenominatorFactor> = Vec::new();
    for f in frac.denominators() {
        let v = f.vector();
        if &v == alpha {
            l = f.multiplicity();
        } else if &v == beta {
            m = f.multiplicity();
        } else {
            rest.push(f.clone());
        }
    }
    assert!(l >= 1 && m >= 1);
    let split = crate::genfunc::power_two_term_split(alpha, beta, l, m, n)?;
    let mut out = Vec::with_capacity(split.fractions.len());
    for term in split.fractions {
        let mut dens: Vec<DenominatorFactor> = term.denominators().to_vec();
        dens.extend(rest.iter().cloned());
        let numerator = frac.numerator.mul(&term.numerator)?;
        if numerator.is_zero() {
            continue;
        }
        out.push(GeneratingFraction::new(numerator, dens));
    }
    Ok(out)
}

/// Apply `1/(1-x^v) = (1+x^v)/(1-x^{2v})` wherever a direction carries both a
/// vector and its double, merging onto the double.
fn fold_redundant_short_roots(frac: &GeneratingFraction) -> Result<GeneratingFraction> {
    let mut numerator = frac.numerator.clone();
    let mut dens: Vec<DenominatorFactor> = Vec::new();
    let factors = frac.denominators().to_vec();
    for f in &factors {
        let doubled_present = factors.iter().any(|g| {
            g.alpha() == f.alpha() && *g.elongation() == f.elongation() * BigInt::from(2)
        });
        if doubled_present {
            let one_plus = LaurentPoly::one(frac.dim())
                .add(&LaurentPoly::monomial(f.vector(), Rational::one()))?;
            numerator = numerator.mul(&one_plus.pow(f.multiplicity()))?;
            dens.push(DenominatorFactor::new(
                f.vector().scale_i64(2),
                1,
                f.multiplicity(),
            ));
        } else {
            dens.push(f.clone());
        }
    }
    Ok(GeneratingFraction::new(numerator, dens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::genfunc::series_truncate;
    use crate::rootsys::{kostant_input, positive_roots, Label};

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn boxed(n: usize, hi: i64) -> (Vec<BigInt>, Vec<BigInt>) {
        (vec![big(0); n], vec![big(hi); n])
    }

    fn assert_valid_pfd(input: &FractionSum, result: &PfdResult, hi: i64) {
        for f in &result.fractions.fractions {
            let support = f.support();
            assert_eq!(
                rank_of_vectors(&support),
                support.len(),
                "fraction support must be independent: {support:?}"
            );
            assert!(f.reduced);
        }
        let (lo, hi) = boxed(input.dim(), hi);
        let a = series_truncate(input, &lo, &hi).unwrap();
        let b = series_truncate(&result.fractions, &lo, &hi).unwrap();
        assert_eq!(a, b, "decomposition must preserve the power series");
    }

    #[test]
    fn a2_matches_reference_decomposition() {
        let input = kostant_input(Label::A, 2).unwrap();
        let result = decompose(&input, &Strategy::MinAbsCoefficient).unwrap();
        assert_eq!(result.fractions.fractions.len(), 2);
        assert_valid_pfd(&input, &result, 8);
        let rendered = crate::latex::render_fraction_sum(&result.fractions);
        assert_eq!(
            rendered,
            "+ \\frac{1}{(1-x_2)^{2}} \\frac{1}{(1-x_1)}\n-x_2 \\frac{1}{(1-x_2)^{2}} \\frac{1}{(1-x_1x_2)}\n"
        );
    }

    #[test]
    fn independent_input_is_returned_reduced() {
        let input = FractionSum::new(
            2,
            vec![GeneratingFraction::new(
                LaurentPoly::one(2),
                vec![
                    DenominatorFactor::new(iv(&[1, 0]), 1, 1),
                    DenominatorFactor::new(iv(&[0, 1]), 1, 1),
                ],
            )],
        );
        let result = decompose(&input, &Strategy::MinAbsCoefficient).unwrap();
        assert_eq!(result.fractions.fractions.len(), 1);
        assert!(result.fractions.fractions[0].reduced);
        assert_eq!(result.fractions.fractions[0].numerator, LaurentPoly::one(2));
    }

    #[test]
    fn g2_decomposes_with_series_oracle() {
        let input = kostant_input(Label::G, 2).unwrap();
        let result = decompose(&input, &Strategy::MinAbsCoefficient).unwrap();
        assert_valid_pfd(&input, &result, 10);
        let pt = [rat(1, 2), rat(1, 3)];
        assert_eq!(
            input.substitute(&pt).unwrap(),
            result.fractions.substitute(&pt).unwrap()
        );
    }

    #[test]
    fn checksum_option_validates_every_step() {
        let input = kostant_input(Label::A, 2).unwrap();
        let opts = DecomposeOptions {
            checksum_point: Some(vec![rat(1, 2), rat(1, 3)]),
            ..Default::default()
        };
        decompose_with(&input, &Strategy::MinAbsCoefficient, &opts).unwrap();
    }

    #[test]
    fn parallel_mode_matches_sequential() {
        let input = kostant_input(Label::G, 2).unwrap();
        let seq = decompose(&input, &Strategy::MinAbsCoefficient).unwrap();
        let par = decompose_with(
            &input,
            &Strategy::MinAbsCoefficient,
            &DecomposeOptions {
                parallel: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq.fractions, par.fractions);
    }

    #[test]
    fn choose_relation_examples() {
        let rel = choose_relation(
            &[iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])],
            &Strategy::MinAbsCoefficient,
        )
        .unwrap();
        assert_eq!(rel.a0, big(1));
        assert!(rel.is_valid());
        assert!(
            choose_relation(&[iv(&[1, 0]), iv(&[0, 1])], &Strategy::MinAbsCoefficient).is_none()
        );
    }

    #[test]
    fn non_broken_circuit_strategy_reduces() {
        let input = kostant_input(Label::A, 3).unwrap();
        let result = decompose(&input, &Strategy::NonBrokenCircuit).unwrap();
        assert_valid_pfd(&input, &result, 5);
    }

    #[test]
    fn a3_circuits_always_offer_unit_coefficient() {
        let roots = positive_roots(Label::A, 3).unwrap().positive_roots;
        let n = roots.len();
        for subset in subsets_up_to(n, 4) {
            if subset.len() < 2 {
                continue;
            }
            let sel: Vec<IntVector> = subset.iter().map(|&i| roots[i].clone()).collect();
            if rank_of_vectors(&sel) != sel.len() - 1 {
                continue;
            }
            if let Some(coeffs) = circuit_relation(&sel) {
                assert!(
                    coeffs.iter().any(|c| c.abs().is_one()),
                    "circuit {sel:?} lacks a unit coefficient"
                );
            }
        }
    }

    #[test]
    fn classical_b2_matches_reference_table() {
        let input = kostant_input(Label::B, 2).unwrap();
        let result = classical_decompose(&input, &ClassicalLabel::new(Label::B, 2)).unwrap();
        assert_valid_pfd(&input, &result, 8);
        let rendered = crate::latex::render_fraction_sum(&result.fractions);
        assert!(rendered.contains("(1-x_2^{2})^{3}"), "rendered:\n{rendered}");
        assert_eq!(result.fractions.fractions.len(), 4);
    }

    #[test]
    fn classical_a2_c3_series_equivalent() {
        let input = kostant_input(Label::A, 2).unwrap();
        let result = classical_decompose(&input, &ClassicalLabel::new(Label::A, 2)).unwrap();
        assert_valid_pfd(&input, &result, 8);
        for f in &result.fractions.fractions {
            assert!(f.support().len() <= 2);
        }

        let input = kostant_input(Label::C, 3).unwrap();
        let result = classical_decompose(&input, &ClassicalLabel::new(Label::C, 3)).unwrap();
        assert_valid_pfd(&input, &result, 6);
    }

    #[test]
    fn d4_kostant_terminates_and_preserves_series() {
        let input = kostant_input(Label::D, 4).unwrap();
        let result = decompose(&input, &Strategy::MinAbsCoefficient).unwrap();
        assert_valid_pfd(&input, &result, 3);
    }

    #[test]
    fn a2_substitution_exact_value() {
        // 1/((1-1/2)(1-1/3)(1-1/6)) = 18/5
        let input = kostant_input(Label::A, 2).unwrap();
        assert_eq!(input.substitute(&[rat(1, 2), rat(1, 3)]).unwrap(), rat(18, 5));
    }

    #[test]
    fn decompose_outputs_multiples_of_inputs_only() {
        let input = kostant_input(Label::B, 3).unwrap();
        let result = decompose(&input, &Strategy::MinAbsCoefficient).unwrap();
        let roots = positive_roots(Label::B, 3).unwrap().positive_roots;
        for v in &result.support {
            let (prim, _) = v.primitive();
            assert!(
                roots.iter().any(|r| r.primitive().0 == prim),
                "support vector {v:?} is not a root multiple"
            );
        }
        assert_valid_pfd(&input, &result, 5);
    }
}
