//! Quasinumbers, quasipolynomials, and the Bernoulli-sum toolkit.
//!
//! A basic quasinumber is the indicator of a congruence system
//! `M g = c (mod d)` on integer points, i.e. of a coset of a sublattice.
//! Quasipolynomials are polynomials in the coordinate functionals whose
//! coefficients are rational combinations of basic quasinumbers; they are
//! polynomial on every coset of `d Z^n`.
//!
//! Canonicalization performs modular row reduction (Howell form of the
//! augmented system) and prunes unsolvable or zero terms, but makes no attempt
//! to realize additive relations between quasinumbers; semantic equality is
//! decided by grid evaluation in [`quasipoly_equal`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    element_order_lcm, inverse_of_columns, rat_int, solve_mod, IntMatrix, Rational,
};
use crate::error::{Error, Result};
use crate::laurent::IntVector;

/// Indicator of `M g = c (mod d)` on `Z^n`; zero on non-integer arguments.
/// Rows are kept in Howell normal form mod `d`, entries reduced into `[0, d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasicQuasiNumber {
    dim: usize,
    rows: Vec<Vec<BigInt>>, // each row: n matrix entries then the rhs entry
    d: BigInt,
}

impl BasicQuasiNumber {
    /// Build from a congruence system; rows are canonicalized immediately.
    pub fn new(m: &IntMatrix, c: &[BigInt], d: &BigInt) -> Result<Self> {
        if c.len() != m.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows vs {} right-hand sides",
                m.rows(),
                c.len()
            )));
        }
        assert!(d.is_positive());
        let rows: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|i| {
                let mut row: Vec<BigInt> = (0..m.cols()).map(|j| m[(i, j)].clone()).collect();
                row.push(c[i].clone());
                row
            })
            .collect();
        Ok(Self::from_rows(m.cols(), rows, d.clone()))
    }

    pub fn from_rows(dim: usize, rows: Vec<Vec<BigInt>>, d: BigInt) -> Self {
        let rows = howell_form(rows, &d, dim + 1);
        BasicQuasiNumber { dim, rows, d }
    }

    /// The trivially true quasinumber (modulus 1).
    pub fn one(dim: usize) -> Self {
        BasicQuasiNumber {
            dim,
            rows: Vec::new(),
            d: BigInt::one(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> &BigInt {
        &self.d
    }

    pub fn is_trivially_true(&self) -> bool {
        self.rows.is_empty()
    }

    /// Matrix/vector view of the canonical system (one zero row if vacuous).
    pub fn system(&self) -> (IntMatrix, Vec<BigInt>) {
        if self.rows.is_empty() {
            return (IntMatrix::zero(1, self.dim), vec![BigInt::zero()]);
        }
        let mut m = IntMatrix::zero(self.rows.len(), self.dim);
        let mut c = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in 0..self.dim {
                m[(i, j)] = row[j].clone();
            }
            c.push(row[self.dim].clone());
        }
        (m, c)
    }

    /// Does any integer point satisfy the system?
    pub fn is_satisfiable(&self) -> bool {
        let (m, c) = self.system();
        solve_mod(&m, &c, &self.d).unwrap()
    }

    /// 1 if `M g = c (mod d)`, else 0.
    pub fn eval(&self, g: &IntVector) -> Rational {
        assert_eq!(g.dim(), self.dim);
        for row in &self.rows {
            let mut acc = BigInt::zero();
            for j in 0..self.dim {
                acc += &row[j] * &g[j];
            }
            acc -= &row[self.dim];
            if !acc.mod_floor(&self.d).is_zero() {
                return Rational::zero();
            }
        }
        Rational::one()
    }

    /// Pointwise product: stack the two systems over the lcm modulus.
    /// None when the combined system has no integer solutions.
    pub fn mul(&self, other: &BasicQuasiNumber) -> Result<Option<BasicQuasiNumber>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.dim, other.dim
            )));
        }
        let d = self.d.lcm(&other.d);
        let mut rows = Vec::new();
        for (src, ds) in [(self, &self.d), (other, &other.d)] {
            let scale = &d / ds;
            for row in &src.rows {
                rows.push(row.iter().map(|v| v * &scale).collect());
            }
        }
        let out = BasicQuasiNumber::from_rows(self.dim, rows, d);
        if out.is_satisfiable() {
            Ok(Some(out))
        } else {
            Ok(None)
        }
    }

    /// Expansion of `t -> tau(g - t*alpha)` over the residues of `t` mod `d`:
    /// the term for residue `l` is the shifted quasinumber with `c + l*M*alpha`.
    pub fn shift_expand(&self, alpha: &IntVector) -> Result<Vec<BasicQuasiNumber>> {
        if alpha.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.dim,
                alpha.dim()
            )));
        }
        let a = self
            .d
            .to_u32()
            .expect("shift expansion only for small moduli");
        let mut out = Vec::with_capacity(a as usize);
        for l in 0..a {
            let rows: Vec<Vec<BigInt>> = self
                .rows
                .iter()
                .map(|row| {
                    let mut shifted = row.clone();
                    let mut m_alpha = BigInt::zero();
                    for j in 0..self.dim {
                        m_alpha += &row[j] * &alpha[j];
                    }
                    shifted[self.dim] = &row[self.dim] + BigInt::from(l) * m_alpha;
                    shifted
                })
                .collect();
            out.push(BasicQuasiNumber::from_rows(self.dim, rows, self.d.clone()));
        }
        Ok(out)
    }
}

/// Howell normal form of the row module mod `d`: a canonical generating set,
/// unique for the module, used as the structural identity of a quasinumber.
fn howell_form(rows: Vec<Vec<BigInt>>, d: &BigInt, ncols: usize) -> Vec<Vec<BigInt>> {
    if d.is_one() {
        return Vec::new();
    }
    let md = |v: &BigInt| v.mod_floor(d);
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            assert_eq!(r.len(), ncols);
            r.iter().map(md).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut r = 0usize;
    for j in 0..ncols {
        if r >= a.len() {
            // stabilization may still append rows; keep scanning
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let mut i = r + 1;
        while i < a.len() {
            if a[i][j].is_zero() {
                i += 1;
                continue;
            }
            let x = a[r][j].clone();
            let y = a[i][j].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xr = &x / &g;
            let yr = &y / &g;
            let new_r: Vec<BigInt> = (0..ncols)
                .map(|c| md(&(&s * &a[r][c] + &t * &a[i][c])))
                .collect();
            let new_i: Vec<BigInt> = (0..ncols)
                .map(|c| md(&(&xr * &a[i][c] - &yr * &a[r][c])))
                .collect();
            a[r] = new_r;
            a[i] = new_i;
            if a[i].iter().all(|v| v.is_zero()) {
                a.remove(i);
            } else {
                i += 1;
            }
        }
        // scale the pivot to its canonical associate gcd(pivot, d) by a unit
        let piv = a[r][j].clone();
        let g = piv.gcd(d);
        if piv != g {
            let u = unit_scaling(&piv, &g, d);
            for c in 0..ncols {
                a[r][c] = md(&(&a[r][c] * &u));
            }
        }
        // stabilization: (d/g) * row has zero pivot but may generate new rows
        let cofactor = d / &g;
        if !cofactor.is_one() {
            let stab: Vec<BigInt> = (0..ncols).map(|c| md(&(&a[r][c] * &cofactor))).collect();
            if stab.iter().any(|v| !v.is_zero()) {
                a.push(stab);
            }
        }
        r += 1;
        if r > a.len() {
            break;
        }
    }
    a.truncate(r);
    // reduce entries above each pivot modulo the pivot
    for i in (0..a.len()).rev() {
        let Some(j) = (0..ncols).find(|&c| !a[i][c].is_zero()) else {
            continue;
        };
        let piv = a[i][j].clone();
        for ii in 0..i {
            let q = a[ii][j].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            for c in 0..ncols {
                a[ii][c] = md(&(&a[ii][c] - &q * &a[i][c]));
            }
        }
    }
    a
}

/// A unit `u` mod `d` with `u * piv = g (mod d)` where `g = gcd(piv, d)`.
fn unit_scaling(piv: &BigInt, g: &BigInt, d: &BigInt) -> BigInt {
    let reduced = piv / g;
    let cof = d / g;
    if cof.is_one() {
        return BigInt::one();
    }
    // inverse of reduced mod cof, lifted to a unit mod d
    let eg = reduced.extended_gcd(&cof);
    debug_assert!(eg.gcd.is_one());
    let v = eg.x.mod_floor(&cof);
    let mut u = v.clone();
    while !u.gcd(d).is_one() {
        u += &cof;
    }
    u
}

/// Rational combination of basic quasinumbers, canonically merged and pruned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiNumber {
    dim: usize,
    terms: Vec<(Rational, BasicQuasiNumber)>,
}

impl QuasiNumber {
    pub fn zero(dim: usize) -> Self {
        QuasiNumber {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::from_terms(dim, vec![(c, BasicQuasiNumber::one(dim))])
    }

    pub fn from_basic(coeff: Rational, b: BasicQuasiNumber) -> Self {
        let dim = b.dim();
        Self::from_terms(dim, vec![(coeff, b)])
    }

    pub fn from_terms(dim: usize, terms: Vec<(Rational, BasicQuasiNumber)>) -> Self {
        let mut grouped: BTreeMap<BasicQuasiNumber, Rational> = BTreeMap::new();
        for (c, b) in terms {
            if c.is_zero() || !b.is_satisfiable() {
                continue;
            }
            *grouped.entry(b).or_insert_with(Rational::zero) += c;
        }
        QuasiNumber {
            dim,
            terms: grouped
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(b, c)| (c, b))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Rational, BasicQuasiNumber)] {
        &self.terms
    }

    pub fn add(&self, other: &QuasiNumber) -> QuasiNumber {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.clone());
        Self::from_terms(self.dim, terms)
    }

    pub fn scale(&self, c: &Rational) -> QuasiNumber {
        Self::from_terms(
            self.dim,
            self.terms.iter().map(|(k, b)| (k * c, b.clone())).collect(),
        )
    }

    pub fn eval(&self, g: &IntVector) -> Rational {
        let mut acc = Rational::zero();
        for (c, b) in &self.terms {
            acc += c * b.eval(g);
        }
        acc
    }
}

/// Sum of the coefficients whose congruence systems hold at `g`.
pub fn tau_eval(q: &QuasiNumber, g: &IntVector) -> Result<Rational> {
    if q.dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            q.dim(),
            g.dim()
        )));
    }
    Ok(q.eval(g))
}

/// Indicator of `g - delta` lying in the lattice spanned by the generators:
/// with `B` the inverse of the generator matrix and `d` the lcm of the element
/// orders of `Z^n` modulo that lattice, this is the quasinumber `(dB, dB
/// delta, d)`.
pub fn from_lattice_shift(
    generators: &[IntVector],
    delta: &IntVector,
) -> Result<BasicQuasiNumber> {
    let n = delta.dim();
    if generators.len() != n {
        return Err(Error::NotFullRank);
    }
    let inv = inverse_of_columns(generators)?;
    let d = element_order_lcm(generators)?;
    let mut m = IntMatrix::zero(n, n);
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            let scaled = &inv[(i, j)] * Rational::from_integer(d.clone());
            assert!(scaled.is_integer());
            m[(i, j)] = scaled.to_integer();
        }
        let mut ci = Rational::zero();
        for j in 0..n {
            ci += &inv[(i, j)] * Rational::from_integer(delta[j].clone());
        }
        let ci = ci * Rational::from_integer(d.clone());
        assert!(ci.is_integer(), "delta must be integral");
        c.push(ci.to_integer());
    }
    BasicQuasiNumber::new(&m, &c, &d)
}

/// Polynomial in the coordinate functionals with quasinumber coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    dim: usize,
    terms: BTreeMap<IntVector, QuasiNumber>,
}

impl QuasiPolynomial {
    pub fn zero(dim: usize) -> Self {
        QuasiPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, &QuasiNumber)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: IntVector, q: QuasiNumber) {
        assert!(exp.is_nonnegative(), "monomials use nonnegative exponents");
        if q.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, q);
            }
            Some(existing) => {
                let sum = existing.add(&q);
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &QuasiPolynomial) -> QuasiPolynomial {
        let mut out = self.clone();
        for (e, q) in &other.terms {
            out.add_term(e.clone(), q.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QuasiPolynomial {
        let mut out = QuasiPolynomial::zero(self.dim);
        for (e, q) in &self.terms {
            out.add_term(e.clone(), q.scale(c));
        }
        out
    }

    /// Exact value at an integer point.
    pub fn eval(&self, g: &IntVector) -> Rational {
        let mut acc = Rational::zero();
        for (e, q) in &self.terms {
            let qv = q.eval(g);
            if qv.is_zero() {
                continue;
            }
            let mut mono = Rational::one();
            for j in 0..self.dim {
                let k = e[j].to_u32().expect("small exponents");
                for _ in 0..k {
                    mono *= Rational::from_integer(g[j].clone());
                }
            }
            acc += qv * mono;
        }
        acc
    }

    /// Max exponent appearing in any single coordinate.
    pub fn coordinate_degree(&self) -> u32 {
        let mut deg = 0;
        for e in self.terms.keys() {
            for j in 0..self.dim {
                deg = deg.max(e[j].to_u32().unwrap_or(0));
            }
        }
        deg
    }

    /// Lcm of the moduli of all participating basic quasinumbers: a period of
    /// the quasipolynomial (an upper-bound witness, not necessarily minimal).
    pub fn possible_period(&self) -> BigInt {
        let mut l = BigInt::one();
        for q in self.terms.values() {
            for (_, b) in q.terms() {
                l = l.lcm(b.modulus());
            }
        }
        l
    }
}

pub fn possible_period(q: &QuasiPolynomial) -> BigInt {
    q.possible_period()
}

/// Semantic equality by grid evaluation: with `d0` the lcm of all moduli and
/// `D` the maximal coordinate degree, agreement on `[0, (D+1)*d0)^n` forces
/// agreement everywhere, because the restriction to each coset of `d0 Z^n` is
/// a polynomial of coordinate degree at most `D`.
pub fn quasipoly_equal(p: &QuasiPolynomial, q: &QuasiPolynomial) -> bool {
    assert_eq!(p.dim(), q.dim());
    let n = p.dim();
    let d0 = p.possible_period().lcm(&q.possible_period());
    let deg = p.coordinate_degree().max(q.coordinate_degree()) as i64;
    let side = (deg + 1) * d0.to_i64().expect("modulus fits i64");
    let mut point = vec![0i64; n];
    loop {
        let g = IntVector::from_i64(&point);
        if p.eval(&g) != q.eval(&g) {
            return false;
        }
        // advance odometer
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            point[i] += 1;
            if point[i] < side {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// one-variable polynomials and Bernoulli sums

/// Dense univariate polynomial with rational coefficients, ascending degree,
/// trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial1D {
    coeffs: Vec<Rational>,
}

impl Polynomial1D {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Polynomial1D { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial1D { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial1D) -> Polynomial1D {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Polynomial1D::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Polynomial1D {
        Polynomial1D::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `P(a*x + b)` expanded.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Polynomial1D {
        let mut acc = Polynomial1D::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc * (a x + b) + c
            let n = acc.coeffs.len();
            let mut next = vec![Rational::zero(); n + 1];
            for (i, k) in acc.coeffs.iter().enumerate() {
                next[i + 1] += k * a;
                next[i] += k * b;
            }
            next[0] += c;
            acc = Polynomial1D::new(next);
        }
        acc
    }
}

/// The power-sum polynomial of degree `k+1` agreeing with
/// `x -> sum_{t=0..x} t^k` on all nonnegative integers (`k = 0` gives `x+1`).
/// Built by exact Lagrange interpolation on `x = 0..k+1`.
pub fn bernoulli_sum(k: u32) -> Polynomial1D {
    let nodes: Vec<Rational> = (0..=k as i64 + 1).map(rat_int).collect();
    let values: Vec<Rational> = (0..=k as i64 + 1)
        .map(|x| {
            let mut s = Rational::zero();
            for t in 0..=x {
                s += power_int(t, k);
            }
            s
        })
        .collect();
    let mut acc = Polynomial1D::zero();
    for (i, xi) in nodes.iter().enumerate() {
        // Lagrange basis polynomial for node i
        let mut basis = Polynomial1D::new(vec![Rational::one()]);
        let mut denom = Rational::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            // basis *= (x - xj)
            let mut next = vec![Rational::zero(); basis.coeffs.len() + 1];
            for (m, c) in basis.coeffs.iter().enumerate() {
                next[m + 1] += c;
                next[m] += c * (-xj.clone());
            }
            basis = Polynomial1D::new(next);
            denom *= xi - xj;
        }
        acc = acc.add(&basis.scale(&(values[i].clone() / denom)));
    }
    acc
}

fn power_int(base: i64, k: u32) -> Rational {
    if k == 0 {
        return Rational::one(); // 0^0 = 1 by the power-sum convention
    }
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= rat_int(base);
    }
    acc
}

/// The sum `B(x) = sum_{t=0..x} tau_{l,m,d}(t) t^k` with its closed form: one
/// polynomial branch per residue of `x` mod `d`.
#[derive(Debug, Clone)]
pub struct TauBernoulli {
    pub k: u32,
    pub l: i64,
    pub m: i64,
    pub d: u32,
    branches: Vec<Polynomial1D>, // indexed by x mod d, polynomials in x
}

impl TauBernoulli {
    pub fn new(k: u32, l: i64, m: i64, d: u32) -> Self {
        assert!(d >= 1);
        let tau = |t: i64| -> bool { (l * t - m).rem_euclid(d as i64) == 0 };
        let bern: Vec<Polynomial1D> = (0..=k).map(bernoulli_sum).collect();
        let mut branches = Vec::with_capacity(d as usize);
        for p in 0..d as i64 {
            // sum over residues s of t: tau(s) * sum_q C(k,q) d^q s^{k-q} B_q((x-p)/d - [s>p])
            let mut branch = Polynomial1D::zero();
            for s in 0..d as i64 {
                if !tau(s) {
                    continue;
                }
                let correction = if s > p { 1 } else { 0 };
                for q in 0..=k {
                    let c = Rational::from_integer(binomial(BigInt::from(k), BigInt::from(q)))
                        * power_int(d as i64, q)
                        * power_int(s, k - q);
                    if c.is_zero() {
                        continue;
                    }
                    // B_q evaluated at (x - p)/d - correction
                    let shift = rat_int(-p - correction * d as i64) / rat_int(d as i64);
                    let composed =
                        bern[q as usize].compose_linear(&(rat_int(1) / rat_int(d as i64)), &shift);
                    branch = branch.add(&composed.scale(&c));
                }
            }
            branches.push(branch);
        }
        TauBernoulli { k, l, m, d, branches }
    }

    /// Direct summation oracle, `x >= 0`.
    pub fn direct_sum(&self, x: i64) -> Rational {
        let mut acc = Rational::zero();
        for t in 0..=x {
            if (self.l * t - self.m).rem_euclid(self.d as i64) == 0 {
                acc += power_int(t, self.k);
            }
        }
        acc
    }

    /// Closed-form value at an integer: pick the branch of `x mod d`.
    pub fn closed_form(&self, x: i64) -> Rational {
        let p = x.rem_euclid(self.d as i64) as usize;
        self.branches[p].eval(&rat_int(x))
    }

    /// The polynomial branch for a fixed residue: the symbolic form in `x`.
    pub fn branch(&self, residue: u32) -> &Polynomial1D {
        &self.branches[residue as usize % self.d as usize]
    }

    /// `sum_{t = floor(a)+1 .. floor(b)} tau(t) t^k`, with `a`, `b` in
    /// `(1/d)Z`, computed through the floor interpolation of the closed form.
    pub fn range_sum(&self, a: &Rational, b: &Rational) -> Rational {
        let d = self.d;
        let eval_floor = |x: &Rational| -> Rational {
            floor_interpolate(&|y: &Rational| {
                assert!(y.is_integer());
                self.closed_form(y.to_integer().to_i64().unwrap())
            }, d, x)
        };
        eval_floor(b) - eval_floor(a)
    }
}

/// The interpolation `f(floor(x)) = sum_{l=0..d-1} tau_{1,l,d}(x) f(x - l/d)`
/// for `x` in `(1/d)Z`, where the selector fires iff `d*x = l (mod d)`.
pub fn floor_interpolate<F: Fn(&Rational) -> Rational>(f: &F, d: u32, x: &Rational) -> Rational {
    let dx = x * rat_int(d as i64);
    assert!(dx.is_integer(), "x must lie in (1/d)Z");
    let dx = dx.to_integer();
    let mut acc = Rational::zero();
    for l in 0..d as i64 {
        if (&dx - BigInt::from(l)).mod_floor(&BigInt::from(d as i64)).is_zero() {
            acc += f(&(x - rat_int(l) / rat_int(d as i64)));
        }
    }
    acc
}
