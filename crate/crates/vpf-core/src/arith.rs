//! Exact scalars and integer linear algebra: rational matrix inversion,
//! Smith normal form over Z, and modular solvability tests.
//!
//! `Rational` is always kept reduced with a positive denominator, so equality
//! is structural. Matrices are tiny (rank <= 8 in practice); plain gcd
//! pivoting is used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::IntVector;

/// Arbitrary-precision rational number, canonically reduced.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense integer matrix, row-major, arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::new(rows, cols, data.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[IntVector]) -> Self {
        let n = cols[0].dim();
        let mut m = Self::zero(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.dim(), n);
            for i in 0..n {
                m[(i, j)] = v[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector::new((0..self.cols).map(|j| self[(i, j)].clone()).collect())
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense rational matrix used for exact inverses and dual bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::new(
            m.rows,
            m.cols,
            m.data.iter().map(|v| Rational::from_integer(v.clone())).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn invert_rational_matrix(b: &RatMatrix) -> Result<RatMatrix> {
    if b.rows != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            b.rows, b.cols
        )));
    }
    let n = b.rows;
    let mut a = b.clone();
    let mut inv = RatMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[(r, col)].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return Err(Error::SingularMatrix),
        };
        if pivot != col {
            for j in 0..n {
                a.data.swap(pivot * n + j, col * n + j);
                inv.data.swap(pivot * n + j, col * n + j);
            }
        }
        let p = a[(col, col)].clone();
        for j in 0..n {
            a[(col, j)] = &a[(col, j)] / &p;
            inv[(col, j)] = &inv[(col, j)] / &p;
        }
        for r in 0..n {
            if r == col || a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone();
            for j in 0..n {
                let t = &a[(col, j)] * &f;
                a[(r, j)] -= t;
                let t = &inv[(col, j)] * &f;
                inv[(r, j)] -= t;
            }
        }
    }
    Ok(inv)
}

/// Rank of a set of integer vectors, by fraction-free elimination.
pub fn rank_of_vectors(vectors: &[IntVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].dim();
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let a = rows[rank][col].clone();
            let b = rows[r][col].clone();
            for j in 0..n {
                let t = &rows[r][j] * &a - &rows[rank][j] * &b;
                rows[r][j] = t;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Smith normal form `U * M * V = S` with `U`, `V` unimodular and `S` diagonal,
/// each diagonal entry dividing the next.
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_rows = |s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize| {
        for j in 0..cols {
            let (x, y) = (s[(a, j)].clone(), s[(b, j)].clone());
            s[(a, j)] = y;
            s[(b, j)] = x;
        }
        for j in 0..rows {
            let (x, y) = (u[(a, j)].clone(), u[(b, j)].clone());
            u[(a, j)] = y;
            u[(b, j)] = x;
        }
    };
    let swap_cols = |s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize| {
        for i in 0..rows {
            let (x, y) = (s[(i, a)].clone(), s[(i, b)].clone());
            s[(i, a)] = y;
            s[(i, b)] = x;
        }
        for i in 0..cols {
            let (x, y) = (v[(i, a)].clone(), v[(i, b)].clone());
            v[(i, a)] = y;
            v[(i, b)] = x;
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // find a nonzero pivot in the remaining block, smallest absolute value
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[(i, j)].is_zero()
                    && best
                        .map(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let (pi, pj) = match best {
            Some(p) => p,
            None => break,
        };
        swap_rows(&mut s, &mut u, t, pi);
        swap_cols(&mut s, &mut v, t, pj);

        // clear row and column t by gcd pivoting
        loop {
            let mut again = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                for j in 0..cols {
                    let d = &s[(t, j)] * &q;
                    s[(i, j)] -= d;
                }
                for j in 0..rows {
                    let d = &u[(t, j)] * &q;
                    u[(i, j)] -= d;
                }
                if !s[(i, t)].is_zero() {
                    swap_rows(&mut s, &mut u, t, i);
                    again = true;
                }
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                for i in 0..rows {
                    let d = &s[(i, t)] * &q;
                    s[(i, j)] -= d;
                }
                for i in 0..cols {
                    let d = &v[(i, t)] * &q;
                    v[(i, j)] -= d;
                }
                if !s[(t, j)].is_zero() {
                    swap_cols(&mut s, &mut v, t, j);
                    again = true;
                }
            }
            if !again {
                break;
            }
        }

        // divisibility fixup: diagonal entry must divide the rest of the block
        let mut fixed = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                    // add row i to row t and restart the pivot step
                    for jj in 0..cols {
                        let d = s[(i, jj)].clone();
                        s[(t, jj)] += d;
                    }
                    for jj in 0..rows {
                        let d = u[(i, jj)].clone();
                        u[(t, jj)] += d;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        if s[(t, t)].is_negative() {
            for j in 0..cols {
                let d = -s[(t, j)].clone();
                s[(t, j)] = d;
            }
            for j in 0..rows {
                let d = -u[(t, j)].clone();
                u[(t, j)] = d;
            }
        }
        t += 1;
    }
    SmithNormalForm { u, s, v }
}

/// Decide whether `M x = c (mod d)` has an integer solution `x`.
///
/// With `U M V = S` diagonal, the system is solvable iff, writing `c' = U c`,
/// every component satisfies `c'_i = 0 (mod gcd(d, S_ii))` (rows past the rank
/// require `c'_i = 0 (mod d)`).
pub fn solve_mod(m: &IntMatrix, c: &[BigInt], d: &BigInt) -> Result<bool> {
    if c.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but {} right-hand sides",
            m.rows(),
            c.len()
        )));
    }
    assert!(d > &BigInt::zero(), "modulus must be positive");
    let snf = smith_normal_form(m);
    let cp = snf.u.mul_vec(c);
    for i in 0..m.rows() {
        let s_ii = if i < m.cols() {
            snf.s[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        let g = if s_ii.is_zero() { d.clone() } else { d.gcd(&s_ii) };
        if !(&cp[i] % &g).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Inverse of the matrix whose columns are the given full-rank vectors.
pub fn inverse_of_columns(generators: &[IntVector]) -> Result<RatMatrix> {
    let n = generators[0].dim();
    if generators.len() != n {
        return Err(Error::NotFullRank);
    }
    let b = RatMatrix::from_int(&IntMatrix::from_columns(generators));
    invert_rational_matrix(&b).map_err(|_| Error::NotFullRank)
}

/// Least common multiple of the orders of elements of `Z^n / L(generators)`:
/// the lcm of the denominators appearing in the inverse of the generator
/// matrix. A (possibly proper) divisor of the lattice index.
pub fn element_order_lcm(generators: &[IntVector]) -> Result<BigInt> {
    let inv = inverse_of_columns(generators)?;
    let mut l = BigInt::one();
    for i in 0..inv.rows() {
        for j in 0..inv.cols() {
            l = l.lcm(inv[(i, j)].denom());
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratm(rows: usize, cols: usize, data: &[i64]) -> RatMatrix {
        RatMatrix::new(rows, cols, data.iter().map(|&v| rat_int(v)).collect())
    }

    #[test]
    fn invert_identity() {
        let id = RatMatrix::identity(3);
        assert_eq!(invert_rational_matrix(&id).unwrap(), id);
    }

    #[test]
    fn invert_upper_triangular() {
        let b = ratm(2, 2, &[1, 1, 0, 2]);
        let inv = invert_rational_matrix(&b).unwrap();
        assert_eq!(inv[(0, 0)], rat_int(1));
        assert_eq!(inv[(0, 1)], rat(-1, 2));
        assert_eq!(inv[(1, 0)], rat_int(0));
        assert_eq!(inv[(1, 1)], rat(1, 2));
        assert_eq!(b.mul(&inv), RatMatrix::identity(2));
    }

    #[test]
    fn invert_singular() {
        let b = ratm(2, 2, &[1, 1, 1, 1]);
        assert_eq!(invert_rational_matrix(&b), Err(Error::SingularMatrix));
    }

    #[test]
    fn snf_reconstructs() {
        let m = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, 4, 16]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
        // diagonal, nonnegative, divisibility chain
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        for i in 0..2 {
            if !snf.s[(i + 1, i + 1)].is_zero() {
                assert!((&snf.s[(i + 1, i + 1)] % &snf.s[(i, i)]).is_zero());
            }
        }
    }

    #[test]
    fn solve_mod_examples() {
        let m = IntMatrix::from_i64(1, 1, &[1]);
        assert!(solve_mod(&m, &[BigInt::from(0)], &BigInt::from(2)).unwrap());
        let m = IntMatrix::from_i64(1, 1, &[2]);
        assert!(!solve_mod(&m, &[BigInt::from(1)], &BigInt::from(2)).unwrap());
        let m = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        assert!(solve_mod(
            &m,
            &[BigInt::from(2), BigInt::from(3)],
            &BigInt::from(6)
        )
        .unwrap());
    }

    fn brute_solve_mod(m: &IntMatrix, c: &[i64], d: i64) -> bool {
        let n = m.cols();
        let total = (d as usize).pow(n as u32);
        'outer: for idx in 0..total {
            let mut x = Vec::with_capacity(n);
            let mut rem = idx;
            for _ in 0..n {
                x.push(BigInt::from((rem % d as usize) as i64));
                rem /= d as usize;
            }
            let mx = m.mul_vec(&x);
            for i in 0..m.rows() {
                if !((&mx[i] - BigInt::from(c[i])) % BigInt::from(d)).is_zero() {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }

    #[test]
    fn solve_mod_matches_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let rows = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=3);
            let d: i64 = rng.gen_range(1..=8);
            let data: Vec<i64> = (0..rows * n).map(|_| rng.gen_range(-4..=4)).collect();
            let c: Vec<i64> = (0..rows).map(|_| rng.gen_range(-4..=4)).collect();
            let m = IntMatrix::from_i64(rows, n, &data);
            let cb: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
            assert_eq!(
                solve_mod(&m, &cb, &BigInt::from(d)).unwrap(),
                brute_solve_mod(&m, &c, d),
                "m={data:?} c={c:?} d={d}"
            );
        }
    }

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn element_order_examples() {
        assert_eq!(
            element_order_lcm(&[iv(&[1, 0]), iv(&[0, 1])]).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            element_order_lcm(&[iv(&[1, 0]), iv(&[1, 2])]).unwrap(),
            BigInt::from(2)
        );
        // quotient (Z/2)^2: index 4 but all element orders divide 2
        assert_eq!(
            element_order_lcm(&[iv(&[2, 0]), iv(&[0, 2])]).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn element_order_divides_det_and_is_lattice_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut found = 0;
        while found < 100 {
            let n = rng.gen_range(2..=3);
            let gens: Vec<IntVector> = (0..n)
                .map(|_| IntVector::new((0..n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect()))
                .collect();
            if rank_of_vectors(&gens) < n {
                continue;
            }
            found += 1;
            let d = element_order_lcm(&gens).unwrap();
            // |det| = product of SNF diagonal
            let snf = smith_normal_form(&IntMatrix::from_columns(&gens));
            let mut det = BigInt::one();
            for i in 0..n {
                det *= &snf.s[(i, i)];
            }
            assert!((&det % &d).is_zero(), "order lcm must divide the index");
            // replacing g_i, g_j by -g_i, g_i + g_j keeps the lattice
            let mut gens2 = gens.clone();
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            if i == j {
                j = (j + 1) % n;
            }
            gens2[j] = gens2[j].add(&gens2[i]);
            gens2[i] = gens2[i].neg();
            assert_eq!(element_order_lcm(&gens2).unwrap(), d);
        }
    }
}
