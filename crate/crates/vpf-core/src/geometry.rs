//! Pointed polyhedral cones with exact double descriptions, and the chamber
//! complex obtained by splitting the nonnegative span of the input vectors
//! along every hyperplane spanned by a rank `n-1` subset.
//!
//! Facet normals point into the cone. Generators and normals are primitive
//! integer vectors; a generator is kept only when it is an extreme ray.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{rank_of_vectors, Rational};
use crate::error::{Error, Result};
use crate::laurent::IntVector;

/// Closed cone in `Q^n` with consistent generator and half-space
/// descriptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    generators: Vec<IntVector>,
    facet_normals: Vec<IntVector>,
    full_dimensional: bool,
}

impl Cone {
    /// Build from generators. Facets are found among hyperplanes spanned by
    /// `n-1`-subsets of the generators; non-extreme generators are dropped.
    pub fn from_generators(dim: usize, generators: &[IntVector]) -> Cone {
        let mut gens: Vec<IntVector> = Vec::new();
        for g in generators {
            assert_eq!(g.dim(), dim);
            if g.is_zero() {
                continue;
            }
            let (p, _) = g.primitive();
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        let full = rank_of_vectors(&gens) == dim;
        let mut normals: Vec<IntVector> = Vec::new();
        if full {
            for subset in subsets_of_size(gens.len(), dim.saturating_sub(1)) {
                let sel: Vec<IntVector> = subset.iter().map(|&i| gens[i].clone()).collect();
                if rank_of_vectors(&sel) + 1 != dim {
                    continue;
                }
                let Some(normal) = hyperplane_normal(dim, &sel) else {
                    continue;
                };
                let side: Vec<i8> = gens
                    .iter()
                    .map(|g| sign_of(&normal.dot_int(g)))
                    .collect();
                let oriented = if side.iter().all(|&s| s >= 0) {
                    Some(normal)
                } else if side.iter().all(|&s| s <= 0) {
                    Some(normal.neg())
                } else {
                    None
                };
                if let Some(nv) = oriented {
                    if !normals.contains(&nv) {
                        normals.push(nv);
                    }
                }
            }
        }
        let mut cone = Cone {
            dim,
            generators: gens,
            facet_normals: normals,
            full_dimensional: full,
        };
        cone.prune();
        cone
    }

    fn from_parts(dim: usize, generators: Vec<IntVector>, normals: Vec<IntVector>) -> Cone {
        let full = rank_of_vectors(&generators) == dim;
        let mut cone = Cone {
            dim,
            generators,
            facet_normals: normals,
            full_dimensional: full,
        };
        cone.prune();
        cone
    }

    /// Drop non-extreme rays and redundant inequalities. A ray is extreme when
    /// the valid inequalities tight at it have rank `n-1`; an inequality is a
    /// facet when its tight rays have rank `n-1`.
    fn prune(&mut self) {
        if !self.full_dimensional {
            self.generators.sort();
            self.facet_normals.sort();
            return;
        }
        let gens = std::mem::take(&mut self.generators);
        let mut extreme: Vec<IntVector> = gens
            .into_iter()
            .filter(|g| {
                let tight: Vec<IntVector> = self
                    .facet_normals
                    .iter()
                    .filter(|nv| nv.dot_int(g).is_zero())
                    .cloned()
                    .collect();
                rank_of_vectors(&tight) >= self.dim - 1
            })
            .collect();
        extreme.sort();
        extreme.dedup();
        self.generators = extreme;
        let normals = std::mem::take(&mut self.facet_normals);
        let mut facets: Vec<IntVector> = normals
            .into_iter()
            .filter(|nv| {
                let tight: Vec<IntVector> = self
                    .generators
                    .iter()
                    .filter(|g| nv.dot_int(g).is_zero())
                    .cloned()
                    .collect();
                rank_of_vectors(&tight) == self.dim - 1
            })
            .collect();
        facets.sort();
        facets.dedup();
        self.facet_normals = facets;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[IntVector] {
        &self.facet_normals
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.full_dimensional
    }

    /// Closed membership test: all facet inner forms nonnegative.
    pub fn contains(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point of dim {} vs cone of dim {}",
                point.len(),
                self.dim
            )));
        }
        Ok(self
            .facet_normals
            .iter()
            .all(|nv| !nv.dot_rat(point).is_negative()))
    }

    pub fn contains_int(&self, point: &IntVector) -> bool {
        self.facet_normals
            .iter()
            .all(|nv| !nv.dot_int(point).is_negative())
    }

    /// Strict membership: all facet inner forms positive.
    pub fn contains_strictly(&self, point: &[Rational]) -> bool {
        self.facet_normals
            .iter()
            .all(|nv| nv.dot_rat(point).is_positive())
    }

    /// Split along the hyperplane `<normal, x> = 0`. Returns the two closed
    /// halves when the hyperplane passes through the interior, None otherwise.
    fn split(&self, normal: &IntVector) -> Option<(Cone, Cone)> {
        let vals: Vec<BigInt> = self.generators.iter().map(|g| normal.dot_int(g)).collect();
        let has_pos = vals.iter().any(|v| v.is_positive());
        let has_neg = vals.iter().any(|v| v.is_negative());
        if !(has_pos && has_neg) {
            return None;
        }
        let mut pos_gens: Vec<IntVector> = Vec::new();
        let mut neg_gens: Vec<IntVector> = Vec::new();
        for (g, v) in self.generators.iter().zip(&vals) {
            if !v.is_negative() {
                pos_gens.push(g.clone());
            }
            if !v.is_positive() {
                neg_gens.push(g.clone());
            }
        }
        // rays cut out on the hyperplane from mixed-sign pairs
        for (i, gi) in self.generators.iter().enumerate() {
            for (j, gj) in self.generators.iter().enumerate() {
                if i >= j {
                    continue;
                }
                let (a, b) = (&vals[i], &vals[j]);
                if (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()) {
                    // <normal, w> = 0 with w a positive combination of gi, gj
                    let w = gi.scale(&b.abs()).add(&gj.scale(&a.abs()));
                    let (w, _) = w.primitive();
                    if !w.is_zero() {
                        pos_gens.push(w.clone());
                        neg_gens.push(w);
                    }
                }
            }
        }
        let mut pos_normals = self.facet_normals.clone();
        pos_normals.push(normal.clone());
        let mut neg_normals = self.facet_normals.clone();
        neg_normals.push(normal.neg());
        Some((
            Cone::from_parts(self.dim, pos_gens, pos_normals),
            Cone::from_parts(self.dim, neg_gens, neg_normals),
        ))
    }
}

fn sign_of(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let needed = k - cur.len();
        for i in start..=n.saturating_sub(needed) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Primitive integer normal of the hyperplane spanned by `n-1` independent
/// vectors (unique up to sign).
pub fn hyperplane_normal(dim: usize, spanning: &[IntVector]) -> Option<IntVector> {
    // solve <x, v> = 0 for all v by fraction-free elimination
    let mut rows: Vec<Vec<Rational>> = spanning
        .iter()
        .map(|v| {
            (0..dim)
                .map(|j| Rational::from_integer(v[j].clone()))
                .collect()
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pv = rows[r][c].clone();
        for x in &mut rows[r] {
            *x /= pv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for cc in 0..dim {
                    let t = &rows[r][cc] * &f;
                    rows[i][cc] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if r + 1 != dim {
        return None;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut sol = vec![Rational::zero(); dim];
    sol[free] = Rational::one();
    for (ri, &pc) in pivots.iter().enumerate() {
        sol[pc] = -rows[ri][free].clone();
    }
    // clear denominators, make primitive
    let mut lcm = BigInt::from(1);
    for s in &sol {
        lcm = num_integer::lcm(lcm, s.denom().clone());
    }
    let ints: Vec<BigInt> = sol.iter().map(|s| s.numer() * (&lcm / s.denom())).collect();
    let v = IntVector::new(ints);
    let (p, _) = v.primitive();
    Some(p)
}

/// The chamber complex: maximal closed full-dimensional cells of the
/// nonnegative span of `vectors`, split along every hyperplane spanned by a
/// rank `n-1` subset.
#[derive(Debug, Clone)]
pub struct ChamberComplex {
    pub vectors: Vec<IntVector>,
    pub chambers: Vec<Cone>,
}

pub fn chambers(vectors: &[IntVector]) -> Result<ChamberComplex> {
    assert!(!vectors.is_empty());
    let dim = vectors[0].dim();
    for v in vectors {
        assert!(!v.is_zero(), "input vectors must be nonzero");
        assert!(v.is_nonnegative(), "input vectors must be nonnegative");
    }
    if rank_of_vectors(vectors) != dim {
        return Err(Error::NotFullRank);
    }
    let big_cone = Cone::from_generators(dim, vectors);
    let hyperplanes = spanned_hyperplanes(dim, vectors);
    let mut cells = vec![big_cone];
    for h in &hyperplanes {
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            match cell.split(h) {
                Some((a, b)) => {
                    next.push(a);
                    next.push(b);
                }
                None => next.push(cell),
            }
        }
        cells = next;
    }
    cells.sort_by(|a, b| a.generators().cmp(b.generators()));
    Ok(ChamberComplex {
        vectors: vectors.to_vec(),
        chambers: cells,
    })
}

/// All distinct hyperplanes spanned by rank `n-1` subsets of the vectors.
pub fn spanned_hyperplanes(dim: usize, vectors: &[IntVector]) -> Vec<IntVector> {
    let mut out: BTreeSet<IntVector> = BTreeSet::new();
    if dim == 1 {
        return Vec::new();
    }
    for subset in subsets_of_size(vectors.len(), dim - 1) {
        let sel: Vec<IntVector> = subset.iter().map(|&i| vectors[i].clone()).collect();
        if rank_of_vectors(&sel) != dim - 1 {
            continue;
        }
        if let Some(nv) = hyperplane_normal(dim, &sel) {
            // canonical sign: first nonzero coordinate positive
            let canon = match nv.coords().iter().find(|c| !c.is_zero()) {
                Some(c) if c.is_negative() => nv.neg(),
                _ => nv,
            };
            out.insert(canon);
        }
    }
    out.into_iter().collect()
}

/// A rational point strictly inside the cone and off all the given
/// hyperplanes: the generator sum, perturbed by geometrically decaying
/// generator contributions until every check passes.
pub fn interior_point(cone: &Cone, avoid: &[IntVector]) -> Result<Vec<Rational>> {
    if !cone.is_full_dimensional() {
        return Err(Error::EmptyInterior);
    }
    let gens = cone.generators();
    for k in 1u32..64 {
        let base = Rational::new(BigInt::from(1), BigInt::from(2u64.pow(k.min(40))));
        let mut pt = vec![Rational::zero(); cone.dim()];
        let mut weight = Rational::from_integer(BigInt::from(1));
        for g in gens {
            for (j, c) in pt.iter_mut().enumerate() {
                *c += Rational::from_integer(g[j].clone()) * &weight;
            }
            weight *= &base;
        }
        let inside = cone.contains_strictly(&pt);
        let clear = avoid.iter().all(|nv| !nv.dot_rat(&pt).is_zero());
        if inside && clear {
            return Ok(pt);
        }
    }
    Err(Error::EmptyInterior)
}

pub fn cone_contains(cone: &Cone, point: &[Rational]) -> Result<bool> {
    cone.contains(point)
}
