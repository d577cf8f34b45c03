//! Lattice zonotopes `t + Z(v_1, ..., v_m)`.
//!
//! A zonotope is stored as its generator matrix plus an exact rational
//! translate. Membership and lattice-point enumeration go through the
//! H-description (one pair of inequalities per hyperplane spanned by
//! generators, plus equalities for the affine hull when the generators do not
//! span). Incidence decisions are exact; floating point is used only for the
//! final angle in [`Zonotope::solid_angle_sum_2d`].

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    combinations, hyperplane_lattice_basis, independent_subsets, integer_kernel, orthogonal_vector,
    primitive_part, rank, unimodular_complement, IntMatrix, IntVector,
};

/// Default cap on the number of bounding-box cells visited by brute-force
/// enumeration.
pub const DEFAULT_CELL_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Zonotope {
    dim: usize,
    generators: IntMatrix,
    translate: Vec<BigRational>,
}

/// A primitive facet normal together with the support interval `[lo, hi]` of
/// the zonotope in that direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDirection {
    pub normal: IntVector,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl FacetDirection {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Exact inequality (and equality) description of a zonotope.
#[derive(Clone, Debug)]
pub struct HalfspaceDescription {
    pub facets: Vec<FacetDirection>,
    /// Affine-hull constraints `u . x = value`; empty for full-dimensional zonotopes.
    pub equalities: Vec<(IntVector, BigRational)>,
}

impl HalfspaceDescription {
    pub fn contains(&self, x: &[BigRational], strict: bool) -> bool {
        if strict && !self.equalities.is_empty() {
            return false;
        }
        self.equalities.iter().all(|(u, v)| &u.dot_rational(x) == v)
            && self.facets.iter().all(|f| {
                let y = f.normal.dot_rational(x);
                if strict {
                    f.lo < y && y < f.hi
                } else {
                    f.lo <= y && y <= f.hi
                }
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeWidth {
    pub width: BigInt,
    /// Lexicographically smallest primitive direction (first nonzero entry
    /// positive) attaining `width`.
    pub witness: IntVector,
}

/// `U * Z + shift = factor x [0, 1]`, with `U` unimodular.
#[derive(Clone, Debug)]
pub struct Width1Decomposition {
    pub factor: Zonotope,
    pub transform: IntMatrix,
    pub shift: IntVector,
    /// Facet normal of `Z` with width one.
    pub direction: IntVector,
    /// The only generator not orthogonal to `direction`.
    pub crossing_generator: IntVector,
}

impl Width1Decomposition {
    /// `factor x [0, 1]` as a zonotope in the ambient dimension.
    pub fn product(&self) -> Zonotope {
        let d = self.factor.dim() + 1;
        let mut gens: Vec<IntVector> = self
            .factor
            .generator_list()
            .iter()
            .map(|g| {
                let mut e = g.entries().to_vec();
                e.push(BigInt::zero());
                IntVector::new(e)
            })
            .collect();
        gens.push(IntVector::unit(d, d - 1));
        Zonotope::new(d, gens, None).expect("lifted generators have the ambient dimension")
    }
}

/// Builds a zonotope, dropping zero generators and optionally merging
/// parallel ones (see [`Zonotope::merged_parallel`]).
pub fn make_zonotope(
    dim: usize,
    generators: Vec<IntVector>,
    translate: Option<Vec<BigRational>>,
    merge_parallel: bool,
) -> Result<Zonotope> {
    let z = Zonotope::new(dim, generators, translate)?;
    Ok(if merge_parallel { z.merged_parallel() } else { z })
}

fn ceil_int(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

fn floor_int(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

/// Integer constraints `lo <= u . x <= hi` describing the lattice points of a
/// zonotope (equalities have `lo == hi`).
struct LatticeFilter {
    rows: Vec<(Vec<i64>, i64, i64)>,
    ranges: Vec<(i64, i64)>,
    empty: bool,
}

impl LatticeFilter {
    fn new(z: &Zonotope, strict: bool) -> Result<Self> {
        let h = z.halfspaces();
        let mut rows = Vec::new();
        let mut empty = strict && !h.equalities.is_empty();
        for (u, v) in &h.equalities {
            if !v.is_integer() {
                empty = true;
                continue;
            }
            let v = to_i64(&v.to_integer())?;
            rows.push((u.to_i64s()?, v, v));
        }
        for f in &h.facets {
            let (lo, hi) = if strict {
                (floor_int(&f.lo) + 1, ceil_int(&f.hi) - 1)
            } else {
                (ceil_int(&f.lo), floor_int(&f.hi))
            };
            if lo > hi {
                empty = true;
            }
            rows.push((f.normal.to_i64s()?, to_i64(&lo)?, to_i64(&hi)?));
        }
        let mut ranges = Vec::with_capacity(z.dim);
        for i in 0..z.dim {
            let (lo, hi) = z.support_interval(&IntVector::unit(z.dim, i))?;
            let (lo, hi) = (ceil_int(&lo), floor_int(&hi));
            if lo > hi {
                empty = true;
            }
            ranges.push((to_i64(&lo)?, to_i64(&hi)?));
        }
        Ok(LatticeFilter { rows, ranges, empty })
    }

    fn cells(&self) -> u128 {
        if self.empty {
            return 0;
        }
        self.ranges
            .iter()
            .map(|&(lo, hi)| (hi - lo + 1) as u128)
            .product()
    }

    fn accepts(&self, x: &[i64]) -> bool {
        self.rows.iter().all(|(u, lo, hi)| {
            let y: i128 = u.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
            *lo as i128 <= y && y <= *hi as i128
        })
    }

    /// Visits all accepted points with the given first coordinate, in
    /// lexicographic order.
    fn scan_slice(&self, first: i64, mut visit: impl FnMut(&[i64])) {
        let d = self.ranges.len();
        let mut x: Vec<i64> = self.ranges.iter().map(|r| r.0).collect();
        x[0] = first;
        loop {
            if self.accepts(&x) {
                visit(&x);
            }
            // odometer over coordinates 1..d, last coordinate fastest
            let mut k = d;
            loop {
                if k == 1 {
                    return;
                }
                k -= 1;
                if x[k] < self.ranges[k].1 {
                    x[k] += 1;
                    break;
                }
                x[k] = self.ranges[k].0;
            }
        }
    }

    fn check_budget(&self, budget: u128) -> Result<()> {
        let cells = self.cells();
        if cells > budget {
            return Err(Error::BudgetExceeded { cells, budget });
        }
        Ok(())
    }

    fn count(&self) -> u64 {
        if self.empty {
            return 0;
        }
        if self.ranges.is_empty() {
            return u64::from(self.accepts(&[]));
        }
        let (lo, hi) = self.ranges[0];
        (lo..=hi)
            .into_par_iter()
            .map(|a| {
                let mut n = 0u64;
                self.scan_slice(a, |_| n += 1);
                n
            })
            .sum()
    }

    fn collect(&self) -> Vec<IntVector> {
        if self.empty {
            return Vec::new();
        }
        if self.ranges.is_empty() {
            return if self.accepts(&[]) {
                vec![IntVector::new(Vec::new())]
            } else {
                Vec::new()
            };
        }
        let (lo, hi) = self.ranges[0];
        let slices: Vec<Vec<IntVector>> = (lo..=hi)
            .into_par_iter()
            .map(|a| {
                let mut pts = Vec::new();
                self.scan_slice(a, |x| pts.push(IntVector::from_i64s(x)));
                pts
            })
            .collect();
        slices.into_iter().flatten().collect()
    }

    fn any(&self) -> bool {
        if self.empty {
            return false;
        }
        if self.ranges.is_empty() {
            return self.accepts(&[]);
        }
        let (lo, hi) = self.ranges[0];
        (lo..=hi).into_par_iter().any(|a| {
            let mut found = false;
            self.scan_slice(a, |_| found = true);
            found
        })
    }
}

impl Zonotope {
    /// Zero generators are dropped; a missing translate means the origin.
    pub fn new(
        dim: usize,
        generators: Vec<IntVector>,
        translate: Option<Vec<BigRational>>,
    ) -> Result<Self> {
        let translate = translate.unwrap_or_else(|| vec![BigRational::zero(); dim]);
        if translate.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: translate.len(),
            });
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Zonotope {
            dim,
            generators: IntMatrix::from_columns(dim, generators)?,
            translate,
        })
    }

    /// Shorthand for a zonotope at the origin with small integer generators.
    pub fn from_i64s(dim: usize, generators: &[&[i64]]) -> Result<Self> {
        Self::new(
            dim,
            generators.iter().map(|g| IntVector::from_i64s(g)).collect(),
            None,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn generator_list(&self) -> &[IntVector] {
        self.generators.columns()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.cols()
    }

    pub fn translate(&self) -> &[BigRational] {
        &self.translate
    }

    pub fn rank(&self) -> usize {
        rank(&self.generators)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.rank() == self.dim
    }

    fn require_full_dimensional(&self) -> Result<()> {
        let r = self.rank();
        if r < self.dim {
            return Err(Error::Degenerate { rank: r, dim: self.dim });
        }
        Ok(())
    }

    /// The translate as an integer vector, if it is one.
    pub fn lattice_translate(&self) -> Option<IntVector> {
        self.translate
            .iter()
            .map(|t| t.is_integer().then(|| t.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntVector::new)
    }

    pub fn has_lattice_translate(&self) -> bool {
        self.translate.iter().all(BigRational::is_integer)
    }

    pub fn with_translate(&self, translate: Vec<BigRational>) -> Result<Zonotope> {
        Zonotope::new(self.dim, self.generator_list().to_vec(), Some(translate))
    }

    /// Adds `t` to the translate.
    pub fn translated(&self, t: &[BigRational]) -> Result<Zonotope> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: t.len(),
            });
        }
        let translate = self.translate.iter().zip(t).map(|(a, b)| a + b).collect();
        self.with_translate(translate)
    }

    /// `n Z = { n x : x in Z }`; scales generators and translate.
    pub fn dilate(&self, n: u64) -> Zonotope {
        let k = BigInt::from(n);
        let kr = BigRational::from_integer(k.clone());
        Zonotope::new(
            self.dim,
            self.generator_list().iter().map(|g| g.scaled(&k)).collect(),
            Some(self.translate.iter().map(|t| t * &kr).collect()),
        )
        .expect("dilation preserves dimensions")
    }

    /// Image under `x -> U x + shift`.
    pub fn transformed(&self, u: &IntMatrix, shift: &IntVector) -> Result<Zonotope> {
        if u.cols() != self.dim || shift.dim() != u.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.cols(),
            });
        }
        let translate = u
            .mul_rational_vec(&self.translate)
            .into_iter()
            .zip(shift.entries())
            .map(|(t, s)| t + BigRational::from_integer(s.clone()))
            .collect();
        Zonotope::new(
            u.rows(),
            self.generator_list().iter().map(|g| u.mul_vec(g)).collect(),
            Some(translate),
        )
    }

    /// The same point set with parallel generators combined into one.
    ///
    /// Generators `k_i p` along a primitive direction `p` (first nonzero entry
    /// positive) become `(sum |k_i|) p`; each `k_i < 0` contributes `k_i p` to
    /// the translate, since `Z(-v) = Z(v) - v`.
    pub fn merged_parallel(&self) -> Zonotope {
        let mut directions: Vec<(IntVector, BigInt)> = Vec::new();
        let mut translate = self.translate.clone();
        for g in self.generator_list() {
            let p = primitive_part(g).expect("generators are nonzero");
            let sign = p.leading_sign();
            let p = p.sign_normalized();
            let k = g.content();
            if sign < 0 {
                for (t, a) in translate.iter_mut().zip(g.entries()) {
                    *t += BigRational::from_integer(a.clone());
                }
            }
            match directions.iter_mut().find(|(q, _)| *q == p) {
                Some((_, total)) => *total += k,
                None => directions.push((p, k)),
            }
        }
        Zonotope::new(
            self.dim,
            directions.into_iter().map(|(p, k)| p.scaled(&k)).collect(),
            Some(translate),
        )
        .expect("merging preserves dimensions")
    }

    /// Whether some two generators are parallel.
    pub fn has_parallel_generators(&self) -> bool {
        let dirs: BTreeSet<IntVector> = self
            .generator_list()
            .iter()
            .map(|g| primitive_part(g).expect("nonzero").sign_normalized())
            .collect();
        dirs.len() < self.num_generators()
    }

    /// `(min, max)` of `u . x` over the zonotope.
    pub fn support_interval(&self, u: &IntVector) -> Result<(BigRational, BigRational)> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            });
        }
        if u.is_zero() {
            return Err(Error::arg("support interval in the zero direction"));
        }
        let base = u.dot_rational(&self.translate);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for g in self.generator_list() {
            let p = u.dot(g);
            if p.is_negative() {
                lo += p;
            } else {
                hi += p;
            }
        }
        Ok((
            &base + BigRational::from_integer(lo),
            base + BigRational::from_integer(hi),
        ))
    }

    /// `sum_i |u . v_i|`; the translate does not matter.
    pub fn width_in_direction(&self, u: &IntVector) -> Result<BigInt> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            });
        }
        if u.is_zero() {
            return Err(Error::arg("width in the zero direction"));
        }
        Ok(self.generator_list().iter().map(|g| u.dot(g).abs()).sum())
    }

    /// Primitive normals of hyperplanes spanned by generators, within the
    /// affine hull, plus equality constraints for the hull itself.
    pub fn halfspaces(&self) -> HalfspaceDescription {
        let d = self.dim;
        let r = self.rank();
        let complement = if r < d {
            let gt = IntMatrix::from_rows(d, self.generator_list()).expect("generators have dim d");
            integer_kernel(&gt)
        } else {
            Vec::new()
        };
        let equalities = complement
            .iter()
            .map(|c| (c.clone(), c.dot_rational(&self.translate)))
            .collect();

        let mut normals = BTreeSet::new();
        if r >= 1 {
            for s in combinations(self.num_generators(), r - 1) {
                let mut vs: Vec<IntVector> =
                    s.iter().map(|&i| self.generators.column(i).clone()).collect();
                if vs.len() > 1 && rank(&IntMatrix::from_columns(d, vs.clone()).unwrap()) < vs.len() {
                    continue;
                }
                vs.extend(complement.iter().cloned());
                let n = orthogonal_vector(&vs, d);
                if n.is_zero() {
                    continue;
                }
                normals.insert(primitive_part(&n).unwrap().sign_normalized());
            }
        }
        let facets = normals
            .into_iter()
            .map(|normal| {
                let (lo, hi) = self.support_interval(&normal).expect("normal is nonzero");
                FacetDirection { normal, lo, hi }
            })
            .collect();
        HalfspaceDescription { facets, equalities }
    }

    /// Facet normals (up to sign, first nonzero entry positive, sorted) with
    /// their support intervals. Requires a full-dimensional zonotope.
    pub fn facet_directions(&self) -> Result<Vec<FacetDirection>> {
        self.require_full_dimensional()?;
        Ok(self.halfspaces().facets)
    }

    /// Membership of a rational point; `strict` tests the interior, which is
    /// empty for lower-dimensional zonotopes.
    pub fn contains(&self, x: &[BigRational], strict: bool) -> bool {
        x.len() == self.dim && self.halfspaces().contains(x, strict)
    }

    /// Number of bounding-box cells scanned when enumerating the `n`-th dilate.
    pub fn enumeration_cells(&self, n: u64) -> Result<u128> {
        Ok(LatticeFilter::new(&self.dilate(n), false)?.cells())
    }

    /// All lattice points of `n Z` in lexicographic order.
    pub fn lattice_points(&self, n: u64) -> Result<Vec<IntVector>> {
        self.lattice_points_with_budget(n, DEFAULT_CELL_BUDGET)
    }

    pub fn lattice_points_with_budget(&self, n: u64, budget: u128) -> Result<Vec<IntVector>> {
        let f = LatticeFilter::new(&self.dilate(n), false)?;
        f.check_budget(budget)?;
        Ok(f.collect())
    }

    pub fn count_lattice_points(&self, n: u64, budget: u128) -> Result<u64> {
        let f = LatticeFilter::new(&self.dilate(n), false)?;
        f.check_budget(budget)?;
        Ok(f.count())
    }

    /// Lattice points in the interior, lexicographically ordered.
    pub fn interior_lattice_points(&self) -> Result<Vec<IntVector>> {
        self.require_full_dimensional()?;
        let f = LatticeFilter::new(self, true)?;
        f.check_budget(DEFAULT_CELL_BUDGET)?;
        Ok(f.collect())
    }

    /// Number of interior lattice points of `n Z`.
    pub fn count_interior_lattice_points(&self, n: u64, budget: u128) -> Result<u64> {
        self.require_full_dimensional()?;
        let f = LatticeFilter::new(&self.dilate(n), true)?;
        f.check_budget(budget)?;
        Ok(f.count())
    }

    pub fn has_interior_lattice_point(&self, n: u64, budget: u128) -> Result<bool> {
        self.require_full_dimensional()?;
        let f = LatticeFilter::new(&self.dilate(n), true)?;
        f.check_budget(budget)?;
        Ok(f.any())
    }

    /// Normalized volume: the sum of `|det|` over all `d`-subsets of generators.
    pub fn volume(&self) -> Result<BigInt> {
        self.require_full_dimensional()?;
        let mut total = BigInt::zero();
        for s in combinations(self.num_generators(), self.dim) {
            total += self.generators.select_columns(&s).determinant()?.abs();
        }
        Ok(total)
    }

    fn first_basis_subset(&self) -> Option<Vec<usize>> {
        combinations(self.num_generators(), self.dim)
            .into_iter()
            .find(|s| rank(&self.generators.select_columns(s)) == self.dim)
    }

    /// Smallest width over the coordinate and facet directions; an upper bound
    /// for the lattice width.
    fn easy_width_bound(&self) -> Result<BigInt> {
        let mut best: Option<BigInt> = None;
        let candidates = (0..self.dim)
            .map(|i| IntVector::unit(self.dim, i))
            .chain(self.facet_directions()?.into_iter().map(|f| f.normal));
        for u in candidates {
            let w = self.width_in_direction(&u)?;
            if best.as_ref().map_or(true, |b| &w < b) {
                best = Some(w);
            }
        }
        Ok(best.expect("dimension is positive"))
    }

    /// A bound `B` such that every direction `u` with width at most the best
    /// coordinate/facet width satisfies `|u|_inf <= B`.
    ///
    /// For a basis `M` of generators, `|u . v_j| <= W0` on its columns puts `u`
    /// in `W0 (M^T)^{-1} [-1,1]^d`; the bound is minimized over all such `M`.
    pub fn lattice_width_bound(&self) -> Result<BigInt> {
        self.require_full_dimensional()?;
        let w0 = self.easy_width_bound()?;
        let mut best: Option<BigInt> = None;
        for s in independent_subsets(&self.generators) {
            if s.len() != self.dim {
                continue;
            }
            let mt = self.generators.select_columns(&s).transpose();
            let det = mt.determinant()?.abs();
            let adj = mt.adjugate()?;
            let row_sum = (0..self.dim)
                .map(|k| adj.row(k).entries().iter().map(|a| a.abs()).sum::<BigInt>())
                .max()
                .unwrap_or_default();
            let num = &w0 * row_sum;
            let b = (&num + &det - 1u32) / &det;
            if best.as_ref().map_or(true, |x| &b < x) {
                best = Some(b);
            }
        }
        Ok(best.expect("full-dimensional zonotopes have a basis of generators"))
    }

    pub fn lattice_width(&self) -> Result<LatticeWidth> {
        self.lattice_width_with_budget(DEFAULT_CELL_BUDGET)
    }

    /// Exact lattice width by exhaustive search.
    ///
    /// With `W0` the best coordinate/facet width and `M` a basis of
    /// generators, any direction of width `<= W0` has `y = M^T u` in
    /// `[-W0, W0]^d`. The search runs over that box and keeps the `y` for
    /// which `u = (M^T)^{-1} y` is integral, so it is complete.
    pub fn lattice_width_with_budget(&self, budget: u128) -> Result<LatticeWidth> {
        let d = self.dim;
        let r = self.rank();
        if r < d {
            let gt = IntMatrix::from_rows(d, self.generator_list())?;
            let witness = integer_kernel(&gt)
                .into_iter()
                .map(|v| v.sign_normalized())
                .min()
                .expect("rank-deficient lattices have a nonzero kernel");
            return Ok(LatticeWidth {
                width: BigInt::zero(),
                witness,
            });
        }
        let w0 = to_i64(&self.easy_width_bound()?)?;
        let side = (2 * w0 + 1) as u128;
        let cells = side.pow(d as u32);
        if cells > budget {
            return Err(Error::BudgetExceeded { cells, budget });
        }
        let basis = self.first_basis_subset().expect("full rank");
        let mt = self.generators.select_columns(&basis).transpose();
        let det = to_i64(&mt.determinant()?)? as i128;
        let adj_big = mt.adjugate()?;
        let adj: Vec<Vec<i128>> = (0..d)
            .map(|k| {
                adj_big
                    .row(k)
                    .entries()
                    .iter()
                    .map(|a| to_i64(a).map(i128::from))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let gens: Vec<Vec<i64>> = self
            .generator_list()
            .iter()
            .map(IntVector::to_i64s)
            .collect::<Result<_>>()?;

        let mut best: Option<(i128, Vec<i64>)> = None;
        let mut y = vec![-w0; d];
        loop {
            if let Some(u) = solve_integral(&adj, det, &y) {
                if u.iter().any(|&a| a != 0) {
                    let u = sign_normalize_i64(u);
                    let w: i128 = gens
                        .iter()
                        .map(|g| g.iter().zip(&u).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>().abs())
                        .sum();
                    let better = match &best {
                        None => true,
                        Some((bw, bu)) => w < *bw || (w == *bw && u < *bu),
                    };
                    if better {
                        best = Some((w, u));
                    }
                }
            }
            let mut k = d;
            loop {
                if k == 0 {
                    let (w, u) = best.expect("the box contains M^T e_1");
                    return Ok(LatticeWidth {
                        width: BigInt::from(w),
                        witness: IntVector::from_i64s(&u),
                    });
                }
                k -= 1;
                if y[k] < w0 {
                    y[k] += 1;
                    break;
                }
                y[k] = -w0;
            }
        }
    }

    /// Splits off a unit segment along a facet direction of width one.
    ///
    /// Returns `None` when no facet direction has width one, which for
    /// zonotopes means the lattice width exceeds one.
    pub fn width1_decomposition(&self) -> Result<Option<Width1Decomposition>> {
        if self.dim < 2 {
            return Err(Error::arg("width-1 decomposition needs dimension >= 2"));
        }
        self.require_full_dimensional()?;
        let t = self.lattice_translate().ok_or(Error::NonLatticeTranslate)?;
        for f in self.facet_directions()? {
            let u = &f.normal;
            if !self.width_in_direction(u)?.is_one() {
                continue;
            }
            let (crossing, rest): (Vec<&IntVector>, Vec<&IntVector>) =
                self.generator_list().iter().partition(|g| !u.dot(g).is_zero());
            let w = crossing[0].clone();
            let basis = hyperplane_lattice_basis(u)?;
            let transform = unimodular_complement(&basis, &w)?;
            let shift = transform.mul_vec(&t).negated();
            let factor_gens = rest
                .iter()
                .map(|g| {
                    let image = transform.mul_vec(g);
                    debug_assert!(image[self.dim - 1].is_zero());
                    IntVector::new(image.entries()[..self.dim - 1].to_vec())
                })
                .collect();
            let factor = Zonotope::new(self.dim - 1, factor_gens, None)?;
            return Ok(Some(Width1Decomposition {
                factor,
                transform,
                shift,
                direction: u.clone(),
                crossing_generator: w,
            }));
        }
        Ok(None)
    }

    /// Sum over lattice points of the normalized tangent-cone angle (2D only).
    pub fn solid_angle_sum_2d(&self) -> Result<f64> {
        if self.dim != 2 {
            return Err(Error::arg("solid-angle sums are implemented in dimension 2 only"));
        }
        self.require_full_dimensional()?;
        let facets = self.facet_directions()?;
        let mut total = 0.0;
        for x in self.lattice_points(1)? {
            let xr = x.to_rational();
            let mut inward: Vec<(f64, f64)> = Vec::new();
            for f in &facets {
                let y = f.normal.dot_rational(&xr);
                let sign = if y == f.lo {
                    1.0
                } else if y == f.hi {
                    -1.0
                } else {
                    continue;
                };
                let n0 = f.normal[0].to_f64().unwrap_or(f64::NAN);
                let n1 = f.normal[1].to_f64().unwrap_or(f64::NAN);
                inward.push((sign * n0, sign * n1));
            }
            total += match inward.as_slice() {
                [] => 1.0,
                [_] => 0.5,
                [a, b] => {
                    let between = (a.0 * b.1 - a.1 * b.0).abs().atan2(a.0 * b.0 + a.1 * b.1);
                    (PI - between) / (2.0 * PI)
                }
                _ => {
                    return Err(Error::Mismatch(format!(
                        "lattice point {x} lies on more than two edges"
                    )))
                }
            };
        }
        Ok(total)
    }
}

fn solve_integral(adj: &[Vec<i128>], det: i128, y: &[i64]) -> Option<Vec<i64>> {
    adj.iter()
        .map(|row| {
            let s: i128 = row.iter().zip(y).map(|(&a, &b)| a * b as i128).sum();
            (s % det == 0).then(|| (s / det) as i64)
        })
        .collect()
}

fn sign_normalize_i64(mut u: Vec<i64>) -> Vec<i64> {
    if u.iter().find(|&&a| a != 0).is_some_and(|&a| a < 0) {
        for a in &mut u {
            *a = -*a;
        }
    }
    u
}

/// Rational point from `(numerator, denominator)` pairs.
pub fn rational_point(xs: &[(i64, i64)]) -> Vec<BigRational> {
    xs.iter()
        .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect()
}
