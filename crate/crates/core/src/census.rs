//! Sweeps over families of small lattice zonotopes, cross-checking the
//! gcd-of-minors formula, brute-force counting, basis conversions, checkers,
//! and the 3D degree-2 classifier on every instance.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    check_hstar_zono2d, check_hstar_zono3d_deg2, check_zono2d, check_zono3d_deg2, classify_3d_deg2,
    exceptional_parallelepiped, map_c_to_hstar, Degree2Class,
};
use crate::document::{poly_to_strings, rationals_to_strings, ZonotopeDocument};
use crate::ehrhart::{
    degree_of, degree_via_dilates, ehrhart_oracle_verified, ehrhart_stanley,
    hstar_from_poly, hstar_via_eulerian, interior_count_reciprocity, to_cbasis,
};
use crate::error::{Error, Result};
use crate::linalg::IntVector;
use crate::poly::Poly;
use crate::zonotope::{rational_point, Zonotope};

/// Nonzero integer vectors with entries in `[-bound, bound]` whose first
/// nonzero entry is positive, in lexicographic order.
pub fn canonical_vectors(dim: usize, bound: i64) -> Vec<IntVector> {
    let side = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    for idx in 0..side.pow(dim as u32) {
        let mut rest = idx;
        let mut v = vec![0i64; dim];
        for k in (0..dim).rev() {
            v[k] = (rest % side) as i64 - bound;
            rest /= side;
        }
        if v.iter().find(|&&a| a != 0).is_some_and(|&a| a > 0) {
            out.push(IntVector::from_i64s(&v));
        }
    }
    out
}

/// All multisets of `k` elements of `0..n`, as non-decreasing index lists.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Canonical form of a generator list: each generator sign-normalized, then
/// sorted. Zonotopes with equal canonical forms agree up to a lattice translation.
pub fn canonicalize(generators: &[IntVector]) -> Vec<IntVector> {
    let mut g: Vec<IntVector> = generators
        .iter()
        .filter(|v| !v.is_zero())
        .map(IntVector::sign_normalized)
        .collect();
    g.sort();
    g
}

/// A family of generator lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Every canonical multiset of `min_generators..=max_generators` vectors
    /// with entries in `[-bound, bound]`.
    Exhaustive {
        dim: usize,
        bound: i64,
        min_generators: usize,
        max_generators: usize,
    },
    /// `count` seeded draws with `min_generators..=max_generators` nonzero
    /// vectors, entries uniform in `[-bound, bound]`.
    Random {
        dim: usize,
        bound: i64,
        min_generators: usize,
        max_generators: usize,
        count: usize,
        seed: u64,
    },
}

impl Family {
    pub fn exhaustive(dim: usize, bound: i64, max_generators: usize) -> Self {
        Family::Exhaustive {
            dim,
            bound,
            min_generators: 1,
            max_generators,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Family::Exhaustive { dim, .. } | Family::Random { dim, .. } => *dim,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Family::Exhaustive {
                dim,
                bound,
                min_generators,
                max_generators,
            } => format!("exhaustive-d{dim}-b{bound}-m{min_generators}..{max_generators}"),
            Family::Random {
                dim,
                bound,
                min_generators,
                max_generators,
                count,
                seed,
            } => format!("random-d{dim}-b{bound}-m{min_generators}..{max_generators}-n{count}-s{seed}"),
        }
    }

    /// Canonical generator lists; duplicates are kept for random families.
    pub fn instances(&self) -> Result<Vec<Vec<IntVector>>> {
        match *self {
            Family::Exhaustive {
                dim,
                bound,
                min_generators,
                max_generators,
            } => {
                check_family_args(dim, bound, min_generators, max_generators)?;
                let vectors = canonical_vectors(dim, bound);
                let mut out = Vec::new();
                for m in min_generators..=max_generators {
                    for idx in multisets(vectors.len(), m) {
                        out.push(idx.iter().map(|&i| vectors[i].clone()).collect());
                    }
                }
                Ok(out)
            }
            Family::Random {
                dim,
                bound,
                min_generators,
                max_generators,
                count,
                seed,
            } => {
                check_family_args(dim, bound, min_generators, max_generators)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok((0..count)
                    .map(|_| {
                        let m = rng.gen_range(min_generators..=max_generators);
                        let gens: Vec<IntVector> = (0..m)
                            .map(|_| loop {
                                let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
                                if v.iter().any(|&a| a != 0) {
                                    break IntVector::from_i64s(&v);
                                }
                            })
                            .collect();
                        canonicalize(&gens)
                    })
                    .collect())
            }
        }
    }
}

fn check_family_args(dim: usize, bound: i64, min_m: usize, max_m: usize) -> Result<()> {
    if !(1..=3).contains(&dim) {
        return Err(Error::arg(format!("census dimension must be 1, 2 or 3, got {dim}")));
    }
    if bound < 1 {
        return Err(Error::arg("entry bound must be at least 1"));
    }
    if min_m == 0 || min_m > max_m {
        return Err(Error::arg(format!("invalid generator range {min_m}..={max_m}")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub families: Vec<Family>,
    /// Per-instance, per-dilate cap on enumerated cells.
    pub budget: u128,
    /// Brute-force count dilates `0..=d+2` and compare with the gcd formula.
    pub oracle: bool,
}

/// One JSON-lines record per instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub family: String,
    pub key: String,
    pub zonotope: ZonotopeDocument,
    pub full_dimensional: bool,
    pub ehrhart: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hstar: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checker: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub instances: usize,
    pub full_dimensional: usize,
    pub oracle_checked: usize,
    pub violations: usize,
    pub families: BTreeMap<String, usize>,
    pub classes: BTreeMap<String, usize>,
    pub degrees: BTreeMap<String, usize>,
}

pub struct CensusOutcome {
    pub records: Vec<CensusRecord>,
    pub summary: CensusSummary,
}

impl CensusOutcome {
    pub fn violating(&self) -> impl Iterator<Item = &CensusRecord> {
        self.records.iter().filter(|r| !r.violations.is_empty())
    }
}

fn key_of(generators: &[IntVector]) -> String {
    generators.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Runs every instance of every family in parallel; records come back sorted
/// by `(family, key)` (stable, so repeated random draws keep their order). Fails with [`Error::BudgetExceeded`] before any work
/// if some instance would exceed the budget.
pub fn run_census(config: &CensusConfig) -> Result<CensusOutcome> {
    let mut jobs: Vec<(String, Zonotope)> = Vec::new();
    for family in &config.families {
        let name = family.name();
        for gens in family.instances()? {
            jobs.push((name.clone(), Zonotope::new(family.dim(), gens, None)?));
        }
    }
    let top = |z: &Zonotope| if config.oracle { z.dim() as u64 + 2 } else { 1 };
    if let Some(cells) = jobs
        .par_iter()
        .map(|(_, z)| z.enumeration_cells(top(z)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
    {
        if cells > config.budget {
            return Err(Error::BudgetExceeded {
                cells,
                budget: config.budget,
            });
        }
    }
    let mut records = jobs
        .par_iter()
        .map(|(family, z)| check_instance(family, z, config))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| (&a.family, &a.key).cmp(&(&b.family, &b.key)));
    let mut summary = CensusSummary::default();
    for r in &records {
        summary.instances += 1;
        summary.full_dimensional += r.full_dimensional as usize;
        summary.oracle_checked += r.oracle.is_some() as usize;
        summary.violations += !r.violations.is_empty() as usize;
        *summary.families.entry(r.family.clone()).or_default() += 1;
        if let Some(c) = &r.class {
            *summary.classes.entry(c.clone()).or_default() += 1;
        }
        if let Some(d) = r.degree {
            *summary.degrees.entry(format!("d{}-deg{d}", r.zonotope.dim)).or_default() += 1;
        }
    }
    Ok(CensusOutcome { records, summary })
}

/// All per-instance checks. Only budget errors abort; every other failure
/// becomes a violation string.
pub fn check_instance(family: &str, z: &Zonotope, config: &CensusConfig) -> Result<CensusRecord> {
    let d = z.dim();
    let mut violations = Vec::new();
    let mut note = |msg: String| violations.push(msg);
    let stanley = ehrhart_stanley(z)?;
    let mut record = CensusRecord {
        family: family.to_string(),
        key: key_of(z.generator_list()),
        zonotope: ZonotopeDocument::from_zonotope(z)?,
        full_dimensional: z.is_full_dimensional(),
        ehrhart: poly_to_strings(&stanley, d + 1),
        oracle: None,
        c: None,
        hstar: None,
        degree: None,
        interior: None,
        checker: None,
        class: None,
        violations: Vec::new(),
    };
    if config.oracle {
        match ehrhart_oracle_verified(z, config.budget) {
            Ok(p) => {
                if p != stanley {
                    note(format!("oracle {p} != formula {stanley}"));
                }
                record.oracle = Some(poly_to_strings(&p, d + 1));
            }
            Err(e @ Error::BudgetExceeded { .. }) => return Err(e),
            Err(e) => note(format!("oracle: {e}")),
        }
    }
    if record.full_dimensional {
        match full_dimensional_checks(z, &stanley, config.budget, &mut record) {
            Ok(found) => found.into_iter().for_each(&mut note),
            Err(e @ Error::BudgetExceeded { .. }) => return Err(e),
            Err(e) => note(e.to_string()),
        }
    }
    record.violations = violations;
    Ok(record)
}

fn full_dimensional_checks(
    z: &Zonotope,
    p: &Poly,
    budget: u128,
    record: &mut CensusRecord,
) -> Result<Vec<String>> {
    let d = z.dim();
    let mut v = Vec::new();
    let c = to_cbasis(p, d)?;
    let h = hstar_from_poly(p, d)?;
    record.c = Some(rationals_to_strings(&c.c));
    record.hstar = Some(rationals_to_strings(&h.h));
    if !c.is_valid() {
        v.push(format!("c-vector {:?} is not a nonnegative integer vector", rationals_to_strings(&c.c)));
    }
    if !h.is_valid() {
        v.push(format!("h* {:?} is not a nonnegative integer vector", rationals_to_strings(&h.h)));
    }
    let via = hstar_via_eulerian(&c)?;
    if via != h {
        v.push(format!("Eulerian h* {:?} != converted h*", rationals_to_strings(&via.h)));
    }
    let degree = degree_of(p, d)?;
    record.degree = Some(degree);
    let by_dilates = degree_via_dilates(z, budget)?;
    if by_dilates != degree {
        v.push(format!("degree {degree} != degree from dilates {by_dilates}"));
    }
    if degree + 1 < d {
        v.push(format!("degree {degree} below d - 1"));
    }
    let interior = BigInt::from(z.count_interior_lattice_points(1, budget)?);
    record.interior = Some(interior.to_string());
    if interior_count_reciprocity(p)? != interior {
        v.push(format!("reciprocity disagrees with {interior} interior points"));
    }
    if c.last() != BigRational::from_integer(interior.clone()) {
        v.push(format!("c_d = {} != interior count {interior}", c.last()));
    }
    match d {
        2 => {
            let verdict = check_zono2d(&c.c[0], &c.c[1]);
            record.checker = Some(verdict_tag(&verdict.accepted));
            if !verdict.accepted {
                v.push(format!("zono2d rejects: {}", verdict.reason.unwrap_or_default()));
            }
            let (h1, h2) = map_c_to_hstar(&c.c, 2)?;
            if [h1.clone(), h2.clone()] != h.h[1..] {
                v.push("c -> h* map disagrees with h*".to_string());
            }
            let hv = check_hstar_zono2d(&h1, &h2);
            if hv.accepted != verdict.accepted {
                v.push("hstar2d verdict differs from zono2d".to_string());
            }
        }
        3 => {
            let c3_zero = c.c[2].is_zero();
            if c3_zero == interior.is_positive() {
                v.push(format!("c3 = {} but interior count {interior}", c.c[2]));
            }
            if c3_zero {
                let verdict = check_zono3d_deg2(&c.c[0], &c.c[1], &c.c[2]);
                record.checker = Some(verdict_tag(&verdict.accepted));
                if !verdict.accepted {
                    v.push(format!("zono3d-deg2 rejects: {}", verdict.reason.unwrap_or_default()));
                }
                let (h1, h2) = map_c_to_hstar(&c.c, 3)?;
                if [BigRational::one(), h1.clone(), h2.clone(), BigRational::zero()] != h.h[..] {
                    v.push("c -> h* map disagrees with h*".to_string());
                }
                if !check_hstar_zono3d_deg2(&h1, &h2).accepted {
                    v.push("hstar3d-deg2 rejects h*".to_string());
                }
            }
            let cls = classify_3d_deg2(z, budget)?;
            record.class = Some(cls.class.label().to_string());
            if (degree == 2) == matches!(cls.class, Degree2Class::NotDegree2 { .. }) {
                v.push(format!("class {} for degree {degree}", cls.class.label()));
            }
            v.extend(class_checks(&cls.zonotope, &cls.class, budget)?);
        }
        _ => {}
    }
    Ok(v)
}

fn verdict_tag(accepted: &bool) -> String {
    if *accepted { "accepted" } else { "rejected" }.to_string()
}

/// Width-1 products satisfy `ehr(Z) = (n+1) ehr(Q)`; exceptional maps are
/// unimodular and biject lattice points.
pub fn class_checks(z: &Zonotope, class: &Degree2Class, budget: u128) -> Result<Vec<String>> {
    let mut v = Vec::new();
    match class {
        Degree2Class::Width1Product(dec) => {
            let lhs = ehrhart_stanley(z)?;
            let rhs = &Poly::from_i64s(&[1, 1]) * &ehrhart_stanley(&dec.factor)?;
            if lhs != rhs {
                v.push(format!("width-1 product: {lhs} != (n+1)({})", ehrhart_stanley(&dec.factor)?));
            }
            if !dec.transform.is_unimodular() {
                v.push("width-1 transform is not unimodular".to_string());
            }
            let image = z.transformed(&dec.transform, &dec.shift)?;
            if !same_lattice_points(&image, &dec.product(), budget)? {
                v.push("width-1 transform does not map onto Q x [0,1]".to_string());
            }
        }
        Degree2Class::Exceptional(eq) => {
            if !eq.transform.is_unimodular() {
                v.push("exceptional transform is not unimodular".to_string());
            }
            let image = z.transformed(&eq.transform, &eq.shift)?;
            if !same_lattice_points(&image, &exceptional_parallelepiped(), budget)? {
                v.push("exceptional transform does not biject lattice points".to_string());
            }
        }
        Degree2Class::NotDegree2 { .. } => {}
    }
    Ok(v)
}

fn same_lattice_points(a: &Zonotope, b: &Zonotope, budget: u128) -> Result<bool> {
    let mut pa = a.lattice_points_with_budget(1, budget)?;
    let mut pb = b.lattice_points_with_budget(1, budget)?;
    pa.sort();
    pb.sort();
    Ok(pa == pb)
}

/// Offsets `(i/k, j/k)` for `0 <= i, j < k`.
pub fn offset_grid(k: i64) -> Vec<Vec<BigRational>> {
    (0..k)
        .flat_map(|i| (0..k).map(move |j| rational_point(&[(i, k), (j, k)])))
        .collect()
}

/// Largest `|solid-angle sum - area|` over the offsets, for a 2D zonotope.
pub fn solid_angle_defect(z: &Zonotope, offsets: &[Vec<BigRational>]) -> Result<f64> {
    let area = z.volume()?.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let mut worst: f64 = 0.0;
    for t in offsets {
        let s = z.translated(t)?.solid_angle_sum_2d()?;
        worst = worst.max((s - area).abs());
    }
    Ok(worst)
}

/// Offsets at which the translated zonotope has no interior lattice point.
pub fn offsets_without_interior_point(
    z: &Zonotope,
    offsets: &[Vec<BigRational>],
    budget: u128,
) -> Result<Vec<Vec<BigRational>>> {
    let mut out = Vec::new();
    for t in offsets {
        if !z.translated(t)?.has_interior_lattice_point(1, budget)? {
            out.push(t.clone());
        }
    }
    Ok(out)
}

/// Whether no two generators are parallel and there are at least three.
pub fn has_three_independent_directions(z: &Zonotope) -> bool {
    z.num_generators() >= 3 && !z.has_parallel_generators()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zonotope::DEFAULT_CELL_BUDGET;

    #[test]
    fn vector_counts() {
        assert_eq!(canonical_vectors(2, 3).len(), 24);
        assert_eq!(canonical_vectors(3, 1).len(), 13);
        assert_eq!(canonical_vectors(1, 2), vec![IntVector::from_i64s(&[1]), IntVector::from_i64s(&[2])]);
        assert_eq!(multisets(3, 2).len(), 6);
        let fam = Family::exhaustive(2, 3, 3);
        assert_eq!(fam.instances().unwrap().len(), 24 + 300 + 2600);
    }

    #[test]
    fn canonical_form() {
        let g = canonicalize(&[IntVector::from_i64s(&[0, -1]), IntVector::from_i64s(&[-2, 1])]);
        assert_eq!(g, vec![IntVector::from_i64s(&[0, 1]), IntVector::from_i64s(&[2, -1])]);
    }

    #[test]
    fn random_family_is_seeded() {
        let fam = |seed| Family::Random {
            dim: 3,
            bound: 3,
            min_generators: 3,
            max_generators: 4,
            count: 5,
            seed,
        };
        assert_eq!(fam(7).instances().unwrap(), fam(7).instances().unwrap());
        assert_ne!(fam(7).instances().unwrap(), fam(8).instances().unwrap());
    }

    #[test]
    fn small_census_is_clean() {
        let config = CensusConfig {
            families: vec![Family::exhaustive(2, 1, 3), Family::exhaustive(3, 1, 3)],
            budget: DEFAULT_CELL_BUDGET,
            oracle: true,
        };
        let out = run_census(&config).unwrap();
        assert_eq!(out.summary.violations, 0, "{:?}", out.violating().next());
        assert_eq!(out.summary.instances, 4 + 10 + 20 + 13 + 91 + 455);
        assert!(out.summary.classes.contains_key("Width1Product"));
    }

    #[test]
    fn census_budget() {
        let config = CensusConfig {
            families: vec![Family::exhaustive(2, 1, 2)],
            budget: 10,
            oracle: true,
        };
        assert!(matches!(run_census(&config), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn grid_helpers() {
        let hexagon = Zonotope::from_i64s(2, &[&[1, 0], &[0, 2], &[1, 2]]).unwrap();
        let grid = offset_grid(7);
        assert_eq!(grid.len(), 49);
        assert!(solid_angle_defect(&hexagon, &grid).unwrap() < 1e-9);
        assert!(offsets_without_interior_point(&hexagon, &grid, DEFAULT_CELL_BUDGET)
            .unwrap()
            .is_empty());
        let square = Zonotope::from_i64s(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(offsets_without_interior_point(&square, &grid, DEFAULT_CELL_BUDGET).unwrap().len(), 13);
    }
}
