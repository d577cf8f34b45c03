//! Coefficient checkers, coefficient-space maps, realizers, and the
//! classifier of 3-dimensional degree-2 lattice zonotopes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ehrhart::{degree_of, ehrhart_stanley};
use crate::error::{Error, Result};
use crate::linalg::{is_primitive, IntMatrix, IntVector};
use crate::zonotope::{Width1Decomposition, Zonotope};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn half(x: i64) -> BigRational {
    BigRational::new(BigInt::from(x), BigInt::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Zonotope(Zonotope),
    /// Image of the input under the scheme's coefficient map.
    Coefficients(Vec<BigRational>),
}

/// Outcome of a checker. Accepted verdicts carry `case_label`, rejected ones
/// carry `reason`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub case_label: Option<String>,
    pub witness: Option<Witness>,
    pub reason: Option<String>,
}

impl Verdict {
    pub fn accept(label: impl Into<String>) -> Self {
        Verdict {
            accepted: true,
            case_label: Some(label.into()),
            witness: None,
            reason: None,
        }
    }

    pub fn reject(reason: impl Into<String>) -> Self {
        Verdict {
            accepted: false,
            case_label: None,
            witness: None,
            reason: Some(reason.into()),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }
}

/// The six checkers, by CLI name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Scott,
    Treutlein,
    Zono2d,
    Zono3dDeg2,
    HStar2d,
    HStar3dDeg2,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Scott,
        Scheme::Treutlein,
        Scheme::Zono2d,
        Scheme::Zono3dDeg2,
        Scheme::HStar2d,
        Scheme::HStar3dDeg2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Scott => "scott",
            Scheme::Treutlein => "treutlein",
            Scheme::Zono2d => "zono2d",
            Scheme::Zono3dDeg2 => "zono3d-deg2",
            Scheme::HStar2d => "hstar2d",
            Scheme::HStar3dDeg2 => "hstar3d-deg2",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Scheme::Zono3dDeg2 => 3,
            _ => 2,
        }
    }

    /// Runs the checker on `args` (length must equal [`Scheme::arity`]).
    /// `strict_treutlein` adds `h2 <= h1` to the Treutlein checker.
    pub fn check(self, args: &[BigRational], strict_treutlein: bool) -> Result<Verdict> {
        if args.len() != self.arity() {
            return Err(Error::arg(format!(
                "scheme {} takes {} coefficients, got {}",
                self.name(),
                self.arity(),
                args.len()
            )));
        }
        Ok(match self {
            Scheme::Scott => check_scott(&args[0], &args[1]),
            Scheme::Treutlein => check_treutlein(&args[0], &args[1], strict_treutlein),
            Scheme::Zono2d => check_zono2d(&args[0], &args[1]),
            Scheme::Zono3dDeg2 => check_zono3d_deg2(&args[0], &args[1], &args[2]),
            Scheme::HStar2d => check_hstar_zono2d(&args[0], &args[1]),
            Scheme::HStar3dDeg2 => check_hstar_zono3d_deg2(&args[0], &args[1]),
        })
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Scheme::ALL.iter().map(|k| k.name()).collect();
                Error::arg(format!("unknown scheme {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Runs the checker and, for accepted coefficient vectors that come from
/// zonotopes, attaches a realizing zonotope; otherwise the image under the
/// scheme's coefficient map when there is one.
pub fn check_with_witness(scheme: Scheme, args: &[BigRational], strict_treutlein: bool) -> Result<Verdict> {
    let verdict = scheme.check(args, strict_treutlein)?;
    if !verdict.accepted {
        return Ok(verdict);
    }
    let int = |x: &BigRational| x.to_integer();
    let witness = match scheme {
        Scheme::Zono2d => Some(Witness::Zonotope(realize_2d(&int(&args[0]), &int(&args[1]))?)),
        Scheme::Zono3dDeg2 => Some(Witness::Zonotope(realize_3d_deg2(&int(&args[0]), &int(&args[1]), false)?)),
        Scheme::HStar2d | Scheme::HStar3dDeg2 => {
            let d = if scheme == Scheme::HStar2d { 2 } else { 3 };
            let c = inverse_map_hstar_to_c(&args[0], &args[1], d)?;
            Some(Witness::Zonotope(if d == 2 {
                realize_2d(&int(&c[0]), &int(&c[1]))?
            } else {
                realize_3d_deg2(&int(&c[0]), &int(&c[1]), false)?
            }))
        }
        Scheme::Scott => {
            let (c1, c2) = inverse_map_e_to_c_2d(&args[0], &args[1]);
            if check_zono2d(&c1, &c2).accepted {
                Some(Witness::Zonotope(realize_2d(&int(&c1), &int(&c2))?))
            } else {
                None
            }
        }
        Scheme::Treutlein => None,
    };
    Ok(match witness {
        Some(w) => verdict.with_witness(w),
        None => verdict,
    })
}

/// Checks that every named value is a nonnegative integer.
fn require_nonneg_integers(values: &[(&str, &BigRational)]) -> std::result::Result<(), String> {
    for (name, v) in values {
        if !v.is_integer() {
            return Err(format!("{name} = {v} is not an integer"));
        }
        if v.is_negative() {
            return Err(format!("{name} = {v} is negative"));
        }
    }
    Ok(())
}

/// Area and boundary data `(e1, e2)` of `1 + e1 n + e2 n^2` for lattice polygons.
pub fn check_scott(e1: &BigRational, e2: &BigRational) -> Verdict {
    for (name, v) in [("e1", e1), ("e2", e2)] {
        if !(v * rat(2)).is_integer() {
            return Verdict::reject(format!("{name} = {v} is not a half-integer"));
        }
        if !v.is_positive() {
            return Verdict::reject(format!("{name} = {v} is not positive"));
        }
    }
    if *e2 == e1 - rat(1) {
        return Verdict::accept("Scott-(i)");
    }
    if *e1 < e2 + rat(1) && half(3) <= *e1 && *e1 <= e2 / rat(2) + rat(2) {
        return Verdict::accept("Scott-(ii)");
    }
    if *e1 == half(9) && *e2 == half(9) {
        return Verdict::accept("Scott-(iii)");
    }
    Verdict::reject(format!(
        "no clause holds: e2 != e1 - 1, not (e1 < e2 + 1 and 3/2 <= e1 <= e2/2 + 2), (e1, e2) != (9/2, 9/2) for ({e1}, {e2})"
    ))
}

/// `h*`-coefficients of a degree-at-most-2 lattice polytope; with
/// `enforce_dim2_bound` also `h2 <= h1`.
pub fn check_treutlein(h1: &BigRational, h2: &BigRational, enforce_dim2_bound: bool) -> Verdict {
    if let Err(reason) = require_nonneg_integers(&[("h1", h1), ("h2", h2)]) {
        return Verdict::reject(reason);
    }
    if enforce_dim2_bound && h2 > h1 {
        return Verdict::reject(format!("h2 = {h2} exceeds h1 = {h1}"));
    }
    if h2.is_zero() {
        return Verdict::accept("Treutlein-(i)");
    }
    if !h1.is_negative() && *h1 <= h2 * rat(3) + rat(3) {
        return Verdict::accept("Treutlein-(ii)");
    }
    if *h1 == rat(7) && h2.is_one() {
        return Verdict::accept("Treutlein-(iii)");
    }
    Verdict::reject(format!(
        "no clause holds: h2 != 0, h1 = {h1} > 3 h2 + 3 = {}, (h1, h2) != (7, 1)",
        h2 * rat(3) + rat(3)
    ))
}

fn c_inequality(c1: &BigRational, c2: &BigRational) -> Option<&'static str> {
    if c2.is_zero() {
        Some("c2 = 0")
    } else if *c2 >= c1 - rat(1) {
        Some("c2 >= c1 - 1")
    } else {
        None
    }
}

/// `c`-vector of a lattice zonogon.
pub fn check_zono2d(c1: &BigRational, c2: &BigRational) -> Verdict {
    if let Err(reason) = require_nonneg_integers(&[("c1", c1), ("c2", c2)]) {
        return Verdict::reject(reason);
    }
    match c_inequality(c1, c2) {
        Some(clause) => Verdict::accept(format!("zono2d: {clause}")),
        None => Verdict::reject(format!("c2 = {c2} < c1 - 1 = {} and c2 != 0", c1 - rat(1))),
    }
}

/// `c`-vector of a 3-dimensional lattice zonotope of degree 2.
pub fn check_zono3d_deg2(c1: &BigRational, c2: &BigRational, c3: &BigRational) -> Verdict {
    if let Err(reason) = require_nonneg_integers(&[("c1", c1), ("c2", c2)]) {
        return Verdict::reject(reason);
    }
    if !c3.is_zero() {
        return Verdict::reject(format!("c3 = {c3} is not 0"));
    }
    match c_inequality(c1, c2) {
        Some(clause) => Verdict::accept(format!("zono3d-deg2: {clause}")),
        None => Verdict::reject(format!("c2 = {c2} < c1 - 1 = {} and c2 != 0", c1 - rat(1))),
    }
}

/// `(h1, h2)` of the `h*`-polynomial of a lattice zonogon.
pub fn check_hstar_zono2d(h1: &BigRational, h2: &BigRational) -> Verdict {
    if let Err(reason) = require_nonneg_integers(&[("h1", h1), ("h2", h2)]) {
        return Verdict::reject(reason);
    }
    let diff = (h1 - h2).to_integer();
    if diff.is_even() {
        return Verdict::reject(format!("parity: h1 - h2 = {diff} is even"));
    }
    if h2 + rat(1) > *h1 {
        return Verdict::reject(format!("h2 + 1 = {} exceeds h1 = {h1}", h2 + rat(1)));
    }
    if h2.is_zero() {
        return Verdict::accept("hstar2d: h2 = 0");
    }
    if *h1 <= h2 * rat(3) + rat(3) {
        return Verdict::accept("hstar2d: h1 <= 3 h2 + 3");
    }
    Verdict::reject(format!(
        "h1 = {h1} > 3 h2 + 3 = {} and h2 != 0",
        h2 * rat(3) + rat(3)
    ))
}

/// `(h1, h2)` of the `h*`-polynomial of a 3-dimensional degree-2 lattice zonotope.
pub fn check_hstar_zono3d_deg2(h1: &BigRational, h2: &BigRational) -> Verdict {
    if let Err(reason) = require_nonneg_integers(&[("h1", h1), ("h2", h2)]) {
        return Verdict::reject(reason);
    }
    let (a, b) = (h1.to_integer(), h2.to_integer());
    let six = BigInt::from(6);
    let r1 = (&a * 2u32 - &b).mod_floor(&six);
    if r1 != BigInt::one() {
        return Verdict::reject(format!("residue 2h1-h2 = {r1} mod 6, expected 1"));
    }
    let r2 = (&b * 2u32 - &a).mod_floor(&six);
    if r2 != BigInt::from(4) {
        return Verdict::reject(format!("residue 2h2-h1 = {r2} mod 6, expected 4"));
    }
    if h1 / rat(2) - rat(1) > *h2 {
        return Verdict::reject(format!("h2 = {h2} < h1/2 - 1 = {}", h1 / rat(2) - rat(1)));
    }
    if *h2 > h1 * rat(2) - rat(7) {
        return Verdict::reject(format!("h2 = {h2} > 2h1 - 7 = {}", h1 * rat(2) - rat(7)));
    }
    if *h2 >= h1 - rat(5) {
        return Verdict::accept("hstar3d-deg2: h2 >= h1 - 5");
    }
    if h2 * rat(2) == h1 - rat(2) {
        return Verdict::accept("hstar3d-deg2: 2h2 = h1 - 2");
    }
    Verdict::reject(format!("h2 = {h2} < h1 - 5 and 2h2 != h1 - 2"))
}

/// `(c1, c2) -> (e1, e2) = (2 + c1, 1 + c1 + c2)`: monomial coefficients of
/// `(n+1)^2 + c1 (n+1) n + c2 n^2`.
pub fn map_c_to_e_2d(c1: &BigRational, c2: &BigRational) -> (BigRational, BigRational) {
    (c1 + rat(2), c1 + c2 + rat(1))
}

pub fn inverse_map_e_to_c_2d(e1: &BigRational, e2: &BigRational) -> (BigRational, BigRational) {
    (e1 - rat(2), e2 - e1 + rat(1))
}

/// `(c1, c2) -> (h1, h2)` for `d = 2` and, with `c3 = 0`, for `d = 3`.
pub fn map_c_to_hstar(c: &[BigRational], d: usize) -> Result<(BigRational, BigRational)> {
    match (d, c) {
        (2, [c1, c2]) => Ok((rat(1) + c1 * rat(2) + c2, c2.clone())),
        (3, [c1, c2, c3]) if c3.is_zero() => Ok((
            rat(4) + c1 * rat(4) + c2 * rat(2),
            rat(1) + c1 * rat(2) + c2 * rat(4),
        )),
        (3, [_, _, c3]) => Err(Error::arg(format!("c3 = {c3} must be 0"))),
        (2 | 3, _) => Err(Error::DimensionMismatch {
            expected: d,
            found: c.len(),
        }),
        _ => Err(Error::arg(format!("coefficient maps exist for d = 2, 3, got {d}"))),
    }
}

/// Inverse of [`map_c_to_hstar`]; for `d = 3` the result includes `c3 = 0`.
pub fn inverse_map_hstar_to_c(h1: &BigRational, h2: &BigRational, d: usize) -> Result<Vec<BigRational>> {
    match d {
        2 => Ok(vec![(h1 - h2 - rat(1)) / rat(2), h2.clone()]),
        3 => Ok(vec![
            (h1 * rat(2) - h2 - rat(7)) / rat(6),
            (h2 * rat(2) - h1 + rat(2)) / rat(6),
            BigRational::zero(),
        ]),
        _ => Err(Error::arg(format!("coefficient maps exist for d = 2, 3, got {d}"))),
    }
}

fn small_c(c1: &BigInt, c2: &BigInt) -> Result<(i64, i64)> {
    match (c1.to_i64(), c2.to_i64()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Overflow(format!("({c1}, {c2})"))),
    }
}

/// A lattice zonogon with `c`-vector `(c1, c2)`.
pub fn realize_2d(c1: &BigInt, c2: &BigInt) -> Result<Zonotope> {
    let v = check_zono2d(&BigRational::from_integer(c1.clone()), &BigRational::from_integer(c2.clone()));
    if !v.accepted {
        return Err(Error::Inadmissible(v.reason.unwrap_or_default()));
    }
    let (a, b) = small_c(c1, c2)?;
    if b == 0 {
        Zonotope::from_i64s(2, &[&[1, 0], &[0, a + 1]])
    } else {
        Zonotope::from_i64s(2, &[&[1, 0], &[0, a], &[1, 1 - a + b]])
    }
}

/// A 3-dimensional degree-2 lattice zonotope with `c`-vector `(c1, c2, 0)`:
/// the lift of [`realize_2d`] times a unit segment, or for `(0, 3)` with
/// `exceptional_witness` the exceptional parallelepiped.
pub fn realize_3d_deg2(c1: &BigInt, c2: &BigInt, exceptional_witness: bool) -> Result<Zonotope> {
    let v = check_zono3d_deg2(
        &BigRational::from_integer(c1.clone()),
        &BigRational::from_integer(c2.clone()),
        &BigRational::zero(),
    );
    if !v.accepted {
        return Err(Error::Inadmissible(v.reason.unwrap_or_default()));
    }
    if exceptional_witness && c1.is_zero() && *c2 == BigInt::from(3) {
        return Ok(exceptional_parallelepiped());
    }
    let q = realize_2d(c1, c2)?;
    let mut gens: Vec<IntVector> = q
        .generator_list()
        .iter()
        .map(|g| {
            let mut e = g.entries().to_vec();
            e.push(BigInt::zero());
            IntVector::new(e)
        })
        .collect();
    gens.push(IntVector::unit(3, 2));
    Zonotope::new(3, gens, None)
}

pub fn exceptional_generators() -> [IntVector; 3] {
    [
        IntVector::from_i64s(&[1, 1, 0]),
        IntVector::from_i64s(&[-1, 1, 0]),
        IntVector::from_i64s(&[1, 1, 2]),
    ]
}

/// `Z([1,1,0], [-1,1,0], [1,1,2])`.
pub fn exceptional_parallelepiped() -> Zonotope {
    Zonotope::new(3, exceptional_generators().to_vec(), None).expect("fixed 3D generators")
}

/// `x -> transform x + shift` maps the zonotope onto the exceptional
/// parallelepiped; `order[i]` is the input generator sent to `+-v_{i+1}`.
#[derive(Clone, Debug)]
pub struct ExceptionalEquivalence {
    pub transform: IntMatrix,
    pub shift: IntVector,
    pub order: [usize; 3],
}

#[derive(Clone, Debug)]
pub enum Degree2Class {
    Width1Product(Width1Decomposition),
    Exceptional(ExceptionalEquivalence),
    NotDegree2 { reason: String },
}

impl Degree2Class {
    pub fn label(&self) -> &'static str {
        match self {
            Degree2Class::Width1Product(_) => "Width1Product",
            Degree2Class::Exceptional(_) => "Exceptional",
            Degree2Class::NotDegree2 { .. } => "NotDegree2",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// The zonotope after merging parallel generators; maps refer to it.
    pub zonotope: Zonotope,
    /// Whether merging changed the generator list.
    pub merged: bool,
    pub class: Degree2Class,
}

/// Decides whether a full-dimensional 3D lattice zonotope has degree 2, and
/// if so whether it is a lattice-width-1 product `Q x [0,1]` or unimodularly
/// equivalent to [`exceptional_parallelepiped`].
pub fn classify_3d_deg2(z: &Zonotope, budget: u128) -> Result<Classification> {
    if z.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: z.dim(),
        });
    }
    if !z.is_full_dimensional() {
        return Err(Error::Degenerate {
            rank: z.rank(),
            dim: 3,
        });
    }
    if !z.has_lattice_translate() {
        return Err(Error::NonLatticeTranslate);
    }
    let merged = z.merged_parallel();
    let changed = merged.generator_list() != z.generator_list() || merged.translate() != z.translate();
    let has_interior = merged.has_interior_lattice_point(1, budget)?;
    let degree = degree_of(&ehrhart_stanley(&merged)?, 3)?;
    if has_interior == (degree == 2) {
        return Err(Error::ClassificationContradiction(format!(
            "h*-degree {degree} disagrees with interior test (interior nonempty: {has_interior})"
        )));
    }
    let class = if has_interior {
        Degree2Class::NotDegree2 {
            reason: "interior lattice point exists, so the degree is 3".to_string(),
        }
    } else if let Some(dec) = merged.width1_decomposition()? {
        Degree2Class::Width1Product(dec)
    } else {
        Degree2Class::Exceptional(exceptional_equivalence(&merged)?)
    };
    Ok(Classification {
        zonotope: merged,
        merged: changed,
        class,
    })
}

/// Builds the equivalence for a merged, empty-interior zonotope of lattice
/// width at least 2.
fn exceptional_equivalence(z: &Zonotope) -> Result<ExceptionalEquivalence> {
    let gens = z.generator_list();
    if gens.len() != 3 {
        return Err(Error::ClassificationContradiction(format!(
            "degree-2 zonotope without width-1 direction has {} merged generators, expected 3",
            gens.len()
        )));
    }
    if let Some(g) = gens.iter().find(|g| !is_primitive(g)) {
        return Err(Error::ClassificationContradiction(format!(
            "generator {g} is not primitive"
        )));
    }
    let t = z.lattice_translate().ok_or(Error::NonLatticeTranslate)?;
    let target = IntMatrix::from_rows_i64(&[&[1, 0, 1], &[1, 1, 1], &[0, 0, 1]])?;
    let expected = exceptional_generators();
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for order in ORDERS {
        for signs in 0..8u8 {
            let v: Vec<IntVector> = (0..3)
                .map(|i| {
                    let g = &gens[order[i]];
                    if signs >> i & 1 == 1 {
                        g.negated()
                    } else {
                        g.clone()
                    }
                })
                .collect();
            let (s12, s13) = (v[0].plus(&v[1]), v[0].plus(&v[2]));
            if s12.entries().iter().chain(s13.entries()).any(|x| x.is_odd()) {
                continue;
            }
            let two = BigInt::from(2);
            let halve = |w: &IntVector| IntVector::new(w.entries().iter().map(|x| x / &two).collect());
            let b = IntMatrix::from_columns(3, vec![v[0].clone(), halve(&s12), halve(&s13)])?;
            let det = b.determinant()?;
            if !det.abs().is_one() {
                continue;
            }
            let inverse = IntMatrix::from_columns(
                3,
                b.adjugate()?
                    .columns()
                    .iter()
                    .map(|c| c.scaled(&det))
                    .collect(),
            )?;
            let transform = target.mul(&inverse);
            // Z(-w) = Z(w) - w: flipped generators move the image by their image.
            let mut shift = transform.mul_vec(&t).negated();
            for (i, e) in expected.iter().enumerate() {
                debug_assert_eq!(transform.mul_vec(&v[i]), *e);
                if signs >> i & 1 == 1 {
                    shift = shift.plus(e);
                }
            }
            return Ok(ExceptionalEquivalence {
                transform,
                shift,
                order,
            });
        }
    }
    Err(Error::ClassificationContradiction(
        "no generator labelling yields a unimodular map onto the exceptional parallelepiped".to_string(),
    ))
}
