//! Ehrhart polynomials of lattice zonotopes and their coordinates in the
//! `c`-basis `{(n+1)^{d-j} n^j}` and the `h*`-basis `{C(n+d-i, d)}`.
//!
//! The polynomial itself comes from two independent routes: the
//! gcd-of-minors sum over linearly independent generator subsets
//! ([`ehrhart_stanley`]) and interpolation through brute-force lattice-point
//! counts ([`ehrhart_oracle`]).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{gcd_of_minors, independent_subsets};
use crate::poly::Poly;
use crate::zonotope::Zonotope;

/// Largest `d` accepted by the permutation enumeration in [`eulerian_aj`].
pub const EULERIAN_MAX_DIM: usize = 9;

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn is_nonnegative_integer(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}

/// `sum_I g(I) n^{|I|}` over linearly independent generator subsets `I`, where
/// `g(I)` is the gcd of the maximal minors of the columns in `I` (`g(empty) = 1`).
pub fn ehrhart_stanley(z: &Zonotope) -> Result<Poly> {
    if !z.has_lattice_translate() {
        return Err(Error::NonLatticeTranslate);
    }
    let m = z.generators();
    let mut coeffs = vec![BigInt::zero(); z.dim() + 1];
    for subset in independent_subsets(m) {
        let k = subset.len();
        if k == 0 {
            coeffs[0] += 1;
        } else {
            coeffs[k] += gcd_of_minors(&m.select_columns(&subset), k)?;
        }
    }
    Ok(Poly::from_bigints(coeffs))
}

/// Newton forward-difference interpolation through `(k, values[k])`,
/// `k = 0..values.len()`.
pub fn interpolate(values: &[BigRational]) -> Poly {
    let mut diffs = values.to_vec();
    let mut result = Poly::zero();
    // binomial(n, j) as a polynomial
    let mut basis = Poly::one();
    for j in 0..values.len() {
        result = &result + &basis.scale(&diffs[0]);
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
        let next = Poly::linear(-rat(j as i64));
        basis = (&basis * &next).scale(&BigRational::new(BigInt::one(), BigInt::from(j + 1)));
    }
    result
}

/// Lattice-point counts of `n Z` for `n = 0..=max_n`.
pub fn dilate_counts(z: &Zonotope, max_n: u64, budget: u128) -> Result<Vec<u64>> {
    (0..=max_n).map(|n| z.count_lattice_points(n, budget)).collect()
}

/// Ehrhart polynomial by counting lattice points in the dilates `0..=d` and
/// interpolating exactly.
pub fn ehrhart_oracle(z: &Zonotope, budget: u128) -> Result<Poly> {
    let counts = dilate_counts(z, z.dim() as u64, budget)?;
    Ok(interpolate(
        &counts.iter().map(|&c| rat(c as i64)).collect::<Vec<_>>(),
    ))
}

/// [`ehrhart_oracle`] with two extra dilates that must fit the same
/// polynomial exactly.
pub fn ehrhart_oracle_verified(z: &Zonotope, budget: u128) -> Result<Poly> {
    let d = z.dim() as u64;
    let counts = dilate_counts(z, d + 2, budget)?;
    let values: Vec<BigRational> = counts.iter().map(|&c| rat(c as i64)).collect();
    let p = interpolate(&values[..=d as usize]);
    for (n, v) in values.iter().enumerate().skip(d as usize + 1) {
        let predicted = p.eval_int(n as i64);
        if &predicted != v {
            return Err(Error::Mismatch(format!(
                "dilate {n}: counted {v} lattice points, interpolant predicts {predicted}"
            )));
        }
    }
    Ok(p)
}

/// Solves `sum_j x_j basis[j] = target` exactly; `basis` must consist of
/// `size` polynomials of degree `< size` that form a basis.
fn solve_in_basis(basis: &[Poly], target: &Poly, size: usize) -> Vec<BigRational> {
    // augmented matrix: rows = monomial coefficients, columns = basis elements
    let mut a: Vec<Vec<BigRational>> = (0..size)
        .map(|k| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b.coeff(k)).collect();
            row.push(target.coeff(k));
            row
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !a[r][col].is_zero())
            .expect("basis matrix is invertible");
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..size {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=size {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[size].clone()).collect()
}

/// The `c`-basis element `(n+1)^{d-j} n^j`.
pub fn cbasis_element(d: usize, j: usize) -> Poly {
    &Poly::from_i64s(&[1, 1]).pow(d - j) * &Poly::monomial(j)
}

/// Coordinates `(c_1, ..., c_d)` of `(n+1)^d + sum_j c_j (n+1)^{d-j} n^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CVector {
    pub dim: usize,
    pub c: Vec<BigRational>,
}

impl CVector {
    pub fn new(c: Vec<BigRational>) -> Self {
        CVector { dim: c.len(), c }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    /// Whether every entry is a nonnegative integer.
    pub fn is_valid(&self) -> bool {
        self.c.iter().all(is_nonnegative_integer)
    }

    /// `c_d`, the interior point count for lattice zonotopes.
    pub fn last(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Expands `p` in the `c`-basis of dimension `d`; `p(0)` must be 1.
pub fn to_cbasis(p: &Poly, d: usize) -> Result<CVector> {
    let degree = p.degree().unwrap_or(0);
    if degree > d {
        return Err(Error::DegreeTooLarge { degree, dim: d });
    }
    let constant = p.coeff(0);
    if !constant.is_one() {
        return Err(Error::NotNormalized(constant.to_string()));
    }
    let basis: Vec<Poly> = (0..=d).map(|j| cbasis_element(d, j)).collect();
    let x = solve_in_basis(&basis, p, d + 1);
    debug_assert!(x[0].is_one());
    Ok(CVector::new(x[1..].to_vec()))
}

pub fn from_cbasis(c: &CVector) -> Poly {
    let d = c.dim;
    c.c.iter()
        .enumerate()
        .fold(cbasis_element(d, 0), |acc, (i, cj)| {
            &acc + &cbasis_element(d, i + 1).scale(cj)
        })
}

/// `C(n + shift, d)` as a polynomial in `n`.
pub fn binomial_poly(shift: i64, d: usize) -> Poly {
    let mut p = Poly::one();
    let mut fact = BigInt::one();
    for k in 0..d {
        p = &p * &Poly::linear(rat(shift - k as i64));
        fact *= BigInt::from(k + 1);
    }
    p.scale(&BigRational::new(BigInt::one(), fact))
}

/// Coordinates `(h*_0, ..., h*_d)` in the basis `C(n+d-i, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HStarVector {
    pub dim: usize,
    pub h: Vec<BigRational>,
}

impl HStarVector {
    pub fn new(h: Vec<BigRational>) -> Self {
        HStarVector {
            dim: h.len().saturating_sub(1),
            h,
        }
    }

    pub fn from_i64s(h: &[i64]) -> Self {
        Self::new(h.iter().map(|&x| rat(x)).collect())
    }

    pub fn is_valid(&self) -> bool {
        self.h.iter().all(is_nonnegative_integer)
    }

    /// Degree of the `h*`-polynomial: the largest `i` with `h*_i != 0`.
    pub fn degree(&self) -> usize {
        self.h.iter().rposition(|x| !x.is_zero()).unwrap_or(0)
    }

    /// `h*(t)` as a polynomial in `t`.
    pub fn as_poly(&self) -> Poly {
        Poly::new(self.h.clone())
    }

    /// The Ehrhart polynomial `sum_i h*_i C(n+d-i, d)`.
    pub fn to_ehrhart(&self) -> Poly {
        let d = self.dim;
        self.h.iter().enumerate().fold(Poly::zero(), |acc, (i, hi)| {
            &acc + &binomial_poly(d as i64 - i as i64, d).scale(hi)
        })
    }
}

pub fn hstar_from_poly(p: &Poly, d: usize) -> Result<HStarVector> {
    let degree = p.degree().unwrap_or(0);
    if degree > d {
        return Err(Error::DegreeTooLarge { degree, dim: d });
    }
    let basis: Vec<Poly> = (0..=d).map(|i| binomial_poly(d as i64 - i as i64, d)).collect();
    Ok(HStarVector::new(solve_in_basis(&basis, p, d + 1)))
}

/// Refined Eulerian polynomials `A^d_j(t)` for `j = 1..=d` (index `j - 1`),
/// by enumerating all permutations of `[d]`: `A^d_j` collects `t^des(s)` over
/// permutations `s` with `s(d) = d + 1 - j`.
pub fn eulerian_table(d: usize) -> Result<Vec<Poly>> {
    if d == 0 || d > EULERIAN_MAX_DIM {
        return Err(Error::arg(format!(
            "Eulerian polynomials are enumerated for 1 <= d <= {EULERIAN_MAX_DIM}, got {d}"
        )));
    }
    // counts[j-1][k] = #permutations with s(d) = d+1-j and k descents
    let mut counts = vec![vec![0u64; d]; d];
    let mut perm: Vec<usize> = (1..=d).collect();
    loop {
        let descents = perm.windows(2).filter(|w| w[0] > w[1]).count();
        let j = d + 1 - perm[d - 1];
        counts[j - 1][descents] += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(counts
        .into_iter()
        .map(|row| Poly::new(row.into_iter().map(|c| rat(c as i64)).collect()))
        .collect())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `A^d_j(t)`.
pub fn eulerian_aj(d: usize, j: usize) -> Result<Poly> {
    if j == 0 || j > d {
        return Err(Error::arg(format!("index j = {j} out of range 1..={d}")));
    }
    Ok(eulerian_table(d)?.swap_remove(j - 1))
}

/// The Eulerian polynomial `A^d(t) = sum_j A^d_j(t)`.
pub fn eulerian(d: usize) -> Result<Poly> {
    Ok(eulerian_table(d)?
        .iter()
        .fold(Poly::zero(), |acc, p| &acc + p))
}

/// `A^{d+1}_1 + c_1 A^{d+1}_2 + ... + c_d A^{d+1}_{d+1}`, as an `h*`-vector.
///
/// The combination is formed for any rational `c`; whether `c` is admissible
/// is reported by [`CVector::is_valid`].
pub fn hstar_via_eulerian(c: &CVector) -> Result<HStarVector> {
    let d = c.dim;
    let table = eulerian_table(d + 1)?;
    let poly = c
        .c
        .iter()
        .enumerate()
        .fold(table[0].clone(), |acc, (i, cj)| &acc + &table[i + 1].scale(cj));
    Ok(HStarVector::new((0..=d).map(|k| poly.coeff(k)).collect()))
}

/// Degree of a polynomial of dimension `d`, read off its `h*`-vector.
pub fn degree_of(p: &Poly, d: usize) -> Result<usize> {
    Ok(hstar_from_poly(p, d)?.degree())
}

/// Smallest `r` in `0..=d` such that the `(d - r)`-th dilate has no interior
/// lattice point; the 0-th dilate is a point and has none.
pub fn degree_via_dilates(z: &Zonotope, budget: u128) -> Result<usize> {
    let d = z.dim();
    for r in 0..=d {
        let k = (d - r) as u64;
        if k == 0 || !z.has_interior_lattice_point(k, budget)? {
            return Ok(r);
        }
    }
    unreachable!("r = d always qualifies")
}

/// `|p(-1)|`, the interior point count of a full-dimensional lattice polytope
/// with Ehrhart polynomial `p`.
pub fn interior_count_reciprocity(p: &Poly) -> Result<BigInt> {
    let v = p.eval_int(-1).abs();
    if !v.is_integer() {
        return Err(Error::arg(format!("p(-1) = {v} is not an integer")));
    }
    Ok(v.to_integer())
}
