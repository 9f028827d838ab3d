//! Exact mixed volumes of lattice polytopes.
//!
//! Three independent routes: polarization (inclusion-exclusion over
//! Minkowski sums), polynomial interpolation of `Vol(Σ λ_i K_i)`, and a
//! multilinear expansion over coordinate simplices for structured inputs.

mod blocks;
mod smith;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polytope::{LatticePoint, LatticePolytope};
use crate::ratfunc::UniPoly;

pub use blocks::{mixed_volume_blocks, FormalCombination};
pub use smith::{binomial_count_oracle, smith_diagonal};

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `V(K_1, …, K_s)` together with the dimension it was computed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedVolumeValue {
    pub value: BigRational,
    pub s: usize,
}

impl MixedVolumeValue {
    /// `s! · V`, the BKK root count.
    pub fn normalized(&self) -> BigRational {
        &self.value * BigRational::from_integer(factorial(self.s))
    }

    /// `s! · V` as an integer, which it always is for lattice inputs.
    pub fn bkk(&self) -> BigInt {
        let n = self.normalized();
        assert!(n.is_integer(), "normalized mixed volume of lattice polytopes must be integral");
        n.to_integer()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Polarization,
    Interpolation,
    Blocks,
    Auto,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Polarization => "polarization",
            Algorithm::Interpolation => "interpolation",
            Algorithm::Blocks => "blocks",
            Algorithm::Auto => "auto",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polarization" => Ok(Algorithm::Polarization),
            "interpolation" => Ok(Algorithm::Interpolation),
            "blocks" => Ok(Algorithm::Blocks),
            "auto" => Ok(Algorithm::Auto),
            other => Err(Error::Input(format!("unknown algorithm `{other}`"))),
        }
    }
}

fn check_square(polys: &[LatticePolytope]) -> Result<usize> {
    let s = polys.len();
    if s == 0 {
        return Err(Error::CountMismatch { expected: 1, found: 0 });
    }
    let dim = polys[0].ambient_dim();
    if let Some(p) = polys.iter().find(|p| p.ambient_dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.ambient_dim() });
    }
    if dim != s {
        return Err(Error::CountMismatch { expected: dim, found: s });
    }
    Ok(s)
}

/// Polarization formula
/// `V = (1/s!) Σ_{∅≠J} (-1)^{s-|J|} Vol(Σ_{j∈J} K_j)`.
///
/// Subsets are visited in binary counting order; each partial sum reuses the
/// sum for the subset without its highest element.
pub fn mixed_volume(polys: &[LatticePolytope]) -> Result<MixedVolumeValue> {
    let s = check_square(polys)?;
    let mut sums: Vec<Option<LatticePolytope>> = vec![None; 1 << s];
    let mut acc = BigRational::zero();
    for mask in 1usize..(1 << s) {
        let high = usize::BITS - 1 - mask.leading_zeros();
        let rest = mask & !(1 << high);
        let sum = match &sums[rest] {
            None => polys[high as usize].clone(),
            Some(p) => p.minkowski_sum(&polys[high as usize])?,
        };
        let vol = sum.volume();
        if (s - mask.count_ones() as usize).is_multiple_of(2) {
            acc += vol;
        } else {
            acc -= vol;
        }
        sums[mask] = Some(sum);
    }
    Ok(MixedVolumeValue { value: acc / BigRational::from_integer(factorial(s)), s })
}

/// Coefficient of `x` in each Lagrange basis polynomial on nodes `0..=s`.
fn linear_lagrange_weights(s: usize) -> Vec<BigRational> {
    (0..=s)
        .map(|a| {
            let mut poly = UniPoly::constant(BigRational::one());
            for b in (0..=s).filter(|&b| b != a) {
                let factor = UniPoly::from_coeffs(vec![
                    BigRational::from_integer(-BigInt::from(b)),
                    BigRational::one(),
                ])
                .scale(&BigRational::new(BigInt::one(), BigInt::from(a as i64 - b as i64)));
                poly = &poly * &factor;
            }
            poly.coeffs().get(1).cloned().unwrap_or_else(BigRational::zero)
        })
        .collect()
}

pub const INTERPOLATION_MAX_DIM: usize = 5;

/// For each support `J`, the vertex tuples `(v_j)_{j∈J}` whose sums are the
/// vertices of `Σ_{j∈J} K_j`. For positive weights the normal fan of
/// `Σ λ_j K_j` does not depend on `λ`, so the same tuples give its vertices.
fn vertex_tuples(polys: &[LatticePolytope], mask: usize) -> Result<Vec<Vec<usize>>> {
    let members: Vec<usize> = (0..polys.len()).filter(|&i| mask & (1 << i) != 0).collect();
    let mut tuples: Vec<Vec<usize>> = (0..polys[members[0]].vertices().len()).map(|v| vec![v]).collect();
    for &m in &members[1..] {
        let mut cand: BTreeMap<Vec<i64>, Option<Vec<usize>>> = BTreeMap::new();
        for t in &tuples {
            let base = tuple_point(polys, &members, t, None)?;
            for (v, q) in polys[m].vertices().iter().enumerate() {
                let pt = add_points(&base, &q.0)?;
                let mut nt = t.clone();
                nt.push(v);
                cand.entry(pt).and_modify(|e| *e = None).or_insert(Some(nt));
            }
        }
        let hull = LatticePolytope::hull(cand.keys().cloned().map(LatticePoint))?;
        // a vertex of a Minkowski sum decomposes uniquely
        tuples = hull.vertices().iter().map(|v| cand[&v.0].clone().expect("unique decomposition")).collect();
    }
    Ok(tuples)
}

fn add_points(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow)).collect()
}

/// `Σ λ_j v_j` over the members of a support; unit weights when `lam` is `None`.
fn tuple_point(polys: &[LatticePolytope], members: &[usize], t: &[usize], lam: Option<&[usize]>) -> Result<Vec<i64>> {
    let mut acc = vec![0i64; polys[0].ambient_dim()];
    for (&m, &v) in members.iter().zip(t) {
        let w = lam.map_or(1, |l| l[m]) as i64;
        for (a, &c) in acc.iter_mut().zip(&polys[m].vertices()[v].0) {
            *a = c.checked_mul(w).and_then(|x| a.checked_add(x)).ok_or(Error::Overflow)?;
        }
    }
    Ok(acc)
}

/// Extracts the `λ_1⋯λ_s` coefficient of `Vol(Σ λ_i K_i)` by tensor-grid
/// interpolation on `{0..s}^s`. Independent of the polarization route.
pub fn mixed_volume_interp(polys: &[LatticePolytope]) -> Result<MixedVolumeValue> {
    let s = check_square(polys)?;
    if s > INTERPOLATION_MAX_DIM {
        return Err(Error::GuardExceeded { max: INTERPOLATION_MAX_DIM, found: s });
    }
    let w = linear_lagrange_weights(s);
    let mut tuples: Vec<Option<Vec<Vec<usize>>>> = vec![None; 1 << s];
    let mut acc = BigRational::zero();
    let mut lam = vec![0usize; s];
    loop {
        let weight = lam.iter().fold(BigRational::one(), |acc, &a| acc * &w[a]);
        let mask = lam.iter().enumerate().filter(|&(_, &a)| a > 0).fold(0usize, |m, (i, _)| m | (1 << i));
        if !weight.is_zero() && mask != 0 {
            if tuples[mask].is_none() {
                tuples[mask] = Some(vertex_tuples(polys, mask)?);
            }
            let members: Vec<usize> = (0..s).filter(|&i| mask & (1 << i) != 0).collect();
            let pts = tuples[mask]
                .as_ref()
                .unwrap()
                .iter()
                .map(|t| tuple_point(polys, &members, t, Some(&lam)).map(LatticePoint))
                .collect::<Result<Vec<_>>>()?;
            acc += weight * LatticePolytope::hull(pts)?.volume();
        }
        let mut i = 0;
        while i < s && lam[i] == s {
            lam[i] = 0;
            i += 1;
        }
        if i == s {
            break;
        }
        lam[i] += 1;
    }
    Ok(MixedVolumeValue { value: acc / BigRational::from_integer(factorial(s)), s })
}

/// `s! · V(K_1, …, K_s)` via polarization.
pub fn bkk_count(polys: &[LatticePolytope]) -> Result<BigInt> {
    Ok(mixed_volume(polys)?.bkk())
}

/// An argument of a mixed volume: either an explicit polytope or a formal
/// non-negative combination of coordinate simplices.
#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Concrete(LatticePolytope),
    Formal(FormalCombination),
}

impl Body {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Body::Concrete(p) => p.ambient_dim(),
            Body::Formal(f) => f.dim(),
        }
    }

    pub fn realize(&self) -> Result<LatticePolytope> {
        match self {
            Body::Concrete(p) => Ok(p.clone()),
            Body::Formal(f) => f.realize(),
        }
    }

    /// Formal view, if the body is one or is recognizably `c · Δ_S`.
    pub fn as_formal(&self) -> Option<FormalCombination> {
        match self {
            Body::Formal(f) => Some(f.clone()),
            Body::Concrete(p) => FormalCombination::from_polytope(p),
        }
    }
}

impl From<LatticePolytope> for Body {
    fn from(p: LatticePolytope) -> Self {
        Body::Concrete(p)
    }
}

impl From<FormalCombination> for Body {
    fn from(f: FormalCombination) -> Self {
        Body::Formal(f)
    }
}

/// Dispatches to the requested algorithm. `Auto` uses the block expansion
/// when every argument is a combination of coordinate simplices and
/// polarization otherwise. Returns the algorithm actually used.
pub fn mixed_volume_of(bodies: &[Body], algorithm: Algorithm) -> Result<(MixedVolumeValue, Algorithm)> {
    let formal = || bodies.iter().map(Body::as_formal).collect::<Option<Vec<_>>>();
    let concrete = || bodies.iter().map(Body::realize).collect::<Result<Vec<_>>>();
    match algorithm {
        Algorithm::Blocks => {
            let f = formal().ok_or_else(|| Error::NonSimplexBasis("argument is not a coordinate simplex combination".into()))?;
            Ok((mixed_volume_blocks(&f)?, Algorithm::Blocks))
        }
        Algorithm::Polarization => Ok((mixed_volume(&concrete()?)?, Algorithm::Polarization)),
        Algorithm::Interpolation => Ok((mixed_volume_interp(&concrete()?)?, Algorithm::Interpolation)),
        Algorithm::Auto => match formal() {
            Some(f) => Ok((mixed_volume_blocks(&f)?, Algorithm::Blocks)),
            None => Ok((mixed_volume(&concrete()?)?, Algorithm::Polarization)),
        },
    }
}

/// `|det|` of an integer matrix by cofactor-free Bareiss elimination.
pub fn abs_det(a: &[Vec<i64>]) -> Result<BigInt> {
    let m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    Ok(crate::polytope::bareiss_det(m)?.abs())
}
