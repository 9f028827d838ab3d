//! Lattice polytopes with exact hulls, Minkowski arithmetic and volumes.
//!
//! A [`LatticePolytope`] is built from a nonempty generator set. Its
//! vertex set, facet inequalities and volume are computed once at
//! construction. Lower-dimensional inputs are handled by projecting onto
//! a coordinate subset that is injective on the affine hull.

mod hull;
pub mod json;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diffpoly::JetLayout;
use crate::error::{Error, Result};

pub(crate) use hull::{bareiss_det, rank_bigint};

/// Integer point in `Z^s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        LatticePoint(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    fn checked_add(&self, o: &LatticePoint) -> Result<LatticePoint> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(LatticePoint)
    }

    fn checked_scale(&self, c: i64) -> Result<LatticePoint> {
        self.0.iter().map(|a| a.checked_mul(c).ok_or(Error::Overflow)).collect::<Result<_>>().map(LatticePoint)
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

#[derive(Debug)]
struct Geometry {
    affine_dim: usize,
    base: Vec<i64>,
    /// Coordinates onto which the affine hull projects injectively.
    coords: Vec<usize>,
    /// `e · (x - base) = 0` cut out the affine hull.
    equations: Vec<Vec<BigInt>>,
    /// `n · proj(x) ≤ b` in the projected coordinates.
    facets: Vec<(Vec<BigInt>, BigInt)>,
    volume: BigRational,
}

/// Convex hull of a finite nonempty set of lattice points.
#[derive(Clone)]
pub struct LatticePolytope {
    dim: usize,
    generators: Vec<LatticePoint>,
    vertices: Vec<LatticePoint>,
    geom: Arc<Geometry>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticePolytope").field("dim", &self.dim).field("vertices", &self.vertices).finish()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Greedy affinely independent subset, in `BigInt` arithmetic.
fn affine_basis_bigint(points: &[Vec<i64>]) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if basis.len() == points[0].len() {
            break;
        }
        basis.push(p.iter().zip(&points[0]).map(|(a, b)| BigInt::from(*a) - BigInt::from(*b)).collect());
        if rank_bigint(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

/// Row-reduced echelon form over Q. Returns the reduced rows and pivots.
fn rref(rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let sub = &f * &m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Integer basis of the orthogonal complement of the row space.
fn orthogonal_complement(reduced: &[Vec<BigRational>], pivots: &[usize], ncols: usize) -> Vec<Vec<BigInt>> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    // rows of the rref span the space; vectors y with R y = 0 are the complement
    free.iter()
        .map(|&f| {
            let mut y = vec![BigRational::zero(); ncols];
            y[f] = BigRational::one();
            for (row, &p) in reduced.iter().zip(pivots) {
                y[p] = -row[f].clone();
            }
            let den = y.iter().fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
            y.iter().map(|v| (v * BigRational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect()
}

impl LatticePolytope {
    /// Convex hull of the given points.
    pub fn hull(points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let mut gens: Vec<LatticePoint> = points.into_iter().collect();
        let Some(first) = gens.first() else {
            return Err(Error::EmptyPolytope);
        };
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::InvalidParams("ambient dimension must be positive".into()));
        }
        if let Some(bad) = gens.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        gens.sort();
        gens.dedup();
        let base = gens[0].0.clone();
        let raw: Vec<Vec<i64>> = gens.iter().map(|p| p.0.clone()).collect();
        let initial = match hull::affine_basis_i128(&raw) {
            Some(b) => b,
            None => affine_basis_bigint(&raw),
        };
        // the basis spans the affine hull, so only its rows need reducing
        let diffs: Vec<Vec<BigRational>> = initial[1..]
            .iter()
            .map(|&i| raw[i].iter().zip(&base).map(|(a, b)| BigRational::from_integer((a - b).into())).collect())
            .collect();
        let (reduced, coords) = rref(diffs, dim);
        let k = coords.len();
        let equations = orthogonal_complement(&reduced, &coords, dim);
        let proj: Vec<Vec<i64>> = raw.iter().map(|p| coords.iter().map(|&c| p[c]).collect()).collect();
        let data = hull::full_dim_hull(&proj, k, &initial)?;
        let volume = if k == dim {
            BigRational::new(data.volume_times_factorial, factorial(dim))
        } else {
            BigRational::zero()
        };
        let mut vertices: Vec<LatticePoint> = data.vertices.iter().map(|&i| gens[i].clone()).collect();
        vertices.sort();
        Ok(LatticePolytope {
            dim,
            generators: gens,
            vertices,
            geom: Arc::new(Geometry { affine_dim: k, base, coords, equations, facets: data.facets, volume }),
        })
    }

    /// The single-point polytope `{p}`.
    pub fn point(p: LatticePoint) -> Result<Self> {
        LatticePolytope::hull([p])
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.geom.affine_dim
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    /// Extreme points, lexicographically ordered.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Euclidean `s`-volume; zero for lower-dimensional polytopes.
    pub fn volume(&self) -> BigRational {
        self.geom.volume.clone()
    }

    /// Number of facets of the polytope within its affine hull.
    pub fn facet_count(&self) -> usize {
        self.geom.facets.len()
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: d });
        }
        Ok(())
    }

    /// Exact point membership.
    pub fn contains_point(&self, p: &LatticePoint) -> Result<bool> {
        self.check_dim(p.dim())?;
        let g = &self.geom;
        let rel: Vec<BigInt> = p.0.iter().zip(&g.base).map(|(a, b)| BigInt::from(a - b)).collect();
        for e in &g.equations {
            if e.iter().zip(&rel).map(|(a, b)| a * b).sum::<BigInt>() != BigInt::zero() {
                return Ok(false);
            }
        }
        let proj: Vec<BigInt> = g.coords.iter().map(|&c| BigInt::from(p.0[c])).collect();
        Ok(g.facets.iter().all(|(n, b)| n.iter().zip(&proj).map(|(a, x)| a * x).sum::<BigInt>() <= *b))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &LatticePolytope) -> Result<bool> {
        self.check_dim(other.dim)?;
        for v in &other.vertices {
            if !self.contains_point(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minkowski sum: hull of pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<Self> {
        self.check_dim(other.dim)?;
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.checked_add(b)?);
            }
        }
        LatticePolytope::hull(pts)
    }

    /// `c · self`; `c = 0` gives the origin.
    pub fn dilate(&self, c: u64) -> Result<Self> {
        if c == 0 {
            return LatticePolytope::point(LatticePoint::origin(self.dim));
        }
        if c == 1 {
            return Ok(self.clone());
        }
        let ci = i64::try_from(c).map_err(|_| Error::Overflow)?;
        let scale = |v: &[LatticePoint]| v.iter().map(|p| p.checked_scale(ci)).collect::<Result<Vec<_>>>();
        let g = &self.geom;
        let cb = BigInt::from(ci);
        let geom = Geometry {
            affine_dim: g.affine_dim,
            base: LatticePoint(g.base.clone()).checked_scale(ci)?.0,
            coords: g.coords.clone(),
            equations: g.equations.clone(),
            facets: g.facets.iter().map(|(n, b)| (n.clone(), b * &cb)).collect(),
            volume: &g.volume * BigRational::from_integer(num_traits::pow(cb.clone(), self.dim)),
        };
        Ok(LatticePolytope {
            dim: self.dim,
            generators: scale(&self.generators)?,
            vertices: scale(&self.vertices)?,
            geom: Arc::new(geom),
        })
    }

    /// Translation by an integer vector.
    pub fn translate(&self, shift: &LatticePoint) -> Result<Self> {
        self.check_dim(shift.dim())?;
        LatticePolytope::hull(self.vertices.iter().map(|v| v.checked_add(shift)).collect::<Result<Vec<_>>>()?)
    }

    /// All lattice points, by bounding-box enumeration. Refuses boxes with
    /// more than ten million points.
    pub fn lattice_points(&self) -> Result<Vec<LatticePoint>> {
        let lo: Vec<i64> = (0..self.dim).map(|i| self.vertices.iter().map(|v| v.0[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..self.dim).map(|i| self.vertices.iter().map(|v| v.0[i]).max().unwrap()).collect();
        let mut size: u128 = 1;
        for (a, b) in lo.iter().zip(&hi) {
            size = size.saturating_mul((b - a + 1) as u128);
        }
        const LIMIT: u128 = 10_000_000;
        if size > LIMIT {
            return Err(Error::GuardExceeded { max: LIMIT as usize, found: size.min(usize::MAX as u128) as usize });
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticePoint(cur.clone());
            if self.contains_point(&p)? {
                out.push(p);
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
            }
        }
    }

    /// Whether this is the hull of a finite downward-closed subset of
    /// `Z_{≥0}^s`.
    ///
    /// Tested on vertices: the polytope is down-closed in the orthant iff
    /// zeroing any one coordinate of any vertex stays inside.
    pub fn is_coideal(&self) -> Result<bool> {
        if self.vertices.iter().any(|v| v.0.iter().any(|&c| c < 0)) {
            return Err(Error::NegativeCoordinates);
        }
        for v in &self.vertices {
            for i in 0..self.dim {
                if v.0[i] > 0 {
                    let mut w = v.clone();
                    w.0[i] = 0;
                    if !self.contains_point(&w)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Maximum coordinate sum over the vertices.
    pub fn total_degree(&self) -> i64 {
        self.vertices.iter().map(|v| v.0.iter().sum::<i64>()).max().unwrap()
    }

    /// Standard simplex on a set of coordinates: hull of the origin and
    /// the unit vectors `e_i`, `i ∈ coords`.
    pub fn coordinate_simplex(dim: usize, coords: &[usize]) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= dim) {
            return Err(Error::InvalidBlock(format!("coordinate {bad} outside Z^{dim}")));
        }
        let mut pts = vec![LatticePoint::origin(dim)];
        pts.extend(coords.iter().map(|&c| LatticePoint::unit(dim, c)));
        LatticePolytope::hull(pts)
    }

    /// Standard simplex on a block of jet coordinates of `layout`.
    pub fn standard_simplex(layout: &JetLayout, block: SimplexBlock) -> Result<Self> {
        LatticePolytope::coordinate_simplex(layout.s(), &block.coords(layout)?)
    }

    /// If this polytope is `c · Δ_S` for a coordinate set `S`, returns `(c, S)`.
    pub fn as_dilated_coordinate_simplex(&self) -> Option<(u64, Vec<usize>)> {
        let origin = LatticePoint::origin(self.dim);
        if self.vertices.len() == 1 {
            return (self.vertices[0] == origin).then(|| (0, Vec::new()));
        }
        if self.vertices[0] != origin {
            return None;
        }
        let mut scale = None;
        let mut coords = Vec::new();
        for v in &self.vertices[1..] {
            let nz: Vec<usize> = (0..self.dim).filter(|&i| v.0[i] != 0).collect();
            if nz.len() != 1 || v.0[nz[0]] <= 0 {
                return None;
            }
            let c = v.0[nz[0]] as u64;
            if *scale.get_or_insert(c) != c {
                return None;
            }
            coords.push(nz[0]);
        }
        coords.sort_unstable();
        Some((scale.unwrap(), coords))
    }
}

/// Which coordinates of a jet layout a standard simplex spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexBlock {
    /// All `s` coordinates.
    All,
    /// Order-zero coordinates of every variable.
    BaseVariables,
    /// All jet orders of variable `i`.
    SingleVariableJets(usize),
    /// Coordinates of order at most `j`, for every variable.
    OrdersUpTo(u32),
}

impl SimplexBlock {
    pub fn coords(&self, layout: &JetLayout) -> Result<Vec<usize>> {
        let n = layout.n();
        let l = layout.order();
        match *self {
            SimplexBlock::All => Ok((0..layout.s()).collect()),
            SimplexBlock::BaseVariables => Ok((0..n).map(|i| layout.index(i, 0)).collect()),
            SimplexBlock::SingleVariableJets(i) => {
                if i >= n {
                    return Err(Error::InvalidBlock(format!("variable index {i} but layout has {n} variables")));
                }
                Ok((0..=l).map(|j| layout.index(i, j)).collect())
            }
            SimplexBlock::OrdersUpTo(j) => {
                if j > l {
                    return Err(Error::InvalidBlock(format!("order {j} exceeds layout order {l}")));
                }
                let mut v: Vec<usize> = (0..n).flat_map(|i| (0..=j).map(move |o| (i, o))).map(|(i, o)| layout.index(i, o)).collect();
                v.sort_unstable();
                Ok(v)
            }
        }
    }
}
