//! Exact incremental beneath-beyond hull for full-dimensional point sets.
//!
//! The kernel maintains a triangulated boundary together with the placing
//! triangulation of the interior, so the volume falls out of the same pass.
//! Arithmetic is generic: callers try checked `i64`, then checked `i128`,
//! and retry with `BigInt` on overflow.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub(crate) trait Scalar: Clone + Ord + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Exact division; the caller guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Self;
    fn gcd(&self, o: &Self) -> Self;
    fn signum(&self) -> i32;
    fn neg(&self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn zero() -> Self {
        0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn signum(&self) -> i32 {
        i64::signum(*self) as i32
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn zero() -> Self {
        0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

type Ovf<T> = std::result::Result<T, Error>;

fn ck<T>(v: Option<T>) -> Ovf<T> {
    v.ok_or(Error::Overflow)
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub(crate) fn bareiss_det<T: Scalar>(mut m: Vec<Vec<T>>) -> Ovf<T> {
    let n = m.len();
    if n == 0 {
        return Ok(T::from_i64(1));
    }
    let mut sign = 1;
    let mut prev = T::from_i64(1);
    for k in 0..n {
        if m[k][k].signum() == 0 {
            match (k + 1..n).find(|&r| m[r][k].signum() != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ck(m[i][j].mul(&m[k][k]))?;
                let b = ck(m[i][k].mul(&m[k][j]))?;
                m[i][j] = ck(a.sub(&b))?.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { d.neg() } else { d })
}

/// Rank of an integer matrix by fraction-free elimination.
pub(crate) fn rank_bigint(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let (a, b) = (m[rank][col].clone(), m[r][col].clone());
            for c in col..ncols {
                let v = &m[r][c] * &a - &m[rank][c] * &b;
                m[r][c] = v;
            }
        }
        rank += 1;
    }
    rank
}

struct Face<T> {
    verts: Vec<usize>,
    normal: Vec<T>,
    offset: T,
}

/// Output of the kernel, in the coordinates it was given.
pub(crate) struct HullData {
    /// Distinct facet inequalities `normal · x ≤ offset`, primitive normals.
    pub facets: Vec<(Vec<BigInt>, BigInt)>,
    /// Indices (into the input) of the extreme points.
    pub vertices: Vec<usize>,
    /// Sum of |det| over the placing triangulation, i.e. `d! · volume`.
    pub volume_times_factorial: BigInt,
}

/// Determinant of the `n × n` row-major block of `buf`, destroying it.
fn bareiss_flat<T: Scalar>(buf: &mut [T], n: usize) -> Ovf<T> {
    if n == 0 {
        return Ok(T::from_i64(1));
    }
    let mut sign = 1;
    let mut prev = T::from_i64(1);
    for k in 0..n {
        if buf[k * n + k].signum() == 0 {
            match (k + 1..n).find(|&r| buf[r * n + k].signum() != 0) {
                Some(r) => {
                    for j in 0..n {
                        buf.swap(k * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ck(buf[i * n + j].mul(&buf[k * n + k]))?;
                let b = ck(buf[i * n + k].mul(&buf[k * n + j]))?;
                buf[i * n + j] = ck(a.sub(&b))?.div_exact(&prev);
            }
        }
        prev = buf[k * n + k].clone();
    }
    let d = buf[n * n - 1].clone();
    Ok(if sign < 0 { d.neg() } else { d })
}

/// Rank of the `rows × cols` row-major block of `buf`, destroying it.
fn rank_flat<T: Scalar>(buf: &mut [T], rows: usize, cols: usize) -> Ovf<usize> {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| buf[r * cols + c].signum() != 0) else {
            continue;
        };
        for j in 0..cols {
            buf.swap(rank * cols + j, p * cols + j);
        }
        for r in rank + 1..rows {
            if buf[r * cols + c].signum() == 0 {
                continue;
            }
            let (a, b) = (buf[rank * cols + c].clone(), buf[r * cols + c].clone());
            let mut g = T::zero();
            for j in c..cols {
                let v = ck(ck(buf[r * cols + j].mul(&a))?.sub(&ck(buf[rank * cols + j].mul(&b))?))?;
                g = g.gcd(&v);
                buf[r * cols + j] = v;
            }
            if g.signum() != 0 {
                for j in c..cols {
                    buf[r * cols + j] = buf[r * cols + j].div_exact(&g);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

struct Kernel<'a, T: Scalar> {
    pts: Vec<Vec<T>>,
    raw: &'a [Vec<i64>],
    d: usize,
    /// Sum of the initial simplex vertices; the centroid is this over d+1.
    center: Vec<T>,
    faces: Vec<Face<T>>,
    vol: T,
    edges: Vec<T>,
    minor: Vec<T>,
}

impl<'a, T: Scalar> Kernel<'a, T> {
    fn new(raw: &'a [Vec<i64>], d: usize) -> Self {
        Kernel {
            pts: raw.iter().map(|p| p.iter().map(|&v| T::from_i64(v)).collect()).collect(),
            raw,
            d,
            center: vec![T::zero(); d],
            faces: Vec::new(),
            vol: T::zero(),
            edges: Vec::with_capacity(d * d),
            minor: Vec::with_capacity(d * d),
        }
    }

    fn dot(n: &[T], p: &[T]) -> Ovf<T> {
        let mut acc = T::zero();
        for (a, b) in n.iter().zip(p) {
            acc = ck(acc.add(&ck(a.mul(b))?))?;
        }
        Ok(acc)
    }

    /// Loads the edge vectors `verts[i] - verts[0]` into `self.edges`.
    fn load_edges(&mut self, verts: &[usize]) -> Ovf<()> {
        self.edges.clear();
        let base = &self.pts[verts[0]];
        for &v in &verts[1..] {
            for (a, b) in self.pts[v].iter().zip(base) {
                self.edges.push(ck(a.sub(b))?);
            }
        }
        Ok(())
    }

    fn simplex_volume(&mut self, verts: &[usize]) -> Ovf<T> {
        self.load_edges(verts)?;
        let det = bareiss_flat(&mut self.edges, self.d)?;
        Ok(if det.signum() < 0 { det.neg() } else { det })
    }

    fn make_face(&mut self, verts: Vec<usize>) -> Ovf<Face<T>> {
        let d = self.d;
        self.load_edges(&verts)?;
        let mut normal = Vec::with_capacity(d);
        for j in 0..d {
            self.minor.clear();
            for r in 0..d - 1 {
                for c in (0..d).filter(|&c| c != j) {
                    self.minor.push(self.edges[r * d + c].clone());
                }
            }
            let m = bareiss_flat(&mut self.minor, d - 1)?;
            normal.push(if j % 2 == 1 { m.neg() } else { m });
        }
        let g = normal.iter().fold(T::zero(), |acc, v| acc.gcd(v));
        if g.signum() != 0 {
            normal = normal.iter().map(|v| v.div_exact(&g)).collect();
        }
        let mut offset = Self::dot(&normal, &self.pts[verts[0]])?;
        // orient away from the interior reference point
        let lhs = Self::dot(&normal, &self.center)?;
        let rhs = ck(offset.mul(&T::from_i64(d as i64 + 1)))?;
        if lhs > rhs {
            normal = normal.iter().map(Scalar::neg).collect();
            offset = offset.neg();
        }
        Ok(Face { verts, normal, offset })
    }

    fn run(mut self, initial: &[usize]) -> Ovf<HullData> {
        let d = self.d;
        for &v in initial {
            for i in 0..d {
                self.center[i] = ck(self.center[i].add(&self.pts[v][i]))?;
            }
        }
        self.vol = self.simplex_volume(initial)?;
        for skip in 0..=d {
            let verts: Vec<usize> =
                initial.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            let f = self.make_face(verts)?;
            self.faces.push(f);
        }
        // farthest points first, so that most interior points are rejected
        // by the visibility test alone
        let in_initial: BTreeSet<usize> = initial.iter().copied().collect();
        let c: Vec<f64> = (0..d)
            .map(|i| initial.iter().map(|&v| self.raw[v][i] as f64).sum::<f64>() / (d + 1) as f64)
            .collect();
        let dist = |p: &Vec<i64>| p.iter().zip(&c).map(|(&x, &m)| (x as f64 - m).powi(2)).sum::<f64>();
        let mut order: Vec<usize> = (0..self.pts.len()).filter(|p| !in_initial.contains(p)).collect();
        order.sort_by(|&a, &b| dist(&self.raw[b]).total_cmp(&dist(&self.raw[a])).then(a.cmp(&b)));
        for p in order {
            self.insert(p)?;
        }
        self.finish()
    }

    fn insert(&mut self, p: usize) -> Ovf<()> {
        let mut visible = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            if Self::dot(&f.normal, &self.pts[p])? > f.offset {
                visible.push(i);
            }
        }
        if visible.is_empty() {
            return Ok(());
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut cone = Vec::with_capacity(self.d + 1);
        for &i in &visible {
            cone.clear();
            cone.extend_from_slice(&self.faces[i].verts);
            cone.push(p);
            let v = self.simplex_volume(&cone)?;
            self.vol = ck(self.vol.add(&v))?;
            let verts = &self.faces[i].verts;
            for skip in 0..verts.len() {
                let mut r: Vec<usize> =
                    verts.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                r.sort_unstable();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        for &i in visible.iter().rev() {
            self.faces.swap_remove(i);
        }
        let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for mut r in horizon {
            r.push(p);
            let f = self.make_face(r)?;
            self.faces.push(f);
        }
        Ok(())
    }

    fn finish(self) -> Ovf<HullData> {
        let d = self.d;
        let mut distinct: BTreeSet<(&[T], &T)> = BTreeSet::new();
        let mut on_boundary = BTreeSet::new();
        for f in &self.faces {
            distinct.insert((&f.normal, &f.offset));
            on_boundary.extend(f.verts.iter().copied());
        }
        let mut vertices = Vec::new();
        let mut buf = Vec::new();
        for p in on_boundary {
            buf.clear();
            let mut rows = 0;
            for (n, b) in &distinct {
                if Self::dot(n, &self.pts[p])? == **b {
                    buf.extend(n.iter().cloned());
                    rows += 1;
                }
            }
            if rows >= d && rank_flat(&mut buf, rows, d)? == d {
                vertices.push(p);
            }
        }
        let facets = distinct
            .into_iter()
            .map(|(n, b)| (n.iter().map(Scalar::to_bigint).collect(), b.to_bigint()))
            .collect();
        Ok(HullData { facets, vertices, volume_times_factorial: self.vol.to_bigint() })
    }
}

/// Builds the hull of `points` (full-dimensional in `R^d`), given indices
/// of `d + 1` affinely independent points to seed the triangulation.
pub(crate) fn full_dim_hull(points: &[Vec<i64>], d: usize, initial: &[usize]) -> Result<HullData> {
    debug_assert_eq!(initial.len(), d + 1);
    if d == 0 {
        return Ok(HullData { facets: Vec::new(), vertices: vec![initial[0]], volume_times_factorial: 1.into() });
    }
    match Kernel::<i64>::new(points, d).run(initial) {
        Err(Error::Overflow) => {}
        other => return other,
    }
    match Kernel::<i128>::new(points, d).run(initial) {
        Err(Error::Overflow) => Kernel::<BigInt>::new(points, d).run(initial),
        other => other,
    }
}

/// Picks indices of a maximal affinely independent subset, greedily in
/// input order starting from point 0. `None` if `i128` overflowed.
pub(crate) fn affine_basis_i128(points: &[Vec<i64>]) -> Option<Vec<usize>> {
    let d = points.first().map_or(0, Vec::len);
    let mut rows: Vec<(usize, Vec<i128>)> = Vec::new();
    let mut chosen = vec![0];
    for (idx, p) in points.iter().enumerate().skip(1) {
        if rows.len() == d {
            break;
        }
        let mut v: Vec<i128> = p.iter().zip(&points[0]).map(|(&a, &b)| a as i128 - b as i128).collect();
        for (piv, row) in &rows {
            let f = v[*piv];
            if f == 0 {
                continue;
            }
            let a = row[*piv];
            let mut g = 0i128;
            for j in 0..d {
                v[j] = v[j].checked_mul(a)?.checked_sub(row[j].checked_mul(f)?)?;
                g = Integer::gcd(&g, &v[j]);
            }
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            rows.push((piv, v));
            chosen.push(idx);
        }
    }
    Some(chosen)
}
