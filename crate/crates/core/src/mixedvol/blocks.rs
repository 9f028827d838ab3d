use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{factorial, MixedVolumeValue};
use crate::error::{Error, Result};
use crate::polytope::{LatticePoint, LatticePolytope};

/// `Σ c_a · Δ_{S_a}`: a non-negative integer combination of coordinate
/// simplices `Δ_S = conv(0, e_i : i ∈ S)` in `Z^dim`.
///
/// Such sums are polymatroids with rank function
/// `f(T) = Σ_a c_a [S_a ∩ T ≠ ∅]`, which gives exact membership tests
/// without building the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCombination {
    dim: usize,
    terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    name: String,
    coords: Vec<usize>,
    coef: u64,
}

impl FormalCombination {
    /// The zero combination (the origin).
    pub fn zero(dim: usize) -> Self {
        FormalCombination { dim, terms: Vec::new() }
    }

    /// Adds `coef · Δ_coords`, merging with an existing term on the same
    /// coordinate set.
    pub fn with_term(mut self, name: &str, coords: &[usize], coef: u64) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.dim) {
            return Err(Error::InvalidBlock(format!("coordinate {bad} outside Z^{}", self.dim)));
        }
        let mut coords = coords.to_vec();
        coords.sort_unstable();
        coords.dedup();
        if coef == 0 || coords.is_empty() {
            return Ok(self);
        }
        match self.terms.iter_mut().find(|t| t.coords == coords) {
            Some(t) => t.coef += coef,
            None => self.terms.push(Term { name: name.to_string(), coords, coef }),
        }
        Ok(self)
    }

    /// Builds `Σ coeffs[a] · basis[a]`, where every basis polytope must be a
    /// dilated coordinate simplex.
    pub fn from_basis(basis: &[(String, LatticePolytope)], coeffs: &[u64]) -> Result<Self> {
        if basis.len() != coeffs.len() {
            return Err(Error::CountMismatch { expected: basis.len(), found: coeffs.len() });
        }
        let dim = basis.first().map(|(_, p)| p.ambient_dim()).ok_or(Error::EmptyPolytope)?;
        let mut f = FormalCombination::zero(dim);
        for ((name, p), &c) in basis.iter().zip(coeffs) {
            if p.ambient_dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.ambient_dim() });
            }
            let (scale, coords) = p.as_dilated_coordinate_simplex().ok_or_else(|| Error::NonSimplexBasis(name.clone()))?;
            f = f.with_term(name, &coords, scale * c)?;
        }
        Ok(f)
    }

    /// Recognizes `c · Δ_S`.
    pub fn from_polytope(p: &LatticePolytope) -> Option<Self> {
        let (c, coords) = p.as_dilated_coordinate_simplex()?;
        FormalCombination::zero(p.ambient_dim()).with_term("D", &coords, c).ok()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(name, coordinates, coefficient)` for each term.
    pub fn terms(&self) -> impl Iterator<Item = (&str, &[usize], u64)> {
        self.terms.iter().map(|t| (t.name.as_str(), t.coords.as_slice(), t.coef))
    }

    pub fn plus(&self, other: &FormalCombination) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut f = self.clone();
        for t in &other.terms {
            f = f.with_term(&t.name, &t.coords, t.coef)?;
        }
        Ok(f)
    }

    pub fn scaled(&self, c: u64) -> Self {
        if c == 0 {
            return FormalCombination::zero(self.dim);
        }
        let terms = self.terms.iter().map(|t| Term { coef: t.coef * c, ..t.clone() }).collect();
        FormalCombination { dim: self.dim, terms }
    }

    /// Rank function `f(T)`.
    fn rank(&self, t: &[bool]) -> u64 {
        self.terms.iter().filter(|term| term.coords.iter().any(|&c| t[c])).map(|term| term.coef).sum()
    }

    /// Exact membership via `x ≥ 0`, `x(T) ≤ f(T)` for all coordinate sets `T`.
    pub fn contains_point(&self, p: &LatticePoint) -> Result<bool> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        if p.0.iter().any(|&x| x < 0) {
            return Ok(false);
        }
        let support: Vec<usize> = (0..self.dim).filter(|&i| p.0[i] > 0).collect();
        if support.len() > 24 {
            return Err(Error::GuardExceeded { max: 24, found: support.len() });
        }
        // only subsets of the support can be tight
        let mut t = vec![false; self.dim];
        for mask in 1u32..(1 << support.len()) {
            let mut total = 0i64;
            for (b, &c) in support.iter().enumerate() {
                t[c] = mask & (1 << b) != 0;
                if t[c] {
                    total += p.0[c];
                }
            }
            if total as u64 > self.rank(&t) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every vertex of `p` lies in this combination.
    pub fn contains_polytope(&self, p: &LatticePolytope) -> Result<bool> {
        for v in p.vertices() {
            if !self.contains_point(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Containment of polymatroids: `other ⊆ self` iff `f_other ≤ f_self`
    /// on every coordinate set.
    pub fn contains_formal(&self, other: &FormalCombination) -> Result<bool> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut support: Vec<usize> = other.terms.iter().flat_map(|t| t.coords.iter().copied()).collect();
        support.sort_unstable();
        support.dedup();
        if support.len() > 24 {
            return Err(Error::GuardExceeded { max: 24, found: support.len() });
        }
        let mut t = vec![false; self.dim];
        for mask in 1u32..(1 << support.len()) {
            for (b, &c) in support.iter().enumerate() {
                t[c] = mask & (1 << b) != 0;
            }
            if other.rank(&t) > self.rank(&t) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Maximum coordinate sum, `Σ c_a`.
    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.coef).sum()
    }

    /// Builds the explicit polytope by Minkowski summation.
    pub fn realize(&self) -> Result<LatticePolytope> {
        let mut acc = LatticePolytope::point(LatticePoint::origin(self.dim))?;
        for t in &self.terms {
            let piece = LatticePolytope::coordinate_simplex(self.dim, &t.coords)?.dilate(t.coef)?;
            acc = acc.minkowski_sum(&piece)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for FormalCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| if t.coef == 1 { t.name.clone() } else { format!("{}*{}", t.coef, t.name) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Whether slots with the given multiplicities over coordinate sets admit
/// distinct representatives (Kuhn's augmenting paths).
fn has_transversal(sets: &[Vec<usize>], counts: &[u32], dim: usize) -> bool {
    let slots: Vec<usize> = counts.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k, c as usize)).collect();
    let mut owner: Vec<Option<usize>> = vec![None; dim];
    fn augment(
        slot: usize,
        slots: &[usize],
        sets: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &c in &sets[slots[slot]] {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            if owner[c].is_none_or(|o| augment(o, slots, sets, owner, seen)) {
                owner[c] = Some(slot);
                return true;
            }
        }
        false
    }
    (0..slots.len()).all(|slot| {
        let mut seen = vec![false; dim];
        augment(slot, &slots, sets, &mut owner, &mut seen)
    })
}

/// Mixed volume of combinations of coordinate simplices by multilinear
/// expansion. For coordinate simplices, `s! V(Δ_{S_1}, …, Δ_{S_s})` is 1 when
/// the sets admit a transversal and 0 otherwise, since the generic affine
/// system with those supports has exactly one solution or none.
pub fn mixed_volume_blocks(entries: &[FormalCombination]) -> Result<MixedVolumeValue> {
    let s = entries.len();
    if s == 0 {
        return Err(Error::CountMismatch { expected: 1, found: 0 });
    }
    if let Some(e) = entries.iter().find(|e| e.dim != s) {
        return Err(Error::CountMismatch { expected: e.dim, found: s });
    }
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let index: Vec<Vec<usize>> = entries
        .iter()
        .map(|e| {
            e.terms
                .iter()
                .map(|t| match sets.iter().position(|c| *c == t.coords) {
                    Some(k) => k,
                    None => {
                        sets.push(t.coords.clone());
                        sets.len() - 1
                    }
                })
                .collect()
        })
        .collect();
    let mut feasible: HashMap<Vec<u32>, bool> = HashMap::new();
    let mut states: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    states.insert(vec![0; sets.len()], BigInt::from(1));
    for (e, idx) in entries.iter().zip(&index) {
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (counts, w) in &states {
            for (t, &k) in e.terms.iter().zip(idx) {
                let mut c = counts.clone();
                c[k] += 1;
                let ok = *feasible.entry(c.clone()).or_insert_with(|| has_transversal(&sets, &c, s));
                if ok {
                    *next.entry(c).or_insert_with(BigInt::zero) += w * BigInt::from(t.coef);
                }
            }
        }
        states = next;
    }
    let total: BigInt = states.into_values().sum();
    Ok(MixedVolumeValue { value: BigRational::new(total, factorial(s)), s })
}
