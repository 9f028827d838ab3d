//! Prolongation systems and linear elimination of the `ζ^(1)` block.

use std::collections::BTreeMap;

use super::{DiffPolynomial, JetLayout};
use crate::error::{Error, Result};

/// The system `P_j = 0, (dP_j)_ζ(ζ^(1)) + P_j^D(ζ) = 0` on the first
/// prolongation of the jet space.
///
/// In `ext_layout`, base coordinate `c` sits at index `2c` and its
/// prolongation `ζ_c^(1)` at `2c + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauSystem {
    pub base_layout: JetLayout,
    pub ext_layout: JetLayout,
    pub base: Vec<DiffPolynomial>,
    /// `P_1, …, P_k` followed by `Q_1, …, Q_k`, all over `ext_layout`.
    pub pairs: Vec<DiffPolynomial>,
}

impl TauSystem {
    pub fn k(&self) -> usize {
        self.base.len()
    }

    /// The `Q_j`, linear in the prolongation block.
    pub fn linear_part(&self) -> &[DiffPolynomial] {
        &self.pairs[self.k()..]
    }

    /// Extended indices of the base coordinates `ζ`.
    pub fn zeta_coords(&self) -> Vec<usize> {
        (0..self.base_layout.s()).map(|c| 2 * c).collect()
    }

    /// Extended indices of the prolongation coordinates `ζ^(1)`.
    pub fn prolongation_coords(&self) -> Vec<usize> {
        (0..self.base_layout.s()).map(|c| 2 * c + 1).collect()
    }
}

fn lift(p: &DiffPolynomial, ext: &JetLayout) -> DiffPolynomial {
    p.map_jet_indices(ext, |c| 2 * c)
}

pub fn tau_system(polys: &[DiffPolynomial]) -> Result<TauSystem> {
    let first = polys.first().ok_or(Error::CountMismatch { expected: 1, found: 0 })?;
    let base_layout = first.layout().clone();
    if let Some(p) = polys.iter().find(|p| p.layout() != &base_layout) {
        return Err(Error::LayoutMismatch(format!("{:?} vs {:?}", p.layout(), base_layout)));
    }
    let ext = base_layout.first_prolongation();
    let mut pairs: Vec<DiffPolynomial> = polys.iter().map(|p| lift(p, &ext)).collect();
    for p in polys {
        let mut q = lift(&p.coeff_derivative(), &ext);
        for c in 0..base_layout.s() {
            let d = p.partial(c);
            if !d.is_zero() {
                q = &q + &(&lift(&d, &ext) * &DiffPolynomial::var(&ext, c, 1));
            }
        }
        pairs.push(q);
    }
    Ok(TauSystem { base_layout, ext_layout: ext, base: polys.to_vec(), pairs })
}

/// Splits an affine-linear polynomial in `ζ^(1)` into its coefficients over
/// the base layout: the free part, then one per prolongation coordinate.
fn linear_row(p: &DiffPolynomial, base: &JetLayout) -> Result<Vec<DiffPolynomial>> {
    let s = base.s();
    let nc = base.constants().len();
    let mut row: Vec<BTreeMap<Vec<u32>, _>> = vec![BTreeMap::new(); s + 1];
    for (e, c) in &p.terms {
        let hits: Vec<usize> = (0..s).filter(|&i| e[2 * i + 1] > 0).collect();
        let slot = match hits.as_slice() {
            [] => 0,
            [i] if e[2 * i + 1] == 1 => i + 1,
            _ => return Err(Error::NonLinear),
        };
        let mut be = Vec::with_capacity(s + nc);
        be.extend((0..s).map(|i| e[2 * i]));
        be.extend_from_slice(&e[2 * s..]);
        row[slot].insert(be, c.clone());
    }
    Ok(row.into_iter().map(|terms| DiffPolynomial { layout: base.clone(), terms }).collect())
}

/// The resultant of `s+1` polynomials affine-linear in the `ζ^(1)` block:
/// the determinant of the coefficient matrix whose first column is the
/// `ζ^(1)`-free part, so `{a + bζ^(1), c + dζ^(1)}` gives `ad - bc`. It
/// vanishes exactly where the homogenized linear system has a nontrivial
/// solution.
pub fn eliminate_linear(polys: &[DiffPolynomial], base: &JetLayout) -> Result<DiffPolynomial> {
    let ext = base.first_prolongation();
    if let Some(p) = polys.iter().find(|p| p.layout() != &ext) {
        return Err(Error::LayoutMismatch(format!(
            "expected the first prolongation of {:?}, got {:?}",
            base,
            p.layout()
        )));
    }
    let m = base.s() + 1;
    if polys.len() != m {
        return Err(Error::CountMismatch { expected: m, found: polys.len() });
    }
    if m > 24 {
        return Err(Error::GuardExceeded { max: 24, found: m });
    }
    let rows = polys.iter().map(|p| linear_row(p, base)).collect::<Result<Vec<_>>>()?;
    Ok(determinant(&rows, base))
}

/// Division-free Laplace expansion along rows, memoized over column sets.
/// Entries may involve formal constants, so no division is ever attempted.
fn determinant(rows: &[Vec<DiffPolynomial>], layout: &JetLayout) -> DiffPolynomial {
    let m = rows.len();
    let mut level: BTreeMap<u32, DiffPolynomial> = BTreeMap::new();
    level.insert(0, DiffPolynomial::constant(layout, crate::ratfunc::RationalFunction::one()));
    for row in rows.iter().take(m) {
        let mut next: BTreeMap<u32, DiffPolynomial> = BTreeMap::new();
        for (&mask, minor) in &level {
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let above = (mask >> c).count_ones();
                let prod = minor * entry;
                let slot = next.entry(mask | (1 << c)).or_insert_with(|| DiffPolynomial::zero(layout));
                *slot = if above % 2 == 0 { &*slot + &prod } else { &*slot - &prod };
            }
        }
        next.retain(|_, p| !p.is_zero());
        level = next;
    }
    level.remove(&((1u32 << m) - 1)).unwrap_or_else(|| DiffPolynomial::zero(layout))
}
