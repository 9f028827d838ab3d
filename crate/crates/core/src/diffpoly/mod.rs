//! Differential polynomials over Q(t) in jet coordinates.
//!
//! A [`JetLayout`] names `n` base variables and fixes a jet order `l`, giving
//! `s = n(l+1)` coordinates ordered variable-major, jet-order-minor:
//! `x, x_1, …, x_l, y, y_1, …`. Formal constants (symbols with zero
//! derivative, such as an opaque `χ(τ)`) ride along as extra generators of
//! the coefficient ring and never enter Newton polytopes.

mod elim;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::polytope::{LatticePoint, LatticePolytope};
use crate::ratfunc::RationalFunction;

pub use elim::{eliminate_linear, tau_system, TauSystem};
pub use parse::{parse_poly, parse_prolongated_system, parse_system, SystemFile};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetLayout {
    vars: Vec<String>,
    order: u32,
    consts: Vec<String>,
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric())
}

impl JetLayout {
    pub fn new<S: AsRef<str>>(vars: &[S], order: u32) -> Result<Self> {
        JetLayout::with_constants(vars, order, &[] as &[&str])
    }

    pub fn with_constants<S: AsRef<str>, C: AsRef<str>>(vars: &[S], order: u32, consts: &[C]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let consts: Vec<String> = consts.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.is_empty() {
            return Err(Error::InvalidParams("layout needs at least one variable".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in vars.iter().chain(&consts) {
            if !is_ident(name) || name == "t" {
                return Err(Error::InvalidParams(format!("`{name}` is not a usable identifier")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidParams(format!("duplicate name `{name}`")));
            }
        }
        Ok(JetLayout { vars, order, consts })
    }

    /// Number of base variables.
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Total coordinate count `n(l+1)`.
    pub fn s(&self) -> usize {
        self.n() * (self.order as usize + 1)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn constants(&self) -> &[String] {
        &self.consts
    }

    /// Coordinate index of variable `i` at jet order `j`.
    pub fn index(&self, i: usize, j: u32) -> usize {
        debug_assert!(i < self.n() && j <= self.order);
        i * (self.order as usize + 1) + j as usize
    }

    /// Inverse of [`JetLayout::index`].
    pub fn coord(&self, idx: usize) -> (usize, u32) {
        let w = self.order as usize + 1;
        (idx / w, (idx % w) as u32)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn const_index(&self, name: &str) -> Option<usize> {
        self.consts.iter().position(|v| v == name)
    }

    /// Same variables and constants at another jet order.
    pub fn with_order(&self, order: u32) -> JetLayout {
        JetLayout { vars: self.vars.clone(), order, consts: self.consts.clone() }
    }

    /// Layout of the first prolongation `N^(1)` of the space with these
    /// coordinates: every coordinate `ζ` becomes a base variable of order 1.
    pub fn first_prolongation(&self) -> JetLayout {
        let names: Vec<String> = if self.order == 0 {
            self.vars.clone()
        } else {
            (0..self.s())
                .map(|c| {
                    let (i, j) = self.coord(c);
                    if j == 0 {
                        self.vars[i].clone()
                    } else {
                        format!("{}{}", self.vars[i], j)
                    }
                })
                .collect()
        };
        let clash = {
            let mut all: Vec<&String> = names.iter().chain(&self.consts).collect();
            all.sort();
            all.windows(2).any(|w| w[0] == w[1]) || names.iter().any(|n| n == "t")
        };
        let names = if clash { (0..self.s()).map(|c| format!("z{c}")).collect() } else { names };
        JetLayout { vars: names, order: 1, consts: self.consts.clone() }
    }

    fn display_coord(&self, idx: usize) -> String {
        let (i, j) = self.coord(idx);
        if j == 0 {
            self.vars[i].clone()
        } else {
            format!("{}_{}", self.vars[i], j)
        }
    }
}

/// Exponents of one term: `s` jet coordinates followed by the formal constants.
type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPolynomial {
    layout: JetLayout,
    terms: BTreeMap<Exponents, RationalFunction>,
}

impl DiffPolynomial {
    pub fn zero(layout: &JetLayout) -> Self {
        DiffPolynomial { layout: layout.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(layout: &JetLayout, c: RationalFunction) -> Self {
        let mut p = DiffPolynomial::zero(layout);
        p.add_term(vec![0; layout.s() + layout.consts.len()], c);
        p
    }

    /// Jet coordinate `x_i^(j)`.
    pub fn var(layout: &JetLayout, i: usize, j: u32) -> Self {
        let mut e = vec![0; layout.s() + layout.consts.len()];
        e[layout.index(i, j)] = 1;
        let mut p = DiffPolynomial::zero(layout);
        p.add_term(e, RationalFunction::one());
        p
    }

    /// Formal constant number `k`.
    pub fn formal_constant(layout: &JetLayout, k: usize) -> Self {
        let mut e = vec![0; layout.s() + layout.consts.len()];
        e[layout.s() + k] = 1;
        let mut p = DiffPolynomial::zero(layout);
        p.add_term(e, RationalFunction::one());
        p
    }

    /// Builds from `(jet exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(layout: &JetLayout, terms: impl IntoIterator<Item = (Vec<u32>, RationalFunction)>) -> Result<Self> {
        let mut p = DiffPolynomial::zero(layout);
        for (mut e, c) in terms {
            if e.len() == layout.s() {
                e.extend(std::iter::repeat_n(0, layout.consts.len()));
            }
            if e.len() != layout.s() + layout.consts.len() {
                return Err(Error::DimensionMismatch { expected: layout.s(), found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn layout(&self) -> &JetLayout {
        &self.layout
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(jet exponents, constant exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], &RationalFunction)> {
        let s = self.layout.s();
        self.terms.iter().map(move |(e, c)| (&e[..s], &e[s..], c))
    }

    /// Coefficient of a jet monomial with no formal constants.
    pub fn coefficient(&self, jet_exps: &[u32]) -> RationalFunction {
        let mut key = jet_exps.to_vec();
        key.extend(std::iter::repeat_n(0, self.layout.consts.len()));
        self.terms.get(&key).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn involves_constants(&self) -> bool {
        let s = self.layout.s();
        self.terms.keys().any(|e| e[s..].iter().any(|&x| x > 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        let s = self.layout.s();
        self.terms.keys().map(|e| e[..s].iter().sum()).max()
    }

    /// Largest total degree in the given jet coordinates.
    pub fn degree_in(&self, coords: &[usize]) -> u32 {
        self.terms.keys().map(|e| coords.iter().map(|&c| e[c]).sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut p = DiffPolynomial::zero(&self.layout);
        for (e, a) in &self.terms {
            p.add_term(e.clone(), a * c);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = DiffPolynomial::constant(&self.layout, RationalFunction::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn map_jet_indices(&self, target: &JetLayout, f: impl Fn(usize) -> usize) -> Self {
        let (s, ts) = (self.layout.s(), target.s());
        let mut p = DiffPolynomial::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; ts + target.consts.len()];
            for (i, &x) in e[..s].iter().enumerate() {
                ne[f(i)] += x;
            }
            ne[ts..].copy_from_slice(&e[s..]);
            p.add_term(ne, c.clone());
        }
        p
    }

    /// Re-expresses the polynomial over the same variables at a higher order.
    pub fn embed(&self, order: u32) -> Result<Self> {
        if order < self.layout.order {
            return Err(Error::LayoutMismatch(format!(
                "cannot embed order {} polynomial at order {order}",
                self.layout.order
            )));
        }
        let target = self.layout.with_order(order);
        Ok(self.map_jet_indices(&target, |idx| {
            let (i, j) = self.layout.coord(idx);
            target.index(i, j)
        }))
    }

    /// Total derivative `D` with Leibniz rule: `x_i^(j) ↦ x_i^(j+1)` and
    /// coefficients differentiated in `t`. The result lives at order `l+1`.
    pub fn total_derivative(&self) -> Self {
        let target = self.layout.with_order(self.layout.order + 1);
        let s = self.layout.s();
        let ts = target.s();
        let lift = |e: &Exponents| -> Exponents {
            let mut ne = vec![0; ts + target.consts.len()];
            for (idx, &x) in e[..s].iter().enumerate() {
                let (i, j) = self.layout.coord(idx);
                ne[target.index(i, j)] = x;
            }
            ne[ts..].copy_from_slice(&e[s..]);
            ne
        };
        let mut out = DiffPolynomial::zero(&target);
        for (e, c) in &self.terms {
            let base = lift(e);
            out.add_term(base.clone(), c.derivative());
            for (idx, &x) in e[..s].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let (i, j) = self.layout.coord(idx);
                let mut ne = base.clone();
                ne[target.index(i, j)] -= 1;
                ne[target.index(i, j + 1)] += 1;
                out.add_term(ne, c * &RationalFunction::from_int(x as i64));
            }
        }
        out
    }

    /// `P^D`: every coefficient replaced by its `t`-derivative.
    pub fn coeff_derivative(&self) -> Self {
        let mut p = DiffPolynomial::zero(&self.layout);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.derivative());
        }
        p
    }

    /// `∂P/∂ζ` for the jet coordinate with index `idx`.
    pub fn partial(&self, idx: usize) -> Self {
        let mut p = DiffPolynomial::zero(&self.layout);
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                let mut ne = e.clone();
                ne[idx] -= 1;
                p.add_term(ne, c * &RationalFunction::from_int(e[idx] as i64));
            }
        }
        p
    }

    /// Newton polytope of the jet exponents.
    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        let s = self.layout.s();
        LatticePolytope::hull(self.terms.keys().map(|e| LatticePoint(e[..s].iter().map(|&x| x as i64).collect())))
    }

    /// Newton polytope of the projection onto a subset of jet coordinates.
    pub fn newton_polytope_on(&self, coords: &[usize]) -> Result<LatticePolytope> {
        LatticePolytope::hull(self.terms.keys().map(|e| LatticePoint(coords.iter().map(|&c| e[c] as i64).collect())))
    }

    /// Substitutes `jet(x, l)` and reduces in Q(t).
    pub fn evaluate_at_jet(&self, x: &[RationalFunction]) -> Result<RationalFunction> {
        if self.involves_constants() {
            return Err(Error::UnboundConstant);
        }
        self.evaluate_with_constants(x, &[])
    }

    /// Like [`DiffPolynomial::evaluate_at_jet`], substituting values for the
    /// formal constants as plain algebraic values.
    pub fn evaluate_with_constants(&self, x: &[RationalFunction], consts: &[RationalFunction]) -> Result<RationalFunction> {
        if x.len() != self.layout.n() {
            return Err(Error::CountMismatch { expected: self.layout.n(), found: x.len() });
        }
        let mut vals = jet(x, self.layout.order);
        if consts.len() < self.layout.consts.len() && self.involves_constants() {
            return Err(Error::UnboundConstant);
        }
        vals.extend(consts.iter().cloned());
        let mut acc = RationalFunction::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in vals.iter().zip(e.iter()) {
                if k > 0 {
                    term = &term * &v.pow(k);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// `(x, Dx, …, D^l x)` for each component, flattened variable-major.
pub fn jet(x: &[RationalFunction], l: u32) -> Vec<RationalFunction> {
    let mut out = Vec::with_capacity(x.len() * (l as usize + 1));
    for xi in x {
        let mut cur = xi.clone();
        for _ in 0..l {
            let next = cur.derivative();
            out.push(std::mem::replace(&mut cur, next));
        }
        out.push(cur);
    }
    out
}

/// Whether `y` satisfies `y_{i,j} = D y_{i,j-1}` for all variables and orders.
pub fn is_jet(y: &[RationalFunction], layout: &JetLayout) -> bool {
    if y.len() != layout.s() {
        return false;
    }
    (0..layout.n()).all(|i| (1..=layout.order).all(|j| y[layout.index(i, j)] == y[layout.index(i, j - 1)].derivative()))
}

impl Add for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        assert_eq!(self.layout, rhs.layout, "layout mismatch in polynomial addition");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Neg for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn neg(self) -> DiffPolynomial {
        DiffPolynomial { layout: self.layout.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn mul(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        assert_eq!(self.layout, rhs.layout, "layout mismatch in polynomial product");
        let mut p = DiffPolynomial::zero(&self.layout);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for DiffPolynomial {
            type Output = DiffPolynomial;
            fn $m(self, rhs: DiffPolynomial) -> DiffPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Prints in the input grammar, highest monomials first.
impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s = self.layout.s();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (idx, &x) in e[..s].iter().enumerate() {
                if x > 0 {
                    let name = self.layout.display_coord(idx);
                    factors.push(if x == 1 { name } else { format!("{name}^{x}") });
                }
            }
            for (idx, &x) in e[s..].iter().enumerate() {
                if x > 0 {
                    let name = &self.layout.consts[idx];
                    factors.push(if x == 1 { name.clone() } else { format!("{name}^{x}") });
                }
            }
            let (neg, mag) = match c.as_rational() {
                Some(r) => (r.is_negative(), RationalFunction::from_rational(r.abs())),
                None if c.is_negative() => (true, -c),
                None => (false, c.clone()),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if factors.is_empty() || !mag.is_one() {
                parts.push(mag.to_string());
            }
            parts.extend(factors);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
