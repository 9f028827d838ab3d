//! Solution-count bounds for differential systems in terms of mixed volumes.
//!
//! With `δ = s - k`:
//! * `C_{s,k} = s! (δ+2)^{δ(δ+1)/2}`
//! * complete intersections: `N ≤ C_{s,k} V(Δ_1, …, Δ_k, Γ, …, Γ)` with
//!   `Γ = c Δ_ξ + Δ_1 + ⋯ + Δ_k`
//! * general systems: `N ≤ Σ_{j=k}^{s} C_{s,j} V(Δ_1, …, Δ_j, Γ_j, …, Γ_j)`,
//!   and in particular `N ≤ E_{s,k} V(Δ_1, …, Δ_k, Δ, …, Δ)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mixedvol::{factorial, mixed_volume_of, Algorithm, Body, FormalCombination};
use crate::polytope::{LatticePoint, LatticePolytope};

/// Multiple of the all-variables simplex inside `Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GammaVariant {
    /// `(s+1) Δ_ξ`
    #[default]
    Theorem12,
    /// `s Δ_ξ`
    Prop42,
    /// `(s-k+1) Δ_ξ`; only admissible for co-ideal inputs.
    Refined,
}

impl GammaVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            GammaVariant::Theorem12 => "theorem12",
            GammaVariant::Prop42 => "prop42",
            GammaVariant::Refined => "refined",
        }
    }

    /// Coefficient of `Δ_ξ` for `j` polytopes in `Z^s`.
    pub fn multiple(&self, s: usize, j: usize) -> u64 {
        match self {
            GammaVariant::Theorem12 => s as u64 + 1,
            GammaVariant::Prop42 => s as u64,
            GammaVariant::Refined => (s - j) as u64 + 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EVariant {
    /// `C_{s,k} Σ_{j=k}^{s} (2s)^{s-j}`
    #[default]
    Printed,
    /// `Σ_{j=k}^{s} (2s)^{s-j} C_{s,j}`
    PerJ,
}

impl EVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            EVariant::Printed => "printed",
            EVariant::PerJ => "per-j",
        }
    }
}

macro_rules! from_str_via {
    ($ty:ty, $($name:literal => $v:expr),*) => {
        impl std::str::FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($v),)*
                    other => Err(Error::Input(format!("unknown variant `{other}`"))),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}
from_str_via!(GammaVariant, "theorem12" => GammaVariant::Theorem12, "prop42" => GammaVariant::Prop42, "refined" => GammaVariant::Refined);
from_str_via!(EVariant, "printed" => EVariant::Printed, "per-j" => EVariant::PerJ, "per_j" => EVariant::PerJ);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundConfig {
    pub gamma: GammaVariant,
    pub e: EVariant,
    pub algorithm: Algorithm,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig { gamma: GammaVariant::default(), e: EVariant::default(), algorithm: Algorithm::Auto }
    }
}

impl BoundConfig {
    pub fn to_json(&self) -> Value {
        json!({
            "gamma_variant": self.gamma.as_str(),
            "e_variant": self.e.as_str(),
            "algorithm": self.algorithm.as_str(),
        })
    }
}

pub fn c_const(s: usize, k: usize) -> Result<BigInt> {
    if k > s {
        return Err(Error::InvalidParams(format!("k = {k} exceeds s = {s}")));
    }
    let d = (s - k) as u32;
    Ok(factorial(s) * num_traits::pow(BigInt::from(d + 2), (d * (d + 1) / 2) as usize))
}

pub fn e_const(s: usize, k: usize, variant: EVariant) -> Result<BigInt> {
    if k > s {
        return Err(Error::InvalidParams(format!("k = {k} exceeds s = {s}")));
    }
    let two_s = BigInt::from(2 * s);
    let weight = |j: usize| num_traits::pow(two_s.clone(), s - j);
    match variant {
        EVariant::Printed => Ok(c_const(s, k)? * (k..=s).map(weight).sum::<BigInt>()),
        EVariant::PerJ => (k..=s).map(|j| Ok(weight(j) * c_const(s, j)?)).sum(),
    }
}

/// Theorem-style degree bound `deg(X)^{l 2^{ml}} deg(S)^{2^{ml} - 1}`.
pub fn bound_hp(deg_x: u64, deg_s: u64, m: u32, l: u32) -> Result<BigInt> {
    if deg_x == 0 || deg_s == 0 || m == 0 || l == 0 {
        return Err(Error::InvalidParams("bound_hp needs all inputs ≥ 1".into()));
    }
    let e = 1usize
        .checked_shl(m * l)
        .filter(|&e| e < (1 << 24))
        .ok_or_else(|| Error::InvalidParams("exponent 2^(ml) too large".into()))?;
    Ok(num_traits::pow(BigInt::from(deg_x), l as usize * e) * num_traits::pow(BigInt::from(deg_s), e - 1))
}

fn to_bodies<B: Clone + Into<Body>>(v: &[B]) -> Vec<Body> {
    v.iter().cloned().map(Into::into).collect()
}

fn check_dims(bodies: &[Body], s: usize) -> Result<()> {
    match bodies.iter().find(|b| b.ambient_dim() != s) {
        Some(b) => Err(Error::DimensionMismatch { expected: s, found: b.ambient_dim() }),
        None => Ok(()),
    }
}

pub(crate) fn all_simplex(s: usize) -> FormalCombination {
    FormalCombination::zero(s).with_term("D_all", &(0..s).collect::<Vec<_>>(), 1).expect("coordinates in range")
}

fn is_coideal(b: &Body) -> Result<bool> {
    match b {
        Body::Formal(_) => Ok(true),
        Body::Concrete(p) => p.is_coideal(),
    }
}

/// Whether `inner ⊆ outer`.
pub fn body_contains(outer: &Body, inner: &Body) -> Result<bool> {
    match (outer.as_formal(), inner.as_formal()) {
        (Some(o), Some(i)) => o.contains_formal(&i),
        (Some(o), None) => o.contains_polytope(&inner.realize()?),
        (None, _) => outer.realize()?.contains(&inner.realize()?),
    }
}

/// `c Δ_ξ + Σ parts`, kept formal when every part is.
pub fn minkowski_body(s: usize, c: u64, parts: &[Body]) -> Result<Body> {
    let formal: Option<Vec<FormalCombination>> = parts.iter().map(Body::as_formal).collect();
    match formal {
        Some(fs) => {
            let mut acc = all_simplex(s).scaled(c);
            for f in &fs {
                acc = acc.plus(f)?;
            }
            Ok(Body::Formal(acc))
        }
        None => {
            let mut acc = LatticePolytope::coordinate_simplex(s, &(0..s).collect::<Vec<_>>())?.dilate(c)?;
            for p in parts {
                acc = acc.minkowski_sum(&p.realize()?)?;
            }
            Ok(Body::Concrete(acc))
        }
    }
}

fn dilate_body(b: &Body, c: u64) -> Result<Body> {
    match b {
        Body::Formal(f) => Ok(Body::Formal(f.scaled(c))),
        Body::Concrete(p) => Ok(Body::Concrete(p.dilate(c)?)),
    }
}

fn coideal_guard(bodies: &[Body]) -> Result<()> {
    for (i, b) in bodies.iter().enumerate() {
        if !is_coideal(b)? {
            return Err(Error::CoidealGuard(format!("input polytope {} is not co-ideal", i + 1)));
        }
    }
    Ok(())
}

/// `Γ = c Δ_ξ + Δ_1 + ⋯ + Δ_k` for the configured multiple.
pub fn gamma_body(deltas: &[Body], s: usize, variant: GammaVariant) -> Result<Body> {
    check_dims(deltas, s)?;
    if variant == GammaVariant::Refined {
        coideal_guard(deltas)?;
    }
    minkowski_body(s, variant.multiple(s, deltas.len()), deltas)
}

/// Concrete `Γ` for explicit polytopes in `Z^s`.
pub fn gamma_polytope(deltas: &[LatticePolytope], variant: GammaVariant) -> Result<LatticePolytope> {
    let s = deltas.first().ok_or(Error::CountMismatch { expected: 1, found: 0 })?.ambient_dim();
    gamma_body(&to_bodies(deltas), s, variant)?.realize()
}

pub fn body_json(b: &Body) -> Value {
    match b {
        Body::Concrete(p) => p.to_json(),
        Body::Formal(f) => json!({ "dim": f.dim(), "formal": f.to_string() }),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundTerm {
    pub label: String,
    pub coefficient: BigInt,
    pub mixed_volume: BigRational,
    pub value: BigRational,
}

impl BoundTerm {
    fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "coefficient": self.coefficient.to_string(),
            "mixed_volume": self.mixed_volume.to_string(),
            "value": self.value.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub statement: String,
    pub config: BoundConfig,
    pub s: usize,
    pub k: usize,
    pub c: Option<BigInt>,
    pub e: Option<BigInt>,
    pub gamma: Option<Body>,
    pub terms: Vec<BoundTerm>,
    /// `(factor, factor · Γ)` along the reduction chain.
    pub dilation_trace: Vec<(BigInt, Body)>,
    pub bound: BigRational,
    /// The `E_{s,k}` form of a general bound, when its hypothesis holds.
    pub simplified: Option<BigRational>,
    pub hp_comparison: Option<BigInt>,
    pub algorithm: Option<Algorithm>,
}

impl BoundReport {
    fn new(statement: &str, config: BoundConfig, s: usize, k: usize) -> Self {
        BoundReport {
            statement: statement.to_string(),
            config,
            s,
            k,
            c: None,
            e: None,
            gamma: None,
            terms: Vec::new(),
            dilation_trace: Vec::new(),
            bound: BigRational::zero(),
            simplified: None,
            hp_comparison: None,
            algorithm: None,
        }
    }

    /// The bound as an integer, which every mixed-volume bound is.
    pub fn bound_integer(&self) -> Option<BigInt> {
        self.bound.is_integer().then(|| self.bound.to_integer())
    }

    pub fn with_hp_comparison(mut self, hp: BigInt) -> Self {
        self.hp_comparison = Some(hp);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut config = self.config.to_json();
        if let Some(a) = self.algorithm {
            config["algorithm_used"] = json!(a.as_str());
        }
        let mut v = json!({
            "statement": self.statement,
            "config": config,
            "s": self.s,
            "k": self.k,
            "constants": {
                "C": self.c.as_ref().map(|c| c.to_string()),
                "E": self.e.as_ref().map(|e| e.to_string()),
            },
            "gamma": self.gamma.as_ref().map(body_json),
            "terms": self.terms.iter().map(BoundTerm::to_json).collect::<Vec<_>>(),
            "bound": self.bound.to_string(),
            "hp_comparison": self.hp_comparison.as_ref().map(|h| h.to_string()),
        });
        if let Some(sim) = &self.simplified {
            v["simplified_bound"] = json!(sim.to_string());
        }
        if !self.dilation_trace.is_empty() {
            v["dilation_trace"] = self
                .dilation_trace
                .iter()
                .map(|(f, b)| json!({ "factor": f.to_string(), "polytope": body_json(b) }))
                .collect();
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.statement);
        out.push_str(&format!(
            "  s = {}, k = {}, gamma = {}, E variant = {}\n",
            self.s, self.k, self.config.gamma, self.config.e
        ));
        if let Some(c) = &self.c {
            out.push_str(&format!("  C = {c}\n"));
        }
        if let Some(e) = &self.e {
            out.push_str(&format!("  E = {e}\n"));
        }
        if let Some(Body::Formal(f)) = &self.gamma {
            out.push_str(&format!("  Gamma = {f}\n"));
        }
        for t in &self.terms {
            out.push_str(&format!("  {} : {} * {} = {}\n", t.label, t.coefficient, t.mixed_volume, t.value));
        }
        for (f, _) in &self.dilation_trace {
            out.push_str(&format!("  dilation step: {f} * Gamma\n"));
        }
        out.push_str(&format!("  bound = {}\n", self.bound));
        if let Some(sim) = &self.simplified {
            out.push_str(&format!("  simplified bound = {sim}\n"));
        }
        if let Some(hp) = &self.hp_comparison {
            out.push_str(&format!("  comparison bound = {hp}\n"));
        }
        out
    }
}

fn mv(bodies: Vec<Body>, config: &BoundConfig, used: &mut Option<Algorithm>) -> Result<BigRational> {
    let (v, alg) = mixed_volume_of(&bodies, config.algorithm)?;
    // report the most general algorithm any term needed
    if *used != Some(Algorithm::Polarization) {
        *used = Some(alg);
    }
    Ok(v.value)
}

fn repeat_args(head: &[Body], tail: &Body, s: usize) -> Vec<Body> {
    let mut args = head.to_vec();
    args.extend(std::iter::repeat_n(tail.clone(), s - head.len()));
    args
}

fn label(head: usize, tail: &str, s: usize) -> String {
    let mut parts: Vec<String> = (1..=head).map(|i| format!("D{i}")).collect();
    if s > head {
        parts.push(format!("{tail} x{}", s - head));
    }
    format!("V({})", parts.join(", "))
}

/// Complete intersections: `C_{s,k} V(Δ_1, …, Δ_k, Γ ×(s-k))`.
pub fn bound_ci<B: Clone + Into<Body>>(deltas: &[B], config: &BoundConfig) -> Result<BoundReport> {
    let deltas = to_bodies(deltas);
    let k = deltas.len();
    let s = deltas.first().ok_or(Error::CountMismatch { expected: 1, found: 0 })?.ambient_dim();
    check_dims(&deltas, s)?;
    if k > s {
        return Err(Error::CountMismatch { expected: s, found: k });
    }
    let mut r = BoundReport::new("complete intersection bound: C_{s,k} V(D1..Dk, Gamma..Gamma)", *config, s, k);
    let gamma = gamma_body(&deltas, s, config.gamma)?;
    let c = c_const(s, k)?;
    let v = mv(repeat_args(&deltas, &gamma, s), config, &mut r.algorithm)?;
    let value = BigRational::from_integer(c.clone()) * &v;
    r.terms.push(BoundTerm { label: label(k, "Gamma", s), coefficient: c.clone(), mixed_volume: v, value: value.clone() });
    let delta = (s - k) as u32;
    let mut f = BigInt::one();
    for _ in 1..=delta {
        f *= delta + 2;
        r.dilation_trace.push((f.clone(), dilate_body(&gamma, num_traits::ToPrimitive::to_u64(&f).unwrap_or(0))?));
    }
    r.c = Some(c);
    r.gamma = Some(gamma);
    r.bound = value;
    Ok(r)
}

fn require_all_simplex(delta: &Body, s: usize) -> Result<()> {
    let ok = match delta.as_formal() {
        Some(f) => f.contains_formal(&all_simplex(s))?,
        None => {
            let p = delta.realize()?;
            (0..s).all(|i| p.contains_point(&LatticePoint::unit(s, i)).unwrap_or(false))
                && p.contains_point(&LatticePoint::origin(s))?
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis("the polytope must contain the all-variables simplex".into()))
    }
}

fn simplified_applies(ci: &[Body], delta: &Body) -> Result<bool> {
    for d in ci {
        if !body_contains(delta, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// General systems: the summed bound with `Δ_j := Δ` for `j > k`, and the
/// simplified `E_{s,k} V(Δ_1, …, Δ_k, Δ ×(s-k))` when each `Δ_j ⊆ Δ`.
pub fn bound_general<B: Clone + Into<Body>>(ci_deltas: &[B], delta: impl Into<Body>, config: &BoundConfig) -> Result<BoundReport> {
    let ci = to_bodies(ci_deltas);
    let delta = delta.into();
    let s = delta.ambient_dim();
    let k = ci.len();
    check_dims(&ci, s)?;
    if k == 0 || k > s {
        return Err(Error::CountMismatch { expected: s, found: k });
    }
    require_all_simplex(&delta, s)?;
    if config.gamma == GammaVariant::Refined {
        coideal_guard(&ci)?;
        coideal_guard(std::slice::from_ref(&delta))?;
    }
    let mut r = BoundReport::new("general bound: sum_j C_{s,j} V(D1..Dj, Gamma_j..Gamma_j)", *config, s, k);
    let mut all = ci.clone();
    all.extend(std::iter::repeat_n(delta.clone(), s - k));
    let mut total = BigRational::zero();
    for j in k..=s {
        let cj = c_const(s, j)?;
        let gj = minkowski_body(s, config.gamma.multiple(s, j), &all[..j])?;
        let v = mv(repeat_args(&all[..j], &gj, s), config, &mut r.algorithm)?;
        let value = BigRational::from_integer(cj.clone()) * &v;
        total += &value;
        r.terms.push(BoundTerm { label: label(j, &format!("Gamma{j}"), s), coefficient: cj, mixed_volume: v, value });
        if j == k {
            r.gamma = Some(gj);
        }
    }
    r.bound = total;
    r.c = Some(c_const(s, k)?);
    let e = e_const(s, k, config.e)?;
    if simplified_applies(&ci, &delta)? {
        let v = mv(repeat_args(&ci, &delta, s), config, &mut r.algorithm)?;
        r.simplified = Some(BigRational::from_integer(e.clone()) * v);
    }
    r.e = Some(e);
    Ok(r)
}

fn simplified_form(ci: &[Body], delta: &Body, config: &BoundConfig, statement: &str) -> Result<BoundReport> {
    let s = delta.ambient_dim();
    let k = ci.len();
    check_dims(ci, s)?;
    if k == 0 || k > s {
        return Err(Error::CountMismatch { expected: s, found: k });
    }
    require_all_simplex(delta, s)?;
    if !simplified_applies(ci, delta)? {
        return Err(Error::Hypothesis("each input polytope must lie in the ambient polytope".into()));
    }
    let mut r = BoundReport::new(statement, *config, s, k);
    let e = e_const(s, k, config.e)?;
    let v = mv(repeat_args(ci, delta, s), config, &mut r.algorithm)?;
    let value = BigRational::from_integer(e.clone()) * &v;
    r.terms.push(BoundTerm { label: label(k, "D", s), coefficient: e.clone(), mixed_volume: v, value: value.clone() });
    r.c = Some(c_const(s, k)?);
    r.e = Some(e);
    r.bound = value;
    Ok(r)
}

/// `N ≤ E_{s,k} Vol(Δ)`.
pub fn bound_kushnirenko(delta: impl Into<Body>, k: usize, config: &BoundConfig) -> Result<BoundReport> {
    let delta = delta.into();
    let s = delta.ambient_dim();
    if k == 0 || k > s {
        return Err(Error::InvalidParams(format!("need 1 ≤ k ≤ s, got k = {k}, s = {s}")));
    }
    require_all_simplex(&delta, s)?;
    let mut r = BoundReport::new("Kushnirenko-type bound: E_{s,k} Vol(D)", *config, s, k);
    let e = e_const(s, k, config.e)?;
    let vol = delta.realize()?.volume();
    let value = BigRational::from_integer(e.clone()) * &vol;
    r.terms.push(BoundTerm { label: "Vol(D)".into(), coefficient: e.clone(), mixed_volume: vol, value: value.clone() });
    r.c = Some(c_const(s, k)?);
    r.e = Some(e);
    r.bound = value;
    Ok(r)
}

/// Degree of the reduced solution set: `(s-k+1) E_{s,k} V(Δ_1, …, Δ_k, Δ ×(s-k))`.
pub fn bound_reduction_degree<B: Clone + Into<Body>>(ci_deltas: &[B], delta: impl Into<Body>, config: &BoundConfig) -> Result<BoundReport> {
    let ci = to_bodies(ci_deltas);
    let delta = delta.into();
    let mut r = simplified_form(&ci, &delta, config, "degree bound: (s-k+1) E_{s,k} V(D1..Dk, D..D)")?;
    let factor = BigRational::from_integer(BigInt::from(r.s - r.k + 1));
    r.bound = &r.bound * &factor;
    r.terms.iter_mut().for_each(|t| {
        t.coefficient = &t.coefficient * BigInt::from(r.s - r.k + 1);
        t.value = &t.value * &factor;
    });
    Ok(r)
}

/// `E_{s,k} d_X^n d_S^{nl}` with `s = n(l+1)`.
pub fn bound_degree_simple(n: usize, l: usize, k: usize, d_x: u64, d_s: u64, config: &BoundConfig) -> Result<BoundReport> {
    let s = n * (l + 1);
    if n == 0 || k == 0 || k > s {
        return Err(Error::InvalidParams(format!("need n ≥ 1 and 1 ≤ k ≤ n(l+1), got n = {n}, l = {l}, k = {k}")));
    }
    if d_s == 0 || d_x < d_s {
        return Err(Error::Hypothesis(format!("need d_X ≥ d_S ≥ 1, got d_X = {d_x}, d_S = {d_s}")));
    }
    let mut r = BoundReport::new("degree bound: E_{s,k} d_X^n d_S^(nl)", *config, s, k);
    let e = e_const(s, k, config.e)?;
    let mono = num_traits::pow(BigInt::from(d_x), n) * num_traits::pow(BigInt::from(d_s), n * l);
    let value = BigRational::from_integer(&e * &mono);
    r.terms.push(BoundTerm {
        label: "d_X^n d_S^(nl)".into(),
        coefficient: e.clone(),
        mixed_volume: BigRational::from_integer(mono),
        value: value.clone(),
    });
    r.c = Some(c_const(s, k)?);
    r.e = Some(e);
    r.bound = value;
    Ok(r)
}

/// One row of the new-versus-classical comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub d: u64,
    pub new_bound: BigInt,
    pub hp_bound: BigInt,
}

/// Tabulates `bound_degree_simple` against `bound_hp` for `d = d_X = d_S`
/// and reports the first `d` where the classical bound is strictly larger.
pub fn compare(n: usize, l: usize, k: usize, m: u32, range: std::ops::RangeInclusive<u64>, config: &BoundConfig) -> Result<(Vec<CompareRow>, Option<u64>)> {
    let mut rows = Vec::new();
    let mut crossover = None;
    for d in range {
        let new_bound = bound_degree_simple(n, l, k, d, d, config)?.bound.to_integer();
        let hp_bound = bound_hp(d, d, m, l as u32)?;
        if crossover.is_none() && hp_bound > new_bound {
            crossover = Some(d);
        }
        rows.push(CompareRow { d, new_bound, hp_bound });
    }
    Ok((rows, crossover))
}
