//! Truncated formal character series e^λ Σ c_ν e^{−ν}, the finite and affine
//! denominators Ṙ and R, and regularized Weyl-group sums.
//!
//! Exponents ν are stored by their coordinates over the affine base
//! {α₀ = δ − θ_max} ∪ Σ̇, so ν ∈ Q⁺ exactly when every coordinate is ≥ 0.
//! The δ-degree is the α₀ coordinate and the finite height is the sum of
//! the remaining ones; both are additive, which makes truncation sound.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{row_reduce, Matrix};
use crate::par::*;
use crate::rootsys::AlgebraSpec;
use crate::weights::{is_integer, qi, BasisLabel, Rational, Weight};
use crate::weyl::{is_positive_affine, WeylElement};

pub type Key = Vec<i64>;
pub type Coeff = i128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Bounds {
    /// Largest δ-degree kept.
    pub ddeg: i64,
    /// Largest finite height kept.
    pub height: i64,
}

impl Bounds {
    pub fn new(ddeg: i64, height: i64) -> Self {
        Self { ddeg, height }
    }

    pub fn finite(height: i64) -> Self {
        Self { ddeg: 0, height }
    }

    pub fn admits(&self, k: &[i64]) -> bool {
        k[0] <= self.ddeg && height(k) <= self.height
    }
}

pub fn height(k: &[i64]) -> i64 {
    k[1..].iter().sum()
}

pub fn in_cone(k: &[i64]) -> bool {
    k.iter().all(|&x| x >= 0)
}

fn add_keys(a: &[i64], b: &[i64]) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Key of ν = jδ + ν̇, or `None` if ν is not in the affine root lattice.
pub fn key_of(spec: &AlgebraSpec, nu: &Weight) -> Option<Key> {
    if !nu.coeff(BasisLabel::Lambda0).is_zero() {
        return None;
    }
    let j = nu.coeff(BasisLabel::DeltaIm);
    if !is_integer(&j) {
        return None;
    }
    let j = j.to_integer().to_i64()?;
    let c = spec.lattice.int_coords(&nu.finite_part())?;
    let th = spec.lattice.int_coords(&spec.theta_max)?;
    let mut k = Vec::with_capacity(c.len() + 1);
    k.push(j);
    k.extend(c.iter().zip(&th).map(|(ci, ti)| ci + j * ti));
    Some(k)
}

pub fn weight_of(spec: &AlgebraSpec, k: &[i64]) -> Weight {
    let th = spec.lattice.int_coords(&spec.theta_max).expect("θ_max is integral");
    let c: Vec<i64> = k[1..].iter().zip(&th).map(|(n, t)| n - k[0] * t).collect();
    let mut w = spec.lattice.weight_int(&c);
    w.add_term(BasisLabel::DeltaIm, &qi(k[0]));
    w
}

/// e^{anchor} Σ c_ν e^{−ν}, truncated to `bounds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSeries {
    pub anchor: Weight,
    pub bounds: Bounds,
    rank: usize,
    terms: BTreeMap<Key, Coeff>,
}

impl CharSeries {
    pub fn zero(anchor: Weight, bounds: Bounds, rank: usize) -> Self {
        Self {
            anchor,
            bounds,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(bounds: Bounds, rank: usize) -> Self {
        let mut s = Self::zero(Weight::zero(), bounds, rank);
        s.add_term(vec![0; rank + 1], 1);
        s
    }

    pub fn for_spec(spec: &AlgebraSpec, anchor: Weight, bounds: Bounds) -> Self {
        Self::zero(anchor, bounds, spec.rank())
    }

    /// Adds c·e^{−ν}; terms outside the bounds or the cone are dropped.
    pub fn add_term(&mut self, k: Key, c: Coeff) {
        debug_assert_eq!(k.len(), self.rank + 1);
        if c == 0 || !in_cone(&k) || !self.bounds.admits(&k) {
            return;
        }
        match self.terms.entry(k) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn coeff(&self, k: &[i64]) -> Coeff {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Key, Coeff> {
        &self.terms
    }

    pub fn with_anchor(mut self, anchor: Weight) -> Self {
        self.anchor = anchor;
        self
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank || self.bounds != other.bounds {
            return Err(Error::Structure("series with different ranks or bounds".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if self.anchor != other.anchor {
            return Err(Error::Structure("adding series with different anchors".into()));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), *c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Coeff) -> Self {
        let mut out = Self::zero(self.anchor.clone(), self.bounds, self.rank);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Product; anchors add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let right: Vec<(&Key, &Coeff)> = other.terms.iter().collect();
        let bounds = self.bounds;
        let left: Vec<(&Key, &Coeff)> = self.terms.iter().collect();
        let parts: Vec<BTreeMap<Key, Coeff>> = left
            .par_iter()
            .map(|(ka, ca)| {
                let mut m = BTreeMap::new();
                for (kb, cb) in &right {
                    if ka[0] + kb[0] > bounds.ddeg || height(ka) + height(kb) > bounds.height {
                        continue;
                    }
                    *m.entry(add_keys(ka, kb)).or_insert(0) += **ca * **cb;
                }
                m
            })
            .collect();
        let mut out = Self::zero(&self.anchor + &other.anchor, bounds, self.rank);
        for p in parts {
            for (k, c) in p {
                out.add_term(k, c);
            }
        }
        Ok(out)
    }

    /// Multiplies by e^{−ν} (shift of all exponents).
    pub fn shift(&self, k: &[i64]) -> Self {
        let mut out = Self::zero(self.anchor.clone(), self.bounds, self.rank);
        for (kk, c) in &self.terms {
            out.add_term(add_keys(kk, k), *c);
        }
        out
    }

    pub fn constant(&self) -> Coeff {
        self.coeff(&vec![0; self.rank + 1])
    }

    /// Inverse of a series with constant term ±1; the anchor is negated.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.constant();
        if c0 != 1 && c0 != -1 {
            return Err(Error::Arithmetic(format!("constant term {c0} is not a unit")));
        }
        // g = c0 Σ h^n with h = 1 − c0·f, which has no constant term
        let one = Self::one(self.bounds, self.rank);
        let mut f = self.clone().with_anchor(Weight::zero());
        f = f.scale(c0);
        let h = one.sub(&f)?;
        let mut acc = one.clone();
        let mut pow = one;
        let depth = self.bounds.ddeg + self.bounds.height + 1;
        for _ in 0..depth {
            pow = pow.mul(&h)?;
            if pow.is_empty() {
                break;
            }
            acc = acc.add(&pow)?;
        }
        Ok(acc.scale(c0).with_anchor(-&self.anchor))
    }

    /// Restriction to smaller bounds.
    pub fn truncate(&self, bounds: Bounds) -> Self {
        let mut out = Self::zero(self.anchor.clone(), bounds, self.rank);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), *c);
        }
        out
    }

    /// Terms as (ν, coefficient) with ν written as a weight.
    pub fn to_weights(&self, spec: &AlgebraSpec) -> Vec<(Weight, Coeff)> {
        self.terms.iter().map(|(k, c)| (weight_of(spec, k), *c)).collect()
    }
}

fn root_keys(spec: &AlgebraSpec, bounds: Bounds) -> Vec<(Key, bool, usize)> {
    // (key, odd, multiplicity) of positive affine roots within bounds
    let mut out = Vec::new();
    let r = spec.rank();
    let th = spec.lattice.int_coords(&spec.theta_max).expect("θ_max is integral");
    for j in 0..=bounds.ddeg {
        for ri in &spec.roots {
            let k: Key = std::iter::once(j)
                .chain(ri.coords.iter().zip(&th).map(|(c, t)| c + j * t))
                .collect();
            if in_cone(&k) && bounds.admits(&k) {
                out.push((k, ri.odd, 1));
            }
        }
        if j > 0 {
            let k: Key = std::iter::once(j).chain(th.iter().map(|t| j * t)).collect();
            if bounds.admits(&k) {
                out.push((k, false, spec.cartan_dim));
            }
        }
    }
    debug_assert!(out.iter().all(|(k, _, _)| k.len() == r + 1));
    out
}

fn apply_factor(s: &CharSeries, k: &[i64], odd: bool) -> Result<CharSeries> {
    if !odd {
        // (1 − e^{−α})
        return s.sub(&s.shift(k));
    }
    // (1 + e^{−α})^{−1} = Σ (−1)^n e^{−nα}
    let mut acc = s.clone();
    let mut cur = s.clone();
    let mut sign = 1;
    loop {
        cur = cur.shift(k);
        if cur.is_empty() {
            break;
        }
        sign = -sign;
        acc = acc.add(&cur.scale(sign))?;
    }
    Ok(acc)
}

/// Ṙ = ∏_{α∈Δ̇₀⁺}(1−e^{−α}) ∏_{α∈Δ̇₁⁺}(1+e^{−α})^{−1}, anchor 0.
pub fn rdot(spec: &AlgebraSpec, bounds: Bounds) -> Result<CharSeries> {
    let b = Bounds { ddeg: 0, ..bounds };
    let mut s = CharSeries::one(b, spec.rank());
    for (k, odd, _) in root_keys(spec, b) {
        if k[0] == 0 {
            s = apply_factor(&s, &k, odd)?;
        }
    }
    Ok(CharSeries { bounds, ..s })
}

/// R over all positive affine roots, imaginary ones with multiplicity dim ḣ.
pub fn affine_r(spec: &AlgebraSpec, bounds: Bounds) -> Result<CharSeries> {
    let mut s = CharSeries::one(bounds, spec.rank());
    for (k, odd, mult) in root_keys(spec, bounds) {
        for _ in 0..mult {
            s = apply_factor(&s, &k, odd)?;
        }
    }
    Ok(s)
}

/// Coefficients of e^{λ−ν} in F_G(e^λ/∏_{β∈S}(1+e^{−β})) = Σ_{w∈G} Σ_{μ∈ℤ≥0S}
/// (−1)^{ht μ} sgn(w) e^{wλ−|wμ|}. Keys outside Q⁺ are kept so that callers
/// can detect them; keys beyond the bounds are dropped.
pub fn weyl_sum(
    spec: &AlgebraSpec,
    group: &[WeylElement],
    lam: &Weight,
    bounds: Bounds,
) -> Result<BTreeMap<Key, Coeff>> {
    let parts: Vec<Result<BTreeMap<Key, Coeff>>> = group
        .par_iter()
        .map(|w| weyl_term(spec, w, lam, bounds))
        .collect();
    let mut out: BTreeMap<Key, Coeff> = BTreeMap::new();
    for p in parts {
        for (k, c) in p? {
            *out.entry(k).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

fn weyl_term(spec: &AlgebraSpec, w: &WeylElement, lam: &Weight, bounds: Bounds) -> Result<BTreeMap<Key, Coeff>> {
    let mut out = BTreeMap::new();
    let base = key_of(spec, &(lam - &w.apply(spec, lam)))
        .ok_or_else(|| Error::Structure(format!("λ − wλ is not in the root lattice for λ = {lam}")))?;
    if base[0] > bounds.ddeg {
        return Ok(out);
    }
    // per β: starting offset, step and sign pattern
    let mut steps = Vec::new();
    let mut start = base;
    for beta in &spec.iso {
        let wb = w.apply(spec, beta);
        if is_positive_affine(spec, &wb) {
            steps.push(key_of(spec, &wb).expect("wβ is a root"));
        } else {
            let k = key_of(spec, &-&wb).expect("wβ is a root");
            start = add_keys(&start, &k);
            steps.push(k);
        }
    }
    let exceeds = |k: &[i64]| k[0] > bounds.ddeg || height(k) > bounds.height;
    let sign0 = w.sign as Coeff;
    // depth-first over μ ∈ ℤ≥0S; every step raises δ-degree + height
    fn rec(
        i: usize,
        cur: Key,
        sign: Coeff,
        steps: &[Key],
        exceeds: &dyn Fn(&[i64]) -> bool,
        out: &mut BTreeMap<Key, Coeff>,
    ) {
        if exceeds(&cur) {
            return;
        }
        if i == steps.len() {
            *out.entry(cur).or_insert(0) += sign;
            return;
        }
        let mut k = cur;
        let mut s = sign;
        while !exceeds(&k) {
            rec(i + 1, k.clone(), s, steps, exceeds, out);
            k = add_keys(&k, &steps[i]);
            s = -s;
        }
    }
    rec(0, start, sign0, &steps, &exceeds, &mut out);
    Ok(out)
}

/// Pairs (ν, t_ν ẇ) with ẇ ∈ Ẇ′ and ν ∈ Q′ such that e^{t_ν ẇ λ} can reach
/// δ-degree ≤ `ddeg`. λ must have positive level.
pub fn affine_prime_parts(spec: &AlgebraSpec, lam: &Weight, ddeg: i64) -> Result<Vec<(Weight, WeylElement)>> {
    let m = spec.pair(lam, &Weight::delta());
    let finite = crate::weyl::finite_group(spec, crate::weyl::Subgroup::WdotPrime)?;
    let mut out = Vec::new();
    for w in finite {
        let wl = w.apply(spec, lam);
        for nu in crate::weyl::translations_within(spec, &m, &wl, &qi(ddeg))? {
            let t = WeylElement::translation(spec, &nu)?.compose(&w);
            out.push((nu, t));
        }
    }
    Ok(out)
}

pub fn affine_prime_elements(spec: &AlgebraSpec, lam: &Weight, ddeg: i64) -> Result<Vec<WeylElement>> {
    Ok(affine_prime_parts(spec, lam, ddeg)?.into_iter().map(|p| p.1).collect())
}

/// F_{W′}(e^λ/∏_{β∈S}(1+e^{−β})) as coefficients of e^{λ−ν}.
pub fn affine_weyl_sum(spec: &AlgebraSpec, lam: &Weight, bounds: Bounds) -> Result<BTreeMap<Key, Coeff>> {
    let group = affine_prime_elements(spec, lam, bounds.ddeg)?;
    weyl_sum(spec, &group, lam, bounds)
}

fn label_vector(spec: &AlgebraSpec, w: &Weight) -> Vec<Rational> {
    let mut v: Vec<Rational> = spec.form.labels().iter().map(|l| w.coeff(*l)).collect();
    v.push(w.coeff(BasisLabel::DeltaIm));
    v.push(w.coeff(BasisLabel::Lambda0));
    v
}

/// Solves Σ x_i cols_i = rhs; `None` when there is no solution.
fn solve_columns(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = cols.len();
    let mut m: Matrix = (0..rhs.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).chain(std::iter::once(rhs[r].clone())).collect())
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = m[row][n].clone();
    }
    Some(x)
}

/// The coefficient of e^{λ−ν} in Σ_{w∈group} Σ_μ (−1)^{ht μ} sgn(w) e^{wλ−|wμ|},
/// computed without truncation: for each w the isotropic roots wβ are
/// linearly independent, so at most one μ contributes.
pub fn weyl_sum_at(spec: &AlgebraSpec, group: &[WeylElement], lam: &Weight, nu: &Weight) -> Result<Coeff> {
    let terms: Vec<Coeff> = group
        .par_iter()
        .map(|w| {
            let mut rem = &(nu - lam) + &w.apply(spec, lam);
            let mut cols = Vec::new();
            for beta in &spec.iso {
                let wb = w.apply(spec, beta);
                if is_positive_affine(spec, &wb) {
                    cols.push(label_vector(spec, &wb));
                } else {
                    rem = &rem + &wb;
                    cols.push(label_vector(spec, &-&wb));
                }
            }
            let x = match solve_columns(&cols, &label_vector(spec, &rem)) {
                Some(x) => x,
                None => return 0,
            };
            if x.iter().any(|m| !is_integer(m) || m.is_negative()) {
                return 0;
            }
            let ht: i64 = x.iter().map(|m| m.to_integer().to_i64().unwrap_or(0)).sum();
            let s = w.sign as Coeff;
            if ht % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    Ok(terms.into_iter().sum())
}

/// K̇(μ) for μ ∈ Q̇⁺ of finite height ≤ `height`, keyed by base coordinates.
pub fn kdot(spec: &AlgebraSpec, height: i64) -> Result<BTreeMap<Vec<i64>, Coeff>> {
    let r = rdot(spec, Bounds::finite(height))?;
    Ok(r.iter().map(|(k, c)| (k[1..].to_vec(), *c)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Discrepancy {
    pub nu: String,
    pub key: Key,
    pub lhs: Coeff,
    pub rhs: Coeff,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DenominatorReport {
    pub ok: bool,
    pub terms_compared: usize,
    pub group_order: usize,
    pub witness: Option<Discrepancy>,
}

/// Compares two coefficient maps on every key either of them carries,
/// returning the first disagreement in key order.
pub fn first_discrepancy(
    spec: &AlgebraSpec,
    lhs: &BTreeMap<Key, Coeff>,
    rhs: &BTreeMap<Key, Coeff>,
) -> (usize, Option<Discrepancy>) {
    let mut keys: Vec<&Key> = lhs.keys().chain(rhs.keys()).collect();
    keys.sort_by(|a, b| (a[0] + height(a), *a).cmp(&(b[0] + height(b), *b)));
    keys.dedup();
    for k in &keys {
        let l = lhs.get(*k).copied().unwrap_or(0);
        let r = rhs.get(*k).copied().unwrap_or(0);
        if l != r {
            return (
                keys.len(),
                Some(Discrepancy {
                    nu: weight_of(spec, k).to_string(),
                    key: (*k).clone(),
                    lhs: l,
                    rhs: r,
                }),
            );
        }
    }
    (keys.len(), None)
}

/// Ṙe^ρ̇ = Σ_{w∈Ẇ′} Σ_μ (−1)^{p(μ)} sgn(w) e^{wρ̇−|wμ|}, compared within bounds.
pub fn denominator_check(spec: &AlgebraSpec, bounds: Bounds) -> Result<DenominatorReport> {
    let b = Bounds::finite(bounds.height);
    let lhs = rdot(spec, b)?;
    let group = crate::weyl::finite_group(spec, crate::weyl::Subgroup::WdotPrime)?;
    let rhs = weyl_sum(spec, &group, &spec.rho_dot, b)?;
    let (n, witness) = first_discrepancy(spec, lhs.terms(), &rhs);
    Ok(DenominatorReport {
        ok: witness.is_none(),
        terms_compared: n,
        group_order: group.len(),
        witness,
    })
}

/// Value used for multiplicities of the graded pieces in reports.
pub fn as_rational(c: Coeff) -> Rational {
    Rational::from_integer(c.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: &str) -> AlgebraSpec {
        AlgebraSpec::from_id(id).unwrap()
    }

    #[test]
    fn geometric_series_inverts() {
        let b = Bounds::new(0, 8);
        let mut f = CharSeries::one(b, 1);
        f.add_term(vec![0, 1], -1);
        let g = f.invert_unit().unwrap();
        for n in 0..=8 {
            assert_eq!(g.coeff(&[0, n]), 1);
        }
        assert_eq!(f.mul(&g).unwrap(), CharSeries::one(b, 1));
        let mut p = CharSeries::one(b, 1);
        p.add_term(vec![0, 1], 1);
        let pi = p.invert_unit().unwrap();
        for n in 0..=8 {
            assert_eq!(pi.coeff(&[0, n]), if n % 2 == 0 { 1 } else { -1 });
        }
        let mut bad = CharSeries::one(b, 1);
        bad.add_term(vec![0, 0], 1);
        assert!(matches!(bad.invert_unit(), Err(Error::Arithmetic(_))));
    }

    #[test]
    fn sl2_rdot() {
        let s = spec("lie:A1");
        let r = rdot(&s, Bounds::finite(5)).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.coeff(&[0, 0]), 1);
        assert_eq!(r.coeff(&[0, 1]), -1);
    }

    #[test]
    fn keys_round_trip() {
        let s = spec("sl:2|3");
        for r in &s.roots {
            for j in -2..3 {
                let w = &r.weight + &Weight::delta().scale(&qi(j));
                let k = key_of(&s, &w).unwrap();
                assert_eq!(weight_of(&s, &k), w);
            }
        }
        assert!(key_of(&s, &Weight::lambda0()).is_none());
    }

    #[test]
    fn small_denominator_identities() {
        for id in ["lie:A1", "sl:2|1", "spo:2|1"] {
            let rep = denominator_check(&spec(id), Bounds::finite(6)).unwrap();
            assert!(rep.ok, "{id}: {:?}", rep.witness);
        }
    }
}
