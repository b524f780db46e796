//! Vacuum module analytics: φ_μ, U(k), the Jantzen sum q_J, the
//! Kac–Wakimoto vacuum character, q_L, the length-two test and Y-sets.
//!
//! Every series here is written as Σ c_ν e^{−ν} relative to kΛ₀ (or to
//! kΛ₀+ρ for the Weyl sums), with ν keyed as in [`crate::charser`].

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::charser::{
    self, affine_prime_parts, affine_r, height, in_cone, key_of, rdot, weight_of, weyl_sum, weyl_sum_at, Bounds,
    CharSeries, Coeff, Key,
};
use crate::error::{Error, Result};
use crate::linalg::{rank as mat_rank, row_reduce, Matrix};
use crate::par::*;
use crate::rootsys::{AlgebraSpec, Family};
use crate::weights::{is_integer, qi, BasisLabel, Rational, Weight};
use crate::weyl::{self, finite_group, is_positive_affine, is_regular, Subgroup, WeylElement};

/// kΛ₀ + ρ.
pub fn shifted_vacuum(spec: &AlgebraSpec, k: &Rational) -> Weight {
    &Weight::lambda0().scale(k) + &spec.weyl_vector()
}

fn noncritical(spec: &AlgebraSpec, k: &Rational) -> Result<Rational> {
    let m = k + &spec.h_dual;
    if m.is_zero() {
        return Err(Error::Precondition(format!("k = {k} is the critical level")));
    }
    Ok(m)
}

/// φ_μ(k) = 2(kΛ₀+ρ, μ) − (μ, μ).
pub fn phi(spec: &AlgebraSpec, k: &Rational, mu: &Weight) -> Rational {
    qi(2) * spec.pair(&shifted_vacuum(spec, k), mu) - spec.norm2(mu)
}

/// All keys in Q⁺ within `bounds`.
pub fn box_keys(rank: usize, bounds: Bounds) -> Vec<Key> {
    fn fill(i: usize, left: i64, cur: &mut Key, out: &mut Vec<Key>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            fill(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    for j in 0..=bounds.ddeg {
        let mut cur = vec![0; rank + 1];
        cur[0] = j;
        fill(1, bounds.height, &mut cur, &mut out);
    }
    out
}

/// Keys of U(k) = {μ ∈ Q⁺ : φ_μ(k) = 0} within bounds.
pub fn uk_keys(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<Vec<Key>> {
    let m = noncritical(spec, k)?;
    let th = spec.lattice.int_coords(&spec.theta_max).expect("θ_max is integral");
    let rho_pair: Vec<Rational> = spec.base.iter().map(|a| spec.pair(&spec.rho_dot, a)).collect();
    let keys = box_keys(spec.rank(), bounds);
    let out: Vec<Key> = keys
        .into_par_iter()
        .filter(|key| {
            let c: Vec<i64> = key[1..].iter().zip(&th).map(|(n, t)| n - key[0] * t).collect();
            let lin = c.iter().zip(&rho_pair).fold(Rational::zero(), |a, (ci, r)| a + r * qi(*ci));
            let f = qi(2) * lin + qi(2 * key[0]) * &m - spec.lattice.pair_int(&c, &c);
            f.is_zero()
        })
        .collect();
    Ok(out)
}

pub fn enumerate_uk(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<Vec<Weight>> {
    Ok(uk_keys(spec, k, bounds)?.iter().map(|key| weight_of(spec, key)).collect())
}

/// The unique element μ̇ + jδ of U(k) over a given finite part, if it lies in Q⁺.
pub fn lift_to_uk(spec: &AlgebraSpec, k: &Rational, mu_dot: &Weight) -> Result<Option<Weight>> {
    let m = noncritical(spec, k)?;
    let j = (spec.norm2(mu_dot) - qi(2) * spec.pair(&spec.rho_dot, mu_dot)) / (qi(2) * m);
    if !is_integer(&j) {
        return Ok(None);
    }
    let nu = mu_dot + &Weight::delta().scale(&j);
    Ok(key_of(spec, &nu).filter(|k| in_cone(k)).map(|_| nu))
}

/// K̇ lookup keyed by finite base coordinates.
pub struct KdotTable {
    map: BTreeMap<Vec<i64>, Coeff>,
    height: i64,
}

impl KdotTable {
    pub fn new(spec: &AlgebraSpec, height: i64) -> Result<Self> {
        Ok(Self {
            map: charser::kdot(spec, height)?,
            height,
        })
    }

    pub fn get(&self, c: &[i64]) -> Coeff {
        if c.iter().any(|&x| x < 0) {
            return 0;
        }
        debug_assert!(c.iter().sum::<i64>() <= self.height, "K̇ table too short");
        self.map.get(c).copied().unwrap_or(0)
    }
}

/// Σ_{r≥1} Σ_{γ∈Δ⁺∖Δ̇} (−1)^{(r+1)p(γ)} dim g_γ K̇(μ−rγ) for μ given by its key.
/// K̇ must be tabulated to the key's finite height.
pub fn jantzen_coefficient(spec: &AlgebraSpec, kdot: &KdotTable, key: &[i64]) -> Coeff {
    let n = key[0];
    if n <= 0 {
        return 0;
    }
    let th = spec.lattice.int_coords(&spec.theta_max).expect("θ_max is integral");
    let c: Vec<i64> = key[1..].iter().zip(&th).map(|(x, t)| x - n * t).collect();
    let mut total: Coeff = 0;
    for r in (1..=n).filter(|r| n % r == 0) {
        // γ = (n/r)δ + α̇ with α̇ ∈ Δ̇ ∪ {0}
        total += spec.cartan_dim as Coeff * kdot.get(&c);
        for root in &spec.roots {
            let shifted: Vec<i64> = c.iter().zip(&root.coords).map(|(a, b)| a - r * b).collect();
            let v = kdot.get(&shifted);
            if v == 0 {
                continue;
            }
            let sign = if root.odd && r % 2 == 0 { -1 } else { 1 };
            total += sign * v;
        }
    }
    total
}

/// q_J = Σ_{μ∈U(k)} c_μ e^{−μ}.
pub fn jantzen_sum(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<CharSeries> {
    let keys = uk_keys(spec, k, bounds)?;
    let kdot = KdotTable::new(spec, bounds.height)?;
    let coeffs: Vec<(Key, Coeff)> = keys
        .into_par_iter()
        .map(|key| {
            let c = jantzen_coefficient(spec, &kdot, &key);
            (key, c)
        })
        .collect();
    let mut s = CharSeries::for_spec(spec, Weight::zero(), bounds);
    for (key, c) in coeffs {
        s.add_term(key, c);
    }
    Ok(s)
}

/// q_J at a single ν, exact.
pub fn q_j_at(spec: &AlgebraSpec, k: &Rational, nu: &Weight) -> Result<Coeff> {
    noncritical(spec, k)?;
    let key = match key_of(spec, nu) {
        Some(key) if in_cone(&key) => key,
        _ => return Ok(0),
    };
    if !phi(spec, k, nu).is_zero() {
        return Ok(0);
    }
    let kdot = KdotTable::new(spec, height(&key))?;
    Ok(jantzen_coefficient(spec, &kdot, &key))
}

fn non_negative_integer(k: &Rational) -> Result<i64> {
    if !is_integer(k) || k.is_negative() {
        return Err(Error::Precondition(format!("k = {k} is not a non-negative integer")));
    }
    k.to_integer().to_i64().ok_or_else(|| Error::Arithmetic("level out of range".into()))
}

/// Closed form for Lie algebras: q_J = Σ_{w∈Ẇ} Σ_{α∈Δ⁺_re∖Δ̇} sgn(w) e^{ws_α(λ)−λ}, λ = kΛ₀+ρ.
pub fn jantzen_sum_liealg(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<CharSeries> {
    if !spec.is_lie() {
        return Err(Error::Precondition(format!("{} is not a Lie algebra", spec.id)));
    }
    non_negative_integer(k)?;
    let lam = shifted_vacuum(spec, k);
    let group = finite_group(spec, Subgroup::Wdot)?;
    let mut acc: BTreeMap<Key, Coeff> = BTreeMap::new();
    for j in 1..=bounds.ddeg {
        for root in &spec.roots {
            let alpha = &root.weight + &Weight::delta().scale(&qi(j));
            let img = weyl::reflect(spec, &alpha, &lam)?;
            let d = &lam - &img;
            if d.coeff(BasisLabel::DeltaIm) > qi(bounds.ddeg) {
                continue;
            }
            for w in &group {
                let key = key_of(spec, &(&lam - &w.apply(spec, &img)))
                    .ok_or_else(|| Error::Structure("λ − ws_αλ outside the root lattice".into()))?;
                if key[0] <= bounds.ddeg && height(&key) <= bounds.height {
                    *acc.entry(key).or_insert(0) += w.sign as Coeff;
                }
            }
        }
    }
    series_from_map(spec, Weight::zero(), bounds, acc)
}

fn series_from_map(spec: &AlgebraSpec, anchor: Weight, bounds: Bounds, map: BTreeMap<Key, Coeff>) -> Result<CharSeries> {
    let mut s = CharSeries::for_spec(spec, anchor, bounds);
    for (key, c) in map {
        if c == 0 {
            continue;
        }
        if !in_cone(&key) {
            return Err(Error::Structure(format!(
                "term e^{{−({})}} outside Q⁺ with coefficient {c}",
                weight_of(spec, &key)
            )));
        }
        s.add_term(key, c);
    }
    Ok(s)
}

fn kw_scope(spec: &AlgebraSpec, k: &Rational) -> Result<()> {
    non_negative_integer(k)?;
    noncritical(spec, k)?;
    if spec.h_dual.is_negative() {
        return Err(Error::Precondition(format!("h∨ = {} < 0 for {}", spec.h_dual, spec.id)));
    }
    if matches!(spec.family, Family::D21a { .. }) {
        return Err(Error::Precondition("the character formula is not available for D(2|1;a)".into()));
    }
    Ok(())
}

/// e^{−kΛ₀} ch L(kΛ₀) = e^{−kΛ₀−ρ} R⁻¹ F_{W′}(e^{kΛ₀+ρ}/∏(1+e^{−β})), anchored at kΛ₀.
pub fn kw_vacuum_character(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<CharSeries> {
    kw_scope(spec, k)?;
    let lam = shifted_vacuum(spec, k);
    let f = charser::affine_weyl_sum(spec, &lam, bounds)?;
    let num = series_from_map(spec, Weight::zero(), bounds, f)?;
    let rinv = affine_r(spec, bounds)?.invert_unit()?;
    Ok(num.mul(&rinv)?.with_anchor(Weight::lambda0().scale(k)))
}

/// ch V^k = R⁻¹Ṙe^{kΛ₀}.
pub fn vacuum_verma_character(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<CharSeries> {
    let rinv = affine_r(spec, bounds)?.invert_unit()?;
    Ok(rdot(spec, bounds)?.mul(&rinv)?.with_anchor(Weight::lambda0().scale(k)))
}

fn q_l_group(spec: &AlgebraSpec, lam: &Weight, ddeg: i64) -> Result<Vec<WeylElement>> {
    Ok(affine_prime_parts(spec, lam, ddeg)?
        .into_iter()
        .filter(|(nu, _)| !nu.is_zero())
        .map(|p| p.1)
        .collect())
}

/// q_L = e^{−kΛ₀−ρ} Σ_{ν∈Q′∖0} t_ν F_{Ẇ′}(e^{kΛ₀+ρ}/∏(1+e^{−β})).
/// The ν = 0 part is checked against Ṙ on the way.
pub fn q_l(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<CharSeries> {
    kw_scope(spec, k)?;
    let lam = shifted_vacuum(spec, k);
    let finite = finite_group(spec, Subgroup::WdotPrime)?;
    let base = weyl_sum(spec, &finite, &lam, bounds)?;
    let rd = rdot(spec, bounds)?;
    if rd.terms() != &base {
        return Err(Error::Structure(format!("shifted denominator identity fails for {}", spec.id)));
    }
    let group = q_l_group(spec, &lam, bounds.ddeg)?;
    let map = weyl_sum(spec, &group, &lam, bounds)?;
    series_from_map(spec, Weight::zero(), bounds, map)
}

/// q_L at a single ν, exact.
pub fn q_l_at(spec: &AlgebraSpec, k: &Rational, nu: &Weight) -> Result<Coeff> {
    kw_scope(spec, k)?;
    let key = match key_of(spec, nu) {
        Some(key) if in_cone(&key) => key,
        _ => return Ok(0),
    };
    let lam = shifted_vacuum(spec, k);
    let group = q_l_group(spec, &lam, key[0])?;
    weyl_sum_at(spec, &group, &lam, nu)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LengthVerdict {
    ConsistentWithLengthTwo,
    LengthGreaterThanTwo { witness: String, key: Key, q_j: Coeff, q_l: Coeff },
}

#[derive(Debug, Clone, Serialize)]
pub struct JantzenReport {
    pub algebra: String,
    pub k: String,
    pub bounds: Bounds,
    pub q_j_terms: usize,
    pub q_l_terms: usize,
    pub verdict: LengthVerdict,
    #[serde(skip)]
    pub q_j: CharSeries,
    #[serde(skip)]
    pub q_l: CharSeries,
}

fn grading_order(a: &Key, b: &Key) -> std::cmp::Ordering {
    (a[0], height(a), a).cmp(&(b[0], height(b), b))
}

/// Certifies length > 2 when q_J + q_L ≠ 0 within bounds.
pub fn length_two_test(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<JantzenReport> {
    let qj = jantzen_sum(spec, k, bounds)?;
    let ql = q_l(spec, k, bounds)?;
    let sum = qj.add(&ql)?;
    let mut keys: Vec<&Key> = sum.terms().keys().collect();
    keys.sort_by(|a, b| grading_order(a, b));
    let verdict = match keys.first() {
        None => LengthVerdict::ConsistentWithLengthTwo,
        Some(key) => LengthVerdict::LengthGreaterThanTwo {
            witness: weight_of(spec, key).to_string(),
            key: (*key).clone(),
            q_j: qj.coeff(key),
            q_l: ql.coeff(key),
        },
    };
    Ok(JantzenReport {
        algebra: spec.id.clone(),
        k: k.to_string(),
        bounds,
        q_j_terms: qj.len(),
        q_l_terms: ql.len(),
        verdict,
        q_j: qj,
        q_l: ql,
    })
}

/// Decomposition of ℚΔ̇ into a main part spanned by the positive-norm
/// roots and a complement: ℚS in general, or the span of the
/// negative-norm even roots when S and the main part do not fill ℚΔ̇.
#[derive(Debug, Clone)]
pub struct Splitting {
    pub main: Vec<Weight>,
    pub complement: Vec<Weight>,
    pub via_isotropic: bool,
}

fn finite_vector(spec: &AlgebraSpec, w: &Weight) -> Vec<Rational> {
    spec.form.labels().iter().map(|l| w.coeff(*l)).collect()
}

fn independent_subset(spec: &AlgebraSpec, cands: impl Iterator<Item = Weight>) -> Vec<Weight> {
    let mut out: Vec<Weight> = Vec::new();
    for c in cands {
        let mut m: Matrix = out.iter().map(|w| finite_vector(spec, w)).collect();
        m.push(finite_vector(spec, &c));
        if mat_rank(&m) == m.len() {
            out.push(c);
        }
    }
    out
}

impl Splitting {
    pub fn new(spec: &AlgebraSpec) -> Self {
        let main = independent_subset(
            spec,
            spec.roots.iter().filter(|r| r.positive && r.norm.is_positive()).map(|r| r.weight.clone()),
        );
        if main.len() + spec.iso.len() == spec.rank() {
            let mut all: Matrix = main.iter().chain(&spec.iso).map(|w| finite_vector(spec, w)).collect();
            if mat_rank(&all) == spec.rank() {
                all.clear();
                return Self {
                    main,
                    complement: spec.iso.clone(),
                    via_isotropic: true,
                };
            }
        }
        let complement = independent_subset(
            spec,
            spec.roots
                .iter()
                .filter(|r| r.positive && !r.odd && r.norm.is_negative())
                .map(|r| r.weight.clone()),
        );
        Self {
            main,
            complement,
            via_isotropic: false,
        }
    }

    /// (main part, complement part) of a finite weight.
    pub fn split(&self, spec: &AlgebraSpec, x: &Weight) -> Result<(Weight, Weight)> {
        let cols: Vec<Weight> = self.main.iter().chain(&self.complement).cloned().collect();
        let n = cols.len();
        let rhs = finite_vector(spec, x);
        let mut m: Matrix = (0..rhs.len())
            .map(|r| {
                cols.iter()
                    .map(|c| finite_vector(spec, c)[r].clone())
                    .chain(std::iter::once(rhs[r].clone()))
                    .collect()
            })
            .collect();
        let piv = row_reduce(&mut m);
        if piv.contains(&n) {
            return Err(Error::Structure(format!("{x} is outside the split space")));
        }
        let mut coef = vec![Rational::zero(); n];
        for (row, &p) in piv.iter().enumerate() {
            coef[p] = m[row][n].clone();
        }
        let comb = |ws: &[Weight], cs: &[Rational]| {
            ws.iter().zip(cs).fold(Weight::zero(), |a, (w, c)| &a + &w.scale(c))
        };
        let nm = self.main.len();
        Ok((comb(&self.main, &coef[..nm]), comb(&self.complement, &coef[nm..])))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum YSource {
    FromJantzen,
    FromKw,
}

#[derive(Debug, Clone, Serialize)]
pub struct YSet {
    pub mu0: String,
    pub source: YSource,
    #[serde(serialize_with = "ser_weights")]
    pub points: Vec<Weight>,
}

fn ser_weights<S: serde::Serializer>(v: &[Weight], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|w| w.to_string()))
}

/// μ₀ = Σ m_β β over the isotropic simple roots.
pub fn mu0_from(spec: &AlgebraSpec, m: &[i64]) -> Result<Weight> {
    if m.len() != spec.iso.len() {
        return Err(Error::Parameter(format!("μ₀ needs {} coefficients, got {}", spec.iso.len(), m.len())));
    }
    Ok(spec.iso.iter().zip(m).fold(Weight::zero(), |a, (b, &c)| &a + &b.scale(&qi(c))))
}

fn y_points(spec: &AlgebraSpec, split: &Splitting, target: &Weight, s: &CharSeries) -> Result<Vec<Weight>> {
    let mut pts = Vec::new();
    for (key, _) in s.iter() {
        let mu = weight_of(spec, key).finite_part();
        let (main, comp) = split.split(spec, &mu)?;
        if &comp == target {
            pts.push(main);
        }
    }
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// (Y_J(μ₀), Y_L(μ₀)) from q_J and q_L truncated to `bounds`.
pub fn y_sets(spec: &AlgebraSpec, k: &Rational, mu0: &Weight, bounds: Bounds) -> Result<(YSet, YSet)> {
    let split = Splitting::new(spec);
    let (_, target) = split.split(spec, mu0)?;
    let qj = jantzen_sum(spec, k, bounds)?;
    let ql = q_l(spec, k, bounds)?;
    let mk = |source, points| YSet {
        mu0: mu0.to_string(),
        source,
        points,
    };
    Ok((
        mk(YSource::FromJantzen, y_points(spec, &split, &target, &qj)?),
        mk(YSource::FromKw, y_points(spec, &split, &target, &ql)?),
    ))
}

/// Exact membership of η in Y_J(μ₀) or Y_L(μ₀), independent of truncation.
pub fn y_contains(spec: &AlgebraSpec, k: &Rational, mu0: &Weight, eta: &Weight, source: YSource) -> Result<bool> {
    let split = Splitting::new(spec);
    let (_, target) = split.split(spec, mu0)?;
    let nu = match lift_to_uk(spec, k, &(eta + &target))? {
        Some(nu) => nu,
        None => return Ok(false),
    };
    let c = match source {
        YSource::FromJantzen => q_j_at(spec, k, &nu)?,
        YSource::FromKw => q_l_at(spec, k, &nu)?,
    };
    Ok(c != 0)
}

/// η ∈ Q′ with coordinates in [−radius, radius] over the coroot basis.
fn q_prime_box(spec: &AlgebraSpec, radius: i64) -> Vec<Weight> {
    let basis = weyl::q_prime_basis(spec);
    let mut out = vec![Weight::zero()];
    for b in &basis {
        out = out
            .into_iter()
            .flat_map(|w| (-radius..=radius).map(move |c| &w + &b.scale(&qi(c))))
            .collect();
    }
    out.retain(|w| !w.is_zero());
    out
}

/// Points (k+h∨)η predicted to lie in Y_L(μ₀): for μ₀ ≠ 0 the sign pattern
/// (η,β) ≥ 0 ⟺ m_β ≥ 0 with kΛ₀+ρ−μ₀ regular for W#; for μ₀ = 0 the sign
/// conditions against the stabilizer orbit Ẇ_ρ S.
pub fn predicted_y_l(spec: &AlgebraSpec, k: &Rational, m: &[i64], radius: i64) -> Result<Vec<Weight>> {
    let level = noncritical(spec, k)?;
    let mu0 = mu0_from(spec, m)?;
    let lam = shifted_vacuum(spec, k);
    let etas = q_prime_box(spec, radius);
    let keep: Vec<Weight> = if m.iter().any(|&x| x != 0) {
        if !is_regular(spec, k, &(&lam - &mu0).finite_part())? {
            return Err(Error::Precondition("kΛ₀+ρ−μ₀ is not W#-regular".into()));
        }
        etas.into_iter()
            .filter(|eta| {
                spec.iso
                    .iter()
                    .zip(m)
                    .all(|(b, &mb)| !spec.pair(eta, b).is_negative() == (mb >= 0))
            })
            .collect()
    } else {
        if spec.base.iter().any(|a| spec.norm2(a).is_negative()) {
            return Err(Error::Precondition("the base has a root of negative square length".into()));
        }
        let alpha0 = &Weight::delta() - &spec.theta_max;
        if !spec.pair(&lam, &alpha0).is_positive() {
            return Err(Error::Precondition("(kΛ₀+ρ, α₀) = 0".into()));
        }
        let sharp = finite_group(spec, Subgroup::WdotSharp)?;
        let stab: Vec<&WeylElement> = weyl::stabilizer(spec, &sharp, &spec.rho_dot);
        let mut orbit: Vec<Weight> = stab.iter().flat_map(|y| spec.iso.iter().map(|b| y.apply(spec, b))).collect();
        orbit.sort();
        orbit.dedup();
        etas.into_iter()
            .filter(|eta| {
                orbit.iter().all(|b| {
                    let p = spec.pair(eta, b);
                    if is_positive_affine(spec, b) {
                        !p.is_negative()
                    } else {
                        !p.is_positive()
                    }
                })
            })
            .collect()
    };
    Ok(keep.into_iter().map(|eta| eta.scale(&level)).collect())
}

/// One-dimensional cones ζ₀ + ℤ≥1ζ (ζ₀ alone when γ̇ = 0) covering Y_J(μ₀),
/// for w ∈ Ẇ′ and γ̇ ∈ Δ̇ ∪ {0}.
pub fn y_j_cones(spec: &AlgebraSpec, mu0: &Weight) -> Result<Vec<(Weight, Weight)>> {
    let split = Splitting::new(spec);
    if !split.via_isotropic {
        return Err(Error::Precondition("no isotropic splitting for this entry".into()));
    }
    let group = finite_group(spec, Subgroup::WdotPrime)?;
    let mut gammas: Vec<Weight> = spec.roots.iter().map(|r| r.weight.clone()).collect();
    gammas.push(Weight::zero());
    let mut out = Vec::new();
    for w in &group {
        let z0 = &w.apply(spec, mu0) - mu0;
        for g in &gammas {
            let (_, ps) = split.split(spec, g)?;
            out.push((z0.clone(), g - &w.apply(spec, &ps)));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Is `eta` of the form ζ₀ + rζ with r ≥ 1 (or ζ₀ when ζ = 0)?
pub fn on_cone(spec: &AlgebraSpec, eta: &Weight, cone: &(Weight, Weight)) -> bool {
    let d = eta - &cone.0;
    if cone.1.is_zero() {
        return d.is_zero();
    }
    let labels = spec.form.labels();
    let i = labels.iter().find(|l| !cone.1.coeff(**l).is_zero()).copied().expect("ζ ≠ 0");
    let r = d.coeff(i) / cone.1.coeff(i);
    is_integer(&r) && r >= qi(1) && cone.1.scale(&r) == d
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeSample {
    #[serde(serialize_with = "ser_weights")]
    pub points: Vec<Weight>,
    pub all_in_y_l: bool,
    pub none_in_y_j: bool,
}

/// The 3×3 sample {(k+h∨)(η₀ + i v₁ + j v₂)} of a two-dimensional cone,
/// tested pointwise against Y_L(μ₀) and Y_J(μ₀).
pub fn cone_sample(
    spec: &AlgebraSpec,
    k: &Rational,
    mu0: &Weight,
    eta0: &Weight,
    v1: &Weight,
    v2: &Weight,
) -> Result<ConeSample> {
    let level = noncritical(spec, k)?;
    let mut points = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let eta = &(eta0 + &v1.scale(&qi(i))) + &v2.scale(&qi(j));
            points.push(eta.scale(&level));
        }
    }
    let l: Vec<bool> = points
        .par_iter()
        .map(|p| y_contains(spec, k, mu0, p, YSource::FromKw))
        .collect::<Result<_>>()?;
    let jj: Vec<bool> = points
        .par_iter()
        .map(|p| y_contains(spec, k, mu0, p, YSource::FromJantzen))
        .collect::<Result<_>>()?;
    Ok(ConeSample {
        all_in_y_l: l.iter().all(|x| *x),
        none_in_y_j: jj.iter().all(|x| !*x),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: &str) -> AlgebraSpec {
        AlgebraSpec::from_id(id).unwrap()
    }

    #[test]
    fn phi_examples() {
        let s = spec("lie:A1");
        let a0 = &Weight::delta() - &s.theta;
        assert!(phi(&s, &qi(1), &Weight::zero()).is_zero());
        assert!(phi(&s, &qi(1), &a0.scale(&qi(2))).is_zero());
        assert_eq!(phi(&s, &qi(1), &a0), qi(2));
    }

    #[test]
    fn box_size() {
        // (D+1)·C(H+r, r)
        assert_eq!(box_keys(2, Bounds::new(1, 3)).len(), 2 * 10);
    }

    #[test]
    fn critical_level_is_refused() {
        let s = spec("lie:A1");
        assert!(matches!(uk_keys(&s, &qi(-2), Bounds::new(2, 4)), Err(Error::Precondition(_))));
    }

    #[test]
    fn uk_contains_the_s0_weight() {
        let s = spec("lie:A1");
        let a0 = &Weight::delta() - &s.theta;
        for k in 0..3 {
            let u = enumerate_uk(&s, &qi(k), Bounds::new(4, 8)).unwrap();
            assert!(u.contains(&Weight::zero()));
            assert!(u.contains(&a0.scale(&qi(k + 1))), "k={k}");
        }
    }

    #[test]
    fn splitting_reconstructs() {
        for id in ["sl:2|1", "psl:2|2", "spo:2|3", "spo:4|6", "sl:3|1"] {
            let s = spec(id);
            let sp = Splitting::new(&s);
            assert_eq!(sp.main.len() + sp.complement.len(), s.rank(), "{id}");
            for r in &s.roots {
                let (a, b) = sp.split(&s, &r.weight).unwrap();
                assert_eq!(&a + &b, r.weight);
            }
        }
        assert!(!Splitting::new(&spec("spo:4|6")).via_isotropic);
    }
}
