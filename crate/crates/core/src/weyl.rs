//! Weyl group machinery: reflections, the shifted and component actions,
//! translations t_μ, subgroup enumeration, |wμ| and regularity.
//!
//! An element is stored as t_τ ∘ L, with L linear on the finite labels
//! (fixing Λ₀ and δ) and τ a finite translation vector. Two elements are the
//! same group element exactly when (L, τ) agree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{inverse, Matrix};
use crate::rootsys::{AlgebraSpec, Component, WPrime};
use crate::weights::{is_integer, qi, BasisLabel, Rational, Weight};

/// Hard cap on the size of an exhaustively enumerated finite group.
pub const MAX_GROUP_ORDER: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subgroup {
    /// Affine Weyl group of the even part.
    W,
    /// Finite Weyl group Ẇ.
    Wdot,
    /// W# = Ẇ# ⋉ T.
    Wsharp,
    /// Ẇ#, the Weyl group of the positive-norm part.
    WdotSharp,
    /// Ẇ′ as selected by the catalog.
    WdotPrime,
    /// The complementary factor Ẇ″ with Ẇ = Ẇ′ × Ẇ″.
    WdotDoublePrime,
    /// Translations t_μ, μ ∈ Q′.
    T,
    /// W′ = Ẇ′T.
    Wprime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Reflect(Weight),
    Translate(Weight),
}

#[derive(Debug, Clone)]
pub struct WeylElement {
    pub lin: Matrix,
    pub trans: Vec<Rational>,
    pub sign: i8,
    pub word: Vec<Generator>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.lin == other.lin && self.trans == other.trans
    }
}

impl Eq for WeylElement {}

/// (λ,δ), δ-coefficient and finite label coordinates of a weight.
fn split(spec: &AlgebraSpec, lam: &Weight) -> (Rational, Rational, Vec<Rational>) {
    let x = spec.form.labels().iter().map(|l| lam.coeff(*l)).collect();
    (lam.coeff(BasisLabel::Lambda0), lam.coeff(BasisLabel::DeltaIm), x)
}

fn join(spec: &AlgebraSpec, m: &Rational, j: &Rational, x: &[Rational]) -> Weight {
    let mut w = Weight::zero();
    w.add_term(BasisLabel::Lambda0, m);
    w.add_term(BasisLabel::DeltaIm, j);
    for (l, c) in spec.form.labels().iter().zip(x) {
        w.add_term(*l, c);
    }
    w
}

fn gram_pair(g: &Matrix, a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() && !g[i][j].is_zero() {
                acc += ai * bj * &g[i][j];
            }
        }
    }
    acc
}

fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, x)| !x.is_zero() && !b[*k][j].is_zero())
                        .fold(Rational::zero(), |acc, (k, x)| acc + x * &b[k][j])
                })
                .collect()
        })
        .collect()
}

impl WeylElement {
    pub fn identity(spec: &AlgebraSpec) -> Self {
        let n = spec.form.labels().len();
        let lin = (0..n)
            .map(|i| (0..n).map(|j| if i == j { qi(1) } else { Rational::zero() }).collect())
            .collect();
        Self {
            lin,
            trans: vec![Rational::zero(); n],
            sign: 1,
            word: Vec::new(),
        }
    }

    /// s_α for a real root α = jδ + α̇ with (α̇,α̇) ≠ 0.
    pub fn reflection(spec: &AlgebraSpec, alpha: &Weight) -> Result<Self> {
        let (m, j, a) = split(spec, alpha);
        if !m.is_zero() {
            return Err(Error::Precondition(format!("{alpha} has a Λ₀ component")));
        }
        let g = &spec.label_gram;
        let na = gram_pair(g, &a, &a);
        if na.is_zero() {
            return Err(Error::Precondition(format!("cannot reflect in isotropic {alpha}")));
        }
        let ga: Vec<Rational> = (0..a.len()).map(|i| gram_pair(g, &unit(a.len(), i), &a)).collect();
        let c = qi(2) / &na;
        let lin = (0..a.len())
            .map(|r| {
                (0..a.len())
                    .map(|col| {
                        let id = if r == col { qi(1) } else { Rational::zero() };
                        id - &c * &a[r] * &ga[col]
                    })
                    .collect()
            })
            .collect();
        // s_{jδ+α̇} = t_{−jα̇∨} s_α̇
        let trans = a.iter().map(|x| -(&j * &c * x)).collect();
        Ok(Self {
            lin,
            trans,
            sign: -1,
            word: vec![Generator::Reflect(alpha.clone())],
        })
    }

    /// t_μ for μ ∈ Q′.
    pub fn translation(spec: &AlgebraSpec, mu: &Weight) -> Result<Self> {
        if !in_q_prime(spec, mu) {
            return Err(Error::Precondition(format!("{mu} is not in the lattice Q′")));
        }
        Ok(Self::translation_unchecked(spec, mu))
    }

    fn translation_unchecked(spec: &AlgebraSpec, mu: &Weight) -> Self {
        let mut e = Self::identity(spec);
        e.trans = split(spec, mu).2;
        e.word = vec![Generator::Translate(mu.clone())];
        e
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let lb = mat_vec(&self.lin, &other.trans);
        let trans = self.trans.iter().zip(&lb).map(|(a, b)| a + b).collect();
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Self {
            lin: mat_mul(&self.lin, &other.lin),
            trans,
            sign: self.sign * other.sign,
            word,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = inverse(&self.lin).expect("Weyl elements are invertible");
        let t = mat_vec(&inv, &self.trans);
        let mut word = self.word.clone();
        word.reverse();
        for g in word.iter_mut() {
            if let Generator::Translate(mu) = g {
                *mu = -&*mu;
            }
        }
        Self {
            lin: inv,
            trans: t.into_iter().map(|x| -x).collect(),
            sign: self.sign,
            word,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.trans.iter().all(Zero::is_zero)
            && self
                .lin
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { qi(1) } else { Rational::zero() }))
    }

    pub fn is_finite(&self) -> bool {
        self.trans.iter().all(Zero::is_zero)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Linear action on h*.
    pub fn apply(&self, spec: &AlgebraSpec, lam: &Weight) -> Weight {
        let (m, j, x) = split(spec, lam);
        let (m2, j2, y) = self.apply_parts(spec, &m, &j, &x);
        join(spec, &m2, &j2, &y)
    }

    pub(crate) fn apply_parts(
        &self,
        spec: &AlgebraSpec,
        m: &Rational,
        j: &Rational,
        x: &[Rational],
    ) -> (Rational, Rational, Vec<Rational>) {
        let lx = mat_vec(&self.lin, x);
        if self.is_finite() {
            return (m.clone(), j.clone(), lx);
        }
        let g = &spec.label_gram;
        let tt = gram_pair(g, &self.trans, &self.trans);
        let dj = gram_pair(g, &lx, &self.trans) + m * &tt / qi(2);
        let y = lx.iter().zip(&self.trans).map(|(a, t)| a + m * t).collect();
        (m.clone(), j - dj, y)
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { qi(1) } else { Rational::zero() }).collect()
}

/// s_α(λ) = λ − 2(λ,α)/(α,α)·α.
pub fn reflect(spec: &AlgebraSpec, alpha: &Weight, lam: &Weight) -> Result<Weight> {
    let na = spec.norm2(alpha);
    if na.is_zero() {
        return Err(Error::Precondition(format!("cannot reflect in isotropic {alpha}")));
    }
    let c = qi(2) * spec.pair(lam, alpha) / na;
    Ok(lam - &alpha.scale(&c))
}

/// w.λ = w(λ+ρ) − ρ.
pub fn shifted_action(spec: &AlgebraSpec, w: &WeylElement, lam: &Weight, rho: &Weight) -> Weight {
    &w.apply(spec, &(lam + rho)) - rho
}

fn component_roots(c: &Component) -> BTreeSet<Weight> {
    c.positive_roots.iter().flat_map(|r| [r.clone(), -r]).collect()
}

/// Does the generator lie in the affine Weyl group of the component?
fn generator_in_component(spec: &AlgebraSpec, g: &Generator, roots: &BTreeSet<Weight>, comp_lat: &Lattice) -> bool {
    match g {
        Generator::Reflect(a) => {
            let (m, _, _) = split(spec, a);
            m.is_zero() && roots.contains(&a.finite_part())
        }
        Generator::Translate(mu) => comp_lat.coords(mu).is_some(),
    }
}

/// w ∘ λ = w(λ + ρ_l) − ρ_l for w in the Weyl group of the component l.
pub fn circ_action(spec: &AlgebraSpec, comp: &Component, w: &WeylElement, lam: &Weight) -> Result<Weight> {
    let roots = component_roots(comp);
    let lat = Lattice::new(comp.simple.clone(), &spec.form)?;
    if !w.word.iter().all(|g| generator_in_component(spec, g, &roots, &lat)) {
        return Err(Error::Precondition("element is not in the component Weyl group".into()));
    }
    let rho_l = comp.rho();
    Ok(&w.apply(spec, &(lam + &rho_l)) - &rho_l)
}

/// t_μ(λ) = λ + (λ,δ)μ − ((λ,μ) + (λ,δ)/2·(μ,μ))δ.
pub fn translation(spec: &AlgebraSpec, mu: &Weight, lam: &Weight) -> Result<Weight> {
    if !in_q_prime(spec, mu) {
        return Err(Error::Precondition(format!("{mu} is not in the lattice Q′")));
    }
    let m = spec.pair(lam, &Weight::delta());
    let shift = spec.pair(lam, mu) + &m / qi(2) * spec.norm2(mu);
    Ok(&(lam + &mu.scale(&m)) - &Weight::delta().scale(&shift))
}

/// Simple roots of the positive-norm components, Σ̇#.
pub fn sharp_simple_roots(spec: &AlgebraSpec) -> Vec<Weight> {
    spec.affine_components()
        .into_iter()
        .filter(|c| c.positive_norm)
        .flat_map(|c| c.simple)
        .collect()
}

/// Basis 2α/(α,α), α ∈ Σ̇#, of Q′.
pub fn q_prime_basis(spec: &AlgebraSpec) -> Vec<Weight> {
    sharp_simple_roots(spec)
        .into_iter()
        .map(|a| {
            let c = qi(2) / spec.norm2(&a);
            a.scale(&c)
        })
        .collect()
}

fn int_coords_in(lat: &Lattice, w: &Weight) -> Option<Vec<i64>> {
    if !w.coeff(BasisLabel::Lambda0).is_zero() || !w.coeff(BasisLabel::DeltaIm).is_zero() {
        return None;
    }
    lat.int_coords(w)
}

pub fn in_q_prime(spec: &AlgebraSpec, mu: &Weight) -> bool {
    let basis = q_prime_basis(spec);
    if basis.is_empty() {
        return mu.is_zero();
    }
    Lattice::new(basis, &spec.form)
        .ok()
        .and_then(|l| int_coords_in(&l, mu))
        .is_some()
}

/// Is the finite part in ℤΔ̇# (the δ-part being unrestricted)?
pub fn in_q_sharp(spec: &AlgebraSpec, mu: &Weight) -> bool {
    let basis = sharp_simple_roots(spec);
    let f = mu.finite_part();
    if !mu.coeff(BasisLabel::Lambda0).is_zero() || !is_integer(&mu.coeff(BasisLabel::DeltaIm)) {
        return false;
    }
    if basis.is_empty() {
        return f.is_zero();
    }
    Lattice::new(basis, &spec.form)
        .ok()
        .and_then(|l| l.int_coords(&f))
        .is_some()
}

/// Positivity of a real or imaginary root jδ + α̇ for the base {δ−θ_max} ∪ Σ̇.
pub fn is_positive_affine(spec: &AlgebraSpec, gamma: &Weight) -> bool {
    let j = gamma.coeff(BasisLabel::DeltaIm);
    if j.is_positive() {
        return true;
    }
    if j.is_negative() {
        return false;
    }
    spec.lattice
        .coords(gamma)
        .is_some_and(|c| c.iter().all(|x| !x.is_negative()) && c.iter().any(|x| x.is_positive()))
}

/// |wμ| for μ = Σ m_β β over the isotropic set S.
pub fn wmu_expand(spec: &AlgebraSpec, w: &WeylElement, m: &[u32]) -> Result<Weight> {
    if m.len() != spec.iso.len() {
        return Err(Error::Precondition(format!("expected {} multiplicities over S", spec.iso.len())));
    }
    let mut out = Weight::zero();
    for (beta, &mb) in spec.iso.iter().zip(m) {
        let wb = w.apply(spec, beta);
        if is_positive_affine(spec, &wb) {
            out += &wb.scale(&qi(mb as i64));
        } else {
            out -= &wb.scale(&qi(mb as i64 + 1));
        }
    }
    Ok(out)
}

fn finite_generators(spec: &AlgebraSpec, sel: Subgroup) -> Vec<Weight> {
    let comps = spec.affine_components();
    let prime_positive = spec.wprime == WPrime::Sharp;
    comps
        .into_iter()
        .filter(|c| match sel {
            Subgroup::Wdot | Subgroup::W => true,
            Subgroup::WdotSharp | Subgroup::Wsharp | Subgroup::T => c.positive_norm,
            Subgroup::WdotPrime | Subgroup::Wprime => c.positive_norm == prime_positive,
            Subgroup::WdotDoublePrime => c.positive_norm != prime_positive,
        })
        .flat_map(|c| c.simple)
        .collect()
}

fn key(e: &WeylElement) -> (Matrix, Vec<Rational>) {
    (e.lin.clone(), e.trans.clone())
}

/// Breadth-first closure; `max_len` caps the word length.
fn bfs(spec: &AlgebraSpec, gens: &[WeylElement], max_len: Option<usize>) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(spec);
    let mut seen: BTreeSet<(Matrix, Vec<Rational>)> = BTreeSet::new();
    seen.insert(key(&id));
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([(id, 0usize)]);
    while let Some((e, d)) = queue.pop_front() {
        if max_len.is_some_and(|l| d >= l) {
            continue;
        }
        for g in gens {
            let n = e.compose(g);
            if seen.insert(key(&n)) {
                if out.len() >= MAX_GROUP_ORDER {
                    return Err(Error::Resource(format!("group exceeds {MAX_GROUP_ORDER} elements")));
                }
                out.push(n.clone());
                queue.push_back((n, d + 1));
            }
        }
    }
    Ok(out)
}

/// Finite Weyl subgroup Ẇ, Ẇ#, Ẇ′ or Ẇ″, enumerated exhaustively.
pub fn finite_group(spec: &AlgebraSpec, sel: Subgroup) -> Result<Vec<WeylElement>> {
    let gens = finite_generators(spec, sel)
        .iter()
        .map(|a| WeylElement::reflection(spec, a))
        .collect::<Result<Vec<_>>>()?;
    bfs(spec, &gens, None)
}

fn ceil_sqrt(x: &Rational) -> i64 {
    if !x.is_positive() {
        return 0;
    }
    let c = x.ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4);
    let r = c.sqrt();
    if r * r >= c {
        r
    } else {
        r + 1
    }
}

/// Lattice points ν ∈ Q′ with m(ν,ν)/2 + (x,ν) ≤ bound, sorted by (ν,ν).
/// Requires m > 0; Q′ is positive definite.
pub fn translations_within(spec: &AlgebraSpec, m: &Rational, x: &Weight, bound: &Rational) -> Result<Vec<Weight>> {
    if !m.is_positive() {
        return Err(Error::Precondition("translation enumeration needs positive level".into()));
    }
    let basis = q_prime_basis(spec);
    let r = basis.len();
    if r == 0 {
        return Ok(if bound.is_negative() { vec![] } else { vec![Weight::zero()] });
    }
    let g: Matrix = basis.iter().map(|a| basis.iter().map(|b| spec.pair(a, b)).collect()).collect();
    let ginv = inverse(&g).ok_or_else(|| Error::Structure("degenerate Q′".into()))?;
    let b: Vec<Rational> = basis.iter().map(|a| spec.pair(x, a)).collect();
    // centre c = −G⁻¹b/m; radius² = 2·bound/m + cᵀGc
    let c: Vec<Rational> = mat_vec(&ginv, &b).into_iter().map(|v| -v / m).collect();
    let cgc = {
        let gc = mat_vec(&g, &c);
        c.iter().zip(&gc).fold(Rational::zero(), |a, (p, q)| a + p * q)
    };
    let r2 = qi(2) * bound / m + cgc;
    if r2.is_negative() {
        return Ok(vec![]);
    }
    let ranges: Vec<(i64, i64)> = (0..r)
        .map(|i| {
            let half = ceil_sqrt(&(&r2 * &ginv[i][i]));
            let ci = c[i].floor().to_integer().to_i64().unwrap_or(0);
            (ci - half - 1, ci + half + 2)
        })
        .collect();
    let mut out: Vec<(Rational, Weight)> = Vec::new();
    let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let nu = basis
            .iter()
            .zip(&idx)
            .fold(Weight::zero(), |acc, (a, &k)| &acc + &a.scale(&qi(k)));
        let nn = spec.norm2(&nu);
        let val = m * &nn / qi(2) + spec.pair(x, &nu);
        if &val <= bound {
            out.push((nn, nu));
        }
        let mut i = 0;
        loop {
            if i == r {
                out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
                return Ok(out.into_iter().map(|p| p.1).collect());
            }
            idx[i] += 1;
            if idx[i] <= ranges[i].1 {
                break;
            }
            idx[i] = ranges[i].0;
            i += 1;
        }
    }
}

/// Enumerates a subgroup. For finite subgroups `bound` is ignored and the
/// whole group is returned; for T it caps (μ,μ) ≤ 2·bound²; for the affine
/// groups W, W#, W′ it caps the word length in their affine simple reflections.
pub fn enumerate(spec: &AlgebraSpec, sel: Subgroup, bound: usize) -> Result<Vec<WeylElement>> {
    match sel {
        Subgroup::Wdot | Subgroup::WdotSharp | Subgroup::WdotPrime | Subgroup::WdotDoublePrime => {
            finite_group(spec, sel)
        }
        Subgroup::T => {
            let b = qi(2 * (bound as i64) * (bound as i64));
            let nus = translations_within(spec, &qi(2), &Weight::zero(), &b)?;
            Ok(nus.iter().map(|n| WeylElement::translation_unchecked(spec, n)).collect())
        }
        Subgroup::W | Subgroup::Wsharp | Subgroup::Wprime => {
            let comps = spec.affine_components();
            let prime_positive = spec.wprime == WPrime::Sharp;
            let mut gens = Vec::new();
            for c in comps {
                let take = match sel {
                    Subgroup::W => true,
                    Subgroup::Wsharp => c.positive_norm,
                    _ => c.positive_norm == prime_positive,
                };
                let affine = match sel {
                    Subgroup::Wprime => c.positive_norm,
                    _ => true,
                };
                if take {
                    let roots = if affine { c.affine_simple() } else { c.simple.clone() };
                    for a in roots {
                        gens.push(WeylElement::reflection(spec, &a)?);
                    }
                }
                if sel == Subgroup::Wprime && !prime_positive && c.positive_norm {
                    // W′ = Ẇ′ × T with T from the positive-norm part
                    for a in c.simple.iter() {
                        let cor = a.scale(&(qi(2) / spec.norm2(a)));
                        gens.push(WeylElement::translation_unchecked(spec, &cor));
                        gens.push(WeylElement::translation_unchecked(spec, &-&cor));
                    }
                }
            }
            bfs(spec, &gens, Some(bound))
        }
    }
}

/// W#-regularity of λ at level k+h∨: (λ,α) ∉ (k+h∨)ℤ for α ∈ (Δ̇#)⁺.
pub fn is_regular(spec: &AlgebraSpec, k: &Rational, lam: &Weight) -> Result<bool> {
    let level = k + &spec.h_dual;
    if level.is_zero() {
        return Err(Error::Precondition("critical level".into()));
    }
    Ok(spec
        .roots
        .iter()
        .filter(|r| r.positive && !r.odd && r.norm.is_positive())
        .all(|r| !is_integer(&(spec.pair(lam, &r.weight) / &level))))
}

/// Stabilizer of λ in a list of group elements.
pub fn stabilizer<'a>(spec: &AlgebraSpec, group: &'a [WeylElement], lam: &Weight) -> Vec<&'a WeylElement> {
    group.iter().filter(|w| &w.apply(spec, lam) == lam).collect()
}

/// Element orders by size, used by tests and reports.
pub fn order_counts(group: &[WeylElement]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for w in group {
        *m.entry(w.length()).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::q;

    fn spec(id: &str) -> AlgebraSpec {
        AlgebraSpec::from_id(id).unwrap()
    }

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    #[test]
    fn reflect_theta() {
        let s = spec("sl:2|3");
        assert_eq!(reflect(&s, &s.theta, &s.theta).unwrap(), -&s.theta);
        assert!(matches!(reflect(&s, &w("e1-d1"), &s.theta), Err(Error::Precondition(_))));
    }

    #[test]
    fn sl2_affine_reflection() {
        let s = spec("lie:A1");
        let a0 = &Weight::delta() - &s.theta;
        let s0 = WeylElement::reflection(&s, &a0).unwrap();
        let rho = s.weyl_vector();
        // s₀.Λ₀ = Λ₀ − 2α₀ at k = 1
        assert_eq!(shifted_action(&s, &s0, &Weight::lambda0(), &rho), &Weight::lambda0() - &a0.scale(&qi(2)));
        for k in 0..4 {
            let lam = Weight::lambda0().scale(&qi(k));
            let got = shifted_action(&s, &s0, &lam, &rho);
            assert_eq!(got, &lam - &a0.scale(&qi(k + 1)));
        }
    }

    #[test]
    fn element_reflection_matches_direct_formula() {
        let s = spec("spo:2|3");
        let lam = w("3L0 + 1/2d1 - 2e1 + delta");
        for r in s.roots.iter().filter(|r| !r.norm.is_zero()) {
            for j in -2..=2 {
                let a = &r.weight + &Weight::delta().scale(&qi(j));
                let e = WeylElement::reflection(&s, &a).unwrap();
                assert_eq!(e.apply(&s, &lam), reflect(&s, &a, &lam).unwrap());
            }
        }
    }

    #[test]
    fn translation_formula_for_sl2() {
        let s = spec("lie:A1");
        let a = s.theta.clone();
        let got = translation(&s, &a, &Weight::lambda0()).unwrap();
        assert_eq!(got, &(&Weight::lambda0() + &a) - &Weight::delta());
        assert_eq!(s.norm2(&got), qi(0));
        assert_eq!(translation(&s, &Weight::zero(), &got).unwrap(), got);
        assert_eq!(translation(&s, &a, &Weight::delta()).unwrap(), Weight::delta());
        assert!(translation(&s, &a.scale(&q(1, 2)), &got).is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(finite_group(&spec("lie:A1"), Subgroup::Wdot).unwrap().len(), 2);
        assert_eq!(finite_group(&spec("lie:A2"), Subgroup::Wdot).unwrap().len(), 6);
        assert_eq!(finite_group(&spec("lie:B3"), Subgroup::Wdot).unwrap().len(), 48);
        assert_eq!(finite_group(&spec("lie:G2"), Subgroup::Wdot).unwrap().len(), 12);
        assert_eq!(finite_group(&spec("osp:4|4"), Subgroup::WdotDoublePrime).unwrap().len(), 4);
        assert_eq!(finite_group(&spec("osp:4|6"), Subgroup::WdotDoublePrime).unwrap().len(), 4);
        assert_eq!(enumerate(&spec("lie:A1"), Subgroup::T, 2).unwrap().len(), 5);
    }

    #[test]
    fn translation_composition_matches_element() {
        let s = spec("lie:A2");
        let basis = q_prime_basis(&s);
        let t1 = WeylElement::translation(&s, &basis[0]).unwrap();
        let t2 = WeylElement::translation(&s, &basis[1]).unwrap();
        let sum = WeylElement::translation(&s, &(&basis[0] + &basis[1])).unwrap();
        assert_eq!(t1.compose(&t2), sum);
        let lam = w("2L0 + e1 - 1/3e3");
        assert_eq!(sum.apply(&s, &lam), translation(&s, &(&basis[0] + &basis[1]), &lam).unwrap());
    }

    #[test]
    fn regularity_examples() {
        // defect zero: kΛ₀+ρ is regular for k ≥ 0
        for id in ["lie:A2", "lie:B2", "lie:G2"] {
            let s = spec(id);
            for k in 0..4 {
                let lam = &Weight::lambda0().scale(&qi(k)) + &s.weyl_vector();
                assert!(is_regular(&s, &qi(k), &lam).unwrap(), "{id} {k}");
            }
        }
        assert!(is_regular(&spec("lie:A1"), &qi(-2), &Weight::zero()).is_err());
    }
}
