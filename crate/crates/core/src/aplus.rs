//! Odd-subset enumeration and the inequality engine for unitary-type entries.
//!
//! 𝒜 is the set of finite subsets of {jδ ± β_i : j ≥ 1}, where β₁…β_l are
//! the odd roots with (β_i, θ) = −1. For A ∈ 𝒜 we write
//! μ_A = m_A δ + Σ a_i β_i with a_i = a_{i,+} − a_{i,−}.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::charser::key_of;
use crate::error::{Error, Result};
use crate::par::*;
use crate::rootsys::AlgebraSpec;
use crate::sl2verma::{jr, Sl2HatWeight};
use crate::weights::{is_integer, qi, Rational, Weight};

/// One element jδ + sign·β_i of A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OddRoot {
    pub j: i64,
    pub i: usize,
    pub sign: i8,
}

#[derive(Debug, Clone)]
pub struct OddSubset {
    pub roots: Vec<OddRoot>,
    pub mu: Weight,
    pub htt: i64,
    pub a: Vec<i64>,
    pub m_a: i64,
}

impl OddSubset {
    /// D = Σ a_i.
    pub fn d(&self) -> i64 {
        self.a.iter().sum()
    }

    /// D₊ = Σ |a_i|.
    pub fn d_plus(&self) -> i64 {
        self.a.iter().map(|x| x.abs()).sum()
    }

    /// D₂ = Σ a_i².
    pub fn d2(&self) -> i64 {
        self.a.iter().map(|x| x * x).sum()
    }

    /// μ_A ∈ ℤ≥0 δ.
    pub fn is_imaginary(&self) -> bool {
        self.mu.finite_part().is_zero()
    }
}

/// The unitary-type data the enumeration needs.
pub struct OddContext<'a> {
    pub spec: &'a AlgebraSpec,
    /// β_i with (β_i, θ) = −1.
    pub betas: Vec<Weight>,
    /// Σ(ġ₀): simple roots of the finite even root system.
    pub even_simple: Vec<Weight>,
    /// Number of β_i, equal to dim ġ₁̄ / 2.
    pub l: usize,
    htt_delta: i64,
    beta_htt: Vec<i64>,
}

fn htt_of(spec: &AlgebraSpec, w: &Weight) -> Result<i64> {
    key_of(spec, w)
        .map(|k| k.iter().sum())
        .ok_or_else(|| Error::Structure(format!("{w} is outside the root lattice")))
}

impl<'a> OddContext<'a> {
    pub fn new(spec: &'a AlgebraSpec) -> Result<Self> {
        if !spec.unitary_type() {
            return Err(Error::Precondition(format!("{} is not of unitary type", spec.id)));
        }
        let mut betas = Vec::new();
        for b in &spec.odd_roots {
            let p = spec.pair(b, &spec.theta);
            if p == qi(-1) {
                betas.push(b.clone());
            } else if p != qi(1) {
                return Err(Error::Precondition(format!("(β, θ) = {p} for β = {b}")));
            }
        }
        betas.sort();
        let pos_even: Vec<&Weight> = spec.roots.iter().filter(|r| !r.odd && r.positive).map(|r| &r.weight).collect();
        let even_simple = pos_even
            .iter()
            .filter(|a| !pos_even.iter().any(|b| pos_even.contains(&&(**a - *b))))
            .map(|a| (*a).clone())
            .collect();
        let htt_delta = htt_of(spec, &Weight::delta())?;
        let beta_htt = betas.iter().map(|b| htt_of(spec, b)).collect::<Result<_>>()?;
        Ok(Self {
            spec,
            l: betas.len(),
            betas,
            even_simple,
            htt_delta,
            beta_htt,
        })
    }

    pub fn root(&self, r: OddRoot) -> Weight {
        &Weight::delta().scale(&qi(r.j)) + &self.betas[r.i].scale(&qi(r.sign as i64))
    }

    fn root_htt(&self, r: OddRoot) -> i64 {
        r.j * self.htt_delta + r.sign as i64 * self.beta_htt[r.i]
    }

    /// −μ is ġ₀-dominant: 2(−μ, α)/(α, α) ∈ ℤ≥0 for α ∈ Σ(ġ₀).
    pub fn minus_dominant(&self, mu: &Weight) -> bool {
        self.even_simple.iter().all(|a| {
            let c = qi(-2) * self.spec.pair(mu, a) / self.spec.norm2(a);
            is_integer(&c) && !c.is_negative()
        })
    }

    fn subset(&self, roots: Vec<OddRoot>) -> OddSubset {
        let mut a = vec![0; self.l];
        let mut mu = Weight::zero();
        let mut htt = 0;
        let mut m_a = 0;
        for r in &roots {
            a[r.i] += r.sign as i64;
            mu = &mu + &self.root(*r);
            htt += self.root_htt(*r);
            m_a += r.j;
        }
        OddSubset { roots, mu, htt, a, m_a }
    }

    /// All odd roots jδ ± β_i of htt at most `cap`, sorted.
    fn candidates(&self, cap: i64) -> Vec<OddRoot> {
        let max_b = self.beta_htt.iter().map(|h| h.abs()).max().unwrap_or(0);
        let mut out = Vec::new();
        let mut j = 1;
        while j * self.htt_delta - max_b <= cap {
            for i in 0..self.l {
                for sign in [1i8, -1] {
                    let r = OddRoot { j, i, sign };
                    let h = self.root_htt(r);
                    if (1..=cap).contains(&h) {
                        out.push(r);
                    }
                }
            }
            j += 1;
        }
        out.sort();
        out
    }

    /// Every nonempty A ∈ 𝒜 with htt μ_A ≤ cap.
    pub fn enumerate_all(&self, cap: i64) -> Vec<OddSubset> {
        fn go(ctx: &OddContext, cands: &[OddRoot], start: usize, left: i64, cur: &mut Vec<OddRoot>, out: &mut Vec<Vec<OddRoot>>) {
            for idx in start..cands.len() {
                let h = ctx.root_htt(cands[idx]);
                if h > left {
                    continue;
                }
                cur.push(cands[idx]);
                out.push(cur.clone());
                go(ctx, cands, idx + 1, left - h, cur, out);
                cur.pop();
            }
        }
        let cands = self.candidates(cap);
        let mut raw = Vec::new();
        go(self, &cands, 0, cap, &mut Vec::new(), &mut raw);
        let mut subs: Vec<OddSubset> = raw.into_par_iter().map(|r| self.subset(r)).collect();
        subs.sort_by(|x, y| (x.htt, &x.roots).cmp(&(y.htt, &y.roots)));
        subs
    }
}

/// 𝒜₊ up to htt `cap`, in htt order and lexicographic within a level.
pub fn enumerate_aplus(spec: &AlgebraSpec, cap: i64) -> Result<Vec<OddSubset>> {
    if cap < 1 {
        return Err(Error::Parameter(format!("height cap {cap} must be at least 1")));
    }
    let ctx = OddContext::new(spec)?;
    Ok(ctx
        .enumerate_all(cap)
        .into_iter()
        .filter(|a| !a.mu.is_zero() && ctx.minus_dominant(&a.mu))
        .collect())
}

/// u_A = 2(k+h∨)(Λ₀, μ_A) − (1−h∨)(μ_A, θ) − ||μ_A||².
pub fn u_value(spec: &AlgebraSpec, k: &Rational, a: &OddSubset) -> Rational {
    let h = &spec.h_dual;
    qi(2) * (k + h) * qi(a.m_a) - (qi(1) - h) * spec.pair(&a.mu, &spec.theta) - spec.norm2(&a.mu)
}

/// 2(2−h∨)(−μ_A, θ).
pub fn second_bound(spec: &AlgebraSpec, a: &OddSubset) -> Rational {
    qi(2) * (qi(2) - &spec.h_dual) * -spec.pair(&a.mu, &spec.theta)
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsetEntry {
    pub roots: Vec<String>,
    pub mu: String,
    pub htt: i64,
    pub u_a: String,
    pub bound: String,
    pub positive: bool,
    pub second: bool,
    pub equality: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub algebra: String,
    pub k: String,
    pub height_cap: i64,
    pub enumerated: usize,
    pub checked: usize,
    pub all_pass: bool,
    pub violations: Vec<SubsetEntry>,
    pub boundary_equalities: Vec<SubsetEntry>,
    /// 2m_A ≥ D₂ + D₊ for every A.
    pub mass_bound: bool,
    /// l·D₂ ≥ 2||μ_A||² for every A.
    pub norm_bound: bool,
    /// D² ≤ l·D₂ for every A.
    pub jensen: bool,
}

fn describe(ctx: &OddContext, a: &OddSubset) -> Vec<String> {
    a.roots.iter().map(|r| ctx.root(*r).to_string()).collect()
}

fn entry(ctx: &OddContext, k: &Rational, a: &OddSubset) -> SubsetEntry {
    let u = u_value(ctx.spec, k, a);
    let b = second_bound(ctx.spec, a);
    SubsetEntry {
        roots: describe(ctx, a),
        mu: a.mu.to_string(),
        htt: a.htt,
        positive: u.is_positive(),
        second: b <= u,
        equality: b == u,
        u_a: u.to_string(),
        bound: b.to_string(),
    }
}

/// Evaluates 0 < u_A and 2(2−h∨)(−μ_A,θ) ≤ u_A on 𝒜₊ minus ℤ≥0δ, with the
/// two counting bounds as side diagnostics.
pub fn check_inequalities(spec: &AlgebraSpec, k: &Rational, height_cap: i64) -> Result<InequalityReport> {
    let ctx = OddContext::new(spec)?;
    let all = enumerate_aplus(spec, height_cap)?;
    let l = ctx.l as i64;
    let entries: Vec<(SubsetEntry, bool, bool, bool)> = all
        .par_iter()
        .filter(|a| !a.is_imaginary())
        .map(|a| {
            let e = entry(&ctx, k, a);
            let ddd = 2 * a.m_a >= a.d2() + a.d_plus();
            let d2mu = qi(l * a.d2()) >= qi(2) * spec.norm2(&a.mu);
            let jensen = a.d() * a.d() <= l * a.d2();
            (e, ddd, d2mu, jensen)
        })
        .collect();
    let checked = entries.len();
    let (mut violations, mut boundary) = (Vec::new(), Vec::new());
    let (mut ddd, mut d2mu, mut jensen) = (true, true, true);
    for (e, a, b, c) in entries {
        ddd &= a;
        d2mu &= b;
        jensen &= c;
        if e.equality {
            boundary.push(e.clone());
        }
        if !(e.positive && e.second) {
            violations.push(e);
        }
    }
    Ok(InequalityReport {
        algebra: spec.id.clone(),
        k: k.to_string(),
        height_cap,
        enumerated: all.len(),
        checked,
        all_pass: violations.is_empty(),
        violations,
        boundary_equalities: boundary,
        mass_bound: ddd,
        norm_bound: d2mu,
        jensen,
    })
}

/// A = {δ + β : (β, θ) < 0}.
pub fn boundary_set(spec: &AlgebraSpec) -> Result<OddSubset> {
    let ctx = OddContext::new(spec)?;
    let roots = (0..ctx.l).map(|i| OddRoot { j: 1, i, sign: 1 }).collect();
    Ok(ctx.subset(roots))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryReport {
    pub algebra: String,
    pub k: String,
    pub mu: String,
    pub in_aplus: bool,
    pub u_a: String,
    /// 2(2−h∨)(−μ_A, θ).
    pub second_bound: String,
    /// j, r for λ_A = kΛ₀ − μ_A on the sl2 of θ.
    pub j: i64,
    pub r: i64,
    /// 2(2−h∨)(Λ₀ + θ/2, λ_A − w∘λ_A) = 2(2−h∨) r(j−1).
    pub sharp_bound: String,
    /// ||kΛ₀+ρ||² − ||λ_A − r(jδ−θ) + ρ||², computed directly.
    pub norm_gap: String,
}

/// The k + 2h∨ = 2 boundary: evaluates both bounds on the boundary set.
pub fn boundary_report(spec: &AlgebraSpec, k: &Rational) -> Result<BoundaryReport> {
    let ctx = OddContext::new(spec)?;
    let a = boundary_set(spec)?;
    let u = u_value(spec, k, &a);
    let label = -spec.pair(&a.mu, &spec.theta);
    let to_i = |x: &Rational| {
        if is_integer(x) {
            x.to_integer().to_i64().ok_or_else(|| Error::Arithmetic("out of range".into()))
        } else {
            Err(Error::Precondition(format!("{x} is not an integer")))
        }
    };
    let (j, r) = jr(&Sl2HatWeight::new(to_i(k)?, to_i(&label)?))?;
    let sharp = qi(2) * (qi(2) - &spec.h_dual) * qi(r * (j - 1));
    let rho = spec.weyl_vector();
    let top = &Weight::lambda0().scale(k) + &rho;
    let gamma = &Weight::delta().scale(&qi(j)) - &spec.theta;
    let w_lam = &(&Weight::lambda0().scale(k) - &a.mu) - &gamma.scale(&qi(r));
    let gap = spec.norm2(&top) - spec.norm2(&(&w_lam + &rho));
    Ok(BoundaryReport {
        algebra: spec.id.clone(),
        k: k.to_string(),
        mu: a.mu.to_string(),
        in_aplus: ctx.minus_dominant(&a.mu),
        u_a: u.to_string(),
        second_bound: second_bound(spec, &a).to_string(),
        j,
        r,
        sharp_bound: sharp.to_string(),
        norm_gap: gap.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: &str) -> AlgebraSpec {
        AlgebraSpec::from_id(id).unwrap()
    }

    #[test]
    fn l_matches_half_the_odd_dimension() {
        for id in ["sl:2|1", "sl:2|3", "psl:2|2", "spo:2|3", "g3", "f4"] {
            let s = spec(id);
            let ctx = OddContext::new(&s).unwrap();
            assert_eq!(2 * ctx.l, s.dim_odd(), "{id}");
        }
    }

    #[test]
    fn boundary_set_mu() {
        let s = spec("psl:2|2");
        let a = boundary_set(&s).unwrap();
        // μ_A = lδ − (l/2)θ with l = 4
        let want = &Weight::delta().scale(&qi(4)) - &s.theta.scale(&qi(2));
        assert_eq!(a.mu, want);
        assert_eq!(a.roots.len(), 4);
    }

    #[test]
    fn single_root_value() {
        let s = spec("psl:2|2");
        let ap = enumerate_aplus(&s, 8).unwrap();
        let one = ap.iter().find(|a| a.roots.len() == 1 && a.m_a == 1).expect("a singleton in 𝒜₊");
        assert_eq!(u_value(&s, &qi(3), one), qi(7));
    }

    #[test]
    fn non_unitary_is_refused() {
        assert!(matches!(enumerate_aplus(&spec("spo:4|3"), 3), Err(Error::Precondition(_))));
    }
}
