//! The algebra catalog: roots, bases, θ, ρ, h∨, gradings and components.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{eval, eval_bool, eval_int, expand_all, expand_single, Env};
use crate::lattice::Lattice;
use crate::linalg::rank;
use crate::weights::{parse_rational, q, qi, BasisLabel, BilinearForm, Rational, Weight};

#[derive(Debug, Clone, Deserialize)]
pub struct CatalogFile {
    pub version: u32,
    pub family: Vec<FamilyRecord>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FamilyRecord {
    pub name: String,
    pub summary: String,
    pub valid: String,
    #[serde(default)]
    pub blocked: Vec<Blocked>,
    pub eps: String,
    pub del: String,
    pub eps_norm: Option<String>,
    pub eps_norms: Option<Vec<String>>,
    pub eps_off: Option<String>,
    pub del_norm: Option<String>,
    pub cartan_dim: String,
    pub theta: String,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub base: Vec<BaseRecord>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Blocked {
    pub when: String,
    pub reason: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct BaseRecord {
    pub name: String,
    pub when: String,
    pub simple: Vec<String>,
    pub iso: Vec<String>,
    pub wprime: Option<String>,
}

pub const CATALOG_SOURCE: &str = include_str!("../data/catalog.toml");

pub fn catalog() -> &'static CatalogFile {
    static CAT: OnceLock<CatalogFile> = OnceLock::new();
    CAT.get_or_init(|| toml::from_str(CATALOG_SOURCE).expect("bundled catalog parses"))
}

/// Algebra families with their parameters. `Spo` and `Osp` store the
/// superdimension-style pair in the order of their names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Sl { m: u32, n: u32 },
    Psl { n: u32 },
    /// spo(sp|so): form positive on sp.
    Spo { sp: u32, so: u32 },
    /// osp(so|sp): form positive on so.
    Osp { so: u32, sp: u32 },
    D21a { a: Rational },
    G3 { unitary: bool },
    F4 { unitary: bool },
    Lie { kind: char, rank: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Sl { m, n } => write!(f, "sl:{m}|{n}"),
            Family::Psl { n } => write!(f, "psl:{n}|{n}"),
            Family::Spo { sp, so } => write!(f, "spo:{sp}|{so}"),
            Family::Osp { so, sp } => write!(f, "osp:{so}|{sp}"),
            Family::D21a { a } => write!(f, "d21a:{a}"),
            Family::G3 { unitary } => write!(f, "{}", if *unitary { "g3" } else { "g3:nu" }),
            Family::F4 { unitary } => write!(f, "{}", if *unitary { "f4" } else { "f4:nu" }),
            Family::Lie { kind, rank } => write!(f, "lie:{kind}{rank}"),
        }
    }
}

fn pair_u32(s: &str, id: &str) -> Result<(u32, u32)> {
    let (a, b) = s
        .split_once('|')
        .ok_or_else(|| Error::Parse(format!("expected m|n in {id:?}")))?;
    let p = |x: &str| {
        x.trim()
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad integer {x:?} in {id:?}")))
    };
    Ok((p(a)?, p(b)?))
}

impl Family {
    /// Parses the identifier grammar `sl:m|n`, `psl:n|n`, `spo:m|n`,
    /// `osp:m|n`, `d21a:p/q`, `g3`, `g3:nu`, `f4`, `f4:nu`, `lie:<A..G><rank>`.
    pub fn parse(id: &str) -> Result<Self> {
        let id = id.trim();
        let (head, tail) = id.split_once(':').unwrap_or((id, ""));
        let fam = match head.to_ascii_lowercase().as_str() {
            "sl" => {
                let (m, n) = pair_u32(tail, id)?;
                Family::Sl { m, n }
            }
            "psl" => {
                let (m, n) = pair_u32(tail, id)?;
                if m != n {
                    return Err(Error::Parse(format!("psl needs n|n, got {id:?}")));
                }
                Family::Psl { n }
            }
            "spo" => {
                let (sp, so) = pair_u32(tail, id)?;
                Family::Spo { sp, so }
            }
            "osp" => {
                let (so, sp) = pair_u32(tail, id)?;
                match (so, sp) {
                    // no so roots: the form is forced positive on sp
                    (1 | 2, _) => Family::Spo { sp, so },
                    // so_4 positive and sp_2 negative is D(2|1;-2)
                    (4, 2) => Family::D21a { a: qi(-2) },
                    _ => Family::Osp { so, sp },
                }
            }
            "d21a" => Family::D21a { a: parse_rational(tail)? },
            "g3" => Family::G3 {
                unitary: match tail {
                    "" => true,
                    "nu" => false,
                    _ => return Err(Error::Parse(format!("unknown G(3) normalization {tail:?}"))),
                },
            },
            "f4" => Family::F4 {
                unitary: match tail {
                    "" => true,
                    "nu" => false,
                    _ => return Err(Error::Parse(format!("unknown F(4) normalization {tail:?}"))),
                },
            },
            "lie" => {
                let mut cs = tail.chars();
                let kind = cs
                    .next()
                    .map(|c| c.to_ascii_uppercase())
                    .filter(|c| ('A'..='G').contains(c))
                    .ok_or_else(|| Error::Parse(format!("expected lie:<A..G><rank>, got {id:?}")))?;
                let rank: u32 = cs
                    .as_str()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank in {id:?}")))?;
                Family::Lie { kind, rank }
            }
            _ => return Err(Error::Parse(format!("unknown algebra family in {id:?}"))),
        };
        Ok(fam)
    }

    fn record_and_env(&self) -> Result<(&'static str, Env)> {
        let mut env = Env::new();
        let mut set = |k: &str, v: Rational| {
            env.insert(k.to_string(), v);
        };
        let name = match self {
            Family::Sl { m, n } => {
                set("m", qi(*m as i64));
                set("n", qi(*n as i64));
                "sl"
            }
            Family::Psl { n } => {
                set("n", qi(*n as i64));
                "psl"
            }
            Family::Spo { sp, so } => {
                if sp % 2 != 0 {
                    return Err(Error::Parameter(format!("spo({sp}|{so}) needs an even symplectic size")));
                }
                set("N", qi(*sp as i64));
                set("M", qi(*so as i64));
                set("p", qi(*sp as i64 / 2));
                set("r", qi(*so as i64 / 2));
                set("modd", qi(*so as i64 % 2));
                "spo"
            }
            Family::Osp { so, sp } => {
                if sp % 2 != 0 {
                    return Err(Error::Parameter(format!("osp({so}|{sp}) needs an even symplectic size")));
                }
                set("M", qi(*so as i64));
                set("N", qi(*sp as i64));
                set("q", qi(*so as i64 / 2));
                set("p", qi(*sp as i64 / 2));
                set("modd", qi(*so as i64 % 2));
                "osp"
            }
            Family::D21a { a } => {
                if a.is_zero() || *a == qi(-1) {
                    return Err(Error::Parameter(format!("D(2|1;a) needs a not in {{0,-1}}, got {a}")));
                }
                set("a", a.clone());
                "d21a"
            }
            Family::G3 { unitary } => {
                if *unitary {
                    "g3"
                } else {
                    "g3nu"
                }
            }
            Family::F4 { unitary } => {
                if *unitary {
                    "f4"
                } else {
                    "f4nu"
                }
            }
            Family::Lie { kind, rank } => {
                set("n", qi(*rank as i64));
                match (kind, rank) {
                    ('A', _) => "lie_a",
                    ('B', _) => "lie_b",
                    ('C', _) => "lie_c",
                    ('D', _) => "lie_d",
                    ('E', 6) => "lie_e6",
                    ('E', 7) => "lie_e7",
                    ('E', 8) => "lie_e8",
                    ('F', 4) => "lie_f4",
                    ('G', 2) => "lie_g2",
                    _ => return Err(Error::Catalog(format!("no simple Lie algebra {kind}{rank}"))),
                }
            }
        };
        Ok((name, env))
    }

    pub fn is_lie(&self) -> bool {
        matches!(self, Family::Lie { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WPrime {
    /// Weyl group of the positive-norm part.
    Sharp,
    /// Weyl group of the negative-norm part.
    Negative,
}

#[derive(Debug, Clone)]
pub struct RootInfo {
    pub weight: Weight,
    pub coords: Vec<i64>,
    pub odd: bool,
    pub norm: Rational,
    pub positive: bool,
}

/// A fully built catalog entry.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub id: String,
    pub family: Family,
    pub base_name: String,
    pub form: BilinearForm,
    pub even_roots: Vec<Weight>,
    pub odd_roots: Vec<Weight>,
    pub base: Vec<Weight>,
    /// Maximal isotropic set S ⊂ Σ̇.
    pub iso: Vec<Weight>,
    pub theta: Weight,
    pub cartan_dim: usize,
    pub wprime: WPrime,
    pub lattice: Lattice,
    pub roots: Vec<RootInfo>,
    pub rho_dot: Weight,
    pub h_dual: Rational,
    /// Highest root for the chosen base; the affine simple root is δ − θ_max.
    pub theta_max: Weight,
    /// Gram matrix of the form over `form.labels()`.
    pub label_gram: Vec<Vec<Rational>>,
}

fn norms(rec: &FamilyRecord, env: &Env, eps: usize, del: usize) -> Result<BilinearForm> {
    let mut diag = Vec::new();
    for i in 1..=eps {
        let v = if let Some(list) = &rec.eps_norms {
            eval(list.get(i - 1).ok_or_else(|| Error::Catalog("eps_norms too short".into()))?, env)?
        } else {
            eval(rec.eps_norm.as_deref().unwrap_or("1"), env)?
        };
        diag.push((BasisLabel::Eps(i as u8), v));
    }
    for i in 1..=del {
        let v = eval(rec.del_norm.as_deref().unwrap_or("-1"), env)?;
        diag.push((BasisLabel::Del(i as u8), v));
    }
    let mut form = BilinearForm::diagonal(diag);
    if let Some(off) = &rec.eps_off {
        let v = eval(off, env)?;
        for i in 1..=eps {
            for j in i + 1..=eps {
                form.set(BasisLabel::Eps(i as u8), BasisLabel::Eps(j as u8), v.clone());
            }
        }
    }
    Ok(form)
}

/// Componentwise-maximal elements of a set of coordinate vectors.
fn maximal(cands: &[&RootInfo]) -> Vec<usize> {
    (0..cands.len())
        .filter(|&i| {
            !cands.iter().enumerate().any(|(j, other)| {
                j != i && other.coords.iter().zip(&cands[i].coords).all(|(a, b)| a >= b)
            })
        })
        .collect()
}

pub fn build_algebra(family: &Family, base_choice: Option<&str>) -> Result<AlgebraSpec> {
    let (rec_name, env) = family.record_and_env()?;
    let rec = catalog()
        .family
        .iter()
        .find(|f| f.name == rec_name)
        .ok_or_else(|| Error::Catalog(format!("no catalog record {rec_name}")))?;
    for b in &rec.blocked {
        if eval_bool(&b.when, &env)? {
            return Err(Error::Catalog(b.reason.clone()));
        }
    }
    if !eval_bool(&rec.valid, &env)? {
        return Err(Error::Catalog(format!("{family} is outside the {} family ({})", rec.name, rec.valid)));
    }
    let eps = eval_int(&rec.eps, &env)? as usize;
    let del = eval_int(&rec.del, &env)? as usize;
    let form = norms(rec, &env, eps, del)?;
    let pair = |x: &Weight, y: &Weight| form.pair_unchecked(x, y);
    let even_roots = expand_all(&rec.even, &env, &pair)?;
    let odd_roots = expand_all(&rec.odd, &env, &pair)?;
    let brec = match base_choice {
        Some(name) => rec
            .base
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| Error::Catalog(format!("{family} has no base named {name:?}")))?,
        None => rec
            .base
            .iter()
            .find(|b| eval_bool(&b.when, &env).unwrap_or(false))
            .ok_or_else(|| Error::Catalog(format!("no default base for {family}")))?,
    };
    let base = expand_all(&brec.simple, &env, &pair)?;
    let iso = expand_all(&brec.iso, &env, &pair)?;
    let cartan_dim = eval_int(&rec.cartan_dim, &env)? as usize;
    let lattice = Lattice::new(base.clone(), &form)?;
    if base.len() + 1 < cartan_dim || base.len() > cartan_dim + 1 {
        return Err(Error::Catalog(format!("base of {family} has {} roots for rank {cartan_dim}", base.len())));
    }

    let mut roots = Vec::new();
    for (odd, list) in [(false, &even_roots), (true, &odd_roots)] {
        for w in list.iter() {
            let coords = lattice
                .int_coords(w)
                .ok_or_else(|| Error::Catalog(format!("root {w} is not an integral combination of the base")))?;
            let positive = coords.iter().all(|&c| c >= 0);
            if !positive && !coords.iter().all(|&c| c <= 0) {
                return Err(Error::Catalog(format!("root {w} has mixed signs over the base")));
            }
            roots.push(RootInfo {
                weight: w.clone(),
                coords,
                odd,
                norm: form.norm2(w),
                positive,
            });
        }
    }
    for b in &base {
        if !roots.iter().any(|r| &r.weight == b) {
            return Err(Error::Catalog(format!("simple root {b} is not a root")));
        }
    }
    for (i, s) in iso.iter().enumerate() {
        if !base.contains(s) || !form.norm2(s).is_zero() {
            return Err(Error::Catalog(format!("{s} is not an isotropic simple root")));
        }
        for t in &iso[i + 1..] {
            if !form.pair_unchecked(s, t).is_zero() {
                return Err(Error::Catalog(format!("{s} and {t} are not orthogonal")));
            }
        }
    }

    let mut rho_dot = Weight::zero();
    let half = q(1, 2);
    for r in roots.iter().filter(|r| r.positive) {
        if r.odd {
            rho_dot -= &r.weight.scale(&half);
        } else {
            rho_dot += &r.weight.scale(&half);
        }
    }
    let positives: Vec<&RootInfo> = roots.iter().filter(|r| r.positive).collect();
    let tops = maximal(&positives);
    if tops.len() != 1 {
        return Err(Error::Catalog(format!("{family}: no unique highest root")));
    }
    let theta_max = positives[tops[0]].weight.clone();
    let h_dual = form.pair_unchecked(&rho_dot, &theta_max) + form.norm2(&theta_max) / qi(2);

    let theta = if rec.theta == "auto" {
        let sharp: Vec<&RootInfo> = positives
            .iter()
            .copied()
            .filter(|r| !r.odd && r.norm.is_positive())
            .collect();
        let tops = maximal(&sharp);
        if tops.len() != 1 {
            return Err(Error::Catalog(format!("{family}: cannot pick θ automatically")));
        }
        sharp[tops[0]].weight.clone()
    } else {
        expand_single(&rec.theta, &env)?
    };
    if !even_roots.contains(&theta) || form.norm2(&theta) != qi(2) {
        return Err(Error::Catalog(format!("θ = {theta} is not an even root of square length 2")));
    }
    let wprime_override = match brec.wprime.as_deref() {
        Some("negative") => Some(WPrime::Negative),
        Some("sharp") => Some(WPrime::Sharp),
        Some(other) => return Err(Error::Catalog(format!("unknown wprime {other:?}"))),
        None => None,
    };
    let labels = form.labels().to_vec();
    let label_gram = labels
        .iter()
        .map(|a| labels.iter().map(|b| form.entry(*a, *b)).collect())
        .collect();
    let mut spec = AlgebraSpec {
        label_gram,
        id: family.to_string(),
        family: family.clone(),
        base_name: brec.name.clone(),
        form,
        even_roots,
        odd_roots,
        base,
        iso,
        theta,
        cartan_dim,
        wprime: WPrime::Sharp,
        lattice,
        roots,
        rho_dot,
        h_dual,
        theta_max,
    };
    spec.wprime = wprime_override.unwrap_or_else(|| larger_factor(&spec));
    Ok(spec)
}

/// Order of the Weyl group of a simple root system from its size and rank.
fn simple_weyl_order(npos: usize, rank: usize) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    match (npos, rank) {
        (6, 2) => 12,
        (24, 4) => 1152,
        (36, 6) => 51840,
        (63, 7) => 2903040,
        (120, 8) => 696729600,
        (p, r) if p == r * (r + 1) / 2 => fact(r + 1),
        (p, r) if p == r * r => (1u64 << r) * fact(r),
        (p, r) if p == r * (r - 1) => (1u64 << (r - 1)) * fact(r),
        _ => unreachable!("not a simple root system: {npos} positive roots, rank {rank}"),
    }
}

/// Ẇ′ is the larger of Ẇ# and its complement in Ẇ; ties go to Ẇ#.
fn larger_factor(spec: &AlgebraSpec) -> WPrime {
    let (mut sharp, mut neg) = (1u64, 1u64);
    for c in spec.affine_components() {
        let o = simple_weyl_order(c.positive_roots.len(), c.simple.len());
        if c.positive_norm {
            sharp *= o;
        } else {
            neg *= o;
        }
    }
    if neg > sharp {
        WPrime::Negative
    } else {
        WPrime::Sharp
    }
}

/// Affine component l^(i) of the even part.
#[derive(Debug, Clone)]
pub struct Component {
    pub positive_roots: Vec<Weight>,
    pub simple: Vec<Weight>,
    pub theta: Weight,
    pub rho_dot: Weight,
    /// (ρ_l, δ) for the affine component Weyl vector ρ_l = h_l Λ₀ + ρ̇_l.
    pub h: Rational,
    pub positive_norm: bool,
}

impl Component {
    pub fn rho(&self) -> Weight {
        let mut r = self.rho_dot.clone();
        r.add_term(BasisLabel::Lambda0, &self.h);
        r
    }

    /// Simple roots of the affine component: Σ(l̇) and δ − θ_l.
    pub fn affine_simple(&self) -> Vec<Weight> {
        let mut v = self.simple.clone();
        v.push(&Weight::delta() - &self.theta);
        v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradeCount {
    pub grade: String,
    pub even: usize,
    pub odd: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootDatumReport {
    pub id: String,
    pub base_name: String,
    pub h_dual: String,
    pub defect: usize,
    pub type_one: bool,
    pub unitary_type: bool,
    pub sharp_roots: Vec<String>,
    pub lacety: Option<u32>,
    pub sdim: i64,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub base: Vec<String>,
    pub iso: Vec<String>,
    pub theta: String,
    pub rho_dot: String,
    pub components: usize,
    pub grading: Vec<GradeCount>,
}

impl AlgebraSpec {
    pub fn from_id(id: &str) -> Result<Self> {
        build_algebra(&Family::parse(id)?, None)
    }

    pub fn pair(&self, x: &Weight, y: &Weight) -> Rational {
        self.form.pair_unchecked(x, y)
    }

    pub fn norm2(&self, x: &Weight) -> Rational {
        self.form.norm2(x)
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn defect(&self) -> usize {
        self.iso.len()
    }

    pub fn is_lie(&self) -> bool {
        self.odd_roots.is_empty()
    }

    pub fn dim_even(&self) -> usize {
        self.cartan_dim + self.even_roots.len()
    }

    pub fn dim_odd(&self) -> usize {
        self.odd_roots.len()
    }

    pub fn sdim(&self) -> i64 {
        self.dim_even() as i64 - self.dim_odd() as i64
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &RootInfo> {
        self.roots.iter().filter(|r| r.positive)
    }

    pub fn root_info(&self, w: &Weight) -> Option<&RootInfo> {
        self.roots.iter().find(|r| &r.weight == w)
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_info(w).is_some()
    }

    /// Positivity of a finite root, affine roots being handled by callers.
    pub fn is_positive_root(&self, w: &Weight) -> Option<bool> {
        self.root_info(w).map(|r| r.positive)
    }

    /// Δ̇#: even roots of positive square length.
    pub fn sharp_roots(&self) -> Vec<Weight> {
        self.roots
            .iter()
            .filter(|r| !r.odd && r.norm.is_positive())
            .map(|r| r.weight.clone())
            .collect()
    }

    pub fn negative_even_roots(&self) -> Vec<Weight> {
        self.roots
            .iter()
            .filter(|r| !r.odd && r.norm.is_negative())
            .map(|r| r.weight.clone())
            .collect()
    }

    pub fn unitary_type(&self) -> bool {
        let s = self.sharp_roots();
        s.len() == 2 && s.contains(&self.theta) && s.contains(&-&self.theta)
    }

    /// ġ₀ has a centre exactly when its roots span less than the Cartan.
    pub fn type_one(&self) -> bool {
        let rows: Vec<Vec<Rational>> = self
            .roots
            .iter()
            .filter(|r| !r.odd)
            .map(|r| r.coords.iter().map(|&c| qi(c)).collect())
            .collect();
        let even_rank = if rows.is_empty() { 0 } else { rank(&rows) };
        !self.is_lie() && even_rank < self.cartan_dim
    }

    /// Ratio of long to short square lengths, for Lie algebras.
    pub fn lacety(&self) -> Option<u32> {
        if !self.is_lie() {
            return None;
        }
        let ns: BTreeSet<Rational> = self.roots.iter().map(|r| r.norm.clone()).collect();
        let lo = ns.iter().next()?;
        let hi = ns.iter().last()?;
        (hi / lo).to_integer().to_u32()
    }

    /// ρ = h∨Λ₀ + ρ̇ with (ρ, Λ₀) = 0.
    pub fn weyl_vector(&self) -> Weight {
        let mut r = self.rho_dot.clone();
        r.add_term(BasisLabel::Lambda0, &self.h_dual);
        r
    }

    pub fn dual_coxeter(&self) -> Rational {
        self.h_dual.clone()
    }

    /// Affine simple roots {δ − θ_max} ∪ Σ̇.
    pub fn affine_base(&self) -> Vec<Weight> {
        let mut v = vec![&Weight::delta() - &self.theta_max];
        v.extend(self.base.iter().cloned());
        v
    }

    /// Dimensions of ġ_j for the grading by (α,θ)/2, keyed by j.
    pub fn minimal_grading(&self) -> BTreeMap<Rational, (usize, usize)> {
        let mut g: BTreeMap<Rational, (usize, usize)> = BTreeMap::new();
        g.entry(Rational::zero()).or_default().0 += self.cartan_dim;
        for r in &self.roots {
            let j = self.pair(&r.weight, &self.theta) / qi(2);
            let e = g.entry(j).or_default();
            if r.odd {
                e.1 += 1;
            } else {
                e.0 += 1;
            }
        }
        g
    }

    /// Irreducible components of the even root system, the one containing θ
    /// first.
    pub fn affine_components(&self) -> Vec<Component> {
        let even: Vec<&RootInfo> = self.roots.iter().filter(|r| !r.odd).collect();
        let n = even.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = count;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if comp[j] == usize::MAX && !self.pair(&even[i].weight, &even[j].weight).is_zero() {
                        comp[j] = count;
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        let mut out = Vec::new();
        for c in 0..count {
            let members: Vec<&RootInfo> = (0..n).filter(|&i| comp[i] == c).map(|i| even[i]).collect();
            let pos: Vec<&RootInfo> = members.iter().copied().filter(|r| r.positive).collect();
            let pos_w: BTreeSet<&Weight> = pos.iter().map(|r| &r.weight).collect();
            let simple: Vec<Weight> = pos
                .iter()
                .filter(|r| {
                    !pos.iter().any(|a| {
                        let rest = &r.weight - &a.weight;
                        pos_w.contains(&rest)
                    })
                })
                .map(|r| r.weight.clone())
                .collect();
            let tops = maximal(&pos);
            let theta = pos[tops[0]].weight.clone();
            let mut rho_dot = Weight::zero();
            for r in &pos {
                rho_dot += &r.weight.scale(&q(1, 2));
            }
            let h = self.pair(&rho_dot, &theta) + self.norm2(&theta) / qi(2);
            out.push(Component {
                positive_roots: pos.iter().map(|r| r.weight.clone()).collect(),
                simple,
                positive_norm: self.norm2(&theta).is_positive(),
                theta,
                rho_dot,
                h,
            });
        }
        let th = self.theta.clone();
        out.sort_by_key(|c| {
            let has = c.positive_roots.contains(&th) || c.positive_roots.contains(&-&th);
            (!has, !c.positive_norm)
        });
        out
    }

    pub fn report(&self) -> RootDatumReport {
        RootDatumReport {
            id: self.id.clone(),
            base_name: self.base_name.clone(),
            h_dual: self.h_dual.to_string(),
            defect: self.defect(),
            type_one: self.type_one(),
            unitary_type: self.unitary_type(),
            sharp_roots: self.sharp_roots().iter().map(|w| w.to_string()).collect(),
            lacety: self.lacety(),
            sdim: self.sdim(),
            dim_even: self.dim_even(),
            dim_odd: self.dim_odd(),
            base: self.base.iter().map(|w| w.to_string()).collect(),
            iso: self.iso.iter().map(|w| w.to_string()).collect(),
            theta: self.theta.to_string(),
            rho_dot: self.rho_dot.to_string(),
            components: self.affine_components().len(),
            grading: self
                .minimal_grading()
                .into_iter()
                .map(|(j, (e, o))| GradeCount {
                    grade: j.to_string(),
                    even: e,
                    odd: o,
                })
                .collect(),
        }
    }
}

/// Odd reflection of a base at an isotropic simple root β.
pub fn odd_reflection(spec: &AlgebraSpec, base: &[Weight], beta: &Weight) -> Result<Vec<Weight>> {
    if !base.contains(beta) {
        return Err(Error::Precondition(format!("{beta} is not in the base")));
    }
    if !spec.norm2(beta).is_zero() {
        return Err(Error::Precondition(format!("{beta} is not isotropic")));
    }
    let mut out = Vec::with_capacity(base.len());
    for a in base {
        let img = if a == beta {
            -beta
        } else if !spec.pair(a, beta).is_zero() {
            a + beta
        } else {
            a.clone()
        };
        if !spec.is_root(&img) {
            return Err(Error::Structure(format!("odd reflection produced non-root {img}")));
        }
        out.push(img);
    }
    Ok(out)
}

/// Is `x` ≥ 0 coefficientwise over the finite base (i.e. in Q̇⁺)?
pub fn in_positive_cone(spec: &AlgebraSpec, x: &Weight) -> bool {
    spec.lattice
        .coords(x)
        .is_some_and(|c| c.iter().all(|v| !v.is_negative()))
}

pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: &str) -> AlgebraSpec {
        AlgebraSpec::from_id(id).unwrap_or_else(|e| panic!("{id}: {e}"))
    }

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    #[test]
    fn catalog_parses_and_is_versioned() {
        assert_eq!(catalog().version, 1);
        assert!(catalog().family.len() >= 15);
    }

    #[test]
    fn sl23_unitary_base() {
        let s = spec("sl:2|3");
        let want: Vec<Weight> = ["e1-d1", "d1-d2", "d2-d3", "d3-e2"].iter().map(|x| w(x)).collect();
        assert_eq!(s.base, want);
        assert_eq!(s.theta, w("e1-e2"));
        assert_eq!(s.h_dual, qi(-1));
        assert!(s.unitary_type());
        assert_eq!(s.affine_components().len(), 2);
    }

    #[test]
    fn spo23_theta() {
        let s = spec("spo:2|3");
        assert_eq!(s.theta, w("2d1"));
        assert_eq!(s.h_dual, q(1, 2));
    }

    #[test]
    fn d21a_square_lengths_at_a_1() {
        let s = spec("d21a:1");
        let n: Vec<Rational> = (1..=3).map(|i| s.norm2(&Weight::eps(i).scale(&qi(2)))).collect();
        assert_eq!(n, vec![qi(2), qi(-1), qi(-1)]);
        assert_eq!(s.affine_components().len(), 3);
    }

    #[test]
    fn sl2_weyl_vector() {
        let s = spec("lie:A1");
        let rho = s.weyl_vector();
        let alpha = w("e1-e2");
        assert_eq!(rho, &w("2L0") + &alpha.scale(&q(1, 2)));
        assert_eq!(s.pair(&rho, &Weight::delta()), qi(2));
        assert_eq!(s.affine_components().len(), 1);
    }

    #[test]
    fn weyl_vector_pairs_with_affine_simple_roots() {
        for id in ["sl:2|1", "sl:2|3", "psl:2|2", "spo:2|3", "spo:2|4", "d21a:2", "g3", "f4", "lie:B3", "lie:G2", "osp:7|2", "spo:4|6"] {
            let s = spec(id);
            let rho = s.weyl_vector();
            for a in s.affine_base() {
                assert_eq!(s.pair(&rho, &a), s.norm2(&a) / qi(2), "{id} at {a}");
            }
        }
    }

    #[test]
    fn odd_reflection_chain_for_d21a() {
        let s = spec("d21a:3/2");
        let start = vec![w("2e1"), w("-e1+e2-e3"), w("2e3")];
        let b1 = odd_reflection(&s, &start, &w("-e1+e2-e3")).unwrap();
        let b2 = odd_reflection(&s, &b1, &w("-e1+e2+e3")).unwrap();
        let got: BTreeSet<Weight> = b2.into_iter().collect();
        let want: BTreeSet<Weight> = [w("2e2"), w("e1-e2-e3"), w("2e3")].into_iter().collect();
        assert_eq!(got, want);
        // reflecting back at the negated root undoes the step
        let back = odd_reflection(&s, &b1, &w("e1-e2+e3")).unwrap();
        assert_eq!(back, start);
    }

    #[test]
    fn odd_reflection_rejects_even_roots() {
        let s = spec("d21a:2");
        let base = s.base.clone();
        assert!(matches!(odd_reflection(&s, &base, &w("2e2")), Err(Error::Precondition(_))));
        assert!(matches!(odd_reflection(&s, &base, &w("e1+e2+e3")), Err(Error::Precondition(_))));
    }

    #[test]
    fn osp3_is_flagged() {
        assert!(matches!(AlgebraSpec::from_id("osp:3|2"), Err(Error::Catalog(_))));
        assert!(matches!(AlgebraSpec::from_id("d21a:-1"), Err(Error::Parameter(_))));
        assert!(matches!(AlgebraSpec::from_id("d21a:0"), Err(Error::Parameter(_))));
    }

    #[test]
    fn psl22_grading() {
        let s = spec("psl:2|2");
        let g = s.minimal_grading();
        assert_eq!(g[&q(1, 2)], (0, 4));
        assert_eq!(g[&qi(1)], (1, 0));
        assert_eq!(s.h_dual, qi(0));
        assert_eq!(s.pair(&s.weyl_vector(), &Weight::delta()), qi(0));
    }

    #[test]
    fn lie_gradings_are_integral() {
        for id in ["lie:A3", "lie:B2", "lie:C3", "lie:D4", "lie:G2", "lie:F4", "lie:E6"] {
            let s = spec(id);
            for r in &s.roots {
                let p = s.pair(&r.weight, &s.theta);
                assert!([-2, -1, 0, 1, 2].iter().any(|&v| p == qi(v)), "{id}");
            }
        }
    }

    #[test]
    fn lie_dual_coxeter_numbers() {
        let table = [
            ("lie:A1", 2),
            ("lie:A4", 5),
            ("lie:B3", 5),
            ("lie:C3", 4),
            ("lie:D5", 8),
            ("lie:E6", 12),
            ("lie:E7", 18),
            ("lie:E8", 30),
            ("lie:F4", 9),
            ("lie:G2", 4),
        ];
        for (id, h) in table {
            assert_eq!(spec(id).h_dual, qi(h), "{id}");
        }
        assert_eq!(spec("lie:E8").even_roots.len(), 240);
        assert_eq!(spec("lie:E7").even_roots.len(), 126);
        assert_eq!(spec("lie:E6").even_roots.len(), 72);
        assert_eq!(spec("lie:G2").lacety(), Some(3));
        assert_eq!(spec("lie:C4").lacety(), Some(2));
        assert_eq!(spec("lie:D4").lacety(), Some(1));
    }
}
