//! Maximal submodules of locally finite Verma quotients over affine sl2,
//! with a brute-force contravariant-form oracle.
//!
//! Roots are α₁ = α and α₀ = δ − α with (α, α) = 2. A weight is recorded
//! by k = (λ, δ), the label (λ, α) and its δ-coefficient.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix};
use crate::weights::{is_integer, qi, Rational};

/// Deepest weight space the oracle will build.
pub const MAX_DEPTH: i64 = 5;
/// Largest (λ, α) accepted by the oracle.
pub const MAX_LABEL: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2HatWeight {
    pub k: Rational,
    pub label: Rational,
    /// Coefficient of δ.
    pub d: Rational,
}

impl Sl2HatWeight {
    pub fn new(k: i64, label: i64) -> Self {
        Self {
            k: qi(k),
            label: qi(label),
            d: Rational::zero(),
        }
    }

    /// λ − n(jδ − α).
    pub fn minus_real_root(&self, n: i64, j: i64) -> Self {
        Self {
            k: self.k.clone(),
            label: &self.label + qi(2 * n),
            d: &self.d - qi(n * j),
        }
    }
}

fn as_int(x: &Rational, what: &str) -> Result<i64> {
    if !is_integer(x) {
        return Err(Error::Precondition(format!("{what} = {x} is not an integer")));
    }
    x.to_integer().to_i64().ok_or_else(|| Error::Arithmetic(format!("{what} out of range")))
}

fn checked(lam: &Sl2HatWeight) -> Result<(i64, i64)> {
    let k = as_int(&lam.k, "k")?;
    let a = as_int(&lam.label, "(λ,α)")?;
    if k == -2 {
        return Err(Error::Precondition("k = −2 is the critical level".into()));
    }
    if k < -1 || a < 0 {
        return Err(Error::Precondition(format!("need k ≥ −1 and (λ,α) ≥ 0, got k = {k}, (λ,α) = {a}")));
    }
    Ok((k, a))
}

/// j = ⌈((λ,α)+1)/(k+2)⌉, r = j(k+2) − (λ,α) − 1.
pub fn jr(lam: &Sl2HatWeight) -> Result<(i64, i64)> {
    let (k, a) = checked(lam)?;
    let m = k + 2;
    let j = (a + 1 + m - 1) / m;
    Ok((j, j * m - a - 1))
}

/// Highest weight λ₁ of the maximal proper submodule of N(λ), if nonzero.
pub fn maximal_submodule_hw(lam: &Sl2HatWeight) -> Result<Option<Sl2HatWeight>> {
    let (j, r) = jr(lam)?;
    Ok((r > 0).then(|| lam.minus_real_root(r, j)))
}

/// s_{jδ−α}∘λ computed from the reflection itself.
pub fn shifted_reflection(lam: &Sl2HatWeight, j: i64) -> Sl2HatWeight {
    // (λ+ρ, jδ−α) with ρ = 2Λ₀ + α/2, so (ρ, δ) = 2 and (ρ, α) = 1
    let n = (&lam.k + qi(2)) * qi(j) - &lam.label - qi(1);
    Sl2HatWeight {
        k: lam.k.clone(),
        label: &lam.label + &n * qi(2),
        d: &lam.d - &n * qi(j),
    }
}

/// (λ − λ₁, Λ₁) with Λ₁ = Λ₀ + α/2; zero when r = 0.
pub fn lambda1_pairing(lam: &Sl2HatWeight) -> Result<i64> {
    let (j, r) = jr(lam)?;
    Ok(r * (j - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum X {
    E,
    H,
    F,
}

/// x ⊗ tⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Gen {
    n: i64,
    x: X,
}

impl Gen {
    fn negative(self) -> bool {
        self.n < 0 || (self.n == 0 && self.x == X::F)
    }

    fn sigma(self) -> Gen {
        let x = match self.x {
            X::E => X::F,
            X::F => X::E,
            X::H => X::H,
        };
        Gen { n: -self.n, x }
    }
}

/// Ordered PBW monomial y₁y₂…y_m v, y₁ ≤ y₂ ≤ ….
type Mono = Vec<Gen>;
type Vector = HashMap<Mono, Rational>;

fn add_into(acc: &mut Vector, v: &Vector, c: &Rational) {
    for (m, x) in v {
        let e = acc.entry(m.clone()).or_insert_with(Rational::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(m);
        }
    }
}

/// [x⊗tᵃ, y⊗tᵇ] = [x,y]⊗t^{a+b} + a δ_{a+b,0} (x,y) K, as (loop part, K coefficient).
fn bracket(a: Gen, b: Gen) -> (Vec<(Gen, i64)>, i64) {
    let n = a.n + b.n;
    let loop_part = match (a.x, b.x) {
        (X::E, X::F) => vec![(X::H, 1)],
        (X::F, X::E) => vec![(X::H, -1)],
        (X::H, X::E) => vec![(X::E, 2)],
        (X::E, X::H) => vec![(X::E, -2)],
        (X::H, X::F) => vec![(X::F, -2)],
        (X::F, X::H) => vec![(X::F, 2)],
        _ => vec![],
    };
    let form = match (a.x, b.x) {
        (X::E, X::F) | (X::F, X::E) => 1,
        (X::H, X::H) => 2,
        _ => 0,
    };
    let central = if n == 0 { a.n * form } else { 0 };
    (loop_part.into_iter().map(|(x, c)| (Gen { n, x }, c)).collect(), central)
}

/// M(λ) for affine sl2 with memoized generator action and contravariant form.
pub struct VermaModule {
    k: Rational,
    label: Rational,
    act_memo: RefCell<HashMap<(Gen, Mono), Vector>>,
    form_memo: RefCell<HashMap<(Mono, Mono), Rational>>,
}

impl VermaModule {
    pub fn new(lam: &Sl2HatWeight) -> Self {
        Self {
            k: lam.k.clone(),
            label: lam.label.clone(),
            act_memo: RefCell::new(HashMap::new()),
            form_memo: RefCell::new(HashMap::new()),
        }
    }

    fn act(&self, g: Gen, m: &Mono) -> Vector {
        if let Some(v) = self.act_memo.borrow().get(&(g, m.clone())) {
            return v.clone();
        }
        let out = self.act_raw(g, m);
        self.act_memo.borrow_mut().insert((g, m.clone()), out.clone());
        out
    }

    fn act_raw(&self, g: Gen, m: &Mono) -> Vector {
        let mut out = Vector::new();
        if g.negative() && m.first().is_none_or(|y| g <= *y) {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.push(g);
            v.extend_from_slice(m);
            out.insert(v, qi(1));
            return out;
        }
        let Some((&y, rest)) = m.split_first() else {
            if g == (Gen { n: 0, x: X::H }) && !self.label.is_zero() {
                out.insert(Vec::new(), self.label.clone());
            }
            return out;
        };
        // g·y·rest = y·(g·rest) + [g, y]·rest
        let rest = rest.to_vec();
        for (mm, c) in self.act(g, &rest) {
            add_into(&mut out, &self.act(y, &mm), &c);
        }
        let (lp, central) = bracket(g, y);
        for (z, c) in lp {
            add_into(&mut out, &self.act(z, &rest), &qi(c));
        }
        if central != 0 {
            add_into(&mut out, &HashMap::from([(rest, qi(1))]), &(&self.k * qi(central)));
        }
        out
    }

    /// ⟨u v_λ, w v_λ⟩ for PBW monomials.
    fn form(&self, u: &Mono, w: &Mono) -> Rational {
        if u.is_empty() {
            return if w.is_empty() { qi(1) } else { Rational::zero() };
        }
        let key = (u.clone(), w.clone());
        if let Some(v) = self.form_memo.borrow().get(&key) {
            return v.clone();
        }
        let (y, rest) = u.split_first().expect("nonempty");
        let rest = rest.to_vec();
        let mut total = Rational::zero();
        for (m, c) in self.act(y.sigma(), w) {
            total += c * self.form(&rest, &m);
        }
        self.form_memo.borrow_mut().insert(key, total.clone());
        total
    }

    /// Gram matrix on the weight space λ − dδ + aα.
    pub fn gram(&self, d: i64, a: i64) -> Matrix {
        let basis = pbw_basis(d, a);
        basis.iter().map(|u| basis.iter().map(|w| self.form(u, w)).collect()).collect()
    }

    /// dim L(λ) at λ − dδ + aα.
    pub fn simple_dim(&self, d: i64, a: i64) -> usize {
        rank(&self.gram(d, a))
    }
}

/// Ordered PBW monomials of weight −dδ + aα.
fn pbw_basis(d: i64, a: i64) -> Vec<Mono> {
    // parts of depth ≥ 1 first, then the f⊗1 count is forced
    fn parts(left: i64, min: Gen, cur: &mut Mono, out: &mut Vec<Mono>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for n in 1..=left {
            for x in [X::E, X::H, X::F] {
                let g = Gen { n: -n, x };
                if g < min {
                    continue;
                }
                cur.push(g);
                parts(left - n, g, cur, out);
                cur.pop();
            }
        }
    }
    if d < 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    parts(d, Gen { n: -d, x: X::E }, &mut Vec::new(), &mut raw);
    let mut out = Vec::new();
    for mut m in raw {
        let ne = m.iter().filter(|g| g.x == X::E).count() as i64;
        let nf = m.iter().filter(|g| g.x == X::F).count() as i64;
        let f0 = ne - nf - a;
        if f0 < 0 {
            continue;
        }
        m.sort();
        m.extend(std::iter::repeat_n(Gen { n: 0, x: X::F }, f0 as usize));
        out.push(m);
    }
    out
}

fn verma_dim(d: i64, a: i64) -> usize {
    pbw_basis(d, a).len()
}

/// Weight-space dimensions (δ-depth, α-shift) ↦ dim, over the sl2-dominant half.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedCharacter {
    pub depth: i64,
    pub dims: Vec<((i64, i64), usize)>,
}

fn check_oracle_input(lam: &Sl2HatWeight, depth: i64) -> Result<(i64, i64)> {
    let (k, a) = checked(lam)?;
    if !(0..=MAX_DEPTH).contains(&depth) {
        return Err(Error::Resource(format!("depth {depth} exceeds the cap {MAX_DEPTH}")));
    }
    if a > MAX_LABEL {
        return Err(Error::Resource(format!("(λ,α) = {a} exceeds the cap {MAX_LABEL}")));
    }
    Ok((k, a))
}

/// Weights λ − dδ + aα with d ≤ depth and h-eigenvalue (λ,α)+2a ≥ 0.
fn window(label: i64, depth: i64) -> Vec<(i64, i64)> {
    let lo = -(label / 2);
    (0..=depth).flat_map(|d| (lo..=d).map(move |a| (d, a))).collect()
}

/// Character of N′(λ) from Gram ranks: dim M − dim M(s₁∘λ) − rank.
pub fn shapovalov_oracle(lam: &Sl2HatWeight, depth: i64) -> Result<TruncatedCharacter> {
    let (_, label) = check_oracle_input(lam, depth)?;
    let v = VermaModule::new(lam);
    let dims = window(label, depth)
        .into_iter()
        .map(|(d, a)| {
            let n = verma_dim(d, a) - verma_dim(d, a + label + 1);
            ((d, a), n - v.simple_dim(d, a))
        })
        .collect();
    Ok(TruncatedCharacter { depth, dims })
}

/// ch L(λ₁) placed in the coordinates of λ, or zero when r = 0.
pub fn closed_form_character(lam: &Sl2HatWeight, depth: i64) -> Result<TruncatedCharacter> {
    let (_, label) = check_oracle_input(lam, depth)?;
    let (j, r) = jr(lam)?;
    let l1 = (r > 0).then(|| VermaModule::new(&lam.minus_real_root(r, j)));
    let dims = window(label, depth)
        .into_iter()
        .map(|(d, a)| {
            let n = match &l1 {
                Some(v) if d >= r * j => v.simple_dim(d - r * j, a - r),
                _ => 0,
            };
            ((d, a), n)
        })
        .collect();
    Ok(TruncatedCharacter { depth, dims })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub k: i64,
    pub label: i64,
    pub j: i64,
    pub r: i64,
    pub agree: bool,
    pub radical_total: usize,
}

pub fn compare_with_oracle(k: i64, label: i64, depth: i64) -> Result<OracleComparison> {
    let lam = Sl2HatWeight::new(k, label);
    let (j, r) = jr(&lam)?;
    let o = shapovalov_oracle(&lam, depth)?;
    let c = closed_form_character(&lam, depth)?;
    Ok(OracleComparison {
        k,
        label,
        j,
        r,
        agree: o == c,
        radical_total: o.dims.iter().map(|x| x.1).sum(),
    })
}
