//! Irreducibility, simplicity and superconformal verdicts.
//!
//! Every answer carries a stable rule id as its citation. For k ∈ ℤ≥0 the
//! decision is driven by [`RULES`], an ordered table of (family, level range)
//! clauses; anything not decided there is an open case and comes back
//! `Unknown`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::charser::Bounds;
use crate::error::{Error, Result};
use crate::rootsys::{AlgebraSpec, Family};
use crate::vacuum::{length_two_test, JantzenReport};
use crate::weights::{is_integer, q, qi, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Simple,
    NotSimple,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// V^k is irreducible.
    Irreducible,
    /// k = −h∨.
    CriticalLevel,
    /// V^k is reducible and k ∉ ℤ≥0.
    ReducibleOffIntegral,
    /// Unitary range k ≥ 5/2 − 2h∨: length two.
    LengthTwo,
    /// V^k has length greater than two.
    LengthAboveTwo,
    OpenCase,
    /// Superconformal charge reached only through the critical level.
    CriticalCharge,
    /// Superconformal charge whose levels are all irrational.
    IrrationalLevel,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: Reason,
    pub citation: String,
    pub data: BTreeMap<String, String>,
}

impl Verdict {
    fn new(status: Status, reason: Reason, citation: &str) -> Self {
        Verdict {
            status,
            reason,
            citation: citation.to_string(),
            data: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.data.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrrBranch {
    /// l(k+h∨) ∉ ℚ≥0 ∖ {1/m}.
    Lie,
    /// 2(k+h∨) ∉ ℚ≥0 ∖ {1/(2m−1)}.
    Spo1,
    /// (k+h∨)/(α,α) ∉ ℚ≥0 for every even root α.
    EvenRoots,
}

impl IrrBranch {
    pub fn rule_id(self) -> &'static str {
        match self {
            IrrBranch::Lie => "irr.lie",
            IrrBranch::Spo1 => "irr.spo1",
            IrrBranch::EvenRoots => "irr.even",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub branch: IrrBranch,
    /// The quantity that landed in the forbidden set, when reducible.
    pub witness: Option<String>,
}

/// D(2|1;a) with −1 < a < 0 is the same algebra as D(2|1;1/a) with the two
/// non-sl₂ factors exchanged; every other family is returned unchanged.
pub fn normalized_family(f: &Family) -> Family {
    match f {
        Family::D21a { a } if a.is_negative() && a > &qi(-1) => Family::D21a { a: a.recip() },
        _ => f.clone(),
    }
}

fn is_unit_fraction(x: &Rational, odd_only: bool) -> bool {
    x.is_positive() && x.numer().is_one() && (!odd_only || x.denom() % 2u8 == BigInt::one())
}

pub fn irreducibility(spec: &AlgebraSpec, k: &Rational) -> Irreducibility {
    let kh = k + &spec.h_dual;
    if let Some(l) = spec.lacety() {
        let x = qi(l as i64) * &kh;
        let bad = !x.is_negative() && !is_unit_fraction(&x, false);
        return Irreducibility {
            irreducible: !bad,
            branch: IrrBranch::Lie,
            witness: bad.then(|| format!("l(k+h∨) = {x}")),
        };
    }
    if matches!(spec.family, Family::Spo { so: 1, .. }) {
        let x = qi(2) * &kh;
        let bad = !x.is_negative() && !is_unit_fraction(&x, true);
        return Irreducibility {
            irreducible: !bad,
            branch: IrrBranch::Spo1,
            witness: bad.then(|| format!("2(k+h∨) = {x}")),
        };
    }
    let witness = spec
        .roots
        .iter()
        .filter(|r| !r.odd && !r.norm.is_zero())
        .map(|r| (r, &kh / &r.norm))
        .find(|(_, x)| !x.is_negative())
        .map(|(r, x)| format!("(k+h∨)/({0},{0}) = {x}", r.weight));
    Irreducibility {
        irreducible: witness.is_none(),
        branch: IrrBranch::EvenRoots,
        witness,
    }
}

/// Level range of a rule, for k ∈ ℤ≥0.
#[derive(Debug, Clone, PartialEq)]
pub enum LevelRange {
    All,
    AtLeast(Rational),
    Above(Rational),
    Below(Rational),
    AtMost(Rational),
    /// k > 0 and ak ∈ ℤ.
    PositiveInAInverseZ(Rational),
    /// ak ∉ ℤ.
    OutsideAInverseZ(Rational),
}

impl LevelRange {
    pub fn contains(&self, k: &Rational) -> bool {
        match self {
            LevelRange::All => true,
            LevelRange::AtLeast(b) => k >= b,
            LevelRange::Above(b) => k > b,
            LevelRange::Below(b) => k < b,
            LevelRange::AtMost(b) => k <= b,
            LevelRange::PositiveInAInverseZ(a) => k.is_positive() && is_integer(&(a * k)),
            LevelRange::OutsideAInverseZ(a) => !is_integer(&(a * k)),
        }
    }
}

pub struct Rule {
    pub id: &'static str,
    pub status: Status,
    pub families: &'static str,
    /// Level range when the (normalized) family belongs to the rule.
    pub applies: fn(&Family) -> Option<LevelRange>,
}

fn n(x: u32) -> Rational {
    qi(x as i64)
}

/// Clauses for k ∈ ℤ≥0, k ≠ −h∨, outside the unitary range. Order matters
/// only for readability: the family sets are disjoint.
pub static RULES: &[Rule] = &[
    Rule {
        id: "long.defect_zero",
        status: Status::NotSimple,
        families: "defect zero: Lie algebras and spo(2n|1), except sl2 and spo(2|1)",
        applies: |f| match f {
            Family::Lie { kind: 'A', rank: 1 } => None,
            Family::Lie { .. } => Some(LevelRange::All),
            Family::Spo { sp, so: 1 } if *sp >= 4 => Some(LevelRange::All),
            _ => None,
        },
    },
    Rule {
        id: "long.generic",
        status: Status::NotSimple,
        families: "sl(m|n) m≥n+2; osp(2m+1|2n), osp(2m|2n) with m−2≥n>0; spo(2n|2m), spo(2n|2m+1) with n>m>0; non-unitary G(3), F(4)",
        applies: |f| match *f {
            Family::Sl { m, n } if m >= n + 2 && m != 2 => Some(LevelRange::All),
            Family::Osp { so, sp } if sp > 0 && so >= sp + 4 => Some(LevelRange::All),
            Family::Spo { sp, so } if so >= 2 && sp / 2 > so / 2 && sp > 2 => Some(LevelRange::All),
            Family::G3 { unitary: false } | Family::F4 { unitary: false } => Some(LevelRange::All),
            _ => None,
        },
    },
    Rule {
        id: "long.near_square",
        status: Status::NotSimple,
        families: "sl(n+1|n) with n>1; osp(2n+3|2n) with n>0",
        applies: |f| match *f {
            Family::Sl { m, n } if m == n + 1 && n > 1 => Some(LevelRange::AtLeast(qi(1))),
            Family::Osp { so, sp } if so == sp + 3 => Some(LevelRange::AtLeast(qi(1))),
            _ => None,
        },
    },
    Rule {
        id: "long.balanced",
        status: Status::NotSimple,
        families: "psl(n|n) n>2, spo(2n|2n), spo(2n|2n+1) k≥n; osp(2n+2|2n) k≥2n; n≥2",
        applies: |f| match *f {
            Family::Psl { n: m } if m > 2 => Some(LevelRange::AtLeast(n(m))),
            Family::Spo { sp, so } if sp >= 4 && (so == sp || so == sp + 1) => Some(LevelRange::AtLeast(n(sp / 2))),
            Family::Osp { so, sp } if sp >= 4 && so == sp + 2 => Some(LevelRange::AtLeast(n(sp))),
            _ => None,
        },
    },
    Rule {
        id: "long.spo_plus_two",
        status: Status::NotSimple,
        families: "spo(2n|2n+2) with n≥2, k>2n",
        applies: |f| match *f {
            Family::Spo { sp, so } if sp >= 4 && so == sp + 2 => Some(LevelRange::Above(n(sp))),
            _ => None,
        },
    },
    Rule {
        id: "long.osp4",
        status: Status::NotSimple,
        families: "osp(4|n) with n≥4 even, k≥n/2",
        applies: |f| match *f {
            Family::Osp { so: 4, sp } if sp >= 4 => Some(LevelRange::AtLeast(n(sp / 2))),
            _ => None,
        },
    },
    Rule {
        id: "long.d21a",
        status: Status::NotSimple,
        families: "D(2|1;a) with a<−1, k ∈ ℤ>0 ∩ a⁻¹ℤ",
        applies: |f| match f {
            Family::D21a { a } if a < &qi(-1) => Some(LevelRange::PositiveInAInverseZ(a.clone())),
            _ => None,
        },
    },
    Rule {
        id: "open.negative_h",
        status: Status::Unknown,
        families: "h∨<0: sl(m|n) 2<m<n; spo(n|m) m>n+2; osp(m|n) 5≤m<n+2; osp(4|n) k<n/2",
        applies: |f| match *f {
            Family::Sl { m, n } if m > 2 && m < n => Some(LevelRange::All),
            Family::Spo { sp, so } if sp >= 4 && so > sp + 2 => Some(LevelRange::All),
            Family::Osp { so, sp } if so >= 5 && so < sp + 2 => Some(LevelRange::All),
            Family::Osp { so: 4, sp } if sp >= 4 => Some(LevelRange::Below(n(sp / 2))),
            _ => None,
        },
    },
    Rule {
        id: "open.zero_h",
        status: Status::Unknown,
        families: "h∨=0: spo(2n|2n+2) k≤2n; psl(n|n) k<n; osp(2n+2|2n) k<2n; D(2|1;a) a<−1, ak∉ℤ",
        applies: |f| match f {
            Family::Spo { sp, so } if *sp >= 4 && *so == sp + 2 => Some(LevelRange::AtMost(n(*sp))),
            Family::Psl { n: m } if *m > 2 => Some(LevelRange::Below(n(*m))),
            Family::Osp { so, sp } if *sp >= 4 && *so == sp + 2 => Some(LevelRange::Below(n(*sp))),
            Family::D21a { a } if a < &qi(-1) => Some(LevelRange::OutsideAInverseZ(a.clone())),
            _ => None,
        },
    },
    Rule {
        id: "open.positive_h",
        status: Status::Unknown,
        families: "h∨>0: sl(n+1|n), osp(2n+3|2n) k=0; spo(2n|2n), spo(2n|2n+1) k<n",
        applies: |f| match *f {
            Family::Sl { m, n } if m == n + 1 && n > 1 => Some(LevelRange::AtMost(qi(0))),
            Family::Osp { so, sp } if so == sp + 3 => Some(LevelRange::AtMost(qi(0))),
            Family::Spo { sp, so } if sp >= 4 && (so == sp || so == sp + 1) => Some(LevelRange::Below(n(sp / 2))),
            _ => None,
        },
    },
];

/// Smallest k for which the unitary-range criterion gives simplicity.
pub fn unitary_threshold(spec: &AlgebraSpec) -> Rational {
    q(5, 2) - qi(2) * &spec.h_dual
}

fn integral_non_negative(k: &Rational) -> bool {
    is_integer(k) && !k.is_negative()
}

/// Simplicity of W^k(g, f_θ).
pub fn simplicity(spec: &AlgebraSpec, k: &Rational) -> Result<Verdict> {
    let fam = normalized_family(&spec.family);
    let base = |v: Verdict| v.with("algebra", &spec.id).with("k", k).with("h_dual", &spec.h_dual);
    if (k + &spec.h_dual).is_zero() {
        return Ok(base(Verdict::new(Status::NotSimple, Reason::CriticalLevel, "crit")));
    }
    let irr = irreducibility(spec, k);
    if irr.irreducible {
        return Ok(base(Verdict::new(Status::Simple, Reason::Irreducible, irr.branch.rule_id())));
    }
    let witness = irr.witness.clone().unwrap_or_default();
    if !integral_non_negative(k) {
        return Ok(base(Verdict::new(Status::NotSimple, Reason::ReducibleOffIntegral, "simp.off_integral"))
            .with("reducibility", witness));
    }
    if spec.unitary_type() {
        let t = unitary_threshold(spec);
        let v = if k >= &t {
            Verdict::new(Status::Simple, Reason::LengthTwo, "unitary.length_two")
        } else {
            Verdict::new(Status::Unknown, Reason::OpenCase, "open.unitary_low")
        };
        return Ok(base(v).with("threshold", t));
    }
    let rule = RULES
        .iter()
        .find(|r| (r.applies)(&fam).is_some_and(|range| range.contains(k)))
        .ok_or_else(|| Error::Structure(format!("no rule covers {} at k = {k}", spec.id)))?;
    let reason = match rule.status {
        Status::NotSimple => Reason::LengthAboveTwo,
        _ => Reason::OpenCase,
    };
    Ok(base(Verdict::new(rule.status, reason, rule.id)).with("family", fam))
}

/// Length-two test at k with the given truncation, for attaching to a
/// `NotSimple` verdict.
pub fn certify(spec: &AlgebraSpec, k: &Rational, bounds: Bounds) -> Result<JantzenReport> {
    length_two_test(spec, k, bounds)
}

/// c(k) = k·sdim/(k+h∨) − 6k + h∨ − 4, extended continuously to k = −h∨
/// when the first term is constant there.
pub fn central_charge(spec: &AlgebraSpec, k: &Rational) -> Result<Rational> {
    let h = &spec.h_dual;
    let s = qi(spec.sdim());
    let kh = k + h;
    let tail = -qi(6) * k + h - qi(4);
    if !kh.is_zero() {
        return Ok(k * &s / &kh + tail);
    }
    if s.is_zero() {
        Ok(tail)
    } else if h.is_zero() {
        Ok(s + tail)
    } else {
        Err(Error::Precondition(format!(
            "c(k) has a pole at the critical level k = {k} for {}",
            spec.id
        )))
    }
}

/// Superconformal algebras obtained as minimal W-algebras.
#[derive(Debug, Clone, PartialEq)]
pub enum Superconformal {
    /// N = 0..4.
    N(u8),
    /// Big N = 4 with parameter a.
    Big4(Rational),
}

impl Superconformal {
    /// `0`..`4` or `big4:a`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(a) = s.strip_prefix("big4:") {
            return Ok(Superconformal::Big4(crate::weights::parse_rational(a)?));
        }
        match s.parse::<u8>() {
            Ok(n) if n <= 4 => Ok(Superconformal::N(n)),
            _ => Err(Error::Parse(format!("expected 0..4 or big4:a, got {s:?}"))),
        }
    }

    pub fn algebra_id(&self) -> String {
        match self {
            Superconformal::N(0) => "lie:A1".into(),
            Superconformal::N(4) => "psl:2|2".into(),
            Superconformal::N(n) => format!("spo:2|{n}"),
            Superconformal::Big4(a) => format!("d21a:{a}"),
        }
    }

    /// Offset between the superconformal charge and c(k).
    pub fn shift(&self) -> Rational {
        match self {
            Superconformal::N(3) => q(1, 2),
            Superconformal::Big4(_) => qi(3),
            _ => qi(0),
        }
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (p, d) = (x.numer(), x.denom());
    let (sp, sd) = (p.sqrt(), d.sqrt());
    (&sp * &sp == *p && &sd * &sd == *d).then(|| Rational::new(sp, sd))
}

/// Levels k with c(k) + shift = c. `None` when the roots are irrational
/// or complex.
pub fn levels_for_charge(spec: &AlgebraSpec, shift: &Rational, c: &Rational) -> Option<Vec<Rational>> {
    // (k+h∨)(c(k) − C) = 0 expands to 6k² + bk + c0 = 0
    let h = &spec.h_dual;
    let s = qi(spec.sdim());
    let cc = c - shift;
    let b = qi(5) * h + qi(4) + &cc - &s;
    let c0 = qi(4) * h - h * h + &cc * h;
    let disc = &b * &b - qi(24) * &c0;
    let r = rational_sqrt(&disc)?;
    let mut ks = vec![(-&b - &r) / qi(12), (-&b + &r) / qi(12)];
    ks.dedup();
    // with sdim = 0 or h∨ = 0 the factor k + h∨ contributes a root that is
    // genuine only when the removable value matches
    ks.retain(|k| central_charge(spec, k).is_ok_and(|v| v == cc));
    Some(ks)
}

/// Irreducibility of the vacuum module of a superconformal algebra at
/// central charge c, read off from the simplicity of W^k at the levels k
/// realizing c. `Simple` means the vacuum module is irreducible.
pub fn superconformal_verdict(sc: &Superconformal, c: &Rational) -> Result<Verdict> {
    let id = sc.algebra_id();
    let spec = AlgebraSpec::from_id(&id)?;
    let base = |v: Verdict| v.with("algebra", &id).with("c", c).with("shift", sc.shift());
    let Some(ks) = levels_for_charge(&spec, &sc.shift(), c) else {
        // k ∉ ℚ, so every irreducibility criterion holds
        let irr = irreducibility(&spec, &qi(0));
        return Ok(base(Verdict::new(Status::Simple, Reason::IrrationalLevel, irr.branch.rule_id())));
    };
    let mut definite: Option<(Verdict, Rational)> = None;
    let mut unknown: Option<(Verdict, Rational)> = None;
    let mut critical = false;
    for k in &ks {
        if (k + &spec.h_dual).is_zero() {
            critical = true;
            continue;
        }
        let v = simplicity(&spec, k)?;
        match v.status {
            Status::Unknown => {
                unknown.get_or_insert((v, k.clone()));
            }
            _ => {
                if let Some((prev, pk)) = &definite {
                    if prev.status != v.status {
                        return Err(Error::Structure(format!(
                            "levels {pk} and {k} of {id} disagree at c = {c}"
                        )));
                    }
                } else {
                    definite = Some((v, k.clone()));
                }
            }
        }
    }
    let levels = ks.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
    if let Some((v, k)) = definite.or(unknown) {
        return Ok(base(v).with("levels", levels).with("k", k));
    }
    if !critical {
        return Err(Error::Structure(format!("no level of {id} realizes c = {c}")));
    }
    // only the critical level realizes c
    let v = if c.is_zero() {
        Verdict::new(Status::NotSimple, Reason::CriticalCharge, "sc.zero_charge")
    } else {
        Verdict::new(Status::Unknown, Reason::CriticalCharge, "sc.critical")
    };
    Ok(base(v).with("levels", levels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(id: &str) -> AlgebraSpec {
        AlgebraSpec::from_id(id).unwrap()
    }

    #[test]
    fn unit_fractions() {
        assert!(is_unit_fraction(&q(1, 3), true));
        assert!(!is_unit_fraction(&q(1, 4), true));
        assert!(is_unit_fraction(&q(1, 4), false));
        assert!(!is_unit_fraction(&q(2, 3), false));
        assert!(!is_unit_fraction(&qi(0), false));
    }

    #[test]
    fn normalization_inverts_the_middle_interval() {
        let f = normalized_family(&Family::D21a { a: q(-1, 3) });
        assert_eq!(f, Family::D21a { a: qi(-3) });
        let g = Family::D21a { a: qi(-3) };
        assert_eq!(normalized_family(&g), g);
    }

    #[test]
    fn psl22_charge_has_removable_point() {
        let p = s("psl:2|2");
        assert_eq!(central_charge(&p, &qi(0)).unwrap(), qi(-6));
        assert_eq!(central_charge(&p, &qi(1)).unwrap(), qi(-12));
        assert!(central_charge(&s("lie:A1"), &qi(-2)).is_err());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn levels_solve_the_charge_equation() {
        let a1 = s("lie:A1");
        for c in [q(1, 2), qi(0), q(-22, 5), qi(1)] {
            if let Some(ks) = levels_for_charge(&a1, &qi(0), &c) {
                for k in ks {
                    assert_eq!(central_charge(&a1, &k).unwrap(), c);
                }
            }
        }
    }
}
