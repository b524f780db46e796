//! Exact rationals, sparse weights over a labeled basis and bilinear forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Rational from a numerator/denominator pair of machine integers.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Integer value of an integral rational that fits in an `i64`.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Eps(u8),
    Del(u8),
    Lambda0,
    DeltaIm,
}

impl BasisLabel {
    pub fn is_finite(self) -> bool {
        matches!(self, BasisLabel::Eps(_) | BasisLabel::Del(_))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Eps(i) => write!(f, "e{i}"),
            BasisLabel::Del(i) => write!(f, "d{i}"),
            BasisLabel::Lambda0 => write!(f, "L0"),
            BasisLabel::DeltaIm => write!(f, "delta"),
        }
    }
}

/// Finitely supported rational vector. Zero coefficients are never stored,
/// so derived equality is coefficientwise equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coeffs: BTreeMap<BasisLabel, Rational>,
}

impl Weight {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(label: BasisLabel) -> Self {
        Self::from_pairs([(label, qi(1))])
    }

    pub fn eps(i: u8) -> Self {
        Self::unit(BasisLabel::Eps(i))
    }

    pub fn del(i: u8) -> Self {
        Self::unit(BasisLabel::Del(i))
    }

    pub fn lambda0() -> Self {
        Self::unit(BasisLabel::Lambda0)
    }

    pub fn delta() -> Self {
        Self::unit(BasisLabel::DeltaIm)
    }

    pub fn from_pairs<I: IntoIterator<Item = (BasisLabel, Rational)>>(pairs: I) -> Self {
        let mut w = Self::zero();
        for (l, c) in pairs {
            w.add_term(l, &c);
        }
        w
    }

    pub fn add_term(&mut self, label: BasisLabel, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(label).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&label);
        }
    }

    pub fn coeff(&self, label: BasisLabel) -> Rational {
        self.coeffs.get(&label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisLabel, &Rational)> {
        self.coeffs.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = BasisLabel> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(l, x)| (*l, x * c)).collect(),
        }
    }

    /// Part supported on the Eps/Del labels.
    pub fn finite_part(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(l, _)| l.is_finite())
                .map(|(l, c)| (*l, c.clone()))
                .collect(),
        }
    }

    /// Parses sums such as `e1-d1`, `1/2d1 - 1/2e1`, `2L0 + 3delta - e1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut w = Self::zero();
        let bad = |msg: &str| Error::Parse(format!("{msg} in weight {s:?}"));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() || (chars.len() == 1 && chars[0] == '0') {
            return Ok(w);
        }
        let mut i = 0;
        while i < chars.len() {
            let mut sign = qi(1);
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let coef = if start == i {
                qi(1)
            } else {
                let txt: String = chars[start..i].iter().collect();
                parse_rational(&txt)?
            };
            let rest: String = chars[i..].iter().collect();
            let (label, len) = if rest.starts_with("delta") {
                (BasisLabel::DeltaIm, 5)
            } else if rest.starts_with("L0") {
                (BasisLabel::Lambda0, 2)
            } else if rest.starts_with('e') || rest.starts_with('d') {
                let digits: String = rest[1..].chars().take_while(|c| c.is_ascii_digit()).collect();
                if digits.is_empty() {
                    return Err(bad("missing index"));
                }
                let idx: u8 = digits.parse().map_err(|_| bad("bad index"))?;
                if idx == 0 {
                    return Err(bad("indices start at 1"));
                }
                let l = if rest.starts_with('e') {
                    BasisLabel::Eps(idx)
                } else {
                    BasisLabel::Del(idx)
                };
                (l, 1 + digits.len())
            } else if start != i && (rest.is_empty() || rest.starts_with('+') || rest.starts_with('-')) {
                return Err(bad("bare scalar"));
            } else {
                return Err(bad("unknown label"));
            };
            w.add_term(label, &(sign * coef));
            i += len;
        }
        Ok(w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in &self.coeffs {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if a.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{a}{l}")?;
            }
        }
        Ok(())
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(mut self, rhs: Weight) -> Weight {
        self += &rhs;
        self
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(mut self, rhs: Weight) -> Weight {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (l, c) in &rhs.coeffs {
            self.add_term(*l, c);
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (l, c) in &rhs.coeffs {
            self.add_term(*l, &-c);
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(&qi(-1))
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<&Weight> for &Rational {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// Symmetric form. The Gram matrix is stored for finite labels, including
/// off-diagonal entries (needed for the G2-type coordinates); Λ₀ pairs only
/// with δ, to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    labels: Vec<BasisLabel>,
    gram: BTreeMap<(BasisLabel, BasisLabel), Rational>,
}

impl BilinearForm {
    pub fn diagonal<I: IntoIterator<Item = (BasisLabel, Rational)>>(diag: I) -> Self {
        let mut f = Self {
            labels: Vec::new(),
            gram: BTreeMap::new(),
        };
        for (l, c) in diag {
            f.labels.push(l);
            f.set(l, l, c);
        }
        f
    }

    pub fn set(&mut self, a: BasisLabel, b: BasisLabel, c: Rational) {
        assert!(a.is_finite() && b.is_finite(), "only finite labels carry Gram entries");
        for l in [a, b] {
            if !self.labels.contains(&l) {
                self.labels.push(l);
            }
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        if c.is_zero() {
            self.gram.remove(&key);
        } else {
            self.gram.insert(key, c);
        }
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn entry(&self, a: BasisLabel, b: BasisLabel) -> Rational {
        match (a, b) {
            (BasisLabel::Lambda0, BasisLabel::DeltaIm) | (BasisLabel::DeltaIm, BasisLabel::Lambda0) => qi(1),
            _ if a.is_finite() && b.is_finite() => {
                let key = if a <= b { (a, b) } else { (b, a) };
                self.gram.get(&key).cloned().unwrap_or_else(Rational::zero)
            }
            _ => Rational::zero(),
        }
    }

    /// Multiplies every finite Gram entry by `c`.
    pub fn rescaled(&self, c: &Rational) -> Self {
        Self {
            labels: self.labels.clone(),
            gram: self.gram.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    fn check(&self, x: &Weight) -> Result<()> {
        for l in x.labels() {
            if l.is_finite() && !self.labels.contains(&l) {
                return Err(Error::Structure(format!("label {l} is outside the form's basis")));
            }
        }
        Ok(())
    }

    pub fn pair(&self, x: &Weight, y: &Weight) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.pair_unchecked(x, y))
    }

    pub fn pair_unchecked(&self, x: &Weight, y: &Weight) -> Rational {
        let mut acc = Rational::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let e = self.entry(*a, *b);
                if !e.is_zero() {
                    acc += ca * cb * e;
                }
            }
        }
        acc
    }

    pub fn norm2(&self, x: &Weight) -> Rational {
        self.pair_unchecked(x, x)
    }
}

/// Splits μ as j·δ + μ̇ + c·Λ₀ and returns (j, μ̇, c).
pub fn decompose(mu: &Weight) -> (Rational, Weight, Rational) {
    (
        mu.coeff(BasisLabel::DeltaIm),
        mu.finite_part(),
        mu.coeff(BasisLabel::Lambda0),
    )
}

pub fn recompose(j: &Rational, mu_dot: &Weight, l0: &Rational) -> Weight {
    let mut w = mu_dot.clone();
    w.add_term(BasisLabel::DeltaIm, j);
    w.add_term(BasisLabel::Lambda0, l0);
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn form3() -> BilinearForm {
        let mut f = BilinearForm::diagonal([
            (BasisLabel::Eps(1), q(1, 2)),
            (BasisLabel::Eps(2), q(-1, 3)),
            (BasisLabel::Del(1), qi(-1)),
        ]);
        f.set(BasisLabel::Eps(1), BasisLabel::Eps(2), q(1, 4));
        f
    }

    #[test]
    fn parse_and_display() {
        let w = Weight::parse("1/2d1 - 1/2e1 + 2L0 - delta").unwrap();
        assert_eq!(w.coeff(BasisLabel::Del(1)), q(1, 2));
        assert_eq!(w.coeff(BasisLabel::Eps(1)), q(-1, 2));
        assert_eq!(w.coeff(BasisLabel::Lambda0), qi(2));
        assert_eq!(w.coeff(BasisLabel::DeltaIm), qi(-1));
        assert_eq!(Weight::parse(&w.to_string()).unwrap(), w);
        assert!(Weight::parse("e1-e1").unwrap().is_zero());
        assert!(Weight::parse("x3").is_err());
        assert!(Weight::parse("e0").is_err());
    }

    #[test]
    fn lambda0_delta_pairings() {
        let f = form3();
        let l0 = Weight::lambda0();
        let d = Weight::delta();
        assert_eq!(f.norm2(&l0), qi(0));
        assert_eq!(f.norm2(&d), qi(0));
        assert_eq!(f.pair_unchecked(&l0, &d), qi(1));
        assert_eq!(f.pair_unchecked(&l0, &Weight::eps(1)), qi(0));
    }

    #[test]
    fn foreign_label_is_structural_error() {
        let f = form3();
        assert!(matches!(
            f.pair(&Weight::eps(7), &Weight::eps(1)),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn decompose_alpha0() {
        let theta = Weight::parse("e1-e2").unwrap();
        let a0 = &Weight::delta() - &theta;
        let (j, dot, l0) = decompose(&a0);
        assert_eq!(j, qi(1));
        assert_eq!(dot, -&theta);
        assert_eq!(l0, qi(0));
        let (j, dot, _) = decompose(&Weight::delta());
        assert_eq!((j, dot), (qi(1), Weight::zero()));
    }

    fn arb_weight() -> impl Strategy<Value = Weight> {
        let label = prop_oneof![
            Just(BasisLabel::Eps(1)),
            Just(BasisLabel::Eps(2)),
            Just(BasisLabel::Del(1)),
            Just(BasisLabel::Lambda0),
            Just(BasisLabel::DeltaIm),
        ];
        proptest::collection::vec((label, -6i64..7, 1i64..4), 0..6)
            .prop_map(|v| Weight::from_pairs(v.into_iter().map(|(l, n, d)| (l, q(n, d)))))
    }

    proptest! {
        #[test]
        fn pair_is_bilinear_and_symmetric(x in arb_weight(), y in arb_weight(), z in arb_weight(), a in -5i64..6) {
            let f = form3();
            let a = qi(a);
            prop_assert_eq!(f.pair_unchecked(&x, &y), f.pair_unchecked(&y, &x));
            let lhs = f.pair_unchecked(&(&x.scale(&a) + &y), &z);
            let rhs = &a * f.pair_unchecked(&x, &z) + f.pair_unchecked(&y, &z);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn decompose_recompose(x in arb_weight()) {
            let (j, dot, l0) = decompose(&x);
            prop_assert_eq!(recompose(&j, &dot, &l0), x);
        }

        #[test]
        fn no_zero_coefficients_stored(x in arb_weight(), y in arb_weight()) {
            let s = &x - &y;
            prop_assert!(s.iter().all(|(_, c)| !c.is_zero()));
            prop_assert!((&s - &s).is_zero());
        }
    }
}
