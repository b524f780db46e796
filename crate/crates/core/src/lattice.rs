//! Coordinates with respect to a base of simple roots.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, row_reduce, Matrix};
use crate::weights::{qi, BasisLabel, BilinearForm, Rational, Weight};

/// Finite root lattice ℤΣ̇ with its Gram matrix.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub base: Vec<Weight>,
    labels: Vec<BasisLabel>,
    pivots: Vec<usize>,
    inv: Matrix,
    pub gram: Matrix,
    /// Gram matrix scaled to integers: gram = gram_num / gram_den.
    pub gram_num: Vec<Vec<i64>>,
    pub gram_den: i64,
}

impl Lattice {
    pub fn new(base: Vec<Weight>, form: &BilinearForm) -> Result<Self> {
        let labels: Vec<BasisLabel> = form.labels().to_vec();
        let r = base.len();
        // labels x r matrix of base coordinates
        let cols: Matrix = labels
            .iter()
            .map(|l| base.iter().map(|b| b.coeff(*l)).collect())
            .collect();
        let mut t: Matrix = (0..r).map(|j| cols.iter().map(|row| row[j].clone()).collect()).collect();
        let piv = row_reduce(&mut t);
        if piv.len() != r {
            return Err(Error::Catalog("base is linearly dependent".into()));
        }
        let sub: Matrix = piv.iter().map(|&p| cols[p].clone()).collect();
        let inv = inverse(&sub).ok_or_else(|| Error::Catalog("singular base block".into()))?;
        let gram: Matrix = base
            .iter()
            .map(|a| base.iter().map(|b| form.pair_unchecked(a, b)).collect())
            .collect();
        let mut den = num_bigint::BigInt::from(1);
        for row in &gram {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let gram_den = den.to_i64().ok_or_else(|| Error::Arithmetic("Gram denominator overflow".into()))?;
        let gram_num = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * qi(gram_den)).to_integer().to_i64().expect("Gram entry overflow"))
                    .collect()
            })
            .collect();
        Ok(Self {
            base,
            labels,
            pivots: piv,
            inv,
            gram,
            gram_num,
            gram_den,
        })
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    /// Coordinates of the finite part of `w`, or `None` when it leaves the span.
    pub fn coords(&self, w: &Weight) -> Option<Vec<Rational>> {
        let x: Vec<Rational> = self.pivots.iter().map(|&p| w.coeff(self.labels[p])).collect();
        let c = mat_vec(&self.inv, &x);
        if self.weight(&c) == w.finite_part() {
            Some(c)
        } else {
            None
        }
    }

    pub fn int_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.coords(w)?
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn weight(&self, c: &[Rational]) -> Weight {
        let mut w = Weight::zero();
        for (ci, b) in c.iter().zip(&self.base) {
            if !ci.is_zero() {
                w += &b.scale(ci);
            }
        }
        w
    }

    pub fn weight_int(&self, c: &[i64]) -> Weight {
        let q: Vec<Rational> = c.iter().map(|&x| qi(x)).collect();
        self.weight(&q)
    }

    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += ai * bj * &self.gram[i][j];
                }
            }
        }
        acc
    }

    /// Pairing of integer coordinate vectors, times `gram_den`.
    pub fn pair_int_scaled(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.gram_num[i];
            for (j, &bj) in b.iter().enumerate() {
                acc += ai * bj * row[j];
            }
        }
        acc
    }

    pub fn pair_int(&self, a: &[i64], b: &[i64]) -> Rational {
        Rational::new(self.pair_int_scaled(a, b).into(), self.gram_den.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::q;

    #[test]
    fn coordinates_in_a_lifted_span() {
        // gl(2|2) coordinates, base of psl(2|2)
        let form = BilinearForm::diagonal([
            (BasisLabel::Eps(1), qi(1)),
            (BasisLabel::Eps(2), qi(1)),
            (BasisLabel::Del(1), qi(-1)),
            (BasisLabel::Del(2), qi(-1)),
        ]);
        let base: Vec<Weight> = ["e1-d1", "d1-d2", "d2-e2"].iter().map(|s| Weight::parse(s).unwrap()).collect();
        let lat = Lattice::new(base, &form).unwrap();
        let theta = Weight::parse("e1-e2").unwrap();
        assert_eq!(lat.int_coords(&theta), Some(vec![1, 1, 1]));
        assert!(lat.coords(&Weight::parse("e1").unwrap()).is_none());
        let c = lat.coords(&Weight::parse("1/2e1-1/2e2").unwrap()).unwrap();
        assert_eq!(c, vec![q(1, 2), q(1, 2), q(1, 2)]);
        assert_eq!(lat.pair_int(&[1, 1, 1], &[1, 1, 1]), qi(2));
    }
}
