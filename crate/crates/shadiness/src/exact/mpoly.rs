//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Monomials are exponent tuples of fixed length `nvars`, iterated in
//! lexicographic order (the `BTreeMap` key order on the tuples).

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use super::rational::Rat;
use super::ExactError;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn insert_term(&mut self, exps: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly, ExactError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly, ExactError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly, ExactError> {
        self.check_vars(other)?;
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, s: &Rat) -> MPoly {
        if s.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * s);
        }
        out
    }

    pub fn square(&self) -> MPoly {
        self.mul(self).expect("same polynomial")
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    fn check_vars(&self, other: &MPoly) -> Result<(), ExactError> {
        if self.nvars != other.nvars {
            Err(ExactError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        } else {
            Ok(())
        }
    }
}

impl std::fmt::Debug for MPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    write!(f, "*x{}", i + 1)?;
                } else if k > 1 {
                    write!(f, "*x{}^{}", i + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

/// Exact expansion of a weighted sum `sum_i coef_i * factor_i`.
pub fn poly_expand_weighted_sum(terms: &[(MPoly, MPoly)]) -> Result<MPoly, ExactError> {
    let Some(first) = terms.first() else {
        return Ok(MPoly::zero(0));
    };
    let nvars = first.0.nvars();
    let mut acc = MPoly::zero(nvars);
    for (coef, factor) in terms {
        acc = acc.add(&coef.mul(factor)?)?;
    }
    Ok(acc)
}

/// All exponent tuples of weight at most `r` over `nvars` variables,
/// in lexicographic order.
pub fn monomial_basis(nvars: usize, r: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    gen_basis(&mut out, &mut cur, 0, r);
    out.sort();
    out
}

fn gen_basis(out: &mut Vec<Exponents>, cur: &mut Exponents, idx: usize, left: u32) {
    if idx == cur.len() {
        out.push(cur.clone());
        return;
    }
    for k in 0..=left {
        cur[idx] = k;
        gen_basis(out, cur, idx + 1, left - k);
    }
    cur[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};
    use rand::{Rng, SeedableRng};

    fn random_poly(rng: &mut impl Rng, nvars: usize, deg: u32, terms: usize) -> MPoly {
        let mut p = MPoly::zero(nvars);
        for _ in 0..terms {
            let mut e = vec![0u32; nvars];
            let mut left = deg;
            for x in e.iter_mut() {
                let k = rng.gen_range(0..=left);
                *x = k;
                left -= k;
            }
            p = p
                .add(&MPoly::monomial(
                    nvars,
                    e,
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                ))
                .unwrap();
        }
        p
    }

    #[test]
    fn expand_trivial_and_lemma_shape() {
        let x1 = MPoly::var(2, 0);
        let one = MPoly::one(2);
        let r = poly_expand_weighted_sum(&[(one.clone(), x1.clone())]).unwrap();
        assert_eq!(r, x1);

        // (1-x1)*1 + x1*(1-x2) = 1 - x1*x2
        let x2 = MPoly::var(2, 1);
        let r = poly_expand_weighted_sum(&[
            (one.sub(&x1).unwrap(), one.clone()),
            (x1.clone(), one.sub(&x2).unwrap()),
        ])
        .unwrap();
        let expected = one.sub(&x1.mul(&x2).unwrap()).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn expansion_matches_point_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let a = random_poly(&mut rng, 3, 3, 4);
            let b = random_poly(&mut rng, 3, 3, 4);
            let prod = a.mul(&b).unwrap();
            for _ in 0..20 {
                let pt: Vec<Rat> = (0..3)
                    .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
                    .collect();
                assert_eq!(prod.eval(&pt), a.eval(&pt) * b.eval(&pt));
            }
        }
    }

    #[test]
    fn ring_distributivity_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 8, 6, 5);
            let q = random_poly(&mut rng, 8, 6, 5);
            let r = random_poly(&mut rng, 8, 6, 5);
            let lhs = p.add(&q).unwrap().mul(&r).unwrap();
            let rhs = p.mul(&r).unwrap().add(&q.mul(&r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn variable_count_mismatch() {
        let a = MPoly::var(2, 0);
        let b = MPoly::var(3, 0);
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let x = MPoly::var(1, 0);
        let z = x.sub(&x).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        assert_eq!(MPoly::constant(2, rat_int(0)).num_terms(), 0);
    }

    #[test]
    fn basis_size_and_order() {
        let b = monomial_basis(2, 2);
        assert_eq!(b.len(), 6); // C(4,2)
        assert_eq!(b[0], vec![0, 0]);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(monomial_basis(8, 3).len(), 165); // C(11,3)
    }
}
