//! Sparse multivariate polynomials with integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(u32, u32)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: i64) -> Poly {
        let mut p = Poly::zero();
        if c != 0 {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn var(v: u32) -> Poly {
        let mut p = Poly::zero();
        p.terms.insert(vec![(v, 1)], 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, i64)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: i64) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, &v)| (m.clone(), v * c)))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|&(_, e)| e).sum()).max().unwrap_or(0)
    }

    /// Terms in display order: descending total degree, then ascending monomial.
    pub fn ordered_terms(&self) -> Vec<(&Monomial, i64)> {
        let mut t: Vec<(&Monomial, i64)> = self.terms().collect();
        t.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|x| x.1).sum();
            let db: u32 = b.0.iter().map(|x| x.1).sum();
            db.cmp(&da).then_with(|| a.0.cmp(b.0))
        });
        t
    }

    /// The polynomial or its negative, whichever has a positive leading coefficient.
    pub fn normalize_sign(&self) -> Poly {
        match self.ordered_terms().first() {
            Some(&(_, c)) if c < 0 => -self.clone(),
            _ => self.clone(),
        }
    }

    /// Value mod `p` at `values[v]` for each variable `v`.
    pub fn eval_mod(&self, values: &[u64], p: u64) -> u64 {
        let mut acc = 0u64;
        for (m, &c) in &self.terms {
            let mut t = crate::matrix::mod_i64(c, p);
            for &(v, e) in m {
                t = t * crate::matrix::pow_mod(values[v as usize], e as u64, p) % p;
            }
            acc = (acc + t) % p;
        }
        acc
    }

    pub fn variables(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().flat_map(|m| m.iter().map(|x| x.0)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Human-readable form, e.g. `w_{1,2}*w_{4,7} + w_{1,3}*w_{5,7}`.
    pub fn display_with(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.ordered_terms().into_iter().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let factors: Vec<String> = m
                .iter()
                .map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
                .collect();
            match (abs, factors.is_empty()) {
                (_, true) => out.push_str(&abs.to_string()),
                (1, false) => out.push_str(&factors.join("*")),
                _ => out.push_str(&format!("{}*{}", abs, factors.join("*"))),
            }
        }
        out
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<u32, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *out.entry(v).or_insert(0) += e;
    }
    out.into_iter().collect()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs.clone())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &rhs.terms {
                out.add_term(mul_monomials(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = &(&x * &y) - &Poly::constant(2);
        assert_eq!(p.display_with(&|v| format!("x{v}")), "x0*x1 - 2");
        assert!((&p - &p).is_zero());
        let sq = &x * &x;
        assert_eq!(sq.display_with(&|_| "x".into()), "x^2");
        assert_eq!(Poly::zero().display_with(&|_| "x".into()), "0");
    }

    #[test]
    fn sign_normalisation() {
        let p = &Poly::var(1) - &Poly::var(0);
        let n = p.normalize_sign();
        assert_eq!(n.display_with(&|v| format!("w{v}")), "w0 - w1");
    }

    #[test]
    fn evaluation() {
        let p = &(&Poly::var(0) * &Poly::var(1)) + &Poly::constant(1);
        assert_eq!(p.eval_mod(&[2, 3], 5), 2);
    }
}
