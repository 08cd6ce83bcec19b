//! Exact-rational polynomials in `(u, v, t)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `Σ c_{ijk} u^i v^j t^k` for a fixed ambient length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyUVT {
    pub n: u32,
    terms: BTreeMap<(u32, u32, u32), Rational>,
}

impl PolyUVT {
    pub fn zero(n: u32) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: u32, c: Rational) -> Self {
        Self::monomial(n, (0, 0, 0), c)
    }

    pub fn monomial(n: u32, exps: (u32, u32, u32), c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(exps, c);
        p
    }

    pub fn u(n: u32) -> Self {
        Self::monomial(n, (1, 0, 0), Rational::one())
    }

    pub fn v(n: u32) -> Self {
        Self::monomial(n, (0, 1, 0), Rational::one())
    }

    pub fn t(n: u32) -> Self {
        Self::monomial(n, (0, 0, 1), Rational::one())
    }

    pub fn add_term(&mut self, exps: (u32, u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Rational {
        self.terms.get(&(i, j, k)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j, k)| i + j + k).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.n, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The polynomial with `u` and `v` exchanged.
    pub fn swap_uv(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((i, j, k), c) in &self.terms {
            out.add_term((*j, *i, *k), c.clone());
        }
        out
    }

    pub fn is_symmetric_uv(&self) -> bool {
        *self == self.swap_uv()
    }

    pub fn eval(&self, u: &Rational, v: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((i, j, k), c) in &self.terms {
            acc += c * pow_r(u, *i) * pow_r(v, *j) * pow_r(t, *k);
        }
        acc
    }

    pub fn eval_int(&self, u: u32, v: u32, t: u32) -> Rational {
        self.eval(&int(u as i64), &int(v as i64), &int(t as i64))
    }

    pub fn eval_f64(&self, u: f64, v: f64, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|((i, j, k), c)| {
                c.to_f64().unwrap_or(f64::NAN) * u.powi(*i as i32) * v.powi(*j as i32) * t.powi(*k as i32)
            })
            .sum()
    }

    /// Returns `c` with `self = c · other`, if such a constant exists.
    pub fn ratio_to(&self, other: &PolyUVT) -> Option<Rational> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (key, theirs) = other.terms.iter().next()?;
        let c = self.terms.get(key)? / theirs;
        (*self == other.scale(&c)).then_some(c)
    }
}

fn pow_r(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl Add for &PolyUVT {
    type Output = PolyUVT;
    fn add(self, rhs: &PolyUVT) -> PolyUVT {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &PolyUVT {
    type Output = PolyUVT;
    fn sub(self, rhs: &PolyUVT) -> PolyUVT {
        self + &(-rhs)
    }
}

impl Neg for &PolyUVT {
    type Output = PolyUVT;
    fn neg(self) -> PolyUVT {
        self.scale(&-Rational::one())
    }
}

impl Mul for &PolyUVT {
    type Output = PolyUVT;
    fn mul(self, rhs: &PolyUVT) -> PolyUVT {
        let mut out = PolyUVT::zero(self.n);
        for ((a, b, c), x) in &self.terms {
            for ((d, e, f), y) in &rhs.terms {
                out.add_term((a + d, b + e, c + f), x * y);
            }
        }
        out
    }
}

impl fmt::Display for PolyUVT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first, then by exponent tuple
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| (b.0 + b.1 + b.2, *b).cmp(&(a.0 + a.1 + a.2, *a)));
        for (idx, ((i, j, k), c)) in ordered.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let mut parts = Vec::new();
            for (name, e) in [("u", i), ("v", j), ("t", k)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            if parts.is_empty() || !mag.is_one() {
                parts.insert(0, mag.to_string());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_evaluation() {
        let n = 5;
        let p = &(&PolyUVT::u(n) + &PolyUVT::v(n)) * &PolyUVT::t(n);
        assert_eq!(p.eval_int(1, 2, 3), int(9));
        assert!(p.is_symmetric_uv());
        let q = &PolyUVT::u(n) - &PolyUVT::t(n);
        assert!(!q.is_symmetric_uv());
        assert_eq!(q.pow(2).eval_int(4, 0, 1), int(9));
        assert!((&q - &q).is_zero());
        assert_eq!(p.scale(&rat(3, 2)).ratio_to(&p), Some(rat(3, 2)));
        assert_eq!(p.ratio_to(&q), None);
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn display() {
        let n = 4;
        let p = &(&PolyUVT::u(n).scale(&rat(-1, 2)) + &PolyUVT::t(n).pow(2)) + &PolyUVT::constant(n, int(3));
        assert_eq!(p.to_string(), "t^2 - 1/2*u + 3");
    }
}
