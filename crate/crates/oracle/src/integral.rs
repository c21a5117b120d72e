//! Integral model of the Chow ring of a split quadric, embedded in a
//! rational algebra generated by the hyperplane class `h` and, for even
//! dimension, the difference `e = l_d - l'_d` of the two middle classes.
//!
//! Relations: `h^(n+1) = 0`, `h e = 0`, `e^2 = (-1)^d h^n`, and
//! `deg(h^n) = 2`. Isotropic classes are recovered as `l_j = h^(n-j) / 2`
//! below the middle and `l_d, l'_d = (h^d +- e) / 2` at the middle.

use num_rational::Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Class {
    H(u32),
    L(u32),
    LPrime(u32),
}

#[derive(Debug, Clone, PartialEq)]
struct Element {
    h: Vec<Rational64>,
    e: Rational64,
}

pub struct IntegralQuadric {
    n: u32,
    d: u32,
}

impl IntegralQuadric {
    pub fn new(n: u32) -> Self {
        IntegralQuadric { n, d: n / 2 }
    }

    fn even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    fn zero(&self) -> Element {
        Element { h: vec![Rational64::from_integer(0); self.n as usize + 1], e: Rational64::from_integer(0) }
    }

    fn embed(&self, c: Class) -> Element {
        let half = Rational64::new(1, 2);
        let mut x = self.zero();
        match c {
            Class::H(k) => x.h[k as usize] = Rational64::from_integer(1),
            Class::L(j) if self.even() && j == self.d => {
                x.h[self.d as usize] = half;
                x.e = half;
            }
            Class::LPrime(_) => {
                x.h[self.d as usize] = half;
                x.e = -half;
            }
            Class::L(j) => x.h[(self.n - j) as usize] = half,
        }
        x
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = self.zero();
        let n = self.n as usize;
        for (i, &x) in a.h.iter().enumerate() {
            for (j, &y) in b.h.iter().enumerate() {
                if i + j <= n {
                    out.h[i + j] += x * y;
                }
            }
        }
        // h * e = 0 except through h^0.
        out.e = a.h[0] * b.e + a.e * b.h[0];
        let sign = if self.d.is_multiple_of(2) { 1 } else { -1 };
        out.h[n] += a.e * b.e * Rational64::from_integer(sign);
        out
    }

    /// Integral coordinates in the `h^k, l_j, l'_d` basis.
    fn coordinates(&self, x: &Element) -> Vec<(Class, i64)> {
        let mut out = Vec::new();
        let as_int = |q: Rational64| -> i64 {
            assert!(q.is_integer(), "non-integral coordinate {q}");
            q.to_integer()
        };
        for (t, &c) in x.h.iter().enumerate() {
            let t = t as u32;
            if t < self.d || (t == self.d && !self.even()) {
                out.push((Class::H(t), as_int(c)));
            } else if t == self.d {
                out.push((Class::L(self.d), as_int(c + x.e)));
                out.push((Class::LPrime(self.d), as_int(c - x.e)));
            } else {
                out.push((Class::L(self.n - t), as_int(c * Rational64::from_integer(2))));
            }
        }
        if !self.even() {
            assert_eq!(x.e, Rational64::from_integer(0));
        }
        out
    }

    /// Integral product expanded in the basis.
    pub fn product(&self, a: Class, b: Class) -> Vec<(Class, i64)> {
        let p = self.mul(&self.embed(a), &self.embed(b));
        self.coordinates(&p).into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Basis classes with odd coefficient in the integral product.
    pub fn product_mod2(&self, a: Class, b: Class) -> Vec<Class> {
        self.product(a, b).into_iter().filter(|&(_, c)| c.rem_euclid(2) == 1).map(|(c, _)| c).collect()
    }

    /// Degree of a class: coefficient of `h^n` divided by `deg(h^n) = 2`.
    pub fn degree(&self, a: Class) -> Rational64 {
        self.embed(a).h[self.n as usize] * Rational64::from_integer(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_overflow_is_twice_isotropic() {
        let q = IntegralQuadric::new(5);
        assert_eq!(q.product(Class::H(2), Class::H(1)), vec![(Class::L(2), 2)]);
        assert_eq!(q.product(Class::H(1), Class::L(2)), vec![(Class::L(1), 1)]);
    }

    #[test]
    fn middle_products() {
        let q = IntegralQuadric::new(4);
        assert_eq!(q.product(Class::L(2), Class::L(2)), vec![(Class::L(0), 1)]);
        assert_eq!(q.product(Class::L(2), Class::LPrime(2)), vec![]);
        let q = IntegralQuadric::new(6);
        assert_eq!(q.product(Class::L(3), Class::L(3)), vec![]);
        assert_eq!(q.product(Class::L(3), Class::LPrime(3)), vec![(Class::L(0), 1)]);
        assert_eq!(q.product(Class::H(1), Class::H(2)), vec![(Class::L(3), 1), (Class::LPrime(3), 1)]);
    }

    #[test]
    fn point_has_degree_one() {
        for n in 1..10 {
            assert_eq!(IntegralQuadric::new(n).degree(Class::L(0)), Rational64::from_integer(1));
        }
    }
}
