//! Exact rational scalars, Bernoulli numbers and truncated one-variable
//! Laurent series.
//!
//! Everything downstream works over `Rat` (arbitrary-precision rationals,
//! always reduced, positive denominator).  Rationals serialize as `"p/q"`
//! with the denominator omitted when it is 1.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::str::FromStr;
use std::sync::Mutex;

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rz(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `p/q`.
pub fn rq(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    BigRational::from_str(s).ok()
}

pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

pub fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

static BERNOULLI: Mutex<Vec<(BigInt, BigInt)>> = Mutex::new(Vec::new());

/// Bernoulli number `B_n` under the convention `B_1 = -1/2`.
///
/// Computed from the recurrence `sum_{k=0}^{n} C(n+1,k) B_k = 0` and cached;
/// the cache is behind a mutex so concurrent readers are safe.
pub fn bernoulli(n: usize) -> Rat {
    let mut tab = BERNOULLI.lock().unwrap();
    while tab.len() <= n {
        let m = tab.len();
        if m == 0 {
            tab.push((BigInt::one(), BigInt::one()));
            continue;
        }
        let mut acc = Rat::zero();
        for (k, (p, q)) in tab.iter().enumerate() {
            acc += binomial(m + 1, k) * BigRational::new(p.clone(), q.clone());
        }
        let b = -acc / binomial(m + 1, m);
        tab.push((b.numer().clone(), b.denom().clone()));
    }
    let (p, q) = &tab[n];
    BigRational::new(p.clone(), q.clone())
}

/// A Laurent series in one variable, exact below its truncation order.
///
/// Coefficients of degrees `min_deg .. =trunc` are stored; degrees above
/// `trunc` are unknown.  Arithmetic propagates the tightest valid window.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    pub min_deg: i64,
    pub coeffs: Vec<Rat>,
    pub trunc: i64,
}

impl LaurentSeries {
    pub fn zero(trunc: i64) -> Self {
        LaurentSeries {
            min_deg: 0,
            coeffs: Vec::new(),
            trunc,
        }
    }

    pub fn from_terms(terms: &[(i64, Rat)], trunc: i64) -> Self {
        let mut s = LaurentSeries::zero(trunc);
        for (d, c) in terms {
            s.add_term(*d, c.clone());
        }
        s.normalize();
        s
    }

    pub fn monomial(deg: i64, coeff: Rat, trunc: i64) -> Self {
        Self::from_terms(&[(deg, coeff)], trunc)
    }

    fn add_term(&mut self, deg: i64, c: Rat) {
        if c.is_zero() || deg > self.trunc {
            return;
        }
        if self.coeffs.is_empty() {
            self.min_deg = deg;
            self.coeffs.push(c);
            return;
        }
        if deg < self.min_deg {
            let pad = (self.min_deg - deg) as usize;
            let mut new = vec![Rat::zero(); pad];
            new.extend(self.coeffs.drain(..));
            self.coeffs = new;
            self.min_deg = deg;
        }
        let idx = (deg - self.min_deg) as usize;
        if idx >= self.coeffs.len() {
            self.coeffs.resize(idx + 1, Rat::zero());
        }
        self.coeffs[idx] += c;
    }

    fn normalize(&mut self) {
        while let Some(c) = self.coeffs.first() {
            if c.is_zero() {
                self.coeffs.remove(0);
                self.min_deg += 1;
            } else {
                break;
            }
        }
        while let Some(c) = self.coeffs.last() {
            if c.is_zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        if self.coeffs.is_empty() {
            self.min_deg = 0;
        }
    }

    pub fn coeff(&self, deg: i64) -> Rat {
        if deg < self.min_deg {
            return Rat::zero();
        }
        let idx = (deg - self.min_deg) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_deg + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = LaurentSeries::zero(trunc);
        for (d, c) in self.terms() {
            out.add_term(d, c.clone());
        }
        for (d, c) in other.terms() {
            out.add_term(d, c.clone());
        }
        out.normalize();
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for v in &mut out.coeffs {
            *v *= c;
        }
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        // a term of degree d is complete iff d <= min(t1 + m2, t2 + m1)
        let trunc = (self.trunc + other.min_deg).min(other.trunc + self.min_deg);
        let mut out = LaurentSeries::zero(trunc);
        for (d1, c1) in self.terms() {
            for (d2, c2) in other.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out.normalize();
        out
    }
}

/// The series `b(x) = 1/(e^x - 1) + 1/2 = x^{-1} + sum_{n>=1} B_{2n}/(2n)! x^{2n-1}`,
/// truncated at the given order.
pub fn b_series(trunc: i64) -> LaurentSeries {
    assert!(trunc >= -1);
    let mut terms = vec![(-1i64, Rat::one())];
    let mut n = 1usize;
    while (2 * n as i64 - 1) <= trunc {
        terms.push(((2 * n - 1) as i64, bernoulli(2 * n) / factorial(2 * n)));
        n += 1;
    }
    LaurentSeries::from_terms(&terms, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_base_cases() {
        assert_eq!(bernoulli(0), rz(1));
        assert_eq!(bernoulli(1), rq(-1, 2));
        assert_eq!(bernoulli(2), rq(1, 6));
        assert_eq!(bernoulli(12), rq(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_holds_up_to_40() {
        for n in 1..=40usize {
            let mut acc = Rat::zero();
            for k in 0..=n {
                acc += binomial(n + 1, k) * bernoulli(k);
            }
            assert!(acc.is_zero(), "recurrence failed at n={n}");
        }
    }

    #[test]
    fn bernoulli_odd_vanishing() {
        for k in 1..=20usize {
            assert!(bernoulli(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn b_series_low_orders() {
        let b = b_series(0);
        assert_eq!(b.coeff(-1), rz(1));
        assert!(b.coeff(0).is_zero());

        let b = b_series(1);
        assert_eq!(b.coeff(1), rq(1, 12));

        let b = b_series(3);
        assert_eq!(b.coeff(3), rq(-1, 720));
    }

    #[test]
    fn b_minus_pole_is_odd() {
        let b = b_series(21);
        for d in 0..=21i64 {
            if d % 2 == 0 {
                assert!(b.coeff(d).is_zero(), "even coefficient at {d}");
            }
        }
    }

    #[test]
    fn laurent_mul_tracks_truncation() {
        let a = b_series(5);
        let prod = a.mul(&a);
        // both factors start at degree -1, so the product window is 5 + (-1)
        assert_eq!(prod.trunc, 4);
        assert_eq!(prod.coeff(-2), rz(1));
    }

    #[test]
    fn rational_string_roundtrip() {
        for r in [rq(-3, 4), rz(5), rq(7, 2), Rat::zero()] {
            let s = format_rat(&r);
            assert_eq!(parse_rat(&s).unwrap(), r);
        }
        assert_eq!(format_rat(&rz(5)), "5");
        assert_eq!(format_rat(&rq(-1, 24)), "-1/24");
    }
}
