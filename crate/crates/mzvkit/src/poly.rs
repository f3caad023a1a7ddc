//! Sparse multivariate polynomials over exact rationals, rational functions
//! with factored linear denominators, and the commutative encodings of the
//! two-letter tensor algebras.
//!
//! Two variable frames are used throughout.  A depth-`r` object lives either
//! in the y-frame `Q[y0,...,yr]` (arity `r+1`) or, after the reduction
//! `(y0,...,yr) -> (0,x1,...,xr)` of a translation-invariant function, in the
//! x-frame `Q[x1,...,xr]` (arity `r`).

use crate::rat::{format_rat, parse_rat, Rat};
use crate::words::{Alphabet, NCPoly, Word};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with graded-lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn constant(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(Mono::constant(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(Mono::var(nvars, i), Rat::one());
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    pub fn is_homogeneous(&self) -> Option<i64> {
        let d = self.max_degree()?;
        if self.min_degree() == Some(d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn degree_component(&self, d: i64) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.total_degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(|m| m.total_degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            out.add_term(m2, c * Rat::from_integer((e as i64).into()));
        }
        out
    }

    /// General substitution: variable `i` is replaced by `images[i]`.
    /// All images must share a common arity, which becomes the output arity.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let out_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = MPoly::zero(out_nvars);
        // cache powers of each image
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(out_nvars), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut acc = MPoly::constant(out_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let last = powers[i].last().unwrap().clone();
                    powers[i].push(last.mul(&images[i]));
                }
                acc = acc.mul(&powers[i][e as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Fast path: variable `i` becomes variable `map[i]` of a frame with
    /// `new_nvars` variables.
    pub fn rename(&self, map: &[usize], new_nvars: usize) -> MPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = MPoly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; new_nvars];
            for (i, &exp) in m.0.iter().enumerate() {
                e[map[i]] += exp;
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Exact division; returns None when the divisor does not divide exactly.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        assert!(!divisor.is_zero());
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        let (dm, dc) = divisor
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))?;
        while !rem.is_zero() {
            let (lm, lc) = rem
                .terms
                .iter()
                .next_back()
                .map(|(m, c)| (m.clone(), c.clone()))
                .unwrap();
            if !dm.divides(&lm) {
                return None;
            }
            let qm = lm.div(&dm);
            let qc = lc / &dc;
            for (m, c) in &divisor.terms {
                rem.add_term(qm.mul(m), -(&qc * c));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// If the polynomial is `c * L` for a nonzero linear form `L` (primitive
    /// integer coefficients, first nonzero positive), return `(c, L)`.
    pub fn as_scaled_linear_form(&self) -> Option<(Rat, LinForm)> {
        if self.is_zero() || self.is_homogeneous() != Some(1) {
            return None;
        }
        let mut coeffs = vec![Rat::zero(); self.nvars];
        for (m, c) in &self.terms {
            let i = m.0.iter().position(|&e| e == 1)?;
            coeffs[i] = c.clone();
        }
        // factor out the coefficient of the first nonzero entry times content
        let mut num_lcm = num::BigInt::one();
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            num_lcm = num::Integer::lcm(&num_lcm, c.denom());
        }
        let ints: Vec<num::BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&num_lcm / c.denom()))
            .collect();
        let mut g = num::BigInt::zero();
        for v in ints.iter().filter(|v| !v.is_zero()) {
            g = num::Integer::gcd(&g, v);
        }
        let first = ints.iter().find(|v| !v.is_zero())?;
        let sign = if first.is_negative() { -1 } else { 1 };
        let g = g * num::BigInt::from(sign);
        let prim: Vec<i64> = ints
            .iter()
            .map(|v| {
                use num::ToPrimitive;
                (v / &g).to_i64().expect("linear form coefficient overflow")
            })
            .collect();
        let scalar = Rat::new(g, num_lcm);
        Some((scalar, LinForm { coeffs: prim }))
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rat(c))?;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    write!(f, "*v{}^{}", i, e)?;
                }
            }
        }
        Ok(())
    }
}

/// A nonzero linear form with primitive integer coefficients, first nonzero
/// coefficient positive.  Forms like `y_j - y_i` with `j < i` are stored in
/// the canonical orientation with the sign absorbed by the caller.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct LinForm {
    pub coeffs: Vec<i64>,
}

impl LinForm {
    /// `v_i`
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut c = vec![0i64; nvars];
        c[i] = 1;
        LinForm { coeffs: c }
    }

    /// `v_i - v_j`, canonically oriented (requires `i < j`).
    pub fn diff(nvars: usize, i: usize, j: usize) -> Self {
        assert!(i < j);
        let mut c = vec![0i64; nvars];
        c[i] = 1;
        c[j] = -1;
        LinForm { coeffs: c }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_mpoly(&self, nvars: usize) -> MPoly {
        assert_eq!(nvars, self.coeffs.len());
        let mut p = MPoly::zero(nvars);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                p.add_term(Mono::var(nvars, i), Rat::from_integer(c.into()));
            }
        }
        p
    }

    /// Coefficient sum; zero for difference forms, relevant to translation
    /// invariance checks.
    pub fn coeff_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Render in the x-frame (`x1`, `x1-x2`, ...) or y-frame (`y0-y1`, ...).
    pub fn display(&self, x_frame: bool) -> String {
        let mut s = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = if x_frame {
                format!("x{}", i + 1)
            } else {
                format!("y{}", i)
            };
            if s.is_empty() {
                if c == 1 {
                    s.push_str(&name);
                } else if c == -1 {
                    s.push_str(&format!("-{}", name));
                } else {
                    s.push_str(&format!("{}{}", c, name));
                }
            } else if c > 0 {
                if c == 1 {
                    s.push_str(&format!("+{}", name));
                } else {
                    s.push_str(&format!("+{}{}", c, name));
                }
            } else if c == -1 {
                s.push_str(&format!("-{}", name));
            } else {
                s.push_str(&format!("{}{}", c, name));
            }
        }
        s
    }

    pub fn parse(s: &str, nvars: usize, x_frame: bool) -> Option<LinForm> {
        let mut coeffs = vec![0i64; nvars];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let sign = if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                -1
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
                1
            } else {
                1
            };
            let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let mag: i64 = if digits_end == 0 {
                1
            } else {
                rest[..digits_end].parse().ok()?
            };
            rest = &rest[digits_end..];
            let var_char = if x_frame { 'x' } else { 'y' };
            rest = rest.strip_prefix(var_char)?;
            let idx_end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let idx: usize = rest[..idx_end].parse().ok()?;
            rest = &rest[idx_end..];
            let slot = if x_frame { idx.checked_sub(1)? } else { idx };
            if slot >= nvars {
                return None;
            }
            coeffs[slot] += sign * mag;
        }
        Some(LinForm { coeffs })
    }
}

/// Rational function: polynomial numerator over a multiset of linear forms.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub num: MPoly,
    pub den: BTreeMap<LinForm, u32>,
}

impl RatFn {
    pub fn zero(nvars: usize) -> Self {
        RatFn {
            num: MPoly::zero(nvars),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFn {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::from_poly(MPoly::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn den_poly(&self) -> MPoly {
        let mut p = MPoly::one(self.nvars());
        for (form, &mult) in &self.den {
            let fp = form.to_mpoly(self.nvars());
            for _ in 0..mult {
                p = p.mul(&fp);
            }
        }
        p
    }

    pub fn den_degree(&self) -> i64 {
        self.den.values().map(|&m| m as i64).sum()
    }

    /// Divide by a linear form (append to the denominator).
    pub fn div_form(&self, form: &LinForm) -> RatFn {
        let mut out = self.clone();
        if out.is_zero() {
            return out;
        }
        *out.den.entry(form.clone()).or_insert(0) += 1;
        out.reduce()
    }

    pub fn mul_form(&self, form: &LinForm) -> RatFn {
        let mut out = self.clone();
        match out.den.get_mut(form) {
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    out.den.remove(form);
                }
            }
            None => {
                out.num = out.num.mul(&form.to_mpoly(self.nvars()));
            }
        }
        out
    }

    /// Cancel every denominator factor that divides the numerator exactly.
    pub fn reduce(&self) -> RatFn {
        if self.num.is_zero() {
            return RatFn::zero(self.nvars());
        }
        let mut num = self.num.clone();
        let mut den: BTreeMap<LinForm, u32> = BTreeMap::new();
        for (form, &mult) in &self.den {
            let fp = form.to_mpoly(self.nvars());
            let mut left = mult;
            while left > 0 {
                match num.div_exact(&fp) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(form.clone(), left);
            }
        }
        RatFn { num, den }
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        assert_eq!(self.nvars(), other.nvars());
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // least common denominator as a multiset of forms
        let mut lcm: BTreeMap<LinForm, u32> = self.den.clone();
        for (f, &m) in &other.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let mut num_a = self.num.clone();
        let mut num_b = other.num.clone();
        for (f, &m) in &lcm {
            let fa = self.den.get(f).copied().unwrap_or(0);
            let fb = other.den.get(f).copied().unwrap_or(0);
            let fp = f.to_mpoly(self.nvars());
            for _ in fa..m {
                num_a = num_a.mul(&fp);
            }
            for _ in fb..m {
                num_b = num_b.mul(&fp);
            }
        }
        // not auto-reduced: callers cancel at operation boundaries
        let mut num = num_a;
        for (m, c) in num_b.terms {
            num.add_term(m, c);
        }
        if num.is_zero() {
            return RatFn::zero(self.nvars());
        }
        RatFn { num, den: lcm }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    /// Sum of many terms over a single common denominator, computed once.
    pub fn sum(nvars: usize, terms: &[RatFn]) -> RatFn {
        let mut lcm: BTreeMap<LinForm, u32> = BTreeMap::new();
        for t in terms {
            for (f, &m) in &t.den {
                let e = lcm.entry(f.clone()).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let mut num = MPoly::zero(nvars);
        for t in terms {
            if t.is_zero() {
                continue;
            }
            let mut scaled = t.num.clone();
            for (f, &m) in &lcm {
                let have = t.den.get(f).copied().unwrap_or(0);
                let fp = f.to_mpoly(nvars);
                for _ in have..m {
                    scaled = scaled.mul(&fp);
                }
            }
            for (m, c) in scaled.terms {
                num.add_term(m, c);
            }
        }
        if num.is_zero() {
            return RatFn::zero(nvars);
        }
        RatFn { num, den: lcm }
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, k: &Rat) -> RatFn {
        if k.is_zero() {
            return RatFn::zero(self.nvars());
        }
        RatFn {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        assert_eq!(self.nvars(), other.nvars());
        if self.is_zero() || other.is_zero() {
            return RatFn::zero(self.nvars());
        }
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        RatFn {
            num: self.num.mul(&other.num),
            den,
        }
    }

    pub fn eq(&self, other: &RatFn) -> bool {
        self.sub(other).is_zero()
    }

    /// Weight-graded degree decomposition: the piece of "degree" `d` has a
    /// homogeneous numerator of degree `d + deg(den)`.
    pub fn homogeneous_pieces(&self) -> Vec<(i64, RatFn)> {
        let dd = self.den_degree();
        self.num
            .degrees()
            .into_iter()
            .map(|nd| {
                (
                    nd - dd,
                    RatFn {
                        num: self.num.degree_component(nd),
                        den: self.den.clone(),
                    },
                )
            })
            .collect()
    }

    pub fn degree_piece(&self, d: i64) -> RatFn {
        let dd = self.den_degree();
        RatFn {
            num: self.num.degree_component(d + dd),
            den: self.den.clone(),
        }
        .reduce()
    }

    pub fn min_degree(&self) -> Option<i64> {
        Some(self.num.min_degree()? - self.den_degree())
    }

    pub fn max_degree(&self) -> Option<i64> {
        Some(self.num.max_degree()? - self.den_degree())
    }

    /// Substitute each variable by a polynomial.  Denominator forms must map
    /// to nonzero scalar multiples of linear forms.
    pub fn substitute(&self, images: &[MPoly]) -> Result<RatFn, String> {
        let out_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut num = self.num.substitute(images);
        let mut den: BTreeMap<LinForm, u32> = BTreeMap::new();
        let mut scalar = Rat::one();
        for (f, &m) in &self.den {
            let img = f.to_mpoly(self.nvars()).substitute(images);
            let (c, lf) = img
                .as_scaled_linear_form()
                .ok_or_else(|| "denominator form maps to zero or non-linear image".to_string())?;
            for _ in 0..m {
                scalar = scalar * &c;
            }
            *den.entry(lf).or_insert(0) += m;
        }
        num = num.scale(&(Rat::one() / scalar));
        let _ = out_nvars;
        Ok(RatFn { num, den }.reduce())
    }

    /// Fast path: injective variable renaming.
    pub fn rename(&self, map: &[usize], new_nvars: usize) -> RatFn {
        let num = self.num.rename(map, new_nvars);
        let mut den: BTreeMap<LinForm, u32> = BTreeMap::new();
        let mut sign = 1i64;
        for (f, &m) in &self.den {
            let mut coeffs = vec![0i64; new_nvars];
            for (i, &c) in f.coeffs.iter().enumerate() {
                coeffs[map[i]] += c;
            }
            assert!(coeffs.iter().any(|&c| c != 0), "form collapsed to zero");
            let first = coeffs.iter().find(|&&c| c != 0).unwrap();
            if *first < 0 {
                for c in &mut coeffs {
                    *c = -*c;
                }
                if m % 2 == 1 {
                    sign = -sign;
                }
            }
            *den.entry(LinForm { coeffs }).or_insert(0) += m;
        }
        let num = if sign < 0 { num.neg() } else { num };
        RatFn { num, den }
    }

    /// Residue along a simple pole: multiply by the form, then restrict to
    /// its zero locus.  Returns zero when there is no pole; errors on a
    /// higher-order pole.
    pub fn residue(&self, form: &LinForm) -> Result<RatFn, String> {
        let reduced = self.reduce();
        let mult = reduced.den.get(form).copied().unwrap_or(0);
        if mult > 1 {
            return Err(format!(
                "higher-order pole along {}",
                form.display(true)
            ));
        }
        if mult == 0 {
            return Ok(RatFn::zero(self.nvars()));
        }
        let cleared = reduced.mul_form(form);
        // substitute on the zero locus: pivot variable k with coefficient c_k
        let nv = self.nvars();
        let k = form.coeffs.iter().position(|&c| c != 0).unwrap();
        let ck = form.coeffs[k];
        let mut images: Vec<MPoly> = (0..nv).map(|i| MPoly::var(nv, i)).collect();
        let mut img = MPoly::zero(nv);
        for (i, &c) in form.coeffs.iter().enumerate() {
            if i != k && c != 0 {
                img.add_term(Mono::var(nv, i), Rat::new((-c).into(), ck.into()));
            }
        }
        images[k] = img;
        cleared.substitute(&images)
    }

    /// Drop an unused variable from the frame.
    pub fn drop_var(&self, k: usize) -> RatFn {
        let nv = self.nvars();
        for m in self.num.terms.keys() {
            assert_eq!(m.0[k], 0, "variable v{k} still occurs in numerator");
        }
        for f in self.den.keys() {
            assert_eq!(f.coeffs[k], 0, "variable v{k} still occurs in denominator");
        }
        let map: Vec<usize> = (0..nv)
            .map(|i| if i < k { i } else { i.saturating_sub(1) })
            .collect();
        self.rename(&map, nv - 1)
    }

    /// Euler-type translation invariance check in the y-frame: all stored
    /// denominator forms must have zero coefficient sum and the numerator
    /// must satisfy `sum_i d/dy_i = 0`.
    pub fn is_translation_invariant(&self) -> bool {
        if self.den.keys().any(|f| f.coeff_sum() != 0) {
            return false;
        }
        let mut acc = MPoly::zero(self.nvars());
        for i in 0..self.nvars() {
            acc = acc.add(&self.num.derivative(i));
        }
        acc.is_zero()
    }

    /// Reduction of a translation-invariant depth-`r` function from the
    /// y-frame to the x-frame: `(y0, ..., yr) -> (0, x1, ..., xr)`.
    pub fn reduce_to_x(&self, r: usize) -> Result<RatFn, String> {
        assert_eq!(self.nvars(), r + 1);
        if !self.is_translation_invariant() {
            return Err("not translation invariant".to_string());
        }
        let mut images = vec![MPoly::zero(r)];
        for i in 0..r {
            images.push(MPoly::var(r, i));
        }
        self.substitute(&images)
    }

    /// Inverse of `reduce_to_x`: `x_i -> y_i - y0`.
    pub fn unreduce_to_y(&self, r: usize) -> RatFn {
        assert_eq!(self.nvars(), r);
        let images: Vec<MPoly> = (0..r)
            .map(|i| MPoly::var(r + 1, i + 1).sub(&MPoly::var(r + 1, 0)))
            .collect();
        self.substitute(&images).expect("unreduction cannot collapse forms")
    }

    pub fn to_json(&self, x_frame: bool) -> serde_json::Value {
        let num: Vec<serde_json::Value> = self
            .num
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!([
                    m.0.iter().map(|&e| e as u64).collect::<Vec<u64>>(),
                    format_rat(c)
                ])
            })
            .collect();
        let den: Vec<serde_json::Value> = self
            .den
            .iter()
            .flat_map(|(f, &mult)| {
                std::iter::repeat(serde_json::Value::String(f.display(x_frame))).take(mult as usize)
            })
            .collect();
        serde_json::json!({ "numerator": num, "denominator": den })
    }

    pub fn from_json(v: &serde_json::Value, nvars: usize, x_frame: bool) -> Option<RatFn> {
        let mut num = MPoly::zero(nvars);
        for entry in v.get("numerator")?.as_array()? {
            let pair = entry.as_array()?;
            let exps: Vec<u16> = pair[0]
                .as_array()?
                .iter()
                .map(|e| e.as_u64().unwrap() as u16)
                .collect();
            if exps.len() != nvars {
                return None;
            }
            num.add_term(Mono(exps), parse_rat(pair[1].as_str()?)?);
        }
        let mut den: BTreeMap<LinForm, u32> = BTreeMap::new();
        for entry in v.get("denominator")?.as_array()? {
            let f = LinForm::parse(entry.as_str()?, nvars, x_frame)?;
            *den.entry(f).or_insert(0) += 1;
        }
        Some(RatFn { num, den })
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            let den: Vec<String> = self
                .den
                .iter()
                .map(|(form, m)| {
                    if *m == 1 {
                        format!("({})", form.display(true))
                    } else {
                        format!("({})^{}", form.display(true), m)
                    }
                })
                .collect();
            write!(f, "({}) / {}", self.num, den.join(""))
        }
    }
}

// ---------------------------------------------------------------------------
// Commutative encodings of the tensor algebra
// ---------------------------------------------------------------------------

/// `rho` on the component of counting degree `r`:
/// `s0^{i0} s1 s0^{i1} ... s1 s0^{ir} -> y0^{i0} ... yr^{ir}`.
pub fn rho(p: &NCPoly, r: usize) -> Result<MPoly, String> {
    let mut out = MPoly::zero(r + 1);
    for (w, c) in &p.terms {
        if w.counting_degree() != r {
            return Err("mixed counting-degree input".to_string());
        }
        let gaps = w.gaps();
        let mono = Mono(gaps.iter().map(|&g| g as u16).collect());
        out.add_term(mono, c.clone());
    }
    Ok(out)
}

/// `rho` applied per counting degree.
pub fn rho_graded(p: &NCPoly) -> BTreeMap<usize, MPoly> {
    let mut out = BTreeMap::new();
    for r in p.counting_degrees() {
        out.insert(r, rho(&p.counting_component(r), r).unwrap());
    }
    out
}

/// Monomial-by-monomial inverse of `rho`.
pub fn rho_inv(f: &MPoly, r: usize, alphabet: Alphabet) -> NCPoly {
    assert_eq!(f.nvars, r + 1);
    let mut out = NCPoly::zero(alphabet);
    for (m, c) in &f.terms {
        let gaps: Vec<usize> = m.0.iter().map(|&e| e as usize).collect();
        out.add_term(Word::from_gaps(&gaps), c.clone());
    }
    out
}

/// `ell_r = (y0-y1)(y1-y2)...(y_{r-1}-y_r)` as a denominator multiset.
pub fn ell_r_forms(r: usize) -> Vec<LinForm> {
    (0..r).map(|i| LinForm::diff(r + 1, i, i + 1)).collect()
}

/// `c_r = ell_r * (y0 - y_r)`.
pub fn c_r_forms(r: usize) -> Vec<LinForm> {
    let mut v = ell_r_forms(r);
    v.push(if r >= 1 {
        LinForm::diff(r + 1, 0, r)
    } else {
        panic!("c_r needs r >= 1")
    });
    v
}

/// `ell`: encodes a genus-1 element as `sum_r rho^{(r)}(w) / ell_r`,
/// one y-frame rational function per B-degree.
pub fn ell(p: &NCPoly) -> BTreeMap<usize, RatFn> {
    let mut out = BTreeMap::new();
    for (r, f) in rho_graded(p) {
        let mut rf = RatFn::from_poly(f);
        for form in ell_r_forms(r) {
            rf = rf.div_form(&form);
        }
        out.insert(r, rf);
    }
    out
}

/// `ell'` on a genus-1 derivation in B^0: `delta -> sum_r rho^{(r)}(delta(a)) / c_r`.
/// Requires the coefficient of the single-letter word `a` in `delta(b)` to vanish.
pub fn ell_prime(
    image_a: &NCPoly,
    image_b: &NCPoly,
) -> Result<BTreeMap<usize, RatFn>, String> {
    let a_word = Word::first();
    if !image_b.coeff(&a_word).is_zero() {
        return Err("B^0 violation: delta(b) has a nonzero coefficient of a".to_string());
    }
    let mut out = BTreeMap::new();
    for (r, f) in rho_graded(image_a) {
        if r == 0 {
            return Err("image of a has a B-degree-0 part".to_string());
        }
        let mut rf = RatFn::from_poly(f);
        for form in c_r_forms(r) {
            rf = rf.div_form(&form);
        }
        out.insert(r, rf);
    }
    Ok(out)
}

/// `rho'` on a genus-0 derivation that kills the second generator:
/// depth-`r` component `rho^{(r)}(delta(x0)) / (y0 - y_r)`.
pub fn rho_prime(image_x0: &NCPoly) -> Result<BTreeMap<usize, RatFn>, String> {
    let mut out = BTreeMap::new();
    for (r, f) in rho_graded(image_x0) {
        if r == 0 {
            return Err("depth-0 part present".to_string());
        }
        let rf = RatFn::from_poly(f).div_form(&LinForm::diff(r + 1, 0, r));
        out.insert(r, rf);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Depth tuples
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Normalization {
    Canonical,
    Heretical,
}

impl Normalization {
    pub fn as_str(&self) -> &'static str {
        match self {
            Normalization::Canonical => "canonical",
            Normalization::Heretical => "heretical",
        }
    }
}

/// A graded element: one reduced (x-frame) rational function per depth.
///
/// `window`, when set, is the largest weight through which the components
/// are complete; terms above it are unreliable truncation artifacts and are
/// never stored.
#[derive(Clone, Debug)]
pub struct DepthTuple {
    pub components: BTreeMap<usize, RatFn>,
    pub weight: Option<i64>,
    pub normalization: Option<Normalization>,
    pub window: Option<i64>,
}

impl DepthTuple {
    pub fn new() -> Self {
        DepthTuple {
            components: BTreeMap::new(),
            weight: None,
            normalization: None,
            window: None,
        }
    }

    pub fn set(&mut self, depth: usize, f: RatFn) {
        assert_eq!(f.nvars(), depth, "component arity must equal its depth");
        if f.is_zero() {
            self.components.remove(&depth);
            return;
        }
        let f = if f.den.is_empty() { f } else { f.reduce() };
        self.components.insert(depth, f);
    }

    pub fn component(&self, depth: usize) -> RatFn {
        self.components
            .get(&depth)
            .cloned()
            .unwrap_or_else(|| RatFn::zero(depth))
    }

    pub fn max_depth(&self) -> usize {
        self.components.keys().copied().max().unwrap_or(0)
    }

    /// Minimum weight over all stored terms (weight = degree + depth).
    pub fn min_weight(&self) -> Option<i64> {
        self.components
            .iter()
            .filter_map(|(r, f)| f.min_degree().map(|d| d + *r as i64))
            .min()
    }

    pub fn add(&self, other: &DepthTuple) -> DepthTuple {
        let mut out = DepthTuple::new();
        let depths: std::collections::BTreeSet<usize> = self
            .components
            .keys()
            .chain(other.components.keys())
            .copied()
            .collect();
        for r in depths {
            out.set(r, self.component(r).add(&other.component(r)));
        }
        out.window = match (self.window, other.window) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, b) => b,
        };
        out
    }

    pub fn scale(&self, k: &Rat) -> DepthTuple {
        let mut out = self.clone();
        let keys: Vec<usize> = out.components.keys().copied().collect();
        for r in keys {
            let f = out.component(r).scale(k);
            out.set(r, f);
        }
        out
    }

    /// Drop all terms of weight above `w` and record the window.
    pub fn truncate_weight(&self, w: i64) -> DepthTuple {
        let mut out = DepthTuple::new();
        for (r, f) in &self.components {
            let mut acc = RatFn::zero(*r);
            for (d, piece) in f.homogeneous_pieces() {
                if d + *r as i64 <= w {
                    acc = acc.add(&piece);
                }
            }
            out.set(*r, acc.reduce());
        }
        out.weight = self.weight;
        out.normalization = self.normalization;
        out.window = Some(match self.window {
            Some(cur) => cur.min(w),
            None => w,
        });
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|(r, f)| {
                let mut v = f.to_json(true);
                v.as_object_mut()
                    .unwrap()
                    .insert("depth".to_string(), serde_json::json!(r));
                v
            })
            .collect();
        let mut obj = serde_json::Map::new();
        if let Some(w) = self.weight {
            obj.insert("weight".to_string(), serde_json::json!(w));
        }
        if let Some(n) = self.normalization {
            obj.insert("normalization".to_string(), serde_json::json!(n.as_str()));
        }
        obj.insert("components".to_string(), serde_json::Value::Array(comps));
        serde_json::Value::Object(obj)
    }

    pub fn from_json(v: &serde_json::Value) -> Option<DepthTuple> {
        let mut out = DepthTuple::new();
        out.weight = v.get("weight").and_then(|w| w.as_i64());
        out.normalization = match v.get("normalization").and_then(|n| n.as_str()) {
            Some("canonical") => Some(Normalization::Canonical),
            Some("heretical") => Some(Normalization::Heretical),
            _ => None,
        };
        for comp in v.get("components")?.as_array()? {
            let depth = comp.get("depth")?.as_u64()? as usize;
            out.set(depth, RatFn::from_json(comp, depth, true)?);
        }
        Some(out)
    }
}

impl Default for DepthTuple {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rq, rz};
    use crate::words::{ad_pow, Alphabet, NCPoly};

    fn x0() -> NCPoly {
        NCPoly::first(Alphabet::Genus0)
    }
    fn x1() -> NCPoly {
        NCPoly::second(Alphabet::Genus0)
    }

    #[test]
    fn rho_examples() {
        // x1 -> 1 in Q[y0,y1]
        let f = rho(&x1(), 1).unwrap();
        assert_eq!(f, MPoly::one(2));

        // x0 -> y0 in Q[y0]
        let f = rho(&x0(), 0).unwrap();
        assert_eq!(f, MPoly::var(1, 0));

        // ad(x0)^{2n} x1 -> (y0 - y1)^{2n}
        for n in 1..=3usize {
            let f = rho(&ad_pow(&x0(), 2 * n, &x1()), 1).unwrap();
            let expect = MPoly::var(2, 0).sub(&MPoly::var(2, 1)).pow(2 * n);
            assert_eq!(f, expect);
        }

        // mixed counting degree rejected
        assert!(rho(&x1().add(&x1().concat(&x1())), 1).is_err());
    }

    #[test]
    fn rho_inv_examples() {
        // y0*y1 -> x0 x1 x0
        let f = MPoly::var(2, 0).mul(&MPoly::var(2, 1));
        let p = rho_inv(&f, 1, Alphabet::Genus0);
        assert_eq!(
            p,
            NCPoly::word(Alphabet::Genus0, Word::parse_in("010", Alphabet::Genus0).unwrap())
        );

        // (y0-y1)^2 -> ad(x0)^2 x1
        let f = MPoly::var(2, 0).sub(&MPoly::var(2, 1)).pow(2);
        assert_eq!(rho_inv(&f, 1, Alphabet::Genus0), ad_pow(&x0(), 2, &x1()));

        // 1 at r = 2 -> x1 x1
        let f = MPoly::one(3);
        assert_eq!(rho_inv(&f, 2, Alphabet::Genus0), x1().concat(&x1()));
    }

    #[test]
    fn rho_roundtrip_exhaustive_small() {
        for weight in 1..=8usize {
            for depth in 1..=3.min(weight) {
                for w in crate::words::words_of(weight, depth) {
                    let p = NCPoly::word(Alphabet::Genus0, w);
                    let f = rho(&p, depth).unwrap();
                    assert_eq!(rho_inv(&f, depth, Alphabet::Genus0), p);
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        // (y0-y1)^{2n} -> x1^{2n}
        let f = RatFn::from_poly(MPoly::var(2, 0).sub(&MPoly::var(2, 1)).pow(4));
        let red = f.reduce_to_x(1).unwrap();
        assert!(red.eq(&RatFn::from_poly(MPoly::var(1, 0).pow(4))));

        // ell_2 = (y0-y1)(y1-y2) -> (-x1)(x1-x2)
        let ell2 = RatFn::from_poly(
            MPoly::var(3, 0)
                .sub(&MPoly::var(3, 1))
                .mul(&MPoly::var(3, 1).sub(&MPoly::var(3, 2))),
        );
        let red = ell2.reduce_to_x(2).unwrap();
        let expect = RatFn::from_poly(
            MPoly::var(2, 0)
                .neg()
                .mul(&MPoly::var(2, 0).sub(&MPoly::var(2, 1))),
        );
        assert!(red.eq(&expect));

        // y0 is not translation invariant
        let f = RatFn::from_poly(MPoly::var(2, 0));
        assert!(f.reduce_to_x(1).is_err());
    }

    #[test]
    fn translation_invariance() {
        let f = RatFn::from_poly(MPoly::var(2, 0).sub(&MPoly::var(2, 1)).pow(4));
        assert!(f.is_translation_invariant());
        let g = RatFn::from_poly(MPoly::var(2, 0).mul(&MPoly::var(2, 1)));
        assert!(!g.is_translation_invariant());
    }

    #[test]
    fn unreduce_inverts_reduce() {
        // reduce is injective on translation invariants
        let f = RatFn::from_poly(
            MPoly::var(3, 0)
                .sub(&MPoly::var(3, 1))
                .pow(2)
                .mul(&MPoly::var(3, 1).sub(&MPoly::var(3, 2))),
        );
        let red = f.reduce_to_x(2).unwrap();
        assert!(red.unreduce_to_y(2).eq(&f));
    }

    #[test]
    fn rho_prime_examples() {
        // delta: x0 -> ad(x0)^{2n} x1 gives (y0-y1)^{2n-1}, reducing to -x1^{2n-1}
        let img = ad_pow(&x0(), 4, &x1());
        let rp = rho_prime(&img).unwrap();
        let f = rp.get(&1).unwrap();
        let expect = RatFn::from_poly(MPoly::var(2, 0).sub(&MPoly::var(2, 1)).pow(3));
        assert!(f.eq(&expect));
        let red = f.reduce_to_x(1).unwrap();
        assert!(red.eq(&RatFn::from_poly(MPoly::var(1, 0).pow(3).neg())));

        // delta_{x1}: 1/(y0-y1)
        let rp = rho_prime(&x1()).unwrap();
        let expect = RatFn::from_poly(MPoly::one(2)).div_form(&LinForm::diff(2, 0, 1));
        assert!(rp.get(&1).unwrap().eq(&expect));

        // zero image -> empty tuple
        assert!(rho_prime(&NCPoly::zero(Alphabet::Genus0)).unwrap().is_empty());
    }

    #[test]
    fn ell_examples() {
        let a = NCPoly::first(Alphabet::Genus1);
        let b = NCPoly::second(Alphabet::Genus1);

        // ell([a,b]) = (y0-y1)/(y0-y1) = 1
        let m = ell(&a.bracket(&b));
        assert!(m.get(&1).unwrap().eq(&RatFn::from_poly(MPoly::one(2))));

        // ell(a) = y0
        let m = ell(&a);
        assert!(m.get(&0).unwrap().eq(&RatFn::from_poly(MPoly::var(1, 0))));
    }

    #[test]
    fn ell_prime_of_ad_images() {
        let a = NCPoly::first(Alphabet::Genus1);
        let b = NCPoly::second(Alphabet::Genus1);
        for n in 0..=2usize {
            let img = ad_pow(&a, 2 * n + 2, &b);
            let m = ell_prime(&img, &NCPoly::zero(Alphabet::Genus1)).unwrap();
            let f = m.get(&1).unwrap();
            // (y1-y0)^{2n}, reduced form x1^{2n}
            let expect = RatFn::from_poly(MPoly::var(2, 0).sub(&MPoly::var(2, 1)).pow(2 * n));
            assert!(f.eq(&expect));
            let red = f.reduce_to_x(1).unwrap();
            assert!(red.eq(&RatFn::from_poly(MPoly::var(1, 0).pow(2 * n))));
        }
    }

    #[test]
    fn residue_examples() {
        // polynomial: residue 0
        let f = RatFn::from_poly(MPoly::var(3, 2).pow(2));
        let r = f.residue(&LinForm::var(3, 2)).unwrap();
        assert!(r.is_zero());

        // 1/x3: residue along x3 is 1
        let f = RatFn::from_poly(MPoly::one(3)).div_form(&LinForm::var(3, 2));
        let r = f.residue(&LinForm::var(3, 2)).unwrap();
        assert!(r.eq(&RatFn::from_poly(MPoly::one(3))));

        // higher-order pole errors
        let f = RatFn::from_poly(MPoly::one(3))
            .div_form(&LinForm::var(3, 2))
            .div_form(&LinForm::var(3, 2));
        assert!(f.residue(&LinForm::var(3, 2)).is_err());
    }

    #[test]
    fn ratfn_field_axioms_on_samples() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        let nv = 2;
        let sample = |rng: &mut StdRng| -> RatFn {
            let mut num = MPoly::zero(nv);
            for _ in 0..3 {
                let e0 = rng.gen_range(0..3u16);
                let e1 = rng.gen_range(0..3u16);
                let c = rng.gen_range(-4i64..=4);
                num.add_term(Mono(vec![e0, e1]), rz(c));
            }
            let mut f = RatFn::from_poly(num);
            if rng.gen_bool(0.5) {
                f = f.div_form(&LinForm::var(nv, 0));
            }
            if rng.gen_bool(0.5) {
                f = f.div_form(&LinForm::diff(nv, 0, 1));
            }
            f
        };
        for _ in 0..25 {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let c = sample(&mut rng);
            assert!(a.add(&b).eq(&b.add(&a)));
            assert!(a.mul(&b).eq(&b.mul(&a)));
            assert!(a.add(&b).add(&c).eq(&a.add(&b.add(&c))));
            assert!(a.mul(&b).mul(&c).eq(&a.mul(&b.mul(&c))));
            assert!(a.mul(&b.add(&c)).eq(&a.mul(&b).add(&a.mul(&c))));
        }
    }

    #[test]
    fn reduce_preserves_value() {
        // (x1^2 - x2^2)/(x1 - x2) reduces to x1 + x2; cross-multiply check
        let num = MPoly::var(2, 0).pow(2).sub(&MPoly::var(2, 1).pow(2));
        let f = RatFn::from_poly(num.clone()).div_form(&LinForm::diff(2, 0, 1));
        assert!(f.is_polynomial());
        let back = f.num.mul(&LinForm::diff(2, 0, 1).to_mpoly(2));
        assert_eq!(back, num);
    }

    #[test]
    fn div_exact_matrix() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.pow(2).sub(&y.pow(2));
        assert_eq!(p.div_exact(&x.sub(&y)).unwrap(), x.add(&y));
        assert!(x.pow(2).add(&y).div_exact(&x.sub(&y)).is_none());
    }

    #[test]
    fn linform_parse_display_roundtrip() {
        for f in [
            LinForm::var(3, 0),
            LinForm::diff(3, 0, 2),
            LinForm { coeffs: vec![1, 1, 0] },
            LinForm { coeffs: vec![2, -1, 1] },
        ] {
            let s = f.display(true);
            assert_eq!(LinForm::parse(&s, 3, true).unwrap(), f);
        }
        assert_eq!(LinForm::diff(3, 0, 1).display(true), "x1-x2");
        assert_eq!(LinForm::diff(3, 0, 1).display(false), "y0-y1");
    }

    #[test]
    fn depth_tuple_json_roundtrip() {
        let mut t = DepthTuple::new();
        t.weight = Some(5);
        t.normalization = Some(Normalization::Canonical);
        t.set(1, RatFn::from_poly(MPoly::var(1, 0).pow(4)));
        t.set(
            2,
            RatFn::from_poly(MPoly::var(2, 0).scale(&rq(3, 2)))
                .div_form(&LinForm::diff(2, 0, 1)),
        );
        let v = t.to_json();
        let back = DepthTuple::from_json(&v).unwrap();
        assert_eq!(back.weight, Some(5));
        for r in [1usize, 2] {
            assert!(back.component(r).eq(&t.component(r)));
        }
    }
}
