//! The linearized Ihara action and bracket, at the level of words and of
//! commutative rational functions, together with the auxiliary products
//! (concatenation, the twisted action on derivation encodings, the two-even
//! star product) and truncated exponentials of the adjoint action.

use crate::poly::{rho, DepthTuple, LinForm, MPoly, RatFn};
use crate::rat::{factorial, Rat};
use crate::words::{Alphabet, Derivation, NCPoly, Word};
use num::One;

// ---------------------------------------------------------------------------
// Word level
// ---------------------------------------------------------------------------

/// Linearized Ihara action on words, defined by the recursion
/// `a o (x0^n x1 w) = x0^n a x1 w + x0^n x1 a* w + x0^n x1 (a o w)` with
/// `a o x0^n = x0^n a`, extended bilinearly.
pub fn circ_words(p: &NCPoly, q: &NCPoly) -> NCPoly {
    assert_eq!(p.alphabet, q.alphabet, "alphabet mismatch");
    let mut out = NCPoly::zero(p.alphabet);
    let p_star = p.star();
    for (w, c) in &q.terms {
        out = out.add(&circ_one(p, &p_star, *w).scale(c));
    }
    out
}

fn circ_one(p: &NCPoly, p_star: &NCPoly, w: Word) -> NCPoly {
    let alphabet = p.alphabet;
    // find the first occurrence of the second letter
    let mut split = None;
    for i in 0..w.weight() {
        if w.letter(i) {
            split = Some(i);
            break;
        }
    }
    let Some(n) = split else {
        // w = x0^n: p o w = w . p
        return NCPoly::word(alphabet, w).concat(p);
    };
    let prefix = Word::from_bits(n, 0);
    let x1 = Word::second();
    let rest = Word {
        len: w.len - n as u8 - 1,
        bits: w.bits >> (n + 1),
    };
    let pre = NCPoly::word(alphabet, prefix);
    let mut out = pre.concat(p).concat(&NCPoly::word(alphabet, x1.concat(&rest)));
    out = out.add(
        &pre.concat(&NCPoly::word(alphabet, x1))
            .concat(p_star)
            .concat(&NCPoly::word(alphabet, rest)),
    );
    out = out.add(
        &pre.concat(&NCPoly::word(alphabet, x1))
            .concat(&circ_one(p, p_star, rest)),
    );
    out
}

/// Ihara bracket on words: the antisymmetrization of the linearized action.
pub fn bracket_words(p: &NCPoly, q: &NCPoly) -> NCPoly {
    circ_words(p, q).sub(&circ_words(q, p))
}

// ---------------------------------------------------------------------------
// Rational-function level (y-frame)
// ---------------------------------------------------------------------------

/// Linearized Ihara action on y-frame rational functions.  `f` has depth `r`
/// (arity `r+1`), `g` depth `s`; the result has depth `r+s`.  The sign on the
/// reversed-argument sum is `(-1)^{deg f + r}` per homogeneous piece of `f`,
/// where `deg` is the numerator degree minus the denominator degree.
pub fn circ_y(f: &RatFn, r: usize, g: &RatFn, s: usize) -> RatFn {
    assert_eq!(f.nvars(), r + 1);
    assert_eq!(g.nvars(), s + 1);
    let out_n = r + s + 1;
    let mut terms: Vec<RatFn> = Vec::new();
    for (fd, fpiece) in f.homogeneous_pieces() {
        let positive = (fd + r as i64).rem_euclid(2) == 0;
        for i in 0..=s {
            let fmap: Vec<usize> = (0..=r).map(|k| i + k).collect();
            let mut gmap: Vec<usize> = Vec::with_capacity(s + 1);
            for m in 0..=i {
                gmap.push(m);
            }
            for m in (i + 1)..=s {
                gmap.push(m + r);
            }
            terms.push(fpiece.rename(&fmap, out_n).mul(&g.rename(&gmap, out_n)));
        }
        for i in 1..=s {
            let fmap: Vec<usize> = (0..=r).map(|k| i + r - k).collect();
            let mut gmap: Vec<usize> = Vec::with_capacity(s + 1);
            for m in 0..i {
                gmap.push(m);
            }
            for m in i..=s {
                gmap.push(m + r);
            }
            let term = fpiece.rename(&fmap, out_n).mul(&g.rename(&gmap, out_n));
            terms.push(if positive { term } else { term.neg() });
        }
    }
    RatFn::sum(out_n, &terms).reduce()
}

/// Ihara bracket on y-frame rational functions.
pub fn bracket_y(f: &RatFn, r: usize, g: &RatFn, s: usize) -> RatFn {
    circ_y(f, r, g, s).sub(&circ_y(g, s, f, r)).reduce()
}

/// Concatenation product on y-frame functions:
/// `(f . g)(y0,...,y_{r+s}) = f(y0,...,yr) g(yr,...,y_{r+s})`.
pub fn concat_y(f: &RatFn, r: usize, g: &RatFn, s: usize) -> RatFn {
    assert_eq!(f.nvars(), r + 1);
    assert_eq!(g.nvars(), s + 1);
    let out_n = r + s + 1;
    let fmap: Vec<usize> = (0..=r).collect();
    let gmap: Vec<usize> = (0..=s).map(|m| m + r).collect();
    f.rename(&fmap, out_n).mul(&g.rename(&gmap, out_n))
}

/// The twisted action `f (.) g = f o g - f . g` used for both derivation
/// encodings; the same formula serves the genus-0 and genus-1 pictures.
pub fn odot_y(f: &RatFn, r: usize, g: &RatFn, s: usize) -> RatFn {
    circ_y(f, r, g, s).sub(&concat_y(f, r, g, s)).reduce()
}

// ---------------------------------------------------------------------------
// x-frame wrappers
// ---------------------------------------------------------------------------

/// Bracket of reduced (x-frame) components, computed through the y-frame.
pub fn bracket_x(f: &RatFn, r: usize, g: &RatFn, s: usize) -> RatFn {
    let fy = f.unreduce_to_y(r);
    let gy = g.unreduce_to_y(s);
    bracket_y(&fy, r, &gy, s)
        .reduce_to_x(r + s)
        .expect("bracket of translation invariants is translation invariant")
}

pub fn circ_x(f: &RatFn, r: usize, g: &RatFn, s: usize) -> RatFn {
    let fy = f.unreduce_to_y(r);
    let gy = g.unreduce_to_y(s);
    circ_y(&fy, r, &gy, s)
        .reduce_to_x(r + s)
        .expect("action of translation invariants is translation invariant")
}

pub fn odot_x(f: &RatFn, r: usize, g: &RatFn, s: usize) -> RatFn {
    let fy = f.unreduce_to_y(r);
    let gy = g.unreduce_to_y(s);
    odot_y(&fy, r, &gy, s)
        .reduce_to_x(r + s)
        .expect("translation invariance")
}

/// Depth-tuple bracket: `{A,B}^{(d)} = sum_{r+s=d} {A^{(r)}, B^{(s)}}`,
/// truncated to the common validity window.
pub fn bracket_tuple(a: &DepthTuple, b: &DepthTuple) -> DepthTuple {
    let mut acc: std::collections::BTreeMap<usize, RatFn> = std::collections::BTreeMap::new();
    for (r, fa) in &a.components {
        for (s, fb) in &b.components {
            let term = bracket_x(fa, *r, fb, *s);
            let e = acc
                .entry(r + s)
                .or_insert_with(|| RatFn::zero(r + s));
            *e = e.add(&term);
        }
    }
    let mut out = DepthTuple::new();
    for (d, f) in acc {
        out.set(d, f);
    }
    let window = combine_windows(a, b);
    match window {
        Some(w) => out.truncate_weight(w),
        None => out,
    }
}

/// Depth-tuple linearized action `A o B`, truncated like the bracket.
pub fn circ_tuple(a: &DepthTuple, b: &DepthTuple) -> DepthTuple {
    let mut acc: std::collections::BTreeMap<usize, RatFn> = std::collections::BTreeMap::new();
    for (r, fa) in &a.components {
        for (s, fb) in &b.components {
            let term = circ_x(fa, *r, fb, *s);
            let e = acc
                .entry(r + s)
                .or_insert_with(|| RatFn::zero(r + s));
            *e = e.add(&term);
        }
    }
    let mut out = DepthTuple::new();
    for (d, f) in acc {
        out.set(d, f);
    }
    match combine_windows(a, b) {
        Some(w) => out.truncate_weight(w),
        None => out,
    }
}

fn combine_windows(a: &DepthTuple, b: &DepthTuple) -> Option<i64> {
    match (a.window, b.window) {
        (None, None) => None,
        (wa, wb) => {
            let minw_a = a.min_weight().unwrap_or(0).min(0);
            let minw_b = b.min_weight().unwrap_or(0).min(0);
            let bound_a = wa.map(|w| w + minw_b);
            let bound_b = wb.map(|w| w + minw_a);
            match (bound_a, bound_b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (Some(x), None) => Some(x),
                (None, y) => y,
            }
        }
    }
}

/// Star product of one-variable functions:
/// `(f * g)(x1,x2) = f(x1)g(x2) - f(x2-x1)g(x2) + f(x2-x1)g(x1) - f(x2)g(x1)`.
/// The defining four-term expression; the compatibility with the linearized
/// action holds for even `f`, but the formula itself is total.
pub fn star_product(f: &RatFn, g: &RatFn) -> RatFn {
    assert_eq!(f.nvars(), 1);
    assert_eq!(g.nvars(), 1);
    let x1 = vec![MPoly::var(2, 0)];
    let x2 = vec![MPoly::var(2, 1)];
    let x2mx1 = vec![MPoly::var(2, 1).sub(&MPoly::var(2, 0))];
    let f1 = f.substitute(&x1).unwrap();
    let f2 = f.substitute(&x2).unwrap();
    let fd = f.substitute(&x2mx1).unwrap();
    let g1 = g.substitute(&x1).unwrap();
    let g2 = g.substitute(&x2).unwrap();
    f1.mul(&g2)
        .sub(&fd.mul(&g2))
        .add(&fd.mul(&g1))
        .sub(&f2.mul(&g1))
        .reduce()
}

/// `sum_k (1/k!) ad(s)^k(target)` by depth, keeping components of depth at
/// most `depth_cutoff`.  `target` is a depth-1 reduced component.
pub fn exp_ad(s: &DepthTuple, target: &RatFn, depth_cutoff: usize) -> DepthTuple {
    assert!(depth_cutoff <= 4, "extension implemented through depth 4");
    assert_eq!(target.nvars(), 1);
    let mut out = DepthTuple::new();
    out.set(1, target.clone());
    let avail: Vec<usize> = s.components.keys().copied().collect();
    for d in 2..=depth_cutoff {
        let mut acc = RatFn::zero(d);
        for k in 1..=(d - 1) {
            let mut comps: Vec<Vec<usize>> = Vec::new();
            compositions(d - 1, k, &avail, &mut Vec::new(), &mut comps);
            if comps.is_empty() {
                continue;
            }
            let coeff = Rat::one() / factorial(k);
            for parts in comps {
                // nested bracket {s^{d1}, {s^{d2}, ... {s^{dk}, t}}}
                let mut cur = target.clone();
                let mut cur_depth = 1usize;
                for &p in parts.iter().rev() {
                    cur = bracket_x(&s.component(p), p, &cur, cur_depth);
                    cur_depth += p;
                }
                acc = acc.add(&cur.scale(&coeff));
            }
        }
        out.set(d, acc);
    }
    out.window = s.window;
    out
}

fn compositions(
    total: usize,
    parts: usize,
    avail: &[usize],
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for &p in avail {
        if p <= total {
            cur.push(p);
            compositions(total - p, parts - 1, avail, cur, out);
            cur.pop();
        }
    }
}

/// Checks the reduced identity for the derivation that sends the first
/// generator to the second: for a Lie element `w` of depth `r` with reduced
/// representation `f`, the depth-`(r+1)` representation of its image equals
/// `{f x_r^{-1}, x_1^{-1}} x_{r+1}`.
pub fn dx1_identity_check(w: &NCPoly, r: usize) -> Result<bool, String> {
    if !w.is_lie()? {
        return Err("input is not a Lie element".to_string());
    }
    let weight = w
        .is_homogeneous_weight()
        .ok_or_else(|| "non-homogeneous input".to_string())?;
    let d = Derivation::sends_first_to(&NCPoly::second(Alphabet::Genus0));
    let img = d.apply(w, weight);
    let lhs = RatFn::from_poly(rho(&img.counting_component(r + 1), r + 1)?)
        .reduce_to_x(r + 1)?;

    let f = RatFn::from_poly(rho(&w.counting_component(r), r)?).reduce_to_x(r)?;
    let f_over_xr = f.div_form(&LinForm::var(r, r - 1));
    let inv_x1 = RatFn::from_poly(MPoly::one(1)).div_form(&LinForm::var(1, 0));
    let mut rhs = bracket_x(&f_over_xr, r, &inv_x1, 1);
    rhs = rhs.mul_form(&LinForm::var(r + 1, r));
    Ok(lhs.eq(&rhs))
}

/// Bracket of two genus-0 Lie elements through the derivation picture
/// (generator image `[x0, w]`), for cross-checks against `bracket_words`.
pub fn bracket_via_derivations(v: &NCPoly, w: &NCPoly, cutoff: usize) -> NCPoly {
    let dv = Derivation::from_lie(v);
    let dw = Derivation::from_lie(w);
    dv.commutator(&dw, cutoff).image_first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rho_inv, Mono};
    use crate::rat::{rq, rz};
    use crate::words::{ad_pow, words_of};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn x0() -> NCPoly {
        NCPoly::first(Alphabet::Genus0)
    }
    fn x1() -> NCPoly {
        NCPoly::second(Alphabet::Genus0)
    }
    fn xpow(n: usize) -> RatFn {
        RatFn::from_poly(MPoly::var(1, 0).pow(n))
    }
    fn one_over(form: LinForm, nvars: usize) -> RatFn {
        RatFn::from_poly(MPoly::one(nvars)).div_form(&form)
    }
    fn s1() -> RatFn {
        one_over(LinForm::var(1, 0), 1).scale(&rq(1, 2))
    }
    fn s2() -> RatFn {
        // (1/12) (1/(x1 x2) + 1/(x2 (x1 - x2)))
        let a = RatFn::from_poly(MPoly::one(2))
            .div_form(&LinForm::var(2, 0))
            .div_form(&LinForm::var(2, 1));
        let b = RatFn::from_poly(MPoly::one(2))
            .div_form(&LinForm::var(2, 1))
            .div_form(&LinForm::diff(2, 0, 1));
        a.add(&b).scale(&rq(1, 12))
    }

    #[test]
    fn circ_words_base_cases() {
        // a o x0^n = x0^n a
        let a = x1().concat(&x0());
        let x0n = x0().concat(&x0());
        assert_eq!(circ_words(&a, &x0n), x0n.concat(&a));

        // x1 o x1 = x1 x1
        assert_eq!(circ_words(&x1(), &x1()), x1().concat(&x1()));

        // {p, p} = 0
        let p = ad_pow(&x0(), 2, &x1());
        assert!(bracket_words(&p, &p).is_zero());
    }

    #[test]
    fn circ_associator_symmetry() {
        // A(a,b,c) = A(b,a,c)
        let mut rng = StdRng::seed_from_u64(11);
        let rand_poly = |rng: &mut StdRng| {
            let mut p = NCPoly::zero(Alphabet::Genus0);
            for _ in 0..2 {
                let wt = rng.gen_range(1..=4usize);
                let d = rng.gen_range(0..=wt.min(2));
                let ws = words_of(wt, d);
                let w = ws[rng.gen_range(0..ws.len())];
                p.add_term(w, rz(rng.gen_range(-3i64..=3)));
            }
            p
        };
        for _ in 0..10 {
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let c = rand_poly(&mut rng);
            let assoc = |p: &NCPoly, q: &NCPoly, r: &NCPoly| {
                circ_words(p, &circ_words(q, r)).sub(&circ_words(&circ_words(p, q), r))
            };
            assert_eq!(assoc(&a, &b, &c), assoc(&b, &a, &c));
        }
    }

    #[test]
    fn jacobi_for_word_bracket() {
        let a = ad_pow(&x0(), 2, &x1());
        let b = x1().bracket(&x0().bracket(&x1()));
        let c = ad_pow(&x0(), 1, &x1());
        let j = bracket_words(&a, &bracket_words(&b, &c))
            .add(&bracket_words(&b, &bracket_words(&c, &a)))
            .add(&bracket_words(&c, &bracket_words(&a, &b)));
        assert!(j.is_zero());
    }

    #[test]
    fn distributivity_over_concat() {
        // f o (g.h) = (f o g).h + g.(f o h) - g.f.h
        let f = ad_pow(&x0(), 1, &x1());
        let g = x1().concat(&x0());
        let h = x0().concat(&x1());
        let lhs = circ_words(&f, &g.concat(&h));
        let rhs = circ_words(&f, &g)
            .concat(&h)
            .add(&g.concat(&circ_words(&f, &h)))
            .sub(&g.concat(&f).concat(&h));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn word_vs_ratfn_oracle_small() {
        // rho(p o q) = rho(p) o rho(q) on all pairs of words with
        // total weight <= 7 and depths 0..=2 (not both depth 0)
        for wp in 1..=6usize {
            for wq in 1..=(7 - wp) {
                for dp in 0..=2.min(wp) {
                    for dq in 0..=2.min(wq) {
                        if dp == 0 && dq == 0 {
                            continue;
                        }
                        for p in words_of(wp, dp) {
                            for q in words_of(wq, dq) {
                                let pp = NCPoly::word(Alphabet::Genus0, p);
                                let qq = NCPoly::word(Alphabet::Genus0, q);
                                let wordside =
                                    rho(&circ_words(&pp, &qq), dp + dq).unwrap();
                                let fnside = circ_y(
                                    &RatFn::from_poly(rho(&pp, dp).unwrap()),
                                    dp,
                                    &RatFn::from_poly(rho(&qq, dq).unwrap()),
                                    dq,
                                );
                                assert!(
                                    fnside.eq(&RatFn::from_poly(wordside)),
                                    "oracle mismatch at p={p:?} q={q:?}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn odot_action_on_generator_images() {
        // f (.) y0 = (y0 - y_r) f  and  f (.) 1 = 0 for antisymmetric f
        let w = ad_pow(&x0(), 2, &x1()).bracket(&x1());
        let r = 2;
        let f = RatFn::from_poly(rho(&w, r).unwrap())
            .div_form(&LinForm::diff(r + 1, 0, r));
        let y0 = RatFn::from_poly(MPoly::var(1, 0));
        let lhs = odot_y(&f, r, &y0, 0);
        let y0r = MPoly::var(r + 1, 0).sub(&MPoly::var(r + 1, r));
        let rhs = f.mul(&RatFn::from_poly(y0r));
        assert!(lhs.eq(&rhs));

        let one = RatFn::from_poly(MPoly::one(2));
        assert!(odot_y(&f, r, &one, 1).is_zero());
    }

    #[test]
    fn odot_is_the_derivation_action() {
        // rho'(d_w) (.) rho(p) = rho(d_w(p)) for the x0 -> w derivation
        let w = ad_pow(&x0(), 2, &x1());
        let d = Derivation::sends_first_to(&w);
        let p = x0().concat(&x1());
        let img = d.apply(&p, 10);
        let f = RatFn::from_poly(rho(&w, 1).unwrap()).div_form(&LinForm::diff(2, 0, 1));
        let gp = RatFn::from_poly(rho(&p, 1).unwrap());
        let lhs = odot_y(&f, 1, &gp, 1);
        let rhs = RatFn::from_poly(rho(&img.counting_component(2), 2).unwrap());
        assert!(lhs.eq(&rhs));
    }

    #[test]
    fn bracket_matches_derivation_commutator() {
        // rho'([d_w, d_v]) = {rho'(d_w), rho'(d_v)}
        let w = ad_pow(&x0(), 2, &x1());
        let v = x1().bracket(&x0().bracket(&x1()));
        let dw = Derivation::sends_first_to(&w);
        let dv = Derivation::sends_first_to(&v);
        let comm = dw.commutator(&dv, 12).image_first;
        let out_depth = 3;
        let lhs = RatFn::from_poly(rho(&comm.counting_component(out_depth), out_depth).unwrap())
            .div_form(&LinForm::diff(out_depth + 1, 0, out_depth));
        let fw = RatFn::from_poly(rho(&w, 1).unwrap()).div_form(&LinForm::diff(2, 0, 1));
        let fv = RatFn::from_poly(rho(&v, 2).unwrap()).div_form(&LinForm::diff(3, 0, 2));
        let rhs = bracket_y(&fw, 1, &fv, 2);
        assert!(lhs.eq(&rhs));
    }

    #[test]
    fn word_bracket_matches_section22_derivations() {
        // the antisymmetrized action restricted to Lie inputs agrees with the
        // commutator of the x0 -> [x0, w] derivations
        let v = ad_pow(&x0(), 2, &x1());
        let w = x1().bracket(&x0().bracket(&x1()));
        let br = bracket_words(&v, &w);
        assert!(br.is_lie().unwrap());
        let comm_x0 = bracket_via_derivations(&v, &w, 16);
        // [d_v, d_w](x0) = [x0, {v,w}]
        assert_eq!(comm_x0, x0().bracket(&br));
    }

    #[test]
    fn jacobi_for_ratfn_bracket() {
        let f = s1();
        let g = xpow(2);
        let h = xpow(4);
        let fg = |a: &RatFn, ra: usize, b: &RatFn, rb: usize| bracket_x(a, ra, b, rb);
        let j = fg(&f, 1, &fg(&g, 1, &h, 1), 2)
            .add(&fg(&g, 1, &fg(&h, 1, &f, 1), 2))
            .add(&fg(&h, 1, &fg(&f, 1, &g, 1), 2));
        assert!(j.is_zero());
    }

    #[test]
    fn frozen_bracket_values() {
        // {s1, x1^2} = x2 - 2 x1
        let b = bracket_x(&s1(), 1, &xpow(2), 1);
        let expect = RatFn::from_poly(
            MPoly::var(2, 1).sub(&MPoly::var(2, 0).scale(&rz(2))),
        );
        assert!(b.eq(&expect), "got {b}");

        // (1/2) {s1, {s1, x1^2}} = 1/4 + (3/4)(x1 - x2)/x3
        let inner = bracket_x(&s1(), 1, &xpow(2), 1);
        let outer = bracket_x(&s1(), 1, &inner, 2).scale(&rq(1, 2));
        let pole = RatFn::from_poly(
            MPoly::var(3, 0).sub(&MPoly::var(3, 1)).scale(&rq(3, 4)),
        )
        .div_form(&LinForm::var(3, 2));
        let expect = RatFn::constant(3, rq(1, 4)).add(&pole);
        assert!(outer.eq(&expect), "got {outer}");
    }

    #[test]
    fn frozen_residue_of_depth3_bracket() {
        // Res_{x3=0} ( {s2, x1^2} + (1/2){s1,{s1,x1^2}} ) = (1/4)(x1 - x2)
        let t1 = bracket_x(&s2(), 2, &xpow(2), 1);
        let inner = bracket_x(&s1(), 1, &xpow(2), 1);
        let t2 = bracket_x(&s1(), 1, &inner, 2).scale(&rq(1, 2));
        let xi3 = t1.add(&t2);
        let res = xi3.residue(&LinForm::var(3, 2)).unwrap().drop_var(2);
        let expect = RatFn::from_poly(
            MPoly::var(2, 0).sub(&MPoly::var(2, 1)).scale(&rq(1, 4)),
        );
        assert!(res.eq(&expect), "got {res}");
    }

    #[test]
    fn depth_one_one_bracket_closed_form() {
        // {f,g}(x1,x2) = f(x1)g(x2) - g(x1)f(x2) + f(x2-x1)(g(x1)-g(x2))
        //               + (f(x2)-f(x1)) g(x2-x1)
        for (a, b) in [(2usize, 4usize), (2, 6), (4, 6)] {
            let f = xpow(a);
            let g = xpow(b);
            let lhs = bracket_x(&f, 1, &g, 1);
            let sub = |p: &RatFn, img: MPoly| p.substitute(&[img]).unwrap();
            let x1 = MPoly::var(2, 0);
            let x2 = MPoly::var(2, 1);
            let d = x2.sub(&x1);
            let rhs = sub(&f, x1.clone())
                .mul(&sub(&g, x2.clone()))
                .sub(&sub(&g, x1.clone()).mul(&sub(&f, x2.clone())))
                .add(&sub(&f, d.clone()).mul(&sub(&g, x1.clone()).sub(&sub(&g, x2.clone()))))
                .add(&sub(&f, x2.clone()).sub(&sub(&f, x1.clone())).mul(&sub(&g, d.clone())));
            assert!(lhs.eq(&rhs));
        }
    }

    #[test]
    fn star_product_cases() {
        // 1 * f = 0
        let one = RatFn::from_poly(MPoly::one(1));
        let f = xpow(3);
        assert!(star_product(&one, &f).is_zero());

        // (x f) * f = (x1-x2)(f(x1)f(x2) - f(x1)f(x2-x1) + f(x2)f(x2-x1)),
        // for even f
        let f = xpow(2);
        let xf = RatFn::from_poly(MPoly::var(1, 0).pow(3));
        let lhs = star_product(&xf, &f);
        let sub = |p: &RatFn, img: MPoly| p.substitute(&[img]).unwrap();
        let x1 = MPoly::var(2, 0);
        let x2 = MPoly::var(2, 1);
        let d = x2.sub(&x1);
        let combo = sub(&f, x1.clone())
            .mul(&sub(&f, x2.clone()))
            .sub(&sub(&f, x1.clone()).mul(&sub(&f, d.clone())))
            .add(&sub(&f, x2.clone()).mul(&sub(&f, d.clone())));
        let rhs = combo.mul(&RatFn::from_poly(x1.sub(&x2)));
        assert!(lhs.eq(&rhs));

        // f * f is antisymmetric
        let s = star_product(&f, &f);
        let swapped = s.rename(&[1, 0], 2);
        assert!(s.add(&swapped).is_zero());

    }

    #[test]
    fn exp_ad_layers() {
        let mut s = DepthTuple::new();
        s.set(1, s1());
        s.set(2, s2());
        s.set(3, bracket_x(&s1(), 1, &s2(), 2).scale(&rq(1, 2)));
        let t = xpow(4);

        let e1 = exp_ad(&s, &t, 1);
        assert!(e1.component(1).eq(&t));
        assert!(e1.component(2).is_zero());

        let e3 = exp_ad(&s, &t, 3);
        let xi2 = bracket_x(&s1(), 1, &t, 1);
        assert!(e3.component(2).eq(&xi2));
        let xi3 = bracket_x(&s2(), 2, &t, 1)
            .add(&bracket_x(&s1(), 1, &bracket_x(&s1(), 1, &t, 1), 2).scale(&rq(1, 2)));
        assert!(e3.component(3).eq(&xi3));

        // depth-4 coefficient pattern
        let e4 = exp_ad(&s, &t, 4);
        let b = |f: &RatFn, r: usize, g: &RatFn, s_: usize| bracket_x(f, r, g, s_);
        let expect = b(&s.component(3), 3, &t, 1)
            .add(
                &b(&s.component(1), 1, &b(&s.component(2), 2, &t, 1), 3)
                    .add(&b(&s.component(2), 2, &b(&s.component(1), 1, &t, 1), 2))
                    .scale(&rq(1, 2)),
            )
            .add(
                &b(
                    &s.component(1),
                    1,
                    &b(&s.component(1), 1, &b(&s.component(1), 1, &t, 1), 2),
                    3,
                )
                .scale(&rq(1, 6)),
            );
        assert!(e4.component(4).eq(&expect));
    }

    #[test]
    fn dx1_identity_on_small_lie_elements() {
        let w1 = ad_pow(&x0(), 2, &x1());
        assert!(dx1_identity_check(&w1, 1).unwrap());

        let w2 = x1().bracket(&x0().bracket(&x1()));
        assert!(dx1_identity_check(&w2, 2).unwrap());

        // non-Lie input rejected
        assert!(dx1_identity_check(&x0().concat(&x1()), 1).is_err());
    }

    #[test]
    fn concat_y_properties() {
        // ell_r . ell_s = ell_{r+s}
        let ell = |r: usize| {
            let mut f = RatFn::from_poly(MPoly::one(r + 1));
            for form in crate::poly::ell_r_forms(r) {
                f = f.mul(&RatFn::from_poly(form.to_mpoly(r + 1)));
            }
            f
        };
        let lhs = concat_y(&ell(2), 2, &ell(1), 1);
        assert!(lhs.eq(&ell(3)));

        // associativity on random-ish inputs
        let f = RatFn::from_poly(MPoly::var(2, 0).sub(&MPoly::var(2, 1)).pow(2));
        let g = RatFn::from_poly(MPoly::var(2, 0).mul(&MPoly::var(2, 1)));
        let h = RatFn::from_poly(MPoly::var(3, 1).pow(2));
        let lhs = concat_y(&concat_y(&f, 1, &g, 1), 2, &h, 2);
        let rhs = concat_y(&f, 1, &concat_y(&g, 1, &h, 2), 3);
        assert!(lhs.eq(&rhs));

        // 1 . g = g with shifted frame bookkeeping
        let one = RatFn::from_poly(MPoly::one(1));
        let g0 = RatFn::from_poly(MPoly::var(2, 1).pow(3));
        let out = concat_y(&one, 0, &g0, 1);
        assert!(out.eq(&g0));
    }

    #[test]
    fn rho_of_word_bracket_is_fn_bracket() {
        // spot check {p,q} against the commutative bracket on Lie inputs
        let p = ad_pow(&x0(), 2, &x1());
        let q = ad_pow(&x0(), 4, &x1());
        let wb = bracket_words(&p, &q);
        let f = RatFn::from_poly(rho(&p, 1).unwrap());
        let g = RatFn::from_poly(rho(&q, 1).unwrap());
        let fb = bracket_y(&f, 1, &g, 1);
        assert!(RatFn::from_poly(rho(&wb, 2).unwrap()).eq(&fb));
        let _ = crate::poly::rho_graded(&wb);
        let _ = Mono::constant(1);
        let _ = rho_inv(&MPoly::one(2), 1, Alphabet::Genus0);
    }
}
