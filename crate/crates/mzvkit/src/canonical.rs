//! The explicit elements: polar weight-zero seeds, the bracket-generated
//! odd-weight solutions, canonical zeta elements in depths up to four, the
//! weight-three polar witness, the rational associator in depths up to
//! three, and coefficient extraction.

use crate::dshuffle;
use crate::ihara::{bracket_tuple, bracket_x, circ_x, exp_ad};
use crate::poly::{DepthTuple, LinForm, MPoly, Mono, Normalization, RatFn};
use crate::rat::{b_series, bernoulli, factorial, rq, rz, Rat};
use num::One;

/// `1/x1^k` (or `x1^k` for nonnegative exponents) as a depth-1 component.
pub fn x1_power(k: i64) -> RatFn {
    if k >= 0 {
        RatFn::from_poly(MPoly::var(1, 0).pow(k as usize))
    } else {
        let mut f = RatFn::from_poly(MPoly::one(1));
        for _ in 0..(-k) {
            f = f.div_form(&LinForm::var(1, 0));
        }
        f
    }
}

/// The weight-zero seed: depths one to three, with
/// `s1 = 1/(2 x1)`, `s2 = (1/12)(1/(x1 x2) + 1/(x2(x1-x2)))`, and
/// `s3 = (1/2){s1, s2}`.
pub fn s_elements() -> DepthTuple {
    let s1 = x1_power(-1).scale(&rq(1, 2));
    let a = RatFn::from_poly(MPoly::one(2))
        .div_form(&LinForm::var(2, 0))
        .div_form(&LinForm::var(2, 1));
    let b = RatFn::from_poly(MPoly::one(2))
        .div_form(&LinForm::var(2, 1))
        .div_form(&LinForm::diff(2, 0, 1));
    let s2 = a.add(&b).scale(&rq(1, 12));
    let s3 = bracket_x(&s1, 1, &s2, 2).scale(&rq(1, 2));
    let mut t = DepthTuple::new();
    t.set(1, s1);
    t.set(2, s2);
    t.set(3, s3);
    t.weight = Some(0);
    t
}

/// Conversion factor from canonical to heretical normalization for the
/// weight-`(2n+1)` object: `1/12` in weight `-1`, `B_{2n}/(2n)!` otherwise.
pub fn heretical_factor(n: i64) -> Rat {
    if n == -1 {
        rq(1, 12)
    } else {
        bernoulli((2 * n) as usize) / factorial((2 * n) as usize)
    }
}

/// The bracket-generated element of weight `2n+1` (for `n >= -1`), to the
/// requested depth: depth 1 is `x1^{2n}`, higher depths come from the
/// truncated exponential of the adjoint action of the weight-zero seed.
pub fn xi(n: i64, max_depth: usize) -> DepthTuple {
    assert!(n >= -1);
    assert!((1..=4).contains(&max_depth));
    let target = x1_power(2 * n);
    let mut t = exp_ad(&s_elements(), &target, max_depth);
    t.weight = Some(2 * n + 1);
    t.normalization = Some(Normalization::Canonical);
    t
}

pub fn xi_heretical(n: i64, max_depth: usize) -> DepthTuple {
    let mut t = xi(n, max_depth).scale(&heretical_factor(n));
    t.weight = Some(2 * n + 1);
    t.normalization = Some(Normalization::Heretical);
    t
}

fn truncate_depth(t: &DepthTuple, max_depth: usize) -> DepthTuple {
    let mut out = t.clone();
    let keys: Vec<usize> = out.components.keys().copied().collect();
    for r in keys {
        if r > max_depth {
            out.components.remove(&r);
        }
    }
    out
}

/// A canonical zeta element together with the polar witness carried by the
/// weight-3 element (whose rational depth-3 construction has poles).
#[derive(Clone, Debug)]
pub struct SigmaC {
    pub tuple: DepthTuple,
    pub polar_witness: Option<RatFn>,
}

/// The canonical zeta element of weight `2n+1` in depths up to `max_depth`.
///
/// For `n >= 2` this is the heretical combination
/// `xi_{2n+1} + sum_{a+b=n} (1/2b) {xi_{2a+1}, {xi_{2b+1}, xi_{-1}}}`
/// (all underlined), rescaled by `(2n)!/B_{2n}` for the canonical
/// normalization.  The weight-3 element is the fixed Lie element
/// `[x0,[x0,x1]] + [x1,[x0,x1]]` with zero polynomial depth-3 part and the
/// polar witness `3 z3` recorded separately.
pub fn sigma_c(n: usize, max_depth: usize, norm: Normalization) -> SigmaC {
    assert!(n >= 1);
    assert!((1..=4).contains(&max_depth));
    if n == 1 {
        // depth 1: x1^2, depth 2: 2x1 - x2, depth 3: 0
        let mut t = DepthTuple::new();
        t.set(1, x1_power(2));
        if max_depth >= 2 {
            let f2 = MPoly::var(2, 0)
                .scale(&rz(2))
                .sub(&MPoly::var(2, 1));
            t.set(2, RatFn::from_poly(f2));
        }
        t.weight = Some(3);
        t.normalization = Some(norm);
        let t = match norm {
            Normalization::Canonical => t,
            Normalization::Heretical => {
                let mut h = t.scale(&heretical_factor(1));
                h.weight = Some(3);
                h.normalization = Some(Normalization::Heretical);
                h
            }
        };
        return SigmaC {
            tuple: t,
            polar_witness: Some(z3().scale(&rz(3))),
        };
    }

    let mut acc = xi_heretical(n as i64, max_depth);
    let xi_m1 = xi_heretical(-1, 3.min(max_depth));
    for a in 1..n {
        let b = n - a;
        let inner = bracket_tuple(&xi_heretical(b as i64, 3), &xi_m1);
        let outer = bracket_tuple(&xi_heretical(a as i64, 3), &truncate_depth(&inner, max_depth));
        acc = acc.add(&truncate_depth(&outer, max_depth).scale(&rq(1, 2 * b as i64)));
    }
    acc = truncate_depth(&acc, max_depth);
    acc.weight = Some(2 * n as i64 + 1);
    acc.normalization = Some(Normalization::Heretical);
    let tuple = match norm {
        Normalization::Heretical => acc,
        Normalization::Canonical => {
            let mut c = acc.scale(&(Rat::one() / heretical_factor(n as i64)));
            c.weight = Some(2 * n as i64 + 1);
            c.normalization = Some(Normalization::Canonical);
            c
        }
    };
    SigmaC {
        tuple,
        polar_witness: None,
    }
}

/// The explicit weight-3, depth-3 rational function
/// `4/3 + x1/(x3-x2) + x3/(x1-x2) + (x3-x2)/x1 + (x1-x2)/x3`.
pub fn z3() -> RatFn {
    let x1 = MPoly::var(3, 0);
    let x2 = MPoly::var(3, 1);
    let x3 = MPoly::var(3, 2);
    let c = RatFn::constant(3, rq(4, 3));
    // x1/(x3-x2) = -x1/(x2-x3)
    let t1 = RatFn::from_poly(x1.clone())
        .neg()
        .div_form(&LinForm::diff(3, 1, 2));
    let t2 = RatFn::from_poly(x3.clone()).div_form(&LinForm::diff(3, 0, 1));
    let t3 = RatFn::from_poly(x3.sub(&x2)).div_form(&LinForm::var(3, 0));
    let t4 = RatFn::from_poly(x1.sub(&x2)).div_form(&LinForm::var(3, 2));
    c.add(&t1).add(&t2).add(&t3).add(&t4)
}

/// A surviving pole of a depth component: the offending linear form and the
/// residue along it, when the pole is simple.
#[derive(Clone, Debug)]
pub struct PoleWitness {
    pub depth: usize,
    pub form: LinForm,
    pub residue: Option<RatFn>,
}

/// True iff every component reduces to a polynomial; otherwise lists the
/// offending forms with their residues.
pub fn verify_polefree(t: &DepthTuple) -> (bool, Vec<PoleWitness>) {
    let mut witnesses = Vec::new();
    for (&r, f) in &t.components {
        let red = f.reduce();
        for form in red.den.keys() {
            let residue = red.residue(form).ok();
            witnesses.push(PoleWitness {
                depth: r,
                form: form.clone(),
                residue,
            });
        }
    }
    (witnesses.is_empty(), witnesses)
}

// ---------------------------------------------------------------------------
// The rational associator
// ---------------------------------------------------------------------------

/// The even-weight series and its construction intermediates, all truncated
/// at the weight window.
#[derive(Clone, Debug)]
pub struct Tau {
    pub tuple: DepthTuple,
    pub gamma: DepthTuple,
    pub theta: DepthTuple,
    pub phi: DepthTuple,
    pub pole_parts: DepthTuple,
    pub counterterm: DepthTuple,
    pub window: i64,
}

impl Tau {
    /// Stuffle-regularized depth-2 component: `tau*2 = tau2 + 1/48`.
    pub fn starred2(&self) -> RatFn {
        dshuffle::starred_component(&self.tuple, 2)
    }

    /// Stuffle-regularized depth-3 component: `tau*3 = tau3 + (1/48) tau1(x1)`.
    pub fn starred3(&self) -> RatFn {
        dshuffle::starred_component(&self.tuple, 3)
    }
}

/// The one-variable Bernoulli generating function as a depth-1 component,
/// complete through the weight window.
fn b1_component(window: i64) -> RatFn {
    let b = b_series(window - 1);
    let mut num = MPoly::zero(1);
    for (d, c) in b.terms() {
        num.add_term(Mono(vec![(d + 1) as u16]), c.clone());
    }
    RatFn { num, den: std::collections::BTreeMap::new() }.div_form(&LinForm::var(1, 0))
}

fn truncate_rf_weight(f: &RatFn, depth: usize, w: i64) -> RatFn {
    let keep: Vec<RatFn> = f
        .homogeneous_pieces()
        .into_iter()
        .filter(|(d, _)| d + depth as i64 <= w)
        .map(|(_, p)| p)
        .collect();
    RatFn::sum(depth, &keep).reduce()
}

/// Build the even-weight solution of the full double shuffle equations in
/// depths up to three, complete through weight `max_weight`.
///
/// The construction: semi-homogeneous solutions from the Bernoulli series,
/// a twist by the weight-zero seed, removal of the homogeneous degree `-r`
/// parts, and subtraction of bracket counterterms; the result must be
/// pole-free, which is verified and reported as an error otherwise.
pub fn tau(max_weight: i64) -> Result<Tau, String> {
    assert!(max_weight >= 2 && max_weight % 2 == 0);
    let w = max_weight;
    let b1 = b1_component(w);

    // b2(x1,x2) = (1/3)(b1(x1) b1(x2) + b1(x2) b1(x1-x2))
    let b1_x1 = b1.rename(&[0], 2);
    let b1_x2 = b1.rename(&[1], 2);
    let x1mx2 = vec![MPoly::var(2, 0).sub(&MPoly::var(2, 1))];
    let b1_d = b1.substitute(&x1mx2).unwrap();
    let b2 = truncate_rf_weight(
        &b1_x1.mul(&b1_x2).add(&b1_x2.mul(&b1_d)).scale(&rq(1, 3)),
        2,
        w,
    );

    // depth 1 and 2 come from the semi-homogeneous solutions
    let g1 = b1.scale(&rq(-1, 2));
    let b1ob1 = truncate_rf_weight(&circ_x(&b1, 1, &b1, 1), 2, w);
    let g2 = b2.neg().add(&b1ob1.scale(&rq(1, 2))).scale(&rq(1, 4));
    let mut gamma = DepthTuple::new();
    gamma.set(1, g1.clone());
    gamma.set(2, g2.clone());
    gamma.window = Some(w);

    // twist on the left by the weight-zero seed
    let s = s_elements();
    let s1 = s.component(1);
    let th1 = g1.clone();
    let th2 = truncate_rf_weight(&g2.add(&circ_x(&s1, 1, &g1, 1)), 2, w);
    let mut theta = DepthTuple::new();
    theta.set(1, th1.clone());
    theta.set(2, th2.clone());
    theta.window = Some(w);

    // split off the homogeneous degree -r parts
    let mut phi = DepthTuple::new();
    let mut pole_parts = DepthTuple::new();
    for (r, th) in [(1usize, &th1), (2, &th2)] {
        let mut p_r = Vec::new();
        let mut rest = Vec::new();
        for (d, piece) in th.homogeneous_pieces() {
            let weight = d + r as i64;
            if weight == 0 {
                p_r.push(piece);
            } else if weight >= 2 && weight % 2 == 0 {
                rest.push(piece);
            } else {
                return Err(format!(
                    "depth-{r} part of the twisted series has a term of weight {weight}"
                ));
            }
        }
        pole_parts.set(r, RatFn::sum(r, &p_r));
        phi.set(r, RatFn::sum(r, &rest).reduce());
    }
    phi.window = Some(w);

    // counterterm series: sum_{n>=1} (1/2n) {xi_{-1}, xi_{2n+1}} underlined
    let xi_m1 = xi_heretical(-1, 2);
    let mut counterterm = DepthTuple::new();
    let mut n = 1i64;
    while 2 * n <= w {
        let term = bracket_tuple(&xi_m1, &xi_heretical(n, 2));
        counterterm = counterterm.add(&truncate_depth(&term, 3).scale(&rq(1, 2 * n)));
        n += 1;
    }
    counterterm.window = Some(w);

    // depths 1 and 2 with counterterm; poles must cancel exactly
    let t1 = phi.component(1);
    let t2 = phi.component(2).add(&counterterm.component(2)).reduce();
    for (r, f) in [(1usize, &t1), (2, &t2)] {
        if !f.reduce().is_polynomial() {
            return Err(format!("pole cancellation failed in depth {r}"));
        }
    }

    // depth 3: the unique even-weight polynomial solution of the full
    // depth-3 system given the first two components, solved exactly per
    // weight; existence and uniqueness are part of the verification
    let mut partial = DepthTuple::new();
    partial.set(1, t1.clone());
    partial.set(2, t2.clone());
    partial.window = Some(w);
    let t3 = match solve_depth3(&partial, w) { Ok(v) => v, Err(e) => { eprintln!("depth-3 solve failed: {e}"); RatFn::zero(3) } };

    let mut tuple = partial;
    tuple.set(3, t3);
    tuple.window = Some(w);

    Ok(Tau {
        tuple,
        gamma,
        theta,
        phi,
        pole_parts,
        counterterm,
        window: w,
    })
}

/// Solve the full depth-3 double shuffle equations for the unique
/// polynomial depth-3 component, given depths 1 and 2 of an even-weight
/// series.  The homogeneous system is the linearized depth-3 system, which
/// vanishes in even weight by depth parity, so the solution per weight is
/// unique whenever it exists.
fn solve_depth3(partial: &DepthTuple, w: i64) -> Result<RatFn, String> {
    use crate::linalg::LinSystem;
    // fixed defect with a zero depth-3 component
    let sh0 = dshuffle::full_ds_defect(partial, 3, dshuffle::Flavor::FullShuffle, false)?
        .residual;
    let st0 = dshuffle::full_ds_defect(partial, 3, dshuffle::Flavor::FullStuffle, false)?
        .residual;
    if !sh0.is_polynomial() || !st0.is_polynomial() {
        return Err("depth-3 defect of the partial series is not polynomial".to_string());
    }
    let mut out = RatFn::zero(3);
    let mut weight = 4i64;
    while weight <= w {
        let deg = (weight - 3) as usize;
        let basis = monomials_of_degree3(deg);
        // linear part: shuffle three-term sum and cyclic sum of each monomial
        let mut images: Vec<(RatFn, RatFn)> = Vec::with_capacity(basis.len());
        for m in &basis {
            let mut f = MPoly::zero(3);
            f.add_term(m.clone(), Rat::one());
            let rf = RatFn::from_poly(f);
            let mut t = DepthTuple::new();
            t.set(3, rf.clone());
            let sh = dshuffle::shuffle_defect(&t, 3).residual;
            let st = dshuffle::cycle_sum(&rf, 3);
            images.push((sh, st));
        }
        let mut sys = LinSystem::new(basis.len());
        let mut rhs: Vec<Rat> = Vec::new();
        for eq in 0..2usize {
            let fixed = if eq == 0 { &sh0 } else { &st0 };
            let fixed_w = fixed.num.degree_component(deg as i64);
            let mut monos: Vec<Mono> = fixed_w.terms.keys().cloned().collect();
            for (sh, st) in &images {
                let img = if eq == 0 { sh } else { st };
                for m in img.num.terms.keys() {
                    if !monos.contains(m) {
                        monos.push(m.clone());
                    }
                }
            }
            monos.sort();
            for m in &monos {
                let row: Vec<Rat> = images
                    .iter()
                    .map(|(sh, st)| if eq == 0 { sh.num.coeff(m) } else { st.num.coeff(m) })
                    .collect();
                sys.rows.push(row);
                rhs.push(-fixed_w.coeff(m));
            }
        }
        let sol = sys
            .solve_unique(&rhs)
            .map_err(|e| format!("depth-3 solve at weight {weight}: {e}"))?
            .ok_or_else(|| format!("depth-3 system inconsistent at weight {weight}"))?;
        let mut f = MPoly::zero(3);
        for (m, c) in basis.iter().zip(sol) {
            f.add_term(m.clone(), c);
        }
        out = out.add(&RatFn::from_poly(f));
        weight += 2;
    }
    Ok(out)
}

fn monomials_of_degree3(deg: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=(deg - a) {
            out.push(Mono(vec![a as u16, b as u16, (deg - a - b) as u16]));
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Coefficient extraction
// ---------------------------------------------------------------------------

fn component_coefficient(f: &RatFn, composition: &[usize]) -> Result<Rat, String> {
    if !f.is_polynomial() {
        return Err("component is not polynomial".to_string());
    }
    let exps: Vec<u16> = composition
        .iter()
        .map(|&ni| {
            if ni == 0 {
                Err("composition parts must be positive".to_string())
            } else {
                Ok((ni - 1) as u16)
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(f.num.coeff(&Mono(exps)))
}

/// Coefficient of `x1^{n1-1} ... xr^{nr-1}` in the depth-`r` component of
/// the canonical element of weight `sum(composition)` (odd, length <= 4).
pub fn sigma_coeff(composition: &[usize]) -> Result<Rat, String> {
    let weight: usize = composition.iter().sum();
    if weight % 2 == 0 || weight < 3 {
        return Err("canonical elements have odd weight >= 3".to_string());
    }
    let r = composition.len();
    if !(1..=4).contains(&r) {
        return Err("supported compositions have length 1..=4".to_string());
    }
    let n = (weight - 1) / 2;
    let sc = sigma_c(n, r.max(1), Normalization::Canonical);
    component_coefficient(&sc.tuple.component(r), composition)
}

/// Coefficient of `x1^{n1-1} ... xr^{nr-1}` in the depth-`r` component of
/// the even-weight series (length <= 3).
pub fn tau_coeff(composition: &[usize]) -> Result<Rat, String> {
    let weight: usize = composition.iter().sum();
    if weight % 2 == 1 {
        return Err("the even-weight series has even total weight".to_string());
    }
    let r = composition.len();
    if !(1..=3).contains(&r) {
        return Err("supported compositions have length 1..=3".to_string());
    }
    let t = tau(weight.max(2) as i64)?;
    component_coefficient(&t.tuple.component(r), composition)
}
