//! Defect computations for the double shuffle equations in depths up to
//! three (plain, modulo products, linearized, and full with product terms
//! and regularization shifts), membership in the polar linearized solution
//! space, and dimension tables for the linearized systems.

use crate::ihara::bracket_x;
use crate::linalg::LinSystem;
use crate::poly::{DepthTuple, LinForm, MPoly, Mono, RatFn};
use crate::rat::{b_series, rq, Rat};
use crate::words::{words_of, Alphabet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    Shuffle,
    StuffleModProducts,
    LinearizedStuffle,
    FullShuffle,
    FullStuffle,
}

impl Flavor {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flavor::Shuffle => "shuffle",
            Flavor::StuffleModProducts => "stuffle_mod_products",
            Flavor::LinearizedStuffle => "linearized_stuffle",
            Flavor::FullShuffle => "full_shuffle",
            Flavor::FullStuffle => "full_stuffle",
        }
    }
}

/// Residual of one defect computation; `satisfied` iff it vanishes
/// identically (within the tuple's validity window, for windowed series).
#[derive(Clone, Debug)]
pub struct DefectReport {
    pub flavor: Flavor,
    pub depth: usize,
    pub residual: RatFn,
    pub satisfied: bool,
}

impl DefectReport {
    fn new(flavor: Flavor, depth: usize, residual: RatFn) -> Self {
        let satisfied = residual.is_zero();
        DefectReport {
            flavor,
            depth,
            residual,
            satisfied,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flavor": self.flavor.as_str(),
            "depth": self.depth,
            "residual": self.residual.to_json(true),
            "satisfied": self.satisfied,
        })
    }
}

fn var_sum(nvars: usize, idxs: &[usize]) -> MPoly {
    let mut p = MPoly::zero(nvars);
    for &i in idxs {
        p = p.add(&MPoly::var(nvars, i));
    }
    p
}

fn sub_into(f: &RatFn, images: Vec<MPoly>) -> RatFn {
    f.substitute(&images).expect("shuffle substitution collapsed a pole")
}

/// Truncate a depth-`d` residual to the weight window, when one is set.
fn window_residual(f: RatFn, depth: usize, window: Option<i64>) -> RatFn {
    match window {
        None => f,
        Some(w) => {
            let mut acc = RatFn::zero(depth);
            for (deg, piece) in f.homogeneous_pieces() {
                if deg + depth as i64 <= w {
                    acc = acc.add(&piece);
                }
            }
            acc.reduce()
        }
    }
}

/// Shuffle equations modulo products:
/// depth 2: `f(x1, x12) + f(x2, x12)`;
/// depth 3: `f(x1, x12, x123) + f(x2, x12, x123) + f(x2, x23, x123)`.
pub fn shuffle_defect(t: &DepthTuple, depth: usize) -> DefectReport {
    let residual = match depth {
        2 => {
            let f = t.component(2);
            let a = sub_into(&f, vec![MPoly::var(2, 0), var_sum(2, &[0, 1])]);
            let b = sub_into(&f, vec![MPoly::var(2, 1), var_sum(2, &[0, 1])]);
            a.add(&b)
        }
        3 => {
            let f = t.component(3);
            let s12 = var_sum(3, &[0, 1]);
            let s23 = var_sum(3, &[1, 2]);
            let s123 = var_sum(3, &[0, 1, 2]);
            let a = sub_into(&f, vec![MPoly::var(3, 0), s12.clone(), s123.clone()]);
            let b = sub_into(&f, vec![MPoly::var(3, 1), s12, s123.clone()]);
            let c = sub_into(&f, vec![MPoly::var(3, 1), s23, s123]);
            a.add(&b).add(&c)
        }
        _ => panic!("shuffle defect implemented for depths 2 and 3"),
    };
    DefectReport::new(
        Flavor::Shuffle,
        depth,
        window_residual(residual, depth, t.window),
    )
}

fn diff_quotient(a: &RatFn, b: &RatFn, i: usize, j: usize) -> Result<RatFn, String> {
    // (a - b) / (x_{j+1} - x_{i+1}) with i < j, i.e. division by the
    // canonically oriented form x_{i+1} - x_{j+1} and a sign flip
    let n = a.sub(b);
    let polynomial_inputs = a.is_polynomial() && b.is_polynomial();
    let out = n.div_form(&LinForm::diff(a.nvars(), i, j)).neg();
    if polynomial_inputs && !out.is_polynomial() {
        return Err("difference quotient fails the exact-division check".to_string());
    }
    Ok(out)
}

/// Stuffle equations modulo products:
/// depth 2: `f(x1,x2) + f(x2,x1) - (f1(x1) - f1(x2))/(x2 - x1)`;
/// depth 3: the cyclic sum minus the two displayed difference quotients.
pub fn stuffle_defect_mod_products(
    t: &DepthTuple,
    depth: usize,
) -> Result<DefectReport, String> {
    let residual = match depth {
        2 => {
            let f2 = t.component(2);
            let f1 = t.component(1);
            let lhs = f2.add(&f2.rename(&[1, 0], 2));
            let a = f1.rename(&[0], 2);
            let b = f1.rename(&[1], 2);
            lhs.sub(&diff_quotient(&a, &b, 0, 1)?)
        }
        3 => {
            let f3 = t.component(3);
            let f2 = t.component(2);
            let lhs = f3
                .add(&f3.rename(&[1, 0, 2], 3))
                .add(&f3.rename(&[2, 0, 1], 3));
            let f2_21 = f2.rename(&[1, 0], 3);
            let f2_23 = f2.rename(&[1, 2], 3);
            let f2_13 = f2.rename(&[0, 2], 3);
            let rhs = diff_quotient(&f2_21, &f2_23, 0, 2)?
                .add(&diff_quotient(&f2_13, &f2_23, 0, 1)?);
            lhs.sub(&rhs)
        }
        _ => return Err("stuffle defect implemented for depths 2 and 3".to_string()),
    };
    Ok(DefectReport::new(
        Flavor::StuffleModProducts,
        depth,
        window_residual(residual, depth, t.window),
    ))
}

/// Cyclic insertion sum: `sum_j f(x2, ..., x1 in slot j, ..., xd)`.
pub fn cycle_sum(f: &RatFn, depth: usize) -> RatFn {
    assert_eq!(f.nvars(), depth);
    let mut acc = RatFn::zero(depth);
    for j in 0..depth {
        // argument k of f reads: x1 in slot j, the others x2..xd in order
        let mut map = Vec::with_capacity(depth);
        for k in 0..depth {
            if k == j {
                map.push(0);
            } else if k < j {
                map.push(k + 1);
            } else {
                map.push(k);
            }
        }
        acc = acc.add(&f.rename(&map, depth));
    }
    acc
}

/// Linearized stuffle defects: evenness in depth 1, vanishing cyclic sums in
/// depths 2 and 3.
pub fn linearized_defects(t: &DepthTuple, depth: usize) -> DefectReport {
    let residual = match depth {
        1 => {
            let f = t.component(1);
            let fm = sub_into(&f, vec![MPoly::var(1, 0).neg()]);
            f.sub(&fm)
        }
        2 | 3 => cycle_sum(&t.component(depth), depth),
        _ => panic!("linearized defects implemented for depths 1..=3"),
    };
    DefectReport::new(
        Flavor::LinearizedStuffle,
        depth,
        window_residual(residual, depth, t.window),
    )
}

/// Stuffle-regularized components: `f*2 = f2 + 1/48`,
/// `f*3 = f3 + (1/48) f1(x1)`.
pub fn starred_component(t: &DepthTuple, depth: usize) -> RatFn {
    match depth {
        1 => t.component(1),
        2 => t.component(2).add(&RatFn::constant(2, rq(1, 48))),
        3 => t
            .component(3)
            .add(&t.component(1).rename(&[0], 3).scale(&rq(1, 48))),
        _ => panic!("starred components exist in depths 1..=3"),
    }
}

/// Full double shuffle defects, with product right-hand sides.  With
/// `semi_homogeneous` the lower-depth linear terms (difference quotients)
/// are omitted but the product terms are kept.
pub fn full_ds_defect(
    t: &DepthTuple,
    depth: usize,
    flavor: Flavor,
    semi_homogeneous: bool,
) -> Result<DefectReport, String> {
    let residual = match (flavor, depth) {
        (Flavor::FullShuffle, 2) => {
            let base = shuffle_defect(t, 2).residual;
            let f1 = t.component(1);
            let prod = f1.rename(&[0], 2).mul(&f1.rename(&[1], 2));
            base.sub(&prod)
        }
        (Flavor::FullShuffle, 3) => {
            let base = shuffle_defect(t, 3).residual;
            let f1 = t.component(1);
            let f2 = t.component(2);
            // f1(x1) f2(x2, x23)
            let f2s = sub_into(&f2, vec![MPoly::var(3, 1), var_sum(3, &[1, 2])]);
            base.sub(&f1.rename(&[0], 3).mul(&f2s))
        }
        (Flavor::FullStuffle, 2) => {
            let f1 = starred_component(t, 1);
            let f2 = starred_component(t, 2);
            let lhs = f2.add(&f2.rename(&[1, 0], 2));
            let a = f1.rename(&[0], 2);
            let b = f1.rename(&[1], 2);
            let mut rhs = a.mul(&b);
            if !semi_homogeneous {
                rhs = rhs.add(&diff_quotient(&a, &b, 0, 1)?);
            }
            lhs.sub(&rhs)
        }
        (Flavor::FullStuffle, 3) => {
            let f1 = starred_component(t, 1);
            let f2 = starred_component(t, 2);
            let f3 = starred_component(t, 3);
            let lhs = f3
                .add(&f3.rename(&[1, 0, 2], 3))
                .add(&f3.rename(&[2, 0, 1], 3));
            // f*1(x1) f*2(x2, x3)
            let mut rhs = f1.rename(&[0], 3).mul(&f2.rename(&[1, 2], 3));
            if !semi_homogeneous {
                let f2_21 = f2.rename(&[1, 0], 3);
                let f2_23 = f2.rename(&[1, 2], 3);
                let f2_13 = f2.rename(&[0, 2], 3);
                rhs = rhs
                    .add(&diff_quotient(&f2_21, &f2_23, 0, 2)?)
                    .add(&diff_quotient(&f2_13, &f2_23, 0, 1)?);
            }
            lhs.sub(&rhs)
        }
        _ => return Err("full defects implemented for depths 2 and 3".to_string()),
    };
    Ok(DefectReport::new(
        flavor,
        depth,
        window_residual(residual, depth, t.window),
    ))
}

/// The depth-3 comparison term between the two regularizations:
/// `(1/96)(b(x1) - 1/x1)`, truncated to the window, embedded in three
/// variables.
pub fn regularization_shift_depth3(window: i64) -> RatFn {
    let b = b_series(window - 1);
    let mut out = RatFn::zero(3);
    for (d, c) in b.terms() {
        if d < 0 {
            continue; // the 1/x1 pole is subtracted off
        }
        let mut m = MPoly::zero(3);
        m.add_term(Mono(vec![d as u16, 0, 0]), c.clone());
        out = out.add(&RatFn::from_poly(m));
    }
    out.scale(&rq(1, 96))
}

/// Pole family allowed for polar linearized solutions in depth `r`:
/// the reduced forms of `c_r`, i.e. `x1, x1-x2, ..., x_{r-1}-x_r, x_r`
/// (with `x1` counted twice when `r = 1`).
pub fn allowed_pole_forms(r: usize) -> Vec<LinForm> {
    let mut v = Vec::new();
    v.push(LinForm::var(r, 0));
    for i in 0..r.saturating_sub(1) {
        v.push(LinForm::diff(r, i, i + 1));
    }
    v.push(LinForm::var(r, r - 1));
    v
}

/// Membership in the polar linearized double shuffle space: the linearized
/// equations hold in every stored depth and all poles lie within the
/// allowed family.
pub fn pls_member(t: &DepthTuple) -> bool {
    pls_report(t).is_empty()
}

/// Reasons for failing membership; empty iff the element is a member.
pub fn pls_report(t: &DepthTuple) -> Vec<String> {
    let mut problems = Vec::new();
    for (&r, f) in &t.components {
        let mut cleared = f.clone();
        for form in allowed_pole_forms(r) {
            cleared = cleared.mul_form(&form);
        }
        if !cleared.reduce().is_polynomial() {
            problems.push(format!("depth-{r} poles outside the allowed family"));
        }
    }
    for depth in 1..=3usize {
        if t.components.contains_key(&depth) {
            let rep = linearized_defects(t, depth);
            if !rep.satisfied {
                problems.push(format!("linearized defect at depth {depth} is nonzero"));
            }
        }
    }
    for depth in 2..=3usize {
        if t.max_depth() >= depth {
            let rep = shuffle_defect(t, depth);
            if !rep.satisfied {
                problems.push(format!("shuffle defect at depth {depth} is nonzero"));
            }
        }
    }
    problems
}

fn monomials_of_degree(nvars: usize, degree: usize) -> Vec<Mono> {
    fn rec(nvars: usize, slot: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if slot == nvars - 1 {
            cur.push(left as u16);
            out.push(Mono(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e as u16);
            rec(nvars, slot + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, 0, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn assemble_defect_system(
    basis: &[Mono],
    residuals: &[Vec<RatFn>],
) -> LinSystem {
    let n_eq = residuals.first().map(|r| r.len()).unwrap_or(0);
    let mut sys = LinSystem::new(basis.len());
    for eq in 0..n_eq {
        let mut result_monos: Vec<Mono> = Vec::new();
        for r in residuals {
            debug_assert!(r[eq].is_polynomial());
            for m in r[eq].num.terms.keys() {
                if !result_monos.contains(m) {
                    result_monos.push(m.clone());
                }
            }
        }
        result_monos.sort();
        for m in &result_monos {
            sys.push_row(residuals.iter().map(|r| r[eq].num.coeff(m)).collect());
        }
    }
    sys
}

fn linearized_residuals_for_basis(
    d: usize,
    basis: &[Mono],
    include_stuffle: bool,
) -> Vec<Vec<RatFn>> {
    basis
        .iter()
        .map(|m| {
            let mut f = MPoly::zero(d);
            f.add_term(m.clone(), Rat::from_integer(1.into()));
            let mut t = DepthTuple::new();
            t.set(d, RatFn::from_poly(f));
            let mut defects = Vec::new();
            if include_stuffle {
                defects.push(linearized_defects(&t, d).residual);
            }
            if d >= 2 {
                defects.push(shuffle_defect(&t, d).residual);
            }
            defects
        })
        .collect()
}

/// Dimension of the homogeneous linearized double shuffle system in depth
/// `d <= 3` and weight `n`, by rank-nullity over the monomial basis of
/// degree `n - d`.
pub fn ls_dimension(d: usize, n: usize) -> usize {
    assert!((1..=3).contains(&d));
    if n < d {
        return 0;
    }
    let basis = monomials_of_degree(d, n - d);
    if basis.is_empty() {
        return 0;
    }
    let residuals = linearized_residuals_for_basis(d, &basis, true);
    let sys = assemble_defect_system(&basis, &residuals);
    basis.len() - sys.rank()
}

/// Kernel basis of the full depth-`d` linearized system, as polynomials.
pub fn ls_kernel_basis(d: usize, n: usize) -> Vec<RatFn> {
    assert!((1..=3).contains(&d));
    if n < d {
        return Vec::new();
    }
    let basis = monomials_of_degree(d, n - d);
    if basis.is_empty() {
        return Vec::new();
    }
    let residuals = linearized_residuals_for_basis(d, &basis, true);
    let sys = assemble_defect_system(&basis, &residuals);
    sys.kernel_basis()
        .into_iter()
        .map(|vec| {
            let mut p = MPoly::zero(d);
            for (m, c) in basis.iter().zip(vec) {
                p.add_term(m.clone(), c);
            }
            RatFn::from_poly(p)
        })
        .collect()
}

/// Dimension of the solutions of the displayed depth-`d` shuffle identity
/// alone, for cross-checks against Lie membership.
pub fn shuffle_solution_dimension(d: usize, n: usize) -> usize {
    assert!((2..=3).contains(&d));
    if n < d {
        return 0;
    }
    let basis = monomials_of_degree(d, n - d);
    let residuals = linearized_residuals_for_basis(d, &basis, false);
    let sys = assemble_defect_system(&basis, &residuals);
    basis.len() - sys.rank()
}

/// Reduced polynomial representations of a spanning set of the depth-`d`
/// Lie component in weight `n`, via right-normed bracketings of words.
pub fn lie_span_reduced(d: usize, n: usize) -> Vec<RatFn> {
    let mut out = Vec::new();
    for w in words_of(n, d) {
        let p = crate::words::NCPoly::word(Alphabet::Genus0, w).dynkin();
        let comp = p.counting_component(d);
        if comp.is_zero() {
            continue;
        }
        let f = RatFn::from_poly(crate::poly::rho(&comp, d).unwrap())
            .reduce_to_x(d)
            .unwrap();
        if !f.is_zero() {
            out.push(f);
        }
    }
    out
}

/// Rank of a family of depth-`d` polynomials over their monomial support.
pub fn rank_of_family(fns: &[RatFn]) -> usize {
    if fns.is_empty() {
        return 0;
    }
    let mut monos: Vec<Mono> = Vec::new();
    for f in fns {
        assert!(f.is_polynomial());
        for m in f.num.terms.keys() {
            if !monos.contains(m) {
                monos.push(m.clone());
            }
        }
    }
    monos.sort();
    let mut sys = LinSystem::new(fns.len());
    for m in &monos {
        sys.push_row(fns.iter().map(|f| f.num.coeff(m)).collect());
    }
    sys.rank()
}

/// Dimension of `{ f in lie-span(depth 4, weight n) : cycle sum of f = 0 }`.
/// By depth parity this vanishes in odd weight, which pins the depth-4
/// components of the canonical elements.
pub fn depth4_lie_cycle_kernel_dimension(n: usize) -> usize {
    let span = lie_span_reduced(4, n);
    if span.is_empty() {
        return 0;
    }
    let dim_span = rank_of_family(&span);
    let cycles: Vec<RatFn> = span.iter().map(|f| cycle_sum(f, 4)).collect();
    let mut monos: Vec<Mono> = Vec::new();
    for f in &cycles {
        for m in f.num.terms.keys() {
            if !monos.contains(m) {
                monos.push(m.clone());
            }
        }
    }
    monos.sort();
    let mut sys = LinSystem::new(span.len());
    for m in &monos {
        sys.push_row(cycles.iter().map(|f| f.num.coeff(m)).collect());
    }
    let coeff_kernel_dim = span.len() - sys.rank();
    let relations_dim = span.len() - dim_span;
    coeff_kernel_dim - relations_dim
}

/// Closure of the linearized solutions under the bracket: the bracket of a
/// depth-1 and a depth-2 solution solves the depth-3 system.
pub fn bracket_of_solutions_is_solution(f1: &RatFn, f2: &RatFn) -> bool {
    let b = bracket_x(f1, 1, f2, 2);
    let mut t = DepthTuple::new();
    t.set(3, b);
    linearized_defects(&t, 3).satisfied && shuffle_defect(&t, 3).satisfied
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rz;

    fn tuple1(f: RatFn) -> DepthTuple {
        let mut t = DepthTuple::new();
        t.set(1, f);
        t
    }

    #[test]
    fn shuffle_defect_of_monomial() {
        // f2 = x1 x2: residual x1^2 + 2 x1 x2 + x2^2
        let f = MPoly::var(2, 0).mul(&MPoly::var(2, 1));
        let mut t = DepthTuple::new();
        t.set(2, RatFn::from_poly(f));
        let rep = shuffle_defect(&t, 2);
        assert!(!rep.satisfied);
        let expect = MPoly::var(2, 0)
            .pow(2)
            .add(&MPoly::var(2, 0).mul(&MPoly::var(2, 1)).scale(&rz(2)))
            .add(&MPoly::var(2, 1).pow(2));
        assert!(rep.residual.eq(&RatFn::from_poly(expect)));
    }

    #[test]
    fn linearized_depth1_is_evenness() {
        let even = tuple1(RatFn::from_poly(MPoly::var(1, 0).pow(4)));
        assert!(linearized_defects(&even, 1).satisfied);

        let odd = tuple1(RatFn::from_poly(MPoly::var(1, 0).pow(3)));
        let rep = linearized_defects(&odd, 1);
        assert!(!rep.satisfied);
        let expect = MPoly::var(1, 0).pow(3).scale(&rz(2));
        assert!(rep.residual.eq(&RatFn::from_poly(expect)));
    }

    #[test]
    fn cycle_sums() {
        // depth 2: f(x1,x2) + f(x2,x1)
        let f = RatFn::from_poly(MPoly::var(2, 0).pow(2).mul(&MPoly::var(2, 1)));
        let c = cycle_sum(&f, 2);
        let expect = MPoly::var(2, 0)
            .pow(2)
            .mul(&MPoly::var(2, 1))
            .add(&MPoly::var(2, 1).pow(2).mul(&MPoly::var(2, 0)));
        assert!(c.eq(&RatFn::from_poly(expect)));
    }

    #[test]
    fn stuffle_division_check() {
        // one-variable polynomial differences always divide exactly
        let mut t = DepthTuple::new();
        t.set(1, RatFn::from_poly(MPoly::var(1, 0).pow(2)));
        let rep = stuffle_defect_mod_products(&t, 2).unwrap();
        assert!(!rep.satisfied);
        assert!(rep.residual.is_polynomial());

        // a polar depth-1 component keeps the quotient rational
        let mut t = DepthTuple::new();
        t.set(
            1,
            RatFn::from_poly(MPoly::one(1)).div_form(&LinForm::var(1, 0)),
        );
        let rep = stuffle_defect_mod_products(&t, 2).unwrap();
        assert!(!rep.residual.is_polynomial());
    }

    #[test]
    fn ls_dimension_depth1_parity() {
        for n in 1..=24usize {
            let d = ls_dimension(1, n);
            if n % 2 == 1 {
                assert_eq!(d, 1, "weight {n}");
            } else {
                assert_eq!(d, 0, "weight {n}");
            }
        }
    }

    #[test]
    fn ls_dimension_depth2_values() {
        assert_eq!(ls_dimension(2, 7), 0);
        assert_eq!(ls_dimension(2, 9), 0);
        assert_eq!(ls_dimension(2, 12), 1);
    }

    #[test]
    fn shuffle_solutions_match_lie_membership() {
        // the displayed shuffle identity cuts out exactly the reduced
        // representations of Lie elements
        for (d, n) in [(2usize, 6usize), (2, 8), (2, 9), (3, 7), (3, 8)] {
            let span = lie_span_reduced(d, n);
            let lie_dim = rank_of_family(&span);
            let shuffle_dim = shuffle_solution_dimension(d, n);
            assert_eq!(lie_dim, shuffle_dim, "at depth {d} weight {n}");
            for f in &span {
                let mut t = DepthTuple::new();
                t.set(d, f.clone());
                assert!(shuffle_defect(&t, d).satisfied);
            }
        }
    }

    #[test]
    fn racinet_closure_on_samples() {
        for n2 in [8usize, 10, 12, 14] {
            for g in ls_kernel_basis(2, n2) {
                for m in [2usize, 4] {
                    let f = RatFn::from_poly(MPoly::var(1, 0).pow(m));
                    assert!(bracket_of_solutions_is_solution(&f, &g));
                }
            }
        }
    }

    #[test]
    fn zero_series_full_stuffle_constant() {
        // only the regularization shift survives on the zero series
        let mut t = DepthTuple::new();
        t.window = Some(20);
        let rep = full_ds_defect(&t, 2, Flavor::FullStuffle, false).unwrap();
        assert!(rep.residual.eq(&RatFn::constant(2, rq(1, 24))));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }
}
