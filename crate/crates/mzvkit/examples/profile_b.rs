use mzvkit::poly::{LinForm, MPoly, Mono, RatFn};
use mzvkit::rat::{b_series, rq};
use std::collections::BTreeMap;
use std::time::Instant;

fn b1_component(window: i64) -> RatFn {
    let b = b_series(window - 1);
    let mut num = MPoly::zero(1);
    for (d, c) in b.terms() {
        num.add_term(Mono(vec![(d + 1) as u16]), c.clone());
    }
    RatFn { num, den: BTreeMap::new() }.div_form(&LinForm::var(1, 0))
}

fn main() {
    let w = 40i64;
    let t0 = Instant::now();
    let b1 = b1_component(w);
    eprintln!("b1 built {:?}", t0.elapsed());
    let t = Instant::now();
    let b_x1 = b1.rename(&[0], 2);
    let b_x2 = b1.rename(&[1], 2);
    eprintln!("renames {:?}", t.elapsed());
    let t = Instant::now();
    let img = vec![MPoly::var(2, 1).sub(&MPoly::var(2, 0))];
    let b_d = b1.substitute(&img).unwrap();
    eprintln!("substitute {:?}", t.elapsed());
    let t = Instant::now();
    let m1 = b_x1.mul(&b_x2);
    eprintln!("mul1 {:?} ({} terms)", t.elapsed(), m1.num.terms.len());
    let t = Instant::now();
    let m2 = b_x1.mul(&b_d);
    let m3 = b_x2.mul(&b_d);
    eprintln!("mul23 {:?}", t.elapsed());
    let t = Instant::now();
    let lhs = m1.sub(&m2).add(&m3);
    eprintln!("addsub {:?} ({} terms)", t.elapsed(), lhs.num.terms.len());
    let t = Instant::now();
    let diff = lhs.sub(&RatFn::constant(2, rq(1, 4)));
    eprintln!("const sub {:?}", t.elapsed());
    let t = Instant::now();
    let pieces = diff.homogeneous_pieces();
    eprintln!("pieces {:?} ({})", t.elapsed(), pieces.len());
    let t = Instant::now();
    for (d, piece) in pieces {
        if d <= w - 1 {
            assert!(piece.is_zero(), "fail at {d}");
        }
    }
    eprintln!("checks {:?}", t.elapsed());
}
