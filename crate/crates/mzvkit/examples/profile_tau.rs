use mzvkit::dshuffle::*;
fn main() {
    let t = mzvkit::canonical::tau(8).unwrap();
    for depth in 2..=2usize {
        let sh = full_ds_defect(&t.tuple, depth, Flavor::FullShuffle, false).unwrap();
        eprintln!("tau full shuffle d{depth}: satisfied={}", sh.satisfied);
        if !sh.satisfied { for (d,p) in sh.residual.homogeneous_pieces() { eprintln!("  deg {d}: {p}"); } }
        let st = full_ds_defect(&t.tuple, depth, Flavor::FullStuffle, false).unwrap();
        eprintln!("tau full stuffle d{depth}: satisfied={}", st.satisfied);
        if !st.satisfied { for (d,p) in st.residual.homogeneous_pieces() { eprintln!("  deg {d}: {p}"); } }
    }
    eprintln!("tau1 = {}", t.tuple.component(1));
    eprintln!("tau2 = {}", t.tuple.component(2));
}
