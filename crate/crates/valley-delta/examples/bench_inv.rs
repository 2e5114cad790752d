use valley_delta::symfunc::{Basis, SymF};

fn main() {
    for n in 1..=7usize {
        let t0 = std::time::Instant::now();
        let e = SymF::e(n).convert(Basis::Macdonald).unwrap();
        let t1 = std::time::Instant::now();
        let back = e.convert(Basis::Monomial).unwrap();
        assert_eq!(back, SymF::e(n).convert(Basis::Monomial).unwrap());
        println!(
            "degree {n}: into Macdonald {:?}, back {:?} (round trip ok)",
            t1 - t0,
            t1.elapsed()
        );
    }
}
