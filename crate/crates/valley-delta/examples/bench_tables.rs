use valley_delta::paths::{Rules, TableCache};

fn main() {
    let cache = TableCache::new();
    let t0 = std::time::Instant::now();
    let t = cache.maxlabel(6, 7, Rules::standard());
    println!("maxlabel(6,7): {} objects in {:?}", t.objects, t0.elapsed());
    for (z, p) in [(0usize, 6usize), (1, 5), (2, 4), (3, 3)] {
        let t0 = std::time::Instant::now();
        let t = cache.labelled(z, p, 6, Rules::standard());
        println!(
            "labelled({z},{p},6): {} objects in {:?}",
            t.objects,
            t0.elapsed()
        );
    }
    let t0 = std::time::Instant::now();
    let t = cache.maxlabel(5, 6, Rules::standard());
    println!("maxlabel(5,6): {} objects in {:?}", t.objects, t0.elapsed());
}
