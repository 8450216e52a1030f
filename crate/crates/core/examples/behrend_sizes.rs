use girthlab::apfree::{behrend_sequence, greedy_3ap_free};

fn main() {
    let greedy = greedy_3ap_free(5000);
    for m in [1_000u64, 10_000, 100_000, 1_000_000] {
        let t = std::time::Instant::now();
        let b = behrend_sequence(m).unwrap();
        let g = greedy.terms().iter().filter(|&&x| x <= m).count();
        println!("M={m} behrend={} greedy={g} ({:?})", b.len(), t.elapsed());
    }
}
