use std::time::Instant;

fn main() {
    for n in 0..=5 {
        let t = Instant::now();
        let row = degroot::census(n, 5, 1).unwrap();
        println!("{} {:?} {:?}", row.csv_line(), row.law_checks, t.elapsed());
    }
}
