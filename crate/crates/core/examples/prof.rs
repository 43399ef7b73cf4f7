//! Timing probe for the enumeration pipeline (dev aid).

use pillowcase_core::engine::{parse_observable, plain_expectations, Measure, Mode};

fn main() {
    let order: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(48);
    let names: Vec<String> = std::env::args().skip(2).collect();
    let names = if names.is_empty() { vec!["1".into(), "pbar1^2".into(), "pbar1^4".into(), "p1".into(), "p1^2".into(), "p1^3".into(), "p1^4".into()] } else { names };
    let obs: Vec<_> = names
        .iter()
        .map(|s| parse_observable(s).unwrap())
        .collect();
    let t0 = std::time::Instant::now();
    let vals = plain_expectations(&obs, Measure::Pillowcase, Mode::QSeries(order), 200).unwrap();
    println!("order {order}: {} series in {:?}", vals.len(), t0.elapsed());
}
