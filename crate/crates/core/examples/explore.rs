//! Scratch exploration of fits and asymptotics (dev aid, not part of the API).

use pillowcase_core::engine::{expectation, parse_observable, ExpectationQuery, Measure, Mode};
use pillowcase_core::qseries::{asymptotics, quasimodular_fit, quasimodular_fit_level4};

fn show(name: &str, obs: &str, measure: Measure, order: usize, weight: u32) {
    let t0 = std::time::Instant::now();
    let mut q = ExpectationQuery::new(parse_observable(obs).unwrap(), measure, Mode::QSeries(order));
    q.budget = 100;
    let s = expectation(&q).unwrap().into_series();
    match quasimodular_fit(&s, weight) {
        Ok(fit) => {
            let asy = asymptotics(&fit);
            println!("{name}: fit  = {fit}");
            println!("{name}: asy  = {asy}   [{:?}]", t0.elapsed());
        }
        Err(e) => {
            println!("{name}: spec-basis fit failed ({e})");
            match quasimodular_fit_level4(&s, weight) {
                Ok(fit) => {
                    let asy = asymptotics(&fit);
                    println!("{name}: fit4 = {fit}");
                    println!("{name}: asy4 = {asy}   [{:?}]", t0.elapsed());
                }
                Err(e) => println!("{name}: LEVEL-4 FIT FAILED TOO: {e}"),
            }
        }
    }
}

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    let n4 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(48);
    show("<p1>      ", "p1", Measure::Pillowcase, n, 2);
    show("<p1^2>    ", "p1^2", Measure::Pillowcase, n, 4);
    show("<p1(a)>   ", "p1(alpha)", Measure::Pillowcase, n, 2);
    show("<p1a*p1b> ", "p1(alpha)*p1(beta)", Measure::Pillowcase, n, 4);
    show("<pbar1^2> ", "pbar1^2", Measure::Pillowcase, n, 4);
    show("<p3>      ", "p3", Measure::Pillowcase, n, 4);
    show("<p1>unif  ", "p1", Measure::Uniform, n, 2);
    show("<p3>unif  ", "p3", Measure::Uniform, n, 4);
    show("C2 = var  ", "center(p1)^2", Measure::Pillowcase, n, 4);
    show("<p1^3>    ", "p1^3", Measure::Pillowcase, n, 6);
    show("C4        ", "center(p1)^4", Measure::Pillowcase, n4, 8);
    show("<p1^4>    ", "p1^4", Measure::Pillowcase, n4, 8);
    show("<pbar1^4> ", "pbar1^4", Measure::Pillowcase, n4, 8);
}
