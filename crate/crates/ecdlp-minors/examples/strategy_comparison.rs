//! Rerun the same instance many times per search strategy and compare the
//! average number of kernel rounds each needs. The cascade consistently
//! beats the plain all-2-minors scan in rounds, at the cost of more work
//! per round.

use ecdlp_minors::ec::{gen_instance, FieldKind};
use ecdlp_minors::harness::{experiment_csv, mean_iterations, run_experiment, ExperimentConfig};
use ecdlp_minors::pipeline::Strategy;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(31);
    let instance = gen_instance(14, FieldKind::Prime, &mut rng, true).unwrap();
    println!(
        "instance: q = {}, group order = {} — every trial attacks this same instance\n",
        instance.curve.field().order(),
        instance.order
    );

    let mut config = ExperimentConfig::new(2);
    config.trials = 40;
    config.strategies = vec![Strategy::Entries, Strategy::AllTwoMinors, Strategy::Schur];
    config.seed = 17;

    let started = std::time::Instant::now();
    let records = run_experiment(&instance, &config).unwrap();
    println!(
        "{} trials finished in {:?}\n",
        records.len(),
        started.elapsed()
    );

    println!("{:<12} {:>16}", "strategy", "mean iterations");
    for (strategy, mean) in mean_iterations(&records) {
        println!("{:<12} {:>16.2}", strategy.to_string(), mean);
    }

    let out = std::env::temp_dir().join("strategy_comparison.csv");
    std::fs::write(&out, experiment_csv(&records)).unwrap();
    println!("\nraw per-trial records written to {}", out.display());
    println!("(columns: field,kind,log2p,nprime,k,strategy,trial,iterations,resamples,wall_ms)");
}
