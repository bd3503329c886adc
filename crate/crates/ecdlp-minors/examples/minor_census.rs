//! Tabulate zero minors of every order over sampled matrices — the raw data
//! behind the question of whether a small "initial" set of minors could
//! certify that all minors are non-zero.
//!
//! Compares uniform random matrices with the kernel blocks real attack
//! rounds produce, over the same field.

use ecdlp_minors::ec::{gen_instance, FieldKind};
use ecdlp_minors::harness::{probe_minors, CensusSource};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(12);
    let instance = gen_instance(12, FieldKind::Prime, &mut rng, false).unwrap();
    let field = instance.curve.field();
    let k = 6; // pipeline blocks are k = 3n'; n' = 2 gives 6x6
    let samples = 120;

    println!("field {field}, k = {k}, {samples} samples per source\n");

    let random = probe_minors(k, samples, &CensusSource::Random { field }, 1).unwrap();
    println!("--- uniform random matrices ---");
    print!("{}", random.report());

    let pipeline = probe_minors(
        k,
        samples,
        &CensusSource::Pipeline {
            instance: Box::new(instance),
        },
        1,
    )
    .unwrap();
    println!("\n--- kernel blocks from real rounds ---");
    print!("{}", pipeline.report());

    println!(
        "\nfraction with a zero minor: random {:.3} vs pipeline {:.3}",
        random.fraction_with_zero(),
        pipeline.fraction_with_zero()
    );
    println!("a pipeline block with any zero minor is precisely a round the attack wins");
}
