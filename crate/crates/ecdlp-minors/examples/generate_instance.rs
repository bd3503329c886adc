//! Generate fresh desk-scale discrete-logarithm instances over both field
//! kinds and print them in the instance file format.

use ecdlp_minors::ec::{gen_instance, FieldKind};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);

    for (kind, bits) in [(FieldKind::Prime, 14), (FieldKind::Binary, 16)] {
        let instance = gen_instance(bits, kind, &mut rng, true).unwrap();
        println!(
            "--- {:?} field, {} bits: group order {} (prime) ---",
            kind, bits, instance.order
        );
        print!("{}", instance.to_file_string());
        // The generator only emits instances that pass every invariant:
        // prime order, both points on the curve, and Q = mP for the
        // recorded solution.
        instance.validate().unwrap();
        let m = instance.known_m.unwrap();
        assert_eq!(
            instance.curve.scalar_mul(&instance.p, m).unwrap(),
            instance.q
        );
        println!("(validated: order*P = O, order*Q = O, Q = {m}*P)\n");
    }

    println!("note: binary instances use a1 = a2 = 0 with a3 != 0. In characteristic 2");
    println!("a non-zero a1 always creates a rational point of order two, so only these");
    println!("(supersingular) curves can have a group of odd prime order.");
}
