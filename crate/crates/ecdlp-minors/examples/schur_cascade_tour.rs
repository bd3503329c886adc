//! Watch the Schur cascade work: plant a zero 2-minor deep inside the
//! reduction of a random matrix, then trace the stages until the cascade
//! finds it and lifts it back to a minor of the original matrix.

use ecdlp_minors::ff::FieldSpec;
use ecdlp_minors::matfq::{MatrixFq, SchurState, StepOutcome};
use ecdlp_minors::problem_l::{all_two_minors, schur_cascade, CascadeOptions, ScanOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn main() {
    // a large prime field keeps accidental zero minors away, so the planted
    // one is the story
    let field = FieldSpec::prime((1 << 61) - 1).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    let k = 12;
    let depth = 4;

    // Plant: entries of H' at a given stage depend affinely on the original
    // entries with unit coefficient at the mirrored position, so adjusting
    // one original entry forces det of a chosen 2x2 block of H' to zero.
    let planted = loop {
        let m = MatrixFq::random(field, k, k, &mut rng);
        let mut st = SchurState::new(m.clone()).unwrap();
        if (0..depth).any(|_| st.step() == StepOutcome::PivotFailure) {
            continue;
        }
        let h = st.hprime().unwrap();
        if h.at(0, 0).is_zero() {
            continue;
        }
        let (i2, j2) = (rng.gen_range(1..h.rows()), rng.gen_range(1..h.rows()));
        let target = h.at(0, j2) * h.at(i2, 0) * h.at(0, 0).inv().unwrap();
        let delta = target - h.at(i2, j2);
        let mut planted = m.clone();
        let row = st.row_map()[depth + i2];
        let col = depth + j2;
        let v = planted.at(row, col) + delta;
        planted.set(row, col, v);
        println!("planted a zero 2-minor at cascade depth {depth}, H' rows {{0, {i2}}} x cols {{0, {j2}}}");
        println!("(adjusted original entry ({row}, {col}) by a computed delta)\n");
        break planted;
    };

    // Trace the stages the way the cascade sees them.
    println!("stage 0: scanning all 2-minors of the {k}x{k} matrix A itself...");
    assert!(
        all_two_minors(&planted, &ScanOptions::serial()).is_none(),
        "no zero 2-minor in A directly (it is hidden below the surface)"
    );
    println!("         none found");
    let mut state = SchurState::new(planted.clone()).unwrap();
    for stage in 1..=k / 2 {
        match state.step() {
            StepOutcome::Advanced => {}
            StepOutcome::PivotFailure => {
                println!("stage {stage}: pivot failure — singular leading block, done");
                return;
            }
        }
        let h = state.hprime().unwrap();
        match all_two_minors(&h, &ScanOptions::serial()) {
            None => println!(
                "stage {stage}: H' is {}x{}, no zero 2-minor",
                h.rows(),
                h.cols()
            ),
            Some(hit) => {
                println!(
                    "stage {stage}: H' is {}x{} and carries a zero 2-minor at rows {{{}, {}}} x cols {{{}, {}}}",
                    h.rows(), h.cols(), hit.r1, hit.r2, hit.c1, hit.c2
                );
                break;
            }
        }
    }

    // The cascade does all of the above internally and lifts the hit back.
    let loc = schur_cascade(&planted, &CascadeOptions::serial()).expect("planted hit");
    println!(
        "\nlifted location in A: alpha = {:?}, beta = {:?}",
        loc.alpha, loc.beta
    );
    let value = planted.minor(&loc.alpha, &loc.beta).unwrap();
    println!("direct determinant of A[alpha|beta] = {value} (exactly zero, as certified)");
    assert!(value.is_zero());
}
