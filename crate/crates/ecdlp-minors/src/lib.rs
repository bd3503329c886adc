//! A Las Vegas attack on the elliptic curve discrete logarithm problem:
//! reduce ECDLP to finding a vector with `k` zeros in the row span of a
//! kernel matrix, then find that vector by hunting for a zero minor.
//!
//! Given `Q = mP` on a curve of prime group order `p`, each round evaluates
//! the degree-`n'` monomials at `2k = 6n'` random multiples of `P` and `-Q`,
//! takes the left kernel of the resulting matrix, and normalizes it to
//! `[A | I]`. A zero minor of `A` — located by scanning entries, all 2x2
//! minors via ratio collisions, or 2x2 minors of successive Schur
//! complements — yields `k` points summing to the identity, from which `m`
//! falls out as a quotient of multiplier sums. Answers are always verified;
//! only the number of rounds is random.
//!
//! ## Modules
//!
//! - [`ff`] — exact arithmetic in `F_p` and `F_{2^m}`
//! - [`ec`] — Weierstrass curve groups, instance files, instance generation
//! - [`matfq`] — dense matrices, left kernels, minors, tracked Schur steps
//! - [`problem_l`] — the zero-minor engines and certificate conversions
//! - [`pipeline`] — the randomized reduction loop
//! - [`harness`] — experiments, the BSGS oracle, the minor census
//!
//! ## Examples
//!
//! One runnable example per capability, under `examples/`:
//!
//! ```text
//! cargo run --release --example worked_example        # a 5x10 kernel over F_73, end to end
//! cargo run --release --example generate_instance     # make a fresh desk-scale instance
//! cargo run --release --example solve_ecdlp           # run the full attack on it
//! cargo run --release --example schur_cascade_tour    # watch a cascade lift a planted minor
//! cargo run --release --example strategy_comparison   # all-2-minors vs Schur, with CSV
//! cargo run --release --example minor_census          # zero-minor statistics per order
//! ```
//!
//! The same capabilities are scriptable through the `ecdlp` binary
//! (`gen`, `solve`, `verify`, `experiment`, `probe-minors`).
//!
//! ## Quick start
//!
//! ```
//! use ecdlp_minors::ec::{gen_instance, FieldKind};
//! use ecdlp_minors::pipeline::{solve, LasVegasConfig, SolveOutcome};
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(1);
//! let instance = gen_instance(10, FieldKind::Prime, &mut rng, true).unwrap();
//! let mut config = LasVegasConfig::new(2);
//! config.seed = 42;
//! let report = solve(&instance, &config).unwrap();
//! match report.outcome {
//!     SolveOutcome::Solved(sol) => assert_eq!(Some(sol.m), instance.known_m),
//!     SolveOutcome::Exhausted => unreachable!("desk-scale instances solve quickly"),
//! }
//! ```

pub mod ec;
pub mod ff;
pub mod harness;
pub mod matfq;
pub mod pipeline;
pub mod problem_l;
