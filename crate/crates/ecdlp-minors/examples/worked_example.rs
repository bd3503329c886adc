//! The classic 5x10 kernel over F_73, worked end to end: find the zero
//! 2-minor, turn it into a vector with exactly five zeros, and read off the
//! row operation that produced it.

use ecdlp_minors::ff::FieldSpec;
use ecdlp_minors::matfq::{normalize_kernel, MatrixFq, NormalizeOutcome};
use ecdlp_minors::problem_l::{all_two_minors, minor_to_certificate, MinorLocation, ScanOptions};

fn main() {
    let f73 = FieldSpec::prime(73).unwrap();
    let kernel = MatrixFq::from_ints(
        f73,
        &[
            &[70, 18, 1, 17, 10, 0, 0, 0, 0, 1],
            &[10, 13, 54, 43, 48, 0, 0, 0, 1, 0],
            &[23, 43, 8, 24, 57, 0, 0, 1, 0, 0],
            &[29, 29, 56, 61, 48, 0, 1, 0, 0, 0],
            &[49, 38, 21, 46, 27, 1, 0, 0, 0, 0],
        ],
    );
    println!("kernel K (5x10, right half is the anti-identity):\n{kernel}");

    // Scan the non-identity block for a zero 2-minor.
    let a = kernel
        .submatrix(&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4])
        .unwrap();
    let hit = all_two_minors(&a, &ScanOptions::serial()).expect("this matrix has one");
    println!(
        "zero 2-minor found at rows {{{}, {}}} x columns {{{}, {}}} (1-based: {{{}, {}}} x {{{}, {}}})",
        hit.r1, hit.r2, hit.c1, hit.c2,
        hit.r1 + 1, hit.r2 + 1, hit.c1 + 1, hit.c2 + 1
    );
    let d = a.minor(&[hit.r1, hit.r2], &[hit.c1, hit.c2]).unwrap();
    println!("det [[70, 18], [10, 13]] mod 73 = {d}  (70*13 - 18*10 = 730 = 10*73)");

    // Normalize to [A | I]; the rows come back in reverse order, recorded in
    // the origin map.
    let NormalizeOutcome::View(kv) = normalize_kernel(&kernel, 5).unwrap() else {
        unreachable!("the right block is a permutation, not singular");
    };
    println!("\nnormalized row origins: {:?}", kv.row_origin().unwrap());

    // The printed rows {1,2} are normalized rows {4,3}; the vanishing
    // combination of the 2x2 block is row5 - 7 * row4, i.e. R1 - 7 * R2 in
    // the original order.
    let loc = MinorLocation::new(vec![3, 4], vec![0, 1]);
    let cert = minor_to_certificate(&kv, &loc).unwrap();
    let values: Vec<u64> = cert.v.iter().map(|e| e.value()).collect();
    println!("\ncertificate vector v = R1 - 7*R2 = {values:?}");
    println!("zero positions (0-based): {:?}", cert.zero_positions);
    println!("selected point indices:   {:?}", cert.selected_points);
    assert_eq!(values, vec![0, 0, 61, 8, 39, 0, 0, 0, 66, 1]);
    println!("\nexactly k = 5 zeros: the five selected points lie on a conic, solving the round");
}
