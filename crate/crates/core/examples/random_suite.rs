//! The seeded random suite over nonnegative nonsingular matrices.

use gradval::corpus::rand_suite;

fn main() {
    let seed = gradval::corpus::default_seed();
    for dims in [2, 3] {
        let s = rand_suite(dims, 5, 100, seed).expect("suite");
        println!(
            "dims {dims}: {}/{} passed, {} singular draws skipped",
            s.passed, s.analyzed, s.singular_skipped
        );
    }
}
