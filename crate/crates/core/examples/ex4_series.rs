//! nu(f) = ord f(x, p(x)) for a seeded series p; both graded rings are
//! polynomial rings on one degree-1 generator up to the truncation.

use gradval::corpus::series::{seeded_series, sqrt_branch, transcendental_check};

fn main() {
    let seed = gradval::corpus::default_seed();
    let p = seeded_series(seed, 8);
    let phi = sqrt_branch(&p).expect("branch");
    let show = |c: &[num_rational::BigRational]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    println!("p(x)   = [{}, ...]", show(p.coeffs()));
    println!("phi(x) = [{}, ...]", show(phi.coeffs()));
    for n in [16, 32, 64] {
        let c = transcendental_check(seed, n, 20.min(n - 2)).expect("check");
        println!(
            "N = {n}: ranks R {:?}, S agree {}, y - p(x) {:?}, z^2 - xy {:?}",
            c.r_ranks,
            c.ranks_agree(),
            c.p_infinity,
            c.branch_relation
        );
    }
}
