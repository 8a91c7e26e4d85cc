//! Purely inseparable graded extension in characteristic p: U_j -> X_j^p.

use gradval::corpus::builtin::{frobenius_chain, frobenius_map, generating_sequence_tower};
use gradval::graded::{finiteness_tower, p_power_inclusion, substitution_check};
use gradval::values::OrderedGroup;

fn main() {
    let truncation = 4;
    for p in [2u64, 3] {
        let src = frobenius_chain("U", p, truncation).expect("presentation");
        let dst = frobenius_chain("X", p, truncation).expect("presentation");
        let sub = substitution_check(&src, &dst, &frobenius_map(p, truncation)).expect("rewriting");
        println!("p = {p}: substitution {:?} ({} rules)", sub.outcome, sub.rules);

        let g = OrderedGroup::rationals();
        let tower = generating_sequence_tower(&g, p * p, p, &[1, 2, 3, 4], 1, "generating sequence").expect("tower");
        for n in [1, 2] {
            let holds = tower
                .iter()
                .all(|(_, ext)| p_power_inclusion(ext, p as u32, n).expect("p-power").holds);
            println!("  gr(S)^(p^{n}) in gr(R): {holds}");
        }
        let r = finiteness_tower(&tower).expect("tower analysis");
        println!("  counts {:?}, verdict {:?}", r.counts(), r.verdict);
    }
}
