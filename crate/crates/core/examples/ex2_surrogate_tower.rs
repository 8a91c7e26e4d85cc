//! Integral but not finite: module generator counts grow along a tower of
//! truncated value semigroups (surrogate data).

use gradval::corpus::builtin::generating_sequence_tower;
use gradval::graded::{finiteness_tower, integrality_test};
use gradval::values::OrderedGroup;

fn main() {
    let g = OrderedGroup::rationals();
    let tower = generating_sequence_tower(&g, 3, 3, &[1, 2, 3], 1, "surrogate").expect("tower");
    for (level, ext) in &tower {
        let integral = integrality_test(ext).expect("integrality").is_integral();
        let gens: Vec<String> = ext.s2.gens().iter().map(|x| x.to_string()).collect();
        println!("level {level}: S2 = <{}>, integral {integral}", gens.join(", "));
    }
    let report = finiteness_tower(&tower).expect("tower analysis");
    println!("counts {:?}, verdict {:?}", report.counts(), report.verdict);
}
