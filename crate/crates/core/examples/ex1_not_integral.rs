//! u = yx + x^2: the graded extension is not integral.

use gradval::graded::{integrality_test, GradedExtension, Integrality};
use gradval::monoid::AffineMonoid;
use gradval::values::OrderedGroup;

fn main() {
    // nu*(x) = 1, nu*(y) = pi
    let g = OrderedGroup::from_tags(0, &["rat", "pi"]).expect("group");
    let s_s = AffineMonoid::from_int_coords(&g, &[vec![1, 0], vec![0, 1]]).expect("S^S");
    let s_r = AffineMonoid::from_int_coords(&g, &[vec![1, 1], vec![0, 1]]).expect("S^R");
    let ext = GradedExtension::new(s_r.clone(), s_s, 1, "u = yx + x^2").expect("nested");
    match integrality_test(&ext).expect("test runs") {
        Integrality::NotIntegral { witness } => println!("not integral, witness {witness}"),
        Integrality::Integral { .. } => println!("integral"),
    }
    let x = g.int_element(&[1, 0]).expect("element");
    for n in 1..=5i64 {
        let nx = x.scale_int(&n.into());
        println!(
            "{n} * nu*(x) = {nx} in S^R: {}",
            s_r.member(&nx).expect("member").is_some()
        );
    }
}
