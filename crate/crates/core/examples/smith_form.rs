//! Smith normal form with transforms, and the quotient group it describes.

use gradval::lattice::{check_smith, quotient_structure, smith_normal_form, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).expect("matrix");
    let s = smith_normal_form(&a);
    println!("diagonal {:?}", s.diagonal());
    check_smith(&a, &s).expect("U A V = D");
    let q = quotient_structure(&a).expect("nonsingular");
    println!(
        "Z^3 / A^t Z^3 has order {} and invariant factors {:?}",
        q.order, q.invariant_factors
    );
}
