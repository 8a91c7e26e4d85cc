//! Free basis, coset representatives and character action for a monomial
//! extension x = y^A.

use gradval::lattice::IntMatrix;
use gradval::values::OrderedGroup;
use gradval::verifier::{analyze, character_action, MonomialExtension};

fn main() {
    let g = OrderedGroup::from_tags(0, &["rat", "sqrt:2", "sqrt:3"]).expect("group");
    let y = vec![
        g.int_element(&[1, 0, 0]).expect("y1"),
        g.int_element(&[0, 1, 0]).expect("y2"),
        g.int_element(&[0, 0, 1]).expect("y3"),
    ];
    // x_1 = y_1^2 y_2, x_2 = y_1 y_2^2, y_3 unramified
    let a = IntMatrix::from_rows(&[vec![2i64, 1], vec![1, 2]]).expect("matrix");
    let ext = MonomialExtension::new(a, y, None).expect("extension");
    let r = analyze(&ext).expect("analysis");
    println!(
        "e = {}, invariant factors {:?}",
        r.e, r.invariant_factors.invariant_factors
    );
    for (w, v) in r.w_exponents.iter().zip(&r.coset_values) {
        println!("  w = y^{w:?}, value {v}");
    }
    println!(
        "free basis {}, cosets complete {}, cover disjoint {}, invariants trivial only {}",
        r.free_basis_ok, r.cosets_complete, r.cover_disjoint, r.invariants_trivial_only
    );
    let chi = character_action(&ext, &r.w_exponents).expect("characters");
    for (c, row) in chi.group_elements.iter().zip(&chi.table) {
        println!("  sigma_{c:?}: exponents {row:?}");
    }
}
