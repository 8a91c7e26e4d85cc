//! Integral equation of in(z) over the invariants, from the symmetric
//! functions of the conjugates of z.

use gradval::lattice::IntMatrix;
use gradval::values::OrderedGroup;
use gradval::verifier::poly::RatPoly;
use gradval::verifier::{kummer_symmetric_certificate, MonomialExtension};
use num_rational::BigRational;

fn main() {
    let g = OrderedGroup::from_tags(0, &["rat", "sqrt:2"]).expect("group");
    let y = vec![g.int_element(&[1, 0]).expect("x"), g.int_element(&[0, 1]).expect("y")];
    // u = x^2, v = y^2
    let ext = MonomialExtension::new(IntMatrix::diagonal(&[2i64, 2]), y, None).expect("extension");
    let one = BigRational::from_integer(1.into());
    let z = RatPoly::from_terms(2, &[(one.clone(), vec![1, 0]), (one, vec![0, 1])]);
    let names = vec!["x".to_string(), "y".to_string()];
    let cert = kummer_symmetric_certificate(&z, &ext, false).expect("certificate");
    println!("r = {}, nu(z) = {}", cert.r, cert.z_value);
    for (i, (s, v)) in cert.s_polys.iter().zip(&cert.s_values).enumerate() {
        let v = v.as_ref().map_or("inf".to_string(), |v| v.to_string());
        println!("  S_{} = {}   value {v}", i + 1, s.display_with(&names));
    }
    println!("equation: {}", cert.equation_string(&names));
    println!("certificate ok: {}", cert.ok());
}
