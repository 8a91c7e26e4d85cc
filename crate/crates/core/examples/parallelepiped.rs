//! Lattice points of a half-open parallelepiped and the disjoint cover of
//! the saturation by translates of the monoid.

use gradval::monoid::par_points;
use num_bigint::BigInt;

fn main() {
    let v: Vec<Vec<BigInt>> = vec![vec![3.into(), 1.into()], vec![1.into(), 2.into()]];
    let pb = par_points(&v).expect("independent");
    println!("|det| = {}, {} points", pb.det(), pb.len());
    for p in pb.points() {
        println!("  {p:?}");
    }
    println!("overlapping translates: {:?}", pb.overlapping_pair());
    let cover = pb.cover_check(8);
    println!(
        "cover check up to 8: {} points, ok {}",
        cover.cone_points_checked,
        cover.ok()
    );
    let target: Vec<BigInt> = vec![7.into(), 6.into()];
    if let Some(d) = pb.decompose(&target) {
        println!("{target:?} = {:?} + {:?} . basis", pb.points()[d.point], d.coeffs);
    }
}
