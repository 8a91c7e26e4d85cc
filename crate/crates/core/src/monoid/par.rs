//! Lattice points of the half-open fundamental parallelepiped
//! `par(v_1..v_n) = { sum q_i v_i : 0 <= q_i < 1 }`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{MonoidError, Result};
use crate::lattice::{self, IntMatrix};

/// Linearly independent integer vectors together with the lattice points of
/// their fundamental parallelepiped. The zero vector is always `points[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParBox {
    basis: Vec<Vec<BigInt>>,
    points: Vec<Vec<BigInt>>,
    /// columns are the basis vectors
    columns: IntMatrix,
    adj: IntMatrix,
    det: BigInt,
}

/// How an integer vector of the cone sits over the parallelepiped:
/// `p = points[point] + sum coeffs_i * basis_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub point: usize,
    pub coeffs: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub bound: u32,
    pub cone_points_checked: usize,
    /// cone points lying in zero or several translates, with the count
    pub failures: Vec<(Vec<BigInt>, usize)>,
}

impl CoverReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn par_points(vectors: &[Vec<BigInt>]) -> Result<ParBox> {
    let n = vectors.len();
    if n == 0 || vectors.iter().any(|v| v.len() != n) {
        return Err(MonoidError::Dependent);
    }
    let columns = IntMatrix::from_columns(vectors)?;
    let det = lattice::det(&columns)?;
    if det.is_zero() {
        return Err(MonoidError::Dependent);
    }
    let adj = lattice::adjugate(&columns)?;
    let abs_det = det.abs();
    let mut points = Vec::new();
    // reduce one representative of each class of Z^n / (column lattice)
    for rep in lattice::coset_representatives(&columns)? {
        let num = adj.mul_vec(&rep)?;
        // q = num / det; keep the fractional part with denominator |det|
        let frac: Vec<BigInt> = num
            .iter()
            .map(|x| {
                let x = if det.is_negative() { -x } else { x.clone() };
                x.mod_floor(&abs_det)
            })
            .collect();
        let scaled = columns.mul_vec(&frac)?;
        let p: Vec<BigInt> = scaled.iter().map(|x| x / &abs_det).collect();
        points.push(p);
    }
    points.sort_by(|a, b| {
        let za = a.iter().all(Zero::is_zero);
        let zb = b.iter().all(Zero::is_zero);
        zb.cmp(&za).then_with(|| a.cmp(b))
    });
    let out = ParBox {
        basis: vectors.to_vec(),
        points,
        columns,
        adj,
        det,
    };
    if BigInt::from(out.points.len()) != abs_det {
        return Err(MonoidError::Lattice(lattice::LatticeError::Invariant(
            "parallelepiped count differs from |det|".into(),
        )));
    }
    Ok(out)
}

impl ParBox {
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `det * q` where `p = sum q_i v_i`.
    fn scaled_coordinates(&self, p: &[BigInt]) -> Vec<BigInt> {
        let v = self.adj.mul_vec(p).expect("dimension checked by caller");
        if self.det.is_negative() {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        }
    }

    /// Membership filter `0 <= q_i < 1`.
    pub fn in_parallelepiped(&self, p: &[BigInt]) -> bool {
        if p.len() != self.dim() {
            return false;
        }
        let d = self.det.abs();
        self.scaled_coordinates(p).iter().all(|x| !x.is_negative() && x < &d)
    }

    /// Unique decomposition of a point of the saturation over the
    /// parallelepiped; `None` when `p` is outside the rational cone.
    pub fn decompose(&self, p: &[BigInt]) -> Option<Decomposition> {
        if p.len() != self.dim() {
            return None;
        }
        let d = self.det.abs();
        let q = self.scaled_coordinates(p);
        if q.iter().any(Signed::is_negative) {
            return None;
        }
        let coeffs: Vec<BigInt> = q.iter().map(|x| x.div_floor(&d)).collect();
        let frac: Vec<BigInt> = q.iter().map(|x| x.mod_floor(&d)).collect();
        let lam: Vec<BigInt> = self
            .columns
            .mul_vec(&frac)
            .expect("square")
            .iter()
            .map(|x| x / &d)
            .collect();
        let point = self.points.iter().position(|x| *x == lam)?;
        Some(Decomposition { point, coeffs })
    }

    /// First pair of distinct points congruent modulo the lattice of the
    /// basis; `None` means the translates `a + M` are pairwise disjoint.
    pub fn overlapping_pair(&self) -> Option<(usize, usize)> {
        let d = self.det.abs();
        let keys: Vec<Vec<BigInt>> = self
            .points
            .iter()
            .map(|p| self.scaled_coordinates(p).iter().map(|x| x.mod_floor(&d)).collect())
            .collect();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                if keys[i] == keys[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Checks that every integer point of the cone inside the box
    /// `[0, bound]^n` (or `[-bound, bound]^n` when some basis vector has a
    /// negative entry) lies in exactly one translate `lambda + M`.
    pub fn cover_check(&self, bound: u32) -> CoverReport {
        let n = self.dim();
        let lo: i64 = if self.basis.iter().flatten().any(Signed::is_negative) {
            -(bound as i64)
        } else {
            0
        };
        let hi = bound as i64;
        let det = self.det.abs();
        let lam_coords: Vec<Vec<BigInt>> = self.points.iter().map(|p| self.scaled_coordinates(p)).collect();
        let mut checked = 0;
        let mut failures = Vec::new();
        let mut p = vec![lo; n];
        loop {
            let pb: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
            let q = self.scaled_coordinates(&pb);
            if q.iter().all(|x| !x.is_negative()) {
                checked += 1;
                let hits = lam_coords
                    .iter()
                    .filter(|lq| {
                        q.iter().zip(lq.iter()).all(|(a, b)| {
                            let diff = a - b;
                            !diff.is_negative() && diff.is_multiple_of(&det)
                        })
                    })
                    .count();
                if hits != 1 {
                    failures.push((pb, hits));
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return CoverReport {
                        bound,
                        cone_points_checked: checked,
                        failures,
                    };
                }
                p[k] += 1;
                if p[k] <= hi {
                    break;
                }
                p[k] = lo;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vv(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// Exhaustive scan of the bounding box of the parallelepiped.
    fn box_scan(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = basis.len();
        let lo: Vec<i64> = (0..n)
            .map(|j| {
                basis
                    .iter()
                    .map(|v| v[j].clone().min(BigInt::zero()))
                    .sum::<BigInt>()
                    .try_into()
                    .unwrap()
            })
            .collect();
        let hi: Vec<i64> = (0..n)
            .map(|j| {
                basis
                    .iter()
                    .map(|v| v[j].clone().max(BigInt::zero()))
                    .sum::<BigInt>()
                    .try_into()
                    .unwrap()
            })
            .collect();
        let cols = IntMatrix::from_columns(basis).unwrap();
        let det = lattice::det(&cols).unwrap();
        let adj = lattice::adjugate(&cols).unwrap();
        let mut out = Vec::new();
        let mut p = lo.clone();
        loop {
            let pb: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
            let num = adj.mul_vec(&pb).unwrap();
            let inside = num.iter().all(|x| {
                let q = num_rational::BigRational::new(x.clone(), det.clone());
                q >= num_rational::BigRational::zero() && q < num_rational::BigRational::from_integer(1.into())
            });
            if inside {
                out.push(pb);
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return out;
                }
                p[k] += 1;
                if p[k] <= hi[k] {
                    break;
                }
                p[k] = lo[k];
                k += 1;
            }
        }
    }

    #[test]
    fn diag_two() {
        let b = par_points(&vv(&[&[2, 0], &[0, 2]])).unwrap();
        let mut pts = b.points().to_vec();
        pts.sort();
        assert_eq!(pts, vv(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]));
        assert_eq!(b.points()[0], vv(&[&[0, 0]])[0]);
        assert!(b.overlapping_pair().is_none());
    }

    #[test]
    fn det_three() {
        let basis = vv(&[&[2, 1], &[1, 2]]);
        let b = par_points(&basis).unwrap();
        assert_eq!(b.len(), 3);
        for p in b.points() {
            assert!(b.in_parallelepiped(p));
        }
        let mut pts = b.points().to_vec();
        pts.sort();
        assert_eq!(pts, box_scan(&basis));
        assert_eq!(pts, vv(&[&[0, 0], &[1, 1], &[2, 2]]));
    }

    #[test]
    fn identity_and_negative_entries() {
        let b = par_points(&vv(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(b.points(), &vv(&[&[0, 0, 0]])[..]);
        let basis = vv(&[&[3, -1], &[1, 2]]);
        let b = par_points(&basis).unwrap();
        let mut pts = b.points().to_vec();
        pts.sort();
        assert_eq!(pts, box_scan(&basis));
        assert_eq!(b.len(), 7);
    }

    #[test]
    fn dependent_rejected() {
        assert!(matches!(
            par_points(&vv(&[&[1, 2], &[2, 4]])),
            Err(MonoidError::Dependent)
        ));
    }

    #[test]
    fn cover_and_decompose() {
        let b = par_points(&vv(&[&[2, 1], &[1, 2]])).unwrap();
        let r = b.cover_check(6);
        assert!(r.ok(), "{:?}", r.failures);
        assert!(r.cone_points_checked > 0);
        let d = b.decompose(&vv(&[&[5, 5]])[0]).unwrap();
        // (5,5) = (2,2) + 1*(2,1) + 1*(1,2)
        assert_eq!(b.points()[d.point], vv(&[&[2, 2]])[0]);
        assert_eq!(d.coeffs, vv(&[&[1, 1]])[0]);
        assert!(b.decompose(&vv(&[&[5, 0]])[0]).is_none());
    }
}
