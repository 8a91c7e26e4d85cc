//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here works on [`IntMatrix`], a dense row-major matrix of
//! [`BigInt`]. Determinants use Bareiss fraction-free elimination; Smith and
//! Hermite normal forms are computed by unimodular row/column operations and
//! always return their transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("matrix must have positive dimensions")]
    Empty,
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(LatticeError::Empty);
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LatticeError::Ragged {
                    row: i,
                    found: r.len(),
                    expected: cols,
                });
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(LatticeError::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn scaled(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Option<IntMatrix> {
        if self.rows < 2 || self.cols < 2 {
            return None;
        }
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self[(i, j)].clone());
            }
        }
        Some(IntMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        })
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    Ok(sign * &m[(n - 1, n - 1)])
}

/// Classical adjoint: `A * adj(A) = det(A) * I`.
pub fn adjugate(a: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj[(0, 0)] = BigInt::one();
    } else {
        for i in 0..n {
            for j in 0..n {
                let minor = a.minor(j, i).expect("n >= 2");
                let c = det(&minor)?;
                adj[(i, j)] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
    }
    let d = det(a)?;
    if a.mul(&adj)? != IntMatrix::identity(n).scaled(&d) {
        return Err(LatticeError::Invariant("A * adj(A) != det(A) * I".to_string()));
    }
    Ok(adj)
}

/// Result of a Smith normal form computation: `U * A * V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, including zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct SnfState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    // row[dst] += k row[src]; inverse is col[src] -= k col[dst]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        let n = self.u_inv.rows;
        for r in 0..n {
            let v = -&self.u_inv[(r, i)];
            self.u_inv[(r, i)] = v;
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (r, c) = (a.rows, a.cols);
    let mut st = SnfState {
        a: a.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    for t in 0..r.min(c) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &st.a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < st.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..r {
                let q = st.a[(i, t)].div_floor(&st.a[(t, t)]);
                st.add_row(i, t, &-q);
                clean &= st.a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let q = st.a[(t, j)].div_floor(&st.a[(t, t)]);
                st.add_col(j, t, &-q);
                clean &= st.a[(t, j)].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; promote it
                let mut best = (t, t);
                for i in t + 1..r {
                    if !st.a[(i, t)].is_zero() && st.a[(i, t)].abs() < st.a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !st.a[(t, j)].is_zero() && st.a[(t, j)].abs() < st.a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    st.swap_rows(t, best.0);
                } else if best.1 != t {
                    st.swap_cols(t, best.1);
                }
                continue;
            }
            let piv = st.a[(t, t)].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !st.a[(i, j)].is_multiple_of(&piv)));
            match offender {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.a[(t, t)].is_negative() {
            st.negate_row(t);
        }
    }
    let out = SmithForm {
        d: st.a,
        u: st.u,
        u_inv: st.u_inv,
        v: st.v,
        v_inv: st.v_inv,
    };
    debug_assert!(check_smith(a, &out).is_ok());
    out
}

/// Recomputes `U*A*V` and the divisibility chain.
pub fn check_smith(a: &IntMatrix, s: &SmithForm) -> Result<()> {
    let uav = s.u.mul(a)?.mul(&s.v)?;
    if uav != s.d {
        return Err(LatticeError::Invariant("U*A*V != D".into()));
    }
    for i in 0..s.d.rows {
        for j in 0..s.d.cols {
            if i != j && !s.d[(i, j)].is_zero() {
                return Err(LatticeError::Invariant("D is not diagonal".into()));
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !ok || w[0].is_negative() {
            return Err(LatticeError::Invariant(format!(
                "divisibility chain broken at {} | {}",
                w[0], w[1]
            )));
        }
    }
    let r = s.u.rows;
    let c = s.v.rows;
    if s.u.mul(&s.u_inv)? != IntMatrix::identity(r) || s.v.mul(&s.v_inv)? != IntMatrix::identity(c) {
        return Err(LatticeError::Invariant("transform inverses are wrong".into()));
    }
    Ok(())
}

/// Row-style Hermite normal form: `U * A = H` with `U` unimodular, `H` in
/// row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            let pivot = (row..r)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&i, &j| h[(i, col)].abs().cmp(&h[(j, col)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(row, p);
            u.swap_rows(row, p);
            let mut done = true;
            for i in row + 1..r {
                let q = h[(i, col)].div_floor(&h[(row, col)]);
                h.add_row_multiple(i, row, &-&q);
                u.add_row_multiple(i, row, &-q);
                done &= h[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        for i in 0..row {
            let q = h[(i, col)].div_floor(&h[(row, col)]);
            h.add_row_multiple(i, row, &-&q);
            u.add_row_multiple(i, row, &-q);
        }
        row += 1;
    }
    (h, u)
}

/// A basis (HNF rows) of the lattice spanned by the rows of `a`.
pub fn row_lattice_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, _) = hermite_normal_form(a);
    h.to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    row_lattice_basis(a).len()
}

/// Invariant factors of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    /// Nontrivial factors `d_1 | d_2 | ...` (factors equal to 1 are dropped).
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
}

/// Structure of `Z^s / A^t Z^s` for a nonsingular square `A`.
pub fn quotient_structure(a: &IntMatrix) -> Result<QuotientStructure> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if det(a)?.is_zero() {
        return Err(LatticeError::Singular);
    }
    let snf = smith_normal_form(&a.transpose());
    let diag = snf.diagonal();
    let order = diag.iter().fold(BigInt::one(), |acc, d| acc * d);
    Ok(QuotientStructure {
        invariant_factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
        order,
    })
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve_integral(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    IntegralSolver::new(a).solve(b)
}

/// Precomputed Smith form for repeated `A x = b` solves against one matrix.
#[derive(Clone, Debug)]
pub struct IntegralSolver {
    snf: SmithForm,
    rows: usize,
}

impl IntegralSolver {
    pub fn new(a: &IntMatrix) -> Self {
        IntegralSolver {
            snf: smith_normal_form(a),
            rows: a.rows,
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if b.len() != self.rows {
            return Err(LatticeError::DimensionMismatch(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        // D y = U b, x = V y
        let ub = self.snf.u.mul_vec(b)?;
        let diag = self.snf.diagonal();
        let cols = self.snf.v.rows;
        let mut y = vec![BigInt::zero(); cols];
        for (i, rhs) in ub.iter().enumerate() {
            match diag.get(i) {
                Some(d) if !d.is_zero() => {
                    let (q, rem) = rhs.div_rem(d);
                    if !rem.is_zero() {
                        return Ok(None);
                    }
                    y[i] = q;
                }
                _ => {
                    if !rhs.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(self.snf.v.mul_vec(&y)?))
    }

    pub fn contains(&self, b: &[BigInt]) -> Result<bool> {
        Ok(self.solve(b)?.is_some())
    }

    pub fn smith(&self) -> &SmithForm {
        &self.snf
    }
}

/// Representatives of `Z^n / L` where `L` is the column lattice of the
/// nonsingular square matrix `B`, one per coset.
pub fn coset_representatives(b: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
    if !b.is_square() {
        return Err(LatticeError::NotSquare {
            rows: b.rows,
            cols: b.cols,
        });
    }
    let snf = smith_normal_form(b);
    let diag = snf.diagonal();
    if diag.iter().any(Zero::is_zero) {
        return Err(LatticeError::Singular);
    }
    // U B V = D, so U maps Z^n/L isomorphically onto Z^n/D Z^n.
    let mut reps = Vec::new();
    let mut y = vec![BigInt::zero(); diag.len()];
    loop {
        reps.push(snf.u_inv.mul_vec(&y)?);
        let mut k = 0;
        loop {
            if k == y.len() {
                return Ok(reps);
            }
            y[k] += 1;
            if y[k] < diag[k] {
                break;
            }
            y[k] = BigInt::zero();
            k += 1;
        }
    }
}
