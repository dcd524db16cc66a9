//! Dense exact linear algebra over a [`Field`].

use crate::error::{usage, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::modular;

/// Rational matrices with at least this many entries are reduced modulo primes.
const MODULAR_THRESHOLD: usize = 64;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of [`solve_linear`]: one particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose `j`-th column is `columns[j]`; `rows` is needed when there are no columns.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        self.field.is_one(v)
                    } else {
                        self.field.is_zero(v)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    f.mul_add_assign(&mut out.data[idx], a, b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.mul_add_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| self.field.mul(c, a)).collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            f.mul(a, other.get(k, l)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        if self.field.characteristic() == 0 && self.rows * self.cols >= MODULAR_THRESHOLD {
            if let Some((rows, pivots)) =
                modular::rref_rational(&self.field, &self.to_rows(), self.cols)
            {
                let m = Matrix {
                    field: self.field.clone(),
                    rows: self.rows,
                    cols: self.cols,
                    data: rows.into_iter().flatten().collect(),
                };
                return (m, pivots);
            }
        }
        self.rref_direct()
    }

    /// Gauss-Jordan elimination in the field itself.
    pub(crate) fn rref_direct(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut rows = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
            for x in rows[r][c..].iter_mut() {
                if !f.is_zero(x) {
                    *x = f.mul(x, &inv);
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || f.is_zero(&row[c]) {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !f.is_zero(y) {
                        let t = f.mul(&factor, y);
                        *x = f.sub(x, &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let m = Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: rows.into_iter().flatten().collect(),
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(&rows[i][c])) else {
                return f.zero();
            };
            if pr != c {
                rows.swap(c, pr);
                det = f.neg(&det);
            }
            det = f.mul(&det, &rows[c][c]);
            let inv = f.inv(&rows[c][c]).expect("nonzero pivot");
            let (top, bottom) = rows.split_at_mut(c + 1);
            let pivot = &top[c];
            for row in bottom {
                if f.is_zero(&row[c]) {
                    continue;
                }
                let factor = f.mul(&row[c], &inv);
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    let t = f.mul(&factor, y);
                    *x = f.sub(x, &t);
                }
            }
        }
        det
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let f = r.field();
    let mut is_pivot = vec![false; r.cols()];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..r.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); r.cols()];
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// Solve `m * x = b`. `Ok(None)` when the system is inconsistent.
pub fn solve_linear(m: &Matrix, b: &[Scalar]) -> Result<Option<Solution>> {
    if b.len() != m.rows() {
        return Err(usage!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            m.rows()
        ));
    }
    let f = m.field();
    let n = m.cols();
    let mut aug = Matrix::zeros(f, m.rows(), n + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n, bi.clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![f.zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = r.get(i, n).clone();
    }
    // Kernel of m: drop the augmented column.
    let mut core = Matrix::zeros(f, r.rows(), n);
    for i in 0..r.rows() {
        for j in 0..n {
            core.set(i, j, r.get(i, j).clone());
        }
    }
    let kernel = kernel_from_rref(&core, &pivots);
    Ok(Some(Solution { particular, kernel }))
}

/// Incrementally maintained reduced echelon basis of a subspace of `F^dim`.
///
/// Rows are kept fully reduced with leading coefficient one, so the basis
/// of a subspace is canonical given the ambient coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, dim: usize) -> Echelon {
        Echelon {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(
        field: &Field,
        dim: usize,
        vs: impl IntoIterator<Item = &'a Vec<Scalar>>,
    ) -> Echelon {
        let mut e = Echelon::new(field, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the span: zero at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    let t = f.mul(&c, y);
                    *x = f.sub(x, &t);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` with respect to [`Echelon::rows`], if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let f = &self.field;
        let mut rebuilt = vec![f.zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (x, y) in rebuilt.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    f.mul_add_assign(x, c, y);
                }
            }
        }
        if rebuilt.as_slice() == v {
            Some(coords)
        } else {
            None
        }
    }

    /// Add `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    let t = f.mul(&c, y);
                    *x = f.sub(x, &t);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    /// Columns that are not pivots; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Detects the first linear dependency in a sequence of vectors.
///
/// Feed vectors with [`DependencyFinder::push`]; once a vector lies in the
/// span of its predecessors the relation `v_d = sum c_i v_i` is returned as
/// the coefficient list `c_0 .. c_{d-1}`.
pub struct DependencyFinder {
    field: Field,
    // echelon rows (not back-reduced), their pivots and combination vectors
    rows: Vec<(Vec<Scalar>, usize, Vec<Scalar>)>,
    count: usize,
}

impl DependencyFinder {
    pub fn new(field: &Field) -> DependencyFinder {
        DependencyFinder {
            field: field.clone(),
            rows: Vec::new(),
            count: 0,
        }
    }

    pub fn push(&mut self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field.clone();
        let d = self.count;
        let mut r = v.to_vec();
        let mut combo = vec![f.zero(); d + 1];
        combo[d] = f.one();
        for (row, p, rc) in &self.rows {
            if f.is_zero(&r[*p]) {
                continue;
            }
            let c = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    let t = f.mul(&c, y);
                    *x = f.sub(x, &t);
                }
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                if !f.is_zero(y) {
                    let t = f.mul(&c, y);
                    *x = f.sub(x, &t);
                }
            }
        }
        match r.iter().position(|x| !f.is_zero(x)) {
            None => {
                // combo . (v_0..v_d) = 0 with combo[d] = 1
                combo.pop();
                Some(combo.iter().map(|c| f.neg(c)).collect())
            }
            Some(p) => {
                let inv = f.inv(&r[p]).expect("nonzero");
                let r: Vec<Scalar> = r.iter().map(|x| f.mul(x, &inv)).collect();
                let combo: Vec<Scalar> = combo.iter().map(|x| f.mul(x, &inv)).collect();
                self.rows.push((r, p, combo));
                for (_, _, rc) in self.rows.iter_mut() {
                    rc.resize(d + 1, f.zero());
                }
                self.count += 1;
                None
            }
        }
    }
}
