//! Dense matrices over a [`FieldSpec`]: row reduction, determinants, minors
//! and the `n` cyclic `k × k` minors that cut out the open positroid variety.

use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.entries.hash(state);
    }
}

/// Reduced row echelon form of a matrix together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn new(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|&x| !field.contains(x)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub(crate) fn from_raw(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Matrix {
        debug_assert_eq!(entries.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix::from_raw(field, rows, cols, vec![FieldElement::ZERO; rows * cols])
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<FieldElement>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix over a prime field image from small integers.
    pub fn from_ints(field: &FieldSpec, rows: &[&[i64]]) -> Matrix {
        let r: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|row| row.iter().map(|&c| field.from_int(c)).collect())
            .collect();
        Matrix::from_rows(field, &r).expect("rectangular integer rows")
    }

    /// Matrix of the rotation `e_i ↦ e_{i+1}`, `e_{n-1} ↦ e_0`, acting on
    /// column vectors.
    pub fn rotation(field: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[((i + 1) % n) * n + i] = field.one();
        }
        m
    }

    pub fn diagonal(field: &FieldSpec, diag: &[FieldElement]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Entrywise image under `f`.
    pub fn map(&self, f: impl Fn(FieldElement) -> FieldElement) -> Matrix {
        Matrix::from_raw(
            &self.field,
            self.rows,
            self.cols,
            self.entries.iter().map(|&x| f(x)).collect(),
        )
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::BadIndex(format!("column {bad} of {}", self.cols)));
        }
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            entries.extend(cols.iter().map(|&c| self.get(i, c)));
        }
        Ok(Matrix::from_raw(&self.field, self.rows, cols.len(), entries))
    }

    /// Whether `self` is a nonzero scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        if !self.is_square() || self.rows == 0 {
            return false;
        }
        let d = self.get(0, 0);
        !d.is_zero()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { d } else { FieldElement::ZERO })
            })
    }

    pub fn rref(&self) -> RrefResult {
        let f = &self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, piv);
            let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
            a.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let factor = a.get(i, c);
                    if !factor.is_zero() {
                        a.add_row_multiple(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        RrefResult {
            rref: a,
            rank: r,
            pivot_cols: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut buf = self.entries.clone();
        Ok(det_in_place(&self.field, &mut buf, self.rows))
    }

    /// Determinant of the submatrix on `row_idx × col_idx`, in the order given.
    pub fn minor(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<FieldElement> {
        if row_idx.len() != col_idx.len() {
            return Err(Error::BadIndex(format!(
                "{} rows but {} columns selected",
                row_idx.len(),
                col_idx.len()
            )));
        }
        if let Some(&bad) = row_idx.iter().find(|&&r| r >= self.rows) {
            return Err(Error::BadIndex(format!("row {bad} of {}", self.rows)));
        }
        if let Some(&bad) = col_idx.iter().find(|&&c| c >= self.cols) {
            return Err(Error::BadIndex(format!("column {bad} of {}", self.cols)));
        }
        let k = row_idx.len();
        let mut buf = Vec::with_capacity(k * k);
        for &r in row_idx {
            buf.extend(col_idx.iter().map(|&c| self.get(r, c)));
        }
        Ok(det_in_place(&self.field, &mut buf, k))
    }

    /// The minors `Δ_{I_r}` for the cyclic windows `I_r = {r, …, r+k-1} mod n`
    /// (0-based), `r = 0..n`. Columns are taken in window order, so wrapped
    /// windows carry the sign of that ordering; only vanishing is meaningful.
    pub fn cyclic_minors(&self) -> Result<Vec<FieldElement>> {
        let (k, n) = (self.rows, self.cols);
        if k > n {
            return Err(Error::DimensionMismatch(format!(
                "cyclic minors need rows <= cols, got {k}x{n}"
            )));
        }
        let mut buf = vec![FieldElement::ZERO; k * k];
        Ok((0..n)
            .map(|r| {
                load_window(&self.entries, n, k, r, &mut buf);
                det_in_place(&self.field, &mut buf, k)
            })
            .collect())
    }

    /// Whether every cyclic minor is nonzero.
    pub fn cyclic_minors_nonzero(&self) -> bool {
        all_cyclic_minors_nonzero(&self.field, &self.entries, self.rows, self.cols)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, f.one());
        }
        let red = aug.rref();
        if red.pivot_cols.len() < n || red.pivot_cols[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        red.rref.select_columns(&cols)
    }

    /// Rows as nested coefficient vectors, for reports.
    pub fn to_coeff_rows(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| self.field.coeffs(x)).collect())
            .collect()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, s: FieldElement) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(r, j), s);
            self.set(r, j, v);
        }
    }

    /// `row[dst] += s * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, s: FieldElement) {
        for j in 0..self.cols {
            let v = self.field.add(self.get(dst, j), self.field.mul(s, self.get(src, j)));
            self.set(dst, j, v);
        }
    }
}

#[inline]
pub(crate) fn load_window(
    entries: &[FieldElement],
    n: usize,
    k: usize,
    start: usize,
    buf: &mut [FieldElement],
) {
    for i in 0..k {
        for b in 0..k {
            buf[i * k + b] = entries[i * n + (start + b) % n];
        }
    }
}

/// Whether all `n` cyclic `k × k` minors of the row-major `k × n` matrix
/// `entries` are nonzero.
pub fn all_cyclic_minors_nonzero(
    field: &FieldSpec,
    entries: &[FieldElement],
    k: usize,
    n: usize,
) -> bool {
    let mut buf = [FieldElement::ZERO; 144];
    let mut heap;
    let buf: &mut [FieldElement] = if k * k <= buf.len() {
        &mut buf[..k * k]
    } else {
        heap = vec![FieldElement::ZERO; k * k];
        &mut heap
    };
    if k > 3 && field.prefers_digits() {
        return all_cyclic_minors_nonzero_digits(field, entries, k, n);
    }
    let fraction_free = k > 3 && !field.has_fast_inverse();
    (0..n).all(|r| {
        load_window(entries, n, k, r, buf);
        if fraction_free {
            det_is_nonzero_in_place(field, buf, k)
        } else {
            !det_in_place(field, buf, k).is_zero()
        }
    })
}

/// [`all_cyclic_minors_nonzero`] on unpacked coefficient vectors, so each
/// entry is unpacked once rather than at every field operation.
///
/// One division-free Gauss-Jordan pass turns the matrix into `E·M` with `E`
/// invertible, where row `i` is zero in every pivot column except its own.
/// A window `I` then has a nonzero minor iff the block on the rows whose
/// pivot lies outside `I` and the non-pivot columns of `I` is nonsingular,
/// and that block has size at most `min(k, n-k)`.
fn all_cyclic_minors_nonzero_digits(
    field: &FieldSpec,
    entries: &[FieldElement],
    k: usize,
    n: usize,
) -> bool {
    let m = field.degree();
    let two_p = 2 * field.p();
    let mut a = vec![0u64; k * n * m];
    for (x, out) in entries.iter().zip(a.chunks_exact_mut(m)) {
        field.digits_into(*x, out);
    }
    let at = |i: usize, j: usize| (i * n + j) * m;
    let mut pv = [0u64; 64];
    let mut na = [0u64; 64];
    let mut t0 = [0u64; 64];
    let mut t1 = [0u64; 64];
    let mut row_of_col = vec![usize::MAX; n];
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        let Some(piv) = (r..k).find(|&i| !field.digits_are_zero(&a[at(i, c)..at(i, c) + m])) else {
            continue;
        };
        if piv != r {
            for j in 0..n {
                for d in 0..m {
                    a.swap(at(piv, j) + d, at(r, j) + d);
                }
            }
        }
        pv[..m].copy_from_slice(&a[at(r, c)..at(r, c) + m]);
        for i in (0..k).filter(|&i| i != r) {
            if field.digits_are_zero(&a[at(i, c)..at(i, c) + m]) {
                continue;
            }
            for d in 0..m {
                na[d] = two_p - a[at(i, c) + d];
            }
            for j in 0..n {
                if j == c {
                    a[at(i, j)..at(i, j) + m].fill(0);
                    continue;
                }
                // Row r vanishes left of c, so there the update is a scaling.
                field.digit_mul(&pv[..m], &a[at(i, j)..at(i, j) + m], &mut t0[..m]);
                if j > c {
                    field.digit_mul(&na[..m], &a[at(r, j)..at(r, j) + m], &mut t1[..m]);
                } else {
                    t1[..m].fill(0);
                }
                for d in 0..m {
                    a[at(i, j) + d] = t0[d] + t1[d];
                }
            }
        }
        row_of_col[c] = r;
        r += 1;
    }
    if r < k {
        return false;
    }
    let mut block = Vec::with_capacity(k * k * m);
    (0..n).all(|s| {
        let window: Vec<usize> = (0..k).map(|b| (s + b) % n).collect();
        let mut inside = vec![false; k];
        for &c in &window {
            if row_of_col[c] != usize::MAX {
                inside[row_of_col[c]] = true;
            }
        }
        let rows: Vec<usize> = (0..k).filter(|&i| !inside[i]).collect();
        let cols: Vec<usize> = window.into_iter().filter(|&c| row_of_col[c] == usize::MAX).collect();
        let t = rows.len();
        if t == 0 {
            return true;
        }
        block.clear();
        for &i in &rows {
            for &c in &cols {
                block.extend_from_slice(&a[at(i, c)..at(i, c) + m]);
            }
        }
        if t == 1 {
            return !field.digits_are_zero(&block);
        }
        digit_det_is_nonzero(field, &mut block, t, m)
    })
}

/// Division-free elimination on digit vectors with entries `< 2p`.
fn digit_det_is_nonzero(field: &FieldSpec, buf: &mut [u64], k: usize, m: usize) -> bool {
    let two_p = 2 * field.p();
    let at = |i: usize, j: usize| (i * k + j) * m;
    let mut pv = [0u64; 64];
    let mut na = [0u64; 64];
    let mut t0 = [0u64; 64];
    let mut t1 = [0u64; 64];
    for c in 0..k {
        let Some(piv) = (c..k).find(|&i| !field.digits_are_zero(&buf[at(i, c)..at(i, c) + m]))
        else {
            return false;
        };
        if piv != c {
            for j in c..k {
                for d in 0..m {
                    buf.swap(at(piv, j) + d, at(c, j) + d);
                }
            }
        }
        pv[..m].copy_from_slice(&buf[at(c, c)..at(c, c) + m]);
        for i in (c + 1)..k {
            if field.digits_are_zero(&buf[at(i, c)..at(i, c) + m]) {
                continue;
            }
            for d in 0..m {
                na[d] = two_p - buf[at(i, c) + d];
            }
            for j in (c + 1)..k {
                field.digit_mul(&pv[..m], &buf[at(i, j)..at(i, j) + m], &mut t0[..m]);
                field.digit_mul(&na[..m], &buf[at(c, j)..at(c, j) + m], &mut t1[..m]);
                for d in 0..m {
                    buf[at(i, j) + d] = t0[d] + t1[d];
                }
            }
        }
    }
    true
}

/// Whether the row-major `k × k` matrix in `buf` is nonsingular, by
/// elimination without division: each step replaces a row by a nonzero
/// multiple of itself minus a multiple of the pivot row, which scales the
/// determinant by a unit. `buf` is clobbered.
pub fn det_is_nonzero_in_place(field: &FieldSpec, buf: &mut [FieldElement], k: usize) -> bool {
    let f = field;
    for c in 0..k {
        let Some(piv) = (c..k).find(|&i| !buf[i * k + c].is_zero()) else {
            return false;
        };
        if piv != c {
            for j in c..k {
                buf.swap(piv * k + j, c * k + j);
            }
        }
        let pv = buf[c * k + c];
        for i in (c + 1)..k {
            let a = buf[i * k + c];
            if a.is_zero() {
                continue;
            }
            let na = f.neg(a);
            for j in (c + 1)..k {
                buf[i * k + j] = f.add(f.mul(pv, buf[i * k + j]), f.mul(na, buf[c * k + j]));
            }
        }
    }
    true
}

/// Determinant of the row-major `k × k` matrix in `buf`; `buf` is clobbered.
pub fn det_in_place(field: &FieldSpec, buf: &mut [FieldElement], k: usize) -> FieldElement {
    let f = field;
    match k {
        0 => return f.one(),
        1 => return buf[0],
        2 => return f.sub(f.mul(buf[0], buf[3]), f.mul(buf[1], buf[2])),
        3 => {
            let m = |i: usize, j: usize| buf[i * 3 + j];
            let t0 = f.mul(m(0, 0), f.sub(f.mul(m(1, 1), m(2, 2)), f.mul(m(1, 2), m(2, 1))));
            let t1 = f.mul(m(0, 1), f.sub(f.mul(m(1, 0), m(2, 2)), f.mul(m(1, 2), m(2, 0))));
            let t2 = f.mul(m(0, 2), f.sub(f.mul(m(1, 0), m(2, 1)), f.mul(m(1, 1), m(2, 0))));
            return f.add(f.sub(t0, t1), t2);
        }
        _ => {}
    }
    let mut det = f.one();
    for c in 0..k {
        let Some(piv) = (c..k).find(|&i| !buf[i * k + c].is_zero()) else {
            return FieldElement::ZERO;
        };
        if piv != c {
            for j in 0..k {
                buf.swap(piv * k + j, c * k + j);
            }
            det = f.neg(det);
        }
        let pv = buf[c * k + c];
        det = f.mul(det, pv);
        let inv = f.inv(pv).expect("nonzero pivot");
        for i in (c + 1)..k {
            let factor = f.mul(buf[i * k + c], inv);
            if factor.is_zero() {
                continue;
            }
            let nf = f.neg(factor);
            for j in c..k {
                buf[i * k + j] = f.add(buf[i * k + j], f.mul(nf, buf[c * k + j]));
            }
        }
    }
    det
}
