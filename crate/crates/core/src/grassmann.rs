//! `Gr(k,n)(F_q)` as row spans of `k × n` matrices in reduced row echelon
//! form, enumerated Schubert cell by Schubert cell.
//!
//! Cells are visited in lexicographic order of their pivot sets; within a
//! cell the free entries run as an odometer over the field's enumeration
//! order, last free entry fastest. This order is stable and lets callers
//! split work by cell.

use std::hash::{Hash, Hasher};

use num_bigint::BigUint;

use crate::error::{guard, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::limits::Limits;
use crate::matrix::Matrix;
use crate::qseries;

/// A Schubert cell: fixed pivot columns (0-based, ascending) and the number
/// of free entries of its echelon forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellIndex {
    pub pivots: Vec<usize>,
    pub free_entry_count: usize,
}

impl CellIndex {
    pub fn new(pivots: Vec<usize>, n: usize) -> CellIndex {
        let free_entry_count = free_positions(&pivots, n).len();
        CellIndex {
            pivots,
            free_entry_count,
        }
    }
}

/// A point of `Gr(k,n)` in its unique reduced row echelon form.
#[derive(Clone, Debug)]
pub struct GrassmannPoint {
    canon: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for GrassmannPoint {
    fn eq(&self, other: &Self) -> bool {
        self.canon == other.canon
    }
}

impl Eq for GrassmannPoint {}

impl Hash for GrassmannPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canon.hash(state);
    }
}

impl GrassmannPoint {
    pub fn canon(&self) -> &Matrix {
        &self.canon
    }

    /// Pivot columns, 0-based.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn k(&self) -> usize {
        self.canon.rows()
    }

    pub fn n(&self) -> usize {
        self.canon.cols()
    }

    pub fn field(&self) -> &FieldSpec {
        self.canon.field()
    }

    /// Compact hash key; `None` if `q^{kn}` does not fit in 128 bits.
    pub fn key(&self) -> Option<u128> {
        pack_key(self.canon.entries(), self.field().order())
    }

    /// Key from the pivot set and free entries only; see [`compact_key`].
    pub fn compact_key(&self) -> Option<u128> {
        compact_key(self.canon.entries(), &self.pivots, self.n(), self.field().order())
    }

    pub(crate) fn from_echelon(canon: Matrix, pivots: Vec<usize>) -> GrassmannPoint {
        GrassmannPoint { canon, pivots }
    }
}

/// Packs a row-major echelon matrix into a base-`q` integer.
pub fn pack_key(entries: &[FieldElement], order: u64) -> Option<u128> {
    let q = order as u128;
    let mut key: u128 = 0;
    for e in entries {
        key = key.checked_mul(q)?.checked_add(e.index() as u128)?;
    }
    Some(key)
}

/// Packs the free entries of an echelon form in base `q`, followed by the
/// pivot set as an `n`-bit mask. Fits in 128 bits whenever
/// `q^{k(n-k)} · 2^n` does, which is far more often than [`pack_key`].
pub fn compact_key(entries: &[FieldElement], pivots: &[usize], n: usize, order: u64) -> Option<u128> {
    if n >= 128 {
        return None;
    }
    let mut key: u128 = 0;
    for (i, j) in free_positions(pivots, n) {
        key = key
            .checked_mul(order as u128)?
            .checked_add(entries[i * n + j].index() as u128)?;
    }
    let mask = pivots.iter().fold(0u128, |m, &p| m | 1 << p);
    key.checked_mul(1u128 << n)?.checked_add(mask)
}

/// Whether every compact key of `Gr(k,n)(F_q)` fits in 128 bits.
pub fn compact_key_fits(k: usize, n: usize, order: u64) -> bool {
    if k > n || n >= 128 {
        return false;
    }
    let mut bound: u128 = 1 << n;
    for _ in 0..k * (n - k) {
        match bound.checked_mul(order as u128) {
            Some(b) => bound = b,
            None => return false,
        }
    }
    true
}

/// Inverse of [`compact_key`]: the row-major echelon form.
pub fn unpack_compact_key(key: u128, k: usize, n: usize, order: u64) -> Vec<FieldElement> {
    let mask = key & ((1u128 << n) - 1);
    let mut rest = key >> n;
    let pivots: Vec<usize> = (0..n).filter(|&c| mask >> c & 1 == 1).collect();
    let mut entries = vec![FieldElement::ZERO; k * n];
    for (i, &p) in pivots.iter().enumerate() {
        entries[i * n + p] = FieldElement::from_index(1);
    }
    let q = order as u128;
    for (i, j) in free_positions(&pivots, n).into_iter().rev() {
        entries[i * n + j] = FieldElement::from_index((rest % q) as u64);
        rest /= q;
    }
    entries
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Schubert cells of `Gr(k,n)` in enumeration order.
pub fn cells(k: usize, n: usize) -> Vec<CellIndex> {
    k_subsets(k, n)
        .into_iter()
        .map(|p| CellIndex::new(p, n))
        .collect()
}

/// Free `(row, col)` positions of the echelon forms with these pivots,
/// row-major.
pub fn free_positions(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                out.push((i, c));
            }
        }
    }
    out
}

/// `eval(q_binomial(n,k), q)`.
pub fn predicted_count(k: usize, n: usize, q: u64) -> BigUint {
    qseries::q_binomial(n, k)
        .expect("k <= n")
        .eval_at(&q.into())
        .to_biguint()
        .expect("point counts are nonnegative")
}

pub(crate) fn check_enumeration(k: usize, n: usize, q: u64, limits: &Limits) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::BadRange(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let count = predicted_count(k, n, q);
    if count > BigUint::from(limits.max_points) {
        return Err(guard("Grassmannian points", count, limits.max_points));
    }
    Ok(())
}

/// Walks the echelon forms of one Schubert cell in place.
pub struct CellWalker {
    order: u64,
    free: Vec<(usize, usize)>,
    digits: Vec<u64>,
    entries: Vec<FieldElement>,
    n: usize,
    started: bool,
    done: bool,
}

impl CellWalker {
    pub fn new(field: &FieldSpec, k: usize, n: usize, cell: &CellIndex) -> CellWalker {
        let mut entries = vec![FieldElement::ZERO; k * n];
        for (i, &p) in cell.pivots.iter().enumerate() {
            entries[i * n + p] = field.one();
        }
        let free = free_positions(&cell.pivots, n);
        CellWalker {
            order: field.order(),
            digits: vec![0; free.len()],
            free,
            entries,
            n,
            started: false,
            done: false,
        }
    }

    /// Moves to the next echelon form; `false` once the cell is exhausted.
    /// The first call positions the walker on the first point.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        for pos in (0..self.free.len()).rev() {
            let (r, c) = self.free[pos];
            self.digits[pos] += 1;
            if self.digits[pos] < self.order {
                self.entries[r * self.n + c] = FieldElement::from_index(self.digits[pos]);
                return true;
            }
            self.digits[pos] = 0;
            self.entries[r * self.n + c] = FieldElement::ZERO;
        }
        self.done = true;
        false
    }

    /// Row-major entries of the current echelon form.
    pub fn current(&self) -> &[FieldElement] {
        &self.entries
    }
}

/// Iterator over all of `Gr(k,n)(F)`.
pub struct GrassmannIter {
    field: FieldSpec,
    k: usize,
    n: usize,
    cells: std::vec::IntoIter<CellIndex>,
    current: Option<(CellWalker, Vec<usize>)>,
}

impl Iterator for GrassmannIter {
    type Item = GrassmannPoint;

    fn next(&mut self) -> Option<GrassmannPoint> {
        loop {
            if let Some((walker, pivots)) = &mut self.current {
                if walker.advance() {
                    let canon =
                        Matrix::from_raw(&self.field, self.k, self.n, walker.current().to_vec());
                    return Some(GrassmannPoint::from_echelon(canon, pivots.clone()));
                }
            }
            let cell = self.cells.next()?;
            let walker = CellWalker::new(&self.field, self.k, self.n, &cell);
            self.current = Some((walker, cell.pivots));
        }
    }
}

/// Every `k`-dimensional subspace of `F^n` exactly once, in cell order.
pub fn enumerate_grassmannian(
    k: usize,
    n: usize,
    field: &FieldSpec,
    limits: &Limits,
) -> Result<GrassmannIter> {
    check_enumeration(k, n, field.order(), limits)?;
    Ok(enumerate_unchecked(k, n, field))
}

pub(crate) fn enumerate_unchecked(k: usize, n: usize, field: &FieldSpec) -> GrassmannIter {
    GrassmannIter {
        field: field.clone(),
        k,
        n,
        cells: cells(k, n).into_iter(),
        current: None,
    }
}

/// Canonical form of the row span of a full-rank `k × n` matrix.
pub fn canonicalize(m: &Matrix) -> Result<GrassmannPoint> {
    let red = m.rref();
    if red.rank != m.rows() {
        return Err(Error::RankDeficient {
            rank: red.rank,
            expected: m.rows(),
        });
    }
    Ok(GrassmannPoint::from_echelon(red.rref, red.pivot_cols))
}

/// The rotation `ρ(e_i) = e_{i+1}`: column `j` moves to column `j+1 mod n`.
pub fn rho_apply(p: &GrassmannPoint) -> GrassmannPoint {
    rho_power(p, 1)
}

/// `ρ^s` applied to `p`.
pub fn rho_power(p: &GrassmannPoint, s: usize) -> GrassmannPoint {
    let (k, n) = (p.k(), p.n());
    let mut entries = vec![FieldElement::ZERO; k * n];
    for i in 0..k {
        for j in 0..n {
            entries[i * n + (j + s) % n] = p.canon.get(i, j);
        }
    }
    let m = Matrix::from_raw(p.field(), k, n, entries);
    canonicalize(&m).expect("rotation preserves rank")
}

/// Diagonal torus action: the row span of `canon · diag(t)`.
pub fn torus_apply(t: &[FieldElement], p: &GrassmannPoint) -> Result<GrassmannPoint> {
    if t.len() != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "torus element of length {} on Gr(_, {})",
            t.len(),
            p.n()
        )));
    }
    if let Some(i) = t.iter().position(|x| x.is_zero()) {
        return Err(Error::ZeroTorusCoordinate(i));
    }
    Ok(torus_apply_unchecked(t, p))
}

/// Scaling columns keeps the pivot pattern, so renormalizing each pivot back
/// to 1 gives the echelon form directly.
pub(crate) fn torus_apply_unchecked(t: &[FieldElement], p: &GrassmannPoint) -> GrassmannPoint {
    let f = p.field();
    let (k, n) = (p.k(), p.n());
    let mut entries = p.canon.entries().to_vec();
    for i in 0..k {
        let inv = f.inv(t[p.pivots[i]]).expect("nonzero torus coordinate");
        for j in 0..n {
            let v = entries[i * n + j];
            if !v.is_zero() {
                entries[i * n + j] = f.mul(f.mul(v, t[j]), inv);
            }
        }
    }
    GrassmannPoint::from_echelon(Matrix::from_raw(f, k, n, entries), p.pivots.clone())
}
