//! The anisotropic side. `F_q`-subspaces of `F_{q^n}`, identified with
//! `F_q^n` through the power basis `θ^0, …, θ^{n-1}`, are tested through the
//! cyclic minors of their Moore matrices; the anisotropic torus
//! `T'(F_q) = F_{q^n}^× / F_q^×` acts by multiplication; and the element
//! `g` with `g^{-1} Fr(g)` a rotation is built and checked explicitly.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{guard, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grassmann::{
    cells, check_enumeration, compact_key, compact_key_fits, unpack_compact_key, CellWalker,
    GrassmannPoint,
};
use crate::limits::Limits;
use crate::matrix::{all_cyclic_minors_nonzero, Matrix};

/// A tower `F_q ⊂ F_{q^n}` together with the coordinate identification
/// `F_q^n ≅ F_{q^n}`, `(a_0, …, a_{n-1}) ↦ Σ a_l θ^l`.
#[derive(Clone, Debug)]
pub struct TowerField {
    base: FieldSpec,
    big: FieldSpec,
    n: usize,
    /// `frob_basis[j][l][a] = (a θ^l)^{q^j}` for `a` a base-field index.
    frob_basis: Vec<Vec<Vec<FieldElement>>>,
    /// The same table as `F_p`-digit vectors, flattened, for odd `p` and
    /// fields too large for addition tables: entries are summed digit-wise
    /// and reduced once.
    frob_digits: Option<Vec<u64>>,
    /// Inverse of the coordinate map on `F_p`-digit vectors, row-major.
    to_coords: Vec<u64>,
}

impl TowerField {
    /// `F_q ⊂ F_{q^n}` for a prime power `q`.
    pub fn new(q: u64, n: usize, limits: &Limits) -> Result<TowerField> {
        let (p, e) = crate::field::prime_power(q)
            .ok_or_else(|| Error::BadFieldParameters(format!("{q} is not a prime power")))?;
        if n == 0 {
            return Err(Error::BadFieldParameters("extension degree 0".into()));
        }
        let base = FieldSpec::build_with_guard(p, e, 1, limits.max_field_order)?;
        let big = FieldSpec::build_with_guard(p, e * n, e, limits.max_field_order)?;
        let theta = big.generator();
        let mut frob_basis = Vec::with_capacity(n);
        for j in 0..n {
            let mut per_l: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
            let mut theta_l = big.one();
            for _ in 0..n {
                let img = big.frobenius(theta_l, j);
                per_l.push(
                    (0..q)
                        .map(|a| big.mul(big.frobenius(big.embed_base(a), j), img))
                        .collect(),
                );
                theta_l = big.mul(theta_l, theta);
            }
            frob_basis.push(per_l);
        }

        // Column (l, s) holds the F_p-digits of β^s θ^l.
        let fp = FieldSpec::build(p, 1, 1)?;
        let m = e * n;
        let mut cols = Vec::with_capacity(m);
        for l in 0..n {
            for s in 0..e {
                let x = frob_basis[0][l][p.pow(s as u32) as usize];
                cols.push(big.coeffs(x));
            }
        }
        let mut entries = vec![FieldElement::ZERO; m * m];
        for (c, col) in cols.iter().enumerate() {
            for (r, &d) in col.iter().enumerate() {
                entries[r * m + c] = FieldElement::from_index(d);
            }
        }
        let inv = Matrix::new(&fp, m, m, entries)?
            .inverse()
            .map_err(|_| Error::VerificationFailed("power basis is not an F_q-basis".into()))?;
        let to_coords = inv.entries().iter().map(|x| x.index()).collect();
        let frob_digits = (p != 2 && big.order() > 256).then(|| {
            frob_basis
                .iter()
                .flatten()
                .flatten()
                .flat_map(|&x| big.coeffs(x))
                .collect()
        });
        Ok(TowerField {
            base,
            big,
            n,
            frob_basis,
            frob_digits,
            to_coords,
        })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    pub fn q(&self) -> u64 {
        self.base.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `θ`, the root of the big field's modulus.
    pub fn theta(&self) -> FieldElement {
        self.big.generator()
    }

    /// `Σ a_l θ^l` for base-field coordinates `a`.
    pub fn from_coords(&self, coords: &[FieldElement]) -> FieldElement {
        self.frobenius_from_coords(coords, 0)
    }

    /// `(Σ a_l θ^l)^{q^j}`, using `F_q`-linearity of Frobenius.
    pub fn frobenius_from_coords(&self, coords: &[FieldElement], j: usize) -> FieldElement {
        let j = j % self.n;
        if let Some(digits) = &self.frob_digits {
            let m = self.big.degree();
            let q = self.q() as usize;
            let mut sums = [0u64; 64];
            let sums = &mut sums[..m];
            for (l, a) in coords.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let at = ((j * self.n + l) * q + a.index() as usize) * m;
                for (s, d) in sums.iter_mut().zip(&digits[at..at + m]) {
                    *s += d;
                }
            }
            return self.big.from_digit_sums(sums);
        }
        let table = &self.frob_basis[j];
        coords
            .iter()
            .enumerate()
            .fold(self.big.zero(), |acc, (l, a)| {
                if a.is_zero() {
                    acc
                } else {
                    self.big.add(acc, table[l][a.index() as usize])
                }
            })
    }

    /// Base-field coordinates of `x` in the basis `θ^l`.
    pub fn coords(&self, x: FieldElement) -> Vec<FieldElement> {
        let p = self.big.p();
        let m = self.big.degree();
        let e = self.base.degree();
        let d = self.big.coeffs(x);
        let mut out = Vec::with_capacity(self.n);
        for l in 0..self.n {
            let mut idx = 0u64;
            for s in (0..e).rev() {
                let row = &self.to_coords[(l * e + s) * m..(l * e + s + 1) * m];
                let v = row.iter().zip(&d).fold(0u64, |acc, (a, b)| (acc + a * b) % p);
                idx = idx * p + v;
            }
            out.push(FieldElement::from_index(idx));
        }
        out
    }

    /// The embedded base-field element with the given index.
    pub fn embed(&self, a: FieldElement) -> FieldElement {
        self.frob_basis[0][0][a.index() as usize]
    }
}

/// `k` elements of `F_{q^n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub elements: Vec<FieldElement>,
}

impl SubspaceBasis {
    /// Basis of the subspace whose coordinate rows are `p`'s canonical matrix.
    pub fn from_point(tower: &TowerField, p: &GrassmannPoint) -> SubspaceBasis {
        let n = p.n();
        SubspaceBasis {
            elements: p
                .canon()
                .entries()
                .chunks(n)
                .map(|row| tower.from_coords(row))
                .collect(),
        }
    }
}

/// `mat[i][j] = w_i^{q^j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreMatrix {
    pub mat: Matrix,
}

pub fn moore_matrix(tower: &TowerField, w: &SubspaceBasis) -> Result<MooreMatrix> {
    let big = tower.big();
    let n = tower.n();
    let rows: Vec<Vec<FieldElement>> = w
        .elements
        .iter()
        .map(|&x| (0..n).map(|j| big.frobenius(x, j)).collect())
        .collect();
    if rows.is_empty() {
        return Err(Error::DimensionMismatch("empty basis".into()));
    }
    Ok(MooreMatrix {
        mat: Matrix::from_rows(big, &rows)?,
    })
}

/// `Π_i Π_{c ∈ F_q^{i-1}} (c_1 w_1 + … + c_{i-1} w_{i-1} + w_i)`, which equals
/// the determinant of the leading `k × k` block of the Moore matrix.
pub fn moore_det_product(
    tower: &TowerField,
    w: &SubspaceBasis,
    limits: &Limits,
) -> Result<FieldElement> {
    let big = tower.big();
    let q = tower.q();
    let k = w.elements.len();
    if k > tower.n() {
        return Err(Error::DimensionMismatch(format!(
            "{k} elements in an extension of degree {}",
            tower.n()
        )));
    }
    let factors: BigUint = (0..k).map(|i| num_traits::pow(BigUint::from(q), i)).sum();
    if factors > BigUint::from(limits.max_moore_factors) {
        return Err(guard("Moore product factors", factors, limits.max_moore_factors));
    }
    let base: Vec<FieldElement> = (0..q)
        .map(|a| tower.embed(FieldElement::from_index(a)))
        .collect();
    let mut acc = big.one();
    for i in 0..k {
        // all F_q-combinations of w_0..w_{i-1}, by odometer
        let mut digits = vec![0usize; i];
        loop {
            let mut f = w.elements[i];
            for (l, &d) in digits.iter().enumerate() {
                f = big.add(f, big.mul(base[d], w.elements[l]));
            }
            acc = big.mul(acc, f);
            let Some(pos) = (0..i).rev().find(|&l| digits[l] + 1 < q as usize) else {
                break;
            };
            digits[pos] += 1;
            for d in digits.iter_mut().skip(pos + 1) {
                *d = 0;
            }
        }
    }
    Ok(acc)
}

/// Subspace and twisted-positroid counts for one tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCount {
    pub k: usize,
    pub n: usize,
    pub q: u64,
    pub subspace_count: BigUint,
    pub twisted_count: BigUint,
    /// Coordinate matrix of the first subspace failing the minor test.
    pub first_failure: Option<Matrix>,
}

/// Moore matrix of the coordinate rows `a` (row-major `k × n`) into `out`.
fn moore_from_coords(tower: &TowerField, a: &[FieldElement], k: usize, out: &mut [FieldElement]) {
    let n = tower.n();
    for i in 0..k {
        let row = &a[i * n..(i + 1) * n];
        for j in 0..n {
            out[i * n + j] = tower.frobenius_from_coords(row, j);
        }
    }
}

/// Whether the subspace with coordinate rows `a` lies in the twisted cell.
pub(crate) fn coords_in_twisted(tower: &TowerField, a: &[FieldElement], k: usize) -> bool {
    let mut buf = vec![FieldElement::ZERO; a.len()];
    moore_from_coords(tower, a, k, &mut buf);
    all_cyclic_minors_nonzero(tower.big(), &buf, k, tower.n())
}

/// Whether the subspace spanned by `p`'s rows has a Moore matrix with all
/// cyclic minors nonzero.
pub fn is_in_twisted_positroid(tower: &TowerField, p: &GrassmannPoint) -> bool {
    coords_in_twisted(tower, p.canon().entries(), p.k())
}

/// Enumerates every `k`-dimensional `F_q`-subspace of `F_{q^n}` and counts
/// those whose Moore matrix has all `n` cyclic minors nonzero.
pub fn enumerate_twisted_positroid(
    k: usize,
    tower: &TowerField,
    limits: &Limits,
) -> Result<TwistedCount> {
    let n = tower.n();
    let q = tower.q();
    check_enumeration(k, n, q, limits)?;
    let base = tower.base();
    let per_cell: Vec<(u64, u64, Option<Vec<FieldElement>>)> = cells(k, n)
        .par_iter()
        .map(|cell| {
            let mut walker = CellWalker::new(base, k, n, cell);
            let mut buf = vec![FieldElement::ZERO; k * n];
            let (mut total, mut pass, mut fail) = (0u64, 0u64, None);
            while walker.advance() {
                total += 1;
                moore_from_coords(tower, walker.current(), k, &mut buf);
                if all_cyclic_minors_nonzero(tower.big(), &buf, k, n) {
                    pass += 1;
                } else if fail.is_none() {
                    fail = Some(walker.current().to_vec());
                }
            }
            (total, pass, fail)
        })
        .collect();
    let mut subspace_count = 0u64;
    let mut twisted_count = 0u64;
    let mut first_failure = None;
    for (t, p, f) in per_cell {
        subspace_count += t;
        twisted_count += p;
        if first_failure.is_none() {
            first_failure = f;
        }
    }
    Ok(TwistedCount {
        k,
        n,
        q,
        subspace_count: subspace_count.into(),
        twisted_count: twisted_count.into(),
        first_failure: first_failure.map(|e| Matrix::from_raw(base, k, n, e)),
    })
}

/// `(q^n - 1) / (q - 1)`.
pub fn anisotropic_torus_order(q: u64, n: usize) -> BigUint {
    let q = BigUint::from(q);
    (num_traits::pow(q.clone(), n) - 1u32) / (q - 1u32)
}

/// An element of `F_{q^n}^× / F_q^×`, stored as the representative whose
/// first nonzero base-field coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnisotropicTorusElement {
    alpha: FieldElement,
}

impl AnisotropicTorusElement {
    pub fn new(tower: &TowerField, alpha: FieldElement) -> Result<AnisotropicTorusElement> {
        if alpha.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let coords = tower.coords(alpha);
        let lead = *coords.iter().find(|c| !c.is_zero()).expect("nonzero");
        let scale = tower
            .big()
            .inv(tower.embed(lead))
            .expect("nonzero base element");
        Ok(AnisotropicTorusElement {
            alpha: tower.big().mul(alpha, scale),
        })
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    /// `α · W`.
    pub fn apply(&self, tower: &TowerField, p: &GrassmannPoint) -> GrassmannPoint {
        multiply_subspace(tower, self.alpha, p.canon().entries(), p.k())
    }

    /// All `(q^n - 1)/(q - 1)` elements.
    pub fn all(tower: &TowerField) -> Vec<AnisotropicTorusElement> {
        let mut v: Vec<_> = tower
            .big()
            .nonzero_elements()
            .filter_map(|a| {
                let t = AnisotropicTorusElement::new(tower, a).ok()?;
                (t.alpha == a).then_some(t)
            })
            .collect();
        v.sort();
        v
    }
}

fn multiply_subspace(
    tower: &TowerField,
    alpha: FieldElement,
    coords: &[FieldElement],
    k: usize,
) -> GrassmannPoint {
    let n = tower.n();
    let big = tower.big();
    let mut entries = Vec::with_capacity(k * n);
    for row in coords.chunks(n) {
        let x = big.mul(alpha, tower.from_coords(row));
        entries.extend(tower.coords(x));
    }
    let m = Matrix::from_raw(tower.base(), k, n, entries);
    crate::grassmann::canonicalize(&m).expect("multiplication by a unit preserves dimension")
}

/// Sizes of the twisted cell and its `T'(F_q)`-quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnisotropicOrbits {
    pub torus_order: u64,
    pub twisted_count: u64,
    pub orbit_count: u64,
}

/// Walks every `T'(F_q)`-orbit of the twisted cell by repeated
/// multiplication with a primitive element `γ` of `F_{q^n}`. The image of `γ`
/// generates the cyclic group `T'(F_q)`, so an orbit of `(q^n-1)/(q-1)`
/// subspaces means a trivial stabilizer.
pub fn anisotropic_orbit_count(
    k: usize,
    tower: &TowerField,
    limits: &Limits,
) -> Result<AnisotropicOrbits> {
    let n = tower.n();
    let q = tower.q();
    if k.gcd(&n) != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    check_enumeration(k, n, q, limits)?;
    let torus_order: u64 = anisotropic_torus_order(q, n)
        .try_into()
        .map_err(|_| guard("anisotropic torus order", anisotropic_torus_order(q, n), u64::MAX))?;
    if !compact_key_fits(k, n, q) {
        return Err(guard(
            "packed subspace key",
            format!("2^{n} * {q}^{}", k * (n - k)),
            128,
        ));
    }
    let base = tower.base();
    let keys: Vec<u128> = cells(k, n)
        .par_iter()
        .map(|cell| {
            let mut walker = CellWalker::new(base, k, n, cell);
            let mut out = Vec::new();
            while walker.advance() {
                if coords_in_twisted(tower, walker.current(), k) {
                    let key = compact_key(walker.current(), &cell.pivots, n, q);
                    out.push(key.expect("checked above"));
                }
            }
            out
        })
        .flatten()
        .collect();
    let mut visited: HashMap<u128, bool> = keys.iter().map(|&key| (key, false)).collect();
    let gamma = tower.big().primitive_element();
    let mut orbit_count = 0u64;
    for &start in &keys {
        if visited[&start] {
            continue;
        }
        orbit_count += 1;
        let mut key = start;
        let mut size = 0u64;
        loop {
            *visited.get_mut(&key).expect("member") = true;
            size += 1;
            let coords = unpack_compact_key(key, k, n, q);
            let img = multiply_subspace(tower, gamma, &coords, k);
            key = img.compact_key().expect("checked above");
            if key == start {
                break;
            }
            match visited.get(&key) {
                Some(false) => {}
                Some(true) => {
                    return Err(Error::VerificationFailed(
                        "orbit walk re-entered a visited orbit".into(),
                    ))
                }
                None => {
                    return Err(Error::VerificationFailed(format!(
                        "T' moved a twisted-cell subspace out of the cell for (k,n,q) = ({k},{n},{q})"
                    )))
                }
            }
        }
        if size != torus_order {
            return Err(Error::NonFreeAction(format!(
                "T' orbit of size {size}, expected {torus_order}, for (k,n,q) = ({k},{n},{q})"
            )));
        }
    }
    let twisted_count = keys.len() as u64;
    if orbit_count * torus_order != twisted_count {
        return Err(Error::VerificationFailed(format!(
            "{orbit_count} orbits of size {torus_order} do not cover {twisted_count} subspaces"
        )));
    }
    Ok(AnisotropicOrbits {
        torus_order,
        twisted_count,
        orbit_count,
    })
}

/// Exhaustive check that no `α ∉ F_q^×` maps the subspace to itself.
pub fn anisotropic_stabilizer_is_trivial(
    tower: &TowerField,
    p: &GrassmannPoint,
    limits: &Limits,
) -> Result<bool> {
    let order = anisotropic_torus_order(tower.q(), tower.n());
    if order > BigUint::from(limits.max_torus_loop) {
        return Err(guard("anisotropic stabilizer loop", order, limits.max_torus_loop));
    }
    let one = tower.big().one();
    Ok(AnisotropicTorusElement::all(tower)
        .into_iter()
        .filter(|t| t.alpha() != one)
        .all(|t| t.apply(tower, p) != *p))
}

/// Direction of the rotation realized by the cocycle `g^{-1} Fr(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `ρ`, sending `e_i` to `e_{i+1}`.
    Forward,
    /// `ρ^{-1}`.
    Backward,
}

/// `g = B^{-1}` with `B[j][i] = θ_i^{q^j}` for the power basis `θ_i = θ^i`.
#[derive(Clone, Debug)]
pub struct LangElement {
    pub g: Matrix,
    pub basis: Vec<FieldElement>,
    /// `g^{-1} Fr(g)`.
    pub cocycle: Matrix,
    pub orientation: Orientation,
    /// The scalar `c` with `cocycle = c · ρ^{±1}`.
    pub scalar: FieldElement,
}

fn frobenius_entries(big: &FieldSpec, m: &Matrix, j: usize) -> Matrix {
    m.map(|x| big.frobenius(x, j))
}

/// The matrix of multiplication by `α` in the basis `θ^i`: column `i` holds
/// the coordinates of `α θ^i`, embedded in `F_{q^n}`.
pub fn multiplication_matrix(tower: &TowerField, alpha: FieldElement) -> Matrix {
    let n = tower.n();
    let big = tower.big();
    let mut m = Matrix::zeros(big, n, n);
    let theta = tower.theta();
    let mut theta_i = big.one();
    for i in 0..n {
        let coords = tower.coords(big.mul(alpha, theta_i));
        for (l, c) in coords.into_iter().enumerate() {
            m.set(l, i, tower.embed(c));
        }
        theta_i = big.mul(theta_i, theta);
    }
    m
}

/// Builds `g` and checks that (a) `g^{-1} Fr(g)` is a scalar multiple of
/// `ρ` or `ρ^{-1}`, (b) the product `c · Fr(c) ⋯ Fr^{n-1}(c)` of the cocycle
/// `c` is scalar, and (c) `g · diag(α, α^q, …) · g^{-1}` is the
/// multiplication-by-`α` matrix for a generator `α` of `F_{q^n}^×`.
pub fn construct_lang_g(tower: &TowerField) -> Result<LangElement> {
    let n = tower.n();
    let big = tower.big();
    let theta = tower.theta();
    let basis: Vec<FieldElement> = (0..n).map(|i| big.pow(theta, i as u64)).collect();
    let mut b = Matrix::zeros(big, n, n);
    for j in 0..n {
        for (i, &t) in basis.iter().enumerate() {
            b.set(j, i, big.frobenius(t, j));
        }
    }
    let g = b
        .inverse()
        .map_err(|_| Error::VerificationFailed("basis Moore matrix is singular".into()))?;
    let cocycle = b.mul(&frobenius_entries(big, &g, 1))?;

    let rho = Matrix::rotation(big, n);
    let rho_inv = rho.transpose();
    let scalar_multiple = |target: &Matrix| -> Option<FieldElement> {
        let c = cocycle.get(0, (0..n).find(|&i| !target.get(0, i).is_zero())?);
        let scaled = target.map(|x| big.mul(x, c));
        (scaled == cocycle && !c.is_zero()).then_some(c)
    };
    let (orientation, scalar) = if let Some(c) = scalar_multiple(&rho) {
        (Orientation::Forward, c)
    } else if let Some(c) = scalar_multiple(&rho_inv) {
        (Orientation::Backward, c)
    } else {
        return Err(Error::VerificationFailed(
            "g^{-1} Fr(g) is not a scalar multiple of a cyclic rotation".into(),
        ));
    };

    let mut closure = Matrix::identity(big, n);
    for j in 0..n {
        closure = closure.mul(&frobenius_entries(big, &cocycle, j))?;
    }
    if !closure.is_scalar() {
        return Err(Error::VerificationFailed(
            "twisted product of the cocycle is not scalar".into(),
        ));
    }

    let alpha = big.primitive_element();
    let diag: Vec<FieldElement> = (0..n).map(|j| big.frobenius(alpha, j)).collect();
    let conj = g.mul(&Matrix::diagonal(big, &diag))?.mul(&b)?;
    if conj != multiplication_matrix(tower, alpha) {
        return Err(Error::VerificationFailed(
            "g diag(α^{q^j}) g^{-1} differs from multiplication by α".into(),
        ));
    }

    Ok(LangElement {
        g,
        basis,
        cocycle,
        orientation,
        scalar,
    })
}
