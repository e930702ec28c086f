//! Prime fields and their extensions `F_{p^m}`, with a designated base subfield
//! `F_q`, `q = p^e`, so that the same structure describes a tower
//! `F_q ⊂ F_{q^n}`.
//!
//! Elements are dense coefficient vectors in the power basis of a root `θ` of
//! the modulus. They are stored packed as the integer `Σ c_i p^i`, which is
//! also their position in the enumeration order.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};

/// Default bound on `p^m` for field construction.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 25;

const MAX_DEGREE: usize = 48;
const TABLE_MAX_ORDER: u64 = 256;
const LOG_TABLE_MAX_ORDER: u64 = 1 << 16;

/// An element of some [`FieldSpec`]. Plain data; the field it belongs to is
/// tracked by the caller.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Position in the enumeration order, i.e. `Σ c_i p^i`.
    #[inline]
    pub fn index(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn from_index(index: u64) -> Self {
        FieldElement(index)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Binary operation selector for [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Serializable description of a field: `{p, m, base_degree, modulus}` with
/// the modulus listed low-to-high.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub m: usize,
    pub base_degree: usize,
    pub modulus: Vec<u64>,
}

/// Division by a fixed `p` through a precomputed reciprocal.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Barrett {
    p: u64,
    magic: u64,
}

impl Barrett {
    pub(crate) fn new(p: u64) -> Barrett {
        Barrett {
            p,
            magic: u64::MAX / p,
        }
    }

    /// `(x / p, x % p)`. The estimate is low by at most two.
    #[inline]
    pub(crate) fn divrem(self, x: u64) -> (u64, u64) {
        let mut q = ((x as u128 * self.magic as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
            q += 1;
        }
        (q, r)
    }

    #[inline]
    pub(crate) fn rem(self, x: u64) -> u64 {
        self.divrem(x).1
    }
}

/// Raw polynomial arithmetic modulo the field modulus.
struct Arith {
    p: u64,
    bar: Barrett,
    m: usize,
    /// Monic modulus, low-to-high, length `m + 1`.
    modulus: Vec<u64>,
    /// For `p == 2`: the modulus as a bit mask.
    modulus_bits: u64,
}

type Digits = [u64; MAX_DEGREE];

impl Arith {
    fn new(p: u64, modulus: Vec<u64>) -> Self {
        let m = modulus.len() - 1;
        let modulus_bits = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |b, (i, &c)| b | (c << i))
        } else {
            0
        };
        Arith {
            p,
            bar: Barrett::new(p),
            m,
            modulus,
            modulus_bits,
        }
    }

    #[inline]
    fn unpack(&self, x: u64) -> Digits {
        let mut d = [0u64; MAX_DEGREE];
        let mut v = x;
        for slot in d.iter_mut().take(self.m) {
            let (q, r) = self.bar.divrem(v);
            *slot = r;
            v = q;
        }
        d
    }

    #[inline]
    fn pack(&self, d: &[u64]) -> u64 {
        let mut v = 0u64;
        for i in (0..self.m).rev() {
            v = v * self.p + d[i];
        }
        v
    }

    #[inline]
    fn add(&self, x: u64, y: u64) -> u64 {
        if self.m == 1 {
            let s = x + y;
            return if s >= self.p { s - self.p } else { s };
        }
        if self.p == 2 {
            return x ^ y;
        }
        let (a, b) = (self.unpack(x), self.unpack(y));
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.m {
            let s = a[i] + b[i];
            out[i] = if s >= self.p { s - self.p } else { s };
        }
        self.pack(&out)
    }

    #[inline]
    fn neg(&self, x: u64) -> u64 {
        if self.m == 1 {
            return if x == 0 { 0 } else { self.p - x };
        }
        if self.p == 2 {
            return x;
        }
        let mut a = self.unpack(x);
        for c in a.iter_mut().take(self.m) {
            if *c != 0 {
                *c = self.p - *c;
            }
        }
        self.pack(&a)
    }

    #[inline]
    fn mul(&self, x: u64, y: u64) -> u64 {
        if self.m == 1 {
            return ((x as u128 * y as u128) % self.p as u128) as u64;
        }
        if self.p == 2 {
            return self.mul_binary(x, y);
        }
        let (a, b) = (self.unpack(x), self.unpack(y));
        self.pack(&self.mul_digits(&a, &b))
    }

    fn mul_binary(&self, x: u64, y: u64) -> u64 {
        let mut prod: u128 = 0;
        let mut yy = y;
        let mut shift = 0;
        while yy != 0 {
            if yy & 1 == 1 {
                prod ^= (x as u128) << shift;
            }
            yy >>= 1;
            shift += 1;
        }
        let m = self.m;
        if m == 0 {
            return 0;
        }
        for d in (m..(2 * m - 1)).rev() {
            if (prod >> d) & 1 == 1 {
                prod ^= (self.modulus_bits as u128) << (d - m);
            }
        }
        prod as u64
    }

    /// Schoolbook product with lazy reduction: `p^m < 2^50` and `m >= 2` give
    /// `p < 2^25`, so every partial sum below stays far from `2^64`.
    fn mul_digits(&self, a: &Digits, b: &Digits) -> Digits {
        let (p, m) = (self.p, self.m);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += a[i] * b[j];
            }
        }
        for d in (m..(2 * m - 1)).rev() {
            let c = self.bar.rem(prod[d]);
            if c == 0 {
                continue;
            }
            // x^d = x^{d-m} * x^m and x^m = -Σ modulus_i x^i.
            let nc = p - c;
            for i in 0..m {
                prod[d - m + i] += nc * self.modulus[i];
            }
        }
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..m {
            out[i] = self.bar.rem(prod[i]);
        }
        out
    }

    fn pow(&self, x: u64, mut e: u64) -> u64 {
        let mut base = x;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

struct Tables {
    order: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Discrete log and antilog tables relative to the primitive element.
struct LogTables {
    log: Vec<u32>,
    /// `exp[i] = γ^i` for `i < 2(order-1)`, so sums of two logs need no reduction.
    exp: Vec<u64>,
}

struct Inner {
    arith: Arith,
    logs: Option<LogTables>,
    base_degree: usize,
    order: u64,
    base_modulus: Vec<u64>,
    base_embedding: Option<FieldElement>,
    /// `β^i` for `i < base_degree`, where `β` generates the base subfield.
    base_powers: Vec<FieldElement>,
    /// `frob[j]` is the `F_p`-matrix (row-major, `m × m`) of `x ↦ x^{q^j}`.
    frob: Vec<Vec<u64>>,
    /// Column bit masks of `frob[j]`, used when `p == 2`.
    frob_bits: Vec<Vec<u64>>,
    tables: Option<Tables>,
    primitive: FieldElement,
    order_minus_one_primes: Vec<u64>,
}

/// An explicit finite field `F_{p^m}` with a designated base subfield
/// `F_{p^e}`. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p())
            .field("m", &self.degree())
            .field("base_degree", &self.base_degree())
            .field("modulus", &self.modulus())
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p() == other.p()
                && self.base_degree() == other.base_degree()
                && self.modulus() == other.modulus())
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^e` into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut e = 0;
    let mut v = q;
    while v > 1 {
        v /= p;
        e += 1;
    }
    Some((p, e))
}

fn checked_order(p: u64, m: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..m {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

// Dense polynomials over F_p, low-to-high, used only during construction.

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() > db {
        for d in (db..r.len()).rev() {
            let c = r[d] % p;
            if c != 0 {
                for i in 0..=db {
                    r[d - db + i] = (r[d - db + i] + p - c * b[i] % p) % p;
                }
            }
        }
        r.truncate(db);
    }
    poly_trim(&mut r);
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if f[0] % p == 0 {
        return false;
    }
    for dg in 1..=d / 2 {
        let count = p.pow(dg as u32);
        let mut g = vec![0u64; dg + 1];
        g[dg] = 1;
        for idx in 0..count {
            let mut v = idx;
            for c in g.iter_mut().take(dg) {
                *c = v % p;
                v /= p;
            }
            if poly_rem_monic(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over `F_p`, comparing coefficient lists read from degree 0 upwards.
pub fn smallest_irreducible(p: u64, m: usize) -> Option<Vec<u64>> {
    let count = checked_order(p, m)?;
    let mut f = vec![0u64; m + 1];
    f[m] = 1;
    for idx in 0..count {
        // most significant base-p digit of idx is the constant term
        let mut v = idx;
        for i in (0..m).rev() {
            f[i] = v % p;
            v /= p;
        }
        if is_irreducible(&f, p) {
            return Some(f);
        }
    }
    None
}

impl FieldSpec {
    /// Builds `F_{p^m}` with base subfield of degree `base_degree`, using the
    /// default size guard.
    pub fn build(p: u64, m: usize, base_degree: usize) -> Result<FieldSpec> {
        Self::build_with_guard(p, m, base_degree, DEFAULT_MAX_ORDER)
    }

    /// The prime field or extension `F_q` for a prime power `q`, viewed over
    /// its prime field.
    pub fn for_order(q: u64) -> Result<FieldSpec> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::BadFieldParameters(format!("{q} is not a prime power")))?;
        Self::build(p, e, 1)
    }

    pub fn build_with_guard(
        p: u64,
        m: usize,
        base_degree: usize,
        max_order: u64,
    ) -> Result<FieldSpec> {
        Self::check_params(p, m, base_degree, max_order)?;
        let modulus = smallest_irreducible(p, m).ok_or(Error::NoEmbeddingFound)?;
        Self::assemble(p, modulus, base_degree)
    }

    /// Rebuilds a field from a (possibly untrusted) descriptor, validating
    /// every field of it.
    pub fn from_descriptor(d: &FieldDescriptor, max_order: u64) -> Result<FieldSpec> {
        Self::check_params(d.p, d.m, d.base_degree, max_order)?;
        if d.modulus.len() != d.m + 1 {
            return Err(Error::BadFieldParameters(format!(
                "modulus has {} coefficients, expected {}",
                d.modulus.len(),
                d.m + 1
            )));
        }
        if d.modulus[d.m] != 1 {
            return Err(Error::BadFieldParameters("modulus is not monic".into()));
        }
        if d.modulus.iter().any(|&c| c >= d.p) {
            return Err(Error::BadFieldParameters(
                "modulus coefficient out of range".into(),
            ));
        }
        if !is_irreducible(&d.modulus, d.p) {
            return Err(Error::BadFieldParameters("modulus is reducible".into()));
        }
        Self::assemble(d.p, d.modulus.clone(), d.base_degree)
    }

    fn check_params(p: u64, m: usize, base_degree: usize, max_order: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || base_degree == 0 || m % base_degree != 0 {
            return Err(Error::BadFieldParameters(format!(
                "need m >= 1 and base_degree | m (m = {m}, base_degree = {base_degree})"
            )));
        }
        if m > MAX_DEGREE {
            return Err(guard("extension degree", m, MAX_DEGREE as u64));
        }
        match checked_order(p, m) {
            Some(order) if order <= max_order && order < (1u64 << 50) => Ok(()),
            _ => Err(guard(
                "field order",
                format!("{p}^{m}"),
                max_order.min(1 << 50),
            )),
        }
    }

    fn assemble(p: u64, modulus: Vec<u64>, base_degree: usize) -> Result<FieldSpec> {
        let m = modulus.len() - 1;
        let order = checked_order(p, m).expect("checked by caller");
        let arith = Arith::new(p, modulus);
        let tables = if m > 1 && order <= TABLE_MAX_ORDER {
            Some(build_tables(&arith, order as usize))
        } else {
            None
        };

        let order_minus_one_primes = prime_factors(order - 1);
        let primitive = (1..order)
            .find(|&x| {
                order_minus_one_primes
                    .iter()
                    .all(|&r| arith.pow(x, (order - 1) / r) != 1)
            })
            .map(FieldElement)
            .ok_or(Error::NoEmbeddingFound)?;

        let q = p.pow(base_degree as u32);
        let n = m / base_degree;

        // Frobenius x ↦ x^{q^j} as F_p-matrices.
        let theta = if m == 1 { 0 } else { p }; // packed index of θ
        let mut frob = Vec::with_capacity(n);
        let mut frob_bits = Vec::with_capacity(n);
        let mut qj = 1u64;
        for _ in 0..n {
            let img_theta = arith.pow(theta, qj);
            let mut mat = vec![0u64; m * m];
            let mut bits = vec![0u64; m];
            let mut col = 1u64;
            for c in 0..m {
                let d = arith.unpack(col);
                for r in 0..m {
                    mat[r * m + c] = d[r];
                }
                bits[c] = col;
                col = arith.mul(col, img_theta);
            }
            frob.push(mat);
            frob_bits.push(bits);
            qj = qj.saturating_mul(q);
        }

        let (base_modulus, base_embedding) = if base_degree > 1 {
            let bm = smallest_irreducible(p, base_degree).ok_or(Error::NoEmbeddingFound)?;
            // Roots of bm lie in the subfield of order q, generated by γ^{(order-1)/(q-1)}.
            let g = arith.pow(primitive.0, (order - 1) / (q - 1));
            let eval = |x: u64| {
                let mut acc = 0u64;
                for &c in bm.iter().rev() {
                    acc = arith.add(arith.mul(acc, x), c);
                }
                acc
            };
            let mut best: Option<u64> = None;
            let mut x = g;
            for _ in 0..(q - 1) {
                if eval(x) == 0 && best.is_none_or(|b| x < b) {
                    best = Some(x);
                }
                x = arith.mul(x, g);
            }
            let beta = best.ok_or(Error::NoEmbeddingFound)?;
            (bm, Some(FieldElement(beta)))
        } else {
            (vec![0, 1], None)
        };
        let mut base_powers = Vec::with_capacity(base_degree);
        if let Some(beta) = base_embedding {
            let mut acc = 1u64;
            for _ in 0..base_degree {
                base_powers.push(FieldElement(acc));
                acc = arith.mul(acc, beta.0);
            }
        } else {
            base_powers.push(FieldElement(1));
        }

        let logs = if m > 1 && order > TABLE_MAX_ORDER && order <= LOG_TABLE_MAX_ORDER {
            Some(build_log_tables(&arith, order, primitive.0))
        } else {
            None
        };

        Ok(FieldSpec(Arc::new(Inner {
            arith,
            logs,
            base_degree,
            order,
            base_modulus,
            base_embedding,
            base_powers,
            frob,
            frob_bits,
            tables,
            primitive,
            order_minus_one_primes,
        })))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            m: self.degree(),
            base_degree: self.base_degree(),
            modulus: self.modulus().to_vec(),
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.0.arith.p
    }

    /// Extension degree `m` over the prime field.
    #[inline]
    pub fn degree(&self) -> usize {
        self.0.arith.m
    }

    #[inline]
    pub fn base_degree(&self) -> usize {
        self.0.base_degree
    }

    /// Order of the base subfield, `q = p^e`.
    pub fn q(&self) -> u64 {
        self.p().pow(self.base_degree() as u32)
    }

    /// Degree over the base subfield, `n = m / e`.
    pub fn extension_degree(&self) -> usize {
        self.degree() / self.base_degree()
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.arith.modulus
    }

    pub fn base_modulus(&self) -> &[u64] {
        &self.0.base_modulus
    }

    pub fn base_embedding(&self) -> Option<FieldElement> {
        self.0.base_embedding
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The root `θ` of the modulus (the element `x`).
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            // modulus x - c; θ = c
            FieldElement((self.p() - self.modulus()[0]) % self.p())
        } else {
            FieldElement(self.p())
        }
    }

    /// A generator of the multiplicative group (smallest in enumeration order).
    pub fn primitive_element(&self) -> FieldElement {
        self.0.primitive
    }

    #[inline]
    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.0.order
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.order() {
            Ok(FieldElement(index))
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Element with the given power-basis coordinates (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.degree() || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement(self.0.arith.pack(coeffs)))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        self.0.arith.unpack(x.0)[..self.degree()].to_vec()
    }

    /// The element whose coefficients are `sums` reduced mod `p`. Lets hot
    /// loops add many elements digit-wise and reduce once.
    #[inline]
    pub(crate) fn from_digit_sums(&self, sums: &mut [u64]) -> FieldElement {
        let bar = self.0.arith.bar;
        for c in sums.iter_mut() {
            *c = bar.rem(*c);
        }
        FieldElement(self.0.arith.pack(sums))
    }

    /// Whether hot loops should work on unpacked digit vectors: odd
    /// characteristic, no lookup tables.
    pub(crate) fn prefers_digits(&self) -> bool {
        self.p() != 2 && self.degree() > 1 && !self.has_fast_inverse()
    }

    /// Writes the `m` coefficients of `x` to `out`.
    #[inline]
    pub(crate) fn digits_into(&self, x: FieldElement, out: &mut [u64]) {
        let bar = self.0.arith.bar;
        let mut v = x.0;
        for slot in out.iter_mut() {
            let (q, r) = bar.divrem(v);
            *slot = r;
            v = q;
        }
    }

    /// Product of digit vectors with entries `< 2p`; the result has entries
    /// `< p`.
    #[inline]
    pub(crate) fn digit_mul(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let ar = &self.0.arith;
        let m = ar.m;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += a[i] * b[j];
            }
        }
        for d in (m..(2 * m - 1)).rev() {
            let c = ar.bar.rem(prod[d]);
            if c == 0 {
                continue;
            }
            let nc = ar.p - c;
            for i in 0..m {
                prod[d - m + i] += nc * ar.modulus[i];
            }
        }
        for i in 0..m {
            out[i] = ar.bar.rem(prod[i]);
        }
    }

    /// Whether a digit vector with entries `< 2p` represents zero.
    #[inline]
    pub(crate) fn digits_are_zero(&self, a: &[u64]) -> bool {
        let p = self.p();
        a.iter().all(|&d| d == 0 || d == p)
    }

    /// Whether `inv` is a table lookup rather than an exponentiation.
    pub(crate) fn has_fast_inverse(&self) -> bool {
        self.0.tables.is_some() || self.0.logs.is_some()
    }

    /// The image of an integer under `Z → F_p ⊂ F`.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.p() as i64) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.order()).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.order()).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.add[x.0 as usize * t.order + y.0 as usize] as u64);
        }
        FieldElement(self.0.arith.add(x.0, y.0))
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.neg[x.0 as usize] as u64);
        }
        FieldElement(self.0.arith.neg(x.0))
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.mul[x.0 as usize * t.order + y.0 as usize] as u64);
        }
        if let Some(l) = &self.0.logs {
            if x.0 == 0 || y.0 == 0 {
                return FieldElement::ZERO;
            }
            return FieldElement(l.exp[(l.log[x.0 as usize] + l.log[y.0 as usize]) as usize]);
        }
        FieldElement(self.0.arith.mul(x.0, y.0))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        let mut base = x;
        let mut acc = self.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return None;
        }
        if let Some(t) = &self.0.tables {
            return Some(FieldElement(t.inv[x.0 as usize] as u64));
        }
        if let Some(l) = &self.0.logs {
            let n = self.order() - 1;
            return Some(FieldElement(l.exp[(n - l.log[x.0 as usize] as u64) as usize]));
        }
        Some(self.pow(x, self.order() - 2))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let yi = self.inv(y).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(x, yi))
    }

    /// Checked binary arithmetic: both operands must belong to this field.
    pub fn arith(&self, x: FieldElement, y: FieldElement, op: ArithOp) -> Result<FieldElement> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::FieldMismatch);
        }
        match op {
            ArithOp::Add => Ok(self.add(x, y)),
            ArithOp::Sub => Ok(self.sub(x, y)),
            ArithOp::Mul => Ok(self.mul(x, y)),
            ArithOp::Div => self.div(x, y),
        }
    }

    /// `x ↦ x^{q^j}` with `q` the order of the base subfield.
    pub fn frobenius(&self, x: FieldElement, j: usize) -> FieldElement {
        let n = self.extension_degree();
        let j = j % n;
        if j == 0 || x.is_zero() {
            return x;
        }
        let a = &self.0.arith;
        let m = a.m;
        if a.p == 2 {
            let cols = &self.0.frob_bits[j];
            let mut out = 0u64;
            let mut v = x.0;
            let mut c = 0;
            while v != 0 {
                if v & 1 == 1 {
                    out ^= cols[c];
                }
                v >>= 1;
                c += 1;
            }
            return FieldElement(out);
        }
        let mat = &self.0.frob[j];
        let d = a.unpack(x.0);
        let mut out = [0u64; MAX_DEGREE];
        for (r, slot) in out.iter_mut().enumerate().take(m) {
            let row = &mat[r * m..(r + 1) * m];
            let mut s = 0u64;
            for c in 0..m {
                s = (s + row[c] * d[c]) % a.p;
            }
            *slot = s;
        }
        FieldElement(a.pack(&out))
    }

    /// Whether `x` lies in the designated base subfield `F_q`.
    pub fn is_base(&self, x: FieldElement) -> bool {
        self.frobenius(x, 1) == x
    }

    /// Image in this field of the base-field element with the given index
    /// (coordinates in the power basis of the base modulus root).
    pub fn embed_base(&self, base_index: u64) -> FieldElement {
        let p = self.p();
        let mut v = base_index;
        let mut acc = self.zero();
        for &b in &self.0.base_powers {
            let c = v % p;
            v /= p;
            if c != 0 {
                acc = self.add(acc, self.mul(FieldElement(c), b));
            }
        }
        acc
    }

    /// The `q` elements of the base subfield, listed by base-field index.
    pub fn base_elements(&self) -> Vec<FieldElement> {
        (0..self.q()).map(|i| self.embed_base(i)).collect()
    }

    /// Exact multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Option<u64> {
        if x.is_zero() || !self.contains(x) {
            return None;
        }
        let mut ord = self.order() - 1;
        for &r in &self.0.order_minus_one_primes {
            while ord % r == 0 && self.pow(x, ord / r) == self.one() {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// The element of exact multiplicative order `n` that comes first in
    /// enumeration order.
    pub fn primitive_nth_root(&self, n: u64) -> Result<FieldElement> {
        let big = self.order() - 1;
        if n == 0 || big % n != 0 {
            return Err(Error::NoSuchRoot {
                n,
                order: self.order(),
            });
        }
        let h = self.pow(self.primitive_element(), big / n);
        let mut best: Option<FieldElement> = None;
        let mut x = self.one();
        for j in 0..n {
            if num_integer::gcd(j, n) == 1 || n == 1 {
                if best.is_none_or(|b| x < b) {
                    best = Some(x);
                }
            }
            x = self.mul(x, h);
        }
        best.ok_or(Error::NoSuchRoot {
            n,
            order: self.order(),
        })
    }

    /// Human-readable polynomial form of an element, e.g. `1+2x^2`.
    pub fn format(&self, x: FieldElement) -> String {
        let c = self.coeffs(x);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

fn build_tables(arith: &Arith, order: usize) -> Tables {
    let mut add = vec![0u8; order * order];
    let mut mul = vec![0u8; order * order];
    let mut neg = vec![0u8; order];
    let mut inv = vec![0u8; order];
    for x in 0..order {
        neg[x] = arith.neg(x as u64) as u8;
        for y in 0..order {
            add[x * order + y] = arith.add(x as u64, y as u64) as u8;
            let prod = arith.mul(x as u64, y as u64);
            mul[x * order + y] = prod as u8;
            if prod == 1 {
                inv[x] = y as u8;
            }
        }
    }
    Tables {
        order,
        add,
        mul,
        neg,
        inv,
    }
}

fn build_log_tables(arith: &Arith, order: u64, primitive: u64) -> LogTables {
    let n = (order - 1) as usize;
    let mut log = vec![0u32; order as usize];
    let mut exp = vec![0u64; 2 * n];
    let mut x = 1u64;
    for i in 0..n {
        exp[i] = x;
        exp[i + n] = x;
        log[x as usize] = i as u32;
        x = arith.mul(x, primitive);
    }
    LogTables { log, exp }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldSpec::build(3, 1, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn f4_modulus() {
        let f = FieldSpec::build(2, 2, 1).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // exhaustive: x^2+x+1 is the only irreducible monic quadratic over F_2
        let irreducible: Vec<_> = (0..4u64)
            .map(|i| vec![i & 1, i >> 1, 1])
            .filter(|f| is_irreducible(f, 2))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn f16_over_f4_embedding_found_by_search() {
        let f = FieldSpec::build(2, 4, 2).unwrap();
        let beta = f.base_embedding().unwrap();
        // exhaustive oracle: smallest root of x^2+x+1 in F_16
        let first_root = f
            .elements()
            .find(|&x| f.add(f.add(f.mul(x, x), x), f.one()).is_zero())
            .unwrap();
        assert_eq!(beta, first_root);
        assert_eq!(f.q(), 4);
        assert_eq!(f.extension_degree(), 2);
    }

    #[test]
    fn basic_arith_examples() {
        let f4 = FieldSpec::build(2, 2, 1).unwrap();
        let x = f4.generator();
        assert_eq!(f4.coeffs(f4.mul(x, x)), vec![1, 1]);
        assert_eq!(f4.div(x, x).unwrap(), f4.one());

        let f5 = FieldSpec::build(5, 1, 1).unwrap();
        assert_eq!(f5.mul(f5.from_int(2), f5.from_int(3)), f5.one());
        assert_eq!(
            f5.arith(f5.one(), f5.zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            f5.arith(FieldElement::from_index(7), f5.one(), ArithOp::Add),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn guards_and_bad_parameters() {
        assert_eq!(FieldSpec::build(4, 1, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldSpec::build_with_guard(2, 20, 1, 1 << 16),
            Err(Error::SizeGuardExceeded { .. })
        ));
        assert!(matches!(
            FieldSpec::build(2, 3, 2),
            Err(Error::BadFieldParameters(_))
        ));
    }

    #[test]
    fn frobenius_examples() {
        let f9 = FieldSpec::build(3, 2, 1).unwrap();
        let t = f9.generator();
        assert_eq!(f9.frobenius(t, 1), f9.pow(t, 3));
        assert_eq!(f9.frobenius(t, 2), t);

        let f16 = FieldSpec::build(2, 4, 1).unwrap();
        for x in f16.elements() {
            assert_eq!(f16.frobenius(f16.frobenius(x, 1), 3), x);
            assert_eq!(f16.frobenius(x, 1), f16.pow(x, 2));
        }
    }

    #[test]
    fn frobenius_fixed_set_is_base_field() {
        for (p, m, e) in [(2, 4, 2), (3, 4, 2), (2, 6, 3), (2, 6, 2), (3, 2, 1), (5, 2, 1)] {
            let f = FieldSpec::build(p, m, e).unwrap();
            let fixed: Vec<_> = f.elements().filter(|&x| f.frobenius(x, 1) == x).collect();
            assert_eq!(fixed.len() as u64, f.q());
            let mut base = f.base_elements();
            base.sort();
            assert_eq!(fixed, base);
            if let Some(b) = f.base_embedding() {
                // b satisfies the base modulus
                let mut acc = f.zero();
                for &c in f.base_modulus().iter().rev() {
                    acc = f.add(f.mul(acc, b), FieldElement::from_index(c));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_full_order() {
        for (p, m) in [(2, 1), (2, 3), (3, 3), (5, 2), (7, 1), (2, 8), (11, 2)] {
            let f = FieldSpec::build(p, m, 1).unwrap();
            let g = f.primitive_element();
            assert_eq!(f.multiplicative_order(g), Some(f.order() - 1));
            let mut seen = std::collections::HashSet::new();
            let mut x = f.one();
            for _ in 0..f.order() - 1 {
                assert!(seen.insert(x));
                x = f.mul(x, g);
            }
            assert_eq!(x, f.one());
            for y in f.nonzero_elements() {
                assert_eq!(f.mul(y, f.inv(y).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn primitive_roots() {
        let f4 = FieldSpec::build(2, 2, 1).unwrap();
        let w = f4.primitive_nth_root(3).unwrap();
        assert_ne!(w, f4.one());
        assert_eq!(f4.pow(w, 3), f4.one());

        let f11 = FieldSpec::build(11, 1, 1).unwrap();
        let z = f11.primitive_nth_root(5).unwrap();
        // brute-force oracle: smallest element of exact order 5
        let oracle = (1..11u64)
            .find(|&a| (1..=5).map(|e| a.pow(e) % 11).position(|v| v == 1) == Some(4))
            .unwrap();
        assert_eq!(z.index(), oracle);
        assert_eq!(oracle, 3);

        let f7 = FieldSpec::build(7, 1, 1).unwrap();
        assert!(matches!(
            f7.primitive_nth_root(5),
            Err(Error::NoSuchRoot { .. })
        ));
    }

    #[test]
    fn enumeration_order() {
        let f2 = FieldSpec::build(2, 1, 1).unwrap();
        assert_eq!(f2.elements().map(|x| x.index()).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(FieldSpec::build(2, 2, 1).unwrap().elements().count(), 4);
        let f9 = FieldSpec::build(3, 2, 1).unwrap();
        let all: Vec<_> = f9.elements().collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        let f = FieldSpec::build(3, 3, 1).unwrap();
        let a = Arith::new(3, f.modulus().to_vec());
        for x in 0..27 {
            for y in 0..27 {
                let (ex, ey) = (FieldElement(x), FieldElement(y));
                assert_eq!(f.mul(ex, ey).0, a.mul(x, y));
                assert_eq!(f.add(ex, ey).0, a.add(x, y));
            }
        }
    }

    #[test]
    fn log_tables_agree_with_polynomial_arithmetic() {
        for (p, m) in [(3u64, 7usize), (2, 10), (5, 4)] {
            let f = FieldSpec::build(p, m, 1).unwrap();
            assert!(f.0.logs.is_some());
            let a = Arith::new(p, f.modulus().to_vec());
            let step = (f.order() / 97).max(1);
            for x in (0..f.order()).step_by(step as usize) {
                for y in (0..f.order()).step_by(step as usize + 3) {
                    assert_eq!(f.mul(FieldElement(x), FieldElement(y)).0, a.mul(x, y));
                }
                if x != 0 {
                    let xi = f.inv(FieldElement(x)).unwrap();
                    assert_eq!(a.mul(x, xi.0), 1);
                }
            }
        }
    }

    #[test]
    fn barrett_matches_hardware_division() {
        let xs = [0u64, 1, 2, 6, 7, 1 << 20, (1 << 50) + 12345, u64::MAX - 1, u64::MAX];
        for p in [2u64, 3, 5, 7, 11, 65521, 33554393] {
            let b = Barrett::new(p);
            for &x in &xs {
                assert_eq!(b.divrem(x), (x / p, x % p), "p={p} x={x}");
            }
        }
    }

    /// Digit-by-digit product with a reduction after every step.
    fn reference_mul(p: u64, modulus: &[u64], x: u64, y: u64) -> u64 {
        let m = modulus.len() - 1;
        let digits = |mut v: u64| {
            (0..m)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect::<Vec<_>>()
        };
        let (a, b) = (digits(x), digits(y));
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        for d in (m..2 * m).rev() {
            let c = prod[d];
            for i in 0..m {
                prod[d - m + i] = (prod[d - m + i] + (p - c) * modulus[i]) % p;
            }
        }
        prod[..m].iter().rev().fold(0, |v, &c| v * p + c)
    }

    #[test]
    fn polynomial_arithmetic_matches_reference() {
        for (p, m) in [(3u64, 5usize), (11, 7), (7, 6), (5, 9), (4093, 2)] {
            let f = FieldSpec::build(p, m, 1).unwrap();
            let a = Arith::new(p, f.modulus().to_vec());
            let step = (f.order() / 89).max(1);
            for x in (0..f.order()).step_by(step as usize) {
                for y in (0..f.order()).step_by(step as usize + 7) {
                    assert_eq!(a.mul(x, y), reference_mul(p, f.modulus(), x, y));
                }
            }
        }
    }

    #[test]
    fn descriptor_roundtrip_and_validation() {
        let f = FieldSpec::build(2, 4, 2).unwrap();
        let d = f.descriptor();
        let g = FieldSpec::from_descriptor(&d, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(f, g);
        let mut bad = d.clone();
        bad.modulus = vec![1, 0, 1, 0, 1]; // (x^2+x+1)^2
        assert!(FieldSpec::from_descriptor(&bad, DEFAULT_MAX_ORDER).is_err());
    }
}
