//! The open positroid cell `Π°_{k,n}`: membership by cyclic minors, point
//! counts, the split torus `T = (F_q^×)^n / F_q^×` acting on it, and the
//! rotation `ρ` on both `Gr(k,n)` and the quotient `Π° / T`.

use std::collections::{HashMap, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{guard, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grassmann::{
    self, canonicalize, cells, check_enumeration, k_subsets, pack_key, rho_apply,
    torus_apply_unchecked, CellWalker, GrassmannPoint,
};
use crate::limits::Limits;
use crate::matrix::{all_cyclic_minors_nonzero, Matrix};
use crate::qseries::binomial;

/// Point counts of `Gr(k,n)` and `Π°_{k,n}` over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositroidCount {
    pub k: usize,
    pub n: usize,
    pub q: u64,
    pub grassmannian_count: BigUint,
    pub positroid_count: BigUint,
    /// `(q-1)^{n-1}`.
    pub torus_order: BigUint,
    /// `positroid_count / torus_order`.
    pub quotient_count: BigRational,
}

impl PositroidCount {
    /// The quotient as an integer, if the division is exact.
    pub fn integral_quotient(&self) -> Option<BigInt> {
        self.quotient_count
            .is_integer()
            .then(|| self.quotient_count.to_integer())
    }
}

/// `ρ`-fixed points of `Gr(k,n)(F_q)` and how they sit in `Π°`.
#[derive(Clone, Debug)]
pub struct FixedPointReport {
    pub fixed_points: Vec<GrassmannPoint>,
    pub all_in_positroid: bool,
    /// Whether the fixed set equals `{V_I}` built from eigenvectors of `ρ`.
    pub matches_eigenbasis: bool,
    /// Number of distinct torus orbits met by the fixed points.
    pub orbit_count_in_quotient: Option<u64>,
}

/// Result of partitioning `Π°(F_q)` into `T(F_q)`-orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientOrbits {
    pub positroid_count: u64,
    pub orbit_size: u64,
    pub orbit_count: u64,
    /// Orbits `O` with `ρ(O) = O`.
    pub rho_stable: u64,
}

/// All `n` cyclic minors of the canonical matrix are nonzero.
pub fn is_in_positroid(p: &GrassmannPoint) -> bool {
    all_cyclic_minors_nonzero(p.field(), p.canon().entries(), p.k(), p.n())
}

/// `(q-1)^{n-1}`.
pub fn split_torus_order(n: usize, q: u64) -> BigUint {
    num_traits::pow(BigUint::from(q - 1), n.saturating_sub(1))
}

/// Counts `Gr(k,n)(F_q)` and `Π°_{k,n}(F_q)` by full enumeration, one
/// Schubert cell per task.
pub fn count_positroid(
    k: usize,
    n: usize,
    field: &FieldSpec,
    limits: &Limits,
) -> Result<PositroidCount> {
    check_enumeration(k, n, field.order(), limits)?;
    let (gr, pos) = cells(k, n)
        .par_iter()
        .map(|cell| {
            let mut walker = CellWalker::new(field, k, n, cell);
            let (mut gr, mut pos) = (0u64, 0u64);
            while walker.advance() {
                gr += 1;
                if all_cyclic_minors_nonzero(field, walker.current(), k, n) {
                    pos += 1;
                }
            }
            (gr, pos)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let q = field.order();
    let torus_order = split_torus_order(n, q);
    let quotient_count = BigRational::new(
        BigInt::from(pos),
        BigInt::from(torus_order.clone()),
    );
    Ok(PositroidCount {
        k,
        n,
        q,
        grassmannian_count: gr.into(),
        positroid_count: pos.into(),
        torus_order,
        quotient_count,
    })
}

/// Whether `t` fixes `p`: scaling column `j` by `t_j` and renormalizing the
/// pivot of row `i` returns the same matrix iff `t_j = t_{pivot_i}` wherever
/// row `i` is nonzero.
fn torus_fixes(t: &[FieldElement], p: &GrassmannPoint) -> bool {
    let n = p.n();
    let e = p.canon().entries();
    p.pivots().iter().enumerate().all(|(i, &c)| {
        (0..n).all(|j| e[i * n + j].is_zero() || t[j] == t[c])
    })
}

/// Exhaustive check that no non-identity `t ∈ (F_q^×)^n / F_q^×` fixes `p`.
/// Representatives have `t_0 = 1`.
pub fn torus_stabilizer_is_trivial(p: &GrassmannPoint, limits: &Limits) -> Result<bool> {
    let field = p.field();
    let n = p.n();
    let size = split_torus_order(n, field.order());
    if size > BigUint::from(limits.max_torus_loop) {
        return Err(guard("torus stabilizer loop", size, limits.max_torus_loop));
    }
    let units: Vec<FieldElement> = field.nonzero_elements().collect();
    let mut digits = vec![0usize; n];
    let mut t = vec![field.one(); n];
    loop {
        // next representative, skipping the identity (all digits 0)
        let Some(pos) = (1..n).rev().find(|&i| digits[i] + 1 < units.len()) else {
            return Ok(true);
        };
        digits[pos] += 1;
        t[pos] = units[digits[pos]];
        for i in pos + 1..n {
            digits[i] = 0;
            t[i] = units[0];
        }
        if torus_fixes(&t, p) {
            return Ok(false);
        }
    }
}

/// Outcome of checking every point of `Π°(F_q)` for a trivial stabilizer.
#[derive(Clone, Debug)]
pub struct FreenessCheck {
    pub positroid_count: u64,
    pub trivial_stabilizer: u64,
    pub first_counterexample: Option<GrassmannPoint>,
}

/// Runs [`torus_stabilizer_is_trivial`] on every point of `Π°_{k,n}(F_q)`.
pub fn check_free_action(
    k: usize,
    n: usize,
    field: &FieldSpec,
    limits: &Limits,
) -> Result<FreenessCheck> {
    check_enumeration(k, n, field.order(), limits)?;
    let size = split_torus_order(n, field.order());
    if size > BigUint::from(limits.max_torus_loop) {
        return Err(guard("torus stabilizer loop", size, limits.max_torus_loop));
    }
    let per_cell: Vec<(u64, u64, Option<GrassmannPoint>)> = cells(k, n)
        .par_iter()
        .map(|cell| {
            let mut walker = CellWalker::new(field, k, n, cell);
            let (mut total, mut free, mut bad) = (0u64, 0u64, None);
            while walker.advance() {
                if !all_cyclic_minors_nonzero(field, walker.current(), k, n) {
                    continue;
                }
                total += 1;
                let canon = Matrix::from_raw(field, k, n, walker.current().to_vec());
                let p = GrassmannPoint::from_echelon(canon, cell.pivots.clone());
                if torus_stabilizer_is_trivial(&p, limits).expect("guard checked") {
                    free += 1;
                } else if bad.is_none() {
                    bad = Some(p);
                }
            }
            (total, free, bad)
        })
        .collect();
    let mut out = FreenessCheck {
        positroid_count: 0,
        trivial_stabilizer: 0,
        first_counterexample: None,
    };
    for (t, f, b) in per_cell {
        out.positroid_count += t;
        out.trivial_stabilizer += f;
        if out.first_counterexample.is_none() {
            out.first_counterexample = b;
        }
    }
    Ok(out)
}

/// `V_I = span{ v_i : i ∈ I }` with `v_i = (1, ζ^i, ζ^{2i}, …, ζ^{(n-1)i})`,
/// the eigenvectors of `ρ`.
pub fn eigenbasis_point(
    field: &FieldSpec,
    subset: &[usize],
    zeta: FieldElement,
    n: usize,
) -> Result<GrassmannPoint> {
    if field.multiplicative_order(zeta) != Some(n as u64) {
        return Err(Error::BadOrder(n));
    }
    if subset.iter().any(|&i| i >= n) {
        return Err(Error::BadIndex(format!("subset {subset:?} of 0..{n}")));
    }
    let rows: Vec<Vec<FieldElement>> = subset
        .iter()
        .map(|&i| eigen_torus_element(field, zeta, i, n))
        .collect();
    canonicalize(&Matrix::from_rows(field, &rows)?)
}

/// `t_m = diag(1, ζ^m, ζ^{2m}, …)`, which is also the vector `v_m`.
pub fn eigen_torus_element(field: &FieldSpec, zeta: FieldElement, m: usize, n: usize) -> Vec<FieldElement> {
    let step = field.pow(zeta, m as u64);
    let mut acc = field.one();
    (0..n)
        .map(|_| {
            let v = acc;
            acc = field.mul(acc, step);
            v
        })
        .collect()
}

/// `ρ`-fixed points of `Gr(k,n)(F_q)` found by enumeration, checked against
/// the eigenvector construction. Needs `n | q - 1`.
pub fn rho_fixed_points(
    k: usize,
    n: usize,
    field: &FieldSpec,
    limits: &Limits,
) -> Result<FixedPointReport> {
    let q = field.order();
    if (q - 1) % n as u64 != 0 {
        return Err(Error::NoPrimitiveRoot { n, order: q });
    }
    check_enumeration(k, n, q, limits)?;
    let per_cell: Vec<Vec<GrassmannPoint>> = cells(k, n)
        .par_iter()
        .map(|cell| {
            let mut walker = CellWalker::new(field, k, n, cell);
            let mut out = Vec::new();
            while walker.advance() {
                let canon = Matrix::from_raw(field, k, n, walker.current().to_vec());
                let p = GrassmannPoint::from_echelon(canon, cell.pivots.clone());
                if rho_apply(&p) == p {
                    out.push(p);
                }
            }
            out
        })
        .collect();
    let fixed_points: Vec<GrassmannPoint> = per_cell.into_iter().flatten().collect();
    let all_in_positroid = fixed_points.iter().all(is_in_positroid);

    let zeta = field
        .primitive_nth_root(n as u64)
        .map_err(|_| Error::NoPrimitiveRoot { n, order: q })?;
    let eigen: Vec<GrassmannPoint> = k_subsets(k, n)
        .iter()
        .map(|s| eigenbasis_point(field, s, zeta, n))
        .collect::<Result<_>>()?;
    let as_set = |v: &[GrassmannPoint]| v.iter().cloned().collect::<std::collections::HashSet<_>>();
    let matches_eigenbasis = eigen.len() == fixed_points.len() && as_set(&eigen) == as_set(&fixed_points);

    // Torus orbits among the fixed points: t_m V_I = V_{I+m}, so these are
    // the orbits of the diagonal elements t_m.
    let mut seen = vec![false; fixed_points.len()];
    let mut orbits = 0u64;
    let index: HashMap<&GrassmannPoint, usize> =
        fixed_points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    for i in 0..fixed_points.len() {
        if seen[i] {
            continue;
        }
        orbits += 1;
        for m in 0..n {
            let t = eigen_torus_element(field, zeta, m, n);
            let img = torus_apply_unchecked(&t, &fixed_points[i]);
            if let Some(&j) = index.get(&img) {
                seen[j] = true;
            }
        }
    }

    Ok(FixedPointReport {
        fixed_points,
        all_in_positroid,
        matches_eigenbasis,
        orbit_count_in_quotient: Some(orbits),
    })
}

pub(crate) fn unpack_key(mut key: u128, order: u64, len: usize) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::ZERO; len];
    for slot in out.iter_mut().rev() {
        *slot = FieldElement::from_index((key % order as u128) as u64);
        key /= order as u128;
    }
    out
}

/// Scales column `c` by `g` and renormalizes pivots in place.
fn scale_column(
    field: &FieldSpec,
    entries: &mut [FieldElement],
    k: usize,
    n: usize,
    c: usize,
    g: FieldElement,
    g_inv: FieldElement,
) {
    for i in 0..k {
        let row = &mut entries[i * n..(i + 1) * n];
        let pivot = row.iter().position(|x| !x.is_zero()).expect("full rank");
        if pivot == c {
            for (j, v) in row.iter_mut().enumerate() {
                if j != c && !v.is_zero() {
                    *v = field.mul(*v, g_inv);
                }
            }
        } else if !row[c].is_zero() {
            row[c] = field.mul(row[c], g);
        }
    }
}

/// Partitions `Π°_{k,n}(F_q)` into `T(F_q)`-orbits by breadth-first search
/// over the generators "scale coordinate `i` by a generator of `F_q^×`"
/// (`i = 1..n-1`), checks every orbit has `(q-1)^{n-1}` points, and counts the
/// orbits carried to themselves by `ρ`.
pub fn rho_stable_orbit_count(
    k: usize,
    n: usize,
    field: &FieldSpec,
    limits: &Limits,
) -> Result<QuotientOrbits> {
    if k.gcd(&n) != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    let q = field.order();
    check_enumeration(k, n, q, limits)?;
    let orbit_size = split_torus_order(n, q);
    let orbit_size: u64 = orbit_size
        .try_into()
        .map_err(|_| guard("torus order", split_torus_order(n, q), u64::MAX))?;
    if orbit_size > limits.max_torus_loop {
        return Err(guard("torus orbit size", orbit_size, limits.max_torus_loop));
    }
    if pack_key(&vec![FieldElement::from_index(q - 1); k * n], q).is_none() {
        return Err(guard("packed subspace key", format!("{q}^{}", k * n), 128));
    }

    let keys: Vec<u128> = cells(k, n)
        .par_iter()
        .map(|cell| {
            let mut walker = CellWalker::new(field, k, n, cell);
            let mut out = Vec::new();
            while walker.advance() {
                if all_cyclic_minors_nonzero(field, walker.current(), k, n) {
                    out.push(pack_key(walker.current(), q).expect("checked above"));
                }
            }
            out
        })
        .flatten()
        .collect();

    const UNSEEN: u32 = u32::MAX;
    let mut orbit_of: HashMap<u128, u32> = keys.iter().map(|&key| (key, UNSEEN)).collect();
    let g = field.primitive_element();
    let g_inv = field.inv(g).expect("nonzero");
    let mut reps: Vec<u128> = Vec::new();
    let mut queue = VecDeque::new();
    for &start in &keys {
        if orbit_of[&start] != UNSEEN {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(start);
        orbit_of.insert(start, id);
        queue.push_back(start);
        let mut size = 0u64;
        while let Some(key) = queue.pop_front() {
            size += 1;
            let base = unpack_key(key, q, k * n);
            for c in 1..n {
                let mut e = base.clone();
                scale_column(field, &mut e, k, n, c, g, g_inv);
                let img = pack_key(&e, q).expect("checked above");
                match orbit_of.get_mut(&img) {
                    Some(slot) if *slot == UNSEEN => {
                        *slot = id;
                        queue.push_back(img);
                    }
                    Some(_) => {}
                    None => {
                        return Err(Error::VerificationFailed(format!(
                            "torus image of a positroid point left the positroid cell \
                             for (k,n,q) = ({k},{n},{q})"
                        )))
                    }
                }
            }
        }
        if size != orbit_size {
            return Err(Error::NonFreeAction(format!(
                "orbit of size {size}, expected {orbit_size}, for (k,n,q) = ({k},{n},{q})"
            )));
        }
    }

    let positroid_count = keys.len() as u64;
    let orbit_count = reps.len() as u64;
    if orbit_count * orbit_size != positroid_count {
        return Err(Error::VerificationFailed(format!(
            "{orbit_count} orbits of size {orbit_size} do not cover {positroid_count} points"
        )));
    }

    let mut rho_stable = 0u64;
    for (id, &rep) in reps.iter().enumerate() {
        let entries = unpack_key(rep, q, k * n);
        let p = canonicalize(&Matrix::from_raw(field, k, n, entries))?;
        let img = grassmann::rho_apply(&p);
        let img_key = img.key().expect("checked above");
        match orbit_of.get(&img_key) {
            Some(&j) if j as usize == id => rho_stable += 1,
            Some(_) => {}
            None => {
                return Err(Error::VerificationFailed(
                    "rotation moved a positroid point out of the positroid cell".into(),
                ))
            }
        }
    }

    Ok(QuotientOrbits {
        positroid_count,
        orbit_size,
        orbit_count,
        rho_stable,
    })
}

/// `C(n,k) / n` when it is an integer.
pub fn expected_rho_stable_orbits(k: usize, n: usize) -> Option<BigUint> {
    let (quot, rem) = binomial(n, k).div_rem(&BigUint::from(n));
    rem.is_zero().then_some(quot)
}

/// The positroid points of `Gr(k,n)(F_q)` in enumeration order.
pub fn positroid_points(
    k: usize,
    n: usize,
    field: &FieldSpec,
    limits: &Limits,
) -> Result<Vec<GrassmannPoint>> {
    Ok(grassmann::enumerate_grassmannian(k, n, field, limits)?
        .filter(is_in_positroid)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{enumerate_grassmannian, torus_apply};
    use crate::qseries::predicted_positroid_count;

    fn fq(q: u64) -> FieldSpec {
        FieldSpec::for_order(q).unwrap()
    }

    fn point(field: &FieldSpec, rows: &[&[i64]]) -> GrassmannPoint {
        canonicalize(&Matrix::from_ints(field, rows)).unwrap()
    }

    /// Brute-force stabilizer via the generic torus action.
    fn stabilizer_size(p: &GrassmannPoint) -> usize {
        let f = p.field();
        let n = p.n();
        let units: Vec<_> = f.nonzero_elements().collect();
        let mut count = 0;
        let total = units.len().pow(n as u32 - 1);
        for mut idx in 0..total {
            let mut t = vec![f.one()];
            for _ in 1..n {
                t.push(units[idx % units.len()]);
                idx /= units.len();
            }
            if torus_apply(&t, p).unwrap() == *p {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn membership_examples() {
        let f3 = fq(3);
        // minors on windows {0,1},{1,2},{2,3},{3,0}: 1, -1, 1, -1
        let p = point(&f3, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert!(is_in_positroid(&p));
        let f2 = fq(2);
        let p = point(&f2, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert!(is_in_positroid(&p));
        // window {2,3} vanishes
        assert!(!is_in_positroid(&point(&f3, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])));
        for n in 1..6 {
            let ones = vec![1i64; n];
            assert!(is_in_positroid(&point(&f3, &[&ones])));
        }
        assert!(!is_in_positroid(&point(&f3, &[&[1, 0, 2]])));
    }

    #[test]
    fn counts_match_examples() {
        let l = Limits::default();
        let c = count_positroid(2, 5, &fq(2), &l).unwrap();
        assert_eq!(c.grassmannian_count, 155u32.into());
        assert_eq!(c.positroid_count, 5u32.into());
        assert_eq!(c.integral_quotient(), Some(5.into()));
        assert_eq!(count_positroid(1, 2, &fq(3), &l).unwrap().positroid_count, 2u32.into());
        let c = count_positroid(2, 5, &fq(3), &l).unwrap();
        assert_eq!(c.positroid_count, 160u32.into());
        assert_eq!(c.torus_order, 16u32.into());
    }

    #[test]
    fn counts_match_brute_force_filter() {
        let l = Limits::default();
        for (k, n, q) in [(2, 4, 2), (2, 4, 3), (3, 5, 2), (2, 6, 2), (1, 4, 5), (3, 6, 2)] {
            let f = fq(q);
            let brute = enumerate_grassmannian(k, n, &f, &l)
                .unwrap()
                .filter(|p| p.canon().cyclic_minors().unwrap().iter().all(|x| !x.is_zero()))
                .count();
            let c = count_positroid(k, n, &f, &l).unwrap();
            assert_eq!(c.positroid_count, BigUint::from(brute), "({k},{n},{q})");
        }
    }

    #[test]
    fn coprime_counts_match_closed_form() {
        let l = Limits::default();
        for (k, n, q) in [(1, 3, 2), (2, 3, 3), (1, 4, 4), (3, 4, 3), (2, 5, 4), (3, 5, 2), (1, 6, 3)] {
            let c = count_positroid(k, n, &fq(q), &l).unwrap();
            assert_eq!(
                BigInt::from(c.positroid_count),
                predicted_positroid_count(k, n, q).unwrap(),
                "({k},{n},{q})"
            );
        }
    }

    #[test]
    fn rotation_preserves_positroid_cell() {
        let l = Limits::default();
        for (k, n, q) in [(2, 4, 3), (2, 5, 2), (3, 6, 2), (2, 3, 4)] {
            for p in enumerate_grassmannian(k, n, &fq(q), &l).unwrap() {
                assert_eq!(is_in_positroid(&p), is_in_positroid(&rho_apply(&p)));
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        let l = Limits::default();
        let f3 = fq(3);
        for p in positroid_points(2, 5, &f3, &l).unwrap() {
            assert!(torus_stabilizer_is_trivial(&p, &l).unwrap());
        }
        let e1 = point(&f3, &[&[1, 0]]);
        assert!(!torus_stabilizer_is_trivial(&e1, &l).unwrap());
        for p in enumerate_grassmannian(2, 4, &fq(2), &l).unwrap() {
            assert!(torus_stabilizer_is_trivial(&p, &l).unwrap());
        }
        let tight = Limits {
            max_torus_loop: 10,
            ..Limits::default()
        };
        let p = point(&f3, &[&[1, 1, 1, 1, 1]]);
        assert!(matches!(
            torus_stabilizer_is_trivial(&p, &tight),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }

    #[test]
    fn stabilizer_check_matches_generic_action() {
        let l = Limits::default();
        for (k, n, q) in [(2, 4, 3), (1, 3, 4), (2, 3, 5), (2, 4, 4)] {
            for p in enumerate_grassmannian(k, n, &fq(q), &l).unwrap() {
                assert_eq!(
                    torus_stabilizer_is_trivial(&p, &l).unwrap(),
                    stabilizer_size(&p) == 1
                );
            }
        }
    }

    #[test]
    fn non_coprime_cells_can_have_stabilizers() {
        // for (2,4), rows supported on {0,2} and {1,3} are fixed by t = (1,c,1,c)
        let l = Limits::default();
        let f = fq(5);
        let any_non_free = positroid_points(2, 4, &f, &l)
            .unwrap()
            .iter()
            .any(|p| !torus_stabilizer_is_trivial(p, &l).unwrap());
        assert!(any_non_free);
    }

    #[test]
    fn fixed_point_examples() {
        let l = Limits::default();
        let r = rho_fixed_points(1, 2, &fq(3), &l).unwrap();
        let f3 = fq(3);
        assert_eq!(r.fixed_points, vec![point(&f3, &[&[1, 1]]), point(&f3, &[&[1, 2]])]);
        assert!(r.all_in_positroid && r.matches_eigenbasis);
        assert_eq!(r.orbit_count_in_quotient, Some(1));

        let r = rho_fixed_points(3, 3, &fq(4), &l).unwrap();
        assert_eq!(r.fixed_points.len(), 1);

        let r = rho_fixed_points(2, 5, &fq(11), &l).unwrap();
        assert_eq!(r.fixed_points.len(), 10);
        assert!(r.all_in_positroid && r.matches_eigenbasis);
        assert_eq!(r.orbit_count_in_quotient, Some(2));

        assert!(matches!(
            rho_fixed_points(1, 3, &fq(5), &l),
            Err(Error::NoPrimitiveRoot { .. })
        ));
    }

    #[test]
    fn eigenbasis_examples() {
        let f3 = fq(3);
        let zeta = f3.from_int(2);
        assert_eq!(eigenbasis_point(&f3, &[1], zeta, 2).unwrap(), point(&f3, &[&[1, 2]]));
        assert_eq!(eigenbasis_point(&f3, &[0], zeta, 2).unwrap(), point(&f3, &[&[1, 1]]));
        assert_eq!(
            eigenbasis_point(&f3, &[0], f3.one(), 2),
            Err(Error::BadOrder(2))
        );
        let f11 = fq(11);
        let z = f11.primitive_nth_root(5).unwrap();
        for s in k_subsets(2, 5) {
            let v = eigenbasis_point(&f11, &s, z, 5).unwrap();
            assert!(v.canon().cyclic_minors().unwrap().iter().all(|x| !x.is_zero()));
        }
    }

    #[test]
    fn eigen_torus_shifts_eigenspaces() {
        let f11 = fq(11);
        let z = f11.primitive_nth_root(5).unwrap();
        for s in k_subsets(2, 5) {
            let v = eigenbasis_point(&f11, &s, z, 5).unwrap();
            for m in 0..5 {
                let t = eigen_torus_element(&f11, z, m, 5);
                let mut shifted: Vec<usize> = s.iter().map(|&i| (i + m) % 5).collect();
                shifted.sort();
                let expect = eigenbasis_point(&f11, &shifted, z, 5).unwrap();
                assert_eq!(torus_apply(&t, &v).unwrap(), expect);
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let l = Limits::default();
        let o = rho_stable_orbit_count(1, 2, &fq(3), &l).unwrap();
        assert_eq!((o.positroid_count, o.orbit_count, o.rho_stable), (2, 1, 1));
        let o = rho_stable_orbit_count(1, 3, &fq(4), &l).unwrap();
        assert_eq!((o.positroid_count, o.orbit_count, o.rho_stable), (9, 1, 1));
        let o = rho_stable_orbit_count(2, 5, &fq(11), &l).unwrap();
        assert_eq!(o.rho_stable, 2);
        assert_eq!(o.orbit_count, 122);
        assert_eq!(
            rho_stable_orbit_count(2, 4, &fq(5), &l),
            Err(Error::NotCoprime { k: 2, n: 4 })
        );
    }

    #[test]
    fn orbit_count_equals_quotient() {
        let l = Limits::default();
        for (k, n, q) in [(2, 3, 3), (1, 4, 3), (2, 5, 3), (3, 4, 4)] {
            let f = fq(q);
            let o = rho_stable_orbit_count(k, n, &f, &l).unwrap();
            let c = count_positroid(k, n, &f, &l).unwrap();
            assert_eq!(BigInt::from(o.orbit_count), c.integral_quotient().unwrap());
        }
    }

    #[test]
    fn key_roundtrip() {
        let f = fq(7);
        for p in enumerate_grassmannian(2, 4, &f, &Limits::default()).unwrap().take(300) {
            assert_eq!(unpack_key(p.key().unwrap(), 7, 8), p.canon().entries());
        }
    }
}
