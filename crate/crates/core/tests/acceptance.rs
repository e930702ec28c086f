//! Acceptance run: every criterion checked exactly over the default sweep.
//! Prints one `PASS`/`FAIL` line per criterion and exits nonzero on failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use positroid_core::field::prime_power;
use positroid_core::positroid::{
    check_free_action, count_positroid, eigenbasis_point, expected_rho_stable_orbits,
    is_in_positroid, rho_fixed_points, rho_stable_orbit_count, split_torus_order, PositroidCount,
};
use positroid_core::qseries::{
    binomial, catalan_at_one, predicted_positroid_count, q_binomial, rational_q_catalan, QCatalan,
};
use positroid_core::twisted::{
    anisotropic_orbit_count, anisotropic_torus_order, construct_lang_g, enumerate_twisted_positroid,
    moore_det_product, moore_matrix, multiplication_matrix, Orientation, SubspaceBasis, TowerField,
};
use positroid_core::verify::{small_towers, Case, SweepConfig};
use positroid_core::{Error, FieldElement, FieldSpec, Limits, Matrix};

type Outcome = std::result::Result<String, String>;

struct Env {
    cfg: SweepConfig,
    limits: Limits,
    fields: BTreeMap<u64, FieldSpec>,
    counts: BTreeMap<Case, PositroidCount>,
}

impl Env {
    fn new() -> Env {
        let cfg = SweepConfig::default();
        let limits = Limits {
            max_points: cfg.max_points,
            max_torus_loop: cfg.stabilizer_budget,
            ..Limits::default()
        };
        Env {
            cfg,
            limits,
            fields: BTreeMap::new(),
            counts: BTreeMap::new(),
        }
    }

    fn field(&mut self, q: u64) -> FieldSpec {
        self.fields
            .entry(q)
            .or_insert_with(|| {
                let (p, e) = prime_power(q).expect("sweep q is a prime power");
                FieldSpec::build(p, e, 1).expect("small field")
            })
            .clone()
    }

    /// One enumeration per case, shared by the criteria that need it.
    fn count(&mut self, c: Case) -> std::result::Result<PositroidCount, String> {
        if let Some(x) = self.counts.get(&c) {
            return Ok(x.clone());
        }
        let f = self.field(c.q);
        let x = count_positroid(c.k, c.n, &f, &self.limits).map_err(|e| format!("{c:?}: {e}"))?;
        self.counts.insert(c, x.clone());
        Ok(x)
    }

    fn tower(&self, q: u64, n: usize) -> std::result::Result<TowerField, String> {
        TowerField::new(q, n, &self.limits).map_err(|e| format!("tower q={q} n={n}: {e}"))
    }

    /// Sweep cases where `gcd(q, n) = 1` as well.
    fn tame_cases(&self) -> Vec<Case> {
        self.cfg
            .coprime_cases()
            .into_iter()
            .filter(|c| c.q.gcd(&(c.n as u64)) == 1)
            .collect()
    }

    /// All `(k, n)` with `1 <= k < n <= n_max` and `n | q - 1`, within the
    /// point budget.
    fn rotation_cases(&self) -> Vec<Case> {
        let mut out = Vec::new();
        for n in 2..=self.cfg.n_max {
            for k in 1..n {
                for &q in &self.cfg.q_list {
                    let c = Case { k, n, q };
                    if (q - 1) % n as u64 == 0
                        && positroid_core::grassmann::predicted_count(k, n, q)
                            <= BigUint::from(self.cfg.max_points)
                    {
                        out.push(c);
                    }
                }
            }
        }
        out
    }
}

fn big(q: u64) -> BigInt {
    BigInt::from(q)
}

fn fail(c: Case, what: impl std::fmt::Display) -> String {
    format!("k={} n={} q={}: {what}", c.k, c.n, c.q)
}

fn catalan_value(c: Case) -> std::result::Result<BigInt, String> {
    match rational_q_catalan(c.k, c.n).map_err(|e| fail(c, e))? {
        QCatalan::Polynomial(p) => Ok(p.eval_at(&big(c.q))),
        QCatalan::NotDivisible { .. } => Err(fail(c, "q-Catalan not integral")),
    }
}

fn c1_normalized_count(env: &mut Env) -> Outcome {
    let cases = env.cfg.coprime_cases();
    for &c in &cases {
        let counts = env.count(c)?;
        let predicted = predicted_positroid_count(c.k, c.n, c.q).map_err(|e| fail(c, e))?;
        if BigInt::from(counts.positroid_count.clone()) != predicted {
            return Err(fail(
                c,
                format!("#Π° = {}, expected {predicted}", counts.positroid_count),
            ));
        }
    }
    for (k, n, q, want) in [(2, 5, 2, 5u32), (2, 5, 3, 160)] {
        let got = env.count(Case { k, n, q })?.positroid_count;
        if got != BigUint::from(want) {
            return Err(format!("anchor ({k},{n},{q}): {got} != {want}"));
        }
    }
    Ok(format!("{} cases, anchors 5 and 160", cases.len()))
}

fn c2_gaussian(env: &mut Env) -> Outcome {
    let cases = env.cfg.coprime_cases();
    for &c in &cases {
        let counts = env.count(c)?;
        let gauss = q_binomial(c.n, c.k).map_err(|e| fail(c, e))?.eval_at(&big(c.q));
        if BigInt::from(counts.grassmannian_count.clone()) != gauss {
            return Err(fail(c, format!("#Gr = {}, expected {gauss}", counts.grassmannian_count)));
        }
    }
    Ok(format!("{} cases", cases.len()))
}

fn c3_twisted(env: &mut Env) -> Outcome {
    let cases = env.tame_cases();
    let mut subspaces = BigUint::zero();
    for &c in &cases {
        let tower = env.tower(c.q, c.n)?;
        let t = enumerate_twisted_positroid(c.k, &tower, &env.limits).map_err(|e| fail(c, e))?;
        if let Some(m) = t.first_failure {
            return Err(fail(c, format!("Moore minor vanishes for {:?}", m.to_coeff_rows())));
        }
        let gr = env.count(c)?.grassmannian_count;
        if t.twisted_count != t.subspace_count || t.subspace_count != gr {
            return Err(fail(
                c,
                format!("twisted {} subspaces {} Gr {gr}", t.twisted_count, t.subspace_count),
            ));
        }
        subspaces += t.subspace_count;
    }
    Ok(format!("{} cases, {subspaces} subspaces, 0 failures", cases.len()))
}

fn c4_quotients(env: &mut Env) -> Outcome {
    let cases = env.cfg.coprime_cases();
    for &c in &cases {
        let cat = catalan_value(c)?;
        let split = env.count(c)?;
        let torus = split_torus_order(c.n, c.q);
        if !(&split.positroid_count % &torus).is_zero() {
            return Err(fail(c, "(q-1)^{n-1} does not divide #Π°"));
        }
        let split_q = BigInt::from(&split.positroid_count / &torus);
        let tower = env.tower(c.q, c.n)?;
        let aniso = anisotropic_orbit_count(c.k, &tower, &env.limits).map_err(|e| fail(c, e))?;
        let aniso_torus = anisotropic_torus_order(c.q, c.n);
        let twisted = BigUint::from(aniso.twisted_count);
        if BigUint::from(aniso.torus_order) != aniso_torus || !(&twisted % &aniso_torus).is_zero() {
            return Err(fail(c, "(q^n-1)/(q-1) does not divide the twisted count"));
        }
        let twisted_q = BigInt::from(&twisted / &aniso_torus);
        if BigInt::from(aniso.orbit_count) != twisted_q {
            return Err(fail(c, "orbit walk disagrees with the quotient"));
        }
        if split_q != cat || twisted_q != cat {
            return Err(fail(c, format!("{split_q} / {twisted_q} / Cat = {cat}")));
        }
    }
    Ok(format!("{} cases, both divisions exact", cases.len()))
}

fn c5_free_action(env: &mut Env) -> Outcome {
    let cases = env.cfg.coprime_cases();
    let mut exhaustive = 0;
    for &c in &cases {
        let counts = env.count(c)?;
        let torus = split_torus_order(c.n, c.q);
        if !(&counts.positroid_count % &torus).is_zero() {
            return Err(fail(c, format!("{torus} does not divide {}", counts.positroid_count)));
        }
        let work = &counts.positroid_count * &torus;
        if work > BigUint::from(env.cfg.stabilizer_budget) {
            continue;
        }
        let f = env.field(c.q);
        let check = check_free_action(c.k, c.n, &f, &env.limits).map_err(|e| fail(c, e))?;
        if check.trivial_stabilizer != check.positroid_count {
            let bad = check.first_counterexample.map(|p| p.canon().to_coeff_rows());
            return Err(fail(c, format!("nontrivial stabilizer at {bad:?}")));
        }
        exhaustive += 1;
    }
    Ok(format!(
        "divisibility on {} cases, exhaustive stabilizers on {exhaustive}",
        cases.len()
    ))
}

fn c6_fixed_points(env: &mut Env) -> Outcome {
    let cases = env.rotation_cases();
    for &c in &cases {
        let f = env.field(c.q);
        let rep = rho_fixed_points(c.k, c.n, &f, &env.limits).map_err(|e| fail(c, e))?;
        let want = binomial(c.n, c.k);
        if BigUint::from(rep.fixed_points.len()) != want {
            return Err(fail(c, format!("{} fixed points, expected {want}", rep.fixed_points.len())));
        }
        if !rep.all_in_positroid || !rep.fixed_points.iter().all(is_in_positroid) {
            return Err(fail(c, "a fixed point lies outside Π°"));
        }
        // Rebuild the eigenbasis set here rather than trusting the flag.
        let zeta = f.primitive_nth_root(c.n as u64).map_err(|e| fail(c, e))?;
        let mut eigen: Vec<_> = positroid_core::grassmann::k_subsets(c.k, c.n)
            .iter()
            .map(|s| eigenbasis_point(&f, s, zeta, c.n).map(|p| p.canon().clone()))
            .collect::<Result<_, Error>>()
            .map_err(|e| fail(c, e))?;
        let mut found: Vec<_> = rep.fixed_points.iter().map(|p| p.canon().clone()).collect();
        let key = |m: &Matrix| m.entries().iter().map(|x| x.index()).collect::<Vec<_>>();
        eigen.sort_by_key(key);
        found.sort_by_key(key);
        if eigen != found || !rep.matches_eigenbasis {
            return Err(fail(c, "fixed set differs from the eigenbasis construction"));
        }
    }
    let list: Vec<String> = cases.iter().map(|c| format!("({},{},{})", c.k, c.n, c.q)).collect();
    Ok(format!("{} cases {}", cases.len(), list.join(" ")))
}

fn c7_fixed_orbits(env: &mut Env) -> Outcome {
    let cases: Vec<Case> = env
        .rotation_cases()
        .into_iter()
        .filter(|c| c.k.gcd(&c.n) == 1)
        .collect();
    let mut anchor = None;
    for &c in &cases {
        let f = env.field(c.q);
        let o = rho_stable_orbit_count(c.k, c.n, &f, &env.limits).map_err(|e| fail(c, e))?;
        let want = expected_rho_stable_orbits(c.k, c.n).ok_or_else(|| fail(c, "n ∤ C(n,k)"))?;
        if binomial(c.n, c.k) != &want * BigUint::from(c.n) || BigUint::from(o.rho_stable) != want
        {
            return Err(fail(c, format!("{} ρ-stable orbits, expected {want}", o.rho_stable)));
        }
        if (c.k, c.n, c.q) == (2, 5, 11) {
            anchor = Some(o.rho_stable);
        }
    }
    match anchor {
        Some(2) => Ok(format!("{} cases, anchor (2,5,11) -> 2", cases.len())),
        other => Err(format!("anchor (2,5,11) gave {other:?}")),
    }
}

fn moore_agrees(tower: &TowerField, w: Vec<FieldElement>, limits: &Limits) -> bool {
    let k = w.len();
    let basis = SubspaceBasis { elements: w };
    let m = moore_matrix(tower, &basis).expect("k <= n").mat;
    let cols: Vec<usize> = (0..k).collect();
    let det = m.select_columns(&cols).and_then(|s| s.det()).expect("square");
    moore_det_product(tower, &basis, limits).expect("within factor guard") == det
}

fn c8_moore(env: &mut Env) -> Outcome {
    let mut exhaustive = 0u64;
    for (q, n) in small_towers(16, 2) {
        let tower = env.tower(q, n)?;
        let order = tower.big().order();
        for k in 1..=2usize {
            for i in 0..order.pow(k as u32) {
                let w: Vec<FieldElement> = (0..k)
                    .map(|j| FieldElement::from_index(i / order.pow(j as u32) % order))
                    .collect();
                if !moore_agrees(&tower, w.clone(), &env.limits) {
                    return Err(format!("q={q} n={n}: product != det at {w:?}"));
                }
                exhaustive += 1;
            }
        }
    }
    let mut random = 0u64;
    for (q, n) in small_towers(64, 3) {
        let tower = env.tower(q, n)?;
        let order = tower.big().order();
        let mut rng = ChaCha8Rng::seed_from_u64(env.cfg.seed ^ (q << 16) ^ ((n as u64) << 8));
        for _ in 0..env.cfg.moore_trials {
            let w: Vec<FieldElement> = (0..3)
                .map(|_| FieldElement::from_index(rng.gen_range(0..order)))
                .collect();
            if !moore_agrees(&tower, w.clone(), &env.limits) {
                return Err(format!("q={q} n={n}: product != det at {w:?}"));
            }
            random += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive tuples, {random} random triples"))
}

fn c9_lang(env: &mut Env) -> Outcome {
    let mut towers = 0;
    for n in 1..=env.cfg.lang_n_max {
        for &q in &env.cfg.lang_q_list {
            let tower = match TowerField::new(q, n, &env.limits) {
                Ok(t) => t,
                Err(Error::SizeGuardExceeded { .. }) => continue,
                Err(e) => return Err(format!("tower q={q} n={n}: {e}")),
            };
            let big = tower.big();
            let l = construct_lang_g(&tower).map_err(|e| format!("q={q} n={n}: {e}"))?;
            let fr = |m: &Matrix, j: usize| m.map(|x| big.frobenius(x, j));
            let b = l.g.inverse().map_err(|e| format!("q={q} n={n}: {e}"))?;
            let cocycle = b.mul(&fr(&l.g, 1)).expect("square");
            let rho = Matrix::rotation(big, n);
            let shift = match l.orientation {
                Orientation::Forward => rho,
                Orientation::Backward => rho.transpose(),
            };
            if l.scalar.is_zero() || cocycle != l.cocycle || cocycle != shift.map(|x| big.mul(x, l.scalar))
            {
                return Err(format!("q={q} n={n}: cocycle is not c·ρ^{{±1}}"));
            }
            let mut prod = Matrix::identity(big, n);
            for j in 0..n {
                prod = prod.mul(&fr(&cocycle, j)).expect("square");
            }
            if !prod.is_scalar() {
                return Err(format!("q={q} n={n}: twisted product not scalar"));
            }
            for alpha in [big.primitive_element(), big.generator()] {
                let diag: Vec<FieldElement> = (0..n).map(|j| big.frobenius(alpha, j)).collect();
                let conj = l.g.mul(&Matrix::diagonal(big, &diag)).and_then(|m| m.mul(&b));
                if conj.ok() != Some(multiplication_matrix(&tower, alpha)) {
                    return Err(format!("q={q} n={n}: conjugate of diag is not multiplication"));
                }
            }
            towers += 1;
        }
    }
    Ok(format!("{towers} towers"))
}

fn c10_euler(env: &mut Env) -> Outcome {
    let mut checked = 0;
    for n in 2..=env.cfg.catalan_n_max {
        for k in 1..n {
            let c = Case { k, n, q: 1 };
            let coprime = k.gcd(&n) == 1;
            let divisible = rational_q_catalan(k, n).map_err(|e| fail(c, e))?.polynomial().is_some();
            if divisible != coprime {
                return Err(fail(c, format!("divisible = {divisible}, gcd = {}", k.gcd(&n))));
            }
            if coprime {
                let at_one = catalan_at_one(k, n).map_err(|e| fail(c, e))?;
                let want = binomial(n, k) / BigUint::from(n);
                if at_one != BigInt::from(want.clone()) || (binomial(n, k) % BigUint::from(n)) != BigUint::zero() {
                    return Err(fail(c, format!("Cat(1) = {at_one}, expected {want}")));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs (k,n), n <= {}", env.cfg.catalan_n_max))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Env) -> Outcome); 10] = [
        ("1 normalized positroid count", c1_normalized_count),
        ("2 Gaussian binomial count", c2_gaussian),
        ("3 twisted cell is all of Gr", c3_twisted),
        ("4 split and anisotropic quotients", c4_quotients),
        ("5 free torus action", c5_free_action),
        ("6 rotation fixed points", c6_fixed_points),
        ("7 rotation-stable orbits", c7_fixed_orbits),
        ("8 Moore product formula", c8_moore),
        ("9 Lang element", c9_lang),
        ("10 Euler characteristic", c10_euler),
    ];
    let mut env = Env::new();
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run(&mut env);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({secs:.1}s)");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
