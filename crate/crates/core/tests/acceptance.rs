//! Acceptance suite: nine criteria, one PASS/FAIL line each, all exact (tolerance
//! zero) with pinned wall-clock limits.
//!
//! Run with `cargo test -p kr-core --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kr_core::charlib::{
    adjoint_char, brute_tensor_decompose, dominant_mults, expand, tensor_decompose, weyl_dim, weyl_dim_u64,
};
use kr_core::homcheck::{cond_twisted, cond_untwisted, expected_wedge_g1_nu, wedge_adjoint_nu, wedge_g1_decomp};
use kr_core::krset::{base_set, enumerate_chain, graded_character, tensor_bound_check};
use kr_core::modforge::{build_kr_fundamental, check_tensor_submodule, verify_current_relations};
use kr_core::twisted::{base_set_sigma, enumerate_chain_sigma, fixed_point_data, graded_character_sigma};
use kr_core::{
    DominantCharacter, Family, GradedCharacter, LieType, Limits, OuterFamily, OuterType, RootSystem, TwistedData,
    Weight,
};

type Outcome = Result<String, String>;

fn rs(f: Family, n: usize) -> RootSystem {
    RootSystem::build(LieType::new(f, n).unwrap()).unwrap()
}

fn twisted(f: OuterFamily, n: usize) -> TwistedData {
    fixed_point_data(OuterType::new(f, n).unwrap()).unwrap()
}

/// Every classical type with rank <= `max`.
fn sweep(max: usize) -> Vec<RootSystem> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.push(rs(Family::A, n));
    }
    for n in 2..=max {
        out.push(rs(Family::B, n));
        out.push(rs(Family::C, n));
    }
    for n in 3..=max {
        out.push(rs(Family::D, n));
    }
    out
}

/// Every outer type with `n <= max`.
fn twisted_sweep(max: usize) -> Vec<TwistedData> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.push(twisted(OuterFamily::AEven, n));
    }
    for n in 2..=max {
        out.push(twisted(OuterFamily::AOdd, n));
        out.push(twisted(OuterFamily::D, n));
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn omega(rank: usize, i: usize, c: i64) -> Weight {
    Weight::fundamental(rank, i).scale(c)
}

/// `{c w_i, c w_{i-step}, ...}` down to index 0 or 1 (index 0 is the zero weight).
fn descending(rank: usize, from: usize, step: usize, c: i64) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    let mut j = from as i64;
    while j >= 0 {
        out.insert(omega(rank, j as usize, c));
        j -= step as i64;
    }
    out
}

/// The untwisted listings, written out from the closed-form descriptions.
fn expected_untwisted(family: Family, n: usize, i: usize, level: usize) -> BTreeSet<Weight> {
    let single = || BTreeSet::from([omega(n, i, level as i64)]);
    match family {
        Family::A => single(),
        Family::B if i == n && level == 2 => {
            let mut s = descending(n, n - 2, 2, 1);
            s.insert(omega(n, n, 2));
            s
        }
        Family::B if i == n => single(),
        Family::B => descending(n, i, 2, 1),
        Family::C if i < n && level == 2 => descending(n, i, 1, 2),
        Family::C => single(),
        Family::D if i == 1 || i >= n - 1 => single(),
        Family::D => descending(n, i, 2, 1),
    }
}

fn expected_twisted(family: OuterFamily, n: usize, i: usize, level: usize) -> BTreeSet<Weight> {
    let single = || BTreeSet::from([omega(n, i, level as i64)]);
    match family {
        OuterFamily::AEven if i < n && level == 2 => descending(n, i, 1, 2),
        OuterFamily::AEven if i == n && level == 4 => {
            let mut s = descending(n, n - 1, 1, 2);
            s.insert(omega(n, n, 4));
            s
        }
        OuterFamily::AEven => single(),
        OuterFamily::AOdd => descending(n, i, 2, 1),
        OuterFamily::D if i == n => single(),
        OuterFamily::D => descending(n, i, 1, 1),
    }
}

fn c1_base_sets() -> Outcome {
    let mut count = 0;
    for r in sweep(5) {
        let n = r.rank();
        for i in 1..=n {
            let d = r.dcheck_node(i) as usize;
            for level in 1..=d {
                let got = base_set(&r, i, level).map_err(|e| e.to_string())?;
                let want = expected_untwisted(r.family(), n, i, level);
                ensure(got == want, || format!("{} node {i} level {level}: {got:?} != {want:?}", r.lie_type()))?;
                count += 1;
            }
        }
    }
    for data in twisted_sweep(5) {
        let n = data.g0().rank();
        for i in 1..=n {
            for level in 1..=data.dsigma_node(i) {
                let got = base_set_sigma(&data, i, level).map_err(|e| e.to_string())?;
                let want = expected_twisted(data.outer().family(), n, i, level);
                ensure(got == want, || format!("{} node {i} level {level}: {got:?} != {want:?}", data.outer()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} listings match"))
}

fn c2_chains() -> Outcome {
    let mut count = 0;
    for r in sweep(5) {
        for i in 1..=r.rank() {
            let chain = enumerate_chain(&r, i).map_err(|e| e.to_string())?;
            let mu = &chain.weights;
            for s in 0..chain.length() {
                let one = r.root_coords_int(&mu[s].sub(&mu[s + 1]));
                ensure(one.is_some_and(|c| r.is_positive_root_ints(&c)), || {
                    format!("{} node {i}: mu_{s} - mu_{} not a positive root", r.lie_type(), s + 1)
                })?;
                if s + 2 < mu.len() {
                    let two = r.root_coords_int(&mu[s].sub(&mu[s + 2])).unwrap();
                    ensure(!r.is_positive_root_ints(&two), || {
                        format!("{} node {i}: mu_{s} - mu_{} is a root", r.lie_type(), s + 2)
                    })?;
                }
            }
            count += 1;
        }
    }
    for data in twisted_sweep(5) {
        let g0 = data.g0();
        for i in 1..=g0.rank() {
            let chain = enumerate_chain_sigma(&data, i).map_err(|e| e.to_string())?;
            let mu = &chain.weights;
            for s in 0..chain.length() {
                let one = g0.root_coords_int(&mu[s].sub(&mu[s + 1]));
                ensure(one.is_some_and(|c| data.in_r1_positive(&c)), || {
                    format!("{} node {i}: mu_{s} - mu_{} not in R1+", data.outer(), s + 1)
                })?;
                if s + 2 < mu.len() {
                    let two = g0.root_coords_int(&mu[s].sub(&mu[s + 2])).unwrap();
                    ensure(!data.in_r1_positive(&two), || format!("{} node {i}: two-step in R1+", data.outer()))?;
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} chains verified"))
}

fn c3_type_a() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        let r = rs(Family::A, n);
        for i in 1..=n {
            for m in 1..=5 {
                let gc = graded_character(&r, i, m).map_err(|e| e.to_string())?;
                let mut want = GradedCharacter::new();
                want.add(0, omega(n, i, m as i64), 1);
                ensure(gc == want, || format!("A{n} node {i} level {m}: {gc:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases concentrated in grade 0"))
}

fn c4_homs() -> Outcome {
    let l = Limits::default();
    let mut checks = 0;
    let mut untwisted = Vec::new();
    untwisted.extend((2..=5).map(|n| rs(Family::C, n)));
    untwisted.extend((3..=5).map(|n| rs(Family::B, n)));
    untwisted.extend((4..=5).map(|n| rs(Family::D, n)));
    for r in &untwisted {
        let nu = wedge_adjoint_nu(r).map_err(|e| e.to_string())?;
        let g = r.lie_type().dim_algebra() as u64;
        let dnu = weyl_dim_u64(r, &nu).unwrap();
        ensure(g * (g - 1) / 2 == g + dnu, || format!("{}: wedge dimension count", r.lie_type()))?;
        checks += 1;
        for i in 1..=r.rank() {
            if r.epsilon(&r.theta(), i).unwrap() != 2 || enumerate_chain(r, i).unwrap().length() == 0 {
                continue;
            }
            let rep = cond_untwisted(r, i, &l).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || rep.to_string())?;
            checks += rep.entries.len();
        }
    }
    let mut outer = Vec::new();
    outer.extend((3..=6).map(|k| OuterType::from_ambient(LieType::new(Family::A, k).unwrap()).unwrap()));
    outer.extend((3..=5).map(|k| OuterType::from_ambient(LieType::new(Family::D, k).unwrap()).unwrap()));
    for o in outer {
        let data = fixed_point_data(o).map_err(|e| e.to_string())?;
        let w = wedge_g1_decomp(&data, &l).map_err(|e| e.to_string())?;
        ensure(w.passed(), || w.to_string())?;
        checks += w.entries.len();
        for i in 1..=data.g0().rank() {
            if enumerate_chain_sigma(&data, i).unwrap().length() == 0 {
                continue;
            }
            let rep = cond_twisted(&data, i, &l).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || rep.to_string())?;
            checks += rep.entries.len();
        }
    }
    // the A_2 listing: wedge^2(g1) = g0 + V(6 omega_1)
    let a2 = twisted(OuterFamily::AEven, 1);
    ensure(expected_wedge_g1_nu(&a2) == Some(omega(1, 1, 6)), || "A2 nu".into())?;
    let w = wedge_g1_decomp(&a2, &l).map_err(|e| e.to_string())?;
    ensure(w.passed(), || w.to_string())?;
    Ok(format!("{} checks", checks + w.entries.len()))
}

fn c5_oracles() -> Outcome {
    let l = Limits::default();
    let types: Vec<RootSystem> = sweep(4);
    let mut rng = ChaCha8Rng::seed_from_u64(20_241_016);
    let mut pairs = 0;
    while pairs < 200 {
        let r = &types[rng.gen_range(0..types.len())];
        let lam = Weight((0..r.rank()).map(|_| rng.gen_range(0..=3)).collect());
        let mu = Weight((0..r.rank()).map(|_| rng.gen_range(0..=2)).collect());
        let d = weyl_dim_u64(r, &lam).unwrap().saturating_mul(weyl_dim_u64(r, &mu).unwrap());
        if d > 10_000 {
            continue;
        }
        let a = tensor_decompose(r, &lam, &mu, &l).map_err(|e| e.to_string())?;
        let b = brute_tensor_decompose(r, &lam, &mu, &l).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{} {lam} (x) {mu}", r.lie_type()))?;
        pairs += 1;
    }
    let mut weights = 0;
    while weights < 100 {
        let r = &types[rng.gen_range(0..types.len())];
        let lam = Weight((0..r.rank()).map(|_| rng.gen_range(0..=3)).collect());
        if weyl_dim_u64(r, &lam).unwrap() > 50_000 {
            continue;
        }
        let mass: u64 = dominant_mults(r, &lam).unwrap().iter().map(|(mu, k)| k * r.weyl_orbit(mu).len() as u64).sum();
        ensure(weyl_dim(r, &lam).unwrap().to_u64() == Some(mass), || format!("{} {lam}", r.lie_type()))?;
        weights += 1;
    }
    Ok(format!("{pairs} tensor pairs, {weights} dimensions"))
}

fn c6_matrix_realisation() -> Outcome {
    let l = Limits::default();
    let mut entries = 0;
    for (f, n, i) in [
        (Family::C, 2, 1),
        (Family::C, 3, 1),
        (Family::C, 3, 2),
        (Family::B, 3, 2),
        (Family::B, 4, 3),
        (Family::D, 4, 2),
        (Family::D, 5, 2),
        (Family::B, 3, 3),
    ] {
        let r = rs(f, n);
        let cm = build_kr_fundamental(&r, i, &l).map_err(|e| e.to_string())?;
        let rep = verify_current_relations(&r, &cm).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || rep.to_string())?;
        ensure(rep.entries.iter().any(|e| e.name.starts_with("x_{mu_s}")), || format!("{f:?}{n}: no chain check"))?;
        entries += rep.entries.len();
    }
    Ok(format!("8 modules, {entries} relation groups"))
}

fn c7_tensor_submodules() -> Outcome {
    let l = Limits::default();
    for (f, n, i, m) in
        [(Family::C, 2, 1, 2), (Family::C, 2, 1, 3), (Family::C, 2, 1, 4), (Family::C, 3, 2, 2), (Family::B, 3, 2, 1), (Family::B, 3, 2, 2)]
    {
        let rep = check_tensor_submodule(&rs(f, n), i, m, &l).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || rep.to_string())?;
    }
    let mut bounds = 0;
    for r in sweep(4) {
        for i in 1..=r.rank() {
            for m in 1..=4 {
                let ok = tensor_bound_check(&r, i, m, &l).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{} node {i} level {m}: tensor bound fails", r.lie_type()))?;
                bounds += 1;
            }
        }
    }
    Ok(format!("6 submodules, {bounds} tensor bounds"))
}

fn grades(gc: &GradedCharacter) -> Vec<DominantCharacter> {
    (0..=gc.max_grade()).map(|s| gc.grade(s)).collect()
}

fn c8_twisted_characters() -> Outcome {
    let irr = |c: &[i64]| DominantCharacter::irreducible(Weight(c.to_vec()));
    let a4 = twisted(OuterFamily::AEven, 2);
    let got = grades(&graded_character_sigma(&a4, 2, 4).map_err(|e| e.to_string())?);
    ensure(got == vec![irr(&[0, 4]), irr(&[2, 0]), irr(&[0, 0])], || format!("A4~ node 2 level 4: {got:?}"))?;
    let d4 = twisted(OuterFamily::D, 3);
    let got = grades(&graded_character_sigma(&d4, 2, 1).map_err(|e| e.to_string())?);
    ensure(got == vec![irr(&[0, 1, 0]), irr(&[1, 0, 0]), irr(&[0, 0, 0])], || format!("D4~ node 2 level 1: {got:?}"))?;
    let a5 = twisted(OuterFamily::AOdd, 3);
    for m in 1..=6 {
        let got = grades(&graded_character_sigma(&a5, 1, m).map_err(|e| e.to_string())?);
        ensure(got == vec![irr(&[m as i64, 0, 0])], || format!("A5~ node 1 level {m}: {got:?}"))?;
    }
    Ok("A4~, D4~, A5~ (levels 1..6) match".into())
}

fn c9_multiplicity_free_and_invariant() -> Outcome {
    let l = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut characters = Vec::new();
    for r in sweep(4) {
        for i in 1..=r.rank() {
            for m in 1..=4 {
                characters.push((r.clone(), graded_character(&r, i, m).map_err(|e| e.to_string())?));
            }
        }
    }
    for data in twisted_sweep(4) {
        for i in 1..=data.g0().rank() {
            for m in 1..=4 {
                characters.push((data.g0().clone(), graded_character_sigma(&data, i, m).map_err(|e| e.to_string())?));
            }
        }
    }
    let mut expanded = 0;
    for (r, gc) in &characters {
        ensure(gc.is_multiplicity_free(), || format!("{}: {gc:?}", r.lie_type()))?;
        let total = gc.total();
        if total.dimension(r).to_u64().is_none_or(|d| d > 20_000) {
            continue;
        }
        let chi = expand(r, &total, &l).map_err(|e| e.to_string())?;
        let support: Vec<(&Weight, u64)> = chi.iter().collect();
        for _ in 0..50 {
            let (w, k) = support[rng.gen_range(0..support.len())];
            let j = rng.gen_range(1..=r.rank());
            let image = r.reflect(w, j);
            ensure(chi.mult(&image) == k, || format!("{}: s_{j} moves {w}", r.lie_type()))?;
        }
        expanded += 1;
    }
    // sanity: the adjoint character is the smallest nontrivial check of the same kind
    let c2 = rs(Family::C, 2);
    ensure(kr_core::charlib::is_weyl_invariant(&c2, &adjoint_char(&c2)), || "adjoint".into())?;
    Ok(format!("{} characters multiplicity-free, {expanded} expanded and reflected 50 times", characters.len()))
}

#[test]
fn acceptance_suite() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("1 base-set fidelity", 5, c1_base_sets),
        ("2 chain validity", 5, c2_chains),
        ("3 type A degeneracy", 1, c3_type_a),
        ("4 Hom-condition suite", 120, c4_homs),
        ("5 oracle equivalence", 120, c5_oracles),
        ("6 matrix realisation", 180, c6_matrix_realisation),
        ("7 tensor submodule", 300, c7_tensor_submodules),
        ("8 twisted graded characters", 5, c8_twisted_characters),
        ("9 multiplicity-free, Weyl-invariant", 60, c9_multiplicity_free_and_invariant),
    ];
    let mut failed = Vec::new();
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("[{status}] criterion {name}: {detail} (exact, {:.2}s / limit {limit}s)", elapsed.as_secs_f64());
        if status == "FAIL" {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
