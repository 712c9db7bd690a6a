//! Independent oracles checked against the library paths.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kr_core::charlib::{
    adjoint_char, brute_tensor_decompose, dominant_mults, hom_dim, tensor_decompose, weyl_dim, weyl_dim_u64, Factor,
};
use kr_core::krset::{level_structure, pplus, reduced_expression};
use kr_core::linalg::{nullspace, SVec, SparseMatrix};
use kr_core::modforge::{highest_module, intertwiners, LieBasis, MatrixRep};
use kr_core::{Family, LieType, Limits, RootSystem, Weight};

fn rs(f: Family, n: usize) -> RootSystem {
    RootSystem::build(LieType::new(f, n).unwrap()).unwrap()
}

fn small_types() -> Vec<RootSystem> {
    [(Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::B, 3), (Family::C, 2), (Family::C, 3), (Family::D, 4)]
        .into_iter()
        .map(|(f, n)| rs(f, n))
        .collect()
}

fn random_dominant(rng: &mut ChaCha8Rng, rank: usize, max: i64) -> Weight {
    Weight((0..rank).map(|_| rng.gen_range(0..=max)).collect())
}

/// Weyl's product formula evaluated directly with the invariant form.
fn weyl_product(r: &RootSystem, lam: &Weight) -> BigRational {
    let rho = r.rho();
    let shifted = lam.add(&rho);
    r.positive_roots_fund().iter().fold(BigRational::one(), |acc, alpha| {
        acc * r.inner(&shifted, alpha) / r.inner(&rho, alpha)
    })
}

#[test]
fn klimyk_matches_brute_force_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let types = small_types();
    let limits = Limits::default();
    let mut checked = 0;
    while checked < 200 {
        let r = &types[rng.gen_range(0..types.len())];
        let lam = random_dominant(&mut rng, r.rank(), 3);
        let mu = random_dominant(&mut rng, r.rank(), 2);
        let d = weyl_dim_u64(r, &lam).unwrap() * weyl_dim_u64(r, &mu).unwrap();
        if d > 10_000 {
            continue;
        }
        let klimyk = tensor_decompose(r, &lam, &mu, &limits).unwrap();
        let brute = brute_tensor_decompose(r, &lam, &mu, &limits).unwrap();
        assert_eq!(klimyk, brute, "{} {lam} (x) {mu}", r.lie_type());
        assert_eq!(klimyk.dimension(r).to_u64().unwrap(), d);
        checked += 1;
    }
}

#[test]
fn weyl_dimension_matches_freudenthal_mass() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let types = small_types();
    for _ in 0..100 {
        let r = &types[rng.gen_range(0..types.len())];
        let lam = random_dominant(&mut rng, r.rank(), 3);
        let mass: u64 = dominant_mults(r, &lam)
            .unwrap()
            .iter()
            .map(|(mu, m)| m * r.weyl_orbit(mu).len() as u64)
            .sum();
        let weyl = weyl_dim(r, &lam).unwrap();
        assert_eq!(weyl.to_u64().unwrap(), mass, "{} {lam}", r.lie_type());
        assert_eq!(weyl_product(r, &lam), BigRational::from_integer(weyl.into()));
    }
}

/// Every index sequence `(j_1, ..., j_{m0})` whose chain weights sum to `target`.
fn all_sequences(chain: &[Weight], m0: usize, target: &Weight) -> Vec<Vec<usize>> {
    let k = chain.len();
    let mut out = Vec::new();
    let mut seq = vec![0; m0];
    loop {
        let sum = seq.iter().fold(Weight::zero(target.rank()), |acc, &j| acc.add(&chain[j]));
        if &sum == target {
            out.push(seq.clone());
        }
        let mut pos = m0;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            seq[pos] += 1;
            if seq[pos] < k {
                break;
            }
            seq[pos] = 0;
        }
        if m0 == 0 {
            return out;
        }
    }
}

#[test]
fn reduced_expressions_are_unique_by_exhaustive_search() {
    for (f, n, i) in [(Family::C, 2, 1), (Family::C, 3, 2), (Family::C, 3, 1), (Family::B, 3, 2), (Family::B, 3, 3), (Family::B, 4, 3), (Family::D, 4, 2), (Family::D, 5, 3)] {
        let r = rs(f, n);
        let ls = level_structure(&r, i).unwrap();
        let chain = ls.chain().weights.clone();
        let d = ls.chain().level;
        for m in 1..=4 {
            let (m0, m1) = (m / d, m % d);
            let residual = r.fundamental(i).scale(m1 as i64);
            let representable = |w: &Weight, count: usize| !all_sequences(&chain, count, w).is_empty();
            for mu in pplus(&r, i, m).unwrap() {
                let target = mu.sub(&residual);
                // reduced: each index is the least one leaving a representable remainder
                let reduced: Vec<Vec<usize>> = all_sequences(&chain, m0, &target)
                    .into_iter()
                    .filter(|seq| {
                        let mut rest = target.clone();
                        seq.iter().enumerate().all(|(r_, &j)| {
                            let left = m0 - r_ - 1;
                            let ok = (0..j).all(|jj| !representable(&rest.sub(&chain[jj]), left));
                            rest = rest.sub(&chain[j]);
                            ok
                        })
                    })
                    .collect();
                assert_eq!(reduced.len(), 1, "{} node {i} level {m} weight {mu}", r.lie_type());
                assert_eq!(reduced_expression(&r, i, m, &mu).unwrap(), reduced[0]);
            }
        }
    }
}

fn generators(rep: &MatrixRep) -> Vec<&SparseMatrix> {
    rep.e.iter().chain(&rep.f).chain(&rep.h).collect()
}

/// Solves `phi X_A = X_B phi` for every generator as one linear system in the
/// entries of `phi` (index `col * dim_b + row`).
fn commutation_solutions(a: &MatrixRep, b: &MatrixRep) -> Vec<SVec> {
    let (da, db) = (a.dim(), b.dim());
    let mut rows = Vec::new();
    for (xa, xb) in generators(a).into_iter().zip(generators(b)) {
        // entry (p, q) of phi X_A - X_B phi
        let xb_rows = xb.rows();
        for q in 0..da {
            for p in 0..db {
                let mut eq: Vec<(usize, BigRational)> = Vec::new();
                for (k, v) in xa.col(q).iter() {
                    eq.push((k * db + p, v.clone()));
                }
                for (k, v) in xb_rows[p].iter() {
                    eq.push((q * db + k, -v.clone()));
                }
                let row = SVec::from_pairs(eq);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    nullspace(&rows, da * db)
}

#[test]
fn intertwiners_match_commutation_system() {
    let l = Limits::default();
    let c2 = rs(Family::C, 2);
    let a2 = rs(Family::A, 2);
    let cases: Vec<(&RootSystem, MatrixRep, Weight)> = vec![
        (&c2, highest_module(&c2, &Weight(vec![1, 0]), &l).unwrap().tensor(&highest_module(&c2, &Weight(vec![1, 0]), &l).unwrap(), &l).unwrap(), Weight(vec![0, 1])),
        (&c2, highest_module(&c2, &Weight(vec![1, 0]), &l).unwrap().tensor(&highest_module(&c2, &Weight(vec![1, 0]), &l).unwrap(), &l).unwrap(), Weight(vec![0, 0])),
        (&c2, LieBasis::new(&c2).adjoint(&c2).tensor(&highest_module(&c2, &Weight(vec![1, 0]), &l).unwrap(), &l).unwrap(), Weight(vec![1, 0])),
        (&a2, LieBasis::new(&a2).adjoint(&a2), Weight(vec![1, 1])),
        (&a2, highest_module(&a2, &Weight(vec![1, 0]), &l).unwrap(), Weight(vec![0, 1])),
    ];
    for (r, source, target_w) in cases {
        let target = highest_module(r, &target_w, &l).unwrap();
        let oracle = commutation_solutions(&source, &target);
        let got = intertwiners(&source, &target).unwrap();
        assert_eq!(got.len(), oracle.len(), "{} -> V{target_w}", r.lie_type());
        // every computed map lies in the oracle's solution space
        let mut span = kr_core::linalg::Echelon::new();
        for v in &oracle {
            span.insert(v);
        }
        for phi in &got {
            // column-major flattening matches the oracle's index `col * dim_b + row`
            assert!(span.contains(&phi.flatten()));
        }
    }
}

#[test]
fn intertwiner_dimension_equals_hom_dim() {
    let l = Limits::default();
    let c3 = rs(Family::C, 3);
    let ad = LieBasis::new(&c3).adjoint(&c3);
    let adj = adjoint_char(&c3);
    let sources = [vec![0, 1, 0], vec![1, 0, 0]];
    let targets: BTreeSet<Vec<i64>> = [vec![2, 0, 0], vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0], vec![1, 1, 0]].into_iter().collect();
    for s in &sources {
        let v = highest_module(&c3, &Weight(s.clone()), &l).unwrap();
        let source = ad.tensor(&v, &l).unwrap();
        for t in &targets {
            let target = highest_module(&c3, &Weight(t.clone()), &l).unwrap();
            let expected =
                hom_dim(&c3, &[Factor::Irrep(Weight(s.clone())), Factor::Char(adj.clone())], &Weight(t.clone()), &l).unwrap();
            assert_eq!(intertwiners(&source, &target).unwrap().len() as u64, expected, "{s:?} -> {t:?}");
        }
    }
}
