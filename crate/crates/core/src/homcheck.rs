//! Character-level checks of the Hom conditions behind the explicit
//! constructions: non-vanishing along chains, vanishing two (or three) steps
//! apart, and the exterior-square decompositions that feed them.

use crate::charlib::{self, adjoint_char, decompose_character, ext_square, hom_dim, DominantCharacter, Factor};
use crate::error::{KrError, Result};
use crate::krset::enumerate_chain;
use crate::limits::Limits;
use crate::report::CheckReport;
use crate::rootsys::{Family, RootSystem, Weight};
use crate::twisted::{enumerate_chain_sigma, OuterFamily, TwistedData};

fn fmt_char(c: &DominantCharacter) -> String {
    let parts: Vec<String> = c.iter().map(|(w, m)| if m == 1 { format!("V{w}") } else { format!("{m}V{w}") }).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn weight(rank: usize, terms: &[(usize, i64)]) -> Weight {
    let mut w = Weight::zero(rank);
    for &(i, c) in terms {
        w.0[i - 1] += c;
    }
    w
}

/// The extra summand `nu` in `wedge^2(g) = g + V(nu)`, from the known list.
pub fn expected_wedge_adjoint_nu(rs: &RootSystem) -> Result<Weight> {
    let n = rs.rank();
    Ok(match (rs.family(), n) {
        (Family::C, _) => weight(n, &[(1, 2), (2, 1)]),
        (Family::B, 3) => weight(n, &[(1, 1), (3, 2)]),
        (Family::D, 4) => weight(n, &[(1, 1), (3, 1), (4, 1)]),
        (Family::B, 4..) | (Family::D, 5..) => weight(n, &[(1, 1), (3, 1)]),
        (f, _) => return Err(KrError::Precondition(format!("no listed wedge^2(g) summand for {}{n}", f.letter()))),
    })
}

/// Decomposes `wedge^2` of the adjoint representation and checks it is `g + V(nu)`.
pub fn wedge_adjoint_nu(rs: &RootSystem) -> Result<Weight> {
    let nu = expected_wedge_adjoint_nu(rs)?;
    let got = decompose_character(rs, &ext_square(&adjoint_char(rs)))?;
    let mut expected = DominantCharacter::irreducible(charlib::adjoint_highest_weight(rs));
    expected.add(nu.clone(), 1);
    if got != expected {
        return Err(KrError::TheoremCheck(format!(
            "wedge^2(g) for {}: got {}, expected {}",
            rs.lie_type(),
            fmt_char(&got),
            fmt_char(&expected)
        )));
    }
    Ok(nu)
}

fn require_eps_two(rs: &RootSystem, i: usize) -> Result<()> {
    rs.check_node(i)?;
    if rs.epsilon(&rs.theta(), i)? != 2 {
        return Err(KrError::Precondition(format!("epsilon_{i}(theta) != 2 in {}", rs.lie_type())));
    }
    Ok(())
}

/// `Hom(g (x) V_s, V_{s+1}) != 0` and `Hom(wedge^2(g) (x) V_s, V_{s+2}) = 0` along the chain.
pub fn cond_untwisted(rs: &RootSystem, i: usize, limits: &Limits) -> Result<CheckReport> {
    require_eps_two(rs, i)?;
    let chain = enumerate_chain(rs, i)?;
    let mu = &chain.weights;
    let adj = adjoint_char(rs);
    let wedge = ext_square(&adj);
    let mut report = CheckReport::new(format!("{} node {i}", rs.lie_type()));
    for s in 0..mu.len().saturating_sub(1) {
        let d = hom_dim(rs, &[Factor::Irrep(mu[s].clone()), Factor::Char(adj.clone())], &mu[s + 1], limits)?;
        report.push(format!("Hom(g (x) V{}, V{})", mu[s], mu[s + 1]), format!("dim {d}"), d >= 1);
    }
    for s in 0..mu.len().saturating_sub(2) {
        let d = hom_dim(rs, &[Factor::Irrep(mu[s].clone()), Factor::Char(wedge.clone())], &mu[s + 2], limits)?;
        report.push(format!("Hom(wedge2(g) (x) V{}, V{})", mu[s], mu[s + 2]), format!("dim {d}"), d == 0);
    }
    Ok(report)
}

/// The `nu` of the `wedge^2(g1)` decomposition for the `A` families, in `g0` coordinates.
pub fn expected_wedge_g1_nu(data: &TwistedData) -> Option<Weight> {
    let n = data.outer().n();
    let r = data.g0().rank();
    match (data.outer().family(), n) {
        (OuterFamily::D, _) | (OuterFamily::AOdd, 2) => None,
        (OuterFamily::AOdd, _) => Some(weight(r, &[(1, 1), (3, 1)])),
        (OuterFamily::AEven, 1) => Some(weight(r, &[(1, 6)])),
        (OuterFamily::AEven, 2) => Some(weight(r, &[(1, 2), (2, 2)])),
        (OuterFamily::AEven, _) => Some(weight(r, &[(1, 2), (2, 1)])),
    }
}

/// Decomposes `wedge^2(g1)` as a `g0`-module and compares with the expected
/// `iota(g0)` (plus `V(nu)` for the `A` families).
pub fn wedge_g1_decomp(data: &TwistedData, limits: &Limits) -> Result<CheckReport> {
    let g0 = data.g0();
    let g1 = charlib::weight_mults(g0, data.phi(), limits)?;
    let got = decompose_character(g0, &ext_square(&g1))?;
    let adjoint = charlib::adjoint_highest_weight(g0);
    let mut expected = DominantCharacter::irreducible(adjoint.clone());
    if let Some(nu) = expected_wedge_g1_nu(data) {
        expected.add(nu, 1);
    }
    let mut report = CheckReport::new(format!("wedge2(g1) for {} (g0 = {})", data.outer(), g0.lie_type()));
    report.push(
        "decomposition",
        format!("got {}, expected {}", fmt_char(&got), fmt_char(&expected)),
        got == expected,
    );
    report.push(
        "adjoint summand is g0",
        format!("V{adjoint} multiplicity {}", got.mult(&adjoint)),
        got.mult(&adjoint) == 1,
    );
    Ok(report)
}

/// Hom conditions along the twisted chain of node `i`.
pub fn cond_twisted(data: &TwistedData, i: usize, limits: &Limits) -> Result<CheckReport> {
    let chain = enumerate_chain_sigma(data, i)?;
    if chain.length() == 0 {
        return Err(KrError::Precondition(format!("twisted chain of node {i} has length 0")));
    }
    let g0 = data.g0();
    let r = g0.rank();
    let mu = &chain.weights;
    let phi = data.phi().clone();
    let mut report = CheckReport::new(format!("{} node {i} (g0 = {})", data.outer(), g0.lie_type()));
    for s in 0..mu.len() - 1 {
        let d = hom_dim(g0, &[Factor::Irrep(mu[s].clone()), Factor::Irrep(phi.clone())], &mu[s + 1], limits)?;
        report.push(format!("Hom(g1 (x) V{}, V{})", mu[s], mu[s + 1]), format!("dim {d}"), d >= 1);
    }
    match data.outer().family() {
        OuterFamily::AOdd | OuterFamily::AEven => {
            let wedge = ext_square(&charlib::weight_mults(g0, &phi, limits)?);
            for s in 0..mu.len().saturating_sub(2) {
                let d = hom_dim(g0, &[Factor::Irrep(mu[s].clone()), Factor::Char(wedge.clone())], &mu[s + 2], limits)?;
                report.push(format!("Hom(wedge2(g1) (x) V{}, V{})", mu[s], mu[s + 2]), format!("dim {d}"), d == 0);
            }
        }
        OuterFamily::D => {
            let w = wedge_g1_decomp(data, limits)?;
            report.push(
                "wedge2(g1) = iota(g0), so q_s(V(nu) (x) V_s) = 0 holds vacuously",
                w.entries[0].detail.clone(),
                w.passed(),
            );
            let targets = [weight(r, &[(1, 1), (2, 1)]), weight(r, &[(1, 1)])];
            for s in 0..mu.len().saturating_sub(3) {
                for t in &targets {
                    let d = hom_dim(g0, &[Factor::Irrep(mu[s].clone()), Factor::Irrep(t.clone())], &mu[s + 3], limits)?;
                    report.push(format!("Hom(V{t} (x) V{}, V{})", mu[s], mu[s + 3]), format!("dim {d}"), d == 0);
                }
            }
            if data.outer().n() > 3 {
                let g1 = charlib::weight_mults(g0, &phi, limits)?;
                let got = decompose_character(g0, &g1.product(&ext_square(&g1)))?;
                let expected: DominantCharacter = [
                    (weight(r, &[(1, 1), (2, 1)]), 1),
                    (weight(r, &[(3, 1)]), 1),
                    (weight(r, &[(1, 1)]), 1),
                ]
                .into_iter()
                .collect();
                report.push(
                    "g1 (x) wedge2(g1)",
                    format!("got {}, expected {}", fmt_char(&got), fmt_char(&expected)),
                    got == expected,
                );
            }
        }
    }
    Ok(report)
}
