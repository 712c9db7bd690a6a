//! Twisted current algebras: fixed-point data for `A_{2n-1}`, `A_{2n}` and
//! `D_{n+1}` under the diagram automorphism, and the graded characters of the
//! twisted KR modules as modules over the fixed-point algebra `g0`.

use std::collections::BTreeSet;
use std::fmt;

use crate::charlib;
use crate::error::{KrError, Result};
use crate::krset::{order_chain, GradedChain, GradedCharacter, LevelStructure};
use crate::limits::Limits;
use crate::linalg::q;
use crate::rootsys::{Family, LieType, RootSystem, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OuterFamily {
    /// `A_{2n-1}`, `n >= 2`
    AOdd,
    /// `A_{2n}`, `n >= 1`
    AEven,
    /// `D_{n+1}`, `n >= 2`
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OuterType {
    family: OuterFamily,
    n: usize,
}

impl OuterType {
    pub fn new(family: OuterFamily, n: usize) -> Result<Self> {
        let min = match family {
            OuterFamily::AEven => 1,
            OuterFamily::AOdd | OuterFamily::D => 2,
        };
        if n < min {
            let (letter, rank) = match family {
                OuterFamily::AOdd => ('A', (2 * n).saturating_sub(1)),
                OuterFamily::AEven => ('A', 2 * n),
                OuterFamily::D => ('D', n + 1),
            };
            return Err(KrError::InvalidRank { family: letter, rank });
        }
        Ok(OuterType { family, n })
    }

    /// Outer type from the ambient algebra, e.g. `A5` -> `A_{2n-1}` with `n = 3`.
    pub fn from_ambient(ambient: LieType) -> Result<Self> {
        let r = ambient.rank();
        match ambient.family() {
            Family::A if r % 2 == 1 => OuterType::new(OuterFamily::AOdd, r.div_ceil(2)),
            Family::A => OuterType::new(OuterFamily::AEven, r / 2),
            Family::D => OuterType::new(OuterFamily::D, r - 1),
            f => Err(KrError::InvalidRank { family: f.letter(), rank: r }),
        }
    }

    /// Parses `"A5~"`, `"A4~"`, `"D4~"`; the trailing marker is optional.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_end_matches('~');
        OuterType::from_ambient(LieType::parse(body)?)
    }

    pub fn family(&self) -> OuterFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> LieType {
        let (f, r) = match self.family {
            OuterFamily::AOdd => (Family::A, 2 * self.n - 1),
            OuterFamily::AEven => (Family::A, 2 * self.n),
            OuterFamily::D => (Family::D, self.n + 1),
        };
        LieType::new(f, r).expect("outer parameters validated")
    }

    pub fn g0_type(&self) -> LieType {
        match (self.family, self.n) {
            (OuterFamily::AEven, 1) => LieType::b1(),
            (OuterFamily::AOdd, n) => LieType::new(Family::C, n).expect("n >= 2"),
            (_, n) => LieType::new(Family::B, n).expect("n >= 2"),
        }
    }
}

impl fmt::Display for OuterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~", self.ambient())
    }
}

#[derive(Clone, Debug)]
pub struct TwistedData {
    outer: OuterType,
    g0: RootSystem,
    r1_positive: Vec<Vec<i64>>,
    phi: Weight,
    dsigma: Vec<usize>,
}

fn is_short(g0: &RootSystem, coeffs: &[i64]) -> bool {
    // B_1 has a single root length; every root of it counts as short.
    g0.rank() == 1 || g0.length_sq(coeffs) < q(2)
}

/// Fixed-point data of the diagram automorphism of the ambient algebra.
pub fn fixed_point_data(outer: OuterType) -> Result<TwistedData> {
    let g0 = RootSystem::build(outer.g0_type())?;
    let short: Vec<Vec<i64>> = g0.positive_roots().iter().filter(|r| is_short(&g0, r)).cloned().collect();
    let highest_short = short.iter().max_by_key(|r| RootSystem::height(r)).cloned().expect("short roots exist");
    let n = outer.n;
    let (r1_positive, phi, dsigma) = match outer.family {
        OuterFamily::AEven => {
            let mut r1: Vec<Vec<i64>> = g0.positive_roots().to_vec();
            r1.extend(short.iter().map(|r| r.iter().map(|c| 2 * c).collect()));
            let phi = g0.root_weight(&highest_short).scale(2);
            let mut d = vec![2; n];
            d[n - 1] = 4;
            (r1, phi, d)
        }
        OuterFamily::AOdd | OuterFamily::D => (short, g0.root_weight(&highest_short), vec![1; n]),
    };
    Ok(TwistedData { outer, g0, r1_positive, phi, dsigma })
}

impl TwistedData {
    pub fn outer(&self) -> OuterType {
        self.outer
    }

    pub fn g0(&self) -> &RootSystem {
        &self.g0
    }

    /// Positive elements of `R_1` in simple-root coordinates of `g0`.
    pub fn r1_positive(&self) -> &[Vec<i64>] {
        &self.r1_positive
    }

    pub fn in_r1_positive(&self, coeffs: &[i64]) -> bool {
        self.r1_positive.iter().any(|r| r == coeffs)
    }

    /// Highest weight of `g1` as a `g0`-module.
    pub fn phi(&self) -> &Weight {
        &self.phi
    }

    pub fn dsigma(&self) -> &[usize] {
        &self.dsigma
    }

    pub fn dsigma_node(&self, i: usize) -> usize {
        self.dsigma[i - 1]
    }

    /// `(dim V(phi), dim g - dim g0)`; the two must agree.
    pub fn g1_dimensions(&self) -> Result<(u64, u64)> {
        let v = charlib::weyl_dim_u64(&self.g0, &self.phi)?;
        let g0_dim = self.g0.lie_type().dim_algebra() as u64;
        Ok((v, self.outer.ambient().dim_algebra() as u64 - g0_dim))
    }
}

fn descending_fundamentals(g0: &RootSystem, i: usize, step: usize, scale: i64) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    let mut j = i as i64;
    while j >= 0 {
        out.insert(g0.fundamental(j as usize).scale(scale));
        j -= step as i64;
    }
    out
}

/// `P0+(i, m0)^sigma` for `1 <= m0 <= d_i^sigma`.
pub fn base_set_sigma(data: &TwistedData, i: usize, m0: usize) -> Result<BTreeSet<Weight>> {
    let g0 = &data.g0;
    g0.check_node(i)?;
    let d = data.dsigma_node(i);
    if m0 == 0 || m0 > d {
        return Err(KrError::InvalidLevel { level: m0, reason: format!("twisted base sets need 1 <= m <= {d}") });
    }
    let n = data.outer.n;
    let omega = g0.fundamental(i);
    Ok(match data.outer.family {
        OuterFamily::AEven if m0 < d => BTreeSet::from([omega.scale(m0 as i64)]),
        OuterFamily::AEven if i == n => {
            let mut s = descending_fundamentals(g0, i - 1, 1, 2);
            s.insert(omega.scale(4));
            s
        }
        OuterFamily::AEven => descending_fundamentals(g0, i, 1, 2),
        OuterFamily::AOdd => descending_fundamentals(g0, i, 2, 1),
        OuterFamily::D if i == n => BTreeSet::from([omega]),
        OuterFamily::D => descending_fundamentals(g0, i, 1, 1),
    })
}

/// Enumeration of `P0+(i, d_i^sigma)^sigma`.
///
/// The one-step differences must lie in `R_1+`. For the two-step differences the
/// `A` cases require `mu_s - mu_{s+2}` outside `R_0+ ∪ R_1+`; for `D_{n+1}` only
/// `R_1+` is excluded, since there `mu_s - mu_{s+2}` is always a long root of `g0`
/// (see [`two_step_long_roots`]).
pub fn enumerate_chain_sigma(data: &TwistedData, i: usize) -> Result<GradedChain> {
    data.g0.check_node(i)?;
    let d = data.dsigma_node(i);
    let set = base_set_sigma(data, i, d)?;
    let g0 = &data.g0;
    let top = g0.fundamental(i).scale(d as i64);
    let one = |c: &[i64]| data.in_r1_positive(c);
    let two_a = |c: &[i64]| !g0.is_positive_root_ints(c) && !data.in_r1_positive(c);
    let two_d = |c: &[i64]| !data.in_r1_positive(c);
    let two: (&str, &dyn Fn(&[i64]) -> bool) = match data.outer.family {
        OuterFamily::D => ("mu_s - mu_{s+2} not in R1+", &two_d),
        _ => ("mu_s - mu_{s+2} not in R0+ ∪ R1+", &two_a),
    };
    let weights = order_chain(g0, &top, &set, ("mu_s - mu_{s+1} in R1+", &one), two)?;
    Ok(GradedChain { node: i, level: d, weights })
}

/// Indices `s` where `mu_s - mu_{s+2}` is a positive root of `g0`.
pub fn two_step_long_roots(data: &TwistedData, i: usize) -> Result<Vec<usize>> {
    let chain = enumerate_chain_sigma(data, i)?;
    let g0 = &data.g0;
    Ok((0..chain.weights.len().saturating_sub(2))
        .filter(|&s| {
            g0.root_coords_int(&chain.weights[s].sub(&chain.weights[s + 2]))
                .is_some_and(|c| g0.is_positive_root_ints(&c))
        })
        .collect())
}

pub fn level_structure_sigma(data: &TwistedData, i: usize) -> Result<LevelStructure> {
    let chain = enumerate_chain_sigma(data, i)?;
    let mut residuals = vec![Weight::zero(data.g0.rank())];
    for m1 in 1..chain.level {
        let set = base_set_sigma(data, i, m1)?;
        debug_assert_eq!(set.len(), 1);
        residuals.push(set.into_iter().next().unwrap());
    }
    Ok(LevelStructure::new(chain, residuals))
}

pub fn pplus_sigma(data: &TwistedData, i: usize, m: usize) -> Result<BTreeSet<Weight>> {
    Ok(level_structure_sigma(data, i)?.pplus(m))
}

pub fn grade_sigma(data: &TwistedData, i: usize, m: usize, mu: &Weight) -> Result<usize> {
    data.g0.check_weight(mu)?;
    level_structure_sigma(data, i)?.grade(m, mu)
}

pub fn reduced_expression_sigma(data: &TwistedData, i: usize, m: usize, mu: &Weight) -> Result<Vec<usize>> {
    data.g0.check_weight(mu)?;
    level_structure_sigma(data, i)?.reduced_expression(m, mu)
}

pub fn graded_character_sigma(data: &TwistedData, i: usize, m: usize) -> Result<GradedCharacter> {
    level_structure_sigma(data, i)?.graded_character(m)
}

/// Character-level analogue of the tensor embedding for the twisted modules.
pub fn tensor_bound_check_sigma(data: &TwistedData, i: usize, m: usize, limits: &Limits) -> Result<bool> {
    level_structure_sigma(data, i)?.tensor_bound_check(&data.g0, m, limits)
}

/// True iff `KR^sigma(m omega_i)` is an evaluation module for every `m`.
pub fn ev_case_predicate(data: &TwistedData, i: usize) -> Result<bool> {
    Ok(enumerate_chain_sigma(data, i)?.length() == 0)
}
