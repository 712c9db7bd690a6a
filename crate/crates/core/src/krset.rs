//! The sets `P+(i,m)`, their chain enumeration, reduced expressions, grades and
//! the graded characters of KR modules for `g[t]`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::charlib::{self, DominantCharacter};
use crate::error::{KrError, Result};
use crate::limits::Limits;
use crate::rootsys::{Family, RootSystem, Weight};

/// The enumerated base set `mu_0, ..., mu_k`; `mu_s` has index `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChain {
    pub node: usize,
    /// Level of the base set (`d_i` untwisted, `d_i^sigma` twisted).
    pub level: usize,
    pub weights: Vec<Weight>,
}

impl GradedChain {
    /// `k`, the index of the last element.
    pub fn length(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn get(&self, s: usize) -> &Weight {
        &self.weights[s]
    }
}

/// Grade `s` -> decomposition of the degree-`s` piece.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedCharacter {
    pub by_grade: BTreeMap<usize, DominantCharacter>,
}

impl GradedCharacter {
    pub fn new() -> Self {
        GradedCharacter::default()
    }

    pub fn add(&mut self, grade: usize, lam: Weight, mult: u64) {
        if mult > 0 {
            self.by_grade.entry(grade).or_default().add(lam, mult);
        }
    }

    pub fn grade(&self, s: usize) -> DominantCharacter {
        self.by_grade.get(&s).cloned().unwrap_or_default()
    }

    pub fn max_grade(&self) -> usize {
        self.by_grade.keys().next_back().copied().unwrap_or(0)
    }

    /// All constituents with grades forgotten.
    pub fn total(&self) -> DominantCharacter {
        let mut out = DominantCharacter::new();
        for c in self.by_grade.values() {
            out.merge(c);
        }
        out
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.total().is_multiplicity_free()
    }

    /// Dimensions of the graded pieces, grade 0 upwards: the coefficients of the
    /// dimension polynomial.
    pub fn dimension_polynomial(&self, rs: &RootSystem) -> Vec<BigUint> {
        (0..=self.max_grade()).map(|s| self.grade(s).dimension(rs)).collect()
    }

    /// Graded tensor product: grades add, constituents via Klimyk.
    pub fn tensor(&self, other: &GradedCharacter, rs: &RootSystem, limits: &Limits) -> Result<GradedCharacter> {
        let mut out = GradedCharacter::new();
        for (&b, chi_b) in &other.by_grade {
            let wc = charlib::expand(rs, chi_b, limits)?;
            for (&a, chi_a) in &self.by_grade {
                for (lam, m) in chi_a.iter() {
                    for (nu, k) in charlib::tensor_with_character(rs, lam, &wc)?.iter() {
                        out.add(a + b, nu.clone(), m * k);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Orders `set` by the height of `top - mu` and verifies the two chain conditions.
///
/// `one_step` is tested on `mu_j - mu_{j+1}`, `two_step` on `mu_j - mu_{j+2}`, both in
/// simple-root coordinates.
pub(crate) fn order_chain(
    rs: &RootSystem,
    top: &Weight,
    set: &BTreeSet<Weight>,
    one_step: (&str, &dyn Fn(&[i64]) -> bool),
    two_step: (&str, &dyn Fn(&[i64]) -> bool),
) -> Result<Vec<Weight>> {
    let mut keyed = Vec::with_capacity(set.len());
    for mu in set {
        let diff = top.sub(mu);
        let coeffs = rs
            .root_coords_int(&diff)
            .ok_or_else(|| KrError::NotInRootLattice(format!("{top} - {mu}")))?;
        if coeffs.iter().any(|&c| c < 0) {
            return Err(KrError::ChainViolation {
                first: top.clone(),
                second: mu.clone(),
                condition: "top - mu in Q+".into(),
            });
        }
        keyed.push((RootSystem::height(&coeffs), mu.clone()));
    }
    keyed.sort();
    let chain: Vec<Weight> = keyed.into_iter().map(|(_, w)| w).collect();
    let coords = |a: &Weight, b: &Weight| rs.root_coords_int(&a.sub(b)).expect("same coset");
    for j in 0..chain.len().saturating_sub(1) {
        if !(one_step.1)(&coords(&chain[j], &chain[j + 1])) {
            return Err(KrError::ChainViolation {
                first: chain[j].clone(),
                second: chain[j + 1].clone(),
                condition: one_step.0.to_string(),
            });
        }
    }
    for j in 0..chain.len().saturating_sub(2) {
        if !(two_step.1)(&coords(&chain[j], &chain[j + 2])) {
            return Err(KrError::ChainViolation {
                first: chain[j].clone(),
                second: chain[j + 2].clone(),
                condition: two_step.0.to_string(),
            });
        }
    }
    Ok(chain)
}

/// Chain plus the residual weights `m_1 omega_i` for `0 <= m_1 < d`; everything
/// level-dependent is derived from this.
#[derive(Clone, Debug)]
pub struct LevelStructure {
    chain: GradedChain,
    residuals: Vec<Weight>,
}

impl LevelStructure {
    pub(crate) fn new(chain: GradedChain, residuals: Vec<Weight>) -> Self {
        debug_assert_eq!(residuals.len(), chain.level);
        LevelStructure { chain, residuals }
    }

    pub fn chain(&self) -> &GradedChain {
        &self.chain
    }

    /// `m = d * m0 + m1` with `0 <= m1 < d`.
    pub fn split(&self, m: usize) -> (usize, usize) {
        (m / self.chain.level, m % self.chain.level)
    }

    fn sumsets(&self, k: usize) -> Vec<BTreeSet<Weight>> {
        let rank = self.chain.weights[0].rank();
        let mut out = vec![BTreeSet::from([Weight::zero(rank)])];
        for _ in 0..k {
            let prev = out.last().unwrap();
            let next = prev
                .iter()
                .flat_map(|a| self.chain.weights.iter().map(move |b| a.add(b)))
                .collect();
            out.push(next);
        }
        out
    }

    pub fn pplus(&self, m: usize) -> BTreeSet<Weight> {
        let (m0, m1) = self.split(m);
        let base = &self.residuals[m1];
        self.sumsets(m0).pop().unwrap().iter().map(|w| w.add(base)).collect()
    }

    /// Greedy-minimal indices `j_1, ..., j_{m0}` with
    /// `mu = m1 omega_i + mu_{j_1} + ... + mu_{j_{m0}}`.
    pub fn reduced_expression(&self, m: usize, mu: &Weight) -> Result<Vec<usize>> {
        let (m0, m1) = self.split(m);
        let sums = self.sumsets(m0);
        let not_in = || KrError::NotInSet { weight: mu.clone(), node: self.chain.node, level: m };
        let mut rest = mu.sub(&self.residuals[m1]);
        if !sums[m0].contains(&rest) {
            return Err(not_in());
        }
        let mut out = Vec::with_capacity(m0);
        for r in 1..=m0 {
            let j = (0..self.chain.weights.len())
                .find(|&j| sums[m0 - r].contains(&rest.sub(&self.chain.weights[j])))
                .ok_or_else(|| {
                    KrError::TheoremCheck(format!("greedy reduced expression stalls for {mu} at step {r}"))
                })?;
            rest = rest.sub(&self.chain.weights[j]);
            out.push(j);
        }
        Ok(out)
    }

    pub fn grade(&self, m: usize, mu: &Weight) -> Result<usize> {
        Ok(self.reduced_expression(m, mu)?.iter().sum())
    }

    pub fn graded_character(&self, m: usize) -> Result<GradedCharacter> {
        let mut out = GradedCharacter::new();
        for mu in self.pplus(m) {
            let s = self.grade(m, &mu)?;
            out.add(s, mu, 1);
        }
        Ok(out)
    }

    /// Character-level consequence of the tensor embedding
    /// `KR(m omega_i) -> KR(m1 omega_i) (x) KR(d omega_i)^{(x) m0}`.
    pub fn tensor_bound_check(&self, rs: &RootSystem, m: usize, limits: &Limits) -> Result<bool> {
        let (m0, m1) = self.split(m);
        let target = self.graded_character(m)?;
        let fundamental = self.graded_character(self.chain.level)?;
        let mut product = self.graded_character(m1)?;
        for _ in 0..m0 {
            product = product.tensor(&fundamental, rs, limits)?;
        }
        Ok(target.by_grade.iter().all(|(s, chi)| chi.le(&product.grade(*s))))
    }
}

fn check_level(rs: &RootSystem, i: usize, m0: usize, d: usize) -> Result<()> {
    rs.check_node(i)?;
    if m0 == 0 || m0 > d {
        return Err(KrError::InvalidLevel { level: m0, reason: format!("base sets need 1 <= m <= {d}") });
    }
    Ok(())
}

fn step_two_list(rs: &RootSystem, i: usize, top: Weight) -> BTreeSet<Weight> {
    let mut out = BTreeSet::from([top]);
    let mut j = i as i64 - 2;
    while j >= 0 {
        out.insert(rs.fundamental(j as usize));
        j -= 2;
    }
    out
}

/// `P+(i, m0)` for `1 <= m0 <= d_i`.
pub fn base_set(rs: &RootSystem, i: usize, m0: usize) -> Result<BTreeSet<Weight>> {
    rs.check_node(i)?;
    let d = rs.dcheck_node(i) as usize;
    check_level(rs, i, m0, d)?;
    let eps = rs.epsilon(&rs.theta(), i)? as usize;
    let omega = rs.fundamental(i);
    if eps == 1 || m0 < d {
        return Ok(BTreeSet::from([omega.scale(m0 as i64)]));
    }
    Ok(match (d, rs.family()) {
        (1, _) => step_two_list(rs, i, omega),
        (_, Family::B) => step_two_list(rs, i, omega.scale(2)),
        _ => (0..=i).map(|j| rs.fundamental(j).scale(2)).collect(),
    })
}

/// The unique enumeration of `P+(i, d_i)`.
pub fn enumerate_chain(rs: &RootSystem, i: usize) -> Result<GradedChain> {
    let d = rs.dcheck_node(i) as usize;
    let set = base_set(rs, i, d)?;
    let top = rs.fundamental(i).scale(d as i64);
    let one = |c: &[i64]| rs.is_positive_root_ints(c);
    let two = |c: &[i64]| c.iter().all(|&x| x >= 0) && !rs.is_positive_root_ints(c);
    let weights = order_chain(rs, &top, &set, ("mu_j - mu_{j+1} in R+", &one), ("mu_j - mu_{j+2} in Q+ \\ R+", &two))?;
    Ok(GradedChain { node: i, level: d, weights })
}

pub fn level_structure(rs: &RootSystem, i: usize) -> Result<LevelStructure> {
    let chain = enumerate_chain(rs, i)?;
    let residuals = (0..chain.level).map(|m1| rs.fundamental(i).scale(m1 as i64)).collect();
    Ok(LevelStructure::new(chain, residuals))
}

/// `P+(i, m)`; `P+(i, 0) = {0}`.
pub fn pplus(rs: &RootSystem, i: usize, m: usize) -> Result<BTreeSet<Weight>> {
    Ok(level_structure(rs, i)?.pplus(m))
}

pub fn reduced_expression(rs: &RootSystem, i: usize, m: usize, mu: &Weight) -> Result<Vec<usize>> {
    rs.check_weight(mu)?;
    level_structure(rs, i)?.reduced_expression(m, mu)
}

/// `|mu|`, the sum of the reduced expression.
pub fn grade(rs: &RootSystem, i: usize, m: usize, mu: &Weight) -> Result<usize> {
    rs.check_weight(mu)?;
    level_structure(rs, i)?.grade(m, mu)
}

pub fn graded_character(rs: &RootSystem, i: usize, m: usize) -> Result<GradedCharacter> {
    level_structure(rs, i)?.graded_character(m)
}

pub fn tensor_bound_check(rs: &RootSystem, i: usize, m: usize, limits: &Limits) -> Result<bool> {
    level_structure(rs, i)?.tensor_bound_check(rs, m, limits)
}
