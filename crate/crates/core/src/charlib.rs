//! Characters of finite-dimensional modules: dimensions, weight multiplicities,
//! tensor products and Hom dimensions.
//!
//! Tensor products are decomposed with Klimyk's formula. The brute-force path
//! (multiply weight characters, then strip highest weights) is kept alongside
//! as an independent check.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{KrError, Result};
use crate::limits::Limits;
use crate::rootsys::{RootSystem, Weight};

/// Multiplicities of irreducible constituents, keyed by dominant highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DominantCharacter(BTreeMap<Weight, u64>);

impl DominantCharacter {
    pub fn new() -> Self {
        DominantCharacter(BTreeMap::new())
    }

    pub fn irreducible(lam: Weight) -> Self {
        let mut c = DominantCharacter::new();
        c.add(lam, 1);
        c
    }

    pub fn add(&mut self, lam: Weight, mult: u64) {
        if mult > 0 {
            *self.0.entry(lam).or_insert(0) += mult;
        }
    }

    pub fn mult(&self, lam: &Weight) -> u64 {
        self.0.get(lam).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> + '_ {
        self.0.iter().map(|(w, &m)| (w, m))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.0.values().all(|&m| m == 1)
    }

    pub fn dimension(&self, rs: &RootSystem) -> BigUint {
        self.0.iter().map(|(w, &m)| weyl_dim_unchecked(rs, w) * BigUint::from(m)).sum()
    }

    /// Coefficientwise `self <= other`.
    pub fn le(&self, other: &DominantCharacter) -> bool {
        self.0.iter().all(|(w, &m)| m <= other.mult(w))
    }

    pub fn merge(&mut self, other: &DominantCharacter) {
        for (w, m) in other.iter() {
            self.add(w.clone(), m);
        }
    }
}

impl FromIterator<(Weight, u64)> for DominantCharacter {
    fn from_iter<T: IntoIterator<Item = (Weight, u64)>>(iter: T) -> Self {
        let mut c = DominantCharacter::new();
        for (w, m) in iter {
            c.add(w, m);
        }
        c
    }
}

/// Formal character: weight multiplicities of a module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightCharacter(BTreeMap<Weight, u64>);

impl WeightCharacter {
    pub fn new() -> Self {
        WeightCharacter(BTreeMap::new())
    }

    pub fn add(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.0.entry(w).or_insert(0) += mult;
        }
    }

    pub fn mult(&self, w: &Weight) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> + '_ {
        self.0.iter().map(|(w, &m)| (w, m))
    }

    pub fn dimension(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    /// Every weight doubled: the character evaluated at `x^2`.
    pub fn doubled(&self) -> WeightCharacter {
        WeightCharacter(self.0.iter().map(|(w, &m)| (w.scale(2), m)).collect())
    }

    pub fn product(&self, other: &WeightCharacter) -> WeightCharacter {
        let mut acc: HashMap<Weight, u64> = HashMap::new();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                *acc.entry(a.add(b)).or_insert(0) += ma * mb;
            }
        }
        WeightCharacter(acc.into_iter().collect())
    }

    pub fn sum(&self, other: &WeightCharacter) -> WeightCharacter {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.add(w.clone(), m);
        }
        out
    }
}

impl FromIterator<(Weight, u64)> for WeightCharacter {
    fn from_iter<T: IntoIterator<Item = (Weight, u64)>>(iter: T) -> Self {
        let mut c = WeightCharacter::new();
        for (w, m) in iter {
            c.add(w, m);
        }
        c
    }
}

fn require_dominant(rs: &RootSystem, lam: &Weight) -> Result<()> {
    rs.check_weight(lam)?;
    if !rs.is_dominant(lam) {
        return Err(KrError::NotDominant(lam.clone()));
    }
    Ok(())
}

fn weyl_dim_unchecked(rs: &RootSystem, lam: &Weight) -> BigUint {
    let shifted = lam.add(&rs.rho());
    let rho = rs.rho();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for alpha in rs.positive_roots_fund() {
        num *= rs.inner_scaled(&shifted, alpha);
        den *= rs.inner_scaled(&rho, alpha);
    }
    let d = num / den;
    d.to_biguint().expect("Weyl dimension is positive")
}

/// Dimension of `V(lam)` by the Weyl dimension formula.
pub fn weyl_dim(rs: &RootSystem, lam: &Weight) -> Result<BigUint> {
    require_dominant(rs, lam)?;
    Ok(weyl_dim_unchecked(rs, lam))
}

/// Weyl dimension as a `u64`, saturating at `u64::MAX`.
pub fn weyl_dim_u64(rs: &RootSystem, lam: &Weight) -> Result<u64> {
    Ok(weyl_dim(rs, lam)?.to_u64().unwrap_or(u64::MAX))
}

/// Dominant weights `mu <= lam`, with the height of `lam - mu`, ordered by height.
pub fn dominant_weights_below(rs: &RootSystem, lam: &Weight) -> Result<Vec<(Weight, i64)>> {
    require_dominant(rs, lam)?;
    let heights: Vec<i64> = rs.positive_roots().iter().map(|r| RootSystem::height(r)).collect();
    let mut seen: HashMap<Weight, i64> = HashMap::new();
    seen.insert(lam.clone(), 0);
    let mut queue = VecDeque::from([lam.clone()]);
    while let Some(w) = queue.pop_front() {
        let h = seen[&w];
        for (alpha, ha) in rs.positive_roots_fund().iter().zip(&heights) {
            let next = w.sub(alpha);
            if rs.is_dominant(&next) && !seen.contains_key(&next) {
                seen.insert(next.clone(), h + ha);
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<(Weight, i64)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
    Ok(out)
}

/// Multiplicities of the dominant weights of `V(lam)` by Freudenthal's formula.
pub fn dominant_mults(rs: &RootSystem, lam: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let below = dominant_weights_below(rs, lam)?;
    let rho = rs.rho();
    let lr = lam.add(&rho);
    let top = rs.inner_scaled(&lr, &lr);
    let mut mults: HashMap<Weight, i64> = HashMap::new();
    mults.insert(lam.clone(), 1);
    for (mu, h) in below.iter() {
        if *h == 0 {
            continue;
        }
        let mut sum: i64 = 0;
        for alpha in rs.positive_roots_fund() {
            let mut nu = mu.add(alpha);
            loop {
                let (dom, _) = rs.dominant_conjugate(&nu);
                match mults.get(&dom) {
                    Some(&m) => sum += m * rs.inner_scaled(&nu, alpha),
                    None => break,
                }
                nu = nu.add(alpha);
            }
        }
        let mr = mu.add(&rho);
        let gap = top - rs.inner_scaled(&mr, &mr);
        debug_assert!(gap > 0 && (2 * sum) % gap == 0);
        mults.insert(mu.clone(), 2 * sum / gap);
    }
    Ok(mults.into_iter().filter(|(_, m)| *m > 0).map(|(w, m)| (w, m as u64)).collect())
}

/// Full weight character of `V(lam)`.
pub fn weight_mults(rs: &RootSystem, lam: &Weight, limits: &Limits) -> Result<WeightCharacter> {
    let dim = weyl_dim_u64(rs, lam)?;
    limits.check(format!("weights of V({lam})"), dim)?;
    Ok(expand_dominant_mults(rs, &dominant_mults(rs, lam)?))
}

fn expand_dominant_mults(rs: &RootSystem, dom: &BTreeMap<Weight, u64>) -> WeightCharacter {
    let mut out = WeightCharacter::new();
    for (mu, &m) in dom {
        for w in rs.weyl_orbit(mu) {
            out.add(w, m);
        }
    }
    out
}

/// Weight character of a direct sum of irreducibles.
pub fn expand(rs: &RootSystem, chi: &DominantCharacter, limits: &Limits) -> Result<WeightCharacter> {
    let dim = chi.dimension(rs).to_u64().unwrap_or(u64::MAX);
    limits.check("weights of a character expansion", dim)?;
    let mut dom: BTreeMap<Weight, u64> = BTreeMap::new();
    for (lam, m) in chi.iter() {
        for (mu, k) in dominant_mults(rs, lam)? {
            *dom.entry(mu).or_insert(0) += k * m;
        }
    }
    Ok(expand_dominant_mults(rs, &dom))
}

/// Klimyk: `V(lam) (x) M` for a module `M` given by its weight character.
pub fn tensor_with_character(
    rs: &RootSystem,
    lam: &Weight,
    chi: &WeightCharacter,
) -> Result<DominantCharacter> {
    require_dominant(rs, lam)?;
    let rho = rs.rho();
    let shifted = lam.add(&rho);
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (nu, m) in chi.iter() {
        let (dom, odd) = rs.dominant_conjugate(&shifted.add(nu));
        if dom.0.contains(&0) {
            continue;
        }
        let e = acc.entry(dom.sub(&rho)).or_insert(0);
        if odd {
            *e -= m as i64;
        } else {
            *e += m as i64;
        }
    }
    let mut out = DominantCharacter::new();
    for (w, m) in acc {
        if m < 0 {
            return Err(KrError::NotACharacter { weight: w, mult: m });
        }
        out.add(w, m as u64);
    }
    Ok(out)
}

/// `V(lam) (x) V(mu)` by Klimyk's formula, iterating over the weights of the smaller factor.
pub fn tensor_decompose(
    rs: &RootSystem,
    lam: &Weight,
    mu: &Weight,
    limits: &Limits,
) -> Result<DominantCharacter> {
    require_dominant(rs, lam)?;
    require_dominant(rs, mu)?;
    let (big, small) =
        if weyl_dim_unchecked(rs, lam) >= weyl_dim_unchecked(rs, mu) { (lam, mu) } else { (mu, lam) };
    let chi = weight_mults(rs, small, limits)?;
    tensor_with_character(rs, big, &chi)
}

/// Decomposition of a character by repeatedly stripping the highest remaining weight.
pub fn decompose_character(rs: &RootSystem, chi: &WeightCharacter) -> Result<DominantCharacter> {
    let rho = rs.rho();
    let mut rem: HashMap<Weight, i64> = chi
        .iter()
        .filter(|(w, _)| rs.is_dominant(w))
        .map(|(w, m)| (w.clone(), m as i64))
        .collect();
    let mut out = DominantCharacter::new();
    loop {
        if let Some((w, &m)) = rem.iter().find(|(_, &m)| m < 0) {
            return Err(KrError::NotACharacter { weight: w.clone(), mult: m });
        }
        let top = rem
            .iter()
            .filter(|(_, &m)| m > 0)
            .max_by(|a, b| {
                rs.inner_scaled(a.0, &rho).cmp(&rs.inner_scaled(b.0, &rho)).then_with(|| a.0.cmp(b.0))
            })
            .map(|(w, &m)| (w.clone(), m));
        let Some((lam, m)) = top else { break };
        for (mu, k) in dominant_mults(rs, &lam)? {
            let e = rem.entry(mu).or_insert(0);
            *e -= m * k as i64;
        }
        rem.retain(|_, v| *v != 0);
        out.add(lam, m as u64);
    }
    Ok(out)
}

/// Brute-force tensor decomposition: multiply weight characters, then strip.
pub fn brute_tensor_decompose(
    rs: &RootSystem,
    lam: &Weight,
    mu: &Weight,
    limits: &Limits,
) -> Result<DominantCharacter> {
    let d = weyl_dim_u64(rs, lam)?.saturating_mul(weyl_dim_u64(rs, mu)?);
    limits.check(format!("V({lam}) (x) V({mu})"), d)?;
    let a = weight_mults(rs, lam, limits)?;
    let b = weight_mults(rs, mu, limits)?;
    decompose_character(rs, &a.product(&b))
}

/// Character of the adjoint representation.
pub fn adjoint_char(rs: &RootSystem) -> WeightCharacter {
    let mut out = WeightCharacter::new();
    for alpha in rs.positive_roots_fund() {
        out.add(alpha.clone(), 1);
        out.add(alpha.neg(), 1);
    }
    out.add(Weight::zero(rs.rank()), rs.rank() as u64);
    out
}

/// Highest weight of the adjoint representation (the highest root).
pub fn adjoint_highest_weight(rs: &RootSystem) -> Weight {
    rs.root_weight(rs.theta_ints())
}

fn square_part(chi: &WeightCharacter, symmetric: bool) -> WeightCharacter {
    let entries: Vec<(&Weight, u64)> = chi.iter().collect();
    let mut acc: HashMap<Weight, u64> = HashMap::new();
    for (k, (a, ma)) in entries.iter().enumerate() {
        // same weight: C(m,2) antisymmetric or C(m+1,2) symmetric
        let diag = if symmetric { ma * (ma + 1) / 2 } else { ma * (ma - 1) / 2 };
        if diag > 0 {
            *acc.entry(a.scale(2)).or_insert(0) += diag;
        }
        for (b, mb) in &entries[k + 1..] {
            *acc.entry(a.add(b)).or_insert(0) += ma * mb;
        }
    }
    acc.into_iter().collect()
}

/// Exterior square `(chi(x)^2 - chi(x^2)) / 2`.
pub fn ext_square(chi: &WeightCharacter) -> WeightCharacter {
    square_part(chi, false)
}

/// Symmetric square `(chi(x)^2 + chi(x^2)) / 2`.
pub fn sym_square(chi: &WeightCharacter) -> WeightCharacter {
    square_part(chi, true)
}

/// A tensor factor for [`hom_dim`].
#[derive(Clone, Debug)]
pub enum Factor {
    Irrep(Weight),
    Char(WeightCharacter),
}

impl Factor {
    fn weight_character(&self, rs: &RootSystem, limits: &Limits) -> Result<WeightCharacter> {
        match self {
            Factor::Irrep(w) => weight_mults(rs, w, limits),
            Factor::Char(c) => Ok(c.clone()),
        }
    }

    fn decomposition(&self, rs: &RootSystem) -> Result<DominantCharacter> {
        match self {
            Factor::Irrep(w) => {
                require_dominant(rs, w)?;
                Ok(DominantCharacter::irreducible(w.clone()))
            }
            Factor::Char(c) => decompose_character(rs, c),
        }
    }
}

/// Decomposition of a tensor product of factors.
pub fn tensor_factors(rs: &RootSystem, factors: &[Factor], limits: &Limits) -> Result<DominantCharacter> {
    let Some(first) = factors.first() else {
        return Ok(DominantCharacter::irreducible(Weight::zero(rs.rank())));
    };
    let mut current = first.decomposition(rs)?;
    for f in &factors[1..] {
        let chi = f.weight_character(rs, limits)?;
        let mut next = DominantCharacter::new();
        for (kappa, m) in current.iter() {
            let part = tensor_with_character(rs, kappa, &chi)?;
            for (w, k) in part.iter() {
                next.add(w.clone(), k * m);
            }
        }
        current = next;
    }
    Ok(current)
}

/// `dim Hom_g(F_1 (x) ... (x) F_r, V(target))`.
pub fn hom_dim(rs: &RootSystem, factors: &[Factor], target: &Weight, limits: &Limits) -> Result<u64> {
    require_dominant(rs, target)?;
    let Some((last, init)) = factors.split_last() else {
        return Ok(u64::from(target.is_zero()));
    };
    let current = tensor_factors(rs, init, limits)?;
    let chi = last.weight_character(rs, limits)?;
    let mut total = 0;
    for (kappa, m) in current.iter() {
        total += m * tensor_with_character(rs, kappa, &chi)?.mult(target);
    }
    Ok(total)
}

/// True iff the character is constant on the orbits of every simple reflection.
pub fn is_weyl_invariant(rs: &RootSystem, chi: &WeightCharacter) -> bool {
    chi.iter().all(|(w, m)| (1..=rs.rank()).all(|i| chi.mult(&rs.reflect(w, i)) == m))
}

/// Dimension of a weight character as a big integer; a convenience for reports.
pub fn dim_of(chi: &WeightCharacter) -> BigUint {
    chi.iter().fold(BigUint::zero(), |acc, (_, m)| acc + BigUint::from(m))
}
