//! Classical root systems and weight lattices.
//!
//! Simple roots are realised in the Bourbaki orthonormal coordinates and the
//! invariant form is rescaled so that the highest root has squared length 2.
//! Weights live in fundamental-weight coordinates, root-lattice elements in
//! simple-root coordinates.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{KrError, Result};
use crate::linalg::{invert, q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(KrError::InvalidRank { family: family.letter(), rank });
        }
        Ok(LieType { family, rank })
    }

    /// `B_1`, the fixed-point algebra of `A_2` under its diagram automorphism.
    /// Not reachable through [`LieType::new`].
    pub(crate) fn b1() -> Self {
        LieType { family: Family::B, rank: 1 }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Parses labels such as `"C3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            _ => return Err(KrError::Parse(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| KrError::Parse(s.to_string()))?;
        LieType::new(family, rank)
    }

    pub fn dim_algebra(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
        }
    }

    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact: u128 = (1..=n).product();
        match self.family {
            Family::A => fact * (n + 1),
            Family::B | Family::C => fact << n,
            Family::D => fact << (n - 1),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `omega_i` with `omega_0 = 0`; `i` is 1-based.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        if i > 0 {
            w.0[i - 1] = 1;
        }
        w
    }

    pub fn from_slice(c: &[i64]) -> Self {
        Weight(c.to_vec())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }
}

/// Rational element of `h*` in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootCoeffs(pub Vec<Rational>);

impl RootCoeffs {
    pub fn from_ints(c: &[i64]) -> Self {
        RootCoeffs(c.iter().map(|&x| q(x)).collect())
    }

    pub fn is_in_root_lattice(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_in_positive_cone(&self) -> bool {
        self.is_in_root_lattice() && self.0.iter().all(|c| !c.is_negative())
    }

    /// Integer coefficients, or an error if some coefficient is fractional.
    pub fn to_integers(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64().ok_or_else(|| KrError::NotInRootLattice(self.to_string()))
                } else {
                    Err(KrError::NotInRootLattice(self.to_string()))
                }
            })
            .collect()
    }

    pub fn height(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl fmt::Display for RootCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    simple_ambient: Vec<Vec<Rational>>,
    positive_roots: Vec<Vec<i64>>,
    theta: Vec<i64>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
    form_scale: Rational,
    /// normalised `(alpha_i, alpha_j)`
    form: Vec<Vec<Rational>>,
    dcheck: Vec<i64>,
    /// `D * (omega_i, omega_j)` with `D` the least common denominator
    gram_scaled: Vec<Vec<i64>>,
    gram_denominator: i64,
    positive_roots_fund: Vec<Weight>,
    root_index: HashMap<Vec<i64>, usize>,
}

fn bourbaki_simple_roots(t: LieType) -> Vec<Vec<Rational>> {
    let n = t.rank;
    let dim = if t.family == Family::A { n + 1 } else { n };
    let unit = |i: usize| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        v
    };
    let diff = |i: usize, j: usize, sign: i64| -> Vec<Rational> {
        let mut v = unit(i);
        v[j] += q(sign);
        v
    };
    (0..n)
        .map(|k| {
            if k + 1 < n || t.family == Family::A {
                return diff(k, k + 1, -1);
            }
            match t.family {
                Family::B => unit(n - 1),
                Family::C => unit(n - 1).into_iter().map(|x| x * q(2)).collect(),
                Family::D => diff(n - 2, n - 1, 1),
                Family::A => unreachable!(),
            }
        })
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl RootSystem {
    pub fn build(lie_type: LieType) -> Result<RootSystem> {
        if lie_type.rank < lie_type.family.min_rank() && lie_type != LieType::b1() {
            return Err(KrError::InvalidRank { family: lie_type.family.letter(), rank: lie_type.rank });
        }
        let n = lie_type.rank;
        let simple_ambient = bourbaki_simple_roots(lie_type);
        let euclid: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| dot(&simple_ambient[i], &simple_ambient[j])).collect())
            .collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = q(2) * &euclid[i][j] / &euclid[j][j];
                        assert!(c.is_integer());
                        c.to_integer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect();

        let positive_roots = enumerate_positive_roots(&cartan);
        let theta = positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .cloned()
            .expect("root system has roots");

        let theta_len: Rational = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .fold(Rational::zero(), |acc, (i, j)| {
                acc + q(theta[i]) * q(theta[j]) * &euclid[i][j]
            });
        let form_scale = q(2) / theta_len;
        let form: Vec<Vec<Rational>> =
            euclid.iter().map(|r| r.iter().map(|x| x * &form_scale).collect()).collect();
        let dcheck: Vec<i64> = (0..n)
            .map(|j| {
                let d = q(2) / &form[j][j];
                assert!(d.is_integer());
                d.to_integer().to_i64().unwrap()
            })
            .collect();

        let cartan_q: Vec<Vec<Rational>> =
            cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let cartan_inv = invert(&cartan_q).expect("Cartan matrix is invertible");

        // (omega_i, omega_j) = (A^{-1})_{ij} (alpha_j, alpha_j) / 2
        let gram: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| &cartan_inv[i][j] * &form[j][j] / q(2)).collect())
            .collect();
        let gram_denominator = gram
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()))
            .to_i64()
            .unwrap();
        let gram_scaled = gram
            .iter()
            .map(|r| r.iter().map(|x| (x * q(gram_denominator)).to_integer().to_i64().unwrap()).collect())
            .collect();

        let positive_roots_fund = positive_roots
            .iter()
            .map(|r| {
                Weight((0..n).map(|j| (0..n).map(|i| r[i] * cartan[i][j]).sum()).collect())
            })
            .collect();
        let root_index = positive_roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();

        Ok(RootSystem {
            lie_type,
            simple_ambient,
            positive_roots,
            theta,
            cartan,
            cartan_inv,
            form_scale,
            form,
            dcheck,
            gram_scaled,
            gram_denominator,
            positive_roots_fund,
            root_index,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn family(&self) -> Family {
        self.lie_type.family
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn simple_roots_ambient(&self) -> &[Vec<Rational>] {
        &self.simple_ambient
    }

    /// Positive roots in simple-root coordinates, ordered by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots in fundamental-weight coordinates, same order as [`Self::positive_roots`].
    pub fn positive_roots_fund(&self) -> &[Weight] {
        &self.positive_roots_fund
    }

    pub fn theta(&self) -> RootCoeffs {
        RootCoeffs::from_ints(&self.theta)
    }

    pub fn theta_ints(&self) -> &[i64] {
        &self.theta
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn form_scale(&self) -> &Rational {
        &self.form_scale
    }

    /// Normalised `(alpha_i, alpha_j)` with `(theta, theta) = 2`.
    pub fn form(&self) -> &[Vec<Rational>] {
        &self.form
    }

    /// `2 / (alpha_j, alpha_j)`, indexed from 0.
    pub fn dcheck(&self) -> &[i64] {
        &self.dcheck
    }

    /// `2 / (alpha_i, alpha_i)` for a 1-based node.
    pub fn dcheck_node(&self, i: usize) -> i64 {
        self.dcheck[i - 1]
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(KrError::InvalidNode { node: i, rank: self.rank() });
        }
        Ok(())
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(KrError::WeightLength(w.clone(), w.rank(), self.rank()));
        }
        Ok(())
    }

    /// Coefficient of `alpha_i` (1-based) in a root-lattice element.
    pub fn epsilon(&self, eta: &RootCoeffs, i: usize) -> Result<i64> {
        self.check_node(i)?;
        let ints = eta.to_integers()?;
        Ok(ints[i - 1])
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i - 1].clone())
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// Simple-root coordinates of a weight: `c^T A^{-1}`.
    pub fn to_root_coords(&self, lam: &Weight) -> RootCoeffs {
        let n = self.rank();
        RootCoeffs(
            (0..n)
                .map(|k| {
                    (0..n).fold(Rational::zero(), |acc, i| acc + q(lam.0[i]) * &self.cartan_inv[i][k])
                })
                .collect(),
        )
    }

    /// Inverse of [`Self::to_root_coords`]; fails if the result is not integral.
    pub fn from_root_coords(&self, eta: &RootCoeffs) -> Result<Weight> {
        let n = self.rank();
        let coords: Vec<Rational> = (0..n)
            .map(|j| (0..n).fold(Rational::zero(), |acc, i| acc + &eta.0[i] * q(self.cartan[i][j])))
            .collect();
        coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer().to_i64().unwrap())
                } else {
                    Err(KrError::NotInRootLattice(eta.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }

    /// Integer root coordinates of `lam`, or `None` if `lam` is not in the root lattice.
    pub fn root_coords_int(&self, lam: &Weight) -> Option<Vec<i64>> {
        self.to_root_coords(lam).to_integers().ok()
    }

    pub fn root_weight(&self, coeffs: &[i64]) -> Weight {
        let n = self.rank();
        Weight((0..n).map(|j| (0..n).map(|i| coeffs[i] * self.cartan[i][j]).sum()).collect())
    }

    pub fn is_positive_root(&self, eta: &RootCoeffs) -> bool {
        match eta.to_integers() {
            Ok(c) => self.root_index.contains_key(&c),
            Err(_) => false,
        }
    }

    pub fn is_positive_root_ints(&self, coeffs: &[i64]) -> bool {
        self.root_index.contains_key(coeffs)
    }

    pub fn positive_root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_index.get(coeffs).copied()
    }

    /// Ambient Bourbaki coordinates of a root-lattice element.
    pub fn ambient(&self, coeffs: &[i64]) -> Vec<Rational> {
        let dim = self.simple_ambient[0].len();
        let mut out = vec![Rational::zero(); dim];
        for (c, a) in coeffs.iter().zip(&self.simple_ambient) {
            for (o, x) in out.iter_mut().zip(a) {
                *o += q(*c) * x;
            }
        }
        out
    }

    /// Normalised squared length of a root-lattice element.
    pub fn length_sq(&self, coeffs: &[i64]) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += q(coeffs[i] * coeffs[j]) * &self.form[i][j];
            }
        }
        acc
    }

    /// Normalised inner product of two weights, as an exact rational.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Rational {
        Rational::new(self.inner_scaled(a, b).into(), self.gram_denominator.into())
    }

    /// `D * (a, b)` for the fixed denominator [`Self::gram_denominator`]; always integral.
    pub fn inner_scaled(&self, a: &Weight, b: &Weight) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            let row = &self.gram_scaled[i];
            let mut s = 0;
            for j in 0..n {
                s += row[j] * b.0[j];
            }
            acc += a.0[i] * s;
        }
        acc
    }

    pub fn gram_denominator(&self) -> i64 {
        self.gram_denominator
    }

    pub fn is_dominant(&self, lam: &Weight) -> bool {
        lam.0.iter().all(|&c| c >= 0)
    }

    /// Simple reflection `s_i` (1-based).
    pub fn reflect(&self, lam: &Weight, i: usize) -> Weight {
        let c = lam.0[i - 1];
        Weight(lam.0.iter().zip(&self.cartan[i - 1]).map(|(x, a)| x - c * a).collect())
    }

    /// Dominant conjugate of `lam` and the parity of the number of reflections used.
    pub fn dominant_conjugate(&self, lam: &Weight) -> (Weight, bool) {
        let mut w = lam.clone();
        let mut odd = false;
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            let c = w.0[i];
            for (x, a) in w.0.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
            odd = !odd;
        }
        (w, odd)
    }

    pub fn weyl_orbit(&self, lam: &Weight) -> BTreeSet<Weight> {
        let (start, _) = self.dominant_conjugate(lam);
        let mut seen = BTreeSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(w) = stack.pop() {
            for i in 1..=self.rank() {
                // only walking down from the dominant chamber is needed
                if w.0[i - 1] > 0 {
                    let r = self.reflect(&w, i);
                    if seen.insert(r.clone()) {
                        stack.push(r);
                    }
                }
            }
        }
        seen
    }

    /// Height of a root-lattice element given in simple-root coordinates.
    pub fn height(coeffs: &[i64]) -> i64 {
        coeffs.iter().sum()
    }
}

fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut all: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by(|a, b| RootSystem::height(a).cmp(&RootSystem::height(b)).then(b.cmp(a)));
    roots
}
