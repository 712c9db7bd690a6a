//! Finite-dimensional representations given by exact Chevalley-generator matrices.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{ToPrimitive, Zero};

use crate::charlib::{self, WeightCharacter};
use crate::error::{KrError, Result};
use crate::limits::Limits;
use crate::linalg::{q, Echelon, Rational, SVec, SparseMatrix};
use crate::report::CheckReport;
use crate::rootsys::{Family, RootSystem, Weight};

/// A representation with a weight basis: every basis vector is a simultaneous
/// eigenvector of the `h_i`, with weight `weights[k]`.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub e: Vec<SparseMatrix>,
    pub f: Vec<SparseMatrix>,
    pub h: Vec<SparseMatrix>,
    pub weights: Vec<Weight>,
    pub highest_vector: SVec,
    pub highest_weight: Weight,
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn character(&self) -> WeightCharacter {
        self.weights.iter().map(|w| (w.clone(), 1)).collect()
    }

    /// `Lambda^k` of this representation, basis = increasing `k`-subsets.
    pub fn wedge(&self, k: usize, limits: &Limits) -> Result<MatrixRep> {
        let n = self.dim();
        let subsets = k_subsets(n, k);
        limits.check(format!("wedge^{k} of a {n}-dimensional space"), subsets.len() as u64)?;
        let index: BTreeMap<Vec<usize>, usize> = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let lift = |m: &SparseMatrix| -> SparseMatrix {
            let mut entries = Vec::new();
            for (col, s) in subsets.iter().enumerate() {
                for (pos, &src) in s.iter().enumerate() {
                    for (dst, v) in m.col(src).iter() {
                        if dst != src && s.contains(&dst) {
                            continue;
                        }
                        let mut t = s.clone();
                        t[pos] = dst;
                        // sort t, tracking the sign of the permutation
                        let mut sign = 1i64;
                        let mut j = pos;
                        while j > 0 && t[j - 1] > t[j] {
                            t.swap(j - 1, j);
                            sign = -sign;
                            j -= 1;
                        }
                        while j + 1 < t.len() && t[j] > t[j + 1] {
                            t.swap(j, j + 1);
                            sign = -sign;
                            j += 1;
                        }
                        entries.push((index[&t], col, v * q(sign)));
                    }
                }
            }
            SparseMatrix::from_entries(subsets.len(), subsets.len(), entries)
        };
        let weights: Vec<Weight> = subsets
            .iter()
            .map(|s| s.iter().fold(Weight::zero(self.rank()), |acc, &i| acc.add(&self.weights[i])))
            .collect();
        let lifted = |ms: &[SparseMatrix]| ms.iter().map(lift).collect::<Vec<_>>();
        let (e, f, h) = (lifted(&self.e), lifted(&self.f), lifted(&self.h));
        // highest weight of the wedge: any weight maximising the pairing with rho
        let top = (0..subsets.len()).max_by_key(|&i| weights[i].0.iter().sum::<i64>()).unwrap_or(0);
        Ok(MatrixRep {
            e,
            f,
            h,
            highest_weight: weights[top].clone(),
            weights,
            highest_vector: SVec::unit(top),
        })
    }

    /// Tensor product with the coproduct action; index `(a, b)` is `a * other.dim() + b`.
    pub fn tensor(&self, other: &MatrixRep, limits: &Limits) -> Result<MatrixRep> {
        let dim = self.dim() as u64 * other.dim() as u64;
        limits.check("tensor product of representations", dim)?;
        let ia = SparseMatrix::identity(self.dim());
        let ib = SparseMatrix::identity(other.dim());
        let comb = |x: &[SparseMatrix], y: &[SparseMatrix]| -> Vec<SparseMatrix> {
            x.iter().zip(y).map(|(a, b)| a.kron(&ib).add(&ia.kron(b))).collect()
        };
        let weights = self.weights.iter().flat_map(|a| other.weights.iter().map(move |b| a.add(b))).collect();
        Ok(MatrixRep {
            e: comb(&self.e, &other.e),
            f: comb(&self.f, &other.f),
            h: comb(&self.h, &other.h),
            weights,
            highest_vector: kron_vec(&self.highest_vector, &other.highest_vector, other.dim()),
            highest_weight: self.highest_weight.add(&other.highest_weight),
        })
    }

    /// Exact checks of the Chevalley relations, the highest vector and (for an
    /// irreducible module) the character against Freudenthal.
    pub fn verify(&self, rs: &RootSystem, irreducible: bool, limits: &Limits) -> Result<CheckReport> {
        let n = self.rank();
        let a = rs.cartan();
        let mut report = CheckReport::new(format!("representation V{} (dim {})", self.highest_weight, self.dim()));
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.h[i].commutator(&self.e[j]) != self.e[j].scaled(&q(a[j][i])) {
                    bad.push(format!("[h{},e{}]", i + 1, j + 1));
                }
                if self.h[i].commutator(&self.f[j]) != self.f[j].scaled(&q(-a[j][i])) {
                    bad.push(format!("[h{},f{}]", i + 1, j + 1));
                }
                let ef = self.e[i].commutator(&self.f[j]);
                let ok = if i == j { ef == self.h[i] } else { ef.is_zero() };
                if !ok {
                    bad.push(format!("[e{},f{}]", i + 1, j + 1));
                }
                if !self.h[i].commutator(&self.h[j]).is_zero() {
                    bad.push(format!("[h{},h{}]", i + 1, j + 1));
                }
                if i != j {
                    // Serre: ad(e_i)^{1 - a_ji} e_j = 0, same for f
                    let pow = (1 - a[j][i]) as usize;
                    let (mut x, mut y) = (self.e[j].clone(), self.f[j].clone());
                    for _ in 0..pow {
                        x = self.e[i].commutator(&x);
                        y = self.f[i].commutator(&y);
                    }
                    if !x.is_zero() || !y.is_zero() {
                        bad.push(format!("Serre({},{})", i + 1, j + 1));
                    }
                }
            }
        }
        report.push("Chevalley and Serre relations", format!("{} failures {:?}", bad.len(), bad), bad.is_empty());
        let weight_ok = self.h.iter().enumerate().all(|(i, h)| {
            (0..self.dim()).all(|k| h.col(k) == &SVec::unit(k).scaled(&q(self.weights[k].0[i])))
        });
        report.push("weight basis", "h_i diagonal with the recorded weights", weight_ok);
        let hv = &self.highest_vector;
        let killed = self.e.iter().all(|e| e.mul_vec(hv).is_zero());
        let eigen = self
            .h
            .iter()
            .enumerate()
            .all(|(i, h)| h.mul_vec(hv) == hv.scaled(&q(self.highest_weight.0[i])));
        report.push("highest vector", format!("weight {}", self.highest_weight), killed && eigen && !hv.is_zero());
        if irreducible {
            let expected = charlib::weight_mults(rs, &self.highest_weight, limits)?;
            report.push(
                "character matches Freudenthal",
                format!("dim {} vs {}", self.dim(), expected.dimension()),
                self.character() == expected,
            );
        }
        Ok(report)
    }
}

pub(crate) fn kron_vec(a: &SVec, b: &SVec, nb: usize) -> SVec {
    SVec::from_pairs(a.iter().flat_map(|(i, x)| b.iter().map(move |(k, y)| (i * nb + k, x * y))))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Position of `v_k` (`k` in `1..=n`, `-n..=-1`, and `0` for `B_n`) in the defining representation.
fn slot(family: Family, n: usize, k: i64) -> usize {
    let n_i = n as i64;
    match (family, k) {
        (Family::A, _) => (k - 1) as usize,
        (_, 1..) => (k - 1) as usize,
        (Family::B, 0) => n,
        (Family::B, _) => (2 * n_i + 1 + k) as usize,
        (_, _) => (2 * n_i + k) as usize,
    }
}

/// The defining representation of `sl_{n+1}`, `so_{2n+1}`, `sp_{2n}` or `so_{2n}`.
pub fn defining_rep(rs: &RootSystem) -> MatrixRep {
    let n = rs.rank();
    let fam = rs.family();
    let dim = match fam {
        Family::A => n + 1,
        Family::B => 2 * n + 1,
        Family::C | Family::D => 2 * n,
    };
    let unit = |r: i64, c: i64, v: i64| (slot(fam, n, r), slot(fam, n, c), q(v));
    let mat = |entries: Vec<(usize, usize, Rational)>| SparseMatrix::from_entries(dim, dim, entries);
    let mut e = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    for i in 1..=n as i64 {
        let (ei, fi) = if fam == Family::A {
            (vec![unit(i, i + 1, 1)], vec![unit(i + 1, i, 1)])
        } else if i < n as i64 {
            (
                vec![unit(i, i + 1, 1), unit(-(i + 1), -i, -1)],
                vec![unit(i + 1, i, 1), unit(-i, -(i + 1), -1)],
            )
        } else {
            match fam {
                Family::B => (vec![unit(i, 0, 1), unit(0, -i, -1)], vec![unit(0, i, 2), unit(-i, 0, -2)]),
                Family::C => (vec![unit(i, -i, 1)], vec![unit(-i, i, 1)]),
                Family::D => (
                    vec![unit(i - 1, -i, 1), unit(i, -(i - 1), -1)],
                    vec![unit(-i, i - 1, 1), unit(-(i - 1), i, -1)],
                ),
                Family::A => unreachable!(),
            }
        };
        e.push(mat(ei));
        f.push(mat(fi));
    }
    let h: Vec<SparseMatrix> = e.iter().zip(&f).map(|(a, b)| a.commutator(b)).collect();
    let weights: Vec<Weight> = (0..dim)
        .map(|k| Weight(h.iter().map(|m| m.get(k, k).to_integer().to_i64().unwrap()).collect()))
        .collect();
    MatrixRep {
        e,
        f,
        h,
        highest_weight: rs.fundamental(1),
        weights,
        highest_vector: SVec::unit(0),
    }
}

/// Closure of `start` under `ops`, grouped by the key of each homogeneous vector.
///
/// Every op must map a key-homogeneous vector to a key-homogeneous one; the key of
/// a vector is read from its pivot.
pub(crate) fn cyclic_closure<K: Ord + Clone>(
    starts: &[SVec],
    ops: &[&SparseMatrix],
    key: impl Fn(usize) -> K,
) -> BTreeMap<K, Echelon> {
    let mut blocks: BTreeMap<K, Echelon> = BTreeMap::new();
    let mut queue: VecDeque<SVec> = VecDeque::new();
    let insert = |v: SVec, blocks: &mut BTreeMap<K, Echelon>, queue: &mut VecDeque<SVec>| {
        if let Some(p) = v.pivot() {
            let ech = blocks.entry(key(p)).or_default();
            if ech.insert(&v).is_some() {
                queue.push_back(v);
            }
        }
    };
    for s in starts {
        insert(s.clone(), &mut blocks, &mut queue);
    }
    while let Some(v) = queue.pop_front() {
        for op in ops {
            insert(op.mul_vec(&v), &mut blocks, &mut queue);
        }
    }
    blocks
}

/// A subspace presented as a union of echelon blocks, with a flat basis.
pub(crate) struct BlockBasis<K> {
    pub keys: Vec<K>,
    pub blocks: BTreeMap<K, Echelon>,
    pub offsets: BTreeMap<K, usize>,
    pub dim: usize,
}

impl<K: Ord + Clone> BlockBasis<K> {
    pub fn new(blocks: BTreeMap<K, Echelon>) -> Self {
        let mut offsets = BTreeMap::new();
        let mut keys = Vec::new();
        let mut dim = 0;
        for (k, e) in &blocks {
            offsets.insert(k.clone(), dim);
            for _ in 0..e.rank() {
                keys.push(k.clone());
            }
            dim += e.rank();
        }
        BlockBasis { keys, blocks, offsets, dim }
    }

    /// Ambient vector of basis element `idx`.
    pub fn vector(&self, idx: usize) -> &SVec {
        let k = &self.keys[idx];
        &self.blocks[k].rows()[idx - self.offsets[k]]
    }

    /// Coordinates of an ambient vector of key `k` that lies in the subspace.
    pub fn coords(&self, v: &SVec, key: impl Fn(usize) -> K) -> Result<SVec> {
        let Some(p) = v.pivot() else { return Ok(SVec::new()) };
        let k = key(p);
        let ech = self
            .blocks
            .get(&k)
            .ok_or_else(|| KrError::TheoremCheck("operator leaves the subspace".into()))?;
        if !ech.contains(v) {
            return Err(KrError::TheoremCheck("operator leaves the subspace".into()));
        }
        let off = self.offsets[&k];
        Ok(SVec::from_pairs(
            ech.coords(v).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(r, c)| (off + r, c)),
        ))
    }

    /// Matrix of an ambient operator restricted to the (invariant) subspace.
    pub fn restrict(&self, op: &SparseMatrix, key: impl Fn(usize) -> K + Copy) -> Result<SparseMatrix> {
        let cols = (0..self.dim).map(|j| self.coords(&op.mul_vec(self.vector(j)), key)).collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(self.dim, cols))
    }
}

/// Splits `lam` into the highest weights of wedge powers of the defining
/// representation: `(k, weight)` pairs.
fn wedge_blocks(rs: &RootSystem, lam: &Weight) -> Result<Vec<(usize, Weight)>> {
    let n = rs.rank();
    let fam = rs.family();
    let mut rest = lam.clone();
    let mut blocks = Vec::new();
    let outside = || KrError::OutsideModforgeScope(lam.clone());
    match fam {
        Family::B => {
            let c = rest.0[n - 1];
            if c % 2 != 0 {
                return Err(outside());
            }
            for _ in 0..c / 2 {
                blocks.push((n, rs.fundamental(n).scale(2)));
            }
            rest.0[n - 1] = 0;
        }
        Family::D => {
            let (a, b) = (rest.0[n - 2], rest.0[n - 1]);
            let both = a.min(b);
            for _ in 0..both {
                blocks.push((n - 1, rs.fundamental(n - 1).add(&rs.fundamental(n))));
            }
            let (ra, rb) = (a - both, b - both);
            if ra % 2 != 0 || rb % 2 != 0 {
                return Err(outside());
            }
            for _ in 0..ra / 2 {
                blocks.push((n, rs.fundamental(n - 1).scale(2)));
            }
            for _ in 0..rb / 2 {
                blocks.push((n, rs.fundamental(n).scale(2)));
            }
            rest.0[n - 2] = 0;
            rest.0[n - 1] = 0;
        }
        Family::A | Family::C => {}
    }
    for i in 1..=n {
        for _ in 0..rest.0[i - 1] {
            blocks.push((i, rs.fundamental(i)));
        }
    }
    Ok(blocks)
}

/// A nonzero vector of `rep` of weight `w` killed by every `e_i`.
fn singular_vector(rep: &MatrixRep, w: &Weight) -> Option<SVec> {
    let idx: Vec<usize> = (0..rep.dim()).filter(|&k| &rep.weights[k] == w).collect();
    let rows: Vec<SVec> = rep
        .e
        .iter()
        .flat_map(|e| {
            let block = e.block(&(0..rep.dim()).collect::<Vec<_>>(), &idx);
            block.rows()
        })
        .collect();
    let ns = crate::linalg::nullspace(&rows, idx.len());
    ns.first().map(|v| v.remap(|k| Some(idx[k])))
}

/// Irreducible `V(lam)`, realised as the cyclic span of a highest-weight vector in
/// a tensor product of wedge powers of the defining representation.
pub fn highest_module(rs: &RootSystem, lam: &Weight, limits: &Limits) -> Result<MatrixRep> {
    rs.check_weight(lam)?;
    if !rs.is_dominant(lam) {
        return Err(KrError::NotDominant(lam.clone()));
    }
    let n = rs.rank();
    let blocks = wedge_blocks(rs, lam)?;
    let defining = defining_rep(rs);
    if blocks.is_empty() {
        let zero = || vec![SparseMatrix::zeros(1, 1); n];
        return Ok(MatrixRep {
            e: zero(),
            f: zero(),
            h: zero(),
            weights: vec![Weight::zero(n)],
            highest_vector: SVec::unit(0),
            highest_weight: lam.clone(),
        });
    }
    let mut ambient: Option<MatrixRep> = None;
    let mut wedges: BTreeMap<(usize, Weight), MatrixRep> = BTreeMap::new();
    for (k, w) in &blocks {
        if !wedges.contains_key(&(*k, w.clone())) {
            let mut wk = defining.wedge(*k, limits)?;
            wk.highest_vector = singular_vector(&wk, w).ok_or_else(|| KrError::OutsideModforgeScope(w.clone()))?;
            wk.highest_weight = w.clone();
            wedges.insert((*k, w.clone()), wk);
        }
        let wk = &wedges[&(*k, w.clone())];
        ambient = Some(match ambient {
            None => wk.clone(),
            Some(a) => a.tensor(wk, limits)?,
        });
    }
    let ambient = ambient.unwrap();
    let ops: Vec<&SparseMatrix> = ambient.f.iter().collect();
    let key = |i: usize| ambient.weights[i].clone();
    let basis = BlockBasis::new(cyclic_closure(std::slice::from_ref(&ambient.highest_vector), &ops, key));
    let restrict_all = |ms: &[SparseMatrix]| ms.iter().map(|m| basis.restrict(m, key)).collect::<Result<Vec<_>>>();
    let e = restrict_all(&ambient.e)?;
    let f = restrict_all(&ambient.f)?;
    let h = restrict_all(&ambient.h)?;
    let highest_vector = basis.coords(&ambient.highest_vector, key)?;
    Ok(MatrixRep { e, f, h, weights: basis.keys.clone(), highest_vector, highest_weight: lam.clone() })
}
