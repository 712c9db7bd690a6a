//! The submodule of `KR(m_1 omega_i) (x) KR(d_i omega_i)^{(x) m_0}` generated by
//! the tensor product of the generators.

use crate::charlib::{decompose_character, WeightCharacter};
use crate::error::{KrError, Result};
use crate::krset::{graded_character, GradedCharacter};
use crate::limits::Limits;
use crate::linalg::{SVec, SparseMatrix};
use crate::report::CheckReport;
use crate::rootsys::{RootSystem, Weight};

use super::current::{graded_weights, kr_module, CurrentModule};
use super::rep::{cyclic_closure, kron_vec};

/// The operators needed to generate a `g[t]`-submodule: `e_j`, `f_j` and `x^-_theta (x) t`.
#[derive(Clone)]
struct Generators {
    weights: Vec<Weight>,
    grades: Vec<usize>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
    lowest_t: SparseMatrix,
    top: SVec,
}

impl Generators {
    fn from_module(rs: &RootSystem, cm: &CurrentModule) -> Self {
        let lie = &cm.lie;
        let n = lie.rank();
        let neg_theta: Vec<i64> = rs.theta_ints().iter().map(|c| -c).collect();
        Generators {
            weights: cm.weights.clone(),
            grades: cm.grades.clone(),
            e: (0..n).map(|j| cm.act0[lie.e(j)].clone()).collect(),
            f: (0..n).map(|j| cm.act0[lie.f(j)].clone()).collect(),
            lowest_t: cm.act1[lie.root_vector(&neg_theta).unwrap()].clone(),
            top: cm.generator.clone(),
        }
    }

    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn tensor(&self, other: &Generators) -> Generators {
        let ia = SparseMatrix::identity(self.dim());
        let ib = SparseMatrix::identity(other.dim());
        let sum = |a: &SparseMatrix, b: &SparseMatrix| a.kron(&ib).add(&ia.kron(b));
        Generators {
            weights: self.weights.iter().flat_map(|a| other.weights.iter().map(move |b| a.add(b))).collect(),
            grades: self.grades.iter().flat_map(|a| other.grades.iter().map(move |b| a + b)).collect(),
            e: self.e.iter().zip(&other.e).map(|(a, b)| sum(a, b)).collect(),
            f: self.f.iter().zip(&other.f).map(|(a, b)| sum(a, b)).collect(),
            lowest_t: sum(&self.lowest_t, &other.lowest_t),
            top: kron_vec(&self.top, &other.top, other.dim()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TensorSubmodule {
    pub ambient_dim: usize,
    pub dim: usize,
    pub factor_dims: Vec<usize>,
    pub graded: GradedCharacter,
}

/// Builds the cyclic submodule and decomposes each graded piece.
pub fn kr_tensor_submodule(rs: &RootSystem, i: usize, m: usize, limits: &Limits) -> Result<TensorSubmodule> {
    rs.check_node(i)?;
    if m == 0 {
        return Err(KrError::InvalidLevel { level: m, reason: "level must be positive".into() });
    }
    let d = rs.dcheck_node(i) as usize;
    let (m0, m1) = (m / d, m % d);
    let mut levels = Vec::new();
    if m1 > 0 {
        levels.push(m1);
    }
    levels.extend(std::iter::repeat_n(d, m0));
    let mut factor_dims = Vec::with_capacity(levels.len());
    let mut ambient: u64 = 1;
    let mut built: Vec<(usize, Generators)> = Vec::new();
    for &lv in &levels {
        if !built.iter().any(|(l, _)| *l == lv) {
            let cm = kr_module(rs, i, lv, limits)?;
            built.push((lv, Generators::from_module(rs, &cm)));
        }
        let g = &built.iter().find(|(l, _)| *l == lv).unwrap().1;
        factor_dims.push(g.dim());
        ambient = ambient.saturating_mul(g.dim() as u64);
    }
    limits.check(format!("tensor product of KR modules for node {i}, level {m}"), ambient)?;
    let lookup = |lv: usize| &built.iter().find(|(l, _)| *l == lv).unwrap().1;
    let mut acc: Option<Generators> = None;
    for &lv in &levels {
        let g = lookup(lv);
        acc = Some(match acc {
            None => g.clone(),
            Some(a) => a.tensor(g),
        });
    }
    let total = acc.unwrap();
    let ops: Vec<&SparseMatrix> = total.e.iter().chain(&total.f).chain(std::iter::once(&total.lowest_t)).collect();
    let blocks = cyclic_closure(std::slice::from_ref(&total.top), &ops, |k| (total.grades[k], total.weights[k].clone()));
    let dim = blocks.values().map(|e| e.rank()).sum();
    let mut graded = GradedCharacter::new();
    for (s, ws) in graded_weights(&blocks, |e| e.rank()) {
        let chi: WeightCharacter = ws.into_iter().collect();
        for (lam, k) in decompose_character(rs, &chi)?.iter() {
            graded.add(s, lam.clone(), k);
        }
    }
    Ok(TensorSubmodule { ambient_dim: total.dim(), dim, factor_dims, graded })
}

/// Compares the tensor submodule with the graded character predicted by the sets `P+(i, m)`.
pub fn check_tensor_submodule(rs: &RootSystem, i: usize, m: usize, limits: &Limits) -> Result<CheckReport> {
    let sub = kr_tensor_submodule(rs, i, m, limits)?;
    let expected = graded_character(rs, i, m)?;
    let mut report = CheckReport::new(format!(
        "{} node {i} level {m}: factors {:?}, submodule {} of {}",
        rs.lie_type(),
        sub.factor_dims,
        sub.dim,
        sub.ambient_dim
    ));
    let max = sub.graded.max_grade().max(expected.max_grade());
    for s in 0..=max {
        let (got, want) = (sub.graded.grade(s), expected.grade(s));
        report.push(format!("grade {s}"), format!("got {:?}, expected {:?}", got, want), got == want);
    }
    Ok(report)
}
