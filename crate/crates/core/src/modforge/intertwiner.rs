//! Equivariant maps into an irreducible module.
//!
//! A map `A -> V(mu)` is fixed by the functional "highest coordinate of the image",
//! which is a functional on `A_mu` killing every `f_i(A_{mu + alpha_i})`. Each such
//! functional extends uniquely: coordinate functionals of `V(mu)` are
//! `b* . e_{i_1} ... e_{i_k}`, and their pullbacks are `l . e_{i_1} ... e_{i_k}`.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use crate::error::{KrError, Result};
use crate::linalg::{invert, nullspace, Echelon, Rational, SVec, SparseMatrix};
use crate::rootsys::Weight;

use super::rep::MatrixRep;

fn indices_of(rep: &MatrixRep, w: &Weight) -> Vec<usize> {
    (0..rep.dim()).filter(|&k| &rep.weights[k] == w).collect()
}

/// Whether `phi` commutes with every Chevalley generator.
pub fn is_equivariant(phi: &SparseMatrix, source: &MatrixRep, target: &MatrixRep) -> bool {
    let pairs = source.e.iter().zip(&target.e).chain(source.f.iter().zip(&target.f)).chain(source.h.iter().zip(&target.h));
    pairs.into_iter().all(|(a, b)| phi.mul(a) == b.mul(phi))
}

/// Basis of `Hom_g(source, target)` for an irreducible `target`; every map is
/// checked for exact equivariance before it is returned.
pub fn intertwiners(source: &MatrixRep, target: &MatrixRep) -> Result<Vec<SparseMatrix>> {
    let mu = &target.highest_weight;
    let top = indices_of(source, mu);
    if top.is_empty() {
        return Ok(Vec::new());
    }
    let pos: BTreeMap<usize, usize> = top.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    // functionals on A_mu vanishing on the images f_i(A_{mu + alpha_i})
    let mut rows = Vec::new();
    for f in &source.f {
        for col in f.columns() {
            let r = col.remap(|i| pos.get(&i).copied());
            if !r.is_zero() {
                rows.push(r);
            }
        }
    }
    let functionals = nullspace(&rows, top.len());
    let star = target
        .highest_vector
        .pivot()
        .filter(|_| target.highest_vector.nnz() == 1)
        .ok_or_else(|| KrError::Precondition("target highest vector must be a basis vector".into()))?;
    let mut out = Vec::with_capacity(functionals.len());
    for l in functionals {
        let l_full = l.remap(|k| Some(top[k]));
        let phi = extend(source, target, &SVec::unit(star), &l_full)?;
        if !is_equivariant(&phi, source, target) {
            return Err(KrError::TheoremCheck("constructed map is not equivariant".into()));
        }
        out.push(phi);
    }
    Ok(out)
}

/// Builds the map whose coordinate functionals pull back as described in the module docs.
fn extend(source: &MatrixRep, target: &MatrixRep, b_star: &SVec, l: &SVec) -> Result<SparseMatrix> {
    let ea_t: Vec<SparseMatrix> = source.e.iter().map(|m| m.transpose()).collect();
    let eb_t: Vec<SparseMatrix> = target.e.iter().map(|m| m.transpose()).collect();
    // per target weight: echelon of target functionals plus the accepted pairs
    let mut blocks: BTreeMap<Weight, (Echelon, Vec<(SVec, SVec)>)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back((b_star.clone(), l.clone()));
    let accept = |rb: SVec, ra: SVec, blocks: &mut BTreeMap<Weight, (Echelon, Vec<(SVec, SVec)>)>| -> bool {
        let Some(p) = rb.pivot() else { return false };
        let entry = blocks.entry(target.weights[p].clone()).or_default();
        if entry.0.insert(&rb).is_some() {
            entry.1.push((rb, ra));
            true
        } else {
            false
        }
    };
    while let Some((rb, ra)) = queue.pop_front() {
        if !accept(rb.clone(), ra.clone(), &mut blocks) {
            continue;
        }
        for (ta, tb) in ea_t.iter().zip(&eb_t) {
            let nb = tb.mul_vec(&rb);
            if !nb.is_zero() {
                queue.push_back((nb, ta.mul_vec(&ra)));
            }
        }
    }
    let mut cols: Vec<SVec> = vec![SVec::new(); source.dim()];
    for (w, (_, pairs)) in &blocks {
        let tb = indices_of(target, w);
        let sa = indices_of(source, w);
        if pairs.len() != tb.len() {
            return Err(KrError::TheoremCheck(format!("functionals do not span the weight space {w}")));
        }
        let bpos: BTreeMap<usize, usize> = tb.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let r: Vec<Vec<Rational>> = pairs
            .iter()
            .map(|(rb, _)| {
                let mut row = vec![Rational::zero(); tb.len()];
                for (i, v) in rb.iter() {
                    row[bpos[&i]] = v.clone();
                }
                row
            })
            .collect();
        let rinv = invert(&r).ok_or_else(|| KrError::TheoremCheck("singular functional block".into()))?;
        for &a in &sa {
            // (L a)_k = ra_k[a]; phi(a) = R^{-1} (L a)
            let la: Vec<Rational> = pairs.iter().map(|(_, ra)| ra.get(a).cloned().unwrap_or_else(Rational::zero)).collect();
            let col = SVec::from_pairs(tb.iter().enumerate().map(|(k, &b)| {
                let v: Rational = rinv[k].iter().zip(&la).map(|(x, y)| x * y).sum();
                (b, v)
            }));
            cols[a] = col;
        }
    }
    Ok(SparseMatrix::from_columns(target.dim(), cols))
}
