//! Graded `g[t]`-modules `V_0 + ... + V_k` where `x (x) t` acts through
//! intertwiners `p_s : g (x) V_s -> V_{s+1}` and `t^2` acts by zero.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{KrError, Result};
use crate::krset::enumerate_chain;
use crate::limits::Limits;
use crate::linalg::{Rational, SVec, SparseMatrix};
use crate::report::CheckReport;
use crate::rootsys::{RootSystem, Weight};

use super::intertwiner::intertwiners;
use super::lie::LieBasis;
use super::rep::{cyclic_closure, highest_module, kron_vec, MatrixRep};

#[derive(Clone, Debug)]
pub struct CurrentModule {
    pub node: usize,
    pub level: usize,
    pub lie: LieBasis,
    pub pieces: Vec<MatrixRep>,
    pub offsets: Vec<usize>,
    /// Weight and grade of every basis vector of the direct sum.
    pub weights: Vec<Weight>,
    pub grades: Vec<usize>,
    /// `act0[a]` is `x_a (x) 1`, `act1[a]` is `x_a (x) t`, both on the whole space.
    pub act0: Vec<SparseMatrix>,
    pub act1: Vec<SparseMatrix>,
    pub generator: SVec,
}

impl CurrentModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn piece_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(MatrixRep::dim).collect()
    }

    /// Highest vector of piece `s`, as a vector of the direct sum.
    pub fn piece_highest(&self, s: usize) -> SVec {
        let off = self.offsets[s];
        self.pieces[s].highest_vector.remap(|k| Some(k + off))
    }

    fn assemble(lie: LieBasis, node: usize, level: usize, pieces: Vec<MatrixRep>, maps: &[SparseMatrix]) -> Self {
        let mut offsets = Vec::with_capacity(pieces.len());
        let mut total = 0;
        for p in &pieces {
            offsets.push(total);
            total += p.dim();
        }
        let mut weights = Vec::with_capacity(total);
        let mut grades = Vec::with_capacity(total);
        for (s, p) in pieces.iter().enumerate() {
            weights.extend(p.weights.iter().cloned());
            grades.extend(std::iter::repeat_n(s, p.dim()));
        }
        let reps: Vec<Vec<SparseMatrix>> = pieces.iter().map(|p| lie.represent(p)).collect();
        let mut act0 = Vec::with_capacity(lie.dim());
        let mut act1 = Vec::with_capacity(lie.dim());
        for a in 0..lie.dim() {
            let mut c0 = Vec::with_capacity(total);
            let mut c1 = Vec::with_capacity(total);
            for (s, p) in pieces.iter().enumerate() {
                let off = offsets[s];
                for j in 0..p.dim() {
                    c0.push(reps[s][a].col(j).remap(|k| Some(k + off)));
                    c1.push(match maps.get(s) {
                        Some(m) => m.col(a * p.dim() + j).remap(|k| Some(k + offsets[s + 1])),
                        None => SVec::new(),
                    });
                }
            }
            act0.push(SparseMatrix::from_columns(total, c0));
            act1.push(SparseMatrix::from_columns(total, c1));
        }
        let generator = pieces[0].highest_vector.clone();
        CurrentModule { node, level, lie, pieces, offsets, weights, grades, act0, act1, generator }
    }

    /// The evaluation module: `V(lam)` with `g (x) t` acting by zero.
    pub fn evaluation(rs: &RootSystem, node: usize, level: usize, limits: &Limits) -> Result<Self> {
        let lam = rs.fundamental(node).scale(level as i64);
        let v = highest_module(rs, &lam, limits)?;
        Ok(Self::assemble(LieBasis::new(rs), node, level, vec![v], &[]))
    }
}

/// `KR(d_i omega_i)` for a node with `epsilon_i(theta) = 2`, assembled from the chain.
pub fn build_kr_fundamental(rs: &RootSystem, i: usize, limits: &Limits) -> Result<CurrentModule> {
    rs.check_node(i)?;
    if rs.epsilon(&rs.theta(), i)? != 2 {
        return Err(KrError::Precondition(format!("epsilon_{i}(theta) != 2 in {}", rs.lie_type())));
    }
    let chain = enumerate_chain(rs, i)?;
    let lie = LieBasis::new(rs);
    let ad = lie.adjoint(rs);
    let pieces = chain.weights.iter().map(|mu| highest_module(rs, mu, limits)).collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(chain.length());
    for s in 0..chain.length() {
        let (mu, next) = (&chain.weights[s], &chain.weights[s + 1]);
        let source = ad.tensor(&pieces[s], limits)?;
        let mut homs = intertwiners(&source, &pieces[s + 1])?;
        if homs.len() != 1 {
            return Err(KrError::IntertwinerDimension { what: format!("Hom(g (x) V{mu}, V{next})"), dim: homs.len() });
        }
        let p = homs.pop().unwrap();
        // normalise so that p(x^-_{mu - next} (x) v_mu) = v_next
        let beta = rs
            .root_coords_int(&mu.sub(next))
            .filter(|b| rs.is_positive_root_ints(b))
            .ok_or_else(|| KrError::TheoremCheck(format!("{mu} - {next} is not a positive root")))?;
        let neg: Vec<i64> = beta.iter().map(|c| -c).collect();
        let x = lie.root_vector(&neg).unwrap();
        let image = p.mul_vec(&kron_vec(&SVec::unit(x), &pieces[s].highest_vector, pieces[s].dim()));
        let target = &pieces[s + 1].highest_vector;
        let piv = target.pivot().unwrap();
        let c = image.get(piv).cloned().unwrap_or_else(Rational::zero);
        if c.is_zero() || image != target.scaled(&(&c / target.get(piv).unwrap())) {
            return Err(KrError::TheoremCheck(format!("p_{s}(x^-_(mu_s - mu_s+1) (x) v_mu_s) is not a nonzero multiple of v{next}")));
        }
        maps.push(p.scaled(&(target.get(piv).unwrap() / c)));
    }
    Ok(CurrentModule::assemble(lie, i, rs.dcheck_node(i) as usize, pieces, &maps))
}

/// `KR(m omega_i)` when it is realised directly: the fundamental construction at
/// `m = d_i` with `epsilon_i(theta) = 2`, and the evaluation module whenever the
/// set `P+(i, m)` is the single weight `m omega_i`.
pub fn kr_module(rs: &RootSystem, i: usize, m: usize, limits: &Limits) -> Result<CurrentModule> {
    rs.check_node(i)?;
    let eps = rs.epsilon(&rs.theta(), i)?;
    let d = rs.dcheck_node(i) as usize;
    if eps == 2 && m == d {
        build_kr_fundamental(rs, i, limits)
    } else if eps != 2 || m < d {
        CurrentModule::evaluation(rs, i, m, limits)
    } else {
        Err(KrError::Precondition(format!(
            "KR({m} omega_{i}) is only realised as a tensor submodule; use kr_tensor_submodule"
        )))
    }
}

fn lin_comb(mats: &[SparseMatrix], coeffs: &SVec, dim: usize) -> SparseMatrix {
    let mut out = SparseMatrix::zeros(dim, dim);
    for (k, c) in coeffs.iter() {
        out.add_scaled_assign(c, &mats[k]);
    }
    out
}

fn push_failures(report: &mut CheckReport, name: &str, total: usize, bad: &[String]) {
    let shown: Vec<&String> = bad.iter().take(8).collect();
    report.push(name, format!("{} of {total} identities fail {shown:?}", bad.len()), bad.is_empty());
}

/// Checks the bracket law, the defining relations on the generator, cyclicity
/// and the chain vectors, all as exact matrix identities.
pub fn verify_current_relations(rs: &RootSystem, cm: &CurrentModule) -> Result<CheckReport> {
    let lie = &cm.lie;
    let g = lie.dim();
    let dim = cm.dim();
    let (i, m) = (cm.node, cm.level);
    let mut report = CheckReport::new(format!(
        "{} node {i} level {m}: pieces {:?}",
        rs.lie_type(),
        cm.piece_dims()
    ));

    let (mut bad00, mut bad01, mut bad11) = (Vec::new(), Vec::new(), Vec::new());
    for a in 0..g {
        for b in 0..g {
            let expected1 = lin_comb(&cm.act1, &lie.structure[a][b], dim);
            if cm.act0[a].commutator(&cm.act1[b]) != expected1 {
                bad01.push(format!("({a},{b})"));
            }
            if b <= a {
                continue;
            }
            let expected0 = lin_comb(&cm.act0, &lie.structure[a][b], dim);
            if cm.act0[a].commutator(&cm.act0[b]) != expected0 {
                bad00.push(format!("({a},{b})"));
            }
            if !cm.act1[a].commutator(&cm.act1[b]).is_zero() {
                bad11.push(format!("({a},{b})"));
            }
        }
    }
    push_failures(&mut report, "[x, y] (x) 1 = [x (x) 1, y (x) 1]", g * (g - 1) / 2, &bad00);
    push_failures(&mut report, "[x, y] (x) t = [x (x) 1, y (x) t]", g * g, &bad01);
    push_failures(&mut report, "[x (x) t, y (x) t] = 0", g * (g - 1) / 2, &bad11);

    let v = &cm.generator;
    let npos = lie.num_positive();
    let n = lie.rank();
    let kills = |mats: &[SparseMatrix], range: std::ops::Range<usize>| range.filter(|&a| !mats[a].mul_vec(v).is_zero()).count();
    let bad = kills(&cm.act0, 0..npos) + kills(&cm.act1, 0..npos);
    report.push("n+[t] v = 0", format!("{bad} nonzero"), bad == 0);
    let eig = (0..n)
        .filter(|&j| {
            let expected = if j + 1 == i { m as i64 } else { 0 };
            cm.act0[lie.h(j)].mul_vec(v) != v.scaled(&Rational::from_integer(expected.into()))
        })
        .count();
    report.push("h v = m omega_i(h) v", format!("{eig} wrong eigenvalues"), eig == 0);
    let ht = kills(&cm.act1, npos..npos + n);
    report.push("(h (x) t) v = 0", format!("{ht} nonzero"), ht == 0);
    let fi = &cm.act0[lie.f(i - 1)];
    let mut w = v.clone();
    for _ in 0..=m {
        w = fi.mul_vec(&w);
    }
    report.push(format!("f_{i}^{} v = 0", m + 1), if w.is_zero() { "zero" } else { "nonzero" }, w.is_zero());
    let fj = (0..n).filter(|&j| j + 1 != i && !cm.act0[lie.f(j)].mul_vec(v).is_zero()).count();
    report.push("f_j v = 0 for j != i", format!("{fj} nonzero"), fj == 0);
    let fit = cm.act1[lie.f(i - 1)].mul_vec(v);
    report.push(format!("(f_{i} (x) t) v = 0"), if fit.is_zero() { "zero" } else { "nonzero" }, fit.is_zero());

    // U(n^-[t]) v
    let ops: Vec<&SparseMatrix> = (0..n)
        .map(|j| &cm.act0[lie.f(j)])
        .chain((npos + n..g).map(|a| &cm.act1[a]))
        .collect();
    let blocks = cyclic_closure(std::slice::from_ref(v), &ops, |k| (cm.grades[k], cm.weights[k].clone()));
    let spanned: usize = blocks.values().map(|e| e.rank()).sum();
    report.push("cyclic on the generator", format!("span {spanned} of {dim}"), spanned == dim);

    if cm.pieces.len() > 1 {
        let theta: Vec<i64> = rs.theta_ints().iter().map(|c| -c).collect();
        let lowest = cm.act1[lie.root_vector(&theta).unwrap()].mul_vec(v);
        report.push("(x^-_theta (x) t) v != 0", if lowest.is_zero() { "zero" } else { "nonzero" }, !lowest.is_zero());
        let mut x = v.clone();
        let mut bad = Vec::new();
        let mu: Vec<Weight> = cm.pieces.iter().map(|p| p.highest_weight.clone()).collect();
        for s in 1..cm.pieces.len() {
            let beta: Vec<i64> = rs.root_coords_int(&mu[s - 1].sub(&mu[s])).unwrap().iter().map(|c| -c).collect();
            x = cm.act1[lie.root_vector(&beta).unwrap()].mul_vec(&x);
            if x != cm.piece_highest(s) {
                bad.push(s);
            }
        }
        report.push("x_{mu_s} v_{mu_0} = v_{mu_s}", format!("fails at s = {bad:?}"), bad.is_empty());
    }
    Ok(report)
}

/// Graded character of the span of `blocks`, keyed by `(grade, weight)`.
pub(crate) fn graded_weights<K>(blocks: &BTreeMap<(usize, Weight), K>, rank: impl Fn(&K) -> usize) -> BTreeMap<usize, Vec<(Weight, u64)>> {
    let mut out: BTreeMap<usize, Vec<(Weight, u64)>> = BTreeMap::new();
    for ((s, w), b) in blocks {
        out.entry(*s).or_default().push((w.clone(), rank(b) as u64));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, LieType};

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::build(LieType::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn c2_fundamental() {
        let r = rs(Family::C, 2);
        let cm = build_kr_fundamental(&r, 1, &Limits::default()).unwrap();
        assert_eq!(cm.piece_dims(), vec![10, 1]);
        let rep = verify_current_relations(&r, &cm).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.entries.iter().any(|e| e.detail == "span 11 of 11"));
    }

    #[test]
    fn evaluation_modules() {
        let r = rs(Family::A, 2);
        let cm = kr_module(&r, 1, 3, &Limits::default()).unwrap();
        assert_eq!(cm.piece_dims(), vec![10]);
        assert!(cm.act1.iter().all(SparseMatrix::is_zero));
        assert!(verify_current_relations(&r, &cm).unwrap().passed());
        assert!(matches!(kr_module(&rs(Family::C, 2), 1, 3, &Limits::default()), Err(KrError::Precondition(_))));
    }
}
