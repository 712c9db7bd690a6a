//! A root-vector basis of `g` with exact structure constants.
//!
//! Root vectors are iterated brackets of Chevalley generators; the constants are
//! read off in the defining representation, which is faithful.

use std::collections::BTreeMap;

use crate::charlib;
use crate::linalg::{solve_in_span, SVec, SparseMatrix};
use crate::rootsys::{RootSystem, Weight};

use super::rep::{defining_rep, MatrixRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    E(usize),
    F(usize),
    H(usize),
    /// Commutator of two earlier basis elements.
    Bracket(usize, usize),
}

/// Basis order: positive root vectors by height, `h_1..h_n`, negative root vectors by height.
#[derive(Clone, Debug)]
pub struct LieBasis {
    pub recipes: Vec<Recipe>,
    /// Root in simple-root coordinates (zero for the Cartan part).
    pub roots: Vec<Vec<i64>>,
    /// Root in fundamental coordinates.
    pub weights: Vec<Weight>,
    /// `structure[a][b]` = coordinates of `[x_a, x_b]`.
    pub structure: Vec<Vec<SVec>>,
    index: BTreeMap<Vec<i64>, usize>,
    rank: usize,
}

impl LieBasis {
    pub fn new(rs: &RootSystem) -> LieBasis {
        let n = rs.rank();
        let pos = rs.positive_roots();
        let np = pos.len();
        let mut recipes = Vec::with_capacity(2 * np + n);
        let mut roots = Vec::with_capacity(2 * np + n);
        let pos_index: BTreeMap<&[i64], usize> = pos.iter().enumerate().map(|(k, r)| (r.as_slice(), k)).collect();
        let simple = |r: &[i64]| (RootSystem::height(r) == 1).then(|| r.iter().position(|&c| c == 1).unwrap());
        let simple_pos: Vec<usize> = (0..n)
            .map(|i| {
                let mut u = vec![0; n];
                u[i] = 1;
                pos_index[u.as_slice()]
            })
            .collect();
        let parent = |r: &[i64]| -> (usize, usize) {
            for i in 0..n {
                if r[i] > 0 {
                    let mut s = r.to_vec();
                    s[i] -= 1;
                    if let Some(&k) = pos_index.get(s.as_slice()) {
                        return (i, k);
                    }
                }
            }
            unreachable!("every non-simple positive root has a positive predecessor")
        };
        for r in pos {
            recipes.push(match simple(r) {
                Some(i) => Recipe::E(i),
                None => {
                    let (i, k) = parent(r);
                    Recipe::Bracket(simple_pos[i], k)
                }
            });
            roots.push(r.clone());
        }
        for i in 0..n {
            recipes.push(Recipe::H(i));
            roots.push(vec![0; n]);
        }
        for r in pos {
            recipes.push(match simple(r) {
                Some(i) => Recipe::F(i),
                None => {
                    let (i, k) = parent(r);
                    Recipe::Bracket(np + n + simple_pos[i], np + n + k)
                }
            });
            roots.push(r.iter().map(|c| -c).collect());
        }
        let weights = roots.iter().map(|r| rs.root_weight(r)).collect();
        let index = roots.iter().enumerate().filter(|(_, r)| r.iter().any(|&c| c != 0)).map(|(k, r)| (r.clone(), k)).collect();
        let mut basis = LieBasis { recipes, roots, weights, structure: Vec::new(), index, rank: n };
        let mats = basis.represent(&defining_rep(rs));
        let dim = mats[0].nrows() * mats[0].ncols();
        let flat: Vec<SVec> = mats.iter().map(|m| m.flatten()).collect();
        // group basis indices by root so each bracket is solved in one root space
        let mut by_root: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (k, r) in basis.roots.iter().enumerate() {
            by_root.entry(r.clone()).or_default().push(k);
        }
        let size = basis.dim();
        let mut structure = vec![vec![SVec::new(); size]; size];
        for a in 0..size {
            for b in 0..size {
                let prod = mats[a].commutator(&mats[b]);
                if prod.is_zero() {
                    continue;
                }
                let root: Vec<i64> = basis.roots[a].iter().zip(&basis.roots[b]).map(|(x, y)| x + y).collect();
                let idx = &by_root[&root];
                let span: Vec<SVec> = idx.iter().map(|&k| flat[k].clone()).collect();
                let c = solve_in_span(&span, &prod.flatten(), dim).expect("defining representation is faithful");
                structure[a][b] = SVec::from_pairs(idx.iter().zip(c).map(|(&k, v)| (k, v)));
            }
        }
        basis.structure = structure;
        basis
    }

    pub fn dim(&self) -> usize {
        self.recipes.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_positive(&self) -> usize {
        (self.dim() - self.rank) / 2
    }

    pub fn e(&self, i: usize) -> usize {
        self.recipes.iter().position(|r| *r == Recipe::E(i)).unwrap()
    }

    pub fn f(&self, i: usize) -> usize {
        self.recipes.iter().position(|r| *r == Recipe::F(i)).unwrap()
    }

    pub fn h(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    /// Index of the root vector for `root` (simple-root coordinates, either sign).
    pub fn root_vector(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_positive(&self, a: usize) -> bool {
        a < self.num_positive()
    }

    pub fn is_negative(&self, a: usize) -> bool {
        a >= self.num_positive() + self.rank
    }

    /// Matrices of every basis element in `rep`, evaluated from the recipes.
    pub fn represent(&self, rep: &MatrixRep) -> Vec<SparseMatrix> {
        let mut out: Vec<SparseMatrix> = Vec::with_capacity(self.dim());
        for r in &self.recipes {
            let m = match *r {
                Recipe::E(i) => rep.e[i].clone(),
                Recipe::F(i) => rep.f[i].clone(),
                Recipe::H(i) => rep.h[i].clone(),
                Recipe::Bracket(a, b) => out[a].commutator(&out[b]),
            };
            out.push(m);
        }
        out
    }

    /// The adjoint representation on this basis.
    pub fn adjoint(&self, rs: &RootSystem) -> MatrixRep {
        let ad = |a: usize| SparseMatrix::from_columns(self.dim(), self.structure[a].clone());
        let n = self.rank;
        let theta = rs.theta_ints().to_vec();
        MatrixRep {
            e: (0..n).map(|i| ad(self.e(i))).collect(),
            f: (0..n).map(|i| ad(self.f(i))).collect(),
            h: (0..n).map(|i| ad(self.h(i))).collect(),
            weights: self.weights.clone(),
            highest_vector: SVec::unit(self.root_vector(&theta).unwrap()),
            highest_weight: charlib::adjoint_highest_weight(rs),
        }
    }
}
