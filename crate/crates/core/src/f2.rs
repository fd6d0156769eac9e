//! Symmetric bilinear forms over GF(2) and their congruence classification.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2SymmetricForm {
    g: usize,
    bits: Vec<bool>,
}

/// Congruence class of a symmetric GF(2) form: `alpha` is 0 for the zero form,
/// 1 for a non-alternating form, 2 for a nonzero alternating one; `lambda` is the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Class {
    pub alpha: u8,
    pub lambda: usize,
}

/// Result of [`F2SymmetricForm::congruence_reduce`]: `pᵗ · m · p = normal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Reduction {
    pub normal: F2SymmetricForm,
    pub p: Vec<Vec<bool>>,
    /// Number of leading 1×1 blocks.
    pub diagonal_ones: usize,
    /// Number of following `[[0,1],[1,0]]` blocks.
    pub hyperbolic_blocks: usize,
}

impl F2SymmetricForm {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let g = rows.len();
        if rows.iter().any(|r| r.len() != g) {
            return Err(Error::ShapeMismatch("form must be square".into()));
        }
        let bits: Vec<bool> = rows.into_iter().flatten().collect();
        let form = Self { g, bits };
        if (0..g).any(|i| (0..i).any(|j| form.get(i, j) != form.get(j, i))) {
            return Err(Error::NotSymmetric);
        }
        Ok(form)
    }

    pub fn from_u8_rows(rows: &[&[u8]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| x % 2 == 1).collect()).collect())
    }

    /// Reduction mod 2 of a symmetric integer matrix.
    pub fn from_integer_matrix(m: &ExactMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch("form must be square".into()));
        }
        let rows = m.to_integer_rows()?;
        Self::new(rows.iter().map(|r| r.iter().map(|x| x.is_odd()).collect()).collect())
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.g + j]
    }

    fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.g + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.g).map(|i| (0..self.g).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.g).all(|i| !self.get(i, i))
    }

    fn swap(&mut self, a: usize, b: usize, p: &mut [Vec<bool>]) {
        if a == b {
            return;
        }
        for k in 0..self.g {
            self.bits.swap(a * self.g + k, b * self.g + k);
        }
        for k in 0..self.g {
            self.bits.swap(k * self.g + a, k * self.g + b);
        }
        for row in p.iter_mut() {
            row.swap(a, b);
        }
    }

    /// Basis change `e_dst += e_src`, applied on both sides.
    fn add_basis(&mut self, dst: usize, src: usize, p: &mut [Vec<bool>]) {
        for k in 0..self.g {
            let v = self.get(dst, k) ^ self.get(src, k);
            self.set(dst, k, v);
        }
        for k in 0..self.g {
            let v = self.get(k, dst) ^ self.get(k, src);
            self.set(k, dst, v);
        }
        for row in p.iter_mut() {
            row[dst] ^= row[src];
        }
    }

    /// Symmetric congruence elimination. Diagonal pivots are taken first, then
    /// hyperbolic pairs; ties go to the lowest index. The normal form is
    /// `I_s ⊕ H^t ⊕ 0`.
    pub fn congruence_reduce(&self) -> F2Reduction {
        let g = self.g;
        let mut n = self.clone();
        let mut p: Vec<Vec<bool>> = (0..g).map(|i| (0..g).map(|j| i == j).collect()).collect();
        let mut pos = 0;
        let mut diagonal_ones = 0;
        let mut hyperbolic_blocks = 0;
        while pos < g {
            if let Some(i) = (pos..g).find(|&i| n.get(i, i)) {
                // hyperbolic clearing never reintroduces a diagonal 1
                debug_assert_eq!(hyperbolic_blocks, 0);
                n.swap(pos, i, &mut p);
                for j in pos + 1..g {
                    if n.get(pos, j) {
                        n.add_basis(j, pos, &mut p);
                    }
                }
                pos += 1;
                diagonal_ones += 1;
                continue;
            }
            let pair = (pos..g).flat_map(|i| (i + 1..g).map(move |j| (i, j))).find(|&(i, j)| n.get(i, j));
            let Some((i, j)) = pair else { break };
            n.swap(pos, i, &mut p);
            // j > i >= pos, so the first swap leaves j in place
            n.swap(pos + 1, j, &mut p);
            for l in pos + 2..g {
                let alpha = n.get(pos, l);
                let beta = n.get(pos + 1, l);
                if beta {
                    n.add_basis(l, pos, &mut p);
                }
                if alpha {
                    n.add_basis(l, pos + 1, &mut p);
                }
            }
            pos += 2;
            hyperbolic_blocks += 1;
        }
        F2Reduction { normal: n, p, diagonal_ones, hyperbolic_blocks }
    }

    pub fn rank(&self) -> usize {
        let r = self.congruence_reduce();
        r.diagonal_ones + 2 * r.hyperbolic_blocks
    }
}

/// Classifies a symmetric form up to congruence by rank and alternating type.
pub fn f2_classify(form: &F2SymmetricForm) -> F2Class {
    let r = form.congruence_reduce();
    let lambda = r.diagonal_ones + 2 * r.hyperbolic_blocks;
    let alpha = match (lambda, r.diagonal_ones) {
        (0, _) => 0,
        (_, 0) => 2,
        _ => 1,
    };
    F2Class { alpha, lambda }
}

/// `pᵗ · m · p` over GF(2).
pub fn congruent(m: &F2SymmetricForm, p: &[Vec<bool>]) -> F2SymmetricForm {
    let g = m.g;
    let mut out = vec![vec![false; g]; g];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = false;
            for a in 0..g {
                if !p[a][i] {
                    continue;
                }
                for b in 0..g {
                    acc ^= p[b][j] && m.get(a, b);
                }
            }
            *cell = acc;
        }
    }
    F2SymmetricForm::new(out).expect("congruence preserves symmetry")
}

pub fn is_invertible(p: &[Vec<bool>]) -> bool {
    let n = p.len();
    let mut m: Vec<Vec<bool>> = p.to_vec();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r][c]) else { return false };
        m.swap(c, r);
        for r2 in 0..n {
            if r2 != c && m[r2][c] {
                let src = m[c].clone();
                for (x, s) in m[r2].iter_mut().zip(src) {
                    *x ^= s;
                }
            }
        }
    }
    true
}
