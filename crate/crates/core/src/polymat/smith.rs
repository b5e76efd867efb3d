use serde::Serialize;

use super::{MatrixError, RingMatrix};
use crate::exactalg::{BigRat, MultiPoly};

/// One recorded step of the reduction. Indices are 0-based positions in the
/// matrix at the time the step is applied.
#[derive(Clone, PartialEq, Debug)]
pub enum ElementaryOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    ScaleRow(usize, BigRat),
    /// `row[target] -= factor * row[source]`
    AddRow { target: usize, source: usize, factor: MultiPoly },
    /// `col[target] -= factor * col[source]`
    AddCol { target: usize, source: usize, factor: MultiPoly },
}

impl ElementaryOp {
    pub fn apply(&self, m: &mut RingMatrix) {
        match self {
            ElementaryOp::SwapRows(a, b) => m.swap_rows(*a, *b),
            ElementaryOp::SwapCols(a, b) => m.swap_cols(*a, *b),
            ElementaryOp::ScaleRow(i, c) => {
                for j in 0..m.cols() {
                    let v = m.get(*i, j).scale(c);
                    m.set(*i, j, v);
                }
            }
            ElementaryOp::AddRow { target, source, factor } => {
                for j in 0..m.cols() {
                    let s = m.get(*source, j);
                    if s.is_zero() {
                        continue;
                    }
                    let v = m.get(*target, j) - &(factor * s);
                    m.set(*target, j, v);
                }
            }
            ElementaryOp::AddCol { target, source, factor } => {
                for i in 0..m.rows() {
                    let s = m.get(i, *source);
                    if s.is_zero() {
                        continue;
                    }
                    let v = m.get(i, *target) - &(factor * s);
                    m.set(i, *target, v);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub input: RingMatrix,
    /// Size of the identity block in the top-left corner.
    pub identity_size: usize,
    /// Full reduced matrix `diag(I_k, C)`.
    pub reduced: RingMatrix,
    /// The lower-right block `C`, zero rows included.
    pub residual: RingMatrix,
    pub op_log: Vec<ElementaryOp>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ResidualShape {
    pub rows: usize,
    pub cols: usize,
    pub zero_rows: usize,
}

impl SmithDecomposition {
    pub fn residual_nonzero(&self) -> RingMatrix {
        self.residual.without_zero_rows()
    }

    pub fn residual_shape(&self) -> ResidualShape {
        ResidualShape {
            rows: self.residual.rows(),
            cols: self.residual.cols(),
            zero_rows: self.residual.zero_rows().len(),
        }
    }

    /// Re-applies the op log to the input and compares with the stored result.
    pub fn replay(&self) -> RingMatrix {
        let mut m = self.input.clone();
        for op in &self.op_log {
            op.apply(&mut m);
        }
        m
    }

    pub fn replay_matches(&self) -> bool {
        self.replay() == self.reduced
    }

    /// Checks that the reduced matrix is `diag(I_k, C)`.
    pub fn is_block_diagonal(&self) -> bool {
        let k = self.identity_size;
        let m = &self.reduced;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.get(i, j);
                let ok = if i < k || j < k {
                    if i == j {
                        e.constant_value().is_some_and(|c| c.is_one())
                    } else {
                        e.is_zero()
                    }
                } else {
                    true
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    pub fn residual_is_constant_free(&self) -> bool {
        let c = &self.residual;
        (0..c.rows()).all(|i| c.row(i).iter().all(|e| e.is_zero() || !e.is_constant()))
    }
}

/// Reduces `m` to `diag(I_k, C)` using only nonzero constant pivots, scanned
/// column by column from the top-left of the remaining block. Stops when the
/// remaining block has no nonzero constant entry.
pub fn partial_smith(m: &RingMatrix) -> Result<SmithDecomposition, MatrixError> {
    let mut a = m.clone();
    let mut log = Vec::new();
    let mut k = 0;
    while k < a.rows().min(a.cols()) {
        let pivot = (k..a.cols()).find_map(|j| {
            (k..a.rows())
                .find(|&i| a.get(i, j).constant_value().is_some_and(|c| !c.is_zero()))
                .map(|i| (i, j))
        });
        let Some((pi, pj)) = pivot else { break };
        let mut ops = Vec::new();
        if pi != k {
            ops.push(ElementaryOp::SwapRows(k, pi));
        }
        if pj != k {
            ops.push(ElementaryOp::SwapCols(k, pj));
        }
        let c = a.get(pi, pj).constant_value().expect("constant pivot");
        if !c.is_one() {
            ops.push(ElementaryOp::ScaleRow(k, c.inv()?));
        }
        for op in ops {
            op.apply(&mut a);
            log.push(op);
        }
        for i in 0..a.rows() {
            if i == k || a.get(i, k).is_zero() {
                continue;
            }
            let op = ElementaryOp::AddRow { target: i, source: k, factor: a.get(i, k).clone() };
            op.apply(&mut a);
            log.push(op);
        }
        for j in 0..a.cols() {
            if j == k || a.get(k, j).is_zero() {
                continue;
            }
            let op = ElementaryOp::AddCol { target: j, source: k, factor: a.get(k, j).clone() };
            op.apply(&mut a);
            log.push(op);
        }
        k += 1;
    }
    let rows: Vec<usize> = (k..a.rows()).collect();
    let cols: Vec<usize> = (k..a.cols()).collect();
    let residual = a.submatrix(&rows, &cols);
    Ok(SmithDecomposition { input: m.clone(), identity_size: k, reduced: a, residual, op_log: log })
}
