//! Matrices over `Q[a1..a10]` and over `Q(i)`: the matrix of consequences,
//! exact rank and determinants, the partial Smith form, and streamed
//! determinantal-ideal generators.

mod minors;
mod smith;

pub use minors::{minors_stream, stream_minors, IdealGenerators, MinorOptions, MinorSink};
pub use smith::{partial_smith, ElementaryOp, ResidualShape, SmithDecomposition};

use std::fmt;

use thiserror::Error;

use crate::exactalg::{ArithError, BigRat, GaussRat, MultiPoly, Ring, NVARS};
use crate::opcompose::{CompositionPath, ConsequenceMaps, OperatorElement};
use crate::opmonoms::MonomialError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("minor size {r} outside 1..={max}")]
    MinorSize { r: usize, max: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("generator cap of {cap} exceeded; {} distinct generators seen", partial.monic_distinct_count)]
    MemoryCap { cap: usize, partial: Box<IdealGenerators> },
    #[error("arithmetic: {0}")]
    Arith(#[from] ArithError),
    #[error("basis: {0}")]
    Basis(#[from] MonomialError),
    #[error("matrix text line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Dense row-major matrix. Zero extents are allowed so that an empty residual
/// block can be represented.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RingMatrix = Matrix<MultiPoly>;
pub type FieldMatrix = Matrix<GaussRat>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(T::is_zero)
    }

    /// 1-based indices of the zero rows.
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.row_is_zero(i)).map(|i| i + 1).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn without_zero_rows(&self) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| !self.row_is_zero(i)).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&keep, &cols)
    }

    pub fn permute_cols(&self, order: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, order)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rank by fraction-free (Bareiss) elimination. Every division is exact.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(piv) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, piv);
            let p = a.get(r, c).clone();
            for i in r + 1..a.rows {
                let f = a.get(i, c).clone();
                for j in c + 1..a.cols {
                    let v = p
                        .mul(a.get(i, j))
                        .sub(&f.mul(a.get(r, j)))
                        .exact_div(&prev)
                        .expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
                a.set(i, c, T::zero());
            }
            prev = p;
            r += 1;
        }
        r
    }

    /// Determinant by fraction-free elimination.
    pub fn det_bareiss(&self) -> Result<T, MatrixError> {
        let n = self.square()?;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut prev = T::one();
        let mut sign_flip = false;
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(T::zero()),
                }
            }
            let p = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = p
                        .mul(a.get(i, j))
                        .sub(&a.get(i, k).mul(a.get(k, j)))
                        .exact_div(&prev)?;
                    a.set(i, j, v);
                }
            }
            prev = p;
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if sign_flip { d.neg() } else { d })
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det_cofactor(&self) -> Result<T, MatrixError> {
        let n = self.square()?;
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..n).collect();
        Ok(cofactor_det(self, &rows, &cols))
    }

    fn square(&self) -> Result<usize, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }
}

/// Laplace expansion of the minor on `rows` x `cols` along its first row.
pub(crate) fn cofactor_det<T: Ring>(m: &Matrix<T>, rows: &[usize], cols: &[usize]) -> T {
    match rows.len() {
        0 => T::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        2 => {
            let (r0, r1, c0, c1) = (rows[0], rows[1], cols[0], cols[1]);
            m.get(r0, c0).mul(m.get(r1, c1)).sub(&m.get(r0, c1).mul(m.get(r1, c0)))
        }
        n => {
            let mut acc = T::zero();
            let mut sub_cols = Vec::with_capacity(n - 1);
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                sub_cols.clear();
                sub_cols.extend(cols.iter().enumerate().filter(|(x, _)| *x != k).map(|(_, v)| *v));
                let minor = cofactor_det(m, &rows[1..], &sub_cols);
                if minor.is_zero() {
                    continue;
                }
                let term = e.mul(&minor);
                acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DetMethod {
    Cofactor,
    FractionFree,
}

pub fn ring_det(s: &RingMatrix, method: DetMethod) -> Result<MultiPoly, MatrixError> {
    match method {
        DetMethod::Cofactor => s.det_cofactor(),
        DetMethod::FractionFree => s.det_bareiss(),
    }
}

pub fn field_rank(m: &FieldMatrix) -> usize {
    m.rank()
}

/// The matrix of consequences together with the path behind each column.
#[derive(Clone, Debug)]
pub struct ConsequenceMatrix {
    pub matrix: RingMatrix,
    pub paths: Vec<CompositionPath>,
}

/// Columns are the coefficient vectors of the distinct consequences of `r`,
/// rows are indexed by the lex-ordered basis `M(p+1, q+1)`.
pub fn consequence_columns<C: Ring>(r: &OperatorElement<C>) -> Result<(Matrix<C>, Vec<CompositionPath>), MatrixError> {
    let maps = ConsequenceMaps::new(r.degree(), r.multiplicity())?;
    let cons = maps.distinct(r);
    let mut matrix = Matrix::zeros(maps.target.len(), cons.len());
    for (j, c) in cons.iter().enumerate() {
        for (rank, v) in c.element.coeffs() {
            matrix.set(rank - 1, j, v.clone());
        }
    }
    Ok((matrix, cons.iter().map(|c| c.path).collect()))
}

pub fn build_consequence_matrix(r: &OperatorElement<MultiPoly>) -> Result<ConsequenceMatrix, MatrixError> {
    let (matrix, paths) = consequence_columns(r)?;
    Ok(ConsequenceMatrix { matrix, paths })
}

/// Entrywise evaluation at a point of `Q(i)^10`.
pub fn substitute_matrix(m: &RingMatrix, point: &[GaussRat; NVARS]) -> FieldMatrix {
    m.map(|e| e.evaluate(point))
}

/// Entrywise substitution of rational values for some parameters.
pub fn substitute_partial(m: &RingMatrix, values: &[Option<BigRat>; NVARS]) -> RingMatrix {
    m.map(|e| e.substitute(values))
}

impl<T: Ring + fmt::Display> Matrix<T> {
    /// Sparse text export: a header line then `row col polynomial` triples
    /// (1-based) for the nonzero entries.
    pub fn to_sparse_text(&self, label: &str) -> String {
        let mut out = format!("# rows {} cols {} case {label}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out.push_str(&format!("{} {} {e}\n", i + 1, j + 1));
                }
            }
        }
        out
    }
}

impl RingMatrix {
    pub fn from_sparse_text(text: &str) -> Result<Self, MatrixError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(MatrixError::Format { line: 1, message: "empty input".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || MatrixError::Format { line: 1, message: "expected '# rows R cols C case ID'".into() };
        if fields.len() < 5 || fields[0] != "#" || fields[1] != "rows" || fields[3] != "cols" {
            return Err(bad_header());
        }
        let rows: usize = fields[2].parse().map_err(|_| bad_header())?;
        let cols: usize = fields[4].parse().map_err(|_| bad_header())?;
        let mut m = RingMatrix::zeros(rows, cols);
        for (n, line) in lines {
            let err = |message: String| MatrixError::Format { line: n + 1, message };
            let mut parts = line.trim().splitn(3, ' ');
            let i: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad row".into()))?;
            let j: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad column".into()))?;
            if i == 0 || i > rows || j == 0 || j > cols {
                return Err(err(format!("entry ({i}, {j}) out of range")));
            }
            let poly: MultiPoly = parts
                .next()
                .ok_or_else(|| err("missing entry".into()))?
                .parse()
                .map_err(|e: ArithError| err(e.to_string()))?;
            m.set(i - 1, j - 1, poly);
        }
        Ok(m)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
