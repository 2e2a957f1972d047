//! Dense matrices over a [`FieldCtx`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::{Felt, FieldCtx};

/// Row-major dense matrix with entries in one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfMatrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

fn same_field(a: &FieldCtx, b: &FieldCtx) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a.to_string(), b.to_string()))
    }
}

impl GfMatrix {
    /// Builds a matrix from row-major entries, checking shape and range.
    pub fn from_entries(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<Felt>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|e| e.index() >= ctx.q()) {
            return Err(Error::ElementOutOfRange { index: bad.index() as u64, q: ctx.q() });
        }
        Ok(GfMatrix { ctx: ctx.clone(), rows, cols, data })
    }

    /// Builds a matrix from a function of `(row, col)`.
    pub fn from_fn(ctx: &FieldCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Felt) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        GfMatrix { ctx: ctx.clone(), rows, cols, data }
    }

    /// Convenience constructor from element indices.
    pub fn from_indices(ctx: &FieldCtx, rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&i| ctx.elem(i as u64)).collect::<Result<_>>()?;
        GfMatrix::from_entries(ctx, r, c, data)
    }

    pub fn zero(ctx: &FieldCtx, n: usize) -> Self {
        GfMatrix::from_fn(ctx, n, n, |_, _| Felt::ZERO)
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        GfMatrix::from_fn(ctx, n, n, |i, j| if i == j { Felt::ONE } else { Felt::ZERO })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Felt] {
        &self.data
    }

    /// Entries as nested index vectors.
    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.index()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        GfMatrix::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &GfMatrix) -> Result<Self> {
        same_field(&self.ctx, &other.ctx)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.ctx.add(a, b)).collect();
        Ok(GfMatrix { data, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|&a| self.ctx.neg(a)).collect();
        GfMatrix { data, ..self.clone() }
    }

    pub fn scalar_mul(&self, c: Felt) -> Self {
        let data = self.data.iter().map(|&a| self.ctx.mul(c, a)).collect();
        GfMatrix { data, ..self.clone() }
    }

    /// `self + c*I`.
    pub fn add_scalar_identity(&self, c: Felt) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimMismatch("shift of a non-square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let k = i * self.cols + i;
            out.data[k] = self.ctx.add(out.data[k], c);
        }
        Ok(out)
    }

    /// Exact product over the field.
    pub fn matmul(&self, other: &GfMatrix) -> Result<Self> {
        same_field(&self.ctx, &other.ctx)?;
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut data = vec![Felt::ZERO; n * m];
        if ctx.alpha() == 1 {
            // q <= 2^16 keeps every product below 2^32, so a u64 accumulator
            // holds any row sum this crate can build without overflow
            let p = ctx.p() as u64;
            let mut acc = vec![0u64; m];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                for (l, &a) in self.row(i).iter().enumerate() {
                    let a = a.index() as u64;
                    if a == 0 {
                        continue;
                    }
                    for (slot, &b) in acc.iter_mut().zip(other.row(l)) {
                        *slot += a * b.index() as u64;
                    }
                }
                for (j, &v) in acc.iter().enumerate() {
                    data[i * m + j] = ctx.from_int((v % p) as i64);
                }
            }
        } else {
            for i in 0..n {
                for l in 0..k {
                    let a = self.get(i, l);
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        let cell = &mut data[i * m + j];
                        *cell = ctx.add(*cell, ctx.mul(a, other.get(l, j)));
                    }
                }
            }
        }
        Ok(GfMatrix { ctx: ctx.clone(), rows: n, cols: m, data })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.cols {
            return Err(Error::DimMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        let ctx = &self.ctx;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Felt::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b))))
            .collect())
    }

    /// Kronecker product; `self` supplies the block pattern.
    pub fn kronecker(&self, other: &GfMatrix) -> Result<Self> {
        same_field(&self.ctx, &other.ctx)?;
        let (br, bc) = (other.rows, other.cols);
        Ok(GfMatrix::from_fn(&self.ctx, self.rows * br, self.cols * bc, |i, j| {
            self.ctx.mul(self.get(i / br, j / bc), other.get(i % br, j % bc))
        }))
    }

    /// `A * A^T`.
    pub fn gram(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimMismatch(format!("Gram matrix of a non-square {}x{} matrix", self.rows, self.cols)));
        }
        self.matmul(&self.transpose())
    }

    /// `Some(k)` exactly when `A * A^T = k * I`.
    pub fn weight_of(&self) -> Option<Felt> {
        let g = self.gram().ok()?;
        let k = g.get(0, 0);
        let scalar =
            (0..g.rows).all(|i| g.row(i).iter().enumerate().all(|(j, &e)| e == if i == j { k } else { Felt::ZERO }));
        scalar.then_some(k)
    }

    /// Text form: `rows cols` header, then one line of indices per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Felt::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses the text form, requiring indices in `[0, q)`.
    pub fn parse(text: &str, ctx: &FieldCtx) -> Result<Self> {
        let (rows, cols, cells) = parse_grid(text)?;
        let data = cells
            .into_iter()
            .map(|(v, line, col)| {
                if v < 0 || v >= ctx.q() as i64 {
                    Err(Error::parse(line, col, format!("entry {v} is not an element index below {}", ctx.q())))
                } else {
                    ctx.elem(v as u64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GfMatrix::from_entries(ctx, rows, cols, data)
    }
}

pub(crate) type Cell = (i64, usize, usize);

/// Tokenizes the matrix text format into `(value, line, column)` cells.
pub(crate) fn parse_grid(text: &str) -> Result<(usize, usize, Vec<Cell>)> {
    let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty matrix file"))?;
    let dims: Vec<(usize, &str)> = tokens(header).collect();
    if dims.len() != 2 {
        return Err(Error::parse(hline, 1, "header must be `rows cols`"));
    }
    let parse_dim = |(col, tok): (usize, &str)| {
        tok.parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::parse(hline, col, format!("bad dimension {tok:?}")))
    };
    let rows = parse_dim(dims[0])?;
    let cols = parse_dim(dims[1])?;

    let mut cells = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (lineno, line) in lines {
        seen_rows += 1;
        if seen_rows > rows {
            return Err(Error::parse(lineno, 1, format!("more than {rows} rows")));
        }
        let mut count = 0;
        for (col, tok) in tokens(line) {
            count += 1;
            if count > cols {
                return Err(Error::parse(lineno, col, format!("more than {cols} entries in row")));
            }
            let v = tok.parse::<i64>().map_err(|_| Error::parse(lineno, col, format!("bad entry {tok:?}")))?;
            cells.push((v, lineno, col));
        }
        if count < cols {
            return Err(Error::parse(lineno, line.len() + 1, format!("expected {cols} entries, found {count}")));
        }
    }
    if seen_rows < rows {
        return Err(Error::parse(hline + seen_rows + 1, 1, format!("expected {rows} rows, found {seen_rows}")));
    }
    Ok((rows, cols, cells))
}

/// Whitespace-separated tokens with their 1-based column.
pub(crate) fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let base = line.as_ptr() as usize;
    line.split_whitespace().map(move |t| (t.as_ptr() as usize - base + 1, t))
}
