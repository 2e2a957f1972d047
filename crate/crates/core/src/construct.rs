//! Builders for self-orthogonal, weighted orthogonal, anti-orthogonal,
//! order-2q and Hadamard-Kronecker matrices.
//!
//! The base object is the q x q matrix `A[i][j] = a_j^t - a_i^t` over the
//! canonical enumeration of GF(q). For `1 <= t` and `2t <= q-2` it is
//! skew-symmetric with zero diagonal and `A * A^T = 0`; every other family
//! here is derived from it.

use std::path::Path;

use crate::error::{Error, Result};
use crate::gf::{Felt, FieldCtx};
use crate::matrix::{parse_grid, GfMatrix};

/// Checks `1 <= t` and `2t <= q - 2`.
pub fn validate_exponent(ctx: &FieldCtx, t: u64) -> Result<()> {
    let q = ctx.q();
    if t >= 1 && 2 * t + 2 <= q as u64 {
        Ok(())
    } else {
        Err(Error::BadExponent { t, q })
    }
}

/// Checks both exponents and `t1 + t2 <= q - 2`.
pub fn validate_exponent_pair(ctx: &FieldCtx, t1: u64, t2: u64) -> Result<()> {
    validate_exponent(ctx, t1)?;
    validate_exponent(ctx, t2)?;
    if t1 + t2 + 2 <= ctx.q() as u64 {
        Ok(())
    } else {
        Err(Error::ExponentPairTooLarge { t1, t2, q: ctx.q() })
    }
}

/// Every exponent accepted by [`validate_exponent`], ascending.
pub fn valid_exponents(ctx: &FieldCtx) -> impl Iterator<Item = u64> {
    1..=(ctx.q() as u64).saturating_sub(2) / 2
}

/// The skew-symmetric self-orthogonal matrix `A[i][j] = a_j^t - a_i^t`.
pub fn self_orthogonal(ctx: &FieldCtx, t: u64) -> Result<GfMatrix> {
    validate_exponent(ctx, t)?;
    let q = ctx.q() as usize;
    let powers: Vec<Felt> = ctx.elements().map(|a| ctx.pow(a, t)).collect();
    Ok(GfMatrix::from_fn(ctx, q, q, |i, j| ctx.sub(powers[j], powers[i])))
}

/// `self_orthogonal(t) + r*I`, of weight `r^2`.
pub fn weighted_orthogonal(ctx: &FieldCtx, t: u64, r: Felt) -> Result<GfMatrix> {
    let a = self_orthogonal(ctx, t)?;
    if r.is_zero() {
        return Err(Error::ZeroScale);
    }
    a.add_scalar_identity(r)
}

/// Weighted orthogonal matrix with `r` the smallest square root of -1, so
/// that `W * W^T = -I`.
pub fn anti_orthogonal(ctx: &FieldCtx, t: u64) -> Result<GfMatrix> {
    validate_exponent(ctx, t)?;
    let r = ctx.sqrt_in_field(ctx.from_int(-1)).ok_or_else(|| Error::NoAntiRoot(ctx.to_string()))?;
    weighted_orthogonal(ctx, t, r)
}

/// The 2q x 2q matrix `[[A+rI, B+sI], [-(B+sI)^T, (A+rI)^T]]` with
/// `k = r^2 + s^2`, of weight `k`.
pub fn block_2q(ctx: &FieldCtx, t1: u64, t2: u64, k: Felt) -> Result<GfMatrix> {
    validate_exponent_pair(ctx, t1, t2)?;
    let (r, s) = ctx.sum_of_two_squares(k);
    let ar = self_orthogonal(ctx, t1)?.add_scalar_identity(r)?;
    let bs = self_orthogonal(ctx, t2)?.add_scalar_identity(s)?;
    let q = ctx.q() as usize;
    Ok(GfMatrix::from_fn(ctx, 2 * q, 2 * q, |i, j| match (i < q, j < q) {
        (true, true) => ar.get(i, j),
        (true, false) => bs.get(i, j - q),
        (false, true) => ctx.neg(bs.get(j, i - q)),
        (false, false) => ar.get(j - q, i - q),
    }))
}

/// Sylvester Hadamard matrix of order `m`, with -1 embedded as `p - 1`.
pub fn hadamard_sylvester(ctx: &FieldCtx, m: usize) -> Result<GfMatrix> {
    if m < 2 || !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(m));
    }
    let minus = ctx.from_int(-1);
    // H[i][j] = (-1)^popcount(i & j)
    Ok(GfMatrix::from_fn(ctx, m, m, |i, j| if (i & j).count_ones() % 2 == 0 { Felt::ONE } else { minus }))
}

/// Parses a +-1 matrix file, checks `H * H^T = m*I` over the integers, and
/// embeds it into `ctx`.
pub fn parse_hadamard(text: &str, ctx: &FieldCtx) -> Result<GfMatrix> {
    let (rows, cols, cells) = parse_grid(text)?;
    if rows != cols {
        return Err(Error::NotHadamard(format!("{rows}x{cols} is not square")));
    }
    let mut signs = Vec::with_capacity(cells.len());
    for (v, line, col) in cells {
        if v != 1 && v != -1 {
            return Err(Error::parse(line, col, format!("Hadamard entry must be 1 or -1, got {v}")));
        }
        signs.push(v);
    }
    let n = rows;
    for i in 0..n {
        for j in i..n {
            let dot: i64 = (0..n).map(|l| signs[i * n + l] * signs[j * n + l]).sum();
            let want = if i == j { n as i64 } else { 0 };
            if dot != want {
                return Err(Error::NotHadamard(format!("rows {i} and {j} have inner product {dot}")));
            }
        }
    }
    Ok(GfMatrix::from_fn(ctx, n, n, |i, j| ctx.from_int(signs[i * n + j])))
}

pub fn load_hadamard(path: impl AsRef<Path>, ctx: &FieldCtx) -> Result<GfMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::parse(0, 0, format!("{}: {e}", path.display())))?;
    parse_hadamard(&text, ctx)
}

/// Writes a Hadamard matrix over the field back in +-1 form.
pub fn hadamard_to_text(h: &GfMatrix) -> String {
    let minus = h.ctx().from_int(-1);
    let mut out = format!("{} {}\n", h.rows(), h.cols());
    for i in 0..h.rows() {
        let line: Vec<&str> = h.row(i).iter().map(|&e| if e == minus && e != Felt::ONE { "-1" } else { "1" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// `H (x) W`; the weight is the product of the factor weights.
pub fn kron_weighted(h: &GfMatrix, w: &GfMatrix) -> Result<GfMatrix> {
    if h.weight_of().is_none() {
        return Err(Error::NotWeighted("Hadamard factor".into()));
    }
    if w.weight_of().is_none() {
        return Err(Error::NotWeighted("right factor".into()));
    }
    h.kronecker(w)
}

/// Where a Kronecker construction takes its Hadamard factor from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HadamardSource {
    Sylvester(usize),
    Text(String),
}

/// One matrix family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    SelfOrthogonal { t: u64 },
    Weighted { t: u64, r: Felt },
    Anti { t: u64 },
    Block2q { t1: u64, t2: u64, k: Felt },
    Kron { hadamard: HadamardSource, t: u64, r: Felt },
}

impl Construction {
    pub fn build(&self, ctx: &FieldCtx) -> Result<GfMatrix> {
        match self {
            Construction::SelfOrthogonal { t } => self_orthogonal(ctx, *t),
            Construction::Weighted { t, r } => weighted_orthogonal(ctx, *t, *r),
            Construction::Anti { t } => anti_orthogonal(ctx, *t),
            Construction::Block2q { t1, t2, k } => block_2q(ctx, *t1, *t2, *k),
            Construction::Kron { hadamard, t, r } => {
                let h = match hadamard {
                    HadamardSource::Sylvester(m) => hadamard_sylvester(ctx, *m)?,
                    HadamardSource::Text(text) => parse_hadamard(text, ctx)?,
                };
                kron_weighted(&h, &weighted_orthogonal(ctx, *t, *r)?)
            }
        }
    }
}
