//! Brute-force reference arithmetic, independent of the library's
//! log-table and accumulator fast paths.

#![allow(dead_code)]

use gfortho::FieldCtx;

pub fn z(p: u64) -> FieldCtx {
    FieldCtx::new(p, 1, None).unwrap()
}

/// Fields used by the sweeps, with their fixed primitive polynomials.
pub fn sweep_fields() -> Vec<FieldCtx> {
    vec![
        FieldCtx::new(2, 2, Some(&[1, 1, 1])).unwrap(),
        z(5),
        z(7),
        FieldCtx::new(2, 3, Some(&[1, 1, 0, 1])).unwrap(),
        FieldCtx::new(3, 2, Some(&[2, 1, 1])).unwrap(),
        z(11),
        z(13),
        FieldCtx::new(5, 2, Some(&[2, 1, 1])).unwrap(),
    ]
}

pub fn digits(mut idx: u32, p: u32, alpha: u32) -> Vec<u32> {
    (0..alpha)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

pub fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Schoolbook product of two elements given by index, reduced modulo the
/// monic polynomial `poly` by long division.
pub fn poly_mulmod(a: u32, b: u32, poly: &[u32], p: u32) -> u32 {
    let alpha = (poly.len() - 1) as u32;
    let (da, db) = (digits(a, p, alpha), digits(b, p, alpha));
    let mut prod = vec![0u64; 2 * alpha as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let deg = alpha as usize;
    for top in (deg..prod.len()).rev() {
        let f = prod[top];
        if f == 0 {
            continue;
        }
        for (k, &c) in poly.iter().enumerate() {
            let idx = top - deg + k;
            prod[idx] = (prod[idx] + (p as u64 - f) * c as u64) % p as u64;
        }
    }
    let low: Vec<u32> = prod[..deg].iter().map(|&v| v as u32).collect();
    undigits(&low, p)
}

pub fn digit_add(a: u32, b: u32, p: u32, alpha: u32) -> u32 {
    let s: Vec<u32> = digits(a, p, alpha).iter().zip(digits(b, p, alpha)).map(|(x, y)| (x + y) % p).collect();
    undigits(&s, p)
}

/// Oracle multiplication for any field: integers mod p or polynomials.
pub fn oracle_mul(ctx: &FieldCtx, a: u32, b: u32) -> u32 {
    match ctx.poly() {
        None => (a as u64 * b as u64 % ctx.p() as u64) as u32,
        Some(poly) => poly_mulmod(a, b, poly, ctx.p()),
    }
}

pub fn oracle_add(ctx: &FieldCtx, a: u32, b: u32) -> u32 {
    digit_add(a, b, ctx.p(), ctx.alpha())
}

pub fn oracle_pow(ctx: &FieldCtx, a: u32, k: u64) -> u32 {
    (0..k).fold(1, |acc, _| oracle_mul(ctx, acc, a))
}

/// Naive triple-loop product over any field, via the oracle arithmetic.
pub fn oracle_matmul(ctx: &FieldCtx, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m).map(|j| (0..k).fold(0, |acc, l| oracle_add(ctx, acc, oracle_mul(ctx, a[i][l], b[l][j])))).collect()
        })
        .collect()
}

pub fn oracle_transpose(a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn oracle_gram(ctx: &FieldCtx, a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    oracle_matmul(ctx, a, &oracle_transpose(a))
}

pub fn scalar_identity(n: usize, k: u32) -> Vec<Vec<u32>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { k } else { 0 }).collect()).collect()
}

/// What decoding should return: the message minus the pad bytes that trail
/// it inside its final length-q block.
pub fn expected_decode(msg: &[u8], q: u32) -> Vec<u8> {
    let pad = if q > 32 { 32 } else { 0 };
    let q = q as usize;
    let last_start = msg.len().saturating_sub(1) / q * q;
    let mut end = msg.len();
    while end > last_start && msg[end - 1] == pad {
        end -= 1;
    }
    msg[..end].to_vec()
}
