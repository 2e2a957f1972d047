//! Exact arithmetic in GF(p^a).
//!
//! Elements are identified by a canonical index in `[0, q)`. For a prime
//! field the index is the residue itself. For an extension field the base-p
//! digits of the index are the polynomial coefficients, least significant
//! digit first, so index `1` is the constant one and index `p` is `x`.
//!
//! Extension fields require a primitive polynomial. Multiplication then goes
//! through discrete log tables built from powers of `x`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element, by canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    pub fn index(self) -> u32 {
        self.0
    }

    // callers guarantee i < q
    pub(crate) fn from_index(i: u32) -> Felt {
        Felt(i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Binary/unary operation selector for [`FieldCtx::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

struct Inner {
    p: u32,
    alpha: u32,
    q: u32,
    poly: Option<Vec<u32>>,
    // exp[k] = index of x^k, log[index] = k; empty for prime fields
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive_root: Felt,
}

/// A validated finite field GF(p^alpha). Cheap to clone.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.alpha == other.inner.alpha
                && self.inner.poly == other.inner.poly)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({self})")
    }
}

impl fmt::Display for FieldCtx {
    /// `GF(5)` for prime fields, `GF(3^2;poly=2,1,1)` for extensions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.poly {
            None => write!(f, "GF({})", self.inner.p),
            Some(c) => write!(f, "GF({}^{};poly={})", self.inner.p, self.inner.alpha, format_poly(c)),
        }
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` into `(p, alpha)` with `q = p^alpha`.
pub fn factor_prime_power(q: u64) -> Result<(u32, u32)> {
    if q > MAX_ORDER {
        return Err(Error::FieldTooLarge(q));
    }
    let f = prime_factors(q);
    if f.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = f[0];
    let mut alpha = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        alpha += 1;
    }
    Ok((p as u32, alpha))
}

/// Parses the comma-separated coefficient form `c0,c1,...,ca`.
pub fn parse_poly(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>().map_err(|_| Error::InvalidPoly(format!("bad coefficient {tok:?}")))
        })
        .collect()
}

pub fn format_poly(coeffs: &[u32]) -> String {
    coeffs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

// Polynomials over Z_p, coefficients low degree first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dd = den.len() - 1;
    let lead_inv = mod_inverse(den[dd] as i64, p as i64).expect("nonzero leading coefficient") as u64;
    while r.len() > dd {
        let top = r.len() - 1;
        let factor = r[top] * lead_inv % p;
        if factor != 0 {
            for (k, &c) in den.iter().enumerate() {
                let idx = top - dd + k;
                r[idx] = (r[idx] + p - factor * c as u64 % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    // a reducible polynomial has a monic factor of degree <= deg/2
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(poly, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Extended Euclid over the integers; `None` when `gcd(a, m) != 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

// Powers of x modulo a monic poly, as element indices. Stops early when x^k
// returns to 1; the returned table then has length equal to the order of x.
fn powers_of_x(poly: &[u32], p: u32) -> Vec<u32> {
    let alpha = poly.len() - 1;
    let q = (p as u64).pow(alpha as u32) as usize;
    let mut digits = vec![0u32; alpha];
    digits[0] = 1;
    let mut table = vec![1u32];
    for _ in 1..q {
        let top = digits[alpha - 1];
        for j in (1..alpha).rev() {
            digits[j] = digits[j - 1];
        }
        digits[0] = 0;
        for j in 0..alpha {
            let sub = (top as u64 * poly[j] as u64 % p as u64) as u32;
            digits[j] = (digits[j] + p - sub) % p;
        }
        let idx = digits.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        if idx == 1 || idx == 0 {
            break;
        }
        table.push(idx);
    }
    table
}

impl FieldCtx {
    /// Builds and validates GF(p^alpha). `poly` must be given iff `alpha > 1`.
    pub fn new(p: u64, alpha: u32, poly: Option<&[u32]>) -> Result<FieldCtx> {
        if alpha == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match (alpha, poly) {
            (1, Some(_)) => return Err(Error::SpuriousPoly),
            (a, None) if a > 1 => return Err(Error::MissingPoly(a)),
            _ => {}
        }
        let q =
            p.checked_pow(alpha).filter(|&q| q <= MAX_ORDER).ok_or(Error::FieldTooLarge(p.saturating_pow(alpha)))?;
        let p = p as u32;
        let q32 = q as u32;

        let (exp, log) = match poly {
            None => (Vec::new(), Vec::new()),
            Some(c) => {
                if c.len() != alpha as usize + 1 {
                    return Err(Error::InvalidPoly(format!(
                        "expected {} coefficients for degree {alpha}, got {}",
                        alpha + 1,
                        c.len()
                    )));
                }
                if let Some(bad) = c.iter().find(|&&v| v >= p) {
                    return Err(Error::InvalidPoly(format!("coefficient {bad} not below p={p}")));
                }
                if c[alpha as usize] != 1 {
                    return Err(Error::InvalidPoly("leading coefficient must be 1".into()));
                }
                if !is_irreducible(c, p) {
                    return Err(Error::PolyNotIrreducible(format_poly(c), p));
                }
                let exp = powers_of_x(c, p);
                if exp.len() as u64 != q - 1 {
                    return Err(Error::PolyNotPrimitive {
                        poly: format_poly(c),
                        order: exp.len() as u64,
                        needed: q - 1,
                    });
                }
                let mut log = vec![0u32; q as usize];
                for (k, &idx) in exp.iter().enumerate() {
                    log[idx as usize] = k as u32;
                }
                (exp, log)
            }
        };

        let mut ctx = FieldCtx {
            inner: Arc::new(Inner {
                p,
                alpha,
                q: q32,
                poly: poly.map(<[u32]>::to_vec),
                exp,
                log,
                primitive_root: Felt::ONE,
            }),
        };
        let g = ctx.find_primitive_root();
        Arc::get_mut(&mut ctx.inner).expect("unshared").primitive_root = g;
        Ok(ctx)
    }

    /// Builds GF(q) from its order, factoring `q = p^alpha`.
    pub fn from_order(q: u64, poly: Option<&[u32]>) -> Result<FieldCtx> {
        if q < 2 {
            return Err(Error::NotPrime(q));
        }
        let (p, alpha) = factor_prime_power(q)?;
        FieldCtx::new(p as u64, alpha, poly)
    }

    /// Builds GF(q) using [`default_primitive_poly`] when `q` is not prime.
    pub fn with_default_poly(q: u64) -> Result<FieldCtx> {
        if q < 2 {
            return Err(Error::NotPrime(q));
        }
        let (p, alpha) = factor_prime_power(q)?;
        if alpha == 1 {
            return FieldCtx::new(p as u64, 1, None);
        }
        let poly = default_primitive_poly(p, alpha)?;
        FieldCtx::new(p as u64, alpha, Some(&poly))
    }

    fn find_primitive_root(&self) -> Felt {
        let n = (self.q() - 1) as u64;
        let factors = prime_factors(n);
        (1..self.q())
            .map(Felt)
            .find(|&g| factors.iter().all(|&l| self.pow(g, n / l) != Felt::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn alpha(&self) -> u32 {
        self.inner.alpha
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn poly(&self) -> Option<&[u32]> {
        self.inner.poly.as_deref()
    }

    pub fn primitive_root(&self) -> Felt {
        self.inner.primitive_root
    }

    /// The element with index `i`, a_i in the canonical enumeration.
    pub fn elem(&self, i: u64) -> Result<Felt> {
        if i < self.q() as u64 {
            Ok(Felt(i as u32))
        } else {
            Err(Error::ElementOutOfRange { index: i, q: self.q() })
        }
    }

    /// Embeds an integer through the prime subfield (`n * 1`).
    pub fn from_int(&self, n: i64) -> Felt {
        Felt(n.rem_euclid(self.p() as i64) as u32)
    }

    /// All q elements in canonical order a_0 = 0, a_1 = 1, ...
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.q()).map(Felt)
    }

    /// Coefficients c_0..c_(alpha-1) of an element.
    pub fn coefficients(&self, a: Felt) -> Vec<u32> {
        let p = self.p();
        let mut v = a.0;
        (0..self.alpha())
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        let p = self.p();
        if self.alpha() == 1 {
            return Felt((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += (x % p + y % p) % p * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Felt(out)
    }

    pub fn neg(&self, a: Felt) -> Felt {
        let p = self.p();
        if self.alpha() == 1 {
            return Felt((p - a.0) % p);
        }
        let mut x = a.0;
        let (mut out, mut place) = (0, 1);
        while x > 0 {
            out += (p - x % p) % p * place;
            x /= p;
            place *= p;
        }
        Felt(out)
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if self.alpha() == 1 {
            return Felt((a.0 as u64 * b.0 as u64 % self.p() as u64) as u32);
        }
        if a.is_zero() || b.is_zero() {
            return Felt::ZERO;
        }
        let n = self.q() - 1;
        let k = (self.inner.log[a.0 as usize] + self.inner.log[b.0 as usize]) % n;
        Felt(self.inner.exp[k as usize])
    }

    /// Checked arithmetic: rejects indices outside this field.
    pub fn arith(&self, a: Felt, b: Felt, op: ArithOp) -> Result<Felt> {
        for x in [a, b] {
            if x.0 >= self.q() {
                return Err(Error::ElementOutOfRange { index: x.0 as u64, q: self.q() });
            }
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        })
    }

    /// Multiplicative inverse: extended Euclid for prime fields, `a^(q-2)`
    /// otherwise.
    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.alpha() == 1 {
            let p = self.p() as i64;
            let v = mod_inverse(a.0 as i64, p).expect("prime modulus");
            return Ok(Felt(v as u32));
        }
        Ok(self.pow(a, self.q() as u64 - 2))
    }

    /// `a^k` by square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, a: Felt, mut k: u64) -> Felt {
        let mut base = a;
        let mut acc = Felt::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Sum of `a^k` over every element of the field.
    pub fn power_sum(&self, k: u64) -> Felt {
        self.elements().fold(Felt::ZERO, |acc, a| self.add(acc, self.pow(a, k)))
    }

    /// Smallest-index square root, by exhaustive search.
    pub fn sqrt_in_field(&self, k: Felt) -> Option<Felt> {
        self.elements().find(|&r| self.mul(r, r) == k)
    }

    pub fn is_quadratic_residue(&self, k: Felt) -> bool {
        self.sqrt_in_field(k).is_some()
    }

    /// Lexicographically smallest `(r, s)` with `r^2 + s^2 = k`.
    pub fn sum_of_two_squares(&self, k: Felt) -> (Felt, Felt) {
        for r in self.elements() {
            let rest = self.sub(k, self.mul(r, r));
            if let Some(s) = self.sqrt_in_field(rest) {
                return (r, s);
            }
        }
        unreachable!("every element of a finite field is a sum of two squares")
    }
}

/// Smallest primitive polynomial of degree `alpha` over Z_p, ordering
/// candidates by the index formed from their lower coefficients.
pub fn default_primitive_poly(p: u32, alpha: u32) -> Result<Vec<u32>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let q = (p as u64).checked_pow(alpha).filter(|&q| q <= MAX_ORDER).ok_or(Error::FieldTooLarge(u64::MAX))?;
    for code in 1..q {
        let mut c = code;
        let mut poly: Vec<u32> = (0..alpha)
            .map(|_| {
                let d = (c % p as u64) as u32;
                c /= p as u64;
                d
            })
            .collect();
        poly.push(1);
        if poly[0] != 0 && is_irreducible(&poly, p) && powers_of_x(&poly, p).len() as u64 == q - 1 {
            return Ok(poly);
        }
    }
    unreachable!("primitive polynomials exist for every degree")
}
