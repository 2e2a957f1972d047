//! Block cipher `C = W*M` with the weighted orthogonal key `W = A + rI`.
//!
//! Since `W^T * W = r^2 * I`, decryption is `M = l * W^T * C` with
//! `l = (r^2)^-1`. The transmitted key is only `(p, alpha, t, r[, poly])`.
//!
//! Messages are bytes. Byte `n` becomes the field element of index `n`, so
//! every byte must be below `q`. A message is cut into blocks of `q` symbols
//! and the last block is padded with a space (code 32), or with 0 when the
//! field is too small to hold a space.

use std::fmt;
use std::str::FromStr;

use crate::construct::{self_orthogonal, validate_exponent};
use crate::error::{Error, Result};
use crate::gf::{format_poly, parse_poly, Felt, FieldCtx};
use crate::matrix::{tokens, GfMatrix};

/// Transmitted key parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipherKey {
    p: u64,
    alpha: u32,
    t: u64,
    r: u32,
    poly: Option<Vec<u32>>,
}

impl CipherKey {
    /// Validates the parameters by building the field and checking `t` and `r`.
    pub fn new(p: u64, alpha: u32, t: u64, r: u32, poly: Option<Vec<u32>>) -> Result<Self> {
        let key = CipherKey { p, alpha, t, r, poly };
        let ctx = key.field()?;
        validate_exponent(&ctx, t)?;
        let r = ctx.elem(r as u64)?;
        if r.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(key)
    }

    pub fn field(&self) -> Result<FieldCtx> {
        FieldCtx::new(self.p, self.alpha, self.poly.as_deref())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn r(&self) -> Felt {
        Felt::from_index(self.r)
    }

    pub fn poly(&self) -> Option<&[u32]> {
        self.poly.as_deref()
    }
}

/// Key file form: `p=89 alpha=1 t=2 r=5`, plus ` poly=c0,...` when alpha > 1.
impl fmt::Display for CipherKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} alpha={} t={} r={}", self.p, self.alpha, self.t, self.r)?;
        if let Some(c) = &self.poly {
            write!(f, " poly={}", format_poly(c))?;
        }
        Ok(())
    }
}

impl FromStr for CipherKey {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_key(text)
    }
}

pub fn serialize_key(key: &CipherKey) -> String {
    key.to_string()
}

pub fn parse_key(text: &str) -> Result<CipherKey> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (lineno, line) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty key file"))?;
    let lineno = lineno + 1;
    if let Some((extra, _)) = lines.next() {
        return Err(Error::parse(extra + 1, 1, "key file must be a single line"));
    }

    let (mut p, mut alpha, mut t, mut r, mut poly) = (None, None, None, None, None);
    for (col, tok) in tokens(line) {
        let (name, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, col, format!("expected name=value, got {tok:?}")))?;
        let vcol = col + name.len() + 1;
        let num =
            || value.parse::<u64>().map_err(|_| Error::parse(lineno, vcol, format!("bad value for {name}: {value:?}")));
        let slot_taken = match name {
            "p" => p.replace(num()?).is_some(),
            "alpha" => alpha.replace(num()?).is_some(),
            "t" => t.replace(num()?).is_some(),
            "r" => r.replace(num()?).is_some(),
            "poly" => poly.replace(parse_poly(value).map_err(|e| Error::parse(lineno, vcol, e.to_string()))?).is_some(),
            _ => return Err(Error::parse(lineno, col, format!("unknown field {name:?}"))),
        };
        if slot_taken {
            return Err(Error::parse(lineno, col, format!("duplicate field {name:?}")));
        }
    }
    let need = |v: Option<u64>, name: &str| v.ok_or_else(|| Error::parse(lineno, 1, format!("missing field {name:?}")));
    let p = need(p, "p")?;
    let alpha = need(alpha, "alpha")?;
    let t = need(t, "t")?;
    let r = need(r, "r")?;
    let alpha = u32::try_from(alpha).map_err(|_| Error::parse(lineno, 1, "alpha too large"))?;
    let r = u32::try_from(r).map_err(|_| Error::parse(lineno, 1, "r too large"))?;
    CipherKey::new(p, alpha, t, r, poly)
}

/// A formed key: the field, `W = A + rI` and `l = (r^2)^-1`.
#[derive(Clone, Debug)]
pub struct KeyMaterial {
    key: CipherKey,
    ctx: FieldCtx,
    w: GfMatrix,
    l: Felt,
}

/// Builds the key matrix and the decryption scalar.
pub fn form_key(key: &CipherKey) -> Result<KeyMaterial> {
    let ctx = key.field()?;
    let r = key.r();
    let w = self_orthogonal(&ctx, key.t)?.add_scalar_identity(r)?;
    let l = ctx.inv(ctx.mul(r, r))?;
    Ok(KeyMaterial { key: key.clone(), ctx, w, l })
}

impl KeyMaterial {
    pub fn key(&self) -> &CipherKey {
        &self.key
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn w(&self) -> &GfMatrix {
        &self.w
    }

    pub fn l(&self) -> Felt {
        self.l
    }

    /// `r^2`, the weight of `W`.
    pub fn weight(&self) -> Felt {
        let r = self.key.r();
        self.ctx.mul(r, r)
    }

    /// Confirms `W * W^T = r^2 * I` through the full Gram matrix.
    pub fn verify(&self) -> bool {
        self.w.weight_of() == Some(self.weight())
    }

    fn check_field(&self, other: &FieldCtx) -> Result<()> {
        if &self.ctx == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.ctx.to_string(), other.to_string()))
        }
    }
}

macro_rules! field_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            ctx: FieldCtx,
            values: Vec<Felt>,
        }

        impl $name {
            /// Wraps exactly `q` in-range values.
            pub fn new(ctx: &FieldCtx, values: Vec<Felt>) -> Result<Self> {
                if values.len() != ctx.q() as usize {
                    return Err(Error::DimMismatch(format!(
                        "block of length {} in a field of order {}",
                        values.len(),
                        ctx.q()
                    )));
                }
                if let Some(bad) = values.iter().find(|v| v.index() >= ctx.q()) {
                    return Err(Error::ElementOutOfRange { index: bad.index() as u64, q: ctx.q() });
                }
                Ok($name { ctx: ctx.clone(), values })
            }

            pub fn from_indices(ctx: &FieldCtx, idx: &[u32]) -> Result<Self> {
                let values = idx.iter().map(|&i| ctx.elem(i as u64)).collect::<Result<_>>()?;
                Self::new(ctx, values)
            }

            pub fn ctx(&self) -> &FieldCtx {
                &self.ctx
            }

            pub fn values(&self) -> &[Felt] {
                &self.values
            }

            pub fn indices(&self) -> Vec<u32> {
                self.values.iter().map(|v| v.index()).collect()
            }
        }
    };
}

field_vector!(
    /// One plaintext block of `q` symbol codes.
    MessageVector
);
field_vector!(
    /// One ciphertext block of `q` element indices.
    CipherVector
);

/// Pad symbol for a field: space when it fits, otherwise 0.
pub fn pad_symbol(ctx: &FieldCtx) -> Felt {
    if ctx.q() > 32 {
        ctx.elem(32).expect("32 < q")
    } else {
        Felt::ZERO
    }
}

/// Splits bytes into padded blocks of `q` symbols. Empty input gives one
/// block of padding.
pub fn encode_message(text: &[u8], ctx: &FieldCtx) -> Result<Vec<MessageVector>> {
    let q = ctx.q();
    if let Some((offset, &b)) = text.iter().enumerate().find(|(_, &b)| b as u32 >= q) {
        return Err(Error::SymbolOutOfRange { byte: b as u32, offset, q, min_q: b as u32 + 1 });
    }
    let pad = pad_symbol(ctx);
    let q = q as usize;
    let nblocks = text.len().div_ceil(q).max(1);
    (0..nblocks)
        .map(|b| {
            let chunk = text.get(b * q..).unwrap_or(&[]);
            let values = (0..q)
                .map(|i| chunk.get(i).map_or(pad, |&byte| ctx.elem(byte as u64).expect("checked above")))
                .collect();
            MessageVector::new(ctx, values)
        })
        .collect()
}

/// Joins blocks back into bytes, stripping trailing pad symbols of the
/// final block.
pub fn decode_message(blocks: &[MessageVector]) -> Result<Vec<u8>> {
    let Some(last) = blocks.last() else {
        return Ok(Vec::new());
    };
    let pad = pad_symbol(last.ctx());
    let mut codes: Vec<Felt> = blocks.iter().flat_map(|b| b.values.iter().copied()).collect();
    let keep = last.values.iter().rev().take_while(|&&v| v == pad).count();
    codes.truncate(codes.len() - keep);
    codes.into_iter().map(|v| u8::try_from(v.index()).map_err(|_| Error::NotAByte(v.index()))).collect()
}

/// `C = W * M`.
pub fn encrypt(km: &KeyMaterial, m: &MessageVector) -> Result<CipherVector> {
    km.check_field(&m.ctx)?;
    CipherVector::new(&km.ctx, km.w.mul_vec(&m.values)?)
}

/// `M = l * W^T * C`.
pub fn decrypt(km: &KeyMaterial, c: &CipherVector) -> Result<MessageVector> {
    km.check_field(&c.ctx)?;
    let ctx = &km.ctx;
    let q = ctx.q() as usize;
    // W^T * C without materializing the transpose
    let mut acc = vec![Felt::ZERO; q];
    for (i, &ci) in c.values.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (slot, &w) in acc.iter_mut().zip(km.w.row(i)) {
            *slot = ctx.add(*slot, ctx.mul(w, ci));
        }
    }
    let values = acc.into_iter().map(|v| ctx.mul(km.l, v)).collect();
    MessageVector::new(ctx, values)
}

pub fn encrypt_message(km: &KeyMaterial, text: &[u8]) -> Result<Vec<CipherVector>> {
    encode_message(text, &km.ctx)?.iter().map(|m| encrypt(km, m)).collect()
}

pub fn decrypt_message(km: &KeyMaterial, blocks: &[CipherVector]) -> Result<Vec<u8>> {
    let plain = blocks.iter().map(|c| decrypt(km, c)).collect::<Result<Vec<_>>>()?;
    decode_message(&plain)
}

/// Printable ASCII as itself, everything else as `(n)*`.
pub fn render_printable(c: &CipherVector) -> String {
    render_codes(&c.indices())
}

pub fn render_codes(codes: &[u32]) -> String {
    codes
        .iter()
        .map(|&n| match char::from_u32(n) {
            Some(ch) if (32..=126).contains(&n) => ch.to_string(),
            _ => format!("({n})*"),
        })
        .collect()
}

/// One block per line, indices separated by single spaces.
pub fn serialize_cipher(blocks: &[CipherVector]) -> String {
    let mut out = String::new();
    for b in blocks {
        let line: Vec<String> = b.values.iter().map(Felt::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_cipher(text: &str, ctx: &FieldCtx) -> Result<Vec<CipherVector>> {
    let q = ctx.q() as usize;
    let mut blocks = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let lineno = n + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut values = Vec::with_capacity(q);
        for (col, tok) in tokens(line) {
            if values.len() == q {
                return Err(Error::parse(lineno, col, format!("more than {q} entries in block")));
            }
            let v = tok
                .parse::<u64>()
                .ok()
                .and_then(|v| ctx.elem(v).ok())
                .ok_or_else(|| Error::parse(lineno, col, format!("{tok:?} is not an element index below {q}")))?;
            values.push(v);
        }
        if values.len() < q {
            return Err(Error::parse(lineno, line.len() + 1, format!("expected {q} entries, found {}", values.len())));
        }
        blocks.push(CipherVector::new(ctx, values)?);
    }
    if blocks.is_empty() {
        return Err(Error::parse(1, 1, "empty cipher file"));
    }
    Ok(blocks)
}
