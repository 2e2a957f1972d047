//! The reference run: "COVID-19" under the key `p=89 t=2 r=5`, compared
//! against a published ciphertext vector.

use std::fmt::Write as _;

use crate::cipher::{decrypt, encode_message, encrypt, form_key, render_codes, CipherKey, CipherVector, MessageVector};
use crate::error::Result;
use crate::gf::Felt;

pub const PLAINTEXT: &[u8] = b"COVID-19";
pub const PRIME: u64 = 89;
pub const EXPONENT: u64 = 2;
pub const SCALE: u32 = 5;

/// Published ciphertext for [`PLAINTEXT`], transcribed entry by entry.
pub const PUBLISHED_CIPHER: [u32; 89] = [
    56, 26, 58, 77, 45, 10, 19, 46, 84, 67, 48, 27, 4, 68, 41, 12, 70, 37, 2, 54, 15, 63, //
    20, 64, 17, 57, 6, 42, 76, 19, 49, 77, 14, 38, 60, 80, 9, 25, 39, 51, 61, 69, 75, //
    79, 81, 81, 79, 75, 69, 61, 51, 39, 25, 9, 80, 60, 38, 14, 77, 49, 19, 76, 42, //
    6, 57, 17, 64, 20, 63, 15, 54, 2, 37, 70, 12, 41, 68, 4, 27, 48, 67, 84, //
    10, 23, 34, 43, 50, 55, 58,
];

#[derive(Clone, Debug)]
pub struct ReferenceRun {
    pub key: CipherKey,
    pub message: MessageVector,
    pub cipher: CipherVector,
    pub l: Felt,
    pub weight: Felt,
    pub recovered: MessageVector,
    pub recovered_text: Vec<u8>,
    /// `(index, computed, published)` for every disagreeing entry.
    pub discrepancies: Vec<(usize, u32, u32)>,
}

pub fn run() -> Result<ReferenceRun> {
    let key = CipherKey::new(PRIME, 1, EXPONENT, SCALE, None)?;
    let km = form_key(&key)?;
    let message = encode_message(PLAINTEXT, km.ctx())?.remove(0);
    let cipher = encrypt(&km, &message)?;
    let recovered = decrypt(&km, &cipher)?;
    let recovered_text = crate::cipher::decode_message(std::slice::from_ref(&recovered))?;
    let discrepancies = cipher
        .indices()
        .into_iter()
        .zip(PUBLISHED_CIPHER)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| (i, a, b))
        .collect();
    Ok(ReferenceRun { l: km.l(), weight: km.weight(), key, message, cipher, recovered, recovered_text, discrepancies })
}

fn join(codes: &[u32]) -> String {
    codes.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

impl ReferenceRun {
    pub fn round_trip_exact(&self) -> bool {
        self.recovered == self.message && self.recovered_text == PLAINTEXT
    }

    pub fn report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "plaintext: {}", String::from_utf8_lossy(PLAINTEXT));
        let _ = writeln!(out, "key: {}", self.key);
        let _ = writeln!(out, "W = A + {}I, A[i][j] = j^{} - i^{} mod {}", SCALE, EXPONENT, EXPONENT, PRIME);
        let _ = writeln!(out, "weight r^2 = {}", self.weight);
        let _ = writeln!(out, "l = {}", self.l);
        let _ = writeln!(out, "M = {}", join(&self.message.indices()));
        let _ = writeln!(out, "C = {}", join(&self.cipher.indices()));
        let _ = writeln!(out, "C (printable) = {}", render_codes(&self.cipher.indices()));
        let _ = writeln!(out, "recovered M = {}", join(&self.recovered.indices()));
        let _ = writeln!(out, "recovered text: {}", String::from_utf8_lossy(&self.recovered_text));
        if self.discrepancies.is_empty() {
            let _ = writeln!(out, "published ciphertext: all {} entries match", PUBLISHED_CIPHER.len());
        } else {
            let _ = writeln!(out, "published ciphertext: {} entries differ", self.discrepancies.len());
            let _ = writeln!(out, "index computed published");
            for (i, a, b) in &self.discrepancies {
                let _ = writeln!(out, "{i:>5} {a:>8} {b:>9}");
            }
        }
        out
    }
}
