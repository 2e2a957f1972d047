//! Field sweeps that machine-check every construction, key-space arithmetic,
//! and exhaustive known-plaintext parameter search.

use std::fmt::Write as _;
use std::time::Instant;

use crate::cipher::{CipherVector, MessageVector};
use crate::construct::{
    anti_orthogonal, block_2q, hadamard_sylvester, kron_weighted, self_orthogonal, valid_exponents,
    validate_exponent_pair, weighted_orthogonal,
};
use crate::error::{Error, Result};
use crate::gf::{Felt, FieldCtx};
use crate::matrix::GfMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    /// Counterexample description.
    Fail(String),
    Skip(String),
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail(_) => "fail",
            CheckStatus::Skip(_) => "skip",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub ms: u128,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub field: String,
    pub checks: Vec<CheckResult>,
}

/// Check identifiers in report order.
pub const CHECKS: [&str; 8] = [
    "primitive_root",
    "power_sum_lemma",
    "self_orthogonal",
    "weighted_orthogonal",
    "anti_orthogonal",
    "product_vanishing",
    "block_2q_any_weight",
    "kron_weighted",
];

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| matches!(c.status, CheckStatus::Fail(_)))
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `field=<desc> check=<name> status=<pass|fail|skip> ms=<int>` lines.
    pub fn machine_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(out, "field={} check={} status={} ms={}", self.field, c.name, c.status.label(), c.ms);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.field);
        for c in &self.checks {
            let detail = match &c.status {
                CheckStatus::Pass => String::new(),
                CheckStatus::Fail(why) | CheckStatus::Skip(why) => format!(" ({why})"),
            };
            let _ = writeln!(out, "  {:<22} {:<4} {:>6} ms{}", c.name, c.status.label(), c.ms, detail);
        }
        out
    }
}

type Outcome = std::result::Result<(), String>;

fn first_mismatch(m: &GfMatrix, k: Felt) -> Option<String> {
    for i in 0..m.rows() {
        for (j, &e) in m.row(i).iter().enumerate() {
            let want = if i == j { k } else { Felt::ZERO };
            if e != want {
                return Some(format!("entry [{i}][{j}] = {e}, expected {want}"));
            }
        }
    }
    None
}

fn expect_weight(m: &GfMatrix, k: Felt, label: &str) -> Outcome {
    let g = m.gram().map_err(|e| format!("{label}: {e}"))?;
    match first_mismatch(&g, k) {
        None => Ok(()),
        Some(why) => Err(format!("{label}: Gram {why}")),
    }
}

fn check_primitive_root(ctx: &FieldCtx) -> Outcome {
    let g = ctx.primitive_root();
    let mut seen = vec![false; ctx.q() as usize];
    let mut x = Felt::ONE;
    for e in 1..ctx.q() {
        x = ctx.mul(x, g);
        if x.is_zero() || std::mem::replace(&mut seen[x.index() as usize], true) {
            return Err(format!("g={g}: g^{e} = {x} repeats or vanishes"));
        }
    }
    Ok(())
}

fn check_power_sums(ctx: &FieldCtx) -> Outcome {
    let n = ctx.q() as u64 - 1;
    for k in 1..n {
        let s = ctx.power_sum(k);
        if !s.is_zero() {
            return Err(format!("k={k}: sum = {s}"));
        }
    }
    let top = ctx.power_sum(n);
    if top != ctx.from_int(-1) {
        return Err(format!("k=q-1: sum = {top}, expected -1"));
    }
    Ok(())
}

fn check_self_orthogonal(ctx: &FieldCtx) -> Outcome {
    for t in valid_exponents(ctx) {
        let a = self_orthogonal(ctx, t).map_err(|e| e.to_string())?;
        expect_weight(&a, Felt::ZERO, &format!("t={t}"))?;
        if a.transpose() != a.neg() {
            return Err(format!("t={t}: not skew-symmetric"));
        }
        if let Some(i) = (0..a.rows()).find(|&i| !a.get(i, i).is_zero()) {
            return Err(format!("t={t}: diagonal entry {i} nonzero"));
        }
    }
    Ok(())
}

fn check_weighted(ctx: &FieldCtx) -> Outcome {
    for t in valid_exponents(ctx) {
        for r in ctx.elements().skip(1) {
            let w = weighted_orthogonal(ctx, t, r).map_err(|e| e.to_string())?;
            expect_weight(&w, ctx.mul(r, r), &format!("t={t} r={r}"))?;
        }
    }
    Ok(())
}

fn check_anti(ctx: &FieldCtx) -> Outcome {
    let minus_one = ctx.from_int(-1);
    let root = ctx.sqrt_in_field(minus_one);
    if ctx.alpha() == 1 && ctx.p() > 2 && root.is_some() != (ctx.p() % 4 == 1) {
        return Err(format!("sqrt(-1) existence disagrees with p mod 4 = {}", ctx.p() % 4));
    }
    for t in valid_exponents(ctx) {
        match (anti_orthogonal(ctx, t), root) {
            (Ok(w), Some(_)) => expect_weight(&w, minus_one, &format!("t={t}"))?,
            (Err(Error::NoAntiRoot(_)), None) => {}
            (Ok(_), None) => return Err(format!("t={t}: built without a square root of -1")),
            (Err(e), _) => return Err(format!("t={t}: {e}")),
        }
    }
    Ok(())
}

fn check_products(ctx: &FieldCtx) -> Outcome {
    let mats: Vec<(u64, GfMatrix)> = valid_exponents(ctx)
        .map(|t| self_orthogonal(ctx, t).map(|a| (t, a)))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    for (t, a) in &mats {
        for (s, b) in &mats {
            if validate_exponent_pair(ctx, *t, *s).is_err() {
                continue;
            }
            let ab = a.matmul(b).map_err(|e| e.to_string())?;
            if let Some(why) = first_mismatch(&ab, Felt::ZERO) {
                return Err(format!("t={t} s={s}: product {why}"));
            }
        }
    }
    Ok(())
}

fn check_block_2q(ctx: &FieldCtx) -> Outcome {
    for k in ctx.elements() {
        let m = block_2q(ctx, 1, 1, k).map_err(|e| e.to_string())?;
        if m.rows() != 2 * ctx.q() as usize {
            return Err(format!("k={k}: order {}", m.rows()));
        }
        expect_weight(&m, k, &format!("k={k}"))?;
    }
    Ok(())
}

fn check_kron(ctx: &FieldCtx) -> Outcome {
    let h = hadamard_sylvester(ctx, 4).map_err(|e| e.to_string())?;
    let w = weighted_orthogonal(ctx, 1, Felt::ONE).map_err(|e| e.to_string())?;
    let k = kron_weighted(&h, &w).map_err(|e| e.to_string())?;
    expect_weight(&k, ctx.from_int(4), "H_4 (x) W(t=1,r=1)")
}

type Check = (&'static str, fn(&FieldCtx) -> Outcome, bool);

/// Runs every check on one field. Failures are report entries.
pub fn verify_field(ctx: &FieldCtx) -> VerificationReport {
    let has_exponent = valid_exponents(ctx).next().is_some();
    let checks: [Check; 8] = [
        (CHECKS[0], check_primitive_root, false),
        (CHECKS[1], check_power_sums, false),
        (CHECKS[2], check_self_orthogonal, true),
        (CHECKS[3], check_weighted, true),
        (CHECKS[4], check_anti, true),
        (CHECKS[5], check_products, true),
        (CHECKS[6], check_block_2q, true),
        (CHECKS[7], check_kron, true),
    ];
    let checks = checks
        .into_iter()
        .map(|(name, run, needs_exponent)| {
            if needs_exponent && !has_exponent {
                return CheckResult {
                    name,
                    status: CheckStatus::Skip("no valid exponent t: 2t <= q-2 unsatisfiable".into()),
                    ms: 0,
                };
            }
            let start = Instant::now();
            let status = match run(ctx) {
                Ok(()) => CheckStatus::Pass,
                Err(why) => CheckStatus::Fail(why),
            };
            CheckResult { name, status, ms: start.elapsed().as_millis() }
        })
        .collect();
    VerificationReport { field: ctx.to_string(), checks }
}

/// Size of the unrestricted matrix space next to the scheme's actual
/// parameter space.
#[derive(Clone, Debug, PartialEq)]
pub struct KeyspaceFigures {
    pub q: u64,
    /// `log10(q^(q^2))`.
    pub matrix_space_log10: f64,
    /// Number of valid `(t, r)` pairs.
    pub parameter_space: u64,
}

pub fn keyspace_figures(q: u64) -> KeyspaceFigures {
    let exponents = q.saturating_sub(2) / 2;
    KeyspaceFigures {
        q,
        matrix_space_log10: (q * q) as f64 * (q as f64).log10(),
        parameter_space: exponents * q.saturating_sub(1),
    }
}

/// Every `(t, r)` whose key maps `m` to `c`. With `W = A_t + rI`, checks
/// `A_t*m + r*m == c` after one matrix-vector product per `t`.
pub fn parameter_search(ctx: &FieldCtx, m: &MessageVector, c: &CipherVector) -> Result<Vec<(u64, Felt)>> {
    for other in [m.ctx(), c.ctx()] {
        if other != ctx {
            return Err(Error::FieldMismatch(ctx.to_string(), other.to_string()));
        }
    }
    let (mv, cv) = (m.values(), c.values());
    let mut found = Vec::new();
    for t in valid_exponents(ctx) {
        let am = self_orthogonal(ctx, t)?.mul_vec(mv)?;
        for r in ctx.elements().skip(1) {
            let hit = am.iter().zip(mv).zip(cv).all(|((&a, &x), &y)| ctx.add(a, ctx.mul(r, x)) == y);
            if hit {
                found.push((t, r));
            }
        }
    }
    Ok(found)
}
