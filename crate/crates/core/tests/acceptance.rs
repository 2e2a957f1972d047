//! Acceptance suite. One line per criterion; exits nonzero on any failure.

mod common;

use std::time::{Duration, Instant};

use common::expected_decode;
use gfortho::analysis::parameter_search;
use gfortho::cipher::{
    decode_message, decrypt, encode_message, encrypt, form_key, CipherKey, CipherVector, MessageVector,
};
use gfortho::construct::{
    anti_orthogonal, block_2q, hadamard_sylvester, kron_weighted, parse_hadamard, self_orthogonal, valid_exponents,
    validate_exponent_pair, weighted_orthogonal,
};
use gfortho::worked_example;
use gfortho::{Error, Felt, FieldCtx, GfMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

const H12: &str = include_str!("../fixtures/hadamard12.txt");

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn z(p: u64) -> FieldCtx {
    FieldCtx::new(p, 1, None).unwrap()
}

/// q in {4,5,7,8,9,11,13,25} with fixed primitive polynomials.
fn lemma_fields() -> Vec<FieldCtx> {
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

fn gf9() -> FieldCtx {
    FieldCtx::new(3, 2, Some(&[2, 1, 1])).unwrap()
}

fn within(elapsed: Duration, limit_ms: u128, what: &str) -> Result<(), String> {
    ensure!(elapsed.as_millis() < limit_ms, "{what} took {} ms, limit {limit_ms} ms", elapsed.as_millis());
    Ok(())
}

fn scalar(ctx: &FieldCtx, n: usize, k: Felt) -> GfMatrix {
    GfMatrix::identity(ctx, n).scalar_mul(k)
}

fn c1_worked_example() -> Outcome {
    let start = Instant::now();
    let run = worked_example::run().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut want = vec![67, 79, 86, 73, 68, 45, 49, 57];
    want.resize(89, 32);
    ensure!(run.message.indices() == want, "encoded message differs");
    ensure!(run.recovered.indices() == want, "decryption does not return M");
    ensure!(run.recovered_text == b"COVID-19", "decoded text differs");
    ensure!(run.cipher.indices()[..10] == [56, 26, 58, 77, 45, 10, 19, 46, 84, 67], "leading entries differ");
    if !run.discrepancies.is_empty() {
        ensure!(run.report().contains("index computed published"), "discrepancy table missing");
        return Err(format!("{} entries differ from the published vector:\n{}", run.discrepancies.len(), run.report()));
    }
    within(elapsed, 1000, "worked example")?;
    Ok(format!("89/89 entries equal, round trip exact, {} ms", elapsed.as_millis()))
}

fn c2_l_value() -> Outcome {
    let z89 = z(89);
    let l = z89.inv(z89.from_int(25)).map_err(|e| e.to_string())?;
    ensure!(l.index() == 57, "inv(25) = {l}");
    ensure!(25 * l.index() % 89 == 1, "25*{l} mod 89 != 1");
    ensure!(z89.mul(z89.from_int(25), l) == Felt::ONE, "field product != 1");
    Ok("inv(25) = 57 in Z_89".into())
}

fn c3_lemma_sweep() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for ctx in lemma_fields() {
        let n = ctx.q() as u64 - 1;
        for k in 1..n {
            let s = ctx.power_sum(k);
            ensure!(s.is_zero(), "{ctx}: power_sum({k}) = {s}");
            checked += 1;
        }
        let top = ctx.power_sum(n);
        ensure!(top == ctx.from_int(-1) && !top.is_zero(), "{ctx}: power_sum(q-1) = {top}");
    }
    within(start.elapsed(), 1000, "lemma sweep")?;
    Ok(format!("{checked} power sums vanish, 8 boundary sums = -1, {} ms", start.elapsed().as_millis()))
}

fn c4_construction_sweep() -> Outcome {
    let start = Instant::now();
    let mut mats = 0;
    for ctx in lemma_fields() {
        let q = ctx.q() as usize;
        let minus_one = ctx.from_int(-1);
        let root = ctx.sqrt_in_field(minus_one);
        for t in valid_exponents(&ctx) {
            let a = self_orthogonal(&ctx, t).map_err(|e| e.to_string())?;
            ensure!(a.gram().unwrap().is_zero(), "{ctx} t={t}: gram(A) != 0");
            ensure!(a.transpose() == a.neg(), "{ctx} t={t}: A^T != -A");
            ensure!((0..q).all(|i| a.get(i, i).is_zero()), "{ctx} t={t}: nonzero diagonal");
            for r in ctx.elements().skip(1) {
                let w = weighted_orthogonal(&ctx, t, r).map_err(|e| e.to_string())?;
                ensure!(w.weight_of() == Some(ctx.mul(r, r)), "{ctx} t={t} r={r}: weight != r^2");
                mats += 1;
            }
            match (anti_orthogonal(&ctx, t), root) {
                (Ok(w), Some(_)) => ensure!(w.weight_of() == Some(minus_one), "{ctx} t={t}: anti weight"),
                (Err(Error::NoAntiRoot(_)), None) => {}
                (other, _) => return Err(format!("{ctx} t={t}: anti_orthogonal {other:?} vs sqrt(-1) {root:?}")),
            }
        }
    }
    for p in [5u64, 7, 11, 13, 17, 19] {
        let ctx = z(p);
        let ok = anti_orthogonal(&ctx, 1).is_ok();
        ensure!(ok == (p % 4 == 1), "Z_{p}: anti_orthogonal success = {ok}");
        ensure!(ok == ctx.sqrt_in_field(ctx.from_int(-1)).is_some(), "Z_{p}: disagrees with sqrt(-1)");
    }
    within(start.elapsed(), 5000, "construction sweep")?;
    Ok(format!("{mats} weighted matrices checked, {} ms", start.elapsed().as_millis()))
}

fn c5_product_vanishing() -> Outcome {
    let mut pairs = 0;
    for ctx in [z(5), z(7), gf9(), z(11), z(13)] {
        let ts: Vec<u64> = valid_exponents(&ctx).collect();
        for &t in &ts {
            for &s in &ts {
                if validate_exponent_pair(&ctx, t, s).is_err() {
                    continue;
                }
                let (a, b) = (self_orthogonal(&ctx, t).unwrap(), self_orthogonal(&ctx, s).unwrap());
                ensure!(a.matmul(&b).unwrap().is_zero(), "{ctx}: A_{t} A_{s} != 0");
                ensure!(b.matmul(&a).unwrap().is_zero(), "{ctx}: A_{s} A_{t} != 0");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} exponent pairs, both orders"))
}

fn c6_any_weight() -> Outcome {
    let mut count = 0;
    for ctx in [z(5), z(7), gf9()] {
        for k in ctx.elements() {
            let m = block_2q(&ctx, 1, 1, k).map_err(|e| e.to_string())?;
            ensure!(m.rows() == 2 * ctx.q() as usize, "{ctx} k={k}: order {}", m.rows());
            ensure!(m.weight_of() == Some(k), "{ctx} k={k}: weight {:?}", m.weight_of());
            count += 1;
        }
    }
    Ok(format!("{count} weights realized at order 2q"))
}

fn c7_kronecker() -> Outcome {
    let start = Instant::now();
    let z5 = z(5);
    let k = kron_weighted(&hadamard_sylvester(&z5, 4).unwrap(), &weighted_orthogonal(&z5, 1, Felt::ONE).unwrap())
        .map_err(|e| e.to_string())?;
    ensure!(k.rows() == 20 && k.weight_of() == Some(z5.from_int(4)), "H_4 (x) W(Z_5,1,1)");

    let z7 = z(7);
    let k = kron_weighted(&hadamard_sylvester(&z7, 8).unwrap(), &weighted_orthogonal(&z7, 1, z7.from_int(3)).unwrap())
        .map_err(|e| e.to_string())?;
    ensure!(k.rows() == 56 && k.weight_of() == Some(z7.from_int(2)), "H_8 (x) W(Z_7,1,3)");

    let g = gf9();
    let h12 = parse_hadamard(H12, &g).map_err(|e| e.to_string())?;
    let k = kron_weighted(&h12, &weighted_orthogonal(&g, 1, Felt::ONE).unwrap()).map_err(|e| e.to_string())?;
    ensure!(k.rows() == 108, "order {}", k.rows());
    ensure!(k.gram().unwrap() == scalar(&g, 108, Felt::ZERO), "H_12 (x) W(GF(9)) not self-orthogonal");
    ensure!(k.weight_of() == Some(Felt::ZERO), "H_12 (x) W(GF(9)) weight");
    within(start.elapsed(), 10_000, "Kronecker checks")?;
    Ok(format!("weights 4, 2, 0 at orders 20, 56, 108, {} ms", start.elapsed().as_millis()))
}

fn c8_cipher_round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let (mut messages, mut bytes_total) = (0, 0);
    for p in [5u64, 7, 11, 13, 89, 257] {
        let keys: Vec<(u64, u32)> = (1..=(p - 2) / 2).flat_map(|t| (1..p as u32).map(move |r| (t, r))).collect();
        // every key when there are at most 100, else 100 random ones
        let trials = 100;
        for trial in 0..trials {
            let (t, r) = if keys.len() <= 100 { keys[trial % keys.len()] } else { keys[rng.gen_range(0..keys.len())] };
            let key = CipherKey::new(p, 1, t, r, None).map_err(|e| e.to_string())?;
            let km = form_key(&key).map_err(|e| e.to_string())?;
            let len = rng.gen_range(0..=3 * p as usize + 5);
            let mut msg: Vec<u8> = (0..len).map(|_| rng.gen_range(0..p.min(256)) as u8).collect();
            // force pad runs at the tail, some crossing a block boundary
            if trial % 4 == 0 && len > 0 {
                let pad = if p > 32 { 32 } else { 0 };
                let run = rng.gen_range(1..=len.min(p as usize + 2));
                msg[len - run..].fill(pad);
            }
            let blocks = encode_message(&msg, km.ctx()).map_err(|e| e.to_string())?;
            let cipher: Vec<CipherVector> =
                blocks.iter().map(|m| encrypt(&km, m)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            let plain: Vec<MessageVector> =
                cipher.iter().map(|c| decrypt(&km, c)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            ensure!(plain == blocks, "q={p} trial {trial} ({key}): decrypted blocks differ");
            let decoded = decode_message(&plain).map_err(|e| e.to_string())?;
            ensure!(decoded == expected_decode(&msg, p as u32), "q={p} trial {trial} ({key}): decoded bytes differ");
            messages += 1;
            bytes_total += len;
        }
    }
    within(start.elapsed(), 30_000, "round trips")?;
    Ok(format!(
        "{messages} messages over q in 5,7,11,13,89,257, {bytes_total} bytes, {} ms",
        start.elapsed().as_millis()
    ))
}

fn c9_parameter_search() -> Outcome {
    let start = Instant::now();
    let ctx = z(11);
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut keys = 0;
    for t in valid_exponents(&ctx) {
        for r in 1..11u32 {
            let km = form_key(&CipherKey::new(11, 1, t, r, None).unwrap()).map_err(|e| e.to_string())?;
            let m = loop {
                let v: Vec<u32> = (0..11).map(|_| rng.gen_range(0..11)).collect();
                if v.iter().any(|&x| x != 0) {
                    break MessageVector::from_indices(&ctx, &v).unwrap();
                }
            };
            let c = encrypt(&km, &m).map_err(|e| e.to_string())?;
            let found = parameter_search(&ctx, &m, &c).map_err(|e| e.to_string())?;
            ensure!(found.contains(&(t, ctx.from_int(r as i64))), "(t={t}, r={r}) missing from {found:?}");
            keys += 1;
        }
    }
    within(start.elapsed(), 10_000, "parameter search")?;
    Ok(format!("{keys} keys recovered, {} ms", start.elapsed().as_millis()))
}

fn c10_key_formation_p257() -> Outcome {
    let start = Instant::now();
    let km = form_key(&CipherKey::new(257, 1, 3, 7, None).unwrap()).map_err(|e| e.to_string())?;
    ensure!(km.w().rows() == 257, "order {}", km.w().rows());
    ensure!(km.verify(), "Gram check failed");
    within(start.elapsed(), 5000, "key formation")?;
    Ok(format!("W of order 257 formed and Gram-checked in {} ms", start.elapsed().as_millis()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("worked example reproduction", c1_worked_example),
        ("l-value", c2_l_value),
        ("power-sum lemma sweep", c3_lemma_sweep),
        ("construction sweep", c4_construction_sweep),
        ("product vanishing", c5_product_vanishing),
        ("any-weight order-2q coverage", c6_any_weight),
        ("Kronecker weights", c7_kronecker),
        ("cipher round trip", c8_cipher_round_trip),
        ("known-plaintext parameter search", c9_parameter_search),
        ("key formation p=257", c10_key_formation_p257),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
