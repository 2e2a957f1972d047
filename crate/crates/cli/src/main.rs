use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gfortho::analysis::verify_field;
use gfortho::cipher::{
    decrypt_message, encrypt_message, form_key, parse_cipher, parse_key, render_printable, serialize_cipher,
    serialize_key, CipherKey,
};
use gfortho::construct::{Construction, HadamardSource};
use gfortho::gf::{default_primitive_poly, parse_poly};
use gfortho::{worked_example, FieldCtx, GfMatrix};

mod sweep;

#[derive(Parser)]
#[command(name = "gfortho", version, about = "Weighted orthogonal matrices over GF(p^a) and a matrix block cipher")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic p
    #[arg(long)]
    prime: u64,
    /// Extension degree
    #[arg(long, default_value_t = 1)]
    alpha: u32,
    /// Primitive polynomial coefficients c0,c1,...,calpha (alpha > 1)
    #[arg(long)]
    poly: Option<String>,
}

impl FieldArgs {
    fn poly(&self) -> Result<Option<Vec<u32>>> {
        self.poly.as_deref().map(parse_poly).transpose().context("--poly")
    }

    fn field(&self) -> Result<FieldCtx> {
        Ok(FieldCtx::new(self.prime, self.alpha, self.poly()?.as_deref())?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "self")]
    SelfOrthogonal,
    Weighted,
    Anti,
    Block2q,
    Kron,
}

#[derive(Subcommand)]
enum Command {
    /// Write a key file and print l and the weight r^2
    Keygen {
        #[command(flatten)]
        field: FieldArgs,
        /// Exponent t
        #[arg(long)]
        exp: u64,
        /// Scale r (element index)
        #[arg(long)]
        scale: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encrypt raw bytes into a cipher file
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also print each block with non-printable codes as (n)*
        #[arg(long)]
        pretty: bool,
    },
    /// Decrypt a cipher file back to bytes
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a matrix and print its verified weight
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        field: FieldArgs,
        /// Exponent t (t1 for block2q)
        #[arg(long, default_value_t = 1)]
        exp: u64,
        /// Second exponent t2 (block2q)
        #[arg(long, default_value_t = 1)]
        exp2: u64,
        /// Scale r as an element index (weighted, kron)
        #[arg(long, default_value_t = 1)]
        scale: u32,
        /// Target weight k as an element index (block2q)
        #[arg(long)]
        weight: Option<u32>,
        /// Sylvester Hadamard order (kron)
        #[arg(long, conflicts_with = "hadamard_file")]
        hadamard: Option<usize>,
        /// Hadamard matrix file with +-1 entries (kron)
        #[arg(long)]
        hadamard_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a matrix file and its weight
    Inspect {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run every construction check over a list of fields
    Verify {
        /// e.g. "5,7,11,13" or "9:poly=2,1,1"
        #[arg(long)]
        fields: String,
        /// Emit `field=... check=... status=... ms=...` lines
        #[arg(long)]
        machine: bool,
    },
    /// Run the COVID-19 example end to end
    Demo,
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        Some(p) => fs::read(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

/// Writes the primary output; returns whether it went to a file, in which
/// case summaries go to stdout, otherwise to stderr.
fn write_output(path: Option<&Path>, data: &[u8]) -> Result<bool> {
    match path {
        Some(p) => {
            fs::write(p, data).with_context(|| format!("writing {}", p.display()))?;
            Ok(true)
        }
        None => {
            io::stdout().write_all(data)?;
            Ok(false)
        }
    }
}

fn summary(to_stdout: bool, line: &str) {
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn load_key(path: &Path) -> Result<CipherKey> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_key(&text).with_context(|| format!("key file {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Keygen { field, exp, scale, out } => {
            let key = CipherKey::new(field.prime, field.alpha, exp, scale, field.poly()?)?;
            let km = form_key(&key)?;
            let to_file = write_output(out.as_deref(), format!("{}\n", serialize_key(&key)).as_bytes())?;
            summary(to_file, &format!("l={} weight={}", km.l(), km.weight()));
        }
        Command::Encrypt { key, input, out, pretty } => {
            let km = form_key(&load_key(&key)?)?;
            let plain = read_input(input.as_deref())?;
            let blocks = encrypt_message(&km, &plain)?;
            let to_file = write_output(out.as_deref(), serialize_cipher(&blocks).as_bytes())?;
            if pretty {
                for b in &blocks {
                    summary(to_file, &render_printable(b));
                }
            }
        }
        Command::Decrypt { key, input, out } => {
            let km = form_key(&load_key(&key)?)?;
            let raw = read_input(input.as_deref())?;
            let text = String::from_utf8(raw).context("cipher file is not UTF-8")?;
            let blocks = parse_cipher(&text, km.ctx())?;
            write_output(out.as_deref(), &decrypt_message(&km, &blocks)?)?;
        }
        Command::Construct { kind, field, exp, exp2, scale, weight, hadamard, hadamard_file, out } => {
            let ctx = field.field()?;
            let elem = |i: u32| ctx.elem(i as u64);
            let construction = match kind {
                Kind::SelfOrthogonal => Construction::SelfOrthogonal { t: exp },
                Kind::Weighted => Construction::Weighted { t: exp, r: elem(scale)? },
                Kind::Anti => Construction::Anti { t: exp },
                Kind::Block2q => {
                    let Some(k) = weight else { bail!("block2q needs --weight") };
                    Construction::Block2q { t1: exp, t2: exp2, k: elem(k)? }
                }
                Kind::Kron => {
                    let source = match (hadamard, hadamard_file) {
                        (_, Some(path)) => HadamardSource::Text(
                            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?,
                        ),
                        (Some(m), None) => HadamardSource::Sylvester(m),
                        (None, None) => bail!("kron needs --hadamard or --hadamard-file"),
                    };
                    Construction::Kron { hadamard: source, t: exp, r: elem(scale)? }
                }
            };
            let m = construction.build(&ctx)?;
            let to_file = write_output(out.as_deref(), m.to_text().as_bytes())?;
            let w = m.weight_of().map_or("none".to_string(), |k| k.to_string());
            summary(to_file, &format!("order={} weight={w}", m.rows()));
        }
        Command::Inspect { field, input } => {
            let ctx = field.field()?;
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let m = GfMatrix::parse(&text, &ctx).with_context(|| format!("matrix file {}", input.display()))?;
            print!("{}", m.to_text());
            let w =
                if m.is_square() { m.weight_of().map_or("none".to_string(), |k| k.to_string()) } else { "none".into() };
            println!("field={ctx} rows={} cols={} weight={w}", m.rows(), m.cols());
        }
        Command::Verify { fields, machine } => {
            let entries = sweep::parse_sweep(&fields).map_err(anyhow::Error::msg)?;
            let mut ok = true;
            for entry in entries {
                let ctx = match &entry.poly {
                    Some(c) => FieldCtx::from_order(entry.q, Some(c)),
                    None => FieldCtx::from_order(entry.q, None).or_else(|_| FieldCtx::with_default_poly(entry.q)),
                };
                let ctx = match ctx {
                    Ok(ctx) => ctx,
                    Err(e) => {
                        ok = false;
                        println!("field={} error={e}", entry.label);
                        continue;
                    }
                };
                if entry.poly.is_none() && ctx.alpha() > 1 {
                    let poly = default_primitive_poly(ctx.p(), ctx.alpha())?;
                    eprintln!("note: {} uses default primitive polynomial {poly:?}", entry.label);
                }
                let report = verify_field(&ctx);
                ok &= report.passed();
                if machine {
                    print!("{}", report.machine_lines());
                } else {
                    print!("{}", report.to_text());
                }
            }
            if !ok {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Demo => {
            let run = worked_example::run()?;
            print!("{}", run.report());
            if !run.round_trip_exact() {
                bail!("round trip failed");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
