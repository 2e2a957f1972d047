//! Field list syntax for `verify`: entries `q` or `q:poly=c0,c1,...`,
//! separated by commas, semicolons or whitespace. A poly takes exactly
//! `alpha + 1` coefficients, so commas inside it are unambiguous.

use gfortho::gf::{factor_prime_power, parse_poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEntry {
    pub label: String,
    pub q: u64,
    pub poly: Option<Vec<u32>>,
}

pub fn parse_sweep(text: &str) -> Result<Vec<FieldEntry>, String> {
    let mut toks = text.split([',', ';', ' ', '\t', '\n']).filter(|s| !s.is_empty());
    let mut out = Vec::new();
    while let Some(tok) = toks.next() {
        let (head, first_coeff) = match tok.split_once(":poly=") {
            Some((h, c)) => (h, Some(c)),
            None => (tok, None),
        };
        let q: u64 = head.parse().map_err(|_| format!("bad field order {head:?}"))?;
        let poly = match first_coeff {
            None => None,
            Some(c0) => {
                let (_, alpha) = factor_prime_power(q).map_err(|e| e.to_string())?;
                let mut coeffs = vec![c0.to_string()];
                for _ in 0..alpha {
                    let c = toks.next().ok_or_else(|| format!("{tok}: poly needs {} coefficients", alpha + 1))?;
                    coeffs.push(c.to_string());
                }
                Some(parse_poly(&coeffs.join(",")).map_err(|e| e.to_string())?)
            }
        };
        let label = match &poly {
            None => q.to_string(),
            Some(c) => format!("{q}:poly={}", gfortho::gf::format_poly(c)),
        };
        out.push(FieldEntry { label, q, poly });
    }
    if out.is_empty() {
        return Err("empty field list".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_orders() {
        let v = parse_sweep("5,7, 11;13").unwrap();
        assert_eq!(v.iter().map(|f| f.q).collect::<Vec<_>>(), vec![5, 7, 11, 13]);
        assert!(v.iter().all(|f| f.poly.is_none()));
    }

    #[test]
    fn poly_consumes_alpha_plus_one_coefficients() {
        let v = parse_sweep("9:poly=2,1,1,5,8:poly=1,1,0,1").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[0].poly, Some(vec![2, 1, 1]));
        assert_eq!(v[1].q, 5);
        assert_eq!(v[2].poly, Some(vec![1, 1, 0, 1]));
        assert_eq!(v[2].label, "8:poly=1,1,0,1");
    }

    #[test]
    fn errors() {
        assert!(parse_sweep("").is_err());
        assert!(parse_sweep("x").is_err());
        assert!(parse_sweep("9:poly=2,1").is_err());
        assert!(parse_sweep("12:poly=1,1").is_err());
    }
}
