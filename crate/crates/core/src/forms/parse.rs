//! Reader for the plain-text form file format:
//!
//! ```text
//! r=2 d=3          # header
//! 1 1 1 1          # coeff e_0 e_1 e_2
//! -2/3 0 3 0
//! ```

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{ExponentVector, HomogeneousForm};
use crate::error::{Error, Result};
use crate::rational::{parse_q, Q};

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

fn parse_header(line: &str, lineno: usize) -> Result<(usize, u32)> {
    let err = |msg: &str| Error::Parse { line: lineno, msg: msg.to_string() };
    let (mut r, mut d) = (None, None);
    for tok in line.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(|| err("expected `r=<int> d=<int>`"))?;
        match key {
            "r" => r = Some(val.parse::<usize>().map_err(|_| err("bad value for r"))?),
            "d" => d = Some(val.parse::<u32>().map_err(|_| err("bad value for d"))?),
            _ => return Err(err("unknown header key")),
        }
    }
    match (r, d) {
        (Some(r), Some(d)) if r >= 1 && d >= 1 => Ok((r, d)),
        (Some(_), Some(_)) => Err(err("r and d must be at least 1")),
        _ => Err(err("header needs both r and d")),
    }
}

pub fn parse_form(text: &str) -> Result<HomogeneousForm> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let (r, d) = parse_header(header, hline)?;

    let mut terms: BTreeMap<ExponentVector, Q> = BTreeMap::new();
    for (lineno, line) in lines {
        let mut toks = line.split_whitespace();
        let coeff = toks.next().expect("non-empty line");
        let coeff = parse_q(coeff).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?;
        let exps = toks
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad exponent `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if exps.len() != r + 1 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected {} exponents, found {}", r + 1, exps.len()),
            });
        }
        if let Some(neg) = exps.iter().find(|&&x| x < 0) {
            return Err(Error::Parse { line: lineno, msg: format!("negative exponent {neg}") });
        }
        let exps = exps
            .into_iter()
            .map(|x| u32::try_from(x).map_err(|_| Error::Overflow("reading an exponent")))
            .collect::<Result<Vec<u32>>>()?;
        let e = ExponentVector(exps);
        if e.degree() != u64::from(d) {
            return Err(Error::DegreeMismatch { expected: d, got: e.degree() });
        }
        *terms.entry(e).or_insert_with(Q::zero) += coeff;
    }
    if terms.is_empty() {
        return Err(Error::EmptyForm);
    }
    if let Some((e, _)) = terms.iter().find(|(_, c)| c.is_zero()) {
        return Err(Error::Parse {
            line: 0,
            msg: format!("monomial {:?} has zero net coefficient", e.0),
        });
    }
    HomogeneousForm::new(r, d, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_frac, q_int};

    #[test]
    fn parses_simple_forms() {
        let f = parse_form("r=1 d=2\n1 0 2").unwrap();
        assert_eq!(f, HomogeneousForm::power_of_variable(1, 2, 1));

        let f = parse_form("r=2 d=3\n1 1 1 1\n-2/3 0 3 0").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&ExponentVector(vec![1, 1, 1])), Some(&q_int(1)));
        assert_eq!(f.coefficient(&ExponentVector(vec![0, 3, 0])), Some(&q_frac(-2, 3)));
    }

    #[test]
    fn comments_blank_lines_and_duplicates() {
        let f = parse_form("# a comment\n\nr=1 d=2  # header\n1 2 0\n\n2 2 0 # again\n").unwrap();
        assert_eq!(f.coefficient(&ExponentVector(vec![2, 0])), Some(&q_int(3)));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            parse_form("r=1 d=2\n1 0 3"),
            Err(Error::DegreeMismatch { expected: 2, got: 3 })
        );
        assert_eq!(parse_form("r=1 d=2\n"), Err(Error::EmptyForm));
        assert!(parse_form("r=1 d=2\n1.5 1 1").is_err());
        assert!(parse_form("r=1 d=2\n1 -1 3").is_err());
        assert!(parse_form("r=1 d=2\n1 1 1 0").is_err());
        assert!(parse_form("r=1 d=2\n1 1 1\n-1 1 1").is_err());
        assert!(parse_form("d=2\n1 1 1").is_err());
        assert!(parse_form("").is_err());
    }
}
