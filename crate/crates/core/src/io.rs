//! Text formats for matrices and vectors.
//!
//! ```text
//! # comments run to the end of the line
//! domain: times        # optional; `times` (default) or `plus`
//! 2                    # dimension n
//! 1    2               # n rows of n entries
//! 1/8  1
//! ```
//!
//! In the `times` domain entries are nonnegative integers, fractions `p/q`
//! or decimals (with optional exponent), all read exactly. In the `plus`
//! domain entries are logarithms and `-inf` stands for the semiring zero;
//! such matrices use the float backend.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed};

use crate::error::{Error, Result};
use crate::matrix::MaxMatrix;
use crate::scalar::{Exact, LogReal, NumericMode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Times,
    Plus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedMatrix {
    Exact(MaxMatrix<Exact>),
    Float(MaxMatrix<LogReal>),
}

impl ParsedMatrix {
    pub fn n(&self) -> usize {
        match self {
            ParsedMatrix::Exact(m) => m.n(),
            ParsedMatrix::Float(m) => m.n(),
        }
    }

    pub fn mode(&self) -> NumericMode {
        match self {
            ParsedMatrix::Exact(_) => NumericMode::ExactRational,
            ParsedMatrix::Float(_) => NumericMode::FloatLog,
        }
    }

    /// The float-backend version of the matrix.
    pub fn into_float(self) -> MaxMatrix<LogReal> {
        match self {
            ParsedMatrix::Exact(m) => m.to_float(),
            ParsedMatrix::Float(m) => m,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedVector {
    Exact(Vec<Exact>),
    Float(Vec<LogReal>),
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Splits into whitespace-separated tokens with 1-based positions, dropping
/// comments, and peels off an optional leading `domain:` line.
fn tokenize(text: &str) -> Result<(Domain, Vec<Token<'_>>)> {
    let mut domain = None;
    let mut tokens = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let body = raw.split('#').next().unwrap_or("");
        if let Some(rest) = body.trim_start().strip_prefix("domain:") {
            if domain.is_some() || !tokens.is_empty() {
                return Err(parse_error(line, 1, "the domain line must come first"));
            }
            domain = Some(match rest.trim() {
                "times" => Domain::Times,
                "plus" => Domain::Plus,
                other => return Err(parse_error(line, 1, &format!("unknown domain `{other}`"))),
            });
            continue;
        }
        let mut offset = 0;
        for piece in body.split_whitespace() {
            let start = body[offset..].find(piece).unwrap() + offset;
            offset = start + piece.len();
            tokens.push(Token { text: piece, line, column: body[..start].chars().count() + 1 });
        }
    }
    Ok((domain.unwrap_or(Domain::Times), tokens))
}

fn parse_error(line: usize, column: usize, message: &str) -> Error {
    Error::Parse { line, column, message: message.to_string() }
}

fn parse_header(tokens: &[Token<'_>]) -> Result<usize> {
    let first = tokens.first().ok_or_else(|| parse_error(1, 1, "missing dimension header"))?;
    match first.text.parse::<usize>() {
        Ok(0) => Err(Error::Empty),
        Ok(n) => Ok(n),
        Err(_) => Err(parse_error(first.line, first.column, "dimension must be a positive integer")),
    }
}

/// Exact value of `[-]digits[.digits][e[-]digits]` or `[-]p/q`.
fn parse_rational(text: &str) -> Option<BigRational> {
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        return (q.is_positive()).then(|| BigRational::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(k) => (&text[..k], text[k + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let scale = exponent - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(digits);
    if scale >= 0 {
        value *= BigRational::from_integer(Pow::pow(&ten, scale as u32));
    } else {
        value /= BigRational::from_integer(Pow::pow(&ten, scale.unsigned_abs()));
    }
    Some(if negative { -value } else { value })
}

fn parse_log(text: &str) -> Option<f64> {
    if text == "-inf" {
        return Some(f64::NEG_INFINITY);
    }
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Converts the `count` tokens after the header, rejecting short or long input.
fn read_entries<'a, T>(
    tokens: &'a [Token<'a>],
    count: usize,
    mut convert: impl FnMut(&Token<'a>, usize) -> Result<T>,
) -> Result<Vec<T>> {
    let body = &tokens[1..];
    if body.len() < count {
        let (line, column) = body.last().or(tokens.first()).map_or((1, 1), |t| (t.line, t.column));
        return Err(parse_error(line, column, &format!("expected {count} entries, found {}", body.len())));
    }
    if let Some(extra) = body.get(count) {
        return Err(parse_error(extra.line, extra.column, "unexpected trailing entry"));
    }
    body.iter().enumerate().map(|(k, t)| convert(t, k)).collect()
}

pub fn parse_matrix(text: &str) -> Result<ParsedMatrix> {
    let (domain, tokens) = tokenize(text)?;
    let n = parse_header(&tokens)?;
    // Every row must sit on its own line so that malformed rows are caught
    // where they occur.
    let body = &tokens[1..];
    let mut line_starts: Vec<usize> = Vec::new();
    for (k, t) in body.iter().enumerate() {
        if k == 0 || body[k - 1].line != t.line {
            line_starts.push(k);
        }
    }
    for (r, &start) in line_starts.iter().enumerate() {
        let end = line_starts.get(r + 1).copied().unwrap_or(body.len());
        if r < n && end - start != n {
            let t = &body[start];
            return Err(parse_error(t.line, t.column, &format!("row {} has {} entries, expected {n}", r + 1, end - start)));
        }
    }
    match domain {
        Domain::Times => {
            let values = read_entries(&tokens, n * n, |t, k| {
                let v = parse_rational(t.text)
                    .ok_or_else(|| parse_error(t.line, t.column, &format!("invalid entry `{}`", t.text)))?;
                if v.is_negative() {
                    return Err(Error::NegativeEntry { row: k / n, col: k % n });
                }
                Ok(Exact::from_ratio(v))
            })?;
            Ok(ParsedMatrix::Exact(MaxMatrix::from_fn(n, |i, j| values[i * n + j].clone())))
        }
        Domain::Plus => {
            let values = read_entries(&tokens, n * n, |t, _| {
                parse_log(t.text)
                    .map(|v| LogReal::from_log(v).unwrap())
                    .ok_or_else(|| parse_error(t.line, t.column, &format!("invalid log entry `{}`", t.text)))
            })?;
            Ok(ParsedMatrix::Float(MaxMatrix::from_fn(n, |i, j| values[i * n + j])))
        }
    }
}

/// Same grammar as matrices, with `n` entries laid out freely.
pub fn parse_vector(text: &str) -> Result<ParsedVector> {
    let (domain, tokens) = tokenize(text)?;
    let n = parse_header(&tokens)?;
    match domain {
        Domain::Times => read_entries(&tokens, n, |t, k| {
            let v = parse_rational(t.text)
                .ok_or_else(|| parse_error(t.line, t.column, &format!("invalid entry `{}`", t.text)))?;
            if v.is_negative() {
                return Err(Error::NegativeEntry { row: k, col: 0 });
            }
            Ok(Exact::from_ratio(v))
        })
        .map(ParsedVector::Exact),
        Domain::Plus => read_entries(&tokens, n, |t, _| {
            parse_log(t.text)
                .map(|v| LogReal::from_log(v).unwrap())
                .ok_or_else(|| parse_error(t.line, t.column, &format!("invalid log entry `{}`", t.text)))
        })
        .map(ParsedVector::Float),
    }
}

/// Writes `A` in the matrix format. Exact entries are written as `p/q`;
/// float entries in the `plus` domain, as shortest round-trip logs.
pub fn serialize_matrix<S: Scalar>(a: &MaxMatrix<S>) -> String {
    let mut out = String::new();
    if S::MODE == NumericMode::FloatLog {
        out.push_str("domain: plus\n");
    }
    writeln!(out, "{}", a.n()).unwrap();
    for row in a.rows() {
        let cells: Vec<String> = row.iter().map(serialize_entry).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

fn serialize_entry<S: Scalar>(v: &S) -> String {
    match S::MODE {
        NumericMode::ExactRational => v.to_string(),
        NumericMode::FloatLog if v.is_zero() => "-inf".to_string(),
        NumericMode::FloatLog => format!("{:?}", v.ln()),
    }
}

/// Report formatting: exact values as `p/q`, float values as decimals with
/// 17 significant digits.
pub fn format_scalar<S: Scalar>(v: &S) -> String {
    if S::MODE == NumericMode::ExactRational {
        return v.to_string();
    }
    if v.is_zero() {
        return "0".to_string();
    }
    format_float(v.to_f64(), v.ln())
}

fn format_float(linear: f64, ln: f64) -> String {
    if linear.is_finite() && linear.is_normal() {
        return format!("{linear:.16e}");
    }
    // Out of f64 range: split log10 into exponent and mantissa.
    let log10 = ln / std::f64::consts::LN_10;
    let exponent = log10.floor();
    format!("{:.16}e{}", 10f64.powf(log10 - exponent), exponent as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Exact {
        Exact::new(n, d)
    }

    #[test]
    fn parse_examples() {
        let m = parse_matrix("2\n1 2\n1/8 1\n").unwrap();
        let expected = MaxMatrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(1, 8), q(1, 1)]]).unwrap();
        assert_eq!(m, ParsedMatrix::Exact(expected));
        assert_eq!(parse_matrix("1\n-3\n"), Err(Error::NegativeEntry { row: 0, col: 0 }));
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.25"), Some(BigRational::new(1.into(), 4.into())));
        assert_eq!(parse_rational("1.5e2"), Some(BigRational::from_integer(150.into())));
        assert_eq!(parse_rational("25e-2"), Some(BigRational::new(1.into(), 4.into())));
        assert_eq!(parse_rational(".5"), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn comments_domain_and_positions() {
        let text = "# header\ndomain: plus\n2 # n\n0 -inf\n-inf 0.5\n";
        let ParsedMatrix::Float(m) = parse_matrix(text).unwrap() else { panic!("float expected") };
        assert!(m.get(0, 1).is_zero());
        assert_eq!(m.get(1, 1).ln(), 0.5);

        match parse_matrix("2\n1 2\n1 abc\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
        match parse_matrix("2\n1 2 3\n1 1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 1)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_matrix("2\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("1\n1\n2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_matrix("domain: max\n1\n1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("1\ninf\n"), Err(Error::Parse { .. })));
        assert_eq!(parse_matrix("0\n"), Err(Error::Empty));
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("3\n1 1/2\n7\n").unwrap(), ParsedVector::Exact(vec![q(1, 1), q(1, 2), q(7, 1)]));
        assert_eq!(parse_vector("1\n-1\n"), Err(Error::NegativeEntry { row: 0, col: 0 }));
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_scalar(&LogReal::from_linear(0.5).unwrap()), "5.0000000000000000e-1");
        assert_eq!(format_scalar(&LogReal::ZERO), "0");
        assert_eq!(format_scalar(&q(5, 11)), "5/11");
        assert!(format_scalar(&LogReal::from_log(2000.0).unwrap()).ends_with("e868"));
    }

    fn entry() -> impl Strategy<Value = Exact> {
        prop_oneof![Just(q(0, 1)), (0i64..50, 1i64..20).prop_map(|(a, b)| q(a, b))]
    }

    proptest! {
        #[test]
        fn exact_round_trip(n in 1usize..6, seed in proptest::collection::vec(entry(), 36)) {
            let a = MaxMatrix::from_fn(n, |i, j| seed[i * 6 + j].clone());
            prop_assert_eq!(parse_matrix(&serialize_matrix(&a)).unwrap(), ParsedMatrix::Exact(a));
        }

        #[test]
        fn float_round_trip(n in 1usize..5, logs in proptest::collection::vec(prop_oneof![Just(f64::NEG_INFINITY), -50.0f64..50.0], 25)) {
            let a = MaxMatrix::from_fn(n, |i, j| LogReal::from_log(logs[i * 5 + j]).unwrap());
            prop_assert_eq!(parse_matrix(&serialize_matrix(&a)).unwrap(), ParsedMatrix::Float(a));
        }
    }
}
