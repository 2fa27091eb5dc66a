//! Input parsing: the monomial text form ("x1^2 + 3*x2^3") and the
//! structured form ({"n": 2, "rows": [[2,0],[0,3]]}), inline or from a
//! file named with a leading `@`.

use latsing::error::Error;
use latsing::{Int, Result, Support};
use serde::Deserialize;

/// A parsed support together with the written coefficients, one per row
/// of the support in order; terms with equal exponents are merged by
/// summing their coefficients, and rows whose coefficient sums to zero
/// are dropped from the text form.
pub struct ParsedSupport {
    pub support: Support,
    pub coeffs: Vec<Int>,
}

impl ParsedSupport {
    /// Whether any coefficient differs from one.
    pub fn has_explicit_coeffs(&self) -> bool {
        self.coeffs.iter().any(|c| *c != Int::from(1))
    }
}

/// Parse one support from an argument: `@path` reads the file first; a
/// leading `{` selects the structured form, anything else the text form.
pub fn parse_input(raw: &str) -> Result<ParsedSupport> {
    let text;
    let body = match raw.strip_prefix('@') {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
            text.as_str()
        }
        None => raw,
    };
    let body = body.trim();
    if body.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    if body.starts_with('{') {
        parse_structured(body)
    } else {
        parse_text(body)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructuredSupport {
    n: usize,
    rows: Vec<Vec<i64>>,
    #[serde(default)]
    coeffs: Option<Vec<String>>,
}

fn parse_structured(body: &str) -> Result<ParsedSupport> {
    let parsed: StructuredSupport =
        serde_json::from_str(body).map_err(|e| Error::Parse(format!("structured input: {e}")))?;
    let rows: Vec<Vec<Int>> = parsed
        .rows
        .iter()
        .map(|r| r.iter().map(|&c| Int::from(c)).collect())
        .collect();
    let support = Support::new(parsed.n, &rows)?;
    let coeffs = match parsed.coeffs {
        None => vec![Int::from(1); support.points().len()],
        Some(cs) => {
            if cs.len() != rows.len() {
                return Err(Error::Parse(
                    "coefficient list does not match the exponent rows".into(),
                ));
            }
            // Align with the deduplicated rows, summing duplicates.
            let mut out = vec![Int::from(0); support.points().len()];
            for (row, c) in rows.iter().zip(&cs) {
                let c: Int = c
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c}")))?;
                let at = support
                    .points()
                    .iter()
                    .position(|p| p == row)
                    .expect("every row survives deduplication");
                out[at] = out[at].clone() + c;
            }
            out
        }
    };
    Ok(ParsedSupport { support, coeffs })
}

fn parse_text(body: &str) -> Result<ParsedSupport> {
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    // Split into signed terms; a sign right after '^' stays inside the
    // term so that negative exponents are reported as such.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') && prev != Some('*') {
            if prev.is_none() {
                neg = ch == '-';
            } else {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    terms.push((neg, cur));

    let mut parsed: Vec<(Int, Vec<(usize, Int)>)> = Vec::new();
    let mut n = 0usize;
    for (neg, body) in terms {
        let (mut coeff, exps) = parse_term(&body, &mut n)?;
        if neg {
            coeff = -coeff;
        }
        parsed.push((coeff, exps));
    }
    let n = n.max(1);

    // Merge terms with equal exponent rows and drop vanished ones.
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut coeffs: Vec<Int> = Vec::new();
    for (coeff, exps) in parsed {
        let mut row = vec![Int::from(0); n];
        for (i, e) in exps {
            row[i] = row[i].clone() + e;
        }
        match rows.iter().position(|r| *r == row) {
            Some(at) => coeffs[at] = coeffs[at].clone() + coeff,
            None => {
                rows.push(row);
                coeffs.push(coeff);
            }
        }
    }
    let keep: Vec<bool> = coeffs.iter().map(|c| *c != Int::from(0)).collect();
    let rows: Vec<Vec<Int>> = rows
        .into_iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(r, _)| r)
        .collect();
    let coeffs: Vec<Int> =
        coeffs.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| c).collect();
    let support = Support::new(n, &rows)?;
    Ok(ParsedSupport { support, coeffs })
}

fn parse_term(body: &str, n: &mut usize) -> Result<(Int, Vec<(usize, Int)>)> {
    if body.is_empty() {
        return Err(Error::Parse("dangling sign in input".into()));
    }
    let mut coeff = Int::from(1);
    let mut exps: Vec<(usize, Int)> = Vec::new();
    for factor in body.split('*') {
        if let Some(rest) = factor.strip_prefix('x') {
            let (var, exp) = match rest.split_once('^') {
                None => (rest, "1"),
                Some((v, e)) => (v, e),
            };
            let idx: usize = var
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable in factor {factor:?}")))?;
            if idx == 0 {
                return Err(Error::Parse("variables are numbered from x1".into()));
            }
            let e: i64 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in factor {factor:?}")))?;
            if e < 0 {
                return Err(Error::NegativeExponent(e.to_string()));
            }
            *n = (*n).max(idx);
            exps.push((idx - 1, Int::from(e)));
        } else {
            let c: Int = factor
                .parse()
                .map_err(|_| Error::Parse(format!("bad factor {factor:?}")))?;
            coeff = coeff * c;
        }
    }
    Ok((coeff, exps))
}

/// Parse an eigenvalue class given as a reduced fraction `a/d` meaning
/// `exp(2 pi i a/d)`; plain integers name the trivial class.
pub fn parse_lambda(s: &str) -> Result<latsing::qz::QZ<Int>> {
    let s = s.trim();
    let (a, d) = match s.split_once('/') {
        Some((a, d)) => (a, d),
        None => (s, "1"),
    };
    let a: Int = a
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad eigenvalue class {s:?}")))?;
    let d: Int = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad eigenvalue class {s:?}")))?;
    if d <= Int::from(0) {
        return Err(Error::Parse("eigenvalue denominator must be positive".into()));
    }
    Ok(latsing::qz::QZ::new(a, d))
}
