//! Plain-text formats.
//!
//! ```text
//! nc0 <n> <m> <k>
//! <j>: <i1> ... <il> : <2^l table bits, position 0 first>
//!
//! poly <n> <m> <d>
//! <j>: x0*x1 + x2 + 1
//! ```
//!
//! Outputs appear in order `j = 0, 1, ...`. `#` starts a comment, blank lines
//! are ignored and whitespace inside a line is insignificant. A `.poly`
//! output with no monomials is written as `0`. A `.vec` file is one line of
//! `0`/`1` characters.

use super::{BooleanMap, LocalCircuit, LocalOutput, Monomial, PolyFunction};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

/// Either kind of instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Circuit(LocalCircuit),
    Poly(PolyFunction),
}

impl Instance {
    pub fn as_map(&self) -> &dyn BooleanMap {
        match self {
            Instance::Circuit(c) => c,
            Instance::Poly(p) => p,
        }
    }
}

/// Non-empty, comment-stripped lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected {what}, found {tok:?}")))
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, magic: &str) -> Result<(usize, [usize; 3])> {
    let (line, text) = lines.next().ok_or_else(|| parse_err(1, format!("missing `{magic}` header")))?;
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != magic {
        return Err(parse_err(line, format!("expected `{magic} <n> <m> <k>` header")));
    }
    let n = parse_usize(line, toks[1], "input count")?;
    let m = parse_usize(line, toks[2], "output count")?;
    let k = parse_usize(line, toks[3], "degree or locality")?;
    Ok((line, [n, m, k]))
}

/// Splits `<j>: rest` and checks `j` is the expected output index.
fn split_label(line: usize, text: &str, expected: usize) -> Result<&str> {
    let (label, rest) = text.split_once(':').ok_or_else(|| parse_err(line, "expected `<j>: ...`"))?;
    let j = parse_usize(line, label.trim(), "output index")?;
    if j != expected {
        return Err(parse_err(line, format!("expected output {expected}, found {j}")));
    }
    Ok(rest)
}

fn check_count(last_line: usize, seen: usize, m: usize) -> Result<()> {
    if seen == m {
        Ok(())
    } else {
        Err(parse_err(last_line, format!("header declares {m} outputs, found {seen}")))
    }
}

pub fn parse_nc0(text: &str) -> Result<LocalCircuit> {
    let mut lines = content_lines(text);
    let (mut last, [n, m, k]) = parse_header(&mut lines, "nc0")?;
    let mut outputs = Vec::with_capacity(m);
    for (line, text) in lines {
        last = line;
        if outputs.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} outputs")));
        }
        let rest = split_label(line, text, outputs.len())?;
        let (idx, bits) = rest.split_once(':').ok_or_else(|| parse_err(line, "expected `: <table bits>`"))?;
        let inputs = idx.split_whitespace().map(|t| parse_usize(line, t, "input index")).collect::<Result<Vec<_>>>()?;
        let bits: String = bits.split_whitespace().collect();
        let table: GF2Vector = bits.parse().map_err(|_| parse_err(line, "table must be 0/1 characters"))?;
        if inputs.iter().any(|&i| i >= n) {
            return Err(parse_err(line, format!("input index out of range for n = {n}")));
        }
        if inputs.len() > k {
            return Err(parse_err(line, format!("output reads {} inputs, locality is {k}", inputs.len())));
        }
        let o = LocalOutput::new(inputs, table).map_err(|e| parse_err(line, e.to_string()))?;
        outputs.push(o);
    }
    check_count(last, outputs.len(), m)?;
    LocalCircuit::new(n, k, outputs)
}

pub fn write_nc0(c: &LocalCircuit) -> String {
    write_nc0_annotated(c, &[])
}

/// Like [`write_nc0`] with leading `#` comment lines.
pub fn write_nc0_annotated(c: &LocalCircuit, comments: &[String]) -> String {
    let mut s = String::new();
    for line in comments {
        s.push_str(&format!("# {line}\n"));
    }
    s.push_str(&format!("nc0 {} {} {}\n", c.n(), c.m(), c.k()));
    for (j, o) in c.outputs().iter().enumerate() {
        let idx: Vec<String> = o.inputs().iter().map(|i| i.to_string()).collect();
        if idx.is_empty() {
            s.push_str(&format!("{j}: : {}\n", o.table()));
        } else {
            s.push_str(&format!("{j}: {} : {}\n", idx.join(" "), o.table()));
        }
    }
    s
}

fn parse_monomial(line: usize, tok: &str) -> Result<Monomial> {
    if tok == "1" {
        return Ok(Monomial::one());
    }
    let vars = tok
        .split('*')
        .map(|v| {
            v.strip_prefix('x')
                .ok_or_else(|| parse_err(line, format!("expected `x<i>`, found {v:?}")))
                .and_then(|i| parse_usize(line, i, "variable index"))
        })
        .collect::<Result<Vec<_>>>()?;
    Monomial::new(vars).map_err(|e| parse_err(line, e.to_string()))
}

pub fn parse_poly(text: &str) -> Result<PolyFunction> {
    let mut lines = content_lines(text);
    let (mut last, [n, m, d]) = parse_header(&mut lines, "poly")?;
    let mut outputs = Vec::with_capacity(m);
    for (line, text) in lines {
        last = line;
        if outputs.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} outputs")));
        }
        let rest: String = split_label(line, text, outputs.len())?.split_whitespace().collect();
        let terms = if rest.is_empty() || rest == "0" {
            Vec::new()
        } else {
            rest.split('+').map(|t| parse_monomial(line, t)).collect::<Result<Vec<_>>>()?
        };
        // Validate this output alone so errors point at the offending line.
        PolyFunction::new(n, d, vec![terms.clone()]).map_err(|e| parse_err(line, e.to_string()))?;
        outputs.push(terms);
    }
    check_count(last, outputs.len(), m)?;
    PolyFunction::new(n, d, outputs)
}

pub fn write_poly(p: &PolyFunction) -> String {
    write_poly_annotated(p, &[])
}

pub fn write_poly_annotated(p: &PolyFunction, comments: &[String]) -> String {
    let mut s = String::new();
    for line in comments {
        s.push_str(&format!("# {line}\n"));
    }
    s.push_str(&format!("poly {} {} {}\n", p.n(), p.m(), p.d()));
    for (j, terms) in p.outputs().iter().enumerate() {
        if terms.is_empty() {
            s.push_str(&format!("{j}: 0\n"));
        } else {
            let t: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
            s.push_str(&format!("{j}: {}\n", t.join(" + ")));
        }
    }
    s
}

/// Detects the format from the header keyword.
pub fn parse_instance(text: &str) -> Result<Instance> {
    match content_lines(text).next() {
        Some((_, h)) if h.starts_with("nc0") => parse_nc0(text).map(Instance::Circuit),
        Some((_, h)) if h.starts_with("poly") => parse_poly(text).map(Instance::Poly),
        Some((line, _)) => Err(parse_err(line, "expected an `nc0` or `poly` header")),
        None => Err(parse_err(1, "empty instance file")),
    }
}

pub fn parse_vec(text: &str) -> Result<GF2Vector> {
    let mut lines = content_lines(text);
    let (line, bits) = lines.next().ok_or_else(|| parse_err(1, "empty vector file"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "a vector file holds a single line"));
    }
    bits.parse().map_err(|_| parse_err(line, "vector must be 0/1 characters"))
}

pub fn write_vec(v: &GF2Vector) -> String {
    format!("{v}\n")
}
