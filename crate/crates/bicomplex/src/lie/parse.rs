//! Parser for the `.se` structure-equation format.
//!
//! The format is UTF-8 and line-based:
//!
//! ```text
//! # comment
//! dim 3
//! param t = 1/2
//! d phi1 = 0
//! d phi2 = 0
//! d phi3 = -1 * phi1^phi2 + t * phi1^phibar2
//! ```
//!
//! `dim` must precede all `d` lines, one `d` line per generator is mandatory,
//! and conjugate generators are written with a `bar` infix or suffix
//! (`phibar2` or `phi2bar` for the conjugate of `phi2`). Every monomial on a
//! right-hand side must have bidegree (2,0) or (1,1); a (0,2) monomial is the
//! integrability failure the format rejects at parse time. Term coefficients
//! are scalars, optionally multiplied by a single declared parameter, so
//! coefficients stay linear in the parameters by construction.

use super::wedge::{canonicalize, Letter, Monomial};
use crate::scalar::{from_int, parse_rational, parse_scalar, Rational, Scalar};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Syntax,
    UnknownGenerator,
    BidegreeViolation,
    NonlinearParam,
    MissingDifferential,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub category: ErrorCategory,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {:?}: {}",
            self.line, self.col, self.category, self.message
        )
    }
}

fn err(line: usize, col: usize, category: ErrorCategory, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        category,
        message: message.into(),
    }
}

/// One summand of a structure equation: `coeff [* param] * monomial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub param: Option<usize>,
    pub monomial: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: String,
    pub default: Option<Rational>,
}

/// Parsed structure equations: `n` ordered generators, their differentials as
/// formal sums, and the declared parameters.
#[derive(Debug, Clone)]
pub struct StructureEquations {
    pub n: usize,
    pub generators: Vec<String>,
    pub params: Vec<ParamDecl>,
    pub differentials: Vec<Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Sp {
    tok: Tok,
    col: usize,
}

fn lex_line(line_no: usize, line: &str) -> Result<Vec<Sp>, ParseError> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(idx, ch)) = chars.peek() {
        let col = idx + 1;
        match ch {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_lowercase() => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Sp {
                    tok: Tok::Ident(s),
                    col,
                });
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Sp {
                    tok: Tok::Int(s),
                    col,
                });
            }
            '+' | '-' | '*' | '^' | '=' | '/' | '(' | ')' => {
                out.push(Sp {
                    tok: Tok::Punct(ch),
                    col,
                });
                chars.next();
            }
            other => {
                return Err(err(
                    line_no,
                    col,
                    ErrorCategory::Syntax,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok(out)
}

struct RawDiff {
    line: usize,
    generator: String,
    gen_col: usize,
    rhs: Vec<Sp>,
}

/// Parse `.se` text into structure equations.
pub fn parse(text: &str) -> Result<StructureEquations, ParseError> {
    let mut dim: Option<(usize, usize)> = None; // (n, line)
    let mut params: Vec<ParamDecl> = Vec::new();
    let mut raw_diffs: Vec<RawDiff> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let toks = lex_line(line_no, line)?;
        if toks.is_empty() {
            continue;
        }
        let head = match &toks[0].tok {
            Tok::Ident(s) => s.as_str(),
            _ => {
                return Err(err(
                    line_no,
                    toks[0].col,
                    ErrorCategory::Syntax,
                    "expected a statement",
                ))
            }
        };
        match head {
            "dim" => {
                if dim.is_some() {
                    return Err(err(
                        line_no,
                        toks[0].col,
                        ErrorCategory::Syntax,
                        "duplicate `dim`",
                    ));
                }
                if !raw_diffs.is_empty() {
                    return Err(err(
                        line_no,
                        toks[0].col,
                        ErrorCategory::Syntax,
                        "`dim` must precede all `d` lines",
                    ));
                }
                let n = match toks.get(1) {
                    Some(Sp {
                        tok: Tok::Int(s), ..
                    }) if toks.len() == 2 => s.parse::<usize>().map_err(|_| {
                        err(line_no, toks[1].col, ErrorCategory::Syntax, "bad dimension")
                    })?,
                    _ => {
                        return Err(err(
                            line_no,
                            toks[0].col,
                            ErrorCategory::Syntax,
                            "expected `dim <n>`",
                        ))
                    }
                };
                if n == 0 || n > 16 {
                    return Err(err(
                        line_no,
                        toks[0].col,
                        ErrorCategory::Syntax,
                        "dimension must be between 1 and 16",
                    ));
                }
                dim = Some((n, line_no));
            }
            "param" => {
                let name = match toks.get(1) {
                    Some(Sp {
                        tok: Tok::Ident(s), ..
                    }) => s.clone(),
                    _ => {
                        return Err(err(
                            line_no,
                            toks[0].col,
                            ErrorCategory::Syntax,
                            "expected `param <name> [= <rational>]`",
                        ))
                    }
                };
                if name == "i" {
                    return Err(err(
                        line_no,
                        toks[1].col,
                        ErrorCategory::Syntax,
                        "`i` is reserved for the imaginary unit",
                    ));
                }
                if params.iter().any(|p| p.name == name) {
                    return Err(err(
                        line_no,
                        toks[1].col,
                        ErrorCategory::Syntax,
                        format!("duplicate parameter `{name}`"),
                    ));
                }
                let default = match toks.get(2) {
                    None => None,
                    Some(Sp {
                        tok: Tok::Punct('='),
                        ..
                    }) => {
                        let rest = render(&toks[3..]);
                        if rest.is_empty() {
                            return Err(err(
                                line_no,
                                toks[2].col,
                                ErrorCategory::Syntax,
                                "missing default value",
                            ));
                        }
                        Some(parse_rational(&rest).map_err(|e| {
                            err(line_no, toks[2].col, ErrorCategory::Syntax, e.to_string())
                        })?)
                    }
                    Some(sp) => {
                        return Err(err(line_no, sp.col, ErrorCategory::Syntax, "expected `=`"))
                    }
                };
                params.push(ParamDecl { name, default });
            }
            "d" => {
                if dim.is_none() {
                    return Err(err(
                        line_no,
                        toks[0].col,
                        ErrorCategory::Syntax,
                        "`dim` must come before `d` lines",
                    ));
                }
                let (generator, gen_col) = match toks.get(1) {
                    Some(Sp {
                        tok: Tok::Ident(s),
                        col,
                    }) => (s.clone(), *col),
                    _ => {
                        return Err(err(
                            line_no,
                            toks[0].col,
                            ErrorCategory::Syntax,
                            "expected `d <generator> = ...`",
                        ))
                    }
                };
                match toks.get(2) {
                    Some(Sp {
                        tok: Tok::Punct('='),
                        ..
                    }) => {}
                    _ => {
                        return Err(err(
                            line_no,
                            toks.get(2).map_or(toks[1].col, |t| t.col),
                            ErrorCategory::Syntax,
                            "expected `=`",
                        ))
                    }
                }
                if raw_diffs.iter().any(|r| r.generator == generator) {
                    return Err(err(
                        line_no,
                        gen_col,
                        ErrorCategory::Syntax,
                        format!("duplicate `d {generator}` line"),
                    ));
                }
                raw_diffs.push(RawDiff {
                    line: line_no,
                    generator,
                    gen_col,
                    rhs: toks[3..].to_vec(),
                });
            }
            other => {
                return Err(err(
                    line_no,
                    toks[0].col,
                    ErrorCategory::Syntax,
                    format!("unknown statement `{other}`"),
                ));
            }
        }
    }

    let Some((n, _)) = dim else {
        return Err(err(1, 1, ErrorCategory::Syntax, "missing `dim` line"));
    };
    if raw_diffs.len() != n {
        let line = raw_diffs.last().map_or(1, |r| r.line);
        return Err(err(
            line,
            1,
            ErrorCategory::MissingDifferential,
            format!(
                "expected one `d` line per generator ({n}), found {}",
                raw_diffs.len()
            ),
        ));
    }

    // Generator table and conjugate aliases, in declaration order.
    let generators: Vec<String> = raw_diffs.iter().map(|r| r.generator.clone()).collect();
    let mut names: BTreeMap<String, Letter> = BTreeMap::new();
    for (k, g) in generators.iter().enumerate() {
        if g == "i" {
            return Err(err(
                raw_diffs[k].line,
                raw_diffs[k].gen_col,
                ErrorCategory::Syntax,
                "`i` is reserved for the imaginary unit",
            ));
        }
        if params.iter().any(|p| &p.name == g) {
            return Err(err(
                raw_diffs[k].line,
                raw_diffs[k].gen_col,
                ErrorCategory::Syntax,
                format!("`{g}` is both a parameter and a generator"),
            ));
        }
        let mut insert = |name: String, letter: Letter, line: usize, col: usize| {
            if names.insert(name.clone(), letter).is_some() {
                return Err(err(
                    line,
                    col,
                    ErrorCategory::Syntax,
                    format!("generator name `{name}` is ambiguous"),
                ));
            }
            Ok(())
        };
        let (line, col) = (raw_diffs[k].line, raw_diffs[k].gen_col);
        insert(g.clone(), Letter::phi(k as u8), line, col)?;
        insert(format!("{g}bar"), Letter::phibar(k as u8), line, col)?;
        let stem_len = g.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        if stem_len < g.len() {
            insert(
                format!("{}bar{}", &g[..stem_len], &g[stem_len..]),
                Letter::phibar(k as u8),
                line,
                col,
            )?;
        }
    }

    let param_index: BTreeMap<&str, usize> = params
        .iter()
        .enumerate()
        .map(|(i, p)| (p.name.as_str(), i))
        .collect();

    let mut differentials = Vec::with_capacity(n);
    for raw in &raw_diffs {
        differentials.push(parse_rhs(raw, &names, &param_index)?);
    }

    Ok(StructureEquations {
        n,
        generators,
        params,
        differentials,
    })
}

fn render(toks: &[Sp]) -> String {
    let mut s = String::new();
    for t in toks {
        match &t.tok {
            Tok::Ident(x) => {
                s.push(' ');
                s.push_str(x);
            }
            Tok::Int(x) => s.push_str(x),
            Tok::Punct(c) => s.push(*c),
        }
    }
    s.trim().to_string()
}

fn parse_rhs(
    raw: &RawDiff,
    names: &BTreeMap<String, Letter>,
    param_index: &BTreeMap<&str, usize>,
) -> Result<Vec<Term>, ParseError> {
    let line = raw.line;
    let toks = &raw.rhs;
    if toks.is_empty() {
        return Err(err(
            line,
            raw.gen_col,
            ErrorCategory::Syntax,
            "empty right-hand side",
        ));
    }
    // A literal zero differential.
    if toks.len() == 1 {
        if let Tok::Int(z) = &toks[0].tok {
            if z == "0" {
                return Ok(Vec::new());
            }
        }
    }
    let mut terms = Vec::new();
    let mut pos = 0usize;
    let mut first = true;
    while pos < toks.len() {
        // Exactly one separator sign between terms; the leading sign of the
        // first term is optional.
        let mut sign = 1i64;
        match toks[pos].tok {
            Tok::Punct('+') => pos += 1,
            Tok::Punct('-') => {
                sign = -1;
                pos += 1;
            }
            _ if first => {}
            _ => {
                return Err(err(
                    line,
                    toks[pos].col,
                    ErrorCategory::Syntax,
                    "expected `+` or `-` between terms",
                ));
            }
        }
        first = false;
        // Factors up to the next top-level +/-.
        let start = pos;
        let mut depth = 0i32;
        while pos < toks.len() {
            match &toks[pos].tok {
                Tok::Punct('(') => depth += 1,
                Tok::Punct(')') => depth -= 1,
                Tok::Punct('+') | Tok::Punct('-') if depth == 0 => break,
                _ => {}
            }
            pos += 1;
        }
        let term_toks = &toks[start..pos];
        if term_toks.is_empty() {
            return Err(err(
                line,
                toks.get(start).map_or(1, |t| t.col),
                ErrorCategory::Syntax,
                "empty term",
            ));
        }
        let term = parse_term(line, term_toks, names, param_index, sign)?;
        if let Some(t) = term {
            terms.push(t);
        }
    }
    Ok(terms)
}

/// Parse one `factor (* factor)*` group; the final factor must be a monomial.
fn parse_term(
    line: usize,
    toks: &[Sp],
    names: &BTreeMap<String, Letter>,
    param_index: &BTreeMap<&str, usize>,
    sign: i64,
) -> Result<Option<Term>, ParseError> {
    // Split into factors at top-level '*'.
    let mut factors: Vec<&[Sp]> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::Punct('(') => depth += 1,
            Tok::Punct(')') => depth -= 1,
            Tok::Punct('*') if depth == 0 => {
                factors.push(&toks[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    factors.push(&toks[start..]);
    if factors.len() < 2 {
        return Err(err(
            line,
            toks[0].col,
            ErrorCategory::Syntax,
            "a term must be `<coef> * <monomial>`",
        ));
    }
    let (mono_toks, coef_factors) = factors.split_last().unwrap();

    let mut coeff = from_int(sign);
    let mut param: Option<usize> = None;
    for f in coef_factors {
        if f.is_empty() {
            return Err(err(
                line,
                toks[0].col,
                ErrorCategory::Syntax,
                "empty factor",
            ));
        }
        match &f[0].tok {
            Tok::Ident(name) if f.len() == 1 && name != "i" => {
                if names.contains_key(name) {
                    return Err(err(
                        line,
                        f[0].col,
                        ErrorCategory::Syntax,
                        format!("generator `{name}` cannot appear in a coefficient"),
                    ));
                }
                let Some(&idx) = param_index.get(name.as_str()) else {
                    return Err(err(
                        line,
                        f[0].col,
                        ErrorCategory::Syntax,
                        format!("unknown name `{name}` in coefficient"),
                    ));
                };
                if param.is_some() {
                    return Err(err(
                        line,
                        f[0].col,
                        ErrorCategory::NonlinearParam,
                        "a term may use at most one parameter factor",
                    ));
                }
                param = Some(idx);
            }
            _ => {
                let text = render(f);
                let s = parse_scalar(&text)
                    .map_err(|e| err(line, f[0].col, ErrorCategory::Syntax, e.to_string()))?;
                coeff *= s;
            }
        }
    }

    // The monomial: identifiers joined by '^'.
    let mut letters_seq = Vec::new();
    let mut expect_name = true;
    for t in mono_toks.iter() {
        match (&t.tok, expect_name) {
            (Tok::Ident(name), true) => {
                let Some(&letter) = names.get(name) else {
                    return Err(err(
                        line,
                        t.col,
                        ErrorCategory::UnknownGenerator,
                        format!("unknown generator `{name}`"),
                    ));
                };
                letters_seq.push(letter);
                expect_name = false;
            }
            (Tok::Punct('^'), false) => expect_name = true,
            _ => {
                return Err(err(
                    line,
                    t.col,
                    ErrorCategory::Syntax,
                    "malformed monomial (expected generators joined by `^`)",
                ));
            }
        }
    }
    if expect_name {
        return Err(err(
            line,
            mono_toks.last().map_or(1, |t| t.col),
            ErrorCategory::Syntax,
            "monomial ends with `^`",
        ));
    }
    let unbarred = letters_seq.iter().filter(|l| !l.barred).count();
    let barred = letters_seq.len() - unbarred;
    if !matches!((unbarred, barred), (2, 0) | (1, 1)) {
        return Err(err(
            line,
            mono_toks[0].col,
            ErrorCategory::BidegreeViolation,
            format!(
                "monomial has bidegree ({unbarred},{barred}); only (2,0) and (1,1) are integrable"
            ),
        ));
    }
    match canonicalize(&letters_seq) {
        None => Ok(None), // repeated factor: the term is zero
        Some((perm_sign, monomial)) => Ok(Some(Term {
            coeff: coeff * from_int(perm_sign.into()),
            param,
            monomial,
        })),
    }
}
