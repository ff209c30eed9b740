//! Parser for the textual group grammar used by the CLI and cache keys.

use std::sync::Arc;

use super::catalog;
use super::element::Element;
use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::fqlinalg::{field_make, Matrix};

/// Parsed group description.  `build` realizes it as a [`FiniteGroup`];
/// `label` renders the canonical text form (stable across parse/render
/// round trips, used for cache keys).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    GStar { p: u32, n: usize },
    Sl { n: usize, q: u32 },
    Psl { n: usize, q: u32 },
    Alt(usize),
    Sym(usize),
    Cyclic(usize),
    Elem { p: u32, n: usize },
    Gnqm { n: usize, q: u32, m: usize },
    Sl2Zmod { p: u32 },
    Crown { base: Box<GroupSpec>, k: usize },
    Product(Vec<GroupSpec>),
    /// One cycle list (1-based points) per generator.
    PermGens(Vec<Vec<Vec<usize>>>),
    /// Field size and one row-major entry table per generator.
    MatGens { q: u32, gens: Vec<Vec<Vec<u16>>> },
}

impl GroupSpec {
    pub fn parse(input: &str) -> Result<GroupSpec> {
        let s = input.trim();
        if let Some(rest) = s.strip_prefix("perm:") {
            return parse_perm_gens(rest);
        }
        if s.len() >= 4 && s[..3].eq_ignore_ascii_case("mat") {
            return parse_mat_gens(&s[3..]);
        }
        let tokens = tokenize(s)?;
        let mut pos = 0;
        let spec = parse_spec(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input after group spec: {:?}",
                &tokens[pos..]
            )));
        }
        Ok(spec)
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::GStar { p, n } => format!("gstar {p} {n}"),
            GroupSpec::Sl { n, q } => format!("sl {n} {q}"),
            GroupSpec::Psl { n, q } => format!("psl {n} {q}"),
            GroupSpec::Alt(b) => format!("alt {b}"),
            GroupSpec::Sym(b) => format!("sym {b}"),
            GroupSpec::Cyclic(n) => format!("cyclic {n}"),
            GroupSpec::Elem { p, n } => format!("elem {p} {n}"),
            GroupSpec::Gnqm { n, q, m } => format!("gnqm {n} {q} {m}"),
            GroupSpec::Sl2Zmod { p } => format!("sl2zmod {p}"),
            GroupSpec::Crown { base, k } => format!("crown ({}) {k}", base.label()),
            GroupSpec::Product(parts) => {
                let inner: Vec<String> =
                    parts.iter().map(|p| format!("({})", p.label())).collect();
                format!("product {}", inner.join(" "))
            }
            GroupSpec::PermGens(gens) => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|cycles| {
                        cycles
                            .iter()
                            .map(|c| {
                                let pts: Vec<String> =
                                    c.iter().map(|x| x.to_string()).collect();
                                format!("({})", pts.join(" "))
                            })
                            .collect::<Vec<_>>()
                            .join("")
                    })
                    .collect();
                format!("perm: {}", parts.join("; "))
            }
            GroupSpec::MatGens { q, gens } => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|rows| {
                        let rs: Vec<String> = rows
                            .iter()
                            .map(|r| {
                                let es: Vec<String> =
                                    r.iter().map(|x| x.to_string()).collect();
                                format!("[{}]", es.join(","))
                            })
                            .collect();
                        format!("[{}]", rs.join(","))
                    })
                    .collect();
                format!("mat GF({q}): {}", parts.join("; "))
            }
        }
    }

    pub fn build(&self, cap: usize) -> Result<Arc<FiniteGroup>> {
        match self {
            GroupSpec::GStar { p, n } => catalog::g_star(*p, *n, cap),
            GroupSpec::Sl { n, q } => catalog::sl(*n, *q, cap),
            GroupSpec::Psl { n, q } => catalog::psl(*n, *q, cap),
            GroupSpec::Alt(b) => catalog::alt(*b, cap),
            GroupSpec::Sym(b) => catalog::sym(*b, cap),
            GroupSpec::Cyclic(n) => catalog::cyclic(*n, cap),
            GroupSpec::Elem { p, n } => catalog::elementary(*p, *n, cap),
            GroupSpec::Gnqm { n, q, m } => catalog::g_nqm(*n, *q, *m, cap),
            GroupSpec::Sl2Zmod { p } => catalog::sl2_zmod(*p, cap),
            GroupSpec::Crown { base, k } => {
                let l = base.build(cap)?;
                let minimals = l.minimal_normal_subgroups();
                let n_sub = minimals.first().ok_or_else(|| {
                    Error::Invalid("crown base has no minimal normal subgroup".into())
                })?;
                catalog::crown_power(&l, n_sub, *k, cap)
            }
            GroupSpec::Product(parts) => {
                let mut it = parts.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Parse("product needs at least one factor".into()))?;
                let mut acc = first.build(cap)?;
                for part in it {
                    acc = catalog::direct_product(&acc, &part.build(cap)?, cap)?;
                }
                Ok(acc)
            }
            GroupSpec::PermGens(gens) => {
                let degree = gens
                    .iter()
                    .flatten()
                    .flatten()
                    .copied()
                    .max()
                    .ok_or_else(|| Error::Parse("empty permutation generator list".into()))?;
                let elems = gens
                    .iter()
                    .map(|cycles| Element::perm_from_cycles(degree, cycles))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::enumerate(elems, cap)
            }
            GroupSpec::MatGens { q, gens } => {
                let (p, k) = catalog::prime_power(*q)?;
                let f = field_make(p, k)?;
                let mut elems = Vec::new();
                for rows in gens {
                    let n = rows.len();
                    if n == 0 || rows.iter().any(|r| r.len() != n) {
                        return Err(Error::Parse("matrix generator must be square".into()));
                    }
                    if rows.iter().flatten().any(|&e| e as u32 >= *q) {
                        return Err(Error::Parse(format!(
                            "matrix entry out of range for GF({q})"
                        )));
                    }
                    let m = Matrix::from_rows(f.clone(), rows);
                    if m.try_inverse().is_none() {
                        return Err(Error::Invalid(
                            "matrix generator is not invertible".into(),
                        ));
                    }
                    elems.push(Element::Mat(m));
                }
                FiniteGroup::enumerate(elems, cap)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
    Num(u64),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                out.push(Tok::Open);
                chars.next();
            }
            ')' => {
                out.push(Tok::Close);
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut v: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(dig as u64))
                            .ok_or_else(|| Error::Parse("number overflows u64".into()))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(v));
            }
            c if c.is_ascii_alphabetic() => {
                let mut w = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        w.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Word(w.to_ascii_lowercase()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character {other:?} in group spec"
                )));
            }
        }
    }
    Ok(out)
}

fn expect_num(tokens: &[Tok], pos: &mut usize, what: &str) -> Result<u64> {
    match tokens.get(*pos) {
        Some(Tok::Num(v)) => {
            *pos += 1;
            Ok(*v)
        }
        other => Err(Error::Parse(format!("expected {what}, found {other:?}"))),
    }
}

fn num_usize(tokens: &[Tok], pos: &mut usize, what: &str) -> Result<usize> {
    let v = expect_num(tokens, pos, what)?;
    usize::try_from(v).map_err(|_| Error::Parse(format!("{what} out of range")))
}

fn num_u32(tokens: &[Tok], pos: &mut usize, what: &str) -> Result<u32> {
    let v = expect_num(tokens, pos, what)?;
    u32::try_from(v).map_err(|_| Error::Parse(format!("{what} out of range")))
}

fn parse_spec(tokens: &[Tok], pos: &mut usize) -> Result<GroupSpec> {
    let word = match tokens.get(*pos) {
        Some(Tok::Word(w)) => w.clone(),
        other => {
            return Err(Error::Parse(format!(
                "expected a group keyword, found {other:?}"
            )))
        }
    };
    *pos += 1;
    match word.as_str() {
        "gstar" => Ok(GroupSpec::GStar {
            p: num_u32(tokens, pos, "prime p")?,
            n: num_usize(tokens, pos, "rank n")?,
        }),
        "sl" => Ok(GroupSpec::Sl {
            n: num_usize(tokens, pos, "dimension n")?,
            q: num_u32(tokens, pos, "field size q")?,
        }),
        "psl" => Ok(GroupSpec::Psl {
            n: num_usize(tokens, pos, "dimension n")?,
            q: num_u32(tokens, pos, "field size q")?,
        }),
        "alt" => Ok(GroupSpec::Alt(num_usize(tokens, pos, "degree b")?)),
        "sym" => Ok(GroupSpec::Sym(num_usize(tokens, pos, "degree b")?)),
        "cyclic" => Ok(GroupSpec::Cyclic(num_usize(tokens, pos, "order n")?)),
        "elem" => Ok(GroupSpec::Elem {
            p: num_u32(tokens, pos, "prime p")?,
            n: num_usize(tokens, pos, "rank n")?,
        }),
        "gnqm" => Ok(GroupSpec::Gnqm {
            n: num_usize(tokens, pos, "dimension n")?,
            q: num_u32(tokens, pos, "field size q")?,
            m: num_usize(tokens, pos, "factor count m")?,
        }),
        "sl2zmod" => Ok(GroupSpec::Sl2Zmod { p: num_u32(tokens, pos, "prime p")? }),
        "crown" => {
            let base = parse_parenthesized(tokens, pos)?;
            let k = num_usize(tokens, pos, "copy count k")?;
            Ok(GroupSpec::Crown { base: Box::new(base), k })
        }
        "product" => {
            let mut parts = Vec::new();
            while matches!(tokens.get(*pos), Some(Tok::Open)) {
                parts.push(parse_parenthesized(tokens, pos)?);
            }
            if parts.is_empty() {
                return Err(Error::Parse(
                    "product needs parenthesized factors, e.g. product (sl 3 2) (cyclic 3)".into(),
                ));
            }
            Ok(GroupSpec::Product(parts))
        }
        other => Err(Error::Parse(format!("unknown group keyword {other:?}"))),
    }
}

fn parse_parenthesized(tokens: &[Tok], pos: &mut usize) -> Result<GroupSpec> {
    match tokens.get(*pos) {
        Some(Tok::Open) => *pos += 1,
        other => {
            return Err(Error::Parse(format!(
                "expected '(' before nested group spec, found {other:?}"
            )))
        }
    }
    let spec = parse_spec(tokens, pos)?;
    match tokens.get(*pos) {
        Some(Tok::Close) => *pos += 1,
        other => {
            return Err(Error::Parse(format!(
                "expected ')' after nested group spec, found {other:?}"
            )))
        }
    }
    Ok(spec)
}

/// Parses `(1 2 3)(4 5); (1 2)` into per-generator cycle lists.  Points may
/// be separated by spaces or commas.
fn parse_perm_gens(rest: &str) -> Result<GroupSpec> {
    let mut gens = Vec::new();
    for part in rest.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let mut cycles = Vec::new();
        let mut chars = part.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(Error::Parse(format!(
                    "expected '(' starting a cycle, found {c:?}"
                )));
            }
            chars.next();
            let mut cycle = Vec::new();
            let mut num: Option<usize> = None;
            loop {
                match chars.next() {
                    Some(d) if d.is_ascii_digit() => {
                        let dig = d.to_digit(10).unwrap() as usize;
                        num = Some(num.unwrap_or(0) * 10 + dig);
                    }
                    Some(d) if d.is_whitespace() || d == ',' => {
                        if let Some(v) = num.take() {
                            cycle.push(v);
                        }
                    }
                    Some(')') => {
                        if let Some(v) = num.take() {
                            cycle.push(v);
                        }
                        break;
                    }
                    other => {
                        return Err(Error::Parse(format!(
                            "unexpected {other:?} inside a cycle"
                        )))
                    }
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        gens.push(cycles);
    }
    if gens.is_empty() {
        return Err(Error::Parse("perm: needs at least one generator".into()));
    }
    Ok(GroupSpec::PermGens(gens))
}

/// Parses `GF(q): [[1,0],[1,1]]; ...` (after the leading `mat`).
fn parse_mat_gens(rest: &str) -> Result<GroupSpec> {
    let rest = rest.trim_start();
    let lower = rest.to_ascii_lowercase();
    let open = lower
        .strip_prefix("gf(")
        .ok_or_else(|| Error::Parse("matrix spec must start with 'mat GF(q):'".into()))?;
    let close = open
        .find(')')
        .ok_or_else(|| Error::Parse("missing ')' after field size".into()))?;
    let q: u32 = open[..close]
        .trim()
        .parse()
        .map_err(|_| Error::Parse("field size must be an integer".into()))?;
    if catalog::prime_power(q).is_err() {
        return Err(Error::Parse(format!("GF({q}) needs a prime power size")));
    }
    let after = &open[close + 1..];
    let after = after
        .trim_start()
        .strip_prefix(':')
        .ok_or_else(|| Error::Parse("expected ':' after field size".into()))?;
    let mut gens = Vec::new();
    for part in after.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        gens.push(parse_row_table(part)?);
    }
    if gens.is_empty() {
        return Err(Error::Parse("mat spec needs at least one generator".into()));
    }
    Ok(GroupSpec::MatGens { q, gens })
}

/// Parses one `[[a,b],[c,d]]` entry table.
fn parse_row_table(s: &str) -> Result<Vec<Vec<u16>>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("matrix must be wrapped in [...]".into()))?;
    let mut rows = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in inner.chars() {
        match c {
            '[' => {
                depth += 1;
                if depth != 1 {
                    return Err(Error::Parse("matrix nesting too deep".into()));
                }
                current.clear();
            }
            ']' => {
                if depth != 1 {
                    return Err(Error::Parse("unbalanced ']' in matrix".into()));
                }
                depth = 0;
                let mut row = Vec::new();
                for piece in current.split(',') {
                    let piece = piece.trim();
                    if piece.is_empty() {
                        continue;
                    }
                    let v: u16 = piece
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {piece:?}")))?;
                    row.push(v);
                }
                if row.is_empty() {
                    return Err(Error::Parse("empty matrix row".into()));
                }
                rows.push(row);
            }
            ',' | ' ' | '\t' if depth == 0 => {}
            other if depth == 1 => current.push(other),
            other => {
                return Err(Error::Parse(format!(
                    "unexpected {other:?} between matrix rows"
                )))
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keyword_specs_round_trip_and_build() {
        for (text, order) in [
            ("gstar 7 2", 147),
            ("sl 2 5", 120),
            ("psl 2 5", 60),
            ("alt 5", 60),
            ("sym 4", 24),
            ("cyclic 12", 12),
            ("elem 3 2", 9),
            ("sl2zmod 3", 648),
            ("crown (sym 4) 3", 384),
            ("product (cyclic 2) (cyclic 3)", 6),
            ("product (sl 3 2) (cyclic 2)", 336),
        ] {
            let spec = GroupSpec::parse(text).unwrap();
            assert_eq!(spec.label(), text, "canonical label");
            assert_eq!(GroupSpec::parse(&spec.label()).unwrap(), spec);
            assert_eq!(spec.build(100_000).unwrap().order(), order, "{text}");
        }
    }

    #[test]
    fn inline_permutation_generators() {
        let spec = GroupSpec::parse("perm: (1 2 3 4)").unwrap();
        assert_eq!(spec.build(100).unwrap().order(), 4);
        let s3 = GroupSpec::parse("perm: (1 2); (1 2 3)").unwrap();
        assert_eq!(s3.label(), "perm: (1 2); (1 2 3)");
        assert_eq!(s3.build(100).unwrap().order(), 6);
        // Commas inside cycles are accepted.
        let c = GroupSpec::parse("perm: (1,2,3)(4,5)").unwrap();
        assert_eq!(c.build(100).unwrap().order(), 6);
    }

    #[test]
    fn inline_matrix_generators() {
        let c2 = GroupSpec::parse("mat GF(2): [[1,1],[0,1]]").unwrap();
        assert_eq!(c2.label(), "mat GF(2): [[1,1],[0,1]]");
        assert_eq!(c2.build(100).unwrap().order(), 2);
        // diag(a, a^2) over GF(4) has determinant 1 and order 3.
        let c3 = GroupSpec::parse("mat GF(4): [[2,0],[0,3]]").unwrap();
        assert_eq!(c3.build(100).unwrap().order(), 3);
        let two_gens = GroupSpec::parse("mat GF(2): [[1,1],[0,1]]; [[1,0],[1,1]]").unwrap();
        assert_eq!(two_gens.build(100).unwrap().order(), 6); // SL2(F2)
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(GroupSpec::parse("frobnicate 3").is_err());
        assert!(GroupSpec::parse("crown sym 4 3").is_err());
        assert!(GroupSpec::parse("gstar 7").is_err());
        assert!(GroupSpec::parse("sl 2 5 extra").is_err());
        assert!(GroupSpec::parse("perm: (1 2").is_err());
        assert!(GroupSpec::parse("mat GF(6): [[1]]").is_err());
        // Grammar accepts a singular matrix; building rejects it.
        let singular = GroupSpec::parse("mat GF(2): [[1,1],[1,1]]").unwrap();
        assert!(singular.build(100).is_err());
        assert!(GroupSpec::parse("product cyclic 2").is_err());
        assert!(GroupSpec::parse("").is_err());
    }

    #[test]
    fn nested_specs_build() {
        let spec = GroupSpec::parse("product (crown (sym 4) 2) (cyclic 2)").unwrap();
        assert_eq!(spec.build(10_000).unwrap().order(), 96 * 2);
    }
}
