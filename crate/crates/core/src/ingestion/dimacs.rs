use std::fmt::Write;

use crate::error::{Error, Result};
use crate::problems::{CnfFormula, Literal};

const ARITY: usize = 3;

/// Parse a DIMACS CNF document restricted to 3-literal clauses.
///
/// Clauses may span lines; every clause must be terminated by `0`. A `%`
/// line (as found at the end of SATLIB files) ends the clause section.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_start = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse_line(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[..] {
                ["p", "cnf", v, c] => {
                    let v = v
                        .parse()
                        .map_err(|_| Error::parse_line(line_no, format!("bad variable count {v:?}")))?;
                    let c = c
                        .parse()
                        .map_err(|_| Error::parse_line(line_no, format!("bad clause count {c:?}")))?;
                    header = Some((v, c));
                }
                _ => return Err(Error::parse_line(line_no, format!("malformed problem line {line:?}"))),
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(Error::parse_line(line_no, "clause before 'p cnf' header"));
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::parse_line(line_no, format!("bad literal {tok:?}")))?;
            if current.is_empty() {
                clause_start = line_no;
            }
            if lit == 0 {
                if current.len() != ARITY {
                    return Err(Error::parse_line(
                        clause_start,
                        format!("clause has {} literals, expected {ARITY}", current.len()),
                    ));
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
                continue;
            }
            if lit.unsigned_abs() as usize > num_vars {
                return Err(Error::parse_line(
                    line_no,
                    format!("variable {} exceeds declared count {num_vars}", lit.unsigned_abs()),
                ));
            }
            if current.len() == ARITY {
                return Err(Error::parse_line(
                    clause_start,
                    format!("clause has more than {ARITY} literals"),
                ));
            }
            current.push(lit as Literal);
        }
    }

    let Some((num_vars, num_clauses)) = header else {
        return Err(Error::parse_line(last_line.max(1), "missing 'p cnf' header"));
    };
    if !current.is_empty() {
        return Err(Error::parse_line(clause_start, "unterminated clause (missing trailing 0)"));
    }
    if clauses.len() != num_clauses {
        return Err(Error::parse_line(
            last_line.max(1),
            format!("header declares {num_clauses} clauses, found {}", clauses.len()),
        ));
    }
    Ok(CnfFormula { num_vars, clauses })
}

pub fn write_dimacs(cnf: &CnfFormula, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.clauses.len()).unwrap();
    for [a, b, c] in &cnf.clauses {
        writeln!(out, "{a} {b} {c} 0").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Location;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse {
                at: Location::Line(l), ..
            } => l,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn minimal_document() {
        let cnf = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 3 0").unwrap();
        assert_eq!(cnf.num_vars, 3);
        assert_eq!(cnf.clauses, vec![[1, -2, 3], [-1, 2, 3]]);
    }

    #[test]
    fn comments_and_satlib_trailer() {
        let text = "c generated\nc more\np cnf 4 2\n 1 -2 3 0\n-4\n 2 3 0\n%\n0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.clauses, vec![[1, -2, 3], [-4, 2, 3]]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(parse_dimacs("p cnf 3 1\n1 -2 0\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_dimacs("1 2 3 0\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_dimacs("c x\np cnf 3 1\n\n1 2 4 0\n").unwrap_err()), 4);
        assert_eq!(line_of(parse_dimacs("p cnf 3 1\n1 2 3\n").unwrap_err()), 2);
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 1\n1 2 3 -1 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 1\n1 x 3 0\n").is_err());
        assert!(parse_dimacs("c only comments\n").is_err());
    }

    #[test]
    fn write_then_parse() {
        let cnf = CnfFormula {
            num_vars: 5,
            clauses: vec![[1, -5, 3], [2, 4, -1]],
        };
        assert_eq!(parse_dimacs(&write_dimacs(&cnf, &["hello"])).unwrap(), cnf);
    }
}
