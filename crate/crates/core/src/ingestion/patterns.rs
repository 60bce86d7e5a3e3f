//! Pattern grids.
//!
//! ```text
//! # comment
//! pattern box
//! 111111111
//! 100000001
//! ...        (9 rows of 9 cells, '0' or '1'; spaces between cells allowed)
//! ```

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::problems::{PatternTarget, PATTERN_SIDE};

pub fn parse_patterns(text: &str) -> Result<Vec<PatternTarget>> {
    let mut out = Vec::new();
    let mut current: Option<(String, usize, Vec<bool>)> = None;

    let finish = |cur: Option<(String, usize, Vec<bool>)>, out: &mut Vec<PatternTarget>, at: usize| -> Result<()> {
        if let Some((name, start, pixels)) = cur {
            if pixels.len() != PATTERN_SIDE * PATTERN_SIDE {
                return Err(Error::parse_line(
                    start,
                    format!(
                        "pattern {name:?} has {} rows, expected {PATTERN_SIDE}",
                        pixels.len() / PATTERN_SIDE
                    ),
                ));
            }
            out.push(PatternTarget::new(name, pixels).map_err(|e| Error::parse_line(at, e.to_string()))?);
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix("pattern ") {
            finish(current.take(), &mut out, line_no)?;
            let name = name.trim();
            if name.is_empty() {
                return Err(Error::parse_line(line_no, "pattern name missing"));
            }
            if out.iter().any(|p| p.name == name) {
                return Err(Error::parse_line(line_no, format!("duplicate pattern {name:?}")));
            }
            current = Some((name.to_string(), line_no, Vec::with_capacity(81)));
            continue;
        }
        let Some((_, _, pixels)) = current.as_mut() else {
            return Err(Error::parse_line(line_no, "grid row before any 'pattern <name>' line"));
        };
        let cells: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
        if cells.len() != PATTERN_SIDE {
            return Err(Error::parse_line(
                line_no,
                format!("row has {} cells, expected {PATTERN_SIDE}", cells.len()),
            ));
        }
        if pixels.len() == PATTERN_SIDE * PATTERN_SIDE {
            return Err(Error::parse_line(line_no, format!("more than {PATTERN_SIDE} rows")));
        }
        for c in cells {
            pixels.push(match c {
                '0' => false,
                '1' => true,
                other => return Err(Error::parse_line(line_no, format!("non-binary cell {other:?}"))),
            });
        }
    }
    finish(current, &mut out, text.lines().count())?;
    Ok(out)
}

pub fn write_patterns(patterns: &[PatternTarget]) -> String {
    let mut out = String::new();
    for p in patterns {
        writeln!(out, "pattern {}", p.name).unwrap();
        for row in p.pixels.chunks(PATTERN_SIDE) {
            let s: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(out, "{s}").unwrap();
        }
    }
    out
}
