use crate::error::{Error, Result};

pub const PATTERN_SIDE: usize = 9;
const PIXELS: usize = PATTERN_SIDE * PATTERN_SIDE;
/// Row/column index where the grid is split into quadrants.
const SPLIT: usize = 5;

/// A 9x9 binary image stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTarget {
    pub name: String,
    pub pixels: Vec<bool>,
}

impl PatternTarget {
    pub fn new(name: impl Into<String>, pixels: Vec<bool>) -> Result<Self> {
        if pixels.len() != PIXELS {
            return Err(Error::InvalidInput(format!(
                "pattern has {} pixels, expected {PIXELS}",
                pixels.len()
            )));
        }
        Ok(Self {
            name: name.into(),
            pixels,
        })
    }

    fn from_fn(name: &str, f: impl Fn(usize, usize) -> bool) -> Self {
        let pixels = (0..PIXELS).map(|i| f(i / PATTERN_SIDE, i % PATTERN_SIDE)).collect();
        Self {
            name: name.to_string(),
            pixels,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.pixels[row * PATTERN_SIDE + col]
    }

    /// Rows of `.`/`#` characters, for logs and tests.
    pub fn ascii(&self) -> String {
        self.pixels
            .chunks(PATTERN_SIDE)
            .map(|r| r.iter().map(|&p| if p { '#' } else { '.' }).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Outer ring of the grid.
pub fn box_pattern() -> PatternTarget {
    let last = PATTERN_SIDE - 1;
    PatternTarget::from_fn("box", |r, c| r == 0 || c == 0 || r == last || c == last)
}

/// Middle row and middle column.
pub fn cross_pattern() -> PatternTarget {
    let mid = PATTERN_SIDE / 2;
    PatternTarget::from_fn("cross", |r, c| r == mid || c == mid)
}

pub fn pattern_distance(bits: &[bool], target: &PatternTarget) -> usize {
    bits.iter().zip(&target.pixels).filter(|(a, b)| a != b).count()
}

/// Quadrant 0..4 (top-left, top-right, bottom-left, bottom-right) of a pixel.
fn quadrant(row: usize, col: usize) -> usize {
    2 * usize::from(row >= SPLIT) + usize::from(col >= SPLIT)
}

/// All 16 quadrant splices of two patterns. Entry `m` takes quadrant `q` from
/// `second` when bit `3 - q` of `m` is set, so `m = 0b0001` borrows only the
/// bottom-right quadrant. Entry 0 is `first`, entry 15 is `second`.
pub fn make_combined_patterns(first: &PatternTarget, second: &PatternTarget) -> Vec<PatternTarget> {
    (0..16usize)
        .map(|m| {
            let name = format!("{}-{}-{m:04b}", first.name, second.name);
            PatternTarget::from_fn(&name, |r, c| {
                let from_second = (m >> (3 - quadrant(r, c))) & 1 == 1;
                if from_second {
                    second.get(r, c)
                } else {
                    first.get(r, c)
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_extremes() {
        let b = box_pattern();
        assert_eq!(pattern_distance(&b.pixels, &b), 0);
        let inv: Vec<bool> = b.pixels.iter().map(|p| !p).collect();
        assert_eq!(pattern_distance(&inv, &b), 81);
    }

    #[test]
    fn box_vs_cross() {
        // 32 ring cells + 17 cross cells, sharing the 4 ring midpoints
        let b = box_pattern();
        let x = cross_pattern();
        assert_eq!(b.pixels.iter().filter(|&&p| p).count(), 32);
        assert_eq!(x.pixels.iter().filter(|&&p| p).count(), 17);
        assert_eq!(pattern_distance(&b.pixels, &x), 32 + 17 - 2 * 4);
    }

    #[test]
    fn combined_endpoints() {
        let all = make_combined_patterns(&box_pattern(), &cross_pattern());
        assert_eq!(all.len(), 16);
        assert_eq!(all[0].pixels, box_pattern().pixels);
        assert_eq!(all[15].pixels, cross_pattern().pixels);
    }

    #[test]
    fn quarter_cross_hybrid() {
        // Bottom-right quadrant (rows 5-8, cols 5-8) comes from the cross,
        // which has no pixels there; the rest is the box.
        let hybrid = &make_combined_patterns(&box_pattern(), &cross_pattern())[0b0001];
        assert_eq!(
            hybrid.ascii(),
            "\
#########
#.......#
#.......#
#.......#
#.......#
#........
#........
#........
#####...."
        );
        let three_quarter_cross = &make_combined_patterns(&box_pattern(), &cross_pattern())[0b1110];
        assert_eq!(
            three_quarter_cross.ascii(),
            "\
....#....
....#....
....#....
....#....
#########
....#...#
....#...#
....#...#
....#####"
        );
    }

    #[test]
    fn rejects_wrong_size() {
        assert!(PatternTarget::new("x", vec![false; 80]).is_err());
    }
}
