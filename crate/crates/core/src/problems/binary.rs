use crate::error::{Error, Result};

pub const ROYAL_ROAD_BLOCK: usize = 8;

pub fn maxones(bits: &[bool]) -> usize {
    bits.iter().filter(|&&b| b).count()
}

/// Block-counting HIFF: every aligned block of size `2^l` whose bits are all
/// equal contributes `2^l`, summed over all levels including single bits.
pub fn hiff(bits: &[bool]) -> Result<u64> {
    let n = bits.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::config(format!("HIFF length {n} is not a power of two")));
    }
    // `level[i]` holds Some(bit) while block i of the current level is uniform.
    let mut level: Vec<Option<bool>> = bits.iter().map(|&b| Some(b)).collect();
    let mut size = 1u64;
    let mut total = n as u64;
    while level.len() > 1 {
        level = level
            .chunks_exact(2)
            .map(|pair| match (pair[0], pair[1]) {
                (Some(a), Some(b)) if a == b => Some(a),
                _ => None,
            })
            .collect();
        size *= 2;
        total += size * level.iter().filter(|b| b.is_some()).count() as u64;
    }
    Ok(total)
}

/// Sum of `ROYAL_ROAD_BLOCK` for every contiguous block that is all ones.
pub fn royal_road(bits: &[bool]) -> Result<u64> {
    if bits.is_empty() || bits.len() % ROYAL_ROAD_BLOCK != 0 {
        return Err(Error::config(format!(
            "Royal Road length {} is not a multiple of {ROYAL_ROAD_BLOCK}",
            bits.len()
        )));
    }
    Ok(bits
        .chunks_exact(ROYAL_ROAD_BLOCK)
        .filter(|block| block.iter().all(|&b| b))
        .count() as u64
        * ROYAL_ROAD_BLOCK as u64)
}
