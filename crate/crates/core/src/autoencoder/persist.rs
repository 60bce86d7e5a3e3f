//! Weight file format.
//!
//! All integers and floats are little-endian:
//!
//! | offset          | size      | field                                   |
//! |-----------------|-----------|-----------------------------------------|
//! | 0               | 8         | magic `b"DAGAWTS\0"`                    |
//! | 8               | 4         | format version (`u32`, currently 1)     |
//! | 12              | 4         | visible size (`u32`)                    |
//! | 16              | 4         | hidden size (`u32`)                     |
//! | 20              | 8·H·V     | `W`, row-major `hidden x visible` `f64` |
//! | ...             | 8·H       | `b`                                     |
//! | ...             | 8·V·H     | `W'`, row-major `visible x hidden`      |
//! | ...             | 8·V       | `b'`                                    |
//! | end − 4         | 4         | CRC-32 (IEEE) of every preceding byte   |

use std::io::{Read, Write};
use std::path::Path;

use super::{DenoisingAutoencoder, Params};
use crate::error::{Error, Result};

pub const WEIGHTS_MAGIC: &[u8; 8] = b"DAGAWTS\0";
pub const WEIGHTS_VERSION: u32 = 1;
const HEADER_LEN: usize = 20;

pub fn write_weights(dae: &DenoisingAutoencoder, mut out: impl Write) -> Result<()> {
    let mut buf = Vec::with_capacity(HEADER_LEN + 8 * dae.params().len() + 4);
    buf.extend_from_slice(WEIGHTS_MAGIC);
    buf.extend_from_slice(&WEIGHTS_VERSION.to_le_bytes());
    buf.extend_from_slice(&(dae.visible() as u32).to_le_bytes());
    buf.extend_from_slice(&(dae.hidden() as u32).to_le_bytes());
    for v in dae.params().iter() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let crc = crc32fast::hash(&buf);
    buf.extend_from_slice(&crc.to_le_bytes());
    out.write_all(&buf)?;
    Ok(())
}

pub fn read_weights(mut input: impl Read) -> Result<DenoisingAutoencoder> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    decode(&bytes)
}

pub fn save_weights(dae: &DenoisingAutoencoder, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_weights(dae, std::io::BufWriter::new(file))
}

pub fn load_weights(path: impl AsRef<Path>) -> Result<DenoisingAutoencoder> {
    read_weights(std::fs::File::open(path)?)
}

fn u32_at(bytes: &[u8], at: usize) -> Result<u32> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_le_bytes(b.try_into().expect("4 bytes")))
        .ok_or_else(|| Error::parse_byte(bytes.len(), format!("file truncated, expected 4 bytes at offset {at}")))
}

fn decode(bytes: &[u8]) -> Result<DenoisingAutoencoder> {
    if bytes.len() < 8 || &bytes[..8] != WEIGHTS_MAGIC {
        return Err(Error::parse_byte(0, "missing weight file magic"));
    }
    let version = u32_at(bytes, 8)?;
    if version != WEIGHTS_VERSION {
        return Err(Error::parse_byte(8, format!("unsupported weight file version {version}")));
    }
    let visible = u32_at(bytes, 12)? as usize;
    let hidden = u32_at(bytes, 16)? as usize;
    if visible == 0 || hidden == 0 {
        return Err(Error::parse_byte(12, format!("invalid sizes visible={visible} hidden={hidden}")));
    }
    let count = (2 * visible * hidden)
        .checked_add(visible + hidden)
        .ok_or_else(|| Error::parse_byte(12, "sizes overflow"))?;
    let body_end = HEADER_LEN + 8 * count;
    let expected_len = body_end + 4;
    if bytes.len() < expected_len {
        return Err(Error::parse_byte(
            bytes.len(),
            format!("file truncated: {} bytes, expected {expected_len}", bytes.len()),
        ));
    }
    if bytes.len() > expected_len {
        return Err(Error::parse_byte(expected_len, "trailing bytes after checksum"));
    }
    let stored = u32_at(bytes, body_end)?;
    let actual = crc32fast::hash(&bytes[..body_end]);
    if stored != actual {
        return Err(Error::parse_byte(
            body_end,
            format!("checksum mismatch (stored {stored:08x}, computed {actual:08x})"),
        ));
    }
    let mut values = bytes[HEADER_LEN..body_end]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")));
    let mut take = |n: usize| -> Vec<f64> { values.by_ref().take(n).collect() };
    let params = Params {
        w: take(hidden * visible),
        b: take(hidden),
        w_prime: take(visible * hidden),
        b_prime: take(visible),
    };
    if let Some(pos) = params.iter().position(|v| !v.is_finite()) {
        return Err(Error::parse_byte(HEADER_LEN + 8 * pos, "non-finite weight"));
    }
    DenoisingAutoencoder::from_params(visible, hidden, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Location;
    use crate::rng::RandomSource;

    fn sample() -> DenoisingAutoencoder {
        let mut rng = RandomSource::new(21);
        let mut d = DenoisingAutoencoder::new(7, 3, &mut rng).unwrap();
        d.params_mut().b[1] = -0.25;
        d.params_mut().b_prime[6] = 1.0 / 3.0;
        d
    }

    fn encoded(d: &DenoisingAutoencoder) -> Vec<u8> {
        let mut buf = Vec::new();
        write_weights(d, &mut buf).unwrap();
        buf
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let d = sample();
        let back = read_weights(encoded(&d).as_slice()).unwrap();
        assert_eq!(back.visible(), 7);
        assert_eq!(back.hidden(), 3);
        let a: Vec<u64> = d.params().iter().map(|v| v.to_bits()).collect();
        let b: Vec<u64> = back.params().iter().map(|v| v.to_bits()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("net.weights");
        let d = sample();
        save_weights(&d, &path).unwrap();
        assert_eq!(load_weights(&path).unwrap(), d);
    }

    #[test]
    fn truncated_file_is_rejected() {
        let buf = encoded(&sample());
        for cut in [0, 5, 19, 40, buf.len() - 1] {
            let err = read_weights(&buf[..cut]).unwrap_err();
            assert!(matches!(err, Error::Parse { .. }), "cut {cut}: {err}");
        }
    }

    #[test]
    fn corrupted_byte_fails_checksum() {
        let mut buf = encoded(&sample());
        buf[HEADER_LEN + 13] ^= 0x40;
        match read_weights(buf.as_slice()).unwrap_err() {
            Error::Parse { at: Location::Byte(off), msg } => {
                assert!(msg.contains("checksum"), "{msg}");
                assert_eq!(off, buf.len() - 4);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn bad_magic_and_version() {
        let mut buf = encoded(&sample());
        buf[0] = b'X';
        assert!(read_weights(buf.as_slice()).is_err());
        let mut buf = encoded(&sample());
        buf[8] = 9;
        let err = read_weights(buf.as_slice()).unwrap_err().to_string();
        assert!(err.contains("version"), "{err}");
    }
}
