//! Text formats for stripes and repair reports, and byte packing.
//!
//! A stripe file is one JSON header line followed by `n` lines of
//! space-separated fixed-width hex symbols, one line per node:
//!
//! ```text
//! {"format":"cpcode-stripe","version":1,"n":6,"k":4,"L":2,"m":8,"poly":"0x165","stage":"G3","index_base":1,"original_len":8}
//! 01 02
//! ...
//! ```
//!
//! Symbols take two hex digits when `m <= 8` and four otherwise.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::{CodeParams, CodedStripe, Stage};
use crate::error::{Error, Result};
use crate::galois::{FieldElement, GaloisField};
use crate::repair::RepairReport;

pub const STRIPE_FORMAT: &str = "cpcode-stripe";
pub const STRIPE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripeHeader {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub m: u32,
    pub poly: String,
    pub stage: String,
    pub index_base: u32,
    /// Payload length in bytes before padding.
    pub original_len: usize,
}

impl StripeHeader {
    pub fn new(params: &CodeParams, stage: Stage, original_len: usize) -> StripeHeader {
        StripeHeader {
            format: STRIPE_FORMAT.into(),
            version: STRIPE_VERSION,
            n: params.n(),
            k: params.k(),
            l: params.groups(),
            m: params.field().m(),
            poly: format!("{:#x}", params.field().reduction_poly()),
            stage: stage.name().into(),
            index_base: 1,
            original_len,
        }
    }

    /// Rebuilds the code parameters the header describes.
    pub fn params(&self) -> Result<CodeParams> {
        let digits = self.poly.trim_start_matches("0x").trim_start_matches("0X");
        let poly = u32::from_str_radix(digits, 16)
            .map_err(|_| Error::Format(format!("bad polynomial {:?}", self.poly)))?;
        CodeParams::new(
            self.n,
            self.k,
            self.l,
            GaloisField::new(self.m, Some(poly))?,
        )
    }
}

fn hex_width(m: u32) -> usize {
    if m <= 8 {
        2
    } else {
        4
    }
}

/// Serializes a stripe. The output ends with a newline.
pub fn write_stripe(params: &CodeParams, stripe: &CodedStripe, original_len: usize) -> String {
    let header = StripeHeader::new(params, stripe.stage(), original_len);
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    let width = hex_width(params.field().m());
    for node in 1..=stripe.n() {
        let line: Vec<String> = stripe
            .row(node)
            .iter()
            .map(|s| format!("{:0width$x}", s.value()))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a stripe file, returning its header, parameters and symbols.
pub fn read_stripe(text: &str) -> Result<(StripeHeader, CodeParams, CodedStripe)> {
    let mut lines = text.lines();
    let head = lines
        .next()
        .ok_or_else(|| Error::Format("empty stripe file".into()))?;
    let header: StripeHeader =
        serde_json::from_str(head).map_err(|e| Error::Format(format!("bad header: {e}")))?;
    if header.format != STRIPE_FORMAT || header.version != STRIPE_VERSION {
        return Err(Error::Format(format!(
            "unsupported format {} version {}",
            header.format, header.version
        )));
    }
    if header.index_base != 1 {
        return Err(Error::Format(format!(
            "unsupported index base {}",
            header.index_base
        )));
    }
    let stage = Stage::from_name(&header.stage)
        .ok_or_else(|| Error::Format(format!("unknown stage {:?}", header.stage)))?;
    let params = header.params()?;
    let (n, r) = (params.n(), params.r());
    let width = hex_width(params.field().m());
    let field = params.field();
    let mut symbols = Vec::with_capacity(n * r);
    let mut rows = 0;
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        rows += 1;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != r {
            return Err(Error::Format(format!(
                "row {} has {} symbols, expected {r}",
                idx + 1,
                cells.len()
            )));
        }
        for cell in cells {
            if cell.len() != width {
                return Err(Error::Format(format!(
                    "symbol {cell:?} is not {width} hex digits"
                )));
            }
            let v = u32::from_str_radix(cell, 16)
                .map_err(|_| Error::Format(format!("bad hex symbol {cell:?}")))?;
            symbols.push(
                field
                    .element(v)
                    .map_err(|_| Error::Format(format!("symbol {cell} outside the field")))?,
            );
        }
    }
    if rows != n {
        return Err(Error::Format(format!("{rows} node rows, expected {n}")));
    }
    let stripe = CodedStripe::new(n, params.k(), stage, symbols)?;
    Ok((header, params, stripe))
}

/// Bytes per symbol: one up to `m = 8`, two (little-endian) above.
pub fn symbol_bytes(m: u32) -> usize {
    if m <= 8 {
        1
    } else {
        2
    }
}

/// Packs a payload into exactly `count` symbols. Short input is an error
/// unless `pad` is set, in which case zero symbols are appended.
pub fn bytes_to_symbols(
    field: &GaloisField,
    bytes: &[u8],
    count: usize,
    pad: bool,
) -> Result<Vec<FieldElement>> {
    let unit = symbol_bytes(field.m());
    if !bytes.len().is_multiple_of(unit) {
        return Err(Error::Format(format!(
            "input length {} is not a multiple of {unit} bytes",
            bytes.len()
        )));
    }
    let have = bytes.len() / unit;
    if have > count || (have < count && !pad) {
        return Err(Error::Format(format!(
            "input holds {have} symbols, the stripe needs {count}"
        )));
    }
    let mut out = Vec::with_capacity(count);
    for chunk in bytes.chunks(unit) {
        let v = match unit {
            1 => u32::from(chunk[0]),
            _ => u32::from(u16::from_le_bytes([chunk[0], chunk[1]])),
        };
        out.push(
            field
                .element(v)
                .map_err(|_| Error::Format(format!("value {v:#x} outside GF(2^{})", field.m())))?,
        );
    }
    out.resize(count, FieldElement::ZERO);
    Ok(out)
}

/// Inverse of [`bytes_to_symbols`], truncated to `original_len` bytes.
pub fn symbols_to_bytes(
    field: &GaloisField,
    symbols: &[FieldElement],
    original_len: usize,
) -> Result<Vec<u8>> {
    let unit = symbol_bytes(field.m());
    let mut out = Vec::with_capacity(symbols.len() * unit);
    for s in symbols {
        match unit {
            1 => out.push(s.value() as u8),
            _ => out.extend_from_slice(&s.value().to_le_bytes()),
        }
    }
    if original_len > out.len() {
        return Err(Error::Format(format!(
            "original length {original_len} exceeds the {} payload bytes",
            out.len()
        )));
    }
    out.truncate(original_len);
    Ok(out)
}

/// Plain-text repair report; downloads are listed sorted by node and column.
pub fn write_repair_report(params: &CodeParams, report: &RepairReport) -> String {
    let width = hex_width(params.field().m());
    let hex = |s: FieldElement| format!("{:0width$x}", s.value());
    let mut out = String::new();
    let _ = writeln!(out, "failed_node {}", report.failed_node);
    let _ = writeln!(out, "bandwidth {}", report.bandwidth);
    let _ = writeln!(out, "predicted {}", report.predicted);
    let recovered: Vec<String> = report.recovered.iter().map(|&s| hex(s)).collect();
    let _ = writeln!(out, "recovered {}", recovered.join(" "));
    let mut downloads = report.downloads.clone();
    downloads.sort();
    for d in downloads {
        let _ = writeln!(out, "download {} {} {}", d.node, d.col, hex(d.symbol));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{encode, DataMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn stripe_round_trip() {
        for m in [8, 12] {
            let p = CodeParams::new(14, 10, 3, GaloisField::with_degree(m).unwrap()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
            let s = encode(&p, &DataMatrix::random(&p, &mut rng)).unwrap();
            let text = write_stripe(&p, &s, 37);
            let (h, p2, s2) = read_stripe(&text).unwrap();
            assert_eq!(h.original_len, 37);
            assert_eq!(p2.shape(), p.shape());
            assert_eq!(s2, s);
            assert_eq!(write_stripe(&p2, &s2, 37), text);
        }
    }

    #[test]
    fn header_shape() {
        let p = CodeParams::new(6, 4, 2, GaloisField::with_degree(8).unwrap()).unwrap();
        let s = encode(&p, &DataMatrix::zeros(4, 2)).unwrap();
        let text = write_stripe(&p, &s, 8);
        assert_eq!(
            text.lines().next().unwrap(),
            r#"{"format":"cpcode-stripe","version":1,"n":6,"k":4,"L":2,"m":8,"poly":"0x165","stage":"G3","index_base":1,"original_len":8}"#
        );
        assert_eq!(text.lines().nth(1).unwrap(), "00 00");
    }

    #[test]
    fn rejects_malformed_stripes() {
        let p = CodeParams::new(6, 4, 2, GaloisField::with_degree(8).unwrap()).unwrap();
        let s = encode(&p, &DataMatrix::zeros(4, 2)).unwrap();
        let text = write_stripe(&p, &s, 8);
        let truncated: String = text.lines().take(6).map(|l| format!("{l}\n")).collect();
        assert!(matches!(read_stripe(&truncated), Err(Error::Format(_))));
        assert!(matches!(
            read_stripe(&text.replacen("00 00", "0g 00", 1)),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            read_stripe(&text.replacen("00 00", "00", 1)),
            Err(Error::Format(_))
        ));
        assert!(matches!(read_stripe("{}"), Err(Error::Format(_))));
        assert!(matches!(read_stripe(""), Err(Error::Format(_))));
    }

    #[test]
    fn byte_packing() {
        let gf8 = GaloisField::with_degree(8).unwrap();
        let syms = bytes_to_symbols(&gf8, &[1, 2, 3], 5, true).unwrap();
        assert_eq!(syms.len(), 5);
        assert_eq!(symbols_to_bytes(&gf8, &syms, 3).unwrap(), vec![1, 2, 3]);
        assert!(bytes_to_symbols(&gf8, &[1, 2, 3], 5, false).is_err());
        assert!(bytes_to_symbols(&gf8, &[1; 6], 5, true).is_err());

        let gf16 = GaloisField::with_degree(16).unwrap();
        let syms = bytes_to_symbols(&gf16, &[0x34, 0x12], 2, true).unwrap();
        assert_eq!(syms[0], FieldElement(0x1234));
        assert!(bytes_to_symbols(&gf16, &[1, 2, 3], 4, true).is_err());

        let gf4 = GaloisField::with_degree(4).unwrap();
        assert!(bytes_to_symbols(&gf4, &[0x10], 1, false).is_err());
    }
}
