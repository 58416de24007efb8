//! Instance file formats.
//!
//! `h3json` is a JSON object
//!
//! ```text
//! { "n": 5, "edges": [[0,1,2],[0,1,3]], "colors": ["R","B"] }
//! ```
//!
//! with every edge listed in ascending order and `colors` optional but, when
//! present, aligned with `edges`. Writers emit edges in colex order.
//!
//! `h3bits` stores a complete colouring of `K_n^(3)`: the ASCII header line
//! `H3BITS n\n`, then `binom(n,3)` bits packed eight per byte. The bit for the
//! triple with colex index `i` is bit `i % 8` (least significant first) of
//! byte `i / 8`; 1 means red. Padding bits in the final byte are zero.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{binom, Color, Coloring, Hypergraph3, HypergraphError, Triple};

pub const H3BITS_MAGIC: &str = "H3BITS";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid hypergraph: {0}")]
    Hypergraph(#[from] HypergraphError),
    #[error("bad h3bits header: {0}")]
    BadHeader(String),
    #[error("h3bits payload has {found} bytes, expected {expected}")]
    PayloadLength { found: usize, expected: usize },
    #[error("h3bits padding bits are not zero")]
    NonZeroPadding,
    #[error("{colors} colours given for {edges} edges")]
    ColorsLength { colors: usize, edges: usize },
    #[error("edge {0} listed twice")]
    DuplicateEdge(Triple),
    #[error("h3bits requires a complete colouring of K_n^(3)")]
    NotComplete,
    #[error("instance has no colouring")]
    Uncoloured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum ColorCode {
    R,
    B,
}

impl From<Color> for ColorCode {
    fn from(c: Color) -> Self {
        match c {
            Color::Red => ColorCode::R,
            Color::Blue => ColorCode::B,
        }
    }
}

impl From<ColorCode> for Color {
    fn from(c: ColorCode) -> Self {
        match c {
            ColorCode::R => Color::Red,
            ColorCode::B => Color::Blue,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct H3Json {
    n: usize,
    edges: Vec<Triple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<ColorCode>>,
}

/// A hypergraph with an optional colouring of its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Plain(Hypergraph3),
    Coloured(Coloring),
}

impl Instance {
    pub fn host(&self) -> &Hypergraph3 {
        match self {
            Instance::Plain(h) => h,
            Instance::Coloured(c) => c.host(),
        }
    }

    pub fn coloring(&self) -> Result<&Coloring, FormatError> {
        match self {
            Instance::Plain(_) => Err(FormatError::Uncoloured),
            Instance::Coloured(c) => Ok(c),
        }
    }

    pub fn into_coloring(self) -> Result<Coloring, FormatError> {
        match self {
            Instance::Plain(_) => Err(FormatError::Uncoloured),
            Instance::Coloured(c) => Ok(c),
        }
    }
}

pub fn parse_h3json(text: &str) -> Result<Instance, FormatError> {
    let raw: H3Json = serde_json::from_str(text)?;
    if let Some(colors) = &raw.colors {
        if colors.len() != raw.edges.len() {
            return Err(FormatError::ColorsLength {
                colors: colors.len(),
                edges: raw.edges.len(),
            });
        }
    }
    let mut keyed: Vec<(Triple, Option<ColorCode>)> = raw
        .edges
        .iter()
        .enumerate()
        .map(|(i, t)| (*t, raw.colors.as_ref().map(|c| c[i])))
        .collect();
    keyed.sort_by_key(|(t, _)| *t);
    if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(FormatError::DuplicateEdge(w[0].0));
    }
    let host = Hypergraph3::new(raw.n, keyed.iter().map(|(t, _)| *t))?;
    match raw.colors {
        None => Ok(Instance::Plain(host)),
        Some(_) => {
            let colors = keyed.iter().map(|(_, c)| Color::from(c.unwrap())).collect();
            Ok(Instance::Coloured(Coloring::new(host, colors)?))
        }
    }
}

pub fn write_h3json_plain(h: &Hypergraph3) -> String {
    let raw = H3Json {
        n: h.n(),
        edges: h.edges().to_vec(),
        colors: None,
    };
    serde_json::to_string(&raw).expect("serialisable")
}

pub fn write_h3json(col: &Coloring) -> String {
    let raw = H3Json {
        n: col.host().n(),
        edges: col.host().edges().to_vec(),
        colors: Some(col.colors().iter().map(|&c| c.into()).collect()),
    };
    serde_json::to_string(&raw).expect("serialisable")
}

/// Encodes a complete colouring as `h3bits`.
pub fn write_h3bits(col: &Coloring) -> Result<Vec<u8>, FormatError> {
    if !col.is_complete() {
        return Err(FormatError::NotComplete);
    }
    let n = col.host().n();
    let total = binom(n as u64, 3) as usize;
    let mut out = format!("{H3BITS_MAGIC} {n}\n").into_bytes();
    let start = out.len();
    out.resize(start + total.div_ceil(8), 0);
    // Host edges are already in colex order, so position == colex index.
    for (i, c) in col.colors().iter().enumerate() {
        if *c == Color::Red {
            out[start + i / 8] |= 1 << (i % 8);
        }
    }
    Ok(out)
}

pub fn parse_h3bits(bytes: &[u8]) -> Result<Coloring, FormatError> {
    let nl = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| FormatError::BadHeader("missing newline".into()))?;
    let header = std::str::from_utf8(&bytes[..nl])
        .map_err(|_| FormatError::BadHeader("header is not ASCII".into()))?;
    let mut parts = header.split(' ');
    if parts.next() != Some(H3BITS_MAGIC) {
        return Err(FormatError::BadHeader(format!("expected {H3BITS_MAGIC}, got {header:?}")));
    }
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| FormatError::BadHeader(format!("bad vertex count in {header:?}")))?;
    if parts.next().is_some() {
        return Err(FormatError::BadHeader(format!("trailing fields in {header:?}")));
    }
    let payload = &bytes[nl + 1..];
    let total = binom(n as u64, 3) as usize;
    let expected = total.div_ceil(8);
    if payload.len() != expected {
        return Err(FormatError::PayloadLength {
            found: payload.len(),
            expected,
        });
    }
    if total % 8 != 0 && payload[expected - 1] >> (total % 8) != 0 {
        return Err(FormatError::NonZeroPadding);
    }
    let colors = (0..total)
        .map(|i| {
            if (payload[i / 8] >> (i % 8)) & 1 == 1 {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .collect();
    Ok(Coloring::new(Hypergraph3::complete(n), colors)?)
}

/// Parses either format, sniffing the `h3bits` magic.
pub fn parse_instance(bytes: &[u8]) -> Result<Instance, FormatError> {
    if bytes.starts_with(H3BITS_MAGIC.as_bytes()) {
        Ok(Instance::Coloured(parse_h3bits(bytes)?))
    } else {
        let text = std::str::from_utf8(bytes)
            .map_err(|e| FormatError::BadHeader(format!("not UTF-8 JSON: {e}")))?;
        parse_h3json(text)
    }
}

pub fn read_instance(path: &Path) -> Result<Instance, FormatError> {
    parse_instance(&fs::read(path)?)
}
