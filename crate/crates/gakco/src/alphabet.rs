//! Symbol dictionaries mapping input bytes to dense integer codes.
//!
//! Codes are stable for a given corpus: explicit dictionaries keep their
//! given order, inferred dictionaries order symbols by first appearance.
//! Bytes outside the dictionary (including non-ASCII input) all share one
//! reserved unknown code, which matches like any other symbol.

use crate::error::{Error, Result};

/// The character unknown codes decode back to.
pub const UNKNOWN_CHAR: u8 = b'?';

/// A..Z then 0..9: the 36-symbol dictionary used for character text.
pub const ALPHANUMERIC: &[u8; 36] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// The four-symbol nucleotide dictionary.
pub const DNA: &[u8; 4] = b"ACGT";

const NO_CODE: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    unk_code: Option<u8>,
    code_of: [u8; 256],
}

impl Alphabet {
    /// Build from an explicit symbol list. Symbols are case folded to
    /// uppercase and must be distinct ASCII after folding.
    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        let mut folded = Vec::with_capacity(symbols.len());
        for &raw in symbols {
            if !raw.is_ascii() {
                return Err(Error::InvalidParams(format!(
                    "alphabet symbol 0x{raw:02x} is not ASCII"
                )));
            }
            let b = raw.to_ascii_uppercase();
            if folded.contains(&b) {
                return Err(Error::InvalidParams(format!(
                    "duplicate alphabet symbol '{}'",
                    b as char
                )));
            }
            folded.push(b);
        }
        if folded.len() > 254 {
            return Err(Error::InvalidParams(
                "alphabet larger than 254 symbols".into(),
            ));
        }
        let mut code_of = [NO_CODE; 256];
        for (code, &b) in folded.iter().enumerate() {
            code_of[b as usize] = code as u8;
        }
        Ok(Alphabet {
            symbols: folded,
            unk_code: None,
            code_of,
        })
    }

    /// Reserve the unknown code (one past the last symbol). Idempotent.
    pub fn with_unknown(mut self) -> Self {
        if self.unk_code.is_none() {
            self.unk_code = Some(self.symbols.len() as u8);
        }
        self
    }

    /// Symbol count, unknown code included when present.
    pub fn size(&self) -> usize {
        self.symbols.len() + usize::from(self.unk_code.is_some())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn unk_code(&self) -> Option<u8> {
        self.unk_code
    }

    /// Whether a normalized byte is covered without falling back to the
    /// unknown code.
    pub fn contains(&self, b: u8) -> bool {
        self.code_of[b as usize] != NO_CODE
    }

    /// Encode one already-normalized byte.
    pub fn encode(&self, b: u8) -> Result<u8> {
        let code = self.code_of[b as usize];
        if code != NO_CODE {
            return Ok(code);
        }
        self.unk_code.ok_or_else(|| {
            Error::InvalidParams(format!(
                "byte '{}' (0x{b:02x}) is outside the alphabet and no unknown code is reserved",
                b.escape_ascii()
            ))
        })
    }

    /// Decode one code; the unknown code renders as [`UNKNOWN_CHAR`].
    pub fn decode(&self, code: u8) -> u8 {
        match self.symbols.get(code as usize) {
            Some(&b) => b,
            None => UNKNOWN_CHAR,
        }
    }
}

/// Case folding applied to every input byte before encoding. Non-ASCII
/// bytes pass through unchanged and end up on the unknown code.
#[inline]
pub fn normalize_byte(b: u8) -> u8 {
    b.to_ascii_uppercase()
}
