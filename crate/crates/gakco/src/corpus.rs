//! Encoded sequence corpora.
//!
//! Record order is the canonical sequence index 0..N-1 used by every
//! matrix downstream; loading never reorders records.

use crate::alphabet::{normalize_byte, Alphabet};
use crate::error::Result;

/// One raw (not yet encoded) input record.
#[derive(Debug, Clone)]
pub struct RawRecord {
    pub id: String,
    pub label: Option<i64>,
    pub text: Vec<u8>,
}

/// One encoded sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub id: String,
    pub label: Option<i64>,
    pub codes: Vec<u8>,
}

impl SequenceRecord {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCorpus {
    pub alphabet: Alphabet,
    pub records: Vec<SequenceRecord>,
}

impl SequenceCorpus {
    pub fn n_sequences(&self) -> usize {
        self.records.len()
    }

    pub fn ids(&self) -> Vec<String> {
        self.records.iter().map(|r| r.id.clone()).collect()
    }

    pub fn labels(&self) -> Vec<Option<i64>> {
        self.records.iter().map(|r| r.label).collect()
    }

    /// Decode a record back to text; unknown codes render as
    /// [`crate::alphabet::UNKNOWN_CHAR`].
    pub fn decode_record(&self, index: usize) -> String {
        self.records[index]
            .codes
            .iter()
            .map(|&c| self.alphabet.decode(c) as char)
            .collect()
    }
}

/// Encode raw records into a corpus.
///
/// With an explicit `alphabet_spec` the given symbols win and anything else
/// maps to the unknown code. Without one, the alphabet is inferred: ASCII
/// symbols in order of first appearance (after case folding), with only
/// non-ASCII bytes falling through to the unknown code. The unknown code is
/// reserved only when some byte actually needs it.
pub fn encode_records(
    raw: Vec<RawRecord>,
    alphabet_spec: Option<&[u8]>,
) -> Result<SequenceCorpus> {
    let normalized: Vec<Vec<u8>> = raw
        .iter()
        .map(|r| r.text.iter().map(|&b| normalize_byte(b)).collect())
        .collect();

    let mut alphabet = match alphabet_spec {
        Some(spec) => Alphabet::from_symbols(spec)?,
        None => {
            let mut seen = [false; 256];
            let mut symbols = Vec::new();
            for text in &normalized {
                for &b in text {
                    if b.is_ascii() && !seen[b as usize] {
                        seen[b as usize] = true;
                        symbols.push(b);
                    }
                }
            }
            Alphabet::from_symbols(&symbols)?
        }
    };

    let needs_unknown = normalized
        .iter()
        .any(|text| text.iter().any(|&b| !alphabet.contains(b)));
    if needs_unknown {
        alphabet = alphabet.with_unknown();
    }

    let mut records = Vec::with_capacity(raw.len());
    for (rec, text) in raw.into_iter().zip(normalized) {
        let codes = text
            .iter()
            .map(|&b| alphabet.encode(b))
            .collect::<Result<Vec<u8>>>()?;
        records.push(SequenceRecord {
            id: rec.id,
            label: rec.label,
            codes,
        });
    }

    Ok(SequenceCorpus { alphabet, records })
}
