//! FASTA and labeled-text readers.
//!
//! FASTA: header lines prefixed '>' followed by any number of sequence
//! lines (arbitrary wrapping). Labeled text: one `<label><TAB><text>`
//! record per line, labels integral, whitespace inside the text dropped.

use std::fs;
use std::path::Path;

use crate::alphabet::ALPHANUMERIC;
use crate::corpus::{encode_records, RawRecord, SequenceCorpus};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Fasta,
    LabeledText,
}

/// Sniff the on-disk format from the first non-blank line.
pub fn detect_format(path: &Path) -> Result<InputFormat> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    for line in bytes.split(|&b| b == b'\n') {
        let line = trim_cr(line);
        if line.is_empty() {
            continue;
        }
        return Ok(if line[0] == b'>' {
            InputFormat::Fasta
        } else {
            InputFormat::LabeledText
        });
    }
    Err(Error::parse(path, 1, "empty input: no records"))
}

/// Parse a FASTA file into raw records; no encoding yet.
pub fn read_fasta_records(path: &Path) -> Result<Vec<RawRecord>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut records: Vec<RawRecord> = Vec::new();
    for (lineno, line) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = trim_cr(line);
        if line.is_empty() {
            continue;
        }
        if line[0] == b'>' {
            let header = String::from_utf8_lossy(&line[1..]);
            let id = header
                .split_whitespace()
                .next()
                .map(str::to_owned)
                .unwrap_or_else(|| format!("seq{}", records.len()));
            records.push(RawRecord {
                id,
                label: None,
                text: Vec::new(),
            });
        } else {
            let current = records.last_mut().ok_or_else(|| {
                Error::parse(path, lineno + 1, "sequence data before any '>' header")
            })?;
            current
                .text
                .extend(line.iter().copied().filter(|b| !b.is_ascii_whitespace()));
        }
    }
    if records.is_empty() {
        return Err(Error::parse(path, 1, "empty input: no FASTA records"));
    }
    Ok(records)
}

/// Parse a labeled-text file into raw records; no encoding yet.
pub fn read_labeled_records(path: &Path) -> Result<Vec<RawRecord>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    for (lineno, line) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = trim_cr(line);
        if line.is_empty() {
            continue;
        }
        let tab = line.iter().position(|&b| b == b'\t').ok_or_else(|| {
            Error::parse(path, lineno + 1, "missing <TAB> between label and text")
        })?;
        let label_str = String::from_utf8_lossy(&line[..tab]);
        let label: i64 = label_str.trim().parse().map_err(|_| {
            Error::parse(
                path,
                lineno + 1,
                format!("label '{}' is not an integer", label_str.trim()),
            )
        })?;
        let text: Vec<u8> = line[tab + 1..]
            .iter()
            .copied()
            .filter(|b| !b.is_ascii_whitespace())
            .collect();
        records.push(RawRecord {
            id: format!("seq{}", records.len()),
            label: Some(label),
            text,
        });
    }
    if records.is_empty() {
        return Err(Error::parse(path, 1, "empty input: no labeled records"));
    }
    Ok(records)
}

/// Load a FASTA file. With `alphabet_spec` the given symbols win; without
/// it the alphabet is inferred from the corpus.
pub fn load_fasta(path: &Path, alphabet_spec: Option<&[u8]>) -> Result<SequenceCorpus> {
    encode_records(read_fasta_records(path)?, alphabet_spec)
}

/// Load a labeled-text file over the fixed 36-symbol alphanumeric
/// dictionary (plus the unknown code when needed).
pub fn load_labeled_text(path: &Path) -> Result<SequenceCorpus> {
    encode_records(read_labeled_records(path)?, Some(ALPHANUMERIC))
}

/// Read raw records in whichever format the file carries.
pub fn read_records_auto(path: &Path) -> Result<(Vec<RawRecord>, InputFormat)> {
    let fmt = detect_format(path)?;
    let records = match fmt {
        InputFormat::Fasta => read_fasta_records(path)?,
        InputFormat::LabeledText => read_labeled_records(path)?,
    };
    Ok((records, fmt))
}

fn trim_cr(line: &[u8]) -> &[u8] {
    match line.last() {
        Some(b'\r') => &line[..line.len() - 1],
        _ => line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn fasta_two_records() {
        let f = tmp(">s1\nACACA\n>s2\nAAACA");
        let corpus = load_fasta(f.path(), Some(b"ACGT")).unwrap();
        assert_eq!(corpus.n_sequences(), 2);
        assert_eq!(corpus.alphabet.size(), 4);
        assert_eq!(corpus.records[0].id, "s1");
        assert_eq!(corpus.records[0].len(), 5);
        assert_eq!(corpus.decode_record(1), "AAACA");
    }

    #[test]
    fn fasta_empty_sequence_is_kept() {
        let f = tmp(">s1\n\n");
        let corpus = load_fasta(f.path(), None).unwrap();
        assert_eq!(corpus.n_sequences(), 1);
        assert_eq!(corpus.records[0].len(), 0);
    }

    #[test]
    fn fasta_unknown_character() {
        let f = tmp(">s1\nACXCA");
        let corpus = load_fasta(f.path(), Some(b"ACGT")).unwrap();
        assert_eq!(corpus.alphabet.size(), 5);
        assert_eq!(corpus.decode_record(0), "AC?CA");
    }

    #[test]
    fn fasta_wrapping_and_lowercase() {
        let f = tmp(">s1 some description\nac\nACA\n");
        let corpus = load_fasta(f.path(), None).unwrap();
        assert_eq!(corpus.records[0].id, "s1");
        assert_eq!(corpus.decode_record(0), "ACACA");
    }

    #[test]
    fn fasta_errors() {
        let f = tmp("");
        assert!(matches!(
            load_fasta(f.path(), None),
            Err(Error::Parse { .. })
        ));
        let f = tmp("ACGT\n>s1\nAC");
        match load_fasta(f.path(), None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn labeled_text_basic() {
        let f = tmp("1\tMYNAME\n0\tab12\n");
        let corpus = load_labeled_text(f.path()).unwrap();
        assert_eq!(corpus.n_sequences(), 2);
        assert_eq!(corpus.records[0].label, Some(1));
        assert_eq!(corpus.records[0].len(), 6);
        assert_eq!(corpus.decode_record(1), "AB12");
        // A=0, B=1 and digits start at code 26
        assert_eq!(corpus.records[1].codes, vec![0, 1, 27, 28]);
    }

    #[test]
    fn labeled_text_drops_inner_whitespace() {
        let f = tmp("-3\tmy name\t42\n");
        let corpus = load_labeled_text(f.path()).unwrap();
        assert_eq!(corpus.records[0].label, Some(-3));
        assert_eq!(corpus.decode_record(0), "MYNAME42");
    }

    #[test]
    fn labeled_text_bad_label() {
        let f = tmp("1\tOK\nx\tBAD\n");
        match load_labeled_text(f.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn loading_twice_is_identical() {
        let f = tmp(">a\nACgtX\n>b\nGG\nTT\n");
        let c1 = load_fasta(f.path(), None).unwrap();
        let c2 = load_fasta(f.path(), None).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn format_detection() {
        let f = tmp("\n>s1\nAC\n");
        assert_eq!(detect_format(f.path()).unwrap(), InputFormat::Fasta);
        let f = tmp("1\tAC\n");
        assert_eq!(detect_format(f.path()).unwrap(), InputFormat::LabeledText);
    }
}
