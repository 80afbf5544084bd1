//! Reading and writing the three file formats: `.gfm` matrices, `.mbl` basis
//! lists and `.mrt` binary rank tables.

use std::path::Path;

use thiserror::Error;

use crate::matrix::{GfMatrix, ParseError};
use crate::subset::Subset;

use super::{default_labels, Backend, Matroid, MatroidError, TABLE_CAP};

const MRT_MAGIC: &[u8; 4] = b"MRT1";

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{}: {}", .err.line, .err.msg)]
    Parse { path: String, err: ParseError },
    #[error("{path}: unknown extension; expected .gfm, .mbl or .mrt")]
    UnknownKind { path: String },
    #[error("{path}: {source}")]
    Matroid { path: String, source: MatroidError },
}

impl FileError {
    pub fn is_parse(&self) -> bool {
        matches!(self, FileError::Parse { .. } | FileError::UnknownKind { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Gfm,
    Mbl,
    Mrt,
}

impl FileKind {
    pub fn of(path: &Path) -> Option<FileKind> {
        match path.extension()?.to_str()? {
            "gfm" => Some(FileKind::Gfm),
            "mbl" => Some(FileKind::Mbl),
            "mrt" => Some(FileKind::Mrt),
            _ => None,
        }
    }
}

/// Parses a basis list.
pub fn parse_mbl(text: &str) -> Result<Matroid, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| ParseError::new(0, "missing `ground` line"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"ground") || toks.len() < 2 {
        return Err(ParseError::new(hl + 1, "expected `ground <n> <labels>`"));
    }
    let n: usize = toks[1].parse().map_err(|_| ParseError::new(hl + 1, "bad ground size"))?;
    let labels: Vec<String> = toks[2..].iter().map(|s| s.to_string()).collect();
    if labels.len() != n {
        return Err(ParseError::new(hl + 1, format!("expected {n} labels, found {}", labels.len())));
    }
    if n > TABLE_CAP {
        return Err(ParseError::new(hl + 1, format!("ground size {n} exceeds {TABLE_CAP}")));
    }
    let mut bases = Vec::new();
    for (ln, line) in lines {
        let mut b = Subset::EMPTY;
        for tok in line.split_whitespace() {
            let i = labels
                .iter()
                .position(|l| l == tok)
                .ok_or_else(|| ParseError::new(ln + 1, format!("unknown label `{tok}`")))?;
            if b.contains(i) {
                return Err(ParseError::new(ln + 1, format!("label `{tok}` repeated")));
            }
            b = b.with(i);
        }
        bases.push(b);
    }
    if bases.is_empty() {
        // the empty basis of a rank-0 matroid is written as no lines at all
        bases.push(Subset::EMPTY);
    }
    Matroid::from_bases(labels, bases).map_err(|e| ParseError::new(hl + 1, e.to_string()))
}

pub fn to_mbl(m: &Matroid) -> String {
    let mut out = format!("ground {} {}\n", m.len(), m.labels().join(" "));
    for b in m.bases() {
        out.push_str(&m.names(b).join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_mrt(bytes: &[u8]) -> Result<Matroid, ParseError> {
    if bytes.len() < 8 || &bytes[..4] != MRT_MAGIC {
        return Err(ParseError::new(0, "missing MRT1 header"));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    if n > TABLE_CAP {
        return Err(ParseError::new(0, format!("ground size {n} exceeds {TABLE_CAP}")));
    }
    let body = &bytes[8..];
    if body.len() != 1 << n {
        return Err(ParseError::new(0, format!("expected {} rank bytes, found {}", 1u64 << n, body.len())));
    }
    if let Some(pos) = body.iter().enumerate().position(|(s, &r)| r as u32 > (s as u32).count_ones()) {
        return Err(ParseError::new(0, format!("rank byte {pos} exceeds subset size")));
    }
    let m = Matroid::from_table(default_labels(n), body.to_vec().into())
        .map_err(|e| ParseError::new(0, e.to_string()))?;
    m.check_axioms().map_err(|e| ParseError::new(0, e.to_string()))?;
    Ok(m)
}

pub fn to_mrt(m: &Matroid) -> Result<Vec<u8>, MatroidError> {
    let t = m.require_table()?;
    let mut out = Vec::with_capacity(8 + t.len());
    out.extend_from_slice(MRT_MAGIC);
    out.extend_from_slice(&(m.len() as u32).to_le_bytes());
    out.extend_from_slice(t);
    Ok(out)
}

/// Reads a matroid, choosing the format by extension.
pub fn read_matroid_file(path: &Path) -> Result<Matroid, FileError> {
    let p = path.display().to_string();
    let kind = FileKind::of(path).ok_or_else(|| FileError::UnknownKind { path: p.clone() })?;
    let bytes = std::fs::read(path).map_err(|source| FileError::Io { path: p.clone(), source })?;
    let text = || String::from_utf8_lossy(&bytes).into_owned();
    let parse = |err| FileError::Parse { path: p.clone(), err };
    match kind {
        FileKind::Gfm => {
            let (mat, _) = GfMatrix::parse_gfm(&text()).map_err(parse)?;
            Matroid::from_matrix(mat).map_err(|source| FileError::Matroid { path: p.clone(), source })
        }
        FileKind::Mbl => parse_mbl(&text()).map_err(parse),
        FileKind::Mrt => parse_mrt(&bytes).map_err(parse),
    }
}

/// Reads a `.gfm` matrix with its optional `# basis` comment.
pub fn read_representation(path: &Path) -> Result<(GfMatrix, Option<Vec<String>>), FileError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io { path: p.clone(), source })?;
    let (mat, comments) = GfMatrix::parse_gfm(&text).map_err(|err| FileError::Parse { path: p, err })?;
    let basis = comments.iter().find_map(|c| {
        let rest = c.trim_start_matches('#').trim();
        rest.strip_prefix("basis").map(|b| b.split_whitespace().map(String::from).collect())
    });
    Ok((mat, basis))
}

/// Writes a matroid in the format given by the extension. `.gfm` needs a
/// linear backend.
pub fn write_matroid_file(path: &Path, m: &Matroid) -> Result<(), FileError> {
    let p = path.display().to_string();
    let kind = FileKind::of(path).ok_or_else(|| FileError::UnknownKind { path: p.clone() })?;
    let bytes = match kind {
        FileKind::Gfm => match m.backend() {
            Backend::Linear(mat) => mat.to_gfm().into_bytes(),
            _ => {
                return Err(FileError::Matroid {
                    path: p,
                    source: MatroidError::InvalidParameters("only linear matroids can be written as .gfm".into()),
                })
            }
        },
        FileKind::Mbl => to_mbl(m).into_bytes(),
        FileKind::Mrt => to_mrt(m).map_err(|source| FileError::Matroid { path: p.clone(), source })?,
    };
    std::fs::write(path, bytes).map_err(|source| FileError::Io { path: p, source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{make_pg, make_uniform};

    #[test]
    fn mbl_round_trip() {
        let m = make_uniform(2, 4).unwrap();
        let back = parse_mbl(&to_mbl(&m)).unwrap();
        assert!(back.same_as(&m));
    }

    #[test]
    fn mbl_errors_carry_lines() {
        let err = parse_mbl("ground 3 a b c\na b\na z\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(parse_mbl("ground 2 a\n").unwrap_err().line, 1);
        assert!(parse_mbl("ground 3 a b c\na b\nc\n").is_err());
    }

    #[test]
    fn mrt_round_trip_and_rejections() {
        let m = make_pg(2, 2).unwrap();
        let bytes = to_mrt(&m).unwrap();
        assert_eq!(bytes.len(), 8 + 128);
        assert!(parse_mrt(&bytes).unwrap().same_as(&m));
        assert!(parse_mrt(&bytes[..100]).is_err());
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(parse_mrt(&bad).is_err());
        let mut bad = bytes;
        bad[8 + 1] = 2;
        assert!(parse_mrt(&bad).is_err());
    }
}
