//! Labeled matrices over GF(q) and the `.gfm` text format.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Elem, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("unknown column label `{0}`")]
    UnknownLabel(String),
    #[error("columns do not form a basis of the column space")]
    NotABasis,
    #[error("duplicate column label `{0}`")]
    DuplicateLabel(String),
    #[error("entry code {code} out of range for GF({q})")]
    CodeOutOfRange { code: u32, q: u32 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line, msg: msg.into() }
    }
}

/// A `rows × cols` matrix over a finite field with one label per column.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
    labels: Vec<String>,
}

impl std::fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:?} {}x{} {:?}", self.field, self.rows, self.cols, self.labels)?;
        for r in 0..self.rows {
            let row: Vec<u8> = (0..self.cols).map(|c| self.get(r, c).0).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl GfMatrix {
    pub fn new(
        field: Arc<FieldSpec>,
        rows: usize,
        cols: usize,
        entries: Vec<Elem>,
        labels: Vec<String>,
    ) -> Result<GfMatrix, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if labels.len() != cols {
            return Err(MatrixError::Shape(format!("{} labels for {cols} columns", labels.len())));
        }
        if let Some(e) = entries.iter().find(|e| e.0 as u32 >= field.order()) {
            return Err(MatrixError::CodeOutOfRange { code: e.0 as u32, q: field.order() });
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(MatrixError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GfMatrix { field, rows, cols, entries, labels })
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns(
        field: Arc<FieldSpec>,
        rows: usize,
        columns: &[Vec<Elem>],
        labels: Vec<String>,
    ) -> Result<GfMatrix, MatrixError> {
        let cols = columns.len();
        let mut entries = vec![Elem::ZERO; rows * cols];
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(MatrixError::Shape(format!("column {c} has length {}", col.len())));
            }
            for (r, &v) in col.iter().enumerate() {
                entries[r * cols + c] = v;
            }
        }
        GfMatrix::new(field, rows, cols, entries, labels)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn column_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn indices_of(&self, labels: &[&str]) -> Result<Vec<usize>, MatrixError> {
        labels
            .iter()
            .map(|l| self.column_index(l).ok_or_else(|| MatrixError::UnknownLabel(l.to_string())))
            .collect()
    }

    /// Rank of the columns with the given labels.
    pub fn rank_of(&self, labels: &[&str]) -> Result<usize, MatrixError> {
        Ok(self.rank_of_columns(&self.indices_of(labels)?))
    }

    /// Rank of the selected columns by Gaussian elimination.
    pub fn rank_of_columns(&self, cols: &[usize]) -> usize {
        let vectors: Vec<Vec<Elem>> = cols.iter().map(|&c| self.column(c)).collect();
        rank_of_vectors(&self.field, vectors)
    }

    pub fn rank(&self) -> usize {
        self.rank_of_columns(&(0..self.cols).collect::<Vec<_>>())
    }

    /// Row-equivalent matrix whose `basis` columns form an identity; row `i`
    /// of the result belongs to `basis[i]`. Zero rows are dropped.
    pub fn standard_form(&self, basis: &[usize]) -> Result<GfMatrix, MatrixError> {
        let f = &*self.field;
        if basis.len() != self.rank() || self.rank_of_columns(basis) != basis.len() {
            return Err(MatrixError::NotABasis);
        }
        let mut m: Vec<Vec<Elem>> =
            (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect();
        let mut pivot_rows = Vec::with_capacity(basis.len());
        let mut used = vec![false; self.rows];
        for &b in basis {
            let r = (0..self.rows)
                .find(|&r| !used[r] && !m[r][b].is_zero())
                .ok_or(MatrixError::NotABasis)?;
            used[r] = true;
            let inv = f.inv(m[r][b]).unwrap();
            for v in m[r].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot = m[r].clone();
            for (rr, row) in m.iter_mut().enumerate() {
                if rr != r && !row[b].is_zero() {
                    let factor = row[b];
                    for (v, &p) in row.iter_mut().zip(&pivot) {
                        *v = f.sub(*v, f.mul(factor, p));
                    }
                }
            }
            pivot_rows.push(r);
        }
        let entries = pivot_rows.iter().flat_map(|&r| m[r].iter().copied()).collect();
        GfMatrix::new(self.field.clone(), basis.len(), self.cols, entries, self.labels.clone())
    }

    /// Matrix keeping only the given columns, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> GfMatrix {
        let entries = (0..self.rows)
            .flat_map(|r| cols.iter().map(move |&c| self.get(r, c)))
            .collect();
        let labels = cols.iter().map(|&c| self.labels[c].clone()).collect();
        GfMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            entries,
            labels,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<GfMatrix, MatrixError> {
        if labels.len() != self.cols {
            return Err(MatrixError::Shape("label count".into()));
        }
        self.labels = labels;
        GfMatrix::new(self.field, self.rows, self.cols, self.entries, self.labels)
    }

    /// Applies an entrywise map (a field automorphism, typically).
    pub fn map_entries(&self, table: &[Elem]) -> GfMatrix {
        GfMatrix {
            entries: self.entries.iter().map(|e| table[e.0 as usize]).collect(),
            ..self.clone()
        }
    }

    pub fn to_gfm(&self) -> String {
        let mut s = String::new();
        writeln!(s, "field {}", self.field.order()).unwrap();
        writeln!(s, "size {} {}", self.rows, self.cols).unwrap();
        writeln!(s, "labels {}", self.labels.join(" ")).unwrap();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).0.to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    /// Parses the `.gfm` format. Trailing lines starting with `#` are returned
    /// separately so callers can read annotations such as `# basis ...`.
    pub fn parse_gfm(text: &str) -> Result<(GfMatrix, Vec<String>), ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next = |what: &str| -> Result<(usize, Vec<&str>), ParseError> {
            let (n, l) = lines
                .next()
                .ok_or_else(|| ParseError::new(0, format!("unexpected end of file, expected {what}")))?;
            Ok((n, l.split_whitespace().collect()))
        };
        let (n, t) = next("`field`")?;
        let q = match t.as_slice() {
            ["field", q] => q.parse::<u32>().map_err(|_| ParseError::new(n, "bad field order"))?,
            _ => return Err(ParseError::new(n, "expected `field <q>`")),
        };
        let field = FieldSpec::shared(q).map_err(|e| ParseError::new(n, e.to_string()))?;
        let (n, t) = next("`size`")?;
        let (rows, cols) = match t.as_slice() {
            ["size", r, c] => (
                r.parse::<usize>().map_err(|_| ParseError::new(n, "bad row count"))?,
                c.parse::<usize>().map_err(|_| ParseError::new(n, "bad column count"))?,
            ),
            _ => return Err(ParseError::new(n, "expected `size <rows> <cols>`")),
        };
        let (n, t) = next("`labels`")?;
        if t.first() != Some(&"labels") || t.len() != cols + 1 {
            return Err(ParseError::new(n, format!("expected `labels` followed by {cols} tokens")));
        }
        let labels: Vec<String> = t[1..].iter().map(|s| s.to_string()).collect();
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (n, t) = next("a matrix row")?;
            if t.len() != cols {
                return Err(ParseError::new(n, format!("expected {cols} entries, found {}", t.len())));
            }
            for tok in t {
                let code: u32 =
                    tok.parse().map_err(|_| ParseError::new(n, format!("bad entry `{tok}`")))?;
                if code >= q {
                    return Err(ParseError::new(n, format!("entry {code} out of range for GF({q})")));
                }
                entries.push(Elem(code as u8));
            }
        }
        let mut comments = Vec::new();
        for (n, l) in lines {
            let l = l.trim();
            if l.is_empty() {
                continue;
            }
            match l.strip_prefix('#') {
                Some(c) => comments.push(c.trim().to_string()),
                None => return Err(ParseError::new(n, "unexpected content after matrix rows")),
            }
        }
        let m = GfMatrix::new(field, rows, cols, entries, labels)
            .map_err(|e| ParseError::new(3, e.to_string()))?;
        Ok((m, comments))
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors(f: &FieldSpec, mut vs: Vec<Vec<Elem>>) -> usize {
    let len = vs.first().map_or(0, Vec::len);
    let mut rank = 0;
    for pos in 0..len {
        let Some(p) = (rank..vs.len()).find(|&i| !vs[i][pos].is_zero()) else {
            continue;
        };
        vs.swap(rank, p);
        let inv = f.inv(vs[rank][pos]).unwrap();
        let pivot: Vec<Elem> = vs[rank].iter().map(|&v| f.mul(v, inv)).collect();
        for row in vs.iter_mut().skip(rank + 1) {
            let factor = row[pos];
            if !factor.is_zero() {
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = f.sub(*v, f.mul(factor, pv));
                }
            }
        }
        rank += 1;
        if rank == vs.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<FieldSpec> {
        FieldSpec::shared(q).unwrap()
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn fano() -> GfMatrix {
        // columns: all nonzero vectors of GF(2)^3
        let cols: Vec<Vec<Elem>> = (1u8..8)
            .map(|v| (0..3).map(|i| Elem(v >> i & 1)).collect())
            .collect();
        GfMatrix::from_columns(gf(2), 3, &cols, labels(7)).unwrap()
    }

    #[test]
    fn identity_rank_and_empty_rank() {
        let cols: Vec<Vec<Elem>> =
            (0..3).map(|i| (0..3).map(|j| Elem((i == j) as u8)).collect()).collect();
        let m = GfMatrix::from_columns(gf(2), 3, &cols, labels(3)).unwrap();
        assert_eq!(m.rank_of(&["1", "2", "3"]).unwrap(), 3);
        assert_eq!(m.rank_of(&[]).unwrap(), 0);
        assert_eq!(m.rank_of(&["9"]), Err(MatrixError::UnknownLabel("9".into())));
    }

    #[test]
    fn fano_has_exactly_seven_rank_two_triples() {
        let m = fano();
        let mut lines = 0;
        for a in 0..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    if m.rank_of_columns(&[a, b, c]) == 2 {
                        lines += 1;
                    }
                }
            }
        }
        assert_eq!(lines, 7);
    }

    #[test]
    fn standard_form_preserves_column_matroid() {
        let m = fano();
        let sf = m.standard_form(&[2, 4, 6]).unwrap();
        for (i, &b) in [2usize, 4, 6].iter().enumerate() {
            for r in 0..3 {
                assert_eq!(sf.get(r, b), Elem((r == i) as u8));
            }
        }
        for mask in 0u32..128 {
            let cols: Vec<usize> = (0..7).filter(|i| mask >> i & 1 == 1).collect();
            assert_eq!(m.rank_of_columns(&cols), sf.rank_of_columns(&cols));
        }
        // {1,2,3} is a line, so deficient
        assert_eq!(m.standard_form(&[0, 1, 2]), Err(MatrixError::NotABasis));
    }

    #[test]
    fn gfm_round_trip_and_rejections() {
        let m = fano();
        let text = m.to_gfm() + "# basis 1 2 4\n";
        let (back, comments) = GfMatrix::parse_gfm(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(comments, vec!["basis 1 2 4".to_string()]);

        let bad = "field 3\nsize 1 2\nlabels a b\n0 3\n";
        let err = GfMatrix::parse_gfm(bad).unwrap_err();
        assert_eq!(err.line, 4);
        let bad = "field 6\nsize 1 1\nlabels a\n0\n";
        assert_eq!(GfMatrix::parse_gfm(bad).unwrap_err().line, 1);
        let bad = "field 2\nsize 1 2\nlabels a\n0 1\n";
        assert_eq!(GfMatrix::parse_gfm(bad).unwrap_err().line, 3);
        let bad = "field 2\nsize 2 2\nlabels a b\n0 1\n";
        assert_eq!(GfMatrix::parse_gfm(bad).unwrap_err().line, 0);
    }
}
