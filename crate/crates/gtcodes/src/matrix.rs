//! Packed binary t x n measurement matrices.
//!
//! Rows are tests, columns are item signatures. Bits are stored twice, in
//! row-major and column-major packed words, so OR/AND sweeps are cheap along
//! either axis. Matrices are immutable after construction.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("column index {index} out of range for {n} columns")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("column {0} appears in its own covering set")]
    SelfInSet(usize),
    #[error("outcome has {got} bits, matrix has {want} rows")]
    LengthMismatch { got: usize, want: usize },
}

#[derive(Debug, Error)]
pub enum GtmError {
    #[error("malformed GTM1 header: {0}")]
    MalformedHeader(String),
    #[error("row {line} has wrong length (expected {expected} bits)")]
    RaggedRow { line: usize, expected: usize },
    #[error("invalid character {ch:?} on line {line}")]
    InvalidCharacter { line: usize, ch: char },
    #[error("file ends after {got} of {want} rows")]
    UnexpectedEof { got: usize, want: usize },
    #[error("unexpected trailing data on line {0}")]
    TrailingData(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A t x n binary measurement matrix with dual packed storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMatrix {
    t: usize,
    n: usize,
    row_stride: usize,
    col_stride: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

/// Mutable staging area for building a matrix bit by bit.
pub struct CodeMatrixBuilder {
    t: usize,
    n: usize,
    row_stride: usize,
    rows: Vec<u64>,
}

impl CodeMatrixBuilder {
    pub fn new(t: usize, n: usize) -> CodeMatrixBuilder {
        assert!(t >= 1 && n >= 1, "matrix dimensions must be positive");
        let row_stride = words_for(n);
        CodeMatrixBuilder {
            t,
            n,
            row_stride,
            rows: vec![0; t * row_stride],
        }
    }

    pub fn set(&mut self, r: usize, c: usize) {
        assert!(r < self.t && c < self.n);
        self.rows[r * self.row_stride + c / WORD_BITS] |= 1u64 << (c % WORD_BITS);
    }

    pub fn build(self) -> CodeMatrix {
        let col_stride = words_for(self.t);
        let mut cols = vec![0u64; self.n * col_stride];
        for r in 0..self.t {
            let row = &self.rows[r * self.row_stride..(r + 1) * self.row_stride];
            for (w, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let c = w * WORD_BITS + bits.trailing_zeros() as usize;
                    cols[c * col_stride + r / WORD_BITS] |= 1u64 << (r % WORD_BITS);
                    bits &= bits - 1;
                }
            }
        }
        let m = CodeMatrix {
            t: self.t,
            n: self.n,
            row_stride: self.row_stride,
            col_stride,
            rows: self.rows,
            cols,
        };
        debug_assert_eq!(
            m.cols
                .iter()
                .map(|w| w.count_ones() as usize)
                .sum::<usize>(),
            m.total_ones(),
            "row-major and column-major storage disagree"
        );
        m
    }
}

impl CodeMatrix {
    pub fn identity(n: usize) -> CodeMatrix {
        let mut b = CodeMatrixBuilder::new(n, n);
        for i in 0..n {
            b.set(i, i);
        }
        b.build()
    }

    pub fn rows(&self) -> usize {
        self.t
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.t && c < self.n);
        self.rows[r * self.row_stride + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    /// Packed bits of column j, one word per 64 rows.
    pub fn col_words(&self, j: usize) -> &[u64] {
        &self.cols[j * self.col_stride..(j + 1) * self.col_stride]
    }

    /// Packed bits of row r, one word per 64 columns.
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.rows[r * self.row_stride..(r + 1) * self.row_stride]
    }

    pub fn col_weight(&self, j: usize) -> usize {
        self.col_words(j)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn total_ones(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check_col(&self, j: usize) -> Result<(), MatrixError> {
        if j >= self.n {
            return Err(MatrixError::IndexOutOfRange {
                index: j,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Row indices where column j has a one.
    pub fn col_support(&self, j: usize) -> Result<Vec<usize>, MatrixError> {
        self.check_col(j)?;
        let mut out = Vec::new();
        for (w, &word) in self.col_words(j).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * WORD_BITS + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        Ok(out)
    }

    /// Entry-wise Boolean OR of the given columns; empty set gives all zeros.
    pub fn or_columns(&self, set: &[usize]) -> Result<Outcome, MatrixError> {
        let mut words = vec![0u64; self.col_stride];
        for &j in set {
            self.check_col(j)?;
            for (acc, &w) in words.iter_mut().zip(self.col_words(j)) {
                *acc |= w;
            }
        }
        Ok(Outcome { t: self.t, words })
    }

    /// |supp(M_i) \ union of supp(M_j) for j in set|.
    pub fn residual_support(&self, i: usize, set: &[usize]) -> Result<usize, MatrixError> {
        self.check_col(i)?;
        if set.contains(&i) {
            return Err(MatrixError::SelfInSet(i));
        }
        let union = self.or_columns(set)?;
        Ok(self
            .col_words(i)
            .iter()
            .zip(&union.words)
            .map(|(&c, &u)| (c & !u).count_ones() as usize)
            .sum())
    }
}

/// A length-t test-result vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    t: usize,
    words: Vec<u64>,
}

impl Outcome {
    pub fn zeros(t: usize) -> Outcome {
        Outcome {
            t,
            words: vec![0; words_for(t)],
        }
    }

    pub fn len(&self) -> usize {
        self.t
    }

    pub fn is_empty(&self) -> bool {
        self.t == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.t);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.t);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * WORD_BITS + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Parse a line of '0'/'1' characters.
    pub fn from_line(line: &str) -> Result<Outcome, GtmError> {
        let line = line.trim_end_matches(['\r', '\n']);
        let mut out = Outcome::zeros(line.len());
        for (i, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => out.flip(i),
                _ => return Err(GtmError::InvalidCharacter { line: 1, ch }),
            }
        }
        Ok(out)
    }

    pub fn to_line(&self) -> String {
        (0..self.t)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }
}

// --- GTM1 text format ---
//
// Line 1: "GTM1 <t> <n>". Then optional "#key=value" comment lines, then
// exactly t lines of n characters from {0,1}. LF line endings, no trailing
// whitespace; row r column c of the file is M_rc.

/// Serialize a matrix (plus metadata comment lines) to GTM1 text.
pub fn to_gtm1(m: &CodeMatrix, metadata: &[(String, String)]) -> String {
    let mut out = String::with_capacity((m.n + 1) * m.t + 64);
    let _ = writeln!(out, "GTM1 {} {}", m.t, m.n);
    for (k, v) in metadata {
        let _ = writeln!(out, "#{k}={v}");
    }
    for r in 0..m.t {
        for c in 0..m.n {
            out.push(if m.get(r, c) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Parse GTM1 text into a matrix and its metadata lines.
pub fn from_gtm1(text: &str) -> Result<(CodeMatrix, Vec<(String, String)>), GtmError> {
    let mut raw: Vec<&str> = text.split('\n').collect();
    if raw.last() == Some(&"") {
        raw.pop(); // the newline terminating the last row
    }
    let mut lines = raw.into_iter().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| GtmError::MalformedHeader("empty input".into()))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("GTM1") {
        return Err(GtmError::MalformedHeader(format!(
            "bad magic in {header:?}"
        )));
    }
    let t: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .filter(|&v| v >= 1)
        .ok_or_else(|| GtmError::MalformedHeader(format!("bad row count in {header:?}")))?;
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .filter(|&v| v >= 1)
        .ok_or_else(|| GtmError::MalformedHeader(format!("bad column count in {header:?}")))?;
    if parts.next().is_some() {
        return Err(GtmError::MalformedHeader(format!(
            "extra fields in {header:?}"
        )));
    }

    let mut metadata = Vec::new();
    let mut builder = CodeMatrixBuilder::new(t, n);
    let mut row = 0usize;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if row == 0 && line.starts_with('#') {
            let body = &line[1..];
            match body.split_once('=') {
                Some((k, v)) => metadata.push((k.to_string(), v.to_string())),
                None => metadata.push((body.to_string(), String::new())),
            }
            continue;
        }
        if row == t {
            return Err(GtmError::TrailingData(lineno));
        }
        if line.len() != n {
            return Err(GtmError::RaggedRow {
                line: lineno,
                expected: n,
            });
        }
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => builder.set(row, c),
                _ => return Err(GtmError::InvalidCharacter { line: lineno, ch }),
            }
        }
        row += 1;
    }
    if row < t {
        return Err(GtmError::UnexpectedEof { got: row, want: t });
    }
    Ok((builder.build(), metadata))
}

pub fn write_gtm1_file(
    path: impl AsRef<Path>,
    m: &CodeMatrix,
    metadata: &[(String, String)],
) -> Result<(), GtmError> {
    fs::write(path, to_gtm1(m, metadata))?;
    Ok(())
}

pub fn read_gtm1_file(
    path: impl AsRef<Path>,
) -> Result<(CodeMatrix, Vec<(String, String)>), GtmError> {
    let text = fs::read_to_string(path)?;
    from_gtm1(&text)
}

/// Brute-force support arithmetic used to cross-check the packed kernels.
#[cfg(test)]
pub(crate) fn residual_by_sets(m: &CodeMatrix, i: usize, set: &[usize]) -> usize {
    use std::collections::BTreeSet;
    let supp: BTreeSet<usize> = m.col_support(i).unwrap().into_iter().collect();
    let mut union = BTreeSet::new();
    for &j in set {
        union.extend(m.col_support(j).unwrap());
    }
    supp.difference(&union).count()
}
