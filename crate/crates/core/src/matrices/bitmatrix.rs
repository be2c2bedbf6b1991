use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Dense row-major bit-packed 0/1 matrix. Each row occupies `stride` words;
/// bits past `cols` in the last word of a row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseMatrixError {
    pub line: usize,
    pub message: String,
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl BooleanMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BooleanMatrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        BooleanMatrix::zeros(rows, cols).complement()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BooleanMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BooleanMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from 0/1 rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = BooleanMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Words per row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of bounds");
        let w = &mut self.bits[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> Vec<usize> {
        ones_of(self.row_words(i)).collect()
    }

    pub fn row_weight(&self, i: usize) -> u64 {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum()
    }

    pub fn row_weights(&self) -> Vec<u64> {
        (0..self.rows).map(|i| self.row_weight(i)).collect()
    }

    /// Number of 1-entries.
    pub fn weight(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        let tail = tail_mask(self.cols);
        for i in 0..self.rows {
            let row = out.row_words_mut(i);
            for w in row.iter_mut() {
                *w = !*w;
            }
            if let Some(last) = row.last_mut() {
                *last &= tail;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = BooleanMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in ones_of(self.row_words(i)) {
                t.bits[j * t.stride + i / 64] |= 1 << (i % 64);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// True iff every entry of `rows x cols` is 1.
    pub fn is_all_ones_on(&self, rows: &[usize], cols: &[usize]) -> bool {
        rows.iter().all(|&i| {
            cols.iter()
                .all(|&j| i < self.rows && j < self.cols && self.get(i, j))
        })
    }

    /// Renders the text format: `<rows> <cols>` then one `0`/`1` line per
    /// row, LF-terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1) + 16);
        out.push_str(&format!("{} {}\n", self.rows, self.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(if self.get(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, ParseMatrixError> {
        let err = |line: usize, message: String| ParseMatrixError { line, message };
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or_default();
        let dims: Vec<&str> = header.split(' ').collect();
        let [r, c] = dims.as_slice() else {
            return Err(err(1, format!("expected `<rows> <cols>`, got {header:?}")));
        };
        let parse_dim = |s: &str| {
            s.parse::<usize>()
                .ok()
                .filter(|v| v.to_string() == s)
                .ok_or_else(|| err(1, format!("bad dimension {s:?}")))
        };
        let (rows, cols) = (parse_dim(r)?, parse_dim(c)?);
        let mut m = BooleanMatrix::zeros(rows, cols);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| err(i + 2, "missing row".into()))?;
            if line.len() != cols {
                return Err(err(
                    i + 2,
                    format!("expected {cols} characters, got {}", line.len()),
                ));
            }
            for (j, ch) in line.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    other => {
                        return Err(err(i + 2, format!("unexpected byte {:?}", other as char)))
                    }
                }
            }
        }
        // Exactly one trailing LF after the last row.
        match (lines.next(), lines.next()) {
            (Some(""), None) => Ok(m),
            _ => Err(err(
                rows + 2,
                "expected end of input after final newline".into(),
            )),
        }
    }
}

impl FromStr for BooleanMatrix {
    type Err = ParseMatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BooleanMatrix::parse_text(s)
    }
}

impl fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols <= 64 * 64 {
            write!(f, "BooleanMatrix(\n{})", self.to_text())
        } else {
            write!(
                f,
                "BooleanMatrix({}x{}, weight {})",
                self.rows,
                self.cols,
                self.weight()
            )
        }
    }
}

fn tail_mask(cols: usize) -> u64 {
    match cols % 64 {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

/// Indices of set bits in a word slice, ascending.
pub(crate) fn ones_of(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                wi * 64 + b
            })
        })
    })
}

pub(crate) fn and_count(a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as u64)
        .sum()
}
