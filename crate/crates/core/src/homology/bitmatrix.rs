//! Dense matrices over GF(2), one bit per entry, rows packed into `u64` words.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrixF2 {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrixF2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        BitMatrixF2 {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    /// Builds a matrix whose row `i` has ones exactly in the columns listed
    /// in `rows[i]`. Repeated columns cancel.
    pub fn from_row_supports<I, R>(rows: I, cols: usize) -> Self
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[usize]>,
    {
        let rows: Vec<R> = rows.into_iter().collect();
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for &j in r.as_ref() {
                m.flip(i, j);
            }
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if self.get(i, j) != value {
            self.flip(i, j);
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.stride + j / WORD] ^= 1 << (j % WORD);
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (w, &word) in self.row_words(i).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let j = w * WORD + bits.trailing_zeros() as usize;
                    t.flip(j, i);
                    bits &= bits - 1;
                }
            }
        }
        t
    }

    /// Appends a row; returns its index.
    pub fn push_row(&mut self, support: &[usize]) -> usize {
        self.data.extend(std::iter::repeat_n(0, self.stride));
        self.rows += 1;
        for &j in support {
            self.flip(self.rows - 1, j);
        }
        self.rows - 1
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        self.clone().into_row_echelon()
    }

    /// Gaussian elimination in place; returns the rank.
    pub fn into_row_echelon(mut self) -> usize {
        let stride = self.stride;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let w = col / WORD;
            let bit = 1u64 << (col % WORD);
            let Some(pivot) = (rank..self.rows).find(|&r| self.data[r * stride + w] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in w..stride {
                    self.data.swap(pivot * stride + k, rank * stride + k);
                }
            }
            let (head, tail) = self.data.split_at_mut((rank + 1) * stride);
            let pivot_row = &head[rank * stride..];
            for row in tail.chunks_exact_mut(stride) {
                if row[w] & bit != 0 {
                    for k in w..stride {
                        row[k] ^= pivot_row[k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for BitMatrixF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrixF2 {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
