//! Dense bit-matrix storage for order relations on `0..n`.

/// Square bit matrix with one u64-packed row per element.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    /// Identity matrix (reflexive relation).
    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words_per_row + col / 64] >> (col % 64) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1 << (col % 64);
    }

    #[inline]
    pub fn clear(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] &= !(1 << (col % 64));
    }

    fn row(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    /// row |= other row; returns true if row changed.
    pub fn union_rows(&mut self, dst: usize, src: usize) -> bool {
        let (d, s) = (dst * self.words_per_row, src * self.words_per_row);
        let mut changed = false;
        for w in 0..self.words_per_row {
            let old = self.bits[d + w];
            let new = old | self.bits[s + w];
            changed |= new != old;
            self.bits[d + w] = new;
        }
        changed
    }

    /// Is row(a) a subset of row(b)?
    pub fn row_subset(&self, a: usize, b: usize) -> bool {
        let (ra, rb) = (a * self.words_per_row, b * self.words_per_row);
        (0..self.words_per_row).all(|w| self.bits[ra + w] & !self.bits[rb + w] == 0)
    }

    /// Column indices set in both rows.
    pub fn row_intersection(&self, a: usize, b: usize) -> Vec<usize> {
        let (ra, rb) = (self.row(a), self.row(b));
        let mut out = Vec::new();
        for w in 0..self.words_per_row {
            let mut word = ra[w] & rb[w];
            while word != 0 {
                let bit = word.trailing_zeros() as usize;
                out.push(w * 64 + bit);
                word &= word - 1;
            }
        }
        out
    }

    /// Column indices set in a row.
    pub fn row_ones(&self, row: usize) -> Vec<usize> {
        let r = self.row(row);
        let mut out = Vec::new();
        for w in 0..self.words_per_row {
            let mut word = r[w];
            while word != 0 {
                let bit = word.trailing_zeros() as usize;
                out.push(w * 64 + bit);
                word &= word - 1;
            }
        }
        out
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for r in 0..self.n {
            for c in 0..self.n {
                write!(f, "{}", if self.get(r, c) { '1' } else { '.' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_union() {
        let mut m = BitMatrix::new(70);
        m.set(0, 65);
        m.set(1, 3);
        assert!(m.get(0, 65));
        assert!(!m.get(0, 3));
        assert!(m.union_rows(0, 1));
        assert!(m.get(0, 3));
        assert!(!m.union_rows(0, 1));
    }

    #[test]
    fn subsets_and_scans() {
        let mut m = BitMatrix::new(5);
        m.set(0, 1);
        m.set(0, 2);
        m.set(1, 1);
        assert!(m.row_subset(1, 0));
        assert!(!m.row_subset(0, 1));
        assert_eq!(m.row_ones(0), vec![1, 2]);
        assert_eq!(m.row_intersection(0, 1), vec![1]);
    }
}
