//! Dense linear algebra over F2 on bit-packed matrices.
//!
//! Rows are packed into 64-bit words, row-major. Elimination is XOR of rows
//! with a deterministic pivot rule (lowest row, lowest column), so every basis
//! produced downstream is reproducible run to run.

/// A vector over F2, bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let (w, b) = (i / 64, i % 64);
        if v {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn from_indices(len: usize, idx: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in idx {
            v.flip(i);
        }
        v
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { 1 } else { 0 })?;
        }
        Ok(())
    }
}

/// A matrix over F2, rows bit-packed into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, wpr, bits: vec![0; rows * wpr] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.bits[r * self.wpr + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols, "({r},{c}) out of {}x{}", self.rows, self.cols);
        let w = r * self.wpr + c / 64;
        let b = c % 64;
        if v {
            self.bits[w] |= 1 << b;
        } else {
            self.bits[w] &= !(1 << b);
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.bits[r * self.wpr + c / 64] ^= 1 << (c % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn xor_rows(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.wpr, dst * self.wpr);
        for k in 0..self.wpr {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.wpr {
            self.bits.swap(a * self.wpr + k, b * self.wpr + k);
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        let mut v = BitVec::zeros(self.cols);
        v.words.copy_from_slice(&self.bits[r * self.wpr..(r + 1) * self.wpr]);
        // mask tail bits beyond cols
        if self.cols % 64 != 0 {
            let last = v.words.len() - 1;
            v.words[last] &= (1u64 << (self.cols % 64)) - 1;
        }
        v
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        debug_assert_eq!(v.len, self.cols);
        self.bits[r * self.wpr..(r + 1) * self.wpr].copy_from_slice(&v.words);
    }

    pub fn col(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.flip(r);
            }
        }
        v
    }

    pub fn set_col(&mut self, c: usize, v: &BitVec) {
        debug_assert_eq!(v.len, self.rows);
        for r in 0..self.rows {
            self.set(r, c, v.get(r));
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            let base = r * self.wpr;
            for w in 0..self.wpr {
                let mut word = self.bits[base + w];
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    t.flip(w * 64 + b, r);
                    word &= word - 1;
                }
            }
        }
        t
    }

    /// matrix product over F2 (self * other)
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let base = r * self.wpr;
            let obase = r * out.wpr;
            for w in 0..self.wpr {
                let mut word = self.bits[base + w];
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    let k = w * 64 + b;
                    let kbase = k * other.wpr;
                    for j in 0..other.wpr {
                        out.bits[obase + j] ^= other.bits[kbase + j];
                    }
                    word &= word - 1;
                }
            }
        }
        out
    }

    /// matrix-vector product (column vector)
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len, "dimension mismatch in mul_vec");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let base = r * self.wpr;
            let mut acc = 0u64;
            for w in 0..self.wpr {
                acc ^= self.bits[base + w] & v.words[w];
            }
            if acc.count_ones() % 2 == 1 {
                out.flip(r);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        out
    }

    /// Reduced row echelon form with pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let mut pr = None;
            for i in r..m.rows {
                if m.get(i, c) {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            m.swap_rows(r, pr);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of the null space {x : self * x = 0}, one solution per row.
    pub fn kernel_basis(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    /// Solve self * x = b. Deterministic: free variables set to zero
    /// (lexicographically first solution in pivot order).
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len, self.rows, "rhs length mismatch");
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            let mut row = self.row(r);
            row.words.resize((self.cols + 1).div_ceil(64), 0);
            row.len = self.cols + 1;
            if b.get(r) {
                row.set(self.cols, true);
            }
            aug.set_row(r, &row);
        }
        let (m, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if m.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<BitMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                if self.get(r, c) {
                    aug.set(r, c, true);
                }
            }
            aug.set(r, n + r, true);
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let mut inv = BitMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if m.get(r, n + c) {
                    inv.set(r, c, true);
                }
            }
        }
        Some(inv)
    }

    /// Basis of the row space: the nonzero rows of the rref.
    pub fn row_space_basis(&self) -> BitMatrix {
        let (m, pivots) = self.rref();
        let mut out = BitMatrix::zeros(pivots.len(), self.cols);
        for i in 0..pivots.len() {
            out.set_row(i, &m.row(i));
        }
        out
    }

    /// Basis of the column space, rows of the result are vectors in F2^rows.
    pub fn column_space_basis(&self) -> BitMatrix {
        self.transpose().row_space_basis()
    }

    /// Stack rows of two matrices with equal column count.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        for r in 0..self.rows {
            out.set_row(r, &self.row(r));
        }
        for r in 0..other.rows {
            out.set_row(self.rows + r, &other.row(r));
        }
        out
    }

    /// Kronecker product (for tensor constructions).
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                if !self.get(r1, c1) {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        if other.get(r2, c2) {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, true);
                        }
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", if self.get(r, c) { 1 } else { 0 })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Does the row space of `m` contain `v`?
pub fn row_space_contains(m: &BitMatrix, v: &BitVec) -> bool {
    let mut one = BitMatrix::zeros(1, v.len());
    one.set_row(0, v);
    m.vstack(&one).rank() == m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[u8]]) -> BitMatrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = BitMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[test]
    fn rref_identity() {
        let m = BitMatrix::identity(3);
        let (r, p) = m.rref();
        assert_eq!(r, m);
        assert_eq!(p, vec![0, 1, 2]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rref_repeated_row() {
        let m = from_rows(&[&[1, 1], &[1, 1]]);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0]);
        assert!(r.get(0, 0) && r.get(0, 1));
        assert!(!r.get(1, 0) && !r.get(1, 1));
    }

    #[test]
    fn rank_matches_bruteforce_rowspace() {
        // rank by exhaustive row-span enumeration on 6x6 matrices
        let mut rng = crate::testutil::SplitMix64::new(0xC0FFEE);
        for _ in 0..50 {
            let mut m = BitMatrix::zeros(6, 6);
            for r in 0..6 {
                for c in 0..6 {
                    if rng.next_u64() & 1 == 1 {
                        m.set(r, c, true);
                    }
                }
            }
            let mut span = std::collections::BTreeSet::new();
            span.insert(0u64);
            for mask in 1u32..64 {
                let mut acc = 0u64;
                for r in 0..6 {
                    if (mask >> r) & 1 == 1 {
                        let mut rowbits = 0u64;
                        for c in 0..6 {
                            if m.get(r, c) {
                                rowbits |= 1 << c;
                            }
                        }
                        acc ^= rowbits;
                    }
                }
                span.insert(acc);
            }
            let expect = (span.len() as f64).log2() as usize;
            assert_eq!(m.rank(), expect);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn kernel_identity_and_zero() {
        assert_eq!(BitMatrix::identity(4).kernel_basis().rows(), 0);
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().rows(), 3);
        let m = from_rows(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert!(k.get(0, 0) && k.get(0, 1));
    }

    #[test]
    fn kernel_rank_nullity() {
        let mut rng = crate::testutil::SplitMix64::new(42);
        for _ in 0..30 {
            let rows = 1 + (rng.next_u64() % 64) as usize;
            let cols = 1 + (rng.next_u64() % 64) as usize;
            let mut m = BitMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.next_u64() & 1 == 1 {
                        m.set(r, c, true);
                    }
                }
            }
            let k = m.kernel_basis();
            assert_eq!(k.rows() + m.rank(), cols);
            for i in 0..k.rows() {
                assert!(m.mul_vec(&k.row(i)).is_zero());
            }
            // rows of k linearly independent
            assert_eq!(k.rank(), k.rows());
        }
    }

    #[test]
    fn solve_cases() {
        let id = BitMatrix::identity(3);
        let b = BitVec::from_indices(3, &[0, 2]);
        assert_eq!(id.solve(&b).unwrap(), b);

        let m = from_rows(&[&[1, 1]]);
        let b = BitVec::from_indices(1, &[0]);
        let x = m.solve(&b).unwrap();
        // deterministic: lexicographically first in pivot order -> x = [1,0]
        assert!(x.get(0) && !x.get(1));

        let z = from_rows(&[&[0, 0]]);
        assert!(z.solve(&b).is_none());
    }

    #[test]
    fn solve_iff_in_column_space() {
        let mut rng = crate::testutil::SplitMix64::new(7);
        for _ in 0..50 {
            let rows = 1 + (rng.next_u64() % 12) as usize;
            let cols = 1 + (rng.next_u64() % 12) as usize;
            let mut m = BitMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.next_u64() & 1 == 1 {
                        m.set(r, c, true);
                    }
                }
            }
            let mut b = BitVec::zeros(rows);
            for r in 0..rows {
                if rng.next_u64() & 1 == 1 {
                    b.set(r, true);
                }
            }
            let mut aug = BitMatrix::zeros(rows, cols + 1);
            for r in 0..rows {
                for c in 0..cols {
                    if m.get(r, c) {
                        aug.set(r, c, true);
                    }
                }
                if b.get(r) {
                    aug.set(r, cols, true);
                }
            }
            let solvable = aug.rank() == m.rank();
            match m.solve(&b) {
                Some(x) => {
                    assert!(solvable);
                    assert_eq!(m.mul_vec(&x), b);
                }
                None => assert!(!solvable),
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = from_rows(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        assert!(from_rows(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }
}
