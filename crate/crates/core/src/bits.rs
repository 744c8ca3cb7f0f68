//! Packed GF(2) vectors and the row-reduction primitives built on them.
//!
//! Everything downstream (codeword enumeration, duals, membership tests)
//! reduces to XOR, popcount, and Gaussian elimination over these vectors.

use std::fmt;

const WORD_BITS: usize = 64;

/// A fixed-length vector over GF(2), packed into 64-bit words.
/// Bit `i` lives at `words[i / 64]`, position `i % 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Builds a vector from the positions of its set bits.
    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// GF(2) inner product with `other`.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b))
            .count_ones()
            & 1
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Positions of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}; ", self.len)?;
        if self.len <= 128 {
            for i in 0..self.len {
                write!(f, "{}", u8::from(self.get(i)))?;
            }
        } else {
            write!(f, "weight {}", self.weight())?;
        }
        write!(f, "]")
    }
}

/// A set of rows kept in reduced row-echelon form, with pivots ascending.
/// Supports rank queries, membership of the row space, and null-space bases.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<I>(len: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = BitVec>,
    {
        let mut e = Echelon::new(len);
        for row in rows {
            e.insert(row);
        }
        e
    }

    /// Inserts a row, returning true if it enlarged the row space.
    pub fn insert(&mut self, mut row: BitVec) -> bool {
        assert_eq!(row.len(), self.len, "row length mismatch");
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row.get(p) {
                row.xor_assign(r);
            }
        }
        let Some(pivot) = row.first_one() else {
            return false;
        };
        // Back-substitute so existing rows are clear at the new pivot.
        for r in &mut self.rows {
            if r.get(pivot) {
                r.xor_assign(&row);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, row);
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `word` against the rows; the remainder is zero exactly when
    /// `word` lies in the row space.
    pub fn reduce(&self, word: &BitVec) -> BitVec {
        let mut w = word.clone();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if w.get(p) {
                w.xor_assign(r);
            }
        }
        w
    }

    pub fn contains(&self, word: &BitVec) -> bool {
        self.reduce(word).is_zero()
    }

    /// Basis of `{ x : r · x = 0 for every row r }`, one vector per free
    /// column, in ascending free-column order.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut basis = Vec::with_capacity(self.len - self.rank());
        let mut is_pivot = vec![false; self.len];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.len).filter(|&i| !is_pivot[i]) {
            let mut v = BitVec::zeros(self.len);
            v.set(free, true);
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if r.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn set_get_weight() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert!(v.get(0) && v.get(64) && v.get(129));
        assert!(!v.get(63));
        assert_eq!(v.weight(), 3);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        v.set(64, false);
        assert_eq!(v.weight(), 2);
        assert_eq!(v.first_one(), Some(0));
    }

    #[test]
    fn xor_and_dot() {
        let a = BitVec::from_ones(10, &[1, 3, 5]);
        let b = BitVec::from_ones(10, &[3, 5, 7]);
        let mut c = a.clone();
        c.xor_assign(&b);
        assert_eq!(c, BitVec::from_ones(10, &[1, 7]));
        // |a ∩ b| = 2, even
        assert!(!a.dot(&b));
        assert!(a.dot(&BitVec::from_ones(10, &[1])));
    }

    #[test]
    fn echelon_rank_and_membership() {
        let rows = vec![
            BitVec::from_ones(5, &[0, 1]),
            BitVec::from_ones(5, &[1, 2]),
            BitVec::from_ones(5, &[0, 2]), // dependent
        ];
        let e = Echelon::from_rows(5, rows);
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&BitVec::from_ones(5, &[0, 2])));
        assert!(e.contains(&BitVec::zeros(5)));
        assert!(!e.contains(&BitVec::from_ones(5, &[0])));
        // Reduced form: each pivot column has a single one.
        for (i, &p) in e.pivots().iter().enumerate() {
            for (j, r) in e.rows().iter().enumerate() {
                assert_eq!(r.get(p), i == j);
            }
        }
    }

    #[test]
    fn nullspace_dimension_and_orthogonality() {
        let rows = vec![
            BitVec::from_ones(6, &[0, 1, 2]),
            BitVec::from_ones(6, &[2, 3]),
        ];
        let e = Echelon::from_rows(6, rows);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 6 - e.rank());
        for v in &ns {
            for r in e.rows() {
                assert!(!r.dot(v));
            }
        }
        // Null-space vectors are independent.
        let nse = Echelon::from_rows(6, ns);
        assert_eq!(nse.rank(), 6 - e.rank());
    }

    proptest! {
        #[test]
        fn rank_nullity_and_orthogonality(
            rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 12), 0..8)
        ) {
            let len = 12;
            let rows: Vec<BitVec> = rows
                .into_iter()
                .map(|bits| {
                    let ones: Vec<usize> = bits
                        .iter()
                        .enumerate()
                        .filter_map(|(i, &b)| b.then_some(i))
                        .collect();
                    BitVec::from_ones(len, &ones)
                })
                .collect();
            let e = Echelon::from_rows(len, rows.clone());
            let ns = e.nullspace();
            prop_assert_eq!(e.rank() + ns.len(), len);
            for v in &ns {
                for r in &rows {
                    prop_assert!(!r.dot(v));
                }
            }
            // Every original row is in the span.
            for r in &rows {
                prop_assert!(e.contains(r));
            }
        }
    }
}
