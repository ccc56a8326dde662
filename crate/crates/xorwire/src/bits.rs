//! Bit-packed vectors over the two-element field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::Gf2Error;

const WORD_BITS: usize = 64;

/// A fixed-length vector over GF(2), packed 64 coordinates per word.
///
/// Coordinates are 0-based throughout the API. Text formats and CLI output
/// number them 1..n; the serializers translate at that boundary.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// The vector with a single 1 at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
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
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "index {index} out of range for length {}",
            self.len
        );
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.len,
            "index {index} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    /// Number of coordinates equal to 1 (the Hamming weight |v|).
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `(self AND other).weight()` without allocating.
    #[inline]
    pub fn weight_and(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn lowest_set_bit(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn highest_set_bit(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(k * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    /// Indices of the 1 coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &word)| {
            std::iter::successors(if word == 0 { None } else { Some(word) }, |w| {
                let next = w & (w - 1);
                if next == 0 {
                    None
                } else {
                    Some(next)
                }
            })
            .map(move |w| k * WORD_BITS + w.trailing_zeros() as usize)
        })
    }

    /// Compares two equal-length vectors read as integers with coordinate 0
    /// as the least-significant bit.
    pub fn cmp_as_integer(&self, other: &Self) -> Ordering {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Concatenation; part k occupies the coordinates after parts 0..k.
    pub fn concat(parts: &[&BitVector]) -> Self {
        let total = parts.iter().map(|p| p.len).sum();
        let mut out = Self::zeros(total);
        let mut offset = 0;
        for part in parts {
            for i in part.ones() {
                out.set(offset + i, true);
            }
            offset += part.len;
        }
        out
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    #[inline]
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitOrAssign<&BitVector> for BitVector {
    #[inline]
    fn bitor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a |= b;
        }
    }
}

impl BitOr for &BitVector {
    type Output = BitVector;
    fn bitor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out |= rhs;
        out
    }
}

impl BitAndAssign<&BitVector> for BitVector {
    #[inline]
    fn bitand_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a &= b;
        }
    }
}

impl BitAnd for &BitVector {
    type Output = BitVector;
    fn bitand(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out &= rhs;
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Gf2Error> {
        let mut v = BitVector::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                found => return Err(Gf2Error::InvalidBitChar { found, position: i }),
            }
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_zero_vector() {
        assert_eq!(BitVector::zeros(5).weight(), 0);
    }

    #[test]
    fn weight_press_table_row() {
        let v: BitVector = "101110".parse().unwrap();
        assert_eq!(v.weight(), 4);
    }

    #[test]
    fn weight_all_ones() {
        for n in [1, 7, 64, 65, 130] {
            let v = BitVector::from_indices(n, 0..n);
            assert_eq!(v.weight(), n);
        }
    }

    #[test]
    fn ones_roundtrip() {
        let v = BitVector::from_indices(200, [0, 63, 64, 127, 128, 199]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 127, 128, 199]);
        assert_eq!(v.lowest_set_bit(), Some(0));
        assert_eq!(v.highest_set_bit(), Some(199));
    }

    #[test]
    fn integer_order_low_bit_first() {
        let a: BitVector = "100000".parse().unwrap(); // 1
        let b: BitVector = "011000".parse().unwrap(); // 6
        assert_eq!(a.cmp_as_integer(&b), Ordering::Less);
        assert_eq!(b.cmp_as_integer(&a), Ordering::Greater);
        assert_eq!(a.cmp_as_integer(&a), Ordering::Equal);
    }

    #[test]
    fn parse_rejects_bad_chars() {
        let err = "01x".parse::<BitVector>().unwrap_err();
        assert_eq!(
            err,
            Gf2Error::InvalidBitChar {
                found: 'x',
                position: 2
            }
        );
    }

    #[test]
    fn toggling_consistency() {
        // |u ^ v| + 2|u & v| = |u| + |v|
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = (next() % 150) as usize;
            let u = BitVector::from_indices(n, (0..n).filter(|_| next() % 2 == 0));
            let v = BitVector::from_indices(n, (0..n).filter(|_| next() % 2 == 0));
            assert_eq!(
                (&u ^ &v).weight() + 2 * u.weight_and(&v),
                u.weight() + v.weight()
            );
        }
    }
}
