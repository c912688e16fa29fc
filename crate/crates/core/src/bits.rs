use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

const WORD_BITS: usize = 64;

/// Fixed-length bit vector over GF(2), packed into 64-bit words.
///
/// Bit `i` of the vector is bit `i % 64` of word `i / 64`; unused high bits of
/// the last word are kept zero. Ordering is lexicographic by bit index with
/// `0 < 1`, so the all-zero vector sorts first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Length-`len` vector with a single bit set.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut bits = BitString::zeros(len);
        bits.set(index, true);
        bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of bit strings with different lengths");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// GF(2) inner product: parity of the bitwise AND.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of bit strings with different lengths");
        let mut acc = 0u64;
        for (w, o) in self.words.iter().zip(&other.words) {
            acc ^= w & o;
        }
        acc.count_ones() % 2 == 1
    }

    /// Parity of the AND of this vector with the XOR of two others, without
    /// materialising the XOR.
    pub fn dot_xor(&self, a: &Self, b: &Self) -> bool {
        let mut acc = 0u64;
        for ((w, x), y) in self.words.iter().zip(&a.words).zip(&b.words) {
            acc ^= w & (x ^ y);
        }
        acc.count_ones() % 2 == 1
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        for (k, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(k * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |i| self.get(*i))
    }

    /// Concatenation, `self` occupying the low indices.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = BitString::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Copy of the bits in `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len);
        let mut out = BitString::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Binary increment with bit 0 as the least significant bit. Wraps to
    /// zero on overflow.
    pub fn increment(&mut self) {
        for i in 0..self.len {
            if self.get(i) {
                self.set(i, false);
            } else {
                self.set(i, true);
                return;
            }
        }
    }

    /// Low bits packed into a word; requires `len <= 64`.
    pub fn as_word(&self) -> u64 {
        assert!(self.len <= WORD_BITS, "bit string too long for a word");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= WORD_BITS);
        let mut bits = BitString::zeros(len);
        if len > 0 {
            let mask = if len == WORD_BITS { !0 } else { (1u64 << len) - 1 };
            bits.words[0] = word & mask;
        }
        bits
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic by bit index: reversing the bits of each word makes
        // bit 0 the most significant, so plain word comparison applies.
        self.len.cmp(&other.len).then_with(|| {
            for (w, o) in self.words.iter().zip(&other.words) {
                if w != o {
                    return w.reverse_bits().cmp(&o.reverse_bits());
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}
