//! Word-parallel bitset kernels used by the sumset, difference-set and
//! cyclic convolutions.

/// Fixed-length dense bitset over `[0, len)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::new(len);
        for i in indices {
            b.set(i);
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// `self |= src << shift`, truncated to `self.len`.
    pub fn or_shifted_left(&mut self, src: &Bits, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let n = self.words.len();
        for (i, &w) in src.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + ws;
            if lo >= n {
                break;
            }
            self.words[lo] |= w << bs;
            if bs != 0 && lo + 1 < n {
                self.words[lo + 1] |= w >> (64 - bs);
            }
        }
        self.mask_tail();
    }

    /// `self |= src >> shift`, truncated to `self.len`.
    pub fn or_shifted_right(&mut self, src: &Bits, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let n = self.words.len();
        for i in 0..n {
            let j = i + ws;
            if j >= src.words.len() {
                break;
            }
            let mut w = src.words[j] >> bs;
            if bs != 0 && j + 1 < src.words.len() {
                w |= src.words[j + 1] << (64 - bs);
            }
            self.words[i] |= w;
        }
        self.mask_tail();
    }

    /// Bitwise OR in place; both operands must have the same length.
    pub fn or_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Rotation by `shift` inside `[0, len)`: bit `i` moves to `(i + shift) % len`.
    pub fn rotated_left(&self, shift: usize) -> Bits {
        let shift = if self.len == 0 { 0 } else { shift % self.len };
        let mut out = Bits::new(self.len);
        out.or_shifted_left(self, shift);
        if shift != 0 {
            out.or_shifted_right(self, self.len - shift);
        }
        out
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}
