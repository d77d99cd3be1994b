//! Dense fixed-length bit set with the shifted-OR kernels used by the sumset
//! dynamic program.

use rayon::prelude::*;

const WORD: usize = 64;
/// Words per parallel work unit. Results do not depend on this value.
const CHUNK_WORDS: usize = 1 << 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Least index whose bit is clear, or `None` if every bit is set.
    pub fn first_zero(&self) -> Option<usize> {
        self.words.iter().enumerate().find_map(|(wi, &w)| {
            if w == u64::MAX {
                return None;
            }
            let i = wi * WORD + w.trailing_ones() as usize;
            (i < self.len).then_some(i)
        })
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (d, s) in self.words.iter_mut().zip(&other.words) {
            *d |= *s;
        }
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        self.len == other.len
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// `self |= (src << shift)`, truncated to `self.len()`.
    pub fn or_shifted_up(&mut self, src: &BitSet, shift: usize) {
        debug_assert_eq!(self.len, src.len);
        or_shift_up_words(&mut self.words, 0, &src.words, shift);
        self.mask_tail();
    }

    /// `self |= (src >> shift)`.
    pub fn or_shifted_down(&mut self, src: &BitSet, shift: usize) {
        debug_assert_eq!(self.len, src.len);
        let w = shift / WORD;
        let b = shift % WORD;
        let n = self.words.len();
        for j in 0..n {
            let s = j + w;
            if s >= n {
                break;
            }
            let mut v = src.words[s] >> b;
            if b > 0 && s + 1 < n {
                v |= src.words[s + 1] << (WORD - b);
            }
            self.words[j] |= v;
        }
    }

    /// Returns the union over `shifts` of `src << shift`, truncated. Work is
    /// split into word chunks processed in parallel; each chunk applies all
    /// shifts, so the output is independent of the thread count.
    pub fn union_of_shifts(src: &BitSet, shifts: &[u64]) -> BitSet {
        let mut out = BitSet::new(src.len);
        let usable: Vec<usize> = shifts
            .iter()
            .filter(|&&s| (s as u128) < src.len as u128)
            .map(|&s| s as usize)
            .collect();
        out.words
            .par_chunks_mut(CHUNK_WORDS)
            .enumerate()
            .for_each(|(ci, chunk)| {
                let base = ci * CHUNK_WORDS;
                for &s in &usable {
                    or_shift_up_words(chunk, base, &src.words, s);
                }
            });
        out.mask_tail();
        out
    }

    fn mask_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

/// ORs `src << shift` into `dst`, where `dst` holds words `base..base + dst.len()`
/// of the destination.
#[inline]
fn or_shift_up_words(dst: &mut [u64], base: usize, src: &[u64], shift: usize) {
    let w = shift / WORD;
    let b = shift % WORD;
    let start = w.saturating_sub(base);
    for (i, d) in dst.iter_mut().enumerate().skip(start) {
        let s = base + i - w;
        let mut v = src[s] << b;
        if b > 0 && s > 0 {
            v |= src[s - 1] >> (WORD - b);
        }
        *d |= v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_ones(len: usize, ones: &[usize]) -> BitSet {
        let mut b = BitSet::new(len);
        for &i in ones {
            b.set(i);
        }
        b
    }

    #[test]
    fn shift_up_crosses_word_boundaries() {
        let src = from_ones(200, &[0, 3, 63, 64, 130]);
        let mut dst = BitSet::new(200);
        dst.or_shifted_up(&src, 70);
        assert_eq!(dst.iter_ones().collect::<Vec<_>>(), vec![70, 73, 133, 134]);
    }

    #[test]
    fn shift_down_crosses_word_boundaries() {
        let src = from_ones(200, &[0, 3, 63, 64, 130, 199]);
        let mut dst = BitSet::new(200);
        dst.or_shifted_down(&src, 61);
        assert_eq!(dst.iter_ones().collect::<Vec<_>>(), vec![2, 3, 69, 138]);
    }

    #[test]
    fn first_zero_and_tail() {
        let mut b = BitSet::new(70);
        assert_eq!(b.first_zero(), Some(0));
        for i in 0..70 {
            b.set(i);
        }
        assert_eq!(b.first_zero(), None);
        b.clear(65);
        assert_eq!(b.first_zero(), Some(65));
    }

    #[test]
    fn union_of_shifts_matches_sequential() {
        let len = CHUNK_WORDS * WORD * 2 + 17;
        let src = from_ones(len, &[0, 1, 5, 4000, 300_000, len - 1]);
        let shifts = [0u64, 7, 64, 65, 262_144, len as u64 + 3];
        let par = BitSet::union_of_shifts(&src, &shifts);
        let mut seq = BitSet::new(len);
        for &s in &shifts {
            if (s as usize) < len {
                seq.or_shifted_up(&src, s as usize);
            }
        }
        assert_eq!(par, seq);
    }
}
