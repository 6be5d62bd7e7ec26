//! Fixed-width bit vectors for subset-sum reachability.

use alloc::vec;
use alloc::vec::Vec;

/// Bits `0..len`; bits shifted past the end are discarded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; words_for(len)], len }
    }

    /// Only bit 0 set: the empty sub-multiset.
    pub fn unit(len: usize) -> Self {
        let mut b = Self::zeros(len);
        if len > 0 {
            b.words[0] = 1;
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// `self |= self << shift`: adds one more copy of a part of size `shift`.
    pub fn add_part(&mut self, shift: usize) {
        shl_or(&mut self.words, shift, self.len);
    }

    pub fn any_in(&self, lo: usize, hi: usize) -> bool {
        any_in(&self.words, lo, hi.min(self.len.saturating_sub(1)))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64).max(1)
}

/// In-place `w |= w << shift`, keeping only bits below `len`.
pub(crate) fn shl_or(w: &mut [u64], shift: usize, len: usize) {
    if shift == 0 || shift >= len {
        return;
    }
    let ws = shift / 64;
    let bs = shift % 64;
    for i in (ws..w.len()).rev() {
        let mut v = w[i - ws] << bs;
        if bs != 0 && i > ws {
            v |= w[i - ws - 1] >> (64 - bs);
        }
        w[i] |= v;
    }
    mask_tail(w, len);
}

pub(crate) fn mask_tail(w: &mut [u64], len: usize) {
    let rem = len % 64;
    if rem != 0 {
        if let Some(last) = w.get_mut(len / 64) {
            *last &= (1u64 << rem) - 1;
        }
    }
}

/// Any bit set in the inclusive range `lo..=hi`.
pub(crate) fn any_in(w: &[u64], lo: usize, hi: usize) -> bool {
    if lo > hi {
        return false;
    }
    let (lw, hw) = (lo / 64, hi / 64);
    if hw >= w.len() {
        return any_in(w, lo, w.len() * 64 - 1);
    }
    let lo_mask = !0u64 << (lo % 64);
    let hi_mask = !0u64 >> (63 - hi % 64);
    if lw == hw {
        return w[lw] & lo_mask & hi_mask != 0;
    }
    if w[lw] & lo_mask != 0 || w[hw] & hi_mask != 0 {
        return true;
    }
    w[lw + 1..hw].iter().any(|&x| x != 0)
}
