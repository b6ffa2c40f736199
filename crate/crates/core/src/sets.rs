//! Bitset over point indices.
//!
//! Small universes (every builtin system and every hyperspace base) fit in
//! the first word, so most operations touch a single `u64`.

use std::fmt;

use serde::{Deserialize, Serialize};

const WORD: usize = 64;

/// A finite set of point indices, stored as little-endian bit words.
///
/// Trailing zero words are always trimmed, so equality and hashing are
/// structural.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(point: usize) -> Self {
        let mut s = Self::empty();
        s.insert(point);
        s
    }

    /// All points `0..n`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / WORD];
        if n % WORD != 0 {
            words.push((1u64 << (n % WORD)) - 1);
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self { words: vec![mask] };
        s.trim();
        s
    }

    /// The set as a single word, if every member is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn insert(&mut self, point: usize) {
        let (w, b) = (point / WORD, point % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << b;
    }

    pub fn remove(&mut self, point: usize) {
        let (w, b) = (point / WORD, point % WORD);
        if let Some(word) = self.words.get_mut(w) {
            *word &= !(1u64 << b);
            self.trim();
        }
    }

    pub fn contains(&self, point: usize) -> bool {
        let (w, b) = (point / WORD, point % WORD);
        self.words.get(w).is_some_and(|word| word >> b & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Largest member plus one, or zero for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * WORD + (WORD - w.leading_zeros() as usize),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        s.trim();
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Self { words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    /// Image of the set under a point map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Self {
        self.iter().map(f).collect()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::empty();
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Ok(v.into_iter().collect())
    }
}

/// Non-empty submasks of `mask` in increasing numeric order.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    // Enumerate by counting through the compressed index space so the
    // output is ascending.
    let bits: Vec<u32> = (0..64).filter(|b| mask >> b & 1 == 1).collect();
    let count = if bits.len() >= 64 {
        u64::MAX
    } else {
        (1u64 << bits.len()) - 1
    };
    (1..=count).map(move |idx| {
        let mut m = 0u64;
        for (i, b) in bits.iter().enumerate() {
            if idx >> i & 1 == 1 {
                m |= 1u64 << b;
            }
        }
        m
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_compares_structurally() {
        let mut a = PointSet::singleton(70);
        a.remove(70);
        assert_eq!(a, PointSet::empty());
        assert!(a.is_empty());
        let b: PointSet = [3, 1, 65].into_iter().collect();
        assert_eq!(b.to_vec(), vec![1, 3, 65]);
        assert_eq!(b.len(), 3);
        assert_eq!(b.bound(), 66);
        assert_eq!(b.to_mask(), None);
    }

    #[test]
    fn set_algebra() {
        let a = PointSet::from_mask(0b1011);
        let b = PointSet::from_mask(0b0110);
        assert_eq!(a.intersection(&b), PointSet::from_mask(0b0010));
        assert_eq!(a.union(&b), PointSet::from_mask(0b1111));
        assert_eq!(a.difference(&b), PointSet::from_mask(0b1001));
        assert!(PointSet::from_mask(0b0010).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(PointSet::full(3), PointSet::from_mask(0b111));
        assert_eq!(PointSet::full(64).len(), 64);
    }

    #[test]
    fn submasks_ascend() {
        let subs: Vec<u64> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).count(), 0);
    }
}
