//! A fixed 256-bit set indexed by subset masks. Backing store for downset
//! vectors and interval posets; one word suffices for universes up to n = 6.

/// Set of up to 256 subset masks, one bit per mask value.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Bits256 {
    // Word 0 holds masks 0..64; comparison order is most significant word first.
    words: [u64; 4],
}

impl Bits256 {
    pub const EMPTY: Bits256 = Bits256 { words: [0; 4] };

    /// All masks below `1 << n` set.
    pub fn full(n: u32) -> Bits256 {
        let mut b = Bits256::EMPTY;
        for m in 0..(1u32 << n) {
            b.insert(m as u8);
        }
        b
    }

    #[inline]
    pub fn contains(&self, m: u8) -> bool {
        self.words[(m >> 6) as usize] >> (m & 63) & 1 != 0
    }

    #[inline]
    pub fn insert(&mut self, m: u8) {
        self.words[(m >> 6) as usize] |= 1 << (m & 63);
    }

    #[inline]
    pub fn remove(&mut self, m: u8) {
        self.words[(m >> 6) as usize] &= !(1 << (m & 63));
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words == [0; 4]
    }

    pub fn union(&self, other: &Bits256) -> Bits256 {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(other.words) {
            *a |= b;
        }
        Bits256 { words: w }
    }

    pub fn intersection(&self, other: &Bits256) -> Bits256 {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(other.words) {
            *a &= b;
        }
        Bits256 { words: w }
    }

    pub fn difference(&self, other: &Bits256) -> Bits256 {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(other.words) {
            *a &= !b;
        }
        Bits256 { words: w }
    }

    pub fn is_subset_of(&self, other: &Bits256) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Iterate set masks in increasing numeric order.
    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..4usize).flat_map(move |i| {
            let mut w = self.words[i];
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some((i as u32 * 64 + bit) as u8)
            })
        })
    }

    pub fn words(&self) -> [u64; 4] {
        self.words
    }

    pub fn from_words(words: [u64; 4]) -> Bits256 {
        Bits256 { words }
    }
}

impl std::fmt::Debug for Bits256 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u8> for Bits256 {
    fn from_iter<T: IntoIterator<Item = u8>>(iter: T) -> Self {
        let mut b = Bits256::EMPTY;
        for m in iter {
            b.insert(m);
        }
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_roundtrip() {
        let b: Bits256 = [3u8, 0, 200, 64, 63].into_iter().collect();
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 3, 63, 64, 200]);
        assert_eq!(b.len(), 5);
        assert!(b.contains(200) && !b.contains(201));
    }

    #[test]
    fn subset_and_setops() {
        let a: Bits256 = [1u8, 2, 3].into_iter().collect();
        let b: Bits256 = [1u8, 2, 3, 100].into_iter().collect();
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert_eq!(b.difference(&a).iter().collect::<Vec<_>>(), vec![100]);
        assert_eq!(a.intersection(&b), a);
        assert_eq!(a.union(&b), b);
    }
}
