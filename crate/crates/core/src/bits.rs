//! Fixed-width bit rows used for adjacency and apex sets.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitRow(Vec<u64>);

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_clear(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.0
    }

    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.0
    }

    pub fn and_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= *b;
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        ones_in(&self.0)
    }

    /// Indices set in every row, in increasing order, starting at `from`.
    pub fn common_ones<'a>(rows: &'a [&'a BitRow], from: usize) -> impl Iterator<Item = usize> + 'a {
        let words = rows.first().map_or(0, |r| r.0.len());
        (from >> 6..words).flat_map(move |wi| {
            let mut w = rows.iter().fold(u64::MAX, |acc, r| acc & r.0[wi]);
            if wi == from >> 6 {
                w &= u64::MAX << (from & 63);
            }
            WordOnes { word: w, base: wi << 6 }
        })
    }
}

pub(crate) fn ones_in(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words
        .iter()
        .enumerate()
        .flat_map(|(wi, &w)| WordOnes { word: w, base: wi << 6 })
}

struct WordOnes {
    word: u64,
    base: usize,
}

impl Iterator for WordOnes {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}
