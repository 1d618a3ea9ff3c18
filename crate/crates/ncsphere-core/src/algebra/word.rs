//! Generator words: sequences of (generator, power) pairs with adjacent pairs
//! over distinct generators; the empty sequence is the unit.

pub type GenIdx = u8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct Word(Vec<(GenIdx, u32)>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: GenIdx) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn power(g: GenIdx, n: u32) -> Self {
        if n == 0 {
            Word::one()
        } else {
            Word(vec![(g, n)])
        }
    }

    /// Builds a word from a flat letter sequence, merging equal neighbours.
    pub fn from_flat(letters: &[GenIdx]) -> Self {
        let mut pairs: Vec<(GenIdx, u32)> = Vec::new();
        for &g in letters {
            match pairs.last_mut() {
                Some((h, n)) if *h == g => *n += 1,
                _ => pairs.push((g, 1)),
            }
        }
        Word(pairs)
    }

    pub fn from_pairs(pairs: Vec<(GenIdx, u32)>) -> Self {
        let flat: Vec<GenIdx> = pairs
            .iter()
            .flat_map(|&(g, n)| std::iter::repeat(g).take(n as usize))
            .collect();
        Word::from_flat(&flat)
    }

    pub fn flatten(&self) -> Vec<GenIdx> {
        self.0
            .iter()
            .flat_map(|&(g, n)| std::iter::repeat(g).take(n as usize))
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, n)| n).sum()
    }

    pub fn pairs(&self) -> &[(GenIdx, u32)] {
        &self.0
    }

    /// Concatenation (free product of words).
    pub fn concat(&self, other: &Word) -> Word {
        let mut flat = self.flatten();
        flat.extend(other.flatten());
        Word::from_flat(&flat)
    }

    /// Reversal with a generator substitution, used by the involution.
    pub fn reverse_map(&self, f: impl Fn(GenIdx) -> GenIdx) -> Word {
        let mut flat = self.flatten();
        flat.reverse();
        let mapped: Vec<GenIdx> = flat.into_iter().map(f).collect();
        Word::from_flat(&mapped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_flat_merges_neighbours() {
        let w = Word::from_flat(&[0, 0, 1, 0]);
        assert_eq!(w.pairs(), &[(0, 2), (1, 1), (0, 1)]);
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn empty_is_unit() {
        assert!(Word::from_flat(&[]).is_one());
        assert_eq!(Word::one().concat(&Word::generator(2)), Word::generator(2));
    }
}
