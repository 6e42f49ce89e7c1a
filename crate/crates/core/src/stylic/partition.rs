use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{parse_letters, Alphabet, Letter, LetterSet, LetterStyle};

/// A partition of a subset of the alphabet. Blocks are kept sorted by their
/// minima.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<LetterSet>", into = "Vec<LetterSet>")]
pub struct SetPartition {
    blocks: Vec<LetterSet>,
}

impl SetPartition {
    pub fn empty() -> Self {
        SetPartition::default()
    }

    /// Blocks in any order; they must be nonempty and pairwise disjoint.
    pub fn new(mut blocks: Vec<LetterSet>) -> Result<Self> {
        let mut seen = LetterSet::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::domain("empty block"));
            }
            if !b.intersection(seen).is_empty() {
                return Err(Error::domain(format!(
                    "blocks overlap in {:?}",
                    b.intersection(seen)
                )));
            }
            seen = seen.union(*b);
        }
        blocks.sort_by_key(|b| b.smallest());
        Ok(SetPartition { blocks })
    }

    pub(crate) fn from_sorted(blocks: Vec<LetterSet>) -> Self {
        debug_assert!(blocks.windows(2).all(|p| p[0].smallest() < p[1].smallest()));
        debug_assert!(blocks.iter().all(|b| !b.is_empty()));
        SetPartition { blocks }
    }

    pub fn blocks(&self) -> &[LetterSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground(&self) -> LetterSet {
        self.blocks.iter().fold(LetterSet::EMPTY, |a, b| a.union(*b))
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: Letter) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(x))
    }

    /// Drop `x` from its block, and the block too if it empties.
    pub fn remove(&self, x: Letter) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.without(x))
            .filter(|b| !b.is_empty())
            .collect();
        SetPartition::new(blocks).expect("removal keeps a partition")
    }

    /// Drop the largest letter of the ground set.
    pub fn remove_max(&self) -> SetPartition {
        match self.ground().largest() {
            Some(z) => self.remove(z),
            None => self.clone(),
        }
    }

    /// Relabel every letter with `f`, which must be injective on the ground set.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(&f).collect())
            .collect();
        SetPartition::new(blocks).expect("relabelling must be injective")
    }

    pub fn shift_down(&self) -> Result<SetPartition> {
        if self.ground().contains(1) {
            return Err(Error::domain("cannot shift letter 1 down"));
        }
        Ok(self.map_letters(|x| x - 1))
    }

    pub fn shift_up(&self) -> SetPartition {
        self.map_letters(|x| x + 1)
    }

    pub fn render(&self, style: LetterStyle) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let style = style.fit(self.ground().largest().unwrap_or(1));
        self.blocks
            .iter()
            .map(|b| b.render(style))
            .collect::<Vec<_>>()
            .join("/")
    }

    /// Every partition of `ground`.
    pub fn all_on(ground: LetterSet) -> Vec<SetPartition> {
        let letters = ground.to_vec();
        let mut out = Vec::new();
        let mut blocks: Vec<LetterSet> = Vec::new();
        fn go(letters: &[Letter], blocks: &mut Vec<LetterSet>, out: &mut Vec<SetPartition>) {
            let Some((&x, rest)) = letters.split_first() else {
                out.push(SetPartition::from_sorted(blocks.clone()));
                return;
            };
            for i in 0..blocks.len() {
                blocks[i].insert(x);
                go(rest, blocks, out);
                blocks[i].remove(x);
            }
            blocks.push(LetterSet::singleton(x));
            go(rest, blocks, out);
            blocks.pop();
        }
        go(&letters, &mut blocks, &mut out);
        out
    }

    /// Every partition of every subset of the alphabet.
    pub fn all_of_subsets(alphabet: Alphabet) -> Vec<SetPartition> {
        alphabet
            .full_set()
            .subsets()
            .flat_map(SetPartition::all_on)
            .collect()
    }
}

impl TryFrom<Vec<LetterSet>> for SetPartition {
    type Error = Error;

    fn try_from(blocks: Vec<LetterSet>) -> Result<Self> {
        SetPartition::new(blocks)
    }
}

impl From<SetPartition> for Vec<LetterSet> {
    fn from(p: SetPartition) -> Self {
        p.blocks
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterStyle::Alpha))
    }
}

/// `"13/28/457/6"`, `"ac/b/de"`, `"1.10/2"`; `""` or `"∅"` for the empty partition.
impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(SetPartition::empty());
        }
        let mut blocks = Vec::new();
        let mut offset = 0;
        for part in s.split('/') {
            let letters = parse_letters(part, offset)?;
            if letters.is_empty() {
                return Err(Error::parse(offset, "empty block"));
            }
            let set: LetterSet = letters.iter().copied().collect();
            if set.len() != letters.len() {
                return Err(Error::parse(offset, format!("repeated letter in block {part:?}")));
            }
            blocks.push(set);
            offset += part.len() + 1;
        }
        SetPartition::new(blocks).map_err(|e| Error::parse(0, e.to_string()))
    }
}

/// Bell numbers `B_0 = 1, B_1 = 1, B_2 = 2, ...` by the Bell triangle.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}
