use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stylic::SetPartition;
use crate::word::LetterSet;

/// A finite lower ideal of `P²` under `⪯`, given by its row lengths from
/// the bottom. Any sequence of positive integers is one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain(format!("{parts:?} has a zero part")));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Row `y` (1-based) length, zero past the top.
    pub fn part(&self, y: usize) -> usize {
        y.checked_sub(1).and_then(|i| self.0.get(i)).copied().unwrap_or(0)
    }

    /// Whether the point `(x, y)` lies in the ideal.
    pub fn contains(&self, x: usize, y: usize) -> bool {
        x >= 1 && x <= self.part(y)
    }

    /// Inclusion of ideals.
    pub fn is_subset(&self, other: &Composition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Grow row `y` by one point (`y = len + 1` opens a new row).
    pub fn grow(&self, y: usize) -> Result<Composition> {
        let mut parts = self.0.clone();
        match y {
            y if y >= 1 && y <= parts.len() => parts[y - 1] += 1,
            y if y == parts.len() + 1 => parts.push(1),
            _ => return Err(Error::domain(format!("cannot grow row {y} of {self}"))),
        }
        Ok(Composition(parts))
    }

    /// Compositions covering this one: one part increased, or a new part 1.
    pub fn covers(&self) -> Vec<Composition> {
        (1..=self.len() + 1)
            .map(|y| self.grow(y).expect("row in range"))
            .collect()
    }

    /// Whether `other` covers `self`.
    pub fn is_covered_by(&self, other: &Composition) -> bool {
        other.size() == self.size() + 1 && self.is_subset(other)
    }

    /// The points `(J_y, y)` that are maximal in the ideal.
    pub fn maximal_points(&self) -> Vec<(usize, usize)> {
        (1..=self.len())
            .filter(|&y| self.part(y) > 1 || y == self.len())
            .map(|y| (self.part(y), y))
            .collect()
    }

    /// The shape of a partition: its block sizes.
    pub fn of_partition(r: &SetPartition) -> Composition {
        Composition(r.blocks().iter().map(|b| b.len()).collect())
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `"(2,2,3,1)"`, `"()"`, or the compact digit form `"2231"`.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<usize> = if let Some(inner) = s.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(s.len(), "missing ')'"))?;
            if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse()
                            .map_err(|_| Error::parse(0, format!("bad part {p:?}")))
                    })
                    .collect::<Result<_>>()?
            }
        } else {
            s.chars()
                .enumerate()
                .map(|(i, c)| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse(i, format!("unexpected {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Composition::new(parts).map_err(|e| Error::parse(0, e.to_string()))
    }
}

/// The compositions strictly between `c1` and `c3` when `c3` lies two
/// covering steps above `c1`.
pub fn interval_middles(c1: &Composition, c3: &Composition) -> Result<Vec<Composition>> {
    let middles: Vec<Composition> = c1
        .covers()
        .into_iter()
        .filter(|c2| c2.is_covered_by(c3))
        .collect();
    if middles.is_empty() {
        return Err(Error::domain(format!("{c1} -> {c3} is not an interval of length 2")));
    }
    Ok(middles)
}

/// The chain `C_1 → ... → C_m` obtained by adding the letters of `r` in
/// increasing order. `C_t` is the shape of the `t` smallest letters.
pub fn partition_chain(r: &SetPartition) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut c = Composition::empty();
    for x in r.ground().iter() {
        let y = r.block_of(x).expect("letter of the ground set") + 1;
        c = c.grow(y).expect("blocks are ordered by minima");
        out.push(c.clone());
    }
    out
}

/// Rebuild a partition from a chain starting at `(1)` (or at `()`) and the
/// letters to place, in increasing order.
pub fn chain_to_partition(chain: &[Composition], letters: LetterSet) -> Result<SetPartition> {
    let chain: Vec<&Composition> = chain.iter().filter(|c| !c.is_empty()).collect();
    if chain.len() != letters.len() {
        return Err(Error::domain(format!(
            "chain of length {} for {} letters",
            chain.len(),
            letters.len()
        )));
    }
    let mut blocks: Vec<LetterSet> = Vec::new();
    let mut prev = Composition::empty();
    for (c, x) in chain.into_iter().zip(letters.iter()) {
        if !prev.is_covered_by(c) {
            return Err(Error::domain(format!("{prev} -> {c} is not a covering step")));
        }
        let y = (1..=c.len()).find(|&y| c.part(y) != prev.part(y)).expect("one row grows");
        if y > blocks.len() {
            blocks.push(LetterSet::EMPTY);
        }
        blocks[y - 1].insert(x);
        prev = c.clone();
    }
    SetPartition::new(blocks)
}
