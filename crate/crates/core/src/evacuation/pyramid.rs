use serde::Serialize;

use super::{chain_to_partition, delta_direct, interval_middles, partition_chain, Composition};
use crate::error::{Error, Result};
use crate::stylic::SetPartition;
use crate::word::{Alphabet, LetterSet};

/// The growth diagram of `R`. Row `i` is the chain of `Δ^i(R)`, starting
/// from the empty composition; it has `m - i + 1` entries where `m = |R|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct EvacuationPyramid {
    rows: Vec<Vec<Composition>>,
}

fn chain_from_empty(r: &SetPartition) -> Vec<Composition> {
    std::iter::once(Composition::empty()).chain(partition_chain(r)).collect()
}

impl EvacuationPyramid {
    pub fn size(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<Composition>] {
        &self.rows
    }

    /// Entry `t` of the north-east path `i`.
    pub fn get(&self, i: usize, t: usize) -> &Composition {
        &self.rows[i][t]
    }

    /// The `j`-th north-west path counted from the right, bottom first.
    pub fn north_west(&self, j: usize) -> Vec<Composition> {
        let m = self.size();
        (0..=m - j).map(|t| self.rows[m - j - t][t].clone()).collect()
    }

    /// Every arrow, north-east then north-west, as pairs `(from, to)`.
    pub fn arrows(&self) -> Vec<(&Composition, &Composition)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for t in 0..row.len().saturating_sub(1) {
                out.push((&row[t], &row[t + 1]));
                if i > 0 {
                    out.push((&row[t], &self.rows[i - 1][t + 1]));
                }
            }
        }
        out
    }

    pub fn all_arrows_are_covers(&self) -> bool {
        self.arrows().iter().all(|(a, b)| a.is_covered_by(b))
    }
}

/// The pyramid computed from the chains of `R, Δ(R), Δ²(R), ...`.
pub fn build_pyramid(r: &SetPartition) -> EvacuationPyramid {
    let mut rows = Vec::new();
    let mut current = r.clone();
    loop {
        rows.push(chain_from_empty(&current));
        if current.is_empty() {
            break;
        }
        current = delta_direct(&current).expect("nonempty");
    }
    EvacuationPyramid { rows }
}

/// The pyramid grown from its left side and bottom row by the rhombus rule.
pub fn grow_pyramid(left: &[Composition]) -> Result<EvacuationPyramid> {
    let m = left.len().saturating_sub(1);
    if left.first() != Some(&Composition::empty()) {
        return Err(Error::domain("the left side must start at the empty composition"));
    }
    let mut rows = vec![left.to_vec()];
    for i in 0..m {
        let prev = &rows[i];
        let mut row = vec![Composition::empty()];
        for t in 1..=m - i - 1 {
            let (c1, c2, c3) = (&row[t - 1], &prev[t], &prev[t + 1]);
            let middles = interval_middles(c1, c3)?;
            let c4 = match middles.as_slice() {
                [only] => only.clone(),
                [a, b] if a == c2 => b.clone(),
                [a, b] if b == c2 => a.clone(),
                _ => return Err(Error::domain(format!("{c2} is not between {c1} and {c3}"))),
            };
            row.push(c4);
        }
        rows.push(row);
    }
    Ok(EvacuationPyramid { rows })
}

/// Evacuation read off the right side of the grown pyramid.
pub fn evac_via_pyramid(r: &SetPartition, alphabet: Alphabet) -> Result<SetPartition> {
    alphabet.check_set(r.ground())?;
    let pyramid = grow_pyramid(&chain_from_empty(r))?;
    let letters: LetterSet = r.ground().iter().map(|x| alphabet.reverse_letter(x)).collect();
    chain_to_partition(&pyramid.north_west(0), letters)
}
