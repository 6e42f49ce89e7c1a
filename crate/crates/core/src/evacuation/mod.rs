//! Compositions, skew partitions and jeu de taquin, the `Δ` and `evac`
//! operators on set partitions, and the evacuation pyramid.

mod composition;
mod pyramid;
mod skew;

pub use composition::{chain_to_partition, interval_middles, partition_chain, Composition};
pub use pyramid::{build_pyramid, evac_via_pyramid, grow_pyramid, EvacuationPyramid};
pub use skew::{
    all_skew_partitions, downward_move, downward_slide, jdt, jdt_outcomes, random_skew_partition, skew_row_word,
    skew_row_word_with_hole, slide_hole, Cell, JdtStrategy, MoveOutcome, SkewPartition,
    SkewPartitionWithHole,
};

use crate::error::{Error, Result};
use crate::stylic::SetPartition;
use crate::word::{Alphabet, Letter, LetterSet, Word};

/// The block index `e(R)`, 1-based.
pub fn e_of(r: &SetPartition) -> Result<usize> {
    if r.is_empty() {
        return Err(Error::domain("e(R) of the empty partition"));
    }
    let w: Vec<Letter> = r.blocks().iter().flat_map(|b| b.iter()).collect();
    let minima: Vec<Letter> = r.blocks().iter().map(|b| b.smallest().unwrap()).collect();
    let mut e = 1;
    let mut pos = 0;
    while let Some((p, &m)) = w[pos + 1..].iter().enumerate().min_by_key(|&(_, &v)| v) {
        match minima.iter().position(|&x| x == m) {
            Some(j) => {
                e = j + 1;
                pos += 1 + p;
            }
            None => break,
        }
    }
    Ok(e)
}

/// `Δ(R)` by moving block minima down along the blocks `1..e`.
pub fn delta_direct(r: &SetPartition) -> Result<SetPartition> {
    let e = e_of(r)?;
    let blocks = r.blocks();
    let k = blocks.len();
    let minima: Vec<Letter> = blocks.iter().map(|b| b.smallest().unwrap()).collect();
    let mut out = Vec::with_capacity(k);
    for (j, b) in blocks.iter().enumerate() {
        let b = if j + 1 < e {
            b.without(minima[j]).with(minima[j + 1])
        } else if j + 1 == e {
            b.without(minima[j])
        } else {
            *b
        };
        if b.is_empty() {
            assert_eq!(j + 1, k, "only the last block may empty out");
            continue;
        }
        out.push(b);
    }
    SetPartition::new(out)
}

/// `Δ(R)` by jeu de taquin from a hole at the minimum. Also returns the trail.
pub fn delta_jdt(r: &SetPartition) -> Result<(SetPartition, Vec<Letter>)> {
    let s = SkewPartitionWithHole::without_minimum(r)?;
    let (done, trail) = slide_hole(&s);
    Ok((done.to_partition().expect("no inner shape"), trail))
}

/// Evacuation of a partition of a subset of `alphabet`. The result is a
/// partition of the mirrored ground set.
pub fn evac(r: &SetPartition, alphabet: Alphabet) -> Result<SetPartition> {
    alphabet.check_set(r.ground())?;
    let mut stack = Vec::new();
    let mut current = r.clone();
    while !current.is_empty() {
        let b = current.ground().smallest().unwrap();
        stack.push((alphabet.reverse_letter(b), e_of(&current)?));
        current = delta_direct(&current)?;
    }
    let mut blocks: Vec<LetterSet> = Vec::new();
    for (x, e) in stack.into_iter().rev() {
        if e == blocks.len() + 1 {
            blocks.push(LetterSet::singleton(x));
        } else if e <= blocks.len() {
            blocks[e - 1].insert(x);
        } else {
            return Err(Error::domain(format!("block {e} out of range")));
        }
    }
    SetPartition::new(blocks)
}

/// `w ∖ x`: every occurrence of `x` removed.
pub fn remove_letter(w: &Word, x: Letter) -> Word {
    w.remove_letter(x)
}

/// `R ∖ z`: `z` dropped from its block, and the block with it if emptied.
pub fn remove_from_partition(r: &SetPartition, z: Letter) -> SetPartition {
    r.remove(z)
}
