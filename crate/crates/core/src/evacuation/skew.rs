use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Composition;
use crate::error::{Error, Result};
use crate::stylic::SetPartition;
use crate::word::{parse_letters, render_letter, Letter, LetterSet, LetterStyle, Word};

/// A point `(x, y)` of `P²`, both coordinates 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Cell {
    // Ordered row first.
    pub y: usize,
    pub x: usize,
}

impl Cell {
    pub fn new(x: usize, y: usize) -> Self {
        Cell { x, y }
    }

    /// Points covering this one in `⪯`.
    pub fn covers(self) -> impl Iterator<Item = Cell> {
        let up = (self.x == 1).then(|| Cell::new(1, self.y + 1));
        std::iter::once(Cell::new(self.x + 1, self.y)).chain(up)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((x, y): (usize, usize)) -> Self {
        Cell { x, y }
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.x, c.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

fn cells_between(outer: &Composition, inner: &Composition) -> Vec<Cell> {
    (1..=outer.len())
        .flat_map(|y| (inner.part(y) + 1..=outer.part(y)).map(move |x| Cell::new(x, y)))
        .collect()
}

fn check_labels(
    outer: &Composition,
    inner: &Composition,
    hole: Option<Cell>,
    labels: &BTreeMap<Cell, Letter>,
) -> Result<()> {
    if !inner.is_subset(outer) {
        return Err(Error::domain(format!("{inner} is not inside {outer}")));
    }
    let mut expected = cells_between(outer, inner);
    if let Some(h) = hole {
        let Some(i) = expected.iter().position(|&c| c == h) else {
            return Err(Error::domain(format!("hole {h} is not in the skew shape")));
        };
        expected.remove(i);
        for (&d, &v) in labels.iter().filter(|(d, _)| d.covers().any(|k| k == h)) {
            for k in h.covers() {
                if labels.get(&k).is_some_and(|&u| u <= v) {
                    return Err(Error::domain(format!("labels decrease from {d} to {k}")));
                }
            }
        }
    }
    if labels.len() != expected.len() || expected.iter().any(|c| !labels.contains_key(c)) {
        return Err(Error::domain("labels do not match the skew shape"));
    }
    let letters: LetterSet = labels.values().copied().collect();
    if letters.len() != labels.len() {
        return Err(Error::domain("repeated label"));
    }
    for (&c, &v) in labels {
        for k in c.covers() {
            if let Some(&w) = labels.get(&k) {
                if w <= v {
                    return Err(Error::domain(format!("labels decrease from {c} to {k}")));
                }
            }
        }
    }
    Ok(())
}

/// An increasing labelling of the skew ideal `outer ∖ inner`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewPartition {
    outer: Composition,
    inner: Composition,
    labels: BTreeMap<Cell, Letter>,
}

#[derive(Serialize, Deserialize)]
struct RawSkew {
    outer: Composition,
    inner: Composition,
    labels: Vec<(Cell, Letter)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hole: Option<Cell>,
}

impl SkewPartition {
    pub fn new(outer: Composition, inner: Composition, labels: BTreeMap<Cell, Letter>) -> Result<Self> {
        check_labels(&outer, &inner, None, &labels)?;
        Ok(SkewPartition { outer, inner, labels })
    }

    pub fn from_partition(r: &SetPartition) -> Self {
        let mut labels = BTreeMap::new();
        for (i, b) in r.blocks().iter().enumerate() {
            for (j, x) in b.iter().enumerate() {
                labels.insert(Cell::new(j + 1, i + 1), x);
            }
        }
        SkewPartition {
            outer: Composition::of_partition(r),
            inner: Composition::empty(),
            labels,
        }
    }

    pub fn outer(&self) -> &Composition {
        &self.outer
    }

    pub fn inner(&self) -> &Composition {
        &self.inner
    }

    pub fn labels(&self) -> &BTreeMap<Cell, Letter> {
        &self.labels
    }

    pub fn label(&self, c: Cell) -> Option<Letter> {
        self.labels.get(&c).copied()
    }

    pub fn support(&self) -> LetterSet {
        self.labels.values().copied().collect()
    }

    /// The partition read row by row, when the inner shape is empty.
    pub fn to_partition(&self) -> Option<SetPartition> {
        if !self.inner.is_empty() {
            return None;
        }
        let blocks = (1..=self.outer.len())
            .map(|y| (1..=self.outer.part(y)).map(|x| self.labels[&Cell::new(x, y)]).collect())
            .collect();
        Some(SetPartition::from_sorted(blocks))
    }

    /// Open a hole at a maximal point of the inner shape.
    pub fn open_hole(&self, h: Cell) -> Result<SkewPartitionWithHole> {
        if !self.inner.maximal_points().contains(&(h.x, h.y)) {
            return Err(Error::domain(format!("{h} is not a maximal point of {}", self.inner)));
        }
        let mut parts = self.inner.parts().to_vec();
        parts[h.y - 1] -= 1;
        if parts[h.y - 1] == 0 {
            parts.pop();
        }
        Ok(SkewPartitionWithHole {
            outer: self.outer.clone(),
            inner: Composition::new(parts)?,
            labels: self.labels.clone(),
            hole: h,
        })
    }

    pub fn render(&self, style: LetterStyle) -> String {
        render_grid(&self.outer, &self.inner, None, &self.labels, style)
    }
}

/// A skew partition with one unlabelled point of the skew shape, the hole.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewPartitionWithHole {
    outer: Composition,
    inner: Composition,
    labels: BTreeMap<Cell, Letter>,
    hole: Cell,
}

impl SkewPartitionWithHole {
    pub fn new(
        outer: Composition,
        inner: Composition,
        labels: BTreeMap<Cell, Letter>,
        hole: Cell,
    ) -> Result<Self> {
        check_labels(&outer, &inner, Some(hole), &labels)?;
        Ok(SkewPartitionWithHole { outer, inner, labels, hole })
    }

    /// The partition with its minimum removed, leaving a hole at `(1,1)`.
    pub fn without_minimum(r: &SetPartition) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::domain("the empty partition has no minimum"));
        }
        let mut s = SkewPartition::from_partition(r);
        s.labels.remove(&Cell::new(1, 1));
        Ok(SkewPartitionWithHole {
            outer: s.outer,
            inner: Composition::empty(),
            labels: s.labels,
            hole: Cell::new(1, 1),
        })
    }

    pub fn outer(&self) -> &Composition {
        &self.outer
    }

    pub fn inner(&self) -> &Composition {
        &self.inner
    }

    pub fn labels(&self) -> &BTreeMap<Cell, Letter> {
        &self.labels
    }

    pub fn hole(&self) -> Cell {
        self.hole
    }

    /// Labelled points covering the hole.
    pub fn hole_covers(&self) -> Vec<(Cell, Letter)> {
        self.hole
            .covers()
            .filter_map(|c| self.labels.get(&c).map(|&v| (c, v)))
            .collect()
    }

    pub fn is_upper(&self) -> bool {
        self.hole_covers().is_empty()
    }

    pub fn render(&self, style: LetterStyle) -> String {
        render_grid(&self.outer, &self.inner, Some(self.hole), &self.labels, style)
    }
}

fn render_grid(
    outer: &Composition,
    inner: &Composition,
    hole: Option<Cell>,
    labels: &BTreeMap<Cell, Letter>,
    style: LetterStyle,
) -> String {
    if outer.is_empty() {
        return "∅".to_string();
    }
    let max = labels.values().copied().max().unwrap_or(1);
    let style = style.fit(max);
    let sep = if style == LetterStyle::Dotted { "." } else { "" };
    (1..=outer.len())
        .map(|y| {
            let stars = "*".repeat(inner.part(y));
            let rest: Vec<String> = (inner.part(y) + 1..=outer.part(y))
                .map(|x| {
                    let c = Cell::new(x, y);
                    if Some(c) == hole {
                        "_".to_string()
                    } else {
                        render_letter(labels[&c], style)
                    }
                })
                .collect();
            stars + &rest.join(sep)
        })
        .collect::<Vec<_>>()
        .join("/")
}

fn parse_grid(s: &str) -> Result<(Composition, Composition, Option<Cell>, BTreeMap<Cell, Letter>)> {
    let s = s.trim();
    if s.is_empty() || s == "∅" {
        return Ok((Composition::empty(), Composition::empty(), None, BTreeMap::new()));
    }
    let mut outer = Vec::new();
    let mut inner = Vec::new();
    let mut hole = None;
    let mut labels = BTreeMap::new();
    let mut offset = 0;
    for (i, row) in s.split('/').enumerate() {
        let y = i + 1;
        let stars = row.chars().take_while(|&c| c == '*').count();
        let mut x = stars;
        let pieces: Vec<&str> = row[stars..].split('_').collect();
        if pieces.len() > 2 || (pieces.len() == 2 && hole.is_some()) {
            return Err(Error::parse(offset, "more than one hole"));
        }
        for (j, piece) in pieces.iter().enumerate() {
            if j == 1 {
                x += 1;
                hole = Some(Cell::new(x, y));
            }
            let piece = piece.trim_matches('.');
            if piece.is_empty() {
                continue;
            }
            for v in parse_letters(piece, offset)? {
                x += 1;
                labels.insert(Cell::new(x, y), v);
            }
        }
        if x == 0 {
            return Err(Error::parse(offset, "empty row"));
        }
        outer.push(x);
        if stars > 0 {
            if inner.len() != i {
                return Err(Error::parse(offset, "inner rows must come first"));
            }
            inner.push(stars);
        }
        offset += row.len() + 1;
    }
    Ok((Composition::new(outer)?, Composition::new(inner)?, hole, labels))
}

/// Rows from the bottom separated by `/`, `*` for inner points, `_` for
/// the hole: `"**26/*45/138/7"`.
impl FromStr for SkewPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (outer, inner, hole, labels) = parse_grid(s)?;
        if hole.is_some() {
            return Err(Error::parse(0, "unexpected hole"));
        }
        SkewPartition::new(outer, inner, labels).map_err(|e| Error::parse(0, e.to_string()))
    }
}

impl FromStr for SkewPartitionWithHole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (outer, inner, hole, labels) = parse_grid(s)?;
        let hole = hole.ok_or_else(|| Error::parse(0, "no hole"))?;
        SkewPartitionWithHole::new(outer, inner, labels, hole)
            .map_err(|e| Error::parse(0, e.to_string()))
    }
}

impl fmt::Display for SkewPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterStyle::Digit))
    }
}

impl fmt::Display for SkewPartitionWithHole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterStyle::Digit))
    }
}

impl Serialize for SkewPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSkew {
            outer: self.outer.clone(),
            inner: self.inner.clone(),
            labels: self.labels.iter().map(|(&c, &v)| (c, v)).collect(),
            hole: None,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSkew::deserialize(d)?;
        if raw.hole.is_some() {
            return Err(serde::de::Error::custom("unexpected hole"));
        }
        SkewPartition::new(raw.outer, raw.inner, raw.labels.into_iter().collect())
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for SkewPartitionWithHole {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSkew {
            outer: self.outer.clone(),
            inner: self.inner.clone(),
            labels: self.labels.iter().map(|(&c, &v)| (c, v)).collect(),
            hole: Some(self.hole),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewPartitionWithHole {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSkew::deserialize(d)?;
        let hole = raw.hole.ok_or_else(|| serde::de::Error::custom("missing hole"))?;
        SkewPartitionWithHole::new(raw.outer, raw.inner, raw.labels.into_iter().collect(), hole)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveOutcome {
    /// A label moved into the hole.
    Moved(SkewPartitionWithHole, Letter),
    /// The hole was upper and has been removed from the shape.
    Done(SkewPartition),
}

/// One downward move: the smaller label among the points covering the hole
/// moves into it.
pub fn downward_move(s: &SkewPartitionWithHole) -> MoveOutcome {
    let h = s.hole;
    match s.hole_covers().into_iter().min_by_key(|&(_, v)| v) {
        Some((k, v)) => {
            let mut labels = s.labels.clone();
            labels.remove(&k);
            labels.insert(h, v);
            let next = SkewPartitionWithHole {
                outer: s.outer.clone(),
                inner: s.inner.clone(),
                labels,
                hole: k,
            };
            MoveOutcome::Moved(next, v)
        }
        None => {
            let mut parts = s.outer.parts().to_vec();
            parts[h.y - 1] -= 1;
            if parts[h.y - 1] == 0 {
                parts.pop();
            }
            MoveOutcome::Done(SkewPartition {
                outer: Composition::new(parts).expect("positive parts"),
                inner: s.inner.clone(),
                labels: s.labels.clone(),
            })
        }
    }
}

/// Slide the hole opened at `h` out of the shape. Returns the result and the
/// labels that moved, in order.
pub fn downward_slide(s: &SkewPartition, h: Cell) -> Result<(SkewPartition, Vec<Letter>)> {
    let mut current = s.open_hole(h)?;
    let mut trail = Vec::new();
    loop {
        match downward_move(&current) {
            MoveOutcome::Moved(next, v) => {
                trail.push(v);
                current = next;
            }
            MoveOutcome::Done(done) => return Ok((done, trail)),
        }
    }
}

/// Slide a hole that is already open.
pub fn slide_hole(s: &SkewPartitionWithHole) -> (SkewPartition, Vec<Letter>) {
    let mut current = s.clone();
    let mut trail = Vec::new();
    loop {
        match downward_move(&current) {
            MoveOutcome::Moved(next, v) => {
                trail.push(v);
                current = next;
            }
            MoveOutcome::Done(done) => return (done, trail),
        }
    }
}

/// Which maximal point of the inner shape to slide next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JdtStrategy {
    Lowest,
    Highest,
    Seeded(u64),
}

/// Slide until the inner shape is empty.
pub fn jdt(s: &SkewPartition, strategy: JdtStrategy) -> SetPartition {
    let mut rng = match strategy {
        JdtStrategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut current = s.clone();
    while !current.inner.is_empty() {
        let corners = current.inner.maximal_points();
        let (x, y) = match (&mut rng, strategy) {
            (Some(rng), _) => *corners.choose(rng).expect("nonempty inner shape"),
            (None, JdtStrategy::Highest) => *corners.last().expect("nonempty inner shape"),
            _ => corners[0],
        };
        current = downward_slide(&current, Cell::new(x, y)).expect("corner is maximal").0;
    }
    current.to_partition().expect("inner shape is empty")
}

/// Every partition reachable by some sequence of corner choices.
pub fn jdt_outcomes(s: &SkewPartition) -> Vec<SetPartition> {
    fn go(s: &SkewPartition, memo: &mut HashMap<SkewPartition, HashSet<SetPartition>>) -> HashSet<SetPartition> {
        if let Some(r) = s.to_partition() {
            return HashSet::from([r]);
        }
        if let Some(hit) = memo.get(s) {
            return hit.clone();
        }
        let mut out = HashSet::new();
        for (x, y) in s.inner.maximal_points() {
            let next = downward_slide(s, Cell::new(x, y)).expect("corner is maximal").0;
            out.extend(go(&next, memo));
        }
        memo.insert(s.clone(), out.clone());
        out
    }
    let mut out: Vec<SetPartition> = go(s, &mut HashMap::new()).into_iter().collect();
    out.sort();
    out
}

fn row_word_of(outer: &Composition, labels: &BTreeMap<Cell, Letter>) -> Word {
    let rows: Vec<Vec<Letter>> = (1..=outer.len())
        .map(|y| (1..=outer.part(y)).filter_map(|x| labels.get(&Cell::new(x, y)).copied()).collect())
        .collect();
    let mut word = Vec::new();
    for start in (0..rows.len()).rev() {
        let mut chunk: Vec<Letter> = rows[start..].iter().flatten().copied().collect();
        chunk.sort_unstable();
        word.extend(chunk);
    }
    Word::new(word)
}

/// `r(R) = u_k · sort(u_{k-1} u_k) · ... · sort(u_1 ... u_k)` where `u_y` are
/// the labels of row `y`.
pub fn skew_row_word(s: &SkewPartition) -> Word {
    row_word_of(&s.outer, &s.labels)
}

pub fn skew_row_word_with_hole(s: &SkewPartitionWithHole) -> Word {
    row_word_of(&s.outer, &s.labels)
}

/// All increasing labellings of `outer ∖ inner` by the letters of `letters`.
pub fn all_skew_partitions(outer: &Composition, inner: &Composition, letters: LetterSet) -> Vec<SkewPartition> {
    let cells = cells_between(outer, inner);
    if cells.len() != letters.len() || !inner.is_subset(outer) {
        return Vec::new();
    }
    // Place letters in increasing order; a cell can take the next letter once
    // every labelled cell below it in the skew shape is filled.
    let below: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| {
            cells
                .iter()
                .enumerate()
                .filter(|(_, d)| d.covers().any(|k| k == *c))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let letters = letters.to_vec();
    let mut out = Vec::new();
    let mut assigned: Vec<Option<Letter>> = vec![None; cells.len()];
    fn go(
        depth: usize,
        letters: &[Letter],
        cells: &[Cell],
        below: &[Vec<usize>],
        assigned: &mut Vec<Option<Letter>>,
        outer: &Composition,
        inner: &Composition,
        out: &mut Vec<SkewPartition>,
    ) {
        if depth == letters.len() {
            let labels = cells.iter().zip(assigned.iter()).map(|(&c, v)| (c, v.unwrap())).collect();
            out.push(SkewPartition { outer: outer.clone(), inner: inner.clone(), labels });
            return;
        }
        for i in 0..cells.len() {
            if assigned[i].is_none() && below[i].iter().all(|&j| assigned[j].is_some()) {
                assigned[i] = Some(letters[depth]);
                go(depth + 1, letters, cells, below, assigned, outer, inner, out);
                assigned[i] = None;
            }
        }
    }
    go(0, &letters, &cells, &below, &mut assigned, outer, inner, &mut out);
    out
}

/// A random skew partition with `cells` labels `1..=cells` on top of a random
/// inner shape with at most `max_inner` points. Growing the outer shape one
/// covering step at a time and labelling in that order gives an increasing
/// labelling.
pub fn random_skew_partition<R: Rng>(rng: &mut R, cells: usize, max_inner: usize) -> SkewPartition {
    let mut inner = Composition::empty();
    for _ in 0..rng.gen_range(0..=max_inner) {
        let covers = inner.covers();
        inner = covers[rng.gen_range(0..covers.len())].clone();
    }
    let mut outer = inner.clone();
    let mut labels = BTreeMap::new();
    for v in 1..=cells {
        let y = rng.gen_range(1..=outer.len() + 1);
        outer = outer.grow(y).expect("row in range");
        labels.insert(Cell::new(outer.part(y), y), v as Letter);
    }
    SkewPartition { outer, inner, labels }
}
