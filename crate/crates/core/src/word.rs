//! Alphabets, letters, words and letter sets.
//!
//! Letters are the integers `1..=n` with their natural order. For display
//! they render as `a, b, c, ...`, as single digits, or as dot-separated
//! integers once the alphabet is too large for either.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;

/// A finite totally ordered alphabet `{1 < 2 < ... < n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    /// Capacity of the bitset representation.
    pub const CAPACITY: usize = 32;
    /// Default upper bound accepted by [`Alphabet::new`].
    pub const DEFAULT_LIMIT: usize = 12;

    pub fn new(size: usize) -> Result<Self> {
        Self::with_limit(size, Self::DEFAULT_LIMIT)
    }

    pub fn with_limit(size: usize, limit: usize) -> Result<Self> {
        let limit = limit.min(Self::CAPACITY);
        if size == 0 || size > limit {
            return Err(Error::AlphabetSize { size, limit });
        }
        Ok(Alphabet { size: size as u8 })
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn min_letter(&self) -> Letter {
        1
    }

    pub fn max_letter(&self) -> Letter {
        self.size
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + Clone {
        1..=self.size
    }

    pub fn full_set(&self) -> LetterSet {
        LetterSet::full(self.size())
    }

    pub fn contains(&self, x: Letter) -> bool {
        (1..=self.size).contains(&x)
    }

    pub fn check_letter(&self, x: Letter) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter: x,
                size: self.size,
            })
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.iter().try_for_each(|x| self.check_letter(x))
    }

    pub fn check_set(&self, s: LetterSet) -> Result<()> {
        match s.largest() {
            Some(x) => self.check_letter(x),
            None => Ok(()),
        }
    }

    /// The order-reversing permutation `x -> n + 1 - x`.
    pub fn reverse_letter(&self, x: Letter) -> Letter {
        self.size + 1 - x
    }

    /// Number of columns (subsets) over this alphabet.
    pub fn column_count(&self) -> usize {
        1usize << self.size
    }

    /// All words of length at most `max_len`, shortest first, then lexicographic.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.size());
            for w in &layer {
                for x in self.letters() {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// A subset of the alphabet, stored as a bitset (bit `x - 1` for letter `x`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LetterSet(u32);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn from_bits(bits: u32) -> Self {
        LetterSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            LetterSet(u32::MAX)
        } else {
            LetterSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(x: Letter) -> Self {
        LetterSet(bit(x))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, x: Letter) -> bool {
        (1..=32).contains(&x) && self.0 & bit(x) != 0
    }

    pub fn insert(&mut self, x: Letter) {
        self.0 |= bit(x);
    }

    pub fn remove(&mut self, x: Letter) {
        if (1..=32).contains(&x) {
            self.0 &= !bit(x);
        }
    }

    pub fn with(mut self, x: Letter) -> Self {
        self.insert(x);
        self
    }

    pub fn without(mut self, x: Letter) -> Self {
        self.remove(x);
        self
    }

    pub fn union(self, other: Self) -> Self {
        LetterSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        LetterSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        LetterSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn smallest(self) -> Option<Letter> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Letter + 1)
    }

    pub fn largest(self) -> Option<Letter> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as Letter)
    }

    /// Letters strictly below `x`.
    pub fn below(self, x: Letter) -> Self {
        LetterSet(self.0 & low_mask(x))
    }

    /// Letters strictly above `x`.
    pub fn above(self, x: Letter) -> Self {
        LetterSet(self.0 & !(low_mask(x) | bit(x)))
    }

    /// Smallest member strictly greater than `x`.
    pub fn next_above(self, x: Letter) -> Option<Letter> {
        self.above(x).smallest()
    }

    /// Smallest member greater than or equal to `x`.
    pub fn next_at_least(self, x: Letter) -> Option<Letter> {
        LetterSet(self.0 & !low_mask(x)).smallest()
    }

    /// Ascending iteration.
    pub fn iter(self) -> Letters {
        Letters(self.0)
    }

    pub fn to_vec(self) -> Vec<Letter> {
        self.iter().collect()
    }

    /// Each letter replaced by its predecessor; letter 1 is dropped.
    pub fn shift_down(self) -> Self {
        LetterSet(self.0 >> 1)
    }

    /// Each letter replaced by its successor. `None` if letter 32 is present.
    pub fn shift_up(self) -> Option<Self> {
        (self.0 & (1 << 31) == 0).then_some(LetterSet(self.0 << 1))
    }

    /// Letters as a strictly increasing word.
    pub fn increasing_word(self) -> Word {
        Word(self.to_vec())
    }

    /// Letters as a strictly decreasing word.
    pub fn decreasing_word(self) -> Word {
        let mut v = self.to_vec();
        v.reverse();
        Word(v)
    }

    /// Every subset of `self`, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = LetterSet> {
        let set = self.0;
        let mut sub = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = sub;
            sub = sub.wrapping_sub(set) & set;
            done = sub == 0;
            Some(LetterSet(out))
        })
    }

    pub fn render(self, style: LetterStyle) -> String {
        render_letters(self.iter(), style)
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut s = LetterSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.render(LetterStyle::Dotted))
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterStyle::fitting(self.largest().unwrap_or(1))))
    }
}

impl Serialize for LetterSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LetterSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Letter>::deserialize(d)?;
        if let Some(&x) = v.iter().find(|&&x| !(1..=32).contains(&x)) {
            return Err(serde::de::Error::custom(format!("letter {x} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

pub struct Letters(u32);

impl Iterator for Letters {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as Letter + 1;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl DoubleEndedIterator for Letters {
    fn next_back(&mut self) -> Option<Letter> {
        if self.0 == 0 {
            return None;
        }
        let top = 31 - self.0.leading_zeros();
        self.0 &= !(1 << top);
        Some(top as Letter + 1)
    }
}

impl ExactSizeIterator for Letters {}

fn bit(x: Letter) -> u32 {
    debug_assert!((1..=32).contains(&x), "letter {x} out of bitset range");
    1u32 << (x - 1)
}

fn low_mask(x: Letter) -> u32 {
    if x == 0 {
        0
    } else if x > 32 {
        u32::MAX
    } else {
        bit(x) - 1
    }
}

/// How letters are written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LetterStyle {
    /// `a`, `b`, ... (letters up to 26).
    Alpha,
    /// `1`, ..., `9` (letters up to 9).
    Digit,
    /// Integers separated by dots.
    Dotted,
}

impl LetterStyle {
    /// Alphabetic when every letter fits, dotted otherwise.
    pub fn fitting(max_letter: Letter) -> Self {
        if max_letter <= 26 {
            LetterStyle::Alpha
        } else {
            LetterStyle::Dotted
        }
    }

    /// Guess the style an input string was written in.
    pub fn detect(input: &str) -> Self {
        if input.contains('.') {
            LetterStyle::Dotted
        } else if input.chars().any(|c| c.is_ascii_digit()) {
            LetterStyle::Digit
        } else {
            LetterStyle::Alpha
        }
    }

    /// Downgrade to dotted when a letter does not fit.
    pub fn fit(self, max_letter: Letter) -> Self {
        match self {
            LetterStyle::Alpha if max_letter > 26 => LetterStyle::Dotted,
            LetterStyle::Digit if max_letter > 9 => LetterStyle::Dotted,
            s => s,
        }
    }
}

pub fn render_letter(x: Letter, style: LetterStyle) -> String {
    match style.fit(x) {
        LetterStyle::Alpha => ((b'a' + x - 1) as char).to_string(),
        LetterStyle::Digit => x.to_string(),
        LetterStyle::Dotted => x.to_string(),
    }
}

pub(crate) fn render_letters(letters: impl Iterator<Item = Letter>, style: LetterStyle) -> String {
    let v: Vec<Letter> = letters.collect();
    let style = style.fit(v.iter().copied().max().unwrap_or(1));
    let sep = if style == LetterStyle::Dotted { "." } else { "" };
    v.iter()
        .map(|&x| render_letter(x, style))
        .collect::<Vec<_>>()
        .join(sep)
}

/// Parse a run of letters: `cabd`, `3124`, or `3.1.12.4`.
/// Whitespace is ignored outside the dotted form. `offset` shifts error positions.
pub(crate) fn parse_letters(s: &str, offset: usize) -> Result<Vec<Letter>> {
    if s.contains('.') {
        let mut out = Vec::new();
        let mut pos = offset;
        for tok in s.split('.') {
            let t = tok.trim();
            let x: u32 = t
                .parse()
                .map_err(|_| Error::parse(pos, format!("expected a letter number, found {tok:?}")))?;
            if x == 0 || x > 32 {
                return Err(Error::parse(pos, format!("letter {x} outside 1..=32")));
            }
            out.push(x as Letter);
            pos += tok.len() + 1;
        }
        return Ok(out);
    }
    let mut out = Vec::with_capacity(s.len());
    for (i, c) in s.char_indices() {
        match c {
            'a'..='z' => out.push(c as u8 - b'a' + 1),
            '1'..='9' => out.push(c as u8 - b'0'),
            c if c.is_whitespace() => {}
            _ => return Err(Error::parse(offset + i, format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

/// A finite word over the letters `1..=32`. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(x: Letter) -> Self {
        Word(vec![x])
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, x: Letter) {
        self.0.push(x);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` repeated `times` times.
    pub fn power(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// The set of letters occurring in the word.
    pub fn support(&self) -> LetterSet {
        self.iter().collect()
    }

    /// Reverse the word and replace each letter `x` by `n + 1 - x`.
    pub fn theta(&self, alphabet: Alphabet) -> Result<Word> {
        alphabet.check_word(self)?;
        Ok(Word(
            self.0.iter().rev().map(|&x| alphabet.reverse_letter(x)).collect(),
        ))
    }

    pub fn increasing_rearrangement(&self) -> Word {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }

    /// Replace the `i`-th letter by `exponents[i]` copies of itself.
    pub fn inflate(&self, exponents: &[u64]) -> Result<Word> {
        if exponents.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: exponents.len(),
            });
        }
        if exponents.contains(&0) {
            return Err(Error::ZeroExponent);
        }
        let mut v = Vec::new();
        for (&x, &e) in self.0.iter().zip(exponents) {
            v.extend(std::iter::repeat_n(x, e as usize));
        }
        Ok(Word(v))
    }

    /// Remove every occurrence of `x`.
    pub fn remove_letter(&self, x: Letter) -> Word {
        Word(self.iter().filter(|&y| y != x).collect())
    }

    /// Keep only letters below `x`.
    pub fn below(&self, x: Letter) -> Word {
        Word(self.iter().filter(|&y| y < x).collect())
    }

    /// Keep only letters above `x`.
    pub fn above(&self, x: Letter) -> Word {
        Word(self.iter().filter(|&y| y > x).collect())
    }

    /// Replace each letter by its predecessor. Fails if the word contains letter 1.
    pub fn shift_down(&self) -> Result<Word> {
        if self.0.contains(&1) {
            return Err(Error::domain("cannot shift letter 1 down"));
        }
        Ok(Word(self.iter().map(|x| x - 1).collect()))
    }

    /// Replace each letter by its successor.
    pub fn shift_up(&self) -> Word {
        Word(self.iter().map(|x| x + 1).collect())
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.0.windows(2).all(|p| p[0] > p[1])
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }

    pub fn render(&self, style: LetterStyle) -> String {
        render_letters(self.iter(), style)
    }

    pub fn parse(s: &str) -> Result<Word> {
        parse_letters(s, 0).map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterStyle::Alpha))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.render(LetterStyle::Alpha))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Exponents `x_i = 2^(len - i)`, for which `x_i - sum_{j > i} x_j = 1` for every `i`.
pub fn canonical_inflation_exponents(len: usize) -> Result<Vec<u64>> {
    if len == 0 || len > 63 {
        return Err(Error::ExponentOverflow(len));
    }
    Ok((0..len).map(|i| 1u64 << (len - 1 - i)).collect())
}
