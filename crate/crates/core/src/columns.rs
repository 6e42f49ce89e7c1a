//! Columns and the left action of words on them.
//!
//! A column is a subset of the alphabet, read as a strictly decreasing word.
//! A letter `x` acts on `γ` by column insertion with the bumped letter thrown
//! away: `x·γ = (γ ∖ y) ∪ x` with `y = min{z ∈ γ : z ≥ x}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{parse_letters, Alphabet, Letter, LetterSet, LetterStyle, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Column(LetterSet);

impl Column {
    pub const EMPTY: Column = Column(LetterSet::EMPTY);

    pub fn from_set(set: LetterSet) -> Self {
        Column(set)
    }

    /// The column whose members are the letters of `w` (order is ignored).
    pub fn from_letters(w: &Word) -> Self {
        Column(w.support())
    }

    pub fn set(self) -> LetterSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(self, x: Letter) -> bool {
        self.0.contains(x)
    }

    /// The column as a strictly decreasing word.
    pub fn word(self) -> Word {
        self.0.decreasing_word()
    }

    /// Index of this column among the `2^n` columns (its bit pattern).
    pub fn index(self) -> usize {
        self.0.bits() as usize
    }

    pub fn from_index(i: usize) -> Self {
        Column(LetterSet::from_bits(i as u32))
    }

    /// All `2^n` columns over the alphabet, by index.
    pub fn all(alphabet: Alphabet) -> impl Iterator<Item = Column> {
        (0..alphabet.column_count()).map(Column::from_index)
    }

    pub fn render(self, style: LetterStyle) -> String {
        if self.is_empty() {
            "1".to_string()
        } else {
            self.word().render(style)
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterStyle::fitting(self.0.largest().unwrap_or(1))))
    }
}

impl fmt::Debug for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Column({self})")
    }
}

/// `"dba"`, `"1"` (the empty column) or `""`. Letters must be distinct.
impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Column> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Column::EMPTY);
        }
        let letters = parse_letters(s, 0)?;
        let set: LetterSet = letters.iter().copied().collect();
        if set.len() != letters.len() {
            return Err(Error::parse(0, format!("repeated letter in column {s:?}")));
        }
        Ok(Column(set))
    }
}

/// `x·γ`.
pub fn act_letter(x: Letter, gamma: Column) -> Column {
    let s = gamma.0;
    match s.next_at_least(x) {
        Some(y) => Column(s.without(y).with(x)),
        None => Column(s.with(x)),
    }
}

/// `w·γ`, applying the letters of `w` from right to left.
pub fn act_word(w: &Word, gamma: Column) -> Column {
    w.iter().rev().fold(gamma, |g, x| act_letter(x, g))
}

/// The column order: `γ1 ≤ γ2` iff `γ2` is empty, or both are nonempty,
/// `|γ1| ≥ |γ2|` and the `i`-th smallest letter of `γ1` is at most the `i`-th
/// smallest of `γ2` for each `i ≤ |γ2|`.
pub fn column_leq(g1: Column, g2: Column) -> bool {
    if g2.is_empty() {
        return true;
    }
    if g1.is_empty() || g1.len() < g2.len() {
        return false;
    }
    g1.0.iter().zip(g2.0.iter()).all(|(a, b)| a <= b)
}

pub fn column_lt(g1: Column, g2: Column) -> bool {
    g1 != g2 && column_leq(g1, g2)
}

/// Replace each letter by its predecessor, dropping the smallest letter.
pub fn gamma_minus(gamma: Column, alphabet: Alphabet) -> Result<Column> {
    alphabet.check_set(gamma.0)?;
    Ok(Column(gamma.0.shift_down()))
}

/// Replace each letter by its successor. The column must avoid the largest letter.
pub fn gamma_plus(gamma: Column, alphabet: Alphabet) -> Result<Column> {
    alphabet.check_set(gamma.0)?;
    if gamma.contains(alphabet.max_letter()) {
        return Err(Error::domain(format!(
            "column {gamma} contains the largest letter and cannot be shifted up"
        )));
    }
    Ok(Column(gamma.0.shift_up().expect("checked above")))
}

/// `γ_x`: letters of `γ` below `x`.
pub fn below(gamma: Column, x: Letter) -> Column {
    Column(gamma.0.below(x))
}

/// `γ^x`: letters of `γ` above `x`.
pub fn above(gamma: Column, x: Letter) -> Column {
    Column(gamma.0.above(x))
}

/// Columns fixed by `w`. These are exactly the columns containing `Supp(w)`.
pub fn fixpoints(w: &Word, alphabet: Alphabet) -> Result<Vec<Column>> {
    alphabet.check_word(w)?;
    let supp = w.support();
    Ok(alphabet
        .full_set()
        .difference(supp)
        .subsets()
        .map(|extra| Column(extra.union(supp)))
        .collect())
}

/// `{γ : w·γ = δ}` for an idempotent `w` and a fixpoint `δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelInterval {
    pub min: Column,
    pub max: Column,
    pub members: Vec<Column>,
    /// Whether the members are exactly `{γ : min ≤ γ ≤ max}`.
    pub is_interval: bool,
}

impl KernelInterval {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub fn kernel_interval(w: &Word, delta: Column, alphabet: Alphabet) -> Result<KernelInterval> {
    alphabet.check_word(w)?;
    alphabet.check_set(delta.0)?;
    if !w.is_strictly_decreasing() {
        return Err(Error::domain(format!("{w} is not strictly decreasing")));
    }
    if !w.support().is_subset(delta.0) {
        return Err(Error::domain(format!("{delta} is not a fixpoint of {w}")));
    }
    let members: Vec<Column> = Column::all(alphabet)
        .filter(|&g| act_word(w, g) == delta)
        .collect();
    let least = |m: &Column| members.iter().all(|&g| column_leq(*m, g));
    let greatest = |m: &Column| members.iter().all(|&g| column_leq(g, *m));
    let min = members.iter().copied().find(least);
    let max = members.iter().copied().find(greatest);
    let (Some(min), Some(max)) = (min, max) else {
        return Err(Error::domain(format!(
            "preimage of {delta} under {w} has no least or greatest element"
        )));
    };
    let between: Vec<Column> = Column::all(alphabet)
        .filter(|&g| column_leq(min, g) && column_leq(g, max))
        .collect();
    let is_interval = between == members;
    Ok(KernelInterval {
        min,
        max,
        members,
        is_interval,
    })
}

/// Check `w·γ = w_ℓ·γ_ℓ ∪ w^ℓ·γ^ℓ ∪ ℓ` when `ℓ ∈ w·γ ∖ Supp(w)`.
pub fn split_action_check(w: &Word, gamma: Column, l: Letter) -> Result<bool> {
    let lhs = act_word(w, gamma);
    if !lhs.contains(l) || w.support().contains(l) {
        return Err(Error::domain(format!(
            "letter {l} must lie in w·γ and not in Supp(w)"
        )));
    }
    let low = act_word(&w.below(l), below(gamma, l));
    let high = act_word(&w.above(l), above(gamma, l));
    Ok(lhs.0 == low.0.union(high.0).with(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::p_tableau;

    fn c(s: &str) -> Column {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn alpha(n: usize) -> Alphabet {
        Alphabet::new(n).unwrap()
    }

    /// Search for an injection `f: γ2 → γ1` with `f(y) ≤ y`.
    fn regressive_injection_exists(g1: Column, g2: Column) -> bool {
        fn go(targets: &[Letter], sources: &[Letter], used: &mut Vec<bool>) -> bool {
            let Some((&y, rest)) = sources.split_first() else {
                return true;
            };
            for (i, &t) in targets.iter().enumerate() {
                if !used[i] && t <= y {
                    used[i] = true;
                    if go(targets, rest, used) {
                        return true;
                    }
                    used[i] = false;
                }
            }
            false
        }
        if g2.is_empty() {
            return true;
        }
        let targets = g1.set().to_vec();
        go(&targets, &g2.set().to_vec(), &mut vec![false; targets.len()])
    }

    #[test]
    fn action_basics() {
        assert_eq!(act_letter(1, Column::EMPTY), c("a"));
        assert_eq!(act_letter(2, c("a")), c("ba"));
        assert_eq!(act_letter(2, c("ca")), c("ba"));
        for g in Column::all(alpha(4)) {
            for x in g.set().iter() {
                assert_eq!(act_letter(x, g), g);
            }
        }
    }

    #[test]
    fn word_action_examples() {
        assert_eq!(act_word(&w("acbd"), c("a")), c("cba"));
        assert_eq!(act_word(&Word::empty(), c("db")), c("db"));
        assert_eq!(act_word(&w("cabd"), Column::EMPTY), c("ca"));
    }

    #[test]
    fn action_is_first_column_of_p() {
        let a = alpha(4);
        for u in a.words_up_to(5) {
            assert_eq!(act_word(&u, Column::EMPTY), p_tableau(&u).first_column());
            for g in Column::all(a) {
                let rg = u.concat(&g.word());
                let expected = if rg.is_empty() {
                    Column::EMPTY
                } else {
                    p_tableau(&rg).first_column()
                };
                assert_eq!(act_word(&u, g), expected);
            }
        }
    }

    #[test]
    fn order_examples() {
        assert!(column_leq(c("dba"), c("ba")));
        assert!(column_leq(c("ba"), c("c")));
        assert!(!column_leq(c("b"), c("a")));
        for g in Column::all(alpha(3)) {
            assert!(column_leq(g, Column::EMPTY));
        }
        assert!(!column_leq(Column::EMPTY, c("a")));
    }

    #[test]
    fn order_matches_regressive_injections() {
        let a = alpha(5);
        for g1 in Column::all(a) {
            for g2 in Column::all(a) {
                let brute = if g1.is_empty() {
                    g2.is_empty()
                } else {
                    regressive_injection_exists(g1, g2)
                };
                assert_eq!(column_leq(g1, g2), brute, "{g1} {g2}");
            }
        }
    }

    #[test]
    fn order_is_partial_and_extends_letters_and_reverse_inclusion() {
        let a = alpha(4);
        for g1 in Column::all(a) {
            for g2 in Column::all(a) {
                if column_leq(g1, g2) && column_leq(g2, g1) {
                    assert_eq!(g1, g2);
                }
                if g2.set().is_subset(g1.set()) && !g2.is_empty() {
                    assert!(column_leq(g1, g2));
                }
                for g3 in Column::all(a) {
                    if column_leq(g1, g2) && column_leq(g2, g3) {
                        assert!(column_leq(g1, g3));
                    }
                }
            }
        }
        for x in 1..=4u8 {
            for y in 1..=4u8 {
                let (cx, cy) = (Column::from_set(LetterSet::singleton(x)), Column::from_set(LetterSet::singleton(y)));
                assert_eq!(column_leq(cx, cy), x <= y);
            }
        }
    }

    #[test]
    fn action_contracts_and_is_monotone() {
        let a = alpha(4);
        let words = a.words_up_to(4);
        for u in &words {
            for g1 in Column::all(a) {
                let ug1 = act_word(u, g1);
                assert!(column_leq(ug1, g1));
                for g2 in Column::all(a) {
                    if column_leq(g1, g2) {
                        assert!(column_leq(ug1, act_word(u, g2)));
                    }
                }
            }
        }
    }

    #[test]
    fn support_and_prefix_preservation() {
        let a = alpha(4);
        for u in a.words_up_to(4) {
            for g in Column::all(a) {
                let ug = act_word(&u, g);
                if u.support().is_subset(g.set()) {
                    assert_eq!(ug, g);
                }
                for l in 1..=4u8 {
                    let b = LetterSet::full(l as usize);
                    if b.is_subset(g.set()) {
                        assert!(b.is_subset(ug.set()));
                    }
                }
            }
        }
        for g in Column::all(a) {
            for x in 1..=4u8 {
                assert_eq!(below(act_letter(x, g), x), below(g, x));
                assert!(act_letter(x, g).contains(x));
            }
        }
    }

    #[test]
    fn shifts() {
        let a = alpha(4);
        assert_eq!(gamma_minus(c("cba"), a).unwrap(), c("ba"));
        assert_eq!(gamma_minus(Column::EMPTY, a).unwrap(), Column::EMPTY);
        assert_eq!(gamma_plus(c("ba"), a).unwrap(), c("cb"));
        assert!(gamma_plus(c("da"), a).is_err());
    }

    #[test]
    fn below_above() {
        assert_eq!(below(c("dba"), 3), c("ba"));
        assert_eq!(below(Column::EMPTY, 3), Column::EMPTY);
        assert_eq!(above(c("dba"), 2), c("d"));
    }

    #[test]
    fn fixpoint_examples() {
        assert_eq!(fixpoints(&Word::empty(), alpha(3)).unwrap().len(), 8);
        assert_eq!(fixpoints(&w("ba"), alpha(2)).unwrap(), vec![c("ba")]);
        assert_eq!(fixpoints(&w("b"), alpha(3)).unwrap().len(), 4);
        let a = alpha(4);
        for u in a.words_up_to(4) {
            let mut scanned: Vec<Column> = Column::all(a).filter(|&g| act_word(&u, g) == g).collect();
            let mut fast = fixpoints(&u, a).unwrap();
            scanned.sort();
            fast.sort();
            assert_eq!(scanned, fast);
        }
    }

    #[test]
    fn kernel_interval_example() {
        // Two letters out of abcd, times one of f, g or nothing.
        let k = kernel_interval(&w("fba"), c("feba"), alpha(7)).unwrap();
        assert_eq!(k.size(), 18);
        assert_eq!(k.min, c("feba"));
        assert_eq!(k.max, c("edc"));
        assert!(k.is_interval);
    }

    #[test]
    fn kernel_interval_extremes() {
        let a = alpha(3);
        let k = kernel_interval(&w("cba"), c("cba"), a).unwrap();
        assert_eq!(k.size(), 8);
        let k = kernel_interval(&w("a"), c("a"), alpha(1)).unwrap();
        assert_eq!(k.members, vec![Column::EMPTY, c("a")]);
        assert!(kernel_interval(&w("b"), c("a"), a).is_err());
        assert!(kernel_interval(&w("ab"), c("ba"), a).is_err());
    }

    #[test]
    fn kernels_are_intervals_with_least_element_delta() {
        let a = alpha(4);
        for s in a.full_set().subsets() {
            let u = s.decreasing_word();
            for delta in fixpoints(&u, a).unwrap() {
                let k = kernel_interval(&u, delta, a).unwrap();
                assert!(k.is_interval, "{u} {delta}");
                assert_eq!(k.min, delta);
            }
        }
    }

    #[test]
    fn split_action() {
        assert!(split_action_check(&Word::empty(), c("b"), 2).unwrap());
        assert!(split_action_check(&w("a"), c("b"), 1).is_err());
        let a = alpha(4);
        let mut checked = 0;
        for u in a.words_up_to(4) {
            for g in Column::all(a) {
                for l in act_word(&u, g).set().difference(u.support()).iter() {
                    assert!(split_action_check(&u, g, l).unwrap());
                    checked += 1;
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(c("dba").to_string(), "dba");
        assert_eq!(c("abd"), c("dba"));
        assert_eq!(Column::EMPTY.to_string(), "1");
        assert_eq!(c("1"), Column::EMPTY);
        assert!("aa".parse::<Column>().is_err());
    }
}
