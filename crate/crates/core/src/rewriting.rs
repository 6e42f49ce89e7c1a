//! Knuth and stylic relations, bounded congruence search over words, and the
//! quadratic rewriting system on column words.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::columns::{act_word, column_leq, Column};
use crate::error::{Error, Result};
use crate::tableaux::p_tableau;
use crate::word::{Alphabet, Letter, LetterStyle, Word};

/// Unordered pairs of words generating a congruence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationSet {
    pairs: Vec<(Word, Word)>,
}

impl RelationSet {
    pub fn new(pairs: Vec<(Word, Word)>) -> Result<Self> {
        if let Some((l, _)) = pairs.iter().find(|(l, r)| l == r) {
            return Err(Error::domain(format!("trivial relation {l} = {l}")));
        }
        Ok(RelationSet { pairs })
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `bac = bca`, `acb = cab` for `a < b < c`; `baa = aba`, `bba = bab` for `a < b`.
pub fn knuth_relations(alphabet: Alphabet) -> RelationSet {
    let letters: Vec<Letter> = alphabet.letters().collect();
    let w = |v: &[Letter]| Word::new(v.to_vec());
    let mut pairs = Vec::new();
    for (i, &a) in letters.iter().enumerate() {
        for (j, &b) in letters.iter().enumerate().skip(i + 1) {
            pairs.push((w(&[b, a, a]), w(&[a, b, a])));
            pairs.push((w(&[b, b, a]), w(&[b, a, b])));
            for &c in &letters[j + 1..] {
                pairs.push((w(&[b, a, c]), w(&[b, c, a])));
                pairs.push((w(&[a, c, b]), w(&[c, a, b])));
            }
        }
    }
    RelationSet { pairs }
}

/// The Knuth relations together with `xx = x`.
pub fn stylic_relations(alphabet: Alphabet) -> RelationSet {
    let mut rels = knuth_relations(alphabet);
    for x in alphabet.letters() {
        rels.pairs.push((Word::new(vec![x, x]), Word::letter(x)));
    }
    rels
}

fn replacements<'a>(w: &'a [Letter], from: &'a Word, to: &'a Word) -> impl Iterator<Item = Word> + 'a {
    let from = from.as_slice();
    let k = from.len();
    (0..=w.len().saturating_sub(k))
        .filter(move |&i| k <= w.len() && &w[i..i + k] == from)
        .map(move |i| {
            let mut out = w[..i].to_vec();
            out.extend_from_slice(to.as_slice());
            out.extend_from_slice(&w[i + k..]);
            Word::new(out)
        })
}

/// Every word one relation step away from `w`, in either direction.
pub fn neighbours(w: &Word, rels: &RelationSet) -> Vec<Word> {
    let mut out = Vec::new();
    for (l, r) in &rels.pairs {
        out.extend(replacements(w.as_slice(), l, r));
        out.extend(replacements(w.as_slice(), r, l));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CongruenceSearch {
    pub equal: bool,
    pub explored: usize,
    /// Whether some move was skipped for exceeding the length cap.
    pub pruned: bool,
}

/// Breadth-first search from `u` towards `v` through words of length at most
/// `maxlen`. A positive answer is a proof; a negative one only holds inside
/// the slice.
pub fn congruence_search(u: &Word, v: &Word, rels: &RelationSet, maxlen: usize) -> Result<CongruenceSearch> {
    if u.len() > maxlen || v.len() > maxlen {
        return Err(Error::domain(format!("inputs longer than the cap {maxlen}")));
    }
    let mut seen = HashSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    let mut pruned = false;
    while let Some(w) = queue.pop_front() {
        if &w == v {
            return Ok(CongruenceSearch { equal: true, explored: seen.len(), pruned });
        }
        for next in neighbours(&w, rels) {
            if next.len() > maxlen {
                pruned = true;
            } else if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(CongruenceSearch { equal: false, explored: seen.len(), pruned })
}

pub fn congruence_equal(u: &Word, v: &Word, rels: &RelationSet, maxlen: usize) -> Result<bool> {
    Ok(congruence_search(u, v, rels, maxlen)?.equal)
}

/// Connected components of the relation graph on all words of length at most
/// `cap`.
pub struct CongruenceGraph {
    n: usize,
    cap: usize,
    offsets: Vec<usize>,
    parent: Vec<u32>,
}

impl CongruenceGraph {
    pub fn new(alphabet: Alphabet, rels: &RelationSet, cap: usize) -> Result<Self> {
        let n = alphabet.size();
        let mut offsets = vec![0usize];
        for len in 0..=cap {
            let count = n
                .checked_pow(len as u32)
                .ok_or_else(|| Error::ResourceLimit(format!("{n}^{len} words")))?;
            offsets.push(offsets[len] + count);
        }
        let total = offsets[cap + 1];
        if total > 1 << 26 {
            return Err(Error::ResourceLimit(format!("{total} words up to length {cap}")));
        }
        let mut g = CongruenceGraph { n, cap, offsets, parent: (0..total as u32).collect() };
        for len in 0..=cap {
            for k in 0..g.offsets[len + 1] - g.offsets[len] {
                let w = g.word_at(len, k);
                let id = g.offsets[len] + k;
                for (l, r) in &rels.pairs {
                    for next in replacements(w.as_slice(), l, r) {
                        if next.len() <= cap {
                            let other = g.id(&next);
                            g.union(id, other);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn word_at(&self, len: usize, mut k: usize) -> Word {
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = (k % self.n) as Letter + 1;
            k /= self.n;
        }
        Word::new(letters)
    }

    fn id(&self, w: &Word) -> usize {
        let k = w.iter().fold(0, |acc, x| acc * self.n + (x as usize - 1));
        self.offsets[w.len()] + k
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] as usize != i {
            let up = self.parent[self.parent[i] as usize];
            self.parent[i] = up;
            i = up as usize;
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b) as u32;
        }
    }

    pub fn connected(&mut self, u: &Word, v: &Word) -> bool {
        assert!(u.len() <= self.cap && v.len() <= self.cap);
        let (a, b) = (self.id(u), self.id(v));
        self.find(a) == self.find(b)
    }
}

/// A product of nonempty columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColumnWord(Vec<Column>);

impl ColumnWord {
    pub fn new(columns: Vec<Column>) -> Result<Self> {
        if columns.iter().any(|c| c.is_empty()) {
            return Err(Error::domain("column words have nonempty columns"));
        }
        Ok(ColumnWord(columns))
    }

    pub fn columns(&self) -> &[Column] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word obtained by reading each column as a decreasing word.
    pub fn flatten(&self) -> Word {
        self.0.iter().flat_map(|c| c.word().into_vec()).collect()
    }

    /// The columns of `P(w)`, left to right.
    pub fn of_tableau_of(w: &Word) -> ColumnWord {
        ColumnWord(p_tableau(w).columns())
    }

    /// Single-letter columns spelling `w`.
    pub fn of_letters(w: &Word) -> ColumnWord {
        ColumnWord(w.iter().map(|x| Column::from_set(crate::word::LetterSet::singleton(x))).collect())
    }

    /// Positions `i` where the pair `(γ_i, γ_{i+1})` can be rewritten.
    pub fn redexes(&self) -> Vec<usize> {
        (0..self.0.len().saturating_sub(1))
            .filter(|&i| is_redex(self.0[i], self.0[i + 1]))
            .collect()
    }

    pub fn is_normal(&self) -> bool {
        self.redexes().is_empty()
    }

    /// Rewrite the pair at position `i`.
    pub fn rewrite_at(&self, i: usize) -> Result<ColumnWord> {
        let (g, d) = (self.0[i], self.0[i + 1]);
        if !is_redex(g, d) {
            return Err(Error::domain(format!("no rule applies to ({g})({d})")));
        }
        let (g2, d2) = column_pair_reduce(g, d);
        let mut out = self.0[..i].to_vec();
        out.push(g2);
        if !d2.is_empty() {
            out.push(d2);
        }
        out.extend_from_slice(&self.0[i + 2..]);
        Ok(ColumnWord(out))
    }

    pub fn render(&self, style: LetterStyle) -> String {
        self.0.iter().map(|c| format!("({})", c.render(style))).collect()
    }

    /// `(length, -|γ_1|, -|γ_2|, ...)`; every rewrite makes it smaller.
    pub fn measure(&self) -> (usize, Vec<isize>) {
        (self.0.len(), self.0.iter().map(|c| -(c.len() as isize)).collect())
    }
}

impl fmt::Display for ColumnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.0.iter().filter_map(|c| c.set().largest()).max().unwrap_or(1);
        f.write_str(&self.render(LetterStyle::fitting(max)))
    }
}

/// `"(dba)(ba)(c)"`; the empty string is the empty product.
impl FromStr for ColumnWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut columns = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let pos = s.len() - rest.len();
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(pos, "expected '('"))?;
            let close = inner.find(')').ok_or_else(|| Error::parse(pos, "missing ')'"))?;
            let c: Column = inner[..close].parse().map_err(|_| Error::parse(pos + 1, "bad column"))?;
            if c.is_empty() {
                return Err(Error::parse(pos, "empty column"));
            }
            columns.push(c);
            rest = inner[close + 1..].trim_start();
        }
        Ok(ColumnWord(columns))
    }
}

/// Whether the rule for `(γ, δ)` is present, that is `γ ≤ δ` fails.
pub fn is_redex(g: Column, d: Column) -> bool {
    !column_leq(g, d)
}

/// `(γ, δ) ↦ (γ·δ, (γ ⊎ δ) ∖ γ·δ)`, the second column possibly empty.
pub fn column_pair_reduce(g: Column, d: Column) -> (Column, Column) {
    let g2 = act_word(&g.word(), d);
    // Letters of γ ∩ δ keep one of their two copies.
    let both = g.set().intersection(d.set());
    let once = g.set().union(d.set()).difference(g2.set());
    (g2, Column::from_set(once.union(both)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    Seeded(u64),
}

/// Rewrite until no rule applies.
pub fn normalize_column_word(w: &ColumnWord, strategy: RewriteStrategy) -> ColumnWord {
    let mut rng = match strategy {
        RewriteStrategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut current = w.clone();
    loop {
        let redexes = current.redexes();
        let Some(&first) = redexes.first() else { return current };
        let i = match (&mut rng, strategy) {
            (Some(rng), _) => redexes[rng.gen_range(0..redexes.len())],
            (None, RewriteStrategy::Rightmost) => *redexes.last().unwrap(),
            _ => first,
        };
        current = current.rewrite_at(i).expect("redex");
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConfluenceReport {
    pub columns: usize,
    pub triples: usize,
    /// Triples where both overlapping pairs are redexes.
    pub peaks: usize,
    pub rules: usize,
    /// Rules whose right side is not smaller than the left.
    pub non_decreasing_rules: Vec<String>,
    /// Peaks whose two one-step results have different normal forms.
    pub non_joinable: Vec<String>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.non_decreasing_rules.is_empty() && self.non_joinable.is_empty()
    }
}

/// Check every rule for termination and every overlap `(γ, δ, ε)` for
/// joinability.
pub fn local_confluence_check(alphabet: Alphabet) -> ConfluenceReport {
    let columns: Vec<Column> = Column::all(alphabet).filter(|c| !c.is_empty()).collect();
    let mut report = ConfluenceReport {
        columns: columns.len(),
        triples: 0,
        peaks: 0,
        rules: 0,
        non_decreasing_rules: Vec::new(),
        non_joinable: Vec::new(),
    };
    for &g in &columns {
        for &d in &columns {
            if !is_redex(g, d) {
                continue;
            }
            report.rules += 1;
            let lhs = ColumnWord(vec![g, d]);
            let rhs = lhs.rewrite_at(0).expect("redex");
            if rhs.measure() >= lhs.measure() {
                report.non_decreasing_rules.push(format!("{lhs} -> {rhs}"));
            }
        }
    }
    for &g in &columns {
        for &d in &columns {
            for &e in &columns {
                report.triples += 1;
                if !(is_redex(g, d) && is_redex(d, e)) {
                    continue;
                }
                report.peaks += 1;
                let w = ColumnWord(vec![g, d, e]);
                let left = normalize_column_word(&w.rewrite_at(0).unwrap(), RewriteStrategy::Leftmost);
                let right = normalize_column_word(&w.rewrite_at(1).unwrap(), RewriteStrategy::Leftmost);
                if left != right {
                    report.non_joinable.push(format!("{w}: {left} vs {right}"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stylic::n_tableau;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn col(s: &str) -> Column {
        s.parse().unwrap()
    }

    fn a(n: usize) -> Alphabet {
        Alphabet::new(n).unwrap()
    }

    #[test]
    fn relation_counts() {
        assert_eq!(knuth_relations(a(1)).len(), 0);
        assert_eq!(stylic_relations(a(1)).len(), 1);
        assert_eq!(knuth_relations(a(2)).len(), 2);
        assert!(knuth_relations(a(2)).pairs().contains(&(w("baa"), w("aba"))));
        assert!(knuth_relations(a(2)).pairs().contains(&(w("bba"), w("bab"))));
        assert_eq!(knuth_relations(a(3)).len(), 8);
        assert_eq!(stylic_relations(a(3)).len(), 11);
        assert!(RelationSet::new(vec![(w("ab"), w("ab"))]).is_err());
    }

    #[test]
    fn knuth_relations_hold_plactically() {
        for (l, r) in knuth_relations(a(4)).pairs() {
            assert_eq!(p_tableau(l), p_tableau(r));
        }
        for (l, r) in stylic_relations(a(4)).pairs() {
            assert_eq!(n_tableau(l), n_tableau(r));
        }
    }

    #[test]
    fn worked_equivalence() {
        let s = stylic_relations(a(4));
        let k = knuth_relations(a(4));
        assert!(congruence_equal(&w("cabd"), &w("cdab"), &s, 6).unwrap());
        assert!(!congruence_equal(&w("cabd"), &w("cdab"), &k, 8).unwrap());
        assert!(congruence_equal(&w("cabd"), &w("cabd"), &k, 4).unwrap());
        let found = congruence_search(&w("cabd"), &w("cdab"), &s, 6).unwrap();
        assert!(found.equal && found.pruned);
        assert!(congruence_search(&w("abc"), &w("a"), &s, 2).is_err());
    }

    #[test]
    fn graph_matches_search() {
        let s = stylic_relations(a(2));
        let mut g = CongruenceGraph::new(a(2), &s, 6).unwrap();
        let words = a(2).words_up_to(3);
        for u in &words {
            for v in &words {
                assert_eq!(g.connected(u, v), congruence_equal(u, v, &s, 6).unwrap(), "{u} {v}");
            }
        }
    }

    #[test]
    fn pair_reduction_examples() {
        assert_eq!(column_pair_reduce(col("b"), col("a")), (col("ba"), Column::EMPTY));
        assert!(!is_redex(col("ca"), col("b")));
        assert!(!is_redex(col("a"), col("a")));
        assert_eq!(column_pair_reduce(col("a"), col("a")), (col("a"), col("a")));
    }

    #[test]
    fn pair_reduction_properties() {
        for n in 1..=4 {
            for g in Column::all(a(n)).filter(|c| !c.is_empty()) {
                for d in Column::all(a(n)).filter(|c| !c.is_empty()) {
                    let (g2, d2) = column_pair_reduce(g, d);
                    assert!(g.set().is_subset(g2.set()));
                    assert!(column_leq(g2, g));
                    assert!(column_leq(g2, d2));
                    assert_eq!(g2 == g, column_leq(g, d));
                    assert_eq!(d2 == d, column_leq(g, d));
                    let before = g.word().concat(&d.word());
                    let after = g2.word().concat(&d2.word());
                    assert_eq!(p_tableau(&before), p_tableau(&after), "({g})({d})");
                }
            }
        }
    }

    #[test]
    fn normal_forms() {
        let cw = |s: &str| s.parse::<ColumnWord>().unwrap();
        assert_eq!(normalize_column_word(&cw("(b)(a)"), RewriteStrategy::Leftmost), cw("(ba)"));
        let t = ColumnWord::of_tableau_of(&w("cabd"));
        assert!(t.is_normal());
        assert_eq!(normalize_column_word(&t, RewriteStrategy::Rightmost), t);
        assert_eq!(
            normalize_column_word(&cw("(c)(a)(b)"), RewriteStrategy::Leftmost),
            ColumnWord::of_tableau_of(&w("cab"))
        );
        assert_eq!(cw("(dba)(ba)(c)").to_string(), "(dba)(ba)(c)");
        assert!("(a)()".parse::<ColumnWord>().is_err());
        assert!("(a".parse::<ColumnWord>().is_err());
    }

    #[test]
    fn normal_forms_are_tableau_columns() {
        for n in 1..=3 {
            for u in a(n).words_up_to(6) {
                let expected = ColumnWord::of_tableau_of(&u);
                let start = ColumnWord::of_letters(&u);
                for strategy in [RewriteStrategy::Leftmost, RewriteStrategy::Rightmost, RewriteStrategy::Seeded(7)] {
                    assert_eq!(normalize_column_word(&start, strategy), expected, "{u}");
                }
                assert_eq!(p_tableau(&expected.flatten()), p_tableau(&u));
            }
        }
    }

    #[test]
    fn each_step_keeps_the_plactic_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let len = rng.gen_range(0..9);
            let u = Word::new((0..len).map(|_| rng.gen_range(1..=4)).collect());
            let mut cw = ColumnWord::of_letters(&u);
            let target = p_tableau(&u);
            while let Some(&i) = cw.redexes().first() {
                let next = cw.rewrite_at(i).unwrap();
                assert!(next.measure() < cw.measure());
                assert_eq!(p_tableau(&next.flatten()), target);
                cw = next;
            }
        }
    }

    #[test]
    fn confluence() {
        let r2 = local_confluence_check(a(2));
        assert_eq!((r2.columns, r2.triples), (3, 27));
        assert!(r2.passed());
        let r3 = local_confluence_check(a(3));
        assert_eq!((r3.columns, r3.triples), (7, 343));
        assert!(r3.passed(), "{r3:?}");
        assert!(r3.peaks > 0);
    }
}
