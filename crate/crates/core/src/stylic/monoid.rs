use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::ntableau::{delta_word, n_tableau, to_partition, NTableau};
use super::partition::{bell, SetPartition};
use crate::columns::{act_letter, act_word, Column};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, LetterStyle, Word};

/// Default ceiling for enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 6;
/// Hard ceiling, reachable with `force`.
pub const FORCED_ENUMERATION_LIMIT: usize = 7;
/// Largest alphabet for which the full multiplication table is stored.
const TABLE_LIMIT: usize = 6;

/// One element of `Styl(A)`: a shortest representing word and its N-tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StylicElement {
    pub word: Word,
    pub tableau: NTableau,
}

impl StylicElement {
    pub fn of_word(w: &Word) -> Self {
        StylicElement {
            word: w.clone(),
            tableau: n_tableau(w),
        }
    }

    /// The canonical representative `r(N(w))`.
    pub fn canonical_word(&self) -> Word {
        self.tableau.row_word()
    }

    pub fn partition(&self) -> SetPartition {
        to_partition(&self.tableau)
    }

    pub fn boxes(&self) -> usize {
        self.tableau.boxes()
    }
}

/// `Styl(A)` as the monoid of maps on columns generated by the letters.
///
/// Elements are numbered in breadth-first order from the identity, so
/// element 0 is the identity and representative words are shortest.
#[derive(Debug, Clone)]
pub struct StylicMonoid {
    alphabet: Alphabet,
    transforms: Vec<Vec<u32>>,
    elements: Vec<StylicElement>,
    index: HashMap<Vec<u32>, usize>,
    /// `right[m][x - 1]` is the index of `m·x`.
    right: Vec<Vec<usize>>,
    /// `left[m][x - 1]` is the index of `x·m`.
    left: Vec<Vec<usize>>,
    table: Option<Vec<u32>>,
    zero: usize,
}

impl StylicMonoid {
    pub fn enumerate(alphabet: Alphabet) -> Result<Self> {
        Self::enumerate_with_limit(alphabet, DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn enumerate_with_limit(alphabet: Alphabet, limit: usize) -> Result<Self> {
        let n = alphabet.size();
        let limit = limit.min(FORCED_ENUMERATION_LIMIT);
        if n > limit {
            return Err(Error::ResourceLimit(format!(
                "enumerating Styl(A) with |A| = {n} exceeds the limit {limit}"
            )));
        }
        let cols = alphabet.column_count();
        let gens: Vec<Vec<u32>> = alphabet
            .letters()
            .map(|x| {
                (0..cols)
                    .map(|g| act_letter(x, Column::from_index(g)).index() as u32)
                    .collect()
            })
            .collect();
        let identity: Vec<u32> = (0..cols as u32).collect();

        let mut transforms = vec![identity.clone()];
        let mut words = vec![Word::empty()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(m) = queue.pop_front() {
            let mut row = Vec::with_capacity(n);
            for (xi, g) in gens.iter().enumerate() {
                // (m·x)·γ = m·(x·γ)
                let f = &transforms[m];
                let t: Vec<u32> = g.iter().map(|&c| f[c as usize]).collect();
                let id = match index.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = transforms.len();
                        let mut w = words[m].clone();
                        w.push(xi as Letter + 1);
                        words.push(w);
                        index.insert(t.clone(), id);
                        transforms.push(t);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            if right.len() <= m {
                right.resize(m + 1, Vec::new());
            }
            right[m] = row;
        }

        let left: Vec<Vec<usize>> = transforms
            .iter()
            .map(|f| {
                gens.iter()
                    .map(|g| {
                        let t: Vec<u32> = f.iter().map(|&c| g[c as usize]).collect();
                        index[&t]
                    })
                    .collect()
            })
            .collect();

        let elements: Vec<StylicElement> = words.iter().map(StylicElement::of_word).collect();
        let expected = bell(n + 1);
        if elements.len() as u128 != expected {
            return Err(Error::domain(format!(
                "closure produced {} maps, expected {expected}",
                elements.len()
            )));
        }
        let partitions = SetPartition::all_of_subsets(alphabet).len() as u128;
        if partitions != expected {
            return Err(Error::domain(format!(
                "{partitions} partitions of subsets, expected {expected}"
            )));
        }

        let zero_word = alphabet.full_set().decreasing_word();
        let zero_map: Vec<u32> = (0..cols)
            .map(|g| act_word(&zero_word, Column::from_index(g)).index() as u32)
            .collect();
        let zero = index[&zero_map];

        let mut monoid = StylicMonoid {
            alphabet,
            transforms,
            elements,
            index,
            right,
            left,
            table: None,
            zero,
        };
        if n <= TABLE_LIMIT {
            let size = monoid.len();
            let mut table = Vec::with_capacity(size * size);
            for i in 0..size {
                for j in 0..size {
                    table.push(monoid.fold_right(i, &monoid.elements[j].word) as u32);
                }
            }
            monoid.table = Some(table);
        }
        Ok(monoid)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[StylicElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &StylicElement {
        &self.elements[i]
    }

    /// The map `γ ↦ m·γ` of element `i`, indexed by column bit pattern.
    pub fn transform(&self, i: usize) -> &[u32] {
        &self.transforms[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// The class of the decreasing product of all letters.
    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn right_mul_letter(&self, m: usize, x: Letter) -> usize {
        self.right[m][x as usize - 1]
    }

    pub fn left_mul_letter(&self, x: Letter, m: usize) -> usize {
        self.left[m][x as usize - 1]
    }

    fn fold_right(&self, m: usize, w: &Word) -> usize {
        w.iter().fold(m, |acc, x| self.right[acc][x as usize - 1])
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.len() + j] as usize,
            None => self.fold_right(i, &self.elements[j].word),
        }
    }

    /// Index of the class of `w`.
    pub fn class_of(&self, w: &Word) -> Result<usize> {
        self.alphabet.check_word(w)?;
        Ok(self.fold_right(0, w))
    }

    /// Index of the element with the given N-tableau.
    pub fn find_tableau(&self, t: &NTableau) -> Option<usize> {
        self.class_of(&t.row_word()).ok().filter(|&i| self.elements[i].tableau == *t)
    }

    pub fn transform_index(&self, t: &[u32]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.mul(i, i) == i).collect()
    }

    /// Elements below each element in the J-order (its two-sided ideal).
    pub fn ideals(&self) -> Vec<Vec<u64>> {
        let size = self.len();
        let words = size.div_ceil(64);
        let mut out = Vec::with_capacity(size);
        let mut stack = Vec::new();
        for m in 0..size {
            let mut seen = vec![0u64; words];
            seen[m / 64] |= 1 << (m % 64);
            stack.push(m);
            while let Some(v) = stack.pop() {
                for next in self.right[v].iter().chain(&self.left[v]) {
                    let (w, b) = (next / 64, next % 64);
                    if seen[w] >> b & 1 == 0 {
                        seen[w] |= 1 << b;
                        stack.push(*next);
                    }
                }
            }
            out.push(seen);
        }
        out
    }

    pub fn j_order(&self) -> JOrder {
        let ideals = self.ideals();
        let size = self.len();
        let has = |v: usize, u: usize| ideals[v][u / 64] >> (u % 64) & 1 == 1;
        let mut j_trivial = true;
        for u in 0..size {
            for v in u + 1..size {
                if has(u, v) && has(v, u) {
                    j_trivial = false;
                }
            }
        }
        let mut covers = Vec::new();
        for v in 0..size {
            let mut nbrs: Vec<usize> = self.right[v]
                .iter()
                .chain(&self.left[v])
                .copied()
                .filter(|&u| u != v)
                .collect();
            nbrs.sort_unstable();
            nbrs.dedup();
            for &u in &nbrs {
                if !nbrs.iter().any(|&w| w != u && has(w, u)) {
                    covers.push((u, v));
                }
            }
        }
        let corank: Vec<usize> = self.elements.iter().map(|e| e.boxes()).collect();
        let graded = corank[self.identity()] == 0
            && covers.iter().all(|&(u, v)| corank[u] == corank[v] + 1);
        JOrder {
            size,
            ideals,
            covers,
            corank,
            j_trivial,
            graded,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let idem = self.idempotents();
        let style = LetterStyle::Alpha;
        let elements: Vec<serde_json::Value> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| {
                serde_json::json!({
                    "index": i,
                    "word": e.canonical_word().render(style),
                    "partition": e.partition().render(style),
                    "rows": e.tableau.rows(),
                    "idempotent": idem.binary_search(&i).is_ok(),
                    "corank": e.boxes(),
                })
            })
            .collect();
        let table: Vec<Vec<usize>> = (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.mul(i, j)).collect())
            .collect();
        serde_json::json!({
            "n": self.alphabet.size(),
            "identity": self.identity(),
            "zero": self.zero,
            "elements": elements,
            "table": table,
        })
    }
}

/// The J-order of `Styl(A)`: `u ≤ v` iff `u ∈ MvM`.
#[derive(Debug, Clone)]
pub struct JOrder {
    pub size: usize,
    ideals: Vec<Vec<u64>>,
    /// Pairs `(u, v)` with `v` covering `u`.
    pub covers: Vec<(usize, usize)>,
    /// Box count of each element's N-tableau.
    pub corank: Vec<usize>,
    pub j_trivial: bool,
    /// Identity has co-rank 0 and every cover adds exactly one box.
    pub graded: bool,
}

impl JOrder {
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.ideals[v][u / 64] >> (u % 64) & 1 == 1
    }

    pub fn to_dot(&self, monoid: &StylicMonoid) -> String {
        let mut out = String::from("digraph jorder {\n  rankdir=BT;\n");
        let top = self.corank.iter().copied().max().unwrap_or(0);
        for rank in 0..=top {
            let nodes: Vec<String> = (0..self.size)
                .filter(|&i| self.corank[i] == rank)
                .map(|i| format!("m{i}"))
                .collect();
            if !nodes.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {} }}", nodes.join("; "));
            }
        }
        for (i, e) in monoid.elements().iter().enumerate() {
            let w = e.canonical_word();
            let label = if w.is_empty() { "1".to_string() } else { w.to_string() };
            let _ = writeln!(out, "  m{i} [label=\"{label}\", corank={}];", self.corank[i]);
        }
        for &(u, v) in &self.covers {
            let _ = writeln!(out, "  m{u} -> m{v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Outcome of checking the complete-element correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompleteElementsReport {
    pub complete: usize,
    pub expected: u128,
    /// Distinct images `δ(w)⁻` as maps on the columns avoiding the largest letter.
    pub distinct_images: usize,
    pub action_failures: Vec<String>,
}

impl CompleteElementsReport {
    pub fn passed(&self) -> bool {
        self.complete as u128 == self.expected
            && self.distinct_images == self.complete
            && self.action_failures.is_empty()
    }
}

/// Complete elements (support `A`) number `B_n`, and `w ↦ δ(w)⁻` maps them
/// bijectively onto `Styl(A ∖ z)` with `δ(w)⁻·γ = (w·γ)⁻`.
pub fn complete_elements_bijection_check(monoid: &StylicMonoid) -> CompleteElementsReport {
    let a = monoid.alphabet();
    let full = a.full_set();
    let small_cols = a.column_count() / 2;
    let mut images = std::collections::HashSet::new();
    let mut complete = 0;
    let mut failures = Vec::new();
    for e in monoid.elements() {
        if e.tableau.support() != full {
            continue;
        }
        complete += 1;
        let w = e.canonical_word();
        let u: Word = delta_word(&w).iter().map(|x| x - 1).collect();
        let mut image = Vec::with_capacity(small_cols);
        for g in (0..small_cols).map(Column::from_index) {
            let lhs = act_word(&u, g);
            let rhs = Column::from_set(act_word(&w, g).set().shift_down());
            if lhs != rhs && failures.len() < 10 {
                failures.push(format!("w={w} u={u} γ={g}: {lhs} != {rhs}"));
            }
            image.push(lhs.index() as u32);
        }
        images.insert(image);
    }
    CompleteElementsReport {
        complete,
        expected: bell(a.size()),
        distinct_images: images.len(),
        action_failures: failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stylic::ntableau::from_partition;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn styl(n: usize) -> StylicMonoid {
        StylicMonoid::enumerate(Alphabet::new(n).unwrap()).unwrap()
    }

    #[test]
    fn cardinalities() {
        let sizes: Vec<usize> = (1..=4).map(|n| styl(n).len()).collect();
        assert_eq!(sizes, [2, 5, 15, 52]);
    }

    #[test]
    fn limit_is_enforced() {
        let a = Alphabet::new(7).unwrap();
        assert!(matches!(StylicMonoid::enumerate(a), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn table_is_associative_with_identity_and_zero() {
        let m = styl(3);
        let size = m.len();
        for a in 0..size {
            assert_eq!(m.mul(0, a), a);
            assert_eq!(m.mul(a, 0), a);
            assert_eq!(m.mul(m.zero(), a), m.zero());
            assert_eq!(m.mul(a, m.zero()), m.zero());
            for b in 0..size {
                for c in 0..size {
                    assert_eq!(m.mul(m.mul(a, b), c), m.mul(a, m.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn product_is_concatenation() {
        let m = styl(4);
        for i in 0..m.len() {
            for j in 0..m.len() {
                let uv = m.element(i).word.concat(&m.element(j).word);
                assert_eq!(m.mul(i, j), m.class_of(&uv).unwrap());
                assert_eq!(m.element(m.mul(i, j)).tableau, n_tableau(&uv));
            }
        }
        let cabd = m.class_of(&w("cabd")).unwrap();
        assert_eq!(m.mul(cabd, m.identity()), m.class_of(&w("cdab")).unwrap());
    }

    #[test]
    fn zero_element() {
        let m1 = styl(1);
        assert_eq!(m1.element(m1.zero()).tableau, n_tableau(&w("a")));
        let m4 = styl(4);
        let z = m4.element(m4.zero());
        assert_eq!(z.tableau, n_tableau(&w("dcba")));
        assert_eq!(z.boxes(), 10);
        for x in 1..=4 {
            assert_eq!(m4.left_mul_letter(x, m4.zero()), m4.zero());
            assert_eq!(m4.right_mul_letter(m4.zero(), x), m4.zero());
        }
    }

    #[test]
    fn idempotents_are_decreasing_words() {
        for n in 1..=4 {
            let m = styl(n);
            let idem = m.idempotents();
            assert_eq!(idem.len(), 1 << n);
            let mut expected: Vec<usize> = m
                .alphabet()
                .full_set()
                .subsets()
                .map(|s| m.class_of(&s.decreasing_word()).unwrap())
                .collect();
            expected.sort_unstable();
            assert_eq!(idem, expected);
        }
        let m = styl(2);
        let ba = m.class_of(&w("ba")).unwrap();
        let ab = m.class_of(&w("ab")).unwrap();
        assert_eq!(m.mul(ba, ba), ba);
        assert_ne!(m.mul(ab, ab), ab);
        assert!(m.idempotents().contains(&m.identity()));
    }

    #[test]
    fn elements_match_partitions() {
        let m = styl(4);
        let mut from_monoid: Vec<SetPartition> = m.elements().iter().map(|e| e.partition()).collect();
        let mut all = SetPartition::all_of_subsets(m.alphabet());
        from_monoid.sort();
        all.sort();
        assert_eq!(from_monoid, all);
        for r in all {
            let t = from_partition(&r);
            let i = m.find_tableau(&t).unwrap();
            assert_eq!(m.element(i).tableau, t);
        }
    }

    #[test]
    fn j_order_n3() {
        let m = styl(3);
        let j = m.j_order();
        assert_eq!(j.size, 15);
        assert!(j.j_trivial);
        assert!(j.graded);
        assert_eq!(j.corank[m.identity()], 0);
        assert_eq!(j.corank[m.zero()], 6);
        for u in 0..j.size {
            assert!(j.leq(m.zero(), u));
            assert!(j.leq(u, m.identity()));
        }
        let dot = j.to_dot(&m);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches(" -> ").count(), j.covers.len());
    }

    #[test]
    fn covers_match_brute_force_reduction() {
        let m = styl(3);
        let j = m.j_order();
        let n = j.size;
        let mut brute = Vec::new();
        for v in 0..n {
            for u in 0..n {
                if u != v
                    && j.leq(u, v)
                    && !(0..n).any(|w| w != u && w != v && j.leq(u, w) && j.leq(w, v))
                {
                    brute.push((u, v));
                }
            }
        }
        let mut covers = j.covers.clone();
        covers.sort_unstable();
        brute.sort_unstable();
        assert_eq!(covers, brute);
    }

    #[test]
    fn complete_elements() {
        let m = styl(4);
        let acbd = m.class_of(&w("acbd")).unwrap();
        assert_eq!(m.element(acbd).tableau.support(), m.alphabet().full_set());
        assert_eq!(delta_word(&w("acbd")), w("c"));
        assert_eq!(act_word(&w("acbd"), "a".parse().unwrap()), "cba".parse().unwrap());
        assert_eq!(act_word(&w("b"), "a".parse().unwrap()), "ba".parse().unwrap());
        for n in 1..=4 {
            let r = complete_elements_bijection_check(&styl(n));
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(complete_elements_bijection_check(&styl(2)).complete, 2);
        assert_eq!(complete_elements_bijection_check(&styl(3)).complete, 5);
    }

    #[test]
    fn json_export() {
        let m = styl(2);
        let j = m.to_json();
        assert_eq!(j["elements"].as_array().unwrap().len(), 5);
        assert_eq!(j["table"].as_array().unwrap().len(), 5);
        assert_eq!(j["elements"][0]["word"], "");
    }
}
