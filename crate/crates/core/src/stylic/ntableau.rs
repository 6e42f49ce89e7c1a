use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::SetPartition;
use crate::error::{Error, Result};
use crate::tableaux::{Shape, Tableau};
use crate::word::{render_letter, Alphabet, Letter, LetterSet, LetterStyle, Word};

/// A tableau with strictly increasing rows, each contained in the row below.
/// Rows are stored bottom-up as sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "RawNTableau")]
pub struct NTableau {
    rows: Vec<LetterSet>,
}

#[derive(Deserialize)]
struct RawNTableau {
    rows: Vec<LetterSet>,
}

impl TryFrom<RawNTableau> for NTableau {
    type Error = Error;

    fn try_from(raw: RawNTableau) -> Result<Self> {
        NTableau::from_rows(raw.rows)
    }
}

impl NTableau {
    pub fn empty() -> Self {
        NTableau::default()
    }

    pub fn from_rows(rows: Vec<LetterSet>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::domain(format!("row {} is empty", i + 1)));
            }
            if i > 0 {
                let below = rows[i - 1];
                if !r.is_subset(below) {
                    return Err(Error::domain(format!("row {} is not inside the row below", i + 1)));
                }
                if r.smallest() <= below.smallest() {
                    return Err(Error::domain(format!(
                        "row {} does not start above the row below",
                        i + 1
                    )));
                }
            }
        }
        Ok(NTableau { rows })
    }

    pub fn rows(&self) -> &[LetterSet] {
        &self.rows
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn support(&self) -> LetterSet {
        self.rows.first().copied().unwrap_or_default()
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.rows.iter().map(|r| r.len()).collect()).expect("rows shrink upwards")
    }

    /// Rows from the top down, each increasing.
    pub fn row_word(&self) -> Word {
        self.rows.iter().rev().flat_map(|r| r.iter()).collect()
    }

    pub fn to_tableau(&self) -> Tableau {
        Tableau::from_rows(self.rows.iter().map(|r| r.to_vec()).collect())
            .expect("an N-tableau is a tableau")
    }

    /// N-insertion of `x`: each row absorbs the incoming letter and passes a
    /// copy of its smallest letter above it to the next row.
    pub fn insert(&mut self, x: Letter) {
        let mut carry = Some(x);
        let mut i = 0;
        while let Some(x) = carry {
            if i == self.rows.len() {
                self.rows.push(LetterSet::singleton(x));
                return;
            }
            carry = self.rows[i].next_above(x);
            self.rows[i].insert(x);
            i += 1;
        }
    }

    pub fn render(&self, style: LetterStyle) -> String {
        let style = style.fit(self.support().largest().unwrap_or(1));
        self.rows
            .iter()
            .rev()
            .map(|r| {
                r.iter()
                    .map(|x| render_letter(x, style))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for NTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterStyle::Alpha))
    }
}

/// `x↑_B`: the smallest letter of `B` greater than `x`.
pub fn up(x: Letter, b: LetterSet) -> Option<Letter> {
    b.next_above(x)
}

/// `δ(1) = 1`, `δ(wx) = δ(w) · x↑_{Supp(w)}`.
pub fn delta_word(w: &Word) -> Word {
    let mut supp = LetterSet::EMPTY;
    let mut out = Word::empty();
    for x in w.iter() {
        if let Some(y) = up(x, supp) {
            out.push(y);
        }
        supp.insert(x);
    }
    out
}

/// `D_B(C) = {c↑_B : c ∈ C}`.
pub fn d_operator(b: LetterSet, c: LetterSet) -> LetterSet {
    c.iter().filter_map(|x| up(x, b)).collect()
}

pub fn n_insert(t: &NTableau, x: Letter) -> NTableau {
    let mut t = t.clone();
    t.insert(x);
    t
}

pub fn n_tableau(w: &Word) -> NTableau {
    let mut t = NTableau::empty();
    w.iter().for_each(|x| t.insert(x));
    t
}

/// Left insertion `x → T`, which computes `N(x · r(T))` directly.
pub fn left_insert(x: Letter, t: &NTableau) -> NTableau {
    let rows = &t.rows;
    let k = rows.len();
    if k == 0 || Some(x) <= rows[0].smallest() {
        let mut out = t.clone();
        match out.rows.first_mut() {
            Some(r) => r.insert(x),
            None => out.rows.push(LetterSet::singleton(x)),
        }
        return out;
    }
    let p = |i: usize| rows[i - 1].smallest().expect("rows are nonempty");
    // Rows are numbered from 1; row k + 1 is a fresh empty row.
    let t_idx = (1..=k).filter(|&i| x > p(i)).count() + 1;
    if t_idx <= k && x == p(t_idx) {
        return t.clone();
    }
    let y = |i: usize| if i <= k { rows[i - 1].next_above(x) } else { None };
    let r = (1..=k).rev().find(|&i| rows[i - 1].contains(x)).unwrap_or(0);
    debug_assert!(r < t_idx);
    let s = (r + 1..=t_idx).rev().find(|&i| y(i).is_some());
    if let Some(s) = s {
        debug_assert!(t_idx > k || s == t_idx);
    }
    let mut out = rows.clone();
    if t_idx == k + 1 {
        out.push(LetterSet::EMPTY);
    }
    for row in &mut out[r..t_idx] {
        row.insert(x);
    }
    if let Some(s) = s {
        for i in r + 2..=s {
            if let (Some(a), Some(b)) = (y(i), y(i - 1)) {
                if a == b {
                    out[i - 1].remove(a);
                }
            }
        }
    }
    NTableau { rows: out }
}

/// Blocks `R_k, R_{k-1} ∖ R_k, ..., R_1 ∖ R_2`.
pub fn to_partition(t: &NTableau) -> SetPartition {
    let rows = &t.rows;
    let blocks: Vec<LetterSet> = (0..rows.len())
        .rev()
        .map(|i| match rows.get(i + 1) {
            Some(&above) => rows[i].difference(above),
            None => rows[i],
        })
        .collect();
    SetPartition::new(blocks).expect("row differences partition the support")
}

/// Row `i` is the union of the blocks `B_i, ..., B_k`.
pub fn from_partition(r: &SetPartition) -> NTableau {
    let mut rows: Vec<LetterSet> = Vec::with_capacity(r.len());
    let mut acc = LetterSet::EMPTY;
    for b in r.blocks().iter().rev() {
        acc = acc.union(*b);
        rows.push(acc);
    }
    rows.reverse();
    NTableau { rows }
}

/// The partition attached to the N-tableau of `w`.
pub fn pi(w: &Word) -> SetPartition {
    to_partition(&n_tableau(w))
}

/// `N(θ(r(T)))`, the image of a class under the involution.
pub fn theta_tableau(t: &NTableau, alphabet: Alphabet) -> Result<NTableau> {
    Ok(n_tableau(&t.row_word().theta(alphabet)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::columns::{act_word, Column};
    use crate::tableaux::p_tableau;
    use crate::word::canonical_inflation_exponents;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn set(s: &str) -> LetterSet {
        w(s).support()
    }

    fn nt(rows: &[&str]) -> NTableau {
        NTableau::from_rows(rows.iter().map(|r| set(r)).collect()).unwrap()
    }

    fn sample() -> NTableau {
        nt(&["abcde", "bde", "de"])
    }

    /// Stylic equality through the action on all columns.
    fn styl_eq(u: &Word, v: &Word, a: Alphabet) -> bool {
        Column::all(a).all(|g| act_word(u, g) == act_word(v, g))
    }

    #[test]
    fn up_examples() {
        assert_eq!(up(2, set("acd")), Some(3));
        assert_eq!(up(4, set("ab")), None);
        assert_eq!(up(1, set("b")), Some(2));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_word(&w("acbd")), w("c"));
        assert_eq!(delta_word(&Word::empty()), Word::empty());
        assert_eq!(delta_word(&w("aa")), Word::empty());
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_operator(set("bd"), set("abc")), set("bd"));
        assert_eq!(d_operator(LetterSet::EMPTY, set("abc")), LetterSet::EMPTY);
        for b in LetterSet::full(4).subsets() {
            for c in LetterSet::full(4).subsets() {
                if !b.is_empty() && b.is_subset(c) && b.smallest() > c.smallest() {
                    assert_eq!(d_operator(b, c), b);
                }
            }
        }
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(n_insert(&NTableau::empty(), 1), nt(&["a"]));
        let t = nt(&["abd", "d"]);
        assert_eq!(n_insert(&t, 4), t);
        let mut s = NTableau::empty();
        for x in [3, 1, 2, 4] {
            s.insert(x);
        }
        assert_eq!(s, nt(&["abcd", "c"]));
        assert_eq!(s.to_string(), "c\na b c d");
    }

    #[test]
    fn n_tableau_examples() {
        assert_eq!(n_tableau(&w("cabd")), n_tableau(&w("cdab")));
        assert_eq!(n_tableau(&Word::empty()), NTableau::empty());
        assert_eq!(n_tableau(&sample().row_word()), sample());
    }

    #[test]
    fn first_row_is_support_rest_is_delta() {
        let a = Alphabet::new(4).unwrap();
        for u in a.words_up_to(6) {
            let t = n_tableau(&u);
            assert_eq!(t.support(), u.support());
            let rest = n_tableau(&delta_word(&u));
            assert_eq!(&t.rows()[t.rows().len().min(1)..], rest.rows());
        }
    }

    #[test]
    fn row_word_is_equivalent_and_supports_agree() {
        let a = Alphabet::new(3).unwrap();
        let words = a.words_up_to(6);
        for u in &words {
            let t = n_tableau(u);
            assert!(styl_eq(u, &t.row_word(), a));
            assert_eq!(n_tableau(&t.row_word()), t);
        }
        for u in a.words_up_to(4) {
            for v in a.words_up_to(4) {
                if styl_eq(&u, &v, a) {
                    assert_eq!(u.support(), v.support());
                    assert_eq!(n_tableau(&u), n_tableau(&v));
                }
            }
        }
    }

    #[test]
    fn a_u_a_absorbs() {
        let a = Alphabet::new(4).unwrap();
        for u in a.words_up_to(5) {
            let low = u.iter().min().unwrap_or(1);
            for x in 1..=low {
                let ux = u.concat(&Word::letter(x));
                assert_eq!(n_tableau(&Word::letter(x).concat(&ux)), n_tableau(&ux));
            }
        }
    }

    #[test]
    fn inflation_simulates_n_algorithm() {
        let a = Alphabet::new(3).unwrap();
        for u in a.words_up_to(5) {
            if u.is_empty() {
                continue;
            }
            let e = canonical_inflation_exponents(u.len()).unwrap();
            let p = p_tableau(&u.inflate(&e).unwrap());
            let n = n_tableau(&u);
            assert_eq!(p.height(), n.height(), "{u}");
            for (prow, nrow) in p.rows().iter().zip(n.rows()) {
                assert_eq!(prow.iter().copied().collect::<LetterSet>(), *nrow);
            }
        }
    }

    #[test]
    fn delta_of_products() {
        // δ(x u_k ⋯ u_1) ≡ δ(x) ∏_{i=k..1} s(D_{U_{i+1} ∪ X}(U_i)) for
        // strictly increasing u_i with decreasing supports.
        let a = Alphabet::new(4).unwrap();
        let full = a.full_set();
        let chains: Vec<Vec<LetterSet>> = {
            let mut out = vec![vec![]];
            let mut frontier = vec![vec![]];
            for _ in 0..3 {
                let mut next = Vec::new();
                for c in &frontier {
                    let last: LetterSet = c.last().copied().unwrap_or(full);
                    for s in last.subsets().filter(|s| !s.is_empty()) {
                        let mut v: Vec<LetterSet> = c.clone();
                        v.push(s);
                        next.push(v);
                    }
                }
                out.extend(next.iter().cloned());
                frontier = next;
            }
            out
        };
        let prefixes = a.words_up_to(2);
        let mut checked = 0;
        for chain in &chains {
            // chain[0] = U_1 ⊇ chain[1] = U_2 ⊇ ...
            let k = chain.len();
            let body: Word = (0..k).rev().flat_map(|i| chain[i].iter()).collect();
            for x in &prefixes {
                let xs = x.support();
                let lhs = delta_word(&x.concat(&body));
                let mut rhs = delta_word(x);
                for i in (0..k).rev() {
                    let next = chain.get(i + 1).copied().unwrap_or_default();
                    rhs = rhs.concat(&d_operator(next.union(xs), chain[i]).increasing_word());
                }
                assert!(styl_eq(&lhs, &rhs, a), "x={x} chain={chain:?}");
                checked += 1;
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn left_insert_examples() {
        assert_eq!(left_insert(1, &nt(&["b"])), nt(&["ab"]));
        assert_eq!(left_insert(2, &nt(&["ab", "b"])), nt(&["ab", "b"]));
        assert_eq!(left_insert(1, &nt(&["bc", "c"])), nt(&["abc", "c"]));
        assert_eq!(left_insert(3, &NTableau::empty()), nt(&["c"]));
    }

    #[test]
    fn left_insert_matches_oracle() {
        let a = Alphabet::new(4).unwrap();
        for r in SetPartition::all_of_subsets(a) {
            let t = from_partition(&r);
            for x in a.letters() {
                let oracle = n_tableau(&Word::letter(x).concat(&t.row_word()));
                assert_eq!(left_insert(x, &t), oracle, "{x} -> {r}");
            }
        }
    }

    #[test]
    fn insertions_grow_the_shape() {
        let a = Alphabet::new(4).unwrap();
        for r in SetPartition::all_of_subsets(a) {
            let t = from_partition(&r);
            for x in a.letters() {
                for s in [n_insert(&t, x), left_insert(x, &t)] {
                    if s != t {
                        assert!(t.shape().young_lt(&s.shape()));
                    }
                }
            }
        }
    }

    #[test]
    fn theta_swaps_left_and_right_insertion() {
        let a = Alphabet::new(4).unwrap();
        for r in SetPartition::all_of_subsets(a) {
            let t = from_partition(&r);
            let tt = theta_tableau(&t, a).unwrap();
            for x in a.letters() {
                let lhs = theta_tableau(&left_insert(x, &t), a).unwrap();
                assert_eq!(lhs, n_insert(&tt, a.reverse_letter(x)));
            }
        }
    }

    #[test]
    fn theta_respects_classes() {
        let a = Alphabet::new(3).unwrap();
        for u in a.words_up_to(6) {
            let t = n_tableau(&u);
            assert_eq!(n_tableau(&u.theta(a).unwrap()), theta_tableau(&t, a).unwrap());
        }
    }

    #[test]
    fn sub_alphabet_embedding() {
        // Classes over {a, c} (relabelled as a 2-letter alphabet) agree with
        // classes over {a, b, c, d}.
        let big = Alphabet::new(4).unwrap();
        let small = Alphabet::new(2).unwrap();
        let embed = |u: &Word| -> Word { u.iter().map(|x| 2 * x - 1).collect() };
        let words = small.words_up_to(4);
        for u in &words {
            for v in &words {
                assert_eq!(styl_eq(u, v, small), styl_eq(&embed(u), &embed(v), big));
            }
        }
    }

    #[test]
    fn partition_bijection() {
        assert_eq!(to_partition(&sample()), "ac/b/de".parse().unwrap());
        assert_eq!(from_partition(&"ac/b/de".parse().unwrap()), sample());
        assert_eq!(to_partition(&NTableau::empty()), SetPartition::empty());
        assert_eq!(from_partition(&SetPartition::empty()), NTableau::empty());
        assert_eq!(to_partition(&nt(&["ab"])), "ab".parse().unwrap());
        let a = Alphabet::new(5).unwrap();
        for r in SetPartition::all_of_subsets(a) {
            let t = from_partition(&r);
            assert!(NTableau::from_rows(t.rows().to_vec()).is_ok());
            assert_eq!(to_partition(&t), r);
        }
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi(&w("cabd")), "abd/c".parse().unwrap());
        assert_eq!(pi(&Word::empty()), SetPartition::empty());
        assert_eq!(pi(&sample().row_word()), "ac/b/de".parse().unwrap());
    }

    #[test]
    fn validation_and_json() {
        assert!(NTableau::from_rows(vec![set("ab"), set("c")]).is_err());
        assert!(NTableau::from_rows(vec![set("ab"), set("a")]).is_err());
        let j = serde_json::to_string(&sample()).unwrap();
        assert_eq!(j, r#"{"rows":[[1,2,3,4,5],[2,4,5],[4,5]]}"#);
        assert_eq!(serde_json::from_str::<NTableau>(&j).unwrap(), sample());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn n_insertion_keeps_n_tableaux(letters in prop::collection::vec(1u8..=7, 0..20)) {
                let t = n_tableau(&Word::new(letters));
                prop_assert!(NTableau::from_rows(t.rows().to_vec()).is_ok());
                prop_assert_eq!(n_tableau(&t.row_word()), t);
            }

            #[test]
            fn left_insertion_on_random_words(
                letters in prop::collection::vec(1u8..=7, 0..16),
                x in 1u8..=7
            ) {
                let u = Word::new(letters);
                let t = n_tableau(&u);
                prop_assert_eq!(left_insert(x, &t), n_tableau(&Word::letter(x).concat(&u)));
            }
        }
    }
}
