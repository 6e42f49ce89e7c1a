//! Syntactic congruences of two word statistics: the longest strictly
//! decreasing subsequence, whose syntactic monoid is `Styl(A)`, and the shape
//! of `P(w)`, whose left syntactic congruence is the plactic one.

use std::collections::HashMap;

use serde::Serialize;

use crate::columns::{act_word, Column};
use crate::error::{Error, Result};
use crate::stylic::StylicMonoid;
use crate::tableaux::{longest_strictly_decreasing, p_tableau, Shape};
use crate::word::{Alphabet, LetterSet, LetterStyle, Word};

/// Length of a longest strictly decreasing subsequence.
pub fn f_decr(w: &Word) -> usize {
    longest_strictly_decreasing(w)
}

/// Shape of `P(w)`.
pub fn lambda_shape(w: &Word) -> Shape {
    p_tableau(w).shape()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: String,
    pub v: String,
    pub x: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CongruenceReport {
    pub classes: usize,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
    pub witnesses: Vec<Witness>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.render(LetterStyle::Alpha)
    }
}

/// A word `x` with `|x·γ1| ≠ |x·γ2|`, for distinct columns.
pub fn column_separator(g1: Column, g2: Column) -> Result<Word> {
    if g1 == g2 {
        return Err(Error::domain(format!("{g1} cannot be separated from itself")));
    }
    if g1.len() != g2.len() {
        return Ok(Word::empty());
    }
    let (w1, w2) = (g1.word().into_vec(), g2.word().into_vec());
    if w1[0] != w2[0] {
        return Ok(Word::letter(w1[0].max(w2[0])));
    }
    // Common prefix a_n ... a_3, then a_2 in one column against a_1 < a_2.
    let i = (0..w1.len()).find(|&i| w1[i] != w2[i]).expect("distinct");
    let a2 = w1[i].max(w2[i]);
    let mut w: Vec<_> = w1[1..i].to_vec();
    w.push(a2);
    let w = Word::new(w);
    let next = column_separator(act_word(&w, g1), act_word(&w, g2))?;
    Ok(next.concat(&w))
}

/// Classify words of length at most `maxlen` by `u·1` and certify that these
/// are the classes of the left syntactic congruence of `f_decr`: words with
/// equal `u·1` agree on every left context of length at most `context_len`,
/// and words with distinct `u·1` are separated by a constructed context.
pub fn left_syntactic_check(alphabet: Alphabet, maxlen: usize, context_len: usize) -> CongruenceReport {
    let words = alphabet.words_up_to(maxlen);
    let contexts = alphabet.words_up_to(context_len);
    let mut report = CongruenceReport::default();
    let mut reps: Vec<(Column, Word, Vec<usize>)> = Vec::new();
    let mut class_of: HashMap<Column, usize> = HashMap::new();
    for u in &words {
        let key = act_word(u, Column::EMPTY);
        let sig: Vec<usize> = contexts.iter().map(|x| f_decr(&x.concat(u))).collect();
        match class_of.get(&key) {
            Some(&c) => {
                report.pairs_checked += 1;
                if reps[c].2 != sig {
                    report.failures.push(format!(
                        "{} and {} share u·1 = {key} but a left context separates them",
                        show(u),
                        show(&reps[c].1)
                    ));
                }
            }
            None => {
                class_of.insert(key, reps.len());
                reps.push((key, u.clone(), sig));
            }
        }
    }
    report.classes = reps.len();
    for u in &words {
        let key = act_word(u, Column::EMPTY);
        for (c, (other, v, _)) in reps.iter().enumerate() {
            if *other == key {
                continue;
            }
            report.pairs_checked += 1;
            let x = column_separator(key, *other).expect("distinct columns");
            if f_decr(&x.concat(u)) == f_decr(&x.concat(v)) {
                report.failures.push(format!("{} fails to separate {} from {}", show(&x), show(u), show(v)));
            } else if reps[class_of[&key]].1 == *u && class_of[&key] < c {
                report.witnesses.push(Witness { u: show(u), v: show(v), x: show(&x) });
            }
        }
    }
    report
}

/// The two-sided syntactic congruence of `m ↦ |m·1|` on the enumerated
/// monoid, from all contexts `(p, q)`. Classes equal the element count
/// exactly when the congruence is equality.
pub fn syntactic_monoid_check(monoid: &StylicMonoid) -> CongruenceReport {
    let size = monoid.len();
    let start: Vec<usize> = (0..size).map(|q| monoid.transform(q)[0] as usize).collect();
    let signature = |m: usize| -> Vec<u8> {
        let tm = monoid.transform(m);
        let mut sig = Vec::with_capacity(size * size);
        for p in 0..size {
            let tp = monoid.transform(p);
            for &g in &start {
                sig.push(LetterSet::from_bits(tp[tm[g] as usize]).len() as u8);
            }
        }
        sig
    };
    let sigs: Vec<Vec<u8>> = (0..size).map(signature).collect();
    let mut report = CongruenceReport::default();
    let mut distinct: HashMap<&[u8], usize> = HashMap::new();
    for (m, sig) in sigs.iter().enumerate() {
        if let Some(&other) = distinct.get(sig.as_slice()) {
            report.failures.push(format!(
                "{} and {} are not separated by any context",
                show(&monoid.element(other).word),
                show(&monoid.element(m).word)
            ));
        } else {
            distinct.insert(sig, m);
        }
    }
    report.classes = distinct.len();
    for i in 0..size {
        for j in i + 1..size {
            report.pairs_checked += 1;
            if let Some(k) = (0..size * size).find(|&k| sigs[i][k] != sigs[j][k]) {
                let (p, q) = (k / size, k % size);
                let x = format!("{}_{}", show(&monoid.element(p).word), show(&monoid.element(q).word));
                report.witnesses.push(Witness {
                    u: show(&monoid.element(i).word),
                    v: show(&monoid.element(j).word),
                    x,
                });
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlacticSeparator {
    pub x: Word,
    /// The exponent `m` in `x = y^m`, zero when the shapes already differ.
    pub power: usize,
    /// Index of the first column where `P(u)` and `P(v)` differ, 1-based.
    pub column: usize,
}

/// A left context `x` with `λ(xu) ≠ λ(xv)`, searched as `y^m` with `y` the
/// decreasing word of all letters `≥ b`. `Ok(None)` means the search up to
/// `m = maxlen + |A|` failed.
pub fn plactic_separator(u: &Word, v: &Word, alphabet: Alphabet, maxlen: usize) -> Result<Option<PlacticSeparator>> {
    alphabet.check_word(u)?;
    alphabet.check_word(v)?;
    let (pu, pv) = (p_tableau(u), p_tableau(v));
    if pu == pv {
        return Err(Error::domain(format!("{} and {} have the same tableau", show(u), show(v))));
    }
    let (cu, cv) = (pu.columns(), pv.columns());
    let column = (0..cu.len().max(cv.len()))
        .find(|&i| cu.get(i) != cv.get(i))
        .expect("tableaux differ")
        + 1;
    if pu.shape() != pv.shape() {
        return Ok(Some(PlacticSeparator { x: Word::empty(), power: 0, column }));
    }
    let (w1, w2) = (cu[column - 1].word().into_vec(), cv[column - 1].word().into_vec());
    let i = (0..w1.len()).find(|&i| w1[i] != w2[i]).expect("columns differ");
    let b = w1[i].max(w2[i]);
    let y = alphabet.full_set().difference(alphabet.full_set().below(b)).decreasing_word();
    for m in 1..=maxlen + alphabet.size() {
        let x = y.power(m);
        if lambda_shape(&x.concat(u)) != lambda_shape(&x.concat(v)) {
            return Ok(Some(PlacticSeparator { x, power: m, column }));
        }
    }
    Ok(None)
}

/// For all words of length at most `maxlen`: words with equal tableaux are
/// never separated by left contexts of length at most `context_len`, and
/// words with distinct tableaux get a verified separator.
pub fn plactic_left_syntactic_check(alphabet: Alphabet, maxlen: usize, context_len: usize) -> CongruenceReport {
    let words = alphabet.words_up_to(maxlen);
    let contexts = alphabet.words_up_to(context_len);
    let mut report = CongruenceReport::default();
    let mut classes: HashMap<_, (Word, Vec<Shape>)> = HashMap::new();
    for u in &words {
        let sig: Vec<Shape> = contexts.iter().map(|x| lambda_shape(&x.concat(u))).collect();
        match classes.get(&p_tableau(u)) {
            Some((rep, rep_sig)) => {
                report.pairs_checked += 1;
                if *rep_sig != sig {
                    report.failures.push(format!("{} and {} are plactic but separated", show(rep), show(u)));
                }
            }
            None => {
                classes.insert(p_tableau(u), (u.clone(), sig));
            }
        }
    }
    report.classes = classes.len();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            if p_tableau(u) == p_tableau(v) {
                continue;
            }
            report.pairs_checked += 1;
            match plactic_separator(u, v, alphabet, maxlen) {
                Ok(Some(sep)) => {
                    if sep.power > sep.column {
                        report.failures.push(format!(
                            "{} vs {} needed y^{} beyond column {}",
                            show(u),
                            show(v),
                            sep.power,
                            sep.column
                        ));
                    }
                    if !sep.x.is_empty() {
                        report.witnesses.push(Witness { u: show(u), v: show(v), x: show(&sep.x) });
                    }
                }
                Ok(None) => report.failures.push(format!("no separator for {} and {}", show(u), show(v))),
                Err(e) => report.failures.push(e.to_string()),
            }
        }
    }
    report
}
