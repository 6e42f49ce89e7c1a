//! Executable checks of the main results at small alphabet sizes, grouped
//! into suites. Each suite returns a report listing what failed.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::columns::Column;
use crate::error::{Error, Result};
use crate::evacuation::{
    all_skew_partitions, build_pyramid, delta_direct, delta_jdt, evac, evac_via_pyramid, grow_pyramid,
    jdt, jdt_outcomes, random_skew_partition, skew_row_word, Composition, JdtStrategy, SkewPartition,
};
use crate::rewriting::{
    knuth_relations, local_confluence_check, normalize_column_word, stylic_relations, ColumnWord,
    CongruenceGraph, RewriteStrategy,
};
use crate::stylic::{
    bell, complete_elements_bijection_check, from_partition, left_insert, n_tableau, pi, SetPartition,
    StylicMonoid,
};
use crate::syntactic::{left_syntactic_check, plactic_left_syntactic_check, syntactic_monoid_check};
use crate::tableaux::p_tableau;
use crate::word::{Alphabet, Letter, LetterSet, Word};

const MAX_RECORDED: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Bijection,
    Presentation,
    Evacuation,
    Graded,
    Syntactic,
    Confluence,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Bijection,
        Suite::Presentation,
        Suite::Evacuation,
        Suite::Graded,
        Suite::Syntactic,
        Suite::Confluence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bijection => "bijection",
            Suite::Presentation => "presentation",
            Suite::Evacuation => "evacuation",
            Suite::Graded => "graded",
            Suite::Syntactic => "syntactic",
            Suite::Confluence => "confluence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Longest words scanned; each suite has its own default.
    pub maxlen: Option<usize>,
    pub seed: u64,
    /// Enumeration ceiling for `Styl(A)`.
    pub limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { maxlen: None, seed: 0, limit: crate::stylic::DEFAULT_ENUMERATION_LIMIT }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Observations that are reported but do not fail the suite.
    pub findings: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, n: usize) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            n,
            checks: 0,
            failures: Vec::new(),
            findings: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < MAX_RECORDED {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

pub fn run_suite(suite: Suite, n: usize, opts: &VerifyOptions) -> Result<SuiteReport> {
    let alphabet = Alphabet::new(n)?;
    match suite {
        Suite::Bijection => bijection(alphabet, opts),
        Suite::Presentation => presentation(alphabet, opts),
        Suite::Evacuation => evacuation(alphabet, opts),
        Suite::Graded => graded(alphabet, opts),
        Suite::Syntactic => syntactic(alphabet, opts),
        Suite::Confluence => confluence(alphabet, opts),
    }
}

pub fn run_all(n: usize, opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    Suite::ALL.into_iter().map(|s| run_suite(s, n, opts)).collect()
}

fn enumerate(alphabet: Alphabet, opts: &VerifyOptions) -> Result<StylicMonoid> {
    StylicMonoid::enumerate_with_limit(alphabet, opts.limit)
}

/// Cardinality, the N-tableau bijection, idempotents and left insertion.
pub fn bijection(alphabet: Alphabet, opts: &VerifyOptions) -> Result<SuiteReport> {
    let n = alphabet.size();
    let mut r = SuiteReport::new(Suite::Bijection, n);
    let m = enumerate(alphabet, opts)?;
    r.check(m.len() as u128 == bell(n + 1), || format!("|Styl| = {} but B_{} = {}", m.len(), n + 1, bell(n + 1)));

    let tableaux: HashSet<_> = m.elements().iter().map(|e| e.tableau.clone()).collect();
    r.check(tableaux.len() == m.len(), || format!("{} N-tableaux for {} elements", tableaux.len(), m.len()));
    for e in m.elements() {
        let back = n_tableau(&e.tableau.row_word());
        r.check(back == e.tableau, || format!("N(r(T)) = {back} for T = {}", e.tableau));
    }
    let partitions = SetPartition::all_of_subsets(alphabet);
    for p in &partitions {
        let found = m.find_tableau(&from_partition(p)).is_some();
        r.check(found, || format!("partition {p} has no element"));
    }

    let idempotents: HashSet<usize> = m.idempotents().into_iter().collect();
    r.check(idempotents.len() == 1 << n, || format!("{} idempotents, expected {}", idempotents.len(), 1 << n));
    let decreasing: HashSet<usize> = alphabet
        .full_set()
        .subsets()
        .map(|s| m.class_of(&s.decreasing_word()).expect("letters in range"))
        .collect();
    r.check(decreasing == idempotents, || "idempotents differ from decreasing words".to_string());

    let complete = complete_elements_bijection_check(&m);
    r.check(complete.passed(), || format!("complete elements: {complete:?}"));

    for e in m.elements() {
        for x in alphabet.letters() {
            let direct = left_insert(x, &e.tableau);
            let expected = n_tableau(&Word::letter(x).concat(&e.tableau.row_word()));
            r.check(direct == expected, || format!("{x}→{} gives {direct}, expected {expected}", e.tableau));
        }
    }
    r.note(format!("{} elements, {} idempotents", m.len(), idempotents.len()));
    Ok(r)
}

/// Stylic relations hold in the monoid, Knuth classes refine stylic ones, and
/// stylic-equal short words are connected by relation moves.
pub fn presentation(alphabet: Alphabet, opts: &VerifyOptions) -> Result<SuiteReport> {
    let n = alphabet.size();
    let mut r = SuiteReport::new(Suite::Presentation, n);
    let maxlen = opts.maxlen.unwrap_or(5);
    let rels = stylic_relations(alphabet);
    let m = enumerate(alphabet, opts)?;
    for (l, rhs) in rels.pairs() {
        let ok = m.class_of(l)? == m.class_of(rhs)?;
        r.check(ok, || format!("{l} = {rhs} fails in Styl(A)"));
    }
    for (l, rhs) in knuth_relations(alphabet).pairs() {
        r.check(p_tableau(l) == p_tableau(rhs), || format!("{l} = {rhs} is not plactic"));
    }

    let words = alphabet.words_up_to(maxlen);
    let mut by_plactic: HashMap<_, &Word> = HashMap::new();
    for u in &words {
        let rep = *by_plactic.entry(p_tableau(u)).or_insert(u);
        r.check(n_tableau(rep) == n_tableau(u), || format!("{rep} and {u} are plactic but not stylic"));
    }

    if n <= 3 {
        let mut classes: HashMap<_, Vec<&Word>> = HashMap::new();
        for u in &words {
            classes.entry(n_tableau(u)).or_default().push(u);
        }
        let mut graphs: HashMap<usize, CongruenceGraph> = HashMap::new();
        let mut pairs = 0;
        for class in classes.values() {
            for (i, u) in class.iter().enumerate() {
                for v in &class[i + 1..] {
                    let cap = 2 * u.len().max(v.len()) + 2;
                    let graph = match graphs.entry(cap) {
                        Entry::Occupied(e) => e.into_mut(),
                        Entry::Vacant(e) => e.insert(CongruenceGraph::new(alphabet, &rels, cap)?),
                    };
                    pairs += 1;
                    r.checks += 1;
                    if !graph.connected(u, v) && r.findings.len() < MAX_RECORDED {
                        r.findings.push(format!("{u} ≡ {v} but not connected within length {cap}"));
                    }
                }
            }
        }
        r.note(format!("completeness slice: {pairs} stylic-equal pairs with |u|,|v| ≤ {maxlen}"));
    } else {
        r.note("completeness slice skipped for n > 3");
    }
    Ok(r)
}

/// Evacuation against θ, Δ two ways, jeu de taquin normality and the pyramid.
pub fn evacuation(alphabet: Alphabet, opts: &VerifyOptions) -> Result<SuiteReport> {
    let n = alphabet.size();
    let mut r = SuiteReport::new(Suite::Evacuation, n);
    let maxlen = opts.maxlen.unwrap_or(6);
    for u in alphabet.words_up_to(maxlen) {
        let lhs = pi(&u.theta(alphabet)?);
        let rhs = evac(&pi(&u), alphabet)?;
        r.check(lhs == rhs, || format!("π(θ({u})) = {lhs} but evac(π({u})) = {rhs}"));
    }
    for p in SetPartition::all_of_subsets(alphabet) {
        let e = evac(&p, alphabet)?;
        r.check(evac(&e, alphabet)? == p, || format!("evac is not an involution at {p}"));
        r.check(Composition::of_partition(&e) == Composition::of_partition(&p), || format!("evac changes the shape of {p}"));
    }

    let z = n as Letter;
    let full = SetPartition::all_on(LetterSet::full(n));
    let mut seen = HashMap::new();
    for p in &full {
        let d = delta_direct(p)?;
        let (dj, _) = delta_jdt(p)?;
        r.check(d == dj, || format!("Δ({p}) = {d} but jeu de taquin gives {dj}"));

        let e = evac(p, alphabet)?;
        let pyr = build_pyramid(p);
        r.check(pyr.all_arrows_are_covers(), || format!("pyramid of {p} has a non-covering arrow"));
        r.check(grow_pyramid(&pyr.rows()[0]).ok().as_ref() == Some(&pyr), || format!("rhombus rule fails for {p}"));
        let via = evac_via_pyramid(p, alphabet)?;
        r.check(via == e, || format!("evac({p}) = {e} but the pyramid gives {via}"));
        let lhs = evac(&p.remove(z), alphabet)?;
        let rhs = delta_direct(&e)?;
        r.check(lhs == rhs, || format!("evac({p} ∖ z) = {lhs} but Δ(evac) = {rhs}"));

        if let Some(other) = seen.insert((p.len(), p.remove(z), d), p.clone()) {
            r.check(false, || format!("{other} and {p} agree on block count, R∖z and Δ"));
        }
    }

    let exhaustive = exhaustive_normality(n.min(4), n.min(4) + 3);
    r.checks += exhaustive.0;
    for s in exhaustive.1 {
        r.check(false, || format!("jeu de taquin depends on the corners for {s}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 0..1000 {
        let s = random_skew_partition(&mut rng, 6, 6);
        let results = [
            jdt(&s, JdtStrategy::Lowest),
            jdt(&s, JdtStrategy::Highest),
            jdt(&s, JdtStrategy::Seeded(opts.seed.wrapping_add(i))),
        ];
        let expected = pi(&skew_row_word(&s));
        r.check(results.iter().all(|x| *x == expected), || format!("jeu de taquin on {s} gives {results:?}"));
    }
    r.note(format!("words up to length {maxlen}; 1000 random skew partitions with seed {}", opts.seed));
    Ok(r)
}

/// Checks every increasing labelling of skew shapes with at most `cells`
/// labels inside outer shapes of size at most `outer_size`. Returns the
/// number checked and the counterexamples.
pub fn exhaustive_normality(cells: usize, outer_size: usize) -> (usize, Vec<SkewPartition>) {
    let mut all = vec![Composition::empty()];
    let mut layer = vec![Composition::empty()];
    for _ in 0..outer_size {
        layer = layer.iter().flat_map(|c| c.covers()).collect();
        layer.sort();
        layer.dedup();
        all.extend(layer.iter().cloned());
    }
    let mut count = 0;
    let mut bad = Vec::new();
    for outer in &all {
        for inner in &all {
            let m = outer.size().saturating_sub(inner.size());
            if m == 0 || m > cells || !inner.is_subset(outer) {
                continue;
            }
            for s in all_skew_partitions(outer, inner, LetterSet::full(m)) {
                count += 1;
                let outcomes = jdt_outcomes(&s);
                if outcomes.len() != 1 || outcomes[0] != pi(&skew_row_word(&s)) {
                    bad.push(s);
                }
            }
        }
    }
    (count, bad)
}

/// J-triviality and the grading of the J-order by box count.
pub fn graded(alphabet: Alphabet, opts: &VerifyOptions) -> Result<SuiteReport> {
    let n = alphabet.size();
    let mut r = SuiteReport::new(Suite::Graded, n);
    let m = enumerate(alphabet, opts)?;
    let j = m.j_order();
    r.check(j.j_trivial, || "Styl(A) is not J-trivial".to_string());
    r.check(j.graded, || "the J-order is not graded".to_string());
    for (i, e) in m.elements().iter().enumerate() {
        r.check(j.corank[i] == e.boxes(), || format!("co-rank of {} is {}", e.tableau, j.corank[i]));
    }
    for &(u, v) in &j.covers {
        let (bu, bv) = (m.element(u).boxes(), m.element(v).boxes());
        r.check(bu == bv + 1, || format!("cover {u} < {v} has box counts {bu}, {bv}"));
    }
    r.note(format!("{} elements, {} covering pairs", m.len(), j.covers.len()));
    Ok(r)
}

/// Left classes by `u·1`, the two-sided scan on the monoid, and the plactic
/// left-syntactic check for small alphabets.
pub fn syntactic(alphabet: Alphabet, opts: &VerifyOptions) -> Result<SuiteReport> {
    let n = alphabet.size();
    let mut r = SuiteReport::new(Suite::Syntactic, n);
    let maxlen = opts.maxlen.unwrap_or(6);
    let left = left_syntactic_check(alphabet, maxlen, maxlen.min(3));
    r.checks += left.pairs_checked;
    r.failures.extend(left.failures.iter().take(MAX_RECORDED).cloned());
    if maxlen >= n {
        r.check(left.classes == 1 << n, || format!("{} left classes, expected {}", left.classes, 1 << n));
    }
    let column_pairs = (1usize << n) * ((1usize << n) - 1) / 2;
    r.check(left.witnesses.len() == column_pairs || maxlen < n, || {
        format!("{} separators for {column_pairs} column pairs", left.witnesses.len())
    });

    let m = enumerate(alphabet, opts)?;
    let two = syntactic_monoid_check(&m);
    r.checks += two.pairs_checked;
    r.failures.extend(two.failures.iter().take(MAX_RECORDED).cloned());
    r.check(two.classes == m.len(), || format!("{} syntactic classes for {} elements", two.classes, m.len()));

    if n <= 3 {
        let plactic = plactic_left_syntactic_check(alphabet, maxlen.min(4), 2);
        r.checks += plactic.pairs_checked;
        r.failures.extend(plactic.failures.iter().take(MAX_RECORDED).cloned());
        r.note(format!("plactic check over {} classes", plactic.classes));
    } else {
        r.note("plactic left-syntactic check skipped for n > 3");
    }
    Ok(r)
}

/// Local confluence and termination of the column system, and normal forms.
pub fn confluence(alphabet: Alphabet, opts: &VerifyOptions) -> Result<SuiteReport> {
    let n = alphabet.size();
    let mut r = SuiteReport::new(Suite::Confluence, n);
    let maxlen = opts.maxlen.unwrap_or(6);
    let report = local_confluence_check(alphabet);
    r.checks += report.triples + report.rules;
    r.failures.extend(report.non_decreasing_rules.iter().take(MAX_RECORDED).cloned());
    r.failures.extend(report.non_joinable.iter().take(MAX_RECORDED).cloned());
    for u in alphabet.words_up_to(maxlen) {
        let expected = ColumnWord::of_tableau_of(&u);
        let got = normalize_column_word(&ColumnWord::of_letters(&u), RewriteStrategy::Leftmost);
        r.check(got == expected, || format!("{u} normalizes to {got}, expected {expected}"));
    }
    r.check(Column::all(alphabet).count() == 1 << n, || "column count".to_string());
    r.note(format!("{} triples, {} peaks, {} rules", report.triples, report.peaks, report.rules));
    Ok(r)
}
