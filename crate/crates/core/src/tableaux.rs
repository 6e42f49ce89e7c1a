//! Semistandard tableaux and Schensted insertion.
//!
//! Rows are stored bottom-up: `rows[0]` is the longest row. Columns strictly
//! increase going up, rows weakly increase to the right.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::columns::Column;
use crate::error::{Error, Result};
use crate::word::{render_letter, Letter, LetterSet, LetterStyle, Word};

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::domain(format!("{parts:?} is not a partition")));
        }
        Ok(Shape(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Componentwise comparison of parts (missing parts count as zero).
    pub fn young_leq(&self, other: &Shape) -> bool {
        let len = self.0.len().max(other.0.len());
        (0..len).all(|i| self.part(i) <= other.part(i))
    }

    pub fn young_lt(&self, other: &Shape) -> bool {
        self != other && self.young_leq(other)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn young_leq(lambda: &Shape, mu: &Shape) -> bool {
    lambda.young_leq(mu)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
}

#[derive(Deserialize)]
struct RawTableau {
    rows: Vec<Vec<Letter>>,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;

    fn try_from(raw: RawTableau) -> Result<Self> {
        Tableau::from_rows(raw.rows)
    }
}

impl Tableau {
    pub fn empty() -> Self {
        Tableau::default()
    }

    /// Build from rows listed bottom-up, checking the tableau conditions.
    pub fn from_rows(rows: Vec<Vec<Letter>>) -> Result<Self> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    /// Build from columns listed left to right.
    pub fn from_columns(columns: &[Column]) -> Result<Self> {
        let mut rows: Vec<Vec<Letter>> = Vec::new();
        for col in columns {
            for (i, x) in col.set().iter().enumerate() {
                if rows.len() <= i {
                    rows.push(Vec::new());
                }
                rows[i].push(x);
            }
        }
        Tableau::from_rows(rows)
    }

    fn validate(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::domain(format!("row {} is empty", i + 1)));
            }
            if row.windows(2).any(|p| p[0] > p[1]) {
                return Err(Error::domain(format!("row {} is not weakly increasing", i + 1)));
            }
            if let Some(below) = i.checked_sub(1).map(|j| &self.rows[j]) {
                if row.len() > below.len() {
                    return Err(Error::domain(format!("row {} longer than the row below", i + 1)));
                }
                if row.iter().zip(below).any(|(&up, &down)| up <= down) {
                    return Err(Error::domain(format!(
                        "column strictness fails between rows {} and {}",
                        i,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Shape {
        Shape(self.rows.iter().map(Vec::len).collect())
    }

    /// Columns left to right.
    pub fn columns(&self) -> Vec<Column> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|j| {
                Column::from_set(
                    self.rows
                        .iter()
                        .take_while(|r| r.len() > j)
                        .map(|r| r[j])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn first_column(&self) -> Column {
        Column::from_set(self.rows.iter().map(|r| r[0]).collect())
    }

    /// Rows from the top one down, each read left to right.
    pub fn row_word(&self) -> Word {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Columns from left to right, each read top-down.
    pub fn column_word(&self) -> Word {
        self.columns()
            .iter()
            .flat_map(|c| c.set().iter().rev())
            .collect()
    }

    /// Row insertion of `x` (Schensted's bumping to the rows above).
    pub fn row_insert(&mut self, x: Letter) {
        let mut carry = Some(x);
        let mut i = 0;
        while let Some(x) = carry {
            if i == self.rows.len() {
                self.rows.push(vec![x]);
                return;
            }
            let (row, bumped) = row_insert_into_row(std::mem::take(&mut self.rows[i]), x);
            self.rows[i] = row;
            carry = bumped;
            i += 1;
        }
    }

    /// Column insertion of `x`: the first column absorbs `x` and bumps into
    /// the next column to the right.
    pub fn column_insert(&mut self, x: Letter) {
        let mut cols = self.columns();
        let mut carry = Some(x);
        let mut j = 0;
        while let Some(x) = carry {
            if j == cols.len() {
                cols.push(Column::from_set(LetterSet::singleton(x)));
                break;
            }
            let (col, bumped) = column_insert_into_column(cols[j], x);
            cols[j] = col;
            carry = bumped;
            j += 1;
        }
        *self = Tableau::from_columns(&cols).expect("column insertion keeps a tableau");
    }

    pub fn row_insert_word(&mut self, w: &Word) {
        w.iter().for_each(|x| self.row_insert(x));
    }

    /// Column-insert the letters of `u` from right to left, giving `P(u * r(T))`.
    pub fn column_insert_word(&mut self, u: &Word) {
        u.iter().rev().for_each(|x| self.column_insert(x));
    }

    pub fn render(&self, style: LetterStyle) -> String {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(1);
        let style = style.fit(max);
        self.rows
            .iter()
            .rev()
            .map(|r| {
                r.iter()
                    .map(|&x| render_letter(x, style))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterStyle::Alpha))
    }
}

/// Insert `x` into a column: the smallest `y >= x` is replaced by `x` and
/// bumped; otherwise `x` is added.
pub fn column_insert_into_column(gamma: Column, x: Letter) -> (Column, Option<Letter>) {
    let set = gamma.set();
    match set.next_at_least(x) {
        Some(y) => (Column::from_set(set.without(y).with(x)), Some(y)),
        None => (Column::from_set(set.with(x)), None),
    }
}

/// Insert `x` into a weakly increasing row, bumping the smallest letter `> x`.
pub fn row_insert_into_row(mut row: Vec<Letter>, x: Letter) -> (Vec<Letter>, Option<Letter>) {
    let pos = row.partition_point(|&y| y <= x);
    if pos == row.len() {
        row.push(x);
        (row, None)
    } else {
        let y = std::mem::replace(&mut row[pos], x);
        (row, Some(y))
    }
}

/// Schensted's P-symbol, by row insertion from left to right.
pub fn p_tableau(w: &Word) -> Tableau {
    let mut t = Tableau::empty();
    t.row_insert_word(w);
    t
}

/// The same tableau by column insertion from right to left.
pub fn p_tableau_by_columns(w: &Word) -> Tableau {
    let mut t = Tableau::empty();
    t.column_insert_word(w);
    t
}

pub fn row_word(t: &Tableau) -> Word {
    t.row_word()
}

pub fn column_word(t: &Tableau) -> Word {
    t.column_word()
}

pub fn shape(t: &Tableau) -> Shape {
    t.shape()
}

/// Length of a longest strictly decreasing subsequence.
///
/// `best[c]` is the longest strictly decreasing subsequence seen so far that
/// ends in letter `c`.
pub fn longest_strictly_decreasing(w: &Word) -> usize {
    let top = w.iter().max().unwrap_or(0) as usize;
    let mut best = vec![0usize; top + 2];
    let mut overall = 0;
    for c in w.iter() {
        let c = c as usize;
        let v = 1 + best[c + 1..].iter().copied().max().unwrap_or(0);
        best[c] = best[c].max(v);
        overall = overall.max(v);
    }
    overall
}
