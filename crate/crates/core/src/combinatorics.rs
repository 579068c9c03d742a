//! Content vectors and semistandard Young tableaux on a two-row rectangle.
//!
//! A content vector `(a_1, ..., a_q)` lists how often each value appears in a
//! filling of the `2 x (d-1)` rectangle, where `2d - 2 = a_1 + ... + a_q` and
//! every entry satisfies `1 <= a_j <= d - 1`. The number of semistandard
//! fillings (rows weakly increasing, columns strictly increasing) is the
//! Kostka number of the rectangle for that content. It only depends on the
//! content as a multiset, and it is the common answer to the counting
//! questions this crate deals with: tableaux, nets, and solution classes of
//! the interpolation problem all agree on it.

use crate::error::{Error, Result};
use num::{BigUint, Integer, One, Zero};
use std::fmt;
use std::str::FromStr;

/// Multiplicity vector `(a_1, ..., a_q)` with `sum = 2d - 2` and
/// `1 <= a_j <= d - 1`. The ambient degree `d` is derived from the sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContentVector {
    entries: Vec<usize>,
    d: usize,
}

impl ContentVector {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TooFewBlocks { got: entries.len() });
        }
        if let Some(index) = entries.iter().position(|&a| a == 0) {
            return Err(Error::NonPositiveEntry { index });
        }
        let sum: usize = entries.iter().sum();
        if sum % 2 != 0 {
            return Err(Error::OddContentSum { sum });
        }
        let d = sum / 2 + 1;
        for (index, &a) in entries.iter().enumerate() {
            if a > d - 1 {
                return Err(Error::EntryTooLarge {
                    index,
                    value: a,
                    max: d - 1,
                    d,
                });
            }
        }
        Ok(Self { entries, d })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Derived ambient degree: entries sum to `2d - 2`.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn block_count(&self) -> usize {
        self.entries.len()
    }

    /// Total number of positions, `2d - 2`.
    pub fn total(&self) -> usize {
        2 * self.d - 2
    }

    /// Every valid content vector for the given ambient degree, in
    /// lexicographic order. These are the compositions of `2d - 2` with parts
    /// in `1..=d-1`.
    pub fn enumerate_all(d: usize) -> Vec<ContentVector> {
        assert!(d >= 2);
        let total = 2 * d - 2;
        let mut out = Vec::new();
        let mut parts = Vec::new();
        fn rec(remaining: usize, max_part: usize, parts: &mut Vec<usize>, out: &mut Vec<ContentVector>) {
            if remaining == 0 {
                if parts.len() >= 2 {
                    out.push(ContentVector::new(parts.clone()).expect("valid by construction"));
                }
                return;
            }
            for part in 1..=max_part.min(remaining) {
                parts.push(part);
                rec(remaining - part, max_part, parts, out);
                parts.pop();
            }
        }
        rec(total, d - 1, &mut parts, &mut out);
        out
    }
}

impl FromStr for ContentVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidConfig(format!("cannot parse content entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ContentVector::new(entries)
    }
}

impl fmt::Display for ContentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Semistandard filling of the `2 x n` rectangle: rows weakly increase left
/// to right, columns strictly increase top to bottom, entries are positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    row1: Vec<usize>,
    row2: Vec<usize>,
}

impl Tableau {
    pub fn new(row1: Vec<usize>, row2: Vec<usize>) -> Result<Self> {
        if row1.len() != row2.len() || row1.is_empty() {
            return Err(Error::MalformedTableau(format!(
                "rows must have equal positive length, got {} and {}",
                row1.len(),
                row2.len()
            )));
        }
        if row1.iter().chain(&row2).any(|&v| v == 0) {
            return Err(Error::MalformedTableau("entries must be positive".into()));
        }
        for row in [&row1, &row2] {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::MalformedTableau(
                    "rows must be weakly increasing".into(),
                ));
            }
        }
        if row1.iter().zip(&row2).any(|(a, b)| a >= b) {
            return Err(Error::MalformedTableau(
                "columns must be strictly increasing".into(),
            ));
        }
        Ok(Self { row1, row2 })
    }

    pub fn row1(&self) -> &[usize] {
        &self.row1
    }

    pub fn row2(&self) -> &[usize] {
        &self.row2
    }

    /// Number of columns.
    pub fn width(&self) -> usize {
        self.row1.len()
    }

    /// How often each value `1..=max` appears across both rows.
    pub fn content_counts(&self) -> Vec<usize> {
        let max = *self.row1.iter().chain(&self.row2).max().expect("nonempty");
        let mut counts = vec![0usize; max];
        for &v in self.row1.iter().chain(&self.row2) {
            counts[v - 1] += 1;
        }
        counts
    }

    pub fn matches_content(&self, content: &ContentVector) -> bool {
        self.content_counts() == content.entries()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_row = |row: &[usize]| {
            row.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "[{} | {}]", fmt_row(&self.row1), fmt_row(&self.row2))
    }
}

/// All semistandard fillings of the `2 x (d-1)` rectangle with the given
/// content, in lexicographic order of `(row1, row2)`.
///
/// Enumeration backtracks over column pairs left to right: each column
/// `(t, b)` needs `t < b` and both rows weakly increasing against the
/// previous column, which prunes dead branches early.
pub fn enumerate_ssyt(content: &ContentVector) -> Vec<Tableau> {
    let n = content.d() - 1;
    let q = content.block_count();
    let mut remaining: Vec<usize> = content.entries().to_vec();
    let mut cols: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut fillings: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();

    fn rec(
        n: usize,
        q: usize,
        remaining: &mut Vec<usize>,
        cols: &mut Vec<(usize, usize)>,
        fillings: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if cols.len() == n {
            let row1 = cols.iter().map(|c| c.0).collect();
            let row2 = cols.iter().map(|c| c.1).collect();
            fillings.push((row1, row2));
            return;
        }
        let (min_t, min_b) = cols.last().copied().unwrap_or((1, 1));
        for t in min_t..=q {
            if remaining[t - 1] == 0 {
                continue;
            }
            remaining[t - 1] -= 1;
            for b in min_b.max(t + 1)..=q {
                if remaining[b - 1] == 0 {
                    continue;
                }
                remaining[b - 1] -= 1;
                cols.push((t, b));
                rec(n, q, remaining, cols, fillings);
                cols.pop();
                remaining[b - 1] += 1;
            }
            remaining[t - 1] += 1;
        }
    }

    rec(n, q, &mut remaining, &mut cols, &mut fillings);
    fillings.sort();
    fillings
        .into_iter()
        .map(|(row1, row2)| Tableau::new(row1, row2).expect("valid by construction"))
        .collect()
}

/// Kostka number of the `2 x (d-1)` rectangle for the given content,
/// counted without materializing tableaux.
///
/// Values are inserted in increasing order; the state is the pair of filled
/// row lengths `(x, y)`. Placing `s` copies of the current value in row two
/// requires `y + s <= x`, so that every such cell sits under a strictly
/// smaller entry. Arbitrary precision, so large `d` cannot overflow.
pub fn kostka(content: &ContentVector) -> BigUint {
    let n = content.d() - 1;
    let mut table = vec![vec![BigUint::zero(); n + 1]; n + 1];
    table[0][0] = BigUint::one();
    for &a in content.entries() {
        let mut next = vec![vec![BigUint::zero(); n + 1]; n + 1];
        for x in 0..=n {
            for y in 0..=x {
                if table[x][y].is_zero() {
                    continue;
                }
                for r in 0..=a.min(n - x) {
                    let s = a - r;
                    if y + s > x {
                        continue;
                    }
                    let cell = table[x][y].clone();
                    next[x + r][y + s] += cell;
                }
            }
        }
        table = next;
    }
    table[n][n].clone()
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

/// Closed-form Kostka evaluation for the contents that admit one:
///
/// * all entries equal to 1: `binom(2d-2, d-1) / d`, the Catalan number;
/// * one entry `a` and the rest 1 (in any order): `(a+1) binom(2d-2-a, d-1) / d`;
/// * exactly two entries `(d-1, d-1)`: a single filling.
///
/// Returns `None` for every other content.
pub fn kostka_closed_form(content: &ContentVector) -> Option<BigUint> {
    let d = content.d();
    let mut sorted: Vec<usize> = content.entries().to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let exact_div = |num: BigUint, den: usize| {
        let (q, r) = num.div_rem(&BigUint::from(den));
        assert!(r.is_zero(), "closed form must divide exactly");
        q
    };
    if sorted.iter().all(|&a| a == 1) {
        return Some(exact_div(binomial(2 * d - 2, d - 1), d));
    }
    if sorted[0] > 1 && sorted[1..].iter().all(|&a| a == 1) {
        let a = sorted[0];
        return Some(exact_div(binomial(2 * d - 2 - a, d - 1) * BigUint::from(a + 1), d));
    }
    if sorted.len() == 2 && sorted[0] == d - 1 && sorted[1] == d - 1 {
        return Some(BigUint::one());
    }
    None
}
