//! Partitions, standard Young tableaux and the Robinson–Schensted
//! correspondence.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    /// Column lengths (the conjugate partition).
    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..width)
                .map(|j| self.0.iter().filter(|&&r| r > j).count())
                .collect(),
        )
    }

    /// Hook length of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let cols = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (cols.0[j] - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// All partitions of `n` with at most `max_rows` parts, in reverse
    /// lexicographic order of parts.
    pub fn all(n: usize, max_rows: usize) -> Vec<Partition> {
        fn go(rest: usize, cap: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows_left == 0 {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, max_rows, &mut Vec::new(), &mut out);
        out
    }
}

/// Number of standard Young tableaux of the shape: `n! / ∏ hooks`.
pub fn hook_count(shape: &Partition) -> BigUint {
    let num: BigUint = (1..=shape.size()).fold(BigUint::one(), |acc, i| acc * i);
    let den: BigUint = shape
        .hook_lengths()
        .into_iter()
        .flatten()
        .fold(BigUint::one(), |acc, h| acc * h);
    debug_assert!((&num % &den) == BigUint::from(0u32));
    num / den
}

/// A standard Young tableau: rows and columns strictly increasing, entries
/// `1..=n` each used once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct YoungTableau {
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = YoungTableau { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Tableau(m.to_string()));
        let lens: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        if Partition::new(lens).is_err() {
            return bad("row lengths are not a partition");
        }
        let n: usize = self.rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 0 || v > n || seen[v] {
                    return bad("entries must be 1..=n, each once");
                }
                seen[v] = true;
                if j > 0 && row[j - 1] >= v {
                    return bad("rows must increase strictly");
                }
                if i > 0 && self.rows[i - 1][j] >= v {
                    return bad("columns must increase strictly");
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Row insertion of `π(1), …, π(n)`; `Q` records where each step's new box
/// appeared.
pub fn rsk(p: &Permutation) -> (YoungTableau, YoungTableau) {
    let mut prows: Vec<Vec<usize>> = Vec::new();
    let mut qrows: Vec<Vec<usize>> = Vec::new();
    for (step, &value) in p.values().iter().enumerate() {
        let mut x = value;
        let mut r = 0;
        loop {
            if r == prows.len() {
                prows.push(vec![x]);
                qrows.push(vec![step + 1]);
                break;
            }
            let row = &mut prows[r];
            // smallest entry greater than x
            match row.iter().position(|&y| y > x) {
                None => {
                    row.push(x);
                    qrows[r].push(step + 1);
                    break;
                }
                Some(j) => {
                    x = std::mem::replace(&mut row[j], x);
                    r += 1;
                }
            }
        }
    }
    (YoungTableau { rows: prows }, YoungTableau { rows: qrows })
}

/// Inverse of [`rsk`].
pub fn inverse_rsk(p: &YoungTableau, q: &YoungTableau) -> Result<Permutation> {
    p.validate()?;
    q.validate()?;
    if p.shape() != q.shape() {
        return Err(Error::Tableau("P and Q have different shapes".into()));
    }
    let n = p.size();
    let mut prows = p.rows.clone();
    let mut qrows = q.rows.clone();
    let mut values = vec![0; n];
    for step in (1..=n).rev() {
        let r = qrows
            .iter()
            .position(|row| row.last() == Some(&step))
            .ok_or_else(|| Error::Tableau(format!("entry {step} of Q is not at a row end")))?;
        qrows[r].pop();
        let mut y = prows[r].pop().expect("shapes agree");
        if prows[r].is_empty() {
            prows.pop();
            qrows.pop();
        }
        for row in prows[..r].iter_mut().rev() {
            // largest entry smaller than y
            let j = row
                .iter()
                .rposition(|&x| x < y)
                .expect("row above holds a smaller entry in a standard tableau");
            y = std::mem::replace(&mut row[j], y);
        }
        values[step - 1] = y;
    }
    Permutation::new(values)
}
