//! Octonion multiplication tables given by oriented Fano lines.
//!
//! A line `(i, j, k)` means `e_i e_j = e_k` and, cyclically,
//! `e_j e_k = e_i`, `e_k e_i = e_j`; reversing the order flips the sign.
//!
//! The canonical table used throughout the crate is
//!
//! ```text
//! (1 2 3) (1 4 5) (1 7 6) (2 4 6) (2 5 7) (3 4 7) (3 6 5)
//! ```
//!
//! The lines are the completion of the Fano plane through `{1,2,3}`,
//! `{1,4,5}`, `{1,6,7}` and `{2,4,6}`. Of the 128 orientations of those
//! seven lines, two are alternative, give `e1 e2 = e3`, `e1 e4 = e5`,
//! `e1 e6 = -e7` and reproduce the isotropic span values used by the
//! symmetric-space computation. They differ by the relabeling `e_k -> -e_k`
//! for `k >= 2`; this one is the first in the search order (see the
//! orientation search in this module's tests).

use std::fmt;
use std::sync::LazyLock;

use crate::error::{Error, Result};

pub const CANONICAL_LINES: [[usize; 3]; 7] =
    [[1, 2, 3], [1, 4, 5], [1, 7, 6], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 6, 5]];

/// Products that any admissible table must reproduce: `(i, j, sign, k)`
/// meaning `e_i e_j = sign * e_k`.
pub const ANCHOR_PRODUCTS: [(usize, usize, i8, usize); 3] = [(1, 2, 1, 3), (1, 4, 1, 5), (1, 6, -1, 7)];

static CANONICAL: LazyLock<MultiplicationTable> =
    LazyLock::new(|| MultiplicationTable::from_lines(CANONICAL_LINES).expect("canonical table"));

/// Product of basis elements: `e_a e_b = sign * e_index`, index 0 is the unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisProduct {
    pub sign: i8,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    lines: [[usize; 3]; 7],
    products: [[BasisProduct; 8]; 8],
}

impl MultiplicationTable {
    pub fn canonical() -> &'static MultiplicationTable {
        &CANONICAL
    }

    /// Builds the basis product array. Fails unless every unordered pair of
    /// imaginary indices lies on exactly one line.
    pub fn from_lines(lines: [[usize; 3]; 7]) -> Result<Self> {
        let mut products = [[BasisProduct { sign: 0, index: 0 }; 8]; 8];
        for (a, row) in products.iter_mut().enumerate() {
            for (b, p) in row.iter_mut().enumerate() {
                *p = match (a, b) {
                    (0, _) => BasisProduct { sign: 1, index: b },
                    (_, 0) => BasisProduct { sign: 1, index: a },
                    _ if a == b => BasisProduct { sign: -1, index: 0 },
                    _ => BasisProduct { sign: 0, index: 0 },
                };
            }
        }
        for line in &lines {
            if line.iter().any(|&i| !(1..=7).contains(&i)) {
                return Err(Error::validation(format!("line {line:?} has an index outside 1..=7")));
            }
            let [i, j, k] = *line;
            for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                if x == y || products[x][y].sign != 0 {
                    return Err(Error::validation(format!("pair ({x},{y}) is not covered by exactly one line")));
                }
                products[x][y] = BasisProduct { sign: 1, index: z };
                products[y][x] = BasisProduct { sign: -1, index: z };
            }
        }
        Ok(Self { lines, products })
    }

    pub fn lines(&self) -> &[[usize; 3]; 7] {
        &self.lines
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> BasisProduct {
        self.products[a][b]
    }

    /// Same lines with line `idx` reversed.
    pub fn with_line_flipped(&self, idx: usize) -> Result<Self> {
        let mut lines = self.lines;
        lines[idx].swap(0, 1);
        Self::from_lines(lines)
    }

    /// Oriented triples `(i, j, k)` with `e_i e_j = e_k`, including cyclic
    /// permutations of each line (21 in total).
    pub fn positive_triples(&self) -> Vec<[usize; 3]> {
        self.lines.iter().flat_map(|&[i, j, k]| [[i, j, k], [j, k, i], [k, i, j]]).collect()
    }

    /// One `i j k sign` line per Fano line, `sign` meaning `e_i e_j = sign e_k`.
    pub fn to_text(&self) -> String {
        self.lines.iter().map(|[i, j, k]| format!("{i} {j} {k} 1\n")).collect()
    }

    /// Parses the `i j k sign` format. Blank lines and `#` comments are
    /// skipped; a `-1` sign is stored as the reversed line.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<i64> = content
                .split_whitespace()
                .map(|f| f.parse::<i64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1))))
                .collect::<Result<_>>()?;
            let [i, j, k, s] = fields[..] else {
                return Err(Error::Parse(format!("line {}: expected `i j k sign`", lineno + 1)));
            };
            if i < 1 || j < 1 || k < 1 {
                return Err(Error::Parse(format!("line {}: indices must be in 1..=7", lineno + 1)));
            }
            let (i, j, k) = (i as usize, j as usize, k as usize);
            match s {
                1 => lines.push([i, j, k]),
                -1 => lines.push([j, i, k]),
                _ => return Err(Error::Parse(format!("line {}: sign must be 1 or -1", lineno + 1))),
            }
        }
        let lines: [[usize; 3]; 7] =
            lines.try_into().map_err(|v: Vec<_>| Error::Parse(format!("expected 7 triples, got {}", v.len())))?;
        Self::from_lines(lines)
    }
}

impl fmt::Display for MultiplicationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableViolation {
    /// `e_a e_b != -e_b e_a` for a pair of distinct imaginary units.
    Anticommutation { a: usize, b: usize },
    /// Linearized alternativity fails on a basis triple.
    Alternativity { a: usize, b: usize, c: usize },
    /// One of [`ANCHOR_PRODUCTS`] does not hold.
    Anchor { i: usize, j: usize, expected_sign: i8, expected_index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableVerdict {
    pub violations: Vec<TableViolation>,
}

impl TableVerdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_alternativity_failure(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, TableViolation::Alternativity { .. }))
    }

    pub fn has_anchor_failure(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, TableViolation::Anchor { .. }))
    }
}

type Basis = [i64; 8];

fn basis_mul(t: &MultiplicationTable, x: &Basis, y: &Basis) -> Basis {
    let mut out = [0i64; 8];
    for a in 0..8 {
        if x[a] == 0 {
            continue;
        }
        for b in 0..8 {
            if y[b] == 0 {
                continue;
            }
            let p = t.product(a, b);
            out[p.index] += i64::from(p.sign) * x[a] * y[b];
        }
    }
    out
}

fn basis_vec(i: usize) -> Basis {
    let mut v = [0; 8];
    v[i] = 1;
    v
}

fn basis_add(x: &Basis, y: &Basis) -> Basis {
    std::array::from_fn(|i| x[i] + y[i])
}

/// Checks anticommutation, alternativity (linearized over all basis
/// triples, on both sides) and the anchor products.
pub fn validate_table(t: &MultiplicationTable) -> TableVerdict {
    let mut violations = Vec::new();
    for a in 1..8 {
        for b in a + 1..8 {
            let (p, q) = (t.product(a, b), t.product(b, a));
            if p.index != q.index || p.sign != -q.sign || p.sign == 0 {
                violations.push(TableViolation::Anticommutation { a, b });
            }
        }
    }
    // a(cb) + c(ab) = (ac + ca)b   and   (bc)a + (ba)c = b(ca + ac)
    'outer: for a in 0..8 {
        for c in 0..8 {
            for b in 0..8 {
                let (ea, eb, ec) = (basis_vec(a), basis_vec(b), basis_vec(c));
                let ac_ca = basis_add(&basis_mul(t, &ea, &ec), &basis_mul(t, &ec, &ea));
                let left =
                    basis_add(&basis_mul(t, &ea, &basis_mul(t, &ec, &eb)), &basis_mul(t, &ec, &basis_mul(t, &ea, &eb)));
                let right =
                    basis_add(&basis_mul(t, &basis_mul(t, &eb, &ec), &ea), &basis_mul(t, &basis_mul(t, &eb, &ea), &ec));
                if left != basis_mul(t, &ac_ca, &eb) || right != basis_mul(t, &eb, &ac_ca) {
                    violations.push(TableViolation::Alternativity { a, b, c });
                    break 'outer;
                }
            }
        }
    }
    for &(i, j, sign, k) in &ANCHOR_PRODUCTS {
        let p = t.product(i, j);
        if p.sign != sign || p.index != k {
            violations.push(TableViolation::Anchor { i, j, expected_sign: sign, expected_index: k });
        }
    }
    TableVerdict { violations }
}
