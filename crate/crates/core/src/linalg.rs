//! Exact linear algebra over the rationals and integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::path::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Sparse echelon form pivoting on the largest column of each row.
struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    /// Reduces `row` against the current pivots; installs it if it survives.
    fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        while let Some((&col, lead)) = row.iter().next_back() {
            match self.pivots.get(&col) {
                None => {
                    let inv = lead.recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(col, row);
                    return true;
                }
                Some(p) => {
                    let factor = lead.clone();
                    for (&c, v) in p {
                        let e = row.entry(c).or_insert_with(Rational::zero);
                        *e -= &factor * v;
                        if e.is_zero() {
                            row.remove(&c);
                        }
                    }
                }
            }
        }
        false
    }
}

fn to_sparse(row: Vec<(usize, Rational)>) -> SparseRow {
    let mut out = SparseRow::new();
    for (c, v) in row {
        *out.entry(c).or_insert_with(Rational::zero) += v;
    }
    out
}

pub fn sparse_rank(_ncols: usize, rows: Vec<Vec<(usize, Rational)>>) -> usize {
    let mut e = Echelon::new();
    rows.into_iter().filter(|r| e.insert(to_sparse(r.clone()))).count()
}

/// Columns without a pivot after eliminating with largest-column pivots,
/// ascending.
pub fn free_columns(ncols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Vec<usize> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(to_sparse(r));
    }
    (0..ncols).filter(|c| !e.pivots.contains_key(c)).collect()
}

/// Given the images `cols[k]` of a basis in target coordinates, returns for
/// each target basis vector its coordinates over that basis, or `None` if the
/// images do not form a basis of the `n`-dimensional target.
pub fn invert(n: usize, cols: &[Vec<(usize, Rational)>]) -> Option<Vec<SparseRow>> {
    if cols.len() != n {
        return None;
    }
    // each row: (image, combination of source vectors producing it)
    let mut rows: BTreeMap<usize, (SparseRow, SparseRow)> = BTreeMap::new();
    for (k, col) in cols.iter().enumerate() {
        let mut img = to_sparse(col.clone());
        img.retain(|_, v| !v.is_zero());
        let mut tag = SparseRow::new();
        tag.insert(k, Rational::one());
        for (&pc, (pimg, ptag)) in &rows {
            if let Some(f) = img.get(&pc).cloned() {
                axpy(&mut img, pimg, &f);
                axpy(&mut tag, ptag, &f);
            }
        }
        let (&col, lead) = img.iter().next()?;
        let inv = lead.recip();
        for v in img.values_mut().chain(tag.values_mut()) {
            *v *= &inv;
        }
        for (pimg, ptag) in rows.values_mut() {
            if let Some(f) = pimg.get(&col).cloned() {
                axpy(pimg, &img, &f);
                axpy(ptag, &tag, &f);
            }
        }
        rows.insert(col, (img, tag));
    }
    Some(rows.into_values().map(|(_, tag)| tag).collect())
}

/// `x -= f · y`, dropping zeros.
fn axpy(x: &mut SparseRow, y: &SparseRow, f: &Rational) {
    for (&c, v) in y {
        let e = x.entry(c).or_insert_with(Rational::zero);
        *e -= f * v;
        if e.is_zero() {
            x.remove(&c);
        }
    }
}

pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let rows = matrix
        .iter()
        .map(|r| r.iter().cloned().enumerate().collect())
        .collect();
    sparse_rank(matrix.first().map_or(0, Vec::len), rows)
}

/// A basis of `{x : A x = 0}` from the reduced row echelon form.
pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = matrix.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -rows[i][fc].clone();
            }
            v
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                m[i][j] = quo;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn integer_rank(matrix: &[Vec<BigInt>]) -> usize {
    let q: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    rank(&q)
}
