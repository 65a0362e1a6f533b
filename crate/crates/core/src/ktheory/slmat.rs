use num_integer::Integer;

use crate::error::{Error, Result};

/// Matrix sizes `(n_0, .., n_k)` of a semisimple algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimVector {
    dims: Vec<u64>,
}

impl DimVector {
    pub fn new(dims: Vec<u64>) -> Result<DimVector> {
        if dims.is_empty() {
            return Err(Error::parse(0, "dimension vector is empty"));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::parse(pos, "dimensions must be positive"));
        }
        Ok(DimVector { dims })
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn gcd(&self) -> u64 {
        self.dims.iter().fold(0, |a, &b| a.gcd(&b))
    }

    /// `k`, one less than the number of summands.
    pub fn k(&self) -> usize {
        self.dims.len() - 1
    }
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// A nonnegative integer matrix of determinant 1 with `X (n, .., n)^T =
/// dims`, `n = gcd(dims)`; equivalently row `i` sums to `dims[i] / n`.
///
/// Rows are searched depth-first, each row running through its
/// compositions in decreasing lexicographic order, so the result is the
/// lexicographically largest solution in row-major order. A partial matrix
/// is kept only if its maximal minors are coprime, which is necessary for
/// completing it to a unimodular one.
///
/// ```
/// use wreathk_core::ktheory::{sl_completion, DimVector};
///
/// let m = sl_completion(&DimVector::new(vec![3, 2])?)?;
/// assert_eq!(m, vec![vec![2, 1], vec![1, 1]]);
/// # Ok::<(), wreathk_core::Error>(())
/// ```
pub fn sl_completion(dims: &DimVector) -> Result<Vec<Vec<i64>>> {
    let n = dims.gcd();
    let sums: Vec<u64> = dims.dims().iter().map(|d| d / n).collect();
    let size = sums.len();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(size);
    if search(&sums, size, &mut rows) {
        debug_assert_eq!(determinant(&rows), 1);
        Ok(rows)
    } else {
        Err(Error::NotFound(format!("no unimodular completion for {:?}", dims.dims())))
    }
}

fn search(sums: &[u64], size: usize, rows: &mut Vec<Vec<i64>>) -> bool {
    let r = rows.len();
    if r + 1 == size {
        let cofactors = last_row_cofactors(rows, size);
        let mut found = None;
        for_each_composition(sums[r], size, |row| {
            let det: i128 = row.iter().zip(&cofactors).map(|(&x, &c)| x as i128 * c).sum();
            if det == 1 {
                found = Some(row.to_vec());
                true
            } else {
                false
            }
        });
        return match found {
            Some(row) => {
                rows.push(row);
                true
            }
            None => false,
        };
    }
    let mut done = false;
    for_each_composition(sums[r], size, |row| {
        rows.push(row.to_vec());
        if minors_gcd(rows, size) == 1 && search(sums, size, rows) {
            done = true;
            return true;
        }
        rows.pop();
        false
    });
    done
}

/// Cofactors along a prospective last row.
fn last_row_cofactors(rows: &[Vec<i64>], size: usize) -> Vec<i128> {
    let last = size - 1;
    (0..size)
        .map(|j| {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if (last + j).is_multiple_of(2) { 1 } else { -1 };
            sign * determinant(&minor)
        })
        .collect()
}

/// gcd of all `r x r` minors of the `r` rows.
fn minors_gcd(rows: &[Vec<i64>], size: usize) -> i128 {
    let r = rows.len();
    let mut g: i128 = 0;
    let mut cols: Vec<usize> = (0..r).collect();
    loop {
        let minor: Vec<Vec<i64>> = rows.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
        g = g.gcd(&determinant(&minor));
        if g == 1 {
            return 1;
        }
        // next combination of r columns out of size
        let mut i = r;
        while i > 0 && cols[i - 1] == size - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return g;
        }
        cols[i - 1] += 1;
        for j in i..r {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// Calls `f` on compositions of `total` into `parts` nonnegative parts in
/// decreasing lexicographic order, stopping when `f` returns true.
fn for_each_composition(total: u64, parts: usize, mut f: impl FnMut(&[i64]) -> bool) {
    let mut row = vec![0i64; parts];
    fn rec(pos: usize, left: i64, row: &mut Vec<i64>, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if pos + 1 == row.len() {
            row[pos] = left;
            return f(row);
        }
        for v in (0..=left).rev() {
            row[pos] = v;
            if rec(pos + 1, left - v, row, f) {
                return true;
            }
        }
        false
    }
    rec(0, total as i64, &mut row, &mut f);
}
