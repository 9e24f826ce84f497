//! Small dense polynomial matrices (row-major) and their conversion to
//! column vectors of a free module.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};
use crate::vector::{ModVec, ModuleOrder};

pub type Matrix = Vec<Vec<Polynomial>>;

pub fn zeros(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Matrix {
    vec![vec![Polynomial::zero(ring); cols]; rows]
}

pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Matrix {
    let mut m = zeros(ring, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Polynomial::one(ring);
    }
    m
}

pub fn shape(m: &Matrix) -> (usize, usize) {
    (m.len(), m.first().map_or(0, |r| r.len()))
}

pub fn transpose(m: &Matrix) -> Matrix {
    let (r, c) = shape(m);
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn product(ring: &Arc<PolyRing>, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let (ar, ac) = shape(a);
    let (br, bc) = shape(b);
    if ac != br && !(ar > 0 && ac == 0 && br == 0) {
        return Err(Error::RankMismatch {
            expected: ac,
            found: br,
        });
    }
    let mut out = zeros(ring, ar, bc);
    for i in 0..ar {
        for j in 0..bc {
            let mut acc = Polynomial::zero(ring);
            for k in 0..ac {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc = acc.add(&a[i][k].mul(&b[k][j])?)?;
                }
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// `a ⊗ b`, indexed so that row `(i, p)` is `i * rows(b) + p`.
pub fn kronecker(ring: &Arc<PolyRing>, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let (ar, ac) = shape(a);
    let (br, bc) = shape(b);
    let mut out = zeros(ring, ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if a[i][j].is_zero() {
                continue;
            }
            for p in 0..br {
                for q in 0..bc {
                    out[i * br + p][j * bc + q] = a[i][j].mul(&b[p][q])?;
                }
            }
        }
    }
    Ok(out)
}

pub fn scale(m: &Matrix, f: &Polynomial) -> Result<Matrix> {
    m.iter()
        .map(|row| row.iter().map(|e| e.mul(f)).collect())
        .collect()
}

/// Determinant by expansion over column subsets.
pub fn determinant(ring: &Arc<PolyRing>, m: &Matrix) -> Result<Polynomial> {
    let (r, c) = shape(m);
    if r != c {
        return Err(Error::RankMismatch {
            expected: r,
            found: c,
        });
    }
    if r == 0 {
        return Ok(Polynomial::one(ring));
    }
    if r > 20 {
        return Err(Error::SizeCap(format!("determinant of size {r}")));
    }
    // dp[mask] = det of first popcount(mask) rows on the columns in mask
    let mut dp: Vec<Option<Polynomial>> = vec![None; 1 << r];
    dp[0] = Some(Polynomial::one(ring));
    for mask in 0usize..(1 << r) {
        let Some(cur) = dp[mask].clone() else { continue };
        if cur.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == r {
            continue;
        }
        for col in 0..r {
            if mask & (1 << col) != 0 || m[row][col].is_zero() {
                continue;
            }
            // sign from the number of chosen columns after `col`
            let after = (mask >> (col + 1)).count_ones();
            let mut t = cur.mul(&m[row][col])?;
            if after % 2 == 1 {
                t = t.neg();
            }
            let nm = mask | (1 << col);
            dp[nm] = Some(match dp[nm].take() {
                Some(p) => p.add(&t)?,
                None => t,
            });
        }
    }
    Ok(dp[(1 << r) - 1].clone().unwrap_or_else(|| Polynomial::zero(ring)))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn count_subsets(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}

/// All nonzero `k x k` minors, in lexicographic order of (rows, columns).
pub fn minors(ring: &Arc<PolyRing>, m: &Matrix, k: usize, cap: u128) -> Result<Vec<Polynomial>> {
    let (r, c) = shape(m);
    if k == 0 {
        return Ok(vec![Polynomial::one(ring)]);
    }
    if k > r || k > c {
        return Ok(Vec::new());
    }
    let total = count_subsets(r, k) * count_subsets(c, k);
    if total > cap {
        return Err(Error::SizeCap(format!("{total} minors of size {k}")));
    }
    let mut out = Vec::new();
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Matrix = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            let d = determinant(ring, &sub)?;
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Coordinate `c` of a free-module vector as a polynomial.
pub(crate) fn coord(ring: &Arc<PolyRing>, v: &ModVec, c: usize) -> Polynomial {
    Polynomial::from_vec(
        ring,
        ModVec {
            terms: v.terms.iter().filter(|t| t.comp == c).cloned().collect(),
        },
    )
}

pub(crate) fn from_columns(ring: &Arc<PolyRing>, rows: usize, cols: &[ModVec]) -> Matrix {
    (0..rows)
        .map(|i| cols.iter().map(|v| coord(ring, v, i)).collect())
        .collect()
}

pub(crate) fn vec_from_coords(ring: &Arc<PolyRing>, coords: &[Polynomial]) -> ModVec {
    let ord: ModuleOrder = ring.module_order();
    ModVec::from_terms(
        coords.iter().enumerate().flat_map(|(c, p)| p.on_comp(c).terms).collect(),
        &ord,
    )
}

/// Row and column degrees making every nonzero entry homogeneous of degree
/// `col - row`; each connected block is anchored at row degree 0.
pub(crate) fn homogeneous_degrees(m: &Matrix) -> Result<(Vec<i64>, Vec<i64>)> {
    let (r, c) = shape(m);
    let mut rows: Vec<Option<i64>> = vec![None; r];
    let mut cols: Vec<Option<i64>> = vec![None; c];
    for e in m.iter().flatten() {
        if !e.is_zero() && !e.is_homogeneous() {
            return Err(Error::NonHomogeneous(e.to_string()));
        }
    }
    let deg = |i: usize, j: usize| m[i][j].homogeneous_degree();
    for start in 0..r {
        if rows[start].is_some() {
            continue;
        }
        rows[start] = Some(0);
        let mut stack = vec![(true, start)];
        while let Some((is_row, k)) = stack.pop() {
            if is_row {
                let a = rows[k].unwrap();
                for j in 0..c {
                    if let Some(d) = deg(k, j).filter(|_| !m[k][j].is_zero()) {
                        match cols[j] {
                            None => {
                                cols[j] = Some(a + d);
                                stack.push((false, j));
                            }
                            Some(b) if b != a + d => {
                                return Err(Error::NonHomogeneous("no consistent grading of the matrix".into()))
                            }
                            _ => {}
                        }
                    }
                }
            } else {
                let b = cols[k].unwrap();
                for i in 0..r {
                    if let Some(d) = deg(i, k).filter(|_| !m[i][k].is_zero()) {
                        match rows[i] {
                            None => {
                                rows[i] = Some(b - d);
                                stack.push((true, i));
                            }
                            Some(a) if a != b - d => {
                                return Err(Error::NonHomogeneous("no consistent grading of the matrix".into()))
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    let base = rows.iter().flatten().copied().min().unwrap_or(0);
    Ok((
        rows.into_iter().map(|x| x.unwrap_or(0) - base).collect(),
        cols.into_iter().map(|x| x.unwrap_or(0) - base).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::scalar::Field;

    #[test]
    fn twisted_cubic_minors() {
        let s = PolyRing::new(Field::Rationals, &["a", "b", "c", "d"], MonomialOrder::Grevlex).unwrap();
        let p = |t: &str| Polynomial::parse(&s, t).unwrap();
        let m = vec![vec![p("a"), p("b"), p("c")], vec![p("b"), p("c"), p("d")]];
        let mi = minors(&s, &m, 2, 1000).unwrap();
        assert_eq!(mi, vec![p("a*c - b^2"), p("a*d - b*c"), p("b*d - c^2")]);
        assert_eq!(minors(&s, &m, 3, 1000).unwrap(), vec![]);
        let id = identity(&s, 3);
        assert_eq!(determinant(&s, &id).unwrap(), p("1"));
        let t = transpose(&m);
        assert_eq!(shape(&t), (3, 2));
        let prod = product(&s, &m, &t).unwrap();
        assert_eq!(prod[0][1], p("a*b + b*c + c*d"));
        let k = kronecker(&s, &m, &id).unwrap();
        assert_eq!(shape(&k), (6, 9));
    }

    #[test]
    fn determinant_sign() {
        let s = PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let p = |t: &str| Polynomial::parse(&s, t).unwrap();
        let m = vec![vec![p("x"), p("y")], vec![p("1"), p("x")]];
        assert_eq!(determinant(&s, &m).unwrap(), p("x^2 - y"));
        let m3 = vec![
            vec![p("0"), p("1"), p("0")],
            vec![p("1"), p("0"), p("0")],
            vec![p("0"), p("0"), p("1")],
        ];
        assert_eq!(determinant(&s, &m3).unwrap(), p("-1"));
    }
}
