//! Hilbert series of monomial modules, `N(t) / (1 - t)^n`.

use serde::Serialize;

use crate::monomial::Monomial;

/// Laurent polynomial with integer coefficients: `sum coeffs[i] t^(offset+i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Laurent {
    pub offset: i64,
    pub coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent {
            offset: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(c: i64, d: i64) -> Laurent {
        Laurent {
            offset: d,
            coeffs: vec![c],
        }
        .trim()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(mut self) -> Laurent {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Laurent::zero();
        }
        self.coeffs.drain(..lead);
        self.offset += lead as i64;
        self
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(o.offset);
        let hi = (self.offset + self.coeffs.len() as i64).max(o.offset + o.coeffs.len() as i64);
        let mut c = vec![0i64; (hi - lo) as usize];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[(self.offset - lo) as usize + i] += v;
        }
        for (i, v) in o.coeffs.iter().enumerate() {
            c[(o.offset - lo) as usize + i] += v;
        }
        Laurent {
            offset: lo,
            coeffs: c,
        }
        .trim()
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Laurent {
            offset: self.offset + o.offset,
            coeffs: c,
        }
        .trim()
    }

    pub fn shift(&self, d: i64) -> Laurent {
        Laurent {
            offset: self.offset + d,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact division by `(1 - t)`, assuming `eval_one() == 0`.
    fn div_one_minus_t(&self) -> Laurent {
        // p = (1 - t) q  =>  q_i = sum_{k <= i} p_k
        let mut q = Vec::with_capacity(self.coeffs.len());
        let mut run = 0i64;
        for &c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            run += c;
            q.push(run);
        }
        Laurent {
            offset: self.offset,
            coeffs: q,
        }
        .trim()
    }
}

/// Hilbert series `numerator / (1 - t)^denom_power` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub numerator: Laurent,
    pub denom_power: usize,
}

impl std::fmt::Display for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.offset + k as i64;
            let a = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{a}t")?,
                _ => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.denom_power {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({})/(1 - t)", self.numerator),
            p => write!(f, "({})/(1 - t)^{p}", self.numerator),
        }
    }
}

impl HilbertSeries {
    pub fn new(numerator: Laurent, denom_power: usize) -> HilbertSeries {
        let mut s = HilbertSeries {
            numerator,
            denom_power,
        };
        while s.denom_power > 0 && !s.numerator.is_zero() && s.numerator.eval_one() == 0 {
            s.numerator = s.numerator.div_one_minus_t();
            s.denom_power -= 1;
        }
        if s.numerator.is_zero() {
            s.denom_power = 0;
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        (!self.is_zero()).then_some(self.denom_power)
    }

    /// Multiplicity (degree); zero for the zero module.
    pub fn multiplicity(&self) -> i64 {
        self.numerator.eval_one()
    }

    /// Coefficient of `t^d` in the expanded series.
    pub fn value(&self, d: i64) -> i64 {
        let k = self.denom_power as i64;
        let mut total = 0i64;
        for (i, c) in self.numerator.coeffs.iter().enumerate() {
            let e = d - (self.numerator.offset + i as i64);
            if e < 0 {
                continue;
            }
            total += c * binomial(e + k - 1, k - 1);
        }
        total
    }

    /// Lowest degree with a possibly nonzero value.
    pub fn initial_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.numerator.offset)
    }

    /// Sum of all values; only meaningful in dimension zero.
    pub fn length(&self) -> Option<i64> {
        (self.denom_power == 0).then(|| self.numerator.eval_one())
    }

    pub fn add(&self, o: &HilbertSeries) -> HilbertSeries {
        let k = self.denom_power.max(o.denom_power);
        let lift = |s: &HilbertSeries| {
            let mut n = s.numerator.clone();
            for _ in s.denom_power..k {
                n = n.mul(&Laurent {
                    offset: 0,
                    coeffs: vec![1, -1],
                });
            }
            n
        };
        HilbertSeries::new(lift(self).add(&lift(o)), k)
    }

    pub fn shift(&self, d: i64) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.shift(d),
            denom_power: self.denom_power,
        }
    }
}

pub(crate) fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 {
        // (1-t)^0: only n == -1, k == -1 means the constant series 1 at e = 0
        return if n == -1 { 1 } else { 0 };
    }
    if n < k || n < 0 {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// Numerator of the Hilbert series of `k[x_1..x_n] / (gens)` (standard grading).
pub fn monomial_ideal_numerator(gens: &[Monomial]) -> Laurent {
    let mut g = minimalize(gens.to_vec());
    g.sort_by_key(|m| std::cmp::Reverse(m.degree()));
    numerator_rec(g)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn one_minus_t_pow(d: u32) -> Laurent {
    let mut c = vec![0i64; d as usize + 1];
    c[0] = 1;
    c[d as usize] -= 1;
    Laurent { offset: 0, coeffs: c }.trim()
}

fn numerator_rec(gens: Vec<Monomial>) -> Laurent {
    if gens.is_empty() {
        return Laurent::monomial(1, 0);
    }
    if gens.iter().any(|m| m.is_one()) {
        return Laurent::zero();
    }
    // pairwise coprime generators: product formula
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.gcd_is_one(b)));
    if coprime {
        return gens
            .iter()
            .fold(Laurent::monomial(1, 0), |acc, m| acc.mul(&one_minus_t_pow(m.degree())));
    }
    // pivot on a variable occurring in the most generators
    let n = gens[0].nvars();
    let mut best = (0usize, 0usize);
    for v in 0..n {
        let c = gens.iter().filter(|m| m.exponents()[v] > 0).count();
        if c > best.1 {
            best = (v, c);
        }
    }
    let v = best.0;
    let mut ex = vec![0u16; n];
    ex[v] = 1;
    let pivot = Monomial::from_exponents(&ex);
    // N(J) = N(J + (p)) + t^deg(p) N(J : p)
    let mut with_p = gens.clone();
    with_p.push(pivot.clone());
    let with_p = minimalize(with_p);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e[v] = e[v].saturating_sub(1);
            Monomial::from_exponents(&e)
        })
        .collect();
    let colon = minimalize(colon);
    numerator_rec(with_p).add(&numerator_rec(colon).shift(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    fn count_standard(gens: &[Monomial], n: usize, d: u32) -> i64 {
        // enumerate monomials of degree d in n variables
        fn rec(n: usize, d: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if cur.len() == n - 1 {
                cur.push(d as u16);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for e in 0..=d {
                cur.push(e as u16);
                rec(n, d - e, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        rec(n, d, &mut Vec::new(), &mut all);
        all.iter()
            .filter(|e| !gens.iter().any(|g| g.divides(&m(e))))
            .count() as i64
    }

    #[test]
    fn series_matches_standard_monomial_count() {
        let cases: Vec<(usize, Vec<Monomial>)> = vec![
            (2, vec![]),
            (3, vec![m(&[1, 1, 0])]),
            (3, vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 1, 3])]),
            (4, vec![m(&[1, 1, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 1, 1]), m(&[2, 0, 0, 1])]),
            (2, vec![m(&[1, 0]), m(&[0, 1])]),
        ];
        for (n, gens) in cases {
            let s = HilbertSeries::new(monomial_ideal_numerator(&gens), n);
            for d in 0..=8 {
                assert_eq!(s.value(d), count_standard(&gens, n, d as u32), "{gens:?} d={d}");
            }
        }
    }

    #[test]
    fn quadric_cone_series() {
        // lead term of xy - z^2 in grevlex is xy
        let s = HilbertSeries::new(monomial_ideal_numerator(&[m(&[1, 1, 0])]), 3);
        assert_eq!(s.numerator.coeffs, vec![1, 1]);
        assert_eq!(s.denom_power, 2);
        assert_eq!(s.multiplicity(), 2);
        let k = HilbertSeries::new(monomial_ideal_numerator(&[m(&[1, 0]), m(&[0, 1])]), 2);
        assert_eq!(k.length(), Some(1));
    }
}
