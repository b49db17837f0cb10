//! Laurent polynomials in `q` and bivariate polynomials in `t, q`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer Laurent polynomial in one variable, kept free of zero terms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        LaurentPoly::from_terms([(exp, coeff)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs, ascending in the exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// `p(q^-1)`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    /// Exact quotient by `divisor`, failing with `NonDivisible` if the
    /// remainder is nonzero. The divisor's leading coefficient must be ±1.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (dlead_e, dlead_c) = match divisor.terms.iter().next_back() {
            Some((&e, &c)) => (e, c),
            None => return Err(Error::NonDivisible),
        };
        if dlead_c.abs() != 1 {
            return Err(Error::NonDivisible);
        }
        let dlow = divisor.min_degree().unwrap_or(dlead_e);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((&e, &c)) = rem.terms.iter().next_back() {
            // once the remainder is shorter than the divisor nothing more can
            // be taken out
            if e - rem.min_degree().unwrap_or(e) < dlead_e - dlow {
                return Err(Error::NonDivisible);
            }
            let t = LaurentPoly::monomial(c * dlead_c, e - dlead_e);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Ok(quot)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, first: bool, coeff: i64, vars: &str) -> fmt::Result {
    let sign = if coeff < 0 { "-" } else { "+" };
    if first {
        if coeff < 0 {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    let a = coeff.unsigned_abs();
    match (a, vars.is_empty()) {
        (_, true) => write!(f, "{a}"),
        (1, false) => write!(f, "{vars}"),
        _ => write!(f, "{a}{vars}"),
    }
}

fn power(var: &str, exp: i32) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{exp}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            write_monomial(f, n == 0, c, &power("q", e))?;
        }
        Ok(())
    }
}

/// Integer polynomial in `t` and `q` (Laurent in both).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiPoly {
    terms: BTreeMap<(i32, i32), i64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    /// Terms keyed by `(t exponent, q exponent)`.
    pub fn from_terms(terms: impl IntoIterator<Item = ((i32, i32), i64)>) -> Self {
        let mut p = BiPoly::zero();
        for (k, c) in terms {
            if c == 0 {
                continue;
            }
            let v = p.terms.entry(k).or_insert(0);
            *v += c;
            if *v == 0 {
                p.terms.remove(&k);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: i32, q: i32) -> i64 {
        self.terms.get(&(t, q)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    /// Substitute `t = -1`.
    pub fn at_t_minus_one(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms()
                .map(|((t, q), c)| (q, if t.rem_euclid(2) == 0 { c } else { -c })),
        )
    }

    /// `p(t^-1, q^-1)`.
    pub fn invert_variables(&self) -> BiPoly {
        BiPoly::from_terms(self.terms().map(|((t, q), c)| ((-t, -q), c)))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // ordered by q then t, which reads naturally for homology tables
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&((t, q), _)| (q, t));
        for (n, ((t, q), c)) in terms.into_iter().enumerate() {
            let vars = [power("t", t), power("q", q)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            write_monomial(f, n == 0, c, &vars)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q_plus_q_inv() -> LaurentPoly {
        LaurentPoly::from_terms([(1, 1), (-1, 1)])
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(2, 1), (6, 1), (8, -1)]);
        assert_eq!(p.to_string(), "q^2 + q^6 - q^8");
        assert_eq!(LaurentPoly::monomial(1, 0).to_string(), "1");
        assert_eq!(LaurentPoly::from_terms([(-1, 2), (0, -3)]).to_string(), "2q^-1 - 3");
        let k = BiPoly::from_terms([((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)]);
        assert_eq!(k.to_string(), "q + q^3 + t^2 q^5 + t^3 q^9");
    }

    #[test]
    fn trefoil_division() {
        let k = BiPoly::from_terms([((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)]);
        let j = k.at_t_minus_one().div_exact(&q_plus_q_inv()).unwrap();
        assert_eq!(j, LaurentPoly::from_terms([(2, 1), (6, 1), (8, -1)]));
    }

    #[test]
    fn non_divisible() {
        let p = LaurentPoly::from_terms([(0, 1)]);
        assert_eq!(p.div_exact(&q_plus_q_inv()), Err(Error::NonDivisible));
        let p = LaurentPoly::from_terms([(3, 1), (1, 2)]);
        assert_eq!(p.div_exact(&q_plus_q_inv()), Err(Error::NonDivisible));
    }

    proptest! {
        #[test]
        fn product_divides_back(
            a in proptest::collection::vec((-6i32..6, -5i64..5), 0..6),
            b in proptest::collection::vec((-4i32..4, -3i64..3), 0..4),
        ) {
            let a = LaurentPoly::from_terms(a);
            let mut b = LaurentPoly::from_terms(b);
            let top = b.max_degree().map_or(0, |d| d + 1);
            b = b.add(&LaurentPoly::monomial(1, top));
            prop_assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
        }
    }
}
