use std::cmp::Ordering;

use super::AlgError;

/// Exponent vector of a monomial, ordered graded-lexicographically: first by
/// total degree, then lexicographically with variable 0 most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, AlgError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(AlgError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    /// Exponent overflow is treated as a hard error.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// All monomials of total degree `k` in `nvars` variables, ascending.
    pub fn all_of_degree(nvars: usize, k: u32) -> Vec<Monomial> {
        fn rec(rest: usize, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if rest == 1 {
                cur.push(k);
                out.push(Monomial(cur.clone()));
                cur.pop();
                return;
            }
            for e in 0..=k {
                cur.push(e);
                rec(rest - 1, k - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if k == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(nvars, k, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::new(vec![2, 0]);
        let xy = Monomial::new(vec![1, 1]);
        let y3 = Monomial::new(vec![0, 3]);
        assert!(y3 > x2);
        assert!(x2 > xy);
        assert!(xy > Monomial::var(2, 0));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Monomial::new(vec![u32::MAX, 0]);
        assert_eq!(
            big.checked_mul(&Monomial::var(2, 0)),
            Err(AlgError::ExponentOverflow)
        );
    }
}
