//! Finite formal linear combinations of canonical basis elements with exact
//! rational coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Q;

/// A formal sum `sum c_k * b_k` with nonzero rational coefficients, keyed by
/// canonical basis elements. The zero combination has no terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LinComb<K: Ord + Clone> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(key: K) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key, Q::one());
        LinComb { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (K, Q)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, key: K, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, factor: &Q) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    /// Linear extension of a basis map.
    pub fn map<K2: Ord + Clone>(&self, f: impl Fn(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            for (k2, c2) in f(k).iter() {
                out.add_term(k2.clone(), c * c2);
            }
        }
        out
    }

    /// Fallible linear extension.
    pub fn try_map<K2: Ord + Clone, E>(
        &self,
        f: impl Fn(&K) -> Result<LinComb<K2>, E>,
    ) -> Result<LinComb<K2>, E> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            for (k2, c2) in f(k)?.iter() {
                out.add_term(k2.clone(), c * c2);
            }
        }
        Ok(out)
    }

    /// Scales to the primitive integer form: coefficients are coprime
    /// integers and the coefficient of the smallest basis key is positive.
    /// Returns `None` for the zero combination.
    pub fn primitive_normal_form(&self) -> Option<Self> {
        let first = self.terms.values().next()?;
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * &denom_lcm / c.denom();
            gcd = gcd.gcd(&scaled);
        }
        let mut factor = Q::new(denom_lcm, gcd);
        if first.is_negative() {
            factor = -factor;
        }
        Some(self.scale(&factor))
    }

    /// Serializes as `numerator/denominator<TAB>code` lines sorted by code.
    pub fn to_text(&self, code: impl Fn(&K) -> String) -> String {
        let mut lines: Vec<(String, String)> = self
            .terms
            .iter()
            .map(|(k, c)| (code(k), format!("{}/{}", c.numer(), c.denom())))
            .collect();
        lines.sort();
        lines
            .into_iter()
            .map(|(code, coeff)| format!("{coeff}\t{code}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Code string for a tensor (pair) term.
pub fn pair_code<A, B>(
    code_a: impl Fn(&A) -> String,
    code_b: impl Fn(&B) -> String,
) -> impl Fn(&(A, B)) -> String {
    move |(a, b)| format!("{}|{}", code_a(a), code_b(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    #[test]
    fn arithmetic() {
        let mut v: LinComb<&str> = LinComb::zero();
        v.add_term("a", qi(2));
        v.add_term("b", qi(-1));
        v.add_term("a", qi(-2));
        assert_eq!(v.len(), 1);
        assert_eq!(v.coeff(&"b"), qi(-1));
        assert!(v.sub(&v).is_zero());
        let w = v.scale(&qi(3));
        assert_eq!(w.coeff(&"b"), qi(-3));
    }

    #[test]
    fn primitive_form() {
        let v: LinComb<&str> =
            LinComb::from_terms([("a", crate::qr(-2, 3)), ("b", crate::qr(4, 3))]);
        let p = v.primitive_normal_form().unwrap();
        assert_eq!(p.coeff(&"a"), qi(1));
        assert_eq!(p.coeff(&"b"), qi(-2));
        let zero: LinComb<&str> = LinComb::zero();
        assert!(zero.primitive_normal_form().is_none());
    }

    #[test]
    fn serialization_sorted_by_code() {
        let v: LinComb<&str> = LinComb::from_terms([("z", qi(1)), ("a", crate::qr(1, 2))]);
        let text = v.to_text(|k| k.to_string());
        assert_eq!(text, "1/2\ta\n1/1\tz");
    }

    #[test]
    fn pair_terms_serialize_with_bar() {
        let v: LinComb<(&str, &str)> = LinComb::from_terms([(("x", "y"), qi(-2))]);
        let code = pair_code(|a: &&str| a.to_string(), |b: &&str| b.to_string());
        assert_eq!(v.to_text(code), "-2/1\tx|y");
    }
}
