use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::BracketExpr;
use crate::words::{BracketTree, Word};

/// Integer combination of words in the free associative ring.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AssocPoly {
    terms: BTreeMap<Word, BigInt>,
}

impl AssocPoly {
    pub fn zero() -> AssocPoly {
        AssocPoly::default()
    }

    pub fn monomial(w: Word) -> AssocPoly {
        let mut p = AssocPoly::zero();
        p.add_term(w, BigInt::one());
        p
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

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in increasing word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &AssocPoly, c: &BigInt) {
        for (w, x) in &other.terms {
            self.add_term(*w, x * c);
        }
    }

    pub fn mul(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (u, x) in &self.terms {
            for (v, y) in &other.terms {
                out.add_term(u.concat(v), x * y);
            }
        }
        out
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = self.mul(other);
        out.add_scaled(&other.mul(self), &-BigInt::one());
        out
    }
}

impl fmt::Display for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" };
            let mag = c.magnitude();
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn expand_tree(t: &BracketTree) -> AssocPoly {
    match t {
        BracketTree::Leaf(l) => AssocPoly::monomial(Word::letter(*l)),
        BracketTree::Node(x, y) => expand_tree(x).commutator(&expand_tree(y)),
    }
}

/// Expands every bracket as `[x, y] = xy - yx`.
pub fn assoc_expand(e: &BracketExpr) -> AssocPoly {
    let mut out = AssocPoly::zero();
    for (c, t) in e.terms() {
        out.add_scaled(&expand_tree(t), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_expr;

    fn expand(s: &str) -> String {
        assoc_expand(&parse_expr(s).unwrap()).to_string()
    }

    #[test]
    fn commutator_expansions() {
        assert_eq!(expand("[a,b]"), "ab - ba");
        assert_eq!(expand("[[a,b],b]"), "abb - 2bab + bba");
        assert_eq!(expand("[a,b,b]"), "abb - 2bab + bba");
        assert_eq!(expand("[a,a]"), "0");
        assert_eq!(assoc_expand(&BracketExpr::zero()).to_string(), "0");
        assert_eq!(expand("2*[a,b] + [b,a]"), "ab - ba");
    }
}
