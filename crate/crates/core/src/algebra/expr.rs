use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Bidegree;
use crate::error::{invalid, Error, Result};
use crate::words::{BracketTree, Letter};

/// Integer combination of bracket trees. Homogeneity is checked where an
/// operation needs it, not on construction.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BracketExpr {
    terms: Vec<(BigInt, BracketTree)>,
}

impl BracketExpr {
    pub fn zero() -> BracketExpr {
        BracketExpr::default()
    }

    pub fn letter(l: Letter) -> BracketExpr {
        BracketExpr::tree(BracketTree::Leaf(l))
    }

    pub fn a() -> BracketExpr {
        BracketExpr::letter(Letter::A)
    }

    pub fn b() -> BracketExpr {
        BracketExpr::letter(Letter::B)
    }

    pub fn tree(t: BracketTree) -> BracketExpr {
        BracketExpr { terms: vec![(BigInt::one(), t)] }
    }

    pub fn term(c: impl Into<BigInt>, t: BracketTree) -> BracketExpr {
        let mut e = BracketExpr::zero();
        e.push(c.into(), t);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BracketTree)> {
        self.terms.iter().map(|(c, t)| (c, t))
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

    fn push(&mut self, c: BigInt, t: BracketTree) {
        if c.is_zero() {
            return;
        }
        if let Some(i) = self.terms.iter().position(|(_, s)| *s == t) {
            self.terms[i].0 += c;
            if self.terms[i].0.is_zero() {
                self.terms.remove(i);
            }
        } else {
            self.terms.push((c, t));
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(mut self, other: &BracketExpr) -> BracketExpr {
        for (c, t) in &other.terms {
            self.push(c.clone(), t.clone());
        }
        self
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: &BracketExpr) -> BracketExpr {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, c: &BigInt) -> BracketExpr {
        let mut out = BracketExpr::zero();
        for (x, t) in &self.terms {
            out.push(x * c, t.clone());
        }
        out
    }

    pub fn neg(&self) -> BracketExpr {
        self.scale(&-BigInt::one())
    }

    /// Bilinear bracket `[self, other]`.
    pub fn bracket(&self, other: &BracketExpr) -> BracketExpr {
        let mut out = BracketExpr::zero();
        for (x, s) in &self.terms {
            for (y, t) in &other.terms {
                out.push(x * y, BracketTree::node(s.clone(), t.clone()));
            }
        }
        out
    }

    /// The common bidegree of all terms, `None` for the empty combination.
    pub fn bidegree(&self) -> Result<Option<Bidegree>> {
        let mut found: Option<Bidegree> = None;
        for (_, t) in &self.terms {
            let bd = t.bidegree();
            match found {
                None => found = Some(bd),
                Some(prev) if prev != bd => return Err(Error::BidegreeMixing(prev.to_string(), bd.to_string())),
                _ => {}
            }
        }
        Ok(found)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.iter().map(|(_, t)| t.weight()).max().unwrap_or(0)
    }
}

impl From<BracketTree> for BracketExpr {
    fn from(t: BracketTree) -> BracketExpr {
        BracketExpr::tree(t)
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, t)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[x_1, ..., x_n] = [[x_1, ..., x_{n-1}], x_n]`.
pub fn left_normed(items: &[BracketExpr]) -> Result<BracketExpr> {
    let (first, rest) = match items.split_first() {
        Some(split) => split,
        None => return invalid("left-normed bracket of an empty sequence"),
    };
    Ok(rest.iter().fold(first.clone(), |acc, x| acc.bracket(x)))
}

/// The Engel bracket `C_n = [a, b, ..., b]` with `n` trailing `b`'s.
pub fn engel_tree(n: usize) -> BracketTree {
    (0..n).fold(BracketTree::Leaf(Letter::A), |acc, _| BracketTree::node(acc, BracketTree::Leaf(Letter::B)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> BracketExpr {
        engel_tree(n).into()
    }

    #[test]
    fn left_normed_nesting() {
        let a = BracketExpr::a();
        let b = BracketExpr::b();
        assert_eq!(left_normed(std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(left_normed(&[a.clone(), b.clone(), b.clone()]).unwrap().to_string(), "[[a,b],b]");
        assert_eq!(left_normed(&[c(2), c(1), c(0)]).unwrap(), c(2).bracket(&c(1)).bracket(&c(0)));
        assert!(left_normed(&[]).is_err());
    }

    #[test]
    fn engel_trees() {
        assert_eq!(engel_tree(0).to_string(), "a");
        assert_eq!(engel_tree(3).to_string(), "[[[a,b],b],b]");
    }

    #[test]
    fn like_terms_merge_and_cancel() {
        let e = c(1).add(&c(1)).sub(&c(1).scale(&BigInt::from(2)));
        assert!(e.is_zero());
        let mixed = c(1).add(&c(2));
        assert!(matches!(mixed.bidegree(), Err(Error::BidegreeMixing(..))));
        assert_eq!(BracketExpr::zero().bidegree().unwrap(), None);
    }
}
