//! Arithmetic in the free Lie ring `L(a, b)`.
//!
//! [`BracketExpr`] is the free-form input side, [`LieElement`] the normal
//! form in the Lyndon–Shirshov basis. Normalization goes through the free
//! associative ring ([`AssocPoly`]) where `[x, y] = xy - yx`; the expansion
//! of a basis bracket `[w]` has coefficient 1 on `w` and is otherwise
//! supported on larger words, so the coordinates come out of a triangular
//! back-substitution.

mod assoc;
pub(crate) mod element;
mod expr;
mod parse;

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

pub use assoc::{assoc_expand, AssocPoly};
pub use element::{bracket, engel, normalize, LieElement};
pub use expr::{engel_tree, left_normed, BracketExpr};
pub use parse::parse_expr;

/// `(k, l)`: the number of letters `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub a: usize,
    pub b: usize,
}

impl Bidegree {
    pub const fn new(a: usize, b: usize) -> Bidegree {
        Bidegree { a, b }
    }

    pub fn weight(&self) -> usize {
        self.a + self.b
    }

    /// `(a + da, b + db)` when both stay nonnegative.
    pub fn offset(&self, da: isize, db: isize) -> Option<Bidegree> {
        let a = self.a as isize + da;
        let b = self.b as isize + db;
        (a >= 0 && b >= 0).then(|| Bidegree::new(a as usize, b as usize))
    }
}

impl Add for Bidegree {
    type Output = Bidegree;

    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}
