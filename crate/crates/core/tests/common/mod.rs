#![allow(dead_code)]

use freelie::algebra::BracketExpr;
use freelie::words::{BracketTree, Letter};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random bracketing of the letters in the given order.
pub fn random_tree<R: Rng>(rng: &mut R, letters: &[Letter]) -> BracketTree {
    if letters.len() == 1 {
        return BracketTree::Leaf(letters[0]);
    }
    let split = rng.gen_range(1..letters.len());
    BracketTree::node(random_tree(rng, &letters[..split]), random_tree(rng, &letters[split..]))
}

/// A homogeneous expression: up to four random bracketings of shuffles of
/// one multiset of letters, with small integer coefficients.
pub fn random_homogeneous<R: Rng>(rng: &mut R, weight: usize) -> BracketExpr {
    let mut letters: Vec<Letter> = (0..weight).map(|_| if rng.gen_bool(0.5) { Letter::A } else { Letter::B }).collect();
    let terms = rng.gen_range(1..=4);
    let mut e = BracketExpr::zero();
    for _ in 0..terms {
        letters.shuffle(rng);
        let c: i64 = rng.gen_range(-3..=3);
        e = e.add(&BracketExpr::term(c, random_tree(rng, &letters)));
    }
    e
}

/// Three homogeneous expressions of total weight at most `max_weight`.
pub fn random_triple<R: Rng>(rng: &mut R, max_weight: usize) -> (BracketExpr, BracketExpr, BracketExpr) {
    let total = rng.gen_range(3..=max_weight);
    let wx = rng.gen_range(1..=total - 2);
    let wy = rng.gen_range(1..=total - wx - 1);
    let wz = total - wx - wy;
    (random_homogeneous(rng, wx), random_homogeneous(rng, wy), random_homogeneous(rng, wz))
}
