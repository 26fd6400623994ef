//! Evaluation of Lie expressions in matrix Lie rings.
//!
//! A true identity of the free Lie ring vanishes under every substitution
//! of integer matrices for `a` and `b` with `[X, Y] = XY - YX`. A nonzero
//! evaluation is therefore a disproof; a run of zero evaluations is only
//! evidence.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{BracketExpr, LieElement};
use crate::error::{invalid, Result};
use crate::theta::KernelCertificate;
use crate::words::{lyndon_bracket, BracketTree, Letter, LyndonWord};
use crate::zlinalg::{IntMatrix, MatrixRecord};

/// Default matrix size.
pub const DEFAULT_DIM: usize = 4;
/// Default number of random substitutions.
pub const DEFAULT_TRIALS: usize = 50;
/// Entries are drawn uniformly from `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAssignment {
    pub dim: usize,
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub seed: u64,
}

impl MatrixAssignment {
    /// Reproducible random assignment with entries in `[-3, 3]`.
    pub fn from_seed(dim: usize, seed: u64) -> MatrixAssignment {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            let mut m = IntMatrix::zeros(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] = BigInt::from(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND));
                }
            }
            m
        };
        let a = draw();
        let b = draw();
        MatrixAssignment { dim, a, b, seed }
    }

    pub fn new(a: IntMatrix, b: IntMatrix) -> Result<MatrixAssignment> {
        let dim = a.rows();
        if a.cols() != dim || b.rows() != dim || b.cols() != dim {
            return invalid("assignment matrices must be square of one size");
        }
        Ok(MatrixAssignment { dim, a, b, seed: 0 })
    }

    fn letter(&self, l: Letter) -> &IntMatrix {
        match l {
            Letter::A => &self.a,
            Letter::B => &self.b,
        }
    }
}

struct Evaluator<'a> {
    assign: &'a MatrixAssignment,
    modulus: Option<BigInt>,
    basis_memo: HashMap<LyndonWord, IntMatrix>,
}

impl<'a> Evaluator<'a> {
    fn new(assign: &'a MatrixAssignment, modulus: Option<BigInt>) -> Evaluator<'a> {
        Evaluator { assign, modulus, basis_memo: HashMap::new() }
    }

    fn reduce(&self, m: IntMatrix) -> IntMatrix {
        match &self.modulus {
            Some(p) => m.reduce_mod(p),
            None => m,
        }
    }

    fn commutator(&self, x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
        let xy = x.mul(y).expect("square");
        let yx = y.mul(x).expect("square");
        self.reduce(xy.sub(&yx).expect("square"))
    }

    fn tree(&self, t: &BracketTree) -> IntMatrix {
        match t {
            BracketTree::Leaf(l) => self.reduce(self.assign.letter(*l).clone()),
            BracketTree::Node(x, y) => self.commutator(&self.tree(x), &self.tree(y)),
        }
    }

    fn expr(&self, e: &BracketExpr) -> IntMatrix {
        let d = self.assign.dim;
        let sum =
            e.terms().fold(IntMatrix::zeros(d, d), |acc, (c, t)| acc.add(&self.tree(t).scale(c)).expect("square"));
        self.reduce(sum)
    }

    fn basis(&mut self, w: &LyndonWord) -> IntMatrix {
        if let Some(m) = self.basis_memo.get(w) {
            return m.clone();
        }
        let m = self.tree(&lyndon_bracket(w));
        self.basis_memo.insert(*w, m.clone());
        m
    }

    fn element(&mut self, x: &LieElement) -> IntMatrix {
        let d = self.assign.dim;
        let mut sum = IntMatrix::zeros(d, d);
        for (w, c) in x.iter() {
            sum = sum.add(&self.basis(w).scale(c)).expect("square");
        }
        self.reduce(sum)
    }
}

/// Substitutes the assignment for the letters and evaluates exactly.
pub fn evaluate_expr(e: &BracketExpr, assign: &MatrixAssignment) -> IntMatrix {
    Evaluator::new(assign, None).expr(e)
}

/// Evaluates a normal-form element through its basis brackets.
pub fn evaluate_element(x: &LieElement, assign: &MatrixAssignment) -> IntMatrix {
    Evaluator::new(assign, None).element(x)
}

/// `[A, a] + [B, b]` under the assignment.
fn evaluate_theta(c: &KernelCertificate, assign: &MatrixAssignment, modulus: Option<BigInt>) -> IntMatrix {
    let mut ev = Evaluator::new(assign, modulus);
    let a_val = ev.element(&c.a);
    let b_val = ev.element(&c.b);
    let left = ev.commutator(&a_val, &ev.reduce(assign.a.clone()));
    let right = ev.commutator(&b_val, &ev.reduce(assign.b.clone()));
    ev.reduce(left.add(&right).expect("square"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub a: MatrixRecord,
    pub b: MatrixRecord,
    pub value: MatrixRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub certificate: String,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub modulus: Option<String>,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub note: String,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Seed of trial `t` for base seed `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

/// Evaluates `[A, a] + [B, b]` on `trials` random `dim × dim` assignments.
/// With `modulus`, all arithmetic is done modulo `p`.
pub fn oracle_check(
    c: &KernelCertificate,
    trials: usize,
    dim: usize,
    seed: u64,
    modulus: Option<u64>,
) -> Result<OracleReport> {
    if trials == 0 {
        return invalid("oracle check needs at least one trial");
    }
    if dim < 2 {
        return invalid("oracle check needs matrices of size at least 2");
    }
    if modulus.is_some_and(|p| p < 2) {
        return invalid("modulus must be at least 2");
    }
    let p = modulus.map(BigInt::from);
    let mut counterexample = None;
    for trial in 0..trials {
        let s = trial_seed(seed, trial);
        let assign = MatrixAssignment::from_seed(dim, s);
        let value = evaluate_theta(c, &assign, p.clone());
        if !value.is_zero() {
            counterexample = Some(Counterexample {
                trial,
                seed: s,
                a: assign.a.to_record(),
                b: assign.b.to_record(),
                value: value.to_record(),
            });
            break;
        }
    }
    let verdict = if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass };
    let mut note = match verdict {
        Verdict::Pass => "all evaluations vanished; this is evidence, not a proof".to_string(),
        Verdict::Fail => "nonzero evaluation: the pair is not in the kernel".to_string(),
    };
    if modulus.is_some() {
        note.push_str("; arithmetic reduced modulo p, so a pass only holds in characteristic p");
    }
    Ok(OracleReport {
        certificate: format!("{}@{}", c.source, c.bidegree),
        dim,
        trials,
        seed,
        modulus: modulus.map(|p| p.to_string()),
        verdict,
        counterexample,
        note,
    })
}
