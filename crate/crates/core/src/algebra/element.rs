use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::assoc::expand_tree;
use super::{engel_tree, AssocPoly, Bidegree, BracketExpr};
use crate::error::{invalid, Error, Result};
use crate::words::{
    lyndon_bracket, lyndon_words, standard_factorization, words_in_bidegree, Letter, LyndonWord, MAX_WEIGHT,
};

/// An element of `L_{k,l}` in Lyndon–Shirshov coordinates.
///
/// The zero element keeps its bidegree when it is known; `bidegree() ==
/// None` is the untyped zero, which combines with anything.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    bidegree: Option<Bidegree>,
    coeffs: BTreeMap<LyndonWord, BigInt>,
}

impl LieElement {
    pub fn zero() -> LieElement {
        LieElement::default()
    }

    pub fn zero_in(bd: Bidegree) -> LieElement {
        LieElement { bidegree: Some(bd), coeffs: BTreeMap::new() }
    }

    pub fn basis(w: LyndonWord) -> LieElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w, BigInt::one());
        LieElement { bidegree: Some(w.bidegree()), coeffs }
    }

    pub fn letter(l: Letter) -> LieElement {
        LieElement::basis(LyndonWord::letter(l))
    }

    /// Builds an element from `(coefficient, word)` pairs, all of which must
    /// be Lyndon words of bidegree `bd`.
    pub fn from_terms<I>(bd: Bidegree, terms: I) -> Result<LieElement>
    where
        I: IntoIterator<Item = (BigInt, LyndonWord)>,
    {
        let mut out = LieElement::zero_in(bd);
        for (c, w) in terms {
            if w.bidegree() != bd {
                return Err(Error::BidegreeMixing(bd.to_string(), w.bidegree().to_string()));
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    /// Reads coordinates against an ordered basis of `L_bd`.
    pub fn from_coordinates(bd: Bidegree, basis: &[LyndonWord], coords: &[BigInt]) -> Result<LieElement> {
        if basis.len() != coords.len() {
            return invalid(format!("{} coordinates for a basis of size {}", coords.len(), basis.len()));
        }
        LieElement::from_terms(bd, coords.iter().cloned().zip(basis.iter().copied()))
    }

    pub fn bidegree(&self) -> Option<Bidegree> {
        self.bidegree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: &LyndonWord) -> BigInt {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    /// Terms in canonical (lexicographic) basis order.
    pub fn iter(&self) -> impl Iterator<Item = (&LyndonWord, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coordinates against an ordered basis; every term must appear in it.
    pub fn coordinates(&self, basis: &[LyndonWord]) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); basis.len()];
        for (w, c) in &self.coeffs {
            match basis.binary_search(w) {
                Ok(i) => out[i] = c.clone(),
                Err(_) => return invalid(format!("{w} is not in the given basis")),
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, w: LyndonWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn checked_add(&self, other: &LieElement) -> Result<LieElement> {
        let bidegree = match (self.bidegree, other.bidegree) {
            (Some(x), Some(y)) if x != y => return Err(Error::BidegreeMixing(x.to_string(), y.to_string())),
            (x, y) => x.or(y),
        };
        let mut out = LieElement { bidegree, coeffs: self.coeffs.clone() };
        for (w, c) in &other.coeffs {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LieElement) -> Result<LieElement> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> LieElement {
        let mut out = LieElement::zero();
        out.bidegree = self.bidegree;
        if !c.is_zero() {
            for (w, x) in &self.coeffs {
                out.coeffs.insert(*w, x * c);
            }
        }
        out
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-BigInt::one())
    }

    /// `Σ c_w [w]` as a bracket expression.
    pub fn to_expr(&self) -> BracketExpr {
        self.coeffs
            .iter()
            .fold(BracketExpr::zero(), |acc, (w, c)| acc.add(&BracketExpr::term(c.clone(), lyndon_bracket(w))))
    }

    /// Image in the free associative ring.
    pub fn to_assoc(&self) -> Result<AssocPoly> {
        let mut out = AssocPoly::zero();
        if let Some(bd) = self.bidegree.filter(|_| !self.is_zero()) {
            let table = graded_table(bd)?;
            for (w, c) in &self.coeffs {
                out.add_scaled(table.expansion(w)?, c);
            }
        }
        Ok(out)
    }

    /// `(decimal coefficient, word)` pairs in basis order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.coeffs.iter().map(|(w, c)| (c.to_string(), w.to_string())).collect()
    }

    pub fn from_pairs(bd: Bidegree, pairs: &[(String, String)]) -> Result<LieElement> {
        let mut terms = Vec::with_capacity(pairs.len());
        for (c, w) in pairs {
            let c: BigInt = c.parse().map_err(|_| Error::InvalidInput(format!("bad coefficient {c:?}")))?;
            terms.push((c, w.parse::<LyndonWord>()?));
        }
        LieElement::from_terms(bd, terms)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i == 0 {
                write!(f, "{c}·{w}")?;
            } else if c.is_negative() {
                write!(f, " - {}·{w}", c.abs())?;
            } else {
                write!(f, " + {c}·{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bidegree {
            Some(bd) => write!(f, "{self} in L{bd}"),
            None => write!(f, "{self}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRecord {
    bidegree: Option<Bidegree>,
    terms: Vec<(String, String)>,
}

impl Serialize for LieElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRecord { bidegree: self.bidegree, terms: self.to_pairs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = ElementRecord::deserialize(d)?;
        match rec.bidegree {
            Some(bd) => LieElement::from_pairs(bd, &rec.terms).map_err(serde::de::Error::custom),
            None if rec.terms.is_empty() => Ok(LieElement::zero()),
            None => Err(serde::de::Error::custom("nonzero element without a bidegree")),
        }
    }
}

/// Per-bidegree data for back-substitution: the Lyndon basis and the
/// associative expansion of each basis bracket.
pub(crate) struct GradedTable {
    basis: Vec<LyndonWord>,
    expansions: Vec<AssocPoly>,
    // expansions re-indexed by word rank within the bidegree
    ranked: Vec<Vec<(usize, BigInt)>>,
    size: usize,
}

impl GradedTable {
    fn build(bd: Bidegree) -> Result<GradedTable> {
        let basis = lyndon_words(bd.a, bd.b)?;
        let mut expansions = Vec::with_capacity(basis.len());
        for w in &basis {
            let exp = if w.len() == 1 {
                AssocPoly::monomial(*w.word())
            } else {
                let (u, v) = standard_factorization(w)?;
                let eu = graded_table(u.bidegree())?.expansion(&u)?.clone();
                let ev = graded_table(v.bidegree())?.expansion(&v)?.clone();
                eu.commutator(&ev)
            };
            // [w] = w + (larger words of the same bidegree)
            if exp.coeff(w.word()) != BigInt::one() || exp.iter().any(|(x, _)| x < w.word()) {
                return Err(Error::Internal(format!("expansion of [{w}] is not unitriangular")));
            }
            expansions.push(exp);
        }
        let ranked =
            expansions.iter().map(|p| p.iter().map(|(w, c)| (w.rank_in_bidegree(), c.clone())).collect()).collect();
        Ok(GradedTable { basis, expansions, ranked, size: words_in_bidegree(bd) })
    }

    pub(crate) fn basis(&self) -> &[LyndonWord] {
        &self.basis
    }

    fn expansion(&self, w: &LyndonWord) -> Result<&AssocPoly> {
        self.basis
            .binary_search(w)
            .map(|i| &self.expansions[i])
            .map_err(|_| Error::Internal(format!("{w} missing from its graded table")))
    }

    /// Solves `dense = Σ c_w expand([w])`; any residual is an error.
    fn back_substitute(&self, bd: Bidegree, mut dense: Vec<BigInt>) -> Result<LieElement> {
        let mut out = LieElement::zero_in(bd);
        for (i, w) in self.basis.iter().enumerate() {
            let c = dense[w.word().rank_in_bidegree()].clone();
            if c.is_zero() {
                continue;
            }
            for (idx, x) in &self.ranked[i] {
                dense[*idx] -= &c * x;
            }
            out.coeffs.insert(*w, c);
        }
        if let Some(pos) = dense.iter().position(|c| !c.is_zero()) {
            return Err(Error::Internal(format!(
                "nonzero residual at word rank {pos} in bidegree {bd}: input is not a Lie element"
            )));
        }
        Ok(out)
    }

    fn dense_from(&self, p: &AssocPoly) -> Vec<BigInt> {
        let mut dense = vec![BigInt::zero(); self.size];
        for (w, c) in p.iter() {
            dense[w.rank_in_bidegree()] += c;
        }
        dense
    }
}

type TableCache = RwLock<HashMap<Bidegree, Arc<GradedTable>>>;

pub(crate) fn graded_table(bd: Bidegree) -> Result<Arc<GradedTable>> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().expect("table cache poisoned").get(&bd) {
        return Ok(Arc::clone(t));
    }
    if bd.weight() > MAX_WEIGHT {
        return invalid(format!("weight {} exceeds {MAX_WEIGHT}", bd.weight()));
    }
    // built outside the lock: construction recurses into smaller bidegrees
    let table = Arc::new(GradedTable::build(bd)?);
    let mut guard = cache.write().expect("table cache poisoned");
    Ok(Arc::clone(guard.entry(bd).or_insert(table)))
}

/// Ordered Lyndon basis of `L_bd`; empty when the bidegree is `(0,0)`.
pub(crate) fn basis_of(bd: Bidegree) -> Result<Vec<LyndonWord>> {
    if bd.weight() == 0 {
        return Ok(Vec::new());
    }
    Ok(graded_table(bd)?.basis().to_vec())
}

/// Normal form of a homogeneous bracket expression in the Lyndon–Shirshov
/// basis.
pub fn normalize(e: &BracketExpr) -> Result<LieElement> {
    let bd = match e.bidegree()? {
        Some(bd) => bd,
        None => return Ok(LieElement::zero()),
    };
    let table = graded_table(bd)?;
    let mut dense = vec![BigInt::zero(); table.size];
    for (c, t) in e.terms() {
        for (w, x) in expand_tree(t).iter() {
            dense[w.rank_in_bidegree()] += c * x;
        }
    }
    table.back_substitute(bd, dense)
}

/// `[x, y]` in normal form.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    let bd = match (x.bidegree, y.bidegree) {
        (Some(p), Some(q)) => p + q,
        _ => return Ok(LieElement::zero()),
    };
    if x.is_zero() || y.is_zero() {
        return Ok(LieElement::zero_in(bd));
    }
    let table = graded_table(bd)?;
    let p = x.to_assoc()?.commutator(&y.to_assoc()?);
    table.back_substitute(bd, table.dense_from(&p))
}

/// `C_n = [a, b, ..., b]` in normal form; equals `1·ab^n`.
pub fn engel(n: usize) -> Result<LieElement> {
    normalize(&engel_tree(n).into())
}
