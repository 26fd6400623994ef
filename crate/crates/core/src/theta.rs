//! The map `Θ(A, B) = [A, a] + [B, b]` on each bidegree, its kernel
//! lattices, and kernel certificates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::element::basis_of;
use crate::algebra::{bracket, Bidegree, LieElement};
use crate::error::{invalid, Error, Result};
use crate::words::{Letter, LyndonWord};
use crate::zlinalg::{kernel, rank, smith_invariants, IntMatrix, KernelLattice};

/// Which summand of the domain a column comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    /// `L_{k-1,l}`, bracketed with `a`.
    A,
    /// `L_{k,l-1}`, bracketed with `b`.
    B,
}

/// `Θ_{k,l} : L_{k-1,l} ⊕ L_{k,l-1} → L_{k,l}` in canonical bases.
#[derive(Clone, Debug)]
pub struct ThetaMatrix {
    pub bidegree: Bidegree,
    pub domain_a: Vec<LyndonWord>,
    pub domain_b: Vec<LyndonWord>,
    pub codomain: Vec<LyndonWord>,
    pub matrix: IntMatrix,
}

impl ThetaMatrix {
    pub fn domain(&self) -> impl Iterator<Item = (Summand, &LyndonWord)> {
        self.domain_a.iter().map(|w| (Summand::A, w)).chain(self.domain_b.iter().map(|w| (Summand::B, w)))
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_a.len() + self.domain_b.len()
    }

    fn bidegree_a(&self) -> Option<Bidegree> {
        self.bidegree.offset(-1, 0)
    }

    fn bidegree_b(&self) -> Option<Bidegree> {
        self.bidegree.offset(0, -1)
    }

    /// Splits a domain coordinate vector into `(A, B)`.
    pub fn split(&self, coords: &[BigInt]) -> Result<(LieElement, LieElement)> {
        if coords.len() != self.domain_dim() {
            return invalid(format!("{} coordinates for a domain of size {}", coords.len(), self.domain_dim()));
        }
        let (ca, cb) = coords.split_at(self.domain_a.len());
        let a = match self.bidegree_a() {
            Some(bd) if bd.weight() > 0 => LieElement::from_coordinates(bd, &self.domain_a, ca)?,
            _ => LieElement::zero(),
        };
        let b = match self.bidegree_b() {
            Some(bd) if bd.weight() > 0 => LieElement::from_coordinates(bd, &self.domain_b, cb)?,
            _ => LieElement::zero(),
        };
        Ok((a, b))
    }

    /// Domain coordinates of `(A, B)`.
    pub fn join(&self, a: &LieElement, b: &LieElement) -> Result<Vec<BigInt>> {
        let mut out = a.coordinates(&self.domain_a)?;
        out.extend(b.coordinates(&self.domain_b)?);
        Ok(out)
    }
}

fn summand_basis(bd: Option<Bidegree>) -> Result<Vec<LyndonWord>> {
    match bd {
        Some(bd) => basis_of(bd),
        None => Ok(Vec::new()),
    }
}

pub fn theta_matrix(k: usize, l: usize) -> Result<ThetaMatrix> {
    if k == 0 && l == 0 {
        return invalid("Θ is not defined on bidegree (0,0)");
    }
    let bidegree = Bidegree::new(k, l);
    let domain_a = summand_basis(bidegree.offset(-1, 0))?;
    let domain_b = summand_basis(bidegree.offset(0, -1))?;
    let codomain = basis_of(bidegree)?;
    let letter_a = LieElement::letter(Letter::A);
    let letter_b = LieElement::letter(Letter::B);
    let mut matrix = IntMatrix::zeros(codomain.len(), domain_a.len() + domain_b.len());
    let columns = domain_a.iter().map(|w| (w, &letter_a)).chain(domain_b.iter().map(|w| (w, &letter_b)));
    for (j, (w, letter)) in columns.enumerate() {
        let image = bracket(&LieElement::basis(*w), letter)?;
        for (i, c) in image.coordinates(&codomain)?.into_iter().enumerate() {
            matrix[(i, j)] = c;
        }
    }
    Ok(ThetaMatrix { bidegree, domain_a, domain_b, codomain, matrix })
}

/// Where a certificate came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Computed,
    Family(String),
    User,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Computed => write!(f, "computed"),
            Source::Family(name) => write!(f, "family:{name}"),
            Source::User => write!(f, "user"),
        }
    }
}

impl std::str::FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Source> {
        match s {
            "computed" => Ok(Source::Computed),
            "user" => Ok(Source::User),
            _ => match s.strip_prefix("family:") {
                Some(name) if !name.is_empty() => Ok(Source::Family(name.to_string())),
                _ => invalid(format!("unknown certificate source {s:?}")),
            },
        }
    }
}

/// A pair `(A, B)` claimed to satisfy `[A, a] + [B, b] = 0` in `L_{k,l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub bidegree: Bidegree,
    pub a: LieElement,
    pub b: LieElement,
    pub source: Source,
    pub verified: bool,
}

impl KernelCertificate {
    pub fn new(bidegree: Bidegree, a: LieElement, b: LieElement, source: Source) -> KernelCertificate {
        KernelCertificate { bidegree, a, b, source, verified: false }
    }

    /// `[A, a] + [B, b]`, after checking that `A` and `B` sit in the right
    /// bidegrees.
    pub fn theta_image(&self) -> Result<LieElement> {
        let bd = self.bidegree;
        check_part("A", &self.a, bd.offset(-1, 0))?;
        check_part("B", &self.b, bd.offset(0, -1))?;
        let left = bracket(&self.a, &LieElement::letter(Letter::A))?;
        let right = bracket(&self.b, &LieElement::letter(Letter::B))?;
        left.checked_add(&right)
    }

    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            k: self.bidegree.a,
            l: self.bidegree.b,
            a: self.a.to_pairs(),
            b: self.b.to_pairs(),
            source: self.source.to_string(),
            verified: self.verified,
        }
    }

    pub fn from_record(rec: &CertificateRecord) -> Result<KernelCertificate> {
        let bidegree = Bidegree::new(rec.k, rec.l);
        let part = |pairs: &[(String, String)], bd: Option<Bidegree>, name: &str| match bd {
            Some(bd) if bd.weight() > 0 => LieElement::from_pairs(bd, pairs),
            _ if pairs.is_empty() => Ok(LieElement::zero()),
            _ => invalid(format!("{name} must be zero in bidegree {bidegree}")),
        };
        Ok(KernelCertificate {
            bidegree,
            a: part(&rec.a, bidegree.offset(-1, 0), "A")?,
            b: part(&rec.b, bidegree.offset(0, -1), "B")?,
            source: rec.source.parse()?,
            verified: rec.verified,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_record())?)
    }

    pub fn from_json(s: &str) -> Result<KernelCertificate> {
        KernelCertificate::from_record(&serde_json::from_str(s)?)
    }

    /// LaTeX display of the identity `[A, a] = [-B, b]`.
    pub fn to_latex(&self) -> String {
        format!("\\left[{},\\ a\\right] = \\left[{},\\ b\\right]", latex_element(&self.a), latex_element(&self.b.neg()))
    }
}

fn check_part(name: &str, x: &LieElement, expected: Option<Bidegree>) -> Result<()> {
    match (x.bidegree(), expected) {
        (None, _) => Ok(()),
        (Some(_), _) if x.is_zero() && expected.is_none() => Ok(()),
        (Some(got), Some(want)) if got == want => Ok(()),
        (Some(got), want) => invalid(format!(
            "{name} has bidegree {got}, expected {}",
            want.map_or("none (must be zero)".to_string(), |b| b.to_string())
        )),
    }
}

/// JSON payload of a certificate. Coefficients are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub k: usize,
    pub l: usize,
    #[serde(rename = "A")]
    pub a: Vec<(String, String)>,
    #[serde(rename = "B")]
    pub b: Vec<(String, String)>,
    pub source: String,
    pub verified: bool,
}

fn latex_word(w: &LyndonWord) -> String {
    // run-length: aabbb -> a^{2}b^{3}
    let mut out = String::new();
    let letters: Vec<Letter> = w.word().letters().collect();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        out.push(letters[i].as_char());
        if j - i > 1 {
            out.push_str(&format!("^{{{}}}", j - i));
        }
        i = j;
    }
    out
}

fn latex_element(x: &LieElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in x.iter().enumerate() {
        let mag = c.abs();
        if c.is_negative() {
            out.push_str(if i == 0 { "-" } else { " - " });
        } else if i > 0 {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&format!("[{}]", latex_word(w)));
    }
    out
}

/// Recomputes `[A, a] + [B, b]` and sets `verified` accordingly.
pub fn verify_certificate(c: &mut KernelCertificate) -> Result<bool> {
    let ok = c.theta_image()?.is_zero();
    c.verified = ok;
    Ok(ok)
}

/// The kernel lattice `I_{k,l}` in domain coordinates.
pub fn kernel_lattice(k: usize, l: usize) -> Result<(ThetaMatrix, KernelLattice)> {
    let theta = theta_matrix(k, l)?;
    let lattice = kernel(&theta.matrix);
    Ok((theta, lattice))
}

/// One verified certificate per canonical basis vector of `I_{k,l}`.
pub fn kernel_certificates(k: usize, l: usize) -> Result<Vec<KernelCertificate>> {
    let (theta, lattice) = kernel_lattice(k, l)?;
    lattice
        .basis()
        .iter()
        .map(|v| {
            let (a, b) = theta.split(v)?;
            let mut c = KernelCertificate::new(theta.bidegree, a, b, Source::Computed);
            if !verify_certificate(&mut c)? {
                return Err(Error::Internal(format!("kernel vector of Θ{} does not verify", theta.bidegree)));
            }
            Ok(c)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub rank: usize,
    pub codomain_dim: usize,
    pub invariant_factors: Vec<BigInt>,
    pub surjective: bool,
}

/// Surjectivity of `Θ_{k,l}` over the integers: full rank and all
/// invariant factors equal to 1.
pub fn check_surjective(k: usize, l: usize) -> Result<SurjectivityReport> {
    if k + l < 2 {
        return invalid(format!("surjectivity is only claimed for weight >= 2, got ({k},{l})"));
    }
    let theta = theta_matrix(k, l)?;
    let r = rank(&theta.matrix);
    let invariant_factors = smith_invariants(&theta.matrix);
    let codomain_dim = theta.codomain.len();
    let surjective = r == codomain_dim && invariant_factors.iter().all(One::is_one);
    Ok(SurjectivityReport { rank: r, codomain_dim, invariant_factors, surjective })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub member: bool,
    pub kernel_rank: usize,
    /// Coordinates in the canonical kernel basis, when a member.
    pub coordinates: Option<Vec<BigInt>>,
    /// gcd of the coordinates: the vector is `index` times a primitive
    /// lattice vector. For a rank-1 kernel this is the index of the
    /// subgroup it generates.
    pub index: Option<BigInt>,
}

impl MembershipReport {
    /// True when the certificate alone generates the whole kernel.
    pub fn generates(&self) -> bool {
        self.member && self.kernel_rank == 1 && self.index.as_ref().is_some_and(One::is_one)
    }
}

/// Locates a verified certificate inside the computed kernel lattice.
pub fn lattice_membership(c: &KernelCertificate) -> Result<MembershipReport> {
    if !c.verified {
        return invalid("lattice membership needs a verified certificate");
    }
    let (theta, lattice) = kernel_lattice(c.bidegree.a, c.bidegree.b)?;
    let v = theta.join(&c.a, &c.b)?;
    let coordinates = lattice.coordinates(&v)?;
    let index = coordinates.as_ref().map(|xs| xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x)));
    Ok(MembershipReport { member: coordinates.is_some(), kernel_rank: lattice.rank(), coordinates, index })
}

/// The lattice spanned by a set of certificates of one bidegree, in the
/// domain coordinates of `Θ_{k,l}`.
pub fn certificate_lattice(bd: Bidegree, certs: &[KernelCertificate]) -> Result<KernelLattice> {
    let theta = theta_matrix(bd.a, bd.b)?;
    let mut gens = Vec::with_capacity(certs.len());
    for c in certs {
        if c.bidegree != bd {
            return Err(Error::BidegreeMixing(bd.to_string(), c.bidegree.to_string()));
        }
        gens.push(theta.join(&c.a, &c.b)?);
    }
    KernelLattice::from_generators(theta.domain_dim(), gens)
}
