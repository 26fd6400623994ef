//! Closed-form elements of the kernels `I_{2,m}` and `I_{3,3n}`, built from
//! Engel brackets `C_n = [a, b, ..., b]`.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{engel_tree, left_normed, normalize, Bidegree, BracketExpr, LieElement};
use crate::dims::binomial;
use crate::error::{invalid, Result};
use crate::theta::{verify_certificate, KernelCertificate, Source};

/// `C_n` as a bracket expression.
pub fn c(n: usize) -> BracketExpr {
    engel_tree(n).into()
}

/// The left-normed bracket of Engel brackets `[C_{i_1}, ..., C_{i_r}]`.
pub fn engel_product(indices: &[usize]) -> BracketExpr {
    let items: Vec<BracketExpr> = indices.iter().map(|&i| c(i)).collect();
    left_normed(&items).expect("at least one index")
}

fn sign(exp: usize) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `α_{0,0} = 1`, otherwise
/// `2 binom(i+j-1, j) + binom(i+j-2, j-1) - binom(i+j-2, j-2) - 2 binom(i+j-1, j-2)`.
pub fn alpha(i: usize, j: usize) -> BigInt {
    if i == 0 && j == 0 {
        return BigInt::one();
    }
    let (i, j) = (i as i64, j as i64);
    let two = BigInt::from(2);
    &two * binomial(i + j - 1, j) + binomial(i + j - 2, j - 1)
        - binomial(i + j - 2, j - 2)
        - &two * binomial(i + j - 1, j - 2)
}

fn certify(bd: Bidegree, a: &BracketExpr, b: &BracketExpr, name: String) -> Result<KernelCertificate> {
    let mut cert = KernelCertificate::new(bd, normalize(a)?, normalize(b)?, Source::Family(name));
    verify_certificate(&mut cert)?;
    Ok(cert)
}

/// `[[a,_{2n} b], a] = [Σ_{i<n} (-1)^i [[a,_{2n-1-i} b], [a,_i b]], b]`,
/// stored as `(C_{2n}, -Σ ...)` in bidegree `(2, 2n)`.
pub fn qbad_certificate(n: usize) -> Result<KernelCertificate> {
    if n == 0 {
        return invalid("the qbad family starts at n = 1");
    }
    let sum = (0..n).fold(BracketExpr::zero(), |acc, i| acc.add(&engel_product(&[2 * n - 1 - i, i]).scale(&sign(i))));
    certify(Bidegree::new(2, 2 * n), &c(2 * n), &sum.neg(), format!("qbad(n={n})"))
}

/// `(C_m, Σ_{i=1}^{m/2} (-1)^i [C_{m-i}, C_{i-1}])` for even `m`.
pub fn i2_certificate(m: usize) -> Result<KernelCertificate> {
    if m == 0 || m % 2 == 1 {
        return invalid(format!("I_(2,m) has a generator only for even m >= 2, got {m}"));
    }
    let b = (1..=m / 2).fold(BracketExpr::zero(), |acc, i| acc.add(&engel_product(&[m - i, i - 1]).scale(&sign(i))));
    certify(Bidegree::new(2, m), &c(m), &b, format!("i2(m={m})"))
}

/// Left-hand argument `A_n` of the `I_{3,3n}` identity.
pub fn i33n_left(n: usize) -> BracketExpr {
    (0..=n.div_ceil(2)).fold(BracketExpr::zero(), |acc, k| {
        let coeff = sign(n + 1) * alpha(n + 1 - k, k);
        acc.add(&engel_product(&[2 * n + 1 - k, n + k - 1]).scale(&coeff))
    })
}

/// Stage-`k` double sum `Σ_{i≤k} Σ_{j≤⌊i/2⌋} (-1)^{i+1} α_{i-j,j} [C_{n+i-j}, C_{n+j-1}, C_{n-i}]`.
/// At `k = n` this is the right-hand argument `B_n`.
pub fn i33n_right_partial(n: usize, k: usize) -> BracketExpr {
    let mut acc = BracketExpr::zero();
    for i in 0..=k {
        for j in 0..=i / 2 {
            let coeff = sign(i + 1) * alpha(i - j, j);
            acc = acc.add(&engel_product(&[n + i - j, n + j - 1, n - i]).scale(&coeff));
        }
    }
    acc
}

/// `(A_n, -B_n)` in bidegree `(3, 3n)`.
pub fn i33n_certificate(n: usize) -> Result<KernelCertificate> {
    if n == 0 {
        return invalid("the I_(3,3n) family starts at n = 1");
    }
    certify(Bidegree::new(3, 3 * n), &i33n_left(n), &i33n_right_partial(n, n).neg(), format!("i33(n={n})"))
}

/// Both sides of the stage-`k` identity `ω_k = θ_k` inside `L_{3,3n}`.
#[derive(Clone, Debug)]
pub struct PartialSums {
    pub n: usize,
    pub k: usize,
    pub omega_expr: BracketExpr,
    pub theta_expr: BracketExpr,
    pub omega: LieElement,
    pub theta: LieElement,
}

impl PartialSums {
    pub fn holds(&self) -> bool {
        self.omega == self.theta
    }
}

/// `θ_k = Σ_{t≤⌊(k+1)/2⌋} (-1)^{k+1} α_{k+1-t,t} [C_{n+k+1-t}, C_{n-1+t}, C_{n-k}]`.
pub fn theta_partial(n: usize, k: usize) -> BracketExpr {
    (0..=k.div_ceil(2)).fold(BracketExpr::zero(), |acc, t| {
        let coeff = sign(k + 1) * alpha(k + 1 - t, t);
        acc.add(&engel_product(&[n + k + 1 - t, n - 1 + t, n - k]).scale(&coeff))
    })
}

pub fn partial_sums(n: usize, k: usize) -> Result<PartialSums> {
    if k == 0 || k > n {
        return invalid(format!("partial sums need 1 <= k <= n, got n = {n}, k = {k}"));
    }
    let omega_expr = i33n_right_partial(n, k).bracket(&BracketExpr::b());
    let theta_expr = theta_partial(n, k);
    Ok(PartialSums { n, k, omega: normalize(&omega_expr)?, theta: normalize(&theta_expr)?, omega_expr, theta_expr })
}

/// Which branch of the `[C_k, C_l, C_m, b]` expansion applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RazlCase {
    /// `k > l + 1`, `k ≥ m + 1`
    Generic,
    /// `k = l + 1`, `k ≥ m + 1`
    AdjacentLeft,
    /// `k = l + 1`, `k = m`
    AdjacentBoth,
    /// `k > l + 1`, `k = m`
    EqualOuter,
}

/// The closed-form expansion of `[C_k, C_l, C_m, b]` for `k > l`, `k ≥ m`.
pub fn razl_expansion(k: usize, l: usize, m: usize) -> Result<(RazlCase, BracketExpr)> {
    if !(k > l && k >= m) {
        return invalid(format!("expansion needs k > l and k >= m, got ({k},{l},{m})"));
    }
    let two = BigInt::from(2);
    let p = |i: &[usize]| engel_product(i);
    let out = match (k > l + 1, k > m) {
        (true, true) => (RazlCase::Generic, p(&[k + 1, l, m]).add(&p(&[k, l + 1, m])).add(&p(&[k, l, m + 1]))),
        (false, true) => (RazlCase::AdjacentLeft, p(&[k + 1, l, m]).add(&p(&[k, l, m + 1]))),
        (false, false) => (RazlCase::AdjacentBoth, p(&[k + 1, l, m]).scale(&two).sub(&p(&[k + 1, l + 1, m - 1]))),
        (true, false) => {
            (RazlCase::EqualOuter, p(&[k + 1, l, m]).scale(&two).add(&p(&[k, l + 1, m])).sub(&p(&[k + 1, k, l])))
        }
    };
    Ok(out)
}

/// Normal form of the closed-form expansion of `[C_k, C_l, C_m, b]`.
pub fn razl_rewrite(k: usize, l: usize, m: usize) -> Result<LieElement> {
    let (_, e) = razl_expansion(k, l, m)?;
    normalize(&e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bracket, engel};

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1, 1), bi(3));
        assert_eq!(alpha(2, 0), bi(2));
        assert_eq!(alpha(1, 0), bi(2));
        assert_eq!(alpha(0, 0), bi(1));
        assert_eq!(alpha(3, 0), bi(2));
        assert_eq!(alpha(2, 1), bi(5));
        for i in 1..=40 {
            assert_eq!(alpha(i, 0), bi(2));
        }
    }

    #[test]
    fn i2_examples() {
        let c2 = i2_certificate(2).unwrap();
        assert!(c2.verified);
        let expected_b = normalize(&engel_product(&[1, 0]).neg()).unwrap();
        assert_eq!(c2.a, engel(2).unwrap());
        assert_eq!(c2.b, expected_b);
        let c4 = i2_certificate(4).unwrap();
        let b4 = engel_product(&[3, 0]).neg().add(&engel_product(&[2, 1]));
        assert_eq!(c4.b, normalize(&b4).unwrap());
        assert!(c4.verified);
        assert!(i2_certificate(3).is_err());
        assert!(i2_certificate(0).is_err());
    }

    #[test]
    fn qbad_small() {
        let q1 = qbad_certificate(1).unwrap();
        assert!(q1.verified);
        assert_eq!(q1.a, engel(2).unwrap());
        assert!(qbad_certificate(2).unwrap().verified);
        assert!(qbad_certificate(0).is_err());
    }

    #[test]
    fn i33_n1_matches_stated_generator() {
        let cert = i33n_certificate(1).unwrap();
        assert!(cert.verified);
        let a = engel_product(&[2, 1]).scale(&bi(3)).add(&engel_product(&[3, 0]).scale(&bi(2)));
        let b = engel_product(&[1, 0, 1]).sub(&engel_product(&[2, 0, 0]).scale(&bi(2)));
        assert_eq!(cert.a, normalize(&a).unwrap());
        assert_eq!(cert.b, normalize(&b).unwrap());
    }

    #[test]
    fn partial_sum_first_stage() {
        for n in 1..=4 {
            let ps = partial_sums(n, 1).unwrap();
            assert!(ps.holds(), "n = {n}");
            let stated = engel_product(&[n + 2, n - 1, n - 1])
                .scale(&bi(2))
                .add(&engel_product(&[n + 1, n, n - 1]).scale(&bi(3)));
            assert_eq!(ps.omega, normalize(&stated).unwrap());
        }
        assert!(partial_sums(2, 0).is_err());
        assert!(partial_sums(2, 3).is_err());
    }

    #[test]
    fn razl_examples() {
        let (case, e) = razl_expansion(3, 1, 2).unwrap();
        assert_eq!(case, RazlCase::Generic);
        assert_eq!(e, engel_product(&[4, 1, 2]).add(&engel_product(&[3, 2, 2])).add(&engel_product(&[3, 1, 3])));
        let (case, e) = razl_expansion(2, 1, 1).unwrap();
        assert_eq!(case, RazlCase::AdjacentLeft);
        assert_eq!(e, engel_product(&[3, 1, 1]).add(&engel_product(&[2, 1, 2])));
        let (case, e) = razl_expansion(2, 1, 2).unwrap();
        assert_eq!(case, RazlCase::AdjacentBoth);
        assert_eq!(e, engel_product(&[3, 1, 2]).scale(&bi(2)).sub(&engel_product(&[3, 2, 1])));
        assert_eq!(razl_expansion(4, 1, 4).unwrap().0, RazlCase::EqualOuter);
        assert!(razl_rewrite(1, 1, 0).is_err());
        assert!(razl_rewrite(2, 0, 3).is_err());
    }

    #[test]
    fn derivation_expansion_of_engel_triples() {
        // [C_k, C_l, C_m, b] = [C_{k+1}, C_l, C_m] + [C_k, C_{l+1}, C_m] + [C_k, C_l, C_{m+1}]
        for k in 0..=6 {
            for l in 0..=6 {
                for m in 0..=6 {
                    let lhs = engel_product(&[k, l, m]).bracket(&BracketExpr::b());
                    let rhs = engel_product(&[k + 1, l, m]).add(&engel_product(&[k, l + 1, m])).add(&engel_product(&[
                        k,
                        l,
                        m + 1,
                    ]));
                    assert_eq!(normalize(&lhs).unwrap(), normalize(&rhs).unwrap(), "({k},{l},{m})");
                }
            }
        }
    }

    #[test]
    fn engel_brackets_commute_with_normal_form() {
        let x = bracket(&engel(3).unwrap(), &engel(1).unwrap()).unwrap();
        assert_eq!(x, normalize(&engel_product(&[3, 1])).unwrap());
    }
}
