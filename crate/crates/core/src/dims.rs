//! Dimension formulas: necklace counts, bigraded Witt counts and the closed
//! forms for the ranks of the kernels `I_n`, `I_{2,m}`, `I_{3,m}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Möbius function by trial division.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `binom(n, k)`, zero when `k < 0`, `k > n`, or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn to_dim(x: BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::InvalidInput(format!("dimension {x} out of range")))
}

/// `dim L_n = (1/n) Σ_{d | n} μ(n/d) 2^d`.
pub fn dim_l(n: i64) -> Result<u64> {
    if n <= 0 {
        return invalid(format!("dim L_n needs n >= 1, got {n}"));
    }
    let n = n as u64;
    let mut total = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        total += BigInt::from(mobius(n / d)) * (BigInt::one() << d);
    }
    to_dim(total / BigInt::from(n))
}

/// Rank of `L_{k,l}`. Negative indices and `(0,0)` give 0; `(1,0)` and
/// `(0,1)` give 1.
pub fn dim_l_bigraded_ext(k: i64, l: i64) -> u64 {
    if k < 0 || l < 0 || (k == 0 && l == 0) {
        return 0;
    }
    dim_l_bigraded(k as u64, l as u64).expect("valid bidegree")
}

/// `(1/(k+l)) Σ_{d | gcd(k,l)} μ(d) binom((k+l)/d, k/d)`.
pub fn dim_l_bigraded(k: u64, l: u64) -> Result<u64> {
    if k == 0 && l == 0 {
        return invalid("dim L_{0,0} is undefined");
    }
    let n = k + l;
    let g = k.gcd(&l);
    let mut total = BigInt::zero();
    for d in (1..=g).filter(|d| g.is_multiple_of(*d)) {
        total += BigInt::from(mobius(d)) * binomial((n / d) as i64, (k / d) as i64);
    }
    to_dim(total / BigInt::from(n))
}

/// `dim I_n = 2 dim L_{n-1} - dim L_n`.
pub fn dim_i(n: i64) -> Result<u64> {
    if n < 2 {
        return invalid(format!("dim I_n needs n >= 2, got {n}"));
    }
    let twice = 2 * dim_l(n - 1)?;
    let top = dim_l(n)?;
    twice.checked_sub(top).ok_or_else(|| Error::Internal(format!("negative kernel rank at weight {n}")))
}

/// Predicted rank of `I_{k,l}` from the bigraded counts, with the
/// degenerate conventions of [`dim_l_bigraded_ext`].
pub fn dim_i_bigraded(k: i64, l: i64) -> i64 {
    dim_l_bigraded_ext(k - 1, l) as i64 + dim_l_bigraded_ext(k, l - 1) as i64 - dim_l_bigraded_ext(k, l) as i64
}

/// `dim I_{2,m}`: 0 for odd `m`, 1 for even `m`.
pub fn dim_i2(m: u64) -> Result<u64> {
    if m == 0 {
        return invalid("dim I_{2,m} needs m >= 1");
    }
    Ok(if m.is_multiple_of(2) { 1 } else { 0 })
}

/// `dim I_{3,m} = ⌈m/2⌉ - ⌊(m-1)/3⌋ - 1`.
#[allow(clippy::manual_div_ceil)]
pub fn dim_i3(m: u64) -> Result<u64> {
    if m == 0 {
        return invalid("dim I_{3,m} needs m >= 1");
    }
    let ceil_half = m.div_ceil(2);
    // the same count written with a floor
    assert_eq!(ceil_half, (m + 1) / 2);
    Ok(ceil_half - (m - 1) / 3 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRecord {
    pub weight: u64,
    pub k: u64,
    pub l: u64,
    #[serde(rename = "dimL")]
    pub dim_l: u64,
    #[serde(rename = "dimI")]
    pub dim_i: u64,
}

/// Flat records for every bidegree of weight `1..=max_weight`.
pub fn bigraded_records(max_weight: u64) -> Vec<DimRecord> {
    let mut out = Vec::new();
    for n in 1..=max_weight {
        for k in (0..=n).rev() {
            let l = n - k;
            out.push(DimRecord {
                weight: n,
                k,
                l,
                dim_l: dim_l_bigraded_ext(k as i64, l as i64),
                dim_i: dim_i_bigraded(k as i64, l as i64).max(0) as u64,
            });
        }
    }
    out
}

/// Aligned text table with rows `dim L_n` and `dim I_n` for `n = 1..=max`.
pub fn weight_table(max_weight: u64) -> Result<String> {
    let cols: Vec<u64> = (1..=max_weight).collect();
    let l_row: Vec<String> = cols.iter().map(|&n| dim_l(n as i64).map(|d| d.to_string())).collect::<Result<_>>()?;
    let i_row: Vec<String> = cols
        .iter()
        .map(|&n| if n < 2 { Ok("-".to_string()) } else { dim_i(n as i64).map(|d| d.to_string()) })
        .collect::<Result<_>>()?;
    let head: Vec<String> = cols.iter().map(|n| n.to_string()).collect();
    Ok(render_rows(&[("n", head), ("dim L_n", l_row), ("dim I_n", i_row)]))
}

pub(crate) fn render_rows(rows: &[(&str, Vec<String>)]) -> String {
    let label_w = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let ncols = rows.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncols).map(|j| rows.iter().filter_map(|(_, r)| r.get(j)).map(|s| s.len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (label, row) in rows {
        out.push_str(&format!("{label:<label_w$} |"));
        for (j, cell) in row.iter().enumerate() {
            out.push_str(&format!(" {cell:>w$}", w = widths[j]));
        }
        out.push('\n');
    }
    out
}
