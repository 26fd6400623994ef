//! Dense integer matrices with Hermite and Smith normal forms, and integer
//! kernel lattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from row vectors; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return invalid(format!("row of length {} in a matrix with {cols} columns", r.len()));
            }
            data.extend(r);
        }
        Ok(IntMatrix { rows: nrows, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix::from_rows(cols, rows).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return invalid(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = &self[(i, k)];
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = &other[(k, j)];
                    if !y.is_zero() {
                        out[(i, j)] += x * y;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return invalid(format!("shape mismatch: {}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols));
        }
        let data = self.data.iter().zip(&other.data).map(|(x, y)| f(x, y)).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Entries reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mod_floor(p)).collect() }
    }

    /// `M x` for a column vector `x`.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return invalid(format!("vector of length {} for {} columns", x.len(), self.cols));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord { rows: self.rows, cols: self.cols, entries: self.data.iter().map(|x| x.to_string()).collect() }
    }

    pub fn from_record(rec: &MatrixRecord) -> Result<IntMatrix> {
        if rec.entries.len() != rec.rows * rec.cols {
            return invalid(format!("{} entries for a {}x{} matrix", rec.entries.len(), rec.rows, rec.cols));
        }
        let data = rec
            .entries
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad entry {s:?}"))))
            .collect::<Result<_>>()?;
        Ok(IntMatrix { rows: rec.rows, cols: rec.cols, data })
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", x.to_string())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Interchange record: dimensions plus row-major decimal entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

fn sub_scaled_row(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Row operations applied to the working rows and mirrored on the
/// transform `U` (and, in debug builds, on `U^{-1}` by column operations).
struct RowReducer {
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    #[cfg(debug_assertions)]
    u_inv: Vec<Vec<BigInt>>,
}

impl RowReducer {
    fn new(m: &IntMatrix) -> RowReducer {
        let u = IntMatrix::identity(m.rows).to_rows();
        RowReducer {
            h: m.to_rows(),
            #[cfg(debug_assertions)]
            u_inv: u.clone(),
            u,
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.h.swap(i, j);
        self.u.swap(i, j);
        #[cfg(debug_assertions)]
        for r in self.u_inv.iter_mut() {
            r.swap(i, j);
        }
    }

    fn negate(&mut self, i: usize) {
        for x in self.h[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -std::mem::take(x);
        }
        #[cfg(debug_assertions)]
        for r in self.u_inv.iter_mut() {
            r[i] = -std::mem::take(&mut r[i]);
        }
    }

    /// row_target -= q * row_src
    fn sub(&mut self, target: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        sub_scaled_row(&mut self.h, target, src, q);
        sub_scaled_row(&mut self.u, target, src, q);
        // U' = E U with E = I - q e_t e_s^T, so U'^{-1} = U^{-1} (I + q e_t e_s^T):
        // column src += q * column target
        #[cfg(debug_assertions)]
        for r in self.u_inv.iter_mut() {
            let add = q * &r[target];
            r[src] += add;
        }
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `H = U M`. Pivots are positive and the entries above each pivot lie in
/// `[0, pivot)`; zero rows come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let nrows = m.rows;
    let mut red = RowReducer::new(m);
    let mut pivot_row = 0;
    for c in 0..m.cols {
        if pivot_row == nrows {
            break;
        }
        let mut has_pivot = false;
        loop {
            let best = (pivot_row..nrows)
                .filter(|&r| !red.h[r][c].is_zero())
                .min_by(|&x, &y| red.h[x][c].abs().cmp(&red.h[y][c].abs()));
            let Some(best) = best else { break };
            has_pivot = true;
            red.swap(pivot_row, best);
            let mut clean = true;
            for r in pivot_row + 1..nrows {
                if red.h[r][c].is_zero() {
                    continue;
                }
                let q = red.h[r][c].div_floor(&red.h[pivot_row][c]);
                red.sub(r, pivot_row, &q);
                if !red.h[r][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if red.h[pivot_row][c].is_negative() {
            red.negate(pivot_row);
        }
        for r in 0..pivot_row {
            let q = red.h[r][c].div_floor(&red.h[pivot_row][c]);
            red.sub(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    let h = IntMatrix::from_rows(m.cols, red.h).expect("shape preserved");
    let u = IntMatrix::from_rows(nrows, red.u).expect("shape preserved");
    #[cfg(debug_assertions)]
    {
        let u_inv = IntMatrix::from_rows(nrows, red.u_inv).expect("shape preserved");
        assert_eq!(u.mul(m).expect("shapes"), h, "U M != H");
        assert_eq!(u.mul(&u_inv).expect("shapes"), IntMatrix::identity(nrows), "U not unimodular");
    }
    (h, u)
}

fn nonzero_rows(h: &IntMatrix) -> usize {
    (0..h.rows).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    nonzero_rows(&hnf(m).0)
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of the Smith normal form.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let (nr, nc) = (m.rows, m.cols);
    let mut a = m.to_rows();
    let mut out = Vec::new();
    for t in 0..nr.min(nc) {
        // bring a smallest nonzero entry of the trailing block to (t, t)
        let pick = |a: &Vec<Vec<BigInt>>| {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = pick(&a) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    sub_scaled_row(&mut a, i, t, &q);
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..nc {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut() {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                // a smaller remainder sits in row or column t; move it to the corner
                let mut best = (t, t);
                for i in t + 1..nr {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..nc {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let row_i = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(row_i) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// A sublattice of `Z^ambient` given by an independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
    canonical: bool,
}

impl KernelLattice {
    /// The lattice spanned by `gens`, presented by the nonzero rows of its
    /// Hermite normal form.
    pub fn from_generators(ambient: usize, gens: Vec<Vec<BigInt>>) -> Result<KernelLattice> {
        if gens.is_empty() {
            return Ok(KernelLattice { ambient, basis: Vec::new(), canonical: true });
        }
        let m = IntMatrix::from_rows(ambient, gens)?;
        let (h, _) = hnf(&m);
        let r = nonzero_rows(&h);
        Ok(KernelLattice { ambient, basis: (0..r).map(|i| h.row(i).to_vec()).collect(), canonical: true })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn canonicalize(&self) -> KernelLattice {
        if self.canonical {
            return self.clone();
        }
        KernelLattice::from_generators(self.ambient, self.basis.clone()).expect("ambient matches")
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not
    /// in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.ambient {
            return invalid(format!("vector of length {} in ambient {}", v.len(), self.ambient));
        }
        let lat = self.canonicalize();
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(lat.rank());
        for row in &lat.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        Ok(rest.iter().all(Zero::is_zero).then_some(coords))
    }
}

/// True iff the two lattices are the same subset of `Z^n`.
pub fn lattice_equal(x: &KernelLattice, y: &KernelLattice) -> Result<bool> {
    if x.ambient != y.ambient {
        return invalid(format!("ambient dimensions {} and {} differ", x.ambient, y.ambient));
    }
    Ok(x.canonicalize().basis == y.canonicalize().basis)
}

/// Basis of `{x ∈ Z^cols : M x = 0}` in canonical form.
pub fn kernel(m: &IntMatrix) -> KernelLattice {
    let (h, u) = hnf(&m.transpose());
    let r = nonzero_rows(&h);
    let gens = (r..u.rows).map(|i| u.row(i).to_vec()).collect();
    KernelLattice::from_generators(m.cols, gens).expect("ambient matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(hnf(&id), (id.clone(), id.clone()));
        let (h, _) = hnf(&IntMatrix::from_i64(&[&[2], &[4]]));
        assert_eq!(h, IntMatrix::from_i64(&[&[2], &[0]]));
        let (h, u) = hnf(&IntMatrix::from_i64(&[&[-1, 1]]));
        assert_eq!(h, IntMatrix::from_i64(&[&[1, -1]]));
        assert_eq!(u, IntMatrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let m = IntMatrix::from_i64(&[&[3, 5, 7], &[2, 4, 6], &[1, 1, 9]]);
        let (h, u) = hnf(&m);
        assert_eq!(u.mul(&m).unwrap(), h);
        for i in 0..h.rows() {
            let Some(p) = h.row(i).iter().position(|x| !x.is_zero()) else { continue };
            assert!(h[(i, p)].is_positive());
            for r in 0..i {
                assert!(!h[(r, p)].is_negative() && h[(r, p)] < h[(i, p)]);
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&IntMatrix::from_i64(&[&[-1, 1]]));
        assert_eq!(k.basis(), &[bi(&[1, 1])]);
        assert_eq!(kernel(&IntMatrix::zeros(2, 2)).rank(), 2);
        assert_eq!(kernel(&IntMatrix::identity(4)).rank(), 0);
        // an empty codomain leaves the full ambient lattice
        assert_eq!(kernel(&IntMatrix::zeros(0, 1)).rank(), 1);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&IntMatrix::identity(5)), 5);
        assert_eq!(rank(&IntMatrix::from_i64(&[&[2, 4], &[1, 2]])), 1);
        assert_eq!(rank(&IntMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn lattice_equality() {
        let l = |v: &[i64]| KernelLattice::from_generators(2, vec![bi(v)]).unwrap();
        assert!(lattice_equal(&l(&[1, 1]), &l(&[1, 1])).unwrap());
        assert!(lattice_equal(&l(&[1, 1]), &l(&[-1, -1])).unwrap());
        assert!(!lattice_equal(&l(&[1, 1]), &l(&[2, 2])).unwrap());
        let other = KernelLattice::from_generators(3, vec![bi(&[1, 1, 0])]).unwrap();
        assert!(lattice_equal(&l(&[1, 1]), &other).is_err());
    }

    #[test]
    fn coordinates_and_membership() {
        let lat = KernelLattice::from_generators(3, vec![bi(&[1, 2, 3]), bi(&[0, 3, 3])]).unwrap();
        assert_eq!(lat.coordinates(&bi(&[2, 1, 3])).unwrap(), Some(bi(&[2, -1])));
        assert_eq!(lat.coordinates(&bi(&[0, 1, 1])).unwrap(), None);
        assert_eq!(lat.coordinates(&bi(&[1, 0, 0])).unwrap(), None);
    }

    #[test]
    fn smith_examples() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(smith_invariants(&m), bi(&[2, 6, 12]));
        assert_eq!(smith_invariants(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])), bi(&[1, 6]));
        assert_eq!(smith_invariants(&IntMatrix::zeros(2, 2)), Vec::<BigInt>::new());
    }

    #[test]
    fn record_round_trip() {
        let m = IntMatrix::from_i64(&[&[1, -2], &[3, 400]]);
        let rec = m.to_record();
        assert_eq!(rec.entries, vec!["1", "-2", "3", "400"]);
        assert_eq!(IntMatrix::from_record(&rec).unwrap(), m);
        let bad = MatrixRecord { rows: 2, cols: 2, entries: vec!["1".into()] };
        assert!(IntMatrix::from_record(&bad).is_err());
    }
}
