//! Small dense integer matrices, Smith normal form and torsion points of
//! `L ⊗ Q/Z` for a free lattice `L = Z^n`.
//!
//! Everything here is exact; matrices act on column vectors.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// `self · other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc = acc.checked_add(self[(i, k)].checked_mul(other[(k, j)])?)?;
                }
                out[(i, j)] = acc;
            }
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)];
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)];
            }
        }
        m
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> i64 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|r| self.row(r).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                    return 0;
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    /// Inverse of a matrix of finite multiplicative order, found by powering.
    /// Returns `None` if the order exceeds `max_order`, including every
    /// non-unimodular matrix.
    pub fn finite_order_inverse(&self, max_order: usize) -> Option<(IntMatrix, usize)> {
        assert!(self.is_square());
        if self.determinant().abs() != 1 {
            return None;
        }
        let id = Self::identity(self.rows);
        let mut power = self.clone();
        let mut prev = id.clone();
        for order in 1..=max_order {
            if power == id {
                return Some((prev, order));
            }
            prev = power.clone();
            power = power.checked_mul(self)?;
        }
        None
    }

    /// Solves `x · self = v` for a row vector `x` over `Q`; returns the
    /// solution only if it is integral. `self` must be square and invertible.
    pub fn solve_row_integral(&self, v: &[i64]) -> Option<Vec<i64>> {
        let n = self.rows;
        assert!(self.is_square() && v.len() == n);
        // x M = v  <=>  M^T x^T = v^T
        let mut aug: Vec<Vec<Frac>> = (0..n)
            .map(|i| {
                let mut row: Vec<Frac> = (0..n).map(|j| Frac::int(self[(j, i)] as i128)).collect();
                row.push(Frac::int(v[i] as i128));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| aug[r][col].num != 0)?;
            aug.swap(col, pivot);
            let p = aug[col][col];
            for j in col..=n {
                aug[col][j] = aug[col][j].div(p);
            }
            for r in 0..n {
                if r != col && aug[r][col].num != 0 {
                    let f = aug[r][col];
                    for j in col..=n {
                        let t = aug[col][j].mul(f);
                        aug[r][j] = aug[r][j].sub(t);
                    }
                }
            }
        }
        aug.iter()
            .map(|row| {
                let x = row[n];
                (x.den == 1).then_some(x.num as i64)
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

#[derive(Clone, Copy, Debug)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn int(n: i128) -> Self {
        Frac { num: n, den: 1 }
    }
    fn norm(num: i128, den: i128) -> Self {
        let g = gcd_i128(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Frac { num: s * num / g, den: s * den / g }
    }
    fn mul(self, o: Frac) -> Frac {
        Frac::norm(self.num * o.num, self.den * o.den)
    }
    fn div(self, o: Frac) -> Frac {
        Frac::norm(self.num * o.den, self.den * o.num)
    }
    fn sub(self, o: Frac) -> Frac {
        Frac::norm(self.num * o.den - o.num * self.den, self.den * o.den)
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`,
/// all diagonal entries nonnegative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<i64>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }
}

/// Smith normal form of an arbitrary integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    fn swap_rows(x: &mut IntMatrix, i: usize, j: usize) {
        for c in 0..x.cols() {
            let t = x[(i, c)];
            x[(i, c)] = x[(j, c)];
            x[(j, c)] = t;
        }
    }
    fn swap_cols(x: &mut IntMatrix, i: usize, j: usize) {
        for r in 0..x.rows() {
            let t = x[(r, i)];
            x[(r, i)] = x[(r, j)];
            x[(r, j)] = t;
        }
    }
    // row_i -= k * row_j
    fn row_op(x: &mut IntMatrix, i: usize, j: usize, k: i64) {
        for c in 0..x.cols() {
            let t = x[(j, c)];
            x[(i, c)] -= k * t;
        }
    }
    fn col_op(x: &mut IntMatrix, i: usize, j: usize, k: i64) {
        for r in 0..x.rows() {
            let t = x[(r, j)];
            x[(r, i)] -= k * t;
        }
    }
    fn neg_row(x: &mut IntMatrix, i: usize) {
        for c in 0..x.cols() {
            x[(i, c)] = -x[(i, c)];
        }
    }

    let mut t = 0;
    while t < m.min(n) {
        // pick a nonzero pivot of minimal absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..m {
            for c in t..n {
                if d[(r, c)] != 0 && best.is_none_or(|(br, bc)| d[(r, c)].abs() < d[(br, bc)].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        swap_rows(&mut d, t, pr);
        swap_rows(&mut u, t, pr);
        swap_cols(&mut d, t, pc);
        swap_cols(&mut v, t, pc);

        loop {
            let mut changed = false;
            for r in t + 1..m {
                let k = d[(r, t)].div_euclid(d[(t, t)]);
                if k != 0 {
                    row_op(&mut d, r, t, k);
                    row_op(&mut u, r, t, k);
                }
                if d[(r, t)] != 0 {
                    swap_rows(&mut d, t, r);
                    swap_rows(&mut u, t, r);
                    changed = true;
                }
            }
            for c in t + 1..n {
                let k = d[(t, c)].div_euclid(d[(t, t)]);
                if k != 0 {
                    col_op(&mut d, c, t, k);
                    col_op(&mut v, c, t, k);
                }
                if d[(t, c)] != 0 {
                    swap_cols(&mut d, t, c);
                    swap_cols(&mut v, t, c);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: the pivot must divide the whole remaining block
            let bad =
                (t + 1..m).flat_map(|r| (t + 1..n).map(move |c| (r, c))).find(|&(r, c)| d[(r, c)] % d[(t, t)] != 0);
            match bad {
                Some((r, _)) => {
                    // add row r to row t and re-run the reduction
                    row_op(&mut d, t, r, -1);
                    row_op(&mut u, t, r, -1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            neg_row(&mut d, t);
            neg_row(&mut u, t);
        }
        t += 1;
    }
    let diagonal = (0..m.min(n)).map(|i| d[(i, i)]).collect();
    SmithForm { u, v, diagonal }
}

/// A point of `Z^n ⊗ Q/Z`, stored with a common denominator equal to its order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsionPoint {
    order: i64,
    coords: Vec<i64>,
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl TorsionPoint {
    /// The point `nums / denom` reduced mod 1 and to lowest common denominator.
    pub fn new(nums: &[i64], denom: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        let reduced: Vec<i64> = nums.iter().map(|x| x.rem_euclid(denom)).collect();
        let g = reduced.iter().fold(denom, |acc, &x| gcd(acc, x));
        TorsionPoint { order: denom / g, coords: reduced.iter().map(|x| x / g).collect() }
    }

    /// Validating constructor: rejects coordinates that are not already in
    /// lowest terms with denominator `order`.
    pub fn from_reduced(coords: Vec<i64>, order: i64) -> Result<Self> {
        let p = TorsionPoint::new(&coords, order.max(1));
        if order < 1 || p.order != order || p.coords != coords {
            return Err(Error::UnreducedPoint(format!("{coords:?}/{order}")));
        }
        Ok(p)
    }

    pub fn zero(rank: usize) -> Self {
        TorsionPoint { order: 1, coords: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Numerators over the common denominator `order`.
    pub fn numerators(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1
    }

    /// Image under an integer matrix acting on the lattice.
    pub fn apply(&self, m: &IntMatrix) -> TorsionPoint {
        TorsionPoint::new(&m.mul_vec(&self.coords), self.order)
    }

    pub fn scale(&self, k: i64) -> TorsionPoint {
        let c: Vec<i64> = self.coords.iter().map(|x| x * k).collect();
        TorsionPoint::new(&c, self.order)
    }

    /// Whether the pairing with an integral dual vector lies in `Z`.
    pub fn pairs_integrally(&self, dual: &[i64]) -> bool {
        let s: i64 = self.coords.iter().zip(dual).map(|(a, b)| a * b).sum();
        s.rem_euclid(self.order) == 0
    }

    /// Pairing with an integral dual vector, as a reduced fraction in `[0, 1)`.
    pub fn pairing(&self, dual: &[i64]) -> (i64, i64) {
        let s: i64 = self.coords.iter().zip(dual).map(|(a, b)| a * b).sum::<i64>().rem_euclid(self.order);
        let g = gcd(s, self.order);
        (s / g, self.order / g)
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|&c| {
                if c == 0 {
                    "0".to_string()
                } else {
                    let g = gcd(c, self.order);
                    format!("{}/{}", c / g, self.order / g)
                }
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl Ord for TorsionPoint {
    /// Lexicographic on the coordinates read as rationals in `[0, 1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            let lhs = (*a as i128) * other.order as i128;
            let rhs = (*b as i128) * self.order as i128;
            match lhs.cmp(&rhs) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl PartialOrd for TorsionPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All `s ∈ (Q/Z)^n` with `A s ≡ 0 mod Z^n`, for nonsingular square `A`.
/// The number of solutions is `|det A|`.
pub fn kernel_mod_one(a: &IntMatrix) -> Vec<TorsionPoint> {
    let n = a.rows();
    assert!(a.is_square());
    let snf = smith_normal_form(a);
    assert_eq!(snf.rank(), n, "matrix must be nonsingular");
    // A s ∈ Z^n  <=>  D V^{-1} s ∈ Z^n; put s = V t with t_i ∈ (1/d_i) Z / Z.
    let denom = snf.diagonal.iter().fold(1, |acc, &d| lcm(acc, d));
    let mut out = Vec::new();
    let mut counter = vec![0i64; n];
    loop {
        let t: Vec<i64> = (0..n).map(|i| counter[i] * (denom / snf.diagonal[i])).collect();
        out.push(TorsionPoint::new(&snf.v.mul_vec(&t), denom));
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            counter[i] += 1;
            if counter[i] < snf.diagonal[i] {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_order_inverse_rejects_infinite_order() {
        assert!(IntMatrix::from_rows(&[vec![2]]).finite_order_inverse(64).is_none());
        assert!(IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).finite_order_inverse(64).is_none());
        let r = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        let (inv, order) = r.finite_order_inverse(64).unwrap();
        assert_eq!(order, 3);
        assert!(r.mul(&inv).is_identity());
    }

    #[test]
    fn snf_diagonal_divides() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[(i, j)], if i == j { s.diagonal[i] } else { 0 });
            }
        }
        assert_eq!(s.u.determinant().abs(), 1);
        assert_eq!(s.v.determinant().abs(), 1);
    }

    #[test]
    fn kernel_of_scalar() {
        // 4 s = 0 in Q/Z
        let pts = kernel_mod_one(&IntMatrix::from_rows(&[vec![4]]));
        let mut labels: Vec<String> = pts.iter().map(TorsionPoint::label).collect();
        labels.sort();
        assert_eq!(labels, vec!["(0)", "(1/2)", "(1/4)", "(3/4)"]);
    }

    #[test]
    fn reduced_point_validation() {
        assert!(TorsionPoint::from_reduced(vec![1, 0], 2).is_ok());
        assert!(TorsionPoint::from_reduced(vec![2, 0], 4).is_err());
        assert!(TorsionPoint::from_reduced(vec![5], 4).is_err());
        assert_eq!(TorsionPoint::new(&[2, 6], 8).label(), "(1/4,3/4)");
    }

    #[test]
    fn finite_order_inverse_of_rotation() {
        let r = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        let (inv, order) = r.finite_order_inverse(100).unwrap();
        assert_eq!(order, 3);
        assert!(r.mul(&inv).is_identity());
    }

    #[test]
    fn integral_row_solve() {
        let b = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(b.solve_row_integral(&[2, -1]), Some(vec![1, 0]));
        assert_eq!(b.solve_row_integral(&[1, 0]), None);
    }
}
