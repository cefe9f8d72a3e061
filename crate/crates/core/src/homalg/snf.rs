//! Smith normal form over a Euclidean ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::homalg::matrix::Matrix;
use crate::homalg::ring::{CoefficientRing, Integers, Ring};

/// Result of a Smith reduction `U * M * V = D`.
#[derive(Debug, Clone)]
pub struct Smith<R: Ring> {
  /// Nonzero diagonal entries `d_1 | d_2 | ...`, normalized.
  pub invariant_factors: Vec<R::Elem>,
  pub d: Matrix<R::Elem>,
  pub u: Option<Matrix<R::Elem>>,
  pub v: Option<Matrix<R::Elem>>,
}

impl<R: Ring> Smith<R> {
  pub fn rank(&self) -> usize { self.invariant_factors.len() }
}

struct Work<'a, R: Ring> {
  ring: &'a R,
  a: Matrix<R::Elem>,
  u: Option<Matrix<R::Elem>>,
  v: Option<Matrix<R::Elem>>,
}

impl<R: Ring> Work<'_, R> {
  fn find_smallest(&self, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..self.a.rows() {
      for j in t..self.a.cols() {
        let e = self.a.get(i, j);
        if self.ring.is_zero(e) {
          continue;
        }
        match best {
          Some((bi, bj)) if self.ring.cmp_size(self.a.get(bi, bj), e).is_le() => {},
          _ => best = Some((i, j)),
        }
      }
    }
    best
  }

  fn swap_rows(&mut self, i: usize, j: usize) {
    self.a.swap_rows(i, j);
    if let Some(u) = self.u.as_mut() {
      u.swap_rows(i, j);
    }
  }

  fn swap_cols(&mut self, i: usize, j: usize) {
    self.a.swap_cols(i, j);
    if let Some(v) = self.v.as_mut() {
      v.swap_cols(i, j);
    }
  }

  /// row_i -= q * row_t
  fn row_sub(&mut self, i: usize, t: usize, q: &R::Elem) {
    let ring = self.ring;
    for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
      for j in 0..m.cols() {
        let s = m.get(t, j).clone();
        if ring.is_zero(&s) {
          continue;
        }
        let val = ring.sub(m.get(i, j), &ring.mul(q, &s));
        m.set(i, j, val);
      }
    }
  }

  /// col_j -= q * col_t
  fn col_sub(&mut self, j: usize, t: usize, q: &R::Elem) {
    let ring = self.ring;
    for m in std::iter::once(&mut self.a).chain(self.v.as_mut()) {
      for i in 0..m.rows() {
        let s = m.get(i, t).clone();
        if ring.is_zero(&s) {
          continue;
        }
        let val = ring.sub(m.get(i, j), &ring.mul(q, &s));
        m.set(i, j, val);
      }
    }
  }

  fn scale_row(&mut self, t: usize, c: &R::Elem) {
    let ring = self.ring;
    for m in std::iter::once(&mut self.a).chain(self.u.as_mut()) {
      for j in 0..m.cols() {
        let val = ring.mul(m.get(t, j), c);
        m.set(t, j, val);
      }
    }
  }

  /// Row Hermite form: upper echelon, entries above each pivot reduced modulo it.
  fn hermite_rows(&mut self) {
    let ring = self.ring;
    let mut row = 0;
    for c in 0..self.a.cols() {
      if row == self.a.rows() {
        break;
      }
      loop {
        let mut best: Option<usize> = None;
        for i in row..self.a.rows() {
          let e = self.a.get(i, c);
          if !ring.is_zero(e) && best.is_none_or(|b| ring.cmp_size(e, self.a.get(b, c)).is_lt()) {
            best = Some(i);
          }
        }
        let Some(b) = best else { break };
        self.swap_rows(row, b);
        let mut clear = true;
        for i in row + 1..self.a.rows() {
          if ring.is_zero(self.a.get(i, c)) {
            continue;
          }
          let (q, r) = ring.div_rem(self.a.get(i, c), self.a.get(row, c));
          self.row_sub(i, row, &q);
          clear &= ring.is_zero(&r);
        }
        if clear {
          break;
        }
      }
      if ring.is_zero(self.a.get(row, c)) {
        continue;
      }
      let unit = ring.normalizing_unit(self.a.get(row, c));
      self.scale_row(row, &unit);
      for k in 0..row {
        let (q, _) = ring.div_rem(self.a.get(k, c), self.a.get(row, c));
        if !ring.is_zero(&q) {
          self.row_sub(k, row, &q);
        }
      }
      row += 1;
    }
  }

  fn transposed(self) -> Self {
    Work { ring: self.ring, a: self.a.transpose(), u: self.v.map(|v| v.transpose()), v: self.u.map(|u| u.transpose()) }
  }

  /// At most one nonzero entry in every row and column.
  fn is_monomial(&self) -> bool {
    let ring = self.ring;
    let row_ok = (0..self.a.rows()).all(|i| (0..self.a.cols()).filter(|&j| !ring.is_zero(self.a.get(i, j))).count() <= 1);
    row_ok && (0..self.a.cols()).all(|j| (0..self.a.rows()).filter(|&i| !ring.is_zero(self.a.get(i, j))).count() <= 1)
  }

  /// Alternates row and column Hermite forms until the matrix is monomial. Reducing above each
  /// pivot keeps entries bounded, which the plain pivoting loop does not on dense input.
  fn alternate_hermite(mut self) -> Self {
    loop {
      self.hermite_rows();
      if self.is_monomial() {
        return self;
      }
      let mut t = self.transposed();
      t.hermite_rows();
      self = t.transposed();
      if self.is_monomial() {
        return self;
      }
    }
  }

  fn run(&mut self) {
    let ring = self.ring;
    let k = self.a.rows().min(self.a.cols());
    let modular = self.u.is_none() && self.v.is_none() && ring.kind() == CoefficientRing::Integers;
    for t in 0..k {
      let Some((pi, pj)) = self.find_smallest(t) else { break };
      if modular && !ring.is_unit(self.a.get(pi, pj)) {
        self.finish_modular(t);
        return;
      }
      self.swap_rows(t, pi);
      self.swap_cols(t, pj);
      loop {
        let mut changed = false;
        for i in t + 1..self.a.rows() {
          if ring.is_zero(self.a.get(i, t)) {
            continue;
          }
          let (q, r) = ring.div_rem(self.a.get(i, t), self.a.get(t, t));
          self.row_sub(i, t, &q);
          if !ring.is_zero(&r) {
            self.swap_rows(i, t);
            changed = true;
          }
        }
        for j in t + 1..self.a.cols() {
          if ring.is_zero(self.a.get(t, j)) {
            continue;
          }
          let (q, r) = ring.div_rem(self.a.get(t, j), self.a.get(t, t));
          self.col_sub(j, t, &q);
          if !ring.is_zero(&r) {
            self.swap_cols(j, t);
            changed = true;
          }
        }
        if changed {
          continue;
        }
        // row and column t are clear; enforce divisibility of the rest
        let pivot = self.a.get(t, t).clone();
        let offender = (t + 1..self.a.rows()).find(|&i| {
          (t + 1..self.a.cols()).any(|j| ring.div_exact(self.a.get(i, j), &pivot).is_none())
        });
        match offender {
          Some(i) => {
            let minus_one = ring.neg(&ring.one());
            self.row_sub(t, i, &minus_one);
          },
          None => break,
        }
      }
      let unit = ring.normalizing_unit(self.a.get(t, t));
      self.scale_row(t, &unit);
    }
  }
}

impl<R: Ring> Work<'_, R> {
  /// Replaces the trailing block from `t` on by its diagonal form, computed modulo a nonzero
  /// maximal minor so that entries stay bounded.
  fn finish_modular(&mut self, t: usize) {
    let ring = self.ring;
    let (rows, cols) = (self.a.rows() - t, self.a.cols() - t);
    let block = Matrix::from_fn(rows, cols, |i, j| ring.to_bigint(self.a.get(t + i, t + j)));
    let factors = invariant_factors_modular(&block);
    for i in 0..rows {
      for j in 0..cols {
        let val = if i == j && i < factors.len() { ring.from_bigint(&factors[i]) } else { ring.zero() };
        self.a.set(t + i, t + j, val);
      }
    }
  }
}

/// Rank and `|det|` of some nonsingular maximal minor, by fraction-free elimination.
fn bareiss_rank(m: &Matrix<BigInt>) -> (usize, BigInt) {
  let mut a = m.clone();
  let mut prev = BigInt::one();
  let mut k = 0;
  while k < a.rows().min(a.cols()) {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
      for j in k..a.cols() {
        let e = a.get(i, j);
        if !e.is_zero() && best.is_none_or(|(bi, bj)| e.magnitude() < a.get(bi, bj).magnitude()) {
          best = Some((i, j));
        }
      }
    }
    let Some((pi, pj)) = best else { break };
    a.swap_rows(k, pi);
    a.swap_cols(k, pj);
    for i in k + 1..a.rows() {
      for j in k + 1..a.cols() {
        let val = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
        a.set(i, j, val);
      }
      a.set(i, k, BigInt::zero());
    }
    prev = a.get(k, k).clone();
    k += 1;
  }
  (k, prev.abs())
}

/// Nonzero invariant factors of an integer matrix.
///
/// Every factor divides the determinant `d` of a nonsingular maximal minor, and the diagonal
/// form over `Z/dZ` determines `gcd(factor, d)`, so elimination can reduce entries modulo `d`.
fn invariant_factors_modular(m: &Matrix<BigInt>) -> Vec<BigInt> {
  let (rank, d) = bareiss_rank(m);
  if rank == 0 {
    return Vec::new();
  }
  if d.is_one() {
    return vec![BigInt::one(); rank];
  }
  let half = &d >> 1u32;
  let reduce = |x: BigInt| {
    let r = x.mod_floor(&d);
    if r > half { r - &d } else { r }
  };
  let mut a = m.map(|e| reduce(e.clone()));
  let mut out = Vec::with_capacity(rank);
  for t in 0..rank {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
      for j in t..a.cols() {
        let e = a.get(i, j);
        if !e.is_zero() && best.is_none_or(|(bi, bj)| e.magnitude() < a.get(bi, bj).magnitude()) {
          best = Some((i, j));
        }
      }
    }
    let Some((pi, pj)) = best else {
      out.extend(std::iter::repeat_n(d.clone(), rank - t));
      break;
    };
    a.swap_rows(t, pi);
    a.swap_cols(t, pj);
    loop {
      let mut changed = false;
      for i in t + 1..a.rows() {
        if a.get(i, t).is_zero() {
          continue;
        }
        let q = a.get(i, t).div_floor(a.get(t, t));
        for j in t..a.cols() {
          if !a.get(t, j).is_zero() {
            let val = reduce(a.get(i, j) - &q * a.get(t, j));
            a.set(i, j, val);
          }
        }
        if !a.get(i, t).is_zero() {
          a.swap_rows(i, t);
          changed = true;
        }
      }
      for j in t + 1..a.cols() {
        if a.get(t, j).is_zero() {
          continue;
        }
        let q = a.get(t, j).div_floor(a.get(t, t));
        for i in t..a.rows() {
          if !a.get(i, t).is_zero() {
            let val = reduce(a.get(i, j) - &q * a.get(i, t));
            a.set(i, j, val);
          }
        }
        if !a.get(t, j).is_zero() {
          a.swap_cols(j, t);
          changed = true;
        }
      }
      if changed {
        continue;
      }
      let pivot = a.get(t, t).clone();
      let offender =
        (t + 1..a.rows()).find(|&i| (t + 1..a.cols()).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
      match offender {
        Some(i) => {
          for j in t..a.cols() {
            let val = reduce(a.get(t, j) + a.get(i, j));
            a.set(t, j, val);
          }
        },
        None => break,
      }
    }
    out.push(a.get(t, t).gcd(&d));
  }
  out
}

type SparseRow<E> = Vec<(usize, E)>;

/// `a*x + b*y` on sparse rows, dropping zeros.
fn combine<E: Clone>(
  x: &SparseRow<E>,
  y: &SparseRow<E>,
  mut f: impl FnMut(Option<&E>, Option<&E>) -> Option<E>,
) -> SparseRow<E> {
  let (mut i, mut j) = (0, 0);
  let mut out = Vec::with_capacity(x.len().max(y.len()));
  while i < x.len() || j < y.len() {
    let (col, val) = match (x.get(i), y.get(j)) {
      (Some(a), Some(b)) if a.0 == b.0 => {
        i += 1;
        j += 1;
        (a.0, f(Some(&a.1), Some(&b.1)))
      },
      (Some(a), b) if b.is_none_or(|b| a.0 < b.0) => {
        i += 1;
        (a.0, f(Some(&a.1), None))
      },
      (_, Some(b)) => {
        j += 1;
        (b.0, f(None, Some(&b.1)))
      },
      _ => unreachable!(),
    };
    if let Some(v) = val {
      out.push((col, v));
    }
  }
  out
}

/// Rank over a field by inserting rows one at a time into a sparse echelon basis. Integral
/// rational input is eliminated fraction-free with content removal.
fn field_rank<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> usize {
  if ring.kind() == CoefficientRing::Rationals {
    let integral = m.map(|e| ring.to_bigint(e));
    if integral.map(|e| ring.from_bigint(e)) == *m {
      return integral_rank(&integral);
    }
  }
  let mut pivots: std::collections::HashMap<usize, SparseRow<R::Elem>> = Default::default();
  for i in 0..m.rows() {
    let mut r: SparseRow<R::Elem> =
      (0..m.cols()).filter(|&j| !ring.is_zero(m.get(i, j))).map(|j| (j, m.get(i, j).clone())).collect();
    while let Some((c, lead)) = r.first().cloned() {
      match pivots.get(&c) {
        Some(p) => {
          r = combine(&r, p, |a, b| {
            let v = match (a, b) {
              (Some(a), Some(b)) => ring.sub(a, &ring.mul(&lead, b)),
              (Some(a), None) => a.clone(),
              (None, Some(b)) => ring.neg(&ring.mul(&lead, b)),
              (None, None) => ring.zero(),
            };
            (!ring.is_zero(&v)).then_some(v)
          });
        },
        None => {
          let inv = ring.inverse(&lead).expect("nonzero field element");
          pivots.insert(c, r.into_iter().map(|(j, e)| (j, ring.mul(&e, &inv))).collect());
          break;
        },
      }
    }
  }
  pivots.len()
}

fn integral_rank(m: &Matrix<BigInt>) -> usize {
  let mut pivots: std::collections::HashMap<usize, SparseRow<BigInt>> = Default::default();
  for i in 0..m.rows() {
    let mut r: SparseRow<BigInt> = (0..m.cols()).filter(|&j| !m.get(i, j).is_zero()).map(|j| (j, m.get(i, j).clone())).collect();
    while let Some((c, lead)) = r.first().cloned() {
      match pivots.get(&c) {
        Some(p) => {
          let g = lead.gcd(&p[0].1);
          let (a, b) = (&p[0].1 / &g, &lead / &g);
          r = combine(&r, p, |x, y| {
            let v = match (x, y) {
              (Some(x), Some(y)) => &a * x - &b * y,
              (Some(x), None) => &a * x,
              (None, Some(y)) => -(&b * y),
              (None, None) => BigInt::zero(),
            };
            (!v.is_zero()).then_some(v)
          });
          let content = r.iter().fold(BigInt::zero(), |acc, (_, e)| acc.gcd(e));
          if !content.is_zero() && !content.is_one() {
            for (_, e) in r.iter_mut() {
              *e /= &content;
            }
          }
        },
        None => {
          pivots.insert(c, r);
          break;
        },
      }
    }
  }
  pivots.len()
}

/// Smith normal form over any ring in this crate; `track` also records `U`, `V`.
pub fn smith<R: Ring>(ring: &R, m: &Matrix<R::Elem>, track: bool) -> Smith<R> {
  let mut w = Work {
    ring,
    a: m.clone(),
    u: track.then(|| Matrix::identity(ring, m.rows())),
    v: track.then(|| Matrix::identity(ring, m.cols())),
  };
  if track && !ring.is_field() {
    w = w.alternate_hermite();
  }
  if !track && ring.is_field() {
    let rank = field_rank(ring, m);
    w.a = Matrix::zeros(ring, m.rows(), m.cols());
    for i in 0..rank {
      w.a.set(i, i, ring.one());
    }
    return Smith { invariant_factors: vec![ring.one(); rank], d: w.a, u: None, v: None };
  }
  w.run();
  let k = w.a.rows().min(w.a.cols());
  let invariant_factors = (0..k).map(|i| w.a.get(i, i).clone()).take_while(|e| !ring.is_zero(e)).collect();
  Smith { invariant_factors, d: w.a, u: w.u, v: w.v }
}

/// Integer Smith normal form `(U, D, V)` with `U * M * V = D`, `U` and `V` unimodular.
pub fn smith_normal_form(m: &Matrix<BigInt>) -> (Matrix<BigInt>, Matrix<BigInt>, Matrix<BigInt>) {
  let s = smith(&Integers, m, true);
  (s.u.expect("tracked"), s.d, s.v.expect("tracked"))
}

/// Determinant by fraction-free elimination (used to check unimodularity).
pub fn determinant(m: &Matrix<BigInt>) -> BigInt {
  assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
  let n = m.rows();
  if n == 0 {
    return BigInt::from(1);
  }
  let mut a = m.clone();
  let mut sign = BigInt::from(1);
  let mut prev = BigInt::from(1);
  for k in 0..n {
    if a.get(k, k) == &BigInt::from(0) {
      let Some(r) = (k + 1..n).find(|&r| a.get(r, k) != &BigInt::from(0)) else { return BigInt::from(0) };
      a.swap_rows(k, r);
      sign = -sign;
    }
    for i in k + 1..n {
      for j in k + 1..n {
        let val = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
        a.set(i, j, val);
      }
    }
    prev = a.get(k, k).clone();
  }
  sign * a.get(n - 1, n - 1).clone()
}

#[cfg(test)]
mod tests {
  use super::*;

  fn z(rows: &[Vec<i64>]) -> Matrix<BigInt> { Matrix::from_i64(&Integers, rows) }

  #[test]
  fn zero_matrix_keeps_identity_transforms() {
    let m = z(&[vec![0, 0], vec![0, 0]]);
    let (u, d, v) = smith_normal_form(&m);
    assert_eq!(d, m);
    assert_eq!(u, Matrix::identity(&Integers, 2));
    assert_eq!(v, Matrix::identity(&Integers, 2));
  }

  #[test]
  fn identity_is_its_own_form() {
    let m = Matrix::identity(&Integers, 3);
    let (_, d, _) = smith_normal_form(&m);
    assert_eq!(d, m);
  }

  #[test]
  fn two_by_two_example() {
    let m = z(&[vec![2, 4], vec![6, 8]]);
    let (u, d, v) = smith_normal_form(&m);
    assert_eq!(d, z(&[vec![2, 0], vec![0, 4]]));
    assert_eq!(u.mul(&Integers, &m).mul(&Integers, &v), d);
    assert_eq!(determinant(&u).magnitude(), &1u32.into());
    assert_eq!(determinant(&v).magnitude(), &1u32.into());
  }

  #[test]
  fn modular_tail_agrees_with_tracked_reduction() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
      let (r, c) = (rng.gen_range(1..8), rng.gen_range(1..8));
      let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| 2 * rng.gen_range(-4..=4)).collect()).collect();
      let m = z(&rows);
      assert_eq!(smith(&Integers, &m, false).invariant_factors, smith(&Integers, &m, true).invariant_factors, "{rows:?}");
    }
    let m = z(&[vec![2, 0, 0], vec![0, 6, 0], vec![0, 0, 0]]);
    assert_eq!(smith(&Integers, &m, false).invariant_factors, vec![BigInt::from(2), BigInt::from(6)]);
  }

  #[test]
  fn determinant_small() {
    assert_eq!(determinant(&z(&[vec![2, 1], vec![7, 4]])), BigInt::from(1));
    assert_eq!(determinant(&z(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]])), BigInt::from(-2));
  }
}
