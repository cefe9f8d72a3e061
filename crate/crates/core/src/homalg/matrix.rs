//! Dense matrices over a [`Ring`] and the exact elimination routines built on
//! them: echelon forms (Hermite over Z, reduced row echelon over fields),
//! kernels, and quotient bases.

use std::fmt;

use crate::homalg::ring::Ring;

/// Row-major dense matrix. Arithmetic goes through a ring context.
#[derive(Clone, PartialEq)]
pub struct Matrix<E> {
  rows: usize,
  cols: usize,
  data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
    for i in 0..self.rows {
      writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
    }
    write!(f, "]")
  }
}

impl<E: Clone> Matrix<E> {
  pub fn filled(rows: usize, cols: usize, value: E) -> Self {
    Matrix { rows, cols, data: vec![value; rows * cols] }
  }

  pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
      for j in 0..cols {
        data.push(f(i, j));
      }
    }
    Matrix { rows, cols, data }
  }

  /// Builds a matrix from row vectors of equal length `cols`.
  pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
    let n = rows.len();
    let mut data = Vec::with_capacity(n * cols);
    for r in rows {
      assert_eq!(r.len(), cols, "ragged rows");
      data.extend(r);
    }
    Matrix { rows: n, cols, data }
  }

  /// Builds a matrix whose columns are the given vectors of length `rows`.
  pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
    let cols = columns.len();
    Matrix::from_fn(rows, cols, |i, j| columns[j][i].clone())
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn get(&self, i: usize, j: usize) -> &E { &self.data[i * self.cols + j] }

  pub fn set(&mut self, i: usize, j: usize, v: E) { self.data[i * self.cols + j] = v; }

  pub fn row(&self, i: usize) -> &[E] { &self.data[i * self.cols..(i + 1) * self.cols] }

  pub fn column(&self, j: usize) -> Vec<E> { (0..self.rows).map(|i| self.get(i, j).clone()).collect() }

  pub fn row_vectors(&self) -> Vec<Vec<E>> { (0..self.rows).map(|i| self.row(i).to_vec()).collect() }

  pub fn transpose(&self) -> Self { Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone()) }

  pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
    Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
  }

  pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for j in 0..self.cols {
      self.data.swap(a * self.cols + j, b * self.cols + j);
    }
  }

  pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for i in 0..self.rows {
      self.data.swap(i * self.cols + a, i * self.cols + b);
    }
  }

  /// Copies the sub-block with the given row and column index lists.
  pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
  }
}

impl<E: Clone> Matrix<E> {
  pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
    Matrix::filled(rows, cols, ring.zero())
  }

  pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
  }

  pub fn from_i64<R: Ring<Elem = E>>(ring: &R, rows: &[Vec<i64>]) -> Self {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| ring.from_i64(v)).collect()).collect())
  }

  pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool { self.data.iter().all(|e| ring.is_zero(e)) }

  pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
    assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
    let mut out = Matrix::zeros(ring, self.rows, rhs.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = self.get(i, k);
        if ring.is_zero(a) {
          continue;
        }
        for j in 0..rhs.cols {
          let b = rhs.get(k, j);
          if ring.is_zero(b) {
            continue;
          }
          let idx = i * out.cols + j;
          ring.add_mul_assign(&mut out.data[idx], a, b);
        }
      }
    }
    out
  }

  pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
    assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
    let mut out = vec![ring.zero(); self.rows];
    for (j, x) in v.iter().enumerate() {
      if ring.is_zero(x) {
        continue;
      }
      for (i, o) in out.iter_mut().enumerate() {
        let a = self.get(i, j);
        if !ring.is_zero(a) {
          ring.add_mul_assign(o, a, x);
        }
      }
    }
    out
  }

  pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self { self.map(|e| ring.mul(e, c)) }

  pub fn add<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
    Matrix {
      rows: self.rows,
      cols: self.cols,
      data: self.data.iter().zip(&rhs.data).map(|(a, b)| ring.add(a, b)).collect(),
    }
  }

  pub fn kron<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
    Matrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
      ring.mul(self.get(i / rhs.rows, j / rhs.cols), rhs.get(i % rhs.rows, j % rhs.cols))
    })
  }

  /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
  pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
    for i in 0..block.rows {
      for j in 0..block.cols {
        self.set(r0 + i, c0 + j, block.get(i, j).clone());
      }
    }
  }

  pub fn rank<R: Ring<Elem = E>>(&self, ring: &R) -> usize { echelon(ring, self.row_vectors(), self.cols).rank() }
}

fn axpy<R: Ring>(ring: &R, target: &mut [R::Elem], c: &R::Elem, source: &[R::Elem]) {
  // target -= c * source
  for (t, s) in target.iter_mut().zip(source) {
    if !ring.is_zero(s) {
      let prod = ring.mul(c, s);
      *t = ring.sub(t, &prod);
    }
  }
}

/// Row echelon basis of a row space. Over Z this is the Hermite normal form
/// (positive pivots, entries above a pivot reduced modulo it); over a field it
/// is the reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon<R: Ring> {
  ring: R,
  width: usize,
  rows: Vec<Vec<R::Elem>>,
  pivots: Vec<usize>,
}

pub fn echelon<R: Ring>(ring: &R, mut vectors: Vec<Vec<R::Elem>>, width: usize) -> Echelon<R> {
  vectors.retain(|v| v.iter().any(|e| !ring.is_zero(e)));
  let mut pivots = Vec::new();
  let mut t = 0;
  for c in 0..width {
    if t >= vectors.len() {
      break;
    }
    loop {
      // smallest nonzero entry in column c among rows t..
      let mut best: Option<usize> = None;
      for i in t..vectors.len() {
        if ring.is_zero(&vectors[i][c]) {
          continue;
        }
        best = match best {
          Some(b) if ring.cmp_size(&vectors[b][c], &vectors[i][c]).is_le() => Some(b),
          _ => Some(i),
        };
      }
      let Some(b) = best else { break };
      vectors.swap(t, b);
      let mut clean = true;
      let (head, tail) = vectors.split_at_mut(t + 1);
      let pivot_row = &head[t];
      for row in tail.iter_mut() {
        if ring.is_zero(&row[c]) {
          continue;
        }
        let (q, r) = ring.div_rem(&row[c], &pivot_row[c]);
        axpy(ring, row, &q, pivot_row);
        if !ring.is_zero(&r) {
          clean = false;
        }
      }
      if clean {
        break;
      }
    }
    if t < vectors.len() && !ring.is_zero(&vectors[t][c]) {
      let u = ring.normalizing_unit(&vectors[t][c]);
      for e in vectors[t].iter_mut() {
        *e = ring.mul(e, &u);
      }
      let (head, tail) = vectors.split_at_mut(t);
      let pivot_row = &tail[0];
      for row in head.iter_mut() {
        if ring.is_zero(&row[c]) {
          continue;
        }
        let (q, _) = ring.div_rem(&row[c], &pivot_row[c]);
        axpy(ring, row, &q, pivot_row);
      }
      pivots.push(c);
      t += 1;
    }
  }
  vectors.truncate(t);
  Echelon { ring: ring.clone(), width, rows: vectors, pivots }
}

impl<R: Ring> Echelon<R> {
  pub fn empty(ring: &R, width: usize) -> Self { Echelon { ring: ring.clone(), width, rows: vec![], pivots: vec![] } }

  pub fn rank(&self) -> usize { self.rows.len() }

  pub fn width(&self) -> usize { self.width }

  pub fn rows(&self) -> &[Vec<R::Elem>] { &self.rows }

  pub fn pivots(&self) -> &[usize] { &self.pivots }

  pub fn into_rows(self) -> Vec<Vec<R::Elem>> { self.rows }

  /// Coordinates of `v` in the echelon basis, if `v` lies in the row space
  /// (over Z: in the lattice spanned by the rows).
  pub fn coordinates(&self, v: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let ring = &self.ring;
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(self.rows.len());
    for (row, &p) in self.rows.iter().zip(&self.pivots) {
      let c = ring.div_exact(&rest[p], &row[p])?;
      if !ring.is_zero(&c) {
        axpy(ring, &mut rest, &c, row);
      }
      coords.push(c);
    }
    rest.iter().all(|e| ring.is_zero(e)).then_some(coords)
  }

  pub fn contains(&self, v: &[R::Elem]) -> bool { self.coordinates(v).is_some() }

  /// Field only: subtracts the projection onto the row space along pivot
  /// coordinates, leaving a vector with zeros in every pivot column.
  pub fn reduce(&self, v: &[R::Elem]) -> Vec<R::Elem> {
    let ring = &self.ring;
    let mut rest = v.to_vec();
    for (row, &p) in self.rows.iter().zip(&self.pivots) {
      if ring.is_zero(&rest[p]) {
        continue;
      }
      let (c, _) = ring.div_rem(&rest[p], &row[p]);
      axpy(ring, &mut rest, &c, row);
    }
    rest
  }

  /// Matrix whose columns are the echelon rows.
  pub fn basis_columns(&self) -> Matrix<R::Elem> { Matrix::from_columns(self.width, &self.rows) }
}

/// Kernel basis of `m` (field coefficients): vectors `x` with `m x = 0`.
pub fn kernel<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
  debug_assert!(ring.is_field());
  let ech = echelon(ring, m.row_vectors(), m.cols());
  let pivots = ech.pivots();
  let mut is_pivot = vec![false; m.cols()];
  for &p in pivots {
    is_pivot[p] = true;
  }
  let mut out = Vec::new();
  for f in (0..m.cols()).filter(|&c| !is_pivot[c]) {
    let mut x = vec![ring.zero(); m.cols()];
    x[f] = ring.one();
    for (row, &p) in ech.rows().iter().zip(pivots) {
      // pivots are normalized to one over a field
      x[p] = ring.neg(&row[f]);
    }
    out.push(x);
  }
  out
}

/// Basis of a quotient `numerator / denominator` of subspaces of `k^width`
/// (field coefficients). The representatives are reduced against the
/// denominator so that class coordinates are computed exactly.
#[derive(Debug, Clone)]
pub struct QuotientBasis<R: Ring> {
  den: Echelon<R>,
  reps: Echelon<R>,
}

impl<R: Ring> QuotientBasis<R> {
  pub fn new(ring: &R, numerator: &[Vec<R::Elem>], denominator: Vec<Vec<R::Elem>>, width: usize) -> Self {
    let den = echelon(ring, denominator, width);
    let residuals = numerator.iter().map(|v| den.reduce(v)).collect();
    let reps = echelon(ring, residuals, width);
    QuotientBasis { den, reps }
  }

  pub fn dim(&self) -> usize { self.reps.rank() }

  pub fn representatives(&self) -> &[Vec<R::Elem>] { self.reps.rows() }

  pub fn denominator(&self) -> &Echelon<R> { &self.den }

  /// Class coordinates of `v`; `None` if `v` is outside numerator + denominator.
  pub fn coordinates(&self, v: &[R::Elem]) -> Option<Vec<R::Elem>> { self.reps.coordinates(&self.den.reduce(v)) }
}

#[cfg(test)]
mod tests {
  use num_bigint::BigInt;

  use super::*;
  use crate::homalg::ring::{Integers, PrimeField, Rationals};

  #[test]
  fn hermite_form_of_small_lattice() {
    let z = Integers;
    let rows = Matrix::from_i64(&z, &[vec![2, 4], vec![6, 8]]).row_vectors();
    let ech = echelon(&z, rows, 2);
    let got: Vec<Vec<BigInt>> = ech.rows().to_vec();
    assert_eq!(got, vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(4)]]);
    assert!(ech.contains(&[BigInt::from(2), BigInt::from(4)]));
    assert!(!ech.contains(&[BigInt::from(1), BigInt::from(0)]));
  }

  #[test]
  fn kernel_over_rationals() {
    let q = Rationals;
    let m = Matrix::from_i64(&q, &[vec![1, 1, 0], vec![0, 1, 1]]);
    let ker = kernel(&q, &m);
    assert_eq!(ker.len(), 1);
    assert!(m.apply(&q, &ker[0]).iter().all(|e| q.is_zero(e)));
  }

  #[test]
  fn quotient_coordinates_mod_two() {
    let f = PrimeField::new(2).unwrap();
    let num = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let q = QuotientBasis::new(&f, &num, vec![vec![1, 1, 0]], 3);
    assert_eq!(q.dim(), 2);
    let a = q.coordinates(&[1, 0, 0]).unwrap();
    let b = q.coordinates(&[0, 1, 0]).unwrap();
    assert_eq!(a, b);
  }

  #[test]
  fn kronecker_shape() {
    let z = Integers;
    let a = Matrix::from_i64(&z, &[vec![1, 2]]);
    let b = Matrix::from_i64(&z, &[vec![1], vec![-1]]);
    let k = a.kron(&z, &b);
    assert_eq!((k.rows(), k.cols()), (2, 2));
    assert_eq!(k, Matrix::from_i64(&z, &[vec![1, 2], vec![-1, -2]]));
  }
}
