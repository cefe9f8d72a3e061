//! First-quadrant-style double complexes with commuting differentials.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::homalg::complex::{ChainComplex, Direction};
use crate::homalg::matrix::Matrix;
use crate::homalg::ring::Ring;
use crate::homalg::spectral::{spectral_sequence_of_filtration, FilteredComplex, SpectralSequencePages};

/// Bigraded module `X_{k,l}` with `d_H : X_{k,l} -> X_{k-1,l}` and
/// `d_V : X_{k,l} -> X_{k,l-1}` satisfying `d_H d_V = d_V d_H`.
#[derive(Debug, Clone)]
pub struct DoubleComplex<R: Ring> {
  ring: R,
  ranks: BTreeMap<(i32, i32), usize>,
  horizontal: BTreeMap<(i32, i32), Matrix<R::Elem>>,
  vertical: BTreeMap<(i32, i32), Matrix<R::Elem>>,
}

impl<R: Ring> DoubleComplex<R> {
  pub fn new(ring: &R) -> Self {
    DoubleComplex { ring: ring.clone(), ranks: BTreeMap::new(), horizontal: BTreeMap::new(), vertical: BTreeMap::new() }
  }

  pub fn ring(&self) -> &R { &self.ring }

  pub fn set_rank(&mut self, k: i32, l: i32, rank: usize) {
    if rank > 0 {
      self.ranks.insert((k, l), rank);
    } else {
      self.ranks.remove(&(k, l));
    }
  }

  pub fn rank(&self, k: i32, l: i32) -> usize { self.ranks.get(&(k, l)).copied().unwrap_or(0) }

  pub fn ranks(&self) -> &BTreeMap<(i32, i32), usize> { &self.ranks }

  fn check_shape(&self, m: &Matrix<R::Elem>, src: (i32, i32), tgt: (i32, i32)) -> Result<()> {
    if m.rows() != self.rank(tgt.0, tgt.1) || m.cols() != self.rank(src.0, src.1) {
      return Err(Error::InvalidComplex(format!(
        "map {src:?} -> {tgt:?} has shape {}x{}, expected {}x{}",
        m.rows(),
        m.cols(),
        self.rank(tgt.0, tgt.1),
        self.rank(src.0, src.1)
      )));
    }
    Ok(())
  }

  pub fn set_horizontal(&mut self, k: i32, l: i32, m: Matrix<R::Elem>) -> Result<()> {
    self.check_shape(&m, (k, l), (k - 1, l))?;
    self.horizontal.insert((k, l), m);
    Ok(())
  }

  pub fn set_vertical(&mut self, k: i32, l: i32, m: Matrix<R::Elem>) -> Result<()> {
    self.check_shape(&m, (k, l), (k, l - 1))?;
    self.vertical.insert((k, l), m);
    Ok(())
  }

  pub fn horizontal(&self, k: i32, l: i32) -> Matrix<R::Elem> {
    self.horizontal.get(&(k, l)).cloned().unwrap_or_else(|| Matrix::zeros(&self.ring, self.rank(k - 1, l), self.rank(k, l)))
  }

  pub fn vertical(&self, k: i32, l: i32) -> Matrix<R::Elem> {
    self.vertical.get(&(k, l)).cloned().unwrap_or_else(|| Matrix::zeros(&self.ring, self.rank(k, l - 1), self.rank(k, l)))
  }

  /// Checks `d_H² = 0`, `d_V² = 0` and `d_H d_V = d_V d_H`.
  pub fn check(&self) -> Result<()> {
    let ring = &self.ring;
    for &(k, l) in self.ranks.keys() {
      if !self.horizontal(k - 1, l).mul(ring, &self.horizontal(k, l)).is_zero(ring) {
        return Err(Error::InvalidComplex(format!("d_H² ≠ 0 at ({k},{l})")));
      }
      if !self.vertical(k, l - 1).mul(ring, &self.vertical(k, l)).is_zero(ring) {
        return Err(Error::InvalidComplex(format!("d_V² ≠ 0 at ({k},{l})")));
      }
      let hv = self.horizontal(k, l - 1).mul(ring, &self.vertical(k, l));
      let vh = self.vertical(k - 1, l).mul(ring, &self.horizontal(k, l));
      if hv != vh {
        return Err(Error::InvalidComplex(format!("d_H and d_V do not commute at ({k},{l})")));
      }
    }
    Ok(())
  }

  /// Blocks `(k, l)` of total degree `m`, ordered by `k`, with their offsets.
  fn blocks(&self, m: i32) -> Vec<((i32, i32), usize)> {
    let mut offset = 0;
    let mut out = Vec::new();
    for (&(k, l), &r) in &self.ranks {
      if k + l == m {
        out.push(((k, l), offset));
        offset += r;
      }
    }
    out
  }

  /// Total complex with `d = d_H + (-1)^k d_V` on `X_{k,l}`.
  pub fn totalize(&self) -> Result<ChainComplex<R>> {
    Ok(self.totalize_with_levels()?.0)
  }

  #[allow(clippy::type_complexity)]
  fn totalize_with_levels(&self) -> Result<(ChainComplex<R>, BTreeMap<i32, Vec<(i32, i32)>>)> {
    self.check()?;
    let ring = &self.ring;
    let mut total = ChainComplex::new(ring, Direction::Chain);
    let mut bigrades: BTreeMap<i32, Vec<(i32, i32)>> = BTreeMap::new();
    for (&(k, l), &r) in &self.ranks {
      let e = bigrades.entry(k + l).or_default();
      e.extend(std::iter::repeat((k, l)).take(r));
    }
    for (&m, v) in &bigrades {
      total.set_rank(m, v.len());
    }
    let degrees: Vec<i32> = bigrades.keys().copied().collect();
    for m in degrees {
      let src = self.blocks(m);
      let tgt = self.blocks(m - 1);
      if tgt.is_empty() {
        continue;
      }
      let mut d = Matrix::zeros(ring, total.rank(m - 1), total.rank(m));
      let offset_of = |key: (i32, i32)| tgt.iter().find(|(b, _)| *b == key).map(|(_, o)| *o);
      for &((k, l), c0) in &src {
        if let Some(r0) = offset_of((k - 1, l)) {
          d.put_block(r0, c0, &self.horizontal(k, l));
        }
        if let Some(r0) = offset_of((k, l - 1)) {
          let v = self.vertical(k, l);
          let v = if k.rem_euclid(2) == 1 { v.scale(ring, &ring.neg(&ring.one())) } else { v };
          d.put_block(r0, c0, &v);
        }
      }
      total.set_differential(m, d)?;
    }
    total.check()?;
    Ok((total, bigrades))
  }
}

/// The total complex and the two spectral sequences of a double complex.
///
/// In `vertical` the filtration is by `k` (columns), so `E¹` is vertical
/// homology and page coordinates are `(k, l)`. In `horizontal` the filtration
/// is by `l`, so `E¹` is horizontal homology and page coordinates are `(l, k)`.
#[derive(Debug, Clone)]
pub struct DoubleComplexPages<R: Ring> {
  pub total: ChainComplex<R>,
  pub vertical: SpectralSequencePages<R>,
  pub horizontal: SpectralSequencePages<R>,
}

pub fn double_complex_spectral_sequences<R: Ring>(x: &DoubleComplex<R>) -> Result<DoubleComplexPages<R>> {
  let (total, bigrades) = x.totalize_with_levels()?;
  let by = |pick: fn((i32, i32)) -> i32| -> BTreeMap<i32, Vec<i32>> {
    bigrades.iter().map(|(&m, v)| (m, v.iter().map(|&b| pick(b)).collect())).collect()
  };
  let vertical = spectral_sequence_of_filtration(&FilteredComplex::new(total.clone(), by(|(k, _)| k))?)?;
  let horizontal = spectral_sequence_of_filtration(&FilteredComplex::new(total.clone(), by(|(_, l)| l))?)?;
  Ok(DoubleComplexPages { total, vertical, horizontal })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homalg::ring::{Integers, Rationals};

  /// Tensor square of the interval chain complex `k^2 <- k`.
  fn square(ring: &Rationals) -> DoubleComplex<Rationals> {
    let mut x = DoubleComplex::new(ring);
    let d = Matrix::from_i64(ring, &[vec![-1], vec![1]]);
    for k in 0..2 {
      for l in 0..2 {
        let rk = if k == 0 { 2 } else { 1 };
        let rl = if l == 0 { 2 } else { 1 };
        x.set_rank(k, l, rk * rl);
      }
    }
    let id = |n| Matrix::identity(ring, n);
    x.set_horizontal(1, 0, d.kron(ring, &id(2))).unwrap();
    x.set_horizontal(1, 1, d.kron(ring, &id(1))).unwrap();
    x.set_vertical(0, 1, id(2).kron(ring, &d)).unwrap();
    x.set_vertical(1, 1, id(1).kron(ring, &d)).unwrap();
    x
  }

  #[test]
  fn square_of_interval_is_contractible() {
    let q = Rationals;
    let pages = double_complex_spectral_sequences(&square(&q)).unwrap();
    assert_eq!(pages.total.homology(0).unwrap().free_rank, 1);
    assert_eq!(pages.total.homology(1).unwrap().free_rank, 0);
    assert_eq!(pages.vertical.infinity_totals(), BTreeMap::from([(0, 1)]));
    assert_eq!(pages.horizontal.infinity_totals(), BTreeMap::from([(0, 1)]));
    let e2 = pages.vertical.page(2).unwrap();
    assert_eq!(e2.ranks, BTreeMap::from([((0, 0), 1)]));
  }

  #[test]
  fn single_column_collapses_to_column_homology() {
    let q = Rationals;
    let mut x = DoubleComplex::new(&q);
    x.set_rank(3, 0, 2);
    x.set_rank(3, 1, 1);
    x.set_vertical(3, 1, Matrix::from_i64(&q, &[vec![1], vec![1]])).unwrap();
    let pages = double_complex_spectral_sequences(&x).unwrap();
    assert_eq!(pages.vertical.e_infinity(), &BTreeMap::from([((3, 0), 1)]));
    assert_eq!(pages.horizontal.e_infinity(), &BTreeMap::from([((0, 3), 1)]));
    assert_eq!(pages.vertical.collapse_page(), 1);
  }

  #[test]
  fn non_commuting_differentials_are_rejected() {
    let z = Integers;
    let mut x = DoubleComplex::new(&z);
    for (k, l) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
      x.set_rank(k, l, 1);
    }
    let one = Matrix::from_i64(&z, &[vec![1]]);
    x.set_horizontal(1, 0, one.clone()).unwrap();
    x.set_horizontal(1, 1, one.clone()).unwrap();
    x.set_vertical(0, 1, one.clone()).unwrap();
    x.set_vertical(1, 1, Matrix::from_i64(&z, &[vec![2]])).unwrap();
    assert!(matches!(x.totalize(), Err(Error::InvalidComplex(_))));
  }
}
