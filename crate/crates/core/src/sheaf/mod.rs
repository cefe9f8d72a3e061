//! Cellular sheaves and cosheaves of free modules on a simplicial poset.
//!
//! Values are free modules given by their rank. The map attached to a
//! covering pair `I <₁ J` is stored under the key `(I, J)` in both cases:
//! for a sheaf it is `A(I) -> A(J)` (a `rank J x rank I` matrix), for a
//! cosheaf it is `Â(J) -> Â(I)` (a `rank I x rank J` matrix).

mod classify;
mod structure;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::{ChainComplex, Direction, Matrix, Ring};
use crate::poset::{ElementId, SimplicialPoset};

pub use classify::{classify, ClassificationReport, LinkHomology, Witness};
pub use structure::{
  local_homology_ranks, relative_chain_complex, structure_sheaf, structure_sheaf_groups, structure_sheaves,
  LocalHomologyTable,
};
pub(crate) use structure::structure_sheaves_on;

macro_rules! diagram {
  ($name:ident, $doc:literal) => {
    #[doc = $doc]
    #[derive(Debug, Clone)]
    pub struct $name<R: Ring> {
      base: Arc<SimplicialPoset>,
      ring: R,
      ranks: Vec<usize>,
      maps: HashMap<(ElementId, ElementId), Matrix<R::Elem>>,
    }

    impl<R: Ring> $name<R> {
      /// All values zero.
      pub fn zero(base: &Arc<SimplicialPoset>, ring: &R) -> Self {
        $name { base: base.clone(), ring: ring.clone(), ranks: vec![0; base.len()], maps: HashMap::new() }
      }

      /// Values of the given ranks, all maps zero.
      pub fn with_ranks(base: &Arc<SimplicialPoset>, ring: &R, ranks: Vec<usize>) -> Result<Self> {
        if ranks.len() != base.len() {
          return Err(Error::InvalidSheaf(format!("{} ranks for {} elements", ranks.len(), base.len())));
        }
        Ok($name { base: base.clone(), ring: ring.clone(), ranks, maps: HashMap::new() })
      }

      pub fn base(&self) -> &Arc<SimplicialPoset> { &self.base }

      pub fn ring(&self) -> &R { &self.ring }

      pub fn rank(&self, i: ElementId) -> usize { self.ranks[i] }

      pub fn ranks(&self) -> &[usize] { &self.ranks }

      /// The value at `0̂` vanishes.
      pub fn is_truncated(&self) -> bool { self.ranks[self.base.bottom()] == 0 }

      /// Copy with the value at `0̂` removed.
      pub fn truncated(&self) -> Self {
        let mut out = self.clone();
        let b = self.base.bottom();
        out.ranks[b] = 0;
        out.maps.retain(|&(i, _), _| i != b);
        out
      }

      pub fn is_zero(&self) -> bool { self.ranks.iter().all(|&r| r == 0) }

      fn shape(&self, i: ElementId, j: ElementId) -> (usize, usize) { Self::orient(self.ranks[i], self.ranks[j]) }

      /// Map along the covering pair `i <₁ j` (zero when unset).
      pub fn map(&self, i: ElementId, j: ElementId) -> Matrix<R::Elem> {
        self.maps.get(&(i, j)).cloned().unwrap_or_else(|| {
          let (r, c) = self.shape(i, j);
          Matrix::zeros(&self.ring, r, c)
        })
      }

      /// Installs the map along the covering pair `i <₁ j`.
      pub fn set_map(&mut self, i: ElementId, j: ElementId, m: Matrix<R::Elem>) -> Result<()> {
        if !self.base.contains(j) || !self.base.faces(j).contains(&i) {
          return Err(Error::InvalidSheaf(format!("({i}, {j}) is not a covering pair")));
        }
        let (r, c) = self.shape(i, j);
        if (m.rows(), m.cols()) != (r, c) {
          return Err(Error::InvalidSheaf(format!(
            "map on ({i}, {j}) has shape {}x{}, expected {r}x{c}",
            m.rows(),
            m.cols()
          )));
        }
        self.maps.insert((i, j), m);
        Ok(())
      }

      /// Checks that both saturated chains of every length-two interval give the same composite.
      pub fn check_functoriality(&self) -> Result<()> {
        let s = &self.base;
        for k in 0..s.len() {
          for &a in s.faces(k) {
            for &i in s.faces(a) {
              for &b in s.faces(k) {
                if b <= a || !s.faces(b).contains(&i) {
                  continue;
                }
                if self.compose(i, a, k) != self.compose(i, b, k) {
                  return Err(Error::InvalidSheaf(format!("square [{i}, {k}] through {a} and {b} does not commute")));
                }
              }
            }
          }
        }
        Ok(())
      }

      /// Composite map for `i ≤ j` along some saturated chain.
      pub fn composite(&self, i: ElementId, j: ElementId) -> Result<Matrix<R::Elem>> {
        let s = &self.base;
        if !s.leq(i, j) {
          return Err(Error::InvalidInput(format!("{i} is not below {j}")));
        }
        if i == j {
          return Ok(Matrix::identity(&self.ring, self.ranks[i]));
        }
        let mid = s.faces(j).iter().copied().find(|&f| s.leq(i, f)).expect("boolean lower ideal");
        let head = self.composite(i, mid)?;
        Ok(Self::chain(&self.ring, &head, &self.map(mid, j)))
      }

      fn compose(&self, i: ElementId, mid: ElementId, k: ElementId) -> Matrix<R::Elem> {
        Self::chain(&self.ring, &self.map(i, mid), &self.map(mid, k))
      }
    }
  };
}

diagram!(CellularSheaf, "A covariant functor from the poset to free modules.");
diagram!(CellularCosheaf, "A contravariant functor from the poset to free modules.");

impl<R: Ring> CellularSheaf<R> {
  fn orient(lower: usize, upper: usize) -> (usize, usize) { (upper, lower) }

  /// `first` then `second` along `i ≤ mid ≤ k`.
  fn chain(ring: &R, first: &Matrix<R::Elem>, second: &Matrix<R::Elem>) -> Matrix<R::Elem> { second.mul(ring, first) }

  /// Constant sheaf of rank one; `include_min` also puts a copy at `0̂`.
  pub fn constant(base: &Arc<SimplicialPoset>, ring: &R, include_min: bool) -> Self {
    let mut ranks = vec![1; base.len()];
    if !include_min {
      ranks[base.bottom()] = 0;
    }
    let mut a = Self::with_ranks(base, ring, ranks).expect("matching length");
    for (i, j) in base.covers() {
      if a.ranks[i] > 0 {
        a.maps.insert((i, j), Matrix::identity(ring, 1));
      }
    }
    a
  }

  /// Cochain complex `C^i = ⊕_{dim I = i} A(I)` with `d = ∑ [I':I] A(I ≤ I')`.
  pub fn cochain_complex(&self) -> Result<ChainComplex<R>> {
    self.check_functoriality()?;
    let s = &self.base;
    let ring = &self.ring;
    let mut c = ChainComplex::new(ring, Direction::Cochain);
    let layout = Layout::new(s, &self.ranks);
    for (&d, &total) in &layout.totals {
      c.set_rank(d, total);
    }
    for &d in layout.totals.keys() {
      if !layout.totals.contains_key(&(d + 1)) {
        continue;
      }
      let mut m = Matrix::zeros(ring, layout.totals[&(d + 1)], layout.totals[&d]);
      for j in s.with_dim(d + 1) {
        for (i, sign) in s.face_signs(j) {
          if self.ranks[i] == 0 || self.ranks[j] == 0 {
            continue;
          }
          let block = signed(ring, &self.map(i, j), sign);
          m.put_block(layout.offset[j], layout.offset[i], &block);
        }
      }
      c.set_differential(d, m)?;
    }
    c.check().map_err(|e| Error::InvalidSheaf(format!("cochain complex: {e}")))?;
    Ok(c)
  }

  /// Componentwise tensor product with Kronecker-product restrictions.
  pub fn tensor(&self, other: &Self) -> Result<Self> {
    if !Arc::ptr_eq(&self.base, &other.base) && self.base.elements() != other.base.elements() {
      return Err(Error::InvalidInput("tensor product of sheaves on different posets".into()));
    }
    let ring = &self.ring;
    let ranks = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a * b).collect();
    let mut t = Self::with_ranks(&self.base, ring, ranks)?;
    for (i, j) in self.base.covers() {
      if t.ranks[i] > 0 && t.ranks[j] > 0 {
        t.maps.insert((i, j), self.map(i, j).kron(ring, &other.map(i, j)));
      }
    }
    Ok(t)
  }
}

impl<R: Ring> CellularCosheaf<R> {
  fn orient(lower: usize, upper: usize) -> (usize, usize) { (lower, upper) }

  /// `Â(k -> mid)` then `Â(mid -> i)`; arguments are given lower pair first.
  fn chain(ring: &R, lower: &Matrix<R::Elem>, upper: &Matrix<R::Elem>) -> Matrix<R::Elem> { lower.mul(ring, upper) }

  pub fn constant(base: &Arc<SimplicialPoset>, ring: &R, include_min: bool) -> Self {
    let mut ranks = vec![1; base.len()];
    if !include_min {
      ranks[base.bottom()] = 0;
    }
    let mut a = Self::with_ranks(base, ring, ranks).expect("matching length");
    for (i, j) in base.covers() {
      if a.ranks[i] > 0 {
        a.maps.insert((i, j), Matrix::identity(ring, 1));
      }
    }
    a
  }

  /// Chain complex `C_i = ⊕_{dim I = i} Â(I)` with `d = ∑ [I:I'] Â(I ≥ I')`.
  pub fn chain_complex(&self) -> Result<ChainComplex<R>> {
    self.check_functoriality()?;
    let s = &self.base;
    let ring = &self.ring;
    let mut c = ChainComplex::new(ring, Direction::Chain);
    let layout = Layout::new(s, &self.ranks);
    for (&d, &total) in &layout.totals {
      c.set_rank(d, total);
    }
    for &d in layout.totals.keys() {
      if !layout.totals.contains_key(&(d - 1)) {
        continue;
      }
      let mut m = Matrix::zeros(ring, layout.totals[&(d - 1)], layout.totals[&d]);
      for j in s.with_dim(d) {
        for (i, sign) in s.face_signs(j) {
          if self.ranks[i] == 0 || self.ranks[j] == 0 {
            continue;
          }
          let block = signed(ring, &self.map(i, j), sign);
          m.put_block(layout.offset[i], layout.offset[j], &block);
        }
      }
      c.set_differential(d, m)?;
    }
    c.check().map_err(|e| Error::InvalidSheaf(format!("chain complex: {e}")))?;
    Ok(c)
  }
}

fn signed<R: Ring>(ring: &R, m: &Matrix<R::Elem>, sign: i32) -> Matrix<R::Elem> {
  if sign < 0 {
    m.scale(ring, &ring.neg(&ring.one()))
  } else {
    m.clone()
  }
}

/// Offsets of each element's block inside the module of its dimension.
#[derive(Debug, Clone)]
pub struct Layout {
  pub totals: std::collections::BTreeMap<i32, usize>,
  pub offset: Vec<usize>,
}

impl Layout {
  pub fn new(s: &SimplicialPoset, ranks: &[usize]) -> Self {
    let mut totals = std::collections::BTreeMap::new();
    let mut offset = vec![0; s.len()];
    for (id, &r) in ranks.iter().enumerate() {
      let d = s.dim(id);
      let t: &mut usize = totals.entry(d).or_insert(0);
      offset[id] = *t;
      *t += r;
    }
    totals.retain(|_, t| *t > 0);
    Layout { totals, offset }
  }
}

/// `C^*(S; A)` for a sheaf.
pub fn build_cochain_complex<R: Ring>(a: &CellularSheaf<R>) -> Result<ChainComplex<R>> { a.cochain_complex() }

/// `C_*(S; Â)` for a cosheaf.
pub fn build_chain_complex<R: Ring>(a: &CellularCosheaf<R>) -> Result<ChainComplex<R>> { a.chain_complex() }

pub fn tensor_sheaves<R: Ring>(a: &CellularSheaf<R>, b: &CellularSheaf<R>) -> Result<CellularSheaf<R>> { a.tensor(b) }

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homalg::{GroupDescriptor, Integers, Rationals};

  fn triangle() -> Arc<SimplicialPoset> {
    Arc::new(SimplicialPoset::from_facets(&[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap())
  }

  #[test]
  fn constant_sheaf_cohomology_of_circle() {
    let s = triangle();
    let c = CellularSheaf::constant(&s, &Integers, false).cochain_complex().unwrap();
    assert_eq!(c.homology(0).unwrap(), GroupDescriptor::free(1));
    assert_eq!(c.homology(1).unwrap(), GroupDescriptor::free(1));
  }

  #[test]
  fn augmented_constant_sheaf_gives_reduced_cohomology() {
    let s = triangle();
    let c = CellularSheaf::constant(&s, &Rationals, true).cochain_complex().unwrap();
    assert_eq!(c.homology(-1).unwrap(), GroupDescriptor::zero());
    assert_eq!(c.homology(0).unwrap(), GroupDescriptor::zero());
    assert_eq!(c.homology(1).unwrap(), GroupDescriptor::free(1));
  }

  #[test]
  fn constant_cosheaf_homology_of_circle() {
    let s = triangle();
    let c = CellularCosheaf::constant(&s, &Integers, false).chain_complex().unwrap();
    assert_eq!(c.homology(0).unwrap(), GroupDescriptor::free(1));
    assert_eq!(c.homology(1).unwrap(), GroupDescriptor::free(1));
  }

  #[test]
  fn broken_square_is_rejected() {
    let s = Arc::new(SimplicialPoset::from_facets(&[vec![1, 2, 3]]).unwrap());
    let mut a = CellularSheaf::constant(&s, &Integers, false);
    let top = s.with_rank(3)[0];
    let f = s.faces(top)[0];
    a.set_map(f, top, Matrix::from_i64(&Integers, &[vec![2]])).unwrap();
    assert!(matches!(a.check_functoriality(), Err(Error::InvalidSheaf(_))));
    assert!(a.cochain_complex().is_err());
  }

  #[test]
  fn tensor_with_constant_keeps_ranks() {
    let s = triangle();
    let k = CellularSheaf::constant(&s, &Rationals, false);
    let mut a = CellularSheaf::with_ranks(&s, &Rationals, vec![0, 2, 2, 2, 2, 2, 2]).unwrap();
    for (i, j) in s.covers() {
      if i != 0 {
        a.set_map(i, j, Matrix::identity(&Rationals, 2)).unwrap();
      }
    }
    let t = a.tensor(&k).unwrap();
    assert_eq!(t.ranks(), a.ranks());
    let h = t.cochain_complex().unwrap().homology_all().unwrap();
    assert_eq!(h, a.cochain_complex().unwrap().homology_all().unwrap());
  }
}
