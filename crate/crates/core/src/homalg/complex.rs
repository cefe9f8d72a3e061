//! Graded free modules with a differential, and their homology.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::homalg::matrix::Matrix;
use crate::homalg::ring::Ring;
use crate::homalg::snf::smith;

/// A finitely generated abelian group (or vector space) `R^free ⊕ ⨁ R/t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct GroupDescriptor {
  pub free_rank: usize,
  #[serde(serialize_with = "serialize_torsion")]
  pub torsion: Vec<BigInt>,
}

fn serialize_torsion<S: Serializer>(t: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
  use serde::ser::SerializeSeq;
  let mut seq = s.serialize_seq(Some(t.len()))?;
  for x in t {
    match x.to_u64() {
      Some(v) => seq.serialize_element(&v)?,
      None => seq.serialize_element(&x.to_string())?,
    }
  }
  seq.end()
}

impl GroupDescriptor {
  pub fn free(rank: usize) -> Self { GroupDescriptor { free_rank: rank, torsion: vec![] } }

  pub fn zero() -> Self { Self::default() }

  pub fn is_zero(&self) -> bool { self.free_rank == 0 && self.torsion.is_empty() }

  pub fn with_torsion(free_rank: usize, torsion: &[i64]) -> Self {
    GroupDescriptor { free_rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
  }
}

impl fmt::Display for GroupDescriptor {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.is_zero() {
      return write!(f, "0");
    }
    let mut parts = Vec::new();
    match self.free_rank {
      0 => {},
      1 => parts.push("R".to_string()),
      r => parts.push(format!("R^{r}")),
    }
    for t in &self.torsion {
      parts.push(format!("Z/{t}"));
    }
    write!(f, "{}", parts.join(" + "))
  }
}

/// Whether the differential lowers (chain) or raises (cochain) the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
  Chain,
  Cochain,
}

impl Direction {
  pub fn step(self) -> i32 {
    match self {
      Direction::Chain => -1,
      Direction::Cochain => 1,
    }
  }
}

/// A bounded complex of free modules. `differential(d)` maps degree `d` to
/// degree `d + step` and is stored as a `rank(d+step) x rank(d)` matrix.
#[derive(Debug, Clone)]
pub struct ChainComplex<R: Ring> {
  ring: R,
  direction: Direction,
  ranks: BTreeMap<i32, usize>,
  differentials: BTreeMap<i32, Matrix<R::Elem>>,
}

impl<R: Ring> ChainComplex<R> {
  pub fn new(ring: &R, direction: Direction) -> Self {
    ChainComplex { ring: ring.clone(), direction, ranks: BTreeMap::new(), differentials: BTreeMap::new() }
  }

  pub fn ring(&self) -> &R { &self.ring }

  pub fn direction(&self) -> Direction { self.direction }

  pub fn set_rank(&mut self, degree: i32, rank: usize) {
    if rank > 0 {
      self.ranks.insert(degree, rank);
    } else {
      self.ranks.remove(&degree);
    }
  }

  /// Installs the differential out of `degree`; shape must match the ranks.
  pub fn set_differential(&mut self, degree: i32, m: Matrix<R::Elem>) -> Result<()> {
    let target = degree + self.direction.step();
    if m.rows() != self.rank(target) || m.cols() != self.rank(degree) {
      return Err(Error::InvalidComplex(format!(
        "differential out of degree {degree} has shape {}x{}, expected {}x{}",
        m.rows(),
        m.cols(),
        self.rank(target),
        self.rank(degree)
      )));
    }
    if m.is_zero(&self.ring) {
      self.differentials.remove(&degree);
    } else {
      self.differentials.insert(degree, m);
    }
    Ok(())
  }

  pub fn rank(&self, degree: i32) -> usize { self.ranks.get(&degree).copied().unwrap_or(0) }

  /// Degrees carrying a nonzero module, ascending.
  pub fn degrees(&self) -> Vec<i32> { self.ranks.keys().copied().collect() }

  pub fn degree_range(&self) -> Option<(i32, i32)> {
    Some((*self.ranks.keys().next()?, *self.ranks.keys().next_back()?))
  }

  pub fn differential(&self, degree: i32) -> Matrix<R::Elem> {
    self
      .differentials
      .get(&degree)
      .cloned()
      .unwrap_or_else(|| Matrix::zeros(&self.ring, self.rank(degree + self.direction.step()), self.rank(degree)))
  }

  /// Checks `d ∘ d = 0` in every composable pair of degrees.
  pub fn check(&self) -> Result<()> {
    let step = self.direction.step();
    for (&deg, m) in &self.differentials {
      if let Some(next) = self.differentials.get(&(deg + step)) {
        if !next.mul(&self.ring, m).is_zero(&self.ring) {
          return Err(Error::InvalidComplex(format!("d∘d ≠ 0 starting in degree {deg}")));
        }
      }
    }
    Ok(())
  }

  /// Homology (or cohomology) in one degree.
  pub fn homology(&self, degree: i32) -> Result<GroupDescriptor> {
    self.check()?;
    let out_rank = smith(&self.ring, &self.differential(degree), false).rank();
    let incoming = smith(&self.ring, &self.differential(degree - self.direction.step()), false);
    Ok(self.group_from(degree, out_rank, &incoming.invariant_factors))
  }

  /// Homology in every degree that carries a module.
  pub fn homology_all(&self) -> Result<BTreeMap<i32, GroupDescriptor>> {
    self.check()?;
    let step = self.direction.step();
    let mut factors: BTreeMap<i32, Vec<R::Elem>> = BTreeMap::new();
    for (&deg, m) in &self.differentials {
      factors.insert(deg, smith(&self.ring, m, false).invariant_factors);
    }
    let mut out = BTreeMap::new();
    for &deg in self.ranks.keys() {
      let out_rank = factors.get(&deg).map_or(0, |f| f.len());
      let empty = Vec::new();
      let incoming = factors.get(&(deg - step)).unwrap_or(&empty);
      out.insert(deg, self.group_from(deg, out_rank, incoming));
    }
    Ok(out)
  }

  fn group_from(&self, degree: i32, out_rank: usize, incoming: &[R::Elem]) -> GroupDescriptor {
    let free_rank = self.rank(degree) - out_rank - incoming.len();
    let mut torsion: Vec<BigInt> = incoming
      .iter()
      .filter(|e| !self.ring.is_unit(e))
      .map(|e| self.ring.to_bigint(e).abs())
      .collect();
    torsion.sort();
    GroupDescriptor { free_rank, torsion }
  }

  /// Alternating sum of module ranks.
  pub fn euler_characteristic(&self) -> i64 {
    self.ranks.iter().map(|(&d, &r)| if d.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) }).sum()
  }

  pub fn total_rank(&self) -> usize { self.ranks.values().sum() }
}
