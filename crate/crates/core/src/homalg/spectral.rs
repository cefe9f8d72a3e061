//! Spectral sequence of a filtered chain complex over a field.
//!
//! Pages are computed from the classical description
//!
//! ```text
//! Z^r_p = { x ∈ F_p : ∂x ∈ F_{p-r} }
//! E^r_p = Z^r_p / (Z^{r-1}_{p-1} + ∂ Z^{r-1}_{p+r-1})
//! ```
//!
//! with explicit representative cycles, so every differential `d^r` is
//! available as a matrix in the chosen bases.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::homalg::complex::{ChainComplex, Direction};
use crate::homalg::matrix::{kernel, Matrix, QuotientBasis};
use crate::homalg::ring::Ring;

/// A chain complex with a filtration level on every basis element.
#[derive(Debug, Clone)]
pub struct FilteredComplex<R: Ring> {
  complex: ChainComplex<R>,
  levels: BTreeMap<i32, Vec<i32>>,
}

impl<R: Ring> FilteredComplex<R> {
  /// `levels[d][i]` is the filtration index of the `i`-th basis element in degree `d`.
  pub fn new(complex: ChainComplex<R>, levels: BTreeMap<i32, Vec<i32>>) -> Result<Self> {
    if complex.direction() != Direction::Chain {
      return Err(Error::InvalidComplex("filtered complexes must be chain complexes".into()));
    }
    for d in complex.degrees() {
      let got = levels.get(&d).map_or(0, |l| l.len());
      if got != complex.rank(d) {
        return Err(Error::InvalidComplex(format!("degree {d}: {got} levels for {} basis elements", complex.rank(d))));
      }
    }
    let ring = complex.ring().clone();
    let empty = Vec::new();
    for d in complex.degrees() {
      let m = complex.differential(d);
      let src = &levels[&d];
      let tgt = levels.get(&(d - 1)).unwrap_or(&empty);
      for i in 0..m.rows() {
        for j in 0..m.cols() {
          if !ring.is_zero(m.get(i, j)) && tgt[i] > src[j] {
            return Err(Error::InvalidComplex(format!("differential raises filtration in degree {d}")));
          }
        }
      }
    }
    complex.check()?;
    Ok(FilteredComplex { complex, levels })
  }

  pub fn complex(&self) -> &ChainComplex<R> { &self.complex }

  pub fn levels(&self, degree: i32) -> &[i32] { self.levels.get(&degree).map_or(&[], |v| v.as_slice()) }

  fn level_range(&self) -> Option<(i32, i32)> {
    let all = self.levels.values().flatten();
    Some((*all.clone().min()?, *all.max()?))
  }
}

/// One page `E^r` with its differential `d^r : E^r_{p,q} -> E^r_{p-r,q+r-1}`.
#[derive(Debug, Clone)]
pub struct Page<R: Ring> {
  pub r: usize,
  pub ranks: BTreeMap<(i32, i32), usize>,
  pub differentials: BTreeMap<(i32, i32), Matrix<R::Elem>>,
  /// Representative cycles (ambient coordinates) for each nonzero entry.
  pub representatives: BTreeMap<(i32, i32), Vec<Vec<R::Elem>>>,
}

impl<R: Ring> Page<R> {
  pub fn rank(&self, p: i32, q: i32) -> usize { self.ranks.get(&(p, q)).copied().unwrap_or(0) }

  pub fn differential_is_zero(&self, ring: &R) -> bool { self.differentials.values().all(|m| m.is_zero(ring)) }
}

#[derive(Debug, Clone)]
pub struct SpectralSequencePages<R: Ring> {
  ring: R,
  pub pages: Vec<Page<R>>,
  /// Rank of the homology of the whole complex in each total degree.
  pub abutment: BTreeMap<i32, usize>,
}

impl<R: Ring> SpectralSequencePages<R> {
  pub fn page(&self, r: usize) -> Option<&Page<R>> { self.pages.get(r.checked_sub(1)?) }

  /// Ranks of `E^r`; pages past the last computed one equal `E^∞`.
  pub fn ranks_at(&self, r: usize) -> &BTreeMap<(i32, i32), usize> {
    let last = self.pages.len();
    &self.pages[r.clamp(1, last) - 1].ranks
  }

  /// Ranks of `E^∞`.
  pub fn e_infinity(&self) -> &BTreeMap<(i32, i32), usize> { &self.pages.last().expect("at least one page").ranks }

  pub fn infinity_rank(&self, p: i32, q: i32) -> usize { self.e_infinity().get(&(p, q)).copied().unwrap_or(0) }

  /// Smallest `r` with `E^r = E^∞`, i.e. every later differential vanishes.
  pub fn collapse_page(&self) -> usize {
    let mut r = self.pages.len();
    while r > 1 && self.pages[r - 2].differential_is_zero(&self.ring) {
      r -= 1;
    }
    r
  }

  /// `∑_{p+q=m} rank E^∞_{p,q}` for each total degree `m`.
  pub fn infinity_totals(&self) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (&(p, q), &r) in self.e_infinity() {
      *out.entry(p + q).or_insert(0) += r;
    }
    out
  }

  pub fn ring(&self) -> &R { &self.ring }
}

struct Engine<'a, R: Ring> {
  ring: &'a R,
  f: &'a FilteredComplex<R>,
  cycles: HashMap<(usize, i32, i32), Vec<Vec<R::Elem>>>,
}

impl<R: Ring> Engine<'_, R> {
  fn dim(&self, m: i32) -> usize { self.f.complex.rank(m) }

  /// `Z^r_{p}` in degree `m`.
  fn z(&mut self, r: usize, p: i32, m: i32) -> Vec<Vec<R::Elem>> {
    if let Some(v) = self.cycles.get(&(r, p, m)) {
      return v.clone();
    }
    let ring = self.ring;
    let n = self.dim(m);
    let src_levels = self.f.levels(m);
    let cols: Vec<usize> = (0..n).filter(|&i| src_levels[i] <= p).collect();
    let out = if cols.is_empty() {
      Vec::new()
    } else {
      let tgt_levels = self.f.levels(m - 1);
      let bound = p - r as i32;
      let rows: Vec<usize> = (0..tgt_levels.len()).filter(|&i| r > 0 && tgt_levels[i] > bound).collect();
      let lift = |small: &[R::Elem]| {
        let mut v = vec![ring.zero(); n];
        for (k, &c) in cols.iter().enumerate() {
          v[c] = small[k].clone();
        }
        v
      };
      if rows.is_empty() {
        cols
          .iter()
          .map(|&c| {
            let mut v = vec![ring.zero(); n];
            v[c] = ring.one();
            v
          })
          .collect()
      } else {
        let sub = self.f.complex.differential(m).select(&rows, &cols);
        kernel(ring, &sub).iter().map(|k| lift(k)).collect()
      }
    };
    self.cycles.insert((r, p, m), out.clone());
    out
  }

  fn boundary_of(&self, m: i32, vs: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
    let d = self.f.complex.differential(m);
    vs.iter().map(|v| d.apply(self.ring, v)).collect()
  }

  fn quotient(&mut self, r: usize, p: i32, m: i32) -> QuotientBasis<R> {
    let num = self.z(r, p, m);
    let mut den = self.z(r - 1, p - 1, m);
    let upper = self.z(r - 1, p + r as i32 - 1, m + 1);
    den.extend(self.boundary_of(m + 1, &upper));
    QuotientBasis::new(self.ring, &num, den, self.dim(m))
  }
}

/// Computes every page of the spectral sequence of `f` up to `E^∞`.
pub fn spectral_sequence_of_filtration<R: Ring>(f: &FilteredComplex<R>) -> Result<SpectralSequencePages<R>> {
  let ring = f.complex.ring().clone();
  if !ring.is_field() {
    return Err(Error::Unsupported(format!(
      "spectral sequence pages need field coefficients, got {}",
      ring.kind()
    )));
  }
  let mut abutment = BTreeMap::new();
  for (d, g) in f.complex.homology_all()? {
    abutment.insert(d, g.free_rank);
  }
  let degrees = f.complex.degrees();
  let Some((lo, hi)) = f.level_range() else {
    let page = Page { r: 1, ranks: BTreeMap::new(), differentials: BTreeMap::new(), representatives: BTreeMap::new() };
    return Ok(SpectralSequencePages { ring, pages: vec![page], abutment });
  };
  let last = (hi - lo + 1) as usize;
  let mut engine = Engine { ring: &ring, f, cycles: HashMap::new() };
  let mut pages = Vec::with_capacity(last);
  for r in 1..=last {
    let mut quotients: BTreeMap<(i32, i32), QuotientBasis<R>> = BTreeMap::new();
    for &m in &degrees {
      for p in lo..=hi {
        quotients.insert((p, m), engine.quotient(r, p, m));
      }
    }
    let mut ranks = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for (&(p, m), qb) in &quotients {
      if qb.dim() == 0 {
        continue;
      }
      ranks.insert((p, m - p), qb.dim());
      representatives.insert((p, m - p), qb.representatives().to_vec());
      let tp = p - r as i32;
      let images = engine.boundary_of(m, qb.representatives());
      let target = quotients.get(&(tp, m - 1));
      let tdim = target.map_or(0, |t| t.dim());
      let mut d = Matrix::zeros(&ring, tdim, qb.dim());
      if let Some(t) = target.filter(|t| t.dim() > 0) {
        for (j, y) in images.iter().enumerate() {
          let c = t.coordinates(y).ok_or_else(|| {
            Error::InvalidComplex(format!("d^{r} image of a class at ({p},{}) is not a cycle of the target", m - p))
          })?;
          for (i, e) in c.into_iter().enumerate() {
            d.set(i, j, e);
          }
        }
      }
      differentials.insert((p, m - p), d);
    }
    pages.push(Page { r, ranks, differentials, representatives });
  }
  Ok(SpectralSequencePages { ring, pages, abutment })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homalg::ring::Rationals;

  /// Interval [a,b] with a filtered so the edge comes before vertex b.
  fn interval(levels_v: Vec<i32>, level_e: i32) -> FilteredComplex<Rationals> {
    let q = Rationals;
    let mut c = ChainComplex::new(&q, Direction::Chain);
    c.set_rank(0, 2);
    c.set_rank(1, 1);
    c.set_differential(1, Matrix::from_i64(&q, &[vec![-1], vec![1]])).unwrap();
    FilteredComplex::new(c, BTreeMap::from([(0, levels_v), (1, vec![level_e])])).unwrap()
  }

  #[test]
  fn trivial_filtration_gives_homology_on_first_page() {
    let ss = spectral_sequence_of_filtration(&interval(vec![0, 0], 0)).unwrap();
    assert_eq!(ss.pages.len(), 1);
    assert_eq!(ss.e_infinity().get(&(0, 0)), Some(&1));
    assert_eq!(ss.infinity_totals(), BTreeMap::from([(0, 1)]));
  }

  #[test]
  fn nontrivial_first_differential() {
    // vertex a at level 0; vertex b and the edge at level 1
    let ss = spectral_sequence_of_filtration(&interval(vec![0, 1], 1)).unwrap();
    let e1 = ss.page(1).unwrap();
    assert_eq!(e1.rank(0, 0), 1);
    assert_eq!(e1.rank(1, -1), 0);
    assert_eq!(ss.infinity_totals(), BTreeMap::from([(0, 1)]));
    // a at 1, b and edge at 0 is not a filtration: edge would reach level 1
    let q = Rationals;
    let mut c = ChainComplex::new(&q, Direction::Chain);
    c.set_rank(0, 2);
    c.set_rank(1, 1);
    c.set_differential(1, Matrix::from_i64(&q, &[vec![-1], vec![1]])).unwrap();
    assert!(FilteredComplex::new(c, BTreeMap::from([(0, vec![1, 0]), (1, vec![0])])).is_err());
  }

  #[test]
  fn relative_boundary_cancels_on_first_page() {
    // vertex a at level 0; vertex b and the edge at level 2
    let ss = spectral_sequence_of_filtration(&interval(vec![0, 2], 2)).unwrap();
    let e1 = ss.page(1).unwrap();
    assert_eq!(e1.rank(0, 0), 1);
    assert_eq!(e1.rank(2, -2), 0);
    assert_eq!(ss.collapse_page(), 1);
  }

  #[test]
  fn second_page_differential_is_detected() {
    // both vertices at level 0, the edge at level 2
    let ss = spectral_sequence_of_filtration(&interval(vec![0, 0], 2)).unwrap();
    let e1 = ss.page(1).unwrap();
    assert_eq!(e1.rank(0, 0), 2);
    assert_eq!(e1.rank(2, -1), 1);
    assert!(e1.differential_is_zero(ss.ring()));
    let e2 = ss.page(2).unwrap();
    assert_eq!(e2.differentials[&(2, -1)].rank(ss.ring()), 1);
    assert_eq!(ss.collapse_page(), 3);
    assert_eq!(ss.e_infinity(), &BTreeMap::from([((0, 0), 1)]));
  }
}
