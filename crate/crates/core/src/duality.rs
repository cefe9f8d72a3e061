//! Zeeman–McCrory pages, the coskeleton spectral sequence of `C_*(S'; Î)`,
//! and the duality `H^k(S; ℋ₀ ⊗ ℐ) ≅ H_{n-1-k}(S; Π̂)` with its vanishing range.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::charfun::{build_ideal_sheaf, build_principal_cosheaf, corefine, CharacteristicFunction, GradedCosheaf, GradedSheaf};
use crate::error::{Error, Result};
use crate::homalg::{
  double_complex_spectral_sequences, spectral_sequence_of_filtration, CoefficientRing, DoubleComplex, FilteredComplex,
  GroupDescriptor, Matrix, Ring, SpectralSequencePages,
};
use crate::poset::{SimplicialPoset, Subdivision};
use crate::sheaf::{classify, structure_sheaves_on, CellularCosheaf, CellularSheaf};

/// One entry of a bigraded rank table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TableEntry {
  pub p: i32,
  pub q: i32,
  pub rank: usize,
}

fn table(m: &BTreeMap<(i32, i32), usize>) -> Vec<TableEntry> {
  m.iter().filter(|(_, &r)| r > 0).map(|(&(p, q), &rank)| TableEntry { p, q, rank }).collect()
}

fn nonzero(m: &BTreeMap<(i32, i32), usize>) -> BTreeMap<(i32, i32), usize> {
  m.iter().filter(|(_, &r)| r > 0).map(|(&k, &r)| (k, r)).collect()
}

fn ranks_by_degree(h: &BTreeMap<i32, GroupDescriptor>) -> BTreeMap<i32, usize> {
  h.iter().filter(|(_, g)| g.free_rank > 0).map(|(&d, g)| (d, g.free_rank)).collect()
}

fn dense(m: &BTreeMap<i32, usize>, lo: i32, hi: i32) -> Vec<usize> { (lo..=hi).map(|d| m.get(&d).copied().unwrap_or(0)).collect() }

/// The coskeleton filtration on a cosheaf over `S'`: a chain with least
/// element `I` sits at level `n - |I|`.
pub fn coskeleton_filtration<R: Ring>(
  base: &SimplicialPoset,
  sd: &Subdivision,
  cosheaf: &CellularCosheaf<R>,
) -> Result<FilteredComplex<R>> {
  let c = cosheaf.chain_complex()?;
  let complex = sd.complex();
  let mut levels: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
  for sx in 0..complex.len() {
    let r = cosheaf.rank(sx);
    if r == 0 {
      continue;
    }
    let level = sd.level(sx, base).ok_or_else(|| Error::InvalidComplex("empty chain carries a value".into()))?;
    levels.entry(complex.dim(sx)).or_default().extend(std::iter::repeat(level).take(r));
  }
  FilteredComplex::new(c, levels)
}

fn require_field<R: Ring>(ring: &R, what: &str) -> Result<()> {
  if ring.is_field() {
    Ok(())
  } else {
    Err(Error::Unsupported(format!("{what} needs field coefficients, got {}", ring.kind())))
  }
}

fn subdivided(s: &SimplicialPoset) -> Result<(Subdivision, Arc<SimplicialPoset>)> {
  if !s.is_pure() {
    return Err(Error::InvalidInput("spectral sequences of the coskeleton filtration need a pure poset".into()));
  }
  let sd = s.subdivide()?;
  let c = Arc::new(sd.complex().clone());
  Ok((sd, c))
}

/// Coskeleton spectral sequence of `S'` with constant coefficients.
pub fn zm_pages<R: Ring>(s: &SimplicialPoset, ring: &R) -> Result<SpectralSequencePages<R>> {
  require_field(ring, "the Zeeman–McCrory spectral sequence")?;
  let (sd, c) = subdivided(s)?;
  let k = CellularCosheaf::constant(&c, ring, false);
  spectral_sequence_of_filtration(&coskeleton_filtration(s, &sd, &k)?)
}

/// `rank H^{n-1-p}(S; A)` as a function of `p`.
fn cohomology_by_filtration<R: Ring>(a: &CellularSheaf<R>, n: i32) -> Result<BTreeMap<i32, usize>> {
  let h = a.cochain_complex()?.homology_all()?;
  Ok(h.iter().filter(|(_, g)| g.free_rank > 0).map(|(&d, g)| (n - 1 - d, g.free_rank)).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct ZmReport {
  pub ring: CoefficientRing,
  pub dimension: i32,
  pub e2: Vec<TableEntry>,
  /// `H^{n-1-p}(S; ℋ_q)` computed from the structure sheaves.
  pub e2_expected: Vec<TableEntry>,
  pub e_infinity: Vec<TableEntry>,
  pub collapse_page: usize,
  /// `H_m(S')` from the filtered complex, `m = 0..n-1`.
  pub abutment: Vec<usize>,
  /// `H_m(S)` from the constant cosheaf on `S`.
  pub homology: Vec<usize>,
  /// `H^{n-1-p}(S)` for `p = 0..n-1`; present on orientable homology manifolds.
  pub poincare_cohomology: Option<Vec<usize>>,
  pub e2_matches: bool,
  pub abutment_matches: bool,
  pub poincare_holds: Option<bool>,
}

impl ZmReport {
  pub fn passed(&self) -> bool { self.e2_matches && self.abutment_matches && self.poincare_holds != Some(false) }
}

pub fn zeeman_mccrory<R: Ring>(s: &Arc<SimplicialPoset>, ring: &R) -> Result<ZmReport> {
  require_field(ring, "the Zeeman–McCrory spectral sequence")?;
  let (sd, c) = subdivided(s)?;
  let n = s.max_rank() as i32;
  let k = CellularCosheaf::constant(&c, ring, false);
  let pages = spectral_sequence_of_filtration(&coskeleton_filtration(s, &sd, &k)?)?;
  let e2 = nonzero(pages.ranks_at(2));
  let mut expected = BTreeMap::new();
  for (q, h) in structure_sheaves_on(s, &sd, ring)? {
    for (p, r) in cohomology_by_filtration(&h, n)? {
      expected.insert((p, q), r);
    }
  }
  let homology = ranks_by_degree(&CellularCosheaf::constant(s, ring, false).chain_complex()?.homology_all()?);
  let abutment = pages.abutment.clone();
  let class = classify(s, ring)?;
  let poincare_cohomology = class.is_orientable_manifold().then(|| -> Result<Vec<usize>> {
    let h = cohomology_by_filtration(&CellularSheaf::constant(s, ring, false), n)?;
    Ok(dense(&h, 0, n - 1))
  });
  let poincare_cohomology = poincare_cohomology.transpose()?;
  let homology_dense = dense(&homology, 0, n - 1);
  Ok(ZmReport {
    ring: ring.kind(),
    dimension: n - 1,
    e2_matches: e2 == expected,
    abutment_matches: nonzero_degrees(&abutment) == homology,
    poincare_holds: poincare_cohomology.as_ref().map(|c| *c == homology_dense),
    e2: table(&e2),
    e2_expected: table(&expected),
    e_infinity: table(pages.e_infinity()),
    collapse_page: pages.collapse_page(),
    abutment: dense(&abutment, 0, n - 1),
    homology: homology_dense,
    poincare_cohomology,
  })
}

fn nonzero_degrees(m: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> { m.iter().filter(|(_, &r)| r > 0).map(|(&d, &r)| (d, r)).collect() }

/// Coskeleton spectral sequence of `C_*(S'; Î^{(q)})` for one inner degree.
/// Page coordinates are `(s, k)` with total degree `s + k`.
#[derive(Debug, Clone, Serialize)]
pub struct GradeConvergence {
  pub inner_degree: usize,
  pub e2: Vec<TableEntry>,
  /// `H^{n-1-s}(S; ℋ_k ⊗ ℐ^{(q)})`.
  pub e2_expected: Vec<TableEntry>,
  pub e_infinity: Vec<TableEntry>,
  /// Total degree ↦ `∑ rank E^∞`.
  pub infinity_totals: BTreeMap<i32, usize>,
  /// Total degree ↦ `rank H_m(S; Π̂^{(q)})`.
  pub abutment: BTreeMap<i32, usize>,
  pub collapse_page: usize,
  /// Some `E²_{s,k}` with `k ≠ 0` is nonzero.
  pub off_row: bool,
  pub e2_matches: bool,
  pub abutment_matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
  pub ring: CoefficientRing,
  pub dimension: i32,
  pub lambda: usize,
  pub grades: Vec<GradeConvergence>,
}

impl ConvergenceReport {
  pub fn passed(&self) -> bool { self.grades.iter().all(|g| g.e2_matches && g.abutment_matches) }

  pub fn collapses_at_second_page(&self) -> bool { self.grades.iter().all(|g| g.collapse_page <= 2 && !g.off_row) }
}

struct Inputs<R: Ring> {
  ideal: GradedSheaf<R>,
  pi: GradedCosheaf<R>,
}

fn inputs<R: Ring>(s: &Arc<SimplicialPoset>, chi: &CharacteristicFunction, ring: &R) -> Result<Inputs<R>> {
  Ok(Inputs { ideal: build_ideal_sheaf(s, chi, ring)?, pi: build_principal_cosheaf(s, chi, ring)? })
}

pub fn duality_pages<R: Ring>(s: &Arc<SimplicialPoset>, chi: &CharacteristicFunction, ring: &R) -> Result<ConvergenceReport> {
  require_field(ring, "the coskeleton spectral sequence")?;
  let (sd, c) = subdivided(s)?;
  let n = s.max_rank() as i32;
  let Inputs { ideal, pi } = inputs(s, chi, ring)?;
  let structure = structure_sheaves_on(s, &sd, ring)?;
  let mut grades = Vec::new();
  for q in 0..=chi.lambda {
    let hat = corefine(&sd, &c, ideal.piece(q))?;
    let pages = spectral_sequence_of_filtration(&coskeleton_filtration(s, &sd, &hat)?)?;
    let e2 = nonzero(pages.ranks_at(2));
    let mut expected = BTreeMap::new();
    for (&k, h) in &structure {
      for (p, r) in cohomology_by_filtration(&h.tensor(ideal.piece(q))?, n)? {
        expected.insert((p, k), r);
      }
    }
    let abutment = ranks_by_degree(&pi.piece(q).chain_complex()?.homology_all()?);
    let totals = nonzero_degrees(&pages.infinity_totals());
    grades.push(GradeConvergence {
      inner_degree: q,
      off_row: e2.keys().any(|&(_, k)| k != 0),
      e2_matches: e2 == expected,
      abutment_matches: totals == abutment && nonzero_degrees(&pages.abutment) == abutment,
      e2: table(&e2),
      e2_expected: table(&expected),
      e_infinity: table(pages.e_infinity()),
      infinity_totals: totals,
      collapse_page: pages.collapse_page(),
      abutment,
    });
  }
  Ok(ConvergenceReport { ring: ring.kind(), dimension: n - 1, lambda: chi.lambda, grades })
}

/// Which left-hand side the duality is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualityForm {
  /// `H^k(S; ℐ)`, valid when `ℋ₀` is constant (orientable homology manifolds).
  ManifoldShortcut,
  /// `H^k(S; ℋ₀ ⊗ ℐ)`, field coefficients.
  StructureSheaf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityEntry {
  pub inner_degree: usize,
  pub k: i32,
  pub left: GroupDescriptor,
  /// `H_{n-1-k}(S; Π̂^{(q)})`.
  pub right: GroupDescriptor,
  pub isomorphic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingEntry {
  pub inner_degree: usize,
  pub j: i32,
  pub group: GroupDescriptor,
  pub vanishes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
  pub ring: CoefficientRing,
  pub form: DualityForm,
  pub dimension: i32,
  pub lambda: usize,
  pub entries: Vec<DualityEntry>,
  /// Every `H^j` with `j ≤ n - 1 - q` on the left-hand side.
  pub vanishing: Vec<VanishingEntry>,
}

impl DualityReport {
  pub fn all_isomorphic(&self) -> bool { self.entries.iter().all(|e| e.isomorphic) }

  pub fn vanishing_holds(&self) -> bool { self.vanishing.iter().all(|v| v.vanishes) }

  pub fn passed(&self) -> bool { self.all_isomorphic() && self.vanishing_holds() }
}

/// Checks the duality in the form appropriate for `S` over `ring`.
pub fn verify_duality<R: Ring>(s: &Arc<SimplicialPoset>, chi: &CharacteristicFunction, ring: &R) -> Result<DualityReport> {
  verify_duality_with(s, chi, ring, None)
}

/// As [`verify_duality`], optionally forcing the left-hand side.
pub fn verify_duality_with<R: Ring>(
  s: &Arc<SimplicialPoset>,
  chi: &CharacteristicFunction,
  ring: &R,
  form: Option<DualityForm>,
) -> Result<DualityReport> {
  let class = classify(s, ring)?;
  if !class.is_buchsbaum {
    let w = class.witness.as_ref().map_or_else(String::new, |w| format!(": link of {:?}, {}", w.vertices, w.reason));
    return Err(Error::Refused(format!("poset is not Buchsbaum over {}{w}", ring.kind())));
  }
  let form = match form {
    Some(f) => f,
    None if class.is_orientable_manifold() => DualityForm::ManifoldShortcut,
    None => DualityForm::StructureSheaf,
  };
  match form {
    DualityForm::ManifoldShortcut if !class.is_orientable_manifold() => {
      return Err(Error::Refused(format!("poset is not an orientable homology manifold over {}", ring.kind())));
    },
    DualityForm::StructureSheaf if !ring.is_field() => {
      return Err(Error::Refused(format!(
        "the structure-sheaf form needs a field; over {} only orientable homology manifolds are covered",
        ring.kind()
      )));
    },
    _ => {},
  }
  let n = s.max_rank() as i32;
  let Inputs { ideal, pi } = inputs(s, chi, ring)?;
  let h0 = match form {
    DualityForm::StructureSheaf => {
      let sd = s.subdivide()?;
      Some(structure_sheaves_on(s, &sd, ring)?.remove(&0).expect("degree zero present"))
    },
    DualityForm::ManifoldShortcut => None,
  };
  let mut entries = Vec::new();
  let mut vanishing = Vec::new();
  for q in 0..=chi.lambda {
    let coeff = match &h0 {
      Some(h) => h.tensor(ideal.piece(q))?,
      None => ideal.piece(q).clone(),
    };
    let left = coeff.cochain_complex()?;
    let right = pi.piece(q).chain_complex()?;
    for k in 0..n {
      let l = left.homology(k)?;
      let r = right.homology(n - 1 - k)?;
      if k <= n - 1 - q as i32 {
        vanishing.push(VanishingEntry { inner_degree: q, j: k, vanishes: l.is_zero(), group: l.clone() });
      }
      entries.push(DualityEntry { inner_degree: q, k, isomorphic: l == r, left: l, right: r });
    }
  }
  Ok(DualityReport { ring: ring.kind(), form, dimension: n - 1, lambda: chi.lambda, entries, vanishing })
}

/// Both spectral sequences of `𝒳_{k,l} = ⊕_{dim I = k} C_l(G_I; Π_I^{(q)})`.
#[derive(Debug, Clone, Serialize)]
pub struct DoubleComplexReport {
  pub inner_degree: usize,
  /// Coordinates `(k, l)`.
  pub vertical_e2: Vec<TableEntry>,
  /// Coordinates `(l, k)`.
  pub horizontal_e2: Vec<TableEntry>,
  pub total_homology: BTreeMap<i32, usize>,
  /// `H_k(S; Π̂^{(q)})`.
  pub pi_homology: BTreeMap<i32, usize>,
  /// `H_l(S'; Î^{(q)})`.
  pub corefined_homology: BTreeMap<i32, usize>,
  pub vertical_matches: bool,
  pub horizontal_matches: bool,
  pub abutments_agree: bool,
}

impl DoubleComplexReport {
  pub fn passed(&self) -> bool { self.vertical_matches && self.horizontal_matches && self.abutments_agree }
}

/// Builds `𝒳` for one inner degree. `d_H` is the cosheaf differential of `Π̂`,
/// `d_V` the boundary of `G_I ⊆ S'`.
pub fn taylor_double_complex<R: Ring>(
  s: &SimplicialPoset,
  sd: &Subdivision,
  pi: &CellularCosheaf<R>,
) -> Result<DoubleComplex<R>> {
  let ring = pi.ring();
  let complex = sd.complex();
  // Per element: chains of G_I by dimension, with their position.
  let mut cells: Vec<BTreeMap<i32, Vec<usize>>> = vec![BTreeMap::new(); s.len()];
  for sx in 1..complex.len() {
    let m = sd.min_of(sx).expect("nonempty chain");
    for i in 1..s.len() {
      if pi.rank(i) > 0 && s.leq(i, m) {
        cells[i].entry(complex.dim(sx)).or_default().push(sx);
      }
    }
  }
  let position = |i: usize, l: i32, sx: usize| cells[i].get(&l).and_then(|v| v.binary_search(&sx).ok());
  // Offsets of (I, l) blocks inside X_{dim I, l}.
  let mut offset: BTreeMap<(usize, i32), usize> = BTreeMap::new();
  let mut x = DoubleComplex::new(ring);
  let mut totals: BTreeMap<(i32, i32), usize> = BTreeMap::new();
  for i in 1..s.len() {
    for (&l, v) in &cells[i] {
      let t = totals.entry((s.dim(i), l)).or_insert(0);
      offset.insert((i, l), *t);
      *t += v.len() * pi.rank(i);
    }
  }
  for (&(k, l), &r) in &totals {
    x.set_rank(k, l, r);
  }
  let neg = ring.neg(&ring.one());
  for &(k, l) in totals.keys() {
    if l > 0 && x.rank(k, l - 1) > 0 {
      let mut m = Matrix::zeros(ring, x.rank(k, l - 1), x.rank(k, l));
      for i in s.with_dim(k).into_iter().filter(|&i| offset.contains_key(&(i, l))) {
        let r = pi.rank(i);
        let id = Matrix::identity(ring, r);
        for (col, &sx) in cells[i][&l].iter().enumerate() {
          for (f, sign) in complex.face_signs(sx) {
            if let Some(row) = position(i, l - 1, f) {
              let block = if sign < 0 { id.scale(ring, &neg) } else { id.clone() };
              m.put_block(offset[&(i, l - 1)] + row * r, offset[&(i, l)] + col * r, &block);
            }
          }
        }
      }
      x.set_vertical(k, l, m)?;
    }
    if k > 0 && x.rank(k - 1, l) > 0 {
      let mut m = Matrix::zeros(ring, x.rank(k - 1, l), x.rank(k, l));
      for i in s.with_dim(k).into_iter().filter(|&i| offset.contains_key(&(i, l))) {
        for (f, sign) in s.face_signs(i) {
          if pi.rank(f) == 0 {
            continue;
          }
          let block = pi.map(f, i);
          let block = if sign < 0 { block.scale(ring, &neg) } else { block };
          let (rf, ri) = (pi.rank(f), pi.rank(i));
          for (col, &sx) in cells[i][&l].iter().enumerate() {
            let row = position(f, l, sx).expect("G_I lies in G_F for F < I");
            m.put_block(offset[&(f, l)] + row * rf, offset[&(i, l)] + col * ri, &block);
          }
        }
      }
      x.set_horizontal(k, l, m)?;
    }
  }
  x.check()?;
  Ok(x)
}

pub fn double_complex_check<R: Ring>(
  s: &Arc<SimplicialPoset>,
  chi: &CharacteristicFunction,
  ring: &R,
  q: usize,
) -> Result<DoubleComplexReport> {
  require_field(ring, "the double-complex spectral sequences")?;
  if q > chi.lambda {
    return Err(Error::InvalidInput(format!("inner degree {q} exceeds λ = {}", chi.lambda)));
  }
  let (sd, c) = subdivided(s)?;
  let Inputs { ideal, pi } = inputs(s, chi, ring)?;
  let x = taylor_double_complex(s, &sd, pi.piece(q))?;
  let pages = double_complex_spectral_sequences(&x)?;
  let second = |p: &SpectralSequencePages<R>| nonzero(p.ranks_at(2));
  let v2 = second(&pages.vertical);
  let h2 = second(&pages.horizontal);
  let pi_homology = ranks_by_degree(&pi.piece(q).chain_complex()?.homology_all()?);
  let corefined_homology = ranks_by_degree(&corefine(&sd, &c, ideal.piece(q))?.chain_complex()?.homology_all()?);
  let total_homology = ranks_by_degree(&pages.total.homology_all()?);
  let v_expected: BTreeMap<(i32, i32), usize> = pi_homology.iter().map(|(&k, &r)| ((k, 0), r)).collect();
  let h_expected: BTreeMap<(i32, i32), usize> = corefined_homology.iter().map(|(&l, &r)| ((l, 0), r)).collect();
  Ok(DoubleComplexReport {
    inner_degree: q,
    vertical_matches: v2 == v_expected,
    horizontal_matches: h2 == h_expected,
    abutments_agree: total_homology == pi_homology && total_homology == corefined_homology,
    vertical_e2: table(&v2),
    horizontal_e2: table(&h2),
    total_homology,
    pi_homology,
    corefined_homology,
  })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homalg::{Integers, PrimeField, Rationals};

  fn boundary_triangle() -> Arc<SimplicialPoset> {
    Arc::new(SimplicialPoset::from_facets(&[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap())
  }

  fn standard2() -> CharacteristicFunction {
    CharacteristicFunction::from_pairs(2, &[(1, vec![1, 0]), (2, vec![0, 1]), (3, vec![1, 1])]).unwrap()
  }

  fn boundary_tetrahedron() -> Arc<SimplicialPoset> {
    Arc::new(SimplicialPoset::from_facets(&[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]).unwrap())
  }

  fn wedge() -> (Arc<SimplicialPoset>, CharacteristicFunction) {
    let s = Arc::new(SimplicialPoset::from_facets(&[vec![1, 2, 3], vec![1, 4, 5]]).unwrap());
    let chi = CharacteristicFunction::from_pairs(
      3,
      &[(1, vec![1, 0, 0]), (2, vec![0, 1, 0]), (3, vec![0, 0, 1]), (4, vec![0, 1, 0]), (5, vec![0, 0, 1])],
    )
    .unwrap();
    (s, chi)
  }

  #[test]
  fn triangle_duality_over_integers() {
    let r = verify_duality(&boundary_triangle(), &standard2(), &Integers).unwrap();
    assert_eq!(r.form, DualityForm::ManifoldShortcut);
    assert!(r.passed());
    let at = |q: usize, k: i32| r.entries.iter().find(|e| e.inner_degree == q && e.k == k).unwrap().clone();
    assert_eq!(at(1, 0).left, GroupDescriptor::zero());
    assert_eq!(at(1, 1).left, GroupDescriptor::free(3));
    assert_eq!(at(1, 1).right, GroupDescriptor::free(3));
  }

  #[test]
  fn structure_sheaf_form_agrees_on_spheres() {
    let r = verify_duality_with(&boundary_tetrahedron(), &standard_simplex(3), &Rationals, Some(DualityForm::StructureSheaf))
      .unwrap();
    assert!(r.passed());
  }

  fn standard_simplex(n: usize) -> CharacteristicFunction {
    let mut pairs: Vec<(i64, Vec<i64>)> = (0..n).map(|i| (i as i64 + 1, (0..n).map(|j| i64::from(i == j)).collect())).collect();
    pairs.push((n as i64 + 1, vec![1; n]));
    CharacteristicFunction::from_pairs(n, &pairs).unwrap()
  }

  #[test]
  fn non_buchsbaum_is_refused() {
    let (s, chi) = wedge();
    assert!(matches!(verify_duality(&s, &chi, &Rationals), Err(Error::Refused(_))));
  }

  #[test]
  fn zm_on_tetrahedron_boundary() {
    let r = zeeman_mccrory(&boundary_tetrahedron(), &Rationals).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.collapse_page <= 2);
    assert_eq!(r.poincare_cohomology, Some(vec![1, 0, 1]));
    assert_eq!(r.homology, vec![1, 0, 1]);
  }

  #[test]
  fn zm_on_wedge_has_off_row_terms() {
    let (s, _) = wedge();
    let r = zeeman_mccrory(&s, &PrimeField::new(2).unwrap()).unwrap();
    assert!(r.e2_matches && r.abutment_matches);
    assert!(r.e2.iter().any(|e| e.q != 0 && e.rank > 0));
  }

  #[test]
  fn coskeleton_sequence_collapses_on_spheres() {
    let r = duality_pages(&boundary_triangle(), &standard2(), &Rationals).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.collapses_at_second_page());
  }

  #[test]
  fn coskeleton_sequence_on_wedge() {
    let (s, chi) = wedge();
    let r = duality_pages(&s, &chi, &Rationals).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.grades.iter().any(|g| g.off_row));
  }

  #[test]
  fn top_inner_degree_reproduces_zm() {
    let s = boundary_tetrahedron();
    let r = duality_pages(&s, &standard_simplex(3), &Rationals).unwrap();
    let z = zeeman_mccrory(&s, &Rationals).unwrap();
    assert_eq!(r.grades[3].e2, z.e2);
  }

  #[test]
  fn double_complex_on_triangle() {
    for q in 0..=2 {
      let r = double_complex_check(&boundary_triangle(), &standard2(), &Rationals, q).unwrap();
      assert!(r.passed(), "{r:?}");
    }
  }
}
