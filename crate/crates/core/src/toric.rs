//! Orbit posets, the sheaves `Λ` and `Λ/ℐ`, and the comparison of the
//! second pages `H^{n-1-p}(S_Q; Λ^{(q)}) → H^{n-1-p}(S_Q; (Λ/ℐ)^{(q)})`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::charfun::{binomial, build_ideal_sheaf, CharacteristicFunction, GradedSheaf};
use crate::duality::TableEntry;
use crate::error::{Error, Result};
use crate::homalg::{echelon, kernel, smith, ChainComplex, CoefficientRing, Matrix, Ring};
use crate::poset::{ElementId, SimplicialPoset, Vertex};
use crate::sheaf::{classify, CellularSheaf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitKind {
  Simplex,
  Cube,
  User,
}

#[derive(Debug, Clone)]
pub enum OrbitModel {
  /// Orbit space `Δⁿ` (of `CPⁿ`); `S_Q = ∂Δⁿ`.
  Simplex(usize),
  /// Orbit space `Iⁿ`; `S_Q` is the boundary of the cross-polytope.
  Cube(usize),
  User(SimplicialPoset),
}

#[derive(Debug, Clone)]
pub struct OrbitPoset {
  pub poset: Arc<SimplicialPoset>,
  pub n: usize,
  pub kind: OrbitKind,
}

pub fn simplex_boundary(n: usize) -> Result<SimplicialPoset> {
  if n == 0 {
    return Err(Error::InvalidInput("simplex orbit space needs n ≥ 1".into()));
  }
  let all: Vec<Vertex> = (1..=n as Vertex + 1).collect();
  let facets: Vec<Vec<Vertex>> = (0..=n).map(|skip| all.iter().copied().filter(|&v| v != skip as Vertex + 1).collect()).collect();
  SimplicialPoset::from_facets(&facets)
}

/// Vertices `i` and `n + i` are opposite.
pub fn cross_polytope_boundary(n: usize) -> Result<SimplicialPoset> {
  if n == 0 {
    return Err(Error::InvalidInput("cube orbit space needs n ≥ 1".into()));
  }
  let facets: Vec<Vec<Vertex>> = (0u32..1 << n)
    .map(|mask| (0..n).map(|i| (i + 1 + if mask >> i & 1 == 1 { n } else { 0 }) as Vertex).collect())
    .collect();
  SimplicialPoset::from_facets(&facets)
}

pub fn orbit_poset<R: Ring>(model: OrbitModel, ring: &R) -> Result<OrbitPoset> {
  let (poset, kind) = match model {
    OrbitModel::Simplex(n) => (simplex_boundary(n)?, OrbitKind::Simplex),
    OrbitModel::Cube(n) => (cross_polytope_boundary(n)?, OrbitKind::Cube),
    OrbitModel::User(s) => {
      let c = classify(&s, ring)?;
      if !c.is_orientable_manifold() {
        let w = c.witness.map_or_else(
          || format!("top homology is {}", c.top_homology),
          |w| format!("link of {:?}: {}", w.vertices, w.reason),
        );
        return Err(Error::Refused(format!("not an orientable homology manifold over {}: {w}", ring.kind())));
      }
      (s, OrbitKind::User)
    },
  };
  let n = poset.max_rank();
  Ok(OrbitPoset { poset: Arc::new(poset), n, kind })
}

/// `ω` of the standard toric picture: `e_i` and `e_1 + … + e_n` for the
/// simplex, `e_i` on both `i` and `n + i` for the cube.
pub fn standard_characteristic(orbit: &OrbitPoset) -> Result<CharacteristicFunction> {
  let n = orbit.n;
  let e = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
  let pairs: Vec<(Vertex, Vec<i64>)> = match orbit.kind {
    OrbitKind::Simplex => (0..n).map(|i| (i as Vertex + 1, e(i))).chain([(n as Vertex + 1, vec![1; n])]).collect(),
    OrbitKind::Cube => (0..n).flat_map(|i| [(i as Vertex + 1, e(i)), ((n + i) as Vertex + 1, e(i))]).collect(),
    OrbitKind::User => return Err(Error::Unsupported("no standard characteristic function for user posets".into())),
  };
  CharacteristicFunction::from_pairs(n, &pairs)
}

/// Inverse of a matrix whose Smith form is the identity.
fn unimodular_inverse<R: Ring>(ring: &R, u: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
  let sm = smith(ring, u, true);
  if sm.rank() != u.rows() || sm.invariant_factors.iter().any(|d| d != &ring.one()) {
    return Err(Error::InvalidInput("matrix is not invertible".into()));
  }
  Ok(sm.v.expect("tracked").mul(ring, &sm.u.expect("tracked")))
}

/// `Λ^{(q)} → Λ^{(q)}/ℐ^{(q)}(I)` and a section of it.
#[derive(Debug, Clone)]
struct Splitting<E> {
  projection: Matrix<E>,
  lift: Matrix<E>,
}

fn splitting<R: Ring>(ring: &R, basis: &Matrix<R::Elem>, width: usize) -> Result<Splitting<R::Elem>> {
  let r = basis.cols();
  if r == 0 {
    return Ok(Splitting { projection: Matrix::identity(ring, width), lift: Matrix::identity(ring, width) });
  }
  let sm = smith(ring, basis, true);
  if sm.rank() != r || sm.invariant_factors.iter().any(|d| !ring.is_unit(d)) {
    return Err(Error::InvalidInput("ideal is not a direct summand of the exterior algebra".into()));
  }
  let u = sm.u.expect("tracked");
  let rest: Vec<usize> = (r..width).collect();
  let all_rows: Vec<usize> = (0..width).collect();
  let projection = u.select(&rest, &all_rows);
  let inv = unimodular_inverse(ring, &u)?;
  let lift = inv.select(&all_rows, &rest);
  Ok(Splitting { projection, lift })
}

/// `Λ`, `ℐ`, `Λ/ℐ` and the projection, graded by exterior degree; all truncated at `0̂`.
#[derive(Debug, Clone)]
pub struct ToricSheaves<R: Ring> {
  pub lambda: Vec<CellularSheaf<R>>,
  pub ideal: GradedSheaf<R>,
  pub quotient: Vec<CellularSheaf<R>>,
  /// `projection[q][I]` : `Λ^{(q)}(I) → (Λ/ℐ)^{(q)}(I)`.
  pub projection: Vec<Vec<Matrix<R::Elem>>>,
  /// `inclusion[q][I]` : `ℐ^{(q)}(I) → Λ^{(q)}(I)`.
  pub inclusion: Vec<Vec<Matrix<R::Elem>>>,
}

pub fn lambda_and_quotient<R: Ring>(s: &Arc<SimplicialPoset>, chi: &CharacteristicFunction, ring: &R) -> Result<ToricSheaves<R>> {
  let ideal = build_ideal_sheaf(s, chi, ring)?;
  let n = chi.lambda;
  let mut lambda = Vec::new();
  let mut quotient = Vec::new();
  let mut projection = Vec::new();
  let mut inclusion = Vec::new();
  for q in 0..=n {
    let width = binomial(n, q);
    let mut l = CellularSheaf::with_ranks(s, ring, (0..s.len()).map(|i| if i == s.bottom() { 0 } else { width }).collect())?;
    let mut incl = Vec::with_capacity(s.len());
    let mut splits = Vec::with_capacity(s.len());
    for i in 0..s.len() {
      let b = ideal.bases[q][i].basis_columns();
      let b = if b.cols() == 0 { Matrix::zeros(ring, width, 0) } else { b };
      splits.push(splitting(ring, &b, width)?);
      incl.push(b);
    }
    let ranks: Vec<usize> = (0..s.len()).map(|i| if i == s.bottom() { 0 } else { width - ideal.pieces[q].rank(i) }).collect();
    let mut quo = CellularSheaf::with_ranks(s, ring, ranks)?;
    for (i, j) in s.covers() {
      if i == s.bottom() {
        continue;
      }
      if width > 0 {
        l.set_map(i, j, Matrix::identity(ring, width))?;
      }
      if quo.rank(i) > 0 && quo.rank(j) > 0 {
        quo.set_map(i, j, splits[j].projection.mul(ring, &splits[i].lift))?;
      }
    }
    let proj: Vec<Matrix<R::Elem>> = (0..s.len())
      .map(|i| if i == s.bottom() { Matrix::zeros(ring, 0, 0) } else { splits[i].projection.clone() })
      .collect();
    check_short_exact(s, ring, &ideal, q, &l, &quo, &proj, &incl)?;
    lambda.push(l);
    quotient.push(quo);
    projection.push(proj);
    inclusion.push(incl);
  }
  Ok(ToricSheaves { lambda, ideal, quotient, projection, inclusion })
}

/// Componentwise exactness of `0 → ℐ → Λ → Λ/ℐ → 0` and commuting restriction squares.
#[allow(clippy::too_many_arguments)]
fn check_short_exact<R: Ring>(
  s: &SimplicialPoset,
  ring: &R,
  ideal: &GradedSheaf<R>,
  q: usize,
  l: &CellularSheaf<R>,
  quo: &CellularSheaf<R>,
  proj: &[Matrix<R::Elem>],
  incl: &[Matrix<R::Elem>],
) -> Result<()> {
  let bad = |what: String| Err(Error::InvalidSheaf(format!("inner degree {q}: {what}")));
  for i in 1..s.len() {
    if ideal.pieces[q].rank(i) + quo.rank(i) != l.rank(i) {
      return bad(format!("ranks do not add up at element {i}"));
    }
    if !proj[i].mul(ring, &incl[i]).is_zero(ring) {
      return bad(format!("projection does not kill the ideal at element {i}"));
    }
    if proj[i].rank(ring) != quo.rank(i) {
      return bad(format!("projection is not onto at element {i}"));
    }
  }
  for (i, j) in s.covers() {
    if i == s.bottom() {
      continue;
    }
    let left = quo.map(i, j).mul(ring, &proj[i]);
    let right = proj[j].mul(ring, &l.map(i, j));
    if left != right {
      return bad(format!("projection square does not commute on {i} < {j}"));
    }
  }
  Ok(())
}

/// Cochain map induced by per-element maps `f_I : A(I) → B(I)`.
fn cochain_map<R: Ring>(
  s: &SimplicialPoset,
  ring: &R,
  a: &CellularSheaf<R>,
  b: &CellularSheaf<R>,
  f: &[Matrix<R::Elem>],
  degree: i32,
) -> Matrix<R::Elem> {
  let cells = s.with_dim(degree);
  let rows: usize = cells.iter().map(|&i| b.rank(i)).sum();
  let cols: usize = cells.iter().map(|&i| a.rank(i)).sum();
  let mut m = Matrix::zeros(ring, rows, cols);
  let (mut r0, mut c0) = (0, 0);
  for &i in &cells {
    if a.rank(i) > 0 && b.rank(i) > 0 {
      m.put_block(r0, c0, &f[i]);
    }
    r0 += b.rank(i);
    c0 += a.rank(i);
  }
  m
}

/// Rank of the map induced on cohomology in `degree` (field coefficients).
fn induced_rank<R: Ring>(ring: &R, c: &ChainComplex<R>, d: &ChainComplex<R>, f: &Matrix<R::Elem>, degree: i32) -> usize {
  let cycles = kernel(ring, &c.differential(degree));
  let width = d.rank(degree);
  let incoming = d.differential(degree - 1);
  let boundaries: Vec<Vec<R::Elem>> = (0..incoming.cols()).map(|j| incoming.column(j)).collect();
  let base = echelon(ring, boundaries.clone(), width).rank();
  let mut all = boundaries;
  all.extend(cycles.iter().map(|z| f.apply(ring, z)));
  echelon(ring, all, width).rank() - base
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
  Isomorphism,
  Injective,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageVerdict {
  pub p: i32,
  pub q: i32,
  pub expectation: Expectation,
  pub source: usize,
  pub target: usize,
  pub map_rank: usize,
  pub holds: bool,
}

/// Rank bookkeeping of `… → H^j(ℐ) →a H^j(Λ) →f H^j(Λ/ℐ) →δ H^{j+1}(ℐ) → …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LesCheck {
  pub q: usize,
  pub j: i32,
  pub ideal: usize,
  pub lambda: usize,
  pub quotient: usize,
  pub a: usize,
  pub f: usize,
  /// `dim H^j(Λ/ℐ) - rank f`, the rank forced on `δ`.
  pub delta: usize,
  pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PageComparisonReport {
  pub ring: CoefficientRing,
  pub n: usize,
  /// `E^{∂Y}²_{p,q} = H^{n-1-p}(S_Q; Λ^{(q)})`.
  pub e_y: Vec<TableEntry>,
  /// `E^{∂X}²_{p,q} = H^{n-1-p}(S_Q; (Λ/ℐ)^{(q)})`.
  pub e_x: Vec<TableEntry>,
  pub map_ranks: Vec<TableEntry>,
  pub verdicts: Vec<PageVerdict>,
  pub les: Vec<LesCheck>,
  /// `H^*(S_Q; Λ^{(q)}) = H^*(S_Q) ⊗ Λ^{(q)}` in every degree.
  pub trivial_bundle: bool,
}

impl PageComparisonReport {
  pub fn passed(&self) -> bool {
    self.verdicts.iter().all(|v| v.holds) && self.les.iter().all(|l| l.exact) && self.trivial_bundle
  }
}

pub fn compare_pages<R: Ring>(s: &Arc<SimplicialPoset>, chi: &CharacteristicFunction, ring: &R) -> Result<PageComparisonReport> {
  if !ring.is_field() {
    return Err(Error::Unsupported(format!("page comparison needs field coefficients, got {}", ring.kind())));
  }
  let n = s.max_rank() as i32;
  if chi.lambda != n as usize {
    return Err(Error::InvalidInput(format!("toric data needs λ = n = {n}, got λ = {}", chi.lambda)));
  }
  let t = lambda_and_quotient(s, chi, ring)?;
  let constant = CellularSheaf::constant(s, ring, false).cochain_complex()?;
  let mut e_y = Vec::new();
  let mut e_x = Vec::new();
  let mut map_ranks = Vec::new();
  let mut verdicts = Vec::new();
  let mut les = Vec::new();
  let mut trivial_bundle = true;
  for q in 0..=chi.lambda {
    let cl = t.lambda[q].cochain_complex()?;
    let cx = t.quotient[q].cochain_complex()?;
    let ci = t.ideal.pieces[q].cochain_complex()?;
    let dims = |c: &ChainComplex<R>| -> Result<Vec<usize>> { (0..n + 1).map(|j| Ok(c.homology(j)?.free_rank)).collect() };
    let (hl, hx, hi) = (dims(&cl)?, dims(&cx)?, dims(&ci)?);
    let mut a = Vec::new();
    let mut f = Vec::new();
    for j in 0..=n {
      let fj = cochain_map(s, ring, &t.lambda[q], &t.quotient[q], &t.projection[q], j);
      f.push(induced_rank(ring, &cl, &cx, &fj, j));
      let aj = cochain_map(s, ring, &t.ideal.pieces[q], &t.lambda[q], &t.inclusion[q], j);
      a.push(induced_rank(ring, &ci, &cl, &aj, j));
      trivial_bundle &= hl[j as usize] == constant.homology(j)?.free_rank * binomial(n as usize, q);
    }
    for j in 0..n {
      let ju = j as usize;
      let p = n - 1 - j;
      let qi = q as i32;
      if hl[ju] > 0 {
        e_y.push(TableEntry { p, q: qi, rank: hl[ju] });
      }
      if hx[ju] > 0 {
        e_x.push(TableEntry { p, q: qi, rank: hx[ju] });
      }
      if f[ju] > 0 {
        map_ranks.push(TableEntry { p, q: qi, rank: f[ju] });
      }
      let expectation = match p.cmp(&qi) {
        std::cmp::Ordering::Greater => Some(Expectation::Isomorphism),
        std::cmp::Ordering::Equal => Some(Expectation::Injective),
        std::cmp::Ordering::Less => None,
      };
      if let Some(expectation) = expectation {
        let holds = match expectation {
          Expectation::Isomorphism => f[ju] == hl[ju] && f[ju] == hx[ju],
          Expectation::Injective => f[ju] == hl[ju],
        };
        verdicts.push(PageVerdict { p, q: qi, expectation, source: hl[ju], target: hx[ju], map_rank: f[ju], holds });
      }
    }
    for j in 0..n {
      let ju = j as usize;
      let delta = hx[ju] - f[ju].min(hx[ju]);
      let before = if j == 0 { 0 } else { hx[ju - 1] - f[ju - 1] };
      let exact = hl[ju] == a[ju] + f[ju] && hi[ju] == before + a[ju] && hi[ju + 1] == delta + a[ju + 1];
      les.push(LesCheck { q, j, ideal: hi[ju], lambda: hl[ju], quotient: hx[ju], a: a[ju], f: f[ju], delta, exact });
    }
  }
  Ok(PageComparisonReport { ring: ring.kind(), n: n as usize, e_y, e_x, map_ranks, verdicts, les, trivial_bundle })
}

/// Element ids of `S_Q` whose quotient `(Λ/ℐ)(I)` has the expected rank `C(n - |I|, q)`.
pub fn quotient_rank_defects<R: Ring>(s: &SimplicialPoset, t: &ToricSheaves<R>) -> Vec<(ElementId, usize)> {
  let n = t.lambda.len() - 1;
  let mut out = Vec::new();
  for (q, quo) in t.quotient.iter().enumerate() {
    for i in 1..s.len() {
      if quo.rank(i) != binomial(n - s.rank(i), q) {
        out.push((i, q));
      }
    }
  }
  out
}
