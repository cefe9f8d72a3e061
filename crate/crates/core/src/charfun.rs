//! Exterior algebras, characteristic functions and the ideal (co)sheaves they define.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::{echelon, smith, ChainComplex, Direction, Echelon, Matrix, Ring};
use crate::poset::{ElementId, SimplicialPoset, Subdivision, Vertex};
use crate::sheaf::{CellularCosheaf, CellularSheaf};

/// `Λ[k^λ]` with the monomial basis `e_A`, `A ⊆ {0..λ-1}`, ordered by size then lexicographically.
#[derive(Debug, Clone)]
pub struct ExteriorAlgebra {
  lambda: usize,
  grades: Vec<Vec<u32>>,
  index: HashMap<u32, usize>,
}

impl ExteriorAlgebra {
  pub fn new(lambda: usize) -> Result<Self> {
    if lambda > 20 {
      return Err(Error::InvalidInput(format!("exterior algebra of rank {lambda} is too large")));
    }
    let mut grades = vec![Vec::new(); lambda + 1];
    for mask in 0u32..(1 << lambda) {
      grades[mask.count_ones() as usize].push(mask);
    }
    for g in grades.iter_mut() {
      g.sort_by_key(|&m| Self::members_of(m));
    }
    let index = grades.iter().flat_map(|g| g.iter().enumerate().map(|(p, &m)| (m, p))).collect();
    Ok(ExteriorAlgebra { lambda, grades, index })
  }

  fn members_of(mask: u32) -> Vec<u32> { (0..32).filter(|&i| mask >> i & 1 == 1).collect() }

  pub fn lambda(&self) -> usize { self.lambda }

  pub fn dim(&self) -> usize { 1 << self.lambda }

  pub fn grade_dim(&self, q: usize) -> usize { self.grades.get(q).map_or(0, |g| g.len()) }

  /// Monomials of degree `q` in basis order.
  pub fn basis(&self, q: usize) -> &[u32] { &self.grades[q] }

  /// Position of `e_A` inside its grade.
  pub fn position(&self, mask: u32) -> usize { self.index[&mask] }

  /// `e_A ∧ e_B = sign · e_{A∪B}`, or `None` when `A` and `B` meet.
  pub fn wedge_monomials(a: u32, b: u32) -> Option<(i32, u32)> {
    if a & b != 0 {
      return None;
    }
    let mut inversions = 0;
    for j in Self::members_of(b) {
      inversions += (a >> (j + 1)).count_ones();
    }
    Some((if inversions % 2 == 0 { 1 } else { -1 }, a | b))
  }

  /// Wedge of homogeneous elements of degrees `p` and `r`.
  pub fn wedge<R: Ring>(&self, ring: &R, p: usize, x: &[R::Elem], r: usize, y: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); self.grade_dim(p + r)];
    if p + r > self.lambda {
      return out;
    }
    for (i, &a) in self.grades[p].iter().enumerate() {
      if ring.is_zero(&x[i]) {
        continue;
      }
      for (j, &b) in self.grades[r].iter().enumerate() {
        if ring.is_zero(&y[j]) {
          continue;
        }
        if let Some((sign, m)) = Self::wedge_monomials(a, b) {
          let t = ring.mul(&x[i], &y[j]);
          let pos = self.index[&m];
          out[pos] = if sign > 0 { ring.add(&out[pos], &t) } else { ring.sub(&out[pos], &t) };
        }
      }
    }
    out
  }

  /// Linear form with integer coordinates as a degree-one element.
  pub fn linear_form<R: Ring>(&self, ring: &R, omega: &[i64]) -> Vec<R::Elem> {
    self.grades[1].iter().map(|&m| ring.from_i64(omega[m.trailing_zeros() as usize])).collect()
  }

  pub fn monomial<R: Ring>(&self, ring: &R, mask: u32) -> Vec<R::Elem> {
    let q = mask.count_ones() as usize;
    let mut v = vec![ring.zero(); self.grade_dim(q)];
    v[self.index[&mask]] = ring.one();
    v
  }
}

/// Vertex-indexed integer vectors `ω_i ∈ Z^λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicFunction {
  pub lambda: usize,
  pub omega: BTreeMap<Vertex, Vec<i64>>,
}

/// Outcome of the star condition test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarCondition {
  pub holds: bool,
  pub witness: Option<StarWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarWitness {
  pub element: ElementId,
  pub vertices: Vec<Vertex>,
  pub reason: String,
}

impl CharacteristicFunction {
  pub fn new(lambda: usize, omega: BTreeMap<Vertex, Vec<i64>>) -> Result<Self> {
    if let Some((v, w)) = omega.iter().find(|(_, w)| w.len() != lambda) {
      return Err(Error::InvalidInput(format!("vector of vertex {v} has length {}, expected {lambda}", w.len())));
    }
    Ok(CharacteristicFunction { lambda, omega })
  }

  pub fn from_pairs(lambda: usize, pairs: &[(Vertex, Vec<i64>)]) -> Result<Self> { Self::new(lambda, pairs.iter().cloned().collect()) }

  pub fn vector(&self, v: Vertex) -> Result<&[i64]> {
    self.omega.get(&v).map(|w| w.as_slice()).ok_or_else(|| Error::InvalidInput(format!("no vector for vertex {v}")))
  }

  /// Every vertex of `s` has a vector and every vector belongs to a vertex of `s`.
  pub fn check_vertices(&self, s: &SimplicialPoset) -> Result<()> {
    let labels = s.vertex_labels();
    for v in &labels {
      self.vector(*v)?;
    }
    if let Some(v) = self.omega.keys().find(|v| labels.binary_search(v).is_err()) {
      return Err(Error::InvalidInput(format!("characteristic function references unknown vertex {v}")));
    }
    Ok(())
  }

  fn matrix_of<R: Ring>(&self, ring: &R, vertices: &[Vertex]) -> Result<Matrix<R::Elem>> {
    let rows = vertices
      .iter()
      .map(|&v| Ok(self.vector(v)?.iter().map(|&x| ring.from_i64(x)).collect()))
      .collect::<Result<Vec<Vec<R::Elem>>>>()?;
    Ok(Matrix::from_rows(self.lambda, rows))
  }

  /// For every simplex the vectors of its vertices are independent and span a
  /// direct summand (over Z: all invariant factors are 1).
  pub fn check_star_condition<R: Ring>(&self, s: &SimplicialPoset, ring: &R) -> Result<StarCondition> {
    self.check_vertices(s)?;
    for i in 1..s.len() {
      let vs = s.vertices(i);
      let fail = |reason: String| StarCondition {
        holds: false,
        witness: Some(StarWitness { element: i, vertices: vs.to_vec(), reason }),
      };
      if vs.len() > self.lambda {
        return Ok(fail(format!("{} vertices exceed λ = {}", vs.len(), self.lambda)));
      }
      let m = self.matrix_of(ring, vs)?;
      let sm = smith(ring, &m, false);
      if sm.rank() < vs.len() {
        return Ok(fail("vectors are linearly dependent".into()));
      }
      if let Some(d) = sm.invariant_factors.iter().find(|d| !ring.is_unit(d)) {
        return Ok(fail(format!("span is not a direct summand (invariant factor {})", ring.to_bigint(d))));
      }
    }
    Ok(StarCondition { holds: true, witness: None })
  }

  pub fn require_star_condition<R: Ring>(&self, s: &SimplicialPoset, ring: &R) -> Result<()> {
    let c = self.check_star_condition(s, ring)?;
    match c.witness {
      None => Ok(()),
      Some(w) => Err(Error::InvalidInput(format!(
        "star condition fails over {} on simplex {:?}: {}",
        ring.kind(),
        w.vertices,
        w.reason
      ))),
    }
  }

  /// `ω_i ↦ g ω_i` for an integer `λ x λ` matrix `g`.
  pub fn transformed(&self, g: &[Vec<i64>]) -> Self {
    let omega = self
      .omega
      .iter()
      .map(|(&v, w)| (v, g.iter().map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum()).collect()))
      .collect();
    CharacteristicFunction { lambda: self.lambda, omega }
  }

  /// Random unimodular change of basis followed by random sign flips of
  /// individual vectors. Both preserve the star condition over every ring.
  pub fn randomized(&self, rng: &mut impl rand::Rng) -> Self {
    let g = random_unimodular(self.lambda, rng);
    let mut out = self.transformed(&g);
    for w in out.omega.values_mut() {
      if rng.gen_bool(0.5) {
        w.iter_mut().for_each(|x| *x = -*x);
      }
    }
    out
  }
}

/// Random element of `GL(λ, Z)` built from elementary operations with small entries.
pub fn random_unimodular(lambda: usize, rng: &mut impl rand::Rng) -> Vec<Vec<i64>> {
  let mut g: Vec<Vec<i64>> = (0..lambda).map(|i| (0..lambda).map(|j| i64::from(i == j)).collect()).collect();
  if lambda == 0 {
    return g;
  }
  let steps = 3 * lambda + rng.gen_range(0..=lambda);
  for _ in 0..steps {
    let i = rng.gen_range(0..lambda);
    let j = rng.gen_range(0..lambda);
    match rng.gen_range(0..4) {
      0 | 1 if i != j => {
        let c = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        let next: Vec<i64> = (0..lambda).map(|k| g[i][k] + c * g[j][k]).collect();
        if next.iter().all(|x| x.abs() <= 40) {
          g[i] = next;
        }
      },
      2 => g.swap(i, j),
      _ => g[i].iter_mut().for_each(|x| *x = -*x),
    }
  }
  g
}

/// A sheaf split by inner degree; `pieces[q]` is the degree-`q` part.
#[derive(Debug, Clone)]
pub struct GradedSheaf<R: Ring> {
  pub pieces: Vec<CellularSheaf<R>>,
  /// `bases[q][I]`: echelon basis of the value inside `Λ^{(q)}`.
  pub bases: Vec<Vec<Echelon<R>>>,
}

#[derive(Debug, Clone)]
pub struct GradedCosheaf<R: Ring> {
  pub pieces: Vec<CellularCosheaf<R>>,
  pub bases: Vec<Vec<Echelon<R>>>,
}

impl<R: Ring> GradedSheaf<R> {
  pub fn piece(&self, q: usize) -> &CellularSheaf<R> { &self.pieces[q] }

  pub fn ranks_at(&self, i: ElementId) -> Vec<usize> { self.pieces.iter().map(|p| p.rank(i)).collect() }
}

impl<R: Ring> GradedCosheaf<R> {
  pub fn piece(&self, q: usize) -> &CellularCosheaf<R> { &self.pieces[q] }

  pub fn ranks_at(&self, i: ElementId) -> Vec<usize> { self.pieces.iter().map(|p| p.rank(i)).collect() }
}

/// Generators `ω_i ∧ e_A` (`i ∈ I`, `|A| = q - 1`) of `ℐ^{(q)}(I)`.
fn ideal_generators<R: Ring>(ext: &ExteriorAlgebra, ring: &R, forms: &[Vec<R::Elem>], q: usize) -> Vec<Vec<R::Elem>> {
  if q == 0 {
    return vec![];
  }
  let mut gens = Vec::new();
  for w in forms {
    for &a in ext.basis(q - 1) {
      gens.push(ext.wedge(ring, 1, w, q - 1, &ext.monomial(ring, a)));
    }
  }
  gens
}

fn forms_of<R: Ring>(ext: &ExteriorAlgebra, ring: &R, chi: &CharacteristicFunction, vs: &[Vertex]) -> Result<Vec<Vec<R::Elem>>> {
  vs.iter().map(|&v| Ok(ext.linear_form(ring, chi.vector(v)?))).collect()
}

/// `π_I = ω_{i₁} ∧ … ∧ ω_{i_k}` in vertex order.
fn volume_form<R: Ring>(ext: &ExteriorAlgebra, ring: &R, forms: &[Vec<R::Elem>]) -> Vec<R::Elem> {
  let mut acc = vec![ring.one()];
  for (p, w) in forms.iter().enumerate() {
    acc = ext.wedge(ring, p, &acc, 1, w);
  }
  acc
}

fn coordinate_matrix<R: Ring>(ring: &R, small: &Echelon<R>, big: &Echelon<R>) -> Result<Matrix<R::Elem>> {
  let cols = small
    .rows()
    .iter()
    .map(|v| big.coordinates(v).ok_or_else(|| Error::InvalidSheaf("ideal is not contained in the larger ideal".into())))
    .collect::<Result<Vec<_>>>()?;
  let mut m = Matrix::zeros(ring, big.rank(), small.rank());
  for (j, c) in cols.into_iter().enumerate() {
    for (i, e) in c.into_iter().enumerate() {
      m.set(i, j, e);
    }
  }
  Ok(m)
}

/// The graded sheaf `ℐ(I) = (ω_i : i ∈ I) ⊆ Λ`, truncated at `0̂`.
pub fn build_ideal_sheaf<R: Ring>(s: &Arc<SimplicialPoset>, chi: &CharacteristicFunction, ring: &R) -> Result<GradedSheaf<R>> {
  chi.require_star_condition(s, ring)?;
  let ext = ExteriorAlgebra::new(chi.lambda)?;
  let mut bases: Vec<Vec<Echelon<R>>> = Vec::with_capacity(chi.lambda + 1);
  for q in 0..=chi.lambda {
    let width = ext.grade_dim(q);
    let mut per = Vec::with_capacity(s.len());
    for i in 0..s.len() {
      let forms = forms_of(&ext, ring, chi, s.vertices(i))?;
      per.push(echelon(ring, ideal_generators(&ext, ring, &forms, q), width));
    }
    bases.push(per);
  }
  let pieces = assemble_pieces(s, ring, &bases, |lower, upper| coordinate_matrix(ring, lower, upper), Kind::Sheaf)?;
  Ok(GradedSheaf { pieces: pieces.0, bases })
}

/// The graded cosheaf `Π̂(I) = (π_I) ⊆ Λ`, with `Π̂(0̂) = 0`.
pub fn build_principal_cosheaf<R: Ring>(
  s: &Arc<SimplicialPoset>,
  chi: &CharacteristicFunction,
  ring: &R,
) -> Result<GradedCosheaf<R>> {
  chi.require_star_condition(s, ring)?;
  let ext = ExteriorAlgebra::new(chi.lambda)?;
  let mut bases: Vec<Vec<Echelon<R>>> = Vec::with_capacity(chi.lambda + 1);
  let pis: Vec<Vec<R::Elem>> =
    (0..s.len()).map(|i| Ok(volume_form(&ext, ring, &forms_of(&ext, ring, chi, s.vertices(i))?))).collect::<Result<_>>()?;
  for q in 0..=chi.lambda {
    let width = ext.grade_dim(q);
    let mut per = Vec::with_capacity(s.len());
    for i in 0..s.len() {
      let k = s.rank(i);
      let gens = if i == s.bottom() || q < k {
        vec![]
      } else {
        ext.basis(q - k).iter().map(|&a| ext.wedge(ring, k, &pis[i], q - k, &ext.monomial(ring, a))).collect()
      };
      per.push(echelon(ring, gens, width));
    }
    bases.push(per);
  }
  let pieces = assemble_pieces(s, ring, &bases, |lower, upper| coordinate_matrix(ring, upper, lower), Kind::Cosheaf)?;
  Ok(GradedCosheaf { pieces: pieces.1, bases })
}

enum Kind {
  Sheaf,
  Cosheaf,
}

#[allow(clippy::type_complexity)]
fn assemble_pieces<R: Ring>(
  s: &Arc<SimplicialPoset>,
  ring: &R,
  bases: &[Vec<Echelon<R>>],
  map: impl Fn(&Echelon<R>, &Echelon<R>) -> Result<Matrix<R::Elem>>,
  kind: Kind,
) -> Result<(Vec<CellularSheaf<R>>, Vec<CellularCosheaf<R>>)> {
  let mut sheaves = Vec::new();
  let mut cosheaves = Vec::new();
  for per in bases {
    let ranks: Vec<usize> = per.iter().map(|e| e.rank()).collect();
    match kind {
      Kind::Sheaf => {
        let mut a = CellularSheaf::with_ranks(s, ring, ranks)?;
        for (i, j) in s.covers() {
          if per[i].rank() > 0 && per[j].rank() > 0 {
            a.set_map(i, j, map(&per[i], &per[j])?)?;
          }
        }
        sheaves.push(a);
      },
      Kind::Cosheaf => {
        let mut a = CellularCosheaf::with_ranks(s, ring, ranks)?;
        for (i, j) in s.covers() {
          if per[i].rank() > 0 && per[j].rank() > 0 {
            a.set_map(i, j, map(&per[i], &per[j])?)?;
          }
        }
        cosheaves.push(a);
      },
    }
  }
  Ok((sheaves, cosheaves))
}

/// The Taylor-like complex `0 ← ℐ(J) ← ⊕_{dim I = 0} Π_I ← ⊕_{dim I = 1} Π_I ← …`
/// over `I ≤ J` in inner degree `q`; `ℐ(J)` sits in degree `-1`.
pub fn taylor_complex_graded<R: Ring>(
  s: &SimplicialPoset,
  j: ElementId,
  ideal: &GradedSheaf<R>,
  pi: &GradedCosheaf<R>,
  q: usize,
) -> Result<ChainComplex<R>> {
  if j == s.bottom() || !s.contains(j) {
    return Err(Error::InvalidInput("the Taylor complex needs a non-minimal element".into()));
  }
  let ring = ideal.pieces[q].ring();
  let below: Vec<ElementId> = s.lower_ideal(j).iter().copied().filter(|&i| i != s.bottom()).collect();
  let pq = &pi.pieces[q];
  let mut offset = HashMap::new();
  let mut totals: BTreeMap<i32, usize> = BTreeMap::new();
  for &i in &below {
    let t = totals.entry(s.dim(i)).or_insert(0);
    offset.insert(i, *t);
    *t += pq.rank(i);
  }
  let mut c = ChainComplex::new(ring, Direction::Chain);
  let ideal_rank = ideal.pieces[q].rank(j);
  c.set_rank(-1, ideal_rank);
  for (&d, &t) in &totals {
    c.set_rank(d, t);
  }
  let ideal_basis = &ideal.bases[q][j];
  let mut eta = Matrix::zeros(ring, ideal_rank, c.rank(0));
  for &v in below.iter().filter(|&&i| s.rank(i) == 1) {
    for (col, x) in pi.bases[q][v].rows().iter().enumerate() {
      let coords = ideal_basis
        .coordinates(x)
        .ok_or_else(|| Error::InvalidComplex("principal ideal of a vertex is not inside the face ideal".into()))?;
      for (row, e) in coords.into_iter().enumerate() {
        eta.set(row, offset[&v] + col, e);
      }
    }
  }
  c.set_differential(0, eta)?;
  for d in 1..=s.dim(j) {
    let mut xi = Matrix::zeros(ring, c.rank(d - 1), c.rank(d));
    for &i in below.iter().filter(|&&i| s.dim(i) == d) {
      for (f, sign) in s.face_signs(i) {
        let block = pq.map(f, i);
        let block = if sign < 0 { block.scale(ring, &ring.neg(&ring.one())) } else { block };
        xi.put_block(offset[&f], offset[&i], &block);
      }
    }
    c.set_differential(d, xi)?;
  }
  c.check()?;
  Ok(c)
}

/// Direct sum over all inner degrees of [`taylor_complex_graded`].
pub fn taylor_complex<R: Ring>(
  s: &SimplicialPoset,
  j: ElementId,
  ideal: &GradedSheaf<R>,
  pi: &GradedCosheaf<R>,
) -> Result<ChainComplex<R>> {
  let parts = (0..ideal.pieces.len()).map(|q| taylor_complex_graded(s, j, ideal, pi, q)).collect::<Result<Vec<_>>>()?;
  direct_sum(&parts)
}

/// Block-diagonal direct sum of chain complexes of the same direction.
pub fn direct_sum<R: Ring>(parts: &[ChainComplex<R>]) -> Result<ChainComplex<R>> {
  let first = parts.first().ok_or_else(|| Error::InvalidComplex("empty direct sum".into()))?;
  let ring = first.ring();
  let dir = first.direction();
  let mut degrees: Vec<i32> = parts.iter().flat_map(|p| p.degrees()).collect();
  degrees.sort_unstable();
  degrees.dedup();
  let mut out = ChainComplex::new(ring, dir);
  for &d in &degrees {
    out.set_rank(d, parts.iter().map(|p| p.rank(d)).sum());
  }
  for &d in &degrees {
    let t = d + dir.step();
    if out.rank(t) == 0 {
      continue;
    }
    let mut m = Matrix::zeros(ring, out.rank(t), out.rank(d));
    let (mut r0, mut c0) = (0, 0);
    for p in parts {
      m.put_block(r0, c0, &p.differential(d));
      r0 += p.rank(t);
      c0 += p.rank(d);
    }
    out.set_differential(d, m)?;
  }
  Ok(out)
}

/// Corefinement `Î` on `S'`: `Î(I₁ < … < I_k) = A(I₁)`; the face dropping
/// `I₁` maps by `A(I₁ ≤ I₂)`, every other face map is the identity.
pub fn corefine<R: Ring>(sd: &Subdivision, complex: &Arc<SimplicialPoset>, a: &CellularSheaf<R>) -> Result<CellularCosheaf<R>> {
  let ring = a.ring();
  let ranks: Vec<usize> = (0..complex.len()).map(|sx| sd.min_of(sx).map_or(0, |m| a.rank(m))).collect();
  let mut out = CellularCosheaf::with_ranks(complex, ring, ranks)?;
  for (tau, sigma) in complex.covers() {
    let (Some(ms), Some(mt)) = (sd.min_of(sigma), sd.min_of(tau)) else { continue };
    if out.rank(sigma) == 0 || out.rank(tau) == 0 {
      continue;
    }
    let m = if ms == mt { Matrix::identity(ring, a.rank(ms)) } else { a.composite(ms, mt)? };
    out.set_map(tau, sigma, m)?;
  }
  Ok(out)
}

/// `∑_{j} C(|I|, j) C(λ - |I|, q - j)` over `j ≥ 1`.
pub fn ideal_rank_formula(face_size: usize, lambda: usize, q: usize) -> usize {
  (1..=face_size.min(q)).map(|j| binomial(face_size, j) * binomial(lambda.saturating_sub(face_size), q - j)).sum()
}

pub fn binomial(n: usize, k: usize) -> usize {
  if k > n {
    return 0;
  }
  let k = k.min(n - k);
  (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
