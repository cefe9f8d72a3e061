//! Finite simplicial posets, their links and barycentric subdivisions.
//!
//! Elements carry stable integer ids. Id `0` is always the minimal element
//! `0̂`. Every other element stores its sorted vertex list and, for each
//! vertex, the codimension-one face omitting it. The incidence number of
//! `I <₁ J` is `(-1)^k` where `k` is the position of the omitted vertex in
//! the vertex list of `J`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ElementId = usize;
pub type Vertex = i64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Element {
  pub rank: usize,
  pub vertices: Vec<Vertex>,
  /// `faces[k]` is the face omitting `vertices[k]`.
  pub faces: Vec<ElementId>,
}

/// One cell of a [`SimplicialPoset::from_cells`] description. `faces` are
/// indices into the cell list; leave it empty to resolve faces by vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
  pub vertices: Vec<Vertex>,
  #[serde(default)]
  pub faces: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SimplicialPoset {
  elements: Vec<Element>,
  cofaces: Vec<Vec<ElementId>>,
  lower: Vec<Vec<ElementId>>,
}

impl SimplicialPoset {
  /// All subsets of the given facets, ordered by inclusion.
  pub fn from_facets(facets: &[Vec<Vertex>]) -> Result<Self> {
    if facets.is_empty() {
      return Err(Error::InvalidInput("empty facet list".into()));
    }
    let mut all: BTreeSet<(usize, Vec<Vertex>)> = BTreeSet::new();
    for f in facets {
      let mut f = f.clone();
      f.sort_unstable();
      if f.is_empty() {
        return Err(Error::InvalidInput("empty facet".into()));
      }
      if f.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput(format!("facet {f:?} repeats a vertex")));
      }
      if f.len() > 24 {
        return Err(Error::InvalidInput(format!("facet with {} vertices is too large", f.len())));
      }
      for mask in 0u32..(1 << f.len()) {
        let sub: Vec<Vertex> = (0..f.len()).filter(|&k| mask >> k & 1 == 1).map(|k| f[k]).collect();
        all.insert((sub.len(), sub));
      }
    }
    let mut index: HashMap<Vec<Vertex>, ElementId> = HashMap::with_capacity(all.len());
    let mut elements = Vec::with_capacity(all.len());
    for (rank, vs) in all {
      let faces = (0..rank)
        .map(|k| {
          let mut f = vs.clone();
          f.remove(k);
          index[&f]
        })
        .collect();
      let faces = if rank == 0 { vec![] } else { faces };
      index.insert(vs.clone(), elements.len());
      elements.push(Element { rank, vertices: vs, faces });
    }
    Ok(Self::assemble(elements))
  }

  /// Simplicial cells with explicit face assignments. Cell `i` becomes element `i + 1`.
  pub fn from_cells(cells: &[CellSpec]) -> Result<Self> {
    if cells.is_empty() {
      return Err(Error::InvalidInput("empty cell list".into()));
    }
    let mut elements = vec![Element { rank: 0, vertices: vec![], faces: vec![] }];
    let mut atoms: HashMap<Vertex, ElementId> = HashMap::new();
    for (i, cell) in cells.iter().enumerate() {
      let mut vs = cell.vertices.clone();
      vs.sort_unstable();
      if vs.is_empty() {
        return Err(Error::InvalidInput(format!("cell {i} has no vertices")));
      }
      if vs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput(format!("cell {i} repeats a vertex")));
      }
      let faces = if vs.len() == 1 {
        if atoms.insert(vs[0], i + 1).is_some() {
          return Err(Error::InvalidInput(format!("vertex {} declared twice", vs[0])));
        }
        vec![0]
      } else if cell.faces.is_empty() {
        Self::resolve_faces(&elements, i, &vs)?
      } else {
        Self::assigned_faces(&elements, i, &vs, &cell.faces)?
      };
      elements.push(Element { rank: vs.len(), vertices: vs, faces });
    }
    let poset = Self::assemble(elements);
    for id in 1..poset.len() {
      poset.check_boolean(id).map_err(|m| Error::InvalidInput(format!("lower ideal not boolean: {m}")))?;
    }
    Ok(poset)
  }

  fn resolve_faces(elements: &[Element], i: usize, vs: &[Vertex]) -> Result<Vec<ElementId>> {
    (0..vs.len())
      .map(|k| {
        let mut f = vs.to_vec();
        f.remove(k);
        let mut hits = elements.iter().enumerate().filter(|(_, e)| e.vertices == f);
        match (hits.next(), hits.next()) {
          (Some((id, _)), None) => Ok(id),
          (None, _) => Err(Error::InvalidInput(format!("cell {i}: no declared face with vertices {f:?}"))),
          _ => Err(Error::InvalidInput(format!("cell {i}: face {f:?} is ambiguous, list faces explicitly"))),
        }
      })
      .collect()
  }

  fn assigned_faces(elements: &[Element], i: usize, vs: &[Vertex], assigned: &[usize]) -> Result<Vec<ElementId>> {
    if assigned.len() != vs.len() {
      return Err(Error::InvalidInput(format!(
        "cell {i} has {} vertices but {} faces",
        vs.len(),
        assigned.len()
      )));
    }
    let mut faces = vec![usize::MAX; vs.len()];
    for &a in assigned {
      if a >= i {
        return Err(Error::InvalidInput(format!("cell {i}: face {a} is not declared before it")));
      }
      let f = &elements[a + 1].vertices;
      let missing: Vec<usize> = (0..vs.len()).filter(|&k| !f.contains(&vs[k])).collect();
      if f.len() + 1 != vs.len() || missing.len() != 1 || f.iter().any(|v| !vs.contains(v)) {
        return Err(Error::InvalidInput(format!("cell {i}: face {a} has inconsistent vertex set {f:?}")));
      }
      let k = missing[0];
      if faces[k] != usize::MAX {
        return Err(Error::InvalidInput(format!(
          "lower ideal not boolean: cell {i} has two faces omitting vertex {}",
          vs[k]
        )));
      }
      faces[k] = a + 1;
    }
    Ok(faces)
  }

  /// Builds a poset without checking the boolean lattice condition, so that
  /// [`validate`] can report defects. Entry `i` becomes element `i + 1`;
  /// faces of rank-one elements are implicitly `[0]`.
  pub fn from_raw(cells: &[(Vec<Vertex>, Vec<ElementId>)]) -> Result<Self> {
    let mut elements = vec![Element { rank: 0, vertices: vec![], faces: vec![] }];
    for (i, (vs, faces)) in cells.iter().enumerate() {
      let id = i + 1;
      let mut vs = vs.clone();
      vs.sort_unstable();
      if vs.is_empty() {
        return Err(Error::InvalidInput(format!("element {id} has no vertices")));
      }
      let faces = if vs.len() == 1 { vec![0] } else { faces.clone() };
      for &f in &faces {
        let ok = f < id && (f == 0 && vs.len() == 1 || f > 0 && cells[f - 1].0.len() + 1 == vs.len());
        if !ok {
          return Err(Error::InvalidInput(format!("element {id}: face {f} has the wrong rank or is undeclared")));
        }
      }
      elements.push(Element { rank: vs.len(), vertices: vs, faces });
    }
    Ok(Self::assemble(elements))
  }

  fn assemble(elements: Vec<Element>) -> Self {
    let n = elements.len();
    let mut cofaces = vec![Vec::new(); n];
    for (id, e) in elements.iter().enumerate() {
      for &f in &e.faces {
        if !cofaces[f].contains(&id) {
          cofaces[f].push(id);
        }
      }
    }
    let mut order: Vec<ElementId> = (0..n).collect();
    order.sort_by_key(|&i| elements[i].rank);
    let mut lower: Vec<Vec<ElementId>> = vec![Vec::new(); n];
    for &id in &order {
      let mut set: BTreeSet<ElementId> = BTreeSet::from([id, 0]);
      for &f in &elements[id].faces {
        set.extend(lower[f].iter().copied());
      }
      lower[id] = set.into_iter().collect();
    }
    SimplicialPoset { elements, cofaces, lower }
  }

  pub fn len(&self) -> usize { self.elements.len() }

  pub fn is_empty(&self) -> bool { self.elements.len() <= 1 }

  pub fn bottom(&self) -> ElementId { 0 }

  pub fn element(&self, id: ElementId) -> &Element { &self.elements[id] }

  pub fn elements(&self) -> &[Element] { &self.elements }

  pub fn rank(&self, id: ElementId) -> usize { self.elements[id].rank }

  /// `dim I = |I| - 1`.
  pub fn dim(&self, id: ElementId) -> i32 { self.elements[id].rank as i32 - 1 }

  pub fn vertices(&self, id: ElementId) -> &[Vertex] { &self.elements[id].vertices }

  pub fn faces(&self, id: ElementId) -> &[ElementId] { &self.elements[id].faces }

  pub fn cofaces(&self, id: ElementId) -> &[ElementId] { &self.cofaces[id] }

  /// The lower ideal `{J ≤ I}`, sorted by id.
  pub fn lower_ideal(&self, id: ElementId) -> &[ElementId] { &self.lower[id] }

  pub fn leq(&self, a: ElementId, b: ElementId) -> bool { self.lower[b].binary_search(&a).is_ok() }

  pub fn contains(&self, id: ElementId) -> bool { id < self.elements.len() }

  /// Largest rank `n`; the poset has dimension `n - 1`.
  pub fn max_rank(&self) -> usize { self.elements.iter().map(|e| e.rank).max().unwrap_or(0) }

  pub fn dimension(&self) -> i32 { self.max_rank() as i32 - 1 }

  pub fn with_rank(&self, rank: usize) -> Vec<ElementId> { (0..self.len()).filter(|&i| self.rank(i) == rank).collect() }

  pub fn with_dim(&self, dim: i32) -> Vec<ElementId> {
    if dim < -1 {
      return vec![];
    }
    self.with_rank((dim + 1) as usize)
  }

  pub fn maximal_elements(&self) -> Vec<ElementId> { (0..self.len()).filter(|&i| self.cofaces[i].is_empty()).collect() }

  /// All maximal elements have the same rank.
  pub fn is_pure(&self) -> bool {
    let n = self.max_rank();
    self.maximal_elements().iter().all(|&m| self.rank(m) == n)
  }

  /// Distinct non-minimal elements have distinct vertex sets.
  pub fn is_simplicial_complex(&self) -> bool {
    let sets: BTreeSet<&[Vertex]> = self.elements.iter().map(|e| e.vertices.as_slice()).collect();
    sets.len() == self.elements.len()
  }

  pub fn vertex_labels(&self) -> Vec<Vertex> {
    let mut v: Vec<Vertex> = self.with_rank(1).iter().map(|&a| self.vertices(a)[0]).collect();
    v.sort_unstable();
    v
  }

  /// The rank-one element with the given vertex label.
  pub fn atom(&self, v: Vertex) -> Option<ElementId> { self.with_rank(1).into_iter().find(|&a| self.vertices(a)[0] == v) }

  /// Every covering pair `(I, J)` with `I <₁ J`, including `0̂ <₁ vertex`.
  pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
    let mut out = Vec::new();
    for (j, e) in self.elements.iter().enumerate() {
      for &i in &e.faces {
        out.push((i, j));
      }
    }
    out
  }

  /// `[J : I]` for `I <₁ J`.
  pub fn incidence_sign(&self, j: ElementId, i: ElementId) -> Result<i32> {
    if !self.contains(j) || !self.contains(i) {
      return Err(Error::InvalidInput(format!("unknown element in pair ({j}, {i})")));
    }
    match self.faces(j).iter().position(|&f| f == i) {
      Some(k) => Ok(if k % 2 == 0 { 1 } else { -1 }),
      None => Err(Error::InvalidInput(format!("{i} is not a codimension-one face of {j}"))),
    }
  }

  /// Signs of all faces of `j`, aligned with [`Self::faces`].
  pub fn face_signs(&self, j: ElementId) -> impl Iterator<Item = (ElementId, i32)> + '_ {
    self.faces(j).iter().enumerate().map(|(k, &f)| (f, if k % 2 == 0 { 1 } else { -1 }))
  }

  fn check_boolean(&self, id: ElementId) -> std::result::Result<(), String> {
    let e = &self.elements[id];
    if e.faces.len() != e.rank {
      return Err(format!("element {id} of rank {} has {} faces", e.rank, e.faces.len()));
    }
    for (k, &f) in e.faces.iter().enumerate() {
      let mut expect = e.vertices.clone();
      expect.remove(k);
      if self.vertices(f) != expect.as_slice() {
        return Err(format!("face {f} of element {id} has vertices {:?}, expected {expect:?}", self.vertices(f)));
      }
    }
    let lower = &self.lower[id];
    if e.rank >= usize::BITS as usize || lower.len() != 1 << e.rank {
      return Err(format!("element {id} of rank {} has {} elements below it", e.rank, lower.len()));
    }
    let sets: BTreeSet<&[Vertex]> = lower.iter().map(|&l| self.vertices(l)).collect();
    if sets.len() != lower.len() {
      return Err(format!("two elements below {id} share a vertex set"));
    }
    Ok(())
  }

  /// Open star `{J ≥ I}` and the link as a standalone poset.
  pub fn star_and_link(&self, i: ElementId) -> Result<StarLink> {
    if !self.contains(i) {
      return Err(Error::InvalidInput(format!("unknown element {i}")));
    }
    let star: Vec<ElementId> = (0..self.len()).filter(|&j| self.leq(i, j)).collect();
    if i == self.bottom() {
      return Ok(StarLink { star: star.clone(), link: self.clone(), embedding: star });
    }
    let mut embedding = star.clone();
    embedding.sort_by_key(|&j| (self.rank(j), j));
    let local: HashMap<ElementId, ElementId> = embedding.iter().enumerate().map(|(l, &j)| (j, l)).collect();
    let base = self.rank(i);
    let mut elements = Vec::with_capacity(embedding.len());
    for &j in &embedding {
      // link vertices of j are its atoms above i, labelled by their ids in S
      let mut atoms: Vec<ElementId> =
        self.lower[j].iter().copied().filter(|&a| self.rank(a) == base + 1 && self.leq(i, a)).collect();
      atoms.sort_unstable();
      let mut faces = Vec::with_capacity(atoms.len());
      for &a in &atoms {
        let f = self
          .faces(j)
          .iter()
          .copied()
          .find(|&f| self.leq(i, f) && !self.leq(a, f))
          .ok_or_else(|| Error::InvalidInput(format!("poset is not boolean below element {j}")))?;
        faces.push(local[&f]);
      }
      let vertices: Vec<Vertex> = atoms.iter().map(|&a| a as Vertex).collect();
      elements.push(Element { rank: self.rank(j) - base, vertices, faces });
    }
    Ok(StarLink { star, link: Self::assemble(elements), embedding })
  }

  /// Barycentric subdivision `S'`: the order complex of `S ∖ {0̂}`.
  pub fn subdivide(&self) -> Result<Subdivision> {
    if !self.is_pure() {
      return Err(Error::InvalidInput("subdivision needs a pure poset".into()));
    }
    if self.is_empty() {
      return Err(Error::InvalidInput("subdivision of an empty poset".into()));
    }
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<ElementId>> = self.with_rank(1).into_iter().map(|a| vec![a]).collect();
    while let Some(c) = stack.pop() {
      let top = *c.last().expect("nonempty chain");
      if self.cofaces[top].is_empty() {
        chains.push(c.iter().map(|&x| x as Vertex).collect::<Vec<_>>());
        continue;
      }
      for &u in &self.cofaces[top] {
        let mut next = c.clone();
        next.push(u);
        stack.push(next);
      }
    }
    let complex = SimplicialPoset::from_facets(&chains)?;
    let mut chain_of = Vec::with_capacity(complex.len());
    for id in 0..complex.len() {
      let mut c: Vec<ElementId> = complex.vertices(id).iter().map(|&v| v as ElementId).collect();
      c.sort_by_key(|&x| (self.rank(x), x));
      chain_of.push(c);
    }
    Ok(Subdivision { complex, chain_of, top_rank: self.max_rank(), base_len: self.len() })
  }

  /// Vertex lists of the maximal elements, sorted.
  pub fn facet_lists(&self) -> Vec<Vec<Vertex>> {
    let mut f: Vec<Vec<Vertex>> = self.maximal_elements().iter().map(|&m| self.vertices(m).to_vec()).collect();
    f.sort();
    f
  }
}

/// Open star of an element and its link.
#[derive(Debug, Clone)]
pub struct StarLink {
  /// Elements `J ≥ I` in increasing id order.
  pub star: Vec<ElementId>,
  /// `lk I`: minimal element `I`; its vertices are labelled by the ids of the atoms of the star.
  pub link: SimplicialPoset,
  /// `embedding[k]` is the element of the original poset matching link element `k`.
  pub embedding: Vec<ElementId>,
}

/// Result of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
  pub element_count: usize,
  pub counts_by_rank: Vec<usize>,
  pub dimension: i32,
  pub unique_minimum: bool,
  pub boolean_lower_ideals: bool,
  pub sign_square_identity: bool,
  pub pure: bool,
  pub connected: bool,
  pub simplicial_complex: bool,
  pub failures: Vec<String>,
}

impl ValidationReport {
  /// The structural conditions of a simplicial poset hold.
  pub fn is_valid(&self) -> bool { self.unique_minimum && self.boolean_lower_ideals && self.sign_square_identity }
}

pub fn validate(s: &SimplicialPoset) -> ValidationReport {
  let mut failures = Vec::new();
  let minima = s.with_rank(0);
  let unique_minimum = minima == [0];
  if !unique_minimum {
    failures.push(format!("expected one minimal element, found {}", minima.len()));
  }
  let mut labels = BTreeSet::new();
  for a in s.with_rank(1) {
    if !labels.insert(s.vertices(a)[0]) {
      failures.push(format!("vertex {} labels more than one element", s.vertices(a)[0]));
    }
  }
  let mut boolean = labels.len() == s.with_rank(1).len();
  for id in 1..s.len() {
    if let Err(m) = s.check_boolean(id) {
      boolean = false;
      failures.push(m);
    }
  }
  let mut signs = true;
  for k in 0..s.len() {
    for i in s.lower_ideal(k).iter().copied().filter(|&i| s.rank(i) + 2 == s.rank(k)) {
      let mids: Vec<ElementId> = s.faces(k).iter().copied().filter(|&j| s.faces(j).contains(&i)).collect();
      if mids.len() != 2 {
        signs = false;
        failures.push(format!("interval [{i}, {k}] has {} middle elements", mids.len()));
        continue;
      }
      let total: i32 = mids
        .iter()
        .map(|&j| s.incidence_sign(k, j).unwrap_or(0) * s.incidence_sign(j, i).unwrap_or(0))
        .sum();
      if total != 0 {
        signs = false;
        failures.push(format!("sign square identity fails on [{i}, {k}]"));
      }
    }
  }
  let connected = is_connected(s);
  let mut counts_by_rank = vec![0; s.max_rank() + 1];
  for e in s.elements() {
    counts_by_rank[e.rank] += 1;
  }
  ValidationReport {
    element_count: s.len(),
    counts_by_rank,
    dimension: s.dimension(),
    unique_minimum,
    boolean_lower_ideals: boolean,
    sign_square_identity: signs,
    pure: s.is_pure(),
    connected,
    simplicial_complex: s.is_simplicial_complex(),
    failures,
  }
}

/// Connectivity of `S ∖ {0̂}` under comparability (equivalently of `S'`).
fn is_connected(s: &SimplicialPoset) -> bool {
  let n = s.len();
  if n <= 1 {
    return false;
  }
  let mut parent: Vec<usize> = (0..n).collect();
  fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
      r = p[r];
    }
    let mut y = x;
    while p[y] != r {
      let next = p[y];
      p[y] = r;
      y = next;
    }
    r
  }
  for (i, j) in s.covers() {
    if i != 0 {
      let (a, b) = (find(&mut parent, i), find(&mut parent, j));
      parent[a] = b;
    }
  }
  let root = find(&mut parent, 1);
  (1..n).all(|x| find(&mut parent, x) == root)
}

/// Barycentric subdivision with its dual-face structure.
#[derive(Debug, Clone)]
pub struct Subdivision {
  complex: SimplicialPoset,
  chain_of: Vec<Vec<ElementId>>,
  top_rank: usize,
  base_len: usize,
}

/// A dual face `G_I` as lists of simplices of `S'` (the empty simplex excluded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualFace {
  pub cells: Vec<ElementId>,
  pub boundary: Vec<ElementId>,
  /// `G_I ∖ ∂G_I`: chains whose least element is `I`.
  pub interior: Vec<ElementId>,
  pub dim: i32,
}

impl Subdivision {
  /// `S'` as a simplicial complex whose vertices are labelled by element ids of `S`.
  pub fn complex(&self) -> &SimplicialPoset { &self.complex }

  /// The chain `I₀ < … < I_k` of a simplex of `S'`.
  pub fn chain_of(&self, simplex: ElementId) -> &[ElementId] { &self.chain_of[simplex] }

  pub fn min_of(&self, simplex: ElementId) -> Option<ElementId> { self.chain_of[simplex].first().copied() }

  pub fn max_of(&self, simplex: ElementId) -> Option<ElementId> { self.chain_of[simplex].last().copied() }

  /// `n`, the rank of the maximal elements of `S`.
  pub fn top_rank(&self) -> usize { self.top_rank }

  pub fn base_len(&self) -> usize { self.base_len }

  /// Coskeleton level of a nonempty simplex, `dim G_{I₀} = n - |I₀|`.
  pub fn level(&self, simplex: ElementId, base: &SimplicialPoset) -> Option<i32> {
    self.min_of(simplex).map(|m| self.top_rank as i32 - base.rank(m) as i32)
  }

  pub fn dual_face(&self, base: &SimplicialPoset, i: ElementId) -> Result<DualFace> {
    if i == 0 || i >= self.base_len {
      return Err(Error::InvalidInput(format!("dual faces are defined for non-minimal elements, got {i}")));
    }
    let mut cells = Vec::new();
    let mut boundary = Vec::new();
    let mut interior = Vec::new();
    for sx in 1..self.complex.len() {
      let m = self.chain_of[sx][0];
      if m == i {
        cells.push(sx);
        interior.push(sx);
      } else if base.leq(i, m) {
        cells.push(sx);
        boundary.push(sx);
      }
    }
    Ok(DualFace { cells, boundary, interior, dim: self.top_rank as i32 - base.rank(i) as i32 })
  }

  /// `S_p`: union of the dual faces of dimension at most `p`.
  pub fn coskeleton_level(&self, base: &SimplicialPoset, p: i32) -> Vec<ElementId> {
    (1..self.complex.len()).filter(|&sx| self.level(sx, base).is_some_and(|l| l <= p)).collect()
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn triangle_boundary() -> SimplicialPoset { SimplicialPoset::from_facets(&[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap() }

  #[test]
  fn facets_of_triangle_boundary() {
    let s = triangle_boundary();
    assert_eq!(s.len(), 7);
    assert!(s.is_pure());
    assert_eq!(s.dimension(), 1);
    let r = validate(&s);
    assert!(r.is_valid() && r.connected && r.pure, "{r:?}");
  }

  #[test]
  fn full_simplex_is_boolean() {
    let s = SimplicialPoset::from_facets(&[vec![1, 2, 3]]).unwrap();
    assert_eq!(s.len(), 8);
    assert!(validate(&s).is_valid());
  }

  #[test]
  fn empty_input_is_rejected() {
    assert!(SimplicialPoset::from_facets(&[]).is_err());
    assert!(SimplicialPoset::from_facets(&[vec![1, 1]]).is_err());
  }

  #[test]
  fn incidence_signs_follow_omitted_position() {
    let s = SimplicialPoset::from_facets(&[vec![1, 2, 3]]).unwrap();
    let top = s.with_rank(3)[0];
    let omit = |v: Vertex| s.faces(top).iter().copied().find(|&f| !s.vertices(f).contains(&v)).unwrap();
    assert_eq!(s.incidence_sign(top, omit(2)).unwrap(), -1);
    assert_eq!(s.incidence_sign(top, omit(1)).unwrap(), 1);
    assert!(s.incidence_sign(top, s.atom(1).unwrap()).is_err());
  }

  fn circle_two_edges() -> SimplicialPoset {
    let cells = [
      CellSpec { vertices: vec![1], faces: vec![] },
      CellSpec { vertices: vec![2], faces: vec![] },
      CellSpec { vertices: vec![1, 2], faces: vec![0, 1] },
      CellSpec { vertices: vec![1, 2], faces: vec![0, 1] },
    ];
    SimplicialPoset::from_cells(&cells).unwrap()
  }

  #[test]
  fn two_edge_circle_is_not_a_complex() {
    let s = circle_two_edges();
    assert_eq!(s.len() - 1, 4);
    let r = validate(&s);
    assert!(r.is_valid() && !r.simplicial_complex);
  }

  #[test]
  fn duplicated_face_is_rejected() {
    let cells = [
      CellSpec { vertices: vec![1], faces: vec![] },
      CellSpec { vertices: vec![2], faces: vec![] },
      CellSpec { vertices: vec![3], faces: vec![] },
      CellSpec { vertices: vec![1, 2], faces: vec![] },
      CellSpec { vertices: vec![2, 3], faces: vec![] },
      CellSpec { vertices: vec![1, 3], faces: vec![] },
      CellSpec { vertices: vec![1, 2, 3], faces: vec![3, 3, 4] },
    ];
    let err = SimplicialPoset::from_cells(&cells).unwrap_err();
    assert!(matches!(err, Error::InvalidInput(_)));
  }

  #[test]
  fn inconsistent_face_is_rejected() {
    let cells = [
      CellSpec { vertices: vec![1], faces: vec![] },
      CellSpec { vertices: vec![2], faces: vec![] },
      CellSpec { vertices: vec![3], faces: vec![] },
      CellSpec { vertices: vec![1, 3], faces: vec![0, 1] },
    ];
    assert!(SimplicialPoset::from_cells(&cells).is_err());
  }

  #[test]
  fn missing_face_fails_validation() {
    let s = SimplicialPoset::from_raw(&[
      (vec![1], vec![]),
      (vec![2], vec![]),
      (vec![3], vec![]),
      (vec![1, 2], vec![2, 1]),
      (vec![2, 3], vec![3, 2]),
      (vec![1, 2, 3], vec![5, 4]),
    ])
    .unwrap();
    let r = validate(&s);
    assert!(!r.boolean_lower_ideals);
    assert!(!r.is_valid());
  }

  #[test]
  fn vertex_link_of_triangle_is_zero_sphere() {
    let s = triangle_boundary();
    let v = s.atom(1).unwrap();
    let sl = s.star_and_link(v).unwrap();
    assert_eq!(sl.star.len(), 3);
    assert_eq!(sl.link.len(), 3);
    assert_eq!(sl.link.with_rank(1).len(), 2);
    assert!(validate(&sl.link).is_valid());
    let whole = s.star_and_link(0).unwrap();
    assert_eq!(whole.link.len(), s.len());
  }

  #[test]
  fn subdivision_of_triangle_is_hexagon() {
    let s = triangle_boundary();
    let sd = s.subdivide().unwrap();
    let c = sd.complex();
    assert_eq!(c.with_rank(1).len(), 6);
    assert_eq!(c.with_rank(2).len(), 6);
    let g = sd.dual_face(&s, s.atom(1).unwrap()).unwrap();
    assert_eq!(g.dim, 1);
    assert_eq!(g.cells.iter().filter(|&&x| c.rank(x) == 2).count(), 2);
    assert_eq!(g.boundary.len(), 2);
    assert!(g.boundary.iter().all(|&x| c.rank(x) == 1));
  }

  #[test]
  fn dual_face_of_top_cell_is_a_point() {
    let s = SimplicialPoset::from_facets(&[vec![1, 2]]).unwrap();
    let sd = s.subdivide().unwrap();
    let e = s.with_rank(2)[0];
    let g = sd.dual_face(&s, e).unwrap();
    assert_eq!(g.cells.len(), 1);
    assert!(g.boundary.is_empty());
    assert_eq!(g.dim, 0);
  }

  #[test]
  fn non_pure_subdivision_is_rejected() {
    let s = SimplicialPoset::from_facets(&[vec![1, 2, 3], vec![3, 4]]).unwrap();
    assert!(!s.is_pure());
    assert!(s.subdivide().is_err());
  }
}
