//! Structure sheaves `ℋ_q(I) = H_{q + dim G_I}(G_I, ∂G_I)` and local homology.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::CellularSheaf;
use crate::error::{Error, Result};
use crate::homalg::{kernel, ChainComplex, Direction, GroupDescriptor, Matrix, QuotientBasis, Ring};
use crate::poset::{ElementId, SimplicialPoset, Subdivision, Vertex};

/// `(element, degree) -> group`.
pub type LocalHomologyTable = BTreeMap<(ElementId, i32), GroupDescriptor>;

/// Chain complex with constant coefficients on the simplices `members` of a
/// simplicial poset, with the boundary projected onto `members`. This is the
/// relative complex `C(K, L)` when `members = K ∖ L` for subcomplexes `L ⊆ K`.
#[allow(clippy::type_complexity)]
pub fn relative_chain_complex<R: Ring>(
  complex: &SimplicialPoset,
  ring: &R,
  members: &[ElementId],
) -> Result<(ChainComplex<R>, BTreeMap<i32, Vec<ElementId>>)> {
  let groups = group_by_dim(complex, members);
  let index = positions(&groups);
  let mut c = ChainComplex::new(ring, Direction::Chain);
  for (&d, g) in &groups {
    c.set_rank(d, g.len());
  }
  for (&d, g) in &groups {
    let Some(lower) = groups.get(&(d - 1)) else { continue };
    let mut m = Matrix::zeros(ring, lower.len(), g.len());
    for (col, &sx) in g.iter().enumerate() {
      for (f, sign) in complex.face_signs(sx) {
        if let Some(&row) = index.get(&f) {
          m.set(row, col, ring.from_i64(sign as i64));
        }
      }
    }
    c.set_differential(d, m)?;
  }
  c.check()?;
  Ok((c, groups))
}

fn group_by_dim(complex: &SimplicialPoset, members: &[ElementId]) -> BTreeMap<i32, Vec<ElementId>> {
  let mut groups: BTreeMap<i32, Vec<ElementId>> = BTreeMap::new();
  for &m in members {
    groups.entry(complex.dim(m)).or_default().push(m);
  }
  for g in groups.values_mut() {
    g.sort_unstable();
  }
  groups
}

fn positions(groups: &BTreeMap<i32, Vec<ElementId>>) -> HashMap<ElementId, usize> {
  groups.values().flat_map(|g| g.iter().enumerate().map(|(p, &x)| (x, p))).collect()
}

/// Homology of `(G_I, ∂G_I)` with explicit representative cycles.
struct DualCellHomology<R: Ring> {
  groups: BTreeMap<i32, Vec<ElementId>>,
  index: HashMap<ElementId, usize>,
  classes: BTreeMap<i32, QuotientBasis<R>>,
}

fn dual_cell_homology<R: Ring>(sd: &Subdivision, base: &SimplicialPoset, ring: &R, i: ElementId) -> Result<DualCellHomology<R>> {
  let face = sd.dual_face(base, i)?;
  let (c, groups) = relative_chain_complex(sd.complex(), ring, &face.interior)?;
  let index = positions(&groups);
  let mut classes = BTreeMap::new();
  for (&d, g) in &groups {
    let cycles = kernel(ring, &c.differential(d));
    let bounds = c.differential(d + 1);
    let boundaries = (0..bounds.cols()).map(|j| bounds.column(j)).collect();
    classes.insert(d, QuotientBasis::new(ring, &cycles, boundaries, g.len()));
  }
  Ok(DualCellHomology { groups, index, classes })
}

/// All structure sheaves `ℋ_q`, `-(n-1) ≤ q ≤ 0`, over a field.
pub fn structure_sheaves<R: Ring>(s: &Arc<SimplicialPoset>, ring: &R) -> Result<BTreeMap<i32, CellularSheaf<R>>> {
  let sd = s.subdivide()?;
  structure_sheaves_on(s, &sd, ring)
}

pub(crate) fn structure_sheaves_on<R: Ring>(
  s: &Arc<SimplicialPoset>,
  sd: &Subdivision,
  ring: &R,
) -> Result<BTreeMap<i32, CellularSheaf<R>>> {
  if !ring.is_field() {
    return Err(Error::Unsupported(format!(
      "structure sheaf maps need field coefficients, got {}; use structure_sheaf_groups",
      ring.kind()
    )));
  }
  let n = s.max_rank() as i32;
  let local: Vec<Option<DualCellHomology<R>>> =
    (0..s.len()).map(|i| (i != s.bottom()).then(|| dual_cell_homology(sd, s, ring, i)).transpose()).collect::<Result<_>>()?;
  let degree = |i: ElementId, q: i32| q + n - s.rank(i) as i32;
  let dim_of = |i: ElementId, q: i32| {
    local[i].as_ref().and_then(|h| h.classes.get(&degree(i, q))).map_or(0, |qb| qb.dim())
  };
  let mut out = BTreeMap::new();
  for q in -(n - 1)..=0 {
    let ranks = (0..s.len()).map(|i| dim_of(i, q)).collect();
    let mut sheaf = CellularSheaf::with_ranks(s, ring, ranks)?;
    for (i, j) in s.covers() {
      if i == s.bottom() || sheaf.rank(i) == 0 || sheaf.rank(j) == 0 {
        continue;
      }
      let (hi, hj) = (local[i].as_ref().expect("non-minimal"), local[j].as_ref().expect("non-minimal"));
      let di = degree(i, q);
      let target = &hj.classes[&(di - 1)];
      let width = hj.groups[&(di - 1)].len();
      let sign = s.incidence_sign(j, i)?;
      let mut m = Matrix::zeros(ring, target.dim(), hi.classes[&di].dim());
      for (col, x) in hi.classes[&di].representatives().iter().enumerate() {
        let y = attaching_image(sd, &hi.groups[&di], x, i as Vertex, j, &hj.index, width, ring);
        let coords = target.coordinates(&y).ok_or_else(|| {
          Error::InvalidComplex(format!("attaching image from {i} to {j} is not a relative cycle"))
        })?;
        for (row, e) in coords.into_iter().enumerate() {
          m.set(row, col, if sign < 0 { ring.neg(&e) } else { e });
        }
      }
      sheaf.set_map(i, j, m)?;
    }
    out.insert(q, sheaf);
  }
  Ok(out)
}

/// Component of `∂x` on chains whose least element is `j`: drops `i` from each chain `i < j < …`.
#[allow(clippy::too_many_arguments)]
fn attaching_image<R: Ring>(
  sd: &Subdivision,
  members: &[ElementId],
  x: &[R::Elem],
  i: Vertex,
  j: ElementId,
  target_index: &HashMap<ElementId, usize>,
  width: usize,
  ring: &R,
) -> Vec<R::Elem> {
  let complex = sd.complex();
  let mut y = vec![ring.zero(); width];
  for (pos, &sx) in members.iter().enumerate() {
    if ring.is_zero(&x[pos]) || sd.chain_of(sx).get(1) != Some(&j) {
      continue;
    }
    let k = complex.vertices(sx).iter().position(|&v| v == i).expect("chain contains its minimum");
    let tau = complex.faces(sx)[k];
    let row = target_index[&tau];
    let term = if k % 2 == 0 { x[pos].clone() } else { ring.neg(&x[pos]) };
    y[row] = ring.add(&y[row], &term);
  }
  y
}

/// `ℋ_q` over a field; outside `-(n-1) ≤ q ≤ 0` it is the zero sheaf.
pub fn structure_sheaf<R: Ring>(s: &Arc<SimplicialPoset>, q: i32, ring: &R) -> Result<CellularSheaf<R>> {
  if !s.is_pure() {
    return Err(Error::InvalidInput("structure sheaves need a pure poset".into()));
  }
  let n = s.max_rank() as i32;
  if q > 0 || q < -(n - 1) {
    if !ring.is_field() {
      return Err(Error::Unsupported(format!("structure sheaf maps need field coefficients, got {}", ring.kind())));
    }
    return Ok(CellularSheaf::zero(s, ring));
  }
  Ok(structure_sheaves(s, ring)?.remove(&q).expect("q in range"))
}

/// Values of `ℋ_q` as groups over any ring (no maps); index is the element id.
pub fn structure_sheaf_groups<R: Ring>(s: &SimplicialPoset, q: i32, ring: &R) -> Result<Vec<GroupDescriptor>> {
  let sd = s.subdivide()?;
  let n = s.max_rank() as i32;
  let mut out = vec![GroupDescriptor::zero(); s.len()];
  for (i, slot) in out.iter_mut().enumerate().skip(1) {
    let face = sd.dual_face(s, i)?;
    let (c, _) = relative_chain_complex(sd.complex(), ring, &face.interior)?;
    *slot = c.homology(q + n - s.rank(i) as i32)?;
  }
  Ok(out)
}

/// `𝒰_i(J) = H_i(S, S ∖ st J)` for every element and every `0 ≤ i ≤ n - 1`.
pub fn local_homology_ranks<R: Ring>(s: &SimplicialPoset, ring: &R) -> Result<LocalHomologyTable> {
  let sd = s.subdivide()?;
  let complex = sd.complex();
  let top = s.max_rank() as i32 - 1;
  let mut out = BTreeMap::new();
  for j in 0..s.len() {
    let members: Vec<ElementId> =
      (1..complex.len()).filter(|&sx| sd.max_of(sx).is_some_and(|m| s.leq(j, m))).collect();
    let (c, _) = relative_chain_complex(complex, ring, &members)?;
    let h = c.homology_all()?;
    for i in 0..=top {
      out.insert((j, i), h.get(&i).cloned().unwrap_or_default());
    }
  }
  Ok(out)
}
