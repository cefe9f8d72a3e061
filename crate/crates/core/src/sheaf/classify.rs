//! Buchsbaum / Cohen–Macaulay / homology manifold tests via link homology.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::CellularCosheaf;
use crate::error::Result;
use crate::homalg::{CoefficientRing, GroupDescriptor, Ring};
use crate::poset::{validate, ElementId, SimplicialPoset, Vertex};

/// Reduced homology of one link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkHomology {
  pub element: ElementId,
  pub vertices: Vec<Vertex>,
  /// `n - 1 - |I|`, the only degree allowed to be nonzero.
  pub expected_degree: i32,
  pub reduced: BTreeMap<i32, GroupDescriptor>,
}

impl LinkHomology {
  fn is_concentrated(&self) -> bool { self.reduced.iter().all(|(&d, g)| d == self.expected_degree || g.is_zero()) }

  fn top(&self) -> GroupDescriptor { self.reduced.get(&self.expected_degree).cloned().unwrap_or_default() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
  pub element: ElementId,
  pub vertices: Vec<Vertex>,
  pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
  pub ring: CoefficientRing,
  pub pure: bool,
  pub connected: bool,
  pub dimension: i32,
  pub is_buchsbaum: bool,
  pub is_cohen_macaulay: bool,
  pub is_homology_manifold: bool,
  pub is_orientable: bool,
  /// `H_{n-1}(S)` over the chosen ring.
  pub top_homology: GroupDescriptor,
  pub witness: Option<Witness>,
  pub links: Vec<LinkHomology>,
  pub notes: Vec<String>,
}

impl ClassificationReport {
  pub fn is_orientable_manifold(&self) -> bool { self.is_homology_manifold && self.is_orientable }
}

fn link_homology<R: Ring>(s: &SimplicialPoset, ring: &R, i: ElementId) -> Result<LinkHomology> {
  let link = Arc::new(s.star_and_link(i)?.link);
  let c = CellularCosheaf::constant(&link, ring, true).chain_complex()?;
  let mut reduced = c.homology_all()?;
  reduced.retain(|_, g| !g.is_zero());
  Ok(LinkHomology {
    element: i,
    vertices: s.vertices(i).to_vec(),
    expected_degree: s.max_rank() as i32 - 1 - s.rank(i) as i32,
    reduced,
  })
}

pub fn classify<R: Ring>(s: &SimplicialPoset, ring: &R) -> Result<ClassificationReport> {
  let v = validate(s);
  let mut notes = Vec::new();
  if !v.pure {
    notes.push("poset is not pure; link degrees are measured against the top rank".into());
  }
  if !v.connected {
    notes.push("poset is not connected".into());
  }
  let mut links = Vec::with_capacity(s.len());
  for i in 0..s.len() {
    links.push(link_homology(s, ring, i)?);
  }
  let mut witness = None;
  let mut buchsbaum = true;
  for l in links.iter().skip(1) {
    if !l.is_concentrated() {
      buchsbaum = false;
      witness = Some(Witness {
        element: l.element,
        vertices: l.vertices.clone(),
        reason: format!("reduced link homology outside degree {}", l.expected_degree),
      });
      break;
    }
  }
  let global = &links[0];
  let cm = buchsbaum && global.is_concentrated();
  let unit = GroupDescriptor::free(1);
  let mut manifold = buchsbaum;
  if buchsbaum {
    if let Some(l) = links.iter().skip(1).find(|l| l.top() != unit) {
      manifold = false;
      witness = Some(Witness {
        element: l.element,
        vertices: l.vertices.clone(),
        reason: format!("top link homology is {} rather than R", l.top()),
      });
    }
  }
  let c = CellularCosheaf::constant(&Arc::new(s.clone()), ring, false).chain_complex()?;
  let top_homology = c.homology(s.dimension())?;
  let orientable = v.connected && top_homology == unit;
  Ok(ClassificationReport {
    ring: ring.kind(),
    pure: v.pure,
    connected: v.connected,
    dimension: s.dimension(),
    is_buchsbaum: buchsbaum,
    is_cohen_macaulay: cm,
    is_homology_manifold: manifold,
    is_orientable: orientable,
    top_homology,
    witness,
    links,
    notes,
  })
}
