//! Cohomology of constant and structure sheaves, and the link-based classification.

use std::sync::Arc;

use cellsheaf::homalg::{PrimeField, Rationals};
use cellsheaf::poset::SimplicialPoset;
use cellsheaf::sheaf::{classify, structure_sheaves, CellularSheaf};

fn torus() -> cellsheaf::Result<SimplicialPoset> {
  let facets: Vec<Vec<i64>> = (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect();
  SimplicialPoset::from_facets(&facets)
}

fn main() -> cellsheaf::Result<()> {
  let t = Arc::new(torus()?);
  let h = CellularSheaf::constant(&t, &Rationals, false).cochain_complex()?.homology_all()?;
  println!("H^*(T²; Q) ranks: {:?}", h.values().map(|g| g.free_rank).collect::<Vec<_>>());

  for (q, sheaf) in structure_sheaves(&t, &Rationals)? {
    let cohomology = sheaf.cochain_complex()?.homology_all()?;
    let support = sheaf.ranks()[1..].iter().filter(|&&r| r > 0).count();
    let ranks: Vec<usize> = cohomology.values().map(|g| g.free_rank).collect();
    println!("structure sheaf H_{q}: nonzero on {support} of {} faces, cohomology ranks {ranks:?}", t.len() - 1);
  }

  let wedge = SimplicialPoset::from_facets(&[vec![0, 1, 2], vec![0, 3, 4]])?;
  for (name, s) in [("torus", torus()?), ("two triangles at a vertex", wedge)] {
    let c = classify(&s, &PrimeField::new(2)?)?;
    let witness = c.witness.map(|w| format!(", witness link of {:?}: {}", w.vertices, w.reason)).unwrap_or_default();
    println!("{name}: Buchsbaum {}, manifold {}, orientable {}{witness}", c.is_buchsbaum, c.is_homology_manifold, c.is_orientable);
  }
  Ok(())
}
