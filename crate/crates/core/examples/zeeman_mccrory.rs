//! Second page of the coskeleton spectral sequence on a sphere and on the torus.

use std::sync::Arc;

use cellsheaf::duality::zeeman_mccrory;
use cellsheaf::homalg::Rationals;
use cellsheaf::poset::SimplicialPoset;

fn main() -> cellsheaf::Result<()> {
  let tetra = SimplicialPoset::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])?;
  let torus_facets: Vec<Vec<i64>> = (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect();
  let torus = SimplicialPoset::from_facets(&torus_facets)?;
  for (name, s) in [("boundary of the tetrahedron", tetra), ("seven-vertex torus", torus)] {
    let rep = zeeman_mccrory(&Arc::new(s), &Rationals)?;
    println!("{name}:");
    for e in rep.e2.iter().filter(|e| e.rank > 0) {
      println!("  E2[{}, {}] = {}", e.p, e.q, e.rank);
    }
    println!("  collapses at page {}, abutment {:?}, homology {:?}", rep.collapse_page, rep.abutment, rep.homology);
    if let Some(pc) = &rep.poincare_cohomology {
      println!("  Poincaré: H^(n-1-p) {pc:?} vs H_p {:?}", rep.homology);
    }
  }
  Ok(())
}
