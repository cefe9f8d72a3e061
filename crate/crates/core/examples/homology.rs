//! Smith normal form and homology of the projective plane over several rings.

use std::sync::Arc;

use cellsheaf::homalg::{smith_normal_form, CoefficientRing, Integers, Matrix};
use cellsheaf::poset::SimplicialPoset;
use cellsheaf::sheaf::CellularCosheaf;
use cellsheaf::with_ring;

fn main() -> cellsheaf::Result<()> {
  let m = Matrix::from_i64(&Integers, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
  let (_, d, _) = smith_normal_form(&m);
  println!("SNF diagonal: {:?}", (0..3).map(|i| d.get(i, i).to_string()).collect::<Vec<_>>());

  // six-vertex triangulation of RP²
  let rp2 = Arc::new(SimplicialPoset::from_facets(&[
    vec![1, 2, 3], vec![1, 3, 4], vec![1, 4, 5], vec![1, 5, 6], vec![1, 2, 6],
    vec![2, 3, 5], vec![3, 4, 6], vec![2, 4, 5], vec![3, 5, 6], vec![2, 4, 6],
  ])?);
  for tag in ["Z", "Q", "Fp:2", "Fp:3"] {
    let ring: CoefficientRing = tag.parse()?;
    let h = with_ring!(ring, r => CellularCosheaf::constant(&rp2, &r, false).chain_complex()?.homology_all()?);
    let groups: Vec<String> = h.values().map(|g| g.to_string()).collect();
    println!("H_*(RP²; {tag}) = ({})", groups.join(", "));
  }
  Ok(())
}
