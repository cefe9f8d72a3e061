//! The graded coskeleton spectral sequence of the principal cosheaf, on a sphere and on a
//! non-Buchsbaum wedge, and the double complex behind the Taylor resolution.

use std::sync::Arc;

use cellsheaf::charfun::CharacteristicFunction;
use cellsheaf::duality::{double_complex_check, duality_pages};
use cellsheaf::homalg::Rationals;
use cellsheaf::poset::SimplicialPoset;

fn main() -> cellsheaf::Result<()> {
  let triangle = Arc::new(SimplicialPoset::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]])?);
  let chi = CharacteristicFunction::from_pairs(2, &[(0, vec![1, 0]), (1, vec![0, 1]), (2, vec![1, 1])])?;
  let rep = duality_pages(&triangle, &chi, &Rationals)?;
  println!("triangle boundary: collapses at E2 {}, all checks {}", rep.collapses_at_second_page(), rep.passed());

  let wedge = Arc::new(SimplicialPoset::from_facets(&[vec![0, 1, 2], vec![0, 3, 4]])?);
  let chi = CharacteristicFunction::from_pairs(
    3,
    &[(0, vec![1, 0, 0]), (1, vec![0, 1, 0]), (2, vec![0, 0, 1]), (3, vec![0, 1, 0]), (4, vec![0, 0, 1])],
  )?;
  let rep = duality_pages(&wedge, &chi, &Rationals)?;
  for g in &rep.grades {
    println!(
      "wedge, inner degree {}: off-row terms {}, collapse page {}, E∞ totals {:?}, H_*(S; Π̂) {:?}",
      g.inner_degree, g.off_row, g.collapse_page, g.infinity_totals, g.abutment
    );
  }

  let chi = CharacteristicFunction::from_pairs(2, &[(0, vec![1, 0]), (1, vec![0, 1]), (2, vec![1, 1])])?;
  for q in 0..=2 {
    let d = double_complex_check(&triangle, &chi, &Rationals, q)?;
    println!("double complex q={q}: total homology {:?}, consistent {}", d.total_homology, d.passed());
  }
  Ok(())
}
