//! Second pages for the orbit poset of a Hirzebruch-type surface: the characteristic
//! function on the square is e1, e2, e1 + a·e2, e2 around the boundary, and the comparison map is checked
//! against the expected isomorphism and injectivity ranges.

use cellsheaf::charfun::CharacteristicFunction;
use cellsheaf::homalg::PrimeField;
use cellsheaf::toric::{compare_pages, orbit_poset, OrbitModel};

fn main() -> cellsheaf::Result<()> {
  let f3 = PrimeField::new(3)?;
  let orbit = orbit_poset(OrbitModel::Cube(2), &f3)?;
  // vertices i and i + 2 are opposite, so 1, 2, 3, 4 run around the square
  for a in [0, 1, 2] {
    let chi = CharacteristicFunction::from_pairs(2, &[(1, vec![1, 0]), (2, vec![0, 1]), (3, vec![1, a]), (4, vec![0, 1])])?;
    let rep = compare_pages(&orbit.poset, &chi, &f3)?;
    println!("a = {a}: passed {}, trivial bundle {}", rep.passed(), rep.trivial_bundle);
    for v in &rep.verdicts {
      println!("  {v:?}");
    }
  }
  Ok(())
}
