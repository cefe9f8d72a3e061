//! Exactness of the Taylor complexes for random characteristic functions.

use std::sync::Arc;

use cellsheaf::charfun::{build_ideal_sheaf, build_principal_cosheaf, taylor_complex, CharacteristicFunction};
use cellsheaf::homalg::{CoefficientRing, Ring};
use cellsheaf::poset::SimplicialPoset;
use cellsheaf::with_ring;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn acyclic<R: Ring>(s: &Arc<SimplicialPoset>, chi: &CharacteristicFunction, ring: &R) -> cellsheaf::Result<bool> {
  let ideal = build_ideal_sheaf(s, chi, ring)?;
  let pi = build_principal_cosheaf(s, chi, ring)?;
  for j in 1..s.len() {
    if taylor_complex(s, j, &ideal, &pi)?.homology_all()?.values().any(|g| !g.is_zero()) {
      return Ok(false);
    }
  }
  Ok(true)
}

fn main() -> cellsheaf::Result<()> {
  let s = Arc::new(SimplicialPoset::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])?);
  let base = CharacteristicFunction::from_pairs(
    3,
    &[(0, vec![1, 0, 0]), (1, vec![0, 1, 0]), (2, vec![0, 0, 1]), (3, vec![1, 1, 1])],
  )?;
  let mut rng = ChaCha8Rng::seed_from_u64(11);
  for k in 0..5 {
    let chi = base.randomized(&mut rng);
    let mut line = format!("sample {k}:");
    for tag in [CoefficientRing::Integers, CoefficientRing::Rationals, CoefficientRing::Prime(2), CoefficientRing::Prime(3)] {
      let ok = with_ring!(tag, r => acyclic(&s, &chi, &r)?);
      line += &format!(" {tag} {}", if ok { "exact" } else { "NOT exact" });
    }
    println!("{line}");
  }
  Ok(())
}
