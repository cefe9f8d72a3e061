//! Graded duality between the ideal sheaf and the principal cosheaf, with the
//! vanishing range, for random characteristic functions.

use std::sync::Arc;

use cellsheaf::charfun::CharacteristicFunction;
use cellsheaf::duality::{verify_duality, verify_duality_with, DualityForm};
use cellsheaf::homalg::{Integers, PrimeField};
use cellsheaf::poset::SimplicialPoset;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cellsheaf::Result<()> {
  let s = Arc::new(SimplicialPoset::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])?);
  let standard = CharacteristicFunction::from_pairs(
    3,
    &[(0, vec![1, 0, 0]), (1, vec![0, 1, 0]), (2, vec![0, 0, 1]), (3, vec![1, 1, 1])],
  )?;
  let mut rng = ChaCha8Rng::seed_from_u64(7);
  for k in 0..3 {
    let chi = standard.randomized(&mut rng);
    let over_z = verify_duality(&s, &chi, &Integers)?;
    let over_f2 = verify_duality_with(&s, &chi, &PrimeField::new(2)?, Some(DualityForm::StructureSheaf))?;
    println!("sample {k}: ω(3) = {:?}", chi.omega[&3]);
    println!("  over Z ({:?}): isomorphic {}, vanishing {}", over_z.form, over_z.all_isomorphic(), over_z.vanishing_holds());
    println!("  over F2 ({:?}): isomorphic {}, vanishing {}", over_f2.form, over_f2.all_isomorphic(), over_f2.vanishing_holds());
  }
  let chi = standard.randomized(&mut rng);
  let rep = verify_duality(&s, &chi, &Integers)?;
  for e in &rep.entries {
    println!("  q={} k={}: H^k = {} vs H_(n-1-k) = {}", e.inner_degree, e.k, e.left, e.right);
  }
  Ok(())
}
