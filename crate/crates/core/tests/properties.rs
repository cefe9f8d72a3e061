use std::collections::BTreeSet;
use std::sync::Arc;

use cellsheaf::charfun::{
  build_ideal_sheaf, build_principal_cosheaf, ideal_rank_formula, binomial, taylor_complex, CharacteristicFunction,
};
use cellsheaf::duality::zeeman_mccrory;
use cellsheaf::homalg::{determinant, smith, CoefficientRing, Integers, Matrix, PrimeField, Rationals};
use cellsheaf::poset::{validate, SimplicialPoset};
use cellsheaf::sheaf::{classify, local_homology_ranks, structure_sheaf_groups, CellularCosheaf, CellularSheaf};
use cellsheaf::toric::{compare_pages, orbit_poset, standard_characteristic, OrbitModel};
use cellsheaf::with_ring;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Pure complexes on at most seven vertices with facets of a common size.
fn pure_complex() -> impl Strategy<Value = Arc<SimplicialPoset>> {
  (2usize..=3).prop_flat_map(|k| {
    prop::collection::vec(prop::collection::btree_set(0i64..7, k), 1..7).prop_map(|fs| {
      let facets: BTreeSet<Vec<i64>> = fs.into_iter().map(|f| f.into_iter().collect()).collect();
      Arc::new(SimplicialPoset::from_facets(&facets.into_iter().collect::<Vec<_>>()).expect("facets build"))
    })
  })
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
  (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn ring_tag() -> impl Strategy<Value = CoefficientRing> {
  prop_oneof![
    Just(CoefficientRing::Integers),
    Just(CoefficientRing::Rationals),
    Just(CoefficientRing::Prime(2)),
    Just(CoefficientRing::Prime(3)),
  ]
}

fn sphere_with_random_omega(n: usize, seed: u64) -> (Arc<SimplicialPoset>, CharacteristicFunction) {
  let orbit = orbit_poset(OrbitModel::Simplex(n), &Integers).unwrap();
  let chi = standard_characteristic(&orbit).unwrap().randomized(&mut ChaCha8Rng::seed_from_u64(seed));
  (orbit.poset, chi)
}

proptest! {
  #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

  #[test]
  fn snf_is_a_unimodular_diagonalization(rows in small_matrix()) {
    let z = Integers;
    let m = Matrix::from_i64(&z, &rows);
    let s = smith(&z, &m, true);
    let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
    prop_assert_eq!(u.mul(&z, &m).mul(&z, &v), s.d.clone());
    prop_assert_eq!(determinant(&u).abs(), BigInt::from(1));
    prop_assert_eq!(determinant(&v).abs(), BigInt::from(1));
    let f = &s.invariant_factors;
    prop_assert!(f.iter().all(|x| x.is_positive()));
    prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    prop_assert_eq!(&smith(&z, &m, false).invariant_factors, f);
  }

  #[test]
  fn boolean_intervals_and_signs(s in pure_complex()) {
    let report = validate(&s);
    prop_assert!(report.is_valid(), "{:?}", report.failures);
    for k in 0..s.len() {
      for &i in s.lower_ideal(k) {
        if s.rank(k) == s.rank(i) + 2 {
          let between = s.lower_ideal(k).iter().filter(|&&j| s.rank(j) == s.rank(i) + 1 && s.leq(i, j)).count();
          prop_assert_eq!(between, 2);
        }
      }
    }
  }

  #[test]
  fn dual_faces_partition_the_subdivision(s in pure_complex()) {
    let sd = s.subdivide().unwrap();
    let n = s.max_rank() as i32;
    let mut interiors = 0;
    for i in 1..s.len() {
      let g = sd.dual_face(&s, i).unwrap();
      prop_assert_eq!(g.dim + s.dim(i), n - 1);
      interiors += g.interior.len();
    }
    prop_assert_eq!(interiors, sd.complex().len() - 1);
  }

  #[test]
  fn links_match_stars(s in pure_complex()) {
    for i in 0..s.len() {
      let sl = s.star_and_link(i).unwrap();
      prop_assert_eq!(sl.link.len(), sl.star.len());
      let mut star: Vec<usize> = sl.star.iter().map(|&j| s.rank(j) - s.rank(i)).collect();
      let mut link: Vec<usize> = (0..sl.link.len()).map(|l| sl.link.rank(l)).collect();
      star.sort_unstable();
      link.sort_unstable();
      prop_assert_eq!(star, link);
    }
  }

  #[test]
  fn euler_characteristic_and_universal_coefficients(s in pure_complex()) {
    let z = CellularCosheaf::constant(&s, &Integers, false).chain_complex().unwrap();
    let hz = z.homology_all().unwrap();
    let hq = CellularCosheaf::constant(&s, &Rationals, false).chain_complex().unwrap().homology_all().unwrap();
    let euler: i64 = hz.iter().map(|(&d, g)| if d % 2 == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) }).sum();
    prop_assert_eq!(euler, z.euler_characteristic());
    for p in [2u64, 3] {
      let hp = CellularCosheaf::constant(&s, &PrimeField::new(p).unwrap(), false).chain_complex().unwrap().homology_all().unwrap();
      for (&d, g) in &hz {
        let divisible = |h: Option<&cellsheaf::homalg::GroupDescriptor>| {
          h.map_or(0, |h| h.torsion.iter().filter(|t| (*t % BigInt::from(p)).is_zero()).count())
        };
        let expect = g.free_rank + divisible(Some(g)) + divisible(hz.get(&(d - 1)));
        prop_assert_eq!(hp[&d].free_rank, expect, "degree {} mod {}", d, p);
        prop_assert_eq!(hq[&d].free_rank, g.free_rank);
      }
    }
  }

  #[test]
  fn buchsbaum_iff_higher_structure_sheaves_vanish(s in pure_complex()) {
    let f2 = PrimeField::new(2).unwrap();
    let n = s.max_rank() as i32;
    let mut vanish = true;
    for q in -(n - 1)..0 {
      let h = structure_sheaf_groups(&s, q, &f2).unwrap();
      vanish &= h.iter().skip(1).all(|g| g.is_zero());
    }
    prop_assert_eq!(classify(&s, &f2).unwrap().is_buchsbaum, vanish);
    let u = local_homology_ranks(&s, &f2).unwrap();
    for q in -(n - 1)..=0 {
      let h = structure_sheaf_groups(&s, q, &f2).unwrap();
      for i in 1..s.len() {
        prop_assert_eq!(u.get(&(i, q + n - 1)).map_or(0, |g| g.free_rank), h[i].free_rank);
      }
    }
  }

  #[test]
  fn zeeman_mccrory_converges_to_homology(s in pure_complex()) {
    let rep = zeeman_mccrory(&s, &PrimeField::new(2).unwrap()).unwrap();
    prop_assert!(rep.e2_matches);
    prop_assert!(rep.abutment_matches);
  }

  #[test]
  fn constant_sheaf_cochains_square_to_zero(s in pure_complex(), tag in ring_tag()) {
    with_ring!(tag, r => {
      let a = CellularSheaf::constant(&s, &r, true);
      prop_assert!(a.check_functoriality().is_ok());
      prop_assert!(a.cochain_complex().unwrap().check().is_ok());
    });
  }
}

proptest! {
  #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

  #[test]
  fn randomization_keeps_the_star_condition(n in 2usize..=4, seed in any::<u64>()) {
    let (s, chi) = sphere_with_random_omega(n, seed);
    prop_assert!(chi.check_star_condition(&s, &Integers).unwrap().holds);
  }

  #[test]
  fn ideal_and_principal_ranks(n in 2usize..=3, seed in any::<u64>(), tag in ring_tag()) {
    let (s, chi) = sphere_with_random_omega(n, seed);
    with_ring!(tag, r => {
      let ideal = build_ideal_sheaf(&s, &chi, &r).unwrap();
      let pi = build_principal_cosheaf(&s, &chi, &r).unwrap();
      for q in 0..=chi.lambda {
        prop_assert!(ideal.piece(q).check_functoriality().is_ok());
        prop_assert!(pi.piece(q).check_functoriality().is_ok());
        prop_assert!(ideal.piece(q).cochain_complex().unwrap().check().is_ok());
        prop_assert!(pi.piece(q).chain_complex().unwrap().check().is_ok());
        for i in 1..s.len() {
          let size = s.rank(i);
          prop_assert_eq!(ideal.piece(q).rank(i), ideal_rank_formula(size, chi.lambda, q));
          let expect = if q < size { 0 } else { binomial(chi.lambda - size, q - size) };
          prop_assert_eq!(pi.piece(q).rank(i), expect);
        }
      }
    });
  }

  #[test]
  fn taylor_complexes_are_acyclic(n in 2usize..=3, seed in any::<u64>(), tag in ring_tag()) {
    let (s, chi) = sphere_with_random_omega(n, seed);
    with_ring!(tag, r => {
      let ideal = build_ideal_sheaf(&s, &chi, &r).unwrap();
      let pi = build_principal_cosheaf(&s, &chi, &r).unwrap();
      for j in 1..s.len() {
        let h = taylor_complex(&s, j, &ideal, &pi).unwrap().homology_all().unwrap();
        prop_assert!(h.values().all(|g| g.is_zero()), "element {}", j);
      }
    });
  }

  #[test]
  fn toric_second_pages(model in prop_oneof![Just(OrbitModel::Simplex(2)), Just(OrbitModel::Simplex(3)), Just(OrbitModel::Cube(2))],
                        seed in any::<u64>(), field in prop_oneof![Just(CoefficientRing::Rationals), Just(CoefficientRing::Prime(2)), Just(CoefficientRing::Prime(3))]) {
    let orbit = orbit_poset(model, &Integers).unwrap();
    let chi = standard_characteristic(&orbit).unwrap().randomized(&mut ChaCha8Rng::seed_from_u64(seed));
    with_ring!(field, r => {
      let rep = compare_pages(&orbit.poset, &chi, &r).unwrap();
      prop_assert!(rep.passed(), "{:?}", rep);
    });
  }
}
