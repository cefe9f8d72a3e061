//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cellsheaf::charfun::{build_ideal_sheaf, build_principal_cosheaf, taylor_complex, CharacteristicFunction};
use cellsheaf::cli::InputDocument;
use cellsheaf::duality::{double_complex_check, duality_pages, verify_duality_with, zeeman_mccrory, DualityForm};
use cellsheaf::homalg::{determinant, smith, CoefficientRing, GroupDescriptor, Integers, Matrix, Ring};
use cellsheaf::poset::SimplicialPoset;
use cellsheaf::sheaf::{local_homology_ranks, structure_sheaf_groups, CellularCosheaf};
use cellsheaf::toric::{compare_pages, orbit_poset, standard_characteristic, OrbitModel};
use cellsheaf::with_ring;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;
const TAYLOR_SAMPLES: usize = 204;
const TAYLOR_BUDGET: Duration = Duration::from_secs(60);
const DUALITY_SAMPLES: usize = 20;
const DUALITY_BUDGET: Duration = Duration::from_secs(300);
const TORIC_SAMPLES: usize = 20;
const TORIC_BUDGET: Duration = Duration::from_secs(120);
const SNF_MATRICES: usize = 1000;
const SNF_MAX_DIM: usize = 12;
const SNF_ENTRY: i64 = 9;

struct Fixture {
  name: String,
  poset: Arc<SimplicialPoset>,
  chi: Option<CharacteristicFunction>,
}

fn fixture(name: &str) -> Fixture {
  let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"));
  let doc = InputDocument::parse(&std::fs::read_to_string(&path).expect("fixture readable")).expect("fixture parses");
  Fixture { name: name.into(), poset: Arc::new(doc.poset().expect("fixture poset")), chi: doc.characteristic }
}

fn samples(chi: &CharacteristicFunction, count: usize, rng: &mut ChaCha8Rng) -> Vec<CharacteristicFunction> {
  (0..count).map(|_| chi.randomized(rng)).collect()
}

fn rings() -> [CoefficientRing; 4] {
  [CoefficientRing::Integers, CoefficientRing::Rationals, CoefficientRing::Prime(2), CoefficientRing::Prime(3)]
}

type Outcome = Result<String, String>;

fn criterion_1() -> Outcome {
  let start = Instant::now();
  let mut rng = ChaCha8Rng::seed_from_u64(SEED);
  let posets = ["boundary-simplex-2", "boundary-simplex-3", "torus7"].map(fixture);
  let per = TAYLOR_SAMPLES.div_ceil(posets.len() * rings().len());
  let mut count = 0;
  for f in &posets {
    for tag in rings() {
      for chi in samples(f.chi.as_ref().unwrap(), per, &mut rng) {
        with_ring!(tag, r => {
          let ideal = build_ideal_sheaf(&f.poset, &chi, &r).map_err(|e| e.to_string())?;
          let pi = build_principal_cosheaf(&f.poset, &chi, &r).map_err(|e| e.to_string())?;
          for j in 1..f.poset.len() {
            let h = taylor_complex(&f.poset, j, &ideal, &pi).and_then(|t| t.homology_all()).map_err(|e| e.to_string())?;
            if let Some((d, g)) = h.iter().find(|(_, g)| !g.is_zero()) {
              return Err(format!("{} over {tag}: H_{d} = {g} at {:?}", f.name, f.poset.vertices(j)));
            }
          }
        });
        count += 1;
      }
    }
  }
  let t = start.elapsed();
  if t > TAYLOR_BUDGET {
    return Err(format!("{count} functions took {t:?}, budget {TAYLOR_BUDGET:?}"));
  }
  Ok(format!("{count} random ω × 3 posets × 4 rings, every Taylor complex acyclic, {:.1}s", t.as_secs_f64()))
}

/// Criteria 2 and 3 share their runs.
fn criteria_2_3() -> (Outcome, Outcome) {
  let start = Instant::now();
  let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
  let manifolds = ["boundary-simplex-2", "boundary-simplex-3", "boundary-simplex-4", "octahedron", "torus7", "two-cell-sphere"];
  let mut plan: Vec<(Fixture, Vec<(CoefficientRing, DualityForm)>)> = Vec::new();
  for name in manifolds {
    plan.push((
      fixture(name),
      vec![
        (CoefficientRing::Integers, DualityForm::ManifoldShortcut),
        (CoefficientRing::Rationals, DualityForm::StructureSheaf),
        (CoefficientRing::Prime(2), DualityForm::StructureSheaf),
      ],
    ));
  }
  plan.push((
    fixture("rp2"),
    vec![(CoefficientRing::Rationals, DualityForm::StructureSheaf), (CoefficientRing::Prime(2), DualityForm::StructureSheaf)],
  ));
  let (mut runs, mut iso_fail, mut van_fail, mut checked_vanishing) = (0, Vec::new(), Vec::new(), 0);
  for (f, modes) in &plan {
    for chi in samples(f.chi.as_ref().unwrap(), DUALITY_SAMPLES, &mut rng) {
      for &(tag, form) in modes {
        let report = with_ring!(tag, r => verify_duality_with(&f.poset, &chi, &r, Some(form)));
        match report {
          Ok(rep) => {
            runs += 1;
            checked_vanishing += rep.vanishing.len();
            if !rep.all_isomorphic() {
              iso_fail.push(format!("{} over {tag}", f.name));
            }
            if !rep.vanishing_holds() {
              van_fail.push(format!("{} over {tag}", f.name));
            }
          },
          Err(e) => {
            iso_fail.push(format!("{} over {tag}: {e}", f.name));
            van_fail.push(format!("{} over {tag}: {e}", f.name));
          },
        }
      }
    }
  }
  let t = start.elapsed();
  let c2 = if !iso_fail.is_empty() {
    Err(format!("{} failing runs, first {}", iso_fail.len(), iso_fail[0]))
  } else if t > DUALITY_BUDGET {
    Err(format!("{runs} runs took {t:?}, budget {DUALITY_BUDGET:?}"))
  } else {
    Ok(format!("{runs} runs, every (k, q) pair isomorphic, {:.1}s", t.as_secs_f64()))
  };
  let c3 = if van_fail.is_empty() {
    Ok(format!("{checked_vanishing} groups H^j with j ≤ n-1-q, all zero"))
  } else {
    Err(format!("{} failing runs, first {}", van_fail.len(), van_fail[0]))
  };
  (c2, c3)
}

fn criterion_4() -> Outcome {
  let mut notes = Vec::new();
  for name in ["boundary-simplex-2", "boundary-simplex-3", "boundary-simplex-4", "octahedron", "torus7", "two-cell-sphere", "rp2"] {
    let f = fixture(name);
    for tag in [CoefficientRing::Rationals, CoefficientRing::Prime(2)] {
      let rep = with_ring!(tag, r => duality_pages(&f.poset, f.chi.as_ref().unwrap(), &r)).map_err(|e| e.to_string())?;
      if !rep.passed() {
        return Err(format!("{name} over {tag}: E² or abutment mismatch"));
      }
      if !rep.collapses_at_second_page() {
        return Err(format!("{name} over {tag}: no collapse at E²"));
      }
    }
    notes.push(name);
  }
  let f = fixture("two-triangles-vertex");
  for tag in [CoefficientRing::Rationals, CoefficientRing::Prime(2)] {
    let rep = with_ring!(tag, r => duality_pages(&f.poset, f.chi.as_ref().unwrap(), &r)).map_err(|e| e.to_string())?;
    if !rep.grades.iter().any(|g| g.off_row) {
      return Err(format!("wedge over {tag}: no k ≠ 0 entries"));
    }
    if let Some(g) = rep.grades.iter().find(|g| g.infinity_totals != g.abutment || !g.abutment_matches) {
      return Err(format!("wedge over {tag}: E^∞ totals {:?} vs H_*(S; Π̂) {:?}", g.infinity_totals, g.abutment));
    }
    if !rep.passed() {
      return Err(format!("wedge over {tag}: E² mismatch"));
    }
  }
  Ok(format!("collapse at E² on {}; wedge has k ≠ 0 terms and E^∞ = H_*(S; Π̂) in every grade", notes.join(", ")))
}

fn criterion_5() -> Outcome {
  let q = cellsheaf::homalg::Rationals;
  let mut tables = Vec::new();
  for name in ["boundary-simplex-3", "torus7"] {
    let f = fixture(name);
    let rep = zeeman_mccrory(&f.poset, &q).map_err(|e| e.to_string())?;
    if !rep.passed() || rep.collapse_page > 2 {
      return Err(format!("{name}: collapse page {}, E² match {}", rep.collapse_page, rep.e2_matches));
    }
    let coh = rep.poincare_cohomology.clone().ok_or(format!("{name}: not an orientable manifold"))?;
    if coh != rep.homology {
      return Err(format!("{name}: {coh:?} vs {:?}", rep.homology));
    }
    tables.push((name, coh, rep.homology));
  }
  let torus = &tables[1];
  if torus.1 != vec![1, 2, 1] || torus.2 != vec![1, 2, 1] {
    return Err(format!("torus table {:?} vs {:?}", torus.1, torus.2));
  }
  Ok(format!("collapse at E²; ∂Δ³ {:?} = {:?}; torus {:?} = {:?}", tables[0].1, tables[0].2, torus.1, torus.2))
}

fn criterion_6() -> Outcome {
  let f = fixture("boundary-simplex-2");
  let chi = f.chi.as_ref().unwrap();
  let mut parts = Vec::new();
  for q in 0..=chi.lambda {
    let rep = double_complex_check(&f.poset, chi, &cellsheaf::homalg::Rationals, q).map_err(|e| e.to_string())?;
    if !rep.passed() {
      return Err(format!("inner degree {q}: {rep:?}"));
    }
    parts.push(format!("q={q}: {:?}", rep.total_homology));
  }
  Ok(format!("vertical E² = H_*(S; Π̂), horizontal E² = H_*(S'; Î), abutments agree ({})", parts.join(", ")))
}

fn criterion_7() -> Outcome {
  let start = Instant::now();
  let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
  let mut runs = 0;
  for model in [OrbitModel::Simplex(2), OrbitModel::Simplex(3), OrbitModel::Cube(2)] {
    let label = format!("{model:?}");
    let orbit = orbit_poset(model, &Integers).map_err(|e| e.to_string())?;
    let base = standard_characteristic(&orbit).map_err(|e| e.to_string())?;
    for chi in std::iter::once(base.clone()).chain(samples(&base, TORIC_SAMPLES, &mut rng)) {
      for tag in [CoefficientRing::Rationals, CoefficientRing::Prime(2)] {
        let rep = with_ring!(tag, r => compare_pages(&orbit.poset, &chi, &r)).map_err(|e| e.to_string())?;
        if !rep.passed() {
          return Err(format!("{label} over {tag}: {rep:?}"));
        }
        runs += 1;
      }
    }
  }
  let t = start.elapsed();
  if t > TORIC_BUDGET {
    return Err(format!("{runs} runs took {t:?}, budget {TORIC_BUDGET:?}"));
  }
  Ok(format!("{runs} comparisons: iso for p > q, injective for p = q, long exact sequence consistent, {:.1}s", t.as_secs_f64()))
}

fn is_diagonal_chain(d: &Matrix<BigInt>) -> bool {
  let k = d.rows().min(d.cols());
  let off = (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d.get(i, j) == &BigInt::from(0)));
  let diag: Vec<BigInt> = (0..k).map(|i| d.get(i, i).clone()).collect();
  let nonneg = diag.iter().all(|x| !x.is_negative());
  let zeros_last = diag.windows(2).all(|w| !(w[0] == BigInt::from(0) && w[1] != BigInt::from(0)));
  let divides = diag.windows(2).all(|w| w[0] == BigInt::from(0) || (&w[1] % &w[0]) == BigInt::from(0));
  off && nonneg && zeros_last && divides
}

fn criterion_8() -> Outcome {
  let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
  let z = Integers;
  for t in 0..SNF_MATRICES {
    let (rows, cols) = (rng.gen_range(1..=SNF_MAX_DIM), rng.gen_range(1..=SNF_MAX_DIM));
    let entries: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-SNF_ENTRY..=SNF_ENTRY)).collect()).collect();
    let m = Matrix::from_i64(&z, &entries);
    let s = smith(&z, &m, true);
    let (u, v) = (s.u.unwrap(), s.v.unwrap());
    if u.mul(&z, &m).mul(&z, &v) != s.d {
      return Err(format!("matrix {t}: U·M·V ≠ D"));
    }
    if determinant(&u).abs() != BigInt::from(1) || determinant(&v).abs() != BigInt::from(1) {
      return Err(format!("matrix {t}: transform not unimodular"));
    }
    if !is_diagonal_chain(&s.d) {
      return Err(format!("matrix {t}: D is not in Smith form"));
    }
  }
  let f = fixture("rp2");
  let h = CellularCosheaf::constant(&f.poset, &z, false).chain_complex().and_then(|c| c.homology_all()).map_err(|e| e.to_string())?;
  let got: Vec<GroupDescriptor> = (0..=2).map(|d| h.get(&d).cloned().unwrap_or_default()).collect();
  let want = vec![GroupDescriptor::free(1), GroupDescriptor::with_torsion(0, &[2]), GroupDescriptor::zero()];
  if got != want {
    return Err(format!("RP² over Z: {got:?}"));
  }
  Ok(format!("{SNF_MATRICES} matrices up to {SNF_MAX_DIM}×{SNF_MAX_DIM}; H_*(RP²; Z) = (Z, Z/2, 0)"))
}

fn criterion_9() -> Outcome {
  let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
  let mut names: Vec<String> = std::fs::read_dir(&dir)
    .map_err(|e| e.to_string())?
    .filter_map(|e| e.ok()?.file_name().into_string().ok())
    .filter_map(|n| n.strip_suffix(".json").map(str::to_string))
    .collect();
  names.sort();
  let mut used = Vec::new();
  let mut compared = 0;
  for name in &names {
    let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).map_err(|e| e.to_string())?;
    let Ok(s) = InputDocument::parse(&text).and_then(|d| d.poset()) else { continue };
    let n = s.max_rank() as i32;
    for tag in [CoefficientRing::Rationals, CoefficientRing::Prime(2)] {
      with_ring!(tag, r => {
        let u = local_homology_ranks(&s, &r).map_err(|e| e.to_string())?;
        for q in -(n - 1)..=0 {
          let h = structure_sheaf_groups(&s, q, &r).map_err(|e| e.to_string())?;
          for i in 1..s.len() {
            let lhs = u.get(&(i, q + n - 1)).map_or(0, |g| g.free_rank);
            if lhs != h[i].free_rank {
              return Err(format!("{name} over {}: element {:?}, q = {q}: {lhs} vs {}", r.kind(), s.vertices(i), h[i].free_rank));
            }
            compared += 1;
          }
        }
      });
    }
    used.push(name.clone());
  }
  Ok(format!("{compared} ranks equal across {} bundled examples over Q and F2", used.len()))
}

fn report(k: usize, r: Outcome) -> bool {
  match r {
    Ok(msg) => {
      println!("criterion {k}: PASS: {msg}");
      true
    },
    Err(msg) => {
      println!("criterion {k}: FAIL: {msg}");
      false
    },
  }
}

fn main() {
  let started = Instant::now();
  let mut passed = 0;
  let (c2, c3) = criteria_2_3();
  let runs: [(usize, Box<dyn FnOnce() -> Outcome>); 9] = [
    (1, Box::new(criterion_1)),
    (2, Box::new(move || c2)),
    (3, Box::new(move || c3)),
    (4, Box::new(criterion_4)),
    (5, Box::new(criterion_5)),
    (6, Box::new(criterion_6)),
    (7, Box::new(criterion_7)),
    (8, Box::new(criterion_8)),
    (9, Box::new(criterion_9)),
  ];
  let total = runs.len();
  for (k, run) in runs {
    passed += usize::from(report(k, run()));
  }
  println!("acceptance: {passed} of {total} criteria pass in {:.1}s", started.elapsed().as_secs_f64());
  if passed < total {
    std::process::exit(1);
  }
}
