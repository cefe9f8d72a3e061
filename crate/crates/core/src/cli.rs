//! Command-line front end: input documents, dispatch, report rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::charfun::{build_ideal_sheaf, build_principal_cosheaf, taylor_complex, CharacteristicFunction};
use crate::duality::{
  double_complex_check, duality_pages, verify_duality_with, zeeman_mccrory, ConvergenceReport, DoubleComplexReport,
  DualityForm, DualityReport, TableEntry, ZmReport,
};
use crate::error::{Error, Result};
use crate::homalg::{CoefficientRing, GroupDescriptor, Ring};
use crate::poset::{validate, CellSpec, SimplicialPoset, ValidationReport, Vertex};
use crate::sheaf::{classify, structure_sheaf_groups, structure_sheaves, CellularCosheaf, CellularSheaf, ClassificationReport};
use crate::toric::{compare_pages, lambda_and_quotient, orbit_poset, standard_characteristic, OrbitKind, OrbitModel, PageComparisonReport};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "cellsheaf", version, about = "Cellular sheaves on simplicial posets: cohomology, spectral sequences, duality checks")]
pub struct Cli {
  #[command(subcommand)]
  pub command: Command,
  /// Coefficients: Z, Q or Fp:<p>. Overrides the document's `ring`.
  #[arg(long, global = true)]
  pub ring: Option<String>,
  #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
  pub format: Format,
  /// Seed for randomized characteristic functions.
  #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
  pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
  Table,
  Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SheafChoice {
  Constant,
  Ideal,
  Principal,
  Structure,
  Quotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormChoice {
  Auto,
  Shortcut,
  Structure,
}

#[derive(Debug, Subcommand)]
pub enum Command {
  /// Structural checks of the poset.
  Validate { input: PathBuf },
  /// Buchsbaum, Cohen–Macaulay and homology-manifold tests.
  Classify { input: PathBuf },
  /// Homology of the poset with constant coefficients.
  Betti { input: PathBuf },
  /// Cohomology of a sheaf (homology for the principal cosheaf).
  SheafCohomology {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = SheafChoice::Constant)]
    sheaf: SheafChoice,
  },
  /// Coskeleton spectral sequence with constant coefficients.
  Zm { input: PathBuf },
  /// Duality between H^k(S; ℋ₀⊗ℐ) and H_{n-1-k}(S; Π̂).
  Duality {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = FormChoice::Auto)]
    form: FormChoice,
  },
  /// Coskeleton spectral sequence of the corefined ideal sheaf.
  SpecSeq {
    input: PathBuf,
    /// Also check both spectral sequences of the double complex.
    #[arg(long)]
    double: bool,
  },
  /// Exactness of the Taylor-like complexes at every simplex.
  TaylorCheck {
    input: PathBuf,
    /// Additional randomized characteristic functions.
    #[arg(long, default_value_t = 0)]
    samples: usize,
  },
  /// Second-page comparison for the quotient Λ → Λ/ℐ.
  ToricCompare {
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    samples: usize,
  },
}

impl Command {
  pub fn name(&self) -> &'static str {
    match self {
      Command::Validate { .. } => "validate",
      Command::Classify { .. } => "classify",
      Command::Betti { .. } => "betti",
      Command::SheafCohomology { .. } => "sheaf-cohomology",
      Command::Zm { .. } => "zm",
      Command::Duality { .. } => "duality",
      Command::SpecSeq { .. } => "spec-seq",
      Command::TaylorCheck { .. } => "taylor-check",
      Command::ToricCompare { .. } => "toric-compare",
    }
  }

  pub fn input(&self) -> &Path {
    match self {
      Command::Validate { input }
      | Command::Classify { input }
      | Command::Betti { input }
      | Command::SheafCohomology { input, .. }
      | Command::Zm { input }
      | Command::Duality { input, .. }
      | Command::SpecSeq { input, .. }
      | Command::TaylorCheck { input, .. }
      | Command::ToricCompare { input, .. } => input,
    }
  }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
  pub kind: OrbitKind,
  pub n: usize,
}

/// One JSON input document.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub name: Option<String>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub description: Option<String>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub facets: Option<Vec<Vec<Vertex>>>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub cells: Option<Vec<CellSpec>>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub model: Option<ModelSpec>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub characteristic: Option<CharacteristicFunction>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub ring: Option<String>,
}

impl InputDocument {
  pub fn parse(text: &str) -> Result<Self> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("schema error: {e}")))?;
    let sources = [doc.facets.is_some(), doc.cells.is_some(), doc.model.is_some()].iter().filter(|&&b| b).count();
    if sources != 1 {
      return Err(Error::InvalidInput("exactly one of `facets`, `cells` or `model` is required".into()));
    }
    if let Some(m) = &doc.model {
      if m.kind == OrbitKind::User {
        return Err(Error::InvalidInput("model kind must be `simplex` or `cube`".into()));
      }
    }
    if let Some(c) = &doc.characteristic {
      CharacteristicFunction::new(c.lambda, c.omega.clone())?;
    }
    if let Some(r) = &doc.ring {
      r.parse::<CoefficientRing>()?;
    }
    // Malformed cell lists are left to `validate`, which reports the defect.
    match doc.poset() {
      Ok(s) => {
        if let Some(c) = &doc.characteristic {
          c.check_vertices(&s)?;
        }
      },
      Err(e) if doc.cells.is_none() => return Err(e),
      Err(_) => {},
    }
    Ok(doc)
  }

  pub fn poset(&self) -> Result<SimplicialPoset> {
    if let Some(f) = &self.facets {
      return SimplicialPoset::from_facets(f);
    }
    if let Some(c) = &self.cells {
      return SimplicialPoset::from_cells(c);
    }
    match self.model {
      Some(ModelSpec { kind: OrbitKind::Simplex, n }) => crate::toric::simplex_boundary(n),
      Some(ModelSpec { kind: OrbitKind::Cube, n }) => crate::toric::cross_polytope_boundary(n),
      _ => Err(Error::InvalidInput("document has no poset".into())),
    }
  }

  fn orbit_model(&self) -> Result<OrbitModel> {
    match self.model {
      Some(ModelSpec { kind: OrbitKind::Simplex, n }) => Ok(OrbitModel::Simplex(n)),
      Some(ModelSpec { kind: OrbitKind::Cube, n }) => Ok(OrbitModel::Cube(n)),
      _ => Ok(OrbitModel::User(self.poset()?)),
    }
  }

  /// The document's characteristic function; model documents default to the standard one.
  fn characteristic(&self) -> Result<CharacteristicFunction> {
    match (&self.characteristic, &self.model) {
      (Some(c), _) => Ok(c.clone()),
      (None, Some(_)) => standard_characteristic(&orbit_poset(self.orbit_model()?, &crate::homalg::Integers)?),
      (None, None) => Err(Error::InvalidInput("this command needs a `characteristic` entry".into())),
    }
  }
}

/// Reads and validates an input document; also returns the SHA-256 of its bytes.
pub fn parse_input(path: &Path) -> Result<(InputDocument, String)> {
  let bytes = std::fs::read(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
  let text = std::str::from_utf8(&bytes).map_err(|e| Error::InvalidInput(format!("{} is not UTF-8: {e}", path.display())))?;
  let digest = Sha256::digest(&bytes).iter().fold(String::with_capacity(64), |mut s, b| {
    let _ = write!(s, "{b:02x}");
    s
  });
  Ok((InputDocument::parse(text)?, digest))
}

/// Rendered output and process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
  pub output: String,
  /// Text meant for standard error.
  pub diagnostics: String,
  pub exit_code: i32,
}

struct Computed {
  result: Value,
  passed: Option<bool>,
  table: String,
}

pub fn run(cli: &Cli) -> Outcome {
  match run_inner(cli) {
    Ok(o) => o,
    Err(e) => {
      let (output, diagnostics) = match cli.format {
        Format::Json => {
          let v = json!({ "command": cli.command.name(), "input": cli.command.input().display().to_string(), "error": e.to_string() });
          (serde_json::to_string_pretty(&v).expect("serializable") + "\n", String::new())
        },
        Format::Table => (String::new(), format!("error: {e}\n")),
      };
      Outcome { output, diagnostics, exit_code: 2 }
    },
  }
}

fn run_inner(cli: &Cli) -> Result<Outcome> {
  let (doc, digest) = parse_input(cli.command.input())?;
  let ring: CoefficientRing = cli.ring.as_deref().or(doc.ring.as_deref()).unwrap_or("Q").parse()?;
  let computed = crate::with_ring!(ring, r => dispatch(cli, &doc, &r)?);
  let verdict = match computed.passed {
    Some(true) => "pass",
    Some(false) => "fail",
    None => "none",
  };
  let output = match cli.format {
    Format::Json => {
      let v = json!({
        "command": cli.command.name(),
        "input": cli.command.input().display().to_string(),
        "digest": format!("sha256:{digest}"),
        "ring": ring.to_string(),
        "seed": cli.seed,
        "verdict": verdict,
        "result": computed.result,
      });
      serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    },
    Format::Table => {
      let mut s = format!("{} {} over {ring}\ninput sha256:{digest}\n\n", cli.command.name(), cli.command.input().display());
      s.push_str(&computed.table);
      if computed.passed.is_some() {
        let _ = writeln!(s, "\nverdict: {verdict}");
      }
      s
    },
  };
  Ok(Outcome { output, diagnostics: String::new(), exit_code: if computed.passed == Some(false) { 1 } else { 0 } })
}

fn to_value<T: Serialize>(t: &T) -> Value { serde_json::to_value(t).expect("reports serialize") }

fn dispatch<R: Ring>(cli: &Cli, doc: &InputDocument, ring: &R) -> Result<Computed> {
  match &cli.command {
    Command::Validate { .. } => {
      let report = validate_document(doc)?;
      Ok(Computed { passed: Some(report.is_valid()), table: render_validation(&report), result: to_value(&report) })
    },
    Command::Classify { .. } => {
      let report = classify(&doc.poset()?, ring)?;
      Ok(Computed { passed: None, table: render_classification(&report), result: to_value(&report) })
    },
    Command::Betti { .. } => {
      let s = Arc::new(doc.poset()?);
      let h = CellularCosheaf::constant(&s, ring, false).chain_complex()?.homology_all()?;
      let reduced = CellularCosheaf::constant(&s, ring, true).chain_complex()?.homology_all()?;
      let rows: Vec<(i32, GroupDescriptor, GroupDescriptor)> =
        h.iter().map(|(&d, g)| (d, g.clone(), reduced.get(&d).cloned().unwrap_or_default())).collect();
      let mut t = String::from("degree  homology  reduced\n");
      for (d, g, r) in &rows {
        let _ = writeln!(t, "{d:>6}  {g:<8}  {r}");
      }
      let result = json!({
        "homology": rows.iter().map(|(d, g, _)| json!({ "degree": d, "group": g })).collect::<Vec<_>>(),
        "reduced": rows.iter().map(|(d, _, r)| json!({ "degree": d, "group": r })).collect::<Vec<_>>(),
      });
      Ok(Computed { passed: None, table: t, result })
    },
    Command::SheafCohomology { sheaf, .. } => sheaf_cohomology(doc, ring, *sheaf),
    Command::Zm { .. } => {
      let report = zeeman_mccrory(&Arc::new(doc.poset()?), ring)?;
      Ok(Computed { passed: Some(report.passed()), table: render_zm(&report), result: to_value(&report) })
    },
    Command::Duality { form, .. } => {
      let s = Arc::new(doc.poset()?);
      let form = match form {
        FormChoice::Auto => None,
        FormChoice::Shortcut => Some(DualityForm::ManifoldShortcut),
        FormChoice::Structure => Some(DualityForm::StructureSheaf),
      };
      let report = verify_duality_with(&s, &doc.characteristic()?, ring, form)?;
      Ok(Computed { passed: Some(report.passed()), table: render_duality(&report), result: to_value(&report) })
    },
    Command::SpecSeq { double, .. } => {
      let s = Arc::new(doc.poset()?);
      let chi = doc.characteristic()?;
      let report = duality_pages(&s, &chi, ring)?;
      let doubles: Vec<DoubleComplexReport> =
        if *double { (0..=chi.lambda).map(|q| double_complex_check(&s, &chi, ring, q)).collect::<Result<_>>()? } else { vec![] };
      let passed = report.passed() && doubles.iter().all(DoubleComplexReport::passed);
      let mut table = render_convergence(&report);
      for d in &doubles {
        table.push_str(&render_double(d));
      }
      let result = json!({ "convergence": report, "double_complex": doubles });
      Ok(Computed { passed: Some(passed), table, result })
    },
    Command::TaylorCheck { samples, .. } => taylor_check(doc, ring, *samples, cli.seed),
    Command::ToricCompare { samples, .. } => toric_check(doc, ring, *samples, cli.seed),
  }
}

fn validate_document(doc: &InputDocument) -> Result<ValidationReport> {
  match doc.poset() {
    Ok(s) => Ok(validate(&s)),
    Err(e) => {
      let Some(cells) = &doc.cells else { return Err(e) };
      if cells.iter().any(|c| c.vertices.len() > 1 && c.faces.is_empty()) {
        return Err(e);
      }
      let raw: Vec<(Vec<Vertex>, Vec<usize>)> =
        cells.iter().map(|c| (c.vertices.clone(), c.faces.iter().map(|f| f + 1).collect())).collect();
      let mut report = validate(&SimplicialPoset::from_raw(&raw)?);
      report.failures.insert(0, e.to_string());
      Ok(report)
    },
  }
}

fn sheaf_cohomology<R: Ring>(doc: &InputDocument, ring: &R, choice: SheafChoice) -> Result<Computed> {
  let s = Arc::new(doc.poset()?);
  let mut rows: Vec<(i32, i32, GroupDescriptor)> = Vec::new();
  let push_all = |rows: &mut Vec<(i32, i32, GroupDescriptor)>, q: i32, c: crate::homalg::ChainComplex<R>| -> Result<()> {
    for (d, g) in c.homology_all()? {
      rows.push((q, d, g));
    }
    Ok(())
  };
  match choice {
    SheafChoice::Constant => push_all(&mut rows, 0, CellularSheaf::constant(&s, ring, false).cochain_complex()?)?,
    SheafChoice::Ideal => {
      for (q, p) in build_ideal_sheaf(&s, &doc.characteristic()?, ring)?.pieces.iter().enumerate() {
        push_all(&mut rows, q as i32, p.cochain_complex()?)?;
      }
    },
    SheafChoice::Principal => {
      for (q, p) in build_principal_cosheaf(&s, &doc.characteristic()?, ring)?.pieces.iter().enumerate() {
        push_all(&mut rows, q as i32, p.chain_complex()?)?;
      }
    },
    SheafChoice::Quotient => {
      for (q, p) in lambda_and_quotient(&s, &doc.characteristic()?, ring)?.quotient.iter().enumerate() {
        push_all(&mut rows, q as i32, p.cochain_complex()?)?;
      }
    },
    SheafChoice::Structure if ring.is_field() => {
      for (q, h) in structure_sheaves(&s, ring)? {
        push_all(&mut rows, q, h.cochain_complex()?)?;
      }
    },
    SheafChoice::Structure => {
      // Over the integers only the values are available.
      let n = s.max_rank() as i32;
      let mut t = String::from("structure sheaf values (maps need a field)\n   q  element  vertices  group\n");
      let mut values = Vec::new();
      for q in -(n - 1)..=0 {
        for (i, g) in structure_sheaf_groups(&s, q, ring)?.into_iter().enumerate().skip(1) {
          let _ = writeln!(t, "{q:>4}  {i:>7}  {:<8}  {g}", format!("{:?}", s.vertices(i)));
          values.push(json!({ "q": q, "element": i, "vertices": s.vertices(i), "group": g }));
        }
      }
      return Ok(Computed { passed: None, table: t, result: json!({ "sheaf": choice, "values": values }) });
    },
  }
  let title = match choice {
    SheafChoice::Principal => "homology of the principal cosheaf",
    _ => "sheaf cohomology",
  };
  let mut t = format!("{title}\n   q  degree  group\n");
  for (q, d, g) in &rows {
    let _ = writeln!(t, "{q:>4}  {d:>6}  {g}");
  }
  let result = json!({
    "sheaf": choice,
    "groups": rows.iter().map(|(q, d, g)| json!({ "q": q, "degree": d, "group": g })).collect::<Vec<_>>(),
  });
  Ok(Computed { passed: None, table: t, result })
}

/// The document's `ω` followed by `samples` randomized variants.
fn characteristic_samples(base: &CharacteristicFunction, samples: usize, seed: u64) -> Vec<CharacteristicFunction> {
  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  std::iter::once(base.clone()).chain((0..samples).map(|_| base.randomized(&mut rng))).collect()
}

#[derive(Debug, Serialize)]
struct TaylorSample {
  sample: usize,
  complexes: usize,
  /// `(vertices, degree, group)` of every nonzero homology group.
  failures: Vec<(Vec<Vertex>, i32, GroupDescriptor)>,
}

fn taylor_check<R: Ring>(doc: &InputDocument, ring: &R, samples: usize, seed: u64) -> Result<Computed> {
  let s = Arc::new(doc.poset()?);
  let mut out = Vec::new();
  for (k, chi) in characteristic_samples(&doc.characteristic()?, samples, seed).iter().enumerate() {
    let ideal = build_ideal_sheaf(&s, chi, ring)?;
    let pi = build_principal_cosheaf(&s, chi, ring)?;
    let mut failures = Vec::new();
    for j in 1..s.len() {
      for (d, g) in taylor_complex(&s, j, &ideal, &pi)?.homology_all()? {
        if !g.is_zero() {
          failures.push((s.vertices(j).to_vec(), d, g));
        }
      }
    }
    out.push(TaylorSample { sample: k, complexes: s.len() - 1, failures });
  }
  let passed = out.iter().all(|t| t.failures.is_empty());
  let mut t = String::from("sample  complexes  nonzero homology\n");
  for x in &out {
    let _ = writeln!(t, "{:>6}  {:>9}  {}", x.sample, x.complexes, x.failures.len());
  }
  Ok(Computed { passed: Some(passed), table: t, result: to_value(&out) })
}

fn toric_check<R: Ring>(doc: &InputDocument, ring: &R, samples: usize, seed: u64) -> Result<Computed> {
  let orbit = orbit_poset(doc.orbit_model()?, ring)?;
  let base = match &doc.characteristic {
    Some(c) => c.clone(),
    None => standard_characteristic(&orbit)?,
  };
  let mut reports: Vec<PageComparisonReport> = Vec::new();
  for chi in characteristic_samples(&base, samples, seed) {
    reports.push(compare_pages(&orbit.poset, &chi, ring)?);
  }
  let passed = reports.iter().all(PageComparisonReport::passed);
  let mut t = render_toric(&reports[0]);
  if reports.len() > 1 {
    let fails = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(t, "\n{} randomized samples, {fails} failing", reports.len() - 1);
  }
  Ok(Computed { passed: Some(passed), table: t, result: to_value(&reports) })
}

fn yes(b: bool) -> &'static str {
  if b {
    "yes"
  } else {
    "no"
  }
}

fn render_validation(r: &ValidationReport) -> String {
  let mut t = String::new();
  let _ = writeln!(t, "elements            {}", r.element_count);
  let _ = writeln!(t, "counts by rank      {:?}", r.counts_by_rank);
  let _ = writeln!(t, "dimension           {}", r.dimension);
  let _ = writeln!(t, "unique minimum      {}", yes(r.unique_minimum));
  let _ = writeln!(t, "boolean intervals   {}", yes(r.boolean_lower_ideals));
  let _ = writeln!(t, "signs square to 0   {}", yes(r.sign_square_identity));
  let _ = writeln!(t, "pure                {}", yes(r.pure));
  let _ = writeln!(t, "connected           {}", yes(r.connected));
  let _ = writeln!(t, "simplicial complex  {}", yes(r.simplicial_complex));
  for f in &r.failures {
    let _ = writeln!(t, "failure: {f}");
  }
  t
}

fn render_classification(r: &ClassificationReport) -> String {
  let mut t = String::new();
  let _ = writeln!(t, "dimension           {}", r.dimension);
  let _ = writeln!(t, "pure                {}", yes(r.pure));
  let _ = writeln!(t, "connected           {}", yes(r.connected));
  let _ = writeln!(t, "Buchsbaum           {}", yes(r.is_buchsbaum));
  let _ = writeln!(t, "Cohen-Macaulay      {}", yes(r.is_cohen_macaulay));
  let _ = writeln!(t, "homology manifold   {}", yes(r.is_homology_manifold));
  let _ = writeln!(t, "orientable          {}", yes(r.is_orientable));
  let _ = writeln!(t, "top homology        {}", r.top_homology);
  if let Some(w) = &r.witness {
    let _ = writeln!(t, "witness             link of {:?}: {}", w.vertices, w.reason);
  }
  if !r.is_buchsbaum {
    let _ = writeln!(t, "not Buchsbaum");
  }
  for n in &r.notes {
    let _ = writeln!(t, "note: {n}");
  }
  t
}

fn grid(entries: &[TableEntry], rows: std::ops::RangeInclusive<i32>, cols: std::ops::RangeInclusive<i32>, label: &str) -> String {
  let mut t = format!("{label:>6} |");
  for p in cols.clone() {
    let _ = write!(t, "{p:>4}");
  }
  t.push('\n');
  for q in rows.rev() {
    let _ = write!(t, "{q:>6} |");
    for p in cols.clone() {
      let r = entries.iter().find(|e| e.p == p && e.q == q).map_or(0, |e| e.rank);
      let _ = write!(t, "{r:>4}");
    }
    t.push('\n');
  }
  t
}

fn render_zm(r: &ZmReport) -> String {
  let n = r.dimension + 1;
  let mut t = String::from("E2 (columns p, rows q)\n");
  t.push_str(&grid(&r.e2, -(n - 1)..=0, 0..=n - 1, "q\\p"));
  let _ = writeln!(t, "E2 matches H^(n-1-p)(S; H_q)   {}", yes(r.e2_matches));
  let _ = writeln!(t, "collapse page                  {}", r.collapse_page);
  let _ = writeln!(t, "abutment                       {:?}", r.abutment);
  let _ = writeln!(t, "homology of S                  {:?}", r.homology);
  if let Some(c) = &r.poincare_cohomology {
    let _ = writeln!(t, "Poincaré table H^(n-1-p) vs H_p {c:?} vs {:?}", r.homology);
  }
  t
}

fn render_duality(r: &DualityReport) -> String {
  let mut t = format!(
    "form {}\n   q   k  left            right           iso\n",
    match r.form {
      DualityForm::ManifoldShortcut => "H^k(S; I) vs H_(n-1-k)(S; Pi)",
      DualityForm::StructureSheaf => "H^k(S; H_0 (x) I) vs H_(n-1-k)(S; Pi)",
    }
  );
  for e in &r.entries {
    let _ = writeln!(t, "{:>4}{:>4}  {:<14}  {:<14}  {}", e.inner_degree, e.k, e.left.to_string(), e.right.to_string(), yes(e.isomorphic));
  }
  let bad: Vec<String> = r.vanishing.iter().filter(|v| !v.vanishes).map(|v| format!("(q={}, j={})", v.inner_degree, v.j)).collect();
  let _ = writeln!(
    t,
    "vanishing H^j = 0 for j <= n-1-q: {}",
    if bad.is_empty() { "holds".to_string() } else { format!("fails at {}", bad.join(", ")) }
  );
  t
}

fn render_convergence(r: &ConvergenceReport) -> String {
  let n = r.dimension + 1;
  let mut t = String::new();
  for g in &r.grades {
    let _ = writeln!(t, "inner degree {} (columns s, rows k)", g.inner_degree);
    t.push_str(&grid(&g.e2, -(n - 1)..=0, 0..=n - 1, "k\\s"));
    let _ = writeln!(
      t,
      "  E2 matches {}  collapse page {}  E-infinity totals {:?}  H_*(S; Pi) {:?}  abutment matches {}",
      yes(g.e2_matches),
      g.collapse_page,
      g.infinity_totals,
      g.abutment,
      yes(g.abutment_matches)
    );
  }
  t
}

fn render_double(d: &DoubleComplexReport) -> String {
  format!(
    "double complex, inner degree {}: vertical E2 {} horizontal E2 {} abutments agree {}\n",
    d.inner_degree,
    yes(d.vertical_matches),
    yes(d.horizontal_matches),
    yes(d.abutments_agree)
  )
}

fn render_toric(r: &PageComparisonReport) -> String {
  let n = r.n as i32;
  let mut t = String::from("E2 of dY (columns p, rows q)\n");
  t.push_str(&grid(&r.e_y, 0..=n, 0..=n - 1, "q\\p"));
  t.push_str("E2 of dX\n");
  t.push_str(&grid(&r.e_x, 0..=n, 0..=n - 1, "q\\p"));
  t.push_str("rank of f2\n");
  t.push_str(&grid(&r.map_ranks, 0..=n, 0..=n - 1, "q\\p"));
  let failing: Vec<String> = r.verdicts.iter().filter(|v| !v.holds).map(|v| format!("({}, {})", v.p, v.q)).collect();
  let _ = writeln!(
    t,
    "iso for p > q, injective for p = q: {}",
    if failing.is_empty() { "holds".into() } else { format!("fails at {}", failing.join(", ")) }
  );
  let _ = writeln!(t, "long exact sequence ranks: {}", if r.les.iter().all(|l| l.exact) { "consistent" } else { "inconsistent" });
  let _ = writeln!(t, "H*(S; Lambda) = H*(S) (x) Lambda: {}", yes(r.trivial_bundle));
  t
}
