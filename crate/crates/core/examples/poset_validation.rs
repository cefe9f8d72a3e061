//! Builds simplicial posets from facets and from explicit cells, validates them,
//! and inspects links and the barycentric subdivision.

use cellsheaf::poset::{validate, CellSpec, SimplicialPoset};

fn main() -> cellsheaf::Result<()> {
  let triangle = SimplicialPoset::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]])?;
  let report = validate(&triangle);
  println!("boundary of a triangle: {} elements, ranks {:?}, valid {}", report.element_count, report.counts_by_rank, report.is_valid());

  // Two edges glued along both endpoints: a circle that is not a simplicial complex.
  let cell = |vertices: Vec<i64>| CellSpec { vertices, faces: vec![] };
  let circle = SimplicialPoset::from_cells(&[cell(vec![0]), cell(vec![1]), cell(vec![0, 1]), cell(vec![0, 1])])?;
  let report = validate(&circle);
  println!("two-edge circle: valid {}, simplicial complex {}", report.is_valid(), report.simplicial_complex);

  let v = triangle.atom(0).expect("vertex 0");
  let sl = triangle.star_and_link(v)?;
  println!("star of vertex 0 has {} elements; link has {} vertices", sl.star.len(), sl.link.with_rank(1).len());

  let sd = triangle.subdivide()?;
  println!("subdivision: {} simplices", sd.complex().len() - 1);
  for i in 1..triangle.len() {
    let g = sd.dual_face(&triangle, i)?;
    println!("  G of {:?}: dim {}, {} interior simplices", triangle.vertices(i), g.dim, g.interior.len());
  }
  Ok(())
}
