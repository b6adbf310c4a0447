use std::f64::consts::PI;

use gassmann::drums::{boundary_polygon, gww_pair, unfold, BaseTile, Point, Polygon};
use gassmann::spectral::{dirichlet_eigenvalues, rasterize, relative_gaps, WeylCheck};
use gassmann::Bounds;
use num_rational::BigRational;

fn h(d: i64) -> BigRational {
    BigRational::new(1.into(), d.into())
}

fn square() -> Polygon<BigRational> {
    let p = |x: i64, y: i64| Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()));
    Polygon::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap()
}

#[test]
fn gww_masks_approximate_area() {
    let pair = gww_pair(&Bounds::default()).unwrap();
    for poly in [&pair.boundary_a, &pair.boundary_b] {
        let m = rasterize(poly, &h(32)).unwrap();
        assert!((m.area() - 3.5).abs() / 3.5 < 0.05, "{}", m.area());
        // finer grids fill more of the domain
        let fine = rasterize(poly, &h(64)).unwrap();
        assert!(fine.area() > m.area() && fine.area() < 3.5);
    }
}

#[test]
fn gww_pair_is_isospectral_on_the_grid() {
    let pair = gww_pair(&Bounds::default()).unwrap();
    let a = dirichlet_eigenvalues(&rasterize(&pair.boundary_a, &h(64)).unwrap(), 10, 0).unwrap();
    let b = dirichlet_eigenvalues(&rasterize(&pair.boundary_b, &h(64)).unwrap(), 10, 0).unwrap();
    for g in relative_gaps(&a.eigenvalues, &b.eigenvalues) {
        assert!(g < 0.01, "{g}");
    }
    // swapping the roles changes nothing
    assert_eq!(relative_gaps(&b.eigenvalues, &a.eigenvalues), relative_gaps(&a.eigenvalues, &b.eigenvalues));
}

#[test]
fn square_benchmark_and_convergence() {
    let exact = 2.0 * PI * PI;
    let coarse = dirichlet_eigenvalues(&rasterize(&square(), &h(32)).unwrap(), 1, 0).unwrap();
    let fine = dirichlet_eigenvalues(&rasterize(&square(), &h(64)).unwrap(), 1, 0).unwrap();
    let (ec, ef) = ((coarse.eigenvalues[0] - exact).abs(), (fine.eigenvalues[0] - exact).abs());
    assert!(ef / exact < 0.005);
    // second order: halving h divides the error by about four
    assert!((ec / ef - 4.0).abs() < 0.2, "{}", ec / ef);
}

#[test]
fn spectrum_is_reproducible() {
    let m = rasterize(&square(), &h(32)).unwrap();
    let a = dirichlet_eigenvalues(&m, 8, 3).unwrap();
    let b = dirichlet_eigenvalues(&m, 8, 3).unwrap();
    let c = dirichlet_eigenvalues(&m, 8, 11).unwrap();
    assert_eq!(a.eigenvalues, b.eigenvalues);
    for (x, y) in a.eigenvalues.iter().zip(&c.eigenvalues) {
        assert!((x - y).abs() <= 1e-8 * x);
    }
}

#[test]
fn weyl_law_on_the_square() {
    let m = rasterize(&square(), &h(64)).unwrap();
    let r = dirichlet_eigenvalues(&m, 20, 0).unwrap();
    // the twentieth eigenvalue closes the multiplicity-one level 32π²
    assert!((r.eigenvalues[19] / (32.0 * PI * PI) - 1.0).abs() < 0.01);
    let w = WeylCheck::at_top(&r, 1.0, 4.0).unwrap();
    assert!(w.two_term_error() < 0.15, "{w:?}");
}

#[test]
fn contained_rectangle_bounds_from_below() {
    // the GWW domains fit inside a 3×3 box, so their ground states exceed
    // the box's continuum value 2π²/9, with 10% slack
    let pair = gww_pair(&Bounds::default()).unwrap();
    let a = dirichlet_eigenvalues(&rasterize(&pair.boundary_a, &h(32)).unwrap(), 1, 0).unwrap();
    let (xs, ys): (Vec<f64>, Vec<f64>) = pair.boundary_a.vertices.iter().map(Point::to_f64).unzip();
    let w = xs.iter().cloned().fold(f64::MIN, f64::max) - xs.iter().cloned().fold(f64::MAX, f64::min);
    let hgt = ys.iter().cloned().fold(f64::MIN, f64::max) - ys.iter().cloned().fold(f64::MAX, f64::min);
    let boxed = PI * PI * (1.0 / (w * w) + 1.0 / (hgt * hgt));
    assert!(a.eigenvalues[0] >= boxed * 0.9);
}

#[test]
fn single_tile_domain_rasterizes() {
    let sys = gassmann::transplant::InvolutionSystem::parse(
        "tiles: 1\nsides: 3\nside 1: ; boundary: 1\nside 2: ; boundary: 1\nside 3: ; boundary: 1\n",
    )
    .unwrap();
    let d = unfold(&sys, &BaseTile::half_square()).unwrap();
    let m = rasterize(&boundary_polygon(&d).unwrap(), &h(8)).unwrap();
    // nodes (i, j) with i, j ≥ 1 and i + j < 8
    assert_eq!(m.count(), 21);
}
