use ultranorm_core::topo::{
    barycentric_subdivision, builtin, cellular_cohomology_dims, mayer_vietoris_check, na_simplicial_volume, torus_grid,
};
use ultranorm_core::{CellComplex, Complex, SimplicialComplex};

fn simplicial(name: &str) -> SimplicialComplex {
    match builtin(name).unwrap() {
        Complex::Simplicial(s) => s,
        Complex::Cell(_) => panic!("{name} is not simplicial"),
    }
}

fn euler(dims: &[usize]) -> i64 {
    dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

#[test]
fn euler_characteristic_matches_cell_counts() {
    for name in ["point", "edge", "circle3", "sphere2", "wedge2", "torus"] {
        let x = simplicial(name).to_cell_complex();
        let cells: i64 = (0..=x.dimension()).map(|n| if n % 2 == 0 { x.size(n) as i64 } else { -(x.size(n) as i64) }).sum();
        for ch in [0, 2, 3] {
            assert_eq!(euler(&cellular_cohomology_dims(&x, ch).unwrap()), cells, "{name} in char {ch}");
        }
    }
}

#[test]
fn subdivision_preserves_cohomology() {
    for name in ["circle3", "sphere2", "wedge2"] {
        let x = simplicial(name);
        let sd = barycentric_subdivision(&x).unwrap();
        let before = cellular_cohomology_dims(&x.to_cell_complex(), 0).unwrap();
        let after = cellular_cohomology_dims(&sd.complex.to_cell_complex(), 0).unwrap();
        assert_eq!(before, after, "{name}");
        let simplices: usize = (0..=x.dimension()).map(|n| x.simplices(n).len()).sum();
        assert_eq!(sd.complex.simplices(0).len(), simplices);
    }
}

#[test]
fn larger_torus_grids() {
    let t = torus_grid(5, 4).unwrap();
    assert_eq!(cellular_cohomology_dims(&t.to_cell_complex(), 0).unwrap(), vec![1, 2, 1]);
    assert_eq!(cellular_cohomology_dims(&t.to_cell_complex(), 2).unwrap(), vec![1, 2, 1]);
    let v = na_simplicial_volume(&t, 2).unwrap();
    assert_eq!(v.cycle.len(), 40);
    assert!(v.lower_bound.holds);
}

#[test]
fn mayer_vietoris_for_sphere_hemispheres() {
    let x = simplicial("sphere2");
    let names = |s: &[&str]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>();
    let a = x.subcomplex(&[names(&["0", "1", "2"]), names(&["0", "1", "3"])]).unwrap();
    let b = x.subcomplex(&[names(&["0", "2", "3"]), names(&["1", "2", "3"])]).unwrap();
    let v = mayer_vietoris_check(&x, &a, &b, 0).unwrap();
    assert!(v.exact);
    assert_eq!(v.dims_x, vec![1, 0, 1]);
    assert_eq!(v.dims_intersection, vec![1, 1, 0]);
}

#[test]
fn cell_documents_round_trip() {
    let Complex::Cell(x) = builtin("torus_cw").unwrap() else { panic!("torus_cw is cellular") };
    let json = serde_json::to_string(&x.to_document()).unwrap();
    let back = CellComplex::from_document(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(cellular_cohomology_dims(&back, 0).unwrap(), vec![1, 2, 1]);

    // Wrong matrix shape, then a boundary whose boundary is nonzero.
    for bad in [
        serde_json::json!({"cells": [["v"], ["e"]], "boundary": [[[1, 1]]]}),
        serde_json::json!({"cells": [["u", "v"], ["e"], ["f"]], "boundary": [[[-1], [1]], [[1]]]}),
    ] {
        assert!(CellComplex::from_document(&serde_json::from_value(bad).unwrap()).is_err());
    }
}
