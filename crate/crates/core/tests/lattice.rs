use std::collections::BTreeSet;

use heesch_core::lattice::{iamond_color, Cell, GridKind, Transform, TriangleColor, HEX_A};
use heesch_core::Point64;
use proptest::prelude::*;

fn cells(v: &[(i32, i32)]) -> BTreeSet<Cell> {
    v.iter().map(|&(x, y)| Cell::new(x, y)).collect()
}

fn valid_cell(grid: GridKind) -> impl Strategy<Value = Cell> {
    (-20i32..20, -20i32..20).prop_map(move |(x, y)| match grid {
        GridKind::Iamond => {
            // snap onto a triangle
            if (x + y) % 2 == 0 {
                Cell::new(3 * x, 3 * y)
            } else {
                Cell::new(3 * x + 1, 3 * y + 1)
            }
        }
        _ => Cell::new(x, y),
    })
}

fn valid_transform(grid: GridKind) -> impl Strategy<Value = Transform> {
    let n = grid.orientation_count() as u8;
    (0..n, -12i32..12, -12i32..12).prop_map(move |(o, x, y)| {
        let k = if grid == GridKind::Iamond { 3 } else { 1 };
        Transform::new(o, k * x, k * y)
    })
}

fn any_grid() -> impl Strategy<Value = GridKind> {
    prop_oneof![Just(GridKind::Square), Just(GridKind::Hex), Just(GridKind::Iamond)]
}

#[test]
fn apply_examples() {
    let sq = GridKind::Square;
    assert_eq!(sq.apply(Transform::IDENTITY, Cell::new(3, -2)).unwrap(), Cell::new(3, -2));
    let hex_a = Transform::new(1, 0, 0);
    assert_eq!(GridKind::Hex.orientations()[1].matrix, HEX_A);
    assert_eq!(GridKind::Hex.apply(hex_a, Cell::new(1, 0)).unwrap(), Cell::new(0, 1));
    // first colour-swapping triangle orientation
    let swapped = GridKind::Iamond.apply(Transform::new(6, 0, 0), Cell::ORIGIN).unwrap();
    assert_eq!(swapped, Cell::new(1, -2));
    assert_eq!(iamond_color(swapped), Some(TriangleColor::Grey));
}

#[test]
fn invalid_arguments_are_rejected() {
    assert!(GridKind::Iamond.apply(Transform::IDENTITY, Cell::new(2, 0)).is_err());
    assert!(GridKind::Iamond.apply(Transform::new(0, 1, 0), Cell::ORIGIN).is_err());
    assert!(GridKind::Square.apply(Transform::new(8, 0, 0), Cell::ORIGIN).is_err());
    let far = Transform::new(0, 120, 0);
    assert!(GridKind::Square.compose(far, far).is_err());
}

#[test]
fn compose_examples() {
    let sq = GridKind::Square;
    let t = Transform::new(5, 3, -4);
    assert_eq!(sq.compose(Transform::IDENTITY, t).unwrap(), t);
    let rot90 = Transform::new(1, 0, 0);
    assert_eq!(sq.compose(rot90, rot90).unwrap(), Transform::new(2, 0, 0));
    let hex_a = Transform::new(1, 0, 0);
    let mut acc = Transform::IDENTITY;
    for _ in 0..6 {
        acc = GridKind::Hex.compose(hex_a, acc).unwrap();
    }
    assert_eq!(acc, Transform::IDENTITY);
}

#[test]
fn hex_rotation_has_order_six() {
    let a = Transform::new(1, 0, 0);
    for p in [Cell::new(1, 0), Cell::new(-3, 7), Cell::new(5, 5)] {
        let mut q = p;
        for _ in 0..6 {
            q = GridKind::Hex.apply(a, q).unwrap();
        }
        assert_eq!(q, p);
    }
}

#[test]
fn neighbourhood_examples() {
    let sq: BTreeSet<Cell> = GridKind::Square.halo_neighbors(Cell::ORIGIN).collect();
    let mut expect = BTreeSet::new();
    for x in -1..=1 {
        for y in -1..=1 {
            if (x, y) != (0, 0) {
                expect.insert(Cell::new(x, y));
            }
        }
    }
    assert_eq!(sq, expect);
    let ring = cells(&[(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]);
    assert_eq!(GridKind::Hex.halo_neighbors(Cell::ORIGIN).collect::<BTreeSet<_>>(), ring);
    assert_eq!(GridKind::Hex.edge_neighbors(Cell::ORIGIN).collect::<BTreeSet<_>>(), ring);
    let tri: BTreeSet<Cell> = GridKind::Iamond.halo_neighbors(Cell::ORIGIN).collect();
    assert_eq!(tri.len(), 12);
    assert!(tri.contains(&Cell::new(-2, 4)));
    assert!(tri.iter().all(|&c| GridKind::Iamond.is_valid_cell(c)));
    assert_eq!(
        GridKind::Square.edge_neighbors(Cell::ORIGIN).collect::<BTreeSet<_>>(),
        cells(&[(1, 0), (-1, 0), (0, 1), (0, -1)])
    );
}

#[test]
fn to_cartesian_examples() {
    let p: Point64 = GridKind::Square.to_cartesian(Cell::new(2, 3));
    assert_eq!((p.x, p.y), (2.0, 3.0));
    let p: Point64 = GridKind::Hex.to_cartesian(Cell::new(0, 1));
    assert!((p.x - 0.5).abs() < 1e-12 && (p.y - 3f64.sqrt() / 2.0).abs() < 1e-12);
    let p: Point64 = GridKind::Hex.to_cartesian(Cell::new(1, 0));
    assert_eq!((p.x, p.y), (1.0, 0.0));
}

/// Corners of a triangle in hex-grid coordinates, read off the Cartesian
/// picture: a black triangle of side 3 has its centroid on its cell and
/// corners at -v-w, 2v-w and -v+2w from it; grey ones are point reflections.
fn triangle_corners(p: Cell) -> BTreeSet<(i32, i32)> {
    let offs: [(i32, i32); 3] = match iamond_color(p).unwrap() {
        TriangleColor::Black => [(-1, -1), (2, -1), (-1, 2)],
        TriangleColor::Grey => [(1, 1), (-2, 1), (1, -2)],
    };
    offs.iter().map(|&(dx, dy)| (p.x + dx, p.y + dy)).collect()
}

#[test]
fn triangle_neighbours_match_shared_corners() {
    for p in [Cell::ORIGIN, Cell::new(1, 1), Cell::new(-3, 6), Cell::new(4, -2)] {
        let mine = triangle_corners(p);
        let mut halo = BTreeSet::new();
        let mut edge = BTreeSet::new();
        for q in (-9..=9).flat_map(|dx| (-9..=9).map(move |dy| p + Cell::new(dx, dy))) {
            if q == p || !GridKind::Iamond.is_valid_cell(q) {
                continue;
            }
            let shared = triangle_corners(q).intersection(&mine).count();
            if shared >= 1 {
                halo.insert(q);
            }
            if shared == 2 {
                edge.insert(q);
            }
        }
        assert_eq!(GridKind::Iamond.halo_neighbors(p).collect::<BTreeSet<_>>(), halo, "halo of {p}");
        assert_eq!(GridKind::Iamond.edge_neighbors(p).collect::<BTreeSet<_>>(), edge, "edges of {p}");
        let other = if iamond_color(p) == Some(TriangleColor::Black) { TriangleColor::Grey } else { TriangleColor::Black };
        assert!(edge.iter().all(|&q| iamond_color(q) == Some(other)));
    }
}

#[test]
fn six_hex_matrices_keep_triangle_colours() {
    let o = GridKind::Iamond.orientations();
    let keep = o.iter().filter(|o| o.offset == Cell::ORIGIN).count();
    assert_eq!(keep, 6);
    for (i, ori) in o.iter().enumerate() {
        for p in [Cell::ORIGIN, Cell::new(1, 1), Cell::new(3, -6), Cell::new(-2, 4)] {
            let q = ori.map(p);
            let (cp, cq) = (iamond_color(p).unwrap(), iamond_color(q).expect("valid image"));
            assert_eq!(cp == cq, i < 6, "orientation {i} on {p}");
        }
    }
}

#[test]
fn orientation_sets_are_groups() {
    for grid in GridKind::ALL {
        let o = grid.orientations();
        assert_eq!(o.len(), grid.orientation_count());
        for a in 0..o.len() {
            for b in 0..o.len() {
                let t = grid.compose(Transform::new(a as u8, 0, 0), Transform::new(b as u8, 0, 0));
                assert!(t.is_ok(), "{grid}: {a}∘{b}");
            }
        }
    }
}

#[test]
fn packing_round_trip_at_range_ends() {
    for t in [Transform::new(11, -128, 127), Transform::new(0, 127, -128), Transform::new(7, 0, -1)] {
        assert_eq!(Transform::unpack(t.pack().unwrap()), t);
    }
    assert!(Transform::new(0, 128, 0).pack().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn apply_compose_coherence(
        (grid, t1, t2, p) in any_grid().prop_flat_map(|g| (Just(g), valid_transform(g), valid_transform(g), valid_cell(g)))
    ) {
        let t = grid.compose(t1, t2).unwrap();
        let direct = grid.apply(t1, grid.apply(t2, p).unwrap()).unwrap();
        prop_assert_eq!(grid.apply(t, p).unwrap(), direct);
        prop_assert!(grid.is_valid_cell(direct));
    }

    #[test]
    fn neighbourhoods_are_symmetric(
        (grid, p) in any_grid().prop_flat_map(|g| (Just(g), valid_cell(g)))
    ) {
        let halo: Vec<Cell> = grid.halo_neighbors(p).collect();
        let expected = match grid { GridKind::Square => 8, GridKind::Hex => 6, GridKind::Iamond => 12 };
        prop_assert_eq!(halo.len(), expected);
        for &q in &halo {
            prop_assert!(grid.is_valid_cell(q));
            prop_assert!(grid.halo_neighbors(q).any(|r| r == p));
        }
        for q in grid.edge_neighbors(p) {
            prop_assert!(halo.contains(&q));
            prop_assert!(grid.edge_neighbors(q).any(|r| r == p));
        }
    }

    #[test]
    fn transforms_preserve_neighbourhoods(
        (grid, t, p) in any_grid().prop_flat_map(|g| (Just(g), valid_transform(g), valid_cell(g)))
    ) {
        let image: BTreeSet<Cell> = grid.halo_neighbors(p).map(|q| grid.apply(t, q).unwrap()).collect();
        let around: BTreeSet<Cell> = grid.halo_neighbors(grid.apply(t, p).unwrap()).collect();
        prop_assert_eq!(image, around);
    }
}
