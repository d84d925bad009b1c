//! SVG drawings of corona witnesses.

use std::collections::HashMap;
use std::fmt::Write as _;

use heesch_core::lattice::fine_to_cartesian;
use heesch_core::{GridKind, Placement, Point64, Witness};

const SCALE: f64 = 24.0;
const MARGIN: f64 = 12.0;
const LEGEND_ROW: f64 = 18.0;

const LEVEL_FILLS: [&str; 8] = ["#d62728", "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

pub fn level_fill(k: usize) -> &'static str {
    if k == 0 {
        LEVEL_FILLS[0]
    } else {
        LEVEL_FILLS[1 + (k - 1) % (LEVEL_FILLS.len() - 1)]
    }
}

type Fine = (i64, i64);

/// Outline of a placement as one closed walk in fine coordinates. Interior
/// edges cancel against their reverses; the remaining boundary edges are
/// joined into a single circuit.
pub fn placement_outline(grid: GridKind, p: &Placement) -> Vec<Fine> {
    let mut edges: HashMap<(Fine, Fine), usize> = HashMap::new();
    for &c in &p.cells {
        let o = grid.cell_outline(c);
        for i in 0..o.len() {
            let e = (o[i], o[(i + 1) % o.len()]);
            let rev = (e.1, e.0);
            if let Some(n) = edges.get_mut(&rev) {
                *n -= 1;
                if *n == 0 {
                    edges.remove(&rev);
                }
            } else {
                *edges.entry(e).or_insert(0) += 1;
            }
        }
    }
    let mut out_edges: HashMap<Fine, Vec<Fine>> = HashMap::new();
    for (&(a, b), &n) in &edges {
        for _ in 0..n {
            out_edges.entry(a).or_default().push(b);
        }
    }
    for v in out_edges.values_mut() {
        v.sort_unstable();
    }
    let Some(&start) = out_edges.keys().min() else {
        return Vec::new();
    };
    // Hierholzer: the boundary of a connected region is one circuit
    let mut stack = vec![start];
    let mut circuit = Vec::new();
    while let Some(&v) = stack.last() {
        match out_edges.get_mut(&v).and_then(|e| e.pop()) {
            Some(w) => stack.push(w),
            None => circuit.push(stack.pop().unwrap()),
        }
    }
    circuit.reverse();
    circuit.pop();
    circuit
}

fn polygon_points(grid: GridKind, fine: &[Fine]) -> Vec<Point64> {
    fine.iter().map(|&(x, y)| fine_to_cartesian(grid, x, y)).collect()
}

/// Signed shoelace area.
pub fn polygon_area(points: &[Point64]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (a, b) = (points[i], points[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
        / 2.0
}

/// Polygons of all placements with their levels, in Cartesian coordinates.
pub fn witness_polygons(w: &Witness) -> Vec<(usize, Vec<Point64>)> {
    let grid = w.shape.grid();
    w.placements().map(|(k, p)| (k, polygon_points(grid, &placement_outline(grid, p)))).collect()
}

pub fn render_svg(w: &Witness) -> String {
    let polys = witness_polygons(w);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for (_, pts) in &polys {
        for p in pts {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
    }
    if polys.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let levels = w.levels.len();
    let legend_h = LEGEND_ROW * levels as f64 + MARGIN;
    let width = (x1 - x0) * SCALE + 2.0 * MARGIN;
    let height = (y1 - y0) * SCALE + 2.0 * MARGIN + legend_h;
    // y grows downwards in SVG
    let tx = |p: &Point64| ((p.x - x0) * SCALE + MARGIN, (y1 - p.y) * SCALE + MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<g stroke="#222" stroke-width="1" stroke-linejoin="round">"##);
    for (k, pts) in &polys {
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = tx(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(s, r#"<polygon class="level-{k}" fill="{}" points="{}"/>"#, level_fill(*k), coords.join(" "));
    }
    let _ = writeln!(s, "</g>");
    let top = (y1 - y0) * SCALE + 2.0 * MARGIN;
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="12">"#);
    for k in 0..levels {
        let y = top + LEGEND_ROW * k as f64;
        let label = if k == 0 { "shape".to_string() } else { format!("corona {k}") };
        let _ = writeln!(s, r##"<rect x="{MARGIN}" y="{y:.1}" width="12" height="12" fill="{}" stroke="#222"/>"##, level_fill(k));
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}">{label}</text>"#, MARGIN + 18.0, y + 10.5);
    }
    let _ = writeln!(s, "</g>\n</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use heesch_core::{Cell, Shape, Transform};

    #[test]
    fn domino_outline_has_six_corners() {
        let p = Placement { transform: Transform::IDENTITY, cells: vec![Cell::new(0, 0), Cell::new(1, 0)] };
        let o = placement_outline(GridKind::Square, &p);
        assert_eq!(o.len(), 6);
        let pts = polygon_points(GridKind::Square, &o);
        assert!((polygon_area(&pts) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn hexagon_vertices_are_at_circumradius() {
        let c = Cell::new(2, -1);
        let p = Placement { transform: Transform::IDENTITY, cells: vec![c] };
        let centre: Point64 = GridKind::Hex.to_cartesian(c);
        let pts = polygon_points(GridKind::Hex, &placement_outline(GridKind::Hex, &p));
        assert_eq!(pts.len(), 6);
        for v in pts {
            assert!((v.distance(centre) - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn monomino_drawing() {
        let s = Shape::new(GridKind::Square, [Cell::ORIGIN]).unwrap();
        let mut w = Witness::trivial(&s);
        w.levels.push(
            GridKind::Square
                .halo_neighbors(Cell::ORIGIN)
                .map(|c| Placement { transform: Transform::new(0, c.x, c.y), cells: vec![c] })
                .collect(),
        );
        let svg = render_svg(&w);
        assert_eq!(svg.matches("<polygon").count(), 9);
        assert_eq!(svg.matches("class=\"level-0\"").count(), 1);
        assert!(svg.contains("corona 1"));
    }
}
