//! Normal fans of lattice polygons.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lattice::{primitive, IntMatrix};

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Vertices of the convex hull in counterclockwise order, without collinear
/// boundary points (Andrew's monotone chain).
pub fn convex_hull(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Half-plane index for angular sorting: 0 for angles in `[0, π)`, 1 else.
fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order starting from the positive x-axis.
pub fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

/// Inward primitive normals of the hull edges, sorted counterclockwise from
/// the positive x-axis.
pub fn lattice_polygon_normal_fan(points: &[[i64; 2]]) -> Result<Vec<[i64; 2]>> {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return Err(Error::Degenerate);
    }
    let mut rays: Vec<[i64; 2]> = (0..hull.len())
        .map(|i| {
            let (p, q) = (hull[i], hull[(i + 1) % hull.len()]);
            // interior lies to the left of p → q
            let n = primitive(&[p[1] - q[1], q[0] - p[0]]);
            [n[0], n[1]]
        })
        .collect();
    rays.sort_by(|&a, &b| angle_cmp(a, b));
    Ok(rays)
}

/// Minkowski sum of two point sets.
pub fn minkowski_sum(a: &[[i64; 2]], b: &[[i64; 2]]) -> Vec<[i64; 2]> {
    a.iter().flat_map(|p| b.iter().map(move |q| [p[0] + q[0], p[1] + q[1]])).collect()
}

/// Rewrites the points in a basis of the lattice generated by the differences
/// `p − points[0]`, with `points[0]` as origin. A torus acting through these
/// characters acts effectively only through that lattice, so normal fans of
/// orbit closures must be taken there.
pub fn affine_lattice_coordinates(points: &[[i64; 2]]) -> Result<Vec<[i64; 2]>> {
    let Some(&p0) = points.first() else { return Err(Error::Degenerate) };
    let diffs: Vec<Vec<i64>> = points.iter().map(|p| vec![p[0] - p0[0], p[1] - p0[1]]).collect();
    let basis = IntMatrix::from_rows(2, &diffs).expect("two columns").row_lattice_basis();
    if basis.rows() < 2 {
        return Err(Error::Degenerate);
    }
    diffs
        .iter()
        .map(|d| {
            let c = basis.row_span_coefficients(d).expect("difference lies in its own span");
            Ok([c[0], c[1]])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_and_square() {
        let fan = lattice_polygon_normal_fan(&[[0, 0], [1, 0], [0, 1]]).unwrap();
        assert_eq!(fan, vec![[1, 0], [0, 1], [-1, -1]]);
        let sq = lattice_polygon_normal_fan(&[[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]).unwrap();
        assert_eq!(sq, vec![[1, 0], [0, 1], [-1, 0], [0, -1]]);
    }

    #[test]
    fn collinear_points_are_degenerate() {
        assert_eq!(lattice_polygon_normal_fan(&[[0, 0], [1, 1], [2, 2], [3, 3]]), Err(Error::Degenerate));
        assert_eq!(lattice_polygon_normal_fan(&[[0, 0], [1, 0]]), Err(Error::Degenerate));
    }

    #[test]
    fn hexagon_from_two_triangles() {
        let a = [[2, 0], [0, 2], [-2, -2]];
        let b = [[-2, 0], [0, -2], [2, 2]];
        let pts = minkowski_sum(&a, &b);
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 6);
        for i in 0..hull.len() {
            let (p, q) = (hull[i], hull[(i + 1) % hull.len()]);
            assert!(pts.iter().all(|&r| cross(p, q, r) >= 0));
        }
        // In ℤ² the cones have index 3; in the lattice spanned by the
        // exponent differences the fan is smooth.
        let coarse = lattice_polygon_normal_fan(&pts).unwrap();
        assert_eq!(coarse.len(), 6);
        assert!((0..6).all(|w| det(coarse[w], coarse[(w + 1) % 6]) == 3));
        let fine = lattice_polygon_normal_fan(&affine_lattice_coordinates(&pts).unwrap()).unwrap();
        assert_eq!(fine.len(), 6);
        assert!((0..6).all(|w| det(fine[w], fine[(w + 1) % 6]) == 1));
    }

    fn det(u: [i64; 2], v: [i64; 2]) -> i64 {
        u[0] * v[1] - u[1] * v[0]
    }

    #[test]
    fn affine_coordinates_of_doubled_simplex() {
        let c = affine_lattice_coordinates(&[[2, 0], [0, 2], [-2, -2]]).unwrap();
        let fan = lattice_polygon_normal_fan(&c).unwrap();
        assert_eq!(fan.len(), 3);
        assert!((0..3).all(|w| det(fan[w], fan[(w + 1) % 3]) == 1));
        assert_eq!(affine_lattice_coordinates(&[[0, 0], [1, 1], [2, 2]]), Err(Error::Degenerate));
    }

    #[test]
    fn interior_points_do_not_change_the_fan() {
        let fan = lattice_polygon_normal_fan(&[[0, 0], [4, 0], [0, 4], [1, 1], [2, 0]]).unwrap();
        assert_eq!(fan, vec![[1, 0], [0, 1], [-1, -1]]);
    }
}
