//! Planar geometry kernel: convex polygons, monotone-chain hulls, boundary
//! sampling, point/region distances and sampled Hausdorff distance.
//!
//! Polygons are stored as counterclockwise vertex lists of `Complex64`.
//! Degenerate hulls are first-class citizens: a single point and a segment
//! (two vertices) arise naturally from collinear input and are handled by
//! every operation here, because real parameters produce width-zero hulls.

use num_complex::Complex64;

/// Cross product of (b - a) x (c - a); positive for a counterclockwise turn.
#[inline]
pub fn cross(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

#[inline]
fn lex_less(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Distance from `p` to the segment `[a, b]`.
pub fn dist_point_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// A bounded convex region given by its counterclockwise vertex list.
///
/// Vertex counts of 1 (point) and 2 (segment) are allowed; they represent
/// regions with empty interior.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    verts: Vec<Complex64>,
}

impl ConvexPolygon {
    /// Convex hull of an arbitrary point set (Andrew's monotone chain).
    ///
    /// Collinear points collapse to a segment, coincident points to a point.
    /// Exactly collinear interior points are dropped, so vertex cross
    /// products of the result are strictly positive up to rounding noise.
    pub fn hull_of(points: &[Complex64]) -> ConvexPolygon {
        let mut pts: Vec<Complex64> = points.iter().copied().filter(|p| p.re.is_finite() && p.im.is_finite()).collect();
        assert!(!pts.is_empty(), "hull of empty point set");
        pts.sort_unstable_by(lex_less);
        pts.dedup();
        ConvexPolygon { verts: chain(&pts) }
    }

    /// Hull of a point set that is already lexicographically sorted and
    /// deduplicated. Used by the orbit iteration to avoid re-sorting.
    pub fn hull_of_sorted(pts: &[Complex64]) -> ConvexPolygon {
        ConvexPolygon { verts: chain(pts) }
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Vertices in lexicographic order (cheap reshuffle of the CCW list).
    pub fn sorted_vertices(&self) -> Vec<Complex64> {
        let mut v = self.verts.clone();
        v.sort_unstable_by(lex_less);
        v
    }

    /// Largest pairwise vertex distance (rotating calipers for n >= 3).
    pub fn diameter(&self) -> f64 {
        let v = &self.verts;
        match v.len() {
            0 => 0.0,
            1 => 0.0,
            2 => (v[1] - v[0]).norm(),
            _ => {
                let n = v.len();
                let mut best = 0.0f64;
                let mut j = 1;
                for i in 0..n {
                    let edge_from = v[i];
                    let edge_to = v[(i + 1) % n];
                    // advance j while the next vertex is farther from edge i
                    loop {
                        let nj = (j + 1) % n;
                        let cur = cross(edge_from, edge_to, v[j]);
                        let nxt = cross(edge_from, edge_to, v[nj]);
                        if nxt > cur {
                            j = nj;
                        } else {
                            break;
                        }
                    }
                    best = best.max((v[j] - edge_from).norm());
                    best = best.max((v[j] - edge_to).norm());
                }
                best
            }
        }
    }

    /// Distance from `p` to the boundary polyline of the region.
    pub fn boundary_distance(&self, p: Complex64) -> f64 {
        let v = &self.verts;
        match v.len() {
            0 => f64::INFINITY,
            1 => (p - v[0]).norm(),
            2 => dist_point_segment(p, v[0], v[1]),
            _ => {
                let mut best = f64::INFINITY;
                for i in 0..v.len() {
                    let d = dist_point_segment(p, v[i], v[(i + 1) % v.len()]);
                    if d < best {
                        best = d;
                    }
                }
                best
            }
        }
    }

    /// True when `p` lies in the region, allowing an absolute slack `tol`
    /// outside every edge.
    pub fn contains(&self, p: Complex64, tol: f64) -> bool {
        let v = &self.verts;
        match v.len() {
            0 => false,
            1 => (p - v[0]).norm() <= tol,
            2 => dist_point_segment(p, v[0], v[1]) <= tol,
            _ => {
                for i in 0..v.len() {
                    let a = v[i];
                    let b = v[(i + 1) % v.len()];
                    let e = (b - a).norm();
                    if cross(a, b, p) < -tol * e.max(1e-300) {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Signed distance to the boundary: positive inside, negative outside,
    /// zero on the boundary. For point/segment regions the interior is
    /// empty, so the result is `-boundary_distance`.
    pub fn signed_clearance(&self, p: Complex64) -> f64 {
        if self.verts.len() < 3 {
            let d = self.boundary_distance(p);
            return if d == 0.0 { 0.0 } else { -d };
        }
        let d = self.boundary_distance(p);
        if self.contains(p, 0.0) {
            d
        } else {
            -d
        }
    }

    pub fn max_abs_im(&self) -> f64 {
        self.verts.iter().fold(0.0f64, |m, v| m.max(v.im.abs()))
    }

    /// Total boundary length. Degenerate regions are traversed out and back,
    /// so a segment has perimeter `2 * length`.
    pub fn perimeter(&self) -> f64 {
        let v = &self.verts;
        match v.len() {
            0 | 1 => 0.0,
            2 => 2.0 * (v[1] - v[0]).norm(),
            _ => (0..v.len())
                .map(|i| (v[(i + 1) % v.len()] - v[i]).norm())
                .sum(),
        }
    }

    /// `n` points equally spaced in arclength along the closed boundary,
    /// starting at vertex 0. Degenerate regions sample the out-and-back
    /// traversal, which covers the segment in both halves.
    pub fn sample_boundary(&self, n: usize) -> Vec<Complex64> {
        let v = &self.verts;
        if v.len() == 1 {
            return vec![v[0]; 1];
        }
        // closed traversal: for a segment this is a -> b -> a
        let cycle: Vec<Complex64> = if v.len() == 2 {
            vec![v[0], v[1], v[0]]
        } else {
            let mut c = v.clone();
            c.push(v[0]);
            c
        };
        let per: f64 = cycle.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
        if per == 0.0 {
            return vec![v[0]; 1];
        }
        let mut out = Vec::with_capacity(n);
        let step = per / n as f64;
        let mut target = 0.0f64;
        let mut walked = 0.0f64;
        let mut seg = 0usize;
        for _ in 0..n {
            while seg + 1 < cycle.len() {
                let seg_len = (cycle[seg + 1] - cycle[seg]).norm();
                if walked + seg_len >= target || seg + 2 == cycle.len() {
                    let t = if seg_len > 0.0 {
                        ((target - walked) / seg_len).clamp(0.0, 1.0)
                    } else {
                        0.0
                    };
                    out.push(cycle[seg] + (cycle[seg + 1] - cycle[seg]) * t);
                    break;
                }
                walked += seg_len;
                seg += 1;
            }
            target += step;
        }
        out
    }

    /// Exact Hausdorff distance to a superset polygon, i.e.
    /// `max_{x in bigger} dist(x, self)`, assuming `self ⊆ bigger`.
    ///
    /// The maximum of a convex distance function over a convex region is
    /// attained at a vertex, so only vertices of `bigger` are inspected.
    /// Vertices bit-identical to a vertex of `self` contribute zero.
    /// Returns early with `f64::INFINITY` once the running maximum exceeds
    /// `abort_above` (callers only compare against a tolerance).
    pub fn growth_from(&self, bigger: &ConvexPolygon, abort_above: f64) -> f64 {
        let old_sorted = self.sorted_vertices();
        let mut worst = 0.0f64;
        for &p in &bigger.verts {
            if old_sorted.binary_search_by(|q| lex_less(q, &p)).is_ok() {
                continue;
            }
            let d = self.region_distance(p);
            if d > worst {
                worst = d;
                if worst > abort_above {
                    return f64::INFINITY;
                }
            }
        }
        worst
    }

    /// Distance from `p` to the region (zero inside).
    pub fn region_distance(&self, p: Complex64) -> f64 {
        if self.verts.len() >= 3 && self.contains(p, 0.0) {
            0.0
        } else {
            self.boundary_distance(p)
        }
    }
}

/// Monotone chain on sorted, deduplicated input. Collinear points are
/// dropped, so the output is strictly convex; 1- and 2-point degenerate
/// results fall out naturally.
fn chain(pts: &[Complex64]) -> Vec<Complex64> {
    let n = pts.len();
    if n <= 2 {
        return pts.to_vec();
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * n);
    // lower
    for &p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    // upper
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 2 {
        // all points collinear and chain collapsed; keep extremes
        return vec![pts[0], pts[n - 1]];
    }
    hull
}

/// A discretized boundary curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledBoundary {
    pub points: Vec<Complex64>,
    pub closed: bool,
}

impl SampledBoundary {
    pub fn new(points: Vec<Complex64>, closed: bool) -> SampledBoundary {
        if closed {
            assert!(points.len() >= 3, "closed boundary needs at least 3 points");
        }
        SampledBoundary { points, closed }
    }

    /// Winding number of the closed sampled curve around `p`.
    pub fn winding_number(&self, p: Complex64) -> i32 {
        let pts = &self.points;
        let mut total = 0.0f64;
        for i in 0..pts.len() {
            let a = pts[i] - p;
            let b = pts[(i + 1) % pts.len()] - p;
            total += (a.re * b.im - a.im * b.re).atan2(a.re * b.re + a.im * b.im);
        }
        (total / (2.0 * std::f64::consts::PI)).round() as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyInput;

impl std::fmt::Display for EmptyInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "point set is empty")
    }
}

impl std::error::Error for EmptyInput {}

/// Sampled Hausdorff distance between two point sets: the maximum of the two
/// directed sup-inf distances over the given samples. This is a lower bound
/// for the Hausdorff distance of the underlying curves; it is exact on the
/// samples themselves.
pub fn hausdorff_distance(a: &SampledBoundary, b: &SampledBoundary) -> Result<f64, EmptyInput> {
    if a.points.is_empty() || b.points.is_empty() {
        return Err(EmptyInput);
    }
    Ok(directed(&a.points, &b.points).max(directed(&b.points, &a.points)))
}

fn directed(from: &[Complex64], to: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for &p in from {
        let mut best = f64::INFINITY;
        for &q in to {
            let d = (p - q).norm_sqr();
            if d < best {
                best = d;
            }
        }
        if best > worst {
            worst = best;
        }
    }
    worst.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = [
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 1.0),
            c(0.0, 1.0),
            c(0.5, 0.5),
            c(0.2, 0.7),
        ];
        let h = ConvexPolygon::hull_of(&pts);
        assert_eq!(h.len(), 4);
        assert!((h.diameter() - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hull_collinear_collapses_to_segment() {
        let pts = [c(0.0, 0.0), c(0.25, 0.0), c(1.0, 0.0), c(0.5, 0.0)];
        let h = ConvexPolygon::hull_of(&pts);
        assert_eq!(h.len(), 2);
        assert_eq!(h.vertices()[0], c(0.0, 0.0));
        assert_eq!(h.vertices()[1], c(1.0, 0.0));
    }

    #[test]
    fn hull_single_point() {
        let h = ConvexPolygon::hull_of(&[c(2.0, 3.0), c(2.0, 3.0)]);
        assert_eq!(h.len(), 1);
        assert_eq!(h.diameter(), 0.0);
        assert_eq!(h.boundary_distance(c(2.0, 3.0)), 0.0);
    }

    #[test]
    fn clearance_sign_convention() {
        let square = ConvexPolygon::hull_of(&[c(0.0, 0.0), c(2.0, 0.0), c(2.0, 2.0), c(0.0, 2.0)]);
        assert!((square.signed_clearance(c(1.0, 1.0)) - 1.0).abs() < 1e-15);
        assert!((square.signed_clearance(c(3.0, 1.0)) + 1.0).abs() < 1e-15);
        assert_eq!(square.signed_clearance(c(0.0, 1.0)), 0.0);
    }

    #[test]
    fn segment_contains_and_distance() {
        let seg = ConvexPolygon::hull_of(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(seg.contains(c(0.5, 0.0), 1e-12));
        assert!(!seg.contains(c(0.5, 0.1), 1e-12));
        assert!((seg.boundary_distance(c(0.5, 0.25)) - 0.25).abs() < 1e-15);
        assert_eq!(seg.signed_clearance(c(0.5, 0.0)), 0.0);
    }

    #[test]
    fn boundary_sampling_is_arclength_uniform() {
        let square = ConvexPolygon::hull_of(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]);
        let samples = square.sample_boundary(8);
        assert_eq!(samples.len(), 8);
        // every half-unit along the perimeter
        assert_eq!(samples[0], c(0.0, 0.0));
        assert_eq!(samples[1], c(0.5, 0.0));
        assert_eq!(samples[4], c(1.0, 1.0));
        for w in samples.windows(2) {
            assert!(((w[1] - w[0]).norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn growth_from_detects_expansion() {
        let small = ConvexPolygon::hull_of(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]);
        let big = ConvexPolygon::hull_of(&[
            c(0.0, 0.0),
            c(1.5, 0.0),
            c(1.5, 1.0),
            c(0.0, 1.0),
        ]);
        let g = small.growth_from(&big, f64::INFINITY);
        assert!((g - 0.5).abs() < 1e-15);
        assert_eq!(small.growth_from(&small, 1e-9), 0.0);
    }

    #[test]
    fn winding_number_unit_circle() {
        let n = 256;
        let pts: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        let curve = SampledBoundary::new(pts, true);
        assert_eq!(curve.winding_number(c(0.0, 0.0)), 1);
        assert_eq!(curve.winding_number(c(0.5, 0.3)), 1);
        assert_eq!(curve.winding_number(c(1.5, 0.0)), 0);
    }

    #[test]
    fn hausdorff_basics() {
        let s = SampledBoundary {
            points: vec![c(0.0, 0.0)],
            closed: false,
        };
        let t = SampledBoundary {
            points: vec![c(0.1, 0.0)],
            closed: false,
        };
        assert_eq!(hausdorff_distance(&s, &s).unwrap(), 0.0);
        assert!((hausdorff_distance(&s, &t).unwrap() - 0.1).abs() < 1e-15);
        let empty = SampledBoundary {
            points: vec![],
            closed: false,
        };
        assert_eq!(hausdorff_distance(&s, &empty), Err(EmptyInput));
    }
}
