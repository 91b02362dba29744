//! Planar polygons, boundary moments, disk intersections, Fraenkel
//! asymmetry and the λ₂ upper-bound chain for planar domains.

use crate::error::{invalid, Error, Result};
use crate::numerics::{integrate, nelder_mead};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type Point = [f64; 2];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

/// Simple polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarPolygon {
    vertices: Vec<Point>,
    area: f64,
    perimeter: f64,
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    cross(sub(b, a), sub(c, a))
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

impl PlanarPolygon {
    /// Validates and orients the vertex loop. A repeated closing vertex is
    /// dropped.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("{n} vertices")));
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite coordinate".into()));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidPolygon(format!("repeated vertex at {i}")));
            }
        }
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            for j in i + 1..n {
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let hit = if adjacent {
                    // neighbours share one vertex; they must not fold back
                    let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    orient(p, shared, q) == 0.0 && dot(sub(p, shared), sub(q, shared)) > 0.0
                } else {
                    segments_touch(a, b, c, d)
                };
                if hit {
                    return Err(Error::InvalidPolygon(format!("edges {i} and {j} intersect")));
                }
            }
        }
        let mut twice = 0.0;
        for i in 0..n {
            twice += cross(vertices[i], vertices[(i + 1) % n]);
        }
        if !(twice.abs() > 0.0) {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if twice < 0.0 {
            vertices.reverse();
        }
        let perimeter = (0..n).map(|i| norm(sub(vertices[(i + 1) % n], vertices[i]))).sum();
        Ok(PlanarPolygon { vertices, area: 0.5 * twice.abs(), perimeter })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// The polygon moved by v.
    pub fn translated(&self, v: Point) -> Self {
        let vertices = self.vertices.iter().map(|p| [p[0] + v[0], p[1] + v[1]]).collect();
        PlanarPolygon { vertices, ..*self }
    }

    /// The polygon rotated by angle about the origin.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let vertices = self.vertices.iter().map(|p| [c * p[0] - s * p[1], s * p[0] + c * p[1]]).collect();
        PlanarPolygon { vertices, ..*self }
    }

    /// The polygon scaled by α > 0 about the origin.
    pub fn scaled(&self, alpha: f64) -> Self {
        assert!(alpha > 0.0, "scale factor must be positive");
        let vertices = self.vertices.iter().map(|p| [alpha * p[0], alpha * p[1]]).collect();
        PlanarPolygon { vertices, area: alpha * alpha * self.area, perimeter: alpha * self.perimeter }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolygonMeasures {
    pub area: f64,
    pub perimeter: f64,
    /// Mean of the boundary points with respect to arc length.
    pub boundary_centroid: Point,
}

pub fn polygon_measures(poly: &PlanarPolygon) -> PolygonMeasures {
    let mut c = [0.0; 2];
    for (a, b) in poly.edges() {
        let len = norm(sub(b, a));
        c[0] += 0.5 * (a[0] + b[0]) * len;
        c[1] += 0.5 * (a[1] + b[1]) * len;
    }
    PolygonMeasures {
        area: poly.area,
        perimeter: poly.perimeter,
        boundary_centroid: [c[0] / poly.perimeter, c[1] / poly.perimeter],
    }
}

/// ∫_{∂Ω} |x − center|^p dσ.
pub fn boundary_moment(poly: &PlanarPolygon, p: f64, center: Point) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return invalid(format!("moment exponent must exceed 1, got {p}"));
    }
    let mut total = 0.0;
    for (pa, pb) in poly.edges() {
        let a = sub(pa, center);
        let d = sub(pb, pa);
        let len = norm(d);
        if p == 2.0 {
            total += len * (dot(a, a) + dot(a, d) + dot(d, d) / 3.0);
        } else {
            // the closest point to the center is where |x|^p loses smoothness
            let t0 = (-dot(a, d) / dot(d, d)).clamp(0.0, 1.0);
            let brk: Vec<f64> = if t0 > 0.0 && t0 < 1.0 { vec![t0] } else { vec![] };
            let f = |t: f64| norm([a[0] + t * d[0], a[1] + t * d[1]]).powf(p);
            total += len * integrate(f, 0.0, 1.0, &brk, 1e-13, 0.0)?.value;
        }
    }
    Ok(total)
}

/// Signed area of disk(0, r) ∩ triangle(0, a, b), and whether the edge
/// grazes the circle.
fn edge_disk_area(a: Point, b: Point, r: f64) -> (f64, bool) {
    let d = sub(b, a);
    let qa = dot(d, d);
    let qb = 2.0 * dot(a, d);
    let qc = dot(a, a) - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    let grazing = disc.abs() <= 1e-12 * (qb * qb + 4.0 * qa * qc.abs()) && disc != 0.0;
    let mut ts = vec![0.0];
    if disc > 0.0 {
        let s = disc.sqrt();
        // stable pair of roots
        let q = -0.5 * (qb + qb.signum() * s);
        let mut roots = [q / qa, qc / q];
        roots.sort_by(|x, y| x.total_cmp(y));
        ts.extend(roots.into_iter().filter(|&t| t > 0.0 && t < 1.0));
    }
    ts.push(1.0);
    let at = |t: f64| [a[0] + t * d[0], a[1] + t * d[1]];
    let mut area = 0.0;
    for w in ts.windows(2) {
        let (p, q) = (at(w[0]), at(w[1]));
        let m = at(0.5 * (w[0] + w[1]));
        if dot(m, m) <= r * r {
            area += 0.5 * cross(p, q);
        } else {
            area += 0.5 * r * r * cross(p, q).atan2(dot(p, q));
        }
    }
    (area, grazing)
}

fn intersection_at(poly: &PlanarPolygon, center: Point, radius: f64) -> (f64, bool) {
    let mut total = 0.0;
    let mut grazing = false;
    for (a, b) in poly.edges() {
        let (v, g) = edge_disk_area(sub(a, center), sub(b, center), radius);
        total += v;
        grazing |= g;
    }
    (total, grazing)
}

/// Exact |Ω ∩ B(center, radius)|. A circle that grazes an edge is
/// enlarged by a relative 1e−12 before evaluating.
pub fn disk_polygon_intersection_area(poly: &PlanarPolygon, center: Point, radius: f64) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return invalid(format!("radius must be positive, got {radius}"));
    }
    let (mut v, grazing) = intersection_at(poly, center, radius);
    if grazing {
        v = intersection_at(poly, center, radius * (1.0 + 1e-12)).0;
    }
    Ok(v.clamp(0.0, poly.area.min(PI * radius * radius)))
}

/// |Ω Δ B(center, R)| with R fixed by |B| = |Ω|.
pub fn symmetric_difference(poly: &PlanarPolygon, center: Point) -> Result<f64> {
    let radius = (poly.area / PI).sqrt();
    Ok(2.0 * (poly.area - disk_polygon_intersection_area(poly, center, radius)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymmetry {
    pub value: f64,
    pub center: Point,
}

/// Fraenkel asymmetry: a 33×33 grid of centers over the bounding box, then
/// Nelder–Mead from the three best grid points.
pub fn fraenkel_asymmetry(poly: &PlanarPolygon) -> Asymmetry {
    let area = poly.area;
    let cost = |c: &[f64]| -> f64 {
        symmetric_difference(poly, [c[0], c[1]]).expect("radius is positive") / area
    };
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for v in &poly.vertices {
        for k in 0..2 {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    const G: usize = 33;
    let mut grid = Vec::with_capacity(G * G);
    for i in 0..G {
        for j in 0..G {
            let c = [
                lo[0] + (hi[0] - lo[0]) * i as f64 / (G - 1) as f64,
                lo[1] + (hi[1] - lo[1]) * j as f64 / (G - 1) as f64,
            ];
            grid.push((cost(&c), c));
        }
    }
    grid.sort_by(|x, y| x.0.total_cmp(&y.0));
    let step = (hi[0] - lo[0]).max(hi[1] - lo[1]) / (G - 1) as f64;
    let xtol = 1e-7 * step.max(f64::MIN_POSITIVE);
    let mut best = Asymmetry { value: grid[0].0, center: grid[0].1 };
    for &(_, c) in grid.iter().take(3) {
        let (x, v) = nelder_mead(cost, &c, step, xtol, 2000);
        if v < best.value {
            best = Asymmetry { value: v, center: [x[0], x[1]] };
        }
    }
    best.value = best.value.clamp(0.0, 2.0);
    best
}

/// c_{N,p} of the boundary-moment inequality and δ_N of the quantitative
/// λ₂ bound.
pub fn stability_constants(dim: usize, p: f64) -> Result<(f64, f64)> {
    if dim < 2 {
        return invalid(format!("dimension {dim} below 2"));
    }
    if !(p > 1.0 && p.is_finite()) {
        return invalid(format!("moment exponent must exceed 1, got {p}"));
    }
    let n = dim as f64;
    let root2 = 2f64.powf(1.0 / n);
    let tmin = 1f64.min(root2.powf(p - 1.0));
    let c = (n + p - 1.0) * (p - 1.0) / 4.0 * (root2 - 1.0) / n * tmin;
    let delta = (n + 1.0) / (8.0 * n) * (root2 - 1.0);
    Ok((c, delta))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoReport {
    pub tau: f64,
    pub area: f64,
    pub perimeter: f64,
    pub boundary_centroid: Point,
    /// ∫_{∂Ω}|x − c|² dσ about the boundary centroid.
    pub moment2: f64,
    /// |Ω Δ Ω*| with Ω* centered at the boundary centroid.
    pub symmetric_difference: f64,
    pub asymmetry: f64,
    pub asymmetry_center: Point,
    pub c_constant: f64,
    pub delta: f64,
    pub moment_lhs: f64,
    pub moment_rhs: f64,
    pub moment_holds: bool,
    pub radius_star: f64,
    pub lambda2_upper_bound: f64,
    pub lambda2_star: f64,
    pub upper_bound_holds: bool,
    /// λ₂(Ω*)(1 − δ₂A²).
    pub quantitative_bound: f64,
    pub quantitative_slack: f64,
    pub quantitative_holds: bool,
}

const CSV_FIELDS: [&str; 22] = [
    "tau",
    "area",
    "perimeter",
    "centroid_x",
    "centroid_y",
    "moment2",
    "symmetric_difference",
    "asymmetry",
    "asymmetry_center_x",
    "asymmetry_center_y",
    "c_constant",
    "delta",
    "moment_lhs",
    "moment_rhs",
    "moment_holds",
    "radius_star",
    "lambda2_upper_bound",
    "lambda2_star",
    "upper_bound_holds",
    "quantitative_bound",
    "quantitative_slack",
    "quantitative_holds",
];

impl IsoReport {
    pub fn csv_header() -> String {
        CSV_FIELDS.join(",")
    }

    pub fn csv_row(&self) -> String {
        let nums = [
            self.tau,
            self.area,
            self.perimeter,
            self.boundary_centroid[0],
            self.boundary_centroid[1],
            self.moment2,
            self.symmetric_difference,
            self.asymmetry,
            self.asymmetry_center[0],
            self.asymmetry_center[1],
            self.c_constant,
            self.delta,
            self.moment_lhs,
            self.moment_rhs,
        ];
        let mut cells: Vec<String> = nums.iter().map(|x| format!("{x:.16e}")).collect();
        cells.push(self.moment_holds.to_string());
        for x in [self.radius_star, self.lambda2_upper_bound, self.lambda2_star] {
            cells.push(format!("{x:.16e}"));
        }
        cells.push(self.upper_bound_holds.to_string());
        for x in [self.quantitative_bound, self.quantitative_slack] {
            cells.push(format!("{x:.16e}"));
        }
        cells.push(self.quantitative_holds.to_string());
        cells.join(",")
    }
}

/// The upper-bound chain for λ₂ on a planar domain, after moving the
/// boundary centroid to the origin.
pub fn isoperimetric_report(poly: &PlanarPolygon, tau: f64) -> Result<IsoReport> {
    if !(tau > 0.0 && tau.is_finite()) {
        return invalid(format!("tau must be positive, got {tau}"));
    }
    let m = polygon_measures(poly);
    let c = m.boundary_centroid;
    let moment2 = boundary_moment(poly, 2.0, c)?;
    let radius_star = (m.area / PI).sqrt();
    let sd = symmetric_difference(poly, c)?;
    let asym = fraenkel_asymmetry(poly);
    let (c_constant, delta) = stability_constants(2, 2.0)?;
    let circle_moment = 2.0 * PI * radius_star.powi(3);
    let rhs = circle_moment * (1.0 + c_constant * (sd / m.area).powi(2));
    let ub = 2.0 * tau * m.area / moment2;
    let lambda2_star = tau / radius_star;
    let quantitative_bound = lambda2_star * (1.0 - delta * asym.value * asym.value);
    Ok(IsoReport {
        tau,
        area: m.area,
        perimeter: m.perimeter,
        boundary_centroid: c,
        moment2,
        symmetric_difference: sd,
        asymmetry: asym.value,
        asymmetry_center: asym.center,
        c_constant,
        delta,
        moment_lhs: moment2,
        moment_rhs: rhs,
        moment_holds: moment2 >= rhs,
        radius_star,
        lambda2_upper_bound: ub,
        lambda2_star,
        upper_bound_holds: ub <= lambda2_star,
        quantitative_bound,
        quantitative_slack: quantitative_bound - ub,
        quantitative_holds: ub <= quantitative_bound,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolygonEntry {
    Bare(Vec<Point>),
    Named { name: String, vertices: Vec<Point> },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolygonFile {
    Single(Vec<Point>),
    Many(Vec<PolygonEntry>),
}

/// Polygons from JSON: one vertex array, or an array whose entries are
/// vertex arrays or {"name", "vertices"} objects.
pub fn polygons_from_json(text: &str) -> Result<Vec<(String, PlanarPolygon)>> {
    let parsed: PolygonFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidArgument(format!("polygon JSON: {e}")))?;
    let entries = match parsed {
        PolygonFile::Single(v) => vec![PolygonEntry::Bare(v)],
        PolygonFile::Many(v) => v,
    };
    entries
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let (name, vertices) = match e {
                PolygonEntry::Bare(v) => (format!("polygon-{i}"), v),
                PolygonEntry::Named { name, vertices } => (name, vertices),
            };
            Ok((name, PlanarPolygon::new(vertices)?))
        })
        .collect()
}

/// Test shapes.
pub mod shapes {
    use super::{PlanarPolygon, Point};
    use std::f64::consts::PI;

    /// Regular n-gon inscribed in the circle of the given radius.
    pub fn regular(n: usize, radius: f64) -> PlanarPolygon {
        let v = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                [radius * t.cos(), radius * t.sin()]
            })
            .collect();
        PlanarPolygon::new(v).expect("regular polygons are simple")
    }

    /// Axis-aligned rectangle centered at the origin.
    pub fn rectangle(width: f64, height: f64) -> PlanarPolygon {
        let (w, h) = (0.5 * width, 0.5 * height);
        PlanarPolygon::new(vec![[-w, -h], [w, -h], [w, h], [-w, h]]).expect("rectangles are simple")
    }

    /// Star-shaped polygon r(θ) = 1 + Σ a_k cos(kθ + φ_k) sampled at n
    /// angles, with modes (k, a_k, φ_k); needs Σ|a_k| < 1.
    pub fn perturbed_disk(n: usize, modes: &[(usize, f64, f64)]) -> PlanarPolygon {
        let v: Vec<Point> = (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                let r = 1.0 + modes.iter().map(|&(k, a, p)| a * (k as f64 * t + p).cos()).sum::<f64>();
                [r * t.cos(), r * t.sin()]
            })
            .collect();
        PlanarPolygon::new(v).expect("star-shaped sampling is simple")
    }

    /// The unit square with its upper-right quarter removed, scaled by s.
    pub fn l_shape(s: f64) -> PlanarPolygon {
        let v = [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]];
        PlanarPolygon::new(v.iter().map(|p| [s * p[0], s * p[1]]).collect()).expect("the L-shape is simple")
    }

    /// A fixed corpus of named test polygons.
    pub fn corpus() -> Vec<(String, PlanarPolygon)> {
        let mut out = Vec::new();
        for n in [3, 4, 5, 6, 7, 8, 12, 16, 32, 64, 128] {
            out.push((format!("regular-{n}"), regular(n, 1.0)));
        }
        for ratio in [1.0, 1.5, 2.0, 3.0, 5.0, 10.0] {
            // area π
            let h = (PI / ratio).sqrt();
            out.push((format!("rectangle-{ratio}"), rectangle(ratio * h, h)));
        }
        let perturbations: [&[(usize, f64, f64)]; 5] = [
            &[(2, 0.1, 0.0)],
            &[(3, 0.2, 0.4)],
            &[(2, 0.15, 0.0), (5, 0.05, 1.0)],
            &[(4, 0.3, 0.0)],
            &[(1, 0.25, 0.0), (3, 0.1, 2.0), (7, 0.04, 0.5)],
        ];
        for (i, m) in perturbations.iter().enumerate() {
            out.push((format!("perturbed-disk-{i}"), perturbed_disk(200, m)));
        }
        out.push(("l-shape".into(), l_shape(1.0)));
        out
    }
}
