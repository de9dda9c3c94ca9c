//! Tangent cones of hypersurface germs.
//!
//! The defining form of the cone is the initial form of the input; for
//! plane curves the cone splits into tangent lines with multiplicities.
//! Numeric companions: secant-direction sampling on the variety and a
//! tangent-map estimator for black-box bi-Lipschitz homeomorphisms.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, UniPoly};
use crate::rngutil::{self, random_unit_vector};
use crate::uniroots::find_roots;
use num_complex::Complex64;
use rand::Rng;

/// A direction in the complex projective line, normalized so the first
/// max-modulus coordinate is real positive, with the multiplicity of the
/// corresponding linear factor in the defining form.
#[derive(Debug, Clone)]
pub struct TangentLine {
    pub direction: [Complex64; 2],
    pub cone_multiplicity: usize,
}

impl TangentLine {
    /// Canonical representative: divide by the first coordinate of maximal
    /// modulus, then rotate so that coordinate is real positive.
    pub fn new(direction: [Complex64; 2], cone_multiplicity: usize) -> Result<Self> {
        let dir = normalize_projective(direction)?;
        Ok(TangentLine {
            direction: dir,
            cone_multiplicity,
        })
    }

    /// Projective distance between normalized representatives.
    pub fn distance(&self, other: &TangentLine) -> f64 {
        projective_distance(self.direction, other.direction)
    }

    pub fn approx_eq(&self, other: &TangentLine, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

/// Normalizes a nonzero pair (a : b) to the canonical representative.
pub fn normalize_projective(v: [Complex64; 2]) -> Result<[Complex64; 2]> {
    let n0 = v[0].norm();
    let n1 = v[1].norm();
    if n0 == 0.0 && n1 == 0.0 {
        return Err(Error::InvalidInput("projective point (0, 0)".into()));
    }
    let pivot = if n0 >= n1 { v[0] } else { v[1] };
    Ok([v[0] / pivot, v[1] / pivot])
}

/// Distance between complex lines through the origin: the sine of the
/// Fubini-Study angle, computed as the component of one unit vector
/// orthogonal to the other. This form has no cancellation near zero, so
/// identical lines measure ~1e-16 apart rather than ~1e-8.
pub fn projective_distance(a: [Complex64; 2], b: [Complex64; 2]) -> f64 {
    projective_distance_vec(&a, &b)
}

/// The tangent cone of a hypersurface germ: its defining homogeneous form
/// and, for plane curves, the list of tangent lines.
#[derive(Debug, Clone)]
pub struct ConeDescription {
    pub defining_form: Polynomial,
    /// Populated only in the plane-curve case (two variables).
    pub lines: Vec<TangentLine>,
}

/// Tangent cone of `V(f)` at the origin: the zero set of the initial form.
pub fn hypersurface_cone(f: &Polynomial) -> Result<ConeDescription> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.ord0() == Some(0) {
        return Err(Error::InvalidInput(
            "germ is not at the origin: f(0) != 0".into(),
        ));
    }
    let defining_form = f.initial_form()?;
    let lines = if f.nvars() == 2 {
        tangent_lines(&defining_form)?
    } else {
        Vec::new()
    };
    Ok(ConeDescription {
        defining_form,
        lines,
    })
}

/// Splits a homogeneous binary form into tangent lines. Roots of
/// `f2(1, t)` give lines `(1 : t)`; the drop in degree of `f2(1, t)`
/// contributes the line `(0 : 1)` with the dropped multiplicity.
pub fn tangent_lines(f2: &Polynomial) -> Result<Vec<TangentLine>> {
    if f2.nvars() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "tangent lines require 2 variables, got {}",
            f2.nvars()
        )));
    }
    let (homog, deg) = f2.is_homogeneous();
    if !homog || f2.is_zero() {
        return Err(Error::InvalidInput(
            "tangent lines require a nonzero homogeneous form".into(),
        ));
    }
    let deg = deg.expect("nonzero homogeneous form has a degree") as usize;

    // coefficients of u(t) = f2(1, t)
    let mut coeffs = vec![Complex64::new(0.0, 0.0); deg + 1];
    for (m, c) in f2.terms() {
        coeffs[m.exponents[1] as usize] += c.to_complex();
    }
    let u = UniPoly::new(coeffs);
    let drop = if u.is_zero() { deg } else { deg - u.degree() };

    let mut lines: Vec<TangentLine> = Vec::new();
    if !u.is_zero() && u.degree() >= 1 {
        let roots = find_roots(&u, 1e-12)?;
        if !roots.converged {
            return Err(Error::NonConvergence(
                "tangent-line root extraction did not converge".into(),
            ));
        }
        // cluster near-coincident roots into multiplicities
        let scale = roots
            .roots
            .iter()
            .map(|z| z.norm())
            .fold(1.0f64, f64::max);
        let clusters = cluster_points(&roots.roots, 1e-6 * scale);
        for cluster in clusters {
            let center = cluster.iter().copied().sum::<Complex64>() / cluster.len() as f64;
            lines.push(TangentLine::new(
                [Complex64::new(1.0, 0.0), center],
                cluster.len(),
            )?);
        }
    }
    if drop > 0 {
        lines.push(TangentLine::new(
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            drop,
        )?);
    }
    lines.sort_by(|a, b| {
        a.direction[1]
            .norm()
            .partial_cmp(&b.direction[1].norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(
                a.direction[1]
                    .arg()
                    .partial_cmp(&b.direction[1].arg())
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
    });
    debug_assert_eq!(
        lines.iter().map(|l| l.cone_multiplicity).sum::<usize>(),
        deg
    );
    Ok(lines)
}

/// Single-linkage clustering of complex points at the given threshold.
fn cluster_points(points: &[Complex64], threshold: f64) -> Vec<Vec<Complex64>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (points[i] - points[j]).norm() <= threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(points[i]);
    }
    groups.into_values().collect()
}

/// A sampled direction toward the variety with its cluster label.
#[derive(Debug, Clone)]
pub struct SecantDirection {
    pub direction: Vec<Complex64>,
    pub cluster: usize,
}

/// Result of secant-direction sampling: labeled unit vectors plus one
/// representative center per cluster.
#[derive(Debug, Clone)]
pub struct SecantClusters {
    pub directions: Vec<SecantDirection>,
    pub centers: Vec<Vec<Complex64>>,
}

/// Samples points of `V(f)` at magnitude about `scale` by slicing random
/// affine lines, normalizes them to unit secant directions, and clusters
/// them by projective proximity. Cluster centers approximate the link of
/// the tangent cone.
pub fn secant_directions(
    f: &Polynomial,
    scale: f64,
    count: usize,
    seed: u64,
) -> Result<SecantClusters> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    let mut rng = rngutil::rng_from(seed, "secant-directions");
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    let max_tries = count * 60 + 600;
    let mut tries = 0;
    while points.len() < count && tries < max_tries {
        tries += 1;
        let dir = random_unit_vector(&mut rng, n);
        let base: Vec<Complex64> = {
            let raw = random_unit_vector(&mut rng, n);
            let r = scale * 0.9 * rng.gen::<f64>();
            raw.into_iter().map(|z| z * r).collect()
        };
        let restricted = f.restrict_to_line(&base, &dir)?;
        if restricted.is_zero() || restricted.degree() == 0 {
            continue;
        }
        let roots = match find_roots(&restricted, 1e-12) {
            Ok(r) if r.converged => r,
            _ => continue,
        };
        for t in roots.roots {
            let p: Vec<Complex64> = base
                .iter()
                .zip(&dir)
                .map(|(b, d)| b + t * d)
                .collect();
            let norm: f64 = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm >= scale / 4.0 && norm <= scale {
                points.push(p.iter().map(|z| z / norm).collect());
            }
        }
    }
    if points.len() < count.min(8) {
        return Err(Error::NoPointsFound(format!(
            "found {} variety points at scale {scale} after {tries} slices",
            points.len()
        )));
    }

    // single-linkage on projector distance with threshold 10 * scale
    let threshold = 10.0 * scale;
    let m = points.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if projective_distance_vec(&points[i], &points[j]) <= threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut label_of_root: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut directions = Vec::with_capacity(m);
    for i in 0..m {
        let r = find(&mut parent, i);
        let next = clusters.len();
        let label = *label_of_root.entry(r).or_insert_with(|| {
            clusters.push(Vec::new());
            next
        });
        clusters[label].push(i);
        directions.push(SecantDirection {
            direction: points[i].clone(),
            cluster: label,
        });
    }

    // cluster center: principal eigenvector of the mean projector, which
    // quotients out the per-sample phases
    let mut centers = Vec::with_capacity(clusters.len());
    for members in &clusters {
        centers.push(principal_direction(
            members.iter().map(|&i| points[i].as_slice()),
            n,
        ));
    }
    Ok(SecantClusters {
        directions,
        centers,
    })
}

/// Projective distance between nonzero vectors of any dimension: the norm
/// of the component of `a/|a|` orthogonal to `b/|b|` (the sine of the
/// angle between the lines).
pub fn projective_distance_vec(a: &[Complex64], b: &[Complex64]) -> f64 {
    let na: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let inner: Complex64 = b
        .iter()
        .zip(a)
        .map(|(y, x)| y.conj() * x)
        .sum::<Complex64>()
        / (na * nb);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x / na - (y / nb) * inner).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Principal eigenvector of the sum of projectors vv* by power iteration.
fn principal_direction<'a>(
    members: impl Iterator<Item = &'a [Complex64]> + Clone,
    n: usize,
) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    // deterministic start: first member
    if let Some(first) = members.clone().next() {
        v.copy_from_slice(first);
    }
    for _ in 0..25 {
        let mut next = vec![Complex64::new(0.0, 0.0); n];
        for u in members.clone() {
            let inner: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (nx, &ui) in next.iter_mut().zip(u) {
                *nx += ui * inner;
            }
        }
        let norm: f64 = next.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            break;
        }
        v = next.into_iter().map(|z| z / norm).collect();
    }
    v
}

/// A black-box map germ assumed bi-Lipschitz near the origin with
/// `phi(0) = 0`, optionally with its Lipschitz constants.
pub struct MapSample {
    map: Box<dyn Fn(&[Complex64]) -> Vec<Complex64>>,
    pub lipschitz_hint: Option<(f64, f64)>,
}

impl MapSample {
    /// Wraps the map, checking `phi(0) = 0` numerically.
    pub fn new(
        dim: usize,
        map: Box<dyn Fn(&[Complex64]) -> Vec<Complex64>>,
        lipschitz_hint: Option<(f64, f64)>,
    ) -> Result<Self> {
        let zero = vec![Complex64::new(0.0, 0.0); dim];
        let at0 = map(&zero);
        let norm: f64 = at0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "map does not fix the origin: |phi(0)| = {norm:.3e}"
            )));
        }
        Ok(MapSample {
            map,
            lipschitz_hint,
        })
    }

    pub fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        (self.map)(x)
    }
}

/// Convergence record of the rescaled-map limit.
#[derive(Debug, Clone)]
pub struct DerivativeEstimate {
    pub value: Vec<Complex64>,
    /// Successive differences |phi(t_{k+1} v)/t_{k+1} - phi(t_k v)/t_k|.
    pub cauchy_differences: Vec<f64>,
    /// True when the differences are non-increasing to the end.
    pub converging: bool,
}

/// Default grid for the tangent-map estimator: geometric from 1e-2 down
/// to 1e-6 with ratio 1/2.
pub fn default_tgrid() -> Vec<f64> {
    let mut t = 1e-2;
    let mut out = Vec::new();
    while t >= 1e-6 {
        out.push(t);
        t *= 0.5;
    }
    out
}

/// Plain limit estimate of `d phi(v)` as `phi(t v) / t` along a decreasing
/// grid, with a Cauchy-difference diagnostic. Divergence is reported in
/// the diagnostic, not as an error.
pub fn map_derivative_estimate(
    phi: &MapSample,
    v: &[Complex64],
    tgrid: &[f64],
) -> Result<DerivativeEstimate> {
    if tgrid.len() < 4 {
        return Err(Error::InvalidInput(
            "tgrid needs at least 4 entries".into(),
        ));
    }
    if tgrid.windows(2).any(|w| w[1] >= w[0]) || tgrid.iter().any(|&t| t <= 0.0) {
        return Err(Error::InvalidInput(
            "tgrid must be strictly decreasing and positive".into(),
        ));
    }
    let mut estimates: Vec<Vec<Complex64>> = Vec::with_capacity(tgrid.len());
    for &t in tgrid {
        let x: Vec<Complex64> = v.iter().map(|&z| z * t).collect();
        let y = phi.eval(&x);
        estimates.push(y.into_iter().map(|z| z / t).collect());
    }
    let mut diffs = Vec::with_capacity(estimates.len() - 1);
    for w in estimates.windows(2) {
        let d: f64 = w[0]
            .iter()
            .zip(&w[1])
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        diffs.push(d);
    }
    let converging = diffs.windows(2).all(|w| w[1] <= w[0] + 1e-14);
    Ok(DerivativeEstimate {
        value: estimates.last().expect("nonempty grid").clone(),
        cauchy_differences: diffs,
        converging,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p2(text: &str) -> Polynomial {
        parse(text, &["x", "y"]).unwrap()
    }

    fn line(a: f64, b: f64) -> TangentLine {
        TangentLine::new([Complex64::new(a, 0.0), Complex64::new(b, 0.0)], 1).unwrap()
    }

    #[test]
    fn cusp_cone_is_doubled_horizontal_line() {
        let cone = hypersurface_cone(&p2("x^3 - y^2")).unwrap();
        assert_eq!(cone.defining_form, p2("-y^2"));
        assert_eq!(cone.lines.len(), 1);
        assert_eq!(cone.lines[0].cone_multiplicity, 2);
        assert!(cone.lines[0].approx_eq(&line(1.0, 0.0), 1e-9));
    }

    #[test]
    fn whitney_cone_has_four_simple_lines() {
        let cone = hypersurface_cone(&p2("x*y*(y-x)*(y-2*x)")).unwrap();
        assert_eq!(cone.lines.len(), 4);
        assert!(cone.lines.iter().all(|l| l.cone_multiplicity == 1));
        let expected = [line(1.0, 0.0), line(0.0, 1.0), line(1.0, 1.0), line(1.0, 2.0)];
        for e in &expected {
            assert!(
                cone.lines.iter().any(|l| l.approx_eq(e, 1e-9)),
                "missing line {:?}",
                e.direction
            );
        }
    }

    #[test]
    fn homogeneous_input_is_its_own_cone() {
        let f = p2("x*y*(y-x)*(y-2*x)");
        let cone = hypersurface_cone(&f).unwrap();
        assert_eq!(cone.defining_form, f);
    }

    #[test]
    fn germ_away_from_origin_rejected() {
        assert!(hypersurface_cone(&p2("x + 1")).is_err());
    }

    #[test]
    fn tangent_lines_examples() {
        // -y^2: the horizontal line doubled
        let ls = tangent_lines(&p2("-y^2")).unwrap();
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].cone_multiplicity, 2);
        assert!(ls[0].approx_eq(&line(1.0, 0.0), 1e-9));
        // xy: both axes
        let ls = tangent_lines(&p2("x*y")).unwrap();
        assert_eq!(ls.len(), 2);
        assert!(ls.iter().any(|l| l.approx_eq(&line(1.0, 0.0), 1e-9)));
        assert!(ls.iter().any(|l| l.approx_eq(&line(0.0, 1.0), 1e-9)));
        // y^2 - x^2: the two diagonals
        let ls = tangent_lines(&p2("y^2 - x^2")).unwrap();
        assert_eq!(ls.len(), 2);
        assert!(ls.iter().any(|l| l.approx_eq(&line(1.0, 1.0), 1e-9)));
        assert!(ls.iter().any(|l| l.approx_eq(&line(1.0, -1.0), 1e-9)));
    }

    #[test]
    fn multiplicities_add_to_degree() {
        for text in ["-y^2", "x*y", "y^2 - x^2", "x*y*(y-x)*(y-2*x)", "x^3", "y^4"] {
            let f = p2(text);
            let ls = tangent_lines(&f).unwrap();
            let total: usize = ls.iter().map(|l| l.cone_multiplicity).sum();
            assert_eq!(total as u32, f.degree().unwrap(), "for {text}");
        }
    }

    #[test]
    fn secant_directions_cusp_single_cluster_on_cone() {
        let f = p2("x^3 - y^2");
        let scale = 1e-3;
        let out = secant_directions(&f, scale, 160, 11).unwrap();
        assert_eq!(out.centers.len(), 1, "projectively one cluster");
        let center = &out.centers[0];
        let form = f.initial_form().unwrap();
        let v = form
            .evaluate(&[center[0], center[1]])
            .unwrap()
            .norm();
        assert!(v <= 10.0 * scale, "|in(f)(center)| = {v}");
        // every secant direction is near the horizontal line
        for d in &out.directions {
            let dist = projective_distance_vec(
                &d.direction,
                &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            );
            assert!(dist < 0.1, "direction strays {dist}");
        }
    }

    #[test]
    fn secant_directions_node_two_clusters() {
        let out = secant_directions(&p2("x*y"), 1e-3, 160, 5).unwrap();
        assert_eq!(out.centers.len(), 2);
    }

    #[test]
    fn secant_directions_two_diagonals() {
        let out = secant_directions(&p2("y^2 - x^2"), 1e-3, 160, 5).unwrap();
        assert_eq!(out.centers.len(), 2);
        let d1 = [
            Complex64::new(1.0 / 2f64.sqrt(), 0.0),
            Complex64::new(1.0 / 2f64.sqrt(), 0.0),
        ];
        let d2 = [
            Complex64::new(1.0 / 2f64.sqrt(), 0.0),
            Complex64::new(-1.0 / 2f64.sqrt(), 0.0),
        ];
        for want in [d1, d2] {
            assert!(out
                .centers
                .iter()
                .any(|c| projective_distance_vec(c, &want) < 1e-2));
        }
    }

    #[test]
    fn derivative_of_linear_map_is_exact() {
        let a = [
            [Complex64::new(0.3, 0.1), Complex64::new(-1.2, 0.0)],
            [Complex64::new(0.0, 0.7), Complex64::new(0.5, -0.5)],
        ];
        let phi = MapSample::new(
            2,
            Box::new(move |x: &[Complex64]| {
                vec![
                    a[0][0] * x[0] + a[0][1] * x[1],
                    a[1][0] * x[0] + a[1][1] * x[1],
                ]
            }),
            None,
        )
        .unwrap();
        let v = [Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.2)];
        let est = map_derivative_estimate(&phi, &v, &default_tgrid()).unwrap();
        let want = [
            a[0][0] * v[0] + a[0][1] * v[1],
            a[1][0] * v[0] + a[1][1] * v[1],
        ];
        for (got, want) in est.value.iter().zip(&want) {
            assert!((got - want).norm() < 1e-12);
        }
        assert!(est.converging);
    }

    #[test]
    fn derivative_of_radial_perturbation() {
        // phi(x) = x + |x| x: derivative at 0 is the identity
        let phi = MapSample::new(
            2,
            Box::new(|x: &[Complex64]| {
                let n: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                x.iter().map(|&z| z + z * n).collect()
            }),
            None,
        )
        .unwrap();
        let v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let est = map_derivative_estimate(&phi, &v, &default_tgrid()).unwrap();
        assert!((est.value[0] - v[0]).norm() < 1e-5);
        assert!(est.converging);
    }

    #[test]
    fn derivative_of_coordinate_swap() {
        let phi = MapSample::new(
            2,
            Box::new(|x: &[Complex64]| vec![x[1], x[0]]),
            None,
        )
        .unwrap();
        let v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let est = map_derivative_estimate(&phi, &v, &default_tgrid()).unwrap();
        assert!(est.value[0].norm() < 1e-14);
        assert!((est.value[1] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn map_must_fix_origin() {
        let shifted = MapSample::new(
            2,
            Box::new(|x: &[Complex64]| vec![x[0] + Complex64::new(1.0, 0.0), x[1]]),
            None,
        );
        assert!(shifted.is_err());
    }

    #[test]
    fn estimated_map_respects_upper_lipschitz_bound() {
        // phi = swap + radial: bi-Lipschitz near 0 with C2 slightly above 1
        let phi = MapSample::new(
            2,
            Box::new(|x: &[Complex64]| {
                let n: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                vec![x[1] + x[1] * n, x[0] + x[0] * n]
            }),
            Some((1.0, 1.05)),
        )
        .unwrap();
        let c2 = phi.lipschitz_hint.unwrap().1;
        let mut rng = rngutil::rng_from(3, "lip-pairs");
        let grid = default_tgrid();
        for _ in 0..10 {
            let v = random_unit_vector(&mut rng, 2);
            let w = random_unit_vector(&mut rng, 2);
            let dv = map_derivative_estimate(&phi, &v, &grid).unwrap().value;
            let dw = map_derivative_estimate(&phi, &w, &grid).unwrap().value;
            let num: f64 = dv
                .iter()
                .zip(&dw)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let den: f64 = v
                .iter()
                .zip(&w)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(num <= c2 * den * (1.0 + 1e-6), "{num} vs {}", c2 * den);
        }
    }
}
