//! Complex univariate root finding, disc counting by the argument
//! principle, and continuous root tracking along parameter paths.
//!
//! `find_roots` is an Aberth-Ehrlich simultaneous iteration; the disc
//! counter never calls it, so the two stay independent cross-checks of
//! each other.

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use num_complex::Complex64;
use std::f64::consts::PI;

/// All roots of one polynomial, with a convergence certificate.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// max |p(root)| scaled by the leading coefficient.
    pub residual: f64,
    pub converged: bool,
}

/// Root trajectories along a parameter path plus the start-to-end matching.
#[derive(Debug, Clone)]
pub struct TrackedPath {
    /// (parameter value, ordered root list) at each accepted step.
    pub samples: Vec<(Complex64, Vec<Complex64>)>,
    /// `permutation[i]` is the index at the path end of the root that
    /// started at index `i`.
    pub permutation: Vec<usize>,
}

const MAX_ABERTH_ITER: usize = 200;

/// Finds all roots by simultaneous Aberth-Ehrlich iteration with initial
/// guesses on a circle at the Cauchy root bound.
pub fn find_roots(p: &UniPoly, tol: f64) -> Result<RootSet> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::InvalidInput(
            "root finding requires degree >= 1".into(),
        ));
    }
    if p.leading().norm() <= 1e-300 {
        return Err(Error::InvalidInput(
            "leading coefficient vanishes to machine scale".into(),
        ));
    }
    let degree = p.degree();
    let bound = cauchy_bound(p);
    let guesses: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * PI * (k as f64) / (degree as f64) + 0.376;
            Complex64::from_polar(bound, angle)
        })
        .collect();
    aberth_iterate(p, guesses, tol)
}

/// Polishes a set of initial guesses with the same Aberth iteration; used
/// to warm-start tracking and continuation checks.
pub fn refine_roots(p: &UniPoly, guesses: &[Complex64], tol: f64) -> Result<RootSet> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::InvalidInput(
            "root refinement requires degree >= 1".into(),
        ));
    }
    if guesses.len() != p.degree() {
        return Err(Error::DimensionMismatch(format!(
            "{} guesses for degree {}",
            guesses.len(),
            p.degree()
        )));
    }
    // separate coincident guesses so the Aberth denominators stay finite
    let scale = cauchy_bound(p).max(1e-12);
    let mut gs = guesses.to_vec();
    for i in 0..gs.len() {
        for j in 0..i {
            if (gs[i] - gs[j]).norm() < 1e-12 * scale {
                gs[i] += Complex64::from_polar(1e-9 * scale, 2.6 * (i as f64 + 1.0));
            }
        }
    }
    aberth_iterate(p, gs, tol)
}

fn aberth_iterate(p: &UniPoly, mut z: Vec<Complex64>, tol: f64) -> Result<RootSet> {
    let dp = p.derivative();
    let degree = z.len();
    let mut converged = false;
    for _ in 0..MAX_ABERTH_ITER {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let pv = p.eval(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = dp.eval(z[i]);
            let newton = if dv.norm() > 0.0 { pv / dv } else { pv };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..degree {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 1e-300 {
                        repulsion += 1.0 / diff;
                    }
                }
            }
            let denom = 1.0 - newton * repulsion;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            z[i] -= step;
            let rel = step.norm() / z[i].norm().max(1.0);
            max_step = max_step.max(rel);
        }
        if max_step <= tol {
            converged = true;
            break;
        }
    }
    let lead = p.leading().norm();
    let scale = |z: &Complex64| z.norm().max(1.0).powi(p.degree() as i32);
    let residual = z
        .iter()
        .map(|r| p.eval(*r).norm() / (lead * scale(r)))
        .fold(0.0, f64::max);
    // accept stagnated iterates whose residuals are at tolerance
    let converged = converged || residual <= tol;
    Ok(RootSet {
        roots: z,
        residual,
        converged,
    })
}

/// Cauchy bound: all roots lie in |z| <= 1 + max |a_k / a_d|.
fn cauchy_bound(p: &UniPoly) -> f64 {
    let lead = p.leading().norm();
    let m = p
        .coeffs
        .iter()
        .take(p.degree())
        .map(|c| c.norm() / lead)
        .fold(0.0, f64::max);
    1.0 + m
}

const BOUNDARY_GUARD_DEFAULT: f64 = 1e-6;

/// Number of roots of `p` in the open disc, counted with multiplicity, by
/// the winding number of `p` around the circle. Derivative-free: sums
/// phase increments over `64 * degree` samples, doubling until the
/// winding stabilizes. Errors when a root sits on or near the circle.
pub fn count_roots_in_disc(p: &UniPoly, center: Complex64, radius: f64) -> Result<usize> {
    count_roots_in_disc_guarded(p, center, radius, BOUNDARY_GUARD_DEFAULT)
}

pub fn count_roots_in_disc_guarded(
    p: &UniPoly,
    center: Complex64,
    radius: f64,
    guard: f64,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "cannot count roots of the zero polynomial".into(),
        ));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    if p.degree() == 0 {
        return Ok(0);
    }
    let dp = p.derivative();
    let mut n = 64 * p.degree();
    let mut previous: Option<i64> = None;
    loop {
        let mut min_abs = f64::INFINITY;
        let mut max_dabs = 0.0f64;
        let mut total = 0.0f64;
        let mut prev_arg = 0.0f64;
        let mut coarse = false;
        for k in 0..=n {
            let z = center + Complex64::from_polar(radius, 2.0 * PI * (k as f64) / (n as f64));
            let v = p.eval(z);
            min_abs = min_abs.min(v.norm());
            max_dabs = max_dabs.max(dp.eval(z).norm());
            let arg = v.arg();
            if k > 0 {
                let mut delta = arg - prev_arg;
                while delta > PI {
                    delta -= 2.0 * PI;
                }
                while delta < -PI {
                    delta += 2.0 * PI;
                }
                if delta.abs() > PI / 2.0 {
                    coarse = true;
                }
                total += delta;
            }
            prev_arg = arg;
        }
        // proximity proxy: |p| over |p'| bounds the distance to a root
        if min_abs < 1e-300 || (max_dabs > 0.0 && min_abs / max_dabs < guard * radius) {
            return Err(Error::BoundaryRoot { min_abs });
        }
        if !coarse {
            let winding = total / (2.0 * PI);
            let rounded = winding.round();
            if (winding - rounded).abs() < 0.25 {
                let count = rounded as i64;
                if count < 0 {
                    return Err(Error::NonConvergence(format!(
                        "negative winding {count} indicates numeric breakdown"
                    )));
                }
                if previous == Some(count) {
                    return Ok(count as usize);
                }
                previous = Some(count);
            } else {
                previous = None;
            }
        } else {
            previous = None;
        }
        n *= 2;
        if n > 64 * p.degree() * (1 << 9) {
            return Err(Error::NonConvergence(
                "winding number failed to stabilize under sample doubling".into(),
            ));
        }
    }
}

/// Tracks the ordered root list of `family(t)` along the discretized path,
/// matching consecutive lists by nearest neighbor. A step is accepted only
/// when the closest match is at most one third of the second-closest
/// candidate; otherwise the step is bisected, down to a minimum step.
pub fn track_roots<F>(family: F, path: &[Complex64], tol: f64) -> Result<TrackedPath>
where
    F: Fn(Complex64) -> UniPoly,
{
    if path.len() < 2 {
        return Err(Error::InvalidInput("path needs at least two nodes".into()));
    }
    let first = family(path[0]);
    let degree = first.degree();
    if first.is_zero() || degree == 0 {
        return Err(Error::InvalidInput(
            "family must have positive degree".into(),
        ));
    }
    let start = find_roots(&first, tol)?;
    if !start.converged {
        return Err(Error::NonConvergence(
            "root finder did not converge at path start".into(),
        ));
    }
    let path_scale = path
        .windows(2)
        .map(|w| (w[1] - w[0]).norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let min_step = 1e-10 * path_scale;

    let mut samples = vec![(path[0], start.roots.clone())];
    let mut current = start.roots;

    for w in path.windows(2) {
        let (from, to) = (w[0], w[1]);
        let mut t0 = from;
        let mut stack = vec![to];
        while let Some(t1) = stack.last().copied() {
            let p1 = family(t1);
            if p1.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "family degree changed from {} to {} at parameter {}",
                    degree,
                    p1.degree(),
                    t1
                )));
            }
            let refined = refine_roots(&p1, &current, tol)?;
            match match_roots(&current, &refined.roots) {
                Some(matching) => {
                    current = matching.iter().map(|&j| refined.roots[j]).collect();
                    samples.push((t1, current.clone()));
                    stack.pop();
                    t0 = t1;
                }
                None => {
                    if (t1 - t0).norm() < min_step {
                        return Err(Error::TrackingCollision {
                            parameter: format!("{t1}"),
                            message: "nearest-neighbor margin failed at minimum step".into(),
                        });
                    }
                    let mid = (t0 + t1) * 0.5;
                    stack.push(mid);
                }
            }
        }
    }

    // `current[i]` is the continuation of start root i. On a closed path
    // the end positions coincide with the start positions as a set, and
    // matching them yields the monodromy permutation; on an open arc the
    // tracks themselves are the bijection, exposed through `samples`.
    let start_roots = &samples[0].1;
    let end_roots = samples[samples.len() - 1].1.clone();
    let closed = (path[path.len() - 1] - path[0]).norm() <= 1e-12 * path_scale;
    let permutation = if closed {
        match_roots(&end_roots, start_roots).ok_or_else(|| Error::TrackingCollision {
            parameter: format!("{}", path[path.len() - 1]),
            message: "end-of-loop roots could not be matched to start roots".into(),
        })?
    } else {
        (0..degree).collect()
    };
    Ok(TrackedPath {
        samples,
        permutation,
    })
}

/// Greedy nearest-neighbor matching from `from[i]` to `to[j]` requiring the
/// best candidate to win by a 3x margin over the runner-up. Returns the
/// assignment `i -> j` or `None` when any match is ambiguous.
fn match_roots(from: &[Complex64], to: &[Complex64]) -> Option<Vec<usize>> {
    let n = from.len();
    let mut used = vec![false; n];
    let mut out = vec![0usize; n];
    for (i, f) in from.iter().enumerate() {
        let mut best = (f64::INFINITY, usize::MAX);
        let mut second = f64::INFINITY;
        for (j, t) in to.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (f - t).norm();
            if d < best.0 {
                second = best.0;
                best = (d, j);
            } else if d < second {
                second = d;
            }
        }
        if best.1 == usize::MAX {
            return None;
        }
        // margin rule: ambiguous when closest exceeds 1/3 of second-closest
        if second.is_finite() && best.0 > second / 3.0 && best.0 > 0.0 {
            return None;
        }
        used[best.1] = true;
        out[i] = best.1;
    }
    Some(out)
}

/// Convenience: a discretized circle `center + radius * e^{i theta}`,
/// `steps + 1` nodes, traversed once counterclockwise.
pub fn circle_path(center: Complex64, radius: f64, steps: usize) -> Vec<Complex64> {
    (0..=steps)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * (k as f64) / (steps as f64)))
        .collect()
}

/// Cycle decomposition of a permutation given as `perm[i] -> j`.
pub fn permutation_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut next = perm[start];
        while next != start {
            seen[next] = true;
            cycle.push(next);
            next = perm[next];
        }
        cycles.push(cycle);
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn upoly(coeffs: &[(f64, f64)]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
    }

    #[test]
    fn roots_of_quadratic() {
        // t^2 - 1
        let p = upoly(&[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let rs = find_roots(&p, 1e-12).unwrap();
        assert!(rs.converged);
        let mut mags: Vec<f64> = rs.roots.iter().map(|z| z.re).collect();
        mags.sort_by(f64::total_cmp);
        assert!((mags[0] + 1.0).abs() < 1e-10);
        assert!((mags[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn roots_of_shifted_cubic() {
        // t^3 - eps^2 with eps = 1e-2: cube roots of 1e-4
        let eps = 1e-2f64;
        let p = upoly(&[(-eps * eps, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let rs = find_roots(&p, 1e-12).unwrap();
        assert!(rs.converged);
        let want = (eps * eps).powf(1.0 / 3.0); // ~4.64e-2
        for r in &rs.roots {
            assert!((r.norm() - want).abs() < 1e-8, "|root| = {}", r.norm());
        }
        assert!((want - 4.64e-2).abs() < 2e-4);
    }

    #[test]
    fn double_root_returns_near_coincident_pair() {
        let p = upoly(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]); // t^2
        let rs = find_roots(&p, 1e-12).unwrap();
        assert_eq!(rs.roots.len(), 2);
        for r in &rs.roots {
            assert!(r.norm() < 1e-5);
        }
    }

    #[test]
    fn degree_zero_is_error() {
        let p = upoly(&[(3.0, 0.0)]);
        assert!(find_roots(&p, 1e-12).is_err());
    }

    #[test]
    fn disc_count_examples() {
        let p = upoly(&[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]); // t^2 - 1
        let z0 = Complex64::new(0.0, 0.0);
        assert_eq!(count_roots_in_disc(&p, z0, 2.0).unwrap(), 2);
        assert_eq!(count_roots_in_disc(&p, z0, 0.5).unwrap(), 0);
        // t^3 - t has roots {-1, 0, 1}; disc at 0.9 radius 0.2 holds one
        let q = upoly(&[(0.0, 0.0), (-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(
            count_roots_in_disc(&q, Complex64::new(0.9, 0.0), 0.2).unwrap(),
            1
        );
    }

    #[test]
    fn disc_count_detects_boundary_root() {
        let p = upoly(&[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let err = count_roots_in_disc(&p, Complex64::new(0.0, 0.0), 1.0);
        assert!(matches!(err, Err(Error::BoundaryRoot { .. })));
    }

    #[test]
    fn whole_plane_count_equals_degree() {
        let p = upoly(&[(2.0, 1.0), (0.5, 0.0), (0.0, -3.0), (1.0, 0.0)]);
        let bound = 1.0
            + p.coeffs
                .iter()
                .take(p.degree())
                .map(|c| c.norm())
                .fold(0.0, f64::max)
                / p.leading().norm();
        assert_eq!(
            count_roots_in_disc(&p, Complex64::new(0.0, 0.0), 2.0 * bound).unwrap(),
            3
        );
    }

    #[test]
    fn tracking_cusp_swaps_sheets() {
        // y^2 - x^3 as a family in y over the circle |x| = 0.1
        let f = parse("y^2 - x^3", &["x", "y"]).unwrap();
        let fam = |x: Complex64| {
            f.restrict_to_line(
                &[x, Complex64::new(0.0, 0.0)],
                &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            )
            .unwrap()
        };
        let path = circle_path(Complex64::new(0.0, 0.0), 0.1, 64);
        let tracked = track_roots(fam, &path, 1e-12).unwrap();
        assert_eq!(tracked.permutation, vec![1, 0], "one loop swaps the sheets");
    }

    #[test]
    fn tracking_two_lines_is_identity() {
        let f = parse("y^2 - x^2", &["x", "y"]).unwrap();
        let fam = |x: Complex64| {
            f.restrict_to_line(
                &[x, Complex64::new(0.0, 0.0)],
                &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            )
            .unwrap()
        };
        let path = circle_path(Complex64::new(0.0, 0.0), 0.1, 64);
        let tracked = track_roots(fam, &path, 1e-12).unwrap();
        assert_eq!(tracked.permutation, vec![0, 1]);
    }

    #[test]
    fn tracking_constant_family_is_identity() {
        let fam = |_x: Complex64| upoly(&[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let path = circle_path(Complex64::new(0.5, 0.5), 0.3, 32);
        let tracked = track_roots(fam, &path, 1e-12).unwrap();
        assert_eq!(tracked.permutation, vec![0, 1]);
    }

    #[test]
    fn tracking_detects_genuine_collision() {
        // roots +-(s - 1/2) collide at s = 1/2 on a straight path 0 -> 1
        let fam = |s: Complex64| {
            let a = s - Complex64::new(0.5, 0.0);
            UniPoly::new(vec![-a * a, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
        };
        let path: Vec<Complex64> = (0..=8)
            .map(|k| Complex64::new(k as f64 / 8.0, 0.0))
            .collect();
        assert!(matches!(
            track_roots(fam, &path, 1e-12),
            Err(Error::TrackingCollision { .. })
        ));
    }

    #[test]
    fn double_loop_is_square_of_single_loop() {
        let f = parse("y^2 - x^3", &["x", "y"]).unwrap();
        let fam = |x: Complex64| {
            f.restrict_to_line(
                &[x, Complex64::new(0.0, 0.0)],
                &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            )
            .unwrap()
        };
        let single = circle_path(Complex64::new(0.0, 0.0), 0.1, 64);
        let mut double = single.clone();
        double.extend_from_slice(&single[1..]);
        let one = track_roots(&fam, &single, 1e-12).unwrap().permutation;
        let two = track_roots(&fam, &double, 1e-12).unwrap().permutation;
        let squared: Vec<usize> = (0..one.len()).map(|i| one[one[i]]).collect();
        assert_eq!(two, squared);
    }

    #[test]
    fn halving_the_path_steps_preserves_permutation() {
        let f = parse("y^2 - x^3", &["x", "y"]).unwrap();
        let fam = |x: Complex64| {
            f.restrict_to_line(
                &[x, Complex64::new(0.0, 0.0)],
                &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            )
            .unwrap()
        };
        let coarse = circle_path(Complex64::new(0.0, 0.0), 0.1, 48);
        let fine = circle_path(Complex64::new(0.0, 0.0), 0.1, 96);
        assert_eq!(
            track_roots(&fam, &coarse, 1e-12).unwrap().permutation,
            track_roots(&fam, &fine, 1e-12).unwrap().permutation
        );
    }
}
