//! Local branches of a plane-curve germ via root monodromy.
//!
//! After an exact generic coordinate change, the y-roots of `f(x, y) = 0`
//! are tracked around a small circle `|x| = eps`. Cycles of the resulting
//! permutation on the roots that shrink toward the origin are the local
//! branches; cycle length is the branch order and the cycle-averaged
//! secant slope, extrapolated across two radii, pins the tangent line.

use crate::cone::{hypersurface_cone, TangentLine};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rngutil::{self, ConformalMatrix};
use crate::uniroots::{circle_path, find_roots, permutation_cycles, track_roots};
use num_complex::Complex64;

/// One local irreducible component of the curve at the origin.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Sheet indices of the monodromy cycle, indexing the y-root list at
    /// the witness radius.
    pub cycle: Vec<usize>,
    /// Branch order = cycle length in generic coordinates.
    pub order: usize,
    /// Tangent line in the original coordinates.
    pub tangent: TangentLine,
    pub witness_radius: f64,
}

/// All branches of the germ plus the witness data of the computation.
#[derive(Debug, Clone)]
pub struct BranchDecomposition {
    pub branches: Vec<Branch>,
    pub epsilon_used: f64,
    /// The scaled-unitary coordinate change that was applied.
    pub coordinate_change: [[Complex64; 2]; 2],
}

/// Relative multiplicity of each tangent-cone line: the sum of orders of
/// the branches tangent to it.
#[derive(Debug, Clone)]
pub struct RelativeMultiplicities {
    pub entries: Vec<(TangentLine, usize)>,
}

impl RelativeMultiplicities {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, k)| k).sum()
    }
}

const EPSILON_LADDER: [f64; 6] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
const COORD_TRIES: usize = 20;
const TRACK_TOL: f64 = 1e-12;

/// Decomposes a reduced plane-curve germ into branches, stabilizing the
/// witness radius down a geometric ladder.
pub fn branches(f: &Polynomial, seed: u64) -> Result<BranchDecomposition> {
    branches_impl(f, None, seed)
}

/// As [`branches`] but with a caller-chosen radius; the decomposition must
/// still agree at `eps` and `eps / 2`.
pub fn branches_at(f: &Polynomial, epsilon: f64, seed: u64) -> Result<BranchDecomposition> {
    branches_impl(f, Some(epsilon), seed)
}

/// The largest ladder radius at which branch count, orders and tangent
/// assignments agree at `eps` and `eps / 2`.
pub fn stabilize_epsilon(f: &Polynomial, seed: u64) -> Result<f64> {
    Ok(branches_impl(f, None, seed)?.epsilon_used)
}

/// Relative multiplicities `k(L)` grouped over the branch decomposition.
pub fn relative_multiplicities(f: &Polynomial, seed: u64) -> Result<RelativeMultiplicities> {
    let decomp = branches(f, seed)?;
    let mut entries: Vec<(TangentLine, usize)> = Vec::new();
    for b in &decomp.branches {
        match entries
            .iter_mut()
            .find(|(line, _)| line.approx_eq(&b.tangent, 1e-9))
        {
            Some((_, k)) => *k += b.order,
            None => entries.push((b.tangent.clone(), b.order)),
        }
    }
    Ok(RelativeMultiplicities { entries })
}

struct GenericFrame {
    matrix: ConformalMatrix,
    /// f composed with the coordinate change, exact.
    rotated: Polynomial,
    /// ord0(f) = number of sheets through the origin.
    mult: usize,
    /// total degree = y-degree of the rotated polynomial.
    degree: usize,
}

fn generic_frame(f: &Polynomial, seed: u64) -> Result<GenericFrame> {
    let mult = f.ord0().ok_or(Error::ZeroPolynomial)? as usize;
    if mult == 0 {
        return Err(Error::InvalidInput(
            "germ is not at the origin: f(0) != 0".into(),
        ));
    }
    let degree = f.degree().expect("nonzero polynomial") as usize;
    let initial = f.initial_form()?;
    let top = f
        .homog_components()
        .into_iter()
        .next_back()
        .expect("nonzero polynomial")
        .1;
    for attempt in 0..COORD_TRIES {
        let mut rng = rngutil::rng_from(seed, &format!("branch-coords-{attempt}"));
        let matrix = ConformalMatrix::random(&mut rng);
        let rows = matrix.rows();
        // exact genericity: the vertical direction is tangent to neither
        // the cone (y^mult coefficient of the rotated initial form) nor
        // the top form (constant y-leading coefficient of the rotation)
        let rot_initial = initial.compose_linear(&rows)?;
        let rot_top = top.compose_linear(&rows)?;
        let coeff_cone = rot_initial
            .terms()
            .find(|(m, _)| m.exponents == vec![0, mult as u32])
            .map(|(_, c)| c.clone());
        let coeff_top = rot_top
            .terms()
            .find(|(m, _)| m.exponents == vec![0, degree as u32])
            .map(|(_, c)| c.clone());
        if coeff_cone.is_none() || coeff_top.is_none() {
            continue;
        }
        let rotated = f.compose_linear(&rows)?;
        return Ok(GenericFrame {
            matrix,
            rotated,
            mult,
            degree,
        });
    }
    Err(Error::NoStabilization(format!(
        "no generic coordinates found in {COORD_TRIES} tries"
    )))
}

/// Branch structure observed at one radius.
struct Rung {
    /// (cycle sheet indices, order, snapped original-coordinates line id)
    cycles: Vec<(Vec<usize>, usize, usize)>,
    /// per-cycle tangent estimates in the rotated frame, at eps and eps/2
    lambda: Vec<(Complex64, Complex64)>,
}

impl Rung {
    /// Order/tangent multiset used for ladder agreement.
    fn signature(&self) -> Vec<(usize, usize)> {
        let mut sig: Vec<(usize, usize)> = self
            .cycles
            .iter()
            .map(|(_, order, line)| (*order, *line))
            .collect();
        sig.sort_unstable();
        sig
    }
}

fn branches_impl(
    f: &Polynomial,
    epsilon: Option<f64>,
    seed: u64,
) -> Result<BranchDecomposition> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "branch decomposition requires 2 variables, got {}",
            f.nvars()
        )));
    }
    let frame = generic_frame(f, seed)?;
    let cone = hypersurface_cone(f)?;
    let candidates = &cone.lines;

    let ladder: Vec<f64> = match epsilon {
        Some(e) => {
            if !(e > 0.0) {
                return Err(Error::InvalidInput("epsilon must be positive".into()));
            }
            vec![e]
        }
        None => EPSILON_LADDER.to_vec(),
    };

    let mut last_failure = String::new();
    for &eps in &ladder {
        let coarse = match rung(&frame, candidates, eps) {
            Ok(r) => r,
            Err(e) => {
                last_failure = format!("radius {eps}: {e}");
                continue;
            }
        };
        let fine = match rung(&frame, candidates, eps / 2.0) {
            Ok(r) => r,
            Err(e) => {
                last_failure = format!("radius {}: {e}", eps / 2.0);
                continue;
            }
        };
        if coarse.signature() != fine.signature() {
            last_failure = format!(
                "radius {eps}: branch structure differs from radius {}",
                eps / 2.0
            );
            continue;
        }
        let branches = coarse
            .cycles
            .iter()
            .map(|(cycle, order, line_id)| Branch {
                cycle: cycle.clone(),
                order: *order,
                tangent: candidates[*line_id].clone(),
                witness_radius: eps,
            })
            .collect();
        return Ok(BranchDecomposition {
            branches,
            epsilon_used: eps,
            coordinate_change: frame.matrix.to_complex(),
        });
    }
    Err(Error::NoStabilization(format!(
        "branch structure did not stabilize on the radius ladder ({last_failure}); \
         consider exact preprocessing of the input"
    )))
}

/// Computes the branch structure at one radius: track the y-roots around
/// the circle, keep the sheets through the origin, read off cycles, and
/// estimate each cycle's tangent with a two-radius extrapolation.
fn rung(frame: &GenericFrame, candidates: &[TangentLine], eps: f64) -> Result<Rung> {
    let g = &frame.rotated;
    let m = frame.mult;
    let degree = frame.degree;
    let vertical = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let fam = |x: Complex64| {
        g.restrict_to_line(&[x, Complex64::new(0.0, 0.0)], &vertical)
            .expect("vertical restriction of a generic frame")
    };

    // squarefree screen: persistently coincident roots at several angles
    let x0 = Complex64::new(eps, 0.0);
    for angle in [0.0, 2.1, 4.4] {
        let x = Complex64::from_polar(eps, angle);
        let roots = find_roots(&fam(x), TRACK_TOL)?;
        let scale = roots.roots.iter().map(|z| z.norm()).fold(eps, f64::max);
        for i in 0..roots.roots.len() {
            for j in 0..i {
                if (roots.roots[i] - roots.roots[j]).norm() < 1e-9 * scale {
                    return Err(Error::InvalidInput(
                        "input appears non-squarefree: coincident sheets on the witness circle"
                            .into(),
                    ));
                }
            }
        }
    }

    let steps = (24 * degree).max(96);
    let loop_path = circle_path(Complex64::new(0.0, 0.0), eps, steps);
    let tracked = track_roots(&fam, &loop_path, TRACK_TOL)?;
    let start_roots = tracked.samples[0].1.clone();
    debug_assert_eq!(start_roots.len(), degree);

    // the m smallest sheets pass through the origin; demand a clear gap
    // against the sheets that stay at unit scale
    let mut order_ix: Vec<usize> = (0..degree).collect();
    order_ix.sort_by(|&a, &b| start_roots[a].norm().total_cmp(&start_roots[b].norm()));
    let small: Vec<usize> = order_ix[..m].to_vec();
    if m < degree {
        let largest_small = start_roots[small[m - 1]].norm();
        let smallest_far = start_roots[order_ix[m]].norm();
        if largest_small > 0.2 * smallest_far {
            return Err(Error::NoStabilization(format!(
                "no magnitude gap between local sheets ({largest_small:.3e}) and distant sheets \
                 ({smallest_far:.3e}) at radius {eps}"
            )));
        }
    }
    let is_small = {
        let mut mask = vec![false; degree];
        for &i in &small {
            mask[i] = true;
        }
        mask
    };
    // the monodromy must keep the local sheets among themselves
    for &i in &small {
        if !is_small[tracked.permutation[i]] {
            return Err(Error::NoStabilization(format!(
                "monodromy mixes local and distant sheets at radius {eps}"
            )));
        }
    }

    let cycles: Vec<Vec<usize>> = permutation_cycles(&tracked.permutation)
        .into_iter()
        .filter(|c| is_small[c[0]])
        .collect();
    let total: usize = cycles.iter().map(|c| c.len()).sum();
    if total != m {
        return Err(Error::NoStabilization(format!(
            "branch orders sum to {total}, expected multiplicity {m} at radius {eps}"
        )));
    }

    // continuation from eps to eps/2 keeps sheet indices aligned, giving
    // the second tangent estimate for the extrapolation
    let radial: Vec<Complex64> = (0..=8)
        .map(|k| Complex64::new(eps * (1.0 - 0.5 * (k as f64) / 8.0), 0.0))
        .collect();
    let cont = track_roots(&fam, &radial, TRACK_TOL)?;
    let half_roots = cont.samples[cont.samples.len() - 1].1.clone();
    let x_half = Complex64::new(eps / 2.0, 0.0);

    let mut cycles_out = Vec::with_capacity(cycles.len());
    let mut lambda_out = Vec::with_capacity(cycles.len());
    for cycle in cycles {
        let order = cycle.len();
        // summing y/x over the sheets of one cycle cancels the fractional
        // Puiseux terms, leaving lambda + O(x); two radii then cancel the
        // O(x) term as well
        let lam_full: Complex64 = cycle
            .iter()
            .map(|&i| start_roots[i] / x0)
            .sum::<Complex64>()
            / order as f64;
        let lam_half: Complex64 = cycle
            .iter()
            .map(|&i| half_roots[i] / x_half)
            .sum::<Complex64>()
            / order as f64;
        let lam = lam_half * 2.0 - lam_full;
        let dir_rot = [Complex64::new(1.0, 0.0), lam];
        let dir_orig = frame.matrix.apply(dir_rot);
        let estimate = TangentLine::new(dir_orig, order)?;
        let (best_id, best_dist) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.distance(&estimate)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| Error::NoStabilization("tangent cone has no lines".into()))?;
        let mut sep = f64::INFINITY;
        for i in 0..candidates.len() {
            for j in 0..i {
                sep = sep.min(candidates[i].distance(&candidates[j]));
            }
        }
        let snap_tol = if candidates.len() == 1 {
            0.5
        } else {
            (0.3 * sep).min(0.2)
        };
        if best_dist > snap_tol {
            return Err(Error::NoStabilization(format!(
                "tangent estimate at radius {eps} is {best_dist:.3e} from the nearest cone line \
                 (snap tolerance {snap_tol:.3e})"
            )));
        }
        cycles_out.push((cycle, order, best_id));
        lambda_out.push((lam_full, lam_half));
    }
    Ok(Rung {
        cycles: cycles_out,
        lambda: lambda_out,
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
    fn cusp_is_one_branch_of_order_two() {
        let d = branches(&p2("y^2 - x^3"), 0).unwrap();
        assert_eq!(d.branches.len(), 1);
        assert_eq!(d.branches[0].order, 2);
        assert!(d.branches[0].tangent.approx_eq(&line(1.0, 0.0), 1e-6));
    }

    #[test]
    fn two_transverse_lines() {
        let d = branches(&p2("y^2 - x^2"), 0).unwrap();
        assert_eq!(d.branches.len(), 2);
        assert!(d.branches.iter().all(|b| b.order == 1));
        assert!(d
            .branches
            .iter()
            .any(|b| b.tangent.approx_eq(&line(1.0, 1.0), 1e-6)));
        assert!(d
            .branches
            .iter()
            .any(|b| b.tangent.approx_eq(&line(1.0, -1.0), 1e-6)));
    }

    #[test]
    fn whitney_four_lines() {
        let d = branches(&p2("x*y*(y-x)*(y-2*x)"), 0).unwrap();
        assert_eq!(d.branches.len(), 4);
        assert!(d.branches.iter().all(|b| b.order == 1));
        let expected = [line(1.0, 0.0), line(0.0, 1.0), line(1.0, 1.0), line(1.0, 2.0)];
        for e in &expected {
            assert_eq!(
                d.branches
                    .iter()
                    .filter(|b| b.tangent.approx_eq(e, 1e-6))
                    .count(),
                1
            );
        }
    }

    #[test]
    fn tangential_smooth_pair_shares_tangent() {
        let d = branches(&p2("(y - x^2)*(y + x^2)"), 0).unwrap();
        assert_eq!(d.branches.len(), 2);
        assert!(d.branches.iter().all(|b| b.order == 1));
        assert!(d
            .branches
            .iter()
            .all(|b| b.tangent.approx_eq(&line(1.0, 0.0), 1e-6)));
    }

    #[test]
    fn e6_single_branch_of_order_three() {
        let d = branches(&p2("x^3 - y^4"), 0).unwrap();
        assert_eq!(d.branches.len(), 1);
        assert_eq!(d.branches[0].order, 3);
        assert!(d.branches[0].tangent.approx_eq(&line(0.0, 1.0), 1e-6));
    }

    #[test]
    fn relative_multiplicities_examples() {
        let k = relative_multiplicities(&p2("y^2 - x^3"), 0).unwrap();
        assert_eq!(k.entries.len(), 1);
        assert!(k.entries[0].0.approx_eq(&line(1.0, 0.0), 1e-6));
        assert_eq!(k.entries[0].1, 2);

        let k = relative_multiplicities(&p2("x*y*(y-x)*(y-2*x)"), 0).unwrap();
        assert_eq!(k.entries.len(), 4);
        assert!(k.entries.iter().all(|(_, v)| *v == 1));

        let k = relative_multiplicities(&p2("(y - x^2)*(y + x^2)"), 0).unwrap();
        assert_eq!(k.entries.len(), 1);
        assert_eq!(k.entries[0].1, 2);
    }

    #[test]
    fn conservation_of_orders() {
        for text in ["y^2 - x^3", "y^2 - x^4", "x^3 - y^4", "x*y*(x+y)"] {
            let f = p2(text);
            let d = branches(&f, 0).unwrap();
            let total: usize = d.branches.iter().map(|b| b.order).sum();
            assert_eq!(total as u32, f.ord0().unwrap(), "for {text}");
        }
    }

    #[test]
    fn stabilize_epsilon_examples() {
        for text in ["y^2 - x^3", "y^2 - x^2", "(y - x^2)*(y + x^2)"] {
            let eps = stabilize_epsilon(&p2(text), 0).unwrap();
            assert!(eps <= 1e-1 && eps >= 1e-6, "eps = {eps} for {text}");
        }
    }

    #[test]
    fn branch_structure_survives_independent_coordinates() {
        for text in ["y^2 - x^3", "x*y*(y-x)*(y-2*x)", "(x^3 - y^2)*(y - x)"] {
            let f = p2(text);
            let a = branches(&f, 1).unwrap();
            let b = branches(&f, 99).unwrap();
            let mut sig_a: Vec<usize> = a.branches.iter().map(|b| b.order).collect();
            let mut sig_b: Vec<usize> = b.branches.iter().map(|b| b.order).collect();
            sig_a.sort_unstable();
            sig_b.sort_unstable();
            assert_eq!(sig_a, sig_b, "orders differ for {text}");
            for ba in &a.branches {
                assert!(
                    b.branches
                        .iter()
                        .any(|bb| bb.tangent.approx_eq(&ba.tangent, 1e-6)),
                    "tangent sets differ for {text}"
                );
            }
        }
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(matches!(
            branches(&p2("(y - x)^2"), 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn branch_tangents_lie_on_the_cone() {
        for text in ["y^2 - x^3", "(x^3 - y^2)*(y - x)", "x^3 - y^4"] {
            let f = p2(text);
            let d = branches(&f, 0).unwrap();
            let form = f.initial_form().unwrap();
            for b in &d.branches {
                let v = form
                    .evaluate(&[b.tangent.direction[0], b.tangent.direction[1]])
                    .unwrap()
                    .norm();
                assert!(v < 1e-9, "|in(f)(tangent)| = {v} for {text}");
            }
        }
    }
}
