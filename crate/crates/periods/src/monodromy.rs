//! Branch points, base point selection, loops and sheet permutations.

use crate::curve::{AffineCurve, CurveEval};
use crate::cf::C64Ctx;
use crate::path::{legs_all, monodromy_loop, Path};
use crate::roots::all_roots_c;
use crate::track::{match_permutation, Tracker};
use crate::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct MonodromyData {
    pub base: Complex64,
    /// Branch points in the counterclockwise order seen from the base point
    /// (the order in which the boundary relation holds).
    pub branch: Vec<Complex64>,
    pub radii: Vec<f64>,
    pub perms: Vec<Vec<usize>>,
    pub base_fiber: Vec<Complex64>,
    /// The legs from the base point to each branch circle; integration must
    /// follow exactly these paths.
    pub legs: Vec<Path>,
    /// Total ramification deficiency sum_i (n - #cycles(sigma_i)).
    pub deficiency: usize,
}

impl MonodromyData {
    pub fn sheet_count(&self) -> usize {
        self.base_fiber.len()
    }

    /// Genus from Riemann-Hurwitz assuming no branching at infinity:
    /// deficiency = 2(g + n - 1).
    pub fn rh_genus(&self) -> Option<usize> {
        let n = self.sheet_count();
        let d = self.deficiency;
        if d % 2 != 0 {
            return None;
        }
        (d / 2 + 1).checked_sub(n)
    }

    pub fn transitive(&self) -> bool {
        let n = self.sheet_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            for p in &self.perms {
                for t in [p[s], p.iter().position(|&v| v == s).unwrap_or(s)] {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// sigma_m o ... o sigma_1 (apply sigma_1 first).
    pub fn boundary_product(&self) -> Vec<usize> {
        let n = self.sheet_count();
        let mut acc: Vec<usize> = (0..n).collect();
        for p in &self.perms {
            acc = acc.iter().map(|&s| p[s]).collect();
        }
        acc
    }

    pub fn product_is_identity(&self) -> bool {
        self.boundary_product().iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Branch points of the x-projection: roots of the squarefree part of
/// Res_y(P, dP/dy), sorted by argument around their barycenter.
pub fn branch_points(curve: &AffineCurve) -> Result<Vec<Complex64>> {
    let res = curve.poly.disc_y_resultant()?;
    let sf = res.squarefree_part();
    let deg = sf
        .degree()
        .ok_or_else(|| Error::Internal("x-discriminant is identically zero".into()))?;
    if deg == 0 {
        return Err(Error::InvalidInput("no branch points; the cover is trivial".into()));
    }
    let mut pts = all_roots_c(
        &sf.to_f64_normalized()
            .into_iter()
            .map(|c| Complex64::new(c, 0.0))
            .collect::<Vec<_>>(),
    );
    let bary = pts.iter().sum::<Complex64>() / pts.len() as f64;
    pts.sort_by(|a, b| {
        let (ta, tb) = ((a - bary).arg(), (b - bary).arg());
        ta.partial_cmp(&tb)
            .unwrap()
            .then((a - bary).norm().partial_cmp(&(b - bary).norm()).unwrap())
    });
    Ok(pts)
}

fn radii_for(branch: &[Complex64], base: Complex64) -> Vec<f64> {
    branch
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let mut r = (base - b).norm() * 0.45;
            for (j, &c) in branch.iter().enumerate() {
                if i != j {
                    r = r.min((b - c).norm() / 2.0);
                }
            }
            r
        })
        .collect()
}

fn track_loop(
    eval: &CurveEval<C64Ctx>,
    path: &Path,
    fiber0: &[Complex64],
) -> Result<Vec<usize>> {
    let ctx = C64Ctx;
    let mut tr = Tracker::new(ctx, eval, path.start(), fiber0.to_vec());
    for piece in &path.0 {
        // modest fixed sampling; the tracker bisects on its own when needed
        let steps = (piece.length() * 8.0).ceil().max(8.0) as usize;
        let steps = steps.min(160);
        for k in 1..=steps {
            let t = k as f64 / steps as f64;
            tr.advance(&piece.at(t))?;
        }
    }
    match_permutation(fiber0, &tr.fiber)
}

/// Compute the monodromy representation of the x-projection.
pub fn monodromy(curve: &AffineCurve) -> Result<MonodromyData> {
    let pts = branch_points(curve)?;
    let bary = pts.iter().sum::<Complex64>() / pts.len() as f64;
    let spread = pts
        .iter()
        .map(|p| (p - bary).norm())
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let ctx = C64Ctx;
    let eval = CurveEval::new(&ctx, curve);

    let offsets = [
        Complex64::new(2.9, 0.41),
        Complex64::new(3.7, -0.53),
        Complex64::new(2.3, 1.07),
        Complex64::new(4.4, 0.19),
        Complex64::new(3.1, -1.23),
        Complex64::new(5.2, 0.71),
        Complex64::new(2.6, -0.29),
        Complex64::new(6.1, 1.61),
    ];
    let mut last_err: Option<Error> = None;
    for off in offsets {
        let base = bary + off * spread;
        // base must stay well clear of all branch disks
        let mut branch = pts.clone();
        branch.sort_by(|a, b| {
            let (ta, tb) = ((a - base).arg(), (b - base).arg());
            ta.partial_cmp(&tb)
                .unwrap()
                .then((a - base).norm().partial_cmp(&(b - base).norm()).unwrap())
        });
        let radii = radii_for(&branch, base);
        if branch
            .iter()
            .zip(&radii)
            .any(|(b, r)| (base - b).norm() < 2.2 * r)
        {
            continue;
        }
        // fiber at the base point
        let coeffs: Vec<Complex64> = {
            let x = base;
            let fp = eval.fiber_poly(&ctx, &x);
            fp
        };
        let fiber0 = all_roots_c(&coeffs);
        if fiber0.len() != curve.n {
            last_err = Some(Error::Internal("degenerate fiber at base point".into()));
            continue;
        }
        let Some((legs, circle_radii)) = legs_all(base, &branch, &radii) else {
            last_err = Some(Error::Internal("leg system not embeddable from this base".into()));
            continue;
        };
        let radii = circle_radii;
        let mut ok = true;
        let mut perms = Vec::with_capacity(branch.len());
        for i in 0..branch.len() {
            let lp = monodromy_loop(&legs[i], &branch, i);
            match track_loop(&eval, &lp, &fiber0) {
                Ok(p) => perms.push(p),
                Err(e) => {
                    last_err = Some(e);
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let deficiency: usize = perms
            .iter()
            .map(|p| curve.n - crate::homology::perm_cycle_count(p))
            .sum();
        let mut data = MonodromyData {
            base,
            branch,
            radii,
            perms,
            base_fiber: fiber0,
            legs,
            deficiency,
        };
        if !data.transitive() {
            last_err = Some(Error::MonodromyNotTransitive);
            continue;
        }
        if !data.product_is_identity() {
            // mirrored convention: try the reversed boundary order
            data.branch.reverse();
            data.radii.reverse();
            data.perms.reverse();
            data.legs.reverse();
            if !data.product_is_identity() {
                last_err = Some(Error::BoundaryRelation);
                continue;
            }
        }
        return Ok(data);
    }
    Err(last_err.unwrap_or(Error::Internal("no viable base point".into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::hyperelliptic_any;
    use crate::poly::UniPoly;
    use ternary::rat_int;

    fn upoly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn sqrt_curve_two_branch_points() {
        // y^2 = x^4 - 1 (genus 1): four branch points, all transpositions
        let curve = hyperelliptic_any(&upoly(&[-1, 0, 0, 0, 1])).unwrap();
        let mono = monodromy(&curve).unwrap();
        assert_eq!(mono.branch.len(), 4);
        for p in &mono.perms {
            assert_eq!(p, &vec![1, 0]);
        }
        assert_eq!(mono.deficiency, 4);
        assert_eq!(mono.rh_genus(), Some(1));
    }

    #[test]
    fn x8_minus_1_structure() {
        let mut cs = vec![0i64; 9];
        cs[0] = -1;
        cs[8] = 1;
        let curve = hyperelliptic_any(&upoly(&cs)).unwrap();
        let mono = monodromy(&curve).unwrap();
        assert_eq!(mono.branch.len(), 8);
        assert_eq!(mono.deficiency, 8);
        assert_eq!(mono.rh_genus(), Some(3));
        assert!(mono.product_is_identity());
        assert!(mono.transitive());
    }
}
