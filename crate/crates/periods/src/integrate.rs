//! Quadrature of the differential vector along legs and circles, and the
//! assembly of cycle integrals from tents.
//!
//! All paths keep a clearance from the branch points proportional to their
//! length, so Gauss-Legendre converges geometrically; pieces are subdivided
//! until each subpiece is shorter than its clearance.

use crate::cf::{Ctx, CF};
use crate::curve::{AffineCurve, CurveEval};
use crate::homology::{HomologyBasis, Tent};
use crate::monodromy::MonodromyData;
use crate::path::{circle_around, PathPiece};
use crate::track::{match_permutation, Tracker};
use crate::{Error, Result};
use num_complex::Complex64;

/// (sub)piece list with each subpiece shorter than ~0.8 x its clearance.
fn subdivide(piece: &PathPiece, branch: &[Complex64], skip: Option<usize>) -> Vec<(f64, f64)> {
    let clearance = |t0: f64, t1: f64| -> f64 {
        let mid = piece.at((t0 + t1) / 2.0);
        let mut d = f64::INFINITY;
        for (j, b) in branch.iter().enumerate() {
            if Some(j) == skip {
                continue;
            }
            d = d.min((mid - b).norm());
        }
        d
    };
    let mut stack = vec![(0.0f64, 1.0f64)];
    let mut out = Vec::new();
    let total = piece.length().max(1e-12);
    while let Some((t0, t1)) = stack.pop() {
        let len = total * (t1 - t0);
        let c = match piece {
            PathPiece::Arc { .. } => clearance(t0, t1).min(piece.radius()),
            PathPiece::Line { .. } => clearance(t0, t1) - len / 2.0,
        };
        if len > 0.8 * c.max(1e-9) && (t1 - t0) > 1e-4 {
            let tm = (t0 + t1) / 2.0;
            stack.push((tm, t1));
            stack.push((t0, tm));
        } else {
            out.push((t0, t1));
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Integral of all g differentials over one path for every starting sheet:
/// result[sheet][j] = integral of f_j dx / P_y along the lift at `sheet`.
/// Also returns the fiber at the endpoint (in starting-sheet slots).
fn integrate_path<C: Ctx>(
    ctx: &C,
    eval: &CurveEval<C>,
    pieces: &[PathPiece],
    branch: &[Complex64],
    skip_center: Option<usize>,
    fiber0: Vec<C::F>,
    n_gl: usize,
    close_to: Option<Complex64>,
) -> Result<(Vec<Vec<C::F>>, Vec<C::F>)> {
    let n = eval.n;
    let g = eval.g;
    let (nodes, weights) = ctx.gauss_legendre(n_gl);
    let start = pieces
        .first()
        .ok_or_else(|| Error::Internal("empty integration path".into()))?
        .at(0.0);
    let mut tracker = Tracker::new(*ctx, eval, ctx.from_c64(start), fiber0);
    let mut acc: Vec<Vec<C::F>> = (0..n).map(|_| (0..g).map(|_| ctx.zero()).collect()).collect();

    // the f64 piece endpoints agree only to ~1e-16; bridge the junction gaps
    // with explicit straight connectors so that cycles close exactly at the
    // working precision
    let mut cursor: C::F = ctx.from_c64(start);
    let mut add_nodes = |tracker: &mut Tracker<C>,
                         acc: &mut Vec<Vec<C::F>>,
                         x: &C::F,
                         dz: &C::F,
                         w: &C::F|
     -> Result<()> {
        tracker.advance(x)?;
        for s in 0..n {
            let y = tracker.fiber[s].clone();
            let den = eval.dy_at(ctx, x, &y);
            for j in 0..g {
                let val = eval.numerator_at(ctx, j, x, &y).div(&den).mul(dz).mul(w);
                acc[s][j].add_assign(&val);
            }
        }
        Ok(())
    };
    let mut connect = |tracker: &mut Tracker<C>,
                       acc: &mut Vec<Vec<C::F>>,
                       from: &C::F,
                       to: &C::F|
     -> Result<()> {
        let d = to.sub(from);
        if d.abs_f64() == 0.0 {
            return Ok(());
        }
        let (cn, cw) = ctx.gauss_legendre(8);
        let half = ctx.from_f64(0.5);
        for (u, w) in cn.iter().zip(cw.iter()) {
            let t = half.add(&half.mul(u));
            let x = from.add(&d.mul(&t));
            let dz = d.mul(&half);
            add_nodes(tracker, acc, &x, &dz, w)?;
        }
        Ok(())
    };

    for piece in pieces {
        let piece_start = piece.eval(ctx, &ctx.zero());
        connect(&mut tracker, &mut acc, &cursor.clone(), &piece_start)?;
        for (t0, t1) in subdivide(piece, branch, skip_center) {
            let mid = ctx.from_f64((t0 + t1) / 2.0);
            let rad = ctx.from_f64((t1 - t0) / 2.0);
            for (u, w) in nodes.iter().zip(weights.iter()) {
                let t = mid.add(&rad.mul(u));
                let x = piece.eval(ctx, &t);
                let dz = piece.deriv(ctx, &t).mul(&rad); // d x / d u over [-1,1]
                add_nodes(&mut tracker, &mut acc, &x, &dz, w)?;
            }
        }
        cursor = piece.eval(ctx, &ctx.one());
    }
    if let Some(target) = close_to {
        let target = ctx.from_c64(target);
        connect(&mut tracker, &mut acc, &cursor.clone(), &target)?;
        tracker.advance(&target)?;
    } else {
        tracker.advance(&cursor.clone())?;
    }
    Ok((acc, tracker.fiber))
}

/// Per-branch integral caches.
pub struct BranchIntegrals<F> {
    /// leg[i][sheet][j]; entry fiber per branch.
    pub leg: Vec<Option<(Vec<Vec<F>>, Vec<F>)>>,
    /// circle[i][sheet][j] for one full ccw turn starting at the entry.
    pub circle: Vec<Option<Vec<Vec<F>>>>,
}

/// Integrate every cycle of the homology basis; returns the matrix
/// omega[j][cycle] (row = differential, column = symplectic basis cycle).
pub fn integrate_cycles<C: Ctx>(
    ctx: &C,
    curve: &AffineCurve,
    mono: &MonodromyData,
    hom: &HomologyBasis,
    n_gl: usize,
) -> Result<Vec<Vec<C::F>>> {
    let eval = CurveEval::new(ctx, curve);
    let n = curve.n;
    let g = eval.g;
    let m = mono.branch.len();

    // which branch points are actually used by tents
    let mut used = vec![false; m];
    for cyc in &hom.cycles {
        for t in cyc {
            used[t.branch] = true;
        }
    }

    let fiber0: Vec<C::F> = mono.base_fiber.iter().map(|&z| ctx.from_c64(z)).collect();
    let mut cache = BranchIntegrals {
        leg: (0..m).map(|_| None).collect(),
        circle: (0..m).map(|_| None).collect(),
    };
    for i in 0..m {
        if !used[i] {
            continue;
        }
        let (leg_int, entry_fiber) = integrate_path(
            ctx,
            &eval,
            &mono.legs[i].0,
            &mono.branch,
            None,
            fiber0.clone(),
            n_gl,
            None,
        )?;
        // one full turn, closed exactly back to the leg endpoint
        let circ = circle_around(&mono.legs[i], &mono.branch, i);
        let (circ_int, end_fiber) = integrate_path(
            ctx,
            &eval,
            std::slice::from_ref(&circ),
            &mono.branch,
            Some(i),
            entry_fiber.clone(),
            n_gl,
            Some(mono.legs[i].endpoint()),
        )?;
        // the circle must realize the recorded permutation
        let sigma = match_permutation(&entry_fiber, &end_fiber)?;
        if sigma != mono.perms[i] {
            return Err(Error::Internal(format!(
                "circle permutation mismatch at branch {i}: {sigma:?} vs {:?}",
                mono.perms[i]
            )));
        }
        cache.leg[i] = Some((leg_int, entry_fiber));
        cache.circle[i] = Some(circ_int);
    }

    // tent integral: leg(enter) + winding - leg(exit)
    let tent_integral = |t: &Tent| -> Result<Vec<C::F>> {
        let (leg_int, _) = cache.leg[t.branch].as_ref().unwrap();
        let circ = cache.circle[t.branch].as_ref().unwrap();
        let sigma = &mono.perms[t.branch];
        let mut out: Vec<C::F> = (0..g).map(|_| ctx.zero()).collect();
        for j in 0..g {
            out[j].add_assign(&leg_int[t.enter][j]);
            out[j].sub_assign(&leg_int[t.exit][j]);
        }
        if t.winding >= 0 {
            let mut s = t.enter;
            for _ in 0..t.winding {
                for j in 0..g {
                    out[j].add_assign(&circ[s][j]);
                }
                s = sigma[s];
            }
            if s != t.exit {
                return Err(Error::Internal("tent winding is inconsistent".into()));
            }
        } else {
            let inv: Vec<usize> = {
                let mut inv = vec![0; n];
                for (a, &b) in sigma.iter().enumerate() {
                    inv[b] = a;
                }
                inv
            };
            let mut s = t.enter;
            for _ in 0..(-t.winding) {
                s = inv[s];
                for j in 0..g {
                    out[j].sub_assign(&circ[s][j]);
                }
            }
            if s != t.exit {
                return Err(Error::Internal("tent winding is inconsistent".into()));
            }
        }
        Ok(out)
    };

    let k = hom.cycles.len();
    let mut prim: Vec<Vec<C::F>> = Vec::with_capacity(k);
    for cyc in &hom.cycles {
        let mut v: Vec<C::F> = (0..g).map(|_| ctx.zero()).collect();
        for t in cyc {
            let ti = tent_integral(t)?;
            for j in 0..g {
                v[j].add_assign(&ti[j]);
            }
        }
        prim.push(v);
    }

    // omega[row = differential][col = symplectic cycle] via S
    let s = &hom.change_of_basis;
    let mut omega: Vec<Vec<C::F>> = (0..g).map(|_| (0..k).map(|_| ctx.zero()).collect()).collect();
    for col in 0..k {
        for (jcyc, p) in prim.iter().enumerate() {
            let c = s[jcyc][col];
            if c == 0 {
                continue;
            }
            let cf = ctx.from_f64(c as f64);
            for (row, omega_row) in omega.iter_mut().enumerate() {
                omega_row[col].add_assign(&p[row].mul(&cf));
            }
        }
    }
    Ok(omega)
}
