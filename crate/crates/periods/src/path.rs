//! Path geometry in the x-plane: lines and circular arcs, and the legs from
//! the base point to each branch circle with consistent left-side detours.

use crate::cf::{Ctx, CF};
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub enum PathPiece {
    Line { a: Complex64, b: Complex64 },
    /// z(t) = center + (start - center) * exp(i dtheta t), t in [0, 1].
    /// Anchoring at the exact start point keeps consecutive pieces
    /// consistent at working precisions far beyond f64.
    Arc { center: Complex64, start: Complex64, dtheta: f64 },
}

impl PathPiece {
    pub fn at(&self, t: f64) -> Complex64 {
        match self {
            PathPiece::Line { a, b } => a + (b - a) * t,
            PathPiece::Arc { center, start, dtheta } => {
                center + (start - center) * Complex64::from_polar(1.0, dtheta * t)
            }
        }
    }

    pub fn endpoint(&self) -> Complex64 {
        self.at(1.0)
    }

    pub fn radius(&self) -> f64 {
        match self {
            PathPiece::Line { .. } => 0.0,
            PathPiece::Arc { center, start, .. } => (start - center).norm(),
        }
    }

    pub fn theta0(&self) -> f64 {
        match self {
            PathPiece::Line { .. } => 0.0,
            PathPiece::Arc { center, start, .. } => (start - center).arg(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            PathPiece::Line { a, b } => (b - a).norm(),
            PathPiece::Arc { dtheta, .. } => self.radius() * dtheta.abs(),
        }
    }

    pub fn reversed(&self) -> PathPiece {
        match self {
            PathPiece::Line { a, b } => PathPiece::Line { a: *b, b: *a },
            PathPiece::Arc { center, dtheta, .. } => PathPiece::Arc {
                center: *center,
                start: self.endpoint(),
                dtheta: -dtheta,
            },
        }
    }

    /// z(t) in the working field; t is a real field element.
    pub fn eval<C: Ctx>(&self, ctx: &C, t: &C::F) -> C::F {
        match self {
            PathPiece::Line { a, b } => {
                let fa = ctx.from_c64(*a);
                let d = ctx.from_c64(b - a);
                fa.add(&d.mul(t))
            }
            PathPiece::Arc { center, start, dtheta } => {
                let c = ctx.from_c64(*center);
                let v = ctx.from_c64(start - center);
                let i_dth = ctx.from_c64(Complex64::new(0.0, *dtheta));
                let e = i_dth.mul(t).exp();
                c.add(&v.mul(&e))
            }
        }
    }

    /// dz/dt in the working field.
    pub fn deriv<C: Ctx>(&self, ctx: &C, t: &C::F) -> C::F {
        match self {
            PathPiece::Line { a, b } => ctx.from_c64(b - a),
            PathPiece::Arc { center, start, dtheta } => {
                let v = ctx.from_c64(start - center);
                let i_dth = ctx.from_c64(Complex64::new(0.0, *dtheta));
                let e = i_dth.mul(t).exp();
                i_dth.mul(&v).mul(&e)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Path(pub Vec<PathPiece>);

impl Path {
    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().map(|p| p.reversed()).collect())
    }

    pub fn endpoint(&self) -> Complex64 {
        self.0.last().expect("empty path").endpoint()
    }

    pub fn start(&self) -> Complex64 {
        self.0.first().expect("empty path").at(0.0)
    }
}

/// Every ray passing within this fraction of a branch disk gets a detour
/// arc; radii interleave strictly with the passing distances, so no ray can
/// cross another leg's arc near the same obstacle.
const DETOUR_BAND: f64 = 0.95;

/// Build all legs together. Leg i runs straight from `base` to the entry
/// point of branch circle i; where it passes too close to another branch
/// point the chord is replaced by the minor arc (same homotopy class, but
/// bounded clearance). Legs passing the same
/// obstacle get radii interleaved with their passing distances
/// (d_1 < rho_1 < d_2 < rho_2 < ...), which keeps the whole arc system
/// embedded: closer rays detour inside the crossings of farther rays.
/// The monodromy circle around each branch point is shrunk inside the
/// innermost detour arc surrounding it, so that each loop crosses only its
/// own radial tail (the permutations then agree with the cut model the
/// homology construction assumes). Returns the legs and the circle radii;
/// `None` when there is no room to interleave (caller retries with a
/// different base point).
pub fn legs_all(
    base: Complex64,
    branch: &[Complex64],
    radii: &[f64],
) -> Option<(Vec<Path>, Vec<f64>)> {
    let m = branch.len();
    struct Ray {
        dir: Complex64,
        len: f64,
    }
    let rays: Vec<Ray> = (0..m)
        .map(|i| {
            let u = (base - branch[i]) / (base - branch[i]).norm();
            let entry = branch[i] + u * radii[i];
            let seg = entry - base;
            let len = seg.norm();
            Ray { dir: seg / len, len }
        })
        .collect();

    // passing distance and chord projection of ray i at obstacle j
    let pass = |i: usize, j: usize| -> Option<(f64, f64)> {
        let w = branch[j] - base;
        let t = (w.re * rays[i].dir.re + w.im * rays[i].dir.im).clamp(0.0, rays[i].len);
        let d = (base + rays[i].dir * t - branch[j]).norm();
        if t <= 1e-12 || t >= rays[i].len - 1e-12 {
            return None;
        }
        Some((d, t))
    };

    // per-obstacle interleaved radii: rho[(i, j)] for leg i around obstacle j
    let mut rho = std::collections::HashMap::new();
    for j in 0..m {
        let mut needing: Vec<(f64, usize)> = Vec::new();
        for i in 0..m {
            if i == j {
                continue;
            }
            if let Some((d, _)) = pass(i, j) {
                if d < DETOUR_BAND * radii[j] {
                    needing.push((d, i));
                }
            }
        }
        needing.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (t, &(d, i)) in needing.iter().enumerate() {
            let next = needing
                .get(t + 1)
                .map(|&(dn, _)| dn)
                .unwrap_or(DETOUR_BAND * radii[j]);
            let r = 0.5 * (d + next);
            if r <= d * 1.03 + 1e-12 * radii[j] {
                return None; // no room: passing distances too bunched
            }
            rho.insert((i, j), r);
        }
    }

    // circle radius: strictly inside every detour arc around this point
    let circle_radii: Vec<f64> = (0..m)
        .map(|i| {
            let mut c = radii[i];
            for ((_, j), r) in rho.iter() {
                if *j == i {
                    c = c.min(0.8 * r);
                }
            }
            c
        })
        .collect();

    let mut legs = Vec::with_capacity(m);
    for i in 0..m {
        let dir = rays[i].dir;
        let len = rays[i].len;
        let mut cuts: Vec<(f64, f64, usize, f64)> = Vec::new();
        for j in 0..m {
            let Some(&r) = rho.get(&(i, j)) else { continue };
            let (d, tproj) = pass(i, j).unwrap();
            let half = (r * r - d * d).sqrt();
            let (t1, t2) = (tproj - half, tproj + half);
            if t2 <= 0.0 || t1 >= len {
                continue;
            }
            cuts.push((t1.max(0.0), t2.min(len), j, r));
        }
        cuts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        // chord intervals around distinct obstacles are disjoint because the
        // detour disks are
        let mut pieces = Vec::new();
        let mut t = 0.0;
        for (t1, t2, j, _r) in cuts {
            if t1 > t + 1e-12 {
                pieces.push(PathPiece::Line { a: base + dir * t, b: base + dir * t1 });
            }
            let p1 = base + dir * t1;
            let p2 = base + dir * t2;
            let th1 = (p1 - branch[j]).arg();
            let th2 = (p2 - branch[j]).arg();
            // minor arc: homotopic to the chord it replaces, since the lens
            // between them cannot contain the obstacle
            let tau = 2.0 * std::f64::consts::PI;
            let mut dth = (th2 - th1).rem_euclid(tau);
            if dth > std::f64::consts::PI {
                dth -= tau;
            }
            pieces.push(PathPiece::Arc { center: branch[j], start: p1, dtheta: dth });
            t = t2;
        }
        let entry =
            branch[i] + (base - branch[i]) / (base - branch[i]).norm() * circle_radii[i];
        if t < len - 1e-12 {
            pieces.push(PathPiece::Line { a: base + dir * t, b: entry });
        }
        if pieces.is_empty() {
            pieces.push(PathPiece::Line { a: base, b: entry });
        }
        legs.push(Path(pieces));
    }

    if !legs_disjoint(&legs, base, branch) {
        return None;
    }
    Some((legs, circle_radii))
}

/// Exact pairwise disjointness of the leg system. Legs share only the base
/// point; each leg must also avoid the radial tails running from the other
/// entry points into their branch points.
fn legs_disjoint(legs: &[Path], base: Complex64, branch: &[Complex64]) -> bool {
    let scale = branch
        .iter()
        .map(|b| (b - base).norm())
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let eps = scale * 1e-12;
    // extend by the radial tails down to the branch points
    let with_tail = |i: usize| -> Vec<PathPiece> {
        let mut v = legs[i].0.clone();
        v.push(PathPiece::Line { a: legs[i].endpoint(), b: branch[i] });
        v
    };
    for i in 0..legs.len() {
        let pi = with_tail(i);
        for j in (i + 1)..legs.len() {
            let pj = with_tail(j);
            for a in &pi {
                for b in &pj {
                    if pieces_cross(a, b, base, eps) {
                        if std::env::var("LEG_DEBUG").is_ok() {
                            eprintln!("legs {i}/{j} cross: {a:?} vs {b:?}");
                        }
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Do two pieces intersect anywhere except at the shared base point?
fn pieces_cross(a: &PathPiece, b: &PathPiece, base: Complex64, eps: f64) -> bool {
    let not_base = |z: Complex64| (z - base).norm() > 8.0 * eps;
    match (a, b) {
        (PathPiece::Line { a: a0, b: a1 }, PathPiece::Line { a: b0, b: b1 }) => {
            let d1 = a1 - a0;
            let d2 = b1 - b0;
            let denom = d1.re * d2.im - d1.im * d2.re;
            let w = b0 - a0;
            if denom.abs() < 1e-15 * (d1.norm() * d2.norm()).max(1e-300) {
                // parallel: overlap only if collinear and ranges meet
                let cross = w.re * d1.im - w.im * d1.re;
                if cross.abs() > eps * d1.norm().max(1e-300) {
                    return false;
                }
                let t0 = (w.re * d1.re + w.im * d1.im) / (d1.norm() * d1.norm());
                let t1 = t0 + (d2.re * d1.re + d2.im * d1.im) / (d1.norm() * d1.norm());
                let (lo, hi) = (t0.min(t1), t0.max(t1));
                let overlap = lo < 1.0 - 1e-12 && hi > 1e-12;
                return overlap && not_base(a0 + d1 * lo.clamp(0.0, 1.0));
            }
            let t = (w.re * d2.im - w.im * d2.re) / denom;
            let s = (w.re * d1.im - w.im * d1.re) / denom;
            if t < -1e-12 || t > 1.0 + 1e-12 || s < -1e-12 || s > 1.0 + 1e-12 {
                return false;
            }
            not_base(a0 + d1 * t)
        }
        (PathPiece::Line { a: l0, b: l1 }, arc @ PathPiece::Arc { center, dtheta, .. })
        | (arc @ PathPiece::Arc { center, dtheta, .. }, PathPiece::Line { a: l0, b: l1 }) => {
            // segment against circle, then angular range
            let radius = arc.radius();
            let theta0 = arc.theta0();
            let d = l1 - l0;
            let f = l0 - center;
            let aa = d.norm_sqr();
            let bb = 2.0 * (f.re * d.re + f.im * d.im);
            let cc = f.norm_sqr() - radius * radius;
            let disc = bb * bb - 4.0 * aa * cc;
            if disc < 0.0 {
                return false;
            }
            let sq = disc.sqrt();
            for t in [(-bb - sq) / (2.0 * aa), (-bb + sq) / (2.0 * aa)] {
                if !(-1e-12..=1.0 + 1e-12).contains(&t) {
                    continue;
                }
                let z = l0 + d * t;
                if angle_in_arc((z - center).arg(), theta0, *dtheta) && not_base(z) {
                    return true;
                }
            }
            false
        }
        (a1 @ PathPiece::Arc { center: c1, dtheta: dt1, .. }, a2 @ PathPiece::Arc { center: c2, dtheta: dt2, .. }) => {
            let (r1, r2) = (a1.radius(), a2.radius());
            let (t1, t2) = (a1.theta0(), a2.theta0());
            let d = (c2 - c1).norm();
            if d < 1e-14 {
                // concentric: disjoint unless equal radii
                return (r1 - r2).abs() < 1e-12 * r1.max(r2);
            }
            if d > r1 + r2 || d < (r1 - r2).abs() {
                return false;
            }
            let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
            let h2 = r1 * r1 - a * a;
            let h = h2.max(0.0).sqrt();
            let u = (c2 - c1) / d;
            let mid = c1 + u * a;
            for sgn in [1.0, -1.0] {
                let z = mid + Complex64::new(-u.im, u.re) * (h * sgn);
                if angle_in_arc((z - c1).arg(), t1, *dt1)
                    && angle_in_arc((z - c2).arg(), t2, *dt2)
                    && not_base(z)
                {
                    return true;
                }
            }
            false
        }
    }
}

fn angle_in_arc(theta: f64, theta0: f64, dtheta: f64) -> bool {
    let tau = 2.0 * std::f64::consts::PI;
    if dtheta >= 0.0 {
        let rel = (theta - theta0).rem_euclid(tau);
        rel <= dtheta + 1e-12
    } else {
        let rel = (theta0 - theta).rem_euclid(tau);
        rel <= -dtheta + 1e-12
    }
}

/// Full counterclockwise circle around branch point `i`, starting exactly at
/// the leg's endpoint.
pub fn circle_around(leg: &Path, branch: &[Complex64], i: usize) -> PathPiece {
    PathPiece::Arc {
        center: branch[i],
        start: leg.endpoint(),
        dtheta: 2.0 * std::f64::consts::PI,
    }
}

/// The monodromy loop: leg, full circle, leg reversed.
pub fn monodromy_loop(leg: &Path, branch: &[Complex64], i: usize) -> Path {
    let circ = circle_around(leg, branch, i);
    let mut pieces = leg.0.clone();
    pieces.push(circ);
    pieces.extend(leg.reversed().0);
    Path(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_legs_when_clear() {
        let branch = vec![Complex64::new(0.0, 0.0), Complex64::new(10.0, 10.0)];
        let radii = vec![0.5, 0.5];
        let (legs, _circles) = legs_all(Complex64::new(5.0, -3.0), &branch, &radii).unwrap();
        assert_eq!(legs[0].0.len(), 1);
        let end = legs[0].endpoint();
        let expect = branch[0]
            + (Complex64::new(5.0, -3.0) - branch[0]) / (Complex64::new(5.0, -3.0)).norm()
                * _circles[0];
        assert!((end - expect).norm() < 1e-12);
    }

    #[test]
    fn detour_inserted_for_blocking_point() {
        // obstacle nearly on the segment to the far point
        let branch = vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.03)];
        let radii = vec![0.5, 0.5];
        let (legs, _circles) = legs_all(Complex64::new(5.0, 0.0), &branch, &radii).unwrap();
        let leg0 = &legs[0];
        assert!(leg0.0.iter().any(|p| matches!(p, PathPiece::Arc { .. })));
        // the detour keeps a positive clearance from the obstacle
        for piece in &leg0.0 {
            for k in 0..=20 {
                let z = piece.at(k as f64 / 20.0);
                assert!((z - branch[1]).norm() > 0.03);
            }
        }
    }

    #[test]
    fn reversal_round_trip() {
        let start = Complex64::new(1.0, 2.0) + Complex64::from_polar(0.7, 0.3);
        let p = PathPiece::Arc { center: Complex64::new(1.0, 2.0), start, dtheta: 1.1 };
        let r = p.reversed();
        assert!((p.at(0.0) - r.at(1.0)).norm() < 1e-14);
        assert!((p.at(1.0) - r.at(0.0)).norm() < 1e-14);
    }
}
