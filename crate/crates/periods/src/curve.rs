//! Affine curve models with their holomorphic differential numerators.
//!
//! Plane quartics use the chart z = 1 with the classical basis: eta_f =
//! f(x,y,1) dx / (dF/dy)(x,y,1) for f in {x, y, 1} (degree-1 monomials in
//! lexicographic order). Hyperelliptic curves y^2 = f(x) use numerators
//! {1, x, ..., x^{g-1}} against the same dP/dy = 2y denominator.

use crate::cf::{Ctx, CF};
use crate::poly::{BiPoly, UniPoly};
use crate::{Error, Result};
use num_traits::{One, Zero};
use ternary::gl3::unimodular_sequence;
use ternary::{discriminant, GL3Matrix, Rat, TernaryForm};

#[derive(Clone, Debug)]
pub struct AffineCurve {
    /// Defining polynomial P(x, y), exact.
    pub poly: BiPoly,
    /// Sheet count deg_y P.
    pub n: usize,
    /// Numerators f_j of the differentials f_j dx / (dP/dy).
    pub numerators: Vec<BiPoly>,
    /// Expected genus (checked against the homology rank downstream).
    pub genus: usize,
}

fn bipoly_const(c: Rat) -> BiPoly {
    BiPoly::new(vec![UniPoly::new(vec![c])])
}

fn bipoly_x() -> BiPoly {
    BiPoly::new(vec![UniPoly::new(vec![Rat::zero(), Rat::one()])])
}

fn bipoly_y() -> BiPoly {
    BiPoly::new(vec![UniPoly::zero(), UniPoly::new(vec![Rat::one()])])
}

/// Chart z = 1 of a ternary form, as a bivariate polynomial.
pub fn chart_z1(form: &TernaryForm) -> BiPoly {
    let d = form.degree() as usize;
    let mut cols: Vec<Vec<Rat>> = vec![vec![Rat::zero(); d + 1]; d + 1];
    for (&(i, j, _), c) in form.terms() {
        cols[j as usize][i as usize] = c.clone();
    }
    BiPoly::new(cols.into_iter().map(UniPoly::new).collect())
}

/// The projection chart is admissible when the y-degree is full and the
/// curve is unramified over x = infinity (the binary form F(x,y,0) has four
/// distinct roots, none of them (0:1)).
fn quartic_admissible(form: &TernaryForm) -> bool {
    if form.coeff((0, 4, 0)).is_zero() {
        return false;
    }
    // F(1, mu, 0) as a univariate in mu
    let mut cs = vec![Rat::zero(); 5];
    for (&(_, j, k), c) in form.terms() {
        if k == 0 {
            cs[j as usize] = c.clone();
        }
    }
    let u = UniPoly::new(cs);
    u.degree() == Some(4) && u.is_squarefree()
}

/// The classical differential numerators {x, y, 1} for a smooth quartic.
pub fn classical_differentials(form: &TernaryForm) -> Result<Vec<BiPoly>> {
    if form.degree() != 4 {
        return Err(Error::InvalidInput("classical basis requires a quartic".into()));
    }
    let disc = discriminant(form).map_err(Error::Exact)?;
    if disc.value.is_zero() {
        return Err(Error::SingularCurve);
    }
    Ok(vec![bipoly_x(), bipoly_y(), bipoly_const(Rat::one())])
}

/// Build the affine model of a smooth plane quartic, applying a unimodular
/// change of coordinates when the projection chart is inadmissible. The
/// returned transform u satisfies model = chart of (u . F); det u = 1, so
/// discriminant and modular value are unchanged.
pub fn from_quartic(form: &TernaryForm) -> Result<(AffineCurve, GL3Matrix)> {
    if form.degree() != 4 {
        return Err(Error::InvalidInput("expected a quartic".into()));
    }
    let disc = discriminant(form).map_err(Error::Exact)?;
    if disc.value.is_zero() {
        return Err(Error::SingularCurve);
    }
    for attempt in 0..48u64 {
        let u = if attempt == 0 {
            GL3Matrix::identity()
        } else {
            unimodular_sequence(attempt.wrapping_mul(0x9D2C5680).wrapping_add(3), 4)
        };
        let g = u.act(form);
        if quartic_admissible(&g) {
            let poly = chart_z1(&g);
            let numerators = classical_differentials(&g)?;
            let curve = AffineCurve { poly, n: 4, numerators, genus: 3 };
            return Ok((curve, u));
        }
    }
    Err(Error::Internal("no admissible chart found".into()))
}

/// Hyperelliptic genus-3 curve y^2 = f(x), deg f in {7, 8}, f squarefree.
/// Degree 7 is reduced to degree 8 by the substitution x = a + 1/t (which
/// moves the branch point at infinity to t = 0).
pub fn hyperelliptic_curve(f: &UniPoly) -> Result<AffineCurve> {
    match f.degree() {
        Some(7) | Some(8) => hyperelliptic_any(f),
        _ => Err(Error::InvalidInput("hyperelliptic model needs degree 7 or 8".into())),
    }
}

/// y^2 = f(x) for squarefree f of degree 4..=8 (degree 4 and 5 give genus 1
/// test curves, 6 gives genus 2, 7 and 8 genus 3).
pub fn hyperelliptic_any(f: &UniPoly) -> Result<AffineCurve> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if !(3..=8).contains(&deg) {
        return Err(Error::InvalidInput(format!("unsupported degree {deg}")));
    }
    if !f.is_squarefree() {
        return Err(Error::InvalidInput("f must be squarefree".into()));
    }
    let f = if deg % 2 == 1 {
        odd_degree_transform(f, deg)?
    } else {
        f.clone()
    };
    let deg = f.degree().unwrap();
    let genus = deg / 2 - 1;
    // P = y^2 - f
    let poly = BiPoly::new(vec![
        UniPoly::new(f.0.iter().map(|c| -c.clone()).collect()),
        UniPoly::zero(),
        UniPoly::new(vec![Rat::one()]),
    ]);
    let mut numerators = Vec::with_capacity(genus);
    let mut mono = vec![Rat::one()];
    for _ in 0..genus {
        numerators.push(BiPoly::new(vec![UniPoly::new(mono.clone())]));
        mono.insert(0, Rat::zero());
    }
    Ok(AffineCurve { poly, n: 2, numerators, genus })
}

/// x = a + 1/t turns y^2 = f(x), deg f = 2k-1, into w^2 = h(t) with
/// h(t) = t^{2k} f(a + 1/t) of degree 2k (and t = 0 a branch point).
fn odd_degree_transform(f: &UniPoly, deg: usize) -> Result<UniPoly> {
    let target = deg + 1;
    for cand in 0..40i64 {
        let a = Rat::from_integer(if cand % 2 == 0 { cand / 2 } else { -(cand / 2) - 1 }.into());
        if f.eval(&a).is_zero() {
            continue;
        }
        // h = sum_k f_k t^{target-k} (a t + 1)^k
        let lin = UniPoly::new(vec![Rat::one(), a.clone()]);
        let mut h = vec![Rat::zero(); target + 1];
        let mut linpow = UniPoly::new(vec![Rat::one()]);
        for (k, c) in f.0.iter().enumerate() {
            if !c.is_zero() {
                for (e, lc) in linpow.0.iter().enumerate() {
                    h[target - k + e] += c * lc;
                }
            }
            linpow = mul_unipoly(&linpow, &lin);
        }
        let h = UniPoly::new(h);
        if h.degree() == Some(target) && h.is_squarefree() {
            return Ok(h);
        }
    }
    Err(Error::Internal("no good Moebius shift found".into()))
}

fn mul_unipoly(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![Rat::zero(); a.0.len() + b.0.len() - 1];
    for (i, x) in a.0.iter().enumerate() {
        for (j, y) in b.0.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    UniPoly::new(out)
}

/// The curve's polynomial data pushed into a numeric field, for evaluation
/// along paths.
pub struct CurveEval<C: Ctx> {
    pub n: usize,
    pub g: usize,
    ycoeffs: Vec<Vec<C::F>>,
    dycoeffs: Vec<Vec<C::F>>,
    numerators: Vec<Vec<Vec<C::F>>>,
}

fn unipoly_to<C: Ctx>(ctx: &C, p: &UniPoly) -> Vec<C::F> {
    if p.is_zero() {
        vec![ctx.zero()]
    } else {
        p.0.iter().map(|c| ctx.from_rat(c)).collect()
    }
}

fn horner<F: CF>(coeffs: &[F], x: &F, zero: F) -> F {
    let mut acc = zero;
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

impl<C: Ctx> CurveEval<C> {
    pub fn new(ctx: &C, curve: &AffineCurve) -> Self {
        let conv = |bp: &BiPoly| -> Vec<Vec<C::F>> {
            bp.ycoeffs.iter().map(|p| unipoly_to(ctx, p)).collect()
        };
        CurveEval {
            n: curve.n,
            g: curve.numerators.len(),
            ycoeffs: conv(&curve.poly),
            dycoeffs: conv(&curve.poly.dy()),
            numerators: curve.numerators.iter().map(conv).collect(),
        }
    }

    /// y-polynomial coefficients of P at fixed x.
    pub fn fiber_poly(&self, ctx: &C, x: &C::F) -> Vec<C::F> {
        self.ycoeffs.iter().map(|p| horner(p, x, ctx.zero())).collect()
    }

    pub fn p_at(&self, ctx: &C, x: &C::F, y: &C::F) -> C::F {
        let c = self.fiber_poly(ctx, x);
        horner(&c, y, ctx.zero())
    }

    pub fn dy_at(&self, ctx: &C, x: &C::F, y: &C::F) -> C::F {
        let c: Vec<C::F> = self.dycoeffs.iter().map(|p| horner(p, x, ctx.zero())).collect();
        horner(&c, y, ctx.zero())
    }

    /// Numerator value f_j(x, y).
    pub fn numerator_at(&self, ctx: &C, j: usize, x: &C::F, y: &C::F) -> C::F {
        let c: Vec<C::F> = self.numerators[j].iter().map(|p| horner(p, x, ctx.zero())).collect();
        horner(&c, y, ctx.zero())
    }

    /// All g integrand values f_j(x,y)/P_y(x,y) at once.
    pub fn integrand(&self, ctx: &C, x: &C::F, y: &C::F) -> Vec<C::F> {
        let dy = self.dy_at(ctx, x, y);
        (0..self.g).map(|j| self.numerator_at(ctx, j, x, y).div(&dy)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::C64Ctx;
    use num_complex::Complex64;
    use ternary::rat_int;

    fn fermat() -> TernaryForm {
        TernaryForm::new(
            4,
            [
                ((4, 0, 0), rat_int(1)),
                ((0, 4, 0), rat_int(1)),
                ((0, 0, 4), rat_int(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fermat_chart_is_admissible_as_is() {
        let (curve, u) = from_quartic(&fermat()).unwrap();
        assert_eq!(u, GL3Matrix::identity());
        assert_eq!(curve.n, 4);
        assert_eq!(curve.numerators.len(), 3);
        // P(x, y) = x^4 + y^4 + 1
        let ctx = C64Ctx;
        let ev = CurveEval::new(&ctx, &curve);
        let v = ev.p_at(&ctx, &Complex64::new(2.0, 0.0), &Complex64::new(1.0, 0.0));
        assert!((v - Complex64::new(18.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn classical_basis_count_and_singular_rejection() {
        assert_eq!(classical_differentials(&fermat()).unwrap().len(), 3);
        let singular = TernaryForm::new(4, [((4, 0, 0), rat_int(1))]).unwrap();
        assert!(classical_differentials(&singular).is_err());
    }

    #[test]
    fn degree_seven_reduces_to_eight() {
        // f = x^7 - 1
        let mut c = vec![rat_int(0); 8];
        c[0] = rat_int(-1);
        c[7] = rat_int(1);
        let f = UniPoly::new(c);
        let curve = hyperelliptic_curve(&f).unwrap();
        assert_eq!(curve.genus, 3);
        assert_eq!(curve.poly.deg_y(), Some(2));
        // new defining polynomial has x-degree 8
        let dx = curve.poly.ycoeffs[0].degree().unwrap();
        assert_eq!(dx, 8);
    }

    #[test]
    fn non_squarefree_rejected() {
        // (x-1)^2 (x^6 + 2)
        let a = UniPoly::new(vec![rat_int(1), rat_int(-2), rat_int(1)]);
        let mut b = vec![rat_int(0); 7];
        b[0] = rat_int(2);
        b[6] = rat_int(1);
        let f = mul_unipoly(&a, &UniPoly::new(b));
        assert!(hyperelliptic_curve(&f).is_err());
    }
}
