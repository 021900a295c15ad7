//! Homogeneous ternary forms with exact rational coefficients.

use crate::{rat_from_str, rat_to_str, Error, Rat, Result};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent triple (i, j, k) with i + j + k = degree.
pub type Expo = (u32, u32, u32);

/// A homogeneous polynomial in three variables with exact rational
/// coefficients. Zero coefficients are never stored; the zero form has an
/// empty coefficient map but keeps its nominal degree.
#[derive(Clone, PartialEq, Eq)]
pub struct TernaryForm {
    degree: u32,
    coeffs: BTreeMap<Expo, Rat>,
}

impl TernaryForm {
    pub fn zero(degree: u32) -> Self {
        TernaryForm { degree, coeffs: BTreeMap::new() }
    }

    pub fn new<I: IntoIterator<Item = (Expo, Rat)>>(degree: u32, terms: I) -> Result<Self> {
        let mut f = Self::zero(degree);
        for (e, c) in terms {
            f.add_term(e, c)?;
        }
        Ok(f)
    }

    pub fn monomial(degree: u32, e: Expo, c: Rat) -> Result<Self> {
        Self::new(degree, [(e, c)])
    }

    pub fn add_term(&mut self, e: Expo, c: Rat) -> Result<()> {
        if e.0 + e.1 + e.2 != self.degree {
            return Err(Error::InvalidInput(format!(
                "exponent {:?} does not sum to degree {}",
                e, self.degree
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: Expo) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in descending lexicographic order of (i, j, k).
    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.coeffs.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// All monomials of the given degree in descending lexicographic order.
    pub fn monomial_basis(degree: u32) -> Vec<Expo> {
        let mut v = Vec::new();
        for i in (0..=degree).rev() {
            for j in (0..=(degree - i)).rev() {
                v.push((i, j, degree - i - j));
            }
        }
        v
    }

    /// Coefficient vector in the canonical (descending lex) monomial order;
    /// 15 entries for a quartic.
    pub fn coeff_vector(&self) -> Vec<Rat> {
        Self::monomial_basis(self.degree).iter().map(|e| self.coeff(*e)).collect()
    }

    /// The three partial derivatives q1, q2, q3, each of degree d - 1.
    pub fn partials(&self) -> [TernaryForm; 3] {
        assert!(self.degree >= 1, "cannot differentiate a constant form");
        let d = self.degree - 1;
        let mut out = [Self::zero(d), Self::zero(d), Self::zero(d)];
        for (&(i, j, k), c) in &self.coeffs {
            if i > 0 {
                out[0].add_term((i - 1, j, k), c * Rat::from_integer(i.into())).unwrap();
            }
            if j > 0 {
                out[1].add_term((i, j - 1, k), c * Rat::from_integer(j.into())).unwrap();
            }
            if k > 0 {
                out[2].add_term((i, j, k - 1), c * Rat::from_integer(k.into())).unwrap();
            }
        }
        out
    }

    pub fn scale(&self, lambda: &Rat) -> Self {
        let mut f = Self::zero(self.degree);
        if lambda.is_zero() {
            return f;
        }
        for (e, c) in &self.coeffs {
            f.coeffs.insert(*e, c * lambda);
        }
        f
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::InvalidInput("degree mismatch in addition".into()));
        }
        let mut f = self.clone();
        for (e, c) in &other.coeffs {
            f.add_term(*e, c.clone())?;
        }
        Ok(f)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut f = Self::zero(self.degree + other.degree);
        for (&(a, b, c), x) in &self.coeffs {
            for (&(d, e, g), y) in &other.coeffs {
                f.add_term((a + d, b + e, c + g), x * y).unwrap();
            }
        }
        f
    }

    pub fn eval(&self, x: &Rat, y: &Rat, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j, k), c) in &self.coeffs {
            acc += c * crate::rat_pow(x, i) * crate::rat_pow(y, j) * crate::rat_pow(z, k);
        }
        acc
    }

    /// Extract the chart z = 1 polynomial as coefficients c[j][i] of x^i y^j.
    pub fn chart_xy(&self) -> Vec<Vec<Rat>> {
        let d = self.degree as usize;
        let mut c = vec![vec![Rat::zero(); d + 1]; d + 1];
        for (&(i, j, _), v) in &self.coeffs {
            c[j as usize][i as usize] = v.clone();
        }
        c
    }

    /// The binary form F(x, y, 0), as univariate coefficients of y^j (after
    /// dehomogenizing by x); used by the admissibility test at infinity.
    pub fn z0_binary(&self) -> Vec<Rat> {
        let d = self.degree as usize;
        let mut c = vec![Rat::zero(); d + 1];
        for (&(_, j, k), v) in &self.coeffs {
            if k == 0 {
                c[j as usize] = v.clone();
            }
        }
        c
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .terms()
            .map(|(&(i, j, k), c)| {
                serde_json::json!([i, j, k, rat_to_str(c)])
            })
            .collect();
        serde_json::json!({ "degree": self.degree, "coeffs": coeffs })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let degree = v
            .get("degree")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::InvalidInput("missing 'degree'".into()))? as u32;
        let coeffs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::InvalidInput("missing 'coeffs'".into()))?;
        let mut f = Self::zero(degree);
        for item in coeffs {
            let arr = item
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| Error::InvalidInput("coeff entries must be [i,j,k,\"p/q\"]".into()))?;
            let idx = |n: usize| -> Result<u32> {
                arr[n]
                    .as_u64()
                    .map(|x| x as u32)
                    .ok_or_else(|| Error::InvalidInput("bad exponent".into()))
            };
            let c = arr[3]
                .as_str()
                .ok_or_else(|| Error::InvalidInput("coefficient must be a string".into()))?;
            f.add_term((idx(0)?, idx(1)?, idx(2)?), rat_from_str(c)?)?;
        }
        Ok(f)
    }
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryForm(d={}, {} terms)", self.degree, self.coeffs.len())
    }
}
