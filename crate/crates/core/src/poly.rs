//! Exact integer Laurent polynomials in one variable `A`, and bivariate
//! Tutte polynomials in `(x, y)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

/// `sum c_k A^k` with integer coefficients and finite support.  Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// The loop value `d = -A^2 - A^{-2}`.
    pub fn loop_value() -> LaurentPoly {
        let mut p = LaurentPoly::monomial(-1, 2);
        p.add_term(-2, -1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The substitution `A -> A^{-1}`.
    pub fn invert_variable(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(-e, c);
        }
        out
    }

    pub fn eval(&self, a: Complex64) -> Complex64 {
        let mut out = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            out += Complex64::new(c as f64, 0.0) * a.powi(e as i32);
        }
        out
    }

    /// `Some((coeff, exp))` when the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(i64, i64)> {
        if self.terms.len() == 1 {
            let (&e, &c) = self.terms.iter().next().unwrap();
            Some((c, e))
        } else {
            None
        }
    }

    /// Exact division, `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let (&dexp, &dcoeff) = divisor.terms.iter().next_back().unwrap();
        while !rem.is_zero() {
            let (&rexp, &rcoeff) = rem.terms.iter().next_back().unwrap();
            if rcoeff % dcoeff != 0 {
                return None;
            }
            let c = rcoeff / dcoeff;
            let e = rexp - dexp;
            quot.add_term(e, c);
            let sub = divisor.mul(&LaurentPoly::monomial(c, e));
            rem = rem.add(&sub.neg());
            if let Some((&top, _)) = rem.terms.iter().next_back() {
                if top >= rexp {
                    return None;
                }
            }
        }
        Some(quot)
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms() {
            parts.push(match e {
                0 => format!("{}", c),
                1 => format!("{}*A", c),
                _ => format!("{}*A^{}", c, e),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `sum c_{ij} x^i y^j` with integer coefficients.  For connected graphs the
/// coefficients are nonnegative.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TuttePoly {
    terms: BTreeMap<(u32, u32), i64>,
}

impl TuttePoly {
    pub fn zero() -> TuttePoly {
        TuttePoly::default()
    }

    pub fn one() -> TuttePoly {
        TuttePoly::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: i64, xexp: u32, yexp: u32) -> TuttePoly {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert((xexp, yexp), coeff);
        }
        TuttePoly { terms }
    }

    pub fn x() -> TuttePoly {
        TuttePoly::monomial(1, 1, 0)
    }

    pub fn y() -> TuttePoly {
        TuttePoly::monomial(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add_term(&mut self, xexp: u32, yexp: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry((xexp, yexp)).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&(xexp, yexp));
        }
    }

    pub fn add(&self, other: &TuttePoly) -> TuttePoly {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn mul(&self, other: &TuttePoly) -> TuttePoly {
        let mut out = TuttePoly::zero();
        for ((i1, j1), c1) in self.terms() {
            for ((i2, j2), c2) in other.terms() {
                out.add_term(
                    i1 + i2,
                    j1 + j2,
                    c1.checked_mul(c2).expect("coefficient overflow"),
                );
            }
        }
        out
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut out = 0.0;
        for ((i, j), c) in self.terms() {
            out += c as f64 * powi(x, i) * powi(y, j);
        }
        out
    }

    pub fn eval_rational(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut out = BigRational::from_integer(BigInt::from(0));
        for ((i, j), c) in self.terms() {
            let mut term = BigRational::from_integer(BigInt::from(c));
            for _ in 0..i {
                term *= x;
            }
            for _ in 0..j {
                term *= y;
            }
            out += term;
        }
        out
    }
}

fn powi(x: f64, k: u32) -> f64 {
    let mut out = 1.0;
    for _ in 0..k {
        out *= x;
    }
    out
}
