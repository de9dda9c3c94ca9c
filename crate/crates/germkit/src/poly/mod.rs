//! Exact multivariate polynomial arithmetic over Gaussian rationals.
//!
//! Polynomials are immutable sparse term maps with a fixed variable count.
//! All symbolic operations (order, initial form, derivatives, composition
//! with linear maps) are exact; conversion to `Complex64` happens only at
//! the numeric boundary (`restrict_to_line`, `evaluate`).

mod parse;

pub use parse::parse;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Gaussian rational: exact complex scalar with rational real and
/// imaginary parts, kept in canonical reduced form by `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub re: BigRational,
    pub im: BigRational,
}

impl Coefficient {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Coefficient { re, im }
    }

    pub fn zero() -> Self {
        Coefficient::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Coefficient::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Exact rational `p/q`. Panics if `q == 0`; the parser screens that case.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Coefficient::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Coefficient::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::InvalidInput("division by zero coefficient".into()));
        }
        Ok(Coefficient::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient::new(-self.re, -self.im)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            if self.im == -BigRational::one() {
                return write!(f, "-i");
            }
            return write!(f, "{}*i", fmt_rational(&self.im));
        }
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if self.im == -BigRational::one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_rational(&self.im))
        };
        if self.im.is_negative() && !im_part.starts_with('-') {
            write!(f, "({} + {})", fmt_rational(&self.re), im_part)
        } else if im_part.starts_with('-') {
            write!(f, "({} - {})", fmt_rational(&self.re), &im_part[1..])
        } else {
            write!(f, "({} + {})", fmt_rational(&self.re), im_part)
        }
    }
}

/// Exponent vector of one term. Ordered graded-lexicographically so the
/// term map iterates in a canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // graded lex: total degree first, then lex on exponents
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

/// Sparse multivariate polynomial over Gaussian rationals with a fixed
/// number of variables. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coefficient) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Coefficient::one())
    }

    /// The monomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::VariableIndex { index: i, nvars });
        }
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(Monomial::new(exps), Coefficient::one());
        Ok(p)
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Coefficient)>) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            if m.exponents.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "monomial arity {} != nvars {}",
                    m.exponents.len(),
                    nvars
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Order at the origin: minimum total degree among stored terms.
    /// `None` encodes "infinite" (the zero polynomial).
    pub fn ord0(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Lowest-degree homogeneous component.
    pub fn initial_form(&self) -> Result<Polynomial> {
        let ord = self.ord0().ok_or(Error::ZeroPolynomial)?;
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.degree() == ord {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        Ok(p)
    }

    /// Split into homogeneous components keyed by degree. They sum to `self`.
    pub fn homog_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// `true` iff all terms share one total degree. The zero polynomial is
    /// homogeneous by convention and reports no degree.
    pub fn is_homogeneous(&self) -> (bool, Option<u32>) {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => (true, None),
            Some(d) => {
                if degrees.all(|e| e == d) {
                    (true, Some(d))
                } else {
                    (false, None)
                }
            }
        }
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::VariableIndex {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents.clone();
            exps[var] = e - 1;
            let factor = Coefficient::from_int(e as i64);
            p.add_term(Monomial::new(exps), &factor * c);
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut p = Polynomial::zero(self.nvars);
        for (m, coeff) in &self.terms {
            p.terms.insert(m.clone(), c * coeff);
        }
        p
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a point with Gaussian-rational coordinates.
    pub fn evaluate_exact(&self, point: &[Coefficient]) -> Result<Coefficient> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point arity {} != nvars {}",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Coefficient::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &point[i];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Floating-point evaluation.
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point arity {} != nvars {}",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = c.to_complex();
            for (i, &e) in m.exponents.iter().enumerate() {
                term *= point[i].powu(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// The univariate polynomial `t -> f(base + t * dir)` with coefficients
    /// evaluated in double precision.
    pub fn restrict_to_line(&self, base: &[Complex64], dir: &[Complex64]) -> Result<UniPoly> {
        if base.len() != self.nvars || dir.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "line arity ({}, {}) != nvars {}",
                base.len(),
                dir.len(),
                self.nvars
            )));
        }
        if dir.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::InvalidInput("zero direction".into()));
        }
        let deg = match self.degree() {
            None => return Ok(UniPoly::new(vec![])),
            Some(d) => d as usize,
        };
        let mut out = vec![Complex64::new(0.0, 0.0); deg + 1];
        // per-variable binomial expansion of (base_i + t dir_i)^e, convolved
        for (m, c) in &self.terms {
            let mut term = vec![c.to_complex()];
            for (i, &e) in m.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut lin = vec![Complex64::new(1.0, 0.0)];
                for _ in 0..e {
                    lin = convolve_lin(&lin, base[i], dir[i]);
                }
                term = convolve(&term, &lin);
            }
            for (k, v) in term.into_iter().enumerate() {
                out[k] += v;
            }
        }
        Ok(UniPoly::new(out))
    }

    /// Exact composition with an affine map: returns `g(s) = f(b + A s)`
    /// where `A` has `nvars` rows and `new_vars` columns.
    pub fn compose_affine(
        &self,
        matrix: &[Vec<Coefficient>],
        offset: &[Coefficient],
    ) -> Result<Polynomial> {
        if matrix.len() != self.nvars || offset.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "affine map has {} rows, expected {}",
                matrix.len(),
                self.nvars
            )));
        }
        let new_vars = matrix.first().map(|r| r.len()).unwrap_or(0);
        if matrix.iter().any(|r| r.len() != new_vars) {
            return Err(Error::DimensionMismatch("ragged matrix".into()));
        }
        // linear image of each original variable
        let mut images: Vec<Polynomial> = Vec::with_capacity(self.nvars);
        for (row, off) in matrix.iter().zip(offset) {
            let mut lin = Polynomial::constant(new_vars, off.clone());
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    let mut exps = vec![0u32; new_vars];
                    exps[j] = 1;
                    lin.add_term(Monomial::new(exps), a.clone());
                }
            }
            images.push(lin);
        }
        // memoized powers per variable
        let max_exp: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.exponents[i]).max().unwrap_or(0))
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(self.nvars);
        for (i, img) in images.iter().enumerate() {
            let mut tower = vec![Polynomial::one(new_vars)];
            for e in 1..=max_exp[i] {
                let next = &tower[(e - 1) as usize] * img;
                tower.push(next);
            }
            powers.push(tower);
        }
        let mut out = Polynomial::zero(new_vars);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(new_vars, c.clone());
            for (i, &e) in m.exponents.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exact composition with a linear map (no offset).
    pub fn compose_linear(&self, matrix: &[Vec<Coefficient>]) -> Result<Polynomial> {
        let offset = vec![Coefficient::zero(); self.nvars];
        self.compose_affine(matrix, &offset)
    }

    /// Canonical text form: graded-lexicographic descending, exact rationals.
    pub fn format(&self, variables: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = format_monomial(m, variables);
            let (sign, body) = format_coeff_mono(c, &mono);
            if idx == 0 {
                if sign < 0 {
                    out.push('-');
                }
                out.push_str(&body);
            } else if sign < 0 {
                out.push_str(" - ");
                out.push_str(&body);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        out
    }
}

fn format_monomial(m: &Monomial, variables: &[&str]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = variables.get(i).copied().unwrap_or("?");
        if e == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Renders one term; returns (sign, body) where sign < 0 means the caller
/// joins with " - ". Complex coefficients with both parts nonzero print
/// parenthesized and always join with '+'.
fn format_coeff_mono(c: &Coefficient, mono: &str) -> (i32, String) {
    let is_real = c.im.is_zero();
    let is_imag = c.re.is_zero() && !c.im.is_zero();
    if mono.is_empty() {
        if is_real && c.re.is_negative() {
            let mut d = c.clone();
            d.re = -d.re;
            return (-1, d.to_string());
        }
        if is_imag && c.im.is_negative() {
            let mut d = c.clone();
            d.im = -d.im;
            return (-1, d.to_string());
        }
        return (1, c.to_string());
    }
    if is_real {
        if c.re.is_one() {
            return (1, mono.to_string());
        }
        if c.re == -BigRational::one() {
            return (-1, mono.to_string());
        }
        if c.re.is_negative() {
            return (-1, format!("{}*{}", fmt_rational(&(-c.re.clone())), mono));
        }
        return (1, format!("{}*{}", fmt_rational(&c.re), mono));
    }
    if is_imag {
        if c.im.is_one() {
            return (1, format!("i*{mono}"));
        }
        if c.im == -BigRational::one() {
            return (-1, format!("i*{mono}"));
        }
        if c.im.is_negative() {
            return (-1, format!("{}*i*{}", fmt_rational(&(-c.im.clone())), mono));
        }
        return (1, format!("{}*i*{}", fmt_rational(&c.im), mono));
    }
    (1, format!("{}*{}", c, mono))
}

fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn convolve_lin(a: &[Complex64], c0: Complex64, c1: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + 1];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x * c0;
        out[i + 1] += x * c1;
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(
            self.nvars, rhs.nvars,
            "mixed-arity polynomial arithmetic: {} vs {} variables",
            self.nvars, rhs.nvars
        );
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(
            self.nvars, rhs.nvars,
            "mixed-arity polynomial arithmetic: {} vs {} variables",
            self.nvars, rhs.nvars
        );
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone().neg());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(
            self.nvars, rhs.nvars,
            "mixed-arity polynomial arithmetic: {} vs {} variables",
            self.nvars, rhs.nvars
        );
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.clone().neg());
        }
        out
    }
}

/// Univariate polynomial with complex double coefficients in ascending
/// degree order. The numeric carrier for line restrictions.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    pub coeffs: Vec<Complex64>,
}

impl UniPoly {
    /// Trims exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while let Some(last) = coeffs.last() {
            if last.re == 0.0 && last.im == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap_or(&Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::new(vec![]);
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }
}
