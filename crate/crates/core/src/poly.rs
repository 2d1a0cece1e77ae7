//! Weighted multivariate polynomials and univariate polynomials in the curve parameter.

use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// Ordered variable names with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>, weights: Vec<u32>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::Other("weights must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Other(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(VarSet { names, weights }))
    }

    /// Variables `x1..xn` with the given weights.
    pub fn standard(weights: &[u32]) -> Arc<Self> {
        let names = (1..=weights.len()).map(|i| format!("x{i}")).collect();
        Self::new(names, weights.to_vec()).expect("standard names are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i] as i64
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }
}

/// Exponent vector indexed by a [`VarSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn quasi_degree(&self, vs: &VarSet) -> i64 {
        self.0
            .iter()
            .zip(vs.weights())
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn fmt_with(&self, vs: &VarSet) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vs.names[i].clone()
                } else {
                    format!("{}^{}", vs.names[i], e)
                }
            })
            .collect();
        parts.join("*")
    }
}

/// Every monomial of quasi-degree `d`, exponents in descending lexicographic order.
pub fn monomials_of_quasi_degree(vs: &VarSet, d: i64) -> Vec<Monomial> {
    fn rec(w: &[u32], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let wi = w[i] as i64;
        let mut e = left / wi;
        loop {
            cur[i] = e as u32;
            rec(w, i + 1, left - e * wi, cur, out);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut cur = vec![0; vs.len()];
    rec(vs.weights(), 0, d, &mut cur, &mut out);
    out
}

/// Result of asking for the quasi-degree of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiDegree {
    /// The zero polynomial, homogeneous of every degree.
    Any,
    Exact(i64),
    Mixed,
}

impl QuasiDegree {
    pub fn value(self) -> Option<i64> {
        match self {
            QuasiDegree::Exact(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_vars(&self.vars, &other.vars)
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Scalar) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        Self::term(vars, Monomial::var(vars.len(), i), Scalar::one())
    }

    pub fn term(vars: &Arc<VarSet>, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.vars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut k = m.clone();
                k.0[i] -= 1;
                out.add_term(k, c * Scalar::from_integer(e.into()));
            }
        }
        out
    }

    pub fn quasi_degree(&self) -> QuasiDegree {
        let mut degs = self.terms.keys().map(|m| m.quasi_degree(&self.vars));
        let Some(first) = degs.next() else {
            return QuasiDegree::Any;
        };
        if degs.all(|d| d == first) {
            QuasiDegree::Exact(first)
        } else {
            QuasiDegree::Mixed
        }
    }

    /// Smallest and largest quasi-degree among the terms.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| m.quasi_degree(&self.vars));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    pub fn graded_component(&self, d: i64) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.quasi_degree(&self.vars) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn graded_components(&self) -> BTreeMap<i64, Polynomial> {
        let mut out: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.quasi_degree(&self.vars))
                .or_insert_with(|| Polynomial::zero(&self.vars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Lowest ordinary (unweighted) degree of a term; `None` for zero.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    /// Composition with a parametrized curve `x_i = coords[i](t)`.
    pub fn compose(&self, coords: &[UniPoly]) -> Result<UniPoly> {
        if coords.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for {} variables",
                coords.len(),
                self.vars.len()
            )));
        }
        let mut cache: Vec<Vec<UniPoly>> = coords.iter().map(|c| vec![UniPoly::one(), c.clone()]).collect();
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = UniPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul(&coords[i]);
                    pw.push(next);
                }
                acc = acc.mul(&pw[e as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Terms in printing order: by quasi-degree, then descending exponents.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            a.quasi_degree(&self.vars)
                .cmp(&b.quasi_degree(&self.vars))
                .then_with(|| b.cmp(a))
        });
        v
    }
}

pub(crate) fn fmt_coeff_term(c: &Scalar, body: &str, first: bool) -> String {
    let neg = c < &Scalar::zero();
    let a = if neg { -c.clone() } else { c.clone() };
    let mag = if body.is_empty() {
        a.to_string()
    } else if a.is_one() {
        body.to_string()
    } else {
        format!("{a}*{body}")
    };
    match (first, neg) {
        (true, true) => format!("-{mag}"),
        (true, false) => mag,
        (false, true) => format!(" - {mag}"),
        (false, false) => format!(" + {mag}"),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            write!(f, "{}", fmt_coeff_term(c, &m.fmt_with(&self.vars), k == 0))?;
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("variable sets differ")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("variable sets differ")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

/// Order of vanishing, possibly infinite. `NegInfinity` marks infeasible constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    NegInfinity,
    Finite(i64),
    Infinity,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(k) => Some(k),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Order> {
        match s.trim() {
            "inf" | "∞" => Some(Order::Infinity),
            "-inf" | "-∞" => Some(Order::NegInfinity),
            t => t.parse().ok().map(Order::Finite),
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        fn key(o: &Order) -> (i8, i64) {
            match o {
                Order::NegInfinity => (0, 0),
                Order::Finite(k) => (1, *k),
                Order::Infinity => (2, 0),
            }
        }
        key(self).cmp(&key(other))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::NegInfinity => write!(f, "-inf"),
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinity => write!(f, "inf"),
        }
    }
}

/// Dense univariate polynomial in `t`, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Scalar, e: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> Scalar {
        self.coeffs.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> UniPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn vanishing_order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Order::Finite(i as i64),
            None => Order::Infinity,
        }
    }

    /// The single term `c t^e` if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(Scalar, usize)> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (e, c) = nz.next()?;
        if nz.next().is_some() {
            return None;
        }
        Some((c.clone(), e))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            write!(f, "{}", fmt_coeff_term(c, &body, first))?;
            first = false;
        }
        Ok(())
    }
}

pub fn vanishing_order(g: &UniPoly) -> Order {
    g.vanishing_order()
}
