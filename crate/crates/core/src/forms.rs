//! Differential forms with polynomial coefficients and polynomial vector fields.

use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::poly::{fmt_coeff_term, same_vars, Monomial, Polynomial, QuasiDegree, UniPoly, VarSet};

/// Default highest form degree tracked.
pub const MAX_FORM_DEGREE: usize = 3;

/// A k-form `Σ p_I dx_I` over strictly increasing index tuples `I`.
#[derive(Clone, Debug)]
pub struct DiffForm {
    vars: Arc<VarSet>,
    degree: usize,
    cap: usize,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

impl PartialEq for DiffForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && same_vars(&self.vars, &other.vars)
            && self.terms == other.terms
    }
}

impl Eq for DiffForm {}

/// Sorts an index tuple, returning the permutation sign, or `None` on a repeat.
fn sort_indices(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, negative))
    }
}

impl DiffForm {
    pub fn zero(vars: &Arc<VarSet>, degree: usize) -> Self {
        DiffForm {
            vars: vars.clone(),
            degree,
            cap: MAX_FORM_DEGREE.max(degree),
            terms: BTreeMap::new(),
        }
    }

    /// Same as [`DiffForm::zero`] but allowing products up to `cap`.
    pub fn zero_with_cap(vars: &Arc<VarSet>, degree: usize, cap: usize) -> Self {
        let mut f = Self::zero(vars, degree);
        f.cap = cap.max(degree);
        f
    }

    pub fn function(p: Polynomial) -> Self {
        let mut f = Self::zero(p.vars(), 0);
        if !p.is_zero() {
            f.terms.insert(Vec::new(), p);
        }
        f
    }

    pub fn dx(vars: &Arc<VarSet>, i: usize) -> Self {
        Self::term(Polynomial::one(vars), &[i]).expect("single index")
    }

    /// `p dx_{idx[0]} ∧ … ∧ dx_{idx[k-1]}` for an arbitrary index order.
    pub fn term(p: Polynomial, idx: &[usize]) -> Result<Self> {
        let n = p.vars().len();
        if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange(bad, n));
        }
        let mut f = Self::zero(p.vars(), idx.len());
        if let Some((sorted, neg)) = sort_indices(idx) {
            let c = if neg { -&p } else { p };
            f.add_term(sorted, c);
        }
        Ok(f)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Polynomial {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, idx: Vec<usize>, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        match self.terms.remove(&idx) {
            Some(old) => {
                let s = &old + &p;
                if !s.is_zero() {
                    self.terms.insert(idx, s);
                }
            }
            None => {
                self.terms.insert(idx, p);
            }
        }
    }

    fn check(&self, other: &DiffForm) -> Result<()> {
        if !same_vars(&self.vars, &other.vars) {
            return Err(Error::VarSetMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DimensionMismatch(format!(
                "adding a {}-form to a {}-form",
                self.degree, other.degree
            )));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let rest = if self.is_zero() { self } else { other };
        for (i, p) in &rest.terms {
            out.add_term(i.clone(), p.clone());
        }
        out.cap = self.cap.max(other.cap);
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> DiffForm {
        let mut out = DiffForm::zero_with_cap(&self.vars, self.degree, self.cap);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, q: &Polynomial) -> DiffForm {
        let mut out = DiffForm::zero_with_cap(&self.vars, self.degree, self.cap);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), p * q);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> DiffForm {
        let mut out = DiffForm::zero_with_cap(&self.vars, self.degree, self.cap);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), p.mul_monomial(m));
        }
        out
    }

    /// Quasi-degree where each `dx_i` carries the weight of `x_i`.
    pub fn quasi_degree(&self) -> QuasiDegree {
        let mut found: Option<i64> = None;
        for (idx, p) in &self.terms {
            let shift: i64 = idx.iter().map(|&i| self.vars.weight(i)).sum();
            match p.quasi_degree() {
                QuasiDegree::Exact(d) => match found {
                    None => found = Some(d + shift),
                    Some(e) if e == d + shift => {}
                    Some(_) => return QuasiDegree::Mixed,
                },
                QuasiDegree::Mixed => return QuasiDegree::Mixed,
                QuasiDegree::Any => {}
            }
        }
        found.map_or(QuasiDegree::Any, QuasiDegree::Exact)
    }

    /// Decomposition into quasi-homogeneous pieces.
    pub fn graded_components(&self) -> BTreeMap<i64, DiffForm> {
        let mut out: BTreeMap<i64, DiffForm> = BTreeMap::new();
        for (idx, p) in &self.terms {
            let shift: i64 = idx.iter().map(|&i| self.vars.weight(i)).sum();
            for (d, piece) in p.graded_components() {
                out.entry(d + shift)
                    .or_insert_with(|| DiffForm::zero_with_cap(&self.vars, self.degree, self.cap))
                    .add_term(idx.clone(), piece);
            }
        }
        out
    }

    pub fn graded_component(&self, d: i64) -> DiffForm {
        self.graded_components()
            .remove(&d)
            .unwrap_or_else(|| DiffForm::zero_with_cap(&self.vars, self.degree, self.cap))
    }

    /// Largest `k` with every coefficient in the k-th power of the maximal ideal.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.values().filter_map(Polynomial::order_at_origin).min()
    }

    pub fn is_closed(&self) -> bool {
        self.degree >= self.vars.len() || exterior_derivative(self).is_zero()
    }
}

impl std::ops::Add for &DiffForm {
    type Output = DiffForm;
    fn add(self, rhs: &DiffForm) -> DiffForm {
        self.try_add(rhs).expect("incompatible forms")
    }
}

impl std::ops::Sub for &DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: &DiffForm) -> DiffForm {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        self.scale(&-Scalar::one())
    }
}

pub fn wedge(a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    a.check(b)?;
    let k = a.degree + b.degree;
    let cap = a.cap.max(b.cap);
    if k > cap {
        return Err(Error::DegreeOverflow(k, cap));
    }
    let mut out = DiffForm::zero_with_cap(&a.vars, k, cap);
    for (i, p) in &a.terms {
        for (j, q) in &b.terms {
            let joined: Vec<usize> = i.iter().chain(j).copied().collect();
            if let Some((sorted, neg)) = sort_indices(&joined) {
                let c = p * q;
                out.add_term(sorted, if neg { -&c } else { c });
            }
        }
    }
    Ok(out)
}

pub fn exterior_derivative(a: &DiffForm) -> DiffForm {
    let n = a.vars.len();
    let mut out = DiffForm::zero_with_cap(&a.vars, a.degree + 1, a.cap.max(a.degree + 1));
    for (idx, p) in &a.terms {
        for v in 0..n {
            if idx.contains(&v) {
                continue;
            }
            let dp = p.derivative(v);
            if dp.is_zero() {
                continue;
            }
            let mut joined = Vec::with_capacity(idx.len() + 1);
            joined.push(v);
            joined.extend_from_slice(idx);
            let (sorted, neg) = sort_indices(&joined).expect("distinct indices");
            out.add_term(sorted, if neg { -&dp } else { dp });
        }
    }
    out
}

/// Polynomial vector field `Σ X_i ∂/∂x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldGerm {
    vars: Arc<VarSet>,
    components: Vec<Polynomial>,
}

impl VectorFieldGerm {
    pub fn new(vars: &Arc<VarSet>, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for {} variables",
                components.len(),
                vars.len()
            )));
        }
        if components.iter().any(|c| !same_vars(c.vars(), vars)) {
            return Err(Error::VarSetMismatch);
        }
        Ok(VectorFieldGerm {
            vars: vars.clone(),
            components,
        })
    }

    /// The constant field `∂/∂x_i`.
    pub fn partial(vars: &Arc<VarSet>, i: usize) -> Self {
        let components = (0..vars.len())
            .map(|j| {
                if i == j {
                    Polynomial::one(vars)
                } else {
                    Polynomial::zero(vars)
                }
            })
            .collect();
        VectorFieldGerm {
            vars: vars.clone(),
            components,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        VectorFieldGerm {
            vars: self.vars.clone(),
            components: self.components.iter().map(|c| c * p).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_vars(&self.vars, &other.vars) {
            return Err(Error::VarSetMismatch);
        }
        Ok(VectorFieldGerm {
            vars: self.vars.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Derivative of a function along the field.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &p.derivative(i));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }
}

impl fmt::Display for VectorFieldGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.vars.names()[i];
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})*d/d{name}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn interior_product(x: &VectorFieldGerm, a: &DiffForm) -> Result<DiffForm> {
    if a.degree == 0 {
        return Err(Error::InteriorOfFunction);
    }
    if !same_vars(&x.vars, &a.vars) {
        return Err(Error::VarSetMismatch);
    }
    let mut out = DiffForm::zero_with_cap(&a.vars, a.degree - 1, a.cap);
    for (idx, p) in &a.terms {
        for (pos, &v) in idx.iter().enumerate() {
            let xv = &x.components[v];
            if xv.is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(pos);
            let c = xv * p;
            out.add_term(rest, if pos % 2 == 1 { -&c } else { c });
        }
    }
    Ok(out)
}

/// Lie derivative of a closed form, `d(X ⌟ a)`.
pub fn lie_derivative_closed(x: &VectorFieldGerm, a: &DiffForm) -> Result<DiffForm> {
    if !a.is_closed() {
        return Err(Error::NotClosed);
    }
    if a.is_zero() {
        return Ok(DiffForm::zero_with_cap(&a.vars, a.degree, a.cap));
    }
    Ok(exterior_derivative(&interior_product(x, a)?))
}

/// Pullback along `x_i = coords[i](t)`: the composed function for 0-forms,
/// the coefficient of `dt` for 1-forms, and zero in higher degree.
pub fn pullback(a: &DiffForm, coords: &[UniPoly]) -> Result<UniPoly> {
    if coords.len() != a.vars.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for {} variables",
            coords.len(),
            a.vars.len()
        )));
    }
    match a.degree {
        0 => a.coefficient(&[]).compose(coords),
        1 => {
            let mut out = UniPoly::zero();
            for (idx, p) in &a.terms {
                let dx = coords[idx[0]].derivative();
                if dx.is_zero() {
                    continue;
                }
                out = out.add(&p.compose(coords)?.mul(&dx));
            }
            Ok(out)
        }
        _ => Ok(UniPoly::zero()),
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in &self.terms {
            let dx: Vec<String> = idx
                .iter()
                .map(|&i| format!("d{}", self.vars.names()[i]))
                .collect();
            let dx = dx.join("^");
            for (m, c) in p.sorted_terms() {
                let mono = Polynomial::term(&self.vars, m.clone(), Scalar::one()).to_string();
                let body = match (mono.as_str(), dx.is_empty()) {
                    ("1", true) => String::new(),
                    ("1", false) => dx.clone(),
                    (s, true) => s.to_string(),
                    (s, false) => format!("{s}*{dx}"),
                };
                write!(f, "{}", fmt_coeff_term(c, &body, first))?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn vs() -> Arc<VarSet> {
        VarSet::standard(&[3, 2, 2])
    }

    fn x(v: &Arc<VarSet>, i: usize) -> Polynomial {
        Polynomial::var(v, i)
    }

    fn two(_v: &Arc<VarSet>, c: Polynomial, a: usize, b: usize) -> DiffForm {
        DiffForm::term(c, &[a, b]).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let v = vs();
        let dx2 = DiffForm::dx(&v, 1);
        assert!(wedge(&dx2, &dx2).unwrap().is_zero());
        let dh2 = exterior_derivative(&DiffForm::function(&x(&v, 1) * &x(&v, 2)));
        let w = wedge(&dh2, &dx2).unwrap();
        assert_eq!(w, two(&v, -&x(&v, 1), 1, 2));
        let dx1 = DiffForm::dx(&v, 0);
        assert_eq!(wedge(&dx1, &dx2).unwrap(), -&wedge(&dx2, &dx1).unwrap());
    }

    #[test]
    fn wedge_overflow() {
        let v = VarSet::standard(&[1, 1, 1, 1]);
        let a = wedge(&DiffForm::dx(&v, 0), &DiffForm::dx(&v, 1)).unwrap();
        let b = wedge(&DiffForm::dx(&v, 2), &DiffForm::dx(&v, 3)).unwrap();
        assert_eq!(wedge(&a, &b), Err(Error::DegreeOverflow(4, 3)));
    }

    #[test]
    fn derivative_examples() {
        let v = vs();
        let h1 = &(&x(&v, 0).pow(2) + &x(&v, 1).pow(3)) + &x(&v, 2).pow(3);
        let dh1 = exterior_derivative(&DiffForm::function(h1));
        assert_eq!(dh1.to_string(), "2*x1*dx1 + 3*x2^2*dx2 + 3*x3^2*dx3");
        assert!(exterior_derivative(&DiffForm::dx(&v, 0)).is_zero());
    }

    #[test]
    fn interior_examples() {
        let v = vs();
        let e = VectorFieldGerm::new(
            &v,
            vec![x(&v, 0).scale(&int(3)), x(&v, 1).scale(&int(2)), x(&v, 2).scale(&int(2))],
        )
        .unwrap();
        let th1 = two(&v, Polynomial::one(&v), 1, 2);
        let got = interior_product(&e, &th1).unwrap();
        let want = &DiffForm::term(x(&v, 1).scale(&int(2)), &[2]).unwrap()
            - &DiffForm::term(x(&v, 2).scale(&int(2)), &[1]).unwrap();
        assert_eq!(got, want);
        let d1 = VectorFieldGerm::partial(&v, 0);
        assert_eq!(
            interior_product(&d1, &DiffForm::dx(&v, 0)).unwrap(),
            DiffForm::function(Polynomial::one(&v))
        );
        let d2 = VectorFieldGerm::partial(&v, 1);
        assert!(interior_product(&d2, &two(&v, Polynomial::one(&v), 0, 2)).unwrap().is_zero());
        assert_eq!(
            interior_product(&d1, &DiffForm::function(x(&v, 0))),
            Err(Error::InteriorOfFunction)
        );
    }

    #[test]
    fn lie_derivative_euler_eigenvalue() {
        let v = vs();
        let e = VectorFieldGerm::new(
            &v,
            vec![x(&v, 0).scale(&int(3)), x(&v, 1).scale(&int(2)), x(&v, 2).scale(&int(2))],
        )
        .unwrap();
        let th1 = two(&v, Polynomial::one(&v), 1, 2);
        assert_eq!(lie_derivative_closed(&e, &th1).unwrap(), th1.scale(&int(4)));
        let not_closed = two(&v, x(&v, 0), 1, 2);
        assert_eq!(lie_derivative_closed(&e, &not_closed), Err(Error::NotClosed));
    }

    #[test]
    fn pullback_examples() {
        let v = VarSet::standard(&[2, 3]);
        let a = DiffForm::term(x(&v, 1), &[0]).unwrap();
        let f = vec![UniPoly::monomial(int(1), 2), UniPoly::monomial(int(1), 3)];
        assert_eq!(pullback(&a, &f).unwrap(), UniPoly::monomial(int(2), 4));
        let v3 = vs();
        let b1 = vec![UniPoly::monomial(int(1), 3), UniPoly::zero(), UniPoly::monomial(int(-1), 2)];
        assert!(pullback(&DiffForm::dx(&v3, 1), &b1).unwrap().is_zero());
        assert!(pullback(&two(&v3, Polynomial::one(&v3), 0, 2), &b1).unwrap().is_zero());
    }

    #[test]
    fn quasi_degree_of_forms() {
        let v = vs();
        let th7 = two(&v, x(&v, 2).pow(2), 0, 2);
        assert_eq!(th7.quasi_degree(), QuasiDegree::Exact(9));
        assert_eq!(two(&v, Polynomial::one(&v), 1, 2).quasi_degree(), QuasiDegree::Exact(4));
    }
}
