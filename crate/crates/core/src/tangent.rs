//! Vector fields tangent to a curve germ and their action on restriction classes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::{exterior_derivative, interior_product, VectorFieldGerm};
use crate::germ::{substitute_branch, MultiGerm};
use crate::linalg::{int, row_reduce, Matrix, Scalar};
use crate::poly::{monomials_of_quasi_degree, Monomial, Polynomial, VarSet};
use crate::restriction::{GradedBasis, RestrictionClass};

/// Generators of the module of fields tangent to a quasi-homogeneous germ.
#[derive(Clone, Debug)]
pub struct TangentGeneratorSet {
    pub euler: VectorFieldGerm,
    /// `m·E` for every monomial `m ≠ 1` with quasi-degree at most `degree_bound`.
    pub monomial_multiples: Vec<(Monomial, VectorFieldGerm)>,
    /// One field per index set, with the generator subset it was built from.
    pub hamiltonian: Vec<(Vec<usize>, VectorFieldGerm)>,
    pub degree_bound: i64,
}

impl TangentGeneratorSet {
    /// All generators, Euler field first.
    pub fn all(&self) -> Vec<VectorFieldGerm> {
        let mut out = vec![self.euler.clone()];
        out.extend(self.monomial_multiples.iter().map(|(_, x)| x.clone()));
        out.extend(self.hamiltonian.iter().map(|(_, x)| x.clone()));
        out
    }
}

/// `Σ wᵢ xᵢ ∂ᵢ`.
pub fn euler_field(vars: &Arc<VarSet>) -> VectorFieldGerm {
    let comps = (0..vars.len())
        .map(|i| Polynomial::var(vars, i).scale(&int(vars.weight(i))))
        .collect();
    VectorFieldGerm::new(vars, comps).expect("matching variables")
}

/// The field obtained by expanding the determinant with rows `(∂_{i0}, …, ∂_{ip})`
/// and the gradients of `hs` restricted to the columns `idx`, along the first row.
pub fn hamiltonian_field(vars: &Arc<VarSet>, hs: &[Polynomial], idx: &[usize]) -> Result<VectorFieldGerm> {
    if idx.len() != hs.len() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} indices for {} functions",
            idx.len(),
            hs.len()
        )));
    }
    for w in idx.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Other("indices must be strictly increasing".into()));
        }
    }
    if let Some(&i) = idx.iter().find(|&&i| i >= vars.len()) {
        return Err(Error::IndexOutOfRange(i, vars.len()));
    }
    let grads: Vec<Vec<Polynomial>> = hs
        .iter()
        .map(|h| idx.iter().map(|&i| h.derivative(i)).collect())
        .collect();
    let mut comps = vec![Polynomial::zero(vars); vars.len()];
    for (col, &var) in idx.iter().enumerate() {
        let minor_cols: Vec<usize> = (0..idx.len()).filter(|&c| c != col).collect();
        let minor = determinant(vars, &grads, &minor_cols);
        comps[var] = if col % 2 == 0 { minor } else { -&minor };
    }
    VectorFieldGerm::new(vars, comps)
}

/// Determinant of the square polynomial matrix `rows[r][cols[c]]`, by Laplace expansion.
fn determinant(vars: &Arc<VarSet>, rows: &[Vec<Polynomial>], cols: &[usize]) -> Polynomial {
    if rows.is_empty() {
        return Polynomial::one(vars);
    }
    let mut acc = Polynomial::zero(vars);
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &rows[0][c] * &determinant(vars, &rows[1..], &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Whether `X(H)` vanishes on every branch for every ideal generator `H`.
pub fn is_tangent(g: &MultiGerm, x: &VectorFieldGerm) -> Result<bool> {
    for h in g.generators() {
        let xh = x.apply(h);
        for b in &g.branches {
            if !substitute_branch(&xh, b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Euler field, its monomial multiples up to `degree_bound`, and the Hamiltonian
/// fields of every `(n-1)`-subset of the ideal generators that are tangent to the germ.
pub fn tangent_generators(g: &MultiGerm, degree_bound: i64) -> Result<TangentGeneratorSet> {
    let vars = &g.vars;
    let euler = euler_field(vars);
    let mut monomial_multiples = Vec::new();
    for d in 1..=degree_bound {
        for m in monomials_of_quasi_degree(vars, d) {
            let x = euler.mul_poly(&Polynomial::term(vars, m.clone(), int(1)));
            monomial_multiples.push((m, x));
        }
    }
    let n = vars.len();
    let gens = g.generators();
    let mut hamiltonian = Vec::new();
    if n >= 2 && gens.len() + 1 >= n {
        let idx: Vec<usize> = (0..n).collect();
        for subset in subsets(gens.len(), n - 1) {
            let hs: Vec<Polynomial> = subset.iter().map(|&i| gens[i].clone()).collect();
            let x = hamiltonian_field(vars, &hs, &idx)?;
            if !x.is_zero() && is_tangent(g, &x)? {
                hamiltonian.push((subset, x));
            }
        }
    }
    Ok(TangentGeneratorSet {
        euler,
        monomial_multiples,
        hamiltonian,
        degree_bound,
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// The class of `d(X ⌟ rep)` for a closed representative `rep` of `a`.
pub fn lie_action(basis: &GradedBasis, x: &VectorFieldGerm, a: &RestrictionClass) -> Result<RestrictionClass> {
    if !is_tangent(&basis.germ, x)? {
        return Err(Error::NotTangent);
    }
    lie_action_unchecked(basis, x, a)
}

fn lie_action_unchecked(basis: &GradedBasis, x: &VectorFieldGerm, a: &RestrictionClass) -> Result<RestrictionClass> {
    let rep = basis.form_of(a);
    let image = exterior_derivative(&interior_product(x, &rep)?);
    basis.restrict(&image)
}

/// `table[r][c]` is the action of generator `r` on basis class `c`.
pub fn action_table(basis: &GradedBasis, generators: &[VectorFieldGerm]) -> Result<Vec<Vec<RestrictionClass>>> {
    let dim = basis.dim();
    let mut table = Vec::with_capacity(generators.len());
    for x in generators {
        if !is_tangent(&basis.germ, x)? {
            return Err(Error::NotTangent);
        }
        let row = (0..dim)
            .map(|c| lie_action_unchecked(basis, x, &RestrictionClass::basis_vector(dim, c)))
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    Ok(table)
}

/// An echelonized spanning set of the tangent space to the orbit of `a`.
pub fn orbit_tangent_space(basis: &GradedBasis, a: &RestrictionClass, degree_bound: i64) -> Result<Vec<Vec<Scalar>>> {
    let gens = tangent_generators(&basis.germ, degree_bound)?;
    let mut rows = Vec::new();
    for x in gens.all() {
        let v = lie_action_unchecked(basis, &x, a)?;
        if !v.is_zero() {
            rows.push(v.coords);
        }
    }
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let e = row_reduce(&Matrix::from_rows(rows)?);
    Ok(e.matrix.row_vecs().into_iter().take(e.rank()).collect())
}

/// Codimension of the orbit of `a` in the space of closed restrictions.
pub fn orbit_codimension(basis: &GradedBasis, a: &RestrictionClass) -> Result<usize> {
    let span = orbit_tangent_space(basis, a, basis.stabilization_degree())?;
    Ok(basis.dim() - span.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::restriction::{restriction_basis_with, Flavor};
    use crate::scenario::shipped;

    fn closed_basis(name: &str) -> GradedBasis {
        let sc = shipped(name).unwrap();
        restriction_basis_with(&sc.germ, Flavor::Closed, None, sc.basis.as_ref()).unwrap()
    }

    fn class(entries: &[(usize, i64)]) -> Vec<Scalar> {
        let mut v = vec![int(0); 7];
        for &(i, c) in entries {
            v[i - 1] = int(c);
        }
        v
    }

    #[test]
    fn euler_field_uses_weights() {
        let vars = VarSet::new(vec!["x1".to_string(), "x2".to_string(), "x3".to_string()], vec![3, 2, 2]).unwrap();
        let e = euler_field(&vars);
        for (i, w) in [3, 2, 2].into_iter().enumerate() {
            assert_eq!(e.components()[i], Polynomial::var(&vars, i).scale(&int(w)));
        }
    }

    #[test]
    fn two_variable_hamiltonian() {
        let vars = VarSet::standard(&[3, 2]);
        let h = parse_polynomial(&vars, "x1^2 - x2^3").unwrap();
        let x = hamiltonian_field(&vars, &[h], &[0, 1]).unwrap();
        assert_eq!(x.components()[0], parse_polynomial(&vars, "-3*x2^2").unwrap());
        assert_eq!(x.components()[1], parse_polynomial(&vars, "-2*x1").unwrap());
    }

    #[test]
    fn t7_action_table() {
        let b = closed_basis("t7");
        let v = b.germ.vars.clone();
        let e = euler_field(&v);
        let m = |s: &str| e.mul_poly(&parse_polynomial(&v, s).unwrap());
        let gens = vec![e.clone(), m("x3"), m("x2"), m("x1"), m("x2^2"), m("x3^2")];
        let t = action_table(&b, &gens).unwrap();
        let mut expected = vec![vec![class(&[]); 7]; 6];
        for (j, d) in [4, 5, 5, 7, 7, 7, 9].into_iter().enumerate() {
            expected[0][j] = class(&[(j + 1, d)]);
        }
        expected[1][1] = class(&[(4, 7)]);
        expected[1][2] = class(&[(6, 3)]);
        expected[1][3] = class(&[(7, 9)]);
        expected[2][1] = class(&[(6, -3)]);
        expected[2][2] = class(&[(5, 7)]);
        expected[2][4] = class(&[(7, -9)]);
        expected[3][0] = class(&[(6, -4)]);
        expected[4][2] = class(&[(7, -9)]);
        expected[5][1] = class(&[(7, 9)]);
        for r in 0..6 {
            for c in 0..7 {
                assert_eq!(t[r][c].coords, expected[r][c], "row {r} col {c}");
            }
        }
    }

    #[test]
    fn hamiltonian_fields_act_trivially() {
        for name in ["t7", "t8", "a2", "d4"] {
            let b = closed_basis(name);
            let gens = tangent_generators(&b.germ, 0).unwrap();
            assert!(!gens.hamiltonian.is_empty(), "{name}");
            let xs: Vec<_> = gens.hamiltonian.iter().map(|(_, x)| x.clone()).collect();
            for row in action_table(&b, &xs).unwrap() {
                assert!(row.iter().all(|a| a.is_zero()), "{name}");
            }
        }
    }

    #[test]
    fn generators_are_tangent() {
        for (name, _) in crate::scenario::SHIPPED {
            let b = closed_basis(name);
            let gens = tangent_generators(&b.germ, 4).unwrap();
            for x in gens.all() {
                assert!(is_tangent(&b.germ, &x).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn non_tangent_field_is_rejected() {
        let b = closed_basis("t7");
        let x = VectorFieldGerm::partial(&b.germ.vars, 0);
        let a = RestrictionClass::basis_vector(7, 0);
        assert!(matches!(lie_action(&b, &x, &a), Err(Error::NotTangent)));
    }

    #[test]
    fn t7_orbit_tangent_spaces() {
        let b = closed_basis("t7");
        let s = b.stabilization_degree();
        let a = RestrictionClass { coords: class(&[(1, 2), (2, 1), (3, 3)]) };
        assert_eq!(orbit_tangent_space(&b, &a, s).unwrap().len(), 5);
        assert!(orbit_tangent_space(&b, &RestrictionClass::zero(7), s).unwrap().is_empty());
        let span = orbit_tangent_space(&b, &RestrictionClass::basis_vector(7, 6), s).unwrap();
        assert_eq!(span.len(), 1);
        assert_eq!(span[0].iter().filter(|c| *c != &int(0)).count(), 1);
    }
}
