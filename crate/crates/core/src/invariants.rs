//! Index of isotropy, Lagrangian tangency orders and symplectic multiplicity,
//! all decided by linear feasibility over primitives `α` with `[dα] = [ω]`.
//!
//! A primitive is searched one quasi-degree at a time. For quasi-homogeneous
//! branches `x_i ∘ f = c_i t^{s w_i}`, the coefficient `a_i ∘ f` of a degree-`d`
//! 1-form has order exactly `s(d - w_i)` or vanishes, so the order conditions
//! of different degrees never interact and each degree is an independent block.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{exterior_derivative, DiffForm};
use crate::germ::{tangent_frame, unit, MultiGerm};
use crate::linalg::{is_consistent, Matrix, Scalar};
use crate::poly::{monomials_of_quasi_degree, Monomial, Order, Polynomial};
use crate::restriction::{restriction_basis, Flavor, GradedBasis, RestrictionClass};
use crate::tangent::orbit_codimension;

/// One linear order condition: `row · x = 0` is required once the target order exceeds `level`.
struct LevelRow {
    level: i64,
    branch: Option<usize>,
    row: Vec<Scalar>,
}

/// The primitive search space in a set of quasi-degrees.
struct Block {
    unknowns: Vec<DiffForm>,
    class_rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
}

impl Block {
    fn feasible(&self, extra: &[&LevelRow]) -> Result<bool> {
        let n = self.unknowns.len();
        let mut rows = self.class_rows.clone();
        let mut rhs = self.rhs.clone();
        for r in extra {
            rows.push(r.row.clone());
            rhs.push(Scalar::zero());
        }
        if rows.is_empty() {
            return Ok(true);
        }
        is_consistent(&Matrix::from_rows_with_cols(rows, n)?, &rhs)
    }

    /// Order conditions on `a_i ∘ f` for the given branches, keyed by `(branch, i, power)`.
    fn branch_rows(&self, g: &MultiGerm, branches: &[usize]) -> Result<Vec<LevelRow>> {
        let n = self.unknowns.len();
        let mut rows: BTreeMap<(usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
        for (k, u) in self.unknowns.iter().enumerate() {
            for (idx, p) in u.terms() {
                for &b in branches {
                    let comp = p.compose(&g.branches[b].coords)?;
                    for (e, c) in comp.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            let row = rows.entry((b, idx[0], e)).or_insert_with(|| vec![Scalar::zero(); n]);
                            row[k] += c;
                        }
                    }
                }
            }
        }
        Ok(rows
            .into_iter()
            .map(|((b, _, e), row)| LevelRow {
                level: e as i64,
                branch: Some(b),
                row,
            })
            .collect())
    }

    /// Conditions on the monomial coefficients of `dα`, leveled by total degree.
    fn jet_rows(&self) -> Vec<LevelRow> {
        let n = self.unknowns.len();
        let mut rows: BTreeMap<(Monomial, Vec<usize>), Vec<Scalar>> = BTreeMap::new();
        for (k, u) in self.unknowns.iter().enumerate() {
            for (idx, p) in exterior_derivative(u).terms() {
                for (m, c) in p.terms() {
                    let row = rows
                        .entry((m.clone(), idx.clone()))
                        .or_insert_with(|| vec![Scalar::zero(); n]);
                    row[k] += c;
                }
            }
        }
        rows.into_iter()
            .map(|((m, _), row)| LevelRow {
                level: m.total_degree() as i64,
                branch: None,
                row,
            })
            .collect()
    }
}

/// Monomial 1-forms `m dx_i` of quasi-degree `d`.
fn one_forms(g: &MultiGerm, d: i64) -> Vec<DiffForm> {
    let vars = &g.vars;
    let mut out = Vec::new();
    for i in 0..vars.len() {
        for m in monomials_of_quasi_degree(vars, d - vars.weight(i)) {
            let p = Polynomial::term(vars, m, Scalar::from_integer(1.into()));
            out.push(DiffForm::term(p, &[i]).expect("index in range"));
        }
    }
    out
}

/// Blocks for the degrees where `omega` has a nonzero class. With `split`,
/// one block per degree; otherwise a single block over all of them.
fn blocks(basis: &GradedBasis, omega: &DiffForm, split: bool) -> Result<Vec<Block>> {
    let all = basis.all_coords(omega)?;
    let offsets = basis.all_offsets();
    let pieces = basis.pieces();
    let active: Vec<usize> = (0..pieces.len())
        .filter(|&k| all[offsets[k]..offsets[k] + pieces[k].all_dim()].iter().any(|x| !x.is_zero()))
        .collect();
    let groups: Vec<Vec<usize>> = if split {
        active.iter().map(|&k| vec![k]).collect()
    } else if active.is_empty() {
        Vec::new()
    } else {
        vec![active]
    };
    let mut out = Vec::new();
    for group in groups {
        let mut unknowns = Vec::new();
        let mut spans = Vec::new();
        for &k in &group {
            let start = unknowns.len();
            unknowns.extend(one_forms(&basis.germ, pieces[k].degree));
            spans.push((k, start, unknowns.len()));
        }
        let n = unknowns.len();
        let mut class_rows = Vec::new();
        let mut rhs = Vec::new();
        for &(k, start, end) in &spans {
            let piece = &pieces[k];
            let images: Vec<Vec<Scalar>> = unknowns[start..end]
                .iter()
                .map(|u| piece.reduce(&exterior_derivative(u)))
                .collect();
            for r in 0..piece.all_dim() {
                let mut row = vec![Scalar::zero(); n];
                for (j, img) in images.iter().enumerate() {
                    row[start + j] = img[r].clone();
                }
                class_rows.push(row);
                rhs.push(all[offsets[k] + r].clone());
            }
        }
        out.push(Block {
            unknowns,
            class_rows,
            rhs,
        });
    }
    Ok(out)
}

/// Smallest level whose conditions (together with all lower ones and `base`)
/// make the block infeasible; `NegInfinity` if `base` alone already does.
fn breaking_level(block: &Block, base: &[LevelRow], graded: Vec<LevelRow>) -> Result<Order> {
    let mut imposed: Vec<&LevelRow> = base.iter().collect();
    if !block.feasible(&imposed)? {
        return Ok(Order::NegInfinity);
    }
    let mut by_level: BTreeMap<i64, Vec<LevelRow>> = BTreeMap::new();
    for r in graded {
        by_level.entry(r.level).or_default().push(r);
    }
    let by_level: Vec<(i64, Vec<LevelRow>)> = by_level.into_iter().collect();
    for (level, rows) in &by_level {
        imposed.extend(rows.iter());
        if !block.feasible(&imposed)? {
            return Ok(Order::Finite(*level));
        }
    }
    Ok(Order::Infinity)
}

fn check_cap(v: Order, cap: Option<i64>) -> Result<Order> {
    match (v, cap) {
        (Order::Finite(k), Some(c)) if k > c => Err(Error::CapExceeded(c)),
        _ => Ok(v),
    }
}

/// Default search cap: three times the stabilization degree.
pub fn default_cap(basis: &GradedBasis) -> i64 {
    3 * basis.stabilization_degree().max(1)
}

/// Largest `k` such that some closed form with the class of `omega` vanishes to order `k` at 0.
pub fn index_of_isotropy_form(basis: &GradedBasis, omega: &DiffForm, cap: Option<i64>) -> Result<Order> {
    let mut best = Order::Infinity;
    for block in blocks(basis, omega, true)? {
        let rows = block.jet_rows();
        best = best.min(breaking_level(&block, &[], rows)?);
    }
    check_cap(best, cap)
}

pub fn index_of_isotropy(basis: &GradedBasis, a: &RestrictionClass, cap: Option<i64>) -> Result<Order> {
    index_of_isotropy_form(basis, &basis.form_of(a), cap)
}

/// Relative tangency order: branches in `fixed` must have order at least the
/// given value, and the minimum order over the other branches of `set` is maximized.
pub fn relative_lt_form(
    basis: &GradedBasis,
    omega: &DiffForm,
    set: &[usize],
    fixed: &[(usize, Order)],
    cap: Option<i64>,
) -> Result<Order> {
    let g = &basis.germ;
    let free: Vec<usize> = set
        .iter()
        .copied()
        .filter(|b| !fixed.iter().any(|(f, _)| f == b))
        .collect();
    let fixed_branches: Vec<usize> = fixed.iter().map(|(b, _)| *b).collect();
    let mut best = Order::Infinity;
    for block in blocks(basis, omega, g.is_quasi_homogeneous())? {
        let base: Vec<LevelRow> = block
            .branch_rows(g, &fixed_branches)?
            .into_iter()
            .filter(|r| {
                let need = fixed.iter().find(|(b, _)| Some(*b) == r.branch).map(|(_, t)| *t);
                need.is_some_and(|t| Order::Finite(r.level) < t)
            })
            .collect();
        let graded = block.branch_rows(g, &free)?;
        let v = breaking_level(&block, &base, graded)?;
        if v == Order::NegInfinity {
            return Ok(Order::NegInfinity);
        }
        best = best.min(v);
    }
    check_cap(best, cap)
}

/// Tangency order of the sub-multi-germ `set` with one primitive for the whole germ.
pub fn lagrangian_tangency_multi_form(
    basis: &GradedBasis,
    omega: &DiffForm,
    set: &[usize],
    cap: Option<i64>,
) -> Result<Order> {
    relative_lt_form(basis, omega, set, &[], cap)
}

pub fn lagrangian_tangency_multi(
    basis: &GradedBasis,
    set: &[usize],
    a: &RestrictionClass,
    cap: Option<i64>,
) -> Result<Order> {
    lagrangian_tangency_multi_form(basis, &basis.form_of(a), set, cap)
}

/// Tangency order of one branch, the class being taken over that branch's own basis.
pub fn lagrangian_tangency_single(
    basis: &GradedBasis,
    branch: usize,
    a: &RestrictionClass,
    cap: Option<i64>,
) -> Result<Order> {
    lagrangian_tangency_multi(basis, &[branch], a, cap)
}

/// Lagrangian tangency order of the whole germ.
pub fn lagrangian_tangency_form(basis: &GradedBasis, omega: &DiffForm, cap: Option<i64>) -> Result<Order> {
    let all: Vec<usize> = (0..basis.germ.branches.len()).collect();
    lagrangian_tangency_multi_form(basis, omega, &all, cap)
}

pub fn relative_lt(
    basis: &GradedBasis,
    set: &[usize],
    fixed: &[(usize, Order)],
    a: &RestrictionClass,
    cap: Option<i64>,
) -> Result<Order> {
    relative_lt_form(basis, &basis.form_of(a), set, fixed, cap)
}

/// Codimension of the orbit of `a` among closed restrictions.
pub fn symplectic_multiplicity(basis: &GradedBasis, a: &RestrictionClass) -> Result<usize> {
    orbit_codimension(basis, a)
}

/// Invariants of one component, computed over its own ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInvariants {
    pub name: String,
    pub lt: Order,
    pub ind: Order,
}

pub fn component_invariants(g: &MultiGerm, name: &str, omega: &DiffForm, cap: Option<i64>) -> Result<ComponentInvariants> {
    let sub = g.sub_germ(name)?;
    let basis = restriction_basis(&sub, Flavor::All, None)?;
    Ok(ComponentInvariants {
        name: name.to_string(),
        lt: lagrangian_tangency_form(&basis, omega, cap)?,
        ind: index_of_isotropy_form(&basis, omega, cap)?,
    })
}

/// Values of `ω(0)` and of Lie derivatives on the tangent frame of a two-component germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricReport {
    /// `ω(0)(v_i, v_j)` for the pairs (1,2), (1,3), (2,3).
    pub pairs: [Scalar; 3],
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub cond_iv: bool,
    /// Whether each component lies in a smooth Lagrangian submanifold.
    pub lagrangian_components: Vec<(String, bool)>,
    pub lagrangian_whole: bool,
}

impl GeometricReport {
    pub fn isotropic(&self, i: usize, j: usize) -> bool {
        let k = match (i.min(j), i.max(j)) {
            (1, 2) => 0,
            (1, 3) => 1,
            (2, 3) => 2,
            _ => panic!("pair ({i},{j}) out of range"),
        };
        self.pairs[k].is_zero()
    }
}

/// `σ(u, w)` for the constant 2-form with coefficients `c[(i, j)]`, `i < j`.
fn eval2(c: &BTreeMap<(usize, usize), Scalar>, u: &[Scalar], w: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (&(i, j), v) in c {
        acc += v * &(&u[i] * &w[j] - &u[j] * &w[i]);
    }
    acc
}

fn coefficients_at_zero(omega: &DiffForm) -> BTreeMap<(usize, usize), Scalar> {
    omega
        .terms()
        .map(|(idx, p)| ((idx[0], idx[1]), p.constant_term()))
        .collect()
}

/// Coefficients at 0 of the Lie derivative of `omega` along the constant field `v`.
fn lie_at_zero(omega: &DiffForm, v: &[Scalar]) -> BTreeMap<(usize, usize), Scalar> {
    let n = omega.vars().len();
    omega
        .terms()
        .map(|(idx, p)| {
            let mut acc = Scalar::zero();
            for (k, vk) in v.iter().enumerate().take(n) {
                if !vk.is_zero() {
                    acc += vk * &p.derivative(k).constant_term();
                }
            }
            ((idx[0], idx[1]), acc)
        })
        .collect()
}

/// Conditions I–IV on `σ = ω|_W` and the Lagrangian containment flags.
pub fn geometric_report(g: &MultiGerm, omega: &DiffForm) -> Result<GeometricReport> {
    let frame = tangent_frame(g)?;
    let v = [frame.l1.clone(), frame.l2.clone(), frame.l3.clone()];
    let at0 = coefficients_at_zero(omega);
    let pairs = [
        eval2(&at0, &v[0], &v[1]),
        eval2(&at0, &v[0], &v[2]),
        eval2(&at0, &v[1], &v[2]),
    ];
    let n = g.vars.len();
    let cond_i = (0..n).all(|i| (0..n).all(|j| eval2(&at0, &unit(n, i), &unit(n, j)).is_zero()));
    let lie: Vec<_> = v.iter().map(|vi| lie_at_zero(omega, vi)).collect();
    let cond_ii = eval2(&lie[2], &v[0], &v[1]).is_zero();
    let cond_iii = (0..2).all(|i| eval2(&lie[i], &v[2], &v[i]).is_zero());
    let cond_iv = eval2(&lie[0], &v[2], &v[1]) == eval2(&lie[1], &v[2], &v[0]);
    let mut lagrangian_components = Vec::new();
    for c in &g.components {
        let sub = g.sub_germ(&c.name)?;
        let basis = restriction_basis(&sub, Flavor::All, None)?;
        lagrangian_components.push((c.name.clone(), basis.is_zero_restriction(omega)?));
    }
    let whole = restriction_basis(g, Flavor::All, None)?;
    Ok(GeometricReport {
        pairs,
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        lagrangian_components,
        lagrangian_whole: whole.is_zero_restriction(omega)?,
    })
}

/// Everything computed for one form on one germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub lt: Order,
    pub ind: Order,
    pub components: Vec<ComponentInvariants>,
    /// `(label, value)` for each requested relative order.
    pub relative: Vec<(String, Order)>,
    pub mu: Option<usize>,
    pub geometric: Option<GeometricReport>,
}

impl InvariantReport {
    pub fn component(&self, name: &str) -> Option<&ComponentInvariants> {
        self.components.iter().find(|c| c.name == name)
    }

    /// `(max, min)` of the component tangency orders.
    pub fn lt_near_far(&self) -> Option<(Order, Order)> {
        let lts = self.components.iter().map(|c| c.lt);
        Some((lts.clone().max()?, lts.min()?))
    }

    /// `(max, min)` of the component indices of isotropy.
    pub fn ind_near_far(&self) -> Option<(Order, Order)> {
        let inds = self.components.iter().map(|c| c.ind);
        Some((inds.clone().max()?, inds.min()?))
    }
}

/// A relative order request: branches of the named component must reach `order`,
/// or the component's own tangency order when `order` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeSpec {
    pub component: String,
    pub order: Option<Order>,
}

impl RelativeSpec {
    /// Parses `NAME` or `NAME=ORDER`.
    pub fn parse(s: &str) -> Result<RelativeSpec> {
        let (name, order) = match s.split_once('=') {
            Some((n, o)) => {
                let o = Order::parse(o.trim()).ok_or_else(|| Error::Other(format!("bad order `{o}`")))?;
                (n.trim(), Some(o))
            }
            None => (s.trim(), None),
        };
        Ok(RelativeSpec {
            component: name.to_string(),
            order,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub cap: Option<i64>,
    pub relative: Vec<RelativeSpec>,
    pub multiplicity: bool,
    pub geometric: bool,
}

/// Full report for a closed 2-form `omega` over the essential variables of `basis.germ`.
pub fn invariant_report(basis: &GradedBasis, omega: &DiffForm, opts: &ReportOptions) -> Result<InvariantReport> {
    let g = &basis.germ;
    let cap = opts.cap;
    let lt = lagrangian_tangency_form(basis, omega, cap)?;
    let ind = index_of_isotropy_form(basis, omega, cap)?;
    let mut components = Vec::new();
    for c in &g.components {
        components.push(component_invariants(g, &c.name, omega, cap)?);
    }
    let all: Vec<usize> = (0..g.branches.len()).collect();
    let mut relative = Vec::new();
    for spec in &opts.relative {
        let comp = g.component(&spec.component)?;
        let t = match spec.order {
            Some(t) => t,
            None => component_invariants(g, &spec.component, omega, cap)?.lt,
        };
        let fixed: Vec<(usize, Order)> = comp.branches.iter().map(|&b| (b, t)).collect();
        let v = relative_lt_form(basis, omega, &all, &fixed, cap)?;
        relative.push((format!("{}={}", spec.component, t), v));
    }
    let mu = if opts.multiplicity && basis.flavor == Flavor::Closed {
        Some(symplectic_multiplicity(basis, &basis.restrict(omega)?)?)
    } else {
        None
    };
    let geometric = if opts.geometric {
        Some(geometric_report(g, omega)?)
    } else {
        None
    };
    Ok(InvariantReport {
        lt,
        ind,
        components,
        relative,
        mu,
        geometric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::parse::parse_form;
    use crate::scenario::{parse_form_arg, shipped};
    use crate::restriction::restriction_basis_with;

    fn t7_closed() -> GradedBasis {
        let sc = shipped("t7").unwrap();
        restriction_basis_with(&sc.germ, Flavor::Closed, None, sc.basis.as_ref()).unwrap()
    }

    fn class(c: &[i64]) -> RestrictionClass {
        RestrictionClass { coords: c.iter().map(|&x| int(x)).collect() }
    }

    #[test]
    fn t7_index_of_isotropy() {
        let b = t7_closed();
        assert_eq!(index_of_isotropy(&b, &class(&[0, 0, 0, 0, 0, 0, 1]), None).unwrap(), Order::Finite(2));
        assert_eq!(index_of_isotropy(&b, &class(&[1, 0, 0, 0, 0, 0, 3]), None).unwrap(), Order::Finite(0));
        assert_eq!(index_of_isotropy(&b, &class(&[0; 7]), None).unwrap(), Order::Infinity);
    }

    #[test]
    fn t7_multi_germ_tangency() {
        let b = t7_closed();
        let both = [0, 1];
        let lt = |c: &[i64]| lagrangian_tangency_multi(&b, &both, &class(c), None).unwrap();
        assert_eq!(lt(&[1, 2, 3, 0, 0, 0, 0]), Order::Finite(2));
        assert_eq!(lt(&[0, 1, 0, 0, 2, 0, 0]), Order::Finite(3));
        assert_eq!(lt(&[2, 1, 0, 0, 2, 0, 0]), Order::Finite(2));
        assert_eq!(lt(&[0; 7]), Order::Infinity);
    }

    #[test]
    fn t7_single_branch_tangency() {
        let sc = shipped("t7").unwrap();
        let sub = sc.germ.sub_germ("B1").unwrap();
        let b1 = restriction_basis(&sub, Flavor::Closed, None).unwrap();
        let theta2 = b1.restrict(&parse_form(&sub.vars, "dx1^dx3").unwrap()).unwrap();
        assert_eq!(lagrangian_tangency_single(&b1, 0, &theta2, None).unwrap(), Order::Finite(3));
        let sub = sc.germ.sub_germ("B2").unwrap();
        let b2 = restriction_basis(&sub, Flavor::Closed, None).unwrap();
        let theta5 = b2.restrict(&parse_form(&sub.vars, "2*x2*dx1^dx2").unwrap()).unwrap();
        assert_eq!(lagrangian_tangency_single(&b2, 0, &theta5, None).unwrap(), Order::Finite(5));
        let zero = RestrictionClass::zero(b2.dim());
        assert_eq!(lagrangian_tangency_single(&b2, 0, &zero, None).unwrap(), Order::Infinity);
    }

    #[test]
    fn t7_multiplicity() {
        let b = t7_closed();
        assert_eq!(symplectic_multiplicity(&b, &class(&[1, 2, 3, 0, 0, 0, 0])).unwrap(), 2);
        assert_eq!(symplectic_multiplicity(&b, &class(&[0; 7])).unwrap(), 7);
        assert_eq!(symplectic_multiplicity(&b, &class(&[0, 0, 0, 0, 0, 0, 1])).unwrap(), 6);
    }

    #[test]
    fn t8_relative_orders() {
        let sc = shipped("t8").unwrap();
        let b = restriction_basis(&sc.germ, Flavor::All, None).unwrap();
        let v = &sc.germ.vars;
        let all = [0, 1, 2];
        let c1 = sc.germ.branch_index("C1").unwrap();
        let rel = |src: &str| {
            let omega = parse_form_arg(v, src).unwrap().form(v).unwrap();
            let t = component_invariants(&sc.germ, "C1", &omega, None).unwrap().lt;
            relative_lt_form(&b, &omega, &all, &[(c1, t)], None).unwrap()
        };
        assert_eq!(rel("symplectic: x1, x3 | x2, 2*x3 - 3*x1"), Order::Finite(1));
        assert_eq!(rel("symplectic: x1, x3 | x2, -3*x1 - 5*x1*x2"), Order::Finite(2));
        assert_eq!(rel("symplectic: x1, 1/3*x3^3 | x2, -x1*x3"), Order::Finite(3));
        assert_eq!(rel("symplectic: x1, 1/3*x3^3"), Order::Finite(4));
        let omega = parse_form_arg(v, "symplectic: x1, x3 | x2, x1").unwrap().form(v).unwrap();
        assert_eq!(
            relative_lt_form(&b, &omega, &all, &[], None).unwrap(),
            lagrangian_tangency_form(&b, &omega, None).unwrap()
        );
    }

    #[test]
    fn impossible_fixed_order_is_negative_infinity() {
        let sc = shipped("t8").unwrap();
        let b = restriction_basis(&sc.germ, Flavor::All, None).unwrap();
        let v = &sc.germ.vars;
        let omega = parse_form_arg(v, "symplectic: x1, x3 | x2, x1").unwrap().form(v).unwrap();
        let c1 = sc.germ.branch_index("C1").unwrap();
        let r = relative_lt_form(&b, &omega, &[0, 1, 2], &[(c1, Order::Infinity)], None).unwrap();
        assert_eq!(r, Order::NegInfinity);
    }

    #[test]
    fn cap_is_enforced() {
        let b = t7_closed();
        let a = class(&[0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            lagrangian_tangency_multi(&b, &[0, 1], &a, Some(3)),
            Err(Error::CapExceeded(3))
        ));
    }

    #[test]
    fn geometric_conditions_for_t7_forms() {
        let sc = shipped("t7-ambient").unwrap();
        let report = |name: &str| {
            let f = sc.form(name).unwrap().form(&sc.declared.vars).unwrap();
            geometric_report(&sc.germ, &sc.essential(&f).unwrap()).unwrap()
        };
        let r0 = report("w0");
        assert!(!r0.isotropic(1, 2) && !r0.isotropic(1, 3) && !r0.isotropic(2, 3));
        let r5 = report("w5");
        assert!(r5.cond_i && r5.cond_iii && !r5.cond_ii);
        let r7 = report("w7");
        assert!(r7.cond_i && r7.cond_ii && r7.cond_iii && r7.cond_iv && r7.lagrangian_whole);
    }
}
