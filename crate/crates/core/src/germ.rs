//! Parametrized curve multi-germs, their ideal presentations and tangent frames.

use num_traits::{One, Zero};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, Matrix, Scalar};
use crate::poly::{Monomial, Polynomial, QuasiDegree, UniPoly, VarSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub name: String,
    pub coords: Vec<UniPoly>,
}

impl Branch {
    pub fn new(name: impl Into<String>, coords: Vec<UniPoly>) -> Result<Self> {
        let b = Branch {
            name: name.into(),
            coords,
        };
        if b.coords.iter().any(|c| !c.coeff(0).is_zero()) {
            return Err(Error::InvalidGerm(format!("branch {} does not pass through 0", b.name)));
        }
        if b.coords.iter().all(UniPoly::is_zero) {
            return Err(Error::InvalidGerm(format!("branch {} is constant", b.name)));
        }
        Ok(b)
    }

    /// Coefficient vector of `t^k` across the coordinates.
    pub fn jet(&self, k: usize) -> Vec<Scalar> {
        self.coords.iter().map(|c| c.coeff(k)).collect()
    }

    /// The scale `s` with `x_i ∘ f = c_i t^{s w_i}` for every coordinate, if
    /// the branch has this monomial shape. `s` may be fractional.
    pub fn quasi_homogeneous_scale(&self, vars: &VarSet) -> Option<Scalar> {
        let mut scale: Option<Scalar> = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (_, e) = c.as_monomial()?;
            let s = Scalar::new((e as i64).into(), vars.weight(i).into());
            match &scale {
                None => scale = Some(s),
                Some(t) if *t == s => {}
                Some(_) => return None,
            }
        }
        scale
    }
}

pub fn substitute_branch(p: &Polynomial, f: &Branch) -> Result<UniPoly> {
    p.compose(&f.coords)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub vars: Arc<VarSet>,
    pub generators: Vec<Polynomial>,
}

/// A named grouping of branches, optionally with its own ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub branches: Vec<usize>,
    pub ideal: Option<Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGerm {
    pub vars: Arc<VarSet>,
    pub branches: Vec<Branch>,
    pub ideal: IdealPresentation,
    pub components: Vec<Component>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub warnings: Vec<String>,
}

impl MultiGerm {
    pub fn new(
        vars: Arc<VarSet>,
        branches: Vec<Branch>,
        generators: Vec<Polynomial>,
        components: Vec<Component>,
    ) -> Self {
        MultiGerm {
            ideal: IdealPresentation {
                vars: vars.clone(),
                generators,
            },
            vars,
            branches,
            components,
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.ideal.generators
    }

    pub fn component(&self, name: &str) -> Result<&Component> {
        self.components
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownComponent(name.to_string()))
    }

    pub fn branch_index(&self, name: &str) -> Option<usize> {
        self.branches.iter().position(|b| b.name == name)
    }

    /// The sub-germ formed by one component, using its declared ideal.
    pub fn sub_germ(&self, name: &str) -> Result<MultiGerm> {
        let c = self.component(name)?;
        let ideal = c.ideal.clone().ok_or_else(|| {
            Error::InvalidGerm(format!("component {name} has no ideal presentation"))
        })?;
        let branches = c.branches.iter().map(|&i| self.branches[i].clone()).collect();
        Ok(MultiGerm::new(self.vars.clone(), branches, ideal, Vec::new()))
    }

    /// Common scale `s` with `x_i ∘ f = c_i t^{s w_i}` on every branch, if any.
    pub fn branch_scales(&self) -> Option<Vec<Scalar>> {
        self.branches
            .iter()
            .map(|b| b.quasi_homogeneous_scale(&self.vars))
            .collect()
    }

    pub fn is_quasi_homogeneous(&self) -> bool {
        self.branch_scales().is_some()
            && self
                .generators()
                .iter()
                .all(|g| matches!(g.quasi_degree(), QuasiDegree::Exact(_) | QuasiDegree::Any))
    }
}

fn check_vanishing(gens: &[Polynomial], branches: &[&Branch]) -> Result<()> {
    for g in gens {
        for b in branches {
            let comp = substitute_branch(g, b)?;
            if !comp.is_zero() {
                return Err(Error::InvalidGerm(format!(
                    "generator {g} does not vanish on branch {} (composition {comp})",
                    b.name
                )));
            }
        }
    }
    Ok(())
}

pub fn validate(g: &MultiGerm) -> Result<ValidationReport> {
    let n = g.vars.len();
    let mut report = ValidationReport::default();
    if g.branches.is_empty() {
        return Err(Error::InvalidGerm("no branches".into()));
    }
    for b in &g.branches {
        if b.coords.len() != n {
            return Err(Error::InvalidGerm(format!(
                "branch {} has {} coordinates for {} variables",
                b.name,
                b.coords.len(),
                n
            )));
        }
        if b.quasi_homogeneous_scale(&g.vars).is_none() {
            report
                .warnings
                .push(format!("branch {} is not a monomial parametrization", b.name));
        }
    }
    for h in g.generators() {
        if h.quasi_degree() == QuasiDegree::Mixed {
            return Err(Error::InvalidGerm(format!("generator {h} is not quasi-homogeneous")));
        }
    }
    let all: Vec<&Branch> = g.branches.iter().collect();
    check_vanishing(g.generators(), &all)?;
    for c in &g.components {
        if let Some(&bad) = c.branches.iter().find(|&&i| i >= g.branches.len()) {
            return Err(Error::IndexOutOfRange(bad, g.branches.len()));
        }
        if let Some(gens) = &c.ideal {
            let bs: Vec<&Branch> = c.branches.iter().map(|&i| &g.branches[i]).collect();
            check_vanishing(gens, &bs)?;
        }
    }
    Ok(report)
}

/// Restricts an ambient germ to the variables not listed in `drop`.
/// Returns the reduced germ and the names of the dropped coordinates.
pub fn reduce_ambient(g: &MultiGerm, drop: &[usize]) -> Result<(MultiGerm, Vec<String>)> {
    let n = g.vars.len();
    if let Some(&bad) = drop.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange(bad, n));
    }
    for &i in drop {
        if let Some(b) = g.branches.iter().find(|b| !b.coords[i].is_zero()) {
            return Err(Error::InvalidGerm(format!(
                "coordinate {} is nonzero on branch {}",
                g.vars.names()[i],
                b.name
            )));
        }
    }
    let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
    if keep.len() == n {
        return Ok((g.clone(), Vec::new()));
    }
    let vars = VarSet::new(
        keep.iter().map(|&i| g.vars.names()[i].clone()).collect(),
        keep.iter().map(|&i| g.vars.weights()[i]).collect(),
    )?;
    // Dropped coordinates lie in the ideal, so they are set to zero.
    let project = |p: &Polynomial| {
        let mut out = Polynomial::zero(&vars);
        for (m, c) in p.terms() {
            if drop.iter().any(|&i| m.0[i] > 0) {
                continue;
            }
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        out
    };
    let gens: Vec<Polynomial> = g
        .generators()
        .iter()
        .map(project)
        .filter(|p| !p.is_zero())
        .collect();
    let branches = g
        .branches
        .iter()
        .map(|b| Branch {
            name: b.name.clone(),
            coords: keep.iter().map(|&i| b.coords[i].clone()).collect(),
        })
        .collect();
    let components = g
        .components
        .iter()
        .map(|c| Component {
            name: c.name.clone(),
            branches: c.branches.clone(),
            ideal: c.ideal.as_ref().map(|gs| {
                gs.iter().map(project).filter(|p| !p.is_zero()).collect()
            }),
        })
        .collect();
    let dropped = drop.iter().map(|&i| g.vars.names()[i].clone()).collect();
    Ok((MultiGerm::new(vars, branches, gens, components), dropped))
}

/// Tangent lines of the two branch groupings, the line `ℓ3` common to their
/// 2-jet planes, and the space they span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentFrame {
    pub l1: Vec<Scalar>,
    pub l2: Vec<Scalar>,
    pub l3: Vec<Scalar>,
    pub w: Vec<Vec<Scalar>>,
}

fn normalize_direction(v: Vec<Scalar>) -> Vec<Scalar> {
    match v.iter().find(|x| !x.is_zero()).cloned() {
        Some(lead) => v.into_iter().map(|x| x / &lead).collect(),
        None => v,
    }
}

fn max_jet(branches: &[&Branch]) -> usize {
    branches
        .iter()
        .flat_map(|b| b.coords.iter().filter_map(UniPoly::degree))
        .max()
        .unwrap_or(0)
}

/// Lowest-order nonzero jet of the first branch in the grouping.
fn tangent_line(branches: &[&Branch]) -> Result<Vec<Scalar>> {
    let b = branches[0];
    (1..=max_jet(branches))
        .map(|k| b.jet(k))
        .find(|j| j.iter().any(|x| !x.is_zero()))
        .map(normalize_direction)
        .ok_or_else(|| Error::DegenerateFrame(format!("branch {} has no jet", b.name)))
}

/// Plane spanned by the first two independent jets across the grouping.
fn jet_plane(branches: &[&Branch]) -> Result<[Vec<Scalar>; 2]> {
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    for k in 1..=max_jet(branches) {
        for b in branches {
            let j = b.jet(k);
            let mut trial = found.clone();
            trial.push(j.clone());
            if rank(&Matrix::from_rows(trial).expect("equal lengths")) > found.len() {
                found.push(j);
                if found.len() == 2 {
                    return Ok([found[0].clone(), found[1].clone()]);
                }
            }
        }
    }
    Err(Error::DegenerateFrame("2-jets do not span a plane".into()))
}

pub fn tangent_frame(g: &MultiGerm) -> Result<TangentFrame> {
    if g.components.len() != 2 {
        return Err(Error::DegenerateFrame(format!(
            "expected two branch groupings, found {}",
            g.components.len()
        )));
    }
    let groups: Vec<Vec<&Branch>> = g
        .components
        .iter()
        .map(|c| c.branches.iter().map(|&i| &g.branches[i]).collect())
        .collect();
    let l1 = tangent_line(&groups[0])?;
    let l2 = tangent_line(&groups[1])?;
    let p2 = jet_plane(&groups[0])?;
    let p3 = jet_plane(&groups[1])?;
    let n = g.vars.len();
    let mut m = Matrix::zeros(n, 4);
    for i in 0..n {
        m[(i, 0)] = p2[0][i].clone();
        m[(i, 1)] = p2[1][i].clone();
        m[(i, 2)] = -p3[0][i].clone();
        m[(i, 3)] = -p3[1][i].clone();
    }
    let ker = kernel_basis(&m);
    if ker.len() != 1 {
        return Err(Error::DegenerateFrame(format!(
            "jet planes meet in a space of dimension {}",
            ker.len()
        )));
    }
    let l3: Vec<Scalar> = (0..n)
        .map(|i| &ker[0][0] * &p2[0][i] + &ker[0][1] * &p2[1][i])
        .collect();
    let l3 = normalize_direction(l3);
    let w = vec![l1.clone(), l2.clone(), l3.clone()];
    if rank(&Matrix::from_rows(w.clone())?) != 3 {
        return Err(Error::DegenerateFrame("ℓ1, ℓ2, ℓ3 do not span a 3-space".into()));
    }
    Ok(TangentFrame { l1, l2, l3, w })
}

/// Unit vector `∂/∂x_i` as a direction.
pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n)
        .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::parse::{parse_polynomial, parse_unipoly};

    fn branch(name: &str, cs: &[&str]) -> Branch {
        Branch::new(name, cs.iter().map(|c| parse_unipoly(c).unwrap()).collect()).unwrap()
    }

    fn t7(gens: &[&str], b1: &[&str]) -> MultiGerm {
        let vs = VarSet::standard(&[3, 2, 2]);
        let gens = gens.iter().map(|g| parse_polynomial(&vs, g).unwrap()).collect();
        MultiGerm::new(
            vs,
            vec![branch("B1", b1), branch("B2", &["t^3", "-t^2", "0"])],
            gens,
            vec![
                Component { name: "B1".into(), branches: vec![0], ideal: None },
                Component { name: "B2".into(), branches: vec![1], ideal: None },
            ],
        )
    }

    #[test]
    fn validation() {
        let std = ["x1^2+x2^3+x3^3", "x2*x3"];
        let g = t7(&std, &["t^3", "0", "-t^2"]);
        assert!(validate(&g).unwrap().warnings.is_empty());
        let bad = t7(&["x2+x3"], &["t^3", "0", "-t^2"]);
        assert!(matches!(validate(&bad), Err(Error::InvalidGerm(_))));
        let warn = t7(&["x2*x3"], &["t^3+t^4", "0", "-t^2"]);
        assert_eq!(validate(&warn).unwrap().warnings.len(), 1);
    }

    #[test]
    fn frame_of_t7() {
        let g = t7(&["x1^2+x2^3+x3^3", "x2*x3"], &["t^3", "0", "-t^2"]);
        let f = tangent_frame(&g).unwrap();
        assert_eq!(f.l1, unit(3, 2));
        assert_eq!(f.l2, unit(3, 1));
        assert_eq!(f.l3, unit(3, 0));
    }

    #[test]
    fn ambient_reduction() {
        let vs = VarSet::standard(&[3, 2, 2, 1, 1, 1]);
        let gens = ["x1^2+x2^3+x3^3", "x2*x3", "x4", "x5", "x6"]
            .iter()
            .map(|g| parse_polynomial(&vs, g).unwrap())
            .collect();
        let g = MultiGerm::new(
            vs,
            vec![
                branch("B1", &["t^3", "0", "-t^2", "0", "0", "0"]),
                branch("B2", &["t^3", "-t^2", "0", "0", "0", "0"]),
            ],
            gens,
            Vec::new(),
        );
        let (r, dropped) = reduce_ambient(&g, &[3, 4, 5]).unwrap();
        assert_eq!(r.vars.len(), 3);
        assert_eq!(r.generators().len(), 2);
        assert_eq!(dropped, vec!["x4", "x5", "x6"]);
        let (same, none) = reduce_ambient(&r, &[]).unwrap();
        assert_eq!(same, r);
        assert!(none.is_empty());
        assert!(reduce_ambient(&r, &[2]).is_err());
        assert_eq!(r.branches[0].jet(3), vec![int(1), int(0), int(0)]);
    }
}
