//! Graded quotient spaces of algebraic restrictions of 2-forms.
//!
//! In each quasi-degree `d` the monomial 2-forms of degree `d` are reduced
//! modulo the degree-`d` piece of the space spanned by `H m dx_a^dx_b` and
//! `d(H m)^dx_a` (`H` an ideal generator). The non-pivot columns of that
//! reduction give coordinates on the quotient of all 2-forms; the closed
//! quotient is the image of the exact forms `d(m dx_i)` inside it.

use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{exterior_derivative, wedge, DiffForm};
use crate::germ::{validate, MultiGerm};
use crate::linalg::{row_reduce, row_reduce_with_transform, Echelon, Matrix, Scalar};
use crate::poly::{monomials_of_quasi_degree, Monomial, Polynomial, QuasiDegree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// All 2-forms.
    All,
    /// Closed 2-forms.
    Closed,
}

impl Flavor {
    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "all" => Some(Flavor::All),
            "closed" => Some(Flavor::Closed),
            _ => None,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::All => "all",
            Flavor::Closed => "closed",
        })
    }
}

/// Named representatives replacing the default monomial choice.
pub type BasisOverride = Vec<(String, DiffForm)>;

type Column = (Monomial, usize, usize);

/// Monomial 2-forms of quasi-degree `d` in column order.
fn two_form_columns(g: &MultiGerm, d: i64) -> Vec<Column> {
    let n = g.vars.len();
    let mut cols = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let rest = d - g.vars.weight(a) - g.vars.weight(b);
            for m in monomials_of_quasi_degree(&g.vars, rest) {
                cols.push((m, a, b));
            }
        }
    }
    cols
}

/// Spanning set of the degree-`d` piece of the forms with zero restriction.
pub fn a20_generators(g: &MultiGerm, d: i64) -> Vec<DiffForm> {
    let n = g.vars.len();
    let mut out = Vec::new();
    for h in g.generators() {
        let Some(hd) = h.quasi_degree().value() else {
            continue;
        };
        for a in 0..n {
            let wa = g.vars.weight(a);
            for m in monomials_of_quasi_degree(&g.vars, d - hd - wa) {
                let hm = DiffForm::function(h.mul_monomial(&m));
                let f = wedge(&exterior_derivative(&hm), &DiffForm::dx(&g.vars, a))
                    .expect("2-form");
                if !f.is_zero() {
                    out.push(f);
                }
            }
            for b in a + 1..n {
                let rest = d - hd - wa - g.vars.weight(b);
                for m in monomials_of_quasi_degree(&g.vars, rest) {
                    let f = DiffForm::term(h.mul_monomial(&m), &[a, b]).expect("indices in range");
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Linear algebra for one quasi-degree.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    pub degree: i64,
    columns: HashMap<Column, usize>,
    a0: Echelon,
    free: Vec<usize>,
    /// Echelon of the closed subspace inside the free coordinates.
    closed: Echelon,
    reps: Vec<DiffForm>,
    names: Vec<String>,
    images: Echelon,
    transform: Matrix,
}

impl DegreePiece {
    fn build(g: &MultiGerm, d: i64) -> DegreePiece {
        let cols = two_form_columns(g, d);
        let columns: HashMap<Column, usize> =
            cols.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let width = cols.len();
        let rows: Vec<Vec<Scalar>> = a20_generators(g, d)
            .iter()
            .map(|f| vectorize(&columns, width, f))
            .collect();
        let a0 = row_reduce(&Matrix::from_rows_with_cols(rows, width).expect("uniform width"));
        let mut is_pivot = vec![false; width];
        for &p in &a0.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..width).filter(|&j| !is_pivot[j]).collect();
        DegreePiece {
            degree: d,
            columns,
            a0,
            free,
            closed: row_reduce(&Matrix::zeros(0, 0)),
            reps: Vec::new(),
            names: Vec::new(),
            images: row_reduce(&Matrix::zeros(0, 0)),
            transform: Matrix::zeros(0, 0),
        }
    }

    pub fn all_dim(&self) -> usize {
        self.free.len()
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[DiffForm] {
        &self.reps
    }

    /// Coordinates of a quasi-homogeneous degree-`d` 2-form on the quotient of all 2-forms.
    pub fn reduce(&self, f: &DiffForm) -> Vec<Scalar> {
        let mut v = vectorize(&self.columns, self.a0.matrix.cols(), f);
        self.a0.reduce(&mut v);
        self.free.iter().map(|&j| v[j].clone()).collect()
    }

    fn set_reps(&mut self, reps: Vec<DiffForm>, names: Vec<String>) -> Result<()> {
        let f = self.free.len();
        let rows: Vec<Vec<Scalar>> = reps.iter().map(|r| self.reduce(r)).collect();
        let (ech, t) = row_reduce_with_transform(&Matrix::from_rows_with_cols(rows, f)?);
        if ech.rank() != reps.len() {
            return Err(Error::Other(format!(
                "representatives in degree {} are dependent",
                self.degree
            )));
        }
        self.reps = reps;
        self.names = names;
        self.images = ech;
        self.transform = t;
        Ok(())
    }

    /// Coordinates over the representatives, `None` if outside their span.
    fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut w = v.to_vec();
        self.images.reduce(&mut w);
        if w.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut c = vec![Scalar::zero(); self.reps.len()];
        for (r, &p) in self.images.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            for (j, cj) in c.iter_mut().enumerate() {
                let t = &self.transform[(r, j)];
                if !t.is_zero() {
                    *cj += &v[p] * t;
                }
            }
        }
        Some(c)
    }
}

fn vectorize(columns: &HashMap<Column, usize>, width: usize, f: &DiffForm) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); width];
    for (idx, p) in f.terms() {
        for (m, c) in p.terms() {
            let j = columns[&(m.clone(), idx[0], idx[1])];
            v[j] += c;
        }
    }
    v
}

/// Basis of the algebraic restrictions of all or closed 2-forms, graded by quasi-degree.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub germ: MultiGerm,
    pub flavor: Flavor,
    pieces: Vec<DegreePiece>,
    /// Global basis index → (piece, local index).
    order: Vec<(usize, usize)>,
    checked_through: i64,
    capped: bool,
    window: i64,
}

/// Coordinates of an algebraic restriction over a [`GradedBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionClass {
    pub coords: Vec<Scalar>,
}

impl RestrictionClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn zero(dim: usize) -> Self {
        RestrictionClass {
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn basis_vector(dim: usize, i: usize) -> Self {
        let mut c = Self::zero(dim);
        c.coords[i] = Scalar::from_integer(1.into());
        c
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        RestrictionClass {
            coords: self.coords.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RestrictionClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Consecutive empty degrees required before declaring the quotient finished.
pub fn stabilization_window(g: &MultiGerm) -> i64 {
    let max_gen = g
        .generators()
        .iter()
        .filter_map(|h| h.degree_range().map(|(_, hi)| hi))
        .max()
        .unwrap_or(0);
    max_gen + g.vars.weight_sum()
}

pub fn restriction_basis(g: &MultiGerm, flavor: Flavor, degree_cap: Option<i64>) -> Result<GradedBasis> {
    restriction_basis_with(g, flavor, degree_cap, None)
}

pub fn restriction_basis_with(
    g: &MultiGerm,
    flavor: Flavor,
    degree_cap: Option<i64>,
    overrides: Option<&BasisOverride>,
) -> Result<GradedBasis> {
    validate(g)?;
    let window = stabilization_window(g);
    let hard_cap = 10 * window;
    let mut pieces = Vec::new();
    let mut empty_run = 0;
    let mut d = 0;
    let mut capped = false;
    loop {
        if degree_cap.is_some_and(|c| d > c) {
            capped = true;
            break;
        }
        if d > hard_cap {
            return Err(Error::NoStabilization(hard_cap));
        }
        let piece = DegreePiece::build(g, d);
        if piece.all_dim() == 0 {
            empty_run += 1;
            if empty_run >= window {
                break;
            }
        } else {
            empty_run = 0;
            pieces.push(piece);
        }
        d += 1;
    }
    let checked_through = d - 1;
    for piece in &mut pieces {
        fill_default_reps(g, piece, flavor)?;
    }
    let mut basis = GradedBasis {
        germ: g.clone(),
        flavor,
        order: Vec::new(),
        pieces,
        checked_through,
        capped,
        window,
    };
    match overrides {
        Some(ov) => basis.apply_override(ov)?,
        None => basis.order = basis.default_order(),
    }
    Ok(basis)
}

fn fill_default_reps(g: &MultiGerm, piece: &mut DegreePiece, flavor: Flavor) -> Result<()> {
    let f = piece.all_dim();
    let d = piece.degree;
    // Exact forms d(m dx_i) of degree d, reduced into the free coordinates.
    let mut exact = Vec::new();
    for i in 0..g.vars.len() {
        for m in monomials_of_quasi_degree(&g.vars, d - g.vars.weight(i)) {
            let beta = DiffForm::term(Polynomial::term(&g.vars, m, Scalar::from_integer(1.into())), &[i])?;
            let db = exterior_derivative(&beta);
            if !db.is_zero() {
                exact.push(db);
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = exact.iter().map(|e| piece.reduce(e)).collect();
    piece.closed = row_reduce(&Matrix::from_rows_with_cols(rows.clone(), f)?);
    let (reps, names): (Vec<DiffForm>, Vec<String>) = match flavor {
        Flavor::All => {
            let cols: Vec<Column> = {
                let mut by_index: Vec<(usize, &Column)> =
                    piece.columns.iter().map(|(c, &i)| (i, c)).collect();
                by_index.sort_by_key(|(i, _)| *i);
                by_index.into_iter().map(|(_, c)| c.clone()).collect()
            };
            piece
                .free
                .iter()
                .map(|&j| {
                    let (m, a, b) = &cols[j];
                    let f = DiffForm::term(
                        Polynomial::term(&g.vars, m.clone(), Scalar::from_integer(1.into())),
                        &[*a, *b],
                    )
                    .expect("indices in range");
                    let name = f.to_string();
                    (f, name)
                })
                .unzip()
        }
        Flavor::Closed => {
            // Greedily keep exact generators that enlarge the span.
            let mut kept: Vec<Vec<Scalar>> = Vec::new();
            let mut out = (Vec::new(), Vec::new());
            for (e, r) in exact.into_iter().zip(rows) {
                let mut trial = kept.clone();
                trial.push(r.clone());
                if row_reduce(&Matrix::from_rows_with_cols(trial, f)?).rank() > kept.len() {
                    kept.push(r);
                    out.1.push(e.to_string());
                    out.0.push(e);
                }
            }
            out
        }
    };
    piece.set_reps(reps, names)
}

impl GradedBasis {
    fn default_order(&self) -> Vec<(usize, usize)> {
        self.pieces
            .iter()
            .enumerate()
            .flat_map(|(p, piece)| (0..piece.dim()).map(move |i| (p, i)))
            .collect()
    }

    fn apply_override(&mut self, ov: &BasisOverride) -> Result<()> {
        let mut by_degree: BTreeMap<i64, Vec<(usize, String, DiffForm)>> = BTreeMap::new();
        for (k, (name, f)) in ov.iter().enumerate() {
            let QuasiDegree::Exact(d) = f.quasi_degree() else {
                return Err(Error::Other(format!("basis form {name} is not quasi-homogeneous")));
            };
            if self.flavor == Flavor::Closed && !f.is_closed() {
                return Err(Error::Other(format!("basis form {name} is not closed")));
            }
            by_degree.entry(d).or_default().push((k, name.clone(), f.clone()));
        }
        let mut order = vec![(0, 0); ov.len()];
        for (p, piece) in self.pieces.iter_mut().enumerate() {
            let given = by_degree.remove(&piece.degree).unwrap_or_default();
            if given.len() != piece.dim() {
                return Err(Error::Other(format!(
                    "basis override has {} forms in degree {} but the space has dimension {}",
                    given.len(),
                    piece.degree,
                    piece.dim()
                )));
            }
            for (local, (k, _, _)) in given.iter().enumerate() {
                order[*k] = (p, local);
            }
            let (names, forms): (Vec<String>, Vec<DiffForm>) =
                given.into_iter().map(|(_, n, f)| (n, f)).unzip();
            piece.set_reps(forms, names)?;
        }
        if let Some((d, _)) = by_degree.into_iter().next() {
            return Err(Error::Other(format!("basis override has forms in empty degree {d}")));
        }
        self.order = order;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn pieces(&self) -> &[DegreePiece] {
        &self.pieces
    }

    pub fn piece(&self, d: i64) -> Option<&DegreePiece> {
        self.pieces.iter().find(|p| p.degree == d)
    }

    pub fn names(&self) -> Vec<String> {
        self.order
            .iter()
            .map(|&(p, i)| self.pieces[p].names[i].clone())
            .collect()
    }

    pub fn reps(&self) -> Vec<DiffForm> {
        self.order
            .iter()
            .map(|&(p, i)| self.pieces[p].reps[i].clone())
            .collect()
    }

    pub fn rep(&self, i: usize) -> &DiffForm {
        let (p, l) = self.order[i];
        &self.pieces[p].reps[l]
    }

    pub fn rep_degree(&self, i: usize) -> i64 {
        self.pieces[self.order[i].0].degree
    }

    /// Highest quasi-degree with a nonzero graded piece.
    pub fn stabilization_degree(&self) -> i64 {
        self.pieces.last().map_or(0, |p| p.degree)
    }

    pub fn checked_through(&self) -> i64 {
        self.checked_through
    }

    pub fn is_capped(&self) -> bool {
        self.capped
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Total dimension of the quotient of all 2-forms (over every flavor).
    pub fn all_dim(&self) -> usize {
        self.pieces.iter().map(DegreePiece::all_dim).sum()
    }

    /// Offsets of each piece inside the concatenated all-forms coordinates.
    pub fn all_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.pieces
            .iter()
            .map(|p| {
                let o = acc;
                acc += p.all_dim();
                o
            })
            .collect()
    }

    /// Concatenated coordinates of `f` on the quotient of all 2-forms.
    pub fn all_coords(&self, f: &DiffForm) -> Result<Vec<Scalar>> {
        if f.degree() != 2 && !f.is_zero() {
            return Err(Error::DimensionMismatch(format!("expected a 2-form, got degree {}", f.degree())));
        }
        let mut out = vec![Scalar::zero(); self.all_dim()];
        let offsets = self.all_offsets();
        for (d, comp) in f.graded_components() {
            match self.pieces.iter().position(|p| p.degree == d) {
                Some(k) => {
                    for (i, x) in self.pieces[k].reduce(&comp).into_iter().enumerate() {
                        out[offsets[k] + i] = x;
                    }
                }
                None if d > self.checked_through && self.capped => return Err(Error::BeyondCap(d)),
                None => {}
            }
        }
        Ok(out)
    }

    pub fn restrict(&self, f: &DiffForm) -> Result<RestrictionClass> {
        let all = self.all_coords(f)?;
        let offsets = self.all_offsets();
        let mut coords = vec![Scalar::zero(); self.dim()];
        let mut local: Vec<Vec<Scalar>> = Vec::with_capacity(self.pieces.len());
        for (k, piece) in self.pieces.iter().enumerate() {
            let v = &all[offsets[k]..offsets[k] + piece.all_dim()];
            match piece.coords(v) {
                Some(c) => local.push(c),
                None => return Err(Error::NotClosed),
            }
        }
        for (g, &(p, i)) in self.order.iter().enumerate() {
            coords[g] = local[p][i].clone();
        }
        Ok(RestrictionClass { coords })
    }

    pub fn is_zero_restriction(&self, f: &DiffForm) -> Result<bool> {
        Ok(self.all_coords(f)?.iter().all(Zero::is_zero))
    }

    /// The representative form `Σ c_i rep_i`.
    pub fn form_of(&self, a: &RestrictionClass) -> DiffForm {
        let mut out = DiffForm::zero(&self.germ.vars, 2);
        for (i, c) in a.coords.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.rep(i).scale(c);
            }
        }
        out
    }

    /// Parses `c1,c2,...` into a class of this basis.
    pub fn class_from_coords(&self, coords: Vec<Scalar>) -> Result<RestrictionClass> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a basis of dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(RestrictionClass { coords })
    }

    pub fn format_class(&self, a: &RestrictionClass) -> String {
        let names = self.names();
        let mut s = String::new();
        for (i, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = format!("[{}]", names[i]);
            s.push_str(&crate::poly::fmt_coeff_term(c, &body, s.is_empty()));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

pub fn is_zero_restriction(basis: &GradedBasis, f: &DiffForm) -> Result<bool> {
    basis.is_zero_restriction(f)
}

pub fn restrict(basis: &GradedBasis, f: &DiffForm) -> Result<RestrictionClass> {
    basis.restrict(f)
}

/// Restriction over the basis of one component, computed from its own ideal.
pub fn restrict_to_component(
    g: &MultiGerm,
    component: &str,
    flavor: Flavor,
    f: &DiffForm,
) -> Result<(GradedBasis, RestrictionClass)> {
    let sub = g.sub_germ(component)?;
    let basis = restriction_basis(&sub, flavor, None)?;
    let class = basis.restrict(f)?;
    Ok((basis, class))
}
