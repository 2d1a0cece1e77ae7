#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use algrest_core::forms::{exterior_derivative, wedge, DiffForm};
use algrest_core::germ::MultiGerm;
use algrest_core::linalg::{int, rank, Matrix, Scalar};
use algrest_core::restriction::{Flavor, GradedBasis};
use algrest_core::{Monomial, Polynomial, VarSet};
use rand::Rng;

/// All monomials in `n` variables of total degree at most `d`.
pub fn monomials_upto(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn total_degree(p: &Polynomial) -> u32 {
    p.terms().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
}

/// Dense elimination over monomial 2-forms of bounded total degree, ignoring weights.
pub struct BruteForce {
    vars: Arc<VarSet>,
    cols: HashMap<(Vec<u32>, Vec<usize>), usize>,
    /// Spanning vectors of the forms vanishing on the germ.
    vanishing: Vec<Vec<Scalar>>,
    vanishing_rank: usize,
    /// Largest total degree of the candidate representatives.
    pub low: u32,
}

impl BruteForce {
    /// Candidates have total degree at most `low`; the vanishing span is built up to `high`.
    pub fn new(g: &MultiGerm, low: u32, high: u32) -> BruteForce {
        let vars = g.vars.clone();
        let n = vars.len();
        let mut cols = HashMap::new();
        for m in monomials_upto(n, high) {
            for a in 0..n {
                for b in a + 1..n {
                    let k = cols.len();
                    cols.insert((m.0.clone(), vec![a, b]), k);
                }
            }
        }
        let mut bf = BruteForce {
            vars,
            cols,
            vanishing: Vec::new(),
            vanishing_rank: 0,
            low,
        };
        let mut rows = Vec::new();
        for h in g.generators() {
            let dh = exterior_derivative(&DiffForm::function(h.clone()));
            let hd = total_degree(h);
            for m in monomials_upto(n, high) {
                let md = m.total_degree();
                for a in 0..n {
                    if md + hd - 1 <= high {
                        let f = wedge(&dh, &DiffForm::dx(&bf.vars, a)).unwrap().mul_monomial(&m);
                        rows.extend(bf.vector(&f));
                    }
                    for b in a + 1..n {
                        if md + hd <= high {
                            let f = DiffForm::term(h.mul_monomial(&m), &[a, b]).unwrap();
                            rows.extend(bf.vector(&f));
                        }
                    }
                }
            }
        }
        bf.vanishing_rank = rank_of(&rows, bf.cols.len());
        bf.vanishing = rows;
        bf
    }

    /// Coordinates of a 2-form, or `None` when a term is too large.
    pub fn vector(&self, f: &DiffForm) -> Option<Vec<Scalar>> {
        let mut v = vec![int(0); self.cols.len()];
        for (idx, p) in f.terms() {
            for (m, c) in p.terms() {
                let k = *self.cols.get(&(m.0.clone(), idx.clone()))?;
                v[k] += c;
            }
        }
        Some(v)
    }

    /// Candidate representatives: monomial 2-forms, or differentials of monomial 1-forms.
    pub fn candidates(&self, flavor: Flavor) -> Vec<DiffForm> {
        let n = self.vars.len();
        let mut out = Vec::new();
        match flavor {
            Flavor::All => {
                for m in monomials_upto(n, self.low) {
                    for a in 0..n {
                        for b in a + 1..n {
                            out.push(DiffForm::term(Polynomial::term(&self.vars, m.clone(), int(1)), &[a, b]).unwrap());
                        }
                    }
                }
            }
            Flavor::Closed => {
                for m in monomials_upto(n, self.low + 1) {
                    for a in 0..n {
                        let p = Polynomial::term(&self.vars, m.clone(), int(1));
                        let one = wedge(&DiffForm::function(p), &DiffForm::dx(&self.vars, a)).unwrap();
                        out.push(exterior_derivative(&one));
                    }
                }
            }
        }
        out
    }

    /// Dimension of the span of the candidates modulo vanishing forms.
    pub fn dim(&self, flavor: Flavor) -> usize {
        let mut rows = self.vanishing.clone();
        rows.extend(self.candidates(flavor).iter().filter_map(|f| self.vector(f)));
        rank_of(&rows, self.cols.len()) - self.vanishing_rank
    }

    /// Whether a form lies in the vanishing span.
    pub fn vanishes(&self, f: &DiffForm) -> bool {
        let v = self.vector(f).expect("form within the degree bound");
        let mut rows = self.vanishing.clone();
        rows.push(v);
        rank_of(&rows, self.cols.len()) == self.vanishing_rank
    }
}

fn rank_of(rows: &[Vec<Scalar>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows_with_cols(rows.to_vec(), cols).unwrap())
}

/// Bounds for which the brute-force space covers the graded basis of a planar germ.
pub fn brute_force_for(b: &GradedBasis) -> BruteForce {
    let g = &b.germ;
    let w = g.vars.weights();
    let (wmin, wmax) = (*w.iter().min().unwrap() as i64, *w.iter().max().unwrap() as i64);
    let low = (b.stabilization_degree() + wmin - 1) / wmin + 1;
    let hdeg = g.generators().iter().map(total_degree).max().unwrap_or(0) as i64;
    let high = (low * wmax + wmin - 1) / wmin + hdeg + 1;
    BruteForce::new(g, low as u32, high as u32)
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())
}

/// A random polynomial with `terms` terms of total degree at most `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &Arc<VarSet>, deg: u32, terms: usize) -> Polynomial {
    let ms = monomials_upto(vars.len(), deg);
    let mut p = Polynomial::zero(vars);
    for _ in 0..terms {
        let m = ms[rng.gen_range(0..ms.len())].clone();
        p.add_term(m, small_rational(rng));
    }
    p
}

/// A random form of the given degree with coefficients of total degree at most `deg`.
pub fn random_form<R: Rng>(rng: &mut R, vars: &Arc<VarSet>, k: usize, deg: u32) -> DiffForm {
    let n = vars.len();
    let mut f = DiffForm::zero(vars, k);
    let idx_sets: Vec<Vec<usize>> = index_sets(n, k);
    for idx in idx_sets {
        let p = random_poly(rng, vars, deg, 3);
        f = f.try_add(&DiffForm::term(p, &idx).unwrap()).unwrap();
    }
    f
}

fn index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for s in index_sets(n, k - 1) {
        let start = s.last().map_or(0, |&l| l + 1);
        for i in start..n {
            let mut t = s.clone();
            t.push(i);
            out.push(t);
        }
    }
    out
}
