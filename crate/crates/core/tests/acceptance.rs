//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::time::{Duration, Instant};

use algrest_core::classifier::{classify_t7, moduli_report};
use algrest_core::forms::exterior_derivative;
use algrest_core::invariants::{
    component_invariants, index_of_isotropy, index_of_isotropy_form, lagrangian_tangency_form, symplectic_multiplicity,
};
use algrest_core::linalg::{int, Scalar};
use algrest_core::restriction::{Flavor, GradedBasis, RestrictionClass};
use algrest_core::scenario::shipped;
use algrest_core::tables::{reproduce, reproduce_many, t7_expected_invariants, TABLE_IDS, T7_IND, T7_MU};
use algrest_core::tangent::{lie_action, tangent_generators};
use algrest_core::{Monomial, Order, Polynomial, Result};
use common::{brute_force_for, random_form, small_rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn table_passes(id: &str) -> Check {
    let t = core(reproduce(id))?;
    ensure(t.passed(), || format!("{id}: {} mismatching cells", t.diffs().len()))
}

fn t7_basis() -> std::result::Result<GradedBasis, String> {
    core(shipped("t7").and_then(|sc| sc.basis(Flavor::Closed, None)))
}

fn ints(c: &[i64]) -> Vec<Scalar> {
    c.iter().map(|&x| int(x)).collect()
}

fn dimensions() -> Check {
    let start = Instant::now();
    let sc = core(shipped("t7"))?;
    let all = core(sc.basis(Flavor::All, None))?.dim();
    let closed = core(sc.basis(Flavor::Closed, None))?.dim();
    let took = start.elapsed();
    ensure(all == 8 && closed == 7, || format!("dims all={all} closed={closed}"))?;
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))
}

fn relations() -> Check {
    let t = core(reproduce("t7-relations"))?;
    ensure(t.rows.len() == 8, || format!("{} relations", t.rows.len()))?;
    table_passes("t7-relations")
}

fn actions() -> Check {
    let t = core(reproduce("t7-actions"))?;
    ensure(t.checked_cells() == 42, || format!("{} entries", t.checked_cells()))?;
    table_passes("t7-actions")
}

fn hamiltonian_triviality() -> Check {
    for name in ["t7", "t8", "a2", "d4"] {
        let sc = core(shipped(name))?;
        let b = core(sc.basis(Flavor::Closed, None))?;
        let gens = core(tangent_generators(&b.germ, 0))?;
        ensure(!gens.hamiltonian.is_empty(), || format!("{name}: no Hamiltonian fields"))?;
        let vars = &b.germ.vars;
        let mut multipliers = vec![Monomial::one(vars.len())];
        for d in 1..=12 {
            multipliers.extend(algrest_core::poly::monomials_of_quasi_degree(vars, d));
        }
        for (idx, x) in &gens.hamiltonian {
            for m in &multipliers {
                let mx = x.mul_poly(&Polynomial::term(vars, m.clone(), int(1)));
                for i in 0..b.dim() {
                    let a = RestrictionClass::basis_vector(b.dim(), i);
                    let img = core(lie_action(&b, &mx, &a))?;
                    ensure(img.is_zero(), || format!("{name}: {m:?}*X{idx:?} moves basis vector {}", i + 1))?;
                }
            }
        }
    }
    Ok(())
}

fn multiplicities() -> Check {
    let t = core(reproduce("t7-classification"))?;
    ensure(t.rows.len() == 8, || "expected eight classes".into())?;
    table_passes("t7-classification")
}

fn cross_validation() -> Check {
    let b = t7_basis()?;
    let g = &b.germ;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut gap = 0;
    for _ in 0..200 {
        let c: Vec<Scalar> = (0..7)
            .map(|_| if rng.gen_bool(0.5) { small_rational(&mut rng) } else { int(0) })
            .collect();
        let a = core(b.class_from_coords(c.clone()))?;
        let label = core(classify_t7(&c))?;
        let Some(expected) = t7_expected_invariants(&label.class, label.subcase.as_deref()) else {
            ensure(label.class == "T7^*", || format!("{c:?}: no row for {label}"))?;
            gap += 1;
            continue;
        };
        let i: usize = label.class["T7^".len()..].parse().map_err(|_| label.class.clone())?;
        let f = b.form_of(&a);
        let comps: Vec<_> = g
            .components
            .iter()
            .map(|k| component_invariants(g, &k.name, &f, None))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        let lts = comps.iter().map(|k| k.lt);
        let inds = comps.iter().map(|k| k.ind);
        let got = [
            core(index_of_isotropy_form(&b, &f, None))?,
            inds.clone().max().unwrap_or(Order::Infinity),
            inds.min().unwrap_or(Order::Infinity),
            core(lagrangian_tangency_form(&b, &f, None))?,
            lts.clone().max().unwrap_or(Order::Infinity),
            lts.min().unwrap_or(Order::Infinity),
        ];
        ensure(got == expected, || format!("{c:?} ({label}): got {got:?}"))?;
        let mu = core(symplectic_multiplicity(&b, &a))?;
        let ind = if T7_IND[i] < 0 { Order::Infinity } else { Order::Finite(T7_IND[i]) };
        ensure(mu == T7_MU[i] && got[0] == ind, || format!("{c:?} ({label}): mu {mu}"))?;
        checked += 1;
    }
    ensure(checked >= 150, || format!("only {checked} labelled samples ({gap} in the gap)"))?;
    let a = core(b.class_from_coords(ints(&[2, 1, 3, 0, 0, 0, 0])))?;
    let dirs = core(moduli_report(&b, &a, &[0, 2]))?;
    ensure(dirs == vec![0, 2], || format!("moduli directions {dirs:?}"))?;
    let orbit = core(symplectic_multiplicity(&b, &a))?;
    ensure(orbit == 2, || format!("orbit codimension {orbit}"))
}

fn geometry() -> Check {
    table_passes("t7-geometry")
}

fn simple_families() -> Check {
    for id in ["A_k", "D_k", "E6"] {
        table_passes(id)?;
    }
    let sc = core(shipped("e6"))?;
    let b = core(sc.basis(Flavor::Closed, None))?;
    let mut got = Vec::new();
    for name in ["e3", "e4p"] {
        let f = core(sc.named_form(name))?.expect("explicit form");
        let a = core(b.restrict(&f))?;
        got.push((
            core(lagrangian_tangency_form(&b, &f, None))?,
            core(index_of_isotropy_form(&b, &f, None))?,
            core(symplectic_multiplicity(&b, &a))?,
        ));
    }
    let want = vec![
        (Order::Finite(10), Order::Finite(2), 4),
        (Order::Finite(11), Order::Finite(2), 4),
    ];
    ensure(got == want, || format!("E6^3/E6^4 gave {got:?}"))
}

fn semigroup() -> Check {
    table_passes("semigroup-3-7-11")
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let all = core(shipped("t7").and_then(|sc| sc.basis(Flavor::All, None)))?;
    let vars = all.germ.vars.clone();
    for _ in 0..20 {
        let f = random_form(&mut rng, &vars, 2, 3);
        let g = random_form(&mut rng, &vars, 2, 3);
        let (s, t) = (small_rational(&mut rng), small_rational(&mut rng));
        let lhs = core(all.restrict(&(&f.scale(&s) + &g.scale(&t))))?;
        let rhs = core(all.restrict(&f))?.scale(&s).add(&core(all.restrict(&g))?.scale(&t));
        ensure(lhs == rhs, || "restrict is not linear".into())?;
        for k in 0..2 {
            let h = random_form(&mut rng, &vars, k, 4);
            ensure(exterior_derivative(&exterior_derivative(&h)).is_zero(), || "d∘d ≠ 0".into())?;
        }
    }

    for name in ["a2", "a3", "d4"] {
        let sc = core(shipped(name))?;
        for flavor in [Flavor::All, Flavor::Closed] {
            let b = core(sc.basis(flavor, None))?;
            let bf = brute_force_for(&b);
            let dim = bf.dim(flavor);
            ensure(dim == b.dim(), || format!("{name} {flavor}: graded {} vs brute force {dim}", b.dim()))?;
        }
        let b = core(sc.basis(Flavor::All, None))?;
        let bf = brute_force_for(&b);
        for _ in 0..10 {
            let f = random_form(&mut rng, &b.germ.vars, 2, bf.low);
            ensure(core(b.is_zero_restriction(&f))? == bf.vanishes(&f), || format!("{name}: zero test disagrees"))?;
        }
    }

    let b = t7_basis()?;
    let mut samples: Vec<Vec<Scalar>> = Vec::new();
    for (i, code) in [0u8, 1, 3, 8, 24, 33, 64, 96, 127].iter().enumerate() {
        samples.push((0..7).map(|j| if code >> j & 1 == 1 { int(i as i64 + j + 1) } else { int(0) }).collect());
    }
    for c in samples {
        let a = core(b.class_from_coords(c))?;
        let f = b.form_of(&a);
        let lt = core(lagrangian_tangency_form(&b, &f, None))?;
        let ind = core(index_of_isotropy(&b, &a, None))?;
        let zero = a.is_zero();
        ensure((lt == Order::Infinity) == zero && (ind == Order::Infinity) == zero, || {
            format!("{:?}: Lt={lt} ind={ind}", a.coords)
        })?;
    }

    let known = ["T7^0", "T7^1", "T7^2", "T7^3", "T7^4", "T7^5", "T7^6", "T7^7", "T7^*"];
    for pattern in 0u32..128 {
        let c: Vec<Scalar> = (0..7)
            .map(|j| {
                if pattern >> j & 1 == 1 {
                    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                    int(s * rng.gen_range(1i64..=9))
                } else {
                    int(0)
                }
            })
            .collect();
        let label = core(classify_t7(&c))?;
        ensure(known.contains(&label.class.as_str()), || format!("{c:?}: {label}"))?;
    }
    Ok(())
}

fn sweep() -> Check {
    let start = Instant::now();
    let results = reproduce_many(TABLE_IDS);
    let took = start.elapsed();
    for r in results {
        let t = core(r)?;
        ensure(t.passed(), || format!("{} failed", t.id))?;
    }
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("T7 restriction spaces have dimensions 8 and 7", dimensions),
        ("eight relations among T7 restrictions", relations),
        ("42 Lie derivative entries on T7", actions),
        ("Hamiltonian fields act trivially", hamiltonian_triviality),
        ("T7 multiplicities and indices of isotropy", multiplicities),
        ("T7 invariant tuples", || table_passes("t7-invariants")),
        ("T8 invariant tables", || {
            table_passes("t8-invariants-1")?;
            table_passes("t8-invariants-2")
        }),
        ("A_k, D_k and E6 tables", simple_families),
        ("semigroup (3,7,11) invariants", semigroup),
        ("T7 classifier cross-validation", cross_validation),
        ("T7 geometric conditions", geometry),
        ("property suite", properties),
        ("full reproduce sweep under 5 minutes", sweep),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS {}: {name} ({:.1?})", i + 1, start.elapsed()),
            Err(e) => {
                println!("FAIL {}: {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
