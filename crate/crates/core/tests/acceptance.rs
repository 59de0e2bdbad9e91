//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are evaluated in full and reported as FAIL with
//! their diff; the process exits non-zero if any other criterion fails or if a known
//! failure starts passing.

mod common;

use num::Zero;
use parasym::extension::model::x_coordinates;
use parasym::extension::*;
use parasym::grading::GradedParabolic;
use parasym::kostant::{self, CurvatureComponent};
use parasym::linalg::{q, QMat, Q};
use parasym::rootsys::{Family, RootSystem};
use parasym::symsolve::scan::{self, ScanConfig};
use parasym::symsolve::{self, Point, RealForm};
use parasym::Error;
use std::collections::BTreeSet;
use std::time::Instant;

const KNOWN_FAILURES: &[u32] = &[6];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { ok: true, detail: summary }
    } else {
        Outcome { ok: false, detail: format!("{summary}\n    {}", failures.join("\n    ")) }
    }
}

/// Index of a 1-based label, primed for the second copy.
fn idx(label: &str, rank: usize) -> usize {
    match label.strip_suffix('\'') {
        Some(k) => k.parse::<usize>().unwrap() - 1 + rank,
        None => label.parse::<usize>().unwrap() - 1,
    }
}

fn grading(family: Family, rank: usize, form: RealForm, xi: &[&str]) -> GradedParabolic {
    let rs = symsolve::root_system(family, rank, form).unwrap();
    let mut x: Vec<usize> = xi.iter().map(|l| idx(l, rank)).collect();
    if rs.complex_as_real() {
        let c: Vec<usize> = x.iter().map(|&i| rs.conj(i)).collect();
        x.extend(c);
    }
    x.sort_unstable();
    x.dedup();
    GradedParabolic::new(rs, &x).unwrap()
}

fn labels(rs: &RootSystem, v: &[usize]) -> Vec<String> {
    v.iter().map(|&i| rs.label(i)).collect()
}

/// A sampled table row: grading, component, homogeneity and I_μ as printed.
struct Row {
    family: Family,
    rank: usize,
    form: RealForm,
    xi: &'static [&'static str],
    mu: (&'static str, &'static str),
    copy: Option<usize>,
    homog: &'static [i64],
    i_mu: &'static [&'static str],
}

const fn row(
    family: Family,
    rank: usize,
    xi: &'static [&'static str],
    mu: (&'static str, &'static str),
    homog: &'static [i64],
    i_mu: &'static [&'static str],
) -> Row {
    Row { family, rank, form: RealForm::Split, xi, mu, copy: None, homog, i_mu }
}

const fn mixed(
    family: Family,
    rank: usize,
    xi: &'static [&'static str],
    mu: (&'static str, &'static str),
    homog: &'static [i64],
    i_mu: &'static [&'static str],
) -> Row {
    Row { family, rank, form: RealForm::Complex, xi, mu, copy: Some(0), homog, i_mu }
}

use Family::{A, B, C, D, G2};

const ROWS: &[Row] = &[
    row(A, 4, &["1", "2"], ("1", "2"), &[2, 0], &[]),
    row(A, 4, &["1", "2"], ("2", "1"), &[1, 2], &["1"]),
    row(A, 4, &["1", "4"], ("1", "4"), &[1, 1], &[]),
    row(A, 7, &["1", "4"], ("1", "2"), &[2, -1], &["4"]),
    row(A, 7, &["1", "3"], ("1", "2"), &[2, -1], &[]),
    row(A, 5, &["2", "4"], ("2", "1"), &[2, -1], &["4"]),
    row(A, 5, &["1", "3"], ("1", "3"), &[1, 0], &[]),
    row(A, 5, &["2", "3"], ("3", "2"), &[0, 1], &["2"]),
    row(C, 2, &["1", "2"], ("1", "2"), &[3, 0], &[]),
    row(C, 4, &["1", "2"], ("2", "1"), &[1, 2], &["1"]),
    row(C, 5, &["1", "5"], ("1", "2"), &[2, -1], &["5"]),
    row(C, 4, &["1", "2"], ("1", "2"), &[2, -1], &[]),
    row(C, 4, &["3", "4"], ("3", "4"), &[1, 0], &[]),
    row(C, 4, &["1", "4"], ("1", "4"), &[1, 0], &[]),
    row(B, 3, &["1", "3"], ("3", "2"), &[-1, 3], &[]),
    row(B, 3, &["2", "3"], ("3", "2"), &[0, 3], &[]),
    row(B, 4, &["1", "2"], ("1", "2"), &[2, 0], &["2"]),
    row(B, 4, &["1", "2"], ("2", "1"), &[0, 1], &[]),
    row(D, 5, &["1", "5"], ("1", "2"), &[2, -1], &["5"]),
    row(D, 5, &["1", "2"], ("1", "2"), &[2, 0], &["2"]),
    row(G2, 2, &["1", "2"], ("1", "2"), &[4, 0], &[]),
    mixed(A, 5, &["2", "3", "2'", "3'"], ("3'", "2'"), &[-1, -1, 1, 2], &["2"]),
    mixed(A, 5, &["1", "3", "1'", "3'"], ("1", "3'"), &[1, -1, 0, 1], &[]),
    mixed(A, 5, &["1", "3", "1'", "3'"], ("1", "1'"), &[1, -1, 1, 0], &["3"]),
    mixed(C, 3, &["2", "3", "2'", "3'"], ("2'", "3'"), &[-2, -1, 3, 1], &[]),
    mixed(C, 3, &["1", "3", "1'", "3'"], ("1", "1'"), &[1, -1, 1, 0], &["3"]),
    mixed(A, 4, &["2", "2'"], ("2'", "3'"), &[-1, 2], &[]),
    mixed(C, 3, &["3", "3'"], ("3'", "2'"), &[-1, 2], &[]),
    mixed(B, 3, &["3", "3'"], ("3'", "2'"), &[-2, 3], &[]),
];

fn row_component(r: &Row) -> (GradedParabolic, CurvatureComponent) {
    let gp = grading(r.family, r.rank, r.form, r.xi);
    let (a, b) = (idx(r.mu.0, r.rank), idx(r.mu.1, r.rank));
    let copy = r.copy.unwrap_or_else(|| gp.rs().copy_of(a));
    let c = kostant::component(&gp, a, b, copy).unwrap();
    (gp, c)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut families = BTreeSet::new();
    for r in ROWS {
        let (gp, c) = row_component(r);
        families.insert(format!("{:?}", r.family));
        let h = kostant::homogeneity_tuple(&c, &gp);
        if h != r.homog {
            failures.push(format!("{} Ξ={:?} {}: {:?} != {:?}", gp.rs().algebra_name(), r.xi, c.label(gp.rs()), h, r.homog));
        }
    }
    let mixed = ROWS.iter().filter(|r| r.copy.is_some()).count();
    let el = t.elapsed();
    if ROWS.len() < 15 || families.len() < 5 || mixed == 0 {
        failures.push("sample does not span the required families".into());
    }
    if el.as_secs_f64() >= 1.0 {
        failures.push(format!("runtime {el:?} exceeds 1 s"));
    }
    outcome(failures, format!("{} rows over {:?}, {mixed} mixed, {el:.2?}", ROWS.len(), families))
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    for r in ROWS {
        let (gp, c) = row_component(r);
        let got = labels(gp.rs(), &kostant::restricted_i_mu(&c, &gp));
        if got != r.i_mu {
            failures.push(format!("{} Ξ={:?} {}: I_μ {:?} != {:?}", gp.rs().algebra_name(), r.xi, c.label(gp.rs()), got, r.i_mu));
        }
    }
    let gp = grading(A, 4, RealForm::Split, &["1", "2"]);
    let cs = kostant::harmonic_components(&gp, true);
    let find = |a, b| cs.iter().find(|c| (c.a, c.b) == (a, b)).cloned().unwrap();
    let (c12, c21) = (find(0, 1), find(1, 0));
    if !kostant::i_mu(&c12, &gp).is_empty() || kostant::i_mu(&c21, &gp) != vec![0] {
        failures.push("example I_μ values".into());
    }
    let psi = |v: Vec<CurvatureComponent>| kostant::psi(&v, &gp).unwrap().psi;
    let got = (psi(vec![c12.clone()]), psi(vec![c21.clone()]), psi(vec![c12, c21]));
    if got != (vec![1], vec![0], vec![]) {
        failures.push(format!("example Ψ values {got:?}"));
    }
    outcome(failures, format!("{} sampled I_μ entries and the rank-4 example", ROWS.len()))
}

fn sweep_families() -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    for f in [Family::A, Family::B, Family::C, Family::D, Family::BC] {
        for r in f.min_rank()..=8 {
            out.push((f, r));
        }
    }
    out.extend([(Family::G2, 2), (Family::E6, 6), (Family::E7, 7)]);
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..n {
        let grown: Vec<Vec<usize>> =
            out.iter().filter(|s| s.len() < k).map(|s| s.iter().copied().chain([i]).collect()).collect();
        out.extend(grown);
    }
    out.retain(|s| !s.is_empty());
    out
}

/// Calls `check` on every component over all families, rank ≤ 8, |Ξ| ≤ 3, split and complex.
fn sweep(mut check: impl FnMut(&GradedParabolic, &CurvatureComponent)) -> usize {
    let mut count = 0;
    for (family, rank) in sweep_families() {
        for form in [RealForm::Split, RealForm::Complex] {
            if family == Family::BC && form == RealForm::Complex {
                continue;
            }
            let rs = symsolve::root_system(family, rank, form).unwrap();
            for xi in subsets(rank, 3) {
                let mut x = xi.clone();
                if rs.complex_as_real() {
                    x.extend(xi.iter().map(|&i| rs.conj(i)));
                    x.sort_unstable();
                }
                let gp = GradedParabolic::new(rs.clone(), &x).unwrap();
                for c in kostant::harmonic_components(&gp, false) {
                    check(&gp, &c);
                    count += 1;
                }
            }
        }
    }
    count
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    let n = sweep(|gp, c| {
        if !kostant::dichotomy_holds(c, gp.rs()) {
            failures.push(format!("{} Ξ={:?} {}", gp.rs().algebra_name(), gp.xi_labels(), c.label(gp.rs())));
        }
    });
    let el = t.elapsed();
    if el.as_secs_f64() >= 30.0 {
        failures.push(format!("runtime {el:?} exceeds 30 s"));
    }
    outcome(failures, format!("{n} components, {el:.2?}"))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let n = sweep(|gp, c| {
        let (a, b) = (kostant::homogeneity_tuple(c, gp), kostant::lowvec_homogeneity(c, gp));
        if a != b {
            failures.push(format!("{} Ξ={:?} {}: {a:?} vs {b:?}", gp.rs().algebra_name(), gp.xi_labels(), c.label(gp.rs())));
        }
    });
    outcome(failures, format!("{n} components"))
}

/// A listed eigenvalue tuple: angles as fractions of a turn, optional real parameter direction.
struct Eig {
    turns: &'static [(i64, i64)],
    modulus: &'static [i64],
    m: &'static [&'static [i64]],
}

struct SymRow {
    family: Family,
    rank: usize,
    form: RealForm,
    xi: &'static [&'static str],
    mu: (&'static str, &'static str),
    eigs: &'static [Eig],
}

const NEG: (i64, i64) = (1, 2);
const ONE: (i64, i64) = (0, 1);

const SYM_ROWS: &[SymRow] = &[
    SymRow {
        family: A,
        rank: 4,
        form: RealForm::Split,
        xi: &["1", "2"],
        mu: ("1", "2"),
        eigs: &[
            Eig { turns: &[NEG, NEG], modulus: &[], m: &[&[1, 1, 0, 0]] },
            Eig { turns: &[NEG, ONE], modulus: &[], m: &[&[0, 1, 0, 0]] },
            Eig { turns: &[ONE, ONE], modulus: &[0, 1], m: &[&[1, 0, 0, 0]] },
            Eig { turns: &[NEG, ONE], modulus: &[0, 1], m: &[] },
        ],
    },
    SymRow {
        family: A,
        rank: 4,
        form: RealForm::Split,
        xi: &["1", "2"],
        mu: ("2", "1"),
        eigs: &[
            Eig { turns: &[ONE, NEG], modulus: &[], m: &[&[1, 0, 0, 0]] },
            Eig { turns: &[ONE, ONE], modulus: &[-2, 1], m: &[] },
        ],
    },
    SymRow {
        family: A,
        rank: 4,
        form: RealForm::Split,
        xi: &["1", "4"],
        mu: ("1", "4"),
        eigs: &[Eig { turns: &[ONE, ONE], modulus: &[1, -1], m: &[&[1, 1, 1, 1]] }],
    },
    SymRow {
        family: A,
        rank: 7,
        form: RealForm::Split,
        xi: &["1", "4"],
        mu: ("1", "2"),
        eigs: &[
            Eig { turns: &[NEG, ONE], modulus: &[], m: &[&[0, 0, 0, 1, 0, 0, 0]] },
            Eig { turns: &[ONE, ONE], modulus: &[1, 2], m: &[] },
        ],
    },
    SymRow {
        family: A,
        rank: 7,
        form: RealForm::Complex,
        xi: &["1", "4"],
        mu: ("1", "2"),
        eigs: &[Eig { turns: &[(1, 3), (2, 3), (-1, 3), (-2, 3)], modulus: &[], m: &[&[1, 1, 1, 1, 0, 0, 0]] }],
    },
    SymRow {
        family: C,
        rank: 2,
        form: RealForm::Complex,
        xi: &["1", "2"],
        mu: ("1", "2"),
        eigs: &[
            Eig { turns: &[(1, 3), ONE, (-1, 3), ONE], modulus: &[], m: &[&[0, 1]] },
            Eig { turns: &[(1, 3), (2, 3), (-1, 3), (-2, 3)], modulus: &[], m: &[&[1, 1]] },
            Eig { turns: &[(1, 3), (1, 3), (-1, 3), (-1, 3)], modulus: &[], m: &[&[2, 1]] },
        ],
    },
    SymRow {
        family: C,
        rank: 2,
        form: RealForm::Split,
        xi: &["1", "2"],
        mu: ("1", "2"),
        eigs: &[Eig { turns: &[ONE, ONE], modulus: &[0, 1], m: &[&[1, 0]] }],
    },
    SymRow {
        family: C,
        rank: 4,
        form: RealForm::Split,
        xi: &["1", "2"],
        mu: ("2", "1"),
        eigs: &[Eig { turns: &[ONE, NEG], modulus: &[], m: &[&[1, 0, 0, 0], &[0, 2, 2, 1], &[1, 2, 2, 1], &[2, 2, 2, 1]] }],
    },
    SymRow {
        family: C,
        rank: 4,
        form: RealForm::Split,
        xi: &["1"],
        mu: ("1", "2"),
        eigs: &[Eig { turns: &[NEG], modulus: &[], m: &[&[2, 2, 2, 1]] }],
    },
    SymRow {
        family: G2,
        rank: 2,
        form: RealForm::Split,
        xi: &["1"],
        mu: ("1", "2"),
        eigs: &[Eig { turns: &[NEG], modulus: &[], m: &[&[2, 1]] }],
    },
    SymRow {
        family: G2,
        rank: 2,
        form: RealForm::Split,
        xi: &["1", "2"],
        mu: ("1", "2"),
        eigs: &[
            Eig { turns: &[NEG, ONE], modulus: &[], m: &[&[0, 1], &[2, 1]] },
            Eig { turns: &[ONE, NEG], modulus: &[], m: &[&[1, 0], &[3, 2]] },
            Eig { turns: &[NEG, NEG], modulus: &[], m: &[&[1, 1], &[3, 1]] },
            Eig { turns: &[ONE, ONE], modulus: &[0, 1], m: &[&[1, 0]] },
        ],
    },
    SymRow {
        family: G2,
        rank: 2,
        form: RealForm::Complex,
        xi: &["1", "2"],
        mu: ("1", "2"),
        eigs: &[
            Eig { turns: &[(1, 4), ONE, (-1, 4), ONE], modulus: &[], m: &[&[0, 1]] },
        ],
    },
    SymRow {
        family: B,
        rank: 3,
        form: RealForm::Split,
        xi: &["2", "3"],
        mu: ("3", "2"),
        eigs: &[
            Eig { turns: &[NEG, ONE], modulus: &[], m: &[&[0, 0, 1], &[1, 2, 2]] },
            Eig { turns: &[ONE, ONE], modulus: &[1, 0], m: &[&[0, 0, 1]] },
        ],
    },
    SymRow {
        family: B,
        rank: 3,
        form: RealForm::Complex,
        xi: &["1", "3"],
        mu: ("3", "2"),
        eigs: &[
            Eig { turns: &[ONE, (1, 3), ONE, (-1, 3)], modulus: &[], m: &[&[1, 0, 0]] },
            Eig { turns: &[(3, 4), (1, 4), (-3, 4), (-1, 4)], modulus: &[], m: &[&[1, 1, 1]] },
        ],
    },
    SymRow {
        family: D,
        rank: 5,
        form: RealForm::Split,
        xi: &["1", "2"],
        mu: ("1", "2"),
        eigs: &[
            Eig { turns: &[ONE, NEG], modulus: &[], m: &[&[1, 0, 0, 0, 0], &[1, 2, 2, 1, 1]] },
            Eig { turns: &[NEG, ONE], modulus: &[], m: &[&[0, 1, 0, 0, 0]] },
            Eig { turns: &[NEG, NEG], modulus: &[], m: &[&[1, 1, 0, 0, 0]] },
        ],
    },
];

fn point(e: &Eig) -> Point {
    let mut p = Point::torsion(e.turns);
    if !e.modulus.is_empty() {
        let full: Vec<i64> = e.modulus.iter().chain(if e.turns.len() > e.modulus.len() { e.modulus } else { &[] }).copied().collect();
        p = p.with_modulus(&full);
    }
    p
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut tuples = 0;
    for r in SYM_ROWS {
        let gp = grading(r.family, r.rank, r.form, r.xi);
        let rs = gp.rs();
        let (a, b) = (idx(r.mu.0, r.rank), idx(r.mu.1, r.rank));
        let c = kostant::component(&gp, a, b, rs.copy_of(a)).unwrap();
        let full = scan::with_conjugates(std::slice::from_ref(&c), &gp).unwrap();
        let cs = symsolve::constraint_system(&full, &gp, r.form).unwrap();
        let families = symsolve::solve_symmetries(&cs).unwrap();
        for e in r.eigs {
            tuples += 1;
            let case = format!("{} Ξ={:?} {} turns {:?}", rs.algebra_name(), r.xi, c.label(rs), e.turns);
            let p = point(e);
            if !cs.satisfied_by(&p) {
                failures.push(format!("{case}: tuple violates the constraint system"));
                continue;
            }
            let mut want: BTreeSet<String> = BTreeSet::new();
            for root in e.m {
                let mut v = root.to_vec();
                v.resize(rs.n(), 0);
                want.insert(rs.root_string(&gp.module_of(&v).unwrap().label, false));
                if rs.complex_as_real() {
                    let mut w = vec![0; rs.rank()];
                    w.extend(root.iter());
                    want.insert(rs.root_string(&gp.module_of(&w).unwrap().label, false));
                }
            }
            let fixed = cs.fixed_at(&p);
            let at_point: BTreeSet<String> =
                cs.modules.iter().filter(|m| fixed.contains(&m.degree)).map(|m| m.label.clone()).collect();
            if at_point != want {
                failures.push(format!("{case}: fixed modules {at_point:?} != {want:?}"));
            }
            let by_family = families.iter().any(|f| {
                f.contains(&p) && symsolve::fixed_modules(f).into_iter().collect::<BTreeSet<_>>() == want
            });
            if !by_family {
                failures.push(format!("{case}: no family through the tuple has m = {want:?}"));
            }
        }
    }
    outcome(failures, format!("{} cases, {tuples} eigenvalue tuples", SYM_ROWS.len()))
}

type CaseKey = (String, BTreeSet<String>, BTreeSet<String>);

fn comp(a: &str, b: &str) -> String {
    format!("(α{a},α{b})")
}

fn key(alg: &str, xi: &[String], cs: &[String]) -> CaseKey {
    (alg.to_string(), xi.iter().cloned().collect(), cs.iter().cloned().collect())
}

/// The table rows instantiated for rank ≤ 8, as (algebra, Ξ labels, component labels).
fn table_rows() -> Vec<(String, Vec<String>, Vec<String>)> {
    let both = |l: &[usize]| -> Vec<String> {
        l.iter().map(|x| x.to_string()).chain(l.iter().map(|x| format!("{x}'"))).collect()
    };
    let mut rows = Vec::new();
    for n in 2..=8usize {
        let alg = format!("sl({})", n + 1);
        let cx = format!("{alg},C");
        let (ns, nm1, np) = (n.to_string(), (n - 1).to_string(), format!("{n}'"));
        rows.push((alg.clone(), vec!["1".into(), ns.clone()], vec![comp("1", &ns)]));
        rows.push((cx.clone(), both(&[1, n]), vec![comp("1", &ns)]));
        if n >= 3 {
            rows.push((cx.clone(), both(&[1, n]), vec![comp("1", "2"), comp(&ns, &nm1)]));
            rows.push((cx.clone(), both(&[1, n]), vec![comp("1", &np), comp(&ns, "1'")]));
            rows.push((cx.clone(), both(&[1, n]), vec![comp("1", &np), comp("1", "2")]));
            rows.push((cx.clone(), both(&[1, n]), vec![comp(&ns, &nm1), comp(&ns, "1'")]));
        }
        for pair in [
            [comp("1", "2"), comp("2", "1")],
            [comp("1", "2"), comp("1", "2'")],
            [comp("1", "2"), comp("2'", "1'") + "@0"],
            [comp("1", "2"), comp("1'", "2'") + "@0"],
            [comp("2", "1"), comp("1", "2'")],
            [comp("2", "1"), comp("1'", "2'") + "@0"],
        ] {
            rows.push((cx.clone(), both(&[1, 2]), pair.to_vec()));
        }
        for p in 3..n {
            rows.push((cx.clone(), both(&[1, p]), vec![comp("1", "2"), comp("1", &format!("{p}'"))]));
        }
        if n >= 4 {
            rows.push((cx.clone(), both(&[2, n - 1]), vec![comp("2", "1"), comp(&nm1, &ns)]));
        }
        if n >= 3 {
            rows.push((cx.clone(), both(&[1, 2, n]), vec![comp("1", "2"), comp("2", "1"), comp("1", &ns)]));
        }
    }
    for n in 2..=8usize {
        let cx = format!("sp({}),C", 2 * n);
        if n == 2 {
            rows.push((cx.clone(), both(&[1, 2]), vec![comp("1", "2"), comp("1'", "2'") + "@0"]));
            rows.push((cx.clone(), both(&[1, 2]), vec![comp("1", "2"), comp("1", "2'")]));
            rows.push((cx.clone(), both(&[1, 2]), vec![comp("1'", "2'") + "@0", comp("1", "2'")]));
        }
        rows.push((cx, both(&[1, 2]), vec![comp("1", "2"), comp("2", "1")]));
    }
    rows.push(("so(7)".into(), vec!["1".into(), "3".into()], vec![comp("3", "2")]));
    rows
}

/// Image of a case under the diagram flip of type A.
fn flip(k: &CaseKey) -> CaseKey {
    let (alg, xi, cs) = k;
    if !alg.starts_with("sl(") {
        return k.clone();
    }
    let n: usize = alg[3..].split(')').next().unwrap().parse::<usize>().unwrap() - 1;
    let f = |s: &str| -> String {
        let primed = s.ends_with('\'');
        let v: usize = s.trim_end_matches('\'').parse().unwrap();
        format!("{}{}", n + 1 - v, if primed { "'" } else { "" })
    };
    let fc = |c: &String| -> String {
        let (body, tail) = match c.split_once('@') {
            Some((b, t)) => (b, format!("@{t}")),
            None => (c.as_str(), String::new()),
        };
        let inner = body.trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner.split_once(',').unwrap();
        format!("{}{tail}", comp(&f(a.trim_start_matches('α')), &f(b.trim_start_matches('α'))))
    };
    (alg.clone(), xi.iter().map(|s| f(s)).collect(), cs.iter().map(fc).collect())
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let cases = scan::lambda_full_table(&ScanConfig::new(8, 3, 3)).unwrap();
    let found: BTreeSet<CaseKey> = cases
        .iter()
        .filter(|c| !c.indecomposable)
        .filter(|c| matches!(c.form, RealForm::Split | RealForm::Complex))
        .map(|c| key(&c.algebra, &c.xi_labels, &c.component_labels))
        .collect();
    let rows: BTreeSet<CaseKey> = table_rows().iter().map(|(a, x, c)| key(a, x, c)).collect();
    let missing: Vec<&CaseKey> = rows.iter().filter(|r| !found.contains(r) && !found.contains(&flip(r))).collect();
    let extras: Vec<&CaseKey> = found.iter().filter(|c| !rows.contains(c) && !rows.contains(&flip(c))).collect();
    let mut failures = Vec::new();
    for m in &missing {
        failures.push(format!("missing {} Ξ={:?} {:?}", m.0, m.1, m.2));
    }
    for e in extras.iter().take(25) {
        failures.push(format!("extra {} Ξ={:?} {:?}", e.0, e.1, e.2));
    }
    if extras.len() > 25 {
        failures.push(format!("... {} more extras", extras.len() - 25));
    }
    outcome(
        failures,
        format!("{} table rows, {} scanned cases, {} missing, {} extra, {:.2?}", rows.len(), found.len(), missing.len(), extras.len(), t.elapsed()),
    )
}

/// The displayed curvature as a 6x6 matrix in the coordinates `X`, `Y`.
fn displayed_curvature(x: &[i64; 18], y: &[i64; 18]) -> QMat {
    let w = |a: usize, b: usize| x[a] * y[b] - x[b] * y[a];
    let mut m = vec![vec![q(0); 6]; 6];
    m[2][1] = q(w(1, 9));
    m[3][1] = q(-w(5, 9));
    m[4][1] = q(w(3, 9));
    m[5][1] = q(-2 * w(3, 9) - (x[7] - x[3]) * y[9] + x[9] * (y[7] - y[3]));
    m
}

fn to_x(v: &[Q]) -> Vec<Q> {
    let mut x = vec![Q::zero(); 18];
    for (i, c) in v.iter().enumerate() {
        for (j, &b) in x_coordinates(i).iter().enumerate() {
            x[j] += c * q(b);
        }
    }
    x
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let mut f = Vec::new();
    let path = format!("{}/../../fixtures/appendixB.json", env!("CARGO_MANIFEST_DIR"));
    let e = match load_extension(&path) {
        Ok(e) => e,
        Err(err) => return outcome(vec![format!("load: {err}")], String::new()),
    };
    if !validate_extension(&e).ok() {
        f.push("validation fails".into());
    }
    for i in 0..17 {
        for j in 0..17 {
            let want = e.g.from_matrix(&displayed_curvature(&x_coordinates(i), &x_coordinates(j))).unwrap();
            if kappa(&e, &e.unit(i), &e.unit(j)) != want {
                f.push(format!("curvature differs on ({}, {})", e.k.names[i], e.k.names[j]));
            }
        }
    }
    let t_c = curvature(&e).unwrap();
    let hr = harmonic_decompose(&t_c, &e.g).unwrap();
    if !(hr.is_regular && hr.is_normal) {
        f.push("not regular and normal".into());
    }
    let slots: Vec<_> = hr.entries.iter().map(|en| (en.slot.clone(), en.labels.clone())).collect();
    let bold = (("E21".to_string(), "E51".to_string(), "E62".to_string()), vec!["(α1,α2)".to_string()]);
    if slots != vec![bold] {
        f.push(format!("harmonic support {slots:?}"));
    }
    let sd = symmetry_data_with(&e, &hr).unwrap();
    if !sd.phi.is_empty() || sd.theta != vec![4] || sd.lambda != vec![0, 1] {
        f.push(format!("Φ={:?} Θ={:?} Λ={:?}", sd.phi, sd.theta, sd.lambda));
    }
    match reduce_geometry(&e, &[0, 1]) {
        Ok(r) if r.congruent => {}
        other => f.push(format!("reduce {{1,2}}: {:?}", other.map(|r| r.congruent).err())),
    }
    match reduce_geometry(&e, &[0, 1, 4]) {
        Err(Error::Reduction { .. }) => {}
        other => f.push(format!("reduce {{1,2,5}} should fail with a witness: {:?}", other.map(|r| r.congruent))),
    }
    // Free parameters of the displayed families L_2, L_5, L_{2,5}, with identified entries.
    type Display<'a> = (&'a [usize], &'a [usize], &'a [(usize, usize)]);
    let families: [Display; 3] = [
        (&[1], &[2, 4, 6, 8, 10, 11, 13, 14, 15, 17], &[(4, 8), (13, 17)]),
        (&[4], &[10, 11, 12, 13, 14, 15, 16, 17], &[]),
        (&[1, 4], &[2, 4, 6, 8, 10, 11, 12, 13, 14, 15, 16, 17], &[]),
    ];
    let mut dims = Vec::new();
    for (psi1, free, tied) in families {
        let tw = twistor_subalgebra(&e, psi1, None).unwrap();
        dims.push(tw.l_basis.len());
        if !tw.closed {
            f.push(format!("l for {psi1:?} not closed"));
        }
        if tw.l_basis.len() != free.len() - tied.len() {
            f.push(format!("dim l for {psi1:?} is {}, displayed family has {}", tw.l_basis.len(), free.len() - tied.len()));
        }
        for v in &tw.l_basis {
            let x = to_x(v);
            if (1..=17).any(|i| !free.contains(&i) && !x[i].is_zero()) || tied.iter().any(|&(a, b)| x[a] != x[b]) {
                f.push(format!("l for {psi1:?} leaves the displayed family"));
            }
        }
    }
    let tw = twistor_subalgebra(&e, &[0, 4], Some(&[q(1), q(-1), q(1)])).unwrap();
    if tw.symmetric_pair != Some(true) {
        f.push("[m_k, m_k] not in l_{1,5}".into());
    }
    let el = t.elapsed();
    if el.as_secs_f64() >= 10.0 {
        f.push(format!("runtime {el:?} exceeds 10 s"));
    }
    outcome(f, format!("twistor dims {dims:?}, symmetric pair dim l {}, {el:.2?}", tw.l_basis.len()))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let failures = common::cohomology_suite(100, 0x5eed);
    outcome(failures, format!("100 trials, {:.2?}", t.elapsed()))
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let cases = scan::twistor_scan(&ScanConfig::new(8, 4, 1)).unwrap();
    let mut failures = Vec::new();
    let mut seen: BTreeSet<(Family, RealForm, usize, Vec<usize>)> = BTreeSet::new();
    for c in &cases {
        let l = &c.case;
        let n = l.rank;
        let first = |v: &[usize]| -> Vec<usize> { v.iter().copied().filter(|&i| i < n).collect() };
        let (xi, psi1) = (first(&l.xi), first(&c.psi1));
        let mirror = |v: &[usize]| -> Vec<usize> {
            let mut m: Vec<usize> = v.iter().map(|&i| n - 1 - i).collect();
            m.sort_unstable();
            m
        };
        let sl = |xi: &[usize], psi1: &[usize]| xi.len() == 4 && xi[0] == 0 && xi[1] == 1 && psi1 == [0];
        let ok = match l.family {
            Family::A if sl(&xi, &psi1) => {
                seen.insert((Family::A, l.form, n, xi.clone()));
                true
            }
            Family::A if sl(&mirror(&xi), &mirror(&psi1)) => {
                seen.insert((Family::A, l.form, n, mirror(&xi)));
                true
            }
            Family::C if xi.len() == 3 && xi[0] == 0 && xi[1] == 1 && xi[2] < n - 1 && psi1 == [0] => {
                seen.insert((Family::C, l.form, n, xi.clone()));
                true
            }
            _ => false,
        };
        if !ok {
            failures.push(format!("unexpected {} Ξ={:?} Ψ(1)={:?} {:?}", l.algebra, l.xi_labels, c.psi1_labels, l.component_labels));
        }
    }
    let mut expected = 0;
    for form in [RealForm::Split, RealForm::Complex] {
        for n in 4..=8usize {
            for p in 2..n {
                for q in p + 1..n {
                    expected += 1;
                    if !seen.contains(&(Family::A, form, n, vec![0, 1, p, q])) {
                        failures.push(format!("missing sl rank {n} {form} Ξ={{1,2,{},{}}}", p + 1, q + 1));
                    }
                }
            }
        }
        for n in 4..=8usize {
            for p in 2..n - 1 {
                expected += 1;
                if !seen.contains(&(Family::C, form, n, vec![0, 1, p])) {
                    failures.push(format!("missing sp rank {n} {form} Ξ={{1,2,{}}}", p + 1));
                }
            }
        }
    }
    outcome(failures, format!("{} flagged cases, {expected} pattern instances, {:.2?}", cases.len(), t.elapsed()))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (n, run) in criteria {
        let o = run();
        let known = KNOWN_FAILURES.contains(&n);
        let tag = if o.ok { "PASS" } else { "FAIL" };
        let note = if known && !o.ok { " (known failure, see decisions ledger)" } else { "" };
        println!("criterion {n}: {tag}{note} - {}", o.detail);
        if o.ok == known {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
