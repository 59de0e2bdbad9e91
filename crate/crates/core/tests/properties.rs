use num::One;
use parasym::emit::{self, Format, ModuleRecord, Record, Table};
use parasym::grading::GradedParabolic;
use parasym::kostant;
use parasym::rootsys::{Family, RootSystem};
use parasym::snf;
use parasym::symsolve::{self, ConstraintSystem, Domain, ModuleChar, Point, RealForm, SymmetryFamily};
use proptest::prelude::*;
use std::collections::{BTreeSet, HashSet};

const CASES: &[(Family, usize)] = &[
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 5),
    (Family::B, 3),
    (Family::B, 4),
    (Family::C, 2),
    (Family::C, 4),
    (Family::D, 4),
    (Family::D, 5),
    (Family::BC, 3),
    (Family::G2, 2),
    (Family::E6, 6),
    (Family::E7, 7),
];

fn root_system() -> impl Strategy<Value = RootSystem> {
    (0..CASES.len(), any::<bool>())
        .prop_filter_map("no doubled BC", |(k, c)| {
            let (f, r) = CASES[k];
            (!(c && f == Family::BC)).then(|| RootSystem::new(f, r, c).unwrap())
        })
}

/// A root system with a nonempty Ξ closed under conjugation.
fn graded() -> impl Strategy<Value = GradedParabolic> {
    (root_system(), any::<u8>()).prop_map(|(rs, mask)| {
        let r = rs.rank();
        let mut xi: Vec<usize> = (0..r).filter(|i| mask >> (i % 8) & 1 == 1).take(3).collect();
        if xi.is_empty() {
            xi.push(usize::from(mask) % r);
        }
        if rs.complex_as_real() {
            let c: Vec<usize> = xi.iter().map(|&i| rs.conj(i)).collect();
            xi.extend(c);
            xi.sort_unstable();
        }
        GradedParabolic::new(rs, &xi).unwrap()
    })
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn point_of(f: &SymmetryFamily) -> Point {
    Point { modulus: f.modulus.clone(), angle: f.angle.clone(), constant: f.base.clone() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cartan_axioms(rs in root_system()) {
        let a = rs.cartan();
        for i in 0..rs.n() {
            prop_assert_eq!(a[i][i], 2);
            for j in 0..rs.n() {
                if i != j {
                    prop_assert!(a[i][j] <= 0);
                    prop_assert_eq!(a[i][j] == 0, a[j][i] == 0);
                }
                prop_assert_eq!(a[rs.conj(i)][rs.conj(j)], a[i][j]);
            }
            prop_assert_eq!(rs.conj(rs.conj(i)), i);
        }
    }

    #[test]
    fn weyl_closure(rs in root_system()) {
        for b in rs.positive_roots() {
            for i in 0..rs.n() {
                prop_assert!(rs.is_root(&rs.reflect_root(b, i)), "s_{} {:?}", i, b);
            }
        }
    }

    #[test]
    fn rho_is_half_the_positive_sum(rs in root_system()) {
        let mut sum = vec![0i64; rs.n()];
        for b in rs.positive_roots() {
            sum = add(&sum, b);
        }
        let half: Vec<_> = sum.iter().map(|&s| num::rational::Ratio::new(s, 2)).collect();
        // BC is non-reduced: the half sum there is not the sum of fundamental weights.
        if rs.family() != Family::BC {
            prop_assert_eq!(rs.weight_to_root(&rs.rho()), half);
        }
        for i in 0..rs.n() {
            prop_assert!(rs.pairing(&rs.rho(), i).unwrap().is_one());
        }
    }

    #[test]
    fn basis_conversion_round_trips(rs in root_system(), v in proptest::collection::vec(-5i64..=5, 14)) {
        let r = &v[..rs.n()];
        let back = rs.weight_to_root(&rs.root_to_weight(r));
        prop_assert!(back.iter().zip(r).all(|(x, &y)| x.is_integer() && x.to_integer() == y));
    }

    #[test]
    fn highest_root_is_the_unique_maximal_root(rs in root_system()) {
        for copy in 0..rs.copies() {
            let maximal: Vec<&Vec<i64>> = rs
                .positive_roots()
                .iter()
                .filter(|b| (0..rs.n()).filter(|&i| b[i] != 0).all(|i| rs.copy_of(i) == copy))
                .filter(|b| (0..rs.n()).all(|i| !rs.is_root(&add(b, &rs.simple_root(i)))))
                .collect();
            prop_assert_eq!(maximal, vec![rs.highest_root(copy)]);
        }
    }

    #[test]
    fn modules_partition_the_graded_roots(gp in graded()) {
        let rs = gp.rs();
        let mut seen = HashSet::new();
        for m in gp.modules().iter().filter(|m| m.height != 0) {
            for b in &m.members {
                prop_assert!(seen.insert(b.clone()), "{:?} in two modules", b);
                prop_assert_eq!(gp.xi_degree(b), m.xi_degree.clone());
            }
        }
        let graded: HashSet<Vec<i64>> = rs.roots().into_iter().filter(|b| gp.height(b) != 0).collect();
        prop_assert_eq!(seen, graded);
    }

    #[test]
    fn modules_are_closed_and_connected(gp in graded()) {
        let rs = gp.rs();
        let level: Vec<Vec<i64>> = rs.roots().into_iter().filter(|b| gp.height(b) == 0).collect();
        for m in gp.modules() {
            let members: HashSet<&Vec<i64>> = m.members.iter().collect();
            for b in &m.members {
                for g in &level {
                    let s = add(b, g);
                    if rs.is_root(&s) {
                        prop_assert!(members.contains(&s));
                    }
                }
            }
            let mut reached = HashSet::from([m.members[0].clone()]);
            let mut stack = vec![m.members[0].clone()];
            while let Some(b) = stack.pop() {
                for g in &level {
                    for s in [add(&b, g), sub(&b, g)] {
                        if members.contains(&s) && reached.insert(s.clone()) {
                            stack.push(s);
                        }
                    }
                }
            }
            prop_assert_eq!(reached.len(), members.len());
        }
    }

    #[test]
    fn heights_are_additive(gp in graded()) {
        let rs = gp.rs();
        let roots = rs.roots();
        for i in 0..rs.n() {
            prop_assert_eq!(gp.height(&rs.simple_root(i)), i64::from(gp.in_xi(i)));
        }
        for a in &roots {
            for b in rs.positive_roots() {
                let s = add(a, b);
                if rs.is_root(&s) {
                    prop_assert_eq!(gp.height(&s), gp.height(a) + gp.height(b));
                }
            }
        }
        let k = (0..rs.copies())
            .map(|c| gp.xi().iter().map(|&i| rs.highest_root(c)[i]).sum::<i64>())
            .max()
            .unwrap();
        prop_assert_eq!(gp.depth(), k);
    }

    #[test]
    fn components_avoid_their_own_root(gp in graded()) {
        let rs = gp.rs();
        let cs = kostant::harmonic_components(&gp, false);
        for c in &cs {
            prop_assert!(!kostant::i_mu(c, &gp).contains(&c.a));
            prop_assert!(kostant::dichotomy_holds(c, rs));
            prop_assert_eq!(kostant::homogeneity_tuple(c, &gp), kostant::lowvec_homogeneity(c, &gp));
        }
        if !cs.is_empty() {
            let w: Vec<_> = cs
                .iter()
                .map(|c| rs.affine_action(&[c.b, c.a], &rs.highest_root_weight(c.copy)).unwrap())
                .collect();
            let want: Vec<usize> =
                gp.xi().iter().copied().filter(|&i| w.iter().all(|w| w.fw[i] >= num::Zero::zero())).collect();
            prop_assert_eq!(kostant::psi(&cs, &gp).unwrap().psi, want);
        }
    }

    #[test]
    fn families_solve_their_system(gp in graded(), pick in any::<u8>()) {
        let cs = kostant::harmonic_components(&gp, true);
        prop_assume!(!cs.is_empty());
        let c = &cs[usize::from(pick) % cs.len()];
        let rf = if gp.rs().complex_as_real() { RealForm::Complex } else { RealForm::Split };
        let full = symsolve::scan::with_conjugates(std::slice::from_ref(c), &gp).unwrap();
        let system = symsolve::constraint_system(&full, &gp, rf).unwrap();
        let families = symsolve::solve_symmetries(&system).unwrap();
        prop_assert!(!families.is_empty());
        for (row, c) in system.rows.iter().zip(&full) {
            prop_assert_eq!(row, &kostant::homogeneity_tuple(c, &gp));
        }
        for f in &families {
            let p = point_of(f);
            prop_assert!(system.satisfied_by(&p));
            prop_assert!(f.contains(&p));
            let fixed: BTreeSet<Vec<i64>> = system.fixed_at(&p).into_iter().collect();
            prop_assert_eq!(fixed, f.fixed.iter().cloned().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn smith_form_verifies(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 0..5)) {
        let s = snf::smith(&rows, 4).unwrap();
        prop_assert!(s.verify(&rows));
        for k in s.kernel_basis() {
            prop_assert!(rows.iter().all(|r| r.iter().zip(&k).map(|(a, b)| a * b).sum::<i64>() == 0));
        }
    }

    #[test]
    fn extra_rows_never_enlarge_families(
        rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..3),
        extra in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let modules: Vec<ModuleChar> = (0..3)
            .map(|i| ModuleChar { label: format!("α{}", i + 1), degree: (0..3).map(|k| i64::from(k == i)).collect() })
            .collect();
        let base = ConstraintSystem::from_rows(rows.clone(), vec![Domain::Free; 3], modules.clone());
        let mut more = rows;
        more.push(extra);
        let bigger = ConstraintSystem::from_rows(more, vec![Domain::Free; 3], modules);
        let coarse = symsolve::solve_symmetries(&base).unwrap();
        for f in symsolve::solve_symmetries(&bigger).unwrap() {
            let p = point_of(&f);
            prop_assert!(base.satisfied_by(&p));
            prop_assert!(coarse.iter().any(|g| g.contains(&p) && g.dim() >= f.dim()));
        }
    }

    #[test]
    fn json_output_round_trips(gp in graded()) {
        let rows: Vec<Record> = gp.plus_modules().into_iter().map(|m| Record::Module(ModuleRecord::new(m, &gp))).collect();
        let t = Table::new("module", rows).unwrap();
        let text = emit::emit_table(&t, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&v, &emit::table_value(&t));
        let cols: Vec<&str> = v["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        for r in v["rows"].as_array().unwrap() {
            prop_assert_eq!(r.as_object().unwrap().keys().count(), cols.len());
        }
        prop_assert_eq!(text.clone(), emit::emit_table(&t, Format::Json).unwrap());
    }
}
