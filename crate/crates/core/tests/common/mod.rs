#![allow(dead_code)]

use parasym::extension::algebra::GModel;
use parasym::extension::cochain::{brute_force_projection, tuples, Cochain, Complex};
use parasym::linalg::{qf, Q};
use parasym::rootsys::Root;
use rand::Rng;
use std::collections::BTreeSet;

pub fn random_rational(rng: &mut impl Rng) -> Q {
    qf(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Harmonic 2-cochains of `cx`, block by block.
pub fn harmonic_basis(cx: &Complex) -> Vec<Cochain> {
    let weights: BTreeSet<Root> =
        tuples(cx.n(), 2).into_iter().flat_map(|i| (0..cx.g.dim()).map(move |c| (i.clone(), c))).map(|k| cx.weight(&k)).collect();
    let mut out = Vec::new();
    for w in weights {
        let b = cx.weight_block(2, &w).unwrap();
        for h in b.harmonic {
            out.push(b.keys.iter().cloned().zip(h).filter(|(_, x)| x != &Q::from_integer(0.into())).collect());
        }
    }
    out
}

/// A random coclosed 2-cochain: harmonic part plus `∂*` of a random 3-cochain.
pub fn random_normal_cochain(cx: &Complex, harmonic: &[Cochain], rng: &mut impl Rng) -> Cochain {
    let mut three = Cochain::new();
    let triples = tuples(cx.n(), 3);
    for _ in 0..4 {
        let t = triples[rng.gen_range(0..triples.len())].clone();
        three.insert((t, rng.gen_range(0..cx.g.dim())), random_rational(rng));
    }
    let mut out = cx.codifferential(&three);
    for h in harmonic {
        let r = random_rational(rng);
        for (k, x) in h {
            let e = out.entry(k.clone()).or_insert_with(|| Q::from_integer(0.into()));
            *e += &r * x;
        }
    }
    out.retain(|_, x| *x != Q::from_integer(0.into()));
    out
}

/// Checks the cohomology properties on `sl(3)`, `Ξ = {1, 2}`; returns failure messages.
pub fn cohomology_suite(trials: usize, seed: u64) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let g = GModel::sl(2, &[0, 1]).unwrap();
    let cx = Complex::new(&g).unwrap();
    let harmonic = harmonic_basis(&cx);
    let mut failures = Vec::new();
    if harmonic.len() != 2 {
        failures.push(format!("expected two harmonic 2-cochains, found {}", harmonic.len()));
    }
    let n = cx.n();
    for trial in 0..trials {
        let mut any = Cochain::new();
        for k in 1..=3usize {
            let ts = tuples(n, k);
            for _ in 0..3 {
                any.insert((ts[rng.gen_range(0..ts.len())].clone(), rng.gen_range(0..g.dim())), random_rational(&mut rng));
            }
        }
        for deg in 1..=3usize {
            let part: Cochain = any.iter().filter(|(k, _)| k.0.len() == deg).map(|(k, x)| (k.clone(), x.clone())).collect();
            if !cx.differential(&cx.differential(&part)).is_empty() {
                failures.push(format!("trial {trial}: ∂∂ != 0 in degree {deg}"));
            }
            if deg >= 2 && !cx.codifferential(&cx.codifferential(&part)).is_empty() {
                failures.push(format!("trial {trial}: ∂*∂* != 0 in degree {deg}"));
            }
        }
        let t = random_normal_cochain(&cx, &harmonic, &mut rng);
        if !cx.codifferential(&t).is_empty() {
            failures.push(format!("trial {trial}: generated cochain is not normal"));
        }
        let p = cx.harmonic_projection(&t).unwrap();
        if cx.harmonic_projection(&p).unwrap() != p {
            failures.push(format!("trial {trial}: projector is not idempotent"));
        }
        if !cx.codifferential(&p).is_empty() || !cx.differential(&p).is_empty() {
            failures.push(format!("trial {trial}: projection is not harmonic"));
        }
        if brute_force_projection(&cx, 2, &t).unwrap() != p {
            failures.push(format!("trial {trial}: brute-force projection differs"));
        }
    }
    failures
}
