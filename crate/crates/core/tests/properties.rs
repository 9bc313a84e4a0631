use std::sync::Arc;

use omegahom_core::algebra::{Algebra, CanonicalAction};
use omegahom_core::fixtures::{codiscrete, two_object_2cat, z4_to_z2};
use omegahom_core::globset::{check_rlp, solve_contraction, GlobMorphism, GlobSet, Hom};
use omegahom_core::lterm::{compose, interpret, normalize, Term, TermEnumerator, TermSampler, TerminalOperad, Terms};
use omegahom_core::pasting::{check_diagram, diagrams_of_shape, enumerate_diagrams, globe, Scheme};
use omegahom_core::suspension::{lower_scheme, suspend_diagram, suspend_scheme, suspend_term};
use omegahom_core::Truncation;
use proptest::prelude::*;

const N: Truncation = Truncation::DEFAULT;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(200)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn lowering_undoes_suspension(seed in any::<u64>(), k in 0usize..3) {
        let s = TermSampler::new(N, seed).scheme(k, 5);
        let up = suspend_scheme(N, &s).unwrap();
        prop_assert_eq!(up.dim(), k + 1);
        prop_assert_eq!(lower_scheme(&up).unwrap(), s);
    }

    #[test]
    fn boundaries_of_boundaries_agree(seed in any::<u64>(), k in 2usize..4) {
        let s = TermSampler::new(N, seed).scheme(k, 6);
        let b = s.boundary().unwrap();
        prop_assert_eq!(b.dim(), k - 1);
        prop_assert!(b.boundary().unwrap().dim() == k - 2);
    }

    #[test]
    fn sampled_terms_are_normal(seed in any::<u64>(), k in 0usize..4) {
        let t = TermSampler::new(N, seed).term(k, 24);
        prop_assert_eq!(t.dim(), k);
        prop_assert_eq!(normalize(N, &t.to_raw()).unwrap(), t.clone());
        prop_assert_eq!(&interpret(&t, &TerminalOperad).unwrap(), t.arity());
        let left = compose(&Term::unit(k), &globe(&Terms, k, &t).unwrap()).unwrap();
        prop_assert_eq!(left, t.clone());
    }

    #[test]
    fn suspension_commutes_with_arity_and_boundary(seed in any::<u64>(), k in 0usize..3) {
        let t = TermSampler::new(N, seed).term(k, 24);
        let st = suspend_term(N, &t).unwrap();
        prop_assert_eq!(st.arity(), &suspend_scheme(N, t.arity()).unwrap());
        if k == 0 {
            prop_assert_eq!(st.src().unwrap(), Term::unit(0));
            prop_assert_eq!(st.tgt().unwrap(), Term::unit(0));
        } else {
            prop_assert_eq!(st.src().unwrap(), suspend_term(N, &t.src().unwrap()).unwrap());
            prop_assert_eq!(st.tgt().unwrap(), suspend_term(N, &t.tgt().unwrap()).unwrap());
        }
    }

    #[test]
    fn suspension_preserves_composites(seed in any::<u64>(), k in 0usize..3) {
        let mut sampler = TermSampler::new(N, seed);
        let h = sampler.term(k, 14);
        let body = sampler.body(h.arity());
        let whole = compose(&h, &body).unwrap();
        let lifted_body = suspend_diagram(N, body.map(|_, l| suspend_term(N, l).unwrap()), Term::unit(0), Term::unit(0)).unwrap();
        let lifted = compose(&suspend_term(N, &h).unwrap(), &lifted_body).unwrap();
        prop_assert_eq!(suspend_term(N, &whole).unwrap(), lifted);
    }

    #[test]
    fn strict_functors_commute_with_evaluation(seed in any::<u64>(), k in 0usize..3, pick in any::<prop::sample::Index>()) {
        let f = z4_to_z2();
        let t = TermSampler::new(Truncation::new(2), seed).term(k, 16);
        let ds = diagrams_of_shape(&**f.dom.carrier(), t.arity());
        prop_assume!(!ds.is_empty());
        let d = pick.get(&ds);
        let dom = CanonicalAction::new(f.dom.clone());
        let cod = CanonicalAction::new(f.cod.clone());
        let image = d.map(|depth, &c| f.map.apply(depth, c));
        let lhs = f.map.apply(k, dom.eval(&t, d).unwrap());
        prop_assert_eq!(lhs, cod.eval(&t, &image).unwrap());
    }
}

#[test]
fn enumeration_counts_are_stable() {
    let expected: [[usize; 12]; 4] = [
        [1; 12],
        [1, 0, 0, 2, 6, 12, 22, 44, 92, 187, 373, 755],
        [1, 0, 0, 2, 1, 1, 9, 14, 24, 62, 126, 240],
        [1, 0, 0, 2, 1, 1, 9, 9, 13, 49, 80, 131],
    ];
    let mut en = TermEnumerator::new(N);
    for (k, row) in expected.iter().enumerate() {
        let got: Vec<usize> = (1..=12).map(|s| en.terms_exact(k, s).len()).collect();
        assert_eq!(&got[..], row, "dimension {k}");
    }
}

#[test]
fn suspended_hom_diagrams_live_in_the_ambient_set() {
    let c = two_object_2cat();
    let g = c.carrier().clone();
    let (x, y) = (g.find(0, "x").unwrap(), g.find(0, "y").unwrap());
    let hom = Hom::new(&g, x, y).unwrap();
    let mut seen = 0;
    for k in 0..=hom.set.max_dim() {
        for d in enumerate_diagrams(&*hom.set, k, 3) {
            let shape = d.shape();
            let up = suspend_diagram(N, d.map(|depth, &c| hom.lift(depth, c)), x, y).unwrap();
            assert_eq!(up.shape(), suspend_scheme(N, &shape).unwrap());
            check_diagram(&*g, &up).unwrap();
            seen += 1;
        }
    }
    assert!(seen > 20, "{seen}");
}

#[test]
fn contractions_exist_exactly_when_lifts_do() {
    let maps = [
        GlobMorphism::to_terminal(Arc::new(codiscrete(&["x", "y"], 2)), Truncation::new(2)).unwrap(),
        GlobMorphism::to_terminal(Arc::new(GlobSet::disc(N, 1).unwrap()), Truncation::new(1)).unwrap(),
        GlobMorphism::identity(Arc::new(GlobSet::sphere(N, 2).unwrap())),
    ];
    for r in &maps {
        let up_to = r.cod.max_dim();
        assert_eq!(check_rlp(r, up_to).is_ok(), solve_contraction(r).is_ok());
        if let Ok(c) = solve_contraction(r) {
            assert!(c.verify().is_ok());
        }
    }
}

#[test]
fn globes_have_globe_shape() {
    for k in 0..=3 {
        let t = TermSampler::new(N, k as u64).term(k, 10);
        assert_eq!(globe(&Terms, k, &t).unwrap().shape(), Scheme::globe(k));
    }
}
