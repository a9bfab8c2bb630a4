mod common;

use std::sync::Arc;

use proptest::prelude::*;

use fuzznorm::connective::{
    construct_nullnorm, construct_uninorm_max, construct_uninorm_min, dualize, power_iterate,
    Connective, TConormFamily, TNormFamily,
};
use fuzznorm::engine::{
    check_archimedean, check_cancellation, check_strict_monotonicity, trajectory,
};
use fuzznorm::fuzzy::{
    check_fuzzy_submonoid, extract_core, CarrierMonoid, Elem, FiniteMonoid, FuzzySubset, KindTag,
    SubstructureKind,
};
use fuzznorm::lattice::{check_lattice_tnorm, enumerate_lattice_tnorms, FiniteLattice};
use fuzznorm::report::SearchBudget;
use fuzznorm::scalar::{q, Domain, UnitScalar};
use fuzznorm::vague::{check_vague_op, induce_vague_tnorm, ScalarEquality, TFuzzyEquality};

fn tnorm_family() -> impl Strategy<Value = TNormFamily> {
    prop::sample::select(TNormFamily::ALL.to_vec())
}

fn tconorm_family() -> impl Strategy<Value = TConormFamily> {
    prop::sample::select(TConormFamily::ALL.to_vec())
}

/// A grid point `i/n` with `n` in `2..=40`.
fn point() -> impl Strategy<Value = UnitScalar> {
    (2i64..=40).prop_flat_map(|n| (0..=n).prop_map(move |i| q(i, n)))
}

fn interior() -> impl Strategy<Value = UnitScalar> {
    (2i64..=12).prop_flat_map(|n| (1..n).prop_map(move |i| q(i, n)))
}

/// Builtins plus uninorms and nullnorms at a random parameter.
fn connective() -> impl Strategy<Value = Connective> {
    prop_oneof![
        tnorm_family().prop_map(Connective::tnorm),
        tconorm_family().prop_map(Connective::tconorm),
        (interior(), tnorm_family(), tconorm_family(), any::<bool>()).prop_map(|(e, t, s, min)| {
            let (t, s) = (Connective::tnorm(t), Connective::tconorm(s));
            if min {
                construct_uninorm_min(e, t, s).unwrap()
            } else {
                construct_uninorm_max(e, t, s).unwrap()
            }
        }),
        (interior(), tnorm_family(), tconorm_family()).prop_map(|(k, t, s)| construct_nullnorm(
            Connective::tconorm(s),
            k,
            Connective::tnorm(t)
        )
        .unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tnorms_are_commutative_and_below_min(f in tnorm_family(), x in point(), y in point()) {
        let t = Connective::tnorm(f);
        prop_assert_eq!(t.eval(&x, &y), t.eval(&y, &x));
        prop_assert!(t.eval(&x, &y) <= x.min_of(&y));
    }

    #[test]
    fn duals_match_the_named_tconorms(f in tnorm_family(), x in point(), y in point()) {
        let d = dualize(&Connective::tnorm(f));
        prop_assert_eq!(d.eval(&x, &y), Connective::tconorm(f.dual()).eval(&x, &y));
    }

    #[test]
    fn powers_add_exponents(c in connective(), x in point(), m in 1u32..=8, n in 1u32..=8) {
        let whole = power_iterate(&c, &x, m + n).unwrap();
        let split = c.eval(&power_iterate(&c, &x, m).unwrap(), &power_iterate(&c, &x, n).unwrap());
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn uninorm_min_is_between_min_and_max_on_the_mixed_region(
        e in interior(), t in tnorm_family(), s in tconorm_family(), x in point(), y in point(),
    ) {
        prop_assume!((x < e && y > e) || (x > e && y < e));
        let u = construct_uninorm_min(e, Connective::tnorm(t), Connective::tconorm(s)).unwrap();
        let v = u.eval(&x, &y);
        prop_assert!(x.min_of(&y) <= v && v <= x.max_of(&y));
    }

    #[test]
    fn nullnorm_is_constant_on_the_mixed_region(
        k in interior(), t in tnorm_family(), s in tconorm_family(), x in point(), y in point(),
    ) {
        prop_assume!((x < k && y > k) || (x > k && y < k));
        let f = construct_nullnorm(Connective::tconorm(s), k.clone(), Connective::tnorm(t)).unwrap();
        prop_assert_eq!(f.eval(&x, &y), k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Failing witnesses violate the stated inequality when re-evaluated.
    #[test]
    fn witnesses_re_evaluate(c in connective(), n in 2u32..=8) {
        let d = Domain::grid(n).unwrap();
        let b = SearchBudget::default();
        for w in check_strict_monotonicity(&c, &d, &b).witnesses {
            let v = w.input_scalars().unwrap();
            prop_assert!(v[0] > UnitScalar::zero() && v[1] < v[2]);
            prop_assert!(c.eval(&v[0], &v[1]) >= c.eval(&v[0], &v[2]));
        }
        for w in check_cancellation(&c, &d, false, &b).witnesses {
            let v = w.input_scalars().unwrap();
            prop_assert!(!v[0].is_zero() && v[1] != v[2]);
            prop_assert_eq!(c.eval(&v[0], &v[1]), c.eval(&v[0], &v[2]));
        }
    }

    #[test]
    fn strict_implies_cancel_implies_conditional(c in connective(), n in 2u32..=10) {
        let d = Domain::grid(n).unwrap();
        let b = SearchBudget::default();
        let strict = check_strict_monotonicity(&c, &d, &b).verdict;
        let cancel = check_cancellation(&c, &d, false, &b).verdict;
        let cond = check_cancellation(&c, &d, true, &b).verdict;
        prop_assert!(!strict.holds() || cancel.holds());
        // Plain cancellation skips x = 0; the conditional form does not, so
        // the second implication needs 0 to annihilate.
        let zero = q(0, 1);
        if d.points().iter().all(|y| c.eval(&zero, y) == zero) {
            prop_assert!(!cancel.holds() || cond.holds());
        }
    }

    #[test]
    fn refining_the_grid_keeps_failures(c in connective(), n in 2u32..=6, k in 2u32..=3) {
        let b = SearchBudget::default();
        let (coarse, fine) = (Domain::grid(n).unwrap(), Domain::grid(n * k).unwrap());
        for check in [
            |c: &Connective, d: &Domain, b: &SearchBudget| check_strict_monotonicity(c, d, b).verdict,
            |c: &Connective, d: &Domain, b: &SearchBudget| check_cancellation(c, d, false, b).verdict,
            |c: &Connective, d: &Domain, b: &SearchBudget| check_cancellation(c, d, true, b).verdict,
        ] {
            prop_assert!(!check(&c, &coarse, &b).fails() || check(&c, &fine, &b).fails());
        }
    }
}

#[test]
fn archimedean_matches_a_direct_double_loop() {
    let b = SearchBudget::default();
    let d = Domain::grid(10).unwrap();
    for f in TNormFamily::ALL {
        let t = Connective::tnorm(f);
        let mut reference = true;
        for x in d.interior() {
            let mut p = x.clone();
            let mut powers = vec![p.clone()];
            for _ in 1..b.n_max {
                p = t.eval(&p, x);
                powers.push(p.clone());
            }
            reference &= d.interior().iter().all(|y| powers.iter().any(|p| p < y));
        }
        assert_eq!(
            check_archimedean(&t, &d, &b).verdict.holds(),
            reference,
            "{}",
            t.name()
        );
    }
    // The drastic t-norm reaches 0 in one step; the minimum never moves.
    assert_eq!(
        trajectory(&Connective::tnorm(TNormFamily::Drastic), &q(1, 2), 64).powers,
        [q(1, 2), q(0, 1)]
    );
    assert!(trajectory(&Connective::tnorm(TNormFamily::Minimum), &q(1, 2), 64).stationary);
}

/// Small monoids to test substructure checks on: `Z_n` and `({0..n-1}, max)`.
fn small_monoid() -> impl Strategy<Value = FiniteMonoid> {
    (1usize..=4, any::<bool>()).prop_map(|(n, cyclic)| {
        if cyclic {
            FiniteMonoid::cyclic(n)
        } else {
            let labels = (0..n).map(|i| i.to_string()).collect();
            let table = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
            FiniteMonoid::new(labels, table, 0).unwrap()
        }
    })
}

fn table_over(m: &FiniteMonoid, values: &[u8]) -> FuzzySubset {
    let alphabet = [q(0, 1), q(1, 2), q(1, 1)];
    FuzzySubset::label_table(
        m.labels()
            .iter()
            .zip(values)
            .map(|(l, &v)| (l.clone(), alphabet[v as usize].clone())),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn submonoid_check_matches_a_direct_loop(m in small_monoid(), values in prop::collection::vec(0u8..3, 4)) {
        let mu = table_over(&m, &values);
        let c = CarrierMonoid::finite(m.clone());
        let at = |i: usize| mu.value(&c, &Elem::Index(i)).unwrap();
        let n = m.len();
        let reference = at(m.identity()).is_one()
            && (0..n).all(|a| (0..n).all(|b| at(a).min_of(&at(b)) <= at(m.op(a, b))));
        let r = check_fuzzy_submonoid(&mu, &c, &SubstructureKind::min(KindTag::Submonoid).unwrap(), &SearchBudget::default()).unwrap();
        prop_assert_eq!(r.verdict.holds(), reference);
        if reference {
            let core = extract_core(&mu, &c).unwrap();
            prop_assert!(core.closed && core.contains_identity);
        }
    }

    #[test]
    fn step_subset_fits_the_uninorm_shape(i in 1i64..6, t in tnorm_family()) {
        let e = q(i, 6);
        let d = Domain::grid(6).unwrap();
        let u = construct_uninorm_min(e.clone(), Connective::tnorm(t), Connective::tconorm(TConormFamily::Maximum)).unwrap();
        let c = CarrierMonoid::interval(d, Connective::tnorm(TNormFamily::Minimum)).unwrap();
        let kind = SubstructureKind::new(KindTag::USubmonoid, Some(u)).unwrap();
        let r = check_fuzzy_submonoid(&FuzzySubset::Step(e), &c, &kind, &SearchBudget::default()).unwrap();
        prop_assert!(r.verdict.holds(), "{}", r.to_text());
    }
}

/// Direct double loop: E(x,x') * E(y,y') <= E(T(x,y), T(x',y')).
fn t_is_extensional(eq: &TFuzzyEquality, t: &Connective, d: &Domain) -> bool {
    let pts = d.points();
    let deg = |a: &UnitScalar, b: &UnitScalar| eq.eval(a, b).unwrap();
    pts.iter().all(|x| {
        pts.iter().all(|x2| {
            pts.iter().all(|y| {
                pts.iter().all(|y2| {
                    eq.tnorm().eval(&deg(x, x2), &deg(y, y2)) <= deg(&t.eval(x, y), &t.eval(x2, y2))
                })
            })
        })
    })
}

/// The induced operation is a vague operation exactly when T is
/// extensional for E. T_D is not extensional for 1-|x-y|.
#[test]
fn induced_vague_tnorms_are_vague_operations() {
    let b = SearchBudget::default();
    for n in 2..=6 {
        let d = Domain::grid(n).unwrap();
        for f in [
            TNormFamily::Minimum,
            TNormFamily::Lukasiewicz,
            TNormFamily::Drastic,
        ] {
            let t = Connective::tnorm(f);
            for e in [ScalarEquality::Crisp, ScalarEquality::OneMinusAbs] {
                let Ok(eq) = TFuzzyEquality::new(e, t.clone(), d.clone(), &b) else {
                    continue;
                };
                let v = induce_vague_tnorm(&eq, &t, &b).unwrap();
                let r = check_vague_op(v.base(), &b).unwrap();
                assert_eq!(
                    r.verdict.holds(),
                    t_is_extensional(&eq, &t, &d),
                    "n={n} {}",
                    r.to_text()
                );
            }
        }
    }
}

fn lattices() -> Vec<FiniteLattice> {
    let pentagon = FiniteLattice::from_covers(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    .unwrap();
    let m3 = FiniteLattice::from_covers(
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
    .unwrap();
    vec![
        FiniteLattice::chain(2),
        FiniteLattice::chain(3),
        FiniteLattice::chain(4),
        FiniteLattice::chain(5),
        FiniteLattice::diamond(),
        pentagon,
        m3,
    ]
}

#[test]
fn meets_and_joins_absorb() {
    for l in lattices() {
        for x in 0..l.len() {
            assert_eq!(l.meet(x, x), x);
            assert_eq!(l.join(x, x), x);
            for y in 0..l.len() {
                assert_eq!(l.meet(x, l.join(x, y)), x, "{}", l.name());
                assert_eq!(l.join(x, l.meet(x, y)), x, "{}", l.name());
            }
        }
    }
}

#[test]
fn enumeration_matches_the_brute_force_filter() {
    let b = SearchBudget::default();
    for l in lattices() {
        let free = l.len() <= 3;
        let l = Arc::new(l);
        let mut ours: Vec<Vec<usize>> = enumerate_lattice_tnorms(&l, usize::MAX, &b)
            .unwrap()
            .iter()
            .map(|t| t.table().to_vec())
            .collect();
        ours.sort();
        assert_eq!(ours, common::brute_force_tnorms(&l, free), "{}", l.name());
    }
}

#[test]
fn closed_restrictions_are_tnorms() {
    let b = SearchBudget::default();
    let mut restricted = 0;
    for l in lattices() {
        let l = Arc::new(l);
        for t in enumerate_lattice_tnorms(&l, usize::MAX, &b).unwrap() {
            for a in 0..l.len() {
                let iv = l.interval(a, l.top()).unwrap();
                if let Ok(r) = t.restrict(&iv) {
                    restricted += 1;
                    let rep = check_lattice_tnorm(r.lattice(), r.table(), r.name(), &b);
                    assert!(rep.verdict.holds(), "{}", rep.to_text());
                }
            }
        }
    }
    assert!(restricted > 0);
}
