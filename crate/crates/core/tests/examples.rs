use gmonoid::corpus::builtin;
use gmonoid::ideals::all_order_ideals;
use gmonoid::quotient::quotient;
use gmonoid::series::{
    all_composition_series, chain_condition_report, classify_series, classify_simple, minimal_ideal_series,
    one_composition_series, split_and_reassemble, SeriesType, TypeTag,
};
use gmonoid::{ElemSet, Error, GammaStructure, Limits, MinimalityMode, Monoid};

fn b2() -> GammaStructure {
    builtin("semilattice-from-poset(2:)").unwrap()
}

fn set(m: &Monoid, names: &[&str]) -> ElemSet {
    names.iter().map(|n| m.index_of(n).unwrap()).collect()
}

#[test]
fn t7_properties() {
    let gs = builtin("paper-T7").unwrap();
    let m = gs.monoid();
    assert!(m.is_conical());
    let (a, b, c) = m.cancellative_violation().unwrap();
    assert_eq!((m.name(a), m.name(b), m.name(c)), ("1", "0", "1"));
    assert_eq!(m.minimal_elements(MinimalityMode::Literal), set(m, &["0"]));
    assert_eq!(m.minimal_elements(MinimalityMode::Nonzero), set(m, &["x", "z"]));
    assert_eq!(chain_condition_report(&gs).unwrap().height, 2);
}

#[test]
fn t7_rejects_minimal_series() {
    let gs = builtin("paper-T7").unwrap();
    let atoms = all_order_ideals(&gs).atoms();
    assert!(matches!(
        minimal_ideal_series(&gs, &atoms, &Limits::default()),
        Err(Error::NotRefinementMonoid(_))
    ));
}

#[test]
fn b2_series() {
    let gs = b2();
    let m = gs.monoid();
    let report = chain_condition_report(&gs).unwrap();
    assert_eq!(report.height, 2);
    assert!(report.holds());
    assert_eq!(all_composition_series(&gs).unwrap().len(), 2);

    let atoms = vec![
        gmonoid::Ideal::verify(&gs, set(m, &["0", "a"])).unwrap(),
        gmonoid::Ideal::verify(&gs, set(m, &["0", "b"])).unwrap(),
    ];
    let r = minimal_ideal_series(&gs, &atoms, &Limits::default()).unwrap();
    assert!(r.holds());
    assert_eq!(r.chain, vec![set(m, &["0"]), set(m, &["0", "a"]), m.all()]);

    let s = one_composition_series(&gs);
    assert_eq!(classify_series(&gs, &s).unwrap(), SeriesType::Uniform(TypeTag::Noncomparable));
}

#[test]
fn b2_not_atom() {
    let gs = b2();
    let whole = gmonoid::Ideal::verify(&gs, gs.monoid().all()).unwrap();
    assert!(matches!(
        minimal_ideal_series(&gs, &[whole], &Limits::default()),
        Err(Error::NotAtom(0))
    ));
}

#[test]
fn b2_swap_is_unclassified() {
    let m = b2().monoid().clone();
    let a = m.index_of("a").unwrap();
    let b = m.index_of("b").unwrap();
    let mut swap: Vec<usize> = (0..m.size()).collect();
    swap.swap(a, b);
    let gs = GammaStructure::from_generator(m, &swap).unwrap();
    assert_eq!(all_order_ideals(&gs).ideals().len(), 2);
    assert_eq!(classify_simple(&gs), TypeTag::Unclassified);
}

#[test]
fn trivial_action_on_simple_monoid() {
    let gs = builtin("truncated-naturals(1)").unwrap();
    assert_eq!(classify_simple(&gs), TypeTag::Noncomparable);
}

#[test]
fn shifted_power_with_finite_order_is_cyclic() {
    let gs = builtin("shifted-power(1,4,8)").unwrap();
    let s = one_composition_series(&gs);
    assert_eq!(s.length(), 1);
    assert_eq!(classify_simple(&gs), TypeTag::Cyclic);
    assert!(chain_condition_report(&gs).unwrap().holds());
}

#[test]
fn split_through_t7_ideal() {
    let gs = builtin("paper-T7").unwrap();
    let m = gs.monoid();
    let a = gmonoid::Ideal::verify(&gs, set(m, &["0", "1", "x"])).unwrap();
    let r = split_and_reassemble(&gs, a).unwrap();
    assert!(r.splice_violation.is_none());
    assert_eq!(r.spliced, vec![set(m, &["0"]), a.elements(), m.all()]);
}

#[test]
fn quotient_of_t7_by_ideal_is_simple() {
    let gs = builtin("paper-T7").unwrap();
    let m = gs.monoid();
    let a = gmonoid::Ideal::verify(&gs, set(m, &["0", "1", "x"])).unwrap();
    let q = quotient(&gs, a).unwrap();
    assert_eq!(q.classes.blocks()[0], a.elements());
    assert_eq!(all_order_ideals(&q.quotient).ideals().len(), 2);
    let inner = gs.restrict(a.elements()).unwrap().structure;
    assert_eq!(q.quotient.monoid().rows(), vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 1]]);
    assert_eq!(inner.size(), 3);
}
