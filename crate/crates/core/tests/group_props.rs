use dlcusp_core::group::{build_conjugacy_table, ClassKey, ConjugacyTable, GroupElement, IDENTITY_CLASS, MINUS_IDENTITY_CLASS};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn element(p: u64) -> impl Strategy<Value = GroupElement> {
    (0..p as i64, 0..p as i64, 0..p as i64, 0..p as i64)
        .prop_filter_map("det 1", move |(a, b, c, d)| GroupElement::new(p, a, b, c, d).ok())
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![7u64, 11, 13, 101])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_laws((x, y, z) in prime().prop_flat_map(|p| (element(p), element(p), element(p)))) {
        let p = x.p();
        let id = GroupElement::identity(p);
        prop_assert_eq!(x.checked_mul(&y).unwrap().checked_mul(&z).unwrap(), x.checked_mul(&y.checked_mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.checked_mul(&x.inverse()).unwrap(), id);
        prop_assert_eq!(id.checked_mul(&x).unwrap(), x);
        prop_assert!(x.has_order(x.order()));
        prop_assert_eq!(x.pow(x.order()), id);
    }

    #[test]
    fn class_of_is_a_class_function((x, h) in prime().prop_flat_map(|p| (element(p), element(p)))) {
        let t = build_conjugacy_table(x.p()).unwrap();
        prop_assert_eq!(t.class_of(&x).unwrap(), t.class_of(&x.conjugate_by(&h)).unwrap());
        let c = t.class(t.class_of(&x).unwrap());
        prop_assert_eq!(c.trace, x.trace());
        prop_assert_eq!(t.class_of(&x.inverse()).unwrap(), c.inverse_class);
    }
}

fn random_element(rng: &mut ChaCha8Rng, p: u64) -> GroupElement {
    loop {
        let v: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..p as i64));
        if let Ok(g) = GroupElement::new(p, v[0], v[1], v[2], v[3]) {
            return g;
        }
    }
}

#[test]
fn unipotent_class_is_stable_under_100_conjugators() {
    let t = build_conjugacy_table(11).unwrap();
    let u1 = GroupElement::from_rows(11, [[1, 1], [0, 1]]).unwrap();
    let c = t.class_of(&u1).unwrap();
    assert_eq!(t.class(c).key, ClassKey::Unipotent { negative: false, square: true });
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let h = random_element(&mut rng, 11);
        assert_eq!(t.class_of(&u1.conjugate_by(&h)).unwrap(), c);
    }
}

#[test]
fn classes_at_seven() {
    let t: ConjugacyTable = build_conjugacy_table(7).unwrap();
    assert_eq!(t.len(), 11);
    let mut sizes: Vec<u64> = t.classes().iter().map(|c| c.size).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 24, 24, 24, 24, 42, 42, 42, 56, 56]);
    assert_eq!(sizes.iter().sum::<u64>(), 336);
    assert_eq!(t.class(MINUS_IDENTITY_CLASS).centralizer_order, 336);
    let minus = -GroupElement::identity(7);
    assert_eq!(t.class_of(&minus).unwrap(), MINUS_IDENTITY_CLASS);
    assert_eq!(t.class_of(&GroupElement::identity(7)).unwrap(), IDENTITY_CLASS);
    let t = build_conjugacy_table(11).unwrap();
    assert_eq!((t.len(), t.group_order()), (15, 1320));
}
