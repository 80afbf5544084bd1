use modmat::connectivity::{is_3_connected, is_internally_3_connected, kappa, lambda, local_conn, max_linking};
use modmat::fixtures;
use modmat::matroid::{has_u2n_minor, make_pg, parse_mbl, parse_mrt, to_mbl, to_mrt};
use modmat::modularity::{is_modular_restriction, modular_sum, modularity_by_minor_search, ModularSumSpec};
use modmat::representation::{find_representation, sigma};
use modmat::{Elem, FieldSpec, GfMatrix, Matroid, Subset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// A random simple GF(q)-representable matroid of rank `rank` on `n` elements.
fn linear(seed: u64, q: u32, rank: usize, n: usize) -> Matroid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.min(fixtures::projective_points(q, rank));
    fixtures::random_linear(&mut rng, q, rank, n)
}

fn small_linear() -> impl Strategy<Value = Matroid> {
    (any::<u64>(), prop::sample::select(vec![2u32, 3, 4, 5]), 1usize..5, 2usize..10)
        .prop_map(|(seed, q, rank, n)| linear(seed, q, rank, n.max(rank)))
}

fn subset_of(m: &Matroid, bits: u32) -> Subset {
    Subset(bits) & m.ground()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_distributes(qi in 0usize..FIELDS.len(), a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let f = FieldSpec::new(FIELDS[qi]).unwrap();
        let q = f.order() as u8;
        let (a, b, c) = (Elem(a % q), Elem(b % q), Elem(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
    }

    #[test]
    fn rank_axioms_and_duality(m in small_linear()) {
        prop_assert!(m.check_axioms().is_ok());
        let d = m.dual();
        prop_assert!(d.check_axioms().is_ok());
        prop_assert_eq!(d.full_rank(), m.len() - m.full_rank());
        for x in m.ground().subsets() {
            prop_assert_eq!(d.rank(x), m.corank(x));
            prop_assert_eq!(lambda(&m, x), lambda(&m, m.ground() - x));
            prop_assert_eq!(lambda(&m, x), lambda(&d, x));
        }
        prop_assert!(d.dual().same_as(&m));
    }

    #[test]
    fn lambda_splits_over_tripartitions(m in small_linear(), a in any::<u32>(), b in any::<u32>()) {
        let a = subset_of(&m, a);
        let b = subset_of(&m, b) - a;
        let c = m.ground() - a - b;
        prop_assert_eq!(lambda(&m, a), local_conn(&m, a, b) + local_conn(&m.dual(), a, c));
    }

    #[test]
    fn linking_matches_kappa(m in small_linear(), s in any::<u32>(), t in any::<u32>()) {
        let s = subset_of(&m, s);
        let t = subset_of(&m, t) - s;
        prop_assert_eq!(kappa(&m, s, t), max_linking(&m, s, t));
    }

    #[test]
    fn standard_form_keeps_the_matroid(m in small_linear()) {
        let a = m.matrix().unwrap();
        let basis: Vec<usize> = m.bases()[0].iter().collect();
        let sf = a.standard_form(&basis).unwrap();
        prop_assert!(Matroid::from_matrix(sf).unwrap().same_as(&m));
    }

    #[test]
    fn file_formats_round_trip(m in small_linear()) {
        let gfm = m.matrix().unwrap().to_gfm();
        let (back, _) = GfMatrix::parse_gfm(&gfm).unwrap();
        prop_assert!(Matroid::from_matrix(back).unwrap().same_as(&m));
        prop_assert!(parse_mbl(&to_mbl(&m)).unwrap().same_as(&m));
        let table = m.to_rank_table().unwrap();
        let back = parse_mrt(&to_mrt(&table).unwrap()).unwrap();
        prop_assert!(back.relabel(m.labels().to_vec()).unwrap().same_as(&m));
    }

    #[test]
    fn representations_reproduce_the_matroid(m in small_linear(), q in prop::sample::select(vec![2u32, 3, 4])) {
        let plain = Matroid::from_bases(m.labels().to_vec(), m.bases()).unwrap();
        match find_representation(&plain, q).unwrap() {
            Some(rep) => prop_assert!(rep.represents(&plain)),
            None => prop_assert!(q != m.matrix().unwrap().field().order()),
        }
        if m.len() <= 8 {
            let binary = find_representation(&plain, 2).unwrap().is_some();
            prop_assert_eq!(binary, !has_u2n_minor(&plain, 4));
        }
    }

    #[test]
    fn modularity_by_flats_and_by_minors_agree(m in small_linear(), x in any::<u32>()) {
        let x = subset_of(&m, x);
        prop_assert_eq!(is_modular_restriction(&m, x), modularity_by_minor_search(&m, x).is_none());
    }

    #[test]
    fn sigma_is_symmetric(seed in any::<u64>()) {
        let m = linear(seed, 2, 3, 6);
        let hyps = fixtures::circuit_hyperplanes(&m);
        prop_assume!(!hyps.is_empty());
        let other = fixtures::relax(&m, hyps[seed as usize % hyps.len()]);
        prop_assert_eq!(sigma(&m, &other).unwrap(), sigma(&other, &m).unwrap());
    }

    #[test]
    fn modular_sum_identities(seed in any::<u64>(), extra1 in 1usize..4, extra2 in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m1 = fixtures::random_plane_extension(&mut rng, 2, 4, extra1);
        let m2 = fixtures::random_plane_extension(&mut rng, 2, 4, extra2);
        // the second summand's extra points get their own labels
        let labels: Vec<String> = m2.labels().iter().map(|l| if l.starts_with('e') { format!("f{l}") } else { l.clone() }).collect();
        let m2 = m2.relabel(labels).unwrap();
        let spec = ModularSumSpec::new(m1.clone(), m2.clone());
        prop_assume!(spec.shared().len() == 7);
        let sum = spec.build().unwrap();
        let t = sum.subset(&spec.shared()).unwrap();
        let e1 = sum.subset(m1.labels()).unwrap();
        let e2 = sum.subset(m2.labels()).unwrap();
        prop_assert!(sum.restrict(e1).same_as(&m1));
        prop_assert!(sum.restrict(e2).same_as(&m2));
        prop_assert_eq!(sum.full_rank(), m1.full_rank() + m2.full_rank() - 3);
        for x in (e1 - t).subsets() {
            let x1 = m1.subset(&sum.names(x)).unwrap();
            prop_assert_eq!(sum.dual().rank(x), m1.dual().rank(x1));
            prop_assert_eq!(lambda(&sum, x), lambda(&m1, x1));
        }
        for e in (e2 - t).iter() {
            let name = sum.label(e).to_string();
            let del = m2.delete(m2.subset(&[&name]).unwrap());
            prop_assert!(sum.delete(Subset::singleton(e)).same_as(&modular_sum(&m1, &del).unwrap()));
            let m2e = m2.index_of(&name).unwrap();
            let tn = m2.subset(&spec.shared()).unwrap();
            if !m2.closure(tn).contains(m2e) {
                let con = m2.contract(Subset::singleton(m2e));
                prop_assert!(sum.contract(Subset::singleton(e)).same_as(&modular_sum(&m1, &con).unwrap()));
            }
        }
    }
}

#[test]
fn bixby_on_three_connected_fixtures() {
    for seed in 0..40 {
        let m = linear(seed, 3, 3, 7);
        if !is_3_connected(&m) {
            continue;
        }
        for e in 0..m.len() {
            let s = Subset::singleton(e);
            assert!(
                is_internally_3_connected(&m.delete(s)).is_ok() || is_internally_3_connected(&m.contract(s)).is_ok(),
                "seed {seed} element {e}"
            );
        }
    }
}

#[test]
fn modular_restrictions_are_transitive() {
    let pg = make_pg(3, 2).unwrap();
    let plane = pg.flats_of_rank(3)[0];
    let line = pg.flats_of_rank(2).into_iter().find(|l| l.is_subset_of(plane)).unwrap();
    assert!(is_modular_restriction(&pg, plane));
    let inner = pg.restrict(plane);
    let line_in_plane = inner.subset(&pg.names(line)).unwrap();
    assert!(is_modular_restriction(&inner, line_in_plane));
    assert!(is_modular_restriction(&pg, line));
}
