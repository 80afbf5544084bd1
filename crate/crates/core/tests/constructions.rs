use modmat::battery::{self, dualize_fixtures, Config};
use modmat::dualization::{coupling_for_basis, dualize, standard_coupling, undualize, verify_coupling};
use modmat::matroid::{is_isomorphic_via, make_pg};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn other_basis_choices_give_isomorphic_partners() {
    let pg = make_pg(2, 2).unwrap().with_prefix("p");
    let plane = pg.matrix().unwrap().clone();
    let standard = standard_coupling(2, "p").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (id, m0) in dualize_fixtures(&mut rng, 3, 0) {
        let m1 = dualize(&m0, &standard).unwrap().m1;
        for b in pg.bases().into_iter().step_by(5) {
            let b0: Vec<&str> = pg.names(b);
            let c = coupling_for_basis(2, &plane, &b0).unwrap();
            verify_coupling(&c).unwrap();
            let other = dualize(&m0, &c).unwrap();
            assert!(other.report.holds(), "{id} {b0:?}");
            assert!(is_isomorphic_via(&other.m1, &m1).is_some(), "{id} basis {b0:?}");
            assert!(undualize(&other.m1, &c).unwrap().same_as(&m0));
        }
    }
}

#[test]
fn campaigns_are_deterministic() {
    let a = battery::campaign(99, true);
    let b = battery::campaign(99, true);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.id, y.id);
        assert!(x.m.same_as(&y.m));
        assert_eq!(battery::check_instance(x), battery::check_instance(y));
    }
    let cfg = Config { seed: 99, quick: true };
    assert_eq!(battery::theorem_campaign(&cfg).lines, battery::theorem_campaign(&cfg).lines);
}
