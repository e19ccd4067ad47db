use ffdot::numtheory::is_prime;
use ffdot::oracle::{oracle_gf_ops, GfOps};
use ffdot::zech::ZechOp;
use ffdot::{Error, FiniteField, FullTables, ZechTables};

fn check_against_oracle<F: FiniteField>(f: &F, o: &GfOps) {
    let q = o.q;
    let codes: Vec<F::Elem> = (0..q).map(|v| f.encode(v)).collect();
    for a in 0..q {
        let x = codes[a as usize];
        assert_eq!(f.decode(x), a);
        assert_eq!(f.decode(f.neg(x)), o.neg[a as usize], "q={q} -{a}");
        for b in 0..q {
            let y = codes[b as usize];
            assert_eq!(f.decode(f.add(x, y)), o.add(a, b), "q={q} {a}+{b}");
            assert_eq!(f.decode(f.sub(x, y)), o.sub(a, b), "q={q} {a}-{b}");
            assert_eq!(f.decode(f.mul(x, y)), o.mul(a, b), "q={q} {a}*{b}");
            match o.div(a, b) {
                Some(d) => assert_eq!(f.decode(f.div(x, y).unwrap()), d),
                None => assert_eq!(f.div(x, y), Err(Error::DivisionByZero)),
            }
            let axpy = o.add(o.mul(a, b), a);
            assert_eq!(f.decode(f.axpy(x, y, x)), axpy);
            assert_eq!(f.decode(f.axpyin(x, x, y)), axpy);
        }
    }
}

#[test]
fn prime_fields_agree_with_oracle() {
    for p in (2..=211u64).filter(|&p| is_prime(p)) {
        let t = ZechTables::prime(p).unwrap();
        check_against_oracle(&t, &oracle_gf_ops(p, None));
    }
}

#[test]
fn extension_fields_agree_with_oracle() {
    for (p, d) in [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3), (7, 2), (2, 5)] {
        let t = ZechTables::extension(p, d).unwrap();
        let o = oracle_gf_ops(p, t.modulus());
        check_against_oracle(&t, &o);
        check_against_oracle(&FullTables::new(&t).unwrap(), &o);
    }
}

#[test]
fn full_tables_agree_with_plain_tables() {
    for p in [2u64, 3, 7, 101] {
        let t = ZechTables::prime(p).unwrap();
        let f = FullTables::new(&t).unwrap();
        check_against_oracle(&f, &oracle_gf_ops(p, None));
        for a in 0..=t.qbar() {
            let x = t.code(a).unwrap();
            assert_eq!(f.to_plain(f.from_plain(x)), x);
        }
    }
}

/// Means over all nonzero pairs at q = 101. Addition costs exactly three
/// index operations, two tests and one lookup. Multiplication corrects when
/// `i + j > 100`, which holds for 5050 of the 10000 pairs; division likewise
/// when `i <= j`.
#[test]
fn operation_counts_at_101() {
    let t = ZechTables::prime(101).unwrap();
    assert_eq!(t.mean_counts(ZechOp::Add).unwrap(), [3.0, 2.0, 1.0]);
    assert_eq!(t.mean_counts(ZechOp::Mul).unwrap(), [1.505, 1.0, 0.0]);
    assert_eq!(t.mean_counts(ZechOp::Div).unwrap(), [1.505, 1.0, 0.0]);
    let [adds, tests, accesses] = t.mean_counts(ZechOp::Sub).unwrap();
    assert!((adds - 3.75).abs() <= 0.05, "{adds}");
    assert!((tests - 2.875).abs() <= 0.05, "{tests}");
    assert_eq!(accesses, 1.0);
    let [adds, tests, _] = t.mean_counts(ZechOp::Neg).unwrap();
    assert_eq!((adds, tests), (1.5, 1.0));
}

#[test]
fn table_fixture_through_a_file() {
    let t = ZechTables::extension(3, 3).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gf27.zech");
    t.write_to(std::fs::File::create(&path).unwrap()).unwrap();
    let back = ZechTables::read_from(std::fs::File::open(&path).unwrap()).unwrap();
    check_against_oracle(&back, &oracle_gf_ops(3, t.modulus()));
}
