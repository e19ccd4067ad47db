use ffdot::kernels::{dot_blocked, dot_hybrid, dot_naive, dot_overflow, dot_overflow_centered};
use ffdot::numtheory::{inv_mod, is_prime};
use ffdot::oracle::oracle_dot;
use ffdot::{CenteredField, DotResult, Zpz, FiniteField, KernelConfig, KernelKind, MontgomeryContext, Storage, Width, ZpzField};
use proptest::prelude::*;

type Kernel = fn(&KernelConfig, &[Zpz], &[Zpz]) -> ffdot::Result<DotResult<Zpz>>;

fn prime_below(limit: u64) -> impl Strategy<Value = u64> {
    (3..limit).prop_filter_map("prime", |n| {
        let mut k = n;
        while !is_prime(k) {
            k -= 1;
        }
        (k >= 3).then_some(k)
    })
}

fn vectors(p: u64) -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    (0usize..700).prop_flat_map(move |n| {
        (
            proptest::collection::vec(0..p, n),
            proptest::collection::vec(0..p, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_kernel_matches_the_oracle(
        (p, (x, y)) in prime_below(46337).prop_flat_map(|p| (Just(p), vectors(p)))
    ) {
        let expect = oracle_dot(&x, &y, p).unwrap();
        let f = ZpzField::new(p, Width::Bits32, Storage::Unsigned).unwrap();
        let zx: Vec<_> = x.iter().map(|&v| f.elem(v)).collect();
        let zy: Vec<_> = y.iter().map(|&v| f.elem(v)).collect();
        prop_assert_eq!(dot_naive(&f, &zx, &zy).unwrap().value.value(), expect);
        for (kind, run) in [
            (KernelKind::Blocked, dot_blocked as Kernel),
            (KernelKind::Overflow, dot_overflow),
            (KernelKind::Hybrid, dot_hybrid),
        ] {
            let cfg = KernelConfig::new(kind, p, Width::Bits32).unwrap();
            prop_assert_eq!(run(&cfg, &zx, &zy).unwrap().value.value(), expect);
        }
        let c = CenteredField::new(p, Width::Bits32).unwrap();
        let cx: Vec<_> = x.iter().map(|&v| c.encode(v)).collect();
        let cy: Vec<_> = y.iter().map(|&v| c.encode(v)).collect();
        let cfg = KernelConfig::new(KernelKind::OverflowCentered, p, Width::Bits32).unwrap();
        prop_assert_eq!(c.decode(dot_overflow_centered(&cfg, &cx, &cy).unwrap().value), expect);
    }

    #[test]
    fn montgomery_round_trips_and_multiplies(p in prime_below(40499), a in 0u64..40499, b in 0u64..40499) {
        let (a, b) = (a % p, b % p);
        let m = MontgomeryContext::new(p, Width::Bits32).unwrap();
        prop_assert_eq!(m.decode(m.encode(a)), a);
        prop_assert_eq!(m.decode(m.mul(m.encode(a), m.encode(b))), a * b % p);
    }

    #[test]
    fn inverse_is_inverse(p in prime_below(1 << 31), a in 1u64..u64::MAX) {
        prop_assume!(a % p != 0);
        let i = inv_mod(a, p).unwrap();
        prop_assert_eq!((a % p) as u128 * i as u128 % p as u128, 1);
    }
}
