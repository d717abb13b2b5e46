use num_bigint::BigInt;
use num_rational::Ratio;
use orbitquant_core::character::{antisymmetrize, VirtualRep};
use orbitquant_core::dseries::{dirac_induction_reduce, make_param};
use orbitquant_core::elliptic::{act, strongly_elliptic, ChamberPoint};
use orbitquant_core::multiplicity::weyl_character;
use orbitquant_core::pipeline::{quantize_compact, verify_gss_induced, CompactHamiltonianSpec};
use orbitquant_core::rootsys::cartan_of_type;
use orbitquant_core::weyl::WeylGroup;
use orbitquant_core::{RealRootSystem, Subsystem, Weight};
use proptest::prelude::*;

const TYPES: [&str; 10] = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "A4"];
const GROUPS: [&str; 3] = ["sl2r", "su21", "sp4r"];

fn arb_graded() -> impl Strategy<Value = RealRootSystem> {
    (0..TYPES.len(), any::<u8>()).prop_map(|(t, mask)| {
        let cartan = cartan_of_type(TYPES[t]).unwrap();
        let nc: Vec<usize> = (0..cartan.len()).filter(|i| mask & (1 << i) != 0).collect();
        RealRootSystem::build(TYPES[t], cartan, &nc).unwrap()
    })
}

/// A valid discrete series parameter `ρ + 2ν` of one of the noncompact catalog groups.
fn arb_param() -> impl Strategy<Value = (RealRootSystem, Weight)> {
    (0..GROUPS.len(), -3i64..=3, -3i64..=3).prop_filter_map("singular or incompatible", |(g, a, b)| {
        let rs = RealRootSystem::catalog(GROUPS[g]).unwrap();
        let lambda = &rs.rho + &Weight::new([2 * a, 2 * b][..rs.rank].to_vec());
        make_param(&rs, &lambda).ok().map(|_| (rs, lambda))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn positive_roots_sum_to_twice_rho(rs in arb_graded()) {
        let mut sum = Weight::zero(rs.rank);
        for r in rs.positive_roots() {
            sum = &sum + &r.weight;
        }
        prop_assert_eq!(sum, rs.rho.scale(2));
        prop_assert_eq!(&rs.rho_c + &rs.rho_n, rs.rho.clone());
        prop_assert!(rs.validate_grading().is_ok());
    }

    #[test]
    fn compact_weyl_group_is_a_subgroup(rs in arb_graded()) {
        prop_assume!(rs.rank <= 3);
        let full = WeylGroup::generate(&rs, Subsystem::Full);
        let compact = WeylGroup::generate(&rs, Subsystem::Compact);
        prop_assert_eq!(full.order() % compact.order(), 0);
        for (m, _) in compact.iter() {
            prop_assert!(full.contains(m));
        }
    }

    #[test]
    fn numerator_factors_through_the_compact_character((rs, lambda) in arb_param()) {
        let p = make_param(&rs, &lambda).unwrap();
        let wk = WeylGroup::generate(&rs, Subsystem::Compact);
        let chi = weyl_character(&rs, &p.lowest_k_type, Subsystem::Compact).unwrap();
        prop_assert_eq!(antisymmetrize(&lambda, &wk), &chi * &antisymmetrize(&rs.rho_c, &wk));
    }

    #[test]
    fn reduction_of_irreducibles((rs, lambda) in arb_param(), a in 0i64..4, b in -3i64..4) {
        let p = make_param(&rs, &lambda).unwrap();
        let mu = &p.lowest_k_type + &Weight::new([4 * a, 2 * b][..rs.rank].to_vec());
        prop_assume!(rs.dominant(&mu, Subsystem::Compact));
        let v = VirtualRep::single(&rs, Subsystem::Compact, mu.clone(), 1).unwrap();
        let r = dirac_induction_reduce(&p, &v);
        let expected = if mu == p.lowest_k_type { BigInt::from(p.sign()) } else { BigInt::from(0) };
        prop_assert_eq!(r, expected);
    }

    #[test]
    fn strong_ellipticity_is_compact_weyl_invariant(g in 0..GROUPS.len(), xs in prop::collection::vec((-9i64..=9, 1i64..=4), 2)) {
        let rs = RealRootSystem::catalog(GROUPS[g]).unwrap();
        let xi = ChamberPoint::new(xs[..rs.rank].iter().map(|&(n, d)| Ratio::new(n, d)).collect());
        let wk = WeylGroup::generate(&rs, Subsystem::Compact);
        for i in 0..wk.order() {
            prop_assert_eq!(strongly_elliptic(&rs, &act(&wk, i, &xi)), strongly_elliptic(&rs, &xi));
        }
    }

    #[test]
    fn induced_lhs_is_additive_over_specs((rs, lambda) in arb_param(), picks in prop::collection::vec((0i64..3, 0i64..3), 1..4)) {
        let p = make_param(&rs, &lambda).unwrap();
        let mut total = VirtualRep::new(Subsystem::Compact);
        let mut sum = BigInt::from(0);
        for (a, b) in picks {
            let l = &p.lowest_k_type + &Weight::new([2 * a, 2 * b][..rs.rank].to_vec());
            let spec = CompactHamiltonianSpec::orbit(Subsystem::Compact, l);
            if spec.validate(&rs).is_err() {
                continue;
            }
            let report = verify_gss_induced(&rs, &spec, &lambda).unwrap();
            prop_assert!(report.pass);
            sum += report.lhs;
            total = total.plus(&quantize_compact(&rs, &spec).unwrap());
        }
        prop_assert_eq!(dirac_induction_reduce(&p, &total), sum);
    }
}
