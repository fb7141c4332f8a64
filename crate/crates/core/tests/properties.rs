mod common;

use proptest::prelude::*;

use common::brute_force_count;
use rmi_core::classic::{entropy, mutual_information};
use rmi_core::corrected::reduced_mi;
use rmi_core::omega::{approx_de, count_exact, DEFAULT_BUDGET};
use rmi_core::{ContingencyTable, Labeling, Margins, OmegaMethod, OmegaOptions};

fn margin(max_parts: usize, max_value: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_value, 1..=max_parts)
}

/// Two margins with equal totals: the second is `cols` topped up in its last part.
fn margin_pair() -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    (margin(4, 6), margin(4, 6)).prop_map(|(mut a, mut b)| {
        let (sa, sb): (u64, u64) = (a.iter().sum(), b.iter().sum());
        if sa < sb {
            *a.last_mut().unwrap() += sb - sa;
        } else {
            *b.last_mut().unwrap() += sa - sb;
        }
        (a, b)
    })
}

fn labels(n: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..5, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_count_matches_brute_force((a, b) in margin_pair()) {
        prop_assume!(a.iter().sum::<u64>() <= 14);
        let m = Margins::new(a.clone(), b.clone()).unwrap();
        let got = count_exact(&m, DEFAULT_BUDGET).unwrap().exact_value.unwrap();
        prop_assert_eq!(got, brute_force_count(&a, &b));
    }

    #[test]
    fn exact_count_ignores_order_and_orientation((a, b) in margin_pair(), seed in any::<u64>()) {
        let m = Margins::new(a.clone(), b.clone()).unwrap();
        let base = count_exact(&m, DEFAULT_BUDGET).unwrap().exact_value;
        let mut a2 = a.clone();
        let k = (seed as usize) % a2.len();
        a2.rotate_left(k);
        let mut b2 = b.clone();
        b2.reverse();
        let swapped = Margins::new(b2, a2).unwrap();
        prop_assert_eq!(count_exact(&swapped, DEFAULT_BUDGET).unwrap().exact_value, base);
    }

    #[test]
    fn de_is_transpose_symmetric((a, b) in margin_pair()) {
        let m = Margins::new(a, b).unwrap();
        let x = approx_de(&m).log_value;
        let y = approx_de(&m.transpose()).log_value;
        prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0), "{} vs {}", x, y);
    }

    #[test]
    fn table_margins_match_labelings(pair in (1usize..40).prop_flat_map(|n| (labels(n), labels(n)))) {
        let (r, s) = pair;
        let r = Labeling::from_ids(&r).unwrap();
        let s = Labeling::from_ids(&s).unwrap();
        let t = ContingencyTable::from_labelings(&r, &s).unwrap();
        prop_assert_eq!(t.row_sums(), r.group_sizes());
        prop_assert_eq!(t.col_sums(), s.group_sizes());
        prop_assert_eq!(t.total(), r.len() as u64);
        let tt = t.transpose();
        prop_assert_eq!(tt.transpose().to_rows(), t.to_rows());
        prop_assert_eq!(ContingencyTable::from_labelings(&s, &r).unwrap().to_rows(), tt.to_rows());
    }

    #[test]
    fn reduced_mi_is_below_plug_in_ceiling(pair in (1usize..40).prop_flat_map(|n| (labels(n), labels(n)))) {
        let (r, s) = pair;
        let r = Labeling::from_ids(&r).unwrap();
        let s = Labeling::from_ids(&s).unwrap();
        let t = ContingencyTable::from_labelings(&r, &s).unwrap();
        let n = t.total();
        let rmi = reduced_mi(&t, OmegaOptions::new(OmegaMethod::Exact)).unwrap();
        let ceiling = entropy(t.row_sums(), n).min(entropy(t.col_sums(), n));
        prop_assert!(rmi.m_exact <= rmi.first_term);
        prop_assert!(mutual_information(&t) <= ceiling + 1e-9);
    }
}
