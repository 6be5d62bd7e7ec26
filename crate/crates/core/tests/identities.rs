use proptest::prelude::*;
use rectcount_core::mary2::{b_i0_enumerated, b_i0_table, b_ij_convolution_table, b_ij_table};
use rectcount_core::partcore::{convolve, euler_p_table, nuclear_q_table, PartitionTable};
use rectcount_core::restrict2::{closed_form_table1, p_kl, p_kl_convolution};
use rectcount_core::tile2::{p2_from_tilde, p2_table, p_tilde_table, s_recurrence_check, t_count_at, t_table, tileable};
use rectcount_core::{Natural, Partition};

#[test]
fn p2_is_nuclear_times_tilde() {
    let tilde = p_tilde_table(30);
    let q = nuclear_q_table(30);
    assert_eq!(convolve(&q, &tilde), p2_table(30));
    assert_eq!(p2_from_tilde(&tilde), p2_table(30));
}

#[test]
fn s_recurrence_has_no_mismatch() {
    assert_eq!(s_recurrence_check(200).first_mismatch, None);
}

#[test]
fn t_from_partition_table() {
    let p = PartitionTable::new(300);
    let t = t_table(300);
    for n in 0..=300 {
        assert_eq!(t_count_at(n, &p), t[n]);
    }
}

#[test]
fn closed_forms_small_k_l() {
    for k in 1..=3 {
        for l in 1..=3 {
            for n in 1..=60 {
                assert_eq!(closed_form_table1(k, l, n).unwrap(), p_kl(k, l, n), "({k},{l},{n})");
            }
        }
    }
}

#[test]
fn convolution_route() {
    for k in 1..=4 {
        for l in 2..=4 {
            for n in [0, 1, 7, 25] {
                assert_eq!(p_kl_convolution(k, l, n).unwrap(), p_kl(k, l, n));
            }
        }
    }
}

#[test]
fn m_ary_recurrence_vs_enumeration() {
    for m in [2, 3] {
        for i in 0..=3 {
            let table = b_i0_table(m, i, 30);
            for n in 0..=30u32 {
                assert_eq!(table[n as usize], b_i0_enumerated(m, i, n), "m={m} i={i} n={n}");
            }
        }
    }
    for i in 0..=2 {
        for j in 0..=2 {
            assert_eq!(b_ij_table(3, i, j, 60), b_ij_convolution_table(3, i, j, 60));
        }
    }
}

fn brute_tileable(parts: &[u32], n: u64) -> bool {
    // assign each part to row 0, row 1 or (if 2) a vertical domino
    fn go(parts: &[u32], a: u64, b: u64, n: u64) -> bool {
        match parts.split_first() {
            None => a == n && b == n,
            Some((&p, rest)) => {
                let p = p as u64;
                go(rest, a + p, b, n) || go(rest, a, b + p, n) || (p == 2 && go(rest, a + 1, b + 1, n))
            }
        }
    }
    go(parts, 0, 0, n)
}

proptest! {
    #[test]
    fn tileable_matches_brute_force(parts in prop::collection::vec(1u32..7, 0..9)) {
        let total: u32 = parts.iter().sum();
        prop_assume!(total.is_multiple_of(2));
        let n = u64::from(total / 2);
        prop_assert_eq!(tileable(&Partition::new(parts.clone()), n), brute_tileable(&parts, n));
    }

    #[test]
    fn p2_dominates_p(n in 0usize..30) {
        let p = euler_p_table(30);
        let p2 = p2_table(30);
        prop_assert!(p2[n] >= p[n]);
    }

    #[test]
    fn tilde_bounded_by_p_of_2n(n in 0usize..30) {
        let p = euler_p_table(60);
        let tilde = p_tilde_table(30);
        prop_assert!(tilde[n] <= p[2 * n]);
        prop_assert!(tilde[n] > Natural::from(0u32));
    }
}
