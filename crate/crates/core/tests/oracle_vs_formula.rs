use rectcount_core::oracle::{all_blocks, count_multisets, count_symmetric_multisets, restricted_blocks};
use rectcount_core::restrict2::p_kl_table;
use rectcount_core::tile2::{p2_table, p_tilde_table, s_table, t_table};
use rectcount_core::Natural;

#[test]
fn p2_matches_enumeration() {
    let p2 = p2_table(7);
    for n in 0..=7 {
        assert_eq!(count_multisets(2, n, all_blocks).unwrap(), p2[n as usize], "n = {n}");
    }
}

#[test]
fn p_tilde_matches_one_row_filter() {
    let tilde = p_tilde_table(7);
    for n in 0..=7 {
        let count = count_multisets(2, n, |a, _| a == 1).unwrap();
        assert_eq!(count, tilde[n as usize], "n = {n}");
    }
}

#[test]
fn restricted_matches_filtered_enumeration() {
    for k in 1..=3 {
        for l in 1..=3 {
            let table = p_kl_table(k, l, 6);
            for n in 0..=6 {
                assert_eq!(count_multisets(2, n, restricted_blocks(k, l)).unwrap(), table[n as usize], "({k},{l},{n})");
            }
        }
    }
}

#[test]
fn symmetric_variants() {
    let (s, t) = (s_table(6), t_table(6));
    for n in 0..=6 {
        assert_eq!(count_symmetric_multisets(n, false).unwrap(), s[n as usize], "S({n})");
        assert_eq!(count_symmetric_multisets(n, true).unwrap(), t[n as usize], "T({n})");
    }
}

#[test]
fn three_rows_small() {
    // regression values from the enumerator itself, cross-checked by transpose
    let row: Vec<Natural> = (1..=4).map(|n| count_multisets(3, n, all_blocks).unwrap()).collect();
    let col: Vec<Natural> = (1..=4).map(|n| count_multisets(n, 3, all_blocks).unwrap()).collect();
    assert_eq!(row, col);
    assert_eq!(row[2], Natural::from(21u32));
}
