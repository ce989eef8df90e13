//! Shared oracles for unit tests. Everything here stays independent of the
//! implementation paths it is used to check.

/// Brute-force determinant by cofactor expansion along the first row.
pub(crate) fn det_cofactor(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return rows[0][0];
    }
    let mut acc = 0i64;
    for (j, lead) in rows[0].iter().enumerate() {
        if *lead == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * lead * det_cofactor(&minor);
    }
    acc
}
