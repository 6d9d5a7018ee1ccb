//! Dense exact linear algebra over the coefficient field.

use crate::scalar::Scalar;

/// Rank of a matrix given as columns, by fraction-free-enough Gaussian
/// elimination (exact divisions in the field).
pub fn rank_of_cols(cols: &[Vec<Scalar>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let nrows = cols[0].len();
    let mut m: Vec<Vec<Scalar>> = cols.to_vec();
    let mut rank = 0;
    let mut row = 0;
    while row < nrows && rank < m.len() {
        // find a pivot column at or after `rank` with nonzero entry in `row`
        let pivot = (rank..m.len()).find(|&j| !m[j][row].is_zero());
        let Some(p) = pivot else {
            row += 1;
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][row].inv();
        for e in m[rank].iter_mut() {
            *e = e.mul(&inv);
        }
        for j in 0..m.len() {
            if j != rank && !m[j][row].is_zero() {
                let f = m[j][row].clone();
                let col_rank = m[rank].clone();
                for (e, b) in m[j].iter_mut().zip(&col_rank) {
                    *e = e.sub(&b.mul(&f));
                }
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn col(f: &Field, vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|v| f.from_i64(*v)).collect()
    }

    #[test]
    fn ranks_over_q() {
        let f = Field::Q;
        assert_eq!(rank_of_cols(&[col(&f, &[1, 0]), col(&f, &[0, 1])]), 2);
        assert_eq!(rank_of_cols(&[col(&f, &[1, 2]), col(&f, &[2, 4])]), 1);
        assert_eq!(rank_of_cols(&[col(&f, &[0, 0])]), 0);
    }

    #[test]
    fn ranks_mod_p() {
        let f = Field::Fp(5);
        // columns (1,2), (2,4) are dependent mod 5
        assert_eq!(rank_of_cols(&[col(&f, &[1, 2]), col(&f, &[2, 4])]), 1);
        assert_eq!(rank_of_cols(&[col(&f, &[1, 2]), col(&f, &[2, 5])]), 2);
    }
}
