use crate::scalar::{FieldCtx, Scalar};

/// Basis of the right kernel of a matrix given by rows, via reduced row
/// echelon form. Every row must have `ncols` entries in context `ctx`.
pub fn kernel(ctx: FieldCtx, mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ctx.zero(); ncols];
            v[f] = ctx.one();
            for (i, &pc) in pivots.iter().enumerate() {
                if !rows[i][f].is_zero() {
                    v[pc] = -&rows[i][f];
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldCtx = FieldCtx::RATIONAL;

    fn apply(rows: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
        rows.iter()
            .map(|r| r.iter().zip(v).fold(Q.zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    #[test]
    fn kernel_dimension_and_membership() {
        let m: Vec<Vec<Scalar>> = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| Q.int(x)).collect())
            .collect();
        let k = kernel(Q, m.clone(), 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&m, v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn full_rank_and_empty() {
        let id: Vec<Vec<Scalar>> = (0..3)
            .map(|i| (0..3).map(|j| Q.int((i == j) as i64)).collect())
            .collect();
        assert!(kernel(Q, id, 3).is_empty());
        assert_eq!(kernel(Q, vec![], 2).len(), 2);
    }
}
