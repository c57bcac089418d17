use super::Scalar;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].try_inv().expect("nonzero pivot");
        for j in c..cols {
            m[r][j] = m[r][j].times(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = f.times(&m[r][j]);
                    m[i][j] = m[i][j].minus(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(m: &[Vec<S>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right kernel of an `r x ncols` matrix.
pub fn nullspace<S: Scalar>(m: &[Vec<S>], ncols: usize, field: &S::Field) -> Vec<Vec<S>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut basis = vec![];
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![S::zero(field); ncols];
        v[free] = S::one(field);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = a[row][free].negate();
        }
        basis.push(v);
    }
    basis
}

/// Solve `a x = b`; `None` if inconsistent. Free variables are set to zero.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S], ncols: usize, field: &S::Field) -> Option<Vec<S>> {
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![S::zero(field); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some(x)
}
