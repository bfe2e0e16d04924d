use super::eigen::{hermitian_eig, require_hermitian};
use super::matrix::{inner, norm, ComplexMatrix, C64};
use super::Tolerance;
use crate::error::Result;

/// Orthonormal basis of the column space of `a`.
///
/// Modified Gram-Schmidt with column-norm pivoting and one
/// re-orthogonalization pass per accepted vector. A column whose residual
/// norm falls below `rank_eps * max(1, largest input column norm)` is dropped,
/// so the output column count is the numerical rank.
pub fn orthonormal_range(a: &ComplexMatrix, tol: &Tolerance) -> ComplexMatrix {
    let d = a.rows();
    let mut work = a.columns();
    let input_scale = work.iter().map(|c| norm(c)).fold(1.0, f64::max);
    let threshold = tol.rank_eps * input_scale;
    let mut basis: Vec<Vec<C64>> = Vec::new();

    while !work.is_empty() && basis.len() < d {
        let (pivot, pivot_norm) = work
            .iter()
            .enumerate()
            .map(|(i, c)| (i, norm(c)))
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_norm < threshold {
            break;
        }
        let mut q = work.swap_remove(pivot);
        // Second pass against the accepted basis.
        for b in &basis {
            let c = inner(b, &q);
            for (qi, bi) in q.iter_mut().zip(b) {
                *qi -= bi * c;
            }
        }
        let qn = norm(&q);
        if qn < threshold {
            continue;
        }
        for qi in q.iter_mut() {
            *qi /= qn;
        }
        for col in work.iter_mut() {
            let c = inner(&q, col);
            for (ci, qi) in col.iter_mut().zip(&q) {
                *ci -= qi * c;
            }
        }
        basis.push(q);
    }

    ComplexMatrix::from_columns(d, &basis).expect("basis columns share the row count")
}

/// Numerical rank of `a` as decided by [`orthonormal_range`].
pub fn numerical_rank(a: &ComplexMatrix, tol: &Tolerance) -> usize {
    orthonormal_range(a, tol).cols()
}

/// Orthonormal basis of the eigenspace of Hermitian `a` whose eigenvalues satisfy
/// `|lambda| <= rank_eps * max(1, |a|_F)`.
pub fn kernel(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    require_hermitian(a)?;
    let eig = hermitian_eig(a)?;
    let threshold = tol.rank_eps * a.frobenius_norm().max(1.0);
    let keep: Vec<Vec<C64>> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, l)| l.abs() <= threshold)
        .map(|(k, _)| eig.eigenvector(k))
        .collect();
    ComplexMatrix::from_columns(a.rows(), &keep)
}
