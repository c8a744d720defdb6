//! Known matrix pairs with documented boundary behaviour.

use crate::matrix::PairwiseComparisonMatrix;

fn m(rows: &[[f64; 3]]) -> PairwiseComparisonMatrix {
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    PairwiseComparisonMatrix::validate(&rows).expect("static witness is valid")
}

/// Two maximally inconsistent 3x3 matrices whose equal-weight aggregate is
/// the all-ones matrix.
pub fn two_extreme_pair() -> (PairwiseComparisonMatrix, PairwiseComparisonMatrix) {
    let a1 = m(&[[1.0, 1.0 / 9.0, 9.0], [9.0, 1.0, 1.0 / 9.0], [1.0 / 9.0, 9.0, 1.0]]);
    let a2 = m(&[[1.0, 9.0, 1.0 / 9.0], [1.0 / 9.0, 1.0, 9.0], [9.0, 1.0 / 9.0, 1.0]]);
    (a1, a2)
}

/// Pair whose RE aggregate at equal weights exceeds both members.
pub fn example_one_pair() -> (PairwiseComparisonMatrix, PairwiseComparisonMatrix) {
    let a = m(&[[1.0, 4.0, 1.0], [0.25, 1.0, 1.0], [1.0, 1.0, 1.0]]);
    let b = m(&[[1.0, 2.0, 1.0], [0.5, 1.0, 7.0], [1.0, 1.0 / 7.0, 1.0]]);
    (a, b)
}

/// Pair on which K is upper bounded but not strongly upper bounded.
pub fn remark_pair() -> (PairwiseComparisonMatrix, PairwiseComparisonMatrix) {
    let a1 = two_extreme_pair().0;
    let a2 = m(&[[1.0, 3.0, 9.0], [1.0 / 3.0, 1.0, 3.0], [1.0 / 9.0, 1.0 / 3.0, 1.0]]);
    (a1, a2)
}

/// 4x4 pair, each with a single off-diagonal 4, on which I_M is not upper
/// bounded.
pub fn i_m_pair() -> (PairwiseComparisonMatrix, PairwiseComparisonMatrix) {
    let mut a = vec![vec![1.0; 4]; 4];
    a[0][1] = 4.0;
    a[1][0] = 0.25;
    let mut b = vec![vec![1.0; 4]; 4];
    b[2][3] = 4.0;
    b[3][2] = 0.25;
    (
        PairwiseComparisonMatrix::validate(&a).expect("static witness is valid"),
        PairwiseComparisonMatrix::validate(&b).expect("static witness is valid"),
    )
}
