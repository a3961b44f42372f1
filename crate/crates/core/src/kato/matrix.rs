//! Toric Kato matrices and the set on which they act as a permutation.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KatoType {
    Hopf,
    Parabolic,
    Hyperbolic,
}

impl std::fmt::Display for KatoType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            KatoType::Hopf => "hopf",
            KatoType::Parabolic => "parabolic",
            KatoType::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

/// `|det A| = 1` and every column is strictly positive or a standard vector.
pub fn is_kato_matrix(a: &IntMatrix) -> bool {
    a.is_square()
        && a.rows() > 0
        && a.columns().iter().all(|c| c.is_strictly_positive() || c.standard_index().is_some())
        && a.det().abs().is_one()
}

/// `P(A)` (0-based, sorted) and the stabilisation index `m0` of the
/// sequence `S_1 ⊇ S_2 ⊇ ...` with `S_m = S_{m-1} ∩ k^{-1}(S_{m-1})`.
pub fn pa_set(a: &IntMatrix) -> (Vec<usize>, usize) {
    let target: Vec<Option<usize>> = a.columns().iter().map(LatticeVector::standard_index).collect();
    let mut current: Vec<usize> = (0..a.cols()).filter(|&j| target[j].is_some()).collect();
    let mut m = 1;
    loop {
        let next: Vec<usize> =
            current.iter().copied().filter(|&j| target[j].is_some_and(|k| current.contains(&k))).collect();
        if next == current {
            return (current, m);
        }
        current = next;
        m += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatoMatrix {
    a: IntMatrix,
    pa: Vec<usize>,
    perm: BTreeMap<usize, usize>,
    m0: usize,
}

impl KatoMatrix {
    pub fn new(a: IntMatrix) -> Result<Self> {
        if !a.is_square() || a.rows() < 2 {
            return Err(Error::InvalidKatoMatrix(format!("need a square matrix of size at least 2, got {}x{}", a.rows(), a.cols())));
        }
        for (j, c) in a.columns().iter().enumerate() {
            if !(c.is_strictly_positive() || c.standard_index().is_some()) {
                return Err(Error::InvalidKatoMatrix(format!(
                    "column {} = {c} is neither strictly positive nor a standard basis vector",
                    j + 1
                )));
            }
        }
        let d = a.det();
        if !d.abs().is_one() {
            return Err(Error::InvalidKatoMatrix(format!("determinant is {d}, not ±1")));
        }
        let (pa, m0) = pa_set(&a);
        let perm = pa.iter().map(|&j| (j, a.column(j).standard_index().expect("P(A) columns are standard"))).collect();
        Ok(KatoMatrix { a, pa, perm, m0 })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// `P(A)`, 0-based and sorted.
    pub fn pa(&self) -> &[usize] {
        &self.pa
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim()).filter(|j| !self.pa.contains(j)).collect()
    }

    pub fn m0(&self) -> usize {
        self.m0
    }

    /// The permutation `s` of `P(A)`.
    pub fn permutation(&self) -> &BTreeMap<usize, usize> {
        &self.perm
    }

    /// Cycles of `s`, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for &start in &self.pa {
            if seen.contains(&start) {
                continue;
            }
            let mut cyc = vec![start];
            seen.push(start);
            let mut j = self.perm[&start];
            while j != start {
                cyc.push(j);
                seen.push(j);
                j = self.perm[&j];
            }
            out.push(cyc);
        }
        out
    }

    /// Order of `s` (1 when `P(A)` is empty).
    pub fn order_of_s(&self) -> u64 {
        self.cycles().iter().fold(1u64, |l, c| l.lcm(&(c.len() as u64)))
    }

    pub fn kind(&self) -> KatoType {
        let n = self.dim();
        match self.pa.len() {
            p if p == n => KatoType::Hopf,
            p if p + 1 == n => KatoType::Parabolic,
            _ => KatoType::Hyperbolic,
        }
    }

    /// `det A` is ±1; returns the sign.
    pub fn det_sign(&self) -> i32 {
        if self.a.det().is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_permutation(&self) -> bool {
        self.pa.len() == self.dim()
    }
}

pub fn classify(a: &IntMatrix) -> Result<KatoType> {
    Ok(KatoMatrix::new(a.clone())?.kind())
}

/// The principal submatrix on the rows and columns in `keep`.
pub fn principal_submatrix(a: &IntMatrix, keep: &[usize]) -> IntMatrix {
    let rows = keep.iter().map(|&i| keep.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
    IntMatrix::from_big_rows(rows)
}

impl KatoMatrix {
    /// Erases the rows and columns in `erase`, an `s`-invariant subset of
    /// `P(A)` with fewer than `n - 1` elements. The result is again a Kato
    /// matrix.
    pub fn sub_kato(&self, erase: &[usize]) -> Result<KatoMatrix> {
        let n = self.dim();
        let mut erase: Vec<usize> = erase.to_vec();
        erase.sort_unstable();
        erase.dedup();
        if erase.len() + 1 >= n {
            return Err(Error::InvalidKatoMatrix(format!("cannot erase {} of {n} indices", erase.len())));
        }
        for &j in &erase {
            let Some(&t) = self.perm.get(&j) else {
                return Err(Error::InvalidKatoMatrix(format!("index {} is not in P(A)", j + 1)));
            };
            if !erase.contains(&t) {
                return Err(Error::InvalidKatoMatrix("erased set is not invariant under the permutation".into()));
            }
        }
        let keep: Vec<usize> = (0..n).filter(|j| !erase.contains(j)).collect();
        KatoMatrix::new(principal_submatrix(&self.a, &keep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use crate::random::random_kato_matrix;

    #[test]
    fn inoue_hirzebruch_is_hyperbolic() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 2]]);
        assert_eq!(pa_set(&a).0, Vec::<usize>::new());
        assert_eq!(classify(&a).unwrap(), KatoType::Hyperbolic);
    }

    #[test]
    fn single_blow_up_is_parabolic() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(pa_set(&a).0, vec![0]);
        assert_eq!(classify(&a).unwrap(), KatoType::Parabolic);
    }

    #[test]
    fn three_cycle_is_hopf() {
        let a = IntMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let k = KatoMatrix::new(a).unwrap();
        assert_eq!(k.kind(), KatoType::Hopf);
        assert_eq!(k.order_of_s(), 3);
        assert_eq!(k.cycles(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn figure_two_matrix() {
        let a = IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 2, 1], vec![0, 1, 1]]);
        let k = KatoMatrix::new(a).unwrap();
        assert_eq!(k.pa(), &[0]);
        assert_eq!(k.kind(), KatoType::Hyperbolic);
    }

    #[test]
    fn chain_into_positive_column_shrinks() {
        // Column 1 maps to e2, column 2 is positive: S_1 = {1}, S_2 = {}.
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![1, 1]]);
        let (p, m0) = pa_set(&a);
        assert!(p.is_empty());
        assert_eq!(m0, 2);
    }

    #[test]
    fn erasing_the_fixed_index() {
        let a = IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 2, 1], vec![0, 1, 1]]);
        let k = KatoMatrix::new(a).unwrap();
        let sub = k.sub_kato(&[0]).unwrap();
        assert_eq!(sub.matrix(), &IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]));
        assert_eq!(k.sub_kato(&[]).unwrap(), k);
        assert!(k.sub_kato(&[1]).is_err());
        let hopf = KatoMatrix::new(IntMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])).unwrap();
        assert!(hopf.sub_kato(&[0]).is_err());
    }

    #[test]
    fn zero_column_rejected() {
        let a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]]);
        assert!(KatoMatrix::new(a).is_err());
        let b = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert!(KatoMatrix::new(b).is_ok());
        let c = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert!(KatoMatrix::new(c).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn pa_matches_standard_columns_of_a_power(n in 2usize..5, seed in 0u64..100_000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_kato_matrix(n, 5, &mut rng);
            let (p, _) = pa_set(&a);
            // Columns outside P(A) turn positive within n steps and stay so.
            let power = a.pow((n * n) as u64);
            let brute: Vec<usize> = (0..n).filter(|&j| power.column(j).standard_index().is_some()).collect();
            prop_assert_eq!(&p, &brute);
            let k = KatoMatrix::new(a.clone()).unwrap();
            let img: Vec<usize> = k.permutation().values().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
            prop_assert_eq!(img, p.clone());
            let expected = match p.len() {
                x if x == n => KatoType::Hopf,
                x if x + 1 == n => KatoType::Parabolic,
                _ => KatoType::Hyperbolic,
            };
            prop_assert_eq!(k.kind(), expected);
        }
    }
}
