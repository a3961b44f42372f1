//! Random instances for property tests and benchmarks.

use rand::Rng;

use crate::fan::{Cone, Fan};
use crate::kato::{is_kato_matrix, KatoData, LogParams};
use crate::linalg::{IntMatrix, LatticeVector};

/// A random subdivision of the orthant: the blow-up at `(1, ..., 1)` followed
/// by `steps` star subdivisions at barycenters of random cones whose
/// barycenter is strictly positive.
pub fn random_modification<R: Rng>(n: usize, steps: usize, rng: &mut R) -> Fan {
    let mut fan = Fan::standard(n).star_subdivide(&LatticeVector::ones(n)).expect("centre of the orthant");
    for _ in 0..steps {
        let candidates: Vec<Cone> =
            fan.cones().into_iter().filter(|c| c.dim() >= 2 && c.barycenter().is_strictly_positive()).collect();
        let pick = &candidates[rng.gen_range(0..candidates.len())];
        fan = fan.star_subdivide(&pick.barycenter()).expect("barycenter lies inside its cone");
    }
    fan
}

/// A random Kato matrix whose positive entries are at most `max_entry`.
pub fn random_kato_matrix<R: Rng>(n: usize, max_entry: i64, rng: &mut R) -> IntMatrix {
    loop {
        let standard: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
        let mut targets: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            targets.swap(i, rng.gen_range(0..=i));
        }
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if standard[j] { i64::from(targets[j] == i) } else { rng.gen_range(1..=max_entry) })
                    .collect()
            })
            .collect();
        let a = IntMatrix::from_rows(&rows);
        if is_kato_matrix(&a) {
            return a;
        }
    }
}

/// Kato data on a random modification, with a random maximal cone as the
/// distinguished cone and log-parameters `(i, ..., i)`.
pub fn random_kato_data<R: Rng>(n: usize, steps: usize, rng: &mut R) -> KatoData {
    let fan = random_modification(n, steps, rng);
    let cones: Vec<&Cone> = fan.max_cones().collect();
    let mut columns = cones[rng.gen_range(0..cones.len())].generators().to_vec();
    for i in (1..columns.len()).rev() {
        columns.swap(i, rng.gen_range(0..=i));
    }
    KatoData::new(fan, columns, Some(LogParams::imaginary_unit(n))).expect("random data is valid")
}
