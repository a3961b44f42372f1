//! The TOML input format.
//!
//! ```toml
//! name = "example"          # optional
//! dim = 3
//!
//! [fan]
//! type = "star_script"      # or "explicit"
//! rays = [[1, 1, 1], [1, 2, 1]]
//! removals = []             # star_script only, applied after all subdivisions
//! # max_cones = [[0, 1, 2]] # explicit only: indices into `rays`
//!
//! [kato]                    # omitted for bare fans
//! columns = [[1, 0, 0], [1, 2, 1], [1, 1, 1]]
//! # tau = [0, 4, 3]         # alternatively: indices into the ray list
//! # matrix = [[1, 1, 1], [0, 2, 1], [0, 1, 1]]   # or the rows of A
//! ell = [["0", "1"], ["1/2", "1"], ["0", "1"]]   # exact [re, im] pairs
//! # ell_approx = [[0.0, 1.0], ...]                # lossy alternative
//! ```
//!
//! For star scripts the ray list used by `tau` is `e_1, ..., e_n` followed by
//! the script rays; for explicit fans it is `rays` itself. Exactly one of
//! `columns`, `tau`, `matrix` must be given. The canonical form written by
//! [`serialize`] is explicit, with the rays in sorted order, and uses
//! `matrix`.

use serde::{Deserialize, Serialize};

use crate::fan::{Cone, Fan};
use crate::kato::{GaussRat, KatoData, LogParams};
use crate::linalg::{IntMatrix, LatticeVector};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub dim: usize,
    pub fan: FanSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kato: Option<KatoSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FanSection {
    StarScript {
        rays: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        removals: Vec<Vec<i64>>,
    },
    Explicit {
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct KatoSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell_approx: Option<Vec<[f64; 2]>>,
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("field `{field}`: {msg}"))
}

fn vector(field: &str, n: usize, v: &[i64]) -> Result<LatticeVector> {
    if v.len() != n {
        return Err(field_err(field, format!("expected {n} entries, got {}", v.len())));
    }
    Ok(LatticeVector::from_i64(v))
}

fn vectors(field: &str, n: usize, vs: &[Vec<i64>]) -> Result<Vec<LatticeVector>> {
    vs.iter().enumerate().map(|(i, v)| vector(&format!("{field}[{i}]"), n, v)).collect()
}

pub fn parse_document(text: &str) -> Result<Document> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

impl Document {
    /// The fan together with the ray list that `tau` indexes into.
    pub fn build_fan(&self) -> Result<(Fan, Vec<LatticeVector>)> {
        let n = self.dim;
        if n < 1 {
            return Err(field_err("dim", "must be positive"));
        }
        match &self.fan {
            FanSection::StarScript { rays, removals } => {
                let rays = vectors("fan.rays", n, rays)?;
                let removals = vectors("fan.removals", n, removals)?;
                let fan = Fan::from_star_script(n, &rays, &removals)?;
                let listed = (0..n).map(|j| LatticeVector::unit(n, j)).chain(rays).collect();
                Ok((fan, listed))
            }
            FanSection::Explicit { rays, max_cones } => {
                let rays = vectors("fan.rays", n, rays)?;
                let mut cones = Vec::with_capacity(max_cones.len());
                for (i, idx) in max_cones.iter().enumerate() {
                    let field = format!("fan.max_cones[{i}]");
                    let gens = idx
                        .iter()
                        .map(|&k| rays.get(k).cloned().ok_or_else(|| field_err(&field, format!("ray index {k} out of range"))))
                        .collect::<Result<Vec<_>>>()?;
                    cones.push(Cone::with_ambient(n, gens).map_err(|e| field_err(&field, e))?);
                }
                let fan = Fan::new(n, cones)?;
                Ok((fan, rays))
            }
        }
    }

    pub fn to_kato_data(&self) -> Result<KatoData> {
        let n = self.dim;
        let (fan, listed) = self.build_fan()?;
        let kato = self.kato.as_ref().ok_or_else(|| field_err("kato", "missing; the document describes a fan only"))?;
        let given = [kato.columns.is_some(), kato.tau.is_some(), kato.matrix.is_some()].iter().filter(|b| **b).count();
        if given != 1 {
            return Err(field_err("kato", "give exactly one of `columns`, `tau`, `matrix`"));
        }
        let columns = if let Some(cols) = &kato.columns {
            vectors("kato.columns", n, cols)?
        } else if let Some(tau) = &kato.tau {
            tau.iter()
                .map(|&k| listed.get(k).cloned().ok_or_else(|| field_err("kato.tau", format!("ray index {k} out of range"))))
                .collect::<Result<Vec<_>>>()?
        } else {
            let rows = kato.matrix.as_ref().expect("one field is present");
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(field_err("kato.matrix", format!("expected a {n}x{n} matrix")));
            }
            IntMatrix::from_rows(rows).columns()
        };
        let ell = match (&kato.ell, &kato.ell_approx) {
            (Some(_), Some(_)) => return Err(field_err("kato", "give at most one of `ell`, `ell_approx`")),
            (Some(pairs), None) => Some(LogParams::Exact(
                pairs
                    .iter()
                    .enumerate()
                    .map(|(i, [re, im])| GaussRat::parse(re, im).map_err(|e| field_err(&format!("kato.ell[{i}]"), e)))
                    .collect::<Result<Vec<_>>>()?,
            )),
            (None, Some(pairs)) => Some(LogParams::Approximate(pairs.iter().map(|[a, b]| (*a, *b)).collect())),
            (None, None) => None,
        };
        KatoData::new(fan, columns, ell)
    }

    pub fn to_fan(&self) -> Result<Fan> {
        self.build_fan().map(|(f, _)| f)
    }
}

pub fn parse(text: &str) -> Result<KatoData> {
    parse_document(text)?.to_kato_data()
}

pub fn parse_fan(text: &str) -> Result<Fan> {
    parse_document(text)?.to_fan()
}

fn to_i64(v: &LatticeVector) -> Vec<i64> {
    v.0.iter().map(|x| i64::try_from(x).expect("entries fit in i64")).collect()
}

/// Explicit fan section: sorted rays and sorted index lists of maximal cones.
pub fn fan_section(f: &Fan) -> FanSection {
    let rays = f.rays();
    let index = |g: &LatticeVector| rays.iter().position(|r| r == g).expect("generators are rays");
    let mut max_cones: Vec<Vec<usize>> = f
        .max_cones()
        .map(|c| {
            let mut idx: Vec<usize> = c.generators().iter().map(index).collect();
            idx.sort_unstable();
            idx
        })
        .collect();
    max_cones.sort();
    FanSection::Explicit { rays: rays.iter().map(to_i64).collect(), max_cones }
}

pub fn document_of(d: &KatoData, name: Option<&str>) -> Document {
    let a = d.matrix();
    let ell = d.ell().map(|l| match l {
        LogParams::Exact(v) => (Some(v.iter().map(|z| [z.re.to_string(), z.im.to_string()]).collect()), None),
        LogParams::Approximate(v) => (None, Some(v.iter().map(|(a, b)| [*a, *b]).collect())),
    });
    let (ell, ell_approx) = ell.unwrap_or((None, None));
    Document {
        name: name.map(str::to_string),
        description: None,
        dim: d.dim(),
        fan: fan_section(d.fan()),
        kato: Some(KatoSection {
            matrix: Some((0..a.rows()).map(|i| to_i64(&a.row(i))).collect()),
            ell,
            ell_approx,
            ..KatoSection::default()
        }),
    }
}

pub fn fan_document(f: &Fan, name: Option<&str>) -> Document {
    Document { name: name.map(str::to_string), description: None, dim: f.dim(), fan: fan_section(f), kato: None }
}

pub fn to_toml(doc: &Document) -> String {
    toml::to_string(doc).expect("documents serialize")
}

/// Canonical document text for Kato data.
pub fn serialize(d: &KatoData) -> String {
    to_toml(&document_of(d, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_kato_data;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    const FIGURE_TWO: &str = r#"
dim = 3
[fan]
type = "star_script"
rays = [[1, 1, 1], [1, 2, 1]]
[kato]
tau = [0, 4, 3]
ell = [["0", "1"], ["1/2", "1"], ["0", "1"]]
"#;

    #[test]
    fn tau_indices_follow_the_standard_rays() {
        let d = parse(FIGURE_TWO).unwrap();
        assert_eq!(d.matrix(), &IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 2, 1], vec![0, 1, 1]]));
        assert!(d.ell().unwrap().is_exact());
    }

    #[test]
    fn round_trip() {
        let d = parse(FIGURE_TWO).unwrap();
        let text = serialize(&d);
        let back = parse(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = FIGURE_TWO.replace("[1, 2, 1]]", "[1, 2]]");
        let e = parse(&bad).unwrap_err().to_string();
        assert!(e.contains("fan.rays[1]"), "{e}");
        let bad = FIGURE_TWO.replace("tau = [0, 4, 3]", "tau = [0, 9, 3]");
        assert!(parse(&bad).unwrap_err().to_string().contains("kato.tau"));
        let bad = FIGURE_TWO.replace("\"1/2\"", "\"x\"");
        assert!(parse(&bad).unwrap_err().to_string().contains("kato.ell[1]"));
        let bad = FIGURE_TWO.replace("dim = 3", "dim = 3\ncolour = 1");
        let e = parse(&bad).unwrap_err().to_string();
        assert!(e.contains("colour") && e.contains("line"), "{e}");
        let bad = FIGURE_TWO.replace("tau = [0, 4, 3]", "tau = [0, 4, 3]\nmatrix = [[1]]");
        assert!(parse(&bad).is_err());
    }

    #[test]
    fn hopf_from_a_matrix() {
        let text = "dim = 3\n[fan]\ntype = \"star_script\"\nrays = []\n[kato]\nmatrix = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]\n";
        let d = parse(text).unwrap();
        assert_eq!(d.kind(), crate::kato::KatoType::Hopf);
    }

    #[test]
    fn approximate_parameters_are_kept_apart() {
        let text = FIGURE_TWO.replace("ell = [[\"0\", \"1\"], [\"1/2\", \"1\"], [\"0\", \"1\"]]", "ell_approx = [[0.0, 1.0], [0.5, 1.0], [0.0, 1.0]]");
        let d = parse(&text).unwrap();
        assert!(!d.ell().unwrap().is_exact());
        assert_eq!(parse(&serialize(&d)).unwrap(), d);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]
        #[test]
        fn random_round_trip(n in 2usize..5, steps in 0usize..5, seed in 0u64..10_000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let d = random_kato_data(n, steps, &mut rng);
            let text = serialize(&d);
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(serialize(&back), text);
        }
    }
}
