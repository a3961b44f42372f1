//! Kato matrices and toric Kato data.

mod data;
mod matrix;
mod perron;
mod support;

pub use data::{parse_rat, GaussRat, GermReport, KatoData, LogParams};
pub use matrix::{classify, is_kato_matrix, pa_set, principal_submatrix, KatoMatrix, KatoType};
pub use perron::{perron, PerronData, PerronVectors, RESIDUAL_TOLERANCE};
pub use support::{support_membership, Membership, SupportAnswer, PAIRING_MARGIN};
