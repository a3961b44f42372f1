//! Built-in example documents, addressable by name (with or without the
//! `fixture_` prefix).

use crate::fan::Fan;
use crate::io::{parse, parse_fan};
use crate::kato::KatoData;
use crate::{Error, Result};

pub const FIXTURES: &[(&str, &str)] = &[
    ("fig1", include_str!("../fixtures/fig1.toml")),
    ("fig2", include_str!("../fixtures/fig2.toml")),
    ("fig3", include_str!("../fixtures/fig3.toml")),
    ("inoue_hirzebruch", include_str!("../fixtures/inoue_hirzebruch.toml")),
    ("inoue_a", include_str!("../fixtures/inoue_a.toml")),
    ("inoue_b", include_str!("../fixtures/inoue_b.toml")),
    ("hopf3", include_str!("../fixtures/hopf3.toml")),
    ("oda", include_str!("../fixtures/oda.toml")),
    ("non_lck4", include_str!("../fixtures/non_lck4.toml")),
    ("blowup2", include_str!("../fixtures/blowup2.toml")),
    ("blowup3", include_str!("../fixtures/blowup3.toml")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Option<&'static str> {
    let key = name.strip_prefix("fixture_").unwrap_or(name);
    FIXTURES.iter().find(|(n, _)| *n == key).map(|(_, t)| *t)
}

fn unknown(name: &str) -> Error {
    Error::Parse(format!("unknown fixture '{name}'"))
}

pub fn data(name: &str) -> Result<KatoData> {
    parse(text(name).ok_or_else(|| unknown(name))?)
}

pub fn fan(name: &str) -> Result<Fan> {
    parse_fan(text(name).ok_or_else(|| unknown(name))?)
}
