//! Input documents, reports and figures.

mod document;
pub mod report;
mod svg;

pub use document::{
    document_of, fan_document, fan_section, parse, parse_document, parse_fan, serialize, to_toml, Document, FanSection,
    KatoSection,
};
pub use svg::render_svg;
