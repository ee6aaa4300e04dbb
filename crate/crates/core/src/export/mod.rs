//! Serialization of traced sections: the canonical JSON document, SVG and
//! CSV.

mod csv;
mod json;
mod svg;

pub use self::csv::to_csv;
pub use self::json::{from_json, to_json};
pub use self::svg::{to_svg, SvgStyle};
