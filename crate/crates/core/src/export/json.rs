use std::io;

use serde_json::ser::Formatter;

use crate::document::{SectionDocument, SCHEMA_VERSION};
use crate::error::{Result, ToricError};

/// Compact output with every float written as 17 significant digits in
/// exponent notation, which parses back to the identical `f64`.
struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes a document. Field order follows the struct declaration, so
/// identical documents always produce identical bytes.
pub fn to_json(doc: &SectionDocument) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    serde::Serialize::serialize(doc, &mut ser).expect("document serialization is infallible");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

pub fn from_json(text: &str) -> Result<SectionDocument> {
    let doc: SectionDocument =
        serde_json::from_str(text).map_err(|e| ToricError::InvalidDocument(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(ToricError::InvalidDocument(format!(
            "schema_version {} unsupported (expected {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    doc.validate()?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_use_seventeen_digits() {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
        serde::Serialize::serialize(&[0.1f64, -0.0, 1e-300, 2.0], &mut ser).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "[1.0000000000000001e-1,-0.0000000000000000e0,1.0000000000000000e-300,2.0000000000000000e0]"
        );
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back[0].to_bits(), 0.1f64.to_bits());
        assert_eq!(back[1].to_bits(), (-0.0f64).to_bits());
    }

    #[test]
    fn rejects_other_schema_versions() {
        let err = from_json("{\"schema_version\":2}").unwrap_err();
        assert!(matches!(err, ToricError::InvalidDocument(_)));
    }
}
