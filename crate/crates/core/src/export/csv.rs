use csv::{Terminator, WriterBuilder};

use crate::section::SectionCurve;

/// `polyline,index,t,w,x,y,z` rows with CRLF line endings. Numbers use the
/// shortest round-trip decimal form, always with a dot separator.
pub fn to_csv(curve: &SectionCurve) -> String {
    let mut wtr = WriterBuilder::new()
        .terminator(Terminator::CRLF)
        .from_writer(Vec::new());
    wtr.write_record(["polyline", "index", "t", "w", "x", "y", "z"])
        .expect("writing to memory");
    for (i, line) in curve.polylines2d.iter().enumerate() {
        let line3 = curve.polylines3d.get(i);
        for (k, p) in line.iter().enumerate() {
            let q = line3.and_then(|l| l.get(k));
            let xyz = q
                .map(|q| [q.x.to_string(), q.y.to_string(), q.z.to_string()])
                .unwrap_or_default();
            wtr.write_record([
                i.to_string(),
                k.to_string(),
                p.t.to_string(),
                p.w.to_string(),
                xyz[0].clone(),
                xyz[1].clone(),
                xyz[2].clone(),
            ])
            .expect("writing to memory");
        }
    }
    String::from_utf8(wtr.into_inner().expect("flush to memory")).expect("ascii output")
}
