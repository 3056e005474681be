//! Vertex-set CSV (`i,j` header, one 1-based vertex per line).

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::vertex_set::VertexSet;

pub fn write_vertex_csv<W: Write>(writer: W, set: &VertexSet) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["i", "j"])?;
    for v in set.iter() {
        w.write_record([v.i.to_string(), v.j.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn vertex_csv_string(set: &VertexSet) -> String {
    let mut buf = Vec::new();
    write_vertex_csv(&mut buf, set).expect("writing to memory");
    String::from_utf8(buf).expect("csv is ascii")
}

/// Reads the vertices of a CSV set; `n` is not part of the format.
pub fn read_vertex_csv<R: Read>(reader: R) -> Result<Vec<Vertex>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = r.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "i" || &headers[1] != "j" {
        return Err(Error::Parse { line: 1, msg: format!("expected header \"i,j\", found {headers:?}") });
    }
    let mut out = Vec::new();
    for (idx, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = idx + 2;
        let field = |k: usize| -> Result<usize> {
            rec.get(k)
                .ok_or_else(|| Error::Parse { line, msg: "expected two fields".into() })?
                .parse()
                .map_err(|_| Error::Parse { line, msg: format!("not a coordinate: {:?}", &rec[k]) })
        };
        out.push(Vertex::new(field(0)?, field(1)?));
    }
    Ok(out)
}

/// Reads a CSV set for a known `n`, rejecting out-of-range vertices.
pub fn read_vertex_set<R: Read>(reader: R, n: usize) -> Result<VertexSet> {
    VertexSet::from_vertices(n, read_vertex_csv(reader)?)
}
