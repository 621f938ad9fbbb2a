//! Point-cloud CSV and persistence-diagram JSON files.
//!
//! CSV: a header `x0,...,x{m-1}` optionally followed by `density`, then one
//! point per row. Diagram JSON:
//! `{"field": p, "max_dim": d, "points": [{"dim": k, "birth": b, "death": v | "inf"}]}`
//! with an optional `"metadata"` object. Diagram floats are written with 17
//! significant digits so that they read back bit-exactly.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::persistence::{DiagramPoint, PersistenceDiagram};
use crate::point_cloud::PointCloud;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn write_cloud_csv<W: Write>(cloud: &PointCloud, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let mut header: Vec<String> = (0..cloud.dim()).map(|i| format!("x{i}")).collect();
    if cloud.density().is_some() {
        header.push("density".into());
    }
    w.write_record(&header).map_err(csv_err)?;
    for (i, p) in cloud.points().enumerate() {
        let mut row: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
        if let Some(d) = cloud.density() {
            row.push(format!("{}", d[i]));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => parse_err(format!("{other:?}")),
        }
    } else {
        parse_err(e.to_string())
    }
}

pub fn read_cloud_csv<R: Read>(input: R) -> Result<PointCloud> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    let names: Vec<&str> = header.iter().collect();
    let has_density = names.last() == Some(&"density");
    let dim = names.len() - has_density as usize;
    for (i, name) in names[..dim].iter().enumerate() {
        if *name != format!("x{i}") {
            return Err(parse_err(format!("unexpected column '{name}' (expected x{i})")));
        }
    }
    let mut coords = Vec::new();
    let mut density = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() != names.len() {
            return Err(parse_err(format!("row {} has {} fields, expected {}", line + 2, rec.len(), names.len())));
        }
        for (k, field) in rec.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(format!("row {}: '{field}' is not a number", line + 2)))?;
            if k < dim {
                coords.push(v);
            } else {
                density.push(v);
            }
        }
    }
    let cloud = PointCloud::from_flat(dim, coords).map_err(|e| parse_err(e.to_string()))?;
    if has_density {
        cloud.with_density(density).map_err(|e| parse_err(e.to_string()))
    } else {
        Ok(cloud)
    }
}

pub fn read_cloud_file(path: &Path) -> Result<PointCloud> {
    read_cloud_csv(File::open(path)?)
}

pub fn write_cloud_file(cloud: &PointCloud, path: &Path) -> Result<()> {
    write_cloud_csv(cloud, File::create(path)?)
}

fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn diagram_to_json(d: &PersistenceDiagram) -> String {
    let mut s = format!("{{\"field\": {}, \"max_dim\": {}", d.field, d.max_dim);
    if !d.metadata.is_empty() {
        let meta = serde_json::to_string(&d.metadata).expect("metadata is plain JSON");
        s.push_str(&format!(", \"metadata\": {meta}"));
    }
    s.push_str(", \"points\": [");
    for (i, p) in d.points().iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let death = if p.is_infinite() { "\"inf\"".to_string() } else { fmt_float(p.death) };
        s.push_str(&format!(
            "{{\"dim\": {}, \"birth\": {}, \"death\": {}}}",
            p.dim,
            fmt_float(p.birth),
            death
        ));
    }
    s.push_str("]}\n");
    s
}

pub fn diagram_from_json(text: &str) -> Result<PersistenceDiagram> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let field = v["field"]
        .as_u64()
        .ok_or_else(|| parse_err("missing integer 'field'"))? as u32;
    let max_dim = v["max_dim"]
        .as_u64()
        .ok_or_else(|| parse_err("missing integer 'max_dim'"))? as usize;
    let raw = v["points"].as_array().ok_or_else(|| parse_err("missing array 'points'"))?;
    let mut points = Vec::with_capacity(raw.len());
    for (i, p) in raw.iter().enumerate() {
        let dim = p["dim"].as_u64().ok_or_else(|| parse_err(format!("point {i}: bad 'dim'")))? as usize;
        let birth = p["birth"].as_f64().ok_or_else(|| parse_err(format!("point {i}: bad 'birth'")))?;
        let death = match &p["death"] {
            Value::String(s) if s == "inf" => f64::INFINITY,
            other => other.as_f64().ok_or_else(|| parse_err(format!("point {i}: bad 'death'")))?,
        };
        if !(birth.is_finite() && death >= birth) {
            return Err(parse_err(format!("point {i}: need finite birth <= death")));
        }
        points.push(DiagramPoint::new(dim, birth, death));
    }
    let mut d = PersistenceDiagram::new(field, max_dim, points);
    if let Some(meta) = v.get("metadata").and_then(Value::as_object) {
        d.metadata = meta.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    }
    Ok(d)
}

pub fn read_diagram_file(path: &Path) -> Result<PersistenceDiagram> {
    diagram_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_diagram_file(d: &PersistenceDiagram, path: &Path) -> Result<()> {
    std::fs::write(path, diagram_to_json(d))?;
    Ok(())
}
