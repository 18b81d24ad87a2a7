//! File formats: CSV point clouds and curves, SVG curve paths, OFF/OBJ body
//! meshes, JSON profile and relation serializations.

use crate::dual::AntipodalRelation;
use crate::error::{Error, Result};
use crate::geom::{Norm, PointCloud};
use crate::median::ConstantWidthBody;
use crate::planar::{cantor_profile, reuleaux_beta, BetaProfile, Harmonic, PlanarCurve};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Writes one point per row; full round-trip precision.
pub fn write_cloud_csv<W: Write>(w: &mut W, cloud: &PointCloud) -> Result<()> {
    let names = ["x", "y", "z"];
    let header: Vec<String> = (0..cloud.dim())
        .map(|d| names.get(d).map(|s| s.to_string()).unwrap_or(format!("c{d}")))
        .collect();
    writeln!(w, "{}", header.join(","))?;
    for p in cloud.points() {
        let row: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Reads a CSV of points. A header row is detected by non-numeric fields;
/// when the header names `x, y[, z]` those columns are used (so curve files
/// with a leading `t` column re-ingest as clouds), otherwise all columns are
/// coordinates.
pub fn read_cloud_csv<R: BufRead>(r: R, norm: Norm) -> Result<PointCloud> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut columns: Option<Vec<usize>> = None;
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(|f| f.trim()).collect();
        let parsed: Vec<std::result::Result<f64, _>> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        if parsed.iter().any(|p| p.is_err()) {
            if lineno == 0 {
                // header: select coordinate columns by name if present
                let coords: Vec<usize> = fields
                    .iter()
                    .enumerate()
                    .filter(|(_, name)| ["x", "y", "z"].contains(&name.to_lowercase().as_str()))
                    .map(|(i, _)| i)
                    .collect();
                columns = if coords.is_empty() { None } else { Some(coords) };
                continue;
            }
            return Err(Error::Parse(format!(
                "line {}: non-numeric field",
                lineno + 1
            )));
        }
        let values: Vec<f64> = parsed.into_iter().map(|p| p.unwrap()).collect();
        let point = match &columns {
            Some(cols) => cols
                .iter()
                .map(|&i| {
                    values.get(i).copied().ok_or_else(|| {
                        Error::Parse(format!("line {}: missing column {i}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<f64>>>()?,
            None => values,
        };
        points.push(point);
    }
    PointCloud::new(points, norm)
}

/// Writes `t, x, y` rows for a sampled curve.
pub fn write_curve_csv<W: Write>(w: &mut W, curve: &PlanarCurve) -> Result<()> {
    writeln!(w, "t,x,y")?;
    for (t, p) in curve.ts().iter().zip(curve.points()) {
        writeln!(w, "{t},{},{}", p[0], p[1])?;
    }
    Ok(())
}

/// Writes the curve as a closed SVG 1.1 path; one user unit equals one
/// length unit (the y axis is flipped for display only).
pub fn write_curve_svg<W: Write>(w: &mut W, curve: &PlanarCurve) -> Result<()> {
    let pts = curve.points();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    let margin = 0.05 * ((hi[0] - lo[0]).max(hi[1] - lo[1])).max(1e-9);
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        lo[0] - margin,
        -(hi[1] + margin),
        (hi[0] - lo[0]) + 2.0 * margin,
        (hi[1] - lo[1]) + 2.0 * margin
    )?;
    let mut d = String::new();
    for (i, p) in pts[..pts.len() - 1].iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!("{cmd}{} {} ", p[0], -p[1]));
    }
    d.push('Z');
    writeln!(
        w,
        r#"  <path d="{d}" fill="none" stroke="black" stroke-width="{}"/>"#,
        0.002 * curve.width()
    )?;
    writeln!(w, "</svg>")?;
    Ok(())
}

/// Vertices and triangles of an exported mesh.
pub type TriangleMesh = (Vec<Vec<f64>>, Vec<[usize; 3]>);

/// Triangulated boundary mesh of a 3D body; needs the icosahedral sampling
/// (the only scheme that carries faces).
pub fn body_mesh(body: &ConstantWidthBody) -> Result<TriangleMesh> {
    let faces = body
        .samples()
        .faces()
        .ok_or_else(|| {
            Error::Config("mesh export needs the subdivided-icosahedron sampling".into())
        })?
        .to_vec();
    Ok((body.boundary_points().to_vec(), faces))
}

/// OFF with counterclockwise faces.
pub fn write_off<W: Write>(w: &mut W, verts: &[Vec<f64>], faces: &[[usize; 3]]) -> Result<()> {
    writeln!(w, "OFF")?;
    writeln!(w, "{} {} 0", verts.len(), faces.len())?;
    for v in verts {
        writeln!(w, "{} {} {}", v[0], v[1], v[2])?;
    }
    for f in faces {
        writeln!(w, "3 {} {} {}", f[0], f[1], f[2])?;
    }
    Ok(())
}

/// Wavefront OBJ with counterclockwise faces (1-based indices).
pub fn write_obj<W: Write>(w: &mut W, verts: &[Vec<f64>], faces: &[[usize; 3]]) -> Result<()> {
    for v in verts {
        writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
    }
    for f in faces {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

/// Antipodal relation as a JSON pair list.
pub fn antipodal_relation_json(rel: &AntipodalRelation) -> String {
    serde_json::json!({
        "tolerance": rel.tolerance,
        "pairs": rel.pairs,
    })
    .to_string()
}

#[derive(Serialize, Deserialize)]
struct CloudJson {
    norm: Norm,
    points: Vec<Vec<f64>>,
}

/// Point cloud as JSON with its norm.
pub fn cloud_to_json(cloud: &PointCloud) -> String {
    serde_json::to_string(&CloudJson {
        norm: cloud.norm(),
        points: cloud.points().to_vec(),
    })
    .expect("cloud serializes")
}

pub fn cloud_from_json(s: &str) -> Result<PointCloud> {
    let raw: CloudJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("cloud json: {e}")))?;
    PointCloud::new(raw.points, raw.norm)
}

/// Declarative profile description, the JSON exchange format for planar
/// profiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProfileSpec {
    PiecewiseConstant {
        edges: Vec<f64>,
        values: Vec<f64>,
    },
    TrigPolynomial {
        harmonics: Vec<HarmonicSpec>,
    },
    Reuleaux {
        k: u32,
    },
    Cantor {
        stage: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmonicSpec {
    pub k: u32,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

impl ProfileSpec {
    pub fn to_profile(&self) -> Result<BetaProfile> {
        match self {
            ProfileSpec::PiecewiseConstant { edges, values } => {
                BetaProfile::piecewise_constant(edges.clone(), values.clone())
            }
            ProfileSpec::TrigPolynomial { harmonics } => BetaProfile::trig_polynomial(
                harmonics
                    .iter()
                    .map(|h| Harmonic {
                        k: h.k,
                        cos_coeff: h.cos,
                        sin_coeff: h.sin,
                    })
                    .collect(),
            ),
            ProfileSpec::Reuleaux { k } => reuleaux_beta(*k),
            ProfileSpec::Cantor { stage } => cantor_profile(*stage),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("profile spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile spec serializes")
    }

    /// A serializable description of an existing profile, when one exists.
    pub fn describe(profile: &BetaProfile) -> Result<Self> {
        match profile {
            BetaProfile::PiecewiseConstant { edges, values } => {
                Ok(ProfileSpec::PiecewiseConstant {
                    edges: edges.clone(),
                    values: values.clone(),
                })
            }
            BetaProfile::TrigPolynomial { harmonics } => Ok(ProfileSpec::TrigPolynomial {
                harmonics: harmonics
                    .iter()
                    .map(|h| HarmonicSpec {
                        k: h.k,
                        cos: h.cos_coeff,
                        sin: h.sin_coeff,
                    })
                    .collect(),
            }),
            BetaProfile::Callback { .. } => Err(Error::Config(
                "black-box profiles have no declarative form".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::curve_from_beta;

    #[test]
    fn cloud_csv_round_trip_is_exact() {
        let cloud = PointCloud::new(
            vec![vec![0.1, -2.5e-17], vec![std::f64::consts::PI, 1.0 / 3.0]],
            Norm::Euclidean,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_cloud_csv(&mut buf, &cloud).unwrap();
        let back = read_cloud_csv(std::io::BufReader::new(&buf[..]), Norm::Euclidean).unwrap();
        assert_eq!(cloud.points(), back.points());
    }

    #[test]
    fn curve_csv_reingests_as_xy_cloud() {
        let curve = curve_from_beta(&BetaProfile::circle(), 1.0, 128).unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &curve).unwrap();
        let cloud = read_cloud_csv(std::io::BufReader::new(&buf[..]), Norm::Euclidean).unwrap();
        assert_eq!(cloud.dim(), 2);
        assert_eq!(cloud.len(), curve.points().len());
        assert_eq!(cloud.points()[3][0], curve.points()[3][0]);
    }

    #[test]
    fn svg_contains_a_closed_path() {
        let curve = curve_from_beta(&BetaProfile::circle(), 1.0, 64).unwrap();
        let mut buf = Vec::new();
        write_curve_svg(&mut buf, &curve).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.contains("<svg"));
        assert!(s.contains("Z\""));
    }

    #[test]
    fn cloud_json_round_trip() {
        let cloud = PointCloud::new(
            vec![vec![0.25, -1.5], vec![2.0 / 3.0, 1e-30]],
            Norm::LInfinity,
        )
        .unwrap();
        let back = cloud_from_json(&cloud_to_json(&cloud)).unwrap();
        assert_eq!(cloud.points(), back.points());
        assert_eq!(cloud.norm(), back.norm());
    }

    #[test]
    fn profile_spec_json_round_trip() {
        let spec = ProfileSpec::TrigPolynomial {
            harmonics: vec![HarmonicSpec {
                k: 3,
                cos: -1.0,
                sin: 0.0,
            }],
        };
        let json = spec.to_json();
        let back = ProfileSpec::from_json(&json).unwrap();
        let p = back.to_profile().unwrap();
        assert!((p.eval(0.3) - (-(0.9f64).cos())).abs() < 1e-12);
        assert!(ProfileSpec::from_json(r#"{"kind":"reuleaux","k":2,"bogus":1}"#).is_err());
    }

    #[test]
    fn off_and_obj_forms() {
        let verts = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        let faces = vec![[0usize, 1, 2]];
        let mut off = Vec::new();
        write_off(&mut off, &verts, &faces).unwrap();
        let s = String::from_utf8(off).unwrap();
        assert!(s.starts_with("OFF\n3 1 0\n"));
        let mut obj = Vec::new();
        write_obj(&mut obj, &verts, &faces).unwrap();
        let s = String::from_utf8(obj).unwrap();
        assert!(s.contains("f 1 2 3"));
    }
}
