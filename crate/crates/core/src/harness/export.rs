//! OFF meshes for three-dimensional results.

use std::fmt::Write;

use crate::arith::{Rational, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{dot, sub, Polytope};

use super::ReportFile;

/// Vertices of facet `f` in counter-clockwise order seen from outside.
fn ordered_face(p: &Polytope, f: usize) -> Vec<usize> {
    let idx = p.facet_vertices(f);
    let pts: Vec<&Vec<Rational>> = idx.iter().map(|&i| &p.vertices()[i]).collect();
    let k = Rational::from(pts.len() as i64);
    let center: Vec<Rational> = (0..3)
        .map(|c| pts.iter().fold(Rational::ZERO, |acc, v| acc + &v[c]) / &k)
        .collect();
    let n = &p.facets()[f].normal;
    let u = sub(pts[0], &center);
    let w = vec![
        n[1].clone() * &u[2] - n[2].clone() * &u[1],
        n[2].clone() * &u[0] - n[0].clone() * &u[2],
        n[0].clone() * &u[1] - n[1].clone() * &u[0],
    ];
    let mut keyed: Vec<(f64, usize)> = idx
        .iter()
        .zip(&pts)
        .map(|(&i, v)| {
            let r = sub(v, &center);
            (
                Scalar::to_f64(&dot(&r, &w)).atan2(Scalar::to_f64(&dot(&r, &u))),
                i,
            )
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, i)| i).collect()
}

fn write_vertices(out: &mut String, vertices: &[Vec<Rational>]) {
    for v in vertices {
        let coords: Vec<String> = v.iter().map(|x| Scalar::to_f64(x).to_string()).collect();
        writeln!(out, "{}", coords.join(" ")).expect("writing to a String");
    }
}

pub fn polytope_to_off(p: &Polytope) -> Result<String> {
    if p.dim() != 3 {
        return Err(Error::ExportNot3d);
    }
    let mut out = String::from("OFF\n");
    writeln!(
        out,
        "{} {} {}",
        p.n_vertices(),
        p.facets().len(),
        p.n_edges()
    )
    .expect("writing to a String");
    write_vertices(&mut out, p.vertices());
    for f in 0..p.facets().len() {
        let face = ordered_face(p, f);
        let ids: Vec<String> = face.iter().map(usize::to_string).collect();
        writeln!(out, "{} {}", face.len(), ids.join(" ")).expect("writing to a String");
    }
    Ok(out)
}

/// Exact reports get hull faces; float reports are written as a bare
/// point cloud because their vertices are only approximately coplanar.
pub fn report_to_off(r: &ReportFile) -> Result<String> {
    if r.dim != 3 {
        return Err(Error::ExportNot3d);
    }
    let vertices = r.vertices()?;
    if r.mode.is_exact() {
        return polytope_to_off(&Polytope::from_vertices(3, vertices)?);
    }
    let mut out = String::from("OFF\n# point cloud only\n");
    writeln!(out, "{} 0 0", vertices.len()).expect("writing to a String");
    write_vertices(&mut out, &vertices);
    Ok(out)
}
