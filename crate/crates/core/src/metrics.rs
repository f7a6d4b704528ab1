//! Shape metrics used to track how round a mesh has become.

use std::f64::consts::PI;

use crate::curvature::{compute_field, CurvatureField};
use crate::error::{Error, Result};
use crate::mesh::{face_cross, EdgeAdjacency, TriMesh, Vec3};
use crate::obj::fmt_f64;

pub fn surface_area(mesh: &TriMesh) -> f64 {
    (0..mesh.face_count())
        .map(|f| 0.5 * face_cross(mesh, f).norm())
        .sum()
}

/// Enclosed volume by the divergence theorem; positive for outward winding.
pub fn signed_volume(mesh: &TriMesh) -> f64 {
    (0..mesh.face_count())
        .map(|f| {
            let [a, b, c] = mesh.corners(f);
            a.dot(&b.cross(&c))
        })
        .sum::<f64>()
        / 6.0
}

/// Isoperimetric quotient `(36π·V²/A³)^(1/3)`: 1 for a round sphere, less otherwise.
pub fn sphericity(area: f64, volume: f64) -> Result<f64> {
    if !(volume > 0.0) {
        return Err(Error::NonPositiveVolume { volume });
    }
    if !(area > 0.0) {
        return Err(Error::InvalidParams(format!(
            "area must be positive, got {area}"
        )));
    }
    Ok((36.0 * PI * volume * volume / (area * area * area)).cbrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusStats {
    /// Plain vertex average.
    pub centroid: Vec3,
    pub mean: f64,
    /// Population standard deviation over mean.
    pub cv: f64,
}

pub fn radius_stats(mesh: &TriMesh) -> RadiusStats {
    let n = mesh.vertex_count() as f64;
    let centroid = mesh.vertices().iter().fold(Vec3::zeros(), |acc, p| acc + p) / n;
    let radii: Vec<f64> = mesh
        .vertices()
        .iter()
        .map(|p| (p - centroid).norm())
        .collect();
    let (mean, std) = mean_std(&radii);
    RadiusStats {
        centroid,
        mean,
        cv: if mean > 0.0 { std / mean } else { 0.0 },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureStats {
    pub k_min: f64,
    pub k_max: f64,
    pub k_mean: f64,
    /// Population standard deviation.
    pub k_std: f64,
}

pub fn curvature_stats(field: &CurvatureField) -> CurvatureStats {
    let (k_mean, k_std) = mean_std(&field.vertex_curvature);
    CurvatureStats {
        k_min: field.k_min,
        k_max: field.k_max,
        k_mean,
        k_std,
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Header of the metrics CSV; one [`MetricsRecord::csv_row`] per checkpoint follows.
pub const CSV_HEADER: &str = "iter,area,volume,sphericity,radius_cv,k_min,k_max,k_mean,k_std";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsRecord {
    pub iteration: usize,
    pub area: f64,
    pub volume: f64,
    pub sphericity: f64,
    pub radius: RadiusStats,
    pub curvature: CurvatureStats,
}

impl MetricsRecord {
    pub fn compute(iteration: usize, mesh: &TriMesh, adj: &EdgeAdjacency) -> Result<Self> {
        let field = compute_field(mesh, adj)?;
        Self::from_field(iteration, mesh, &field)
    }

    pub fn from_field(iteration: usize, mesh: &TriMesh, field: &CurvatureField) -> Result<Self> {
        let area = surface_area(mesh);
        let volume = signed_volume(mesh);
        Ok(Self {
            iteration,
            area,
            volume,
            sphericity: sphericity(area, volume)?,
            radius: radius_stats(mesh),
            curvature: curvature_stats(field),
        })
    }

    /// Row matching [`CSV_HEADER`], floats at 17 significant digits, no newline.
    pub fn csv_row(&self) -> String {
        let fields = [
            self.area,
            self.volume,
            self.sphericity,
            self.radius.cv,
            self.curvature.k_min,
            self.curvature.k_max,
            self.curvature.k_mean,
            self.curvature.k_std,
        ];
        let mut row = self.iteration.to_string();
        for x in fields {
            row.push(',');
            row.push_str(&fmt_f64(x));
        }
        row
    }

    /// Coefficient of variation of the vertex curvature, `k_std / k_mean`.
    pub fn curvature_cv(&self) -> f64 {
        self.curvature.k_std / self.curvature.k_mean
    }
}
