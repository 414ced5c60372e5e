//! Report shapes and serialization.
//!
//! Reports are deterministic: struct field order fixes the JSON layout,
//! eigenvalues arrive pre-sorted from the solver, and all randomness in
//! the pipeline is seeded. CSV eigenvalue tables always start with the
//! header `index,re,im,modulus,stabilized,in_region`.

use serde::Serialize;

use gribov_core::eigen::SpectrumResult;
use gribov_core::spectral::EnclosureRegion;

use crate::schema::SpecDocument;

#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// Truncation sizes the command solved at (base first).
    pub trunc_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecDocument>,
}

impl Header {
    pub fn new(command: &str, trunc_sizes: Vec<usize>, spec: Option<SpecDocument>) -> Self {
        Self {
            tool: "gribov",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            trunc_sizes,
            spec,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueRow {
    /// One-based position in the sorted spectrum.
    pub index: usize,
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub stabilized: bool,
    /// Membership in the enclosure region, when one is available.
    pub in_region: Option<bool>,
}

pub fn eigenvalue_rows(spectrum: &SpectrumResult, region: Option<&EnclosureRegion>) -> Vec<EigenvalueRow> {
    spectrum
        .eigenvalues
        .iter()
        .zip(spectrum.stabilized.iter())
        .enumerate()
        .map(|(i, (z, &stab))| EigenvalueRow {
            index: i + 1,
            re: z.re,
            im: z.im,
            modulus: z.norm(),
            stabilized: stab,
            in_region: region.map(|r| r.contains(*z)),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub variant: &'static str,
    pub r0: f64,
    pub rays: Vec<f64>,
    pub alpha: f64,
    pub exponents: Vec<f64>,
    /// Stabilized eigenvalues inside the region / stabilized total.
    pub members: usize,
    pub stabilized_total: usize,
}

impl RegionReport {
    pub fn new(variant: &'static str, region: &EnclosureRegion, spectrum: &SpectrumResult) -> Self {
        let mut members = 0;
        let mut total = 0;
        for (z, &s) in spectrum.eigenvalues.iter().zip(spectrum.stabilized.iter()) {
            if s {
                total += 1;
                if region.contains(*z) {
                    members += 1;
                }
            }
        }
        Self {
            variant,
            r0: region.r0,
            rays: region.rays.clone(),
            alpha: region.alpha,
            exponents: region.exponents.clone(),
            members,
            stabilized_total: total,
        }
    }
}

/// Serializes any report to pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}

/// Eigenvalue table in the fixed CSV layout.
pub fn eigenvalues_csv(rows: &[EigenvalueRow]) -> String {
    let mut out = String::from("index,re,im,modulus,stabilized,in_region\n");
    for r in rows {
        let membership = match r.in_region {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.index, r.re, r.im, r.modulus, r.stabilized, membership
        ));
    }
    out
}

/// Flat key/value CSV for the scalar-valued reports.
pub fn key_value_csv(pairs: &[(String, String)]) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in pairs {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gribov_core::bargmann::build_h0;
    use gribov_core::eigen::eigenvalues;

    #[test]
    fn csv_always_has_the_header() {
        let spec = eigenvalues(&build_h0(3).unwrap()).unwrap();
        let rows = eigenvalue_rows(&spec, None);
        let csv = eigenvalues_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "index,re,im,modulus,stabilized,in_region");
        assert_eq!(lines.next().unwrap(), "1,1,0,1,true,");
    }

    #[test]
    fn json_reports_end_with_newline() {
        let h = Header::new("conditions", vec![], None);
        let s = to_json(&h);
        assert!(s.ends_with('\n'));
        assert!(s.contains("\"tool\": \"gribov\""));
    }
}
