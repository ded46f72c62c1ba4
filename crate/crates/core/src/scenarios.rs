//! Curve generators for the film-thickness study.
//!
//! Each generator returns [`CurveData`] whose metadata records every input,
//! so that [`regenerate`] can rebuild the curve bit for bit.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::curve::CurveData;
use crate::error::{Error, Result};
use crate::lifshitz::{self, LayeredStack, QuadratureSpec, StackDefaults};
use crate::materials::{self, DielectricModel, FilmRecord};
use crate::optics;
use crate::quadrature::Transform;
use crate::units::{self, Length};

/// Logarithmically spaced points with exact endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl LogGrid {
    pub const fn new(min: f64, max: f64, points: usize) -> Self {
        Self { min, max, points }
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        if n == 1 {
            return vec![self.min];
        }
        let ratio = (self.max / self.min).ln();
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.max
                } else {
                    self.min * (ratio * i as f64 / (n - 1) as f64).exp()
                }
            })
            .collect()
    }
}

/// Imaginary frequencies (ω₀ units) for the permittivity and optical-length curves.
pub const WIDE_FREQUENCY_GRID: LogGrid = LogGrid::new(1e-4, 1e3, 200);

/// Low-frequency window where the 6.4 nm and 4 nm permittivities cross.
pub const LOW_FREQUENCY_GRID: LogGrid = LogGrid::new(1e-6, 1e-1, 200);

/// Separations 100, 120, …, 1000 nm.
pub fn separation_grid_nm() -> Vec<f64> {
    (0..46).map(|i| 100.0 + 20.0 * i as f64).collect()
}

/// All tabulated thicknesses, thickest first.
pub fn table1_thicknesses() -> Vec<f64> {
    materials::table1_registry()
        .iter()
        .map(|r| r.thickness_nm)
        .collect()
}

fn thickness_label(d_nm: f64) -> String {
    format!("d{d_nm}nm")
}

fn json(model: &DielectricModel) -> String {
    serde_json::to_string(model).expect("models always serialize")
}

struct Meta(BTreeMap<String, String>);

impl Meta {
    fn new(figure: &str, x_units: &str, y: &str) -> Self {
        let mut m = BTreeMap::new();
        m.insert("figure".into(), figure.into());
        m.insert("x_units".into(), x_units.into());
        m.insert("y".into(), y.into());
        m.insert("omega_0_per_s".into(), format!("{:?}", units::OMEGA_0));
        Meta(m)
    }

    fn set(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.into(), value.to_string());
        self
    }

    fn float(self, key: &str, value: f64) -> Self {
        self.set(key, format!("{value:?}"))
    }

    fn model(self, key: &str, model: &DielectricModel) -> Self {
        self.set(key, json(model))
    }

    fn quadrature(self, spec: &QuadratureSpec) -> Self {
        self.float("rel_tol", spec.rel_tol())
            .float("abs_tol", spec.abs_tol())
            .set("max_refinements", spec.max_refinements())
            .set("transform", spec.transform().name())
    }
}

/// ε_film(iξ)/ε_bulk(iξ) for each thickness, the normalizer being the bulk
/// Drude model (thickest film's ω_p and γ, c1 = 0).
pub fn fig1_normalized_epsilon(thicknesses_nm: &[f64], grid: &[f64]) -> Result<Vec<CurveData>> {
    let bulk = materials::bulk_gold();
    thicknesses_nm
        .iter()
        .map(|&d| {
            let film = materials::lookup_film(d)?.model();
            normalized_epsilon_curve(d, &film, &bulk, grid)
        })
        .collect()
}

fn normalized_epsilon_curve(
    d: f64,
    film: &DielectricModel,
    bulk: &DielectricModel,
    grid: &[f64],
) -> Result<CurveData> {
    let y = grid
        .iter()
        .map(|&xi| Ok(film.epsilon_iw(xi)? / bulk.epsilon_iw(xi)?))
        .collect::<Result<Vec<_>>>()?;
    let meta = Meta::new("fig1", "omega_0", "epsilon_film/epsilon_bulk_drude")
        .float("thickness_nm", d)
        .model("film_model", film)
        .model("normalizer", bulk);
    CurveData::new(thickness_label(d), grid.to_vec(), y, meta.0)
}

/// Un-normalized ε(iξ) for the 6.4 nm and 4 nm films at low frequency.
pub fn fig2_low_freq_epsilon(grid: &[f64]) -> Result<Vec<CurveData>> {
    [6.4, 4.0]
        .iter()
        .map(|&d| {
            let film = materials::lookup_film(d)?.model();
            epsilon_curve(d, &film, grid)
        })
        .collect()
}

fn epsilon_curve(d: f64, film: &DielectricModel, grid: &[f64]) -> Result<CurveData> {
    let y = grid
        .iter()
        .map(|&xi| film.epsilon_iw(xi))
        .collect::<Result<Vec<_>>>()?;
    let meta = Meta::new("fig2", "omega_0", "epsilon")
        .float("thickness_nm", d)
        .model("film_model", film);
    CurveData::new(thickness_label(d), grid.to_vec(), y, meta.0)
}

/// Reduction-factor calculations over tabulated films.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ForceScenario {
    pub defaults: StackDefaults,
    pub quadrature: QuadratureSpec,
}

impl ForceScenario {
    fn eta(&self, record: &FilmRecord, gap_nm: f64) -> Result<f64> {
        LayeredStack::tabulated_film(record, Length::nanometers(gap_nm), &self.defaults)
            .and_then(|stack| lifshitz::reduction_factor(&stack, &self.quadrature))
            .map_err(|e| Error::Scenario {
                thickness_nm: record.thickness_nm,
                gap_nm,
                source: Box::new(e),
            })
    }

    fn force_meta(&self, figure: &str, x_units: &str) -> Meta {
        Meta::new(figure, x_units, "eta")
            .model("half_space", &self.defaults.half_space)
            .model("substrate", &self.defaults.substrate)
            .quadrature(&self.quadrature)
    }

    /// η(L) for each film thickness, separations in nm.
    pub fn fig3_eta_vs_separation(
        &self,
        thicknesses_nm: &[f64],
        gaps_nm: &[f64],
    ) -> Result<Vec<CurveData>> {
        let records = thicknesses_nm
            .iter()
            .map(|&d| materials::lookup_film(d))
            .collect::<Result<Vec<_>>>()?;
        let jobs: Vec<(usize, f64)> = (0..records.len())
            .flat_map(|i| gaps_nm.iter().map(move |&l| (i, l)))
            .collect();
        let values = jobs
            .par_iter()
            .map(|&(i, l)| self.eta(&records[i], l))
            .collect::<Result<Vec<_>>>()?;
        records
            .iter()
            .zip(values.chunks(gaps_nm.len().max(1)))
            .map(|(rec, etas)| {
                let meta = self
                    .force_meta("fig3", "nm")
                    .float("thickness_nm", rec.thickness_nm)
                    .model("film_model", &rec.model());
                CurveData::new(
                    thickness_label(rec.thickness_nm),
                    gaps_nm.to_vec(),
                    etas.to_vec(),
                    meta.0,
                )
            })
            .collect()
    }

    /// η(d) at a fixed separation. Abscissae are sorted ascending.
    pub fn fig4_eta_vs_thickness(&self, gap_nm: f64, thicknesses_nm: &[f64]) -> Result<CurveData> {
        let mut d: Vec<f64> = thicknesses_nm.to_vec();
        d.sort_by(f64::total_cmp);
        let records = d
            .iter()
            .map(|&t| materials::lookup_film(t))
            .collect::<Result<Vec<_>>>()?;
        let y = records
            .par_iter()
            .map(|rec| self.eta(rec, gap_nm))
            .collect::<Result<Vec<_>>>()?;
        let meta = self.force_meta("fig4", "nm").float("gap_nm", gap_nm);
        CurveData::new(format!("L{gap_nm}nm"), d, y, meta.0)
    }
}

/// Percent difference of the film optical length between the Drude-Smith
/// model of a tabulated film and Drude/plasma models with the same ω_p (and
/// γ), at fixed ck/ω₀.
///
/// Returns the Drude comparison first, then the plasma comparison.
pub fn fig5_delta_percent(d_nm: f64, grid: &[f64], ck_over_w0: f64) -> Result<[CurveData; 2]> {
    let record = materials::lookup_film(d_nm)?;
    let film = record.model();
    let drude = DielectricModel::drude(record.omega_p(), record.gamma())?;
    let plasma = DielectricModel::plasma(record.omega_p())?;
    Ok([
        delta_curve(d_nm, &film, "drude", &drude, grid, ck_over_w0)?,
        delta_curve(d_nm, &film, "plasma", &plasma, grid, ck_over_w0)?,
    ])
}

fn delta_curve(
    d_nm: f64,
    film: &DielectricModel,
    label: &str,
    reference: &DielectricModel,
    grid: &[f64],
    ck_over_w0: f64,
) -> Result<CurveData> {
    let thickness = Length::nanometers(d_nm).value();
    let y = grid
        .iter()
        .map(|&xi| {
            optics::optical_length_percent_diff_fixed_k(xi, ck_over_w0, film, reference, thickness)
        })
        .collect::<Result<Vec<_>>>()?;
    let meta = Meta::new("fig5", "omega_0", "percent_difference_optical_length")
        .float("thickness_nm", d_nm)
        .float("ck_over_w0", ck_over_w0)
        .model("film_model", film)
        .model("reference_model", reference);
    CurveData::new(label, grid.to_vec(), y, meta.0)
}

fn meta_f64(curve: &CurveData, key: &str) -> Result<f64> {
    let raw = curve.meta_value(key)?;
    raw.parse()
        .map_err(|_| Error::Curve(format!("metadata `{key}` is not a number: {raw}")))
}

fn meta_model(curve: &CurveData, key: &str) -> Result<DielectricModel> {
    Ok(serde_json::from_str(curve.meta_value(key)?)?)
}

fn meta_scenario(curve: &CurveData) -> Result<ForceScenario> {
    let refinements = curve.meta_value("max_refinements")?;
    let transform = curve.meta_value("transform")?;
    let quadrature = QuadratureSpec::new(
        meta_f64(curve, "rel_tol")?,
        meta_f64(curve, "abs_tol")?,
        refinements
            .parse()
            .map_err(|_| Error::Curve(format!("bad max_refinements `{refinements}`")))?,
        Transform::from_name(transform)
            .ok_or_else(|| Error::Curve(format!("unknown transform `{transform}`")))?,
    )?;
    Ok(ForceScenario {
        defaults: StackDefaults {
            half_space: meta_model(curve, "half_space")?,
            substrate: meta_model(curve, "substrate")?,
        },
        quadrature,
    })
}

/// Recomputes a curve from its own metadata and abscissae.
pub fn regenerate(curve: &CurveData) -> Result<CurveData> {
    let grid = &curve.x;
    match curve.meta_value("figure")? {
        "fig1" => normalized_epsilon_curve(
            meta_f64(curve, "thickness_nm")?,
            &meta_model(curve, "film_model")?,
            &meta_model(curve, "normalizer")?,
            grid,
        ),
        "fig2" => epsilon_curve(
            meta_f64(curve, "thickness_nm")?,
            &meta_model(curve, "film_model")?,
            grid,
        ),
        "fig3" => {
            let d = meta_f64(curve, "thickness_nm")?;
            meta_scenario(curve)?
                .fig3_eta_vs_separation(&[d], grid)
                .map(|mut v| v.remove(0))
        }
        "fig4" => meta_scenario(curve)?.fig4_eta_vs_thickness(meta_f64(curve, "gap_nm")?, grid),
        "fig5" => delta_curve(
            meta_f64(curve, "thickness_nm")?,
            &meta_model(curve, "film_model")?,
            &curve.label,
            &meta_model(curve, "reference_model")?,
            grid,
            meta_f64(curve, "ck_over_w0")?,
        ),
        other => Err(Error::Curve(format!("unknown figure `{other}`"))),
    }
}
