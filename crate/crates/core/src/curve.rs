//! Curve data and its CSV representation.
//!
//! A curve file starts with `# key=value` metadata lines, followed by one
//! `x,y` record per line with 17 significant digits, which is enough to
//! read every `f64` back bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// An (x, y) series with the parameters needed to regenerate it.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveData {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub meta: BTreeMap<String, String>,
}

impl CurveData {
    /// Builds a curve, checking that `x` is strictly increasing and matches `y` in length.
    pub fn new(
        label: impl Into<String>,
        x: Vec<f64>,
        y: Vec<f64>,
        meta: BTreeMap<String, String>,
    ) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Curve(format!(
                "{} abscissae but {} ordinates",
                x.len(),
                y.len()
            )));
        }
        if let Some(w) = x.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(Error::Curve(format!(
                "abscissae not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(Self {
            label: label.into(),
            x,
            y,
            meta,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn meta_value(&self, key: &str) -> Result<&str> {
        self.meta
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Curve(format!("missing metadata key `{key}`")))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# label={}", self.label).unwrap();
        for (key, value) in &self.meta {
            writeln!(out, "# {key}={value}").unwrap();
        }
        for (x, y) in self.x.iter().zip(&self.y) {
            writeln!(out, "{x:.16e},{y:.16e}").unwrap();
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut label = None;
        let mut meta = BTreeMap::new();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# ") {
                let (key, value) = rest.split_once('=').ok_or_else(|| {
                    Error::Curve(format!("line {}: metadata without `=`", lineno + 1))
                })?;
                if key == "label" {
                    label = Some(value.to_owned());
                } else {
                    meta.insert(key.to_owned(), value.to_owned());
                }
                continue;
            }
            let parse = |s: Option<&str>| -> Result<f64> {
                s.and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| Error::Curve(format!("line {}: expected `x,y`", lineno + 1)))
            };
            let mut fields = line.split(',');
            x.push(parse(fields.next())?);
            y.push(parse(fields.next())?);
        }
        let label = label.ok_or_else(|| Error::Curve("missing label".into()))?;
        Self::new(label, x, y, meta)
    }

    /// File name `<figure>_<label>.csv`.
    pub fn file_name(&self, figure: &str) -> String {
        format!("{figure}_{}.csv", self.label)
    }

    /// Writes the curve into `dir` and returns the path written.
    pub fn write_to_dir(&self, dir: &Path, figure: &str) -> Result<PathBuf> {
        let path = dir.join(self.file_name(figure));
        std::fs::write(&path, self.to_csv()).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_csv(&text)
    }
}
