//! Parameter grids, flattened report rows and deterministic CSV output.
//!
//! Rows are always produced in lexicographic (J, D, T) order. Grid points may
//! be evaluated in parallel; the collected order does not depend on
//! scheduling, and files are written to a temporary sibling and renamed into
//! place, so a failed run never leaves partial output behind.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::tol;
use crate::uncertainty::default_report;

pub const DEFAULT_PRECISION: usize = 12;

pub const HEADER: [&str; 15] = [
    "J", "D", "T", "beta", "delta", "theta", "C", "Y", "hRB", "hSB", "hAB", "W", "L", "U", "V",
];

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed row: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid axis '{input}': {reason}")]
pub struct AxisParseError {
    input: String,
    reason: String,
}

/// Values along one grid axis.
#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    List(Vec<f64>),
    Linear { min: f64, max: f64, count: usize },
    Log { min: f64, max: f64, count: usize },
}

impl Axis {
    pub fn scalar(x: f64) -> Self {
        Axis::List(vec![x])
    }

    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        Axis::Linear { min, max, count }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        Axis::Log { min, max, count }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ParamDomain(msg));
        match self {
            Axis::List(v) if v.is_empty() => bad("empty value list".into()),
            Axis::List(v) if v.iter().any(|x| !x.is_finite()) => {
                bad("non-finite value in list".into())
            }
            Axis::List(_) => Ok(()),
            Axis::Linear { min, max, count } | Axis::Log { min, max, count } => {
                if *count == 0 {
                    return bad("range count must be >= 1".into());
                }
                if !min.is_finite() || !max.is_finite() {
                    return bad("non-finite range bound".into());
                }
                if *count > 1 && min >= max {
                    return bad(format!("range needs min < max, got {min}:{max}"));
                }
                if matches!(self, Axis::Log { .. }) && *min <= 0.0 {
                    return bad(format!("log range needs min > 0, got {min}"));
                }
                Ok(())
            }
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::List(v) => v.clone(),
            Axis::Linear { min, max, count } => {
                spaced(*min, *max, *count, |a, b, f| a + (b - a) * f)
            }
            Axis::Log { min, max, count } => spaced(*min, *max, *count, |a, b, f| {
                (a.ln() + (b.ln() - a.ln()) * f).exp()
            }),
        }
    }
}

fn spaced(min: f64, max: f64, count: usize, at: impl Fn(f64, f64, f64) -> f64) -> Vec<f64> {
    if count == 1 {
        return vec![min];
    }
    (0..count)
        .map(|i| match i {
            0 => min,
            i if i == count - 1 => max,
            i => at(min, max, i as f64 / (count - 1) as f64),
        })
        .collect()
}

impl FromStr for Axis {
    type Err = AxisParseError;

    /// `x`, `x1,x2,...`, `min:max:count` or `min:max:count:log`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = |reason: &str| AxisParseError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| err("not a number"));
        let s = s.trim();
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let (min, max) = match parts.as_slice() {
                [a, b, _] | [a, b, _, _] => (num(a)?, num(b)?),
                _ => return Err(err("expected min:max:count[:log]")),
            };
            let count = parts[2]
                .trim()
                .parse::<usize>()
                .map_err(|_| err("count is not an integer"))?;
            let axis = match parts.get(3).map(|t| t.trim()) {
                None | Some("lin") => Axis::linear(min, max, count),
                Some("log") => Axis::log(min, max, count),
                Some(_) => return Err(err("spacing must be 'lin' or 'log'")),
            };
            axis.validate().map_err(|e| err(&e.to_string()))?;
            Ok(axis)
        } else {
            let values = s
                .split(',')
                .map(num)
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(Axis::List(values))
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
            Axis::Linear { min, max, count } => write!(f, "{min}:{max}:{count}"),
            Axis::Log { min, max, count } => write!(f, "{min}:{max}:{count}:log"),
        }
    }
}

/// Cartesian product of J, D and T axes.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub j: Axis,
    pub d: Axis,
    pub t: Axis,
}

impl GridSpec {
    pub fn new(j: Axis, d: Axis, t: Axis) -> Result<Self> {
        let g = Self { j, d, t };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        self.j.validate()?;
        self.d.validate()?;
        self.t.validate()?;
        if self.j_values().is_empty() {
            return Err(Error::ParamDomain("J axis contains only zero".into()));
        }
        Ok(())
    }

    /// J values with (numerical) zero removed.
    pub fn j_values(&self) -> Vec<f64> {
        let values = self.j.values();
        let scale = values.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        values
            .into_iter()
            .filter(|x| x.abs() > 1e-12 * scale)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.j_values().len() * self.d.values().len() * self.t.values().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in lexicographic (J, D, T) order.
    pub fn points(&self) -> Result<Vec<ModelParams>> {
        self.validate()?;
        let (ds, ts) = (self.d.values(), self.t.values());
        let mut out = Vec::with_capacity(self.len());
        for &j in &self.j_values() {
            for &d in &ds {
                for &t in &ts {
                    out.push(ModelParams::new(j, d, t)?);
                }
            }
        }
        Ok(out)
    }
}

/// One flattened report.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub j: f64,
    pub d: f64,
    pub t: f64,
    pub beta: f64,
    pub delta: f64,
    pub theta: f64,
    pub c: f64,
    pub y: f64,
    pub h_rb: f64,
    pub h_sb: f64,
    pub h_ab: f64,
    pub w: f64,
    pub l: f64,
    pub u: Option<f64>,
    pub v: f64,
}

impl SweepRow {
    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.j, self.d, self.t)
    }

    /// Numeric columns in header order; U is `None` when undefined.
    pub fn columns(&self) -> [Option<f64>; 15] {
        [
            Some(self.j),
            Some(self.d),
            Some(self.t),
            Some(self.beta),
            Some(self.delta),
            Some(self.theta),
            Some(self.c),
            Some(self.y),
            Some(self.h_rb),
            Some(self.h_sb),
            Some(self.h_ab),
            Some(self.w),
            Some(self.l),
            self.u,
            Some(self.v),
        ]
    }

    pub fn to_record(&self, precision: usize) -> Vec<String> {
        self.columns()
            .iter()
            .map(|c| c.map_or_else(String::new, |x| format_significant(x, precision)))
            .collect()
    }

    pub fn from_record(record: &csv::StringRecord) -> std::result::Result<Self, SweepError> {
        if record.len() != HEADER.len() {
            return Err(SweepError::Parse(format!(
                "expected {} fields, found {}",
                HEADER.len(),
                record.len()
            )));
        }
        let field = |i: usize| -> std::result::Result<Option<f64>, SweepError> {
            let s = record[i].trim();
            if s.is_empty() {
                return Ok(None);
            }
            s.parse::<f64>()
                .map(Some)
                .map_err(|_| SweepError::Parse(format!("column {} = '{s}'", HEADER[i])))
        };
        let req = |i: usize| {
            field(i)?.ok_or_else(|| SweepError::Parse(format!("column {} is empty", HEADER[i])))
        };
        Ok(Self {
            j: req(0)?,
            d: req(1)?,
            t: req(2)?,
            beta: req(3)?,
            delta: req(4)?,
            theta: req(5)?,
            c: req(6)?,
            y: req(7)?,
            h_rb: req(8)?,
            h_sb: req(9)?,
            h_ab: req(10)?,
            w: req(11)?,
            l: req(12)?,
            u: field(13)?,
            v: req(14)?,
        })
    }
}

/// Full report at one parameter point, flattened.
pub fn run_report(p: &ModelParams) -> Result<SweepRow> {
    let r = default_report(p)?;
    Ok(SweepRow {
        j: p.j(),
        d: p.d(),
        t: p.t(),
        beta: p.beta(),
        delta: p.delta(),
        theta: p.theta(),
        c: r.concurrence.get(),
        y: r.mixedness.get(),
        h_rb: r.h_rb,
        h_sb: r.h_sb,
        h_ab: r.h_ab,
        w: r.w,
        l: r.l,
        u: r.u,
        v: r.v,
    })
}

/// Evaluates every point (in parallel) and returns rows in input order.
pub fn compute_rows(points: &[ModelParams]) -> Result<Vec<SweepRow>> {
    points.par_iter().map(run_report).collect()
}

/// `%.{digits}g`-style formatting: shortest of fixed or exponent notation,
/// trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Serializes rows as CSV (header, LF line endings).
pub fn write_csv<W: Write>(
    rows: &[SweepRow],
    precision: usize,
    out: W,
) -> std::result::Result<(), SweepError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.to_record(precision))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes rows to `path` through a temporary file in the same directory.
pub fn write_csv_atomic(
    rows: &[SweepRow],
    precision: usize,
    path: &Path,
) -> std::result::Result<(), SweepError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write_csv(rows, precision, tmp.as_file_mut())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| SweepError::Io(e.error))?;
    Ok(())
}

pub fn read_csv(path: &Path) -> std::result::Result<Vec<SweepRow>, SweepError> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(SweepError::Parse(format!("unexpected header {header:?}")));
    }
    r.records()
        .map(|rec| SweepRow::from_record(&rec?))
        .collect()
}

/// Evaluates the grid and writes it to `out`. Returns the row count.
pub fn run_sweep(
    grid: &GridSpec,
    out: &Path,
    precision: usize,
) -> std::result::Result<usize, SweepError> {
    let rows = compute_rows(&grid.points()?)?;
    write_csv_atomic(&rows, precision, out)?;
    Ok(rows.len())
}

/// Figures whose data can be regenerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    /// Concurrence over (D, J) at T ∈ {0.5, 1}.
    Fig2,
    /// Mixedness over (D, J) at T ∈ {0.5, 1}.
    Fig3,
    /// W, L, U, V against T at D = J = 1.
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    /// V over (D, T), read as V(Y, D), for J = ±1.
    Fig10,
}

impl FigureId {
    pub const ALL: [FigureId; 9] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9,
        FigureId::Fig10,
    ];

    pub fn number(self) -> u8 {
        match self {
            FigureId::Fig2 => 2,
            FigureId::Fig3 => 3,
            FigureId::Fig4 => 4,
            FigureId::Fig5 => 5,
            FigureId::Fig6 => 6,
            FigureId::Fig7 => 7,
            FigureId::Fig8 => 8,
            FigureId::Fig9 => 9,
            FigureId::Fig10 => 10,
        }
    }

    /// Default grid: D over [0, 3] (61 points), J over [−3, 3] without zero
    /// (60 points), T over [0.05, 5] (100 points).
    pub fn default_grid(self) -> GridSpec {
        let d_surface = Axis::linear(0.0, 3.0, 61);
        let j_surface = Axis::linear(-3.0, 3.0, 61);
        let t_curve = Axis::linear(0.05, 5.0, 100);
        match self {
            FigureId::Fig2 | FigureId::Fig3 | FigureId::Fig5 | FigureId::Fig7 => GridSpec {
                j: j_surface,
                d: d_surface,
                t: Axis::List(vec![0.5, 1.0]),
            },
            FigureId::Fig4 | FigureId::Fig6 | FigureId::Fig8 | FigureId::Fig9 => GridSpec {
                j: Axis::scalar(1.0),
                d: Axis::scalar(1.0),
                t: t_curve,
            },
            FigureId::Fig10 => GridSpec {
                j: Axis::List(vec![-1.0, 1.0]),
                d: d_surface,
                t: t_curve,
            },
        }
    }

    pub fn grid(self, overrides: &GridOverrides) -> GridSpec {
        let base = self.default_grid();
        GridSpec {
            j: overrides.j.clone().unwrap_or(base.j),
            d: overrides.d.clone().unwrap_or(base.d),
            t: overrides.t.clone().unwrap_or(base.t),
        }
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let n = s.trim().trim_start_matches("fig");
        FigureId::ALL
            .into_iter()
            .find(|f| n == f.number().to_string())
            .ok_or_else(|| format!("unknown figure '{s}' (expected fig2..fig10)"))
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fig{}", self.number())
    }
}

/// Optional replacements for a figure's default axes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridOverrides {
    pub j: Option<Axis>,
    pub d: Option<Axis>,
    pub t: Option<Axis>,
}

pub fn figure_data(
    fig: FigureId,
    overrides: &GridOverrides,
    out: &Path,
    precision: usize,
) -> std::result::Result<usize, SweepError> {
    run_sweep(&fig.grid(overrides), out, precision)
}

/// (Y, V) samples along a temperature curve, sorted by Y.
pub fn mixedness_curve(j: f64, d: f64, t_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let points = t_grid
        .iter()
        .map(|&t| ModelParams::new(j, d, t))
        .collect::<Result<Vec<_>>>()?;
    let mut curve: Vec<(f64, f64)> = compute_rows(&points)?
        .into_iter()
        .map(|r| (r.y, r.v))
        .collect();
    curve.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(curve)
}

/// Piecewise-linear interpolation on a curve sorted by abscissa, clamped at
/// the ends.
pub fn interpolate(curve: &[(f64, f64)], x: f64) -> f64 {
    let k = curve.partition_point(|p| p.0 < x);
    if k == curve.len() {
        return curve[k - 1].1;
    }
    if curve[k].0 == x || k == 0 {
        return curve[k].1;
    }
    let (x0, y0) = curve[k - 1];
    let (x1, y1) = curve[k];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// Max |V_{j1}(Y) − V_{j2}(Y)| over the shared Y range of the two
/// temperature curves at DM strength `d`.
pub fn v_collapse_check(d: f64, j1: f64, j2: f64, t_grid: &[f64]) -> Result<f64> {
    if j1 == 0.0 || j2 == 0.0 || j1 * j2 <= 0.0 {
        return Err(Error::ParamDomain(format!(
            "couplings must be nonzero with the same sign, got {j1} and {j2}"
        )));
    }
    if t_grid.len() < 20 {
        return Err(Error::ParamDomain(format!(
            "temperature grid needs at least 20 points, got {}",
            t_grid.len()
        )));
    }
    let t_min = t_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let t_max = t_grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if t_min <= 0.0 || t_max < 10.0 * t_min {
        return Err(Error::ParamDomain(format!(
            "temperature grid must be positive and span a decade, got [{t_min}, {t_max}]"
        )));
    }
    let a = mixedness_curve(j1, d, t_grid)?;
    let b = mixedness_curve(j2, d, t_grid)?;
    let lo = a[0].0.max(b[0].0);
    let hi = a[a.len() - 1].0.min(b[b.len() - 1].0);
    let shared: Vec<f64> = a
        .iter()
        .chain(&b)
        .map(|p| p.0)
        .filter(|y| (lo..=hi).contains(y))
        .collect();
    if shared.len() < tol::V_COLLAPSE_MIN_POINTS {
        return Err(Error::InsufficientOverlap {
            points: shared.len(),
            required: tol::V_COLLAPSE_MIN_POINTS,
        });
    }
    Ok(shared
        .iter()
        .map(|&y| (interpolate(&a, y) - interpolate(&b, y)).abs())
        .fold(0.0, f64::max))
}

/// V at mixedness `y` on the temperature curve for (j, d), or `None` when
/// `y` is outside the curve's range.
pub fn v_at_mixedness(j: f64, d: f64, y: f64, t_grid: &[f64]) -> Result<Option<f64>> {
    let curve = mixedness_curve(j, d, t_grid)?;
    let inside = y >= curve[0].0 && y <= curve[curve.len() - 1].0;
    Ok(inside.then(|| interpolate(&curve, y)))
}
