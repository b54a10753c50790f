//! Parameter grids over a base scenario, with predicted bounds next to the
//! simulated counts.
//!
//! Axes are expanded row-major (first axis outermost). Points run in
//! parallel; rows always come back in grid order.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::configurator::{advise, burst_bound, min_history_length, mra_applicable, Preference};
use crate::domain::{Algorithm, PathDelay};
use crate::error::{Error, Result};
use crate::sim::{run, Scenario};
use crate::time::Nanos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Cmi,
    /// Makes every path after the first constant at `first.d_bc + value`.
    DeltaD,
    Jitter,
    Mif,
    NumPackets,
    Algorithm,
    HistoryLength,
    ResetTimeout,
}

impl Param {
    fn name(self) -> &'static str {
        match self {
            Param::Cmi => "cmi",
            Param::DeltaD => "delta_d",
            Param::Jitter => "jitter",
            Param::Mif => "mif",
            Param::NumPackets => "num_packets",
            Param::Algorithm => "algorithm",
            Param::HistoryLength => "history_length",
            Param::ResetTimeout => "reset_timeout",
        }
    }

    fn is_duration(self) -> bool {
        matches!(
            self,
            Param::Cmi | Param::DeltaD | Param::Jitter | Param::ResetTimeout
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisValue {
    Count(u64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: AxisValue,
    pub end: AxisValue,
    pub step: AxisValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub param: Param,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<AxisValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<Range>,
}

/// Config fields recomputed by the advisor at every grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Advised {
    Algorithm,
    HistoryLength,
    ResetTimeout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: Scenario,
    pub axes: Vec<Axis>,
    #[serde(default)]
    pub advised: Vec<Advised>,
    #[serde(default = "default_preference")]
    pub prefer: Preference,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_preference() -> Preference {
    Preference::PreferMra
}

/// A typed axis value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setting {
    Duration(Nanos),
    Count(u64),
    Algorithm(Algorithm),
}

impl std::fmt::Display for Setting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Setting::Duration(d) => write!(f, "{d}"),
            Setting::Count(n) => write!(f, "{n}"),
            Setting::Algorithm(a) => write!(f, "{a}"),
        }
    }
}

fn setting(param: Param, v: &AxisValue) -> Result<Setting> {
    let wrong = || Error::invalid(format!("axis {}: bad value {v:?}", param.name()));
    match (param, v) {
        (p, AxisValue::Text(s)) if p.is_duration() => Ok(Setting::Duration(s.parse()?)),
        (Param::Algorithm, AxisValue::Text(s)) => match s.as_str() {
            "MRA" => Ok(Setting::Algorithm(Algorithm::Mra)),
            "VRA" => Ok(Setting::Algorithm(Algorithm::Vra)),
            _ => Err(wrong()),
        },
        (Param::Mif | Param::NumPackets | Param::HistoryLength, AxisValue::Count(n)) => {
            Ok(Setting::Count(*n))
        }
        _ => Err(wrong()),
    }
}

impl Axis {
    pub fn settings(&self) -> Result<Vec<Setting>> {
        let out = match (&self.values, &self.range) {
            (Some(values), None) => values
                .iter()
                .map(|v| setting(self.param, v))
                .collect::<Result<Vec<_>>>()?,
            (None, Some(r)) => {
                let raw = |v| match setting(self.param, v)? {
                    Setting::Duration(d) => Ok(d.as_ns()),
                    Setting::Count(n) => Ok(n),
                    Setting::Algorithm(_) => Err(Error::invalid("algorithm axes take a value list")),
                };
                let (start, end, step) = (raw(&r.start)?, raw(&r.end)?, raw(&r.step)?);
                if step == 0 || start > end {
                    return Err(Error::invalid(format!(
                        "axis {}: range needs start <= end and a positive step",
                        self.param.name()
                    )));
                }
                let wrap = |x| {
                    if self.param.is_duration() {
                        Setting::Duration(Nanos(x))
                    } else {
                        Setting::Count(x)
                    }
                };
                (start..=end).step_by(step as usize).map(wrap).collect()
            }
            _ => {
                return Err(Error::invalid(format!(
                    "axis {}: give exactly one of values or range",
                    self.param.name()
                )))
            }
        };
        if out.is_empty() {
            return Err(Error::invalid(format!("axis {} is empty", self.param.name())));
        }
        Ok(out)
    }
}

fn apply(scenario: &mut Scenario, param: Param, value: &Setting) -> Result<()> {
    match (param, value) {
        (Param::Cmi, Setting::Duration(d)) => scenario.traffic = scenario.traffic.with_cmi(*d)?,
        (Param::Jitter, Setting::Duration(d)) => scenario.traffic = scenario.traffic.with_jitter(*d)?,
        (Param::Mif, Setting::Count(n)) => {
            let mif = u32::try_from(*n).map_err(|_| Error::invalid("mif too large"))?;
            scenario.traffic = scenario.traffic.with_mif(mif)?;
        }
        (Param::NumPackets, Setting::Count(n)) => scenario.num_packets = *n,
        (Param::DeltaD, Setting::Duration(d)) => {
            if scenario.paths.len() < 2 {
                return Err(Error::invalid("delta_d axis needs at least two paths"));
            }
            let slow = scenario.paths[0].d_bc() + *d;
            for p in scenario.paths.iter_mut().skip(1) {
                *p = PathDelay::constant(p.path_id(), slow);
            }
        }
        (Param::Algorithm, Setting::Algorithm(a)) => {
            scenario.config = scenario.config.with_algorithm(*a)?;
        }
        (Param::HistoryLength, Setting::Count(n)) => {
            let l = u32::try_from(*n).map_err(|_| Error::invalid("history_length too large"))?;
            scenario.config = scenario.config.with_history_length(l)?;
        }
        (Param::ResetTimeout, Setting::Duration(d)) => {
            scenario.config = scenario.config.with_reset_timeout(*d)?;
        }
        _ => unreachable!("settings are typed per parameter"),
    }
    Ok(())
}

/// One grid point: the values of every axis, in axis order.
pub type Point = Vec<Setting>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub point: Point,
    pub passed: u64,
    pub duplicates: u64,
    pub rogue: u64,
    pub resets: u64,
    pub max_burst: u64,
    pub mra_applicable: bool,
    pub min_history_length: u32,
    pub reset_timeout: Nanos,
    pub burst_bound: u64,
}

impl SweepSpec {
    pub fn grid(&self) -> Result<Vec<Point>> {
        let mut grid: Vec<Point> = vec![Vec::new()];
        for axis in &self.axes {
            let settings = axis.settings()?;
            grid = grid
                .into_iter()
                .flat_map(|p| {
                    settings.iter().map(move |s| {
                        let mut q = p.clone();
                        q.push(s.clone());
                        q
                    })
                })
                .collect();
        }
        if self.axes.is_empty() {
            return Err(Error::invalid("sweep needs at least one axis"));
        }
        Ok(grid)
    }

    /// The scenario simulated at one grid point.
    pub fn scenario_at(&self, point: &Point) -> Result<Scenario> {
        let mut s = self.base.clone();
        for (axis, value) in self.axes.iter().zip(point) {
            apply(&mut s, axis.param, value)?;
        }
        if !self.advised.is_empty() {
            let advice = advise(&s.traffic, &s.envelope()?, self.prefer);
            for field in &self.advised {
                s.config = match field {
                    Advised::Algorithm => s.config.with_algorithm(advice.config.algorithm())?,
                    Advised::HistoryLength => s
                        .config
                        .with_history_length(advice.config.history_length().max(advice.min_history_length))?,
                    Advised::ResetTimeout => s.config.with_reset_timeout(advice.reset_timeout)?,
                };
            }
        }
        s.validate()?;
        Ok(s)
    }

    pub fn header(&self) -> Vec<String> {
        self.axes
            .iter()
            .map(|a| a.param.name().to_string())
            .chain(
                [
                    "passed",
                    "duplicates",
                    "rogue",
                    "resets",
                    "max_burst",
                    "mra_applicable",
                    "min_history_length",
                    "advised_reset_timeout",
                    "burst_bound",
                ]
                .map(String::from),
            )
            .collect()
    }

    pub fn run(&self) -> Result<Vec<SweepRow>> {
        let points = self.grid()?;
        let scenarios = points
            .iter()
            .map(|p| self.scenario_at(p))
            .collect::<Result<Vec<_>>>()?;
        points
            .into_par_iter()
            .zip(scenarios)
            .map(|(point, s)| {
                let result = run(&s)?;
                let env = s.envelope()?;
                Ok(SweepRow {
                    point,
                    passed: result.counters.passed,
                    duplicates: result.passed_duplicates,
                    rogue: result.counters.rogue,
                    resets: result.counters.resets,
                    max_burst: result.max_burst,
                    mra_applicable: mra_applicable(&s.traffic, &env),
                    min_history_length: min_history_length(&s.traffic, &env),
                    reset_timeout: advise(&s.traffic, &env, self.prefer).reset_timeout,
                    burst_bound: burst_bound(&s.traffic, &env),
                })
            })
            .collect()
    }
}

pub fn write_csv<W: Write>(spec: &SweepSpec, rows: &[SweepRow], out: W) -> Result<()> {
    let csv_err = |source| Error::Csv {
        context: "writing sweep output".into(),
        source,
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(spec.header()).map_err(csv_err)?;
    for row in rows {
        let record: Vec<String> = row
            .point
            .iter()
            .map(ToString::to_string)
            .chain([
                row.passed.to_string(),
                row.duplicates.to_string(),
                row.rogue.to_string(),
                row.resets.to_string(),
                row.max_burst.to_string(),
                row.mra_applicable.to_string(),
                row.min_history_length.to_string(),
                row.reset_timeout.to_string(),
                row.burst_bound.to_string(),
            ])
            .collect();
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush().map_err(|e| csv_err(e.into()))?;
    Ok(())
}
