//! JSON instance and solution files.

use std::io::Read;

use anyhow::{bail, Context};
use covline_core::halfplane::{CenteredDisk, HalfPlane, SeparatedInstance};
use covline_core::problem::Problem;
use covline_core::solve1d::WeightedSegment;
use covline_core::{Disk, Metric, PointP, Solution};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricName {
    #[serde(rename = "1d")]
    OneD,
    Unit,
    L1,
    L2,
    Linf,
    Separable,
    Halfplane,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskEntry {
    pub cx: f64,
    /// Center height; separable instances only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cy: Option<f64>,
    pub r: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentEntry {
    pub l: f64,
    pub r: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfPlaneEntry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub metric: MetricName,
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disks: Option<Vec<DiskEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<SegmentEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfplanes: Option<Vec<HalfPlaneEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separator_y: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsEntry {
    pub couples: usize,
    pub kappa: u64,
    pub order_violations: u64,
    pub events: u64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub weight: f64,
    pub chosen: Vec<usize>,
    pub feasible: bool,
    pub stats: StatsEntry,
}

impl SolutionFile {
    pub fn solved(sol: &Solution, elapsed_ms: f64) -> Self {
        SolutionFile {
            weight: sol.weight,
            chosen: sol.chosen.clone(),
            feasible: true,
            stats: StatsEntry {
                couples: sol.stats.couples,
                kappa: sol.stats.kappa,
                order_violations: sol.stats.order_violations,
                events: sol.stats.events,
                elapsed_ms,
            },
        }
    }

    pub fn infeasible(elapsed_ms: f64) -> Self {
        SolutionFile {
            weight: 0.0,
            chosen: vec![],
            feasible: false,
            stats: StatsEntry { elapsed_ms, ..Default::default() },
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

pub fn parse_instance(text: &str) -> anyhow::Result<InstanceFile> {
    serde_json::from_str(text).context("malformed instance file")
}

pub fn parse_solution(text: &str) -> anyhow::Result<SolutionFile> {
    serde_json::from_str(text).context("malformed solution file")
}

fn points(raw: &[[f64; 2]]) -> Vec<PointP> {
    raw.iter().enumerate().map(|(i, &[x, y])| PointP::new(x, y, i)).collect()
}

impl InstanceFile {
    pub fn to_problem(&self) -> anyhow::Result<Problem> {
        let lists = [self.disks.is_some(), self.segments.is_some(), self.halfplanes.is_some()];
        if lists.iter().filter(|&&b| b).count() != 1 {
            bail!("exactly one of \"disks\", \"segments\", \"halfplanes\" is required");
        }
        if self.separator_y.is_some() && self.metric != MetricName::Separable {
            bail!("\"separator_y\" only applies to separable instances");
        }
        let disk_metric = match self.metric {
            MetricName::Unit => Some(Metric::Unit),
            MetricName::L1 => Some(Metric::L1),
            MetricName::L2 => Some(Metric::L2),
            MetricName::Linf => Some(Metric::Linf),
            _ => None,
        };
        Ok(match (self.metric, &self.disks, &self.segments, &self.halfplanes) {
            (MetricName::OneD, _, Some(segs), _) => Problem::Segments {
                points: self.points.iter().map(|p| p[0]).collect(),
                segments: segs.iter().map(|s| WeightedSegment::new(s.l, s.r, s.w)).collect(),
            },
            (MetricName::Separable, Some(disks), _, _) => {
                let disks = disks
                    .iter()
                    .enumerate()
                    .map(|(id, d)| {
                        let cy = d.cy.with_context(|| format!("separable disk {id} needs \"cy\""))?;
                        Ok(CenteredDisk { cx: d.cx, cy, r: d.r, w: d.w, id })
                    })
                    .collect::<anyhow::Result<_>>()?;
                Problem::Separated(SeparatedInstance {
                    points: points(&self.points),
                    disks,
                    separator_y: self.separator_y.unwrap_or(0.0),
                })
            }
            (MetricName::Halfplane, _, _, Some(hps)) => Problem::HalfPlanes {
                points: points(&self.points),
                planes: hps.iter().enumerate().map(|(id, h)| HalfPlane::new(h.a, h.b, h.c, h.w, id)).collect(),
            },
            (_, Some(disks), _, _) if disk_metric.is_some() => {
                if let Some(id) = disks.iter().position(|d| d.cy.is_some()) {
                    bail!("disk {id}: \"cy\" only applies to separable instances");
                }
                Problem::Disks {
                    metric: disk_metric.unwrap(),
                    points: points(&self.points),
                    disks: disks.iter().enumerate().map(|(id, d)| Disk::new(d.cx, d.r, d.w, id)).collect(),
                }
            }
            _ => bail!("metric {:?} does not match the object list", self.metric),
        })
    }

    pub fn from_problem(problem: &Problem) -> Self {
        let blank = |metric, points| InstanceFile {
            metric,
            points,
            disks: None,
            segments: None,
            halfplanes: None,
            separator_y: None,
        };
        let pairs = |pts: &[PointP]| pts.iter().map(|p| [p.x, p.y]).collect();
        match problem {
            Problem::Segments { points, segments } => InstanceFile {
                segments: Some(segments.iter().map(|s| SegmentEntry { l: s.l, r: s.r, w: s.w }).collect()),
                ..blank(MetricName::OneD, points.iter().map(|&x| [x, 0.0]).collect())
            },
            Problem::Disks { metric, points, disks } => {
                let name = match metric {
                    Metric::Unit => MetricName::Unit,
                    Metric::L1 => MetricName::L1,
                    Metric::L2 => MetricName::L2,
                    Metric::Linf => MetricName::Linf,
                    Metric::OneD => MetricName::OneD,
                };
                InstanceFile {
                    disks: Some(disks.iter().map(|d| DiskEntry { cx: d.cx, cy: None, r: d.r, w: d.w }).collect()),
                    ..blank(name, pairs(points))
                }
            }
            Problem::Separated(s) => InstanceFile {
                disks: Some(s.disks.iter().map(|d| DiskEntry { cx: d.cx, cy: Some(d.cy), r: d.r, w: d.w }).collect()),
                separator_y: Some(s.separator_y),
                ..blank(MetricName::Separable, pairs(&s.points))
            },
            Problem::HalfPlanes { points, planes } => InstanceFile {
                halfplanes: Some(planes.iter().map(|h| HalfPlaneEntry { a: h.a, b: h.b, c: h.c, w: h.w }).collect()),
                ..blank(MetricName::Halfplane, pairs(points))
            },
        }
    }
}
