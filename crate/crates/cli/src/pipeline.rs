//! The verification pipeline: mapping equation, transversality, Ahlfors
//! tensor (both formulas when possible), rank and isometry.

use std::time::Instant;

use cr_core::ahlfors::{ahlfors_explicit_hyperquadric, ahlfors_via_logq, rank_report, AhlforsTensor};
use cr_core::kahler::isometry_check;
use cr_core::{CrError, HoloMap, Side, SurfacePoint};
use serde::Serialize;

use crate::definition::{Expectations, MapDefinition};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stages {
    pub check: bool,
    pub ahlfors: bool,
    pub rank: bool,
    pub isometry: bool,
}

impl Stages {
    pub fn all() -> Self {
        Self { check: true, ahlfors: true, rank: true, isometry: true }
    }

    /// Requested flags, or everything when none is set.
    pub fn or_all(self) -> Self {
        if self == Self::default() {
            Self::all()
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StageError {
    pub stage: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Transversality {
    pub identically_degenerate: bool,
    pub at_base: Option<bool>,
    pub at_points: Vec<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AhlforsReport {
    pub via_log_q: Vec<Vec<String>>,
    pub explicit: Option<Vec<Vec<String>>>,
    pub methods_agree: Option<bool>,
    pub hermitian: bool,
    pub vanishes: bool,
    /// Weighted order of validity for series maps.
    pub order: Option<u32>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankAt {
    pub point: Vec<String>,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub name: Option<String>,
    pub mode: String,
    pub maps_into: Option<bool>,
    pub side: Option<String>,
    pub q: Option<String>,
    pub transversality: Option<Transversality>,
    pub ahlfors: Option<AhlforsReport>,
    pub generic_rank: Option<usize>,
    pub rank_at: Vec<RankAt>,
    pub isometry: Option<bool>,
    pub errors: Vec<StageError>,
    pub failures: Vec<String>,
    pub timing_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.failures.is_empty()
    }

    /// Exit code: 0 pass, 1 check failure.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON document without the timing field, for determinism checks.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        r.timing_ms = 0;
        r.to_json()
    }

    pub fn summary(&self) -> String {
        let mut out = Vec::new();
        if let Some(n) = &self.name {
            out.push(format!("map: {n} ({})", self.mode));
        }
        if let Some(m) = self.maps_into {
            out.push(format!("maps into target: {m}"));
        }
        if let Some(q) = &self.q {
            out.push(format!("Q = {q}"));
        }
        if let Some(s) = &self.side {
            out.push(format!("side: {s}"));
        }
        if let Some(a) = &self.ahlfors {
            let order = a.order.map(|k| format!(" (through weighted order {k})")).unwrap_or_default();
            out.push(format!("Ahlfors tensor vanishes: {}{order}", a.vanishes));
            for (k, row) in a.via_log_q.iter().enumerate() {
                out.push(format!("  A[{}] = [{}]", k + 1, row.join(", ")));
            }
            if let Some(agree) = a.methods_agree {
                out.push(format!("explicit formula agrees: {agree}"));
            }
        }
        if let Some(r) = self.generic_rank {
            out.push(format!("generic rank: {r}"));
        }
        for r in &self.rank_at {
            out.push(format!("  rank at ({}): {}", r.point.join(", "), r.rank));
        }
        if let Some(i) = self.isometry {
            out.push(format!("isometric extension: {i}"));
        }
        for e in &self.errors {
            out.push(format!("error in {}: {}", e.stage, e.message));
        }
        for f in &self.failures {
            out.push(format!("FAILED: {f}"));
        }
        out.push(if self.passed() { "result: pass".into() } else { "result: fail".into() });
        out.join("\n")
    }
}

fn strings(m: &AhlforsTensor) -> Vec<Vec<String>> {
    m.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn fail_expect<T: PartialEq + std::fmt::Debug>(
    failures: &mut Vec<String>,
    what: &str,
    expected: &Option<T>,
    got: Option<&T>,
) {
    if let Some(e) = expected {
        if got != Some(e) {
            failures.push(format!("expected {what} = {e:?}, got {got:?}"));
        }
    }
}

/// Runs the selected stages. Stage errors are recorded, and stages that
/// depend on a failed one are skipped.
pub fn run_pipeline(def: &MapDefinition, map: &HoloMap, points: &[SurfacePoint], stages: Stages) -> Report {
    let start = Instant::now();
    let stages = stages.or_all();
    let mut report = Report {
        name: def.name.clone(),
        mode: if map.is_series() { "series".into() } else { "rational".into() },
        maps_into: None,
        side: None,
        q: None,
        transversality: None,
        ahlfors: None,
        generic_rank: None,
        rank_at: Vec::new(),
        isometry: None,
        errors: Vec::new(),
        failures: Vec::new(),
        timing_ms: 0,
    };
    let err = |r: &mut Report, stage: &str, e: CrError| {
        r.errors.push(StageError { stage: stage.into(), message: e.to_string() })
    };

    let quotient = match map.check_maps_into() {
        Ok(q) => Some(q),
        Err(CrError::NotInto(rem)) => {
            report.maps_into = Some(false);
            report.failures.push(format!("the map does not send the source into the target; remainder {rem}"));
            None
        }
        Err(e) => {
            err(&mut report, "check", e);
            None
        }
    };
    if let Some(q) = &quotient {
        report.maps_into = Some(true);
        report.side = Some(q.side.to_string());
        report.q = Some(q.q.to_string());
        let degenerate = q.side == Side::Degenerate;
        let at_base = map.transversal_at(q, map.base()).ok();
        let at_points = if map.is_series() {
            Vec::new()
        } else {
            points.iter().filter_map(|p| map.transversal_at(q, p).ok()).collect()
        };
        report.transversality = Some(Transversality { identically_degenerate: degenerate, at_base, at_points });
        if degenerate {
            report.failures.push("Q vanishes identically: the map is nowhere transversal".into());
        }
    }

    let tensor = match (&quotient, stages.ahlfors || stages.rank) {
        (Some(q), true) if q.side != Side::Degenerate => match ahlfors_via_logq(map, q) {
            Ok(a) => Some(a),
            Err(e) => {
                err(&mut report, "ahlfors", e);
                None
            }
        },
        _ => None,
    };
    if let (Some(a), true) = (&tensor, stages.ahlfors) {
        let (explicit, agree) = if map.target().is_hyperquadric() {
            match ahlfors_explicit_hyperquadric(map) {
                Ok(b) => {
                    let agree = *a == b;
                    if !agree {
                        report.failures.push("the two Ahlfors formulas disagree".into());
                    }
                    (Some(strings(&b)), Some(agree))
                }
                Err(e) => {
                    err(&mut report, "ahlfors-explicit", e);
                    (None, None)
                }
            }
        } else {
            (None, None)
        };
        report.ahlfors = Some(AhlforsReport {
            via_log_q: strings(a),
            explicit,
            methods_agree: agree,
            hermitian: a.is_hermitian(),
            vanishes: a.vanishes(),
            order: a.order(),
        });
    }
    if let (Some(a), true) = (&tensor, stages.rank) {
        let pts: Vec<SurfacePoint> = if map.is_series() {
            vec![map.base().clone()]
        } else {
            std::iter::once(map.base().clone()).chain(points.iter().cloned()).collect()
        };
        match rank_report(a, &pts) {
            Ok(r) => {
                report.generic_rank = Some(r.generic_rank);
                report.rank_at = r
                    .rank_at
                    .iter()
                    .map(|(p, k)| RankAt {
                        point: p.holomorphic(map.source().ambient_dim()).iter().map(ToString::to_string).collect(),
                        rank: *k,
                    })
                    .collect();
            }
            Err(e) => err(&mut report, "rank", e),
        }
    }
    if let (Some(q), true) = (&quotient, stages.isometry) {
        if q.side != Side::Degenerate {
            match isometry_check(map, q) {
                Ok(b) => report.isometry = Some(b),
                Err(e) => err(&mut report, "isometry", e),
            }
        }
    }
    check_expectations(&def.expect, &mut report);
    report.timing_ms = start.elapsed().as_millis();
    report
}

fn check_expectations(exp: &Expectations, report: &mut Report) {
    let mut failures = Vec::new();
    fail_expect(&mut failures, "maps_into", &exp.maps_into, report.maps_into.as_ref());
    fail_expect(&mut failures, "side", &exp.side, report.side.as_ref());
    fail_expect(&mut failures, "Q", &exp.q, report.q.as_ref());
    if report.generic_rank.is_some() {
        fail_expect(&mut failures, "generic_rank", &exp.generic_rank, report.generic_rank.as_ref());
    }
    if let Some(a) = &report.ahlfors {
        fail_expect(&mut failures, "vanishes", &exp.vanishes, Some(&a.vanishes));
    }
    if report.isometry.is_some() {
        fail_expect(&mut failures, "isometry", &exp.isometry, report.isometry.as_ref());
    }
    report.failures.extend(failures);
}
