//! Machine-readable report forms.
//!
//! Every number in a report is either an exact rational serialized as a
//! `"p/q"` string or lives in a field whose name ends in `_approx` and is an
//! explicitly-labeled decimal shadow. Collections are emitted in canonical
//! order, so serializing the same data twice is byte-identical.

use crate::construction::{
    AngleExpectation, AuditReport, Ball, CanonicalMapCheck, CoverageReport, MapCounterexample,
    PairAudit, PairEntry, Violation,
};
use crate::coxeter::{
    Enumeration, FiniteQuotient, ModMatrix, OrbitTiling, OrderBound, RelationReport,
    TorsionReport,
};
use crate::cubical::{CellJson, SimplicialComplex};
use crate::inversive::{PairClass, PointOrInfinity};
use crate::plinv::InvolutionReport;
use crate::rat::{format_rat, format_vec4, rat_to_f64, vec4_to_f64, Rat};
use serde::Serialize;
use std::collections::BTreeMap;

pub fn rat_json(r: &Rat) -> String {
    format_rat(r)
}

/// `"inf"` or exact coordinates.
pub fn point_json(p: &PointOrInfinity) -> serde_json::Value {
    match p {
        PointOrInfinity::Infinity => serde_json::json!("inf"),
        PointOrInfinity::Finite(v) => serde_json::json!(format_vec4(v)),
    }
}

pub fn point_approx_json(p: &PointOrInfinity) -> serde_json::Value {
    match p {
        PointOrInfinity::Infinity => serde_json::json!("inf"),
        PointOrInfinity::Finite(v) => serde_json::json!(vec4_to_f64(v)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BallJson {
    pub index: usize,
    pub cell: CellJson,
    pub center: [String; 4],
    pub center_approx: [f64; 4],
    pub radius_sq: String,
    pub radius_sq_approx: f64,
    pub radius_approx: f64,
}

pub fn ball_json(index: usize, ball: &Ball) -> BallJson {
    BallJson {
        index,
        cell: CellJson::from_cell(&ball.cell),
        center: format_vec4(ball.sphere.center()),
        center_approx: vec4_to_f64(ball.sphere.center()),
        radius_sq: format_rat(ball.sphere.radius_sq()),
        radius_sq_approx: rat_to_f64(ball.sphere.radius_sq()),
        radius_approx: rat_to_f64(ball.sphere.radius_sq()).sqrt(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairClassJson {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_sq: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coxeter_order: Option<u32>,
}

pub fn pair_class_json(class: &PairClass) -> PairClassJson {
    match class {
        PairClass::Intersecting(a) => PairClassJson {
            tag: class.tag().to_string(),
            angle: Some(a.label()),
            cos_num: Some(format_rat(&a.cos_num)),
            cos_sq: Some(format_rat(&a.cos_sq)),
            cos_sign: Some(a.cos_sign()),
            coxeter_order: a.coxeter_order,
        },
        other => PairClassJson {
            tag: other.tag().to_string(),
            angle: None,
            cos_num: None,
            cos_sq: None,
            cos_sign: None,
            coxeter_order: None,
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairEntryJson {
    pub i: usize,
    pub j: usize,
    #[serde(flatten)]
    pub class: PairClassJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationJson {
    pub i: usize,
    pub j: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairAuditJson {
    pub sphere_count: usize,
    pub pair_count: usize,
    pub class_counts: BTreeMap<String, usize>,
    pub pair_table: Vec<PairEntryJson>,
    /// Full symmetric Coxeter matrix; entries are `"1"`, `"m"`, or `"inf"`.
    pub coxeter_matrix: Vec<Vec<String>>,
    pub violations: Vec<ViolationJson>,
}

pub fn pair_audit_json(audit: &PairAudit, sphere_count: usize) -> PairAuditJson {
    let mut class_counts: BTreeMap<String, usize> = BTreeMap::new();
    for PairEntry { class, .. } in &audit.pair_table {
        let label = match class {
            PairClass::Intersecting(a) => format!("intersecting {}", a.label()),
            other => other.tag().to_string(),
        };
        *class_counts.entry(label).or_insert(0) += 1;
    }
    PairAuditJson {
        sphere_count,
        pair_count: audit.pair_table.len(),
        class_counts,
        pair_table: audit
            .pair_table
            .iter()
            .map(|e| PairEntryJson {
                i: e.i,
                j: e.j,
                class: pair_class_json(&e.class),
            })
            .collect(),
        coxeter_matrix: audit
            .coxeter
            .iter()
            .map(|row| row.iter().map(|e| e.label()).collect())
            .collect(),
        violations: audit
            .violations
            .iter()
            .map(|Violation { i, j, reason }| ViolationJson {
                i: *i,
                j: *j,
                reason: reason.label(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairEvidenceJson {
    pub i: usize,
    pub j: usize,
    pub d_sq: String,
    pub r1_sq: String,
    pub r2_sq: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_sq: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AngleExpectationJson {
    pub pair_kind: String,
    pub expected: String,
    pub pairs_checked: usize,
    pub computed: BTreeMap<String, usize>,
    /// Absent when the construction documents no target for this kind.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<PairEvidenceJson>,
}

pub fn angle_expectation_json(row: &AngleExpectation) -> AngleExpectationJson {
    AngleExpectationJson {
        pair_kind: row.kind.label().to_string(),
        expected: row.expected.label(),
        pairs_checked: row.pairs_checked,
        computed: row.computed.clone(),
        agrees: row.agrees,
        evidence: row.sample.as_ref().map(|s| PairEvidenceJson {
            i: s.i,
            j: s.j,
            d_sq: format_rat(&s.d_sq),
            r1_sq: format_rat(&s.r1_sq),
            r2_sq: format_rat(&s.r2_sq),
            computed: s.computed.clone(),
            cos_num: s.cos_num.as_ref().map(format_rat),
            cos_sq: s.cos_sq.as_ref().map(format_rat),
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_excess: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_point_witness: Option<[String; 4]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ball_only_cells: Vec<CellJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subdivision_only_cells: Vec<CellJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalMapJson {
    pub isomorphic: bool,
    pub nerve_f_vector: Vec<usize>,
    pub subdivision_f_vector: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleJson>,
}

pub fn canonical_map_json(check: &CanonicalMapCheck) -> CanonicalMapJson {
    let counterexample = check.counterexample.as_ref().map(|ce| match ce {
        MapCounterexample::VertexSetsDiffer {
            ball_only,
            subdivision_only,
        } => CounterexampleJson {
            kind: "vertex_sets_differ".to_string(),
            cells: Vec::new(),
            min_excess: None,
            common_point_witness: None,
            ball_only_cells: ball_only.iter().map(CellJson::from_cell).collect(),
            subdivision_only_cells: subdivision_only.iter().map(CellJson::from_cell).collect(),
        },
        MapCounterexample::NerveSimplexNotInSubdivision { cells, certificate } => {
            CounterexampleJson {
                kind: "nerve_simplex_not_in_subdivision".to_string(),
                cells: cells.iter().map(CellJson::from_cell).collect(),
                min_excess: Some(format_rat(&certificate.min_excess)),
                common_point_witness: Some(format_vec4(&certificate.witness)),
                ball_only_cells: Vec::new(),
                subdivision_only_cells: Vec::new(),
            }
        }
        MapCounterexample::SubdivisionSimplexNotInNerve { cells, certificate } => {
            CounterexampleJson {
                kind: "subdivision_simplex_not_in_nerve".to_string(),
                cells: cells.iter().map(CellJson::from_cell).collect(),
                min_excess: Some(format_rat(&certificate.min_excess)),
                common_point_witness: Some(format_vec4(&certificate.witness)),
                ball_only_cells: Vec::new(),
                subdivision_only_cells: Vec::new(),
            }
        }
    });
    CanonicalMapJson {
        isomorphic: check.isomorphic,
        nerve_f_vector: check.nerve_f_vector.clone(),
        subdivision_f_vector: check.subdivision_f_vector.clone(),
        counterexample,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageJson {
    pub grid_step: String,
    pub samples: usize,
    pub covered: bool,
    pub uncovered_count: usize,
    pub uncovered: Vec<[String; 4]>,
}

pub fn coverage_json(report: &CoverageReport) -> CoverageJson {
    CoverageJson {
        grid_step: format_rat(&report.grid_step),
        samples: report.samples,
        covered: report.covered(),
        uncovered_count: report.uncovered.len(),
        uncovered: report.uncovered.iter().map(format_vec4).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationsJson {
    pub generators_checked: usize,
    pub pairs_checked: usize,
    pub ok: bool,
    pub failures: Vec<String>,
}

pub fn relations_json(report: &RelationReport) -> RelationsJson {
    RelationsJson {
        generators_checked: report.generators_checked,
        pairs_checked: report.pairs_checked,
        ok: report.ok(),
        failures: report
            .failures
            .iter()
            .map(|f| format!("pair ({},{}): {}", f.i, f.j, f.detail))
            .collect(),
    }
}

/// Audit sections that only exist for complex-backed configurations.
#[derive(Debug, Clone, Serialize)]
pub struct AuditJson {
    #[serde(flatten)]
    pub pairs: PairAuditJson,
    pub angle_expectations: Vec<AngleExpectationJson>,
    pub canonical_map: CanonicalMapJson,
}

pub fn audit_json(report: &AuditReport, sphere_count: usize) -> AuditJson {
    AuditJson {
        pairs: pair_audit_json(&report.pairs, sphere_count),
        angle_expectations: report
            .angle_expectations
            .iter()
            .map(angle_expectation_json)
            .collect(),
        canonical_map: canonical_map_json(&report.nerve_iso),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthJson {
    pub max_length: usize,
    pub element_cap: usize,
    pub matrix_growth: Vec<usize>,
    pub abstract_growth: Vec<usize>,
    pub growth_agrees: bool,
    pub matrix_total: usize,
    pub abstract_total: usize,
    pub matrix_truncated: bool,
    pub abstract_truncated: bool,
    pub lorentz_checked: usize,
    pub lorentz_ok: bool,
}

pub fn growth_json(
    matrix: &Enumeration,
    words: &crate::coxeter::AbstractGrowth,
    max_length: usize,
    element_cap: usize,
) -> GrowthJson {
    GrowthJson {
        max_length,
        element_cap,
        matrix_growth: matrix.growth.clone(),
        abstract_growth: words.growth.clone(),
        growth_agrees: matrix.growth == words.growth,
        matrix_total: matrix.total_elements,
        abstract_total: words.total_elements,
        matrix_truncated: matrix.truncated,
        abstract_truncated: words.truncated,
        lorentz_checked: matrix.lorentz_checked,
        lorentz_ok: matrix.lorentz_ok,
    }
}

/// Side-by-side growth CSV.
pub fn growth_csv(matrix: &[usize], words: &[usize]) -> String {
    let mut out = String::from("length,matrix_elements,abstract_elements\n");
    let rows = matrix.len().max(words.len());
    for l in 0..rows {
        let m = matrix.get(l).map(|n| n.to_string()).unwrap_or_default();
        let a = words.get(l).map(|n| n.to_string()).unwrap_or_default();
        out.push_str(&format!("{l},{m},{a}\n"));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitPointJson {
    pub word: Vec<u16>,
    pub image: serde_json::Value,
    pub image_approx: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitJson {
    pub probe: serde_json::Value,
    pub max_length: usize,
    pub orbit_size: usize,
    pub all_distinct: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duplicate_words: Option<(Vec<u16>, Vec<u16>)>,
    pub escapes_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub escape_failure_word: Option<Vec<u16>>,
    pub truncated: bool,
    pub points: Vec<OrbitPointJson>,
}

pub fn orbit_json(tiling: &OrbitTiling, probe: &PointOrInfinity, max_length: usize) -> OrbitJson {
    OrbitJson {
        probe: point_json(probe),
        max_length,
        orbit_size: tiling.points.len(),
        all_distinct: tiling.all_distinct,
        duplicate_words: tiling.duplicate.clone(),
        escapes_ok: tiling.escapes_ok,
        escape_failure_word: tiling.escape_failure.clone(),
        truncated: tiling.truncated,
        points: tiling
            .points
            .iter()
            .map(|(word, image)| OrbitPointJson {
                word: word.clone(),
                image: point_json(image),
                image_approx: point_approx_json(image),
            })
            .collect(),
    }
}

fn mod_matrix_json(m: &ModMatrix) -> Vec<Vec<u64>> {
    m.entries.iter().map(|row| row.to_vec()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderBoundJson {
    pub kind: String,
    pub value: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionJson {
    pub max_length: usize,
    pub order_detection_bound: u32,
    pub elements_checked: usize,
    pub finite_order_elements: usize,
    pub ok: bool,
    pub witnesses: Vec<TorsionWitnessJson>,
    pub truncated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionWitnessJson {
    pub word: Vec<u16>,
    pub order: u32,
}

pub fn torsion_json(report: &TorsionReport) -> TorsionJson {
    TorsionJson {
        max_length: report.max_length,
        order_detection_bound: report.order_detection_bound,
        elements_checked: report.elements_checked,
        finite_order_elements: report.finite_order_elements,
        ok: report.ok(),
        witnesses: report
            .witnesses
            .iter()
            .map(|w| TorsionWitnessJson {
                word: w.word.clone(),
                order: w.order,
            })
            .collect(),
        truncated: report.truncated,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientJson {
    pub prime: u64,
    pub relations_ok: bool,
    pub functoriality_pairs_checked: usize,
    pub functoriality_ok: bool,
    pub order_bound: OrderBoundJson,
    /// Determinant signs over the rationals; orientation is invisible mod p.
    pub det_signs: Vec<i8>,
    pub generator_images: Vec<Vec<Vec<u64>>>,
}

pub fn quotient_json(q: &FiniteQuotient) -> QuotientJson {
    QuotientJson {
        prime: q.prime,
        relations_ok: q.relations_ok,
        functoriality_pairs_checked: q.functoriality.pairs_checked,
        functoriality_ok: q.functoriality.ok,
        order_bound: match q.order_bound {
            OrderBound::Exact(n) => OrderBoundJson {
                kind: "exact".to_string(),
                value: n,
            },
            OrderBound::CappedAtLeast(n) => OrderBoundJson {
                kind: "capped_at_least".to_string(),
                value: n,
            },
        },
        det_signs: q.det_signs.clone(),
        generator_images: q.images.iter().map(mod_matrix_json).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicialComplexJson {
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub vertex_positions: Vec<[String; 4]>,
    pub simplices: Vec<Vec<u32>>,
}

pub fn simplicial_complex_json(c: &SimplicialComplex) -> SimplicialComplexJson {
    SimplicialComplexJson {
        f_vector: c.f_vector(),
        euler_characteristic: c.euler_characteristic(),
        vertex_positions: (0..c.vertex_count())
            .map(|i| format_vec4(&c.position(i as u32)))
            .collect(),
        simplices: c.simplices().cloned().collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvolutionJson {
    pub samples_checked: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_sample: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_reason: Option<String>,
}

pub fn involution_json(report: &InvolutionReport) -> InvolutionJson {
    InvolutionJson {
        samples_checked: report.samples_checked,
        ok: report.ok(),
        failure_sample: report.failure.as_ref().map(|f| point_json(&f.sample)),
        failure_reason: report.failure.as_ref().map(|f| f.reason.clone()),
    }
}
