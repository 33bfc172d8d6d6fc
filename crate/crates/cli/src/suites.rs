//! Verification suites over the shared engine.
//!
//! Each suite produces a fixed, ordered list of check rows; `all` runs
//! every suite (concurrently — the engine caches make shared work safe)
//! and concatenates the rows in suite order.  Report JSON is fully
//! deterministic; elapsed time appears only in the text rendering.

use std::fmt::Write as _;
use std::time::Instant;

use hecke_core::engine::{Engine, EngineError, PrimeMode};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Suite names, in fixed report order.
pub const SUITES: [&str; 16] = [
    "eq3",
    "formula1",
    "rankin2",
    "rankin1",
    "symsquare",
    "cubic",
    "shimura-g1",
    "shimura-g2",
    "theorem31",
    "funceq",
    "appendix-diff",
    "newton",
    "conjecture-denominator",
    "eisenstein",
    "ikeda-standard",
    "hodge-tensor",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub detail: Option<String>,
}

#[derive(Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub prime: Option<u32>,
    pub prefix_order: u32,
    pub elapsed_ms: u128,
    pub checks: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Deterministic report JSON: identical inputs give identical
    /// bytes, so timing is deliberately left to the text rendering.
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "config": {
                "prime": match self.prime {
                    Some(p) => json!(p),
                    None => json!("symbolic"),
                },
                "prefix_order": self.prefix_order,
            },
            "passed": self.passed(),
            "checks": self
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "description": c.description,
                        "status": c.status.as_str(),
                        "detail": c.detail,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn render_text(&self) -> String {
        let mode = match self.prime {
            Some(p) => format!("prime {}", p),
            None => "symbolic".to_string(),
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} ({}, prefix order {})",
            self.suite, mode, self.prefix_order
        );
        for c in &self.checks {
            let _ = write!(out, "  [{:<7}] {:<28} {}", c.status.as_str(), c.id, c.description);
            if let Some(d) = &c.detail {
                let _ = write!(out, " ({})", d);
            }
            let _ = writeln!(out);
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let skipped = self.checks.iter().filter(|c| c.status == Status::Skipped).count();
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped in {} ms",
            passed, failed, skipped, self.elapsed_ms
        );
        out
    }
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn row(id: &str, description: &str, ok: bool) -> CheckRow {
    CheckRow {
        id: id.to_string(),
        description: description.to_string(),
        status: pass_fail(ok),
        detail: None,
    }
}

fn row_with(id: &str, description: &str, ok: bool, detail: String) -> CheckRow {
    CheckRow {
        id: id.to_string(),
        description: description.to_string(),
        status: pass_fail(ok),
        detail: Some(detail),
    }
}

fn error_rows(id: &str, description: &str, e: &EngineError) -> Vec<CheckRow> {
    vec![CheckRow {
        id: id.to_string(),
        description: description.to_string(),
        status: Status::Fail,
        detail: Some(e.to_string()),
    }]
}

/// Run one suite and wrap it in a report.  `None` for an unknown name.
pub fn run_report(engine: &Engine, suite: &str) -> Option<SuiteReport> {
    let start = Instant::now();
    let checks = if suite == "all" {
        let groups: Vec<Vec<CheckRow>> = SUITES
            .par_iter()
            .map(|name| {
                let mut rows = suite_checks(engine, name).expect("listed suite");
                for r in &mut rows {
                    r.id = format!("{}/{}", name, r.id);
                }
                rows
            })
            .collect();
        groups.into_iter().flatten().collect()
    } else {
        suite_checks(engine, suite)?
    };
    Some(SuiteReport {
        suite: suite.to_string(),
        prime: match engine.mode() {
            PrimeMode::Symbolic => None,
            PrimeMode::Numeric(p) => Some(p),
        },
        prefix_order: engine.prefix_order(),
        elapsed_ms: start.elapsed().as_millis(),
        checks,
    })
}

fn suite_checks(engine: &Engine, suite: &str) -> Option<Vec<CheckRow>> {
    let rows = match suite {
        "eq3" => match engine.eq3_report() {
            Ok(r) => vec![
                row(
                    "hecke-identity",
                    "generator-level identity behind the genus-2 series display",
                    r.hecke_identity_holds,
                ),
                row(
                    "resummation",
                    "coefficient family resums to the closed form",
                    r.delta_form_resums_to_closed,
                ),
                row(
                    "weyl-invariance",
                    "closed form is invariant under the Weyl action",
                    r.closed_form_weyl_invariant,
                ),
            ],
            Err(e) => error_rows("report", "genus-2 series identity report", &e),
        },
        "formula1" => match engine.formula1_report() {
            Ok(r) => vec![
                row(
                    "forms-agree",
                    "both printed coefficient forms agree as rational functions",
                    r.forms_agree_with_each_other,
                ),
                row(
                    "matches-derived",
                    "printed coefficient form equals the derived family",
                    r.first_form_matches_derived,
                ),
                row(
                    "y-copy",
                    "second-group copy is the exact renaming of the first",
                    r.y_copy_matches,
                ),
                row_with(
                    "series-prefix",
                    "family reproduces the series coefficients",
                    r.series_coefficients_match,
                    format!("delta = 0..{}", r.series_checked_to),
                ),
            ],
            Err(e) => error_rows("report", "coefficient formula report", &e),
        },
        "rankin2" => match engine.convolution_report() {
            Ok(r) => {
                let mut rows = Vec::with_capacity(r.pole_comparisons.len() + 7);
                for c in &r.pole_comparisons {
                    rows.push(CheckRow {
                        id: format!("pole-{:02}", c.index),
                        description: format!("coefficient at pole base {}", c.base),
                        status: pass_fail(c.matches),
                        detail: c.note.map(str::to_string),
                    });
                }
                rows.push(row_with(
                    "series-prefix",
                    "closed form agrees with the termwise coefficient products",
                    r.series_prefix_agrees,
                    format!("checked through X^{}", r.series_prefix_checked_to),
                ));
                rows.push(row(
                    "denominator",
                    "denominator is the sixteen-factor pole product",
                    r.denominator_is_16_product,
                ));
                rows.push(row(
                    "quadratic-factor",
                    "numerator is divisible by the distinguished quadratic",
                    r.quadratic_factor_divides,
                ));
                rows.push(row(
                    "cofactor-constant",
                    "degree-12 cofactor has constant term 1",
                    r.degree12_properties.constant_is_one,
                ));
                rows.push(row(
                    "cofactor-degree-1",
                    "degree-12 cofactor vanishes at X^1",
                    r.degree12_properties.deg1_zero,
                ));
                rows.push(row(
                    "cofactor-degree-11",
                    "degree-12 cofactor vanishes at X^11",
                    r.degree12_properties.deg11_zero,
                ));
                rows.push(row(
                    "cofactor-leading",
                    "degree-12 cofactor has the expected leading term",
                    r.degree12_properties.leading_term_matches,
                ));
                rows
            }
            Err(e) => error_rows("report", "genus-2 convolution report", &e),
        },
        "rankin1" => match engine.genus1_report() {
            Ok(r) => vec![
                row(
                    "closed-form",
                    "resummed form equals the displayed rational function",
                    r.closed_matches_display,
                ),
                row(
                    "partial-fractions",
                    "derived pole coefficients equal the displayed fractions",
                    r.partial_fractions_match,
                ),
                row(
                    "numerator-quadratic",
                    "numerator over the pole product is the expected quadratic",
                    r.numerator_is_quadratic,
                ),
                row(
                    "leading-pole",
                    "leading pole carries the expected coefficient",
                    r.leading_pole_coefficient_matches,
                ),
                row(
                    "hecke-identity",
                    "generator-level identity behind the display holds",
                    r.hecke_identity_holds,
                ),
            ],
            Err(e) => error_rows("report", "genus-1 convolution report", &e),
        },
        "symsquare" => power_rows(engine, 2),
        "cubic" => power_rows(engine, 3),
        "shimura-g1" => match engine.shimura_genus1() {
            Ok(ok) => vec![row(
                "identity",
                "genus-1 reciprocal maps to the closed series",
                ok,
            )],
            Err(e) => error_rows("identity", "genus-1 generator identity", &e),
        },
        "shimura-g2" => match engine.shimura_genus2() {
            Ok(ok) => vec![row(
                "identity",
                "genus-2 reciprocal maps to the closed series",
                ok,
            )],
            Err(e) => error_rows("identity", "genus-2 generator identity", &e),
        },
        "theorem31" => match engine.theorem31_report() {
            Ok(r) => vec![
                row(
                    "identity",
                    "derived tables reproduce the convolution series",
                    r.identity_holds,
                ),
                row(
                    "functional-equation",
                    "palindromic functional equation holds at every index",
                    r.functional_equation_all_hold,
                ),
                row(
                    "s1",
                    "first numerator coefficient is minus the generator product",
                    r.s1_is_minus_t_tensor_t,
                ),
                row("r1", "first denominator-table coefficient vanishes", r.r1_is_zero),
                row(
                    "r11",
                    "eleventh denominator-table coefficient vanishes",
                    r.r11_is_zero,
                ),
                row(
                    "r12",
                    "top denominator-table coefficient has its known value",
                    r.r12_matches,
                ),
                row(
                    "s16",
                    "top numerator coefficient has its known value",
                    r.s16_matches,
                ),
                row(
                    "clean-rows",
                    "all rows without a flagged transcription match",
                    r.clean_rows_match,
                ),
                row_with(
                    "suspect-set",
                    "mismatching rows are exactly the flagged suspects",
                    r.mismatches_are_exactly_suspects,
                    format!(
                        "mismatches: {}",
                        r.mismatches
                            .iter()
                            .map(|(side, i)| format!("{}_{}", side, i))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                ),
            ],
            Err(e) => error_rows("report", "derived-table report", &e),
        },
        "funceq" => match engine.functional_equation() {
            Ok(rows) => rows
                .iter()
                .map(|(i, ok)| {
                    CheckRow {
                        id: format!("index-{}", i),
                        description: format!(
                            "coefficient at X^{} mirrors the coefficient at X^{}",
                            16 - i,
                            i
                        ),
                        status: pass_fail(*ok),
                        detail: None,
                    }
                })
                .collect(),
            Err(e) => error_rows("report", "functional equation report", &e),
        },
        "appendix-diff" => match engine.diff_report() {
            Ok(d) => {
                let mut rows = Vec::with_capacity(d.r.len() + d.s.len() + 1);
                for (side, entries) in [("r", &d.r), ("s", &d.s)] {
                    for e in entries.iter() {
                        let status = if e.equal {
                            Status::Pass
                        } else if e.suspect {
                            Status::Skipped
                        } else {
                            Status::Fail
                        };
                        rows.push(CheckRow {
                            id: format!("{}-{:02}", side, e.index),
                            description: format!("{}_{} matches the transcription", side, e.index),
                            status,
                            detail: e.note.map(str::to_string),
                        });
                    }
                }
                rows.push(row(
                    "clean-rows",
                    "all rows without a flagged transcription match",
                    d.clean_rows_all_match(),
                ));
                rows
            }
            Err(e) => error_rows("report", "transcription diff report", &e),
        },
        "newton" => match engine.newton_report() {
            Ok(n) => vec![
                row_with(
                    "r-hull",
                    "first-table hull ends at (12, 34)",
                    n.r_terminal_matches,
                    render_vertices(&n.r.vertices),
                ),
                row_with(
                    "s-hull",
                    "second-table hull ends at (16, 48)",
                    n.s_terminal_matches,
                    render_vertices(&n.s.vertices),
                ),
                row("slopes", "every hull slope is an integer", n.slopes_integral),
            ],
            Err(e) => error_rows("report", "Newton polygon report", &e),
        },
        "conjecture-denominator" => {
            let r = engine.conjecture_denominator();
            vec![
                row_with(
                    "left-count",
                    "substituted genus-4 denominator has sixteen factors",
                    r.left_factor_count == 16,
                    format!("{} factors", r.left_factor_count),
                ),
                row_with(
                    "right-count",
                    "convolution pole product has sixteen factors",
                    r.right_factor_count == 16,
                    format!("{} factors", r.right_factor_count),
                ),
                row("multiset", "factor multisets agree", r.multiset_equal),
            ]
        }
        "eisenstein" => (1..=3)
            .map(|m| match engine.eisenstein_merge(m) {
                Ok(r) => row_with(
                    &format!("m-{}", m),
                    &format!("merged parameters at genus {}", r.genus),
                    r.gamma_zero_is_one && r.gamma_multiset_matches && r.constraint_holds,
                    format!(
                        "gamma0 trivial: {}; multiset matches: {}; constraint holds: {}",
                        r.gamma_zero_is_one, r.gamma_multiset_matches, r.constraint_holds
                    ),
                ),
                Err(e) => CheckRow {
                    id: format!("m-{}", m),
                    description: "merged Eisenstein parameters".to_string(),
                    status: Status::Fail,
                    detail: Some(e.to_string()),
                },
            })
            .collect(),
        "ikeda-standard" => (1..=2)
            .map(|m| match engine.ikeda_standard(m) {
                Ok(r) => row_with(
                    &format!("m-{}", m),
                    &format!("standard factor of the genus-{} lift", r.genus),
                    r.passed(),
                    format!(
                        "degree {} of {}; assumptions: {}",
                        r.degree,
                        r.expected_degree,
                        r.assumptions.join("; ")
                    ),
                ),
                Err(e) => CheckRow {
                    id: format!("m-{}", m),
                    description: "standard factor of the lift".to_string(),
                    status: Status::Fail,
                    detail: Some(e.to_string()),
                },
            })
            .collect(),
        "hodge-tensor" => {
            let r = engine.hodge_tensor();
            vec![
                row_with(
                    "pair-count",
                    "tensor Hodge type has sixteen pairs",
                    r.pair_count == 16,
                    format!("{} pairs", r.pair_count),
                ),
                row(
                    "table-match",
                    "pairs match the displayed table in order, tags included",
                    r.matches_displayed_table,
                ),
                row_with(
                    "tags",
                    "exactly one plus tag and one minus tag",
                    r.plus_tag_count == 1 && r.minus_tag_count == 1,
                    format!("plus {}, minus {}", r.plus_tag_count, r.minus_tag_count),
                ),
                row(
                    "purity",
                    "every pair sums to the joint motivic weight",
                    r.pure_of_joint_weight,
                ),
            ]
        }
        _ => return None,
    };
    Some(rows)
}

fn power_rows(engine: &Engine, m: u32) -> Vec<CheckRow> {
    match engine.power_report(m) {
        Ok(r) => {
            let mut rows = Vec::with_capacity(2);
            let mut notes = Vec::new();
            if let Some(n) = r.sign_convention_note {
                notes.push(n.to_string());
            }
            if let Some(n) = r.display_repair_note {
                notes.push(n.to_string());
            }
            rows.push(CheckRow {
                id: "closed-form".to_string(),
                description: format!("power-{} reindexed form equals the display", m),
                status: pass_fail(r.closed_matches_display),
                detail: (!notes.is_empty()).then(|| notes.join("; ")),
            });
            rows.push(row_with(
                "series-prefix",
                "reindexed form reproduces the spaced coefficients",
                r.prefix_agrees,
                format!("delta = 0..{}", r.prefix_checked_to),
            ));
            rows
        }
        Err(e) => error_rows("report", "power-reindexed series report", &e),
    }
}

fn render_vertices(v: &[(i64, i64)]) -> String {
    v.iter()
        .map(|(x, y)| format!("({}, {})", x, y))
        .collect::<Vec<_>>()
        .join(" ")
}
