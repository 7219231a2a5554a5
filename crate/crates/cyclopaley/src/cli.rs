//! Command layer: builds fields and graphs from run parameters, drives the
//! verification operations, and emits one [`Report`] per invocation.

use crate::charsums::{self, CertificateStatus};
use crate::cliques::{self, CliqueError, SearchOptions};
use crate::field::{Field, FieldError};
use crate::graph::Graph;
use crate::report::{Report, Status};
use crate::subspaces;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct CommonOpts {
    pub size_cap: u64,
    pub threads: usize,
    pub deadline_s: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub induced_bound: usize,
    pub reduction_target: u64,
}

impl Default for CommonOpts {
    fn default() -> Self {
        CommonOpts {
            size_cap: crate::field::DEFAULT_SIZE_CAP,
            threads: 1,
            deadline_s: None,
            cache_dir: None,
            induced_bound: 4096,
            reduction_target: 700,
        }
    }
}

impl CommonOpts {
    fn search_options(&self) -> SearchOptions {
        SearchOptions {
            induced_bound: self.induced_bound,
            reduction_target: self.reduction_target,
            deadline: self.deadline_s.map(Duration::from_secs),
        }
    }

    fn config_json(&self, extra: Value) -> Value {
        let mut obj = json!({
            "size_cap": self.size_cap,
            "threads": self.threads,
            "deadline_s": self.deadline_s,
            "induced_bound": self.induced_bound,
            "reduction_target": self.reduction_target,
        });
        if let (Value::Object(dst), Value::Object(src)) = (&mut obj, extra) {
            for (k, v) in src {
                dst.insert(k, v);
            }
        }
        obj
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedKind {
    /// `{0, 1}`.
    Pair,
    /// The prime subfield `F_p`.
    Subfield,
    /// The neighborhood-intersection schedule (prefix `{0, ..., k-1}`).
    Auto,
}

fn build_field(p: u64, n: u32, opts: &CommonOpts) -> Result<Arc<Field>, FieldError> {
    let field = match &opts.cache_dir {
        Some(dir) => Field::with_cache(p, n, opts.size_cap, dir)?,
        None => Field::with_cap(p, n, opts.size_cap)?,
    };
    Ok(Arc::new(field))
}

fn field_error_is_cap(e: &FieldError) -> bool {
    matches!(e, FieldError::SizeCapExceeded { .. })
}

/// Witnesses depend on the presentation, so every report that built a field
/// records its full descriptor (modulus and generator) plus a short hash.
fn record_field(report: &mut Report, field: &Field) {
    report.field = serde_json::to_value(field.descriptor()).ok();
    report.field_hash = Some(format!("{:016x}", field.descriptor_hash()));
}

fn finish(mut report: Report, start: Instant) -> Report {
    report.wall_ms = start.elapsed().as_millis() as u64;
    report
}

/// Clique search on PP(p^exp, 2d, I): maximum clique through the chosen
/// seed, with profile and certificate attached when the clique reaches
/// sqrt(q).
pub fn cmd_clique(
    p: u64,
    exp: u32,
    two_d: u64,
    members: &[u64],
    seed: SeedKind,
    opts: &CommonOpts,
) -> Report {
    let start = Instant::now();
    let config = opts.config_json(json!({
        "p": p, "exp": exp, "two_d": two_d, "index_set": members,
        "seed": match seed { SeedKind::Pair => "pair", SeedKind::Subfield => "subfield", SeedKind::Auto => "auto" },
    }));
    let mut report = Report::new("clique", config);
    let field = match build_field(p, exp, opts) {
        Ok(f) => f,
        Err(e) => {
            let cap = field_error_is_cap(&e);
            report.fail_with_error(e, cap);
            return finish(report, start);
        }
    };
    record_field(&mut report, &field);
    let graph = match Graph::build_from_members(Arc::clone(&field), two_d, members) {
        Ok(g) => g,
        Err(e) => {
            report.fail_with_error(e, false);
            return finish(report, start);
        }
    };
    run_clique_checks(&graph, seed, opts, &mut report, "");
    finish(report, start)
}

/// Shared row logic for `cmd_clique` and `cmd_table1`.
fn run_clique_checks(
    graph: &Graph,
    seed: SeedKind,
    opts: &CommonOpts,
    report: &mut Report,
    prefix: &str,
) {
    let field = graph.field();
    let search = opts.search_options();
    let named = |name: &str| format!("{prefix}{name}");

    let (outcome, k_used) = match seed {
        SeedKind::Pair => (
            cliques::max_clique_through(graph, &[field.scalar(0), field.scalar(1)], &search),
            2,
        ),
        SeedKind::Subfield => {
            let subfield: Vec<_> = (0..field.p()).map(|v| field.scalar(v)).collect();
            (
                cliques::max_clique_through(graph, &subfield, &search),
                field.p(),
            )
        }
        SeedKind::Auto => match cliques::clique_number_via_reduction(graph, &search) {
            Ok(red) => {
                let k = red.k_used;
                (
                    Ok(cliques::SearchResult {
                        clique: red.clique,
                        candidates: red.candidates,
                    }),
                    k,
                )
            }
            Err(e) => (Err(e), 0),
        },
    };

    let result = match outcome {
        Ok(r) => r,
        Err(CliqueError::TimedOut { best }) => {
            report.push(
                &named("omega_through_seed"),
                Status::Timeout,
                "exact search within deadline",
                format!("lower bound {} at timeout", best.len()),
            );
            report.result = json!({
                "omega_through_seed": null,
                "lower_bound": best.len(),
                "witness": cliques::log_indices(field, &best),
                "k_used": k_used,
                "timed_out": true,
            });
            return;
        }
        Err(e) => {
            let cap = matches!(e, CliqueError::InducedGraphTooLarge { .. });
            report.fail_with_error(e, cap);
            return;
        }
    };

    let witness = &result.clique.vertices;
    let omega = witness.len() as u64;
    report.check_that(
        &named("clique_verified"),
        cliques::is_clique(graph, witness),
        "pairwise adjacent",
        format!("size {omega}"),
    );

    let sqrt_q = field.sqrt_q();
    let mut profile_json = Value::Null;
    let mut certificate = "n/a".to_string();
    if witness.contains(&crate::field::Element::ZERO) {
        if let Ok(prof) = cliques::profile(graph, witness) {
            profile_json = json!(prof.counts);
            if let (Some(s), Some(eq)) = (sqrt_q, prof.equal_contribution) {
                let share = (s - 1) / graph.d();
                report.check_that(
                    &named("equal_contribution"),
                    eq,
                    format!("{share} per class in I"),
                    format!("{:?}", prof.counts),
                );
            }
        }
    }
    match charsums::clique_certificate(graph, witness, opts.threads) {
        Ok(cert) => {
            certificate = cert.status.as_str().to_string();
            match cert.status {
                CertificateStatus::Pass | CertificateStatus::Fail => {
                    report.check_that(
                        &named("certificate"),
                        cert.status == CertificateStatus::Pass,
                        "S(q,A;c) = 0 on D'",
                        certificate.clone(),
                    );
                }
                CertificateStatus::NotApplicable => {
                    report.push(
                        &named("certificate"),
                        Status::Skip,
                        "only defined at |A| = sqrt(q)",
                        format!(
                            "|A| = {omega}, residual D' energy {}",
                            cert.residual_dprime_energy.unwrap_or(0)
                        ),
                    );
                }
            }
        }
        Err(e) => {
            report.push(
                &named("certificate"),
                Status::Skip,
                "semi-primitive, even r",
                e.to_string(),
            );
        }
    }

    let verdict = cliques::conditional_verdict(graph)
        .ok()
        .and_then(|v| serde_json::to_value(v).ok())
        .unwrap_or(Value::Null);
    report.result = json!({
        "omega_through_seed": omega,
        "witness": cliques::log_indices(field, witness),
        "profile": profile_json,
        "certificate": certificate,
        "k_used": k_used,
        "candidates": result.candidates,
        "timed_out": false,
        "verdict": verdict,
    });
}

/// Gauss periods with their closed forms.
pub fn cmd_periods(p: u64, exp: u32, two_d: u64, opts: &CommonOpts) -> Report {
    let start = Instant::now();
    let config = opts.config_json(json!({"p": p, "exp": exp, "two_d": two_d}));
    let mut report = Report::new("periods", config);
    if let Some(graph) = periods_graph(p, exp, two_d, opts, &mut report) {
        match charsums::gauss_periods(&graph) {
            Ok(rep) => {
                report.check_eq("period_lambda", rep.closed_lambda, rep.lambda);
                report.check_eq("period_mu", rep.closed_mu, rep.mu);
                report.check_that(
                    "affine_identity",
                    rep.affine_identity_ok,
                    "lambda + (2d-1) mu = -1",
                    format!("lambda = {}, mu = {}", rep.lambda, rep.mu),
                );
                report.check_that(
                    "eigenvalue_identity",
                    rep.eigenvalue_identity_ok,
                    "lambda + (d-1) mu = -(sqrt(q)+1)/2",
                    format!("lambda = {}, mu = {}", rep.lambda, rep.mu),
                );
                report.result = serde_json::to_value(&rep).unwrap_or(Value::Null);
            }
            Err(e) => report.fail_with_error(e, false),
        }
    }
    finish(report, start)
}

/// Gauss periods plus all `2d - 1` Gauss-sum assertions.
pub fn cmd_gauss(p: u64, exp: u32, two_d: u64, opts: &CommonOpts) -> Report {
    let start = Instant::now();
    let config = opts.config_json(json!({"p": p, "exp": exp, "two_d": two_d}));
    let mut report = Report::new("gauss", config);
    if two_d == 2 {
        // Quadratic character: classical closed form, any parity.
        match build_field(p, exp, opts) {
            Ok(field) => {
                record_field(&mut report, &field);
                let rep = charsums::quadratic_gauss_check(&field);
                report.check_that(
                    "quadratic_gauss_sum",
                    rep.pass,
                    &rep.expected_desc,
                    rep.value
                        .map(|v| v.to_string())
                        .unwrap_or_else(|| "non-rational value".into()),
                );
                report.result = serde_json::to_value(&rep).unwrap_or(Value::Null);
            }
            Err(e) => {
                let cap = field_error_is_cap(&e);
                report.fail_with_error(e, cap);
            }
        }
        return finish(report, start);
    }
    if let Some(graph) = periods_graph(p, exp, two_d, opts, &mut report) {
        match charsums::gauss_sum_suite(&graph) {
            Ok(suite) => {
                report.check_eq(
                    "period_lambda",
                    suite.periods.closed_lambda,
                    suite.periods.lambda,
                );
                report.check_eq("period_mu", suite.periods.closed_mu, suite.periods.mu);
                for check in &suite.sums {
                    report.check_that(
                        &format!("gauss_sum_k{}", check.k),
                        check.pass,
                        check.expected,
                        format!("{:.6}", check.approx),
                    );
                }
                report.result = serde_json::to_value(&suite).unwrap_or(Value::Null);
            }
            Err(e) => report.fail_with_error(e, false),
        }
    }
    finish(report, start)
}

/// Builds the graph used by the period/gauss commands with the full index
/// set `{0, ..., d-1}` (the choice of I does not enter the periods).
fn periods_graph(
    p: u64,
    exp: u32,
    two_d: u64,
    opts: &CommonOpts,
    report: &mut Report,
) -> Option<Graph> {
    let field = match build_field(p, exp, opts) {
        Ok(f) => f,
        Err(e) => {
            let cap = field_error_is_cap(&e);
            report.fail_with_error(e, cap);
            return None;
        }
    };
    record_field(report, &field);
    let members: Vec<u64> = (0..two_d / 2).collect();
    match Graph::build_from_members(field, two_d, &members) {
        Ok(g) => Some(g),
        Err(e) => {
            report.fail_with_error(e, false);
            None
        }
    }
}

/// One row of the clique-number table.
pub struct TableRow {
    pub p: u64,
    pub exp: u32,
    pub two_d: u64,
    pub members: &'static [u64],
    pub omega: u64,
    pub tier: u8,
}

pub const TABLE1_ROWS: &[TableRow] = &[
    TableRow {
        p: 5,
        exp: 4,
        two_d: 6,
        members: &[0, 1, 3],
        omega: 25,
        tier: 1,
    },
    TableRow {
        p: 7,
        exp: 4,
        two_d: 8,
        members: &[0, 1, 2, 4],
        omega: 49,
        tier: 1,
    },
    TableRow {
        p: 7,
        exp: 4,
        two_d: 8,
        members: &[0, 1, 3, 6],
        omega: 49,
        tier: 1,
    },
    TableRow {
        p: 3,
        exp: 8,
        two_d: 10,
        members: &[0, 1, 2, 3, 5],
        omega: 81,
        tier: 2,
    },
    TableRow {
        p: 3,
        exp: 8,
        two_d: 10,
        members: &[0, 1, 3, 6, 7],
        omega: 81,
        tier: 2,
    },
    TableRow {
        p: 11,
        exp: 4,
        two_d: 12,
        members: &[0, 1, 2, 3, 6, 7],
        omega: 121,
        tier: 2,
    },
    TableRow {
        p: 11,
        exp: 4,
        two_d: 12,
        members: &[0, 1, 2, 4, 5, 8],
        omega: 121,
        tier: 2,
    },
    TableRow {
        p: 11,
        exp: 4,
        two_d: 12,
        members: &[0, 1, 2, 3, 5, 10],
        omega: 121,
        tier: 2,
    },
    TableRow {
        p: 13,
        exp: 4,
        two_d: 14,
        members: &[0, 1, 2, 3, 5, 6, 9],
        omega: 169,
        tier: 2,
    },
    TableRow {
        p: 13,
        exp: 4,
        two_d: 14,
        members: &[0, 1, 2, 4, 7, 8, 10],
        omega: 169,
        tier: 2,
    },
    TableRow {
        p: 13,
        exp: 4,
        two_d: 14,
        members: &[0, 1, 2, 5, 7, 9, 10],
        omega: 169,
        tier: 2,
    },
];

/// Reproduces the table of graphs with clique number sqrt(q). Tier 1 rows
/// search through the seed `{0, 1}`; tier 2 rows use the full
/// neighborhood-intersection reduction. Each row also checks the equal
/// contribution profile, the character-sum certificate, and the
/// two-canonical-cliques count. A row that times out is marked and the suite
/// continues.
pub fn cmd_table1(tier: u8, opts: &CommonOpts) -> Report {
    let start = Instant::now();
    let config = opts.config_json(json!({"tier": tier}));
    let mut report = Report::new("table1", config);
    let mut rows_json = Vec::new();
    for row in TABLE1_ROWS.iter().filter(|r| r.tier <= tier) {
        let label = format!("q={}^{} I={:?}/", row.p, row.exp, row.members);
        let field = match build_field(row.p, row.exp, opts) {
            Ok(f) => f,
            Err(e) => {
                let cap = field_error_is_cap(&e);
                report.fail_with_error(e, cap);
                return finish(report, start);
            }
        };
        let graph = match Graph::build_from_members(field, row.two_d, row.members) {
            Ok(g) => g,
            Err(e) => {
                report.fail_with_error(e, false);
                return finish(report, start);
            }
        };
        let seed = if row.tier == 1 {
            SeedKind::Pair
        } else {
            SeedKind::Auto
        };
        run_clique_checks(&graph, seed, opts, &mut report, &label);
        // Append the omega comparison for the row when the search completed.
        if let Some(omega) = report
            .result
            .get("omega_through_seed")
            .and_then(Value::as_u64)
        {
            report.check_eq(&format!("{label}omega"), row.omega, omega);
        }
        // Witnesses are presentation-relative; record the row's field.
        if let Value::Object(obj) = &mut report.result {
            obj.insert(
                "field".into(),
                serde_json::to_value(graph.field().descriptor()).unwrap_or(Value::Null),
            );
            obj.insert("index_set".into(), json!(row.members));
        }
        match subspaces::enumerate_canonical_cliques(&graph) {
            Ok(rep) => {
                report.check_eq(&format!("{label}canonical_clique_count"), 2, rep.count);
                report.check_that(
                    &format!("{label}frobenius_pairing"),
                    rep.frobenius_closed && rep.none_fixed && rep.even_count,
                    "fixed-point-free pairing",
                    format!("{} pairs", rep.frobenius_pairs.len()),
                );
            }
            Err(e) => {
                report.push(
                    &format!("{label}canonical_clique_count"),
                    Status::Skip,
                    "q = p^{4t}",
                    e.to_string(),
                );
            }
        }
        rows_json.push(std::mem::replace(&mut report.result, Value::Null));
    }
    report.result = Value::Array(rows_json);
    finish(report, start)
}

/// Counts the index sets with clique number p^2 via the `g^{(p+1)k}` scan.
pub fn cmd_count_index_sets(p: u64, opts: &CommonOpts) -> Report {
    let start = Instant::now();
    let config = opts.config_json(json!({"p": p}));
    let mut report = Report::new("count-index-sets", config);
    match subspaces::count_valid_index_sets(p, opts.size_cap) {
        Ok(rep) => {
            report.check_eq("valid_index_set_count", rep.expected, rep.count);
            let paley: Vec<u64> = (0..rep.two_d).step_by(2).collect();
            let multiplicities_ok = rep
                .valid_sets
                .iter()
                .zip(&rep.k_hits)
                .all(|(set, hits)| hits.len() == if *set == paley { 1 } else { 2 });
            report.check_that(
                "scan_multiplicities",
                multiplicities_ok,
                "each I twice, Paley once",
                "per-set k hits",
            );
            report.result = json!({
                "p": rep.p,
                "count": rep.count,
                "expected": "(p^2+3)/4",
                "valid_sets": rep.valid_sets,
                "skipped_degenerate_k": rep.skipped_degenerate_k,
            });
        }
        Err(e) => {
            let cap =
                matches!(e, subspaces::SubspaceError::Field(ref fe) if field_error_is_cap(fe));
            report.fail_with_error(e, cap);
        }
    }
    finish(report, start)
}

/// Full sweep verification of the 2-dimensional subspace conjecture at `p`.
pub fn cmd_verify_conjectures(p: u64, opts: &CommonOpts) -> Report {
    let start = Instant::now();
    let config = opts.config_json(json!({"p": p}));
    let mut report = Report::new("verify-conjectures", config);
    match subspaces::verify_subspace_conjecture(p, opts.size_cap) {
        Ok(rep) => {
            report.check_that(
                "subspace_conjecture",
                rep.holds,
                "qualifying = {F_p + g^{(p+1)k} F_p : k odd}",
                format!(
                    "qualifying {} vs predicted {}",
                    rep.qualifying_count, rep.predicted_count
                ),
            );
            report.check_eq("qualifying_count", rep.expected_count, rep.qualifying_count);
            report.result = serde_json::to_value(&rep).unwrap_or(Value::Null);
        }
        Err(e) => {
            let cap =
                matches!(e, subspaces::SubspaceError::Field(ref fe) if field_error_is_cap(fe));
            report.fail_with_error(e, cap);
        }
    }
    finish(report, start)
}

/// Self-complement witness for the generalized Peisert graph GP*(q, 2d).
pub fn cmd_selfcomp(p: u64, exp: u32, two_d: u64, opts: &CommonOpts) -> Report {
    let start = Instant::now();
    let config = opts.config_json(json!({"p": p, "exp": exp, "two_d": two_d}));
    let mut report = Report::new("selfcomp", config);
    let field = match build_field(p, exp, opts) {
        Ok(f) => f,
        Err(e) => {
            let cap = field_error_is_cap(&e);
            report.fail_with_error(e, cap);
            return finish(report, start);
        }
    };
    record_field(&mut report, &field);
    let members: Vec<u64> = (0..two_d / 2).collect();
    match Graph::build_from_members(field, two_d, &members) {
        Ok(graph) => match graph.self_complement_witness() {
            Ok(holds) => {
                report.check_that(
                    "self_complement_witness",
                    holds,
                    "x -> g^d x exchanges edges and non-edges",
                    holds,
                );
                report.result = json!({"witness": holds});
            }
            Err(e) => report.fail_with_error(e, false),
        },
        Err(e) => report.fail_with_error(e, false),
    }
    finish(report, start)
}

/// Naive subfield-style construction and its clique test.
pub fn cmd_naive(p: u64, exp: u32, two_d: u64, members: &[u64], opts: &CommonOpts) -> Report {
    let start = Instant::now();
    let config =
        opts.config_json(json!({"p": p, "exp": exp, "two_d": two_d, "index_set": members}));
    let mut report = Report::new("naive", config);
    let field = match build_field(p, exp, opts) {
        Ok(f) => f,
        Err(e) => {
            let cap = field_error_is_cap(&e);
            report.fail_with_error(e, cap);
            return finish(report, start);
        }
    };
    record_field(&mut report, &field);
    let graph = match Graph::build_from_members(field, two_d, members) {
        Ok(g) => g,
        Err(e) => {
            report.fail_with_error(e, false);
            return finish(report, start);
        }
    };
    match cliques::naive_set(&graph) {
        Ok(set) => {
            let actual = cliques::is_clique(&graph, &set);
            let expected = graph.index_set().is_even_paley() || graph.index_set().is_odd_paley();
            report.check_eq("naive_is_clique_iff_paley", expected, actual);
            report.result = json!({
                "set_size": set.len(),
                "is_clique": actual,
                "paley_type": expected,
                "set": cliques::log_indices(graph.field(), &set),
            });
        }
        Err(e) => report.fail_with_error(e, false),
    }
    finish(report, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_command_on_pp_625() {
        let report = cmd_clique(5, 4, 6, &[0, 1, 3], SeedKind::Pair, &CommonOpts::default());
        assert_eq!(report.exit_code(), 0, "{}", report.to_json_string());
        assert_eq!(report.result["omega_through_seed"], 25);
        assert_eq!(report.result["certificate"], "pass");
        assert_eq!(
            report.result["profile"],
            serde_json::json!([8, 8, 0, 8, 0, 0])
        );
    }

    #[test]
    fn clique_command_on_p9() {
        let report = cmd_clique(3, 2, 2, &[0], SeedKind::Pair, &CommonOpts::default());
        assert_eq!(report.exit_code(), 0, "{}", report.to_json_string());
        assert_eq!(report.result["omega_through_seed"], 3);
        // The witness is F_3 = {0, 1, 2}: logs -1, 0, and log(2) = 4.
        let witness = report.result["witness"].as_array().unwrap();
        assert_eq!(witness.len(), 3);
        assert_eq!(witness[0], -1);
        assert_eq!(witness[1], 0);
    }

    #[test]
    fn clique_command_with_subfield_seed_on_peisert() {
        let report = cmd_clique(7, 4, 4, &[0, 1], SeedKind::Subfield, &CommonOpts::default());
        assert_eq!(report.exit_code(), 0, "{}", report.to_json_string());
        assert_eq!(report.result["omega_through_seed"], 7);
    }

    #[test]
    fn periods_command_known_values() {
        let report = cmd_periods(5, 4, 6, &CommonOpts::default());
        assert_eq!(report.exit_code(), 0, "{}", report.to_json_string());
        assert_eq!(report.result["lambda"], -21);
        assert_eq!(report.result["mu"], 4);
    }

    #[test]
    fn gauss_command_rejects_non_semi_primitive() {
        let report = cmd_gauss(5, 4, 8, &CommonOpts::default());
        assert_eq!(report.exit_code(), 1);
        assert!(report.error.is_some());
    }

    #[test]
    fn gauss_command_quadratic_q9() {
        let report = cmd_gauss(3, 2, 2, &CommonOpts::default());
        assert_eq!(report.exit_code(), 0, "{}", report.to_json_string());
        assert_eq!(report.result["value"], 3);
    }

    #[test]
    fn selfcomp_command() {
        let report = cmd_selfcomp(5, 4, 6, &CommonOpts::default());
        assert_eq!(report.exit_code(), 0, "{}", report.to_json_string());
    }

    #[test]
    fn naive_command_matches_lemma() {
        let report = cmd_naive(5, 4, 6, &[0, 2, 4], &CommonOpts::default());
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.result["is_clique"], true);
        let report = cmd_naive(5, 4, 6, &[0, 1, 3], &CommonOpts::default());
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.result["is_clique"], false);
    }

    #[test]
    fn count_index_sets_command() {
        let report = cmd_count_index_sets(3, &CommonOpts::default());
        assert_eq!(report.exit_code(), 0, "{}", report.to_json_string());
        assert_eq!(report.result["count"], 3);
    }

    #[test]
    fn size_cap_exit_code() {
        let opts = CommonOpts {
            size_cap: 100,
            ..CommonOpts::default()
        };
        let report = cmd_periods(5, 4, 6, &opts);
        assert_eq!(report.exit_code(), 4);
    }
}
