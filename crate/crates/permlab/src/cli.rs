//! Command-line entry points: analyze a single group file, verify every
//! bound over the generated corpus, compute the distinct-prime threshold,
//! and export the corpus. Each returns its rendered output plus the process
//! exit code, so the binary stays a thin wrapper and tests can call these
//! directly.
//!
//! Exit codes for `analyze`: 0 all PASS/SKIPPED, 1 any FAIL, 2 input error,
//! 3 resource limit at the root group. `verify` exits 1 iff any check
//! fails. JSON output has sorted keys and is byte-identical across
//! identical invocations.

use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::actions::{is_primitive, is_quasiprimitive, minimal_block_systems};
use crate::corpus::{enumerate_corpus, export_corpus, subdirect_instances, CorpusEntry};
use crate::error::Error;
use crate::fileformat::parse_group_file;
use crate::group::PermGroup;
use crate::orbitals::{smallest_self_paired_nontrivial, suborbits};
use crate::report::{fmt_bound, json_primes, CheckReport, Verdict};
use crate::structure::{check_socle_primitive, check_subdirect, comp_a, Limits};
use crate::theorems::{
    check_jordan, check_odd_order, check_prop3, check_wielandt, distinct_prime_table,
    key_lemma_threshold, verify_theorem7,
};

#[derive(Clone, Copy, Debug)]
pub struct VerifyParams {
    pub max_degree: usize,
    pub max_order: u64,
    pub seeds: u64,
    pub seed0: u64,
    pub limits: Limits,
}

impl Default for VerifyParams {
    fn default() -> VerifyParams {
        VerifyParams {
            max_degree: 12,
            max_order: 1_000_000,
            seeds: 5,
            seed0: 1,
            limits: Limits::default(),
        }
    }
}

fn is_odd_order(g: &PermGroup) -> bool {
    (g.order() % BigUint::from(2u32)) != BigUint::from(0u32)
}

/// Analyzes one group file. Returns the rendered report and the exit code.
pub fn run_analyze(path: &Path, json_output: bool, limits: &Limits) -> (String, i32) {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return (format!("error: cannot read {}: {e}\n", path.display()), 2),
    };
    let (degree, gens) = match parse_group_file(&text) {
        Ok(v) => v,
        Err(e) => return (format!("error: {e}\n"), 2),
    };
    let group = match PermGroup::from_generators(degree, gens) {
        Ok(g) => g,
        Err(e) => return (format!("error: {e}\n"), 2),
    };
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "group".to_string());

    let mut report = Map::new();
    report.insert(
        "group".into(),
        json!({
            "name": name,
            "degree": group.degree(),
            "order": group.order().to_string(),
        }),
    );
    let transitive = group.is_transitive();
    report.insert("transitive".into(), json!(transitive));

    let mut checks: Vec<CheckReport> = Vec::new();
    if !transitive {
        report.insert(
            "note".into(),
            json!("group is intransitive; transitive analyses skipped"),
        );
        let rendered = render_analysis(&Value::Object(report), json_output);
        return (rendered, 0);
    }

    // root comp_A values; a resource failure here is a limit at the root
    let gx = match group.point_stabilizer(0) {
        Ok(g) => g,
        Err(e) => return (format!("error: {e}\n"), 2),
    };
    let ca_g = comp_a(&group, limits);
    let ca_gx = comp_a(&gx, limits);
    match (&ca_g, &ca_gx) {
        (Err(e), _) | (_, Err(e)) if e.is_resource_limit() => {
            return (
                format!("error: resource limit at root group: {e}\n"),
                3,
            );
        }
        _ => {}
    }
    if let Ok(s) = &ca_g {
        report.insert("comp_a_g".into(), json_primes(s));
    }
    if let Ok(s) = &ca_gx {
        report.insert("comp_a_gx".into(), json_primes(s));
    }

    let primitive = group.degree() >= 2 && is_primitive(&group).unwrap_or(false);
    report.insert("primitive".into(), json!(primitive));
    match is_quasiprimitive(&group, limits) {
        Ok(q) => {
            report.insert("quasiprimitive".into(), json!(q));
        }
        Err(e) if e.is_resource_limit() => {
            report.insert("quasiprimitive".into(), Value::Null);
        }
        Err(e) => return (format!("error: {e}\n"), 2),
    }

    if !primitive {
        if let Ok(systems) = minimal_block_systems(&group) {
            report.insert(
                "minimal_block_systems".into(),
                json!(systems.iter().map(|s| s.blocks().to_vec()).collect::<Vec<_>>()),
            );
        }
    } else {
        report.insert("minimal_block_systems".into(), json!([]));
    }

    let subs = suborbits(&group, 0).expect("transitive");
    report.insert(
        "suborbits".into(),
        json!(subs
            .iter()
            .map(|s| json!({"size": s.len(), "self_paired": s.self_paired, "min_point": s.representative}))
            .collect::<Vec<_>>()),
    );

    // per-lemma checks
    if primitive {
        match check_jordan(&group, &name) {
            Ok(r) => checks.push(r),
            Err(e) => checks.push(CheckReport::skipped("jordan", &name, &group, &e.to_string())),
        }
        match check_socle_primitive(&group, &name, limits) {
            Ok(r) => checks.push(r),
            Err(e) if e.is_resource_limit() => checks.push(CheckReport::skipped(
                "socle_primitive",
                &name,
                &group,
                &e.to_string(),
            )),
            Err(e) => return (format!("error: {e}\n"), 2),
        }
    }
    if is_odd_order(&group) {
        match check_odd_order(&group, &name, limits) {
            Ok(r) => checks.push(r),
            Err(e) if e.is_resource_limit() => checks.push(CheckReport::skipped(
                "odd_order",
                &name,
                &group,
                &e.to_string(),
            )),
            Err(e) => return (format!("error: {e}\n"), 2),
        }
    }
    match check_prop3(&group, &name, limits) {
        Ok(r) => checks.push(r),
        Err(e) => return (format!("error: {e}\n"), 2),
    }
    if primitive && !group.is_regular() {
        match smallest_self_paired_nontrivial(&group, 0) {
            Ok(Some(delta)) => match check_wielandt(&group, &name, 0, &delta, limits) {
                Ok(r) => checks.push(r),
                Err(e) => return (format!("error: {e}\n"), 2),
            },
            Ok(None) => checks.push(CheckReport::skipped(
                "wielandt",
                &name,
                &group,
                "no nontrivial self-paired suborbit",
            )),
            Err(e) => return (format!("error: {e}\n"), 2),
        }
    }

    let trace = match verify_theorem7(&group, &name, limits) {
        Ok(t) => t,
        Err(e) => return (format!("error: {e}\n"), 2),
    };
    let trace_verdict = trace.verdict();
    report.insert("theorem7".into(), trace.to_json());
    report.insert("theorem7_verdict".into(), json!(trace_verdict.label()));

    report.insert(
        "checks".into(),
        Value::Array(checks.iter().map(|c| c.to_json()).collect()),
    );

    let any_fail = checks.iter().any(|c| c.verdict.is_fail()) || trace_verdict.is_fail();
    let rendered = render_analysis(&Value::Object(report), json_output);
    (rendered, if any_fail { 1 } else { 0 })
}

fn render_analysis(report: &Value, json_output: bool) -> String {
    if json_output {
        return format!("{}\n", serde_json::to_string_pretty(report).unwrap());
    }
    let mut out = String::new();
    let group = &report["group"];
    out.push_str(&format!(
        "group {} degree {} order {}\n",
        group["name"].as_str().unwrap_or("?"),
        group["degree"],
        group["order"].as_str().unwrap_or("?"),
    ));
    out.push_str(&format!("transitive: {}\n", report["transitive"]));
    if let Some(p) = report.get("primitive") {
        out.push_str(&format!("primitive: {p}\n"));
    }
    if let Some(q) = report.get("quasiprimitive") {
        out.push_str(&format!("quasiprimitive: {q}\n"));
    }
    if let Some(e) = report.get("minimal_block_systems") {
        out.push_str(&format!("minimal block systems: {e}\n"));
    }
    if let Some(s) = report.get("suborbits") {
        out.push_str(&format!("suborbits: {s}\n"));
    }
    if let Some(s) = report.get("comp_a_g") {
        out.push_str(&format!("comp_a(G): {s}\n"));
    }
    if let Some(s) = report.get("comp_a_gx") {
        out.push_str(&format!("comp_a(G_x): {s}\n"));
    }
    if let Some(checks) = report.get("checks").and_then(|c| c.as_array()) {
        for c in checks {
            out.push_str(&format!(
                "check {}: {}\n",
                c["lemma"].as_str().unwrap_or("?"),
                c["verdict"].as_str().unwrap_or("?"),
            ));
        }
    }
    if let Some(t) = report.get("theorem7") {
        out.push_str(&format!(
            "theorem7: {} (value {} bound {})\n",
            report["theorem7_verdict"].as_str().unwrap_or("?"),
            t["value"],
            t["bound"].as_str().unwrap_or("?"),
        ));
    }
    out
}

struct LemmaCounts {
    pass: usize,
    fail: usize,
    skipped: usize,
}

impl LemmaCounts {
    fn new() -> LemmaCounts {
        LemmaCounts {
            pass: 0,
            fail: 0,
            skipped: 0,
        }
    }

    fn add(&mut self, v: &Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skipped(_) => self.skipped += 1,
        }
    }
}

const LEMMA_ORDER: [&str; 7] = [
    "jordan",
    "odd_order",
    "prop3",
    "wielandt",
    "socle_primitive",
    "subdirect_product",
    "theorem7",
];

/// Runs every check over the corpus plus the constructed subdirect suite.
/// Returns the rendered summary and the exit code (1 iff any FAIL).
pub fn run_verify(params: &VerifyParams, json_output: bool) -> (String, i32) {
    let limits = params.limits;
    let corpus = enumerate_corpus(
        params.max_degree,
        params.max_order,
        params.seeds,
        params.seed0,
    );

    let mut results: Vec<(String, String, Verdict)> = Vec::new();
    let mut fail_witnesses: Vec<Value> = Vec::new();
    fn record(
        results: &mut Vec<(String, String, Verdict)>,
        fail_witnesses: &mut Vec<Value>,
        lemma: &str,
        name: &str,
        report: &CheckReport,
    ) {
        if report.verdict.is_fail() {
            fail_witnesses.push(report.to_json());
        }
        results.push((lemma.to_string(), name.to_string(), report.verdict.clone()));
    }

    for entry in &corpus {
        let g = &entry.group;
        let name = entry.name();
        let primitive = g.degree() >= 2 && is_primitive(g).unwrap_or(false);

        if primitive {
            match check_jordan(g, &name) {
                Ok(r) => {
                    record(&mut results, &mut fail_witnesses, "jordan", &name, &r);
                }
                Err(e) => {
                    record(&mut results, &mut fail_witnesses, "jordan",
                        &name,
                        &CheckReport::skipped("jordan", &name, g, &e.to_string()),
                    );
                }
            }
            match check_socle_primitive(g, &name, &limits) {
                Ok(r) => {
                    record(&mut results, &mut fail_witnesses, "socle_primitive", &name, &r);
                }
                Err(e) if e.is_resource_limit() => {
                    record(&mut results, &mut fail_witnesses, "socle_primitive",
                        &name,
                        &CheckReport::skipped("socle_primitive", &name, g, &e.to_string()),
                    );
                }
                Err(e) => {
                    record(&mut results, &mut fail_witnesses, "socle_primitive",
                        &name,
                        &CheckReport::new(
                            "socle_primitive",
                            &name,
                            g,
                            Verdict::Fail,
                            json!({"error": e.to_string()}),
                        ),
                    );
                }
            }
        }

        if is_odd_order(g) {
            match check_odd_order(g, &name, &limits) {
                Ok(r) => {
                    record(&mut results, &mut fail_witnesses, "odd_order", &name, &r);
                }
                Err(e) if e.is_resource_limit() => {
                    record(&mut results, &mut fail_witnesses, "odd_order",
                        &name,
                        &CheckReport::skipped("odd_order", &name, g, &e.to_string()),
                    );
                }
                Err(e) => {
                    record(&mut results, &mut fail_witnesses, "odd_order",
                        &name,
                        &CheckReport::new(
                            "odd_order",
                            &name,
                            g,
                            Verdict::Fail,
                            json!({"error": e.to_string()}),
                        ),
                    );
                }
            }
        }

        match check_prop3(g, &name, &limits) {
            Ok(r) => {
                record(&mut results, &mut fail_witnesses, "prop3", &name, &r);
            }
            Err(e) => {
                record(&mut results, &mut fail_witnesses, "prop3",
                    &name,
                    &CheckReport::new(
                        "prop3",
                        &name,
                        g,
                        Verdict::Fail,
                        json!({"error": e.to_string()}),
                    ),
                );
            }
        }

        if primitive && !g.is_regular() {
            let delta = smallest_self_paired_nontrivial(g, 0).ok().flatten();
            match delta {
                Some(delta) => match check_wielandt(g, &name, 0, &delta, &limits) {
                    Ok(r) => {
                        record(&mut results, &mut fail_witnesses, "wielandt", &name, &r);
                    }
                    Err(e) => {
                        record(&mut results, &mut fail_witnesses, "wielandt",
                            &name,
                            &CheckReport::new(
                                "wielandt",
                                &name,
                                g,
                                Verdict::Fail,
                                json!({"error": e.to_string()}),
                            ),
                        );
                    }
                },
                None => {
                    record(&mut results, &mut fail_witnesses, "wielandt",
                        &name,
                        &CheckReport::skipped(
                            "wielandt",
                            &name,
                            g,
                            "no nontrivial self-paired suborbit",
                        ),
                    );
                }
            }
        }

        match verify_theorem7(g, &name, &limits) {
            Ok(trace) => {
                let verdict = trace.verdict();
                if verdict.is_fail() {
                    fail_witnesses.push(trace.to_json());
                }
                results.push(("theorem7".to_string(), name.clone(), verdict));
            }
            Err(e) => {
                results.push((
                    "theorem7".to_string(),
                    name.clone(),
                    Verdict::Skipped(e.to_string()),
                ));
            }
        }
    }

    for instance in subdirect_instances() {
        let (s1, s2) = instance.domains();
        match check_subdirect(&instance.group, &instance.name, &s1, &s2, &limits) {
            Ok(r) => {
                record(&mut results, &mut fail_witnesses, "subdirect_product", &instance.name, &r);
            }
            Err(e) if e.is_resource_limit() => {
                record(&mut results, &mut fail_witnesses, "subdirect_product",
                    &instance.name,
                    &CheckReport::skipped(
                        "subdirect_product",
                        &instance.name,
                        &instance.group,
                        &e.to_string(),
                    ),
                );
            }
            Err(e) => {
                record(&mut results, &mut fail_witnesses, "subdirect_product",
                    &instance.name,
                    &CheckReport::new(
                        "subdirect_product",
                        &instance.name,
                        &instance.group,
                        Verdict::Fail,
                        json!({"error": e.to_string()}),
                    ),
                );
            }
        }
    }

    let mut summary: Vec<(&str, LemmaCounts)> =
        LEMMA_ORDER.iter().map(|l| (*l, LemmaCounts::new())).collect();
    for (lemma, _, verdict) in &results {
        if let Some((_, counts)) = summary.iter_mut().find(|(l, _)| l == lemma) {
            counts.add(verdict);
        }
    }
    let fail_total: usize = summary.iter().map(|(_, c)| c.fail).sum();

    let output = if json_output {
        let mut obj = Map::new();
        obj.insert(
            "params".into(),
            json!({
                "max_degree": params.max_degree,
                "max_order": params.max_order,
                "seeds": params.seeds,
                "seed0": params.seed0,
                "enum_limit": limits.enum_limit,
                "order_limit": limits.order_limit,
            }),
        );
        obj.insert("corpus_size".into(), json!(corpus.len()));
        obj.insert(
            "corpus".into(),
            json!(corpus
                .iter()
                .map(|e| json!({
                    "name": e.name(),
                    "degree": e.group.degree(),
                    "order": e.group.order().to_string(),
                }))
                .collect::<Vec<_>>()),
        );
        let mut lemmas = Map::new();
        for (lemma, counts) in &summary {
            lemmas.insert(
                lemma.to_string(),
                json!({"pass": counts.pass, "fail": counts.fail, "skipped": counts.skipped}),
            );
        }
        obj.insert("lemmas".into(), Value::Object(lemmas));
        obj.insert(
            "results".into(),
            json!(results
                .iter()
                .map(|(lemma, name, verdict)| {
                    let mut r = Map::new();
                    r.insert("lemma".into(), json!(lemma));
                    r.insert("group".into(), json!(name));
                    r.insert("verdict".into(), json!(verdict.label()));
                    if let Verdict::Skipped(reason) = verdict {
                        r.insert("reason".into(), json!(reason));
                    }
                    Value::Object(r)
                })
                .collect::<Vec<_>>()),
        );
        obj.insert("failures".into(), Value::Array(fail_witnesses));
        obj.insert("fail_total".into(), json!(fail_total));
        format!("{}\n", serde_json::to_string_pretty(&Value::Object(obj)).unwrap())
    } else {
        let mut out = String::new();
        out.push_str(&format!(
            "corpus: {} groups (degree <= {}, order <= {}, {} seeds from {})\n",
            corpus.len(),
            params.max_degree,
            params.max_order,
            params.seeds,
            params.seed0,
        ));
        for (lemma, counts) in &summary {
            out.push_str(&format!(
                "{lemma:<18} pass {:>4}  fail {:>3}  skipped {:>3}\n",
                counts.pass, counts.fail, counts.skipped
            ));
        }
        for w in &fail_witnesses {
            out.push_str(&format!("FAIL: {w}\n"));
        }
        out.push_str(&format!("total failures: {fail_total}\n"));
        out
    };
    (output, if fail_total > 0 { 1 } else { 0 })
}

/// Prints k, m(k) and 2 k^(2/5) at logarithmic sample points plus the
/// computed threshold K0.
pub fn run_threshold(k_max: u64) -> (String, i32) {
    if k_max < 2 {
        return ("error: k_max must be at least 2\n".to_string(), 2);
    }
    let table = distinct_prime_table(k_max);
    let mut sample_points = Vec::new();
    let mut k = 10u64;
    sample_points.push(2);
    while k < k_max {
        sample_points.push(k);
        k = k.saturating_mul(10);
    }
    sample_points.push(k_max);
    sample_points.dedup();

    let mut out = String::new();
    out.push_str(&format!("{:>10} {:>8} {:>16}\n", "k", "m(k)", "2*k^(2/5)"));
    for &k in &sample_points {
        out.push_str(&format!(
            "{:>10} {:>8} {:>16}\n",
            k,
            table[k as usize],
            fmt_bound(2.0 * (k as f64).powf(0.4))
        ));
    }
    match key_lemma_threshold(k_max) {
        Some(k0) => out.push_str(&format!("K0 = {k0}\n")),
        None => out.push_str(&format!("K0 = none <= {k_max}\n")),
    }
    (out, 0)
}

/// Exports the corpus as generator files into a directory.
pub fn run_corpus_export(dir: &Path, params: &VerifyParams) -> (String, i32) {
    let corpus = enumerate_corpus(
        params.max_degree,
        params.max_order,
        params.seeds,
        params.seed0,
    );
    match export_corpus(dir, &corpus) {
        Ok(()) => (
            format!("wrote {} group files to {}\n", corpus.len(), dir.display()),
            0,
        ),
        Err(e) => (format!("error: {e}\n"), 2),
    }
}

/// Exposed for tests: the eligible corpus entries of a verify run.
pub fn corpus_for(params: &VerifyParams) -> Vec<CorpusEntry> {
    enumerate_corpus(
        params.max_degree,
        params.max_order,
        params.seeds,
        params.seed0,
    )
}

#[allow(dead_code)]
fn unused_error(_: &Error) {}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
        let path = std::env::temp_dir().join(format!("permlab_{}_{name}", std::process::id()));
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn analyze_c4_reports_blocks_and_bound() {
        let path = write_temp("c4.grp", "degree: 4\n(0 1 2 3)\n");
        let (out, code) = run_analyze(&path, true, &Limits::default());
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["transitive"], true);
        assert_eq!(v["primitive"], false);
        assert_eq!(v["minimal_block_systems"][0], json!([[0, 2], [1, 3]]));
        assert_eq!(v["comp_a_g"], json!([2]));
        assert_eq!(v["comp_a_gx"], json!([]));
        assert_eq!(v["theorem7"]["value"], 0);
        assert_eq!(v["theorem7"]["bound"], "8.00000000000");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn analyze_rejects_bad_input() {
        let path = write_temp("bad.grp", "degree: 3\n(0 1)(1 2)\n");
        let (out, code) = run_analyze(&path, false, &Limits::default());
        assert_eq!(code, 2);
        assert!(out.contains("line 2"), "{out}");
        let (_, code) = run_analyze(Path::new("/nonexistent/x.grp"), false, &Limits::default());
        assert_eq!(code, 2);
    }

    #[test]
    fn analyze_sym4_passes_checks() {
        let path = write_temp("s4.grp", "degree: 4\n(0 1)\n(0 1 2 3)\n");
        let (out, code) = run_analyze(&path, true, &Limits::default());
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["theorem7"]["value"], 2);
        let checks = v["checks"].as_array().unwrap();
        let jordan = checks.iter().find(|c| c["lemma"] == "jordan").unwrap();
        assert_eq!(jordan["verdict"], "PASS");
        let prop3 = checks.iter().find(|c| c["lemma"] == "prop3").unwrap();
        assert_eq!(prop3["verdict"], "PASS");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn small_verify_runs_are_deterministic() {
        let params = VerifyParams {
            max_degree: 4,
            max_order: 1_000,
            seeds: 2,
            seed0: 1,
            limits: Limits::default(),
        };
        let (a, code_a) = run_verify(&params, true);
        let (b, code_b) = run_verify(&params, true);
        assert_eq!(a, b);
        assert_eq!(code_a, code_b);
    }

    #[test]
    fn threshold_of_ten_has_no_k0() {
        let (out, code) = run_threshold(10);
        assert_eq!(code, 0);
        assert!(out.contains("K0 = none <= 10"), "{out}");
    }
}
