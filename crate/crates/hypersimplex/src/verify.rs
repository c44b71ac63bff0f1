//! Cross-checks every closed form against the brute-force oracle.

use hypersimplex_core::oracle::{
    self, build_small_graph, exact_expansion, hamilton_connected_check, intersection_numbers,
    max_clique, vertex_connectivity_at_least, SmallGraph, CLIQUE_CAP, EXACT_EXPANSION_CAP,
    HAMILTON_CAP,
};
use hypersimplex_core::spectral::{verify_spectrum, MATRIX_CAP};
use hypersimplex_core::structure::linking_edge_formula;
use hypersimplex_core::{
    binomial, canonical_clique, cheeger_bounds, clique_number, decompose, degree, diameter,
    distance, edge_count, is_adjacent, transitive_automorphism, vertex_count, GraphParams, Vertex,
};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

/// Tolerance for the numeric spectrum check.
pub const SPECTRUM_TOL: f64 = 1e-8;
/// Largest graph for which vertex connectivity is checked.
pub const CONNECTIVITY_LIMIT: usize = 32;
/// Largest `d` for the distance-regularity check.
pub const DISTANCE_REGULAR_MAX_D: u32 = 8;

/// The closed forms under test, swappable so the harness can check itself.
#[derive(Clone, Copy)]
pub struct ClosedForms {
    pub vertex_count: fn(GraphParams) -> hypersimplex_core::Result<u64>,
    pub degree: fn(GraphParams) -> u64,
    pub edge_count: fn(GraphParams) -> hypersimplex_core::Result<u64>,
    pub diameter: fn(GraphParams) -> hypersimplex_core::Result<u32>,
    pub distance: fn(Vertex, Vertex) -> hypersimplex_core::Result<u32>,
    pub clique_number: fn(GraphParams) -> u32,
}

impl Default for ClosedForms {
    fn default() -> Self {
        ClosedForms {
            vertex_count,
            degree,
            edge_count,
            diameter,
            distance,
            clique_number,
        }
    }
}

impl ClosedForms {
    /// Degree formula off by one: `k(d-k) + 1`.
    pub fn with_faulty_degree() -> Self {
        ClosedForms {
            degree: |p| degree(p) + 1,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRecord {
    pub check: &'static str,
    pub d: u32,
    pub k: u32,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub check: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub d_max: u32,
    pub passed: usize,
    pub failed: usize,
    pub summary: Vec<CheckSummary>,
    pub records: Vec<VerifyRecord>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn first_failure(&self) -> Option<&VerifyRecord> {
        self.records.iter().find(|r| !r.pass)
    }
}

struct Recorder {
    p: GraphParams,
    records: Vec<VerifyRecord>,
}

impl Recorder {
    fn push(&mut self, check: &'static str, expected: Value, actual: Value) {
        let pass = expected == actual;
        self.push_with(check, expected, actual, pass);
    }

    fn push_with(&mut self, check: &'static str, expected: Value, actual: Value, pass: bool) {
        self.records.push(VerifyRecord {
            check,
            d: self.p.d(),
            k: self.p.k(),
            expected,
            actual,
            pass,
        });
    }
}

fn error_value(e: impl ToString) -> Value {
    json!({ "error": e.to_string() })
}

fn ratio_value(r: Ratio<u64>) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

/// Every check for one `(d, k)` with `k <= d/2`.
pub fn verify_params(p: GraphParams, forms: &ClosedForms) -> Vec<VerifyRecord> {
    let mut rec = Recorder {
        p,
        records: Vec::new(),
    };
    let g = match build_small_graph(p) {
        Ok(g) => g,
        Err(e) => {
            rec.push_with("build_small_graph", json!("graph"), error_value(e), false);
            return rec.records;
        }
    };
    let n = g.vertex_count();

    rec.push(
        "vertex_count",
        (forms.vertex_count)(p).map_or_else(error_value, Value::from),
        json!(n),
    );

    let expected_degree = (forms.degree)(p);
    let degrees: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let (lo, hi) = (degrees.iter().min().copied(), degrees.iter().max().copied());
    rec.push(
        "degree",
        json!(expected_degree),
        if lo == hi {
            json!(lo)
        } else {
            json!({ "min": lo, "max": hi })
        },
    );

    rec.push(
        "edge_count",
        (forms.edge_count)(p).map_or_else(error_value, Value::from),
        json!(g.edges.len()),
    );

    check_distances(&mut rec, &g, forms);

    if p.d() <= DISTANCE_REGULAR_MAX_D {
        check_distance_regular(&mut rec, &g);
    }
    if p.k() >= 2 && n <= CLIQUE_CAP {
        check_cliques(&mut rec, &g, forms);
    }
    if n as u64 <= MATRIX_CAP {
        check_spectrum(&mut rec, p);
    }
    if n <= EXACT_EXPANSION_CAP {
        check_expansion(&mut rec, &g);
    }
    if n <= CONNECTIVITY_LIMIT {
        let t = p.d() as usize - 1;
        let ok = vertex_connectivity_at_least(&g, t);
        rec.push(
            "vertex_connectivity",
            json!(format!(">= {t}")),
            match ok {
                Ok(true) => json!(format!(">= {t}")),
                Ok(false) => json!(format!("< {t}")),
                Err(e) => error_value(e),
            },
        );
    }
    if n <= HAMILTON_CAP {
        rec.push(
            "hamilton_connected",
            json!(true),
            hamilton_connected_check(&g).map_or_else(error_value, Value::from),
        );
    }
    check_decomposition(&mut rec, p);
    check_automorphisms(&mut rec, &g);
    rec.records
}

fn check_distances(rec: &mut Recorder, g: &SmallGraph, forms: &ClosedForms) {
    let n = g.vertex_count();
    let mut agree = 0usize;
    let mut first_bad: Option<Value> = None;
    for (i, &x) in g.vertices.iter().enumerate() {
        let bfs = oracle::bfs_distances(g, x).expect("vertex of g");
        for (j, &y) in g.vertices.iter().enumerate().skip(i) {
            match (forms.distance)(x, y) {
                Ok(d) if d == bfs[j] => agree += 1,
                other => {
                    first_bad.get_or_insert_with(|| {
                        json!({
                            "x": x.to_string(), "y": y.to_string(),
                            "formula": other.map_or_else(error_value, Value::from),
                            "bfs": bfs[j],
                        })
                    });
                }
            }
        }
    }
    let pairs = n * (n + 1) / 2;
    let actual = match first_bad {
        None => json!({ "agreeing_pairs": agree }),
        Some(bad) => json!({ "agreeing_pairs": agree, "first_mismatch": bad }),
    };
    rec.push("distance", json!({ "agreeing_pairs": pairs }), actual);
    rec.push(
        "diameter",
        (forms.diameter)(rec.p).map_or_else(error_value, Value::from),
        json!(oracle::exact_diameter(g)),
    );
}

fn check_distance_regular(rec: &mut Recorder, g: &SmallGraph) {
    rec.push(
        "distance_regular",
        json!(true),
        json!(intersection_numbers(g).is_some()),
    );
}

fn check_cliques(rec: &mut Recorder, g: &SmallGraph, forms: &ClosedForms) {
    let p = rec.p;
    rec.push(
        "clique_number",
        json!((forms.clique_number)(p)),
        max_clique(g).map_or_else(error_value, Value::from),
    );
    let clique = canonical_clique(p);
    let valid = clique.as_ref().is_ok_and(|c| {
        c.iter().enumerate().all(|(i, &x)| {
            c[i + 1..]
                .iter()
                .all(|&y| is_adjacent(x, y).unwrap_or(false))
        })
    });
    rec.push(
        "canonical_clique",
        json!({ "size": p.d() - p.k() + 1, "pairwise_adjacent": true }),
        json!({ "size": clique.map_or(0, |c| c.len()), "pairwise_adjacent": valid }),
    );
}

fn check_spectrum(rec: &mut Recorder, p: GraphParams) {
    match verify_spectrum(p, SPECTRUM_TOL) {
        Ok(v) => {
            let found: Vec<Value> = v
                .clusters
                .iter()
                .map(|c| json!([c.eigenvalue, c.multiplicity]))
                .collect();
            rec.push_with(
                "spectrum",
                json!(format!("match within {SPECTRUM_TOL:e}")),
                json!({ "clusters": found, "max_deviation": v.max_deviation }),
                true,
            );
        }
        Err(e) => rec.push_with(
            "spectrum",
            json!(format!("match within {SPECTRUM_TOL:e}")),
            error_value(e),
            false,
        ),
    }
}

fn check_expansion(rec: &mut Recorder, g: &SmallGraph) {
    let p = rec.p;
    let (Ok(bounds), Ok(report)) = (cheeger_bounds(p), exact_expansion(g)) else {
        rec.push_with("edge_expansion", json!("computable"), json!("error"), false);
        return;
    };
    let chi = report.value;
    let chi_sq = chi * chi;
    let within = bounds.lower <= chi
        && chi_sq <= Ratio::from_integer(bounds.upper_squared() as u64)
        && chi >= Ratio::from_integer(1);
    rec.push_with(
        "edge_expansion",
        json!({ "lower": ratio_value(bounds.lower), "upper": bounds.upper, "at_least": 1 }),
        json!({ "value": ratio_value(chi), "witness_size": report.witness.len() }),
        within,
    );
}

fn check_decomposition(rec: &mut Recorder, p: GraphParams) {
    let Ok(dec) = decompose(p, 1) else {
        rec.push_with(
            "decomposition",
            json!("decomposable"),
            json!("error"),
            false,
        );
        return;
    };
    let (d, k) = (u64::from(p.d()), u64::from(p.k()));
    let expected = json!({
        "ones_part": binomial(d - 1, k - 1),
        "zeros_part": binomial(d - 1, k),
        "linking_edges": linking_edge_formula(p).ok(),
        "edge_identity": true,
        "relabelings_isomorphic": true,
    });
    let actual = json!({
        "ones_part": dec.ones_part.vertices.len(),
        "zeros_part": dec.zeros_part.vertices.len(),
        "linking_edges": dec.linking_edges.len(),
        "edge_identity": dec.edge_identity_holds().unwrap_or(false),
        "relabelings_isomorphic": dec.ones_part.relabeling_is_isomorphism()
            && dec.zeros_part.relabeling_is_isomorphism(),
    });
    rec.push("decomposition", expected, actual);
}

fn check_automorphisms(rec: &mut Recorder, g: &SmallGraph) {
    // every pair from the first vertex, and every pair into the last
    let n = g.vertex_count();
    let pairs = (0..n).map(|j| (0, j)).chain((0..n).map(|i| (i, n - 1)));
    let mut failures = 0usize;
    let mut checked = 0usize;
    for (i, j) in pairs {
        let (x, y) = (g.vertices[i], g.vertices[j]);
        checked += 1;
        let ok = transitive_automorphism(x, y).is_ok_and(|f| {
            f.apply(x).ok() == Some(y)
                && f.compose(&f).is_identity()
                && g.edges.iter().all(|&(a, b)| {
                    let (fa, fb) = (f.apply(g.vertices[a]), f.apply(g.vertices[b]));
                    matches!((fa, fb), (Ok(fa), Ok(fb)) if is_adjacent(fa, fb).unwrap_or(false))
                })
        });
        if !ok {
            failures += 1;
        }
    }
    rec.push(
        "automorphism",
        json!({ "pairs": checked, "failures": 0 }),
        json!({ "pairs": checked, "failures": failures }),
    );
}

/// Runs every check for all `d <= d_max`, `k <= d/2`.
pub fn run_suite(d_max: u32, forms: &ClosedForms) -> VerifyReport {
    let records: Vec<VerifyRecord> = GraphParams::restricted_up_to(d_max)
        .flat_map(|p| verify_params(p, forms))
        .collect();
    let mut summary: Vec<CheckSummary> = Vec::new();
    for r in &records {
        let entry = match summary.iter_mut().find(|s| s.check == r.check) {
            Some(s) => s,
            None => {
                summary.push(CheckSummary {
                    check: r.check,
                    passed: 0,
                    failed: 0,
                });
                summary.last_mut().expect("just pushed")
            }
        };
        if r.pass {
            entry.passed += 1;
        } else {
            entry.failed += 1;
        }
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    VerifyReport {
        d_max,
        passed: records.len() - failed,
        failed,
        summary,
        records,
    }
}
