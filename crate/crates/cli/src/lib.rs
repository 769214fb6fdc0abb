//! Batch computation over knot records: Alexander polynomials, signatures,
//! branched-cover invariants, growth tables, residues, the lift/residue
//! sweep, and the self-test suite.

pub mod output;
pub mod selftest;

use std::fmt;
use std::path::Path;

use knotcover::algebra::ring::{format_rational, rational_to_f64};
use knotcover::branched::{branched_report, torsion_growth_at};
use knotcover::graphs::{lift_p, liftres_sweep, phi_r, res_p_graph, BeadedGraph};
use knotcover::lambda::varsigma_at;
use knotcover::seifert::{
    alexander, clover_matrix, signature_function, to_standard_basis, validate_seifert,
    SeifertMatrix,
};
use knotcover::theta::{res_p_theta, torus_average, ThetaClass};
use serde::{Deserialize, Serialize};

pub use output::{Cell, Format, Table};

/// Records bundled with the binary.
pub const CORPUS: &[(&str, &str)] = &[
    ("unknot", include_str!("../corpus/unknot.json")),
    ("trefoil", include_str!("../corpus/trefoil.json")),
    ("figure-8", include_str!("../corpus/figure-8.json")),
    ("random-01", include_str!("../corpus/random-01.json")),
    ("random-02", include_str!("../corpus/random-02.json")),
    ("random-03", include_str!("../corpus/random-03.json")),
    ("random-04", include_str!("../corpus/random-04.json")),
    ("random-05", include_str!("../corpus/random-05.json")),
    ("random-06", include_str!("../corpus/random-06.json")),
    ("random-07", include_str!("../corpus/random-07.json")),
    ("random-08", include_str!("../corpus/random-08.json")),
    ("random-09", include_str!("../corpus/random-09.json")),
    ("random-10", include_str!("../corpus/random-10.json")),
    ("random-11", include_str!("../corpus/random-11.json")),
    ("random-12", include_str!("../corpus/random-12.json")),
];

pub const EXAMPLE_Q: &str = include_str!("../corpus/q-monomial.json");

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    /// Machine-readable tag, e.g. `seifert-invalid`.
    pub reason: &'static str,
    pub detail: String,
}

impl CliError {
    pub fn input(reason: &'static str, detail: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            reason,
            detail: detail.into(),
        }
    }

    pub fn math(detail: impl Into<String>) -> Self {
        Self {
            code: EXIT_MATH,
            reason: "math-domain",
            detail: detail.into(),
        }
    }

    /// One-line JSON for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({"error": self.reason, "detail": self.detail}).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.reason, self.detail)
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Rendered output plus the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    pub seifert: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q2loop: Option<ThetaClass>,
    #[serde(default)]
    pub provenance: String,
}

impl KnotRecord {
    pub fn parse(text: &str) -> CliResult<Self> {
        let rec: KnotRecord = serde_json::from_str(text)
            .map_err(|e| CliError::input("json-invalid", e.to_string()))?;
        rec.seifert_matrix()?;
        Ok(rec)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Validated Seifert matrix, moved to the standard symplectic basis when
    /// necessary (a congruence, so every invariant is unchanged).
    pub fn seifert_matrix(&self) -> CliResult<SeifertMatrix> {
        let invalid = |d: String| CliError::input("seifert-invalid", format!("{}: {d}", self.name));
        let a = SeifertMatrix::new(self.seifert.clone()).map_err(|e| invalid(e.to_string()))?;
        if !validate_seifert(a.rows()).map_err(|e| invalid(e.to_string()))? {
            return Err(invalid("det(A - A^T) != 1".into()));
        }
        if a.is_standard_basis() {
            Ok(a)
        } else {
            to_standard_basis(&a)
                .map(|(s, _)| s)
                .map_err(|e| invalid(e.to_string()))
        }
    }
}

pub fn corpus() -> Vec<KnotRecord> {
    CORPUS
        .iter()
        .map(|(_, text)| KnotRecord::parse(text).expect("bundled record is valid"))
        .collect()
}

pub fn corpus_record(name: &str) -> Option<KnotRecord> {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| KnotRecord::parse(text).expect("bundled record is valid"))
}

/// A record from a file path, or a bundled record by name.
pub fn resolve_record(arg: &str) -> CliResult<KnotRecord> {
    let path = Path::new(arg);
    if path.exists() {
        return KnotRecord::load(path);
    }
    corpus_record(arg)
        .ok_or_else(|| CliError::input("io", format!("{arg}: no such file or bundled record")))
}

pub fn load_theta_class(path: &Path) -> CliResult<ThetaClass> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input("q-invalid", e.to_string()))
}

/// Parses `7`, `2,3,5`, `2..6` (inclusive) and mixtures like `2..4,9`.
pub fn parse_p_range(s: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::input("config-invalid", format!("bad p-range {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Alexander,
    Signature,
    Branched,
    Growth,
    Residue,
    Liftres,
    Selftest,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub ps: Vec<u64>,
    pub tol: f64,
    pub format: Format,
    pub inputs: Vec<String>,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.ps.is_empty() || self.ps.contains(&0) {
            return Err(CliError::input(
                "config-invalid",
                "p-range must be nonempty and positive",
            ));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::input(
                "config-invalid",
                "tolerance must be positive",
            ));
        }
        Ok(())
    }
}

fn math_err(e: knotcover::Error) -> CliError {
    CliError::math(e.to_string())
}

/// Exit code 1 when no row could be computed.
fn flag_code(any_regular: bool) -> i32 {
    if any_regular {
        EXIT_OK
    } else {
        EXIT_MATH
    }
}

pub fn cmd_alexander(rec: &KnotRecord, format: Format) -> CliResult<Outcome> {
    let delta = alexander(&rec.seifert_matrix()?);
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({"name": rec.name, "alexander": delta.to_string()})
        ),
        _ => format!("{delta}\n"),
    };
    Ok(Outcome {
        text,
        code: EXIT_OK,
    })
}

/// Per-root signatures from the Seifert matrix and from the clover matrix.
pub fn cmd_signature(rec: &KnotRecord, ps: &[u64], tol: f64, format: Format) -> CliResult<Outcome> {
    let a = rec.seifert_matrix()?;
    let w = clover_matrix(&a).map_err(math_err)?;
    let mut table = Table::new(&["p", "k", "regular", "sigma_seifert", "sigma_clover"]);
    let mut any = false;
    for &p in ps {
        for k in 1..p as i64 {
            let s = signature_function(&a, k, p, tol).ok();
            let c = varsigma_at(&w, k, p, tol).ok();
            let regular = s.is_some() && c.is_some();
            any |= regular;
            table.push(vec![
                Cell::Int(p as i64),
                Cell::Int(k),
                Cell::Bool(regular),
                s.map_or(Cell::Empty, Cell::Int),
                c.map_or(Cell::Empty, Cell::Int),
            ]);
        }
    }
    Ok(Outcome {
        text: table.render(format),
        code: flag_code(any || table.is_empty()),
    })
}

pub fn branched_table(
    rec: &KnotRecord,
    ps: &[u64],
    q: Option<&ThetaClass>,
) -> CliResult<(Table, bool)> {
    let a = rec.seifert_matrix()?;
    let mut table = Table::new(&[
        "p",
        "regular",
        "sigma_p",
        "beta_p",
        "log_beta_over_p",
        "casson",
    ]);
    let mut any = false;
    for &p in ps {
        let r = branched_report(&a, q, p).map_err(math_err)?;
        any |= r.regular;
        table.push(vec![
            Cell::Int(p as i64),
            Cell::Bool(r.regular),
            r.sigma_p.map_or(Cell::Empty, Cell::Int),
            r.beta_p.clone().map_or(Cell::Empty, Cell::Big),
            r.log_beta_over_p().map_or(Cell::Empty, Cell::Float),
            r.casson_f64().map_or(Cell::Empty, Cell::Float),
        ]);
    }
    Ok((table, any))
}

pub fn cmd_branched(
    rec: &KnotRecord,
    ps: &[u64],
    q: Option<&ThetaClass>,
    format: Format,
) -> CliResult<Outcome> {
    let (table, any) = branched_table(rec, ps, q)?;
    Ok(Outcome {
        text: table.render(format),
        code: flag_code(any),
    })
}

/// `log β_p / p` against its limit, the log Mahler measure of `Δ`. With
/// `plot`, only `x,y` pairs of the regular rows.
pub fn cmd_growth(rec: &KnotRecord, ps: &[u64], plot: bool, format: Format) -> CliResult<Outcome> {
    let a = rec.seifert_matrix()?;
    let g = torsion_growth_at(&a, ps);
    let any = g.rows.iter().any(|r| r.regular);
    let table = if plot {
        let mut t = Table::new(&["x", "y"]);
        for r in &g.rows {
            if let Some(y) = r.log_ratio {
                t.push(vec![Cell::Int(r.p as i64), Cell::Float(y)]);
            }
        }
        t
    } else {
        let mut t = Table::new(&["p", "regular", "log_beta_over_p", "log_mahler", "gap"]);
        for r in &g.rows {
            t.push(vec![
                Cell::Int(r.p as i64),
                Cell::Bool(r.regular),
                r.log_ratio.map_or(Cell::Empty, Cell::Float),
                Cell::Float(g.limit),
                r.log_ratio
                    .map_or(Cell::Empty, |y| Cell::Float((y - g.limit).abs())),
            ]);
        }
        t
    };
    Ok(Outcome {
        text: table.render(format),
        code: flag_code(any),
    })
}

/// `Res_p Q` exactly, `Res_p Q / p`, and the torus average it tends to.
pub fn cmd_residue(q: &ThetaClass, ps: &[u64], tol: f64, format: Format) -> CliResult<Outcome> {
    let avg = torus_average(q, tol).map_err(math_err)?;
    let mut table = Table::new(&["p", "regular", "res_p", "res_p_over_p", "torus_average"]);
    let mut any = false;
    for &p in ps {
        let row = match res_p_theta(q, p) {
            Ok(r) => {
                any = true;
                vec![
                    Cell::Int(p as i64),
                    Cell::Bool(true),
                    Cell::Text(format_rational(&r)),
                    Cell::Float(rational_to_f64(&r) / p as f64),
                    Cell::Float(avg.to_f64()),
                ]
            }
            Err(knotcover::Error::QSingularAtP { .. }) => vec![
                Cell::Int(p as i64),
                Cell::Bool(false),
                Cell::Empty,
                Cell::Empty,
                Cell::Float(avg.to_f64()),
            ],
            Err(e) => return Err(math_err(e)),
        };
        table.push(row);
    }
    Ok(Outcome {
        text: table.render(format),
        code: flag_code(any),
    })
}

/// `theta`, `eyes`, `+`-joined disjoint unions of those, or a JSON file.
pub fn resolve_graph(arg: &str) -> CliResult<BeadedGraph> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input("io", format!("{arg}: {e}")))?;
        return serde_json::from_str(&text)
            .map_err(|e| CliError::input("graph-invalid", e.to_string()));
    }
    let mut out: Option<BeadedGraph> = None;
    for part in arg.split('+') {
        let g = match part.trim() {
            "theta" => BeadedGraph::theta([0, 0, 0]),
            "eyes" => BeadedGraph::eyes([0, 0, 0]),
            other => {
                return Err(CliError::input(
                    "graph-invalid",
                    format!("unknown graph {other:?}"),
                ))
            }
        };
        out = Some(match out {
            None => g,
            Some(h) => h.disjoint_union(&g),
        });
    }
    out.ok_or_else(|| CliError::input("graph-invalid", "empty graph name"))
}

/// Exhaustive `Lift_p = Res_p ∘ φ_R` sweep. One summary row per
/// `(graph, p)`, or with `each` one row per bead tuple. Exit 1 on any failure.
pub fn cmd_liftres(
    graphs: &[(String, BeadedGraph)],
    ps: &[u64],
    each: bool,
    format: Format,
) -> CliResult<Outcome> {
    let mut failed = false;
    let table = if each {
        let mut t = Table::new(&["graph", "p", "beads", "lift", "res", "pass"]);
        for (name, g) in graphs {
            for &p in ps {
                let m = g.edges().len();
                for code in 0..(p as usize).pow(m as u32) {
                    let beads: Vec<i64> = (0..m)
                        .map(|i| ((code / (p as usize).pow(i as u32)) % p as usize) as i64)
                        .collect();
                    let h = g.with_beads(&beads);
                    let (lift, _) = lift_p(&h, p).map_err(math_err)?;
                    let res =
                        res_p_graph(&phi_r(&h).map_err(math_err)?, &h, p).map_err(math_err)?;
                    let pass = res == knotcover::algebra::ring::rat(lift as i64);
                    failed |= !pass;
                    t.push(vec![
                        Cell::Text(name.clone()),
                        Cell::Int(p as i64),
                        Cell::Text(
                            beads
                                .iter()
                                .map(|b| b.to_string())
                                .collect::<Vec<_>>()
                                .join(" "),
                        ),
                        Cell::Int(lift as i64),
                        Cell::Text(format_rational(&res)),
                        Cell::Bool(pass),
                    ]);
                }
            }
        }
        t
    } else {
        let mut t = Table::new(&["graph", "p", "cases", "failures"]);
        for (name, g) in graphs {
            for &p in ps {
                let (total, fails) = liftres_sweep(g, p).map_err(math_err)?;
                failed |= !fails.is_empty();
                t.push(vec![
                    Cell::Text(name.clone()),
                    Cell::Int(p as i64),
                    Cell::Int(total as i64),
                    Cell::Int(fails.len() as i64),
                ]);
            }
        }
        t
    };
    Ok(Outcome {
        text: table.render(format),
        code: if failed { EXIT_MATH } else { EXIT_OK },
    })
}

/// Runs the acceptance criteria (all, or those in `only`); one line per
/// criterion with its timing, or a CSV/JSON table.
pub fn cmd_selftest(corrupt: bool, only: &[usize], format: Format) -> Outcome {
    let results = selftest::run(&selftest::Options {
        corrupt,
        only: only.to_vec(),
    });
    let ok = results.iter().all(|r| r.passed());
    let text = if format == Format::Table {
        let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
        s.push_str(if ok {
            "selftest: pass\n"
        } else {
            "selftest: FAIL\n"
        });
        s
    } else {
        let mut table = Table::new(&[
            "criterion",
            "name",
            "passed",
            "seconds",
            "limit_seconds",
            "detail",
        ]);
        for r in &results {
            table.push(vec![
                Cell::Int(r.id as i64),
                Cell::Text(r.name.into()),
                Cell::Bool(r.passed()),
                Cell::Float(r.elapsed.as_secs_f64()),
                Cell::Int(r.limit.as_secs() as i64),
                Cell::Text(r.detail.clone()),
            ]);
        }
        table.render(format)
    };
    Outcome {
        text,
        code: if ok { EXIT_OK } else { EXIT_MATH },
    }
}
