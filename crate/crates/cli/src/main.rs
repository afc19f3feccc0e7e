// SPDX-License-Identifier: Apache-2.0

//! `readonce`: checking tests, relevance hypercubes and factoring for
//! read-once Boolean functions.
//!
//! Exit codes: 0 on success, 1 on a negative verdict, 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use readonce::hypercube::{
    expand_hypercube, find_hypercubes, restriction_on, stability_violations, Hypercube,
};
use readonce::testgen::{
    relevance_table, relevance_table_all, LabeledVector, RelevanceTable, TestSet,
};
use readonce::verify::props::{property_suites, Budget, Suite};
use readonce::verify::{
    enumerate_readonce, identify_from_test, is_checking_test, min_test, Verdict,
};
use readonce::{
    factor, AlternativeCatalog, Error, PartialAssignment, ReadOnceTree, TruthTable, VarSet,
};

#[derive(Parser)]
#[command(
    name = "readonce",
    version,
    about = "Checking tests for read-once Boolean functions"
)]
struct Cli {
    /// Print a JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TargetSource {
    /// Read-once formula, e.g. `or(x1,and(x2,~x3))`.
    #[arg(long)]
    formula: Option<String>,
    /// Truth table, e.g. `tt:3:e4`.
    #[arg(long)]
    tt: Option<String>,
}

#[derive(Args)]
struct Target {
    #[command(flatten)]
    source: TargetSource,
    /// Basis arity bound (and hypercube dimension where relevant).
    #[arg(long)]
    l: usize,
    /// Variable count of a formula target (default: its largest variable index).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Leave the constants out of the alternative catalog.
    #[arg(long)]
    no_constants: bool,
    /// Catalog cache file, reused across runs.
    #[arg(long)]
    catalog_cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the relevance hypercube set of a target as a test-set file.
    GenTest {
        #[command(flatten)]
        target: Target,
        /// Use every relevance hypercube of every subset.
        #[arg(long)]
        all_cubes: bool,
        /// Keep vectors shared by several hypercubes.
        #[arg(long)]
        no_dedup: bool,
    },
    /// Print the relevance table of a target.
    Reltable {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        all_cubes: bool,
    },
    /// Check that a test set separates the target from every read-once alternative.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        test: PathBuf,
        #[command(flatten)]
        catalog: CatalogArgs,
    },
    /// Print the read-once tree of a target.
    Factor {
        #[command(flatten)]
        target: Target,
    },
    /// Relevance hypercube queries.
    Hypercube {
        #[command(subcommand)]
        op: HypercubeOp,
    },
    /// Print the catalog of read-once functions on n variables.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        no_constants: bool,
    },
    /// Print a smallest checking test (n <= 3).
    MinTest {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        catalog: CatalogArgs,
    },
    /// Print the unique catalog member consistent with a test set.
    Identify {
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        catalog: CatalogArgs,
    },
    /// Run the seeded property suites.
    Props {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run one suite: lemma2, prop2, prop3 or roundtrip.
        #[arg(long)]
        suite: Option<Suite>,
        /// Cases per suite (default: 500, 500, 200, 1000).
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Subcommand)]
enum HypercubeOp {
    /// List every relevance hypercube for a variable set.
    Find {
        #[command(flatten)]
        target: Target,
        /// Variable set, e.g. `1,3`.
        #[arg(long)]
        vars: String,
    },
    /// Grow a relevance hypercube to dimension q.
    Expand {
        #[command(flatten)]
        target: Target,
        /// Fixing of the bound variables, e.g. `1=1,2=0`.
        #[arg(long)]
        fix: String,
        #[arg(long)]
        q: usize,
    },
    /// Check whether a variable set is stable.
    Stable {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        vars: String,
    },
}

/// Text and JSON forms of one result, plus whether it is a positive verdict.
struct Output {
    text: String,
    json: Value,
    positive: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output {
            text,
            json,
            positive: true,
        }
    }
}

type Result<T> = std::result::Result<T, Error>;

impl Target {
    fn table(&self) -> Result<TruthTable> {
        if let Some(tt) = &self.source.tt {
            return tt.parse();
        }
        let text = self.source.formula.as_deref().unwrap_or_default();
        let tree = ReadOnceTree::parse(text, self.l)?;
        let vars = tree.leaf_vars();
        let n = self.n.unwrap_or_else(|| vars.last().unwrap_or(0));
        tree.truth_table().embed(n, vars)
    }
}

impl CatalogArgs {
    fn load(&self, n: usize, l: usize) -> Result<AlternativeCatalog> {
        let constants = !self.no_constants;
        match &self.catalog_cache {
            Some(path) => AlternativeCatalog::load_or_build(path, n, l, constants),
            None => enumerate_readonce(n, l, constants),
        }
    }
}

fn read_test(path: &Path) -> Result<TestSet> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    TestSet::parse(&text)
}

fn vectors_json(n: usize, vectors: &[LabeledVector]) -> Value {
    vectors
        .iter()
        .map(|v| json!({ "input": v.bits(n), "label": u8::from(v.label) }))
        .collect()
}

fn test_set_output(m: &TestSet) -> Output {
    Output::ok(
        m.to_string(),
        json!({ "n": m.num_vars(), "size": m.len(), "vectors": vectors_json(m.num_vars(), m.vectors()) }),
    )
}

fn reltable_json(t: &RelevanceTable) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            let cubes: Vec<Value> = r
                .cubes
                .iter()
                .map(|c| json!({ "cube": c.cube.to_string(), "vectors": vectors_json(t.n, &c.vectors) }))
                .collect();
            json!({ "w": r.w.to_string(), "star": r.is_star(), "cubes": cubes })
        })
        .collect();
    json!({ "n": t.n, "l": t.l, "rows": rows })
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::GenTest {
            target,
            all_cubes,
            no_dedup,
        } => {
            let f = target.table()?;
            let table = if all_cubes {
                relevance_table_all(&f, target.l)?
            } else {
                relevance_table(&f, target.l)?
            };
            if !no_dedup {
                return Ok(test_set_output(&table.test_set()));
            }
            let n = f.num_vars();
            let raw = table.multiset();
            let mut text = format!("n={n}\n");
            for v in &raw {
                text.push_str(&format!("{} {}\n", v.bits(n), u8::from(v.label)));
            }
            Ok(Output::ok(
                text,
                json!({ "n": n, "size": raw.len(), "vectors": vectors_json(n, &raw) }),
            ))
        }
        Command::Reltable { target, all_cubes } => {
            let f = target.table()?;
            let table = if all_cubes {
                relevance_table_all(&f, target.l)?
            } else {
                relevance_table(&f, target.l)?
            };
            Ok(Output::ok(table.to_string(), reltable_json(&table)))
        }
        Command::Verify {
            target,
            test,
            catalog,
        } => {
            let f = target.table()?;
            let m = read_test(&test)?;
            if m.num_vars() != f.num_vars() {
                return Err(Error::VarCountMismatch {
                    expected: f.num_vars(),
                    found: m.num_vars(),
                });
            }
            let cat = catalog.load(f.num_vars(), target.l)?;
            Ok(match is_checking_test(&f, &m, &cat)? {
                Verdict::Checking => Output::ok(
                    "CHECKING TEST: yes\n".into(),
                    json!({ "checking": true, "alternatives": cat.len() }),
                ),
                Verdict::Counterexample(g) => Output {
                    text: format!("CHECKING TEST: no\ncounterexample: {g}\n"),
                    json: json!({ "checking": false, "alternatives": cat.len(), "counterexample": g.to_string() }),
                    positive: false,
                },
            })
        }
        Command::Factor { target } => {
            let f = target.table()?;
            Ok(match factor(&f, target.l) {
                Some(tree) => Output::ok(
                    format!("{tree}\n"),
                    json!({ "read_once": true, "tree": tree.to_string() }),
                ),
                None => Output {
                    text: "NOT READ-ONCE\n".into(),
                    json: json!({ "read_once": false }),
                    positive: false,
                },
            })
        }
        Command::Hypercube { op } => run_hypercube(op),
        Command::Enumerate { n, l, no_constants } => {
            let cat = enumerate_readonce(n, l, !no_constants)?;
            let tables: Vec<String> = cat.tables().iter().map(ToString::to_string).collect();
            Ok(Output::ok(
                cat.to_text(),
                json!({ "n": n, "l": l, "include_constants": !no_constants, "count": cat.len(), "tables": tables }),
            ))
        }
        Command::MinTest { target, catalog } => {
            let f = target.table()?;
            let cat = catalog.load(f.num_vars(), target.l)?;
            Ok(test_set_output(&min_test(&f, &cat)?))
        }
        Command::Identify { test, l, catalog } => {
            let m = read_test(&test)?;
            let cat = catalog.load(m.num_vars(), l)?;
            Ok(match identify_from_test(&m, &cat) {
                Ok(g) => {
                    let tree = factor(&g, l).map(|t| t.to_string());
                    let mut text = format!("{g}\n");
                    if let Some(t) = &tree {
                        text.push_str(&format!("{t}\n"));
                    }
                    Output::ok(
                        text,
                        json!({ "identified": true, "tt": g.to_string(), "tree": tree }),
                    )
                }
                Err(Error::UniquenessViolation { count }) => Output {
                    text: format!("NOT IDENTIFIED: {count} consistent catalog members\n"),
                    json: json!({ "identified": false, "consistent": count }),
                    positive: false,
                },
                Err(e) => return Err(e),
            })
        }
        Command::Props {
            seed,
            suite,
            budget,
        } => {
            let budget = budget.map_or_else(Budget::default, Budget::uniform);
            let report = property_suites(seed, &budget, suite);
            let suites: Vec<Value> = report
                .suites
                .iter()
                .map(|s| {
                    let failures: Vec<Value> = s
                        .failures
                        .iter()
                        .map(|f| json!({ "case_seed": f.case_seed, "detail": f.detail }))
                        .collect();
                    json!({ "suite": s.suite.name(), "cases": s.cases, "passed": s.passed(), "failures": failures })
                })
                .collect();
            Ok(Output {
                text: report.to_string(),
                json: json!({ "seed": seed, "passed": report.passed(), "suites": suites }),
                positive: report.passed(),
            })
        }
    }
}

fn cube_json(f: &TruthTable, h: &Hypercube) -> Result<Value> {
    Ok(json!({ "cube": h.to_string(), "restriction": restriction_on(f, h)?.to_string() }))
}

fn run_hypercube(op: HypercubeOp) -> Result<Output> {
    match op {
        HypercubeOp::Find { target, vars } => {
            let f = target.table()?;
            let vars: VarSet = vars.parse()?;
            let cubes = find_hypercubes(&f, vars)?;
            let mut text = String::new();
            let mut items = Vec::new();
            for h in &cubes {
                let r = restriction_on(&f, h)?;
                text.push_str(&format!("{h}\t{r}\n"));
                items.push(cube_json(&f, h)?);
            }
            if cubes.is_empty() {
                text.push_str("none\n");
            }
            Ok(Output::ok(
                text,
                json!({ "w": vars.to_string(), "cubes": items }),
            ))
        }
        HypercubeOp::Expand { target, fix, q } => {
            let f = target.table()?;
            let h = Hypercube::new(PartialAssignment::parse(f.num_vars(), &fix)?);
            let e = expand_hypercube(&f, &h, q)?;
            let r = restriction_on(&f, &e)?;
            Ok(Output::ok(format!("{e}\t{r}\n"), cube_json(&f, &e)?))
        }
        HypercubeOp::Stable { target, vars } => {
            let f = target.table()?;
            let vars: VarSet = vars.parse()?;
            let violations = stability_violations(&f, vars)?;
            let mut text = format!(
                "STABLE: {}\n",
                if violations.is_empty() { "yes" } else { "no" }
            );
            let mut items = Vec::new();
            for v in &violations {
                text.push_str(&format!("w={}\t{}\n", v.w, v.cube));
                items.push(json!({ "w": v.w.to_string(), "cube": v.cube.to_string() }));
            }
            Ok(Output {
                text,
                json: json!({ "u": vars.to_string(), "stable": violations.is_empty(), "violations": items }),
                positive: violations.is_empty(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                print!("{}", out.text);
            }
            if out.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
