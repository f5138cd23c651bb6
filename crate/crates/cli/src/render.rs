//! Output for each subcommand in table, JSON, and CSV form. Machine formats
//! carry no timestamps and use stable ordering.

use std::fmt::Write;

use serde_json::{json, Value};

use degroot::census::DualImageReport;
use degroot::laws::LawReport;
use degroot::symbolic::{dual_rule, symbolic_dual, DUAL_RULES};
use degroot::{CensusRow, Classification, FiniteTopology, SymbolicTopology};

use crate::config::OutputFormat;

/// Anything that can stand in a dual sequence on the command line.
pub trait Stage: Clone + PartialEq {
    fn to_value(&self) -> Value;
    fn to_text(&self) -> String;
}

impl Stage for FiniteTopology {
    fn to_value(&self) -> Value {
        serde_json::to_value(self.to_json()).expect("topology serializes")
    }

    fn to_text(&self) -> String {
        self.to_json_string()
    }
}

impl Stage for SymbolicTopology {
    fn to_value(&self) -> Value {
        Value::String(self.to_string())
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

pub fn dual<S: Stage>(fmt: OutputFormat, power: usize, result: &S, c: &Classification<S>) -> String {
    let stages = c.sequence.stages();
    match fmt {
        OutputFormat::Json => pretty(&json!({
            "power": power,
            "result": result.to_value(),
            "sequence": stages.iter().map(Stage::to_value).collect::<Vec<_>>(),
            "distinct_count": c.sequence.distinct_count(),
        })),
        OutputFormat::Csv => {
            let mut out = String::from("stage,space\n");
            for (k, s) in stages.iter().enumerate() {
                writeln!(out, "{k},{}", csv_quote(&s.to_text())).unwrap();
            }
            writeln!(out, "result,{}", csv_quote(&result.to_text())).unwrap();
            out.trim_end().to_string()
        }
        OutputFormat::Table => {
            let mut out = format!("{}\n", result.to_text());
            let names = ["τ", "τ^d", "τ^dd", "τ^ddd", "τ^dddd"];
            for (name, s) in names.iter().zip(stages) {
                writeln!(out, "  {name:<7} {}", s.to_text()).unwrap();
            }
            write!(out, "distinct: {}", c.sequence.distinct_count()).unwrap();
            out
        }
    }
}

pub fn classification<S>(fmt: OutputFormat, c: &Classification<S>) -> String {
    let f = c.flags;
    match fmt {
        OutputFormat::Json => pretty(&serde_json::to_value(c.record()).expect("record serializes")),
        OutputFormat::Csv => format!(
            "n_generative,sequence_distinct,g1,g2a,g2b,g3a,g3b,g3c,g4\n{},{},{},{},{},{},{},{},{}",
            c.n_generative, c.n_generative, f.g1, f.g2a, f.g2b, f.g3a, f.g3b, f.g3c, f.g4
        ),
        OutputFormat::Table => format!("{}\nflags: {}", c.summary(), f.pattern()),
    }
}

pub fn census(fmt: OutputFormat, row: &CensusRow) -> String {
    match fmt {
        OutputFormat::Json => pretty(&serde_json::to_value(row).expect("row serializes")),
        OutputFormat::Csv => format!("{}\n{}", CensusRow::CSV_HEADER, row.csv_line()),
        OutputFormat::Table => {
            let mut out = String::new();
            writeln!(out, "n = {}", row.n).unwrap();
            writeln!(out, "  labeled     {}", row.labeled_count).unwrap();
            writeln!(
                out,
                "  extension   {} ({})",
                row.extension_count,
                if row.cross_validated() { "agrees" } else { "DISAGREES" }
            )
            .unwrap();
            writeln!(out, "  homeo       {}", row.homeo_count).unwrap();
            writeln!(out, "  partition   {}", row.partition_count).unwrap();
            writeln!(out, "  G2a only    {}", row.g2a_only).unwrap();
            writeln!(out, "  law checks  {} passed", row.law_checks).unwrap();
            out.push_str("  classes:");
            for (k, v) in &row.class_counts {
                write!(out, "\n    {k:<28} {v}").unwrap();
            }
            out
        }
    }
}

pub fn laws(fmt: OutputFormat, report: &LawReport) -> String {
    match fmt {
        OutputFormat::Json => pretty(&serde_json::to_value(report).expect("report serializes")),
        OutputFormat::Csv => {
            let mut out = String::from("law,finite,symbolic,failures\n");
            for r in &report.rows {
                writeln!(out, "{},{},{},{}", r.law, r.finite_instances, r.symbolic_instances, r.failures)
                    .unwrap();
            }
            out.trim_end().to_string()
        }
        OutputFormat::Table => {
            let mut out = String::new();
            for r in &report.rows {
                write!(
                    out,
                    "{} {:<34} finite {:>6}  symbolic {:>3}",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.law,
                    r.finite_instances,
                    r.symbolic_instances
                )
                .unwrap();
                if let Some(ce) = &r.first_counterexample {
                    write!(out, "  first counterexample {ce}").unwrap();
                }
                out.push('\n');
            }
            write!(
                out,
                "{} (n = {})",
                if report.all_passed() { "all laws pass" } else { "LAW FAILURES" },
                report.n
            )
            .unwrap();
            out
        }
    }
}

pub fn enumerate(fmt: OutputFormat, spaces: &[FiniteTopology]) -> String {
    match fmt {
        OutputFormat::Json => pretty(&Value::Array(spaces.iter().map(Stage::to_value).collect())),
        OutputFormat::Csv => {
            let mut out = String::from("index,topology\n");
            for (i, t) in spaces.iter().enumerate() {
                writeln!(out, "{i},{}", csv_quote(&t.to_json_string())).unwrap();
            }
            out.trim_end().to_string()
        }
        OutputFormat::Table => spaces
            .iter()
            .map(|t| t.to_json_string())
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

pub struct CatalogEntry {
    pub space: SymbolicTopology,
    pub classification: Classification<SymbolicTopology>,
}

pub fn catalog(fmt: OutputFormat, entries: &[CatalogEntry]) -> String {
    match fmt {
        OutputFormat::Json => pretty(&Value::Array(
            entries
                .iter()
                .map(|e| {
                    json!({
                        "space": e.space.to_string(),
                        "dual": symbolic_dual(e.space).expect("catalog has rules").to_string(),
                        "n_generative": e.classification.n_generative,
                        "flags": e.classification.flags,
                        "rule_derivation": dual_rule(e.space).expect("catalog has rules").derivation,
                    })
                })
                .collect(),
        )),
        OutputFormat::Csv => {
            let mut out = String::from("space,dual,n_generative,classes\n");
            for e in entries {
                writeln!(
                    out,
                    "{},{},{},{}",
                    e.space,
                    symbolic_dual(e.space).expect("catalog has rules"),
                    e.classification.n_generative,
                    e.classification.flags.pattern()
                )
                .unwrap();
            }
            out.trim_end().to_string()
        }
        OutputFormat::Table => {
            let mut out = String::new();
            for e in entries {
                writeln!(
                    out,
                    "{:<38} d ↦ {:<24} {}",
                    e.space.to_string(),
                    symbolic_dual(e.space).expect("catalog has rules").to_string(),
                    e.classification.summary()
                )
                .unwrap();
            }
            out.push_str("\ndual rules:\n");
            for r in &DUAL_RULES {
                writeln!(out, "  {} on {} carriers ↦ {}", r.from.token(), r.carriers, r.to.token()).unwrap();
                writeln!(out, "    {}", r.derivation.split_whitespace().collect::<Vec<_>>().join(" ")).unwrap();
            }
            out.push_str(
                "\nno catalog member lies in G2b outside G1; such a witness needs a space \
                 outside this catalog.",
            );
            out
        }
    }
}

pub fn dual_image(fmt: OutputFormat, r: &DualImageReport) -> String {
    match fmt {
        OutputFormat::Json => pretty(&serde_json::to_value(r).expect("report serializes")),
        OutputFormat::Csv => {
            let mut out = String::from("n,n_generative,spaces,arising_as_duals\n");
            for (k, (total, dual)) in &r.by_class {
                writeln!(out, "{},{k},{total},{dual}", r.n).unwrap();
            }
            out.trim_end().to_string()
        }
        OutputFormat::Table => {
            let mut out = format!(
                "n = {}: {} of {} labeled spaces arise as duals ({} of {} up to homeomorphism)",
                r.n, r.labeled_in_image, r.labeled_count, r.homeo_in_image, r.homeo_count
            );
            for (k, (total, dual)) in &r.by_class {
                write!(out, "\n  {k}-generative: {dual} of {total} arise as duals").unwrap();
            }
            out
        }
    }
}
