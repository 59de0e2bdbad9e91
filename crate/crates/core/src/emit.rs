//! Deterministic rendering of result rows as text, JSON, CSV or LaTeX.

use crate::error::{Error, Result};
use crate::grading::{GradedParabolic, RootModule};
use crate::kostant::{ComponentRecord, CurvatureComponent, PsiReport};
use crate::symsolve::scan::{LambdaCase, TwistorCase};
use crate::symsolve::FamilyRecord;
use serde::Serialize;
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" | "tex" => Ok(Format::Latex),
            _ => Err(Error::Schema(format!("unknown output format {s:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "latex",
        })
    }
}

/// A `p_+` module of a grading.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleRecord {
    pub algebra: String,
    pub xi: Vec<String>,
    pub height: i64,
    pub label: String,
    pub xi_degree: Vec<i64>,
    pub members: Vec<String>,
}

impl ModuleRecord {
    pub fn new(m: &RootModule, gp: &GradedParabolic) -> Self {
        let rs = gp.rs();
        ModuleRecord {
            algebra: rs.algebra_name(),
            xi: gp.xi_labels(),
            height: m.height,
            label: rs.root_string(&m.label, false),
            xi_degree: m.xi_degree.clone(),
            members: m.members.iter().map(|r| rs.root_string(r, false)).collect(),
        }
    }
}

/// `Ψ` of a set of components.
#[derive(Clone, Debug, Serialize)]
pub struct PsiRecord {
    pub algebra: String,
    pub xi: Vec<String>,
    pub components: Vec<String>,
    pub psi: Vec<String>,
}

impl PsiRecord {
    pub fn new(report: &PsiReport, components: &[CurvatureComponent], gp: &GradedParabolic) -> Self {
        let rs = gp.rs();
        PsiRecord {
            algebra: rs.algebra_name(),
            xi: gp.xi_labels(),
            components: components.iter().map(|c| c.label(rs)).collect(),
            psi: report.psi.iter().map(|&i| rs.label(i)).collect(),
        }
    }
}

/// Key/value lines of a report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportLine {
    pub key: String,
    pub value: String,
}

/// One row of any emitted table.
#[derive(Clone, Debug)]
pub enum Record {
    Module(ModuleRecord),
    Component(ComponentRecord),
    Psi(PsiRecord),
    Family(FamilyRecord),
    Lambda(LambdaCase),
    Twistor(TwistorCase),
    Report(ReportLine),
}

fn list(v: &[String]) -> String {
    v.join(", ")
}

fn braces(v: &[String]) -> String {
    format!("{{{}}}", v.join(","))
}

fn ints(v: &[i64]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

impl Record {
    pub fn schema(&self) -> &'static str {
        match self {
            Record::Module(_) => "module",
            Record::Component(_) => "component",
            Record::Psi(_) => "psi",
            Record::Family(_) => "family",
            Record::Lambda(_) => "lambda",
            Record::Twistor(_) => "twistor",
            Record::Report(_) => "report",
        }
    }

    fn columns(schema: &str) -> &'static [&'static str] {
        match schema {
            "module" => &["algebra", "xi", "height", "label", "xi_degree", "members"],
            "component" => &["algebra", "xi", "mu", "copy", "homogeneity", "i_mu"],
            "psi" => &["algebra", "xi", "components", "psi"],
            "family" => &["algebra", "xi", "components", "eigenvalues", "torsion", "m", "theta", "lambda"],
            "lambda" => &["algebra", "xi", "components", "indecomposable"],
            "twistor" => &["algebra", "xi", "components", "psi1", "offending"],
            _ => &["key", "value"],
        }
    }

    fn cells(&self) -> Vec<String> {
        match self {
            Record::Module(r) => vec![
                r.algebra.clone(),
                braces(&r.xi),
                r.height.to_string(),
                r.label.clone(),
                ints(&r.xi_degree),
                list(&r.members),
            ],
            Record::Component(r) => vec![
                r.algebra.clone(),
                braces(&r.xi),
                format!("(α{},α{})", r.mu[0], r.mu[1]),
                r.copy.to_string(),
                ints(&r.homogeneity),
                braces(&r.i_mu),
            ],
            Record::Psi(r) => vec![r.algebra.clone(), braces(&r.xi), list(&r.components), braces(&r.psi)],
            Record::Family(r) => vec![
                r.algebra.clone(),
                braces(&r.xi),
                list(&r.components),
                list(&r.eigenvalues),
                r.torsion.to_string(),
                list(&r.m),
                braces(&r.theta),
                braces(&r.lambda),
            ],
            Record::Lambda(r) => {
                vec![r.algebra.clone(), braces(&r.xi_labels), list(&r.component_labels), r.indecomposable.to_string()]
            }
            Record::Twistor(r) => vec![
                r.case.algebra.clone(),
                braces(&r.case.xi_labels),
                list(&r.case.component_labels),
                braces(&r.psi1_labels),
                r.offending.iter().map(|(l, h)| format!("{l}{}", ints(h))).collect::<Vec<_>>().join(", "),
            ],
            Record::Report(r) => vec![r.key.clone(), r.value.clone()],
        }
    }

    fn to_json(&self) -> Value {
        let v = match self {
            Record::Module(r) => serde_json::to_value(r),
            Record::Component(r) => serde_json::to_value(r),
            Record::Psi(r) => serde_json::to_value(r),
            Record::Family(r) => serde_json::to_value(r),
            Record::Lambda(r) => serde_json::to_value(r),
            Record::Twistor(r) => serde_json::to_value(r),
            Record::Report(r) => serde_json::to_value(r),
        };
        v.expect("records serialize")
    }

    /// `(algebra, Ξ, components)` for canonical ordering; reports keep their order.
    fn sort_key(&self) -> Option<(String, Vec<String>, Vec<String>)> {
        let (a, x, c): (&str, &[String], Vec<String>) = match self {
            Record::Module(r) => (&r.algebra, &r.xi, vec![format!("{:08}", r.height), r.label.clone()]),
            Record::Component(r) => (&r.algebra, &r.xi, r.mu.to_vec()),
            Record::Psi(r) => (&r.algebra, &r.xi, r.components.clone()),
            Record::Family(r) => (&r.algebra, &r.xi, r.components.clone()),
            Record::Lambda(r) => (&r.algebra, &r.xi_labels, r.component_labels.clone()),
            Record::Twistor(r) => {
                let mut c = r.case.component_labels.clone();
                c.extend(r.psi1_labels.iter().map(|p| format!("~{p}")));
                (&r.case.algebra, &r.case.xi_labels, c)
            }
            Record::Report(_) => return None,
        };
        Some((a.to_string(), x.to_vec(), c))
    }
}

/// Compares strings with digit runs ordered numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, String)> {
        let mut out: Vec<(bool, String)> = Vec::new();
        for ch in s.chars() {
            let d = ch.is_ascii_digit();
            match out.last_mut() {
                Some((kind, buf)) if *kind == d => buf.push(ch),
                _ => out.push((d, ch.to_string())),
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let o = match (x, y) {
            ((true, p), (true, q)) => p.len().cmp(&q.len()).then_with(|| p.cmp(q)),
            _ => x.1.cmp(&y.1),
        };
        if o != Ordering::Equal {
            return o;
        }
    }
    ca.len().cmp(&cb.len())
}

fn cmp_lists(a: &[String], b: &[String]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = natural_cmp(x, y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Rows of a single schema in canonical order.
#[derive(Clone, Debug)]
pub struct Table {
    pub schema: String,
    pub rows: Vec<Record>,
}

impl Table {
    /// Sorts canonically; the sort is stable, so families of one case keep their order.
    pub fn new(schema: &str, mut rows: Vec<Record>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.schema() != schema) {
            return Err(Error::Schema(format!("mixed-schema rows: {} in a {schema} table", r.schema())));
        }
        rows.sort_by(|a, b| match (a.sort_key(), b.sort_key()) {
            (Some((aa, ax, ac)), Some((ba, bx, bc))) => {
                natural_cmp(&aa, &ba).then_with(|| cmp_lists(&ax, &bx)).then_with(|| cmp_lists(&ac, &bc))
            }
            _ => Ordering::Equal,
        });
        Ok(Table { schema: schema.to_string(), rows })
    }

    pub fn columns(&self) -> &'static [&'static str] {
        Record::columns(&self.schema)
    }
}

/// `{"schema", "columns", "rows"}` form of a table.
pub fn table_value(table: &Table) -> Value {
    let rows: Vec<Value> = table.rows.iter().map(Record::to_json).collect();
    json!({ "schema": table.schema, "columns": table.columns(), "rows": rows })
}

pub fn emit_table(table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(text(table)),
        Format::Json => Ok(serde_json::to_string_pretty(&table_value(table))? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::Schema(format!("csv: {e}"));
            w.write_record(table.columns()).map_err(csv_err)?;
            for r in &table.rows {
                w.write_record(r.cells()).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Schema(format!("csv: {e}")))?;
            String::from_utf8(bytes).map_err(|e| Error::Schema(format!("csv: {e}")))
        }
        Format::Latex => Ok(latex(table)),
    }
}

fn text(table: &Table) -> String {
    if table.schema == "report" {
        return table.rows.iter().map(|r| {
            let c = r.cells();
            format!("{}: {}\n", c[0], c[1])
        }).collect();
    }
    let mut grid: Vec<Vec<String>> = vec![table.columns().iter().map(|c| c.to_string()).collect()];
    grid.extend(table.rows.iter().map(Record::cells));
    let widths: Vec<usize> =
        (0..grid[0].len()).map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &grid {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn tex_label(l: &str) -> String {
    let (base, copy) = match l.split_once('@') {
        Some((b, c)) => (b, Some(c)),
        None => (l, None),
    };
    let mut s = String::new();
    let mut chars = base.chars().peekable();
    while let Some(ch) = chars.next() {
        if ch == 'α' {
            let mut idx = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() || c == '\'' {
                    idx.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            s.push_str(&format!("\\alpha_{{{idx}}}"));
        } else {
            s.push(ch);
        }
    }
    match copy {
        Some(c) => format!("{s}^{{[{c}]}}"),
        None => s,
    }
}

fn tex_value(v: &str) -> String {
    let mut out = String::new();
    let mut chars = v.chars().peekable();
    let mut depth = 0usize;
    while let Some(ch) = chars.next() {
        match ch {
            '^' if chars.peek() == Some(&'(') => {
                chars.next();
                depth += 1;
                out.push_str("^{");
            }
            ')' if depth > 0 => {
                depth -= 1;
                out.push('}');
            }
            '±' => out.push_str("\\pm "),
            '·' => out.push_str("\\cdot "),
            'π' => out.push_str("\\pi "),
            'φ' => out.push_str("\\varphi"),
            '√' => out.push_str("\\sqrt"),
            _ => {
                out.push(ch);
                if ch.is_alphabetic() && chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    out.push('_');
                }
            }
        }
    }
    format!("${out}$")
}

fn tex_roots(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!("${}$", v.iter().map(|r| tex_root(r)).collect::<Vec<_>>().join(", "))
    }
}

fn tex_root(r: &str) -> String {
    r.replace('α', "\\alpha_").replace("\\alpha_'", "\\alpha'")
}

fn latex(table: &Table) -> String {
    if table.schema == "family" {
        return latex_families(table);
    }
    let cols = table.columns();
    let mut out = format!("\\begin{{tabular}}{{|{}|}}\n\\hline\n", vec!["c"; cols.len()].join("|"));
    out.push_str(&cols.iter().map(|c| c.replace('_', "\\_")).collect::<Vec<_>>().join(" & "));
    out.push_str(" \\\\\n\\hline\n");
    for r in &table.rows {
        let cells: Vec<String> = r.cells().iter().map(|c| c.replace('_', "\\_").replace('{', "\\{").replace('}', "\\}")).collect();
        out.push_str(&cells.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

/// Blocks of `g, μ / param., Ξ / I_μ, homog.` followed by one line per family.
fn latex_families(table: &Table) -> String {
    let width = table
        .rows
        .iter()
        .filter_map(|r| match r {
            Record::Family(f) => Some(f.eigenvalues.len()),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let mut out = format!("\\begin{{tabular}}{{|c|c||{}|c|}}\n\\hline\n", vec!["c"; width].join("|"));
    let js: Vec<String> = (1..=width).map(|k| format!("$j_{{i_{k}}}$")).collect();
    out.push_str(&format!("$\\mathfrak{{g}}$ & $\\mu$ & {} & $\\mathfrak{{m}}$ \\\\\n", js.join(" & ")));
    let blank = vec![""; width].join(" & ");
    out.push_str(&format!("param. & $\\Xi$ & {blank} & \\\\\n"));
    out.push_str(&format!("$I_\\mu$ & homog. & {blank} & \\\\\n\\hline\n\\hline\n"));
    let mut i = 0;
    let rows: Vec<&FamilyRecord> = table
        .rows
        .iter()
        .filter_map(|r| match r {
            Record::Family(f) => Some(f),
            _ => None,
        })
        .collect();
    while i < rows.len() {
        let head = rows[i];
        let mut j = i;
        while j < rows.len() && rows[j].algebra == head.algebra && rows[j].xi == head.xi && rows[j].components == head.components {
            j += 1;
        }
        let mu = head.components.iter().map(|c| tex_label(c)).collect::<Vec<_>>().join(", ");
        let left = [
            (tex_algebra(&head.algebra), format!("${mu}$")),
            (String::new(), format!("$\\{{{}\\}}$", head.xi.join(","))),
            (
                format!("${}$", head.i_mu.iter().map(|s| format!("\\{{{}\\}}", s.join(","))).collect::<Vec<_>>().join("; ")),
                format!("${}$", head.homogeneity.iter().map(|h| ints(h)).collect::<Vec<_>>().join("; ")),
            ),
        ];
        let lines = (j - i).max(left.len());
        for l in 0..lines {
            let (a, b) = left.get(l).cloned().unwrap_or_default();
            let (vals, m) = match rows.get(i + l).filter(|_| i + l < j) {
                Some(f) => {
                    let mut v: Vec<String> = f.eigenvalues.iter().map(|e| tex_value(e)).collect();
                    v.resize(width, String::new());
                    (v, tex_roots(&f.m))
                }
                None => (vec![String::new(); width], String::new()),
            };
            out.push_str(&format!("{a} & {b} & {} & {m} \\\\\n", vals.join(" & ")));
        }
        out.push_str("\\hline\n");
        i = j;
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn tex_algebra(a: &str) -> String {
    match a.split_once('(') {
        Some((name, rest)) => format!("$\\mathfrak{{{name}}}({}$", rest.replace('R', "\\mathbb{R}").replace('C', "\\mathbb{C}")),
        None => format!("${a}$"),
    }
}

/// Records from a report given as key/value pairs.
pub fn report(lines: &[(&str, String)]) -> Vec<Record> {
    lines.iter().map(|(k, v)| Record::Report(ReportLine { key: k.to_string(), value: v.clone() })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        assert_eq!(natural_cmp("sl(10,R)", "sl(9,R)"), Ordering::Greater);
        assert_eq!(natural_cmp("1'", "2"), Ordering::Less);
    }

    #[test]
    fn empty_tables_have_headers_only() {
        let t = Table::new("family", vec![]).unwrap();
        assert_eq!(emit_table(&t, Format::Csv).unwrap(), "algebra,xi,components,eigenvalues,torsion,m,theta,lambda\n");
        assert_eq!(emit_table(&t, Format::Text).unwrap().lines().count(), 1);
    }

    #[test]
    fn mixed_rows_are_rejected() {
        let rows = report(&[("a", "b".into())]);
        assert!(Table::new("family", rows).is_err());
    }
}
