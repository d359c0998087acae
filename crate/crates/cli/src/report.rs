//! The record every command produces. Human output is rendered from it, and
//! `--json` serializes it as is. Integers are written as decimal strings so
//! that arbitrarily large entries survive a round trip; a matrix is a list of
//! rows, each a whitespace-separated line as in the matrix file format.

use std::fmt::Write as _;

use coxform::forms::{FormAnalysis, Witness};
use coxform::IntMatrix;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

pub type Matrix = Vec<String>;

pub fn matrix(a: &IntMatrix) -> Matrix {
    a.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflections: Option<ReflectionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSection>,
    #[serde(default)]
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, input: Vec<String>) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            input,
            form: None,
            poset: None,
            quiver: None,
            reflections: None,
            product: None,
            scan: None,
            checks: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            limit_ms: None,
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Runtime budget; measured times are left out to keep output reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub vector: String,
    pub value: String,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            vector: w.vector_text(),
            value: w.value.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cyclotomic {
    pub index: u64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSection {
    pub size: usize,
    pub euler_form: Matrix,
    pub coxeter: Matrix,
    pub charpoly: String,
    pub charpoly_symmetrized: String,
    pub cyclotomic_factors: Vec<Cyclotomic>,
    /// Non-cyclotomic part of the characteristic polynomial.
    pub residual: String,
    pub periodic: bool,
    pub period: Option<u64>,
    pub weakly_periodic: bool,
    pub classification: String,
    pub signature: Signature,
    pub witness: Option<WitnessJson>,
    pub radical_dimension: usize,
    pub spectrum_in_circle_or_real: bool,
}

impl FormSection {
    pub fn new(c: &IntMatrix, a: &FormAnalysis) -> Self {
        FormSection {
            size: c.rows(),
            euler_form: matrix(c),
            coxeter: matrix(&a.coxeter),
            charpoly: a.charpoly_coxeter.to_string(),
            charpoly_symmetrized: a.charpoly_symmetrized.to_string(),
            cyclotomic_factors: a
                .cyclotomic
                .indices
                .iter()
                .map(|(&index, &multiplicity)| Cyclotomic {
                    index,
                    multiplicity,
                })
                .collect(),
            residual: a.cyclotomic.residual.to_string(),
            periodic: a.periodic,
            period: a.period,
            weakly_periodic: a.weakly_periodic,
            classification: a.classification.to_string(),
            signature: Signature {
                plus: a.signature.n_plus,
                zero: a.signature.n_zero,
                minus: a.signature.n_minus,
            },
            witness: a.witness_negative.as_ref().map(WitnessJson::from),
            radical_dimension: a.radical_basis.len(),
            spectrum_in_circle_or_real: a.spectrum_in_circle_or_real,
        }
    }

    /// One line such as `periodic, period 6; indefinite; witness value -1`.
    pub fn summary(&self) -> String {
        let mut s = match (self.periodic, self.period) {
            (true, Some(p)) => format!("periodic, period {p}"),
            _ if self.weakly_periodic => "weakly periodic, not periodic".to_string(),
            _ => "not weakly periodic".to_string(),
        };
        write!(s, "; {}", self.classification).unwrap();
        if let Some(w) = &self.witness {
            write!(s, "; witness value {}", w.value).unwrap();
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSection {
    pub elements: Vec<String>,
    pub hasse: Vec<(String, String)>,
    pub mobius: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSection {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    pub graph_type: String,
    pub positive: bool,
    pub non_negative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionCase {
    pub matrix: Matrix,
    /// One-line notation, 1-based.
    pub permutation: Vec<usize>,
    pub product: Matrix,
    pub a_plus: Matrix,
    pub a_minus: Matrix,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionSection {
    pub general: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<ReflectionCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomTrials>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomTrials {
    pub trials: usize,
    pub size: usize,
    pub seed: u64,
    pub held: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSection {
    pub left_size: usize,
    pub right_size: usize,
    pub size: usize,
    pub left_period: Option<u64>,
    pub right_period: Option<u64>,
    pub period: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub size: usize,
    pub posets: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSection {
    pub max_size: usize,
    pub rows: Vec<ScanRow>,
    /// Text of every poset whose spectrum leaves the unit circle and the real line.
    pub violations: Vec<String>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn write_matrix(out: &mut String, label: &str, m: &Matrix) {
    let width = m
        .iter()
        .flat_map(|r| r.split_whitespace())
        .map(str::len)
        .max()
        .unwrap_or(1);
    writeln!(out, "{label}:").unwrap();
    for row in m {
        let cells: Vec<String> = row
            .split_whitespace()
            .map(|x| format!("{x:>width$}"))
            .collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
}

fn cyclotomic_text(factors: &[Cyclotomic], residual: &str) -> String {
    let mut parts: Vec<String> = factors
        .iter()
        .map(|c| match c.multiplicity {
            1 => format!("Phi_{}", c.index),
            k => format!("Phi_{}^{k}", c.index),
        })
        .collect();
    if residual != "1" {
        parts.push(format!("({residual})"));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Plain-text rendering of a report.
pub fn render(r: &Report) -> String {
    let mut out = String::new();
    if !r.input.is_empty() {
        writeln!(out, "input: {}", r.input.join(", ")).unwrap();
    }
    if let Some(p) = &r.poset {
        writeln!(out, "elements: {}", p.elements.join(" ")).unwrap();
        let covers: Vec<String> = p.hasse.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        writeln!(out, "hasse covers ({}): {}", covers.len(), covers.join(" ")).unwrap();
        write_matrix(&mut out, "mobius", &p.mobius);
    }
    if let Some(q) = &r.quiver {
        writeln!(out, "vertices: {}", q.vertices.join(" ")).unwrap();
        let arrows: Vec<String> = q.arrows.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        writeln!(out, "arrows: {}", arrows.join(" ")).unwrap();
        writeln!(out, "graph type: {}", q.graph_type).unwrap();
    }
    if let Some(f) = &r.form {
        writeln!(out, "size: {}", f.size).unwrap();
        write_matrix(&mut out, "euler form", &f.euler_form);
        write_matrix(&mut out, "coxeter matrix", &f.coxeter);
        writeln!(out, "charpoly: {}", f.charpoly).unwrap();
        writeln!(
            out,
            "cyclotomic factors: {}",
            cyclotomic_text(&f.cyclotomic_factors, &f.residual)
        )
        .unwrap();
        writeln!(out, "symmetrized charpoly: {}", f.charpoly_symmetrized).unwrap();
        match f.period {
            Some(p) => writeln!(out, "periodic: yes, period {p}").unwrap(),
            None => writeln!(out, "periodic: no").unwrap(),
        }
        writeln!(
            out,
            "weakly periodic: {}",
            if f.weakly_periodic { "yes" } else { "no" }
        )
        .unwrap();
        let s = &f.signature;
        writeln!(
            out,
            "classification: {} (signature +{} 0:{} -{})",
            f.classification, s.plus, s.zero, s.minus
        )
        .unwrap();
        if let Some(w) = &f.witness {
            writeln!(out, "witness: {} (value {})", w.vector, w.value).unwrap();
        }
        writeln!(out, "radical dimension: {}", f.radical_dimension).unwrap();
        writeln!(
            out,
            "spectrum in S^1 ∪ R: {}",
            yes_no(f.spectrum_in_circle_or_real)
        )
        .unwrap();
        writeln!(out, "summary: {}", f.summary()).unwrap();
    }
    if let Some(x) = &r.reflections {
        if let Some(c) = &x.case {
            let perm: Vec<String> = c.permutation.iter().map(ToString::to_string).collect();
            writeln!(out, "permutation: {}", perm.join(" ")).unwrap();
            write_matrix(&mut out, "matrix", &c.matrix);
            write_matrix(&mut out, "product of reflections", &c.product);
            write_matrix(&mut out, "A_+", &c.a_plus);
            write_matrix(&mut out, "A_-", &c.a_minus);
            writeln!(
                out,
                "factorization identity: {}",
                if c.holds { "HOLDS" } else { "FAILS" }
            )
            .unwrap();
        }
        if let Some(t) = &x.random {
            writeln!(
                out,
                "random trials: {} of {} hold ({}x{}, seed {})",
                t.held, t.trials, t.size, t.size, t.seed
            )
            .unwrap();
        }
    }
    if let Some(p) = &r.product {
        writeln!(
            out,
            "product: {} x {} = {} elements",
            p.left_size, p.right_size, p.size
        )
        .unwrap();
        let period = |x: Option<u64>| x.map_or("none".to_string(), |p| p.to_string());
        writeln!(
            out,
            "factor periods: {}, {}",
            period(p.left_period),
            period(p.right_period)
        )
        .unwrap();
        match p.period {
            Some(k) => writeln!(out, "period {k}").unwrap(),
            None => writeln!(out, "not periodic").unwrap(),
        }
        match &p.output {
            Some(path) => writeln!(out, "written to {path}").unwrap(),
            None => out.push_str(&p.text),
        }
    }
    if let Some(s) = &r.scan {
        for row in &s.rows {
            writeln!(
                out,
                "n = {}: {} posets, {} violations",
                row.size, row.posets, row.violations
            )
            .unwrap();
        }
        for v in &s.violations {
            writeln!(out, "violation:\n{v}").unwrap();
        }
    }
    for c in &r.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        writeln!(out, "[{mark}] {}: {}", c.name, c.detail).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use coxform::forms::analyze;
    use coxform::posets::{euler_form_poset, Poset};

    #[test]
    fn json_round_trip() {
        let x = Poset::parse("a < b < c\na < d\n").unwrap();
        let c = euler_form_poset(&x);
        let mut r = Report::new("analyze-poset", vec!["x.poset".into()]);
        r.form = Some(FormSection::new(&c, &analyze(&c).unwrap()));
        r.check("one", true, "fine");
        r.scan = Some(ScanSection {
            max_size: 1,
            rows: vec![ScanRow {
                size: 1,
                posets: 1,
                violations: 0,
            }],
            violations: vec![],
        });
        let text = serde_json::to_string_pretty(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
        assert_eq!(render(&back), render(&r));
    }

    #[test]
    fn large_entries_survive() {
        let big = "123456789012345678901234567890";
        let a = IntMatrix::parse(&format!("1 {big}\n0 1\n")).unwrap();
        assert_eq!(matrix(&a), vec![format!("1 {big}"), "0 1".to_string()]);
    }

    #[test]
    fn summary_line() {
        let c = IntMatrix::from([[1, -4], [0, 1]]);
        let f = FormSection::new(&c, &analyze(&c).unwrap());
        assert_eq!(
            f.summary(),
            "not weakly periodic; indefinite; witness value -2"
        );
        let id = IntMatrix::identity(2);
        let f = FormSection::new(&id, &analyze(&id).unwrap());
        assert_eq!(f.summary(), "periodic, period 2; positive");
    }
}
