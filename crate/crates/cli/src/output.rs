//! Report types and their three renderings. JSON and TSV carry the same
//! content; the human form is a readable summary of it.

use serde::Serialize;

use crate::query::Format;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateOut {
    /// Element of the A-set.
    pub element: String,
    /// Weyl element carrying the A-set into the criterion set.
    pub translate: String,
    /// One-based positions `i` of the chain `beta_{i_1}, beta_{i_2}, ...`.
    pub positions: Vec<usize>,
    pub betas: Vec<String>,
}

impl CertificateOut {
    fn tsv(&self) -> String {
        format!(
            "{} via {} at [{}] betas [{}]",
            self.element,
            self.translate,
            join(
                &self
                    .positions
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>(),
                ","
            ),
            join(&self.betas, " ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParametersOut {
    pub kind: &'static str,
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub w1: String,
    pub mu1: String,
    pub w2: String,
    pub mu2: String,
    pub lattice_mismatch: bool,
}

impl ParametersOut {
    fn tsv(&self) -> String {
        let mut parts = vec![
            format!("kind={}", self.kind),
            format!("system={}", self.system),
        ];
        if let Some(l) = &self.lambda {
            parts.push(format!("lambda={l}"));
        }
        parts.extend([
            format!("w1={}", self.w1),
            format!("mu1={}", self.mu1),
            format!("w2={}", self.w2),
            format!("mu2={}", self.mu2),
            format!("lattice_mismatch={}", self.lattice_mismatch),
        ]);
        join(&parts, ";")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCertificates {
    pub left: CertificateOut,
    pub right: CertificateOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictOut {
    pub hom_nonzero: bool,
    pub ext_all_vanish: bool,
    pub witness: Option<String>,
    pub left_set: Vec<String>,
    pub right_set: Vec<String>,
    pub parameters: ParametersOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<WitnessCertificates>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ASetOut {
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub word: String,
    pub mu: String,
    pub letters: Vec<String>,
    pub betas: Vec<String>,
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<CertificateOut>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralOut {
    pub system: String,
    pub lambda: String,
    pub dominant: bool,
    pub positive_roots: Vec<String>,
    pub simple_roots: Vec<String>,
    /// Longest element of the integral Weyl group as a word in `W`.
    pub longest: String,
    /// The same element as a word in the integral simple reflections.
    pub longest_integral_word: String,
    pub order: usize,
    pub stabilizer_generators: Vec<String>,
    pub stabilizer_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowOut {
    pub w1: String,
    pub mu1: String,
    pub w2: String,
    pub mu2: String,
    pub hom_nonzero: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableOut {
    pub system: String,
    pub elements: Vec<String>,
    pub weights: Vec<String>,
    pub row_count: usize,
    pub rows: Vec<RowOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportOut {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfcheckOut {
    pub passed: bool,
    pub reports: Vec<ReportOut>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Output {
    Verdict(VerdictOut),
    ASet(ASetOut),
    Integral(IntegralOut),
    Table(TableOut),
    Selfcheck(SelfcheckOut),
}

fn join(xs: &[String], sep: &str) -> String {
    xs.join(sep)
}

fn opt(x: &Option<String>) -> &str {
    x.as_deref().unwrap_or("-")
}

fn braces(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        let mut s = match format {
            Format::Json => self.json(),
            Format::Tsv => self.tsv(),
            Format::Human => self.human(),
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }

    fn json(&self) -> String {
        let r = match self {
            Output::Verdict(v) => serde_json::to_string_pretty(v),
            Output::ASet(v) => serde_json::to_string_pretty(v),
            Output::Integral(v) => serde_json::to_string_pretty(v),
            Output::Table(v) => serde_json::to_string_pretty(v),
            Output::Selfcheck(v) => serde_json::to_string_pretty(v),
        };
        r.expect("report types serialize")
    }

    fn tsv(&self) -> String {
        let mut lines: Vec<String> = Vec::new();
        match self {
            Output::Verdict(v) => {
                let mut head =
                    "hom_nonzero\text_all_vanish\twitness\tleft_set\tright_set\tparameters"
                        .to_string();
                let mut row = format!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    v.hom_nonzero,
                    v.ext_all_vanish,
                    opt(&v.witness),
                    join(&v.left_set, ";"),
                    join(&v.right_set, ";"),
                    v.parameters.tsv()
                );
                if let Some(c) = &v.certificates {
                    head.push_str("\tleft_certificate\tright_certificate");
                    row.push_str(&format!("\t{}\t{}", c.left.tsv(), c.right.tsv()));
                }
                lines.extend([head, row]);
            }
            Output::ASet(a) => {
                lines.push(format!(
                    "# system={} lambda={} word={} mu={} letters={} betas={}",
                    a.system,
                    opt(&a.lambda),
                    a.word,
                    a.mu,
                    join(&a.letters, " "),
                    join(&a.betas, " ")
                ));
                match &a.certificates {
                    Some(cs) => {
                        lines.push("element\tpositions\tbetas".into());
                        for c in cs {
                            let pos: Vec<String> =
                                c.positions.iter().map(|p| p.to_string()).collect();
                            lines.push(format!(
                                "{}\t{}\t{}",
                                c.element,
                                join(&pos, ","),
                                join(&c.betas, " ")
                            ));
                        }
                    }
                    None => {
                        lines.push("element".into());
                        lines.extend(a.elements.iter().cloned());
                    }
                }
            }
            Output::Integral(i) => {
                lines.push("field\tvalue".into());
                lines.extend([
                    format!("system\t{}", i.system),
                    format!("lambda\t{}", i.lambda),
                    format!("dominant\t{}", i.dominant),
                    format!("positive_roots\t{}", join(&i.positive_roots, " ")),
                    format!("simple_roots\t{}", join(&i.simple_roots, " ")),
                    format!("longest\t{}", i.longest),
                    format!("longest_integral_word\t{}", i.longest_integral_word),
                    format!("order\t{}", i.order),
                    format!(
                        "stabilizer_generators\t{}",
                        join(&i.stabilizer_generators, " ")
                    ),
                    format!("stabilizer_order\t{}", i.stabilizer_order),
                ]);
            }
            Output::Table(t) => {
                lines.push("w1\tmu1\tw2\tmu2\thom_nonzero\twitness".into());
                for r in &t.rows {
                    lines.push(format!(
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        r.w1,
                        r.mu1,
                        r.w2,
                        r.mu2,
                        r.hom_nonzero,
                        opt(&r.witness)
                    ));
                }
            }
            Output::Selfcheck(s) => {
                lines.push("name\tpassed\tchecked\tfailures\tfirst_counterexample".into());
                for r in &s.reports {
                    lines.push(format!(
                        "{}\t{}\t{}\t{}\t{}",
                        r.name,
                        r.passed,
                        r.checked,
                        r.failures,
                        r.counterexamples.first().map(String::as_str).unwrap_or("-")
                    ));
                }
            }
        }
        lines.join("\n")
    }

    fn human(&self) -> String {
        let mut lines: Vec<String> = Vec::new();
        match self {
            Output::Verdict(v) => {
                let p = &v.parameters;
                let (src, dst) = match &p.lambda {
                    None => (
                        format!("T_{{{}}} M{}", p.w1, p.mu1),
                        format!("T_{{{}}} M{}", p.w2, p.mu2),
                    ),
                    Some(l) => (
                        format!("L(M({} {l}), dM{})", p.w1, p.mu1),
                        format!("L(M({} {l}), dM{})", p.w2, p.mu2),
                    ),
                };
                let rel = if v.hom_nonzero { "!=" } else { "=" };
                lines.push(format!("{}: Hom({src}, {dst}) {rel} 0", p.system));
                lines.push(format!(
                    "  all Ext groups vanish: {}",
                    if v.ext_all_vanish { "yes" } else { "no" }
                ));
                lines.push(format!("  witness:   {}", opt(&v.witness)));
                lines.push(format!("  left set:  {}", braces(&v.left_set)));
                lines.push(format!("  right set: {}", braces(&v.right_set)));
                if p.lattice_mismatch {
                    lines.push("  note: mu1 - mu2 is not in the weight lattice".into());
                }
                if let Some(c) = &v.certificates {
                    lines.push(format!("  left certificate:  {}", c.left.tsv()));
                    lines.push(format!("  right certificate: {}", c.right.tsv()));
                }
            }
            Output::ASet(a) => {
                let ctx = a
                    .lambda
                    .as_ref()
                    .map(|l| format!(" over Pi_{l}"))
                    .unwrap_or_default();
                lines.push(format!(
                    "{}: A_({}){}{} = {}",
                    a.system,
                    a.word,
                    ctx,
                    a.mu,
                    braces(&a.elements)
                ));
                lines.push(format!("  betas: {}", join(&a.betas, " ")));
                if let Some(cs) = &a.certificates {
                    for c in cs {
                        let pos: Vec<String> = c.positions.iter().map(|p| p.to_string()).collect();
                        lines.push(format!(
                            "  {}  <- positions [{}]",
                            c.element,
                            join(&pos, ",")
                        ));
                    }
                }
            }
            Output::Integral(i) => {
                lines.push(format!(
                    "{}: lambda = {}{}",
                    i.system,
                    i.lambda,
                    if i.dominant { " (dominant)" } else { "" }
                ));
                lines.push(format!(
                    "  integral positive roots: {}",
                    join(&i.positive_roots, " ")
                ));
                lines.push(format!(
                    "  integral simple roots:   {}",
                    join(&i.simple_roots, " ")
                ));
                lines.push(format!(
                    "  w_lambda = {} (integral word {})",
                    i.longest, i.longest_integral_word
                ));
                lines.push(format!("  |W_lambda| = {}", i.order));
                lines.push(format!(
                    "  stabilizer: order {}, generated by {}",
                    i.stabilizer_order,
                    if i.stabilizer_generators.is_empty() {
                        "nothing".to_string()
                    } else {
                        join(&i.stabilizer_generators, " ")
                    }
                ));
            }
            Output::Table(t) => {
                lines.push(format!("{}: {} rows", t.system, t.row_count));
                for r in &t.rows {
                    lines.push(format!(
                        "  {:5}  T_{{{}}} M{} -> T_{{{}}} M{}",
                        r.hom_nonzero, r.w1, r.mu1, r.w2, r.mu2
                    ));
                }
            }
            Output::Selfcheck(s) => {
                for r in &s.reports {
                    let mut line = format!(
                        "{} {}: {} checked, {} failed",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.checked,
                        r.failures
                    );
                    if let Some(c) = r.counterexamples.first() {
                        line.push_str(&format!("; first: {c}"));
                    }
                    lines.push(line);
                }
                lines.push(if s.passed {
                    "all sweeps passed".into()
                } else {
                    "counterexamples found".into()
                });
            }
        }
        lines.join("\n")
    }
}
