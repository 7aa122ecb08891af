//! The subcommands. Each returns a filled [`Report`] and an exit status, or
//! a [`CliError`] that maps to one.

use std::fmt;
use std::path::Path;

use fsig_core::cone::{embed, FullEmbedding};
use fsig_core::exact::{approximate, format_rational, Integer, Rational};
use fsig_core::families::{
    segre_dimension, segre_generators, segre_signature, veronese_generators, veronese_signature,
};
use fsig_core::frobenius::{aq_table, brute_force_aq_with_cap, hk_difference_identity, socle_witness};
use fsig_core::semigroup::{check_normal, NormalityVerdict, SemigroupPresentation};
use fsig_core::signature::signature_of_embedding;
use fsig_core::Error;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::document::InputDocument;
use crate::report::{self, fmt_rat_vec, fmt_vec, Report, Table};

/// Digits shown by `--approx`.
const APPROX_DIGITS: usize = 12;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input document.
    Parse(String),
    /// Input violates a mathematical precondition.
    Precondition(String),
    /// An enumeration cap was hit.
    Budget(String),
    /// Output could not be written.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "bad input document: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::Budget(m) => write!(f, "budget exceeded: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyPresentation | Error::InvalidPresentation(_) => CliError::Parse(e.to_string()),
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            Error::DegenerateCone => {
                CliError::Precondition(format!("{e} (the semigroup must be positive: its cone contains no line)"))
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub status: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, status: 0 }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub approx: bool,
    /// Box bound for the normality check; defaults to the largest
    /// generator entry.
    pub normal_bound: Option<Integer>,
}

fn load(path: &Path) -> Result<(InputDocument, SemigroupPresentation), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let doc = InputDocument::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let p = doc.presentation().map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok((doc, p))
}

fn default_bound(p: &SemigroupPresentation) -> Integer {
    p.generators().iter().flatten().max().cloned().unwrap_or_else(Integer::one).max(Integer::one())
}

fn rational_line(report: &mut Report, opts: &Options, key: &str, r: &Rational) {
    report.line(key, format_rational(r));
    if opts.approx {
        report.line(format!("{key} (approx.)"), approximate(r, APPROX_DIGITS));
    }
}

fn normality_diagnostic(emb: &FullEmbedding, bound: &Integer) -> (NormalityVerdict, Value) {
    let verdict = check_normal(emb.context(), emb.functionals(), bound);
    let value = match &verdict {
        NormalityVerdict::Normal { bound } => json!({"verdict": "normal", "bound": report::int(bound)}),
        NormalityVerdict::CounterexampleFound(v) => json!({
            "verdict": "counterexample",
            "bound": report::int(bound),
            "counterexample": report::int_vec(v),
        }),
    };
    (verdict, value)
}

fn not_normal(v: &[Integer]) -> CliError {
    CliError::Precondition(format!(
        "the semigroup is not normal (it must equal gp(M) ∩ cone(M)): {} lies in the group and the cone but is not a sum of generators",
        fmt_vec(v)
    ))
}

/// Refuse non-normal input: the signature formulas only hold for normal
/// semigroups. The check is exhaustive within a box only.
fn gate(report: &mut Report, emb: &FullEmbedding, opts: &Options) -> Result<(), CliError> {
    let bound = opts.normal_bound.clone().unwrap_or_else(|| default_bound(emb.context().presentation()));
    let (verdict, value) = normality_diagnostic(emb, &bound);
    if let NormalityVerdict::CounterexampleFound(v) = verdict {
        return Err(not_normal(&v));
    }
    report.json("diagnostics", json!({ "normality": value }));
    report.line("normality", format!("no counterexample with entries <= {bound}"));
    Ok(())
}

fn embedding_json(report: &mut Report, emb: &FullEmbedding) {
    let facets: Vec<Value> = emb
        .functionals()
        .iter()
        .map(|f| {
            json!({
                "coefficients": report::rat_vec(f.coefficients()),
                "values_on_generators": report::int_vec(f.values_on_generators()),
            })
        })
        .collect();
    report.json("rank", Value::from(emb.rank()));
    report.json("lattice_basis", report::int_matrix(&emb.context().lattice().row_vecs()));
    report.json("facets", Value::Array(facets));
    report.json("embedding_matrix", report::int_matrix(&emb.matrix_t().row_vecs()));
    report.json("image_generators", report::int_matrix(emb.image_generators()));
}

pub fn signature(path: &Path, opts: &Options) -> Result<Outcome, CliError> {
    let (doc, p) = load(path)?;
    let mut report = Report::new("signature");
    report.echo_input(&doc);
    let emb = embed(&p)?;
    report.line("rank", emb.rank().to_string());
    report.line("facets", emb.facet_count().to_string());
    gate(&mut report, &emb, opts)?;
    embedding_json(&mut report, &emb);
    let result = signature_of_embedding(emb)?;
    report.json("signature", report::rat(&result.value));
    report.json(
        "polytope_vertices",
        Value::Array(result.polytope.vertices().iter().map(|v| report::rat_vec(v)).collect()),
    );
    rational_line(&mut report, opts, "signature", &result.value);
    Ok(Outcome::ok(report))
}

pub fn facets(path: &Path) -> Result<Outcome, CliError> {
    let (doc, p) = load(path)?;
    let mut report = Report::new("facets");
    report.echo_input(&doc);
    let emb = embed(&p)?;
    report.line("rank", emb.rank().to_string());
    report.line("facets", emb.facet_count().to_string());
    embedding_json(&mut report, &emb);

    let mut basis = Table::new("lattice basis (rows)", &["#", "vector"]);
    for (i, row) in emb.context().lattice().row_vecs().iter().enumerate() {
        basis.push(vec![(i + 1).to_string(), fmt_vec(row)]);
    }
    report.table(basis);

    let mut t = Table::new("facet functionals", &["#", "functional", "values on generators", "row of T"]);
    for (i, f) in emb.functionals().iter().enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            fmt_rat_vec(f.coefficients()),
            fmt_vec(f.values_on_generators()),
            fmt_vec(f.lattice_row()),
        ]);
    }
    report.table(t);

    let mut img = Table::new("image generators", &["generator", "image"]);
    for (g, u) in p.generators().iter().zip(emb.image_generators()) {
        img.push(vec![fmt_vec(g), fmt_vec(u)]);
    }
    report.table(img);
    Ok(Outcome::ok(report))
}

pub struct AqRequest {
    pub qs: Vec<u64>,
    /// Cross-check each count by closure enumeration with this point cap.
    pub brute_force_cap: Option<usize>,
}

pub fn aq(path: &Path, req: &AqRequest, opts: &Options) -> Result<Outcome, CliError> {
    if req.qs.is_empty() || req.qs.contains(&0) {
        return Err(CliError::Precondition("q values must be positive integers".into()));
    }
    let (doc, p) = load(path)?;
    let mut report = Report::new("aq");
    report.echo_input(&doc);
    let emb = embed(&p)?;
    report.line("rank", emb.rank().to_string());
    gate(&mut report, &emb, opts)?;

    let mut headers = vec!["q", "a_q", "a_q/q^d"];
    if opts.approx {
        headers.push("approx.");
    }
    if req.brute_force_cap.is_some() {
        headers.push("brute force");
    }
    let mut table = Table::new("", &headers);
    let mut rows = Vec::new();
    for c in aq_table(&emb, &req.qs) {
        let mut cells = vec![c.q.to_string(), c.a_q.to_string(), format_rational(&c.ratio)];
        if opts.approx {
            cells.push(approximate(&c.ratio, APPROX_DIGITS));
        }
        let mut row = json!({"q": c.q, "a_q": report::int(&c.a_q), "ratio": report::rat(&c.ratio)});
        if let Some(cap) = req.brute_force_cap {
            let b = brute_force_aq_with_cap(&p, c.q, cap)?;
            cells.push(if b == c.a_q { format!("{b} (agrees)") } else { format!("{b} (DIFFERS)") });
            row["brute_force"] = report::int(&b);
        }
        table.push(cells);
        rows.push(row);
    }
    report.table(table);
    report.json("aq", Value::Array(rows));
    Ok(Outcome::ok(report))
}

pub fn hk(path: &Path, q: u64, t: u64, opts: &Options) -> Result<Outcome, CliError> {
    if q == 0 || t == 0 {
        return Err(CliError::Precondition("q and t must be positive integers".into()));
    }
    let (doc, p) = load(path)?;
    let mut report = Report::new("hk");
    report.echo_input(&doc);
    let emb = embed(&p)?;
    gate(&mut report, &emb, opts)?;
    let witness = socle_witness(&emb)?;
    let id = hk_difference_identity(&emb, &witness, t, q)?;
    report.line("q", q.to_string());
    report.line("t", t.to_string());
    report.line("witness mu", fmt_vec(&witness.mu));
    report.line("l(R/a_t^[q])", id.colength_a.to_string());
    report.line("l(R/(a_t^[q] + mu^(tq)))", id.colength_a_mu.to_string());
    report.line("difference", id.lhs.to_string());
    report.line("a_q", id.rhs.to_string());
    report.line("identity holds", if id.equal { "yes" } else { "NO" });
    let parts: Vec<Value> = witness
        .parts
        .iter()
        .map(|w| {
            json!({"coordinate": w.coordinate, "a": report::int_vec(&w.a), "eta": report::int_vec(&w.eta), "mu": report::int_vec(&w.mu)})
        })
        .collect();
    report.json(
        "witness",
        json!({"mu": report::int_vec(&witness.mu), "mu0": report::int_vec(&witness.mu0), "parts": parts}),
    );
    report.json(
        "hk",
        json!({
            "q": q,
            "t": t,
            "colength_a": report::int(&id.colength_a),
            "colength_a_mu": report::int(&id.colength_a_mu),
            "difference": report::int(&id.lhs),
            "a_q": report::int(&id.rhs),
            "equal": id.equal,
        }),
    );
    Ok(Outcome::ok(report))
}

pub enum Family {
    Segre { r: usize, s: usize },
    Veronese { d: usize, n: usize },
}

pub fn family(kind: &Family, emit: Option<&Path>, opts: &Options) -> Result<Outcome, CliError> {
    let (p, closed, dim) = match *kind {
        Family::Segre { r, s } => {
            let p = segre_generators(r, s)?;
            (p, segre_signature(r, s), segre_dimension(r, s))
        }
        Family::Veronese { d, n } => {
            let p = veronese_generators(d, n)?;
            (p, veronese_signature(d, n), d)
        }
    };
    let doc = InputDocument::from_presentation(&p);
    let mut report = Report::new("family");
    report.echo_input(&doc);
    report.line("dimension", dim.to_string());
    let computed = signature_of_embedding(embed(&p)?)?.value;
    rational_line(&mut report, opts, "closed-form signature", &closed);
    rational_line(&mut report, opts, "computed signature", &computed);
    report.line("agree", if closed == computed { "yes" } else { "NO" });
    report.json("dimension", Value::from(dim));
    report.json("closed_form_signature", report::rat(&closed));
    report.json("signature", report::rat(&computed));
    report.json("agree", Value::from(closed == computed));
    if let Some(path) = emit {
        std::fs::write(path, doc.render())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        report.line("written to", path.display().to_string());
        report.json("emitted", Value::from(path.display().to_string()));
    }
    Ok(Outcome::ok(report))
}

/// Exit status 0 when no counterexample is found in the box, 3 otherwise.
pub fn check_normal_cmd(path: &Path, bound: &Integer) -> Result<Outcome, CliError> {
    if bound < &Integer::zero() {
        return Err(CliError::Precondition("the bound must be nonnegative".into()));
    }
    let (doc, p) = load(path)?;
    let mut report = Report::new("check-normal");
    report.echo_input(&doc);
    let emb = embed(&p)?;
    let (verdict, value) = normality_diagnostic(&emb, bound);
    report.json("normality", value);
    report.line("bound", bound.to_string());
    let status = match verdict {
        NormalityVerdict::Normal { .. } => {
            report.line("verdict", "normal (no counterexample in the box)");
            0
        }
        NormalityVerdict::CounterexampleFound(v) => {
            report.line("verdict", "not normal");
            report.line("counterexample", fmt_vec(&v));
            3
        }
    };
    Ok(Outcome { report, status })
}
