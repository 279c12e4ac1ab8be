//! Command bodies. Each returns a rendered document and whether the run passed.

use deformed_ha::fock::build_ladder;
use deformed_ha::limits::run_limit_suite;
use deformed_ha::link::link_consistency;
use deformed_ha::structure::{sf_table, spectrum};
use deformed_ha::verify::{verify_commutator_sf, verify_hg, verify_q_ha, verify_qp_ha, verify_two_sided};
use deformed_ha::{Check, Mu, ResidualReport, SfModel};
use serde_json::{Map, Value};

use crate::output::{real, Cell, Document, Format, Table};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(deformed_ha::Error),
    Io(String),
}

impl From<deformed_ha::Error> for Failure {
    fn from(e: deformed_ha::Error) -> Self {
        Failure::Domain(e)
    }
}

pub type Outcome = Result<(Document, bool), Failure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelName {
    Harmonic,
    ArikCoon,
    BiedenharnMacfarlane,
    Cj,
    JannussisMu,
    NonstdQ,
    NonstdQp,
    TwoSidedEqual,
}

impl ModelName {
    pub fn name(self) -> &'static str {
        match self {
            ModelName::Harmonic => "harmonic",
            ModelName::ArikCoon => "arik-coon",
            ModelName::BiedenharnMacfarlane => "biedenharn-macfarlane",
            ModelName::Cj => "cj",
            ModelName::JannussisMu => "jannussis-mu",
            ModelName::NonstdQ => "nonstd-q",
            ModelName::NonstdQp => "nonstd-qp",
            ModelName::TwoSidedEqual => "two-sided-equal",
        }
    }

    fn parameters(self) -> &'static [&'static str] {
        match self {
            ModelName::Harmonic => &[],
            ModelName::ArikCoon | ModelName::BiedenharnMacfarlane | ModelName::NonstdQ => &["q"],
            ModelName::Cj | ModelName::NonstdQp => &["q", "p"],
            ModelName::JannussisMu => &["mu"],
            ModelName::TwoSidedEqual => &["qb", "pb"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Relation {
    QHa,
    QpHa,
    TwoSided,
    Hg,
    CommutatorSf,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::QHa => "q-ha",
            Relation::QpHa => "qp-ha",
            Relation::TwoSided => "two-sided",
            Relation::Hg => "hg",
            Relation::CommutatorSf => "commutator-sf",
        }
    }
}

/// Named real parameters as given on the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Params {
    pub q: Option<f64>,
    pub p: Option<f64>,
    pub qb: Option<f64>,
    pub pb: Option<f64>,
    pub mu: Option<f64>,
}

impl Params {
    fn get(&self, name: &str) -> Option<f64> {
        match name {
            "q" => self.q,
            "p" => self.p,
            "qb" => self.qb,
            "pb" => self.pb,
            "mu" => self.mu,
            _ => None,
        }
    }

    /// Exactly `wanted` must be present; returns them in order as a config object.
    fn resolve(&self, wanted: &[&str], owner: &str) -> Result<Map<String, Value>, Failure> {
        for name in ["q", "p", "qb", "pb", "mu"] {
            let present = self.get(name).is_some();
            let needed = wanted.contains(&name);
            if needed && !present {
                return Err(Failure::Usage(format!("--{name} is required for {owner}")));
            }
            if present && !needed {
                return Err(Failure::Usage(format!("--{name} does not apply to {owner}")));
            }
        }
        Ok(wanted
            .iter()
            .map(|&name| (name.to_string(), real(self.get(name).expect("checked above"))))
            .collect())
    }

    fn value(&self, name: &str) -> f64 {
        self.get(name).expect("resolved before use")
    }
}

fn model(name: ModelName, params: &Params) -> Result<(SfModel, Map<String, Value>), Failure> {
    let resolved = params.resolve(name.parameters(), &format!("model {}", name.name()))?;
    let v = |k| params.value(k);
    let model = match name {
        ModelName::Harmonic => SfModel::Harmonic,
        ModelName::ArikCoon => SfModel::ArikCoon { q: v("q") },
        ModelName::BiedenharnMacfarlane => SfModel::BiedenharnMacfarlane { q: v("q") },
        ModelName::Cj => SfModel::ChakrabartiJagannathan { q: v("q"), p: v("p") },
        ModelName::JannussisMu => SfModel::JannussisMu { mu: v("mu") },
        ModelName::NonstdQ => SfModel::NonstdQ { q: v("q") },
        ModelName::NonstdQp => SfModel::NonstdQP { q: v("q"), p: v("p") },
        ModelName::TwoSidedEqual => SfModel::TwoSidedEqualHg { qb: v("qb"), pb: v("pb") },
    };
    model.validate()?;
    Ok((model, resolved))
}

fn config(command: &str, format: Format, entries: Vec<(&str, Value)>) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("command".into(), Value::from(command));
    for (k, v) in entries {
        map.insert(k.into(), v);
    }
    map.insert("format".into(), Value::from(format.name()));
    map
}

fn level_table(column: &'static str, values: &[f64]) -> Table {
    let mut table = Table::new(&["n", column]);
    for (n, &v) in values.iter().enumerate() {
        table.push(vec![Cell::Int(n as u64), Cell::Real(v)]);
    }
    table
}

pub fn sf(name: ModelName, params: &Params, n_max: usize, format: Format) -> Outcome {
    let (model, parameters) = model(name, params)?;
    let values = sf_table(&model, n_max)?;
    let config = config(
        "sf",
        format,
        vec![
            ("model", Value::from(name.name())),
            ("parameters", Value::Object(parameters)),
            ("n_max", Value::from(n_max)),
        ],
    );
    Ok((
        Document {
            config,
            report: None,
            table: level_table("phi", &values),
        },
        true,
    ))
}

pub fn spectrum_cmd(name: ModelName, params: &Params, n_max: usize, format: Format) -> Outcome {
    let (model, parameters) = model(name, params)?;
    let values = spectrum(&model, n_max)?;
    let config = config(
        "spectrum",
        format,
        vec![
            ("model", Value::from(name.name())),
            ("parameters", Value::Object(parameters)),
            ("n_max", Value::from(n_max)),
        ],
    );
    Ok((
        Document {
            config,
            report: None,
            table: level_table("energy", &values),
        },
        true,
    ))
}

pub struct VerifyArgs {
    pub relation: Relation,
    pub model: Option<ModelName>,
    pub params: Params,
    pub dim: usize,
    pub margin: usize,
    pub tolerance: f64,
}

pub fn verify(args: &VerifyArgs, format: Format) -> Outcome {
    let check = Check::new(args.tolerance).with_margin(args.margin);
    let params = &args.params;
    let owner = format!("relation {}", args.relation.name());
    let needs_model = matches!(args.relation, Relation::Hg | Relation::CommutatorSf);
    let mut entries = vec![("relation", Value::from(args.relation.name()))];
    match (needs_model, args.model) {
        (true, None) => return Err(Failure::Usage(format!("--model is required for {owner}"))),
        (false, Some(_)) => return Err(Failure::Usage(format!("--model does not apply to {owner}"))),
        (true, Some(name)) => entries.push(("model", Value::from(name.name()))),
        (false, None) => {}
    }
    let (report, parameters): (ResidualReport, _) = match args.relation {
        Relation::QHa => {
            let resolved = params.resolve(&["q"], &owner)?;
            (verify_q_ha(params.value("q"), args.dim, check)?, resolved)
        }
        Relation::QpHa => {
            let resolved = params.resolve(&["q", "p"], &owner)?;
            (verify_qp_ha(params.value("q"), params.value("p"), args.dim, check)?, resolved)
        }
        Relation::TwoSided => {
            let resolved = params.resolve(&["qb", "pb", "mu"], &owner)?;
            let mu = Mu::Constant(params.value("mu"));
            (verify_two_sided(params.value("qb"), params.value("pb"), &mu, args.dim, check)?, resolved)
        }
        Relation::Hg | Relation::CommutatorSf => {
            let name = args.model.expect("checked above");
            let (model, resolved) = model(name, params)?;
            let rep = build_ladder(&model, args.dim)?;
            let report = if args.relation == Relation::Hg {
                let hg = model
                    .hg_pair()?
                    .ok_or_else(|| Failure::Usage(format!("model {} has no H/G pair", name.name())))?;
                verify_hg(&rep, &hg, check)?
            } else {
                verify_commutator_sf(&rep, check)?
            };
            (report, resolved)
        }
    };
    entries.push(("parameters", Value::Object(parameters)));
    entries.push(("dim", Value::from(args.dim)));
    entries.push(("margin", Value::from(args.margin)));
    entries.push(("tolerance", real(args.tolerance)));
    let config = config("verify", format, entries);

    let mut summary = Map::new();
    summary.insert("relation".into(), Value::from(report.relation.clone()));
    summary.insert("dim".into(), Value::from(report.dim));
    summary.insert("margin".into(), Value::from(report.margin));
    summary.insert("max_abs_residual".into(), real(report.max_abs_residual));
    summary.insert("tolerance".into(), real(report.tolerance));
    summary.insert("pass".into(), Value::Bool(report.pass));
    let mut table = Table::new(&["n", "residual"]);
    for &(n, r) in report.per_state.iter().flatten() {
        table.push(vec![Cell::Int(n as u64), Cell::Real(r)]);
    }
    Ok((
        Document {
            config,
            report: Some(summary),
            table,
        },
        report.pass,
    ))
}

pub fn link(qb: f64, pb: f64, p: f64, n_max: u32, tolerance: f64, format: Format) -> Outcome {
    let outcome = link_consistency(qb, pb, p, n_max, tolerance)?;
    let per_state = outcome.report.per_state.clone().unwrap_or_default();
    let mut table = Table::new(&["n", "q", "mu_42", "mu_43", "mu_44", "p_n_47", "consistent"]);
    for (row, &(_, residual)) in outcome.rows.iter().zip(&per_state) {
        let p_n = if row.inversion_resolved {
            Cell::Real(row.p_n_47)
        } else {
            Cell::Missing
        };
        table.push(vec![
            Cell::Int(row.level.into()),
            Cell::Real(row.q),
            Cell::Real(row.mu_42),
            Cell::Real(row.mu_43),
            Cell::Real(row.mu_44),
            p_n,
            Cell::Bool(residual <= tolerance),
        ]);
    }
    let mut parameters = Map::new();
    parameters.insert("qb".into(), real(qb));
    parameters.insert("pb".into(), real(pb));
    parameters.insert("p".into(), real(p));
    let config = config(
        "link",
        format,
        vec![
            ("parameters", Value::Object(parameters)),
            ("n_max", Value::from(n_max)),
            ("tolerance", real(tolerance)),
        ],
    );
    let mut summary = Map::new();
    summary.insert("max_residual".into(), real(outcome.report.max_abs_residual));
    summary.insert(
        "unresolved_phi_levels".into(),
        Value::Array(outcome.unresolved_phi.iter().map(|&n| Value::from(n)).collect()),
    );
    summary.insert("pass".into(), Value::Bool(outcome.report.pass));
    Ok((
        Document {
            config,
            report: Some(summary),
            table,
        },
        outcome.report.pass,
    ))
}

pub fn limits(tolerance: f64, format: Format) -> Outcome {
    let checks = run_limit_suite(tolerance)?;
    let mut table = Table::new(&["check", "max_deviation", "tolerance", "pass"]);
    for c in &checks {
        table.push(vec![
            Cell::Text(c.name.into()),
            Cell::Real(c.max_deviation),
            Cell::Real(c.tolerance),
            Cell::Bool(c.pass),
        ]);
    }
    let config = config("limits", format, vec![("tolerance", real(tolerance))]);
    let pass = checks.iter().all(|c| c.pass);
    Ok((
        Document {
            config,
            report: None,
            table,
        },
        pass,
    ))
}
