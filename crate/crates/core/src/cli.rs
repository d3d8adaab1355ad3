//! JSON instance files, command dispatch and machine-readable results.
//!
//! Instances are JSON objects with a `kind` field. Probabilities are exact
//! rationals written as strings (`"3/9"`, `"0"`, `"1"`); JSON number
//! literals are rejected for them. Integers may be JSON numbers or decimal
//! strings.
//!
//! ```json
//! {"kind": "subset_sum", "weights": [3, 1, 2], "target": 3}
//! {"kind": "three_partition", "weights": [1, 1, 1, 1, 1, 1], "bound": 3}
//! {"kind": "transportation", "p": ["1/9", "3/9", "5/9"], "q": ["2/9", "4/9", "3/9"]}
//! {"kind": "channel_family", "p": ["1/2", "1/2"], "m": 2}
//! {"kind": "metric_pair", "p": ["1/2", "1/2"], "q": ["1"]}
//! ```
//!
//! Any instance may carry a `"witness"`: a matrix of rational strings, used
//! by the `verify` command.
//!
//! Exit codes: `0` witness or value, `1` no witness, `2` limit exceeded,
//! `3` and above for errors (see [`CliError::exit_code`]).

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::channel::{decide_optimal_channel, max_mutual_information, ChannelFamily};
use crate::entropy::{Entropy, Precision};
use crate::error::Error;
use crate::measures::{Coupling, Distribution, Rational};
use crate::metrics::{total_variation, vi_distance, vi_distance_normalized};
use crate::minentropy::{decide_entropy_min, min_joint_entropy_exact, Decision, SolverOptions};
use crate::polytope::{TransportationPolytope, DEFAULT_VERTEX_LIMIT};
use crate::reductions::{
    reduce_subset_sum, reduce_three_partition, verify_certificate, Certificate, CertificateTarget, Claim,
    SubsetSumInstance, ThreePartitionInstance,
};

/// Significant digits used for value intervals.
pub const VALUE_DIGITS: usize = 12;

/// Errors surfaced by the command-line layer, each with a stable exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Malformed JSON.
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Missing, unknown or wrongly typed field.
    Schema {
        field: String,
        message: String,
    },
    /// Well-typed field with an invalid value.
    Value {
        field: String,
        message: String,
    },
    /// The command does not apply to the instance kind.
    Incompatible {
        command: String,
        kind: String,
    },
    /// A solver rejected its input.
    Solver(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 3,
            CliError::Schema { .. } => 4,
            CliError::Value { .. } => 5,
            CliError::Incompatible { .. } => 6,
            CliError::Solver(_) => 7,
            CliError::Io(_) => 8,
        }
    }

    /// Short machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse_error",
            CliError::Schema { .. } => "schema_error",
            CliError::Value { .. } => "value_error",
            CliError::Incompatible { .. } => "incompatible_command",
            CliError::Solver(_) => "solver_error",
            CliError::Io(_) => "io_error",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("error".into(), json!(self.code()));
        obj.insert("message".into(), json!(self.to_string()));
        match self {
            CliError::Parse { line, column, .. } => {
                obj.insert("line".into(), json!(line));
                obj.insert("column".into(), json!(column));
            }
            CliError::Schema { field, .. } | CliError::Value { field, .. } => {
                obj.insert("field".into(), json!(field));
            }
            _ => {}
        }
        Value::Object(obj)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line, column, message } => {
                write!(f, "invalid JSON at line {line}, column {column}: {message}")
            }
            CliError::Schema { field, message } => write!(f, "field `{field}`: {message}"),
            CliError::Value { field, message } => write!(f, "field `{field}`: {message}"),
            CliError::Incompatible { command, kind } => {
                write!(f, "command `{command}` does not accept `{kind}` instances")
            }
            CliError::Solver(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Solver(e)
    }
}

/// A validated problem instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    SubsetSum(SubsetSumInstance),
    ThreePartition(ThreePartitionInstance),
    Transportation(TransportationPolytope),
    ChannelFamily(ChannelFamily),
    MetricPair { p: Distribution, q: Distribution },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::SubsetSum(_) => "subset_sum",
            Instance::ThreePartition(_) => "three_partition",
            Instance::Transportation(_) => "transportation",
            Instance::ChannelFamily(_) => "channel_family",
            Instance::MetricPair { .. } => "metric_pair",
        }
    }
}

/// Parsed instance file: an instance and an optional witness matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub witness: Option<Vec<Vec<Rational>>>,
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        InstanceFile {
            instance,
            witness: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let strs = |d: &Distribution| -> Vec<String> { d.probs().iter().map(|x| x.to_string()).collect() };
        let nums = |w: &[u64]| -> Vec<String> { w.iter().map(|x| x.to_string()).collect() };
        let mut v = match &self.instance {
            Instance::SubsetSum(i) => json!({
                "kind": "subset_sum",
                "weights": nums(i.weights()),
                "target": i.target().to_string(),
            }),
            Instance::ThreePartition(i) => json!({
                "kind": "three_partition",
                "weights": nums(i.weights()),
                "bound": i.bound().to_string(),
            }),
            Instance::Transportation(p) => json!({
                "kind": "transportation",
                "p": strs(p.row_marginal()),
                "q": strs(p.col_marginal()),
            }),
            Instance::ChannelFamily(f) => json!({
                "kind": "channel_family",
                "p": strs(f.input_marginal()),
                "m": f.output_size().to_string(),
            }),
            Instance::MetricPair { p, q } => json!({
                "kind": "metric_pair",
                "p": strs(p),
                "q": strs(q),
            }),
        };
        if let Some(w) = &self.witness {
            v["witness"] = json!(matrix_strings(w));
        }
        v
    }
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &[u8]) -> Result<InstanceFile, CliError> {
    let text = std::str::from_utf8(text).map_err(|e| CliError::Parse {
        line: 0,
        column: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| schema("", "expected a JSON object"))?;
    let kind = obj
        .get("kind")
        .ok_or_else(|| schema("kind", "missing"))?
        .as_str()
        .ok_or_else(|| schema("kind", "expected a string"))?;
    let allowed: &[&str] = match kind {
        "subset_sum" => &["weights", "target"],
        "three_partition" => &["weights", "bound", "k"],
        "transportation" | "metric_pair" => &["p", "q"],
        "channel_family" => &["p", "m"],
        other => return Err(schema("kind", &format!("unknown kind `{other}`"))),
    };
    for key in obj.keys() {
        if key != "kind" && key != "witness" && !allowed.contains(&key.as_str()) {
            return Err(schema(key, "unknown field"));
        }
    }
    let instance = match kind {
        "subset_sum" => {
            let weights = integer_list(obj, "weights")?;
            let target = integer(field(obj, "target")?, "target")?;
            Instance::SubsetSum(SubsetSumInstance::new(weights, target).map_err(|e| value_err("weights", e))?)
        }
        "three_partition" => {
            let weights = integer_list(obj, "weights")?;
            let (name, raw) = match (obj.get("bound"), obj.get("k")) {
                (Some(_), Some(_)) => return Err(schema("k", "give either `bound` or `k`, not both")),
                (Some(v), None) => ("bound", v),
                (None, Some(v)) => ("k", v),
                (None, None) => return Err(schema("bound", "missing")),
            };
            let bound = integer(raw, name)?;
            Instance::ThreePartition(ThreePartitionInstance::new(weights, bound).map_err(|e| value_err("weights", e))?)
        }
        "transportation" => Instance::Transportation(TransportationPolytope::new(
            distribution(obj, "p")?,
            distribution(obj, "q")?,
        )),
        "metric_pair" => Instance::MetricPair {
            p: distribution(obj, "p")?,
            q: distribution(obj, "q")?,
        },
        "channel_family" => {
            let p = distribution(obj, "p")?;
            let m = integer(field(obj, "m")?, "m")?;
            let m = usize::try_from(m).map_err(|_| value_msg("m", "too large"))?;
            Instance::ChannelFamily(ChannelFamily::new(p, m).map_err(|e| value_err("m", e))?)
        }
        _ => unreachable!("kind checked above"),
    };
    let witness = match obj.get("witness") {
        None | Some(Value::Null) => None,
        Some(v) => Some(matrix(v)?),
    };
    Ok(InstanceFile { instance, witness })
}

fn schema(field: &str, message: &str) -> CliError {
    CliError::Schema {
        field: field.into(),
        message: message.into(),
    }
}

fn value_msg(field: &str, message: &str) -> CliError {
    CliError::Value {
        field: field.into(),
        message: message.into(),
    }
}

fn value_err(field: &str, e: Error) -> CliError {
    value_msg(field, &e.to_string())
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, CliError> {
    obj.get(name).ok_or_else(|| schema(name, "missing"))
}

fn integer(v: &Value, name: &str) -> Result<u64, CliError> {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_u64() {
                Ok(x)
            } else if n.as_i64().is_some() {
                Err(value_msg(name, "must be nonnegative"))
            } else {
                Err(schema(name, "expected an integer"))
            }
        }
        Value::String(s) => {
            let t = s.trim();
            if t.starts_with('-') && t[1..].chars().all(|c| c.is_ascii_digit()) && t.len() > 1 {
                return Err(value_msg(name, "must be nonnegative"));
            }
            if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
                return Err(schema(name, "expected a decimal integer"));
            }
            t.parse().map_err(|_| value_msg(name, "too large"))
        }
        _ => Err(schema(name, "expected an integer")),
    }
}

fn integer_list(obj: &Map<String, Value>, name: &str) -> Result<Vec<u64>, CliError> {
    let arr = field(obj, name)?
        .as_array()
        .ok_or_else(|| schema(name, "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| integer(v, &format!("{name}[{i}]")))
        .collect()
}

/// Parses `"a/b"` or `"a"` with optional sign.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let digits = |t: &str| -> Option<BigInt> {
        let body = t.strip_prefix('-').unwrap_or(t);
        if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        t.parse().ok()
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let den = digits(b)?;
            if den.is_zero() || den.is_negative() {
                return None;
            }
            Some(Rational::new(digits(a)?, den))
        }
        None => Some(Rational::from_integer(digits(s)?)),
    }
}

fn rational(v: &Value, name: &str) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| schema(name, "expected a rational \"a/b\"")),
        Value::Number(n) if n.is_u64() || n.is_i64() => {
            parse_rational(&n.to_string()).ok_or_else(|| schema(name, "expected a rational"))
        }
        Value::Number(_) => Err(schema(
            name,
            "floating-point literals are not accepted; write the rational as a string \"a/b\"",
        )),
        _ => Err(schema(name, "expected a rational string")),
    }
}

fn distribution(obj: &Map<String, Value>, name: &str) -> Result<Distribution, CliError> {
    let arr = field(obj, name)?
        .as_array()
        .ok_or_else(|| schema(name, "expected an array"))?;
    let probs = arr
        .iter()
        .enumerate()
        .map(|(i, v)| rational(v, &format!("{name}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Distribution::new(probs).map_err(|e| value_err(name, e))
}

fn matrix(v: &Value) -> Result<Vec<Vec<Rational>>, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| schema("witness", "expected an array of rows"))?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let r = r
                .as_array()
                .ok_or_else(|| schema(&format!("witness[{i}]"), "expected an array"))?;
            r.iter()
                .enumerate()
                .map(|(j, x)| rational(x, &format!("witness[{i}][{j}]")))
                .collect()
        })
        .collect()
}

fn matrix_strings(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// Operations available on instance files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    /// Minimum `H(X,Y)` over `C(P, Q)`.
    MinEntropy,
    /// Is there a coupling with `H(X,Y) = H(P)`?
    DecideMin,
    /// Maximum `I(X;Y)` over `C(P, m)`.
    OptimalChannel,
    /// Is there a channel with `I(X;Y) = log2 m`?
    DecideChannel,
    ViDistance,
    ViDistanceNormalized,
    TotalVariation,
    /// Rewrites a Subset Sum or 3-Partition instance.
    Reduce,
    /// Checks the instance's witness.
    Verify,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::MinEntropy,
        Command::DecideMin,
        Command::OptimalChannel,
        Command::DecideChannel,
        Command::ViDistance,
        Command::ViDistanceNormalized,
        Command::TotalVariation,
        Command::Reduce,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::MinEntropy => "min-entropy",
            Command::DecideMin => "decide-min",
            Command::OptimalChannel => "optimal-channel",
            Command::DecideChannel => "decide-channel",
            Command::ViDistance => "vi-distance",
            Command::ViDistanceNormalized => "vi-distance-normalized",
            Command::TotalVariation => "total-variation",
            Command::Reduce => "reduce",
            Command::Verify => "verify",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Flags shared by all commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Vertex or assignment budget.
    pub limit: usize,
    /// Target interval width `2^-precision`.
    pub precision: Precision,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            limit: DEFAULT_VERTEX_LIMIT,
            precision: Precision::DEFAULT,
        }
    }
}

impl RunOptions {
    fn solver(self) -> SolverOptions {
        SolverOptions {
            limit: self.limit,
            precision: self.precision,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Witness,
    NoWitness,
    Value,
    LimitExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Witness | Status::Value => 0,
            Status::NoWitness => 1,
            Status::LimitExceeded => 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices_visited: Option<usize>,
    pub elapsed_ms: u64,
}

/// Machine-readable outcome of a command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultFile {
    pub command: String,
    pub status: Status,
    /// `[lower, upper]` rounded outward to [`VALUE_DIGITS`] significant digits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_interval: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_rounding: Option<&'static str>,
    /// Exact value, for rational-valued commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
    /// For decisions: the witness passes certificate verification. For
    /// optimizations: the coupling lies in the feasible set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    /// Optimizers that could not be separated from `witness`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub co_minimal: Option<usize>,
    /// Reduced instance, for `reduce`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<Value>,
    pub stats: Stats,
}

impl ResultFile {
    fn new(command: Command, status: Status) -> Self {
        ResultFile {
            command: command.name().into(),
            status,
            value_interval: None,
            value_rounding: None,
            value_exact: None,
            witness: None,
            verified: None,
            co_minimal: None,
            instance: None,
            stats: Stats::default(),
        }
    }

    fn with_value(mut self, e: &Entropy) -> Self {
        let (lo, hi) = e.to_decimal_bounds(VALUE_DIGITS);
        self.value_interval = Some([lo, hi]);
        self.value_rounding = Some("outward");
        self
    }

    fn with_witness(mut self, s: &Coupling) -> Self {
        self.witness = Some(matrix_strings(&s.to_rows()));
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("result serializes")
    }
}

enum Target {
    Polytope(TransportationPolytope),
    Family(ChannelFamily),
}

/// The polytope an instance denotes, if any. `None` for a Subset Sum
/// instance whose target exceeds its total.
fn as_polytope(inst: &Instance, command: Command) -> Result<Option<TransportationPolytope>, CliError> {
    match inst {
        Instance::Transportation(p) => Ok(Some(p.clone())),
        Instance::MetricPair { p, q } => Ok(Some(TransportationPolytope::new(p.clone(), q.clone()))),
        Instance::SubsetSum(s) => match reduce_subset_sum(s) {
            Ok(p) => Ok(Some(p)),
            Err(Error::TargetExceedsTotal { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        },
        other => Err(incompatible(command, other)),
    }
}

fn as_family(inst: &Instance, command: Command) -> Result<ChannelFamily, CliError> {
    match inst {
        Instance::ChannelFamily(f) => Ok(f.clone()),
        Instance::ThreePartition(t) => Ok(reduce_three_partition(t)),
        other => Err(incompatible(command, other)),
    }
}

fn as_pair(inst: &Instance, command: Command) -> Result<(Distribution, Distribution), CliError> {
    match inst {
        Instance::MetricPair { p, q } => Ok((p.clone(), q.clone())),
        Instance::Transportation(t) => Ok((t.row_marginal().clone(), t.col_marginal().clone())),
        other => Err(incompatible(command, other)),
    }
}

fn incompatible(command: Command, inst: &Instance) -> CliError {
    CliError::Incompatible {
        command: command.name().into(),
        kind: inst.kind().into(),
    }
}

/// Runs `command` on `file`. The result is deterministic apart from
/// `stats.elapsed_ms`.
pub fn run(command: Command, file: &InstanceFile, opts: RunOptions) -> Result<ResultFile, CliError> {
    let start = Instant::now();
    let inst = &file.instance;
    let mut out = match command {
        Command::MinEntropy => {
            let poly = as_polytope(inst, command)?.ok_or_else(|| exceeds(inst))?;
            let r = min_joint_entropy_exact(&poly, opts.solver());
            let status = if r.limit_exceeded {
                Status::LimitExceeded
            } else {
                Status::Value
            };
            let mut out = ResultFile::new(command, status)
                .with_value(&r.value)
                .with_witness(&r.best);
            out.verified = Some(poly.is_member(&r.best));
            out.co_minimal = Some(r.co_minimal.len());
            out.stats.vertices_visited = Some(r.vertices_visited);
            out
        }
        Command::DecideMin => match as_polytope(inst, command)? {
            None => ResultFile::new(command, Status::NoWitness),
            Some(poly) => match decide_entropy_min(&poly) {
                Decision::Witness(w) => {
                    let s = w.to_coupling(poly.row_marginal());
                    let cert = Certificate::new(&s, Claim::RowDeterministicIn);
                    let mut out = ResultFile::new(command, Status::Witness).with_witness(&s);
                    out.verified = Some(verify_certificate(&cert, CertificateTarget::Polytope(&poly)));
                    out
                }
                Decision::NoWitness { .. } => ResultFile::new(command, Status::NoWitness),
            },
        },
        Command::OptimalChannel => {
            let f = as_family(inst, command)?;
            let r = max_mutual_information(&f, opts.solver());
            let status = if r.limit_exceeded {
                Status::LimitExceeded
            } else {
                Status::Value
            };
            let mut out = ResultFile::new(command, status)
                .with_value(&r.value)
                .with_witness(&r.best);
            out.verified = Some(f.contains(&r.best));
            out.co_minimal = Some(r.co_minimal.len());
            out.stats.vertices_visited = Some(r.vertices_visited);
            out
        }
        Command::DecideChannel => {
            let f = as_family(inst, command)?;
            match decide_optimal_channel(&f) {
                Decision::Witness(w) => {
                    let s = w.to_coupling(f.input_marginal());
                    let cert = Certificate::new(&s, Claim::RowDeterministicUniformCols);
                    let mut out = ResultFile::new(command, Status::Witness).with_witness(&s);
                    out.verified = Some(verify_certificate(&cert, CertificateTarget::Family(&f)));
                    out
                }
                Decision::NoWitness { .. } => ResultFile::new(command, Status::NoWitness),
            }
        }
        Command::ViDistance | Command::ViDistanceNormalized => {
            let (p, q) = as_pair(inst, command)?;
            let r = if command == Command::ViDistance {
                vi_distance(&p, &q, opts.solver())
            } else {
                vi_distance_normalized(&p, &q, opts.solver())
            };
            let status = if r.exact { Status::Value } else { Status::LimitExceeded };
            let mut out = ResultFile::new(command, status)
                .with_value(&r.value)
                .with_witness(&r.witness);
            out.verified = Some(TransportationPolytope::new(p, q).is_member(&r.witness));
            out
        }
        Command::TotalVariation => {
            let (p, q) = as_pair(inst, command)?;
            let tv = total_variation(&p, &q);
            let mut out = ResultFile::new(command, Status::Value);
            let (lo, hi) = crate::entropy::rational_decimal_bounds(&tv, VALUE_DIGITS);
            out.value_interval = Some([lo, hi]);
            out.value_rounding = Some("outward");
            out.value_exact = Some(tv.to_string());
            out
        }
        Command::Reduce => {
            let reduced = match inst {
                Instance::SubsetSum(s) => Instance::Transportation(reduce_subset_sum(s)?),
                Instance::ThreePartition(t) => Instance::ChannelFamily(reduce_three_partition(t)),
                other => return Err(incompatible(command, other)),
            };
            let mut out = ResultFile::new(command, Status::Value);
            out.instance = Some(InstanceFile::new(reduced).to_json());
            out
        }
        Command::Verify => {
            let matrix = file
                .witness
                .clone()
                .ok_or_else(|| schema("witness", "the verify command needs a witness"))?;
            let (claim, target) = match inst {
                Instance::ChannelFamily(_) | Instance::ThreePartition(_) => (
                    Claim::RowDeterministicUniformCols,
                    Target::Family(as_family(inst, command)?),
                ),
                _ => match as_polytope(inst, command)? {
                    Some(p) => (Claim::RowDeterministicIn, Target::Polytope(p)),
                    None => return Err(exceeds(inst)),
                },
            };
            let cert = Certificate::from_matrix(matrix.clone(), claim);
            let ok = match &target {
                Target::Polytope(p) => verify_certificate(&cert, CertificateTarget::Polytope(p)),
                Target::Family(f) => verify_certificate(&cert, CertificateTarget::Family(f)),
            };
            let mut out = ResultFile::new(command, if ok { Status::Witness } else { Status::NoWitness });
            out.witness = Some(matrix_strings(&matrix));
            out.verified = Some(ok);
            out
        }
    };
    out.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(out)
}

fn exceeds(inst: &Instance) -> CliError {
    match inst {
        Instance::SubsetSum(s) => CliError::Solver(Error::TargetExceedsTotal {
            target: s.target().to_string(),
            total: s.total().to_string(),
        }),
        other => CliError::Solver(Error::MalformedInstance(format!("no polytope for {}", other.kind()))),
    }
}

/// Instance kinds produced by [`generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenerateKind {
    /// `size` weights in `1..=max_weight`.
    SubsetSum,
    /// `size` triples with bound `max_weight`, answer planted as yes.
    ThreePartition,
    /// Like `ThreePartition` without a planted solution.
    ThreePartitionUnplanted,
    /// Marginals of length `size` with integer weights up to `max_weight`.
    Transportation,
}

/// Seeded random instance. Identical arguments give identical files.
pub fn generate(kind: GenerateKind, size: usize, max_weight: u64, seed: u64) -> Result<InstanceFile, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instance = match kind {
        GenerateKind::SubsetSum => Instance::SubsetSum(SubsetSumInstance::random(&mut rng, size, max_weight)?),
        GenerateKind::ThreePartition | GenerateKind::ThreePartitionUnplanted => Instance::ThreePartition(
            ThreePartitionInstance::random(&mut rng, size, max_weight, kind == GenerateKind::ThreePartition)?,
        ),
        GenerateKind::Transportation => {
            use rand::Rng;
            if size == 0 || max_weight == 0 {
                return Err(Error::InvalidArgument("need size >= 1 and max_weight >= 1".into()).into());
            }
            let mut draw = || -> Result<Distribution, Error> {
                let w: Vec<u64> = (0..size).map(|_| rng.gen_range(1..=max_weight)).collect();
                Distribution::from_weights(w)
            };
            let p = draw()?;
            let q = draw()?;
            Instance::Transportation(TransportationPolytope::new(p, q))
        }
    };
    Ok(InstanceFile::new(instance))
}
