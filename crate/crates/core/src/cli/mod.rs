//! Command-line front end. Every command prints one JSON envelope
//! `{schema_version, command, params, result, provenance}` with sorted keys,
//! except `table --format csv`, which prints plain CSV.

pub mod json;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::algebra::{Cyclotomic, Matrix};
use crate::classify::{classify, product_obstruction, ClassificationRecord, Verdict};
use crate::error::{Error, Result};
use crate::hodge::{self, CoverSpec};
use crate::reflection::{dichotomy_probe, group_closure, GeneratedGroup, DEFAULT_CAP};
use crate::vanishing::{
    a_lattice, eigenpair_sign, join_monodromy, nodal_monodromy, reflection_matrix, suspend_lattice,
    ComplexReflection,
};

pub const SCHEMA_VERSION: &str = "1.0";

/// Bound used when reporting matrix orders.
const ORDER_BOUND: u64 = 1000;

#[derive(Parser, Debug)]
#[command(
    name = "monodromy",
    version,
    about = "Exact Hodge and monodromy invariants of hypersurface families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct DegreeDim {
    /// Degree of the hypersurface.
    #[arg(long)]
    d: u32,
    /// Dimension of the hypersurface.
    #[arg(long)]
    n: u32,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Cover {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: u32,
    /// Degree of the cyclic cover.
    #[arg(long)]
    k: u32,
    /// Eigenvalue index: the eigenvalue is ζ_k^i.
    #[arg(long)]
    i: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RecordFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Primitive middle Betti number.
    Betti(DegreeDim),
    /// Euler characteristic.
    Euler(DegreeDim),
    /// Primitive Hodge numbers of the Fermat hypersurface.
    Hodge(DegreeDim),
    /// Hodge numbers of one eigenspace of a cyclic cover.
    HodgeCover(Cover),
    /// Signature (r, s) of the intersection form, n even.
    Signature(DegreeDim),
    /// Signature of the hermitian form on a non-real eigenspace.
    Eigensig(Cover),
    /// Complex and real rank of the monodromy group.
    Rank(DegreeDim),
    /// Points of [0, dmax]^nvars with coordinate sum k.
    LatticeCount {
        #[arg(long)]
        dmax: u32,
        #[arg(long)]
        nvars: u32,
        #[arg(long)]
        k: u32,
    },
    /// Hodge numbers of a hypersurface against its double suspension.
    SuspendCheck {
        #[arg(long = "two-d")]
        two_d: u32,
        #[arg(long)]
        n: u32,
    },
    /// Apply a complex reflection to a vector (JSON input).
    Reflect {
        #[arg(long)]
        input: PathBuf,
    },
    /// Monodromy of y^k + x_1^2 + ... + x_{n+1}^2 with eigenvectors.
    Nodal {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
    /// Tensor product of two monodromy matrices (JSON input).
    Join {
        #[arg(long)]
        input: PathBuf,
    },
    /// Suspend the A_{k-1} lattice repeatedly.
    SuspendLattice {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Enumerate the group generated by unitary matrices (JSON input).
    GroupClosure {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Closure of two reflections with eigenvalue ζ_m on a rank-two form.
    Dichotomy {
        #[arg(long = "lambda-order")]
        lambda_order: u32,
        /// Off-diagonal entry h(δ1, δ2), a rational such as 2 or -1/2.
        #[arg(long, allow_hyphen_values = true)]
        h12: String,
        /// Signature as p,q.
        #[arg(long)]
        signature: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run the witness chain for one (d, n).
    Classify {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = RecordFormat::Json)]
        format: RecordFormat,
    },
    /// Sweep classify over 2 <= d <= d-max, 0 <= n <= n-max.
    Table {
        #[arg(long = "d-max")]
        d_max: u32,
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Compare 2k with the discriminant degree for surfaces.
    ProductObstruction {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
    },
}

/// What a command produced.
enum Output {
    Envelope {
        command: &'static str,
        params: Value,
        result: Value,
        provenance: Vec<&'static str>,
    },
    Raw(String),
}

pub fn envelope(command: &str, params: Value, result: Value, provenance: &[&str]) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("params".into(), params);
    m.insert("result".into(), result);
    m.insert("provenance".into(), json!(provenance));
    Value::Object(m)
}

/// Parses `argv` (program name first), runs the command and writes to
/// stdout/stderr. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            let text = match out {
                Output::Envelope {
                    command,
                    params,
                    result,
                    provenance,
                } => {
                    let v = envelope(command, params, result, &provenance);
                    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
                }
                Output::Raw(s) => s,
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            eprintln!("error: {}", e);
            if e.is_internal() {
                1
            } else {
                2
            }
        }
    }
}

fn env(
    command: &'static str,
    params: Value,
    result: Value,
    provenance: &[&'static str],
) -> Result<Output> {
    Ok(Output::Envelope {
        command,
        params,
        result,
        provenance: provenance.to_vec(),
    })
}

const JACOBIAN: &str = "jacobian ring graded dimensions of the Fermat representative";
const BETTI: &str = "betti recursion, closed form and hodge sum";

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {}", path.display(), e)))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{} is not valid JSON: {}", path.display(), e)))
}

fn dn(a: DegreeDim) -> Value {
    json!({"d": a.d, "n": a.n})
}

fn cover_params(c: Cover) -> Value {
    json!({"d": c.d, "n": c.n, "k": c.k, "i": c.i})
}

fn order_json(m: &Matrix) -> Value {
    match m.multiplicative_order(ORDER_BOUND) {
        Some(o) => json!(o),
        None => Value::Null,
    }
}

fn execute(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Betti(a) => env(
            "betti",
            dn(a),
            json!(hodge::primitive_betti(a.d, a.n)?),
            &[BETTI],
        ),
        Command::Euler(a) => env(
            "euler",
            dn(a),
            json!(hodge::euler_characteristic(a.d, a.n)?),
            &["euler characteristic recursion"],
        ),
        Command::Hodge(a) => env(
            "hodge",
            dn(a),
            json::hodge(&hodge::hodge_hypersurface(a.d, a.n)?),
            &[JACOBIAN],
        ),
        Command::HodgeCover(c) => {
            let spec = CoverSpec::new(c.d, c.n, c.k, c.i)?;
            let h = hodge::hodge_cyclic_eigenspace(&spec)?;
            let degrees: Vec<i64> = (0..=c.n + 1)
                .map(|q| hodge::eigenspace_numerator_degree(&spec, q))
                .collect();
            let mut v = json::hodge(&h);
            v["numerator_degrees"] = json!(degrees);
            env(
                "hodge-cover",
                cover_params(c),
                v,
                &[JACOBIAN, "eigenspace numerator degrees"],
            )
        }
        Command::Signature(a) => {
            let (r, s) = hodge::signature_primitive(a.d, a.n)?;
            env(
                "signature",
                dn(a),
                json!({"r": r, "s": s}),
                &["hodge numbers summed by parity of p"],
            )
        }
        Command::Eigensig(c) => {
            let (p, q) = hodge::eigenspace_signature(&CoverSpec::new(c.d, c.n, c.k, c.i)?)?;
            env(
                "eigensig",
                cover_params(c),
                json!({"p": p, "q": q}),
                &["eigenspace hodge numbers summed by parity of q"],
            )
        }
        Command::Rank(a) => env(
            "rank",
            dn(a),
            json!({
                "rank_complex": hodge::rank_complex(a.d, a.n)?,
                "rank_real": hodge::rank_real(a.d, a.n)?,
            }),
            &[BETTI, "signature of the intersection form"],
        ),
        Command::LatticeCount { dmax, nvars, k } => env(
            "lattice-count",
            json!({"dmax": dmax, "nvars": nvars, "k": k}),
            json!(hodge::lattice_count(dmax, nvars, k)?.to_string()),
            &["convolution recursion"],
        ),
        Command::SuspendCheck { two_d, n } => env(
            "suspend-check",
            json!({"two_d": two_d, "n": n}),
            json!({
                "base": json::hodge(&hodge::hodge_hypersurface(two_d.max(2), n.saturating_sub(1))?),
                "holds": hodge::suspension_periodicity_check(two_d, n)?,
            }),
            &[JACOBIAN, "weighted jacobian ring of the double suspension"],
        ),
        Command::Reflect { input } => reflect(&input),
        Command::Nodal { k, n } => nodal(k, n),
        Command::Join { input } => {
            let v = read_json(&input)?;
            let tf = json::parse_matrix(json::field(&v, "tf")?)?;
            let tg = json::parse_matrix(json::field(&v, "tg")?)?;
            let m = join_monodromy(&tf, &tg);
            env(
                "join",
                json!({"input": input.display().to_string()}),
                json!({"matrix": json::matrix(&m), "order": order_json(&m), "dim": m.rows()}),
                &["tensor product of monodromies"],
            )
        }
        Command::SuspendLattice { k, times } => {
            let mut l = a_lattice(k)?;
            for _ in 0..times {
                l = suspend_lattice(&l)?;
            }
            env(
                "suspend-lattice",
                json!({"k": k, "times": times}),
                json!({
                    "gram": json::matrix(&l.gram),
                    "cycle_dim": l.cycle_dim,
                    "determinant": json::cyclo(&l.gram.determinant()),
                    "basis_labels": l.basis_labels,
                }),
                &["A lattice from first principles", "suspension sign rule"],
            )
        }
        Command::GroupClosure { input, cap } => closure(&input, cap),
        Command::Dichotomy {
            lambda_order,
            h12,
            signature,
            cap,
        } => {
            let sig = parse_pair(&signature)?;
            let h = Cyclotomic::from_rational(json::parse_rational(&h12)?);
            let out = dichotomy_probe(&Cyclotomic::zeta(lambda_order), &h, sig, cap)?;
            env(
                "dichotomy",
                json!({"lambda_order": lambda_order, "h12": h12, "signature": [sig.0, sig.1], "cap": cap}),
                serde_json::to_value(out).expect("serializable"),
                &["exact closure enumeration; growth is evidence, not proof"],
            )
        }
        Command::Classify { d, n, format } => {
            let rec = classify(d, n)?;
            match format {
                RecordFormat::Json => env(
                    "classify",
                    json!({"d": d, "n": n}),
                    record_json(&rec),
                    &[
                        JACOBIAN,
                        BETTI,
                        "derivative witness search",
                        "lie type comparison",
                    ],
                ),
                RecordFormat::Text => Ok(Output::Raw(record_text(&rec))),
            }
        }
        Command::Table {
            d_max,
            n_max,
            format,
        } => {
            let rows = table_rows(d_max, n_max)?;
            match format {
                TableFormat::Csv => Ok(Output::Raw(table_csv(&rows))),
                TableFormat::Json => env(
                    "table",
                    json!({"d_max": d_max, "n_max": n_max}),
                    json!({
                        "columns": TABLE_COLUMNS,
                        "rows": rows.iter().map(table_row_json).collect::<Vec<_>>(),
                    }),
                    &[
                        JACOBIAN,
                        BETTI,
                        "derivative witness search",
                        "lie type comparison",
                    ],
                ),
            }
        }
        Command::ProductObstruction { d, k } => env(
            "product-obstruction",
            json!({"d": d, "k": k}),
            {
                let o = product_obstruction(d, k)?;
                json!({
                    "holds": o.holds,
                    "max_order": o.max_order.to_string(),
                    "discriminant_degree": o.discriminant_degree.to_string(),
                })
            },
            &["element orders against the discriminant degree"],
        ),
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidInput(format!("expected p,q but got {:?}", s));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_reflection(v: &Value, dim_hint: Option<usize>) -> Result<ComplexReflection> {
    let lambda = json::parse_cyclo(json::field(v, "lambda")?)?;
    let delta = json::parse_vector(json::field(v, "delta")?)?;
    let epsilon = match v.get("epsilon") {
        None => 1,
        Some(e) => e
            .as_i64()
            .ok_or_else(|| Error::InvalidInput("epsilon must be an integer".into()))?
            as i32,
    };
    let form = json::parse_form(v.get("form"), dim_hint.unwrap_or(delta.len()))?;
    ComplexReflection::new(lambda, delta, epsilon, form)
}

fn reflect(input: &Path) -> Result<Output> {
    let v = read_json(input)?;
    let r = parse_reflection(&v, None)?;
    let t = reflection_matrix(&r);
    let mut result = json!({
        "matrix": json::matrix(&t),
        "order": r.order(),
        "determinant": json::cyclo(&t.determinant()),
        "unitary": r.form().preserved_by(&t),
    });
    if let Some(x) = v.get("x") {
        let x = json::parse_vector(x)?;
        if x.len() != t.cols() {
            return Err(Error::DimensionMismatch("x has the wrong length".into()));
        }
        result["image"] = json::vector(&t.apply(&x));
    }
    env(
        "reflect",
        json!({"input": input.display().to_string()}),
        result,
        &["complex reflection formula"],
    )
}

fn nodal(k: u32, n: u32) -> Result<Output> {
    let m = nodal_monodromy(k, n)?;
    let pairs: Vec<Value> = m
        .eigenpairs
        .iter()
        .map(|e| {
            json!({
                "lambda": json::cyclo(&e.lambda),
                "vector": json::vector(&e.vector),
                "h_value": json::cyclo(&e.h_value),
                "normalized": e.normalized,
                "sign": match eigenpair_sign(e) {
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                },
            })
        })
        .collect();
    env(
        "nodal",
        json!({"k": k, "n": n}),
        json!({
            "matrix": json::matrix(&m.matrix),
            "order": order_json(&m.matrix),
            "intersection_form": json::matrix(&m.lattice.gram),
            "hermitian_form": json::matrix(m.form.gram()),
            "eigenpairs": pairs,
        }),
        &[
            "tensor product of the cyclic shift with -1 factors",
            "exact eigenvectors",
        ],
    )
}

fn closure(input: &Path, cap: usize) -> Result<Output> {
    let v = read_json(input)?;
    let mut generators = Vec::new();
    let mut dim = None;
    if let Some(gs) = v.get("generators") {
        for g in gs
            .as_array()
            .ok_or_else(|| Error::InvalidInput("generators must be an array".into()))?
        {
            let m = json::parse_matrix(g)?;
            dim.get_or_insert(m.rows());
            generators.push(m);
        }
    }
    let form_value = v.get("form");
    if let Some(rs) = v.get("reflections") {
        for r in rs
            .as_array()
            .ok_or_else(|| Error::InvalidInput("reflections must be an array".into()))?
        {
            let mut r = r.clone();
            if let (Some(f), Some(o)) = (form_value, r.as_object_mut()) {
                o.entry("form").or_insert_with(|| f.clone());
            }
            let refl = parse_reflection(&r, dim)?;
            dim.get_or_insert(refl.delta().len());
            generators.push(reflection_matrix(&refl));
        }
    }
    let dim = match (dim, form_value) {
        (Some(d), _) => d,
        (None, Some(f)) => json::parse_matrix(f)?.rows(),
        (None, None) => return Err(Error::InvalidInput("no generators given".into())),
    };
    let form = json::parse_form(form_value, dim)?;
    let group = GeneratedGroup::new(form, generators, cap)?;
    let res = group_closure(&group)?;
    env(
        "group-closure",
        json!({"input": input.display().to_string(), "cap": cap}),
        json!({
            "status": serde_json::to_value(res.status).expect("serializable"),
            "field_order": res.field_order,
            "generators": group.generators().len(),
        }),
        &["exact closure enumeration with canonical hashing"],
    )
}

fn record_json(r: &ClassificationRecord) -> Value {
    let mut v = serde_json::to_value(r).expect("serializable");
    v["g_type_label"] = json!(r.g_type.to_string());
    v["gprime_type_label"] = r.gprime_type.map_or(Value::Null, |t| json!(t.to_string()));
    v["verdict_label"] = json!(r.verdict.label());
    v["hodge"] = json::hodge(&r.hodge);
    if let Some(h) = &r.eigen_hodge {
        v["eigen_hodge"] = json::hodge(h);
    }
    v
}

fn record_text(r: &ClassificationRecord) -> String {
    let mut s = format!("(d, n) = ({}, {})\n", r.d, r.n);
    s += &format!("betti: {}\nhodge: {:?}\n", r.betti, r.hodge.values);
    if let Some((a, b)) = r.signature {
        s += &format!("signature: ({}, {})\n", a, b);
    }
    s += &format!("rank: real {}, complex {}\n", r.rank_real, r.rank_complex);
    s += &format!("natural group: {}\n", r.g_type);
    if let (Some(k), Some(i), Some(t)) = (r.chosen_k, r.eigen_index, r.gprime_type) {
        s += &format!("cover: k = {}, i = {}, group {}\n", k, i, t);
    }
    s += &format!("verdict: {}\n", r.verdict.label());
    for reason in &r.reasons {
        s += &format!("  - {}\n", reason);
    }
    s
}

pub const TABLE_COLUMNS: [&str; 12] = [
    "d",
    "n",
    "B",
    "r",
    "s",
    "rank_R",
    "rank_C",
    "g_type",
    "k",
    "i",
    "gprime_type",
    "verdict",
];

/// Classification records for `2 <= d <= d_max`, `0 <= n <= n_max`, sorted by `(d, n)`.
pub fn table_rows(d_max: u32, n_max: u32) -> Result<Vec<ClassificationRecord>> {
    let grid: Vec<(u32, u32)> = (2..=d_max)
        .flat_map(|d| (0..=n_max).map(move |n| (d, n)))
        .collect();
    let mut rows = grid
        .par_iter()
        .map(|&(d, n)| classify(d, n))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.d, r.n));
    Ok(rows)
}

fn table_fields(r: &ClassificationRecord) -> [String; 12] {
    let opt = |o: Option<u32>| o.map_or(String::new(), |v| v.to_string());
    let (rr, ss) = r
        .signature
        .map_or((String::new(), String::new()), |(a, b)| {
            (a.to_string(), b.to_string())
        });
    [
        r.d.to_string(),
        r.n.to_string(),
        r.betti.to_string(),
        rr,
        ss,
        r.rank_real.to_string(),
        r.rank_complex.to_string(),
        r.g_type.to_string(),
        opt(r.chosen_k),
        opt(r.eigen_index),
        r.gprime_type.map_or(String::new(), |t| t.to_string()),
        r.verdict.label(),
    ]
}

pub fn table_csv(rows: &[ClassificationRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TABLE_COLUMNS).expect("in-memory write");
    for r in rows {
        w.write_record(table_fields(r)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn table_row_json(r: &ClassificationRecord) -> Value {
    let mut m = Map::new();
    for (c, f) in TABLE_COLUMNS.iter().zip(table_fields(r)) {
        m.insert((*c).into(), json!(f));
    }
    if let Verdict::KernelFinite { order } = r.verdict {
        m.insert("kernel_order".into(), json!(order));
    }
    Value::Object(m)
}
