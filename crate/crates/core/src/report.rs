//! The `vsa` command line: argument parsing, input resolution and JSON
//! reports.

use std::path::Path;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraSpec, Monomial, StateVector};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hopf::action::sweedler_search;
use crate::hopf::{Action, ActionSpec, Grouplikes, HopfSpec, IdealMode};
use crate::injectivity::{InjectivityCertificate, Status};
use crate::scalar::{Parity, Scalar, Weight};
use crate::vertex::Violation;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code for a clean run.
pub const EXIT_CLEAN: i32 = 0;
/// Exit code when a check found violations.
pub const EXIT_VIOLATIONS: i32 = 1;
/// Exit code when the input could not be checked.
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub violations: Vec<Value>,
    pub version: String,
}

impl Report {
    /// Renders with `indent` spaces per level, or compactly for 0.
    pub fn render(&self, indent: usize) -> String {
        if indent == 0 {
            return serde_json::to_string(self).expect("report serializes");
        }
        let pad = vec![b' '; indent];
        let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
        self.serialize(&mut ser).expect("report serializes");
        String::from_utf8(buf).expect("utf-8")
    }
}

#[derive(Parser, Debug)]
#[command(name = "vsa", version, about = "Exact computations with vertex superalgebras and Hopf actions")]
struct Cli {
    /// spaces per indentation level in the JSON report (0 for one line)
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
    /// seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// largest extra output window for injectivity certificates, in steps of 1/T
    #[arg(long, global = true)]
    max_window: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// graded dimensions
    Dims {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        up_to: Weight,
    },
    /// the n-th product u_(n) v
    Product {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// axiom checks
    #[command(subcommand)]
    Check(CheckCommand),
    /// certificate that gr_E(V) is free on the given generators
    PbwCertify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        up_to: Weight,
        /// `id:parity:degree,...`; defaults to the strong generators
        #[arg(long)]
        h: Option<String>,
    },
    /// Y(z)-injectivity on V_{≤N} ⊗ V_{≤N}
    Injectivity {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        cutoff: Weight,
        #[arg(long)]
        emit_kernel: bool,
    },
    /// Y(z)-injectivity on the subalgebra generated by the given states
    InjectivitySub {
        #[arg(long)]
        algebra: String,
        #[arg(long = "generator", required = true)]
        generators: Vec<String>,
        #[arg(long)]
        cutoff: Weight,
    },
    /// Hopf algebras and their actions
    #[command(subcommand)]
    Hopf(HopfCommand),
    /// built-in fixtures
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    algebra: String,
    /// bound on the total weight of the basis states involved
    #[arg(long, default_value = "3")]
    max_weight: Weight,
    /// mode radius for jacobi; extra output weight for skew
    #[arg(long, default_value_t = 4)]
    window: i64,
    /// check only this many state tuples, drawn with --seed
    #[arg(long)]
    sample: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// the Borcherds identity on basis triples
    Jacobi(CheckArgs),
    /// skew symmetry on basis pairs
    Skew(CheckArgs),
    /// the translation axiom
    Translation(CheckArgs),
    /// supercommutativity of gr_E(V)
    GrCommutative {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "3")]
        up_to: Weight,
    },
}

#[derive(Args, Debug)]
struct ActionArgs {
    /// fixture name or JSON file
    #[arg(long)]
    action: String,
    /// defaults to the action's cutoff
    #[arg(long)]
    up_to: Option<Weight>,
}

#[derive(Subcommand, Debug)]
enum HopfCommand {
    /// the Hopf algebra axioms
    Verify {
        #[arg(long)]
        hopf: String,
    },
    /// cocommutativity
    Cocomm {
        #[arg(long)]
        hopf: String,
    },
    /// ideal conditions on a span, rows separated by `;`
    Ideal {
        #[arg(long)]
        hopf: String,
        #[arg(long, allow_hyphen_values = true)]
        span: String,
        #[arg(long, value_enum, default_value = "hopf")]
        mode: ModeArg,
    },
    /// a basis of grouplike elements
    Grouplikes {
        #[arg(long)]
        hopf: String,
    },
    /// the module vertex superalgebra conditions
    Action(ActionArgs),
    /// the annihilator of the truncation and its ideal properties
    Kernel(ActionArgs),
    /// fixed points and their closure
    Fixed(ActionArgs),
    /// equivariance of the super swap on V ⊗ V
    Tau(ActionArgs),
    /// whether a faithful action forces Δ = swap∘Δ
    CocommutativityFromAction(ActionArgs),
    /// exhaustive search for faithful Sweedler actions
    SweedlerSearch {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "1")]
        cutoff: Weight,
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        entries: String,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Bialgebra,
    Hopf,
}

#[derive(Subcommand, Debug)]
enum FixturesCommand {
    List,
}

struct Outcome {
    inputs: Value,
    results: Value,
    violations: Vec<Value>,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn is_file(src: &str) -> bool {
    src.ends_with(".json") || Path::new(src).is_file()
}

/// A fixture name or a JSON file; the echo is the name or the parsed spec.
fn load_algebra(src: &str) -> Result<(Algebra, Value)> {
    if is_file(src) {
        let v = read_json(Path::new(src))?;
        let spec: AlgebraSpec = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        let echo = serde_json::to_value(&spec).expect("spec serializes");
        Ok((Algebra::new(&spec)?, echo))
    } else {
        Ok((fixtures::algebra(src)?, json!(src)))
    }
}

fn load_hopf(src: &str) -> Result<(HopfSpec, Value)> {
    if is_file(src) {
        let h = HopfSpec::from_json(&read_json(Path::new(src))?)?;
        let echo = h.to_json();
        Ok((h, echo))
    } else {
        Ok((fixtures::hopf(src)?, json!(src)))
    }
}

fn load_action(src: &str) -> Result<(Action, Value)> {
    let (spec, echo) = if is_file(src) {
        let s = ActionSpec::from_json(&read_json(Path::new(src))?)?;
        let echo = s.to_json();
        (s, echo)
    } else {
        (fixtures::action_spec(src)?, json!(src))
    };
    Ok((Action::new(&spec)?, echo))
}

fn weight_json(w: Weight) -> Value {
    json!(w.to_string())
}

fn violation_json(alg: &Algebra, check: &str, v: &Violation, states: &[&Monomial]) -> Value {
    let mut all: Vec<String> = states.iter().map(|m| alg.format_monomial(m)).collect();
    all.extend(v.states.iter().map(|m| alg.format_monomial(m)));
    json!({
        "check": check,
        "states": all,
        "indices": v.indices,
        "difference": alg.state_json(&v.difference),
    })
}

/// Keeps `k` items chosen by the seeded generator, in their original order.
fn sample<T: Clone>(items: Vec<T>, k: Option<usize>, seed: u64) -> Vec<T> {
    match k {
        Some(k) if k < items.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut idx = rand::seq::index::sample(&mut rng, items.len(), k).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| items[i].clone()).collect()
        }
        _ => items,
    }
}

fn check_inputs(name: &str, a: &CheckArgs, echo: Value, seed: u64) -> Value {
    let mut v = json!({
        "check": name,
        "algebra": echo,
        "max_weight": weight_json(a.max_weight),
        "window": a.window,
    });
    if let Some(k) = a.sample {
        v["sample"] = json!(k);
        v["seed"] = json!(seed);
    }
    v
}

fn run_check(cmd: &CheckCommand, seed: u64) -> Result<Outcome> {
    match cmd {
        CheckCommand::Jacobi(a) => {
            let (alg, echo) = load_algebra(&a.algebra)?;
            let basis = alg.basis_up_to(a.max_weight);
            let mut triples = Vec::new();
            for u in &basis {
                for v in &basis {
                    for w in &basis {
                        if u.weight() + v.weight() + w.weight() <= a.max_weight {
                            triples.push((u, v, w));
                        }
                    }
                }
            }
            let triples = sample(triples, a.sample, seed);
            let r = a.window.abs();
            let mut violations = Vec::new();
            for (u, v, w) in &triples {
                let found = alg.check_borcherds(
                    &StateVector::basis((*u).clone()),
                    &StateVector::basis((*v).clone()),
                    &StateVector::basis((*w).clone()),
                    -r..=r,
                    -r..=r,
                    -r..=r,
                );
                violations.extend(found.iter().map(|x| violation_json(&alg, "jacobi", x, &[u, v, w])));
            }
            Ok(Outcome {
                inputs: check_inputs("jacobi", a, echo, seed),
                results: json!({"triples": triples.len(), "index_triples_per_state_triple": (2 * r + 1).pow(3)}),
                violations,
            })
        }
        CheckCommand::Skew(a) => {
            let (alg, echo) = load_algebra(&a.algebra)?;
            let basis = alg.basis_up_to(a.max_weight);
            let mut pairs = Vec::new();
            for u in &basis {
                for v in &basis {
                    if u.weight() + v.weight() <= a.max_weight {
                        pairs.push((u, v));
                    }
                }
            }
            let pairs = sample(pairs, a.sample, seed);
            let mut violations = Vec::new();
            for (u, v) in &pairs {
                let cutoff = u.weight() + v.weight() + a.window.max(0);
                let found = alg.check_skew_symmetry(
                    &StateVector::basis((*u).clone()),
                    &StateVector::basis((*v).clone()),
                    cutoff,
                );
                violations.extend(found.iter().map(|x| violation_json(&alg, "skew", x, &[u, v])));
            }
            Ok(Outcome {
                inputs: check_inputs("skew", a, echo, seed),
                results: json!({"pairs": pairs.len()}),
                violations,
            })
        }
        CheckCommand::Translation(a) => {
            let (alg, echo) = load_algebra(&a.algebra)?;
            let basis = sample(alg.basis_up_to(a.max_weight), a.sample, seed);
            let mut violations = Vec::new();
            for v in &basis {
                let found = alg.check_translation(&StateVector::basis(v.clone()), a.max_weight);
                violations.extend(found.iter().map(|x| violation_json(&alg, "translation", x, &[v])));
            }
            Ok(Outcome {
                inputs: check_inputs("translation", a, echo, seed),
                results: json!({"states": basis.len()}),
                violations,
            })
        }
        CheckCommand::GrCommutative { algebra, up_to } => {
            let (alg, echo) = load_algebra(algebra)?;
            let found = alg.check_gr_commutative(*up_to);
            Ok(Outcome {
                inputs: json!({"check": "gr-commutative", "algebra": echo, "up_to": weight_json(*up_to)}),
                results: json!({"up_to": weight_json(*up_to)}),
                violations: found
                    .iter()
                    .map(|x| violation_json(&alg, "gr-commutative", x, &[]))
                    .collect(),
            })
        }
    }
}

fn parse_h(src: &str) -> Result<Vec<(String, Parity, Weight)>> {
    src.split(',')
        .map(|item| {
            let parts: Vec<&str> = item.trim().split(':').collect();
            let [id, p, d] = parts.as_slice() else {
                return Err(Error::Parse(format!("expected id:parity:degree, got {item:?}")));
            };
            let parity = match *p {
                "even" | "0" => Parity::Even,
                "odd" | "1" => Parity::Odd,
                other => return Err(Error::Parse(format!("unknown parity {other:?}"))),
            };
            let degree: Weight = d.parse()?;
            Ok((id.to_string(), parity, degree))
        })
        .collect()
}

fn certificate_json(alg: &Algebra, c: &InjectivityCertificate, emit_kernel: bool) -> Value {
    let mut v = json!({
        "status": c.status,
        "domain_cutoff": weight_json(c.domain_cutoff),
        "window_extra": c.window_extra,
        "max_window": c.max_window,
        "output_cutoff": weight_json(c.output_cutoff),
        "domain_dim": c.domain_dim,
        "rank": c.rank,
        "domain": c.domain.iter().map(|s| alg.format_state(s)).collect::<Vec<_>>(),
    });
    if let Some(z) = c.nonneg_products_vanish {
        v["nonneg_products_vanish"] = json!(z);
    }
    if emit_kernel {
        let ks: Vec<Vec<Value>> = c
            .kernel_candidates
            .iter()
            .map(|k| {
                k.iter()
                    .map(|((i, j), x)| {
                        json!({
                            "left": alg.format_state(&c.domain[*i]),
                            "right": alg.format_state(&c.domain[*j]),
                            "c": x,
                        })
                    })
                    .collect()
            })
            .collect();
        v["kernel_candidates"] = json!(ks);
    }
    v
}

fn undetermined(c: &InjectivityCertificate) -> Vec<Value> {
    if c.status == Status::Undetermined {
        vec![json!({"check": "injectivity", "status": "undetermined", "rank": c.rank, "domain_dim": c.domain_dim})]
    } else {
        Vec::new()
    }
}

fn parse_span(src: &str, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let mut rows = Vec::new();
    for row in src.split(';').map(str::trim).filter(|r| !r.is_empty()) {
        let v: Vec<Scalar> = row
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<_>>()?;
        if v.len() != n {
            return Err(Error::Dimension(format!("span row {row:?} has {} entries, expected {n}", v.len())));
        }
        rows.push(v);
    }
    Ok(rows)
}

fn hopf_violations(vs: &[crate::hopf::HopfViolation]) -> Vec<Value> {
    vs.iter().map(|v| serde_json::to_value(v).expect("violation")).collect()
}

fn action_violations(vs: &[crate::hopf::ActionViolation]) -> Vec<Value> {
    vs.iter().map(|v| serde_json::to_value(v).expect("violation")).collect()
}

fn action_inputs(echo: Value, up_to: Weight) -> Value {
    json!({"action": echo, "up_to": weight_json(up_to)})
}

fn run_hopf(cmd: &HopfCommand) -> Result<Outcome> {
    let action_of = |a: &ActionArgs| -> Result<(Action, Value, Weight)> {
        let (act, echo) = load_action(&a.action)?;
        let up_to = a.up_to.unwrap_or(act.cutoff);
        Ok((act, echo, up_to))
    };
    match cmd {
        HopfCommand::Verify { hopf } => {
            let (h, echo) = load_hopf(hopf)?;
            let vs = h.verify()?;
            Ok(Outcome {
                inputs: json!({"hopf": echo}),
                results: json!({"name": h.name, "dim": h.dim(), "valid": vs.is_empty()}),
                violations: hopf_violations(&vs),
            })
        }
        HopfCommand::Cocomm { hopf } => {
            let (h, echo) = load_hopf(hopf)?;
            h.check_dimensions()?;
            let w = h.cocommutativity_witness();
            let mut results = json!({"cocommutative": w.is_none()});
            let mut violations = Vec::new();
            if let Some(i) = w {
                results["witness"] = json!(h.basis[i]);
                violations.push(json!({"axiom": "cocommutativity", "witness": [h.basis[i]]}));
            }
            Ok(Outcome {
                inputs: json!({"hopf": echo}),
                results,
                violations,
            })
        }
        HopfCommand::Ideal { hopf, span, mode } => {
            let (h, echo) = load_hopf(hopf)?;
            let rows = parse_span(span, h.dim())?;
            let mode = match mode {
                ModeArg::Bialgebra => IdealMode::Bialgebra,
                ModeArg::Hopf => IdealMode::Hopf,
            };
            let vs = h.verify_ideal(&rows, mode)?;
            Ok(Outcome {
                inputs: json!({"hopf": echo, "span": rows.iter().map(|r| h.format_element(r)).collect::<Vec<_>>(), "mode": mode}),
                results: json!({"ideal": vs.is_empty()}),
                violations: hopf_violations(&vs),
            })
        }
        HopfCommand::Grouplikes { hopf } => {
            let (h, echo) = load_hopf(hopf)?;
            let results = match h.find_grouplikes()? {
                Grouplikes::Found(gs) => json!({
                    "status": "found",
                    "group_algebra": true,
                    "grouplikes": gs.iter().map(|g| h.format_element(g)).collect::<Vec<_>>(),
                }),
                Grouplikes::Undecided { rational } => json!({
                    "status": "undecided",
                    "rational_grouplikes": rational.iter().map(|g| h.format_element(g)).collect::<Vec<_>>(),
                }),
            };
            Ok(Outcome {
                inputs: json!({"hopf": echo}),
                results,
                violations: Vec::new(),
            })
        }
        HopfCommand::Action(a) => {
            let (act, echo, up_to) = action_of(a)?;
            let vs = act.verify(up_to)?;
            Ok(Outcome {
                inputs: action_inputs(echo, up_to),
                results: json!({"valid": vs.is_empty()}),
                violations: action_violations(&vs),
            })
        }
        HopfCommand::Kernel(a) => {
            let (act, echo, up_to) = action_of(a)?;
            let k = act.kernel(up_to)?;
            let bialg = act.hopf.verify_ideal(&k, IdealMode::Bialgebra)?;
            let hopf = act.hopf.verify_ideal(&k, IdealMode::Hopf)?;
            let faith = act.faithfulness(up_to)?;
            let mut violations = hopf_violations(&bialg);
            violations.extend(hopf_violations(&hopf));
            Ok(Outcome {
                inputs: action_inputs(echo, up_to),
                results: json!({
                    "kernel_dim": k.len(),
                    "kernel": k.iter().map(|v| act.hopf.format_element(v)).collect::<Vec<_>>(),
                    "bialgebra_ideal": bialg.is_empty(),
                    "hopf_ideal": hopf.is_empty(),
                    "faithfulness": faith,
                }),
                violations,
            })
        }
        HopfCommand::Fixed(a) => {
            let (act, echo, up_to) = action_of(a)?;
            let mut pieces = Vec::new();
            for w in act.weights().filter(|w| *w <= up_to).collect::<Vec<_>>() {
                let fixed = act.fixed_points(w)?;
                pieces.push(json!({
                    "weight": weight_json(w),
                    "dim": fixed.len(),
                    "basis": fixed.iter().map(|s| act.algebra.format_state(s)).collect::<Vec<_>>(),
                }));
            }
            let vs = act.check_fixed_point_closure(up_to)?;
            Ok(Outcome {
                inputs: action_inputs(echo, up_to),
                results: json!({"fixed_points": pieces}),
                violations: action_violations(&vs),
            })
        }
        HopfCommand::Tau(a) => {
            let (act, echo, up_to) = action_of(a)?;
            let vs = act.check_tau_equivariance(up_to)?;
            Ok(Outcome {
                inputs: action_inputs(echo, up_to),
                results: json!({"equivariant": vs.is_empty()}),
                violations: action_violations(&vs),
            })
        }
        HopfCommand::CocommutativityFromAction(a) => {
            let (act, echo, up_to) = action_of(a)?;
            let verdict = act.cocommutativity_from_action(up_to)?;
            let violations = match &verdict {
                crate::hopf::CocommutativityVerdict::ConsistentWithGroupAlgebra => Vec::new(),
                other => vec![serde_json::to_value(other).expect("verdict")],
            };
            Ok(Outcome {
                inputs: action_inputs(echo, up_to),
                results: serde_json::to_value(&verdict).expect("verdict"),
                violations,
            })
        }
        HopfCommand::SweedlerSearch {
            algebra,
            cutoff,
            entries,
        } => {
            let values: Vec<i64> = entries
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad entry {x:?}"))))
                .collect::<Result<_>>()?;
            let r = sweedler_search(algebra, *cutoff, &values)?;
            let violations = if r.valid_and_faithful > 0 {
                vec![json!({"check": "sweedler-search", "valid_and_faithful": r.valid_and_faithful})]
            } else {
                Vec::new()
            };
            Ok(Outcome {
                inputs: json!({"algebra": algebra, "cutoff": weight_json(*cutoff), "entries": values}),
                results: serde_json::to_value(&r).expect("search"),
                violations,
            })
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Dims { algebra, up_to } => {
            let (alg, echo) = load_algebra(algebra)?;
            if up_to.is_negative() || !up_to.on_lattice(alg.t()) {
                return Err(Error::Lattice {
                    weight: up_to.to_string(),
                    t: alg.t(),
                });
            }
            Ok(Outcome {
                inputs: json!({"algebra": echo, "up_to": weight_json(*up_to)}),
                results: json!({"t": alg.t(), "dims": alg.graded_dimension(*up_to)}),
                violations: Vec::new(),
            })
        }
        Command::Product { algebra, u, v, n } => {
            let (alg, echo) = load_algebra(algebra)?;
            let us = alg.parse_state(u)?;
            let vs = alg.parse_state(v)?;
            let p = alg.nth_product(&us, *n, &vs);
            Ok(Outcome {
                inputs: json!({
                    "algebra": echo,
                    "u": alg.format_state(&us),
                    "v": alg.format_state(&vs),
                    "n": n,
                }),
                results: json!({"product": alg.state_json(&p), "formatted": alg.format_state(&p)}),
                violations: Vec::new(),
            })
        }
        Command::Check(c) => run_check(c, cli.seed),
        Command::PbwCertify { algebra, up_to, h } => {
            let (alg, echo) = load_algebra(algebra)?;
            let h = match h {
                Some(src) => parse_h(src)?,
                None => alg
                    .generators()
                    .iter()
                    .map(|g| (g.id.clone(), g.parity, g.degree))
                    .collect(),
            };
            let cert = alg.pbw_certificate(&h, *up_to)?;
            let mut violations = Vec::new();
            for (name, s) in [("dims", &cert.dims), ("products", &cert.products), ("derivation", &cert.derivation)] {
                if !s.passed {
                    violations.push(json!({"check": name, "witness": s.witness}));
                }
            }
            Ok(Outcome {
                inputs: json!({
                    "algebra": echo,
                    "up_to": weight_json(*up_to),
                    "h": h.iter().map(|(id, p, d)| format!("{id}:{p}:{d}")).collect::<Vec<_>>(),
                }),
                results: serde_json::to_value(&cert).expect("certificate"),
                violations,
            })
        }
        Command::Injectivity {
            algebra,
            cutoff,
            emit_kernel,
        } => {
            let (alg, echo) = load_algebra(algebra)?;
            let c = alg.certify(*cutoff, cli.max_window)?;
            Ok(Outcome {
                inputs: json!({"algebra": echo, "cutoff": weight_json(*cutoff), "max_window": cli.max_window}),
                results: certificate_json(&alg, &c, *emit_kernel),
                violations: undetermined(&c),
            })
        }
        Command::InjectivitySub {
            algebra,
            generators,
            cutoff,
        } => {
            let (alg, echo) = load_algebra(algebra)?;
            let gens: Vec<StateVector> = generators.iter().map(|g| alg.parse_state(g)).collect::<Result<_>>()?;
            let c = alg.certify_subalgebra(&gens, *cutoff, cli.max_window)?;
            Ok(Outcome {
                inputs: json!({
                    "algebra": echo,
                    "generators": gens.iter().map(|g| alg.format_state(g)).collect::<Vec<_>>(),
                    "cutoff": weight_json(*cutoff),
                    "max_window": cli.max_window,
                }),
                results: certificate_json(&alg, &c, false),
                violations: undetermined(&c),
            })
        }
        Command::Hopf(h) => run_hopf(h),
        Command::Fixtures(FixturesCommand::List) => Ok(Outcome {
            inputs: json!({}),
            results: json!({
                "algebras": fixtures::ALGEBRA_NAMES,
                "hopf": fixtures::HOPF_NAMES,
                "actions": fixtures::ACTION_NAMES,
            }),
            violations: Vec::new(),
        }),
    }
}

fn command_name(cli: &Cli) -> String {
    let s = match &cli.command {
        Command::Dims { .. } => "dims",
        Command::Product { .. } => "product",
        Command::Check(c) => match c {
            CheckCommand::Jacobi(_) => "check jacobi",
            CheckCommand::Skew(_) => "check skew",
            CheckCommand::Translation(_) => "check translation",
            CheckCommand::GrCommutative { .. } => "check gr-commutative",
        },
        Command::PbwCertify { .. } => "pbw-certify",
        Command::Injectivity { .. } => "injectivity",
        Command::InjectivitySub { .. } => "injectivity-sub",
        Command::Hopf(h) => match h {
            HopfCommand::Verify { .. } => "hopf verify",
            HopfCommand::Cocomm { .. } => "hopf cocomm",
            HopfCommand::Ideal { .. } => "hopf ideal",
            HopfCommand::Grouplikes { .. } => "hopf grouplikes",
            HopfCommand::Action(_) => "hopf action",
            HopfCommand::Kernel(_) => "hopf kernel",
            HopfCommand::Fixed(_) => "hopf fixed",
            HopfCommand::Tau(_) => "hopf tau",
            HopfCommand::CocommutativityFromAction(_) => "hopf cocommutativity-from-action",
            HopfCommand::SweedlerSearch { .. } => "hopf sweedler-search",
        },
        Command::Fixtures(_) => "fixtures list",
    };
    s.to_string()
}

/// Runs one command. Returns the exit code and the text for standard
/// output: the rendered report, or help and version text.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (EXIT_CLEAN, e.to_string());
            }
            let report = Report {
                command: String::new(),
                inputs: json!({}),
                results: json!({"error": e.kind().to_string(), "message": e.to_string()}),
                violations: Vec::new(),
                version: VERSION.into(),
            };
            return (EXIT_ERROR, report.render(2));
        }
    };
    let (code, report) = execute(&cli);
    (code, report.render(cli.json_indent))
}

fn execute(cli: &Cli) -> (i32, Report) {
    let command = command_name(cli);
    match dispatch(cli) {
        Ok(o) => {
            let code = if o.violations.is_empty() {
                EXIT_CLEAN
            } else {
                EXIT_VIOLATIONS
            };
            (
                code,
                Report {
                    command,
                    inputs: o.inputs,
                    results: o.results,
                    violations: o.violations,
                    version: VERSION.into(),
                },
            )
        }
        Err(e) => (
            EXIT_ERROR,
            Report {
                command,
                inputs: json!({}),
                results: json!({"error": e.to_string()}),
                violations: Vec::new(),
                version: VERSION.into(),
            },
        ),
    }
}

/// Like [`run`] but returns the parsed report; help and version requests
/// and argument errors give `None` in place of a report.
pub fn run_report<I, T>(argv: I) -> (i32, Option<Report>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let (code, r) = execute(&cli);
            (code, Some(r))
        }
        Err(e) => {
            use clap::error::ErrorKind;
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                EXIT_CLEAN
            } else {
                EXIT_ERROR
            };
            (code, None)
        }
    }
}
