use std::path::PathBuf;

use clap::{Parser, Subcommand};
use kspec::free::{DisjunctiveSystem, FreeContext, Model};
use kspec::separation::{is_prime, prime_decomposition};
use kspec::{congruence_closure, FiniteAlgebra, PointSet, Signature, Spectrum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::format::to_file;
use crate::suites::check_all;
use crate::workspace::{Class, Workspace};

#[derive(Debug, Parser)]
#[command(name = "kspec", version, about = "K-spectra of finite algebras")]
pub struct Cli {
    /// Algebra or class file to register before running (repeatable).
    #[arg(long, global = true)]
    pub load: Vec<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write the closed-set lattice as a DOT graph here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Points, closed sets, nilradical and reducedness of Spec A.
    Spec {
        algebra: String,
        #[arg(long)]
        class: String,
    },
    /// Radical of the congruence generated by pairs such as `0=1,2=3`.
    Radical {
        algebra: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        pairs: String,
    },
    /// The reduction A / nil, emitted as an algebra file.
    Reduce {
        algebra: String,
        #[arg(long)]
        class: String,
    },
    /// The free algebra of the variety generated by the class.
    Free {
        #[arg(long)]
        class: String,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Whether every model of the premise satisfies the conclusion.
    Entails {
        #[arg(long)]
        class: String,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long)]
        premise: String,
        #[arg(long)]
        conclusion: String,
    },
    /// Compares V(S1) ⊆ V(S2) in Spec F with K ⊨ S1 → S2.
    Nsatz2 {
        #[arg(long)]
        class: String,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
    /// Irreducible components of Spec A.
    Components {
        algebra: String,
        #[arg(long)]
        class: String,
    },
    /// Prime decomposition of a radical congruence (the nilradical by default).
    PrimeDecomp {
        algebra: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Runs every property suite on A and the class.
    CheckAll {
        algebra: String,
        #[arg(long)]
        class: String,
    },
    /// Prints an algebra in the file format.
    Emit { algebra: String },
    /// Lists registered algebras and classes.
    List,
}

/// What a command produced. `refuted` selects exit code 1.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    pub refuted: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            dot: None,
            refuted: false,
        }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports are plain data")
}

/// `a=b,c=d` as element pairs.
pub fn parse_pairs(text: &str, size: usize) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = item
            .split_once('=')
            .ok_or_else(|| CliError::Argument(format!("pair `{item}` is not of the form a=b")))?;
        let parse = |s: &str| -> Result<usize> {
            let v: usize = s
                .trim()
                .parse()
                .map_err(|_| CliError::Argument(format!("`{s}` is not an element index")))?;
            if v >= size {
                return Err(CliError::Argument(format!(
                    "element {v} out of range for size {size}"
                )));
            }
            Ok(v)
        };
        out.push((parse(a)?, parse(b)?));
    }
    Ok(out)
}

fn signature(class: &Class) -> &Signature {
    class.algebras[0].signature()
}

fn parse_systems(class: &Class, texts: &[&str]) -> Result<Vec<DisjunctiveSystem>> {
    texts
        .iter()
        .map(|t| Ok(DisjunctiveSystem::parse(t, signature(class))?))
        .collect()
}

/// Explicit variables, or every variable of the systems in sorted order.
fn variables(explicit: Option<Vec<String>>, systems: &[DisjunctiveSystem]) -> Vec<String> {
    if let Some(v) = explicit {
        return v;
    }
    let mut vars: Vec<String> = systems
        .iter()
        .flat_map(|s| s.clauses().iter().flatten())
        .flat_map(|e| e.lhs.variables().into_iter().chain(e.rhs.variables()))
        .collect();
    vars.sort();
    vars.dedup();
    vars
}

fn describe_model(class: &Class, vars: &[String], m: &Model) -> String {
    let values: Vec<String> = vars
        .iter()
        .zip(&m.assignment)
        .map(|(v, a)| format!("{v}={a}"))
        .collect();
    format!("{} with {}", class.members[m.member], values.join(", "))
}

fn set_labels(s: &Spectrum, set: &PointSet) -> Vec<String> {
    set.iter().map(|i| s.points()[i].to_string()).collect()
}

pub fn execute(ws: &Workspace, command: &Command) -> Result<Outcome> {
    match command {
        Command::Spec { algebra, class } => {
            let class = ws.class(class)?;
            let s = ws.spectrum(algebra, &class)?;
            let report = s.report()?;
            let mut text = format!("{} points\n", s.len());
            for (i, p) in s.points().iter().enumerate() {
                text += &format!("  p{i} = {p}\n");
            }
            text += &format!(
                "closed sets: {}\ntopological={}\nnil = {}\nreduced={}\n",
                report.closed_sets.len(),
                report.topological,
                report.nilradical,
                report.reduced
            );
            let json = json!({
                "command": "spec",
                "algebra": algebra,
                "class": class.members,
                "report": to_json(&report),
            });
            Ok(Outcome::ok(text, json).with_dot(s.to_dot(algebra)))
        }
        Command::Radical {
            algebra,
            class,
            pairs,
        } => {
            let class = ws.class(class)?;
            let s = ws.spectrum(algebra, &class)?;
            let pairs = parse_pairs(pairs, s.algebra().size())?;
            let theta = congruence_closure(s.algebra(), &pairs)?;
            let rad = s.radical(&theta)?;
            let v = s.v_of(&theta)?;
            let text = format!(
                "congruence = {theta}\nradical = {rad}\nradical_congruence={}\n",
                rad == theta
            );
            let json = json!({
                "command": "radical",
                "algebra": algebra,
                "class": class.members,
                "congruence": to_json(&theta),
                "radical": to_json(&rad),
                "closed_set": to_json(&v),
            });
            Ok(Outcome::ok(text, json).with_dot(s.to_dot(algebra)))
        }
        Command::Reduce { algebra, class } => {
            let class = ws.class(class)?;
            let s = ws.spectrum(algebra, &class)?;
            let q = s.reduction()?;
            let name = format!("{algebra}_red");
            let file = to_file(&name, &q.algebra);
            let text = format!(
                "nil = {}\nreduction has {} elements\n{}",
                s.nilradical(),
                q.algebra.size(),
                crate::format::emit(&name, &q.algebra)
            );
            let json = json!({
                "command": "reduce",
                "algebra": algebra,
                "class": class.members,
                "nilradical": to_json(&s.nilradical()),
                "projection": q.projection.map(),
                "reduction": to_json(&file),
            });
            Ok(Outcome::ok(text, json))
        }
        Command::Free { class, vars } => {
            let class = ws.class(class)?;
            let ctx = FreeContext::new(&class.algebras, vars)?;
            let reps: Vec<String> = ctx
                .free
                .representatives()
                .iter()
                .map(|t| t.to_string())
                .collect();
            let mut text = format!("{} elements\n", ctx.free.size());
            for (i, r) in reps.iter().enumerate() {
                text += &format!("  {i}: {r}\n");
            }
            text += &format!("{} spectrum points\n", ctx.spectrum.len());
            let json = json!({
                "command": "free",
                "class": class.members,
                "variables": vars,
                "size": ctx.free.size(),
                "representatives": reps,
                "algebra": to_json(&to_file("F", ctx.free.algebra())),
                "spectrum": to_json(&ctx.spectrum.report()?),
            });
            Ok(Outcome::ok(text, json).with_dot(ctx.spectrum.to_dot("F")))
        }
        Command::Entails {
            class,
            vars,
            premise,
            conclusion,
        } => {
            let class = ws.class(class)?;
            let systems = parse_systems(&class, &[premise, conclusion])?;
            let vars = variables(vars.clone(), &systems);
            let models = kspec::free::ModelSpace::new(&class.algebras, &vars)?;
            let cex = models.counterexample(&systems[0], &systems[1])?;
            let text = match &cex {
                None => "entailed\n".to_string(),
                Some(m) => format!(
                    "not entailed\ncounterexample: {}\n",
                    describe_model(&class, &vars, m)
                ),
            };
            let json = json!({
                "command": "entails",
                "class": class.members,
                "variables": vars,
                "premise": to_json(&systems[0]),
                "conclusion": to_json(&systems[1]),
                "entailed": cex.is_none(),
                "counterexample": cex.as_ref().map(|m| json!({
                    "member": class.members[m.member],
                    "assignment": m.assignment,
                })),
            });
            Ok(Outcome {
                refuted: cex.is_some(),
                ..Outcome::ok(text, json)
            })
        }
        Command::Nsatz2 {
            class,
            vars,
            s1,
            s2,
        } => {
            let class = ws.class(class)?;
            let systems = parse_systems(&class, &[s1, s2])?;
            let vars = variables(vars.clone(), &systems);
            let ctx = FreeContext::new(&class.algebras, &vars)?;
            let report = ctx.nullstellensatz2(&systems[0], &systems[1])?;
            let v1 = ctx.v_disjunctive(&systems[0])?;
            let v2 = ctx.v_disjunctive(&systems[1])?;
            let consistent = report.agree && report.radical_restatement != Some(false);
            let text = format!(
                "V(S1) ⊆ V(S2): {}\nK ⊨ S1 → S2: {}\n{}\n",
                report.inclusion,
                report.entailed,
                if consistent { "agree" } else { "DISAGREE" }
            );
            let json = json!({
                "command": "nsatz2",
                "class": class.members,
                "variables": vars,
                "s1": to_json(&systems[0]),
                "s2": to_json(&systems[1]),
                "v_s1": set_labels(&ctx.spectrum, &v1),
                "v_s2": set_labels(&ctx.spectrum, &v2),
                "report": to_json(&report),
            });
            Ok(Outcome {
                refuted: !consistent,
                ..Outcome::ok(text, json)
            })
        }
        Command::Components { algebra, class } => {
            let class = ws.class(class)?;
            let s = ws.spectrum(algebra, &class)?;
            let comps = s.zariski().irreducible_components();
            let mut text = format!("{} components\n", comps.len());
            let mut items = Vec::new();
            for c in &comps {
                let psi = s.psi(c)?;
                text += &format!("  {{{}}} ψ = {psi}\n", set_labels(&s, c).join(", "));
                items.push(json!({"points": to_json(c), "psi": to_json(&psi)}));
            }
            let json = json!({
                "command": "components",
                "algebra": algebra,
                "class": class.members,
                "points": to_json(&s.points()),
                "components": items,
            });
            Ok(Outcome::ok(text, json).with_dot(s.to_dot(algebra)))
        }
        Command::PrimeDecomp {
            algebra,
            class,
            pairs,
        } => {
            let class = ws.class(class)?;
            let s = ws.spectrum(algebra, &class)?;
            let theta = match pairs {
                Some(p) => {
                    let pairs = parse_pairs(p, s.algebra().size())?;
                    congruence_closure(s.algebra(), &pairs)?
                }
                None => s.nilradical(),
            };
            let parts = prime_decomposition(&s, &theta)?;
            let mut text = format!("{theta} = meet of {} primes\n", parts.len());
            for p in &parts {
                text += &format!("  {p} prime={}\n", is_prime(&s, p)?);
            }
            let json = json!({
                "command": "prime-decomp",
                "algebra": algebra,
                "class": class.members,
                "congruence": to_json(&theta),
                "primes": to_json(&parts),
            });
            Ok(Outcome::ok(text, json).with_dot(s.to_dot(algebra)))
        }
        Command::CheckAll { algebra, class } => {
            let class = ws.class(class)?;
            let report = check_all(ws, algebra, &class)?;
            let mut text = String::new();
            for s in &report.suites {
                text += &format!(
                    "{} {:<22} {} checks{}\n",
                    if s.passed { "ok  " } else { "FAIL" },
                    s.name,
                    s.checked,
                    s.counterexample
                        .as_ref()
                        .map(|c| format!(": {c}"))
                        .unwrap_or_default()
                );
            }
            let failed = report.suites.iter().filter(|s| !s.passed).count();
            if failed == 0 {
                text += &format!("{} suites passed\n", report.suites.len());
            } else {
                text += &format!("{failed} of {} suites failed\n", report.suites.len());
            }
            Ok(Outcome {
                refuted: failed > 0,
                ..Outcome::ok(text, to_json(&report))
            })
        }
        Command::Emit { algebra } => {
            let alg: &FiniteAlgebra = ws.algebra(algebra)?;
            Ok(Outcome::ok(
                crate::format::emit(algebra, alg),
                to_json(&to_file(algebra, alg)),
            ))
        }
        Command::List => {
            let algebras: Vec<&str> = ws.algebra_names().collect();
            let classes: Vec<&str> = ws.class_names().collect();
            let text = format!(
                "algebras: {}\nclasses: {}\n",
                algebras.join(", "),
                classes.join(", ")
            );
            Ok(Outcome::ok(
                text,
                json!({"algebras": algebras, "classes": classes}),
            ))
        }
    }
}
