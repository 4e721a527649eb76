//! Command-line front end.
//!
//! Every verb has a stable exit-code contract: `0` when the command
//! succeeds (or the queried property holds), `1` when violations are found
//! or the property fails, `2` for usage and parse errors.  Models are
//! validated on load and all violations are reported.
//!
//! `--model` accepts a model file path or `builtin:<id>` with ids
//! `chain<n>`, `div<n>`, `demo-band` and `cs`.  Ladder file arguments
//! accept `-` for standard input.

use std::path::Path;
use std::sync::Arc;

use crate::error::Error;
use crate::families::{embedding_check, in_family, EmbedConstruct, FamilyTag};
use crate::forms::{b_upper_form, component_form};
use crate::ladder::{enumerate_phi, parse_ladder, Ladder};
use crate::model::{builtin_model, parse_model, KernelModel};
use crate::relations::{related, RelationTag};
use crate::theta::{LambdaIndex, Letter, Word};

/// Captured result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

const USAGE: &str = "\
usage: ladderlab <verb> [args] [--model <path|builtin:id>] [--depth <n>] [--format <text|records>]

verbs:
  validate-model <model>                     report model axiom violations
  validate-ladder <ladder> [--conditions phi|q]   check the ladder conditions
  eval <ladder> [word]                       value at a word, or re-emit the ladder
  join <a> <b>                               pointwise join, emitted as a ladder file
  meet <a> <b>                               pointwise meet
  relate <K|Tl|Tr|Kl|Kr|B> <a> <b>           print true/false
  component-form <ladder>                    symbolic component form
  b-upper <ladder>                           band-interval upper bound form
  enumerate --depth <n>                      all condition-clean ladders
  family <bo|bo-bar|blo|blo-bar> <ladder>    family membership report
  embed pk <P> <U> | qk <Q> <U> | lro <U>    construct an embedding ladder
  embed check pk <P> | qk <Q> | lro          verify an embedding construction
  convert <word|(i,m)>                       translate between word and index forms
  hasse [--depth <n>]                        DOT diagram of the word poset (or, with
                                             --model, of the model carrier)

builtin models: chain<n>, div<n>, demo-band, cs.  Ladder arguments accept '-' for stdin.
";

struct Args {
    verb: String,
    positional: Vec<String>,
    model: Option<String>,
    depth: Option<usize>,
    format: String,
    conditions: String,
}

type Fail = (i32, String);

fn parse_args(argv: &[String]) -> Result<Args, Fail> {
    let mut it = argv.iter();
    let Some(verb) = it.next() else {
        return Err((2, USAGE.to_string()));
    };
    let mut args = Args {
        verb: verb.clone(),
        positional: Vec::new(),
        model: None,
        depth: None,
        format: "text".to_string(),
        conditions: "phi".to_string(),
    };
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--model" | "--depth" | "--format" | "--conditions" => {
                let Some(value) = it.next() else {
                    return Err((2, format!("{arg} needs a value\n")));
                };
                match arg.as_str() {
                    "--model" => args.model = Some(value.clone()),
                    "--depth" => {
                        args.depth = Some(
                            value
                                .parse()
                                .map_err(|_| (2, format!("invalid depth '{value}'\n")))?,
                        )
                    }
                    "--format" => args.format = value.clone(),
                    _ => args.conditions = value.clone(),
                }
            }
            flag if flag.starts_with("--") => {
                return Err((2, format!("unknown flag '{flag}'\n{USAGE}")));
            }
            _ => args.positional.push(arg.clone()),
        }
    }
    Ok(args)
}

fn load_model(spec: &str) -> Result<Arc<KernelModel>, Fail> {
    let model = if let Some(id) = spec.strip_prefix("builtin:") {
        builtin_model(id).map_err(|e| (2, format!("{e}\n")))?
    } else {
        let text = std::fs::read_to_string(spec).map_err(|e| (2, format!("{spec}: {e}\n")))?;
        let name = Path::new(spec)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(spec)
            .to_string();
        parse_model(&name, &text)
            .and_then(|s| s.build())
            .map_err(|e| (2, format!("{e}\n")))?
    };
    Ok(Arc::new(model))
}

/// Loads a model and refuses to compute with an invalid one.
fn load_valid_model(args: &Args) -> Result<Arc<KernelModel>, Fail> {
    let Some(spec) = &args.model else {
        return Err((2, "this verb needs --model\n".to_string()));
    };
    let model = load_model(spec)?;
    if !model.is_valid() {
        let mut msg = format!("model '{}' is invalid:\n", model.name());
        for v in model.validate() {
            msg.push_str(&format!("{v}\n"));
        }
        return Err((1, msg));
    }
    Ok(model)
}

fn load_ladder(model: &Arc<KernelModel>, path: &str, stdin: &str) -> Result<Ladder, Fail> {
    let (name, text) = if path == "-" {
        ("<stdin>".to_string(), stdin.to_string())
    } else {
        let text = std::fs::read_to_string(path).map_err(|e| (2, format!("{path}: {e}\n")))?;
        (path.to_string(), text)
    };
    parse_ladder(model, &name, &text).map_err(|e| (2, format!("{e}\n")))
}

fn positional<'a>(args: &'a Args, index: usize, what: &str) -> Result<&'a str, Fail> {
    args.positional
        .get(index)
        .map(|s| s.as_str())
        .ok_or_else(|| (2, format!("missing {what}\n{USAGE}")))
}

fn one_line(l: &Ladder) -> String {
    let m = l.model();
    let mut parts = vec![format!("e={}", m.ext_name(l.root()))];
    for k in 1..=l.depth() {
        for tail in [Letter::Tl, Letter::Tr] {
            let w = Word::with_tail(k, tail);
            parts.push(format!("{}={}", w, m.ext_name(l.evaluate(&w))));
        }
    }
    let (tl, tr) = l.tail_values();
    parts.push(format!("tailL={}", m.ext_name(tl)));
    parts.push(format!("tailR={}", m.ext_name(tr)));
    parts.join(" ")
}

fn theta_hasse(depth: usize) -> String {
    let mut out = String::from("digraph theta {\n  rankdir=BT;\n");
    out.push_str("  \"e\";\n");
    for k in 1..=depth {
        for tail in [Letter::Tl, Letter::Tr] {
            out.push_str(&format!("  \"{}\";\n", Word::with_tail(k, tail)));
        }
    }
    for k in 1..=depth {
        for tail in [Letter::Tl, Letter::Tr] {
            let child = Word::with_tail(k, tail);
            if k == 1 {
                out.push_str(&format!("  \"{child}\" -> \"e\";\n"));
            } else {
                for up in [Letter::Tl, Letter::Tr] {
                    out.push_str(&format!(
                        "  \"{child}\" -> \"{}\";\n",
                        Word::with_tail(k - 1, up)
                    ));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

fn carrier_hasse(m: &KernelModel) -> String {
    let mut out = String::from("digraph carrier {\n  rankdir=BT;\n");
    let mut names: Vec<&str> = (0..m.carrier_len()).map(|v| m.elem_name(v)).collect();
    names.sort_unstable();
    for name in &names {
        out.push_str(&format!("  \"{name}\";\n"));
    }
    let mut edges = Vec::new();
    for a in 0..m.carrier_len() {
        for b in 0..m.carrier_len() {
            if a == b || !m.leq_ids(a, b) {
                continue;
            }
            let covered = (0..m.carrier_len())
                .all(|c| c == a || c == b || !(m.leq_ids(a, c) && m.leq_ids(c, b)));
            if covered {
                edges.push((m.elem_name(a), m.elem_name(b)));
            }
        }
    }
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
    }
    out.push_str("}\n");
    out
}

/// Runs one command; never panics on user input.
pub fn run(argv: &[String], stdin: &str) -> CliOutcome {
    match dispatch(argv, stdin) {
        Ok((code, stdout)) => CliOutcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err((code, stderr)) => CliOutcome {
            code,
            stdout: String::new(),
            stderr,
        },
    }
}

fn dispatch(argv: &[String], stdin: &str) -> Result<(i32, String), Fail> {
    let args = parse_args(argv)?;
    match args.verb.as_str() {
        "help" | "--help" => Ok((0, USAGE.to_string())),
        "validate-model" => {
            let spec = args
                .model
                .as_deref()
                .map(Ok)
                .unwrap_or_else(|| positional(&args, 0, "model path"))?;
            let model = load_model(spec)?;
            let mut out = String::new();
            for v in model.validate() {
                out.push_str(&format!("{v}\n"));
            }
            if model.is_valid() {
                out.push_str(&format!("model '{}' is valid\n", model.name()));
                Ok((0, out))
            } else {
                Ok((1, out))
            }
        }
        "validate-ladder" => {
            let model = load_valid_model(&args)?;
            let ladder = load_ladder(&model, positional(&args, 0, "ladder file")?, stdin)?;
            let report = match args.conditions.as_str() {
                "phi" => ladder.check_phi(),
                "q" => ladder.check_q(),
                other => return Err((2, format!("unknown condition set '{other}'\n"))),
            };
            if report.is_clean() {
                Ok((0, "clean\n".to_string()))
            } else {
                Ok((1, report.to_string()))
            }
        }
        "eval" => {
            let model = load_valid_model(&args)?;
            let ladder = load_ladder(&model, positional(&args, 0, "ladder file")?, stdin)?;
            match args.positional.get(1) {
                Some(ws) => {
                    let w: Word = ws.parse().map_err(|e: Error| (2, format!("{e}\n")))?;
                    Ok((0, format!("{}\n", model.ext_name(ladder.evaluate(&w)))))
                }
                None => Ok((0, ladder.emit())),
            }
        }
        "join" | "meet" => {
            let model = load_valid_model(&args)?;
            let a = load_ladder(&model, positional(&args, 0, "first ladder")?, stdin)?;
            let b = load_ladder(&model, positional(&args, 1, "second ladder")?, stdin)?;
            let result = if args.verb == "join" {
                a.join(&b)
            } else {
                a.meet(&b)
            }
            .map_err(|e| (2, format!("{e}\n")))?;
            Ok((0, result.emit()))
        }
        "relate" => {
            let tag = positional(&args, 0, "relation tag")?;
            let Some(tag) = RelationTag::parse(tag) else {
                return Err((2, format!("unknown relation tag '{tag}'\n")));
            };
            let model = load_valid_model(&args)?;
            let a = load_ladder(&model, positional(&args, 1, "first ladder")?, stdin)?;
            let b = load_ladder(&model, positional(&args, 2, "second ladder")?, stdin)?;
            let rel = related(tag, &a, &b).map_err(|e| (2, format!("{e}\n")))?;
            Ok((if rel { 0 } else { 1 }, format!("{rel}\n")))
        }
        "component-form" | "b-upper" => {
            let model = load_valid_model(&args)?;
            let ladder = load_ladder(&model, positional(&args, 0, "ladder file")?, stdin)?;
            let form = if args.verb == "component-form" {
                component_form(&ladder)
            } else {
                b_upper_form(&ladder)
            }
            .map_err(|e| (1, format!("{e}\n")))?;
            match args.format.as_str() {
                "text" => Ok((0, format!("{}\n", form.render_text()))),
                "records" => Ok((0, form.render_records())),
                other => Err((2, format!("unknown format '{other}'\n"))),
            }
        }
        "enumerate" => {
            let model = load_valid_model(&args)?;
            let Some(depth) = args.depth else {
                return Err((2, "enumerate needs --depth\n".to_string()));
            };
            let ladders = enumerate_phi(&model, depth).map_err(|e| (2, format!("{e}\n")))?;
            let mut out = String::new();
            for l in &ladders {
                out.push_str(&one_line(l));
                out.push('\n');
            }
            out.push_str(&format!("# total: {}\n", ladders.len()));
            Ok((0, out))
        }
        "family" => {
            let tag = positional(&args, 0, "family tag")?;
            let Some(tag) = FamilyTag::parse(tag) else {
                return Err((2, format!("unknown family tag '{tag}'\n")));
            };
            let model = load_valid_model(&args)?;
            let ladder = load_ladder(&model, positional(&args, 1, "ladder file")?, stdin)?;
            let report = in_family(tag, &ladder).map_err(|e| (2, format!("{e}\n")))?;
            if report.is_clean() {
                Ok((0, "member\n".to_string()))
            } else {
                Ok((1, report.to_string()))
            }
        }
        "embed" => {
            let model = load_valid_model(&args)?;
            let kind = positional(&args, 0, "construct (pk|qk|lro|check)")?;
            let build_err = |e: Error| (2, format!("{e}\n"));
            match kind {
                "pk" => {
                    let p = positional(&args, 1, "root symbol P")?;
                    let u = positional(&args, 2, "image symbol U")?;
                    let l = crate::families::embed_pk(&model, p, u).map_err(build_err)?;
                    Ok((0, l.emit()))
                }
                "qk" => {
                    let q = positional(&args, 1, "root symbol Q")?;
                    let u = positional(&args, 2, "image symbol U")?;
                    let l = crate::families::embed_qk(&model, q, u).map_err(build_err)?;
                    Ok((0, l.emit()))
                }
                "lro" => {
                    let u = positional(&args, 1, "image symbol U")?;
                    let l = crate::families::lro_ladder(&model, u).map_err(build_err)?;
                    Ok((0, l.emit()))
                }
                "check" => {
                    let which = positional(&args, 1, "construct (pk|qk|lro)")?;
                    let construct = match which {
                        "pk" => EmbedConstruct::Pk {
                            p: positional(&args, 2, "root symbol P")?.to_string(),
                        },
                        "qk" => EmbedConstruct::Qk {
                            q: positional(&args, 2, "root symbol Q")?.to_string(),
                        },
                        "lro" => EmbedConstruct::Lro,
                        other => return Err((2, format!("unknown construct '{other}'\n"))),
                    };
                    let report = embedding_check(&model, &construct).map_err(build_err)?;
                    if report.is_clean() {
                        Ok((0, "all checks pass\n".to_string()))
                    } else {
                        Ok((1, report.failures.join("\n") + "\n"))
                    }
                }
                other => Err((2, format!("unknown construct '{other}'\n"))),
            }
        }
        "convert" => {
            let input = positional(&args, 0, "word or index")?;
            if let Ok(w) = input.parse::<Word>() {
                return Ok((0, format!("{}\n", w.gamma())));
            }
            if let Ok(idx) = input.parse::<LambdaIndex>() {
                return Ok((0, format!("{}\n", idx.to_word())));
            }
            Err((
                2,
                format!("'{input}' is neither a word nor an index pair\n"),
            ))
        }
        "hasse" => {
            if !matches!(args.format.as_str(), "text" | "dot") {
                return Err((
                    2,
                    format!("hasse emits DOT; unknown format '{}'\n", args.format),
                ));
            }
            if args.model.is_some() {
                let model = load_valid_model(&args)?;
                Ok((0, carrier_hasse(&model)))
            } else {
                let Some(depth) = args.depth else {
                    return Err((2, "hasse needs --depth (or --model)\n".to_string()));
                };
                Ok((0, theta_hasse(depth)))
            }
        }
        other => Err((2, format!("unknown verb '{other}'\n{USAGE}"))),
    }
}
