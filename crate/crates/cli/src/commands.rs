use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::Duration;

use hydralab::bounds::{
    auto_p, build_from_line_ham_cycle, build_from_path_cover, extend_spanning, lower_bound, p_of, upper_bound,
    PStrategy, PValue,
};
use hydralab::corpus;
use hydralab::families::{self, FamilySpec};
use hydralab::horn;
use hydralab::io::{certificate_json, certificate_to_string, graph_to_string, parse_certificate, parse_graph};
use hydralab::kclosure::fkn_report;
use hydralab::solver::{enumerate_optima, hydra_number_restricted, hydra_number_with_isolated, is_single_headed};
use hydralab::{represents, DirectedHypergraph, Graph, HydraResult, SolverOptions};
use serde_json::{json, Value};

use crate::report::{Failure, Report, EXIT_PROPERTY_FAILS, EXIT_RESOURCE};
use crate::{Cli, Command, ExactArgs, ExperimentKind, FamilyKind, HornAction, Method, PStrategyArg};

type Outcome = Result<Report, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let parallel = cli.threads.is_some_and(|t| t > 1);
    match &cli.command {
        Command::Closure { hypergraph, vertices } => closure(&read_certificate(hypergraph)?, vertices),
        Command::Verify { hypergraph, graph } => verify(&read_certificate(hypergraph)?, &read_graph(graph)?),
        Command::Exact(args) => exact(args, parallel),
        Command::Bounds { graph, p_strategy } => bounds(&read_graph(graph)?, *p_strategy),
        Command::Construct {
            graph,
            method,
            certificate_out,
        } => construct(&read_graph(graph)?, *method, certificate_out.as_deref()),
        Command::Family { kind } => family(kind, cli.seed),
        Command::Fkn { n, k, exact } => fkn(*n, *k, *exact),
        Command::Horn { action } => match action {
            HornAction::Minimize { file, limit_nodes } => horn_minimize(&read_text(file)?, *limit_nodes, parallel),
            HornAction::Check { file } => horn_check(&read_text(file)?),
        },
        Command::Experiment { kind } => match kind {
            ExperimentKind::EdgeAdd { graph } => edge_add(&read_graph(graph)?, parallel),
            ExperimentKind::Components { graph } => components(&read_graph(graph)?, parallel),
        },
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_certificate(path: &Path) -> Result<DirectedHypergraph, Failure> {
    parse_certificate(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_certificate(path: Option<&Path>, h: &DirectedHypergraph) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, certificate_to_string(h))
            .map_err(|e| Failure::Usage(format!("writing {}: {e}", p.display()))),
        None => Ok(()),
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure::Usage(format!("bad {what} `{s}`"))))
        .collect()
}

fn parse_caps(text: &str) -> Result<BTreeMap<usize, usize>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (v, c) = item
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("cap `{item}` is not `vertex=cap`")))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad cap `{item}`")));
            Ok((parse(v)?, parse(c)?))
        })
        .collect()
}

fn joined(items: impl IntoIterator<Item = usize>) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn certificate_lines(report: &mut Report, h: &DirectedHypergraph) {
    report.line("certificate:");
    for line in certificate_to_string(h).lines() {
        report.line(line);
    }
}

fn closure(h: &DirectedHypergraph, vertices: &str) -> Outcome {
    let start = parse_list(vertices, "vertex")?;
    let cl = h.closure(&start)?;
    let mut r = Report::new("closure");
    r.line(format!("closure: {}", joined(cl.iter().copied())))
        .line(format!("size: {} of {}", cl.len(), h.n()))
        .field("start", start)
        .field("closure", cl.into_iter().collect::<Vec<_>>())
        .field("n", h.n());
    Ok(r)
}

fn verify(h: &DirectedHypergraph, g: &Graph) -> Outcome {
    let rep = represents(h, g)?;
    let mut r = Report::new("verify");
    r.line(format!("represents: {}", if rep.ok { "yes" } else { "no" }))
        .line(format!("arcs: {}, edges: {}", h.size(), g.m()));
    for v in &rep.violations {
        r.line(format!("  {:?} {:?} closes to {{{}}}", v.pair, v.kind, joined(v.closure.iter().copied())));
    }
    r.field("ok", rep.ok)
        .field("arcs", h.size())
        .field("edges", g.m())
        .field("violations", serde_json::to_value(&rep.violations).expect("serializable"));
    if !rep.ok {
        r.code = EXIT_PROPERTY_FAILS;
    }
    Ok(r)
}

fn solver_options(limit_nodes: u64, limit_secs: f64, parallel: bool) -> Result<SolverOptions, Failure> {
    if !(limit_secs.is_finite() && limit_secs >= 0.0) {
        return Err(Failure::Usage(format!("bad time limit {limit_secs}")));
    }
    Ok(SolverOptions {
        node_limit: limit_nodes,
        time_limit: Some(Duration::from_secs_f64(limit_secs)),
        parallel,
        ..SolverOptions::default()
    })
}

fn result_fields(r: &mut Report, res: &HydraResult) {
    r.field("edges", res.edges)
        .field("exact", res.is_exact())
        .field("lower", res.lower)
        .field("upper", res.upper)
        .field("value", res.value())
        .field("stats", serde_json::to_value(&res.stats).expect("serializable"));
    if let Some(h) = &res.certificate {
        r.field("certificate", certificate_json(h));
    }
}

fn exact(args: &ExactArgs, parallel: bool) -> Outcome {
    let g = read_graph(&args.graph)?;
    let opts = solver_options(args.limit_nodes, args.limit_secs, parallel)?;
    let mut r = Report::new("exact");

    if args.single_headed {
        let (single, cert) = is_single_headed(&g, &opts)?;
        r.line(format!("single-headed: {}", if single { "yes" } else { "no" }))
            .field("single_headed", single);
        if let Some(h) = cert {
            certificate_lines(&mut r, &h);
            r.field("certificate", certificate_json(&h));
            write_certificate(args.certificate_out.as_deref(), &h)?;
        }
        return Ok(r);
    }

    if args.all_optima {
        let all = enumerate_optima(&g, &opts)?;
        let value = all.first().map(DirectedHypergraph::size);
        r.line(format!("hydra number: {}", value.map_or("-".into(), |v| v.to_string())))
            .line(format!("optima: {}", all.len()))
            .field("value", value)
            .field("optima", all.iter().map(certificate_json).collect::<Vec<_>>());
        for (i, h) in all.iter().enumerate() {
            r.line(format!("optimum {i}: {}", arcs_inline(h)));
        }
        return Ok(r);
    }

    let (res, isolated) = match &args.caps {
        Some(text) => (hydra_number_restricted(&g, &parse_caps(text)?, &opts)?, 0),
        None => hydra_number_with_isolated(&g, &opts)?,
    };
    result_fields(&mut r, &res);
    r.field("isolated", isolated);
    match res.value() {
        Some(v) => {
            r.line(format!("hydra number: {v}"))
                .line(format!("edges: {}", res.edges))
                .line(format!("excess: {}", v.saturating_sub(res.edges)));
        }
        None => {
            let upper = res.upper.map_or("?".into(), |u| u.to_string());
            r.line(format!("hydra number: in [{}, {upper}] (search limit reached)", res.lower))
                .line(format!("edges: {}", res.edges));
            r.code = EXIT_RESOURCE;
        }
    }
    if isolated > 0 {
        r.line(format!("isolated vertices: {isolated}"));
    }
    r.line(format!("nodes: {}", res.stats.nodes));
    if let Some(h) = &res.certificate {
        certificate_lines(&mut r, h);
        write_certificate(args.certificate_out.as_deref(), h)?;
    }
    Ok(r)
}

fn arcs_inline(h: &DirectedHypergraph) -> String {
    h.arcs()
        .map(|a| {
            let (u, v) = a.body();
            format!("{u},{v}->{}", a.head())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn strategy_p(g: &Graph, arg: PStrategyArg) -> Result<PValue, Failure> {
    Ok(match arg {
        PStrategyArg::Auto => auto_p(g)?,
        PStrategyArg::Exhaustive => p_of(g, PStrategy::exhaustive())?,
        PStrategyArg::Tree => p_of(g, PStrategy::tree())?,
        PStrategyArg::BinaryFourLevel => p_of(g, PStrategy::BinaryFourLevel)?,
    })
}

fn bounds(g: &Graph, p_strategy: Option<PStrategyArg>) -> Outcome {
    let lower = lower_bound(g)?;
    let upper = upper_bound(g)?;
    let mut r = Report::new("bounds");
    r.line(format!("edges: {}", g.m()))
        .line(format!("lower: {}", lower.value));
    for w in &lower.witnesses {
        r.line(format!("  {}: {}", w.rule(), w.bound(g.m())));
    }
    r.line(format!("upper: {} ({})", upper.value, method_name(&upper.method)))
        .field("edges", g.m())
        .field("lower", lower.value)
        .field("lower_witnesses", serde_json::to_value(&lower.witnesses).expect("serializable"))
        .field("upper", upper.value)
        .field("upper_method", serde_json::to_value(&upper.method).expect("serializable"))
        .field("upper_certificate", certificate_json(&upper.certificate));
    if let Some(arg) = p_strategy {
        let p = strategy_p(g, arg)?;
        let built = build_from_path_cover(&p.subgraph, &p.cover)?;
        let h = extend_spanning(&built.hypergraph, &p.subgraph, g)?;
        let ok = represents(&h, g)?.ok;
        r.line(format!(
            "p: {} ({}), construction {} arcs, {}",
            p.value,
            if p.exact { "exact" } else { "upper bound" },
            h.size(),
            if ok { "verified" } else { "NOT verified" }
        ))
        .field(
            "p",
            json!({ "value": p.value, "exact": p.exact, "construction_size": h.size(), "verified": ok }),
        );
        if !ok {
            r.code = EXIT_PROPERTY_FAILS;
        }
    }
    Ok(r)
}

fn method_name(m: &hydralab::bounds::UpperMethod) -> String {
    use hydralab::bounds::UpperMethod;
    match m {
        UpperMethod::Trivial => "trivial".into(),
        UpperMethod::LineHamiltonian => "line-graph Hamiltonian cycle".into(),
        UpperMethod::PathCover { paths, p_exact, .. } => {
            format!("path cover with {paths} paths{}", if *p_exact { "" } else { ", not minimum" })
        }
    }
}

fn construct(g: &Graph, method: Method, out: Option<&Path>) -> Outcome {
    let (h, how) = match method {
        Method::Auto => {
            let ub = upper_bound(g)?;
            (ub.certificate, method_name(&ub.method))
        }
        Method::PathCover => {
            let p = auto_p(g)?;
            let built = build_from_path_cover(&p.subgraph, &p.cover)?;
            let h = extend_spanning(&built.hypergraph, &p.subgraph, g)?;
            (h, format!("path cover with {} paths", p.value))
        }
        Method::LineHam => match build_from_line_ham_cycle(g)? {
            Some(h) => (h, "line-graph Hamiltonian cycle".to_string()),
            None => return Err(Failure::Property("the line graph has no Hamiltonian cycle".into())),
        },
    };
    let check = represents(&h, g)?;
    if !check.ok {
        return Err(Failure::Property(format!("constructed certificate failed verification ({how})")));
    }
    write_certificate(out, &h)?;
    let mut r = Report::new("construct");
    r.line(format!("method: {how}"))
        .line(format!("size: {} (edges {})", h.size(), g.m()))
        .line("verified: yes");
    certificate_lines(&mut r, &h);
    r.field("method", how)
        .field("size", h.size())
        .field("edges", g.m())
        .field("verified", true)
        .field("certificate", certificate_json(&h));
    Ok(r)
}

fn family(kind: &FamilyKind, seed: u64) -> Outcome {
    let (spec, g) = match kind {
        FamilyKind::Random { n, extra } => {
            if *n < 2 {
                return Err(Failure::Usage("a random graph needs at least two vertices".into()));
            }
            let g = corpus::random_connected_graph(*n, *extra, &mut corpus::rng(seed));
            (json!({ "kind": "random", "n": n, "extra": extra, "seed": seed }), g)
        }
        other => {
            let spec = family_spec(other)?;
            let g = families::generate(&spec)?;
            (serde_json::to_value(&spec).expect("serializable"), g)
        }
    };
    let mut r = Report::new("family");
    for line in graph_to_string(&g).lines() {
        r.line(line);
    }
    r.field("family", spec)
        .field("n", g.n())
        .field("m", g.m())
        .field("edges", g.edges().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<Value>>());
    Ok(r)
}

fn family_spec(kind: &FamilyKind) -> Result<FamilySpec, Failure> {
    Ok(match kind {
        FamilyKind::Star { leaves } => FamilySpec::Star { leaves: *leaves },
        FamilyKind::Path { n } => FamilySpec::Path { n: *n },
        FamilyKind::Cycle { n } => FamilySpec::Cycle { n: *n },
        FamilyKind::Matching { edges } => FamilySpec::Matching { edges: *edges },
        FamilyKind::Caterpillar { leaves } => FamilySpec::Caterpillar {
            leaves: parse_list(leaves, "leaf count")?,
        },
        FamilyKind::Spider { legs } => FamilySpec::Spider {
            legs: parse_list(legs, "leg length")?,
        },
        FamilyKind::Tk { k } => FamilySpec::Tk { k: *k },
        FamilyKind::BinaryTree { d } => FamilySpec::BinaryTree { d: *d },
        FamilyKind::Gk { k } => FamilySpec::Gk { k: *k },
        FamilyKind::Turan { n, r } => FamilySpec::Turan { n: *n, r: *r },
        FamilyKind::ForbiddenCaterpillar => FamilySpec::ForbiddenCaterpillar,
        FamilyKind::Random { .. } => unreachable!("handled by the caller"),
    })
}

fn fkn(n: usize, k: usize, with_exact: bool) -> Outcome {
    let rep = fkn_report(n, k, with_exact)?;
    let mut r = Report::new("fkn");
    r.line(format!("n: {n}, k: {k}"))
        .line(format!("interval: [{}, {}]", rep.lower, rep.upper))
        .line(format!(
            "construction: {} arcs, {}",
            rep.construction_size,
            if rep.construction_verified { "verified" } else { "NOT verified" }
        ));
    if let Some(x) = rep.exact {
        r.line(format!("exact: {x}"));
    } else if with_exact {
        r.line("exact: not computed (n too large)");
    }
    certificate_lines(&mut r, &rep.construction);
    r.field("report", serde_json::to_value(&rep).expect("serializable"))
        .field("certificate", certificate_json(&rep.construction));
    if !rep.construction_verified {
        r.code = EXIT_PROPERTY_FAILS;
    }
    Ok(r)
}

fn horn_minimize(text: &str, limit_nodes: u64, parallel: bool) -> Outcome {
    let phi = horn::parse(text)?;
    let opts = SolverOptions {
        node_limit: limit_nodes,
        parallel,
        ..SolverOptions::default()
    };
    let min = horn::minimize_hydra(&phi, &opts)?;
    let mut r = Report::new("horn-minimize");
    for line in min.formula.lines() {
        r.line(line);
    }
    r.line(format!("# clauses: {} -> {}", phi.len(), min.formula.len()));
    if min.exact {
        r.line(format!("# hydra number of the body graph: {}", min.upper));
    } else {
        r.line(format!("# hydra number of the body graph: in [{}, {}] (search limit reached)", min.lower, min.upper));
        r.code = EXIT_RESOURCE;
    }
    r.field("clauses", min.formula.lines())
        .field("input_clauses", phi.len())
        .field("lower", min.lower)
        .field("upper", min.upper)
        .field("exact", min.exact);
    Ok(r)
}

fn horn_check(text: &str) -> Outcome {
    let phi = horn::parse(text)?;
    let three = phi.is_three_horn();
    let hydra = three && horn::is_hydra(&phi)?;
    let mut r = Report::new("horn-check");
    r.line(format!("variables: {}, clauses: {}", phi.variables().len(), phi.len()))
        .line(format!("definite 3-Horn: {}", if three { "yes" } else { "no" }))
        .line(format!("hydra: {}", if hydra { "yes" } else { "no" }))
        .field("variables", phi.variables().to_vec())
        .field("clauses", phi.len())
        .field("three_horn", three)
        .field("hydra", hydra);
    if hydra {
        let g = horn::body_graph(&phi)?;
        let names = phi.variables();
        let edges: Vec<String> = g.edges().iter().map(|&(u, v)| format!("{} {}", names[u], names[v])).collect();
        r.line(format!("body graph: {} vertices, {} edges", g.n(), g.m()))
            .line(format!("edges: {}", edges.join(", ")))
            .field("body_edges", g.edges().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<Value>>());
    } else {
        r.code = EXIT_PROPERTY_FAILS;
    }
    Ok(r)
}

fn value_or_interval(res: &HydraResult) -> (String, Value) {
    match res.value() {
        Some(v) => (v.to_string(), json!(v)),
        None => {
            let upper = res.upper.map_or("?".into(), |u| u.to_string());
            (format!("[{}, {upper}]", res.lower), json!({ "lower": res.lower, "upper": res.upper }))
        }
    }
}

fn edge_add(g: &Graph, parallel: bool) -> Outcome {
    let opts = SolverOptions {
        parallel,
        ..SolverOptions::default()
    };
    let (base, _) = hydra_number_with_isolated(g, &opts)?;
    let (base_text, base_json) = value_or_interval(&base);
    let mut r = Report::new("experiment-edge-add");
    r.line(format!("h(G) = {base_text}"));
    let mut rows = Vec::new();
    let mut lowered = Vec::new();
    let mut inexact = !base.is_exact();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let grown = g.with_edge(u, v)?;
            let (res, _) = hydra_number_with_isolated(&grown, &opts)?;
            let (text, value) = value_or_interval(&res);
            inexact |= !res.is_exact();
            let lower = match (base.value(), res.value()) {
                (Some(b), Some(x)) => Some(x < b),
                _ => None,
            };
            if lower == Some(true) {
                lowered.push(json!([u, v]));
            }
            r.line(format!(
                "  +({u},{v}): {text}{}",
                if lower == Some(true) { "  lower" } else { "" }
            ));
            rows.push(json!({ "edge": [u, v], "value": value, "lower": lower }));
        }
    }
    r.line(format!("non-edges whose addition lowers h: {}", lowered.len()))
        .field("base", base_json)
        .field("non_edges", rows)
        .field("lowering", lowered);
    if inexact {
        r.code = EXIT_RESOURCE;
    }
    Ok(r)
}

fn components(g: &Graph, parallel: bool) -> Outcome {
    let opts = SolverOptions {
        parallel,
        ..SolverOptions::default()
    };
    let (whole, _) = hydra_number_with_isolated(g, &opts)?;
    let (whole_text, whole_json) = value_or_interval(&whole);
    let parts: Vec<Vec<usize>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
    let mut r = Report::new("experiment-components");
    r.line(format!("h(G) = {whole_text}"))
        .line(format!("components: {}", parts.len()));
    let mut sum = Some(0usize);
    let mut rows = Vec::new();
    let mut inexact = !whole.is_exact();
    for (i, c) in parts.iter().enumerate() {
        let sub = g.induced(c);
        if sub.n() < 3 {
            sum = None;
            r.line(format!("  component {i} ({} vertices): n/a", sub.n()));
            rows.push(json!({ "vertices": c, "value": Value::Null }));
            continue;
        }
        let res = hydralab::solver::hydra_number(&sub, &opts)?;
        let (text, value) = value_or_interval(&res);
        inexact |= !res.is_exact();
        sum = sum.zip(res.value()).map(|(a, b)| a + b);
        r.line(format!("  component {i} ({} vertices, {} edges): {text}", sub.n(), sub.m()));
        rows.push(json!({ "vertices": c, "value": value }));
    }
    let total = sum.map(|s| s + parts.len());
    let relation = match (whole.value(), total) {
        (Some(h), Some(t)) if h == t => "equal",
        (Some(h), Some(t)) if h < t => "less",
        (Some(_), Some(_)) => "greater",
        _ => "n/a",
    };
    r.line(format!(
        "sum + components = {}",
        total.map_or("n/a".into(), |t| t.to_string())
    ))
    .line(format!("relation: h(G) {relation}"))
    .field("whole", whole_json)
    .field("components", rows)
    .field("sum_plus_count", total)
    .field("relation", relation);
    if inexact {
        r.code = EXIT_RESOURCE;
    }
    Ok(r)
}
