use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gonforge::acceptance;
use gonforge::complex::{build_polyhedron, cell_census, check_link_condition, vertex_links};
use gonforge::develop::{ball_census, develop_ball, interior_link_check};
use gonforge::grouppres::{abelianization, to_group_presentation};
use gonforge::incidence::io::{from_text, to_dot, to_text};
use gonforge::incidence::{build_doily, LabeledGraph};
use gonforge::presentation::{
    builtin, parse_presentation, reconstruct_link_graph, validate_with_gonality, validate_with_graph,
    PolygonalPresentation,
};
use gonforge::report::to_json;
use gonforge::search::{arc_digraph_from, dedupe_up_to_equivalence, enumerate_triangle_presentations, SearchOptions};
use gonforge::symmetry::{find_isomorphism, presentations_equivalent};

#[derive(Parser)]
#[command(name = "gonforge", version, about = "Polygonal presentations over generalized quadrangles")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check the presentation conditions and the link's polygon parameters.
    Validate {
        /// Presentation file, or T1 / T2.
        input: String,
        #[arg(long, default_value_t = 4)]
        gonality: usize,
        /// Compare the reconstructed link against this graph file.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Glue the polyhedron and report its census and curvature.
    Build {
        input: String,
        /// Corner angle is π/angle.
        #[arg(long, default_value_t = 4)]
        angle: usize,
    },
    /// Emit the link graph.
    Link {
        input: String,
        /// Read the link off the polyhedron's corners instead of leading pairs.
        #[arg(long)]
        corners: bool,
    },
    /// Emit the incidence graph of the generalized quadrangle of order (2,2).
    Doily,
    /// Decide whether two presentations are equivalent.
    Equiv { a: String, b: String },
    /// Group presentation and abelianization.
    Group {
        input: String,
        /// Print GAP input instead of the summary.
        #[arg(long)]
        gap: bool,
    },
    /// Grow a ball of the universal cover and check its interior links.
    Develop {
        input: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Print the whole ball.
        #[arg(long)]
        dump: bool,
    },
    /// Enumerate presentations sharing the basic bijection of a given one.
    Search {
        #[arg(long)]
        lambda_from: String,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Run the acceptance suite.
    Selftest,
}

/// Usage, input or cap error; exits with status 2.
struct Failure(String);

impl From<gonforge::Error> for Failure {
    fn from(e: gonforge::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn load(input: &str) -> Result<PolygonalPresentation, Failure> {
    if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| Failure(format!("{input}: {e}")))?;
        return parse_presentation(&text).map_err(|e| Failure(format!("{input}: {e}")));
    }
    builtin(input).ok_or_else(|| Failure(format!("{input}: no such file or builtin (T1, T2)")))
}

fn load_graph(path: &str) -> Result<LabeledGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))?;
    from_text(&text).map_err(|e| Failure(format!("{path}: {e}")))
}

fn emit_graph(g: &LabeledGraph, name: &str, format: Format) -> String {
    match format {
        Format::Dot => to_dot(g, name),
        Format::Text => to_text(g),
        Format::Json => to_json(
            "graph",
            &json!({
                "vertices": g.vertices().iter().map(|v| json!({"color": v.color.map(|c| c.to_string()), "label": v.label})).collect::<Vec<_>>(),
                "edges": g.edges(),
            }),
        ),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn validate(input: &str, gonality: usize, graph: Option<&str>, format: Format) -> Outcome {
    let p = load(input)?;
    let mut report = validate_with_gonality(&p, gonality);
    if let Some(path) = graph {
        let supplied = load_graph(path)?;
        let with = validate_with_graph(&p, &supplied)?;
        report.supplied_graph_isomorphic = with.supplied_graph_isomorphic;
        report.passed &= with.passed;
    }
    if format == Format::Json {
        return Ok((to_json("validation", &report), report.passed));
    }
    let mut out = format!("presentation {input}: k={} q={} n={}\n", report.k, report.q, report.n);
    writeln!(out, "tuples: {} listed, {} after closure", report.listed_tuples, report.closed_tuples).unwrap();
    for (name, c) in
        [("condition 1", &report.condition1), ("condition 2", &report.condition2), ("condition 3", &report.condition3)]
    {
        writeln!(out, "{name}: {}", verdict(c.passed)).unwrap();
        for w in &c.witnesses {
            writeln!(out, "  {w}").unwrap();
        }
    }
    if let Some(l) = &report.link {
        writeln!(
            out,
            "link: {} vertices, {} edges, {} components, degree {}..{}, girth {}, diameter {}",
            l.vertices, l.edges, l.components, l.min_degree, l.max_degree, l.girth, l.diameter
        )
        .unwrap();
    }
    for (i, g) in report.polygon.iter().enumerate() {
        writeln!(
            out,
            "component {}: generalized {}-gon: {} (girth {}, diameter {})",
            i + 1,
            g.m,
            verdict(g.verdict),
            g.girth,
            g.diameter
        )
        .unwrap();
    }
    if let Some(iso) = report.supplied_graph_isomorphic {
        writeln!(out, "supplied graph isomorphic: {}", verdict(iso)).unwrap();
    }
    writeln!(out, "verdict: {}", verdict(report.passed)).unwrap();
    Ok((out, report.passed))
}

fn build(input: &str, angle: usize, format: Format) -> Outcome {
    let p = load(input)?;
    let poly = build_polyhedron(&p)?;
    let census = cell_census(&poly)?;
    let curvature = check_link_condition(&poly, p.k, angle)?;
    let rebuilt = reconstruct_link_graph(&p)?;
    let links_agree = vertex_links(&poly)?
        .iter()
        .all(|l| find_isomorphism(l, &rebuilt, true).ok().flatten().is_some());
    let ok = curvature.link_condition && links_agree;
    if format == Format::Json {
        let data = json!({"census": census, "curvature": curvature, "links_agree": links_agree});
        return Ok((to_json("polyhedron", &data), ok));
    }
    let mut out = poly.to_text();
    writeln!(
        out,
        "census: V={} E={} F={} chi={}",
        census.vertices, census.edges, census.faces, census.euler_characteristic
    )
    .unwrap();
    for (i, l) in census.links.iter().enumerate() {
        writeln!(out, "link at vertex {i}: s={} t={}", l.s, l.t).unwrap();
    }
    let r = &census.formulas;
    writeln!(
        out,
        "formula counts: V={} E={} F={} (agree: {} {} {})",
        r.formula_vertices, r.formula_edges, r.formula_faces, r.vertices_agree, r.edges_agree, r.faces_agree
    )
    .unwrap();
    writeln!(out, "corner links match reconstructed link: {}", verdict(links_agree)).unwrap();
    writeln!(
        out,
        "link condition: girth >= {}: {}",
        curvature.required_girth,
        verdict(curvature.link_condition)
    )
    .unwrap();
    writeln!(
        out,
        "angles: m*p = {} vs 2m+p = {}: {}",
        curvature.angle_product,
        curvature.angle_bound,
        if curvature.hyperbolic {
            "hyperbolic"
        } else if curvature.euclidean_boundary {
            "euclidean"
        } else {
            "spherical"
        }
    )
    .unwrap();
    if let Some(mn) = &curvature.mn_inequality {
        writeln!(out, "mn >= 2(m+n) with m={} n={}: {} >= {}: {}", mn.m, mn.n, mn.product, mn.bound, mn.holds).unwrap();
    }
    Ok((out, ok))
}

fn link(input: &str, corners: bool, format: Format) -> Outcome {
    let p = load(input)?;
    let g = if corners {
        let poly = build_polyhedron(&p)?;
        vertex_links(&poly)?
            .into_iter()
            .next()
            .ok_or_else(|| Failure("polyhedron has no vertices".into()))?
    } else {
        reconstruct_link_graph(&p)?
    };
    Ok((emit_graph(&g, "link", format), true))
}

fn equiv(a: &str, b: &str, format: Format) -> Outcome {
    let (p, q) = (load(a)?, load(b)?);
    let r = presentations_equivalent(&p, &q)?;
    if format == Format::Json {
        return Ok((to_json("equivalence", &r), true));
    }
    let mut out = String::new();
    writeln!(out, "links isomorphic: {}", r.links_isomorphic).unwrap();
    writeln!(out, "link automorphisms: {} and {}", r.link_automorphisms.0, r.link_automorphisms.1).unwrap();
    for (name, v) in [("orientation preserving", &r.orientation_preserving), ("with reversal", &r.with_reversal)] {
        let word = if v.equivalent { "equivalent" } else { "not equivalent" };
        writeln!(
            out,
            "{name}: {word} ({} isomorphisms, {} pairing-compatible)",
            v.isomorphisms_examined, v.pairing_compatible
        )
        .unwrap();
        if let Some(w) = &v.witness {
            let pairs: Vec<String> = (1..w.len()).map(|i| format!("{i}->{}", w[i])).collect();
            writeln!(out, "  witness: {}", pairs.join(" ")).unwrap();
        }
    }
    if let Some(note) = &r.note {
        writeln!(out, "note: {note}").unwrap();
    }
    Ok((out, true))
}

fn group(input: &str, gap: bool, format: Format) -> Outcome {
    let p = load(input)?;
    let gp = to_group_presentation(&p);
    let ab = abelianization(&p);
    if gap {
        return Ok((gp.to_gap(), true));
    }
    if format == Format::Json {
        let data = json!({"presentation": gp, "abelianization": ab, "descriptor": ab.to_string()});
        return Ok((to_json("group", &data), true));
    }
    let mut out = format!("generators: {}\n", gp.generators.join(" "));
    for r in &gp.relators {
        let word: Vec<String> =
            r.iter().map(|&g| if g > 0 { format!("g{g}") } else { format!("g{}^-1", -g) }).collect();
        writeln!(out, "relator: {}", word.join(" ")).unwrap();
    }
    writeln!(out, "abelianization: {ab}").unwrap();
    Ok((out, true))
}

fn develop(input: &str, radius: usize, dump: bool, format: Format) -> Outcome {
    let p = load(input)?;
    let d = develop_ball(&p, radius)?;
    let census = ball_census(&d);
    let verdicts = interior_link_check(&d);
    let ok = verdicts.iter().all(|v| v.passed);
    if format == Format::Json {
        let failing: Vec<_> = verdicts.iter().filter(|v| !v.passed).collect();
        let data = json!({"census": census, "interior_links_checked": verdicts.len(), "failing_links": failing});
        return Ok((to_json("development", &data), ok));
    }
    let mut out = if dump { d.to_text() } else { String::new() };
    writeln!(
        out,
        "ball radius {}: V={} E={} F={} chi={}",
        census.radius, census.vertices, census.edges, census.faces, census.euler_characteristic
    )
    .unwrap();
    for s in &census.shells {
        writeln!(out, "  distance {}: {} vertices, {} edges, {} faces", s.distance, s.vertices, s.edges, s.faces)
            .unwrap();
    }
    let passed = verdicts.iter().filter(|v| v.passed).count();
    writeln!(out, "interior links: {passed}/{} match the model", verdicts.len()).unwrap();
    Ok((out, ok))
}

fn search(input: &str, limit: Option<usize>, node_budget: Option<u64>, format: Format) -> Outcome {
    let p = load(input)?;
    let d = arc_digraph_from(&p, &build_doily())?;
    let start = Instant::now();
    let outcome = enumerate_triangle_presentations(&d, &SearchOptions { limit, node_budget, parallel: true, ..Default::default() })?;
    let catalog = dedupe_up_to_equivalence(&outcome.presentations)?;
    let wall_ms = start.elapsed().as_millis();
    let ok = outcome.stats.invalid == 0;
    let classes: Vec<_> = catalog
        .classes
        .iter()
        .map(|c| json!({"representative": c.representative.to_text(), "count": c.count, "orbit_size": c.orbit_size}))
        .collect();
    let summary = json!({
        "solutions": outcome.presentations.len(),
        "class_count": catalog.class_count(),
        "classes": classes,
        "nodes": outcome.stats.nodes,
        "exhausted": outcome.stats.exhausted,
        "budget_exceeded": outcome.stats.budget_exceeded,
        "invalid": outcome.stats.invalid,
        "wall_ms": wall_ms,
    });
    if format == Format::Json {
        return Ok((to_json("search", &summary), ok));
    }
    let mut out = String::new();
    for s in &outcome.presentations {
        out.push_str(&s.to_text());
        out.push('\n');
    }
    out.push_str(&to_json("search", &summary));
    out.push('\n');
    Ok((out, ok))
}

fn selftest(format: Format) -> Outcome {
    let results = acceptance::run_all();
    let ok = results.iter().all(|c| c.passed);
    if format == Format::Json {
        return Ok((to_json("selftest", &results), ok));
    }
    let mut out: String = results.iter().map(|c| c.line() + "\n").collect();
    writeln!(out, "{}/{} criteria pass", results.iter().filter(|c| c.passed).count(), results.len()).unwrap();
    Ok((out, ok))
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    if format == Format::Dot && !matches!(cli.command, Command::Link { .. } | Command::Doily) {
        return Err(Failure("dot output is only available for link and doily".into()));
    }
    match cli.command {
        Command::Validate { input, gonality, graph } => validate(&input, gonality, graph.as_deref(), format),
        Command::Build { input, angle } => build(&input, angle, format),
        Command::Link { input, corners } => link(&input, corners, format),
        Command::Doily => Ok((emit_graph(&build_doily().graph, "doily", format), true)),
        Command::Equiv { a, b } => equiv(&a, &b, format),
        Command::Group { input, gap } => group(&input, gap, format),
        Command::Develop { input, radius, dump } => develop(&input, radius, dump, format),
        Command::Search { lambda_from, limit, node_budget } => search(&lambda_from, limit, node_budget, format),
        Command::Selftest => selftest(format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("GONFORGE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("gonforge: {msg}");
            ExitCode::from(2)
        }
    }
}
