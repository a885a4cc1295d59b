//! Batch front end: analyze tree files, run the constructive embedding,
//! compute exact desk-scale Turán numbers, verify the weight identity, peel
//! hosts, enumerate small tight trees, build block lower-bound
//! constructions, and audit hosts against the shadow bound.
//!
//! Reports are plain text with a stable line schema (`--json` mirrors the
//! same fields); identical invocations produce byte-identical reports at any
//! thread count. Exit codes: 0 success, 1 negative result, 2 precondition or
//! input error, 3 internal gate diagnostic.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tighttree::embed::{
    embed_backtracking, BacktrackOutcome, CaseTrace, EmbedError, Embedding, FinderRoute,
};
use tighttree::io::{self, HgFile};
use tighttree::rational::{format_rational, parse_rational};
use tighttree::trees::{
    find_proper_ordering, leaves, min_trunk_size, trunk_profile, two_edge_trunk,
    enumerate_tight_trees, TreeError, TrunkPair, TrunkSize,
};
use tighttree::turan::{
    bound_audit, brute_force_turan, shadow_bound, steiner_lower_bound, turan_bound, AuditError,
    AuditVerdict,
};

#[derive(Parser)]
#[command(
    name = "tighttree",
    version,
    about = "Tight 3-tree analysis, embedding, and exact Turán computations"
)]
struct Cli {
    /// Seed for sampling operations (reserved; current verbs are
    /// deterministic and take no entropy from the environment).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel search phases. Output is identical at
    /// any thread count.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Emit the report as JSON instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tightness witness, leaves, minimum trunk size, and the trunk-2
    /// attachment profile of a tree file.
    Analyze {
        file: PathBuf,
        /// Search minimum trunk size up to this cap.
        #[arg(long, default_value_t = 2)]
        cap: usize,
    },
    /// Embed TREE into HOST with the constructive pipeline.
    Embed {
        tree: PathBuf,
        host: PathBuf,
        /// Print the full case trace (gates, relabels, transfers,
        /// placements).
        #[arg(long)]
        trace: bool,
        /// On pipeline failure, fall back to the exhaustive backtracking
        /// embedder.
        #[arg(long)]
        fallback: bool,
        /// Node budget for the fallback embedder.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
    },
    /// Exact Turán number of TREE on n vertices by exhaustive search.
    Turan {
        #[arg(short)]
        n: usize,
        tree: PathBuf,
        /// Budget in visited isomorphism classes.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Check the exact weight identity (edge weights sum to the shadow
    /// size).
    VerifyWeights { file: PathBuf },
    /// Peel FILE to minimum codegree above q.
    Peel {
        file: PathBuf,
        /// Threshold, an integer or a fraction like 19/3.
        #[arg(short)]
        q: String,
        /// Write the peeled graph to this path.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate tight r-trees with t edges up to isomorphism.
    Enumerate {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        t: usize,
    },
    /// Block lower-bound construction avoiding t-edge tight 3-trees.
    Steiner {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        t: usize,
        /// Write the constructed graph to this path.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Audit HOST against the shadow bound for TREE; above the bound a copy
    /// must be produced.
    Audit {
        host: PathBuf,
        tree: PathBuf,
        #[arg(long)]
        trace: bool,
    },
}

/// Ordered report: text lines plus the same fields as JSON.
struct Report {
    lines: Vec<String>,
    json: Vec<(String, Value)>,
}

impl Report {
    fn new() -> Self {
        Report { lines: vec![], json: vec![] }
    }

    fn field(&mut self, key: &str, text: String, value: Value) {
        self.lines.push(format!("{key}: {text}"));
        self.json.push((key.to_string(), value));
    }

    fn str_field(&mut self, key: &str, text: &str) {
        self.field(key, text.to_string(), Value::String(text.to_string()));
    }

    fn int_field(&mut self, key: &str, v: usize) {
        self.field(key, v.to_string(), json!(v));
    }

    fn raw_line(&mut self, line: String) {
        self.lines.push(line);
    }

    fn list_field(&mut self, key: &str, items: Vec<String>) {
        for (i, item) in items.iter().enumerate() {
            self.lines.push(format!("{key}[{i}]: {item}"));
        }
        self.json.push((key.to_string(), json!(items)));
    }

    fn print(&self, as_json: bool) {
        // Tolerate a closed pipe (e.g. piping into `head`).
        use std::io::Write;
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        if as_json {
            let map: serde_json::Map<String, Value> = self.json.iter().cloned().collect();
            let rendered =
                serde_json::to_string_pretty(&Value::Object(map)).expect("valid json");
            let _ = writeln!(out, "{rendered}");
        } else {
            for line in &self.lines {
                if writeln!(out, "{line}").is_err() {
                    return;
                }
            }
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn precondition(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn diagnostic(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

fn load(path: &Path) -> Result<HgFile, Failure> {
    io::load(path).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

fn edge_text(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn map_lines(emb: &Embedding) -> Vec<String> {
    emb.map
        .iter()
        .enumerate()
        .filter_map(|(v, img)| img.map(|w| format!("{v}->{w}")))
        .collect()
}

fn route_name(r: &FinderRoute) -> &'static str {
    match r {
        FinderRoute::LightPartner => "light-partner",
        FinderRoute::Discharge => "discharge",
        FinderRoute::Exhaustive => "exhaustive",
    }
}

fn trace_lines(trace: &CaseTrace) -> Vec<String> {
    let mut out = Vec::new();
    out.push(format!("route = {}", trace.route.label()));
    out.push(format!(
        "peel rounds={} edges-after={}",
        trace.peel_rounds, trace.host_edges_after_peel
    ));
    if trace.shared_label_swap {
        out.push("host-relabel: swap shared labels".into());
    }
    for r in &trace.tree_relabels {
        out.push(format!("tree-relabel: {r}"));
    }
    if let Some(p) = &trace.special {
        out.push(format!(
            "special-pair e=[{}] f=[{}] a={} b={} c={} d={} w(e)={} w(f)={} w(shared)={}",
            edge_text(&p.e),
            edge_text(&p.f),
            p.a,
            p.b,
            p.c,
            p.d,
            format_rational(&p.weight_e),
            format_rational(&p.weight_f),
            format_rational(&p.weight_shared)
        ));
    }
    for g in &trace.gates {
        out.push(format!(
            "gate[{}] {}: actual={} required={} {}",
            if g.hard { "hard" } else { "advisory" },
            g.name,
            g.actual,
            g.required,
            if g.passed { "PASS" } else { "FAIL" }
        ));
    }
    if let Some(d) = &trace.discharge {
        let light = d.light.iter().filter(|&&l| l).count();
        out.push(format!(
            "discharge threshold={} light-edges={} route={} transfers={}",
            format_rational(&d.threshold),
            light,
            route_name(&d.route),
            d.transfers.len()
        ));
        for t in &d.transfers {
            out.push(format!(
                "transfer e{} -> e{} amount={}",
                t.from,
                t.to,
                format_rational(&t.amount)
            ));
        }
    }
    for p in &trace.placements {
        let assigned: Vec<String> =
            p.assigned.iter().map(|(l, w)| format!("{l}->{w}")).collect();
        out.push(format!(
            "place {:?} -> ({},{}): {}",
            p.tree_pair,
            p.host_pair.0,
            p.host_pair.1,
            assigned.join(" ")
        ));
    }
    out
}

fn embed_error_failure(e: &EmbedError) -> Failure {
    match e {
        EmbedError::Precondition(p) => Failure::precondition(format!("{p}")),
        other => Failure::diagnostic(format!("{other}")),
    }
}

fn run(cli: &Cli) -> Result<(Report, u8), Failure> {
    match &cli.command {
        Command::Analyze { file, cap } => analyze(file, *cap),
        Command::Embed { tree, host, trace, fallback, budget } => {
            embed(tree, host, *trace, *fallback, *budget)
        }
        Command::Turan { n, tree, budget } => turan(*n, tree, *budget),
        Command::VerifyWeights { file } => verify_weights(file),
        Command::Peel { file, q, output } => peel(file, q, output.as_deref()),
        Command::Enumerate { r, t } => enumerate(*r, *t),
        Command::Steiner { n, t, output } => steiner(*n, *t, output.as_deref()),
        Command::Audit { host, tree, trace } => audit(host, tree, *trace),
    }
}

fn analyze(file: &Path, cap: usize) -> Result<(Report, u8), Failure> {
    let f = load(file)?;
    let g = &f.graph;
    let mut report = Report::new();
    report.str_field("file", &file.display().to_string());
    report.int_field("r", g.uniformity());
    report.int_field("n", g.vertex_count());
    report.int_field("edges", g.edge_count());

    let Some(witness) = find_proper_ordering(g) else {
        report.str_field("tight", "no");
        return Ok((report, 1));
    };
    report.str_field("tight", "yes");
    let order: Vec<String> = witness.ordering.iter().map(usize::to_string).collect();
    report.str_field("order", &order.join(" "));
    report.int_field("backtracks", witness.backtracks);
    let lv = leaves(g);
    report.str_field("leaves", &edge_text(&lv));

    if g.edge_count() == 1 {
        report.str_field("trunk-size", "1");
        return Ok((report, 0));
    }
    if g.edge_count() >= 2 {
        match min_trunk_size(g, cap) {
            Ok(TrunkSize::Exact(k)) => report.int_field("trunk-size", k),
            Ok(TrunkSize::MoreThan(c)) => report.str_field("trunk-size", &format!("> {c}")),
            Err(e) => return Err(Failure::precondition(format!("{e}"))),
        }
    }
    if g.uniformity() == 3 {
        if let Ok(cert) = two_edge_trunk(g) {
            report.str_field(
                "trunk",
                &format!("{} {}", cert.trunk_edges[0], cert.trunk_edges[1]),
            );
            let p = trunk_profile(g, cert.trunk_edges[0], cert.trunk_edges[1])
                .expect("certified trunk has a profile");
            report.str_field(
                "attachments",
                &format!(
                    "xy={} xu={} xv={} yu={} yv={} (x={} y={} u={} v={})",
                    p.count(TrunkPair::XY),
                    p.count(TrunkPair::XU),
                    p.count(TrunkPair::XV),
                    p.count(TrunkPair::YU),
                    p.count(TrunkPair::YV),
                    p.x,
                    p.y,
                    p.u,
                    p.v
                ),
            );
        }
    }
    Ok((report, 0))
}

fn embed(
    tree_path: &Path,
    host_path: &Path,
    want_trace: bool,
    fallback: bool,
    budget: u64,
) -> Result<(Report, u8), Failure> {
    let tree = load(tree_path)?.graph;
    let host = load(host_path)?.graph;
    let mut report = Report::new();
    report.str_field("tree", &tree_path.display().to_string());
    report.int_field("tree-edges", tree.edge_count());
    report.str_field("host", &host_path.display().to_string());
    report.int_field("host-edges", host.edge_count());
    report.field(
        "bound",
        format_rational(&shadow_bound(&host, tree.edge_count())),
        json!(format_rational(&shadow_bound(&host, tree.edge_count()))),
    );

    let cert = match two_edge_trunk(&tree) {
        Ok(c) => c,
        Err(TreeError::NotTightTree) => {
            return Err(Failure::precondition("tree file is not a tight tree"))
        }
        Err(e) => return Err(Failure::precondition(format!("{e}"))),
    };

    match tighttree::embed::embed_trunk2(&tree, &cert, &host) {
        Ok((emb, trace)) => {
            report.str_field("result", "embedded");
            report.str_field("route", &trace.route.label());
            report.str_field("map", &map_lines(&emb).join(" "));
            if want_trace {
                report.list_field("trace", trace_lines(&trace));
            }
            Ok((report, 0))
        }
        Err(e) => {
            if !fallback {
                return Err(embed_error_failure(&e));
            }
            report.str_field("pipeline-error", &format!("{e}"));
            match embed_backtracking(&tree, &host, budget) {
                BacktrackOutcome::Found(emb) => {
                    report.str_field("result", "embedded (fallback)");
                    report.str_field("map", &map_lines(&emb).join(" "));
                    Ok((report, 0))
                }
                BacktrackOutcome::NoCopy => {
                    report.str_field("result", "no embedding");
                    Ok((report, 1))
                }
                BacktrackOutcome::BudgetExhausted => {
                    Err(Failure::diagnostic("fallback embedder ran out of budget"))
                }
            }
        }
    }
}

fn turan(n: usize, tree_path: &Path, budget: u64) -> Result<(Report, u8), Failure> {
    let tree = load(tree_path)?.graph;
    let t = tree.edge_count();
    let result = brute_force_turan(n, &tree, budget)
        .map_err(|e| Failure::precondition(format!("{e}")))?;
    let bound = turan_bound(tree.uniformity(), t, n)
        .map_err(|e| Failure::precondition(format!("{e}")))?;
    let mut report = Report::new();
    report.str_field("tree", &tree_path.display().to_string());
    report.int_field("tree-edges", t);
    report.int_field("n", n);
    let line = format!(
        "ex = {} (bound {}) {}",
        result.max_edges,
        format_rational(&bound),
        if result.complete { "COMPLETE" } else { "INCOMPLETE" }
    );
    report.raw_line(line.clone());
    report.json.push(("ex".into(), json!(result.max_edges)));
    report.json.push(("bound".into(), json!(format_rational(&bound))));
    report.json.push(("complete".into(), json!(result.complete)));
    // A completed value above the conjectured bound would be a finding
    // worth a second look; report it, never suppress it.
    if tighttree::rational::rat_usize(result.max_edges) > bound {
        report.str_field("bound-exceeded", "FINDING: value exceeds the conjectured bound");
    }
    report.field("nodes", result.nodes.to_string(), json!(result.nodes));
    let witness: Vec<String> = result.witness.edges().iter().map(|e| edge_text(e)).collect();
    report.list_field("witness", witness);
    Ok((report, 0))
}

fn verify_weights(file: &Path) -> Result<(Report, u8), Failure> {
    let g = load(file)?.graph;
    let id = g.weight_identity_check();
    let mut report = Report::new();
    report.str_field("file", &file.display().to_string());
    let line = format!(
        "{} = {} {}",
        format_rational(&id.lhs),
        id.rhs,
        if id.equal { "OK" } else { "FAIL" }
    );
    report.raw_line(line);
    report.json.push(("lhs".into(), json!(format_rational(&id.lhs))));
    report.json.push(("rhs".into(), json!(id.rhs)));
    report.json.push(("equal".into(), json!(id.equal)));
    Ok((report, if id.equal { 0 } else { 3 }))
}

fn peel(file: &Path, q_str: &str, output: Option<&Path>) -> Result<(Report, u8), Failure> {
    let g = load(file)?.graph;
    let q = parse_rational(q_str)
        .ok_or_else(|| Failure::precondition(format!("cannot parse threshold {q_str:?}")))?;
    let out = g.peel_to_min_codegree(&q);
    let mut report = Report::new();
    report.str_field("file", &file.display().to_string());
    report.str_field("q", &format_rational(&q));
    report.int_field("edges-before", g.edge_count());
    report.int_field("edges-after", out.graph.edge_count());
    report.int_field("rounds", out.rounds);
    report.str_field("empty", if out.empty { "yes" } else { "no" });
    if !out.empty {
        let delta = out.graph.min_p_degree(out.graph.uniformity() - 1).expect("nonempty");
        report.int_field("min-codegree-after", delta);
    }
    if let Some(path) = output {
        io::save(&out.graph, None, path)
            .map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))?;
        report.str_field("output", &path.display().to_string());
    }
    Ok((report, 0))
}

fn enumerate(r: usize, t: usize) -> Result<(Report, u8), Failure> {
    let trees =
        enumerate_tight_trees(r, t).map_err(|e| Failure::precondition(format!("{e}")))?;
    let mut report = Report::new();
    report.int_field("r", r);
    report.int_field("t", t);
    report.int_field("count", trees.len());
    let rendered: Vec<String> = trees
        .iter()
        .map(|tree| {
            tree.edges().iter().map(|e| format!("[{}]", edge_text(e))).collect::<Vec<_>>().join(" ")
        })
        .collect();
    report.list_field("tree", rendered);
    Ok((report, 0))
}

fn steiner(n: usize, t: usize, output: Option<&Path>) -> Result<(Report, u8), Failure> {
    let c = steiner_lower_bound(n, t).map_err(|e| Failure::precondition(format!("{e}")))?;
    let mut report = Report::new();
    report.int_field("n", n);
    report.int_field("t", t);
    report.int_field("block-size", c.block_size);
    report.int_field("blocks", c.blocks.len());
    report.int_field("edges", c.graph.edge_count());
    let sb = shadow_bound(&c.graph, t);
    report.str_field("shadow-bound", &format_rational(&sb));
    let tb = turan_bound(3, t, n).map_err(|e| Failure::precondition(format!("{e}")))?;
    report.str_field("turan-bound", &format_rational(&tb));
    let ratio = tighttree::rational::rat_usize(c.graph.edge_count()) / tb;
    report.str_field("edges-to-bound-ratio", &format_rational(&ratio));
    let blocks: Vec<String> = c.blocks.iter().map(|b| edge_text(b)).collect();
    report.list_field("block", blocks);
    if let Some(path) = output {
        io::save(&c.graph, None, path)
            .map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))?;
        report.str_field("output", &path.display().to_string());
    }
    Ok((report, 0))
}

fn audit(host_path: &Path, tree_path: &Path, want_trace: bool) -> Result<(Report, u8), Failure> {
    let host = load(host_path)?.graph;
    let tree = load(tree_path)?.graph;
    let mut report = Report::new();
    report.str_field("host", &host_path.display().to_string());
    report.str_field("tree", &tree_path.display().to_string());
    let audit = bound_audit(&host, &tree).map_err(|e| match e {
        AuditError::Tree(t) => Failure::precondition(format!("{t}")),
        AuditError::Embed(ee) => embed_error_failure(&ee),
    })?;
    report.int_field("edges", audit.edges);
    report.int_field("shadow", audit.shadow);
    report.str_field("bound", &format_rational(&audit.bound));
    match audit.verdict {
        AuditVerdict::BoundSatisfied => {
            report.str_field("verdict", "bound satisfied");
        }
        AuditVerdict::CopyFound(boxed) => {
            let (emb, trace) = *boxed;
            report.str_field("verdict", "copy found");
            report.str_field("route", &trace.route.label());
            report.str_field("map", &map_lines(&emb).join(" "));
            if want_trace {
                report.list_field("trace", trace_lines(&trace));
            }
        }
    }
    Ok((report, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    let _ = cli.seed;
    match run(&cli) {
        Ok((report, code)) => {
            report.print(cli.json);
            ExitCode::from(code)
        }
        Err(f) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "error": f.message }))
                        .expect("valid json")
                );
            } else {
                println!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
