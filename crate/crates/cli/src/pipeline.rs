use crate::input::{load_graphs, load_monoid};
use crate::{emit, CmdResult, Global};
use clap::{Args, Subcommand};
use endoreg::homogenize::verify_stage;
use endoreg::indicators::{Status, DEFAULT_CAP};
use endoreg::metrics::is_connected;
use endoreg::pipeline::represent::{plan, EndCertificate};
use endoreg::pipeline::search::check_graphs;
use endoreg::pipeline::{
    census_suite, gadget_suite, hom_formula_suite, homogenize_suite, indicator_suite,
    order_table_rows, represent as build, search as run_search, tiling_suite, transport_suite,
    CensusOptions, Predicate, RepresentOptions, SearchSpec, SuiteReport, TABLE_CELLS,
};
use endoreg::{emit_g6, emit_system, homogenize_trace, Monoid};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Args, Debug)]
pub struct HomogenizeArgs {
    /// `trivial`, `semilattice`, `cyclic:N` or a monoid JSON file.
    #[arg(long)]
    pub monoid: String,
    /// Where to write the final degree-constant system (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print every stage with its degree histogram to stderr.
    #[arg(long)]
    pub trace: bool,
    /// Compare each stage's transported endomorphisms with the engine.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct RepresentArgs {
    /// `trivial`, `semilattice`, `cyclic:N` or a monoid JSON file.
    #[arg(long)]
    pub monoid: String,
    /// Odd girth, odd and at least 7.
    #[arg(long, default_value_t = 7)]
    pub g: usize,
    /// Refuse to build anything larger than this many vertices.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// graph6 output of the constructed graph.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Only print the size plan.
    #[arg(long)]
    pub plan: bool,
    /// Attempt the End(G) = M certificate under the budget.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n_max: usize,
    /// Minimum girth of the candidates.
    #[arg(long)]
    pub girth: Option<usize>,
    /// Check the graphs of a graph6 stream instead of generating them.
    #[arg(long)]
    pub from_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    /// Smallest rigid d-regular graph.
    Nu(OrderArgs),
    /// Smallest asymmetric d-regular graph.
    Mu(OrderArgs),
    /// Recompute the desk-scale cells of the smallest rigid/asymmetric table.
    OrderTable {
        /// Include the quartic girth-5 cell (hours of generation).
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Listed codes, cubic and quartic families, complements.
    Census {
        #[arg(long, default_value_t = 20)]
        max_r: usize,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        #[arg(long)]
        no_complements: bool,
    },
    /// Engine hom counts between gadget digraphs against the closed formula.
    HomFormula {
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4])]
        d: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
        ell: Vec<usize>,
    },
    /// Degree profiles, triangles and mutual rigidity of the gadget families.
    Gadgets {
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5])]
        d: Vec<usize>,
    },
    /// Tiling graphs and the tiling factor.
    Tiling {
        #[arg(long, default_value_t = 7)]
        g: usize,
        #[arg(long, default_value_t = 4)]
        aut_up_to: usize,
    },
    /// Hypothesis reports for S(d, g).
    Indicators {
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5])]
        d: Vec<usize>,
        #[arg(long, default_value_t = 7)]
        g: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Hom-set transport through S(3, g) on random small systems (uses --seed).
    Transport {
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 7)]
        g: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Homogenization stages for all small monoids, optionally a full representation.
    Pipeline {
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        /// Also run the representation of this monoid.
        #[arg(long)]
        represent: Option<String>,
        #[arg(long, default_value_t = 7)]
        g: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

fn histogram(h: &[(usize, usize)]) -> String {
    h.iter()
        .map(|(d, c)| format!("{d}x{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn homogenize(a: &HomogenizeArgs, global: &Global) -> CmdResult {
    let m = load_monoid(&a.monoid)?;
    let trace = homogenize_trace(&m)?;
    let cfg = global.config();
    let mut ok = true;
    for s in &trace {
        if a.trace {
            eprintln!(
                "{}: n = {}, colours = {}, arcs = {}, degrees {}",
                s.stage,
                s.n(),
                s.system.colour_count(),
                s.system.total_arcs(),
                histogram(&s.degree_histogram())
            );
        }
        if a.verify {
            let c = verify_stage(s, &cfg);
            let pass = c.matches && c.engine == m.n();
            ok &= pass;
            let tag = if !c.complete {
                "UNKNOWN"
            } else if pass {
                "PASS"
            } else {
                "FAIL"
            };
            eprintln!(
                "{tag} {} |End| = {} (engine {}, transported {})",
                s.stage,
                m.n(),
                c.engine,
                c.transported
            );
        }
    }
    let last = trace.last().expect("nonempty trace");
    ok &= last.is_degree_constant();
    emit(a.out.as_deref(), &emit_system(&last.system))?;
    Ok(ok)
}

pub fn represent(a: &RepresentArgs, global: &Global) -> CmdResult {
    let m = load_monoid(&a.monoid)?;
    let p = plan(&m, a.g, a.cap)?;
    let bound = if p.exact { "" } else { "at least " };
    eprintln!(
        "plan: d = {}, colours = {} ({} padding), system {} vertices, gadget digraph {} vertices / {} arcs, S(d,g) {bound}{} vertices, G {bound}{} vertices",
        p.d, p.colours, p.padding, p.system_order, p.digraph_order, p.digraph_arcs, p.indicator_order, p.estimate
    );
    if a.plan {
        return Ok(p.estimate <= a.cap as u128);
    }
    let opts = RepresentOptions {
        cap: a.cap,
        stage_config: Some(global.config()),
        end_config: a.certify.then(|| global.config()),
    };
    let r = build(&m, a.g, &opts)?;
    let c = &r.certificates;
    eprintln!(
        "G: {} vertices, {}-regular {}, odd girth {:?}",
        r.graph.n(),
        r.d,
        c.regular,
        c.odd_girth
    );
    eprintln!(
        "monoid transported to endomorphisms of G: {}",
        c.transported
    );
    let mut ok = c.regular && c.odd_girth == Some(a.g) && c.transported;
    for s in &c.stages {
        eprintln!(
            "stage {}: engine {}, transported {}, complete {}, matches {}",
            s.stage, s.engine, s.transported, s.complete, s.matches
        );
        ok &= s.matches;
    }
    match &c.end {
        EndCertificate::NotRequested => {}
        EndCertificate::Isomorphic { iso } => eprintln!("End(G) isomorphic to M via {iso:?}"),
        EndCertificate::Mismatch { found } => {
            eprintln!("End(G) differs from M ({found} endomorphisms found)");
            ok = false;
        }
        EndCertificate::Unknown { found } => {
            eprintln!("End(G) certificate unknown: budget exhausted after {found} endomorphisms");
            ok = false;
        }
    }
    emit(a.out.as_deref(), &emit_g6(&r.graph))?;
    Ok(ok)
}

fn from_file(path: &Path, a: &OrderArgs, predicate: Predicate, global: &Global) -> CmdResult {
    let graphs = load_graphs(path)?;
    let mut by_n: BTreeMap<usize, Vec<_>> = BTreeMap::new();
    for g in graphs {
        if g.regular_degree() == Some(a.d) && is_connected(&g) && g.n() <= a.n_max {
            by_n.entry(g.n()).or_default().push(g);
        }
    }
    let cfg = global.config();
    let mut complete = true;
    println!("{predicate} {}-regular graphs from {}", a.d, path.display());
    for (n, gs) in &by_n {
        let verdicts = check_graphs(gs, predicate, &cfg);
        let hits: Vec<usize> = (0..gs.len()).filter(|&i| verdicts[i].holds()).collect();
        let unknown = verdicts
            .iter()
            .filter(|v| matches!(v, endoreg::Verdict::Unknown))
            .count();
        complete &= unknown == 0;
        let witness = hits
            .first()
            .map(|&i| format!(" witness={}", emit_g6(&gs[i])))
            .unwrap_or_default();
        println!(
            "  n={n:>2} connected={:>6} witnesses={:>5} unknown={unknown}{witness}",
            gs.len(),
            hits.len()
        );
    }
    Ok(complete)
}

fn order_search(a: &OrderArgs, predicate: Predicate, global: &Global) -> CmdResult {
    if let Some(p) = &a.from_file {
        return from_file(p, a, predicate, global);
    }
    let spec = SearchSpec {
        d: a.d,
        n_max: a.n_max,
        min_girth: a.girth,
        predicate,
        stop_at_first: false,
    };
    let r = run_search(spec, &global.config())?;
    println!("{r}");
    Ok(r.rows.iter().all(|row| row.complete))
}

pub fn search(c: &SearchCmd, global: &Global) -> CmdResult {
    match c {
        SearchCmd::Nu(a) => order_search(a, Predicate::Rigid, global),
        SearchCmd::Mu(a) => order_search(a, Predicate::Asymmetric, global),
        SearchCmd::OrderTable { all } => {
            let cells = if *all {
                &TABLE_CELLS[..]
            } else {
                &TABLE_CELLS[..3]
            };
            let mut ok = true;
            for cell in order_table_rows(cells, global.budget()) {
                let show = |o: &endoreg::pipeline::search::CellOutcome| match o.order() {
                    Some(n) => n.to_string(),
                    None if o == &endoreg::pipeline::search::CellOutcome::Skipped => {
                        "skipped".into()
                    }
                    None => "not found".into(),
                };
                let tag = if cell.matches() {
                    "PASS"
                } else if cell.skipped() {
                    "SKIP"
                } else {
                    ok = false;
                    "FAIL"
                };
                println!(
                    "{tag} d={} girth>={}: asymmetric {} (expected {}), rigid {} (expected {})",
                    cell.d,
                    cell.girth,
                    show(&cell.asym),
                    cell.expected_asym,
                    show(&cell.rigid),
                    cell.expected_rigid
                );
            }
            Ok(ok)
        }
    }
}

fn represent_item(
    report: &mut SuiteReport,
    m: &Monoid,
    spec: &str,
    g: usize,
    cap: usize,
    global: &Global,
) {
    let opts = RepresentOptions {
        cap,
        stage_config: Some(global.config()),
        end_config: Some(global.config()),
    };
    let label = format!("represent({spec}, {g})");
    match build(m, g, &opts) {
        Ok(r) => {
            let c = &r.certificates;
            report.flag(
                '9',
                format!("{label}: {}-regular of odd girth {g}", r.d),
                c.regular && c.odd_girth == Some(g),
            );
            report.flag(
                '9',
                format!("{label}: monoid transports to End(G)"),
                c.transported,
            );
            let status = match c.end {
                EndCertificate::Isomorphic { .. } => Status::Pass,
                EndCertificate::Unknown { .. } => Status::Unknown,
                _ => Status::Fail,
            };
            report.push(
                '9',
                format!("{label}: End(G) isomorphic to M"),
                status,
                c.end.label(),
            );
        }
        Err(e) => report.push('9', format!("{label}: builds"), Status::Fail, e.to_string()),
    }
}

pub fn verify(c: &VerifyCmd, global: &Global) -> CmdResult {
    let cfg = global.config();
    let report = match c {
        VerifyCmd::Census {
            max_r,
            k_max,
            no_complements,
        } => census_suite(&CensusOptions {
            max_r: *max_r,
            k_range: 3..=*k_max,
            complements: !no_complements,
            config: cfg,
        }),
        VerifyCmd::HomFormula { d, ell } => hom_formula_suite(d, ell, &cfg),
        VerifyCmd::Gadgets { d } => gadget_suite(d, &cfg),
        VerifyCmd::Tiling { g, aut_up_to } => tiling_suite(*g, *aut_up_to, &cfg),
        VerifyCmd::Indicators { d, g, cap } => {
            let mut r = SuiteReport::default();
            for &d in d {
                r.merge(indicator_suite(d, *g, *cap, &cfg));
            }
            r
        }
        VerifyCmd::Transport { pairs, g, cap } => {
            transport_suite(*pairs, *g, global.seed, *cap, &cfg)
        }
        VerifyCmd::Pipeline {
            max_order,
            represent,
            g,
            cap,
        } => {
            let mut r = homogenize_suite(*max_order, &cfg);
            if let Some(spec) = represent {
                represent_item(&mut r, &load_monoid(spec)?, spec, *g, *cap, global);
            }
            r
        }
    };
    print!("{report}");
    let (fail, unknown) = (report.failures().count(), report.unknowns().count());
    println!(
        "{} passed, {fail} failed, {unknown} unknown",
        report.items.len() - fail - unknown
    );
    Ok(report.passed())
}
