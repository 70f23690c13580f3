//! Monoid representation: a degree-constant system is turned into a d-regular
//! graph of prescribed odd girth whose endomorphism monoid is the given monoid.

use crate::graph::{Graph, GraphError, Indicator, RelSystem};
use crate::homogenize::{
    homogenize_trace, verify_stage, HomogenizeError, StageCheck, StagedSystem,
};
use crate::homsearch::{
    is_homomorphism, monoid_iso, solve, EndMonoid, HomProblem, Mode, SearchConfig,
};
use crate::indicators::{
    build_indicator, estimate_size, size_lower_bound, IndicatorError, DEFAULT_CAP,
};
use crate::metrics::odd_girth;
use crate::monoid::Monoid;
use crate::products::{sip, sip_vec, ProductError};
use crate::sausage::{family_f2, SausageError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepresentError {
    #[error("odd girth must be odd and at least 7, got {0}")]
    Girth(usize),
    #[error("{} {estimate} vertices exceeds the cap of {cap} (degree {d})", if *.exact { "estimated" } else { "at least" })]
    TooLarge {
        estimate: u128,
        exact: bool,
        cap: usize,
        d: usize,
    },
    #[error("homogenized system is not degree-constant")]
    NotRegular,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Homogenize(#[from] HomogenizeError),
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Sausage(#[from] SausageError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Sizes of every intermediate object, known before the final product is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentPlan {
    pub d: usize,
    /// Colours of the padded system, one oriented gadget each.
    pub colours: usize,
    /// Loop colours added to reach positive in/out degree and total degree at least 3.
    pub padding: usize,
    pub system_order: usize,
    pub digraph_order: usize,
    pub digraph_arcs: usize,
    pub indicator_order: u128,
    /// |V(D)| + |A(D)| * |V(S(d, g))|, saturating.
    pub estimate: u128,
    /// False when the indicator size is only a lower bound because the exact one is above the cap.
    pub exact: bool,
}

/// Outcome of the budgeted End(G) = M check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndCertificate {
    NotRequested,
    /// The engine enumerated End(G) completely; `iso[m]` is the endomorphism matching element m.
    Isomorphic {
        iso: Vec<usize>,
    },
    /// End(G) is complete but differs from M.
    Mismatch {
        found: usize,
    },
    /// The budget ran out after `found` endomorphisms.
    Unknown {
        found: usize,
    },
}

impl EndCertificate {
    pub fn label(&self) -> &'static str {
        match self {
            EndCertificate::NotRequested => "not requested",
            EndCertificate::Isomorphic { .. } => "isomorphic",
            EndCertificate::Mismatch { .. } => "mismatch",
            EndCertificate::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificates {
    pub regular: bool,
    pub odd_girth: Option<usize>,
    pub order_matches_estimate: bool,
    /// Every monoid element, pushed through both products, is an endomorphism of G.
    pub transported: bool,
    pub stages: Vec<StageCheck>,
    pub end: EndCertificate,
}

#[derive(Clone, Debug)]
pub struct RepresentationResult {
    pub graph: Graph,
    pub d: usize,
    pub g: usize,
    pub monoid: Monoid,
    pub plan: RepresentPlan,
    pub certificates: Certificates,
}

#[derive(Clone, Debug)]
pub struct RepresentOptions {
    /// Refuse to build graphs with more vertices than this.
    pub cap: usize,
    /// Engine settings for the per-stage End checks; `None` skips them.
    pub stage_config: Option<SearchConfig>,
    /// Engine settings for the End(G) = M certificate; `None` skips it.
    pub end_config: Option<SearchConfig>,
}

impl Default for RepresentOptions {
    fn default() -> Self {
        RepresentOptions {
            cap: DEFAULT_CAP,
            stage_config: Some(SearchConfig::default()),
            end_config: None,
        }
    }
}

/// Adds loop colours until every vertex has an out- and in-arc and the total degree is at least 3.
pub fn pad_system(s: &StagedSystem) -> Result<(RelSystem, usize), RepresentError> {
    let sys = &s.system;
    let d = s.degrees.first().copied().unwrap_or(0);
    if !s.is_degree_constant() {
        return Err(RepresentError::NotRegular);
    }
    let needs_loops = (0..sys.n()).any(|v| sys.out_degree(v) == 0 || sys.in_degree(v) == 0);
    let mut extra = usize::from(needs_loops);
    while d + 2 * extra < 3 {
        extra += 1;
    }
    let mut out = sys.clone();
    for i in 0..extra {
        out = out.with_colour(&format!("pad:{i}"), (0..sys.n()).map(|v| (v, v)).collect())?;
    }
    Ok((out, extra))
}

fn gadgets(d: usize, colours: usize) -> Result<Vec<Indicator>, RepresentError> {
    (0..colours).map(|c| Ok(family_f2(d, c + 2)?.1)).collect()
}

/// Sizes of the construction without building the indicator. Sizes above `cap`
/// are lower bounds.
pub fn plan(m: &Monoid, g: usize, cap: usize) -> Result<RepresentPlan, RepresentError> {
    let trace = homogenize_trace(m)?;
    plan_from(trace.last().expect("nonempty trace"), g, cap)
}

fn plan_from(last: &StagedSystem, g: usize, cap: usize) -> Result<RepresentPlan, RepresentError> {
    if g < 7 || g.is_multiple_of(2) {
        return Err(RepresentError::Girth(g));
    }
    let (padded, padding) = pad_system(last)?;
    let d = padded.total_degree(0);
    let ind = gadgets(d, padded.colour_count())?;
    let dd = sip_vec(&padded, &ind)?;
    let (n, a) = (dd.carrier.n() as u128, dd.carrier.arc_count() as u128);
    let bound = size_lower_bound(d, g)?;
    let exact = n.saturating_add(a.saturating_mul(bound)) <= cap as u128;
    let s = if exact {
        estimate_size(d, g)? as u128
    } else {
        bound
    };
    Ok(RepresentPlan {
        d,
        colours: padded.colour_count(),
        padding,
        system_order: padded.n(),
        digraph_order: dd.carrier.n(),
        digraph_arcs: dd.carrier.arc_count(),
        indicator_order: s,
        estimate: n.saturating_add(a.saturating_mul(s)),
        exact,
    })
}

/// Builds G with End(G) = M, d-regular and of odd girth `g`, plus its certificates.
pub fn represent(
    m: &Monoid,
    g: usize,
    opts: &RepresentOptions,
) -> Result<RepresentationResult, RepresentError> {
    let trace = homogenize_trace(m)?;
    let last = trace.last().expect("nonempty trace");
    let plan = plan_from(last, g, opts.cap)?;
    if plan.estimate > opts.cap as u128 {
        return Err(RepresentError::TooLarge {
            estimate: plan.estimate,
            exact: plan.exact,
            cap: opts.cap,
            d: plan.d,
        });
    }
    let stages: Vec<StageCheck> = match &opts.stage_config {
        Some(cfg) => trace.iter().map(|s| verify_stage(s, cfg)).collect(),
        None => Vec::new(),
    };

    let (padded, _) = pad_system(last)?;
    let d = plan.d;
    let dd = sip_vec(&padded, &gadgets(d, padded.colour_count())?)?;
    let base = RelSystem::from_digraph(&dd.carrier, "a");
    let s = build_indicator(d, g, opts.cap)?;
    let gg = sip(&base, std::slice::from_ref(&s.indicator))?;
    let graph = gg.carrier.clone();

    let lifted: Option<Vec<Vec<usize>>> = last
        .endos
        .iter()
        .map(|phi| {
            let on_d = dd.transport(&dd, phi)?;
            gg.transport(&gg, &on_d)
        })
        .collect();
    let transported = lifted
        .as_ref()
        .is_some_and(|maps| maps.iter().all(|f| is_homomorphism(&graph, &graph, f)));

    let end = match &opts.end_config {
        None => EndCertificate::NotRequested,
        Some(cfg) => end_certificate(&graph, m, cfg),
    };
    let certificates = Certificates {
        regular: graph.regular_degree() == Some(d),
        odd_girth: odd_girth(&graph),
        order_matches_estimate: graph.n() as u128 == plan.estimate,
        transported,
        stages,
        end,
    };
    let result = RepresentationResult {
        graph,
        d,
        g,
        monoid: m.clone(),
        plan,
        certificates,
    };
    if !result.certificates.regular
        || result.certificates.odd_girth != Some(g)
        || !result.certificates.transported
    {
        return Err(RepresentError::Invariant(format!(
            "regular {}, odd girth {:?}, transported {}",
            result.certificates.regular,
            result.certificates.odd_girth,
            result.certificates.transported
        )));
    }
    Ok(result)
}

/// Enumerates End(G) up to |M| + 1 maps under the budget and compares with M.
pub fn end_certificate(graph: &Graph, m: &Monoid, config: &SearchConfig) -> EndCertificate {
    if m.n() == 1 {
        return match crate::homsearch::rigidity(graph, config) {
            crate::homsearch::Verdict::Yes => EndCertificate::Isomorphic { iso: vec![0] },
            crate::homsearch::Verdict::No { .. } => EndCertificate::Mismatch { found: 2 },
            crate::homsearch::Verdict::Unknown => EndCertificate::Unknown { found: 1 },
        };
    }
    let out = solve(
        &HomProblem::new(graph, graph, Mode::Enumerate)
            .limit(m.n() + 1)
            .config(config.clone()),
    );
    let found = out.maps.len();
    if !out.complete {
        return EndCertificate::Unknown { found };
    }
    if found != m.n() {
        return EndCertificate::Mismatch { found };
    }
    match EndMonoid::from_maps(out.maps).and_then(|e| monoid_iso(m, &e.to_monoid())) {
        Some(iso) => EndCertificate::Isomorphic { iso },
        None => EndCertificate::Mismatch { found },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_reaches_degree_four() {
        let t = crate::homogenize::homogenize(&Monoid::trivial()).unwrap();
        let (p, extra) = pad_system(&t).unwrap();
        assert_eq!((extra, p.total_degree(0)), (1, 4));
        let semi = plan(&Monoid::two_element_semilattice(), 7, DEFAULT_CAP).unwrap();
        assert!(semi.d >= 3 && semi.estimate > DEFAULT_CAP as u128 && !semi.exact);
        assert!(matches!(
            plan(&Monoid::trivial(), 8, DEFAULT_CAP),
            Err(RepresentError::Girth(8))
        ));
        let t = plan(&Monoid::trivial(), 7, DEFAULT_CAP).unwrap();
        assert!(
            t.exact
                && t.estimate
                    == t.digraph_order as u128 + t.digraph_arcs as u128 * t.indicator_order
        );
    }

    #[test]
    fn cap_is_enforced() {
        let opts = RepresentOptions {
            cap: 10,
            stage_config: None,
            end_config: None,
        };
        assert!(matches!(
            represent(&Monoid::trivial(), 7, &opts),
            Err(RepresentError::TooLarge { .. })
        ));
    }
}
