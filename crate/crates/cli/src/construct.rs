use crate::input::IndicatorFile;
use crate::{emit, CmdResult};
use clap::{Subcommand, ValueEnum};
use endoreg::indicators::{build_indicator, estimate_size, rigid_family, DEFAULT_CAP};
use endoreg::tiling::{build_factor, build_tiling, default_h, find_u, first_accepting_index};
use endoreg::{build_sausage, emit_d6, emit_g6, family_f1, family_f2, FMap};
use serde_json::json;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    F1,
    F2,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// S(d, l, f) as digraph6, with an optional vertex name table.
    Sausage {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ell: usize,
        /// l(d-2) signs over "+0-", rows i = 1..l, columns j = d-1 down to 2.
        #[arg(long)]
        f: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the vertex name table as JSON here.
        #[arg(long)]
        names: Option<PathBuf>,
    },
    /// A member of a gadget family: F1 as digraph6, F2 as an oriented indicator file.
    Gadget {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value_t = Family::F2)]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The tiling graph G(g, i), or with --factor the tiling factor T, T', T-bar.
    Tiling {
        #[arg(long, default_value_t = 7)]
        g: usize,
        /// Generation; with --factor defaults to the first accepting one.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        factor: bool,
        /// graph6 output (one line per graph).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON with border, antipode and, for factors, U and h.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// The d-indicator S(d, g) as an indicator file.
    Indicator {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 7)]
        g: usize,
        /// Refuse to build anything larger than this many vertices.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mutually rigid d-regular graphs of odd girth g, one graph6 line each.
    Family {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 7)]
        g: usize,
        #[arg(long, default_value_t = 2)]
        count: usize,
        /// Refuse to build anything larger than this many vertices.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(c: &ConstructCmd) -> CmdResult {
    match c {
        ConstructCmd::Sausage {
            d,
            ell,
            f,
            out,
            names,
        } => {
            let s = build_sausage(&FMap::parse(*d, *ell, f)?);
            emit(out.as_deref(), &emit_d6(&s.digraph))?;
            if let Some(p) = names {
                emit(
                    Some(p),
                    &serde_json::to_string(&json!({ "f": s.f.to_string(), "names": s.names }))?,
                )?;
            }
        }
        ConstructCmd::Gadget {
            d,
            ell,
            family,
            out,
        } => match family {
            Family::F1 => emit(out.as_deref(), &emit_d6(&family_f1(*d, *ell)?.digraph))?,
            Family::F2 => {
                let (_, ind) = family_f2(*d, *ell)?;
                emit(
                    out.as_deref(),
                    &serde_json::to_string(&IndicatorFile::from_indicator(&ind))?,
                )?;
            }
        },
        ConstructCmd::Tiling {
            g,
            i,
            factor,
            out,
            sidecar,
        } => {
            if *factor {
                let (t, u) = match i {
                    Some(i) => {
                        let t = build_tiling(*g, *i)?;
                        let u = find_u(&t, default_h(*g))?
                            .ok_or_else(|| format!("no admissible U in G({g},{i})"))?;
                        (t, u)
                    }
                    None => first_accepting_index(*g, default_h(*g), 40)?
                        .ok_or("no accepting index up to 40")?,
                };
                let f = build_factor(&t, &u)?;
                let text = [&f.t, &f.t_prime, &f.t_bar].map(emit_g6).join("\n");
                emit(out.as_deref(), &text)?;
                if let Some(p) = sidecar {
                    let js = json!({ "g": g, "i": t.i, "h": f.h, "u": f.u, "antipode": t.antipode, "border": t.border });
                    emit(Some(p), &js.to_string())?;
                }
            } else {
                let t = build_tiling(*g, i.unwrap_or(1))?;
                emit(out.as_deref(), &emit_g6(&t.graph))?;
                if let Some(p) = sidecar {
                    let js = json!({ "g": g, "i": t.i, "antipode": t.antipode, "border": t.border, "faces": t.faces });
                    emit(Some(p), &js.to_string())?;
                }
            }
        }
        ConstructCmd::Indicator { d, g, cap, out } => {
            let b = build_indicator(*d, *g, *cap)?;
            eprintln!("S({d},{g}): {} vertices", b.graph().n());
            emit(
                out.as_deref(),
                &serde_json::to_string(&IndicatorFile::from_indicator(&b.indicator))?,
            )?;
        }
        ConstructCmd::Family {
            d,
            g,
            count,
            cap,
            out,
        } => {
            eprintln!("S({d},{g}) has {} vertices", estimate_size(*d, *g)?);
            let graphs = rigid_family(*d, *g, *count, *cap)?;
            emit(
                out.as_deref(),
                &graphs.iter().map(emit_g6).collect::<Vec<_>>().join("\n"),
            )?;
        }
    }
    Ok(true)
}
