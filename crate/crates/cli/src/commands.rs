use std::sync::Arc;

use log::info;
use oscox::coxeter::{RootSystem, DEFAULT_GUARD};
use oscox::matroid::{BasisGraph, ReflectionOrder, Word};
use oscox::verify::{self, TopDegree, FULL_VERIFY_GUARD, TOP_DEGREE_GUARD};
use oscox::algebra::Algebra;
use oscox::Result;
use serde_json::{json, Value};

use crate::{cache, Cli, Command, Common, Scope};

/// Runs a subcommand; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Roots { ty } => roots(cli, &RootSystem::new(ty.clone())),
        Command::Gamma { common, stats, dot, cache } => gamma(cli, common, *stats, *dot, *cache),
        Command::Rewrite { common, letters } => rewrite(cli, common, letters),
        Command::Verify { common, scope } => match scope {
            Scope::Top => top(cli, common),
            Scope::Full => full(cli, common),
        },
    }
}

fn print_json(v: &impl serde::Serialize) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn roots(cli: &Cli, rs: &RootSystem) -> Result<bool> {
    let n = rs.num_positive();
    let simple = |r: usize| rs.simple_index_of(r).map(|i| i + 1);
    if cli.json {
        let list: Vec<Value> = (0..n)
            .map(|r| json!({ "index": r + 1, "simple": simple(r), "coords": rs.coords(r) }))
            .collect();
        print_json(&json!({
            "type": rs.coxeter_type(),
            "rank": rs.rank(),
            "positive": n,
            "roots": 2 * n,
            "group_order": rs.group_order().to_string(),
            "positive_roots": list,
        }));
        return Ok(true);
    }
    out!("type {}  rank {}  |W| = {}", rs.coxeter_type(), rs.rank(), rs.group_order());
    out!("N = {n} positive roots, 2N = {} roots", 2 * n);
    for r in 0..n {
        let tag = simple(r).map(|i| format!("s{i}")).unwrap_or_default();
        let coords = match rs.coords(r) {
            Some(c) => c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            None => "-".to_string(),
        };
        out!("{:>4}  {tag:<4} ({coords})", r + 1);
    }
    Ok(true)
}

fn setup(common: &Common) -> Result<(Arc<RootSystem>, ReflectionOrder)> {
    let rs = Arc::new(RootSystem::new(common.ty.clone()));
    let order = ReflectionOrder::parse(&rs, &common.order)?;
    Ok((rs, order))
}

/// The graph from the cache if present, else freshly built (and stored when
/// `store` is set).
fn graph(cli: &Cli, rs: &Arc<RootSystem>, order: &ReflectionOrder, guard: u128, store: bool) -> Result<BasisGraph> {
    let name = rs.coxeter_type().to_string();
    let dir = cache::resolve_dir(cli.cache_dir.as_deref());
    let path = dir.as_deref().map(|d| cache::path_in(d, &name, order));
    if let Some(g) = path.as_deref().and_then(|p| cache::load(p, &name, order)) {
        return Ok(g);
    }
    let arr = oscox::matroid::Arrangement::new(rs.clone(), order.clone());
    let g = BasisGraph::build(&arr, guard)?;
    info!("built basis graph for {name}: {} nodes", g.node_count());
    if store {
        let path = path.ok_or_else(|| oscox::Error::Cache("no cache directory; pass --cache-dir".into()))?;
        cache::store(&path, &g)?;
        eprintln!("cached {}", path.display());
    }
    Ok(g)
}

fn gamma(cli: &Cli, common: &Common, stats: bool, dot: bool, store: bool) -> Result<bool> {
    let (rs, order) = setup(common)?;
    let g = graph(cli, &rs, &order, common.guard(DEFAULT_GUARD), store)?;
    if dot {
        let dot = g.to_dot();
        out!("{}", dot.trim_end());
    }
    if stats || !(dot || store) {
        let degrees: Vec<String> = g.degree_counts().iter().map(ToString::to_string).collect();
        if cli.json {
            print_json(&json!({
                "type": g.type_name(),
                "order": order.as_permutation(),
                "nodes": g.node_count(),
                "edges": g.edge_count(),
                "paths": g.path_count().to_string(),
                "degree_counts": degrees,
            }));
        } else {
            out!("type={} order={}", g.type_name(), order);
            out!("nodes={} edges={} paths={}", g.node_count(), g.edge_count(), g.path_count());
            out!("degree_counts={}", degrees.join(","));
        }
    }
    Ok(true)
}

fn rewrite(cli: &Cli, common: &Common, letters: &[u16]) -> Result<bool> {
    let (rs, order) = setup(common)?;
    let g = graph(cli, &rs, &order, common.guard(DEFAULT_GUARD), false)?;
    let alg = Algebra::with_graph(rs, order, g)?;
    let x = alg.to_nbc(&Word::from(letters))?;
    if cli.json {
        print_json(&x);
    } else {
        out!("{x}");
    }
    Ok(true)
}

/// Generator subset in 1-based notation, e.g. `{s1,s3}`.
fn subset(s: &[usize]) -> String {
    let gens: Vec<String> = s.iter().map(|i| format!("s{}", i + 1)).collect();
    format!("{{{}}}", gens.join(","))
}

fn top_json(t: &TopDegree) -> Value {
    let mut v = serde_json::to_value(t).expect("serializable");
    v["timings"] = json!({ "top_degree": t.seconds });
    v
}

fn top(cli: &Cli, common: &Common) -> Result<bool> {
    let rs = Arc::new(RootSystem::new(common.ty.clone()));
    let t = verify::top_degree_check(&rs, common.guard(TOP_DEGREE_GUARD))?;
    if cli.json {
        print_json(&top_json(&t));
    } else {
        let yes = |b: bool| if b { "yes" } else { "no" };
        out!("type {}", t.type_name);
        out!("(-1)-condition on S: {}", yes(t.minus_one));
        out!("Av(a_S) nonzero: {} ({} terms)", yes(t.av_nonzero), t.support_size);
        out!("w_S special: {}", yes(t.w_s_special));
        out!("coset sizes: {:?}", t.coset_sizes);
        out!("{} ({:.2}s)", if t.pass { "PASS" } else { "FAIL" }, t.seconds);
    }
    Ok(t.pass)
}

fn full(cli: &Cli, common: &Common) -> Result<bool> {
    if common.order != "default" {
        log::warn!("--order is ignored by verify, which uses the simples-last order");
    }
    let rep = verify::verify(&common.ty, common.guard(FULL_VERIFY_GUARD))?;
    if cli.json {
        print_json(&rep);
        return Ok(rep.pass);
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    out!("type {}  |W| = {}  m = {}", rep.type_name, rep.group_order, rep.m);
    let degrees: Vec<String> = rep.degrees.iter().map(ToString::to_string).collect();
    out!("invariant dimensions by degree: {}", degrees.join(" "));
    out!("shapes:");
    for s in &rep.shapes {
        out!(
            "  {:<12} (-1) {:<3} special {:<3} fixed {}",
            subset(&s.rep),
            yes(s.minus_one),
            yes(s.special),
            s.fixed_dim
        );
    }
    out!("basis:");
    for b in &rep.basis {
        out!(
            "  {:<12} degree {} terms {:<5} nonzero {}",
            subset(&b.shape),
            b.degree,
            b.support_size,
            yes(b.nonzero)
        );
    }
    out!("checks:");
    for (k, ok) in &rep.checks {
        out!("  {:<28} {}", k, if *ok { "ok" } else { "FAILED" });
    }
    let total: f64 = rep.timings.values().sum();
    out!("{} ({total:.2}s)", if rep.pass { "PASS" } else { "FAIL" });
    Ok(rep.pass)
}
