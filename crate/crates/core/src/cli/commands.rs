use serde::Serialize;
use serde_json::json;

use super::{
    load_input, DecomposeArgs, EquivCmd, FactorCmd, FiberArgs, ImsetCmd, KernelCmd, NumericArgs, Output,
    Positive,
};
use crate::error::{Error, Result};
use crate::graph::{
    apply_covered_flip, essential_graph, is_acyclic, parse_graph, reverse_cycle, skeleton, v_structures,
    Cycle, DirectedGraph, GraphJson, NodeSet, PartiallyDirectedGraph,
};
use crate::imset::{
    char_from_std, char_imset, render_char, render_std, std_from_char, std_imset, FamilyVector, Imset,
    ImsetJson,
};
use crate::lattice::{
    collapse_isomorphic, decompose_kernel_vector, fiber_enumerate_with, fiber_move_components,
    integer_kernel_basis, verify_kernel, FiberJson, FiberOptions, MoveSet,
};
use crate::numeric::{
    covariance_equiv_numeric, givens_flip_factor, random_factor, EquivOptions, FactorMatrix,
    OrthSolverConfig, Verdict,
};

use super::Command;

pub(super) fn dispatch(cmd: Command, o: &mut Output) -> Result<Positive> {
    match cmd {
        Command::Imset(c) => imset(c, o),
        Command::Equiv(c) => equiv(c, o),
        Command::Essential { graph } => essential(&graph, o),
        Command::Fiber(a) => fiber(a, o),
        Command::Kernel(c) => kernel(c, o),
        Command::Decompose(a) => decompose(a, o),
        Command::Flip { graph, i, j } => {
            let g = read_graph(&graph)?;
            emit_graph(&apply_covered_flip(&g, i, j)?, o)
        }
        Command::ReverseCycle { graph, cycle } => {
            let g = read_graph(&graph)?;
            emit_graph(&reverse_cycle(&g, &Cycle::new(cycle)?)?, o)
        }
        Command::Factor(c) => factor(c, o),
        Command::Repro { target, seed } => {
            let report = super::run_repro(target, seed)?;
            o.emit(&report, || report.to_text())?;
            Ok(report.passed())
        }
    }
}

pub(crate) fn read_graph(arg: &str) -> Result<DirectedGraph> {
    parse_graph(&load_input(arg)?)
}

fn emit_graph(g: &DirectedGraph, o: &mut Output) -> Result<Positive> {
    o.emit(&GraphJson::from(g), || g.to_string())?;
    Ok(true)
}

fn imset(cmd: ImsetCmd, o: &mut Output) -> Result<Positive> {
    match cmd {
        ImsetCmd::Char { graph, omit_zeros } => {
            let c = char_imset(&read_graph(&graph)?);
            o.emit(&ImsetJson::from_char(&c, !omit_zeros), || render_char(&c))?;
        }
        ImsetCmd::Std { graph } => {
            let s = std_imset(&read_graph(&graph)?);
            o.emit(&ImsetJson::from_std(&s), || render_std(&s))?;
        }
        ImsetCmd::Convert { imset } => {
            let doc: ImsetJson = serde_json::from_str(&load_input(&imset)?)?;
            match doc.into_imset()? {
                Imset::Char(c) => {
                    let s = std_from_char(&c);
                    o.emit(&ImsetJson::from_std(&s), || render_std(&s))?;
                }
                Imset::Std(s) => {
                    let c = char_from_std(&s);
                    o.emit(&ImsetJson::from_char(&c, true), || render_char(&c))?;
                }
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct Difference {
    set: NodeSet,
    g: i64,
    h: i64,
}

fn equiv(cmd: EquivCmd, o: &mut Output) -> Result<Positive> {
    match cmd {
        EquivCmd::Imset { g, h } => {
            let (g, h) = (read_graph(&g)?, read_graph(&h)?);
            if g.n() != h.n() {
                return Err(Error::NodeCountMismatch(g.n(), h.n()));
            }
            let (cg, ch) = (char_imset(&g), char_imset(&h));
            let diffs: Vec<Difference> =
                cg.differences(&ch).into_iter().map(|(set, g, h)| Difference { set, g, h }).collect();
            let equal = diffs.is_empty();
            let report = json!({
                "equivalent": equal,
                "n": g.n(),
                "skeletons_equal": skeleton(&g) == skeleton(&h),
                "first_difference": diffs.first(),
                "differences": diffs,
            });
            o.emit(&report, || {
                if equal {
                    "imset equivalent\n".to_string()
                } else {
                    let mut s = String::from("not imset equivalent\n");
                    for d in &diffs {
                        s += &format!("  c({}): {} vs {}\n", d.set, d.g, d.h);
                    }
                    s
                }
            })?;
            Ok(equal)
        }
        EquivCmd::Dag { g, h } => {
            let (g, h) = (read_graph(&g)?, read_graph(&h)?);
            if !is_acyclic(&g) || !is_acyclic(&h) {
                return Err(Error::Cyclic);
            }
            if g.n() != h.n() {
                return Err(Error::NodeCountMismatch(g.n(), h.n()));
            }
            let same_skeleton = skeleton(&g) == skeleton(&h);
            let (vg, vh) = (v_structures(&g), v_structures(&h));
            let equal = same_skeleton && vg == vh;
            let report = json!({
                "equivalent": equal,
                "skeletons_equal": same_skeleton,
                "v_structures_g": vg,
                "v_structures_h": vh,
            });
            o.emit(&report, || {
                format!("{}markov equivalent\n", if equal { "" } else { "not " })
            })?;
            Ok(equal)
        }
        EquivCmd::Numeric(a) => numeric(a, o),
    }
}

pub(crate) fn solver_config(a: &super::SolverArgs) -> Result<OrthSolverConfig> {
    let cfg = OrthSolverConfig {
        restarts: a.restarts as usize,
        max_iters: a.max_iters as usize,
        step_tol: a.step_tol,
        tau: a.tau,
        seed: a.seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn numeric(a: NumericArgs, o: &mut Output) -> Result<Positive> {
    let (g, h) = (read_graph(&a.g)?, read_graph(&a.h)?);
    let cfg = solver_config(&a.solver)?;
    let v = covariance_equiv_numeric(&g, &h, &cfg, &EquivOptions { trials: a.trials as usize, jobs: a.jobs as usize })?;
    o.emit(&v, || {
        let fmt = |xs: &[f64]| xs.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" ");
        let mut s = format!("{:?} (tau = {:e})\n", v.verdict, v.tau);
        s += &format!("  g_to_h: {}\n  h_to_g: {}\n", fmt(&v.residuals.g_to_h), fmt(&v.residuals.h_to_g));
        if let Some(note) = &v.note {
            s += &format!("  {note}\n");
        }
        s
    })?;
    Ok(v.verdict == Verdict::EvidenceEquivalent)
}

fn render_pdag(p: &PartiallyDirectedGraph) -> String {
    let d: Vec<String> = p.directed.iter().map(|(u, v)| format!("{u} -> {v}")).collect();
    let u: Vec<String> = p.undirected.iter().map(|(a, b)| format!("{a} -- {b}")).collect();
    format!("n={}\n{}", p.n, d.into_iter().chain(u).map(|l| l + "\n").collect::<String>())
}

fn essential(graph: &str, o: &mut Output) -> Result<Positive> {
    let e = essential_graph(&read_graph(graph)?)?;
    o.emit(&e, || render_pdag(&e))?;
    Ok(true)
}

fn fiber(a: FiberArgs, o: &mut Output) -> Result<Positive> {
    let text = load_input(&a.input)?;
    let c = if text.contains("\"kind\"") {
        match serde_json::from_str::<ImsetJson>(&text)?.into_imset()? {
            Imset::Char(c) => c,
            Imset::Std(s) => char_from_std(&s),
        }
    } else {
        char_imset(&parse_graph(&text)?)
    };
    let moves = MoveSet::parse(&a.moves)?;
    let f = fiber_enumerate_with(&c, &FiberOptions { jobs: a.jobs as usize, limit: a.limit })?;
    let (graphs, comps) = if a.upto_iso {
        collapse_isomorphic(&f, moves)?
    } else {
        (f.graphs().to_vec(), fiber_move_components(&f, moves))
    };
    let doc = FiberJson::new(&c, &graphs, &comps);
    o.emit(&doc, || {
        let mut s = format!("{} graph(s), {} component(s)\n", graphs.len(), comps.count());
        for (k, part) in comps.components.iter().enumerate() {
            for &i in part {
                let edges: Vec<String> = graphs[i].edges().iter().map(|(u, v)| format!("{u}->{v}")).collect();
                s += &format!("[{k}] #{i}: {}\n", edges.join(" "));
            }
        }
        s
    })?;
    Ok(true)
}

fn kernel(cmd: KernelCmd, o: &mut Output) -> Result<Positive> {
    match cmd {
        KernelCmd::Verify { n } => {
            let r = verify_kernel(n as usize)?;
            let message = if r.equal {
                format!("flip lattice = integer kernel, rank {}", r.kernel_rank)
            } else {
                format!("flip lattice (rank {}) != integer kernel (rank {})", r.flip_rank, r.kernel_rank)
            };
            let doc = json!({ "report": r, "message": message });
            o.emit(&doc, || message.clone())?;
            Ok(r.equal)
        }
        KernelCmd::Basis { n } => {
            let b = integer_kernel_basis(&crate::imset::phi_matrix(n as usize)?)?;
            o.emit(&b, || {
                let mut s = format!("rank {}\n", b.rank());
                for v in b.vectors() {
                    s += &v.iter().map(|x| format!("{x:>2}")).collect::<Vec<_>>().join(" ");
                    s += "\n";
                }
                s
            })?;
            Ok(true)
        }
    }
}

fn decompose(a: DecomposeArgs, o: &mut Output) -> Result<Positive> {
    let v = match a.inputs.as_slice() {
        [one] => serde_json::from_str::<FamilyVector>(&load_input(one)?)?,
        [g, h] => {
            let (g, h) = (read_graph(g)?, read_graph(h)?);
            if g.n() != h.n() {
                return Err(Error::NodeCountMismatch(g.n(), h.n()));
            }
            &FamilyVector::of_graph(&g) - &FamilyVector::of_graph(&h)
        }
        _ => unreachable!("clap enforces one or two inputs"),
    };
    match decompose_kernel_vector(&v) {
        Ok(d) => {
            let terms: Vec<_> =
                d.terms.iter().map(|(k, f)| json!({ "coefficient": k, "flip": f })).collect();
            let doc = json!({ "in_kernel": true, "terms": terms, "statistic": d.statistic });
            o.emit(&doc, || {
                let mut s = format!("in kernel: {} flip term(s)\n", d.terms.len());
                for (k, f) in &d.terms {
                    s += &format!("  {k:+} * ({f})\n");
                }
                s
            })?;
            Ok(true)
        }
        Err(Error::NotInKernel { residual }) => {
            let doc = json!({ "in_kernel": false, "residual": residual });
            o.emit(&doc, || {
                let mut s = String::from("not in kernel; residual:\n");
                for (f, x) in residual.nonzero() {
                    s += &format!("  {f}: {x}\n");
                }
                s
            })?;
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

pub(crate) fn render_factor(q: &FactorMatrix) -> String {
    let mut s = q.labels().iter().map(|f| format!("{:>12}", f.to_string())).collect::<String>();
    s.push('\n');
    for row in q.data().row_iter() {
        s += &row.iter().map(|x| format!("{x:>12.6}")).collect::<String>();
        s.push('\n');
    }
    s
}

fn factor(cmd: FactorCmd, o: &mut Output) -> Result<Positive> {
    let q = match cmd {
        FactorCmd::Sample { graph, seed } => random_factor(&read_graph(&graph)?, seed),
        FactorCmd::GivensFlip { factor, b, c, parents } => {
            let q: FactorMatrix = serde_json::from_str(&load_input(&factor)?)?;
            let a = match parents {
                Some(list) => parse_node_list(&list)?,
                None => {
                    let g = q.graph().ok_or_else(|| {
                        Error::InvalidParameter("labels do not form a graph; pass --parents".into())
                    })?;
                    if b == 0 || b > g.n() {
                        return Err(Error::NodeOutOfRange { node: b, n: g.n() });
                    }
                    g.parents(b)
                }
            };
            givens_flip_factor(&q, a, b, c)?
        }
    };
    o.emit(&q, || render_factor(&q))?;
    Ok(true)
}

fn parse_node_list(s: &str) -> Result<NodeSet> {
    let mut set = NodeSet::EMPTY;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part.parse().map_err(|_| Error::InvalidParameter(format!("bad node '{part}'")))?;
        if v == 0 || v > crate::graph::MAX_NODES {
            return Err(Error::NodeOutOfRange { node: v, n: crate::graph::MAX_NODES });
        }
        set.insert(v);
    }
    Ok(set)
}
