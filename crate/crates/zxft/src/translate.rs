//! Directed cross-flavor translations with check-structure correspondence.
//!
//! Each translation rewrites the source lattice (canonicalization, wire
//! merging, scheduled splits), materializes the new flavor's measurement
//! gadgets on the split edges, and transports the full web basis along.
//! The result is compared against the directly built native lattice
//! through a canonical-labeling isomorphism, and each source check cell is
//! re-expressed on the native diagram where its sign picks up the native
//! outcome set.

use std::collections::BTreeMap;

use crate::builders::{
    self, splice_fusion, splice_pair, Flavor, LatticeMeta, PatchSpec, StabKind,
};
use crate::builders::{chain_half, ring_half};
use crate::diagram::{Diagram, EdgeId, EdgeKind, NodeId, OutcomeExpr, PortDir, SpiderKind, VarId};
use crate::error::{Error, Result};
use crate::fingerprint::{canonical_order, fingerprint};
use crate::rewrite::{self, RewriteStep, RewriteTrace};
use crate::web::{self, PauliWeb, WebQuery};

#[derive(Clone, Debug)]
pub struct WebPair {
    pub outer: bool,
    pub source: PauliWeb,
    pub transported: PauliWeb,
    pub on_native: PauliWeb,
    pub source_sign: OutcomeExpr,
    pub result_sign: OutcomeExpr,
    pub native_sign: OutcomeExpr,
}

#[derive(Clone, Debug)]
pub struct CellPair {
    pub kind: StabKind,
    pub stab: usize,
    pub round: u32,
    pub deep: bool,
    pub source_constraint: OutcomeExpr,
    pub native_constraint: OutcomeExpr,
    pub native_expected: Vec<VarId>,
    pub on_native: PauliWeb,
}

#[derive(Clone, Debug)]
pub struct Translation {
    pub to: Flavor,
    pub source: Diagram,
    pub result: Diagram,
    pub trace: RewriteTrace,
    pub native: Diagram,
    pub native_meta: LatticeMeta,
    pub basis_pairs: Vec<WebPair>,
    pub cell_pairs: Vec<CellPair>,
}

struct Pipeline {
    work: Diagram,
    trace: RewriteTrace,
    webs: Vec<PauliWeb>,
    locs: BTreeMap<NodeId, builders::Loc>,
}

impl Pipeline {
    fn new(source: &Diagram, meta: &LatticeMeta, webs: Vec<PauliWeb>) -> Pipeline {
        Pipeline {
            work: source.clone(),
            trace: RewriteTrace::default(),
            webs,
            locs: meta.spider_loc.clone(),
        }
    }

    fn absorb_step(&mut self, step: RewriteStep) -> Result<()> {
        for web in &mut self.webs {
            *web = rewrite::transport_web(web, &step, &self.work)?;
        }
        if let RewriteStep::Fuse { absorb, .. } = &step {
            self.locs.remove(absorb);
        }
        if let RewriteStep::Split { spider, new_spider, .. } = &step {
            if let Some(loc) = self.locs.get(spider).copied() {
                self.locs.insert(*new_spider, loc);
            }
        }
        self.trace.0.push(step);
        Ok(())
    }

    /// Replay a precomputed trace (from a scratch run) with web transport.
    fn replay(&mut self, trace: RewriteTrace) -> Result<()> {
        for step in trace.0 {
            rewrite::apply(&mut self.work, &step)?;
            self.absorb_step(step)?;
        }
        Ok(())
    }

    /// Split every spider per the half function of the target flavor.
    /// Returns per-spider (kept half, other half, split edge).
    fn split_lattice(
        &mut self,
        half_fn: impl Fn(builders::Loc, builders::Dir) -> u8,
    ) -> Result<Vec<(NodeId, NodeId, EdgeId)>> {
        let spiders: Vec<NodeId> = self.work.spiders().map(|(id, _)| id).collect();
        let mut splits = Vec::new();
        for spider in spiders {
            let loc = *self
                .locs
                .get(&spider)
                .ok_or_else(|| Error::ContractViolation(format!("no site for {spider}")))?;
            let incident: Vec<EdgeId> = self.work.incident_edges(spider).to_vec();
            let mut moved = Vec::new();
            for e in &incident {
                let edge = self.work.edge(*e).unwrap();
                let other = edge.other(spider);
                let dir = match self.work.port(other) {
                    Some(p) => match p.dir {
                        PortDir::Input => builders::Dir::ZNeg,
                        PortDir::Output => builders::Dir::ZPos,
                    },
                    None => {
                        let oloc = self.locs.get(&other).ok_or_else(|| {
                            Error::ContractViolation(format!("no site for {other}"))
                        })?;
                        loc.dir_to(*oloc)
                    }
                };
                if half_fn(loc, dir) == 0 {
                    moved.push(*e);
                }
            }
            if moved.is_empty() || moved.len() == incident.len() {
                continue;
            }
            let step = rewrite::split(&mut self.work, spider, &moved, false)?;
            let (new_spider, new_edge) = match &step {
                RewriteStep::Split { new_spider, new_edge, .. } => (*new_spider, *new_edge),
                _ => unreachable!(),
            };
            self.absorb_step(step)?;
            splits.push((spider, new_spider, new_edge));
        }
        Ok(splits)
    }

    /// Extend all tracked webs over an edge that was just replaced by a
    /// chain of plain edges carrying the same highlight.
    fn extend_webs_over(&mut self, old: EdgeId, new_edges: &[EdgeId]) {
        for web in &mut self.webs {
            let (r, g) = web.value(old);
            web.set(old, false, false);
            if r || g {
                for e in new_edges {
                    web.set(*e, r, g);
                }
            }
        }
    }
}

fn basis_webs(d: &Diagram) -> Result<(Vec<PauliWeb>, usize)> {
    let basis = web::web_basis(d)?;
    let n_outer = basis.outer.len();
    let mut webs = basis.outer;
    webs.extend(basis.checks.into_iter().map(|c| c.web));
    Ok((webs, n_outer))
}

/// Solve for the source-side web of one check cell: zero outer signature,
/// exactly the cell's instruments included.
fn source_cell_web(d: &Diagram, cell: &builders::CheckCell) -> Result<PauliWeb> {
    let mut instruments = BTreeMap::new();
    for (id, s) in d.spiders() {
        let Some(expr) = &s.instrument else { continue };
        // cells are defined over primitive per-instrument variables here
        let on = expr.vars.iter().any(|v| cell.expected_vars.contains(v));
        instruments.insert(id, on);
    }
    let query = WebQuery {
        ports: BTreeMap::new(),
        pin_unlisted_ports: true,
        instruments,
        pin_unlisted_instruments: None,
    };
    web::solve_web(d, &query)?.ok_or_else(|| {
        Error::ContractViolation(format!(
            "no check web for cell {:?}[{}]@r{}",
            cell.kind, cell.stab, cell.round
        ))
    })
}

/// Node isomorphism via canonical labeling; errors if the diagrams are not
/// isomorphic.
pub fn iso_map(a: &Diagram, b: &Diagram) -> Result<BTreeMap<NodeId, NodeId>> {
    if fingerprint(a) != fingerprint(b) {
        return Err(Error::ContractViolation(
            "diagrams are not isomorphic (fingerprints differ)".into(),
        ));
    }
    let oa = canonical_order(a);
    let ob = canonical_order(b);
    Ok(oa.into_iter().zip(ob).collect())
}

/// Transfer a highlight pattern through a node isomorphism.
pub fn push_web(
    web: &PauliWeb,
    from: &Diagram,
    to: &Diagram,
    iso: &BTreeMap<NodeId, NodeId>,
) -> Result<PauliWeb> {
    // bucket target edges by (endpoints, kind)
    let mut buckets: BTreeMap<(NodeId, NodeId, EdgeKind), Vec<EdgeId>> = BTreeMap::new();
    for (eid, e) in to.edges() {
        let key = (e.a.min(e.b), e.a.max(e.b), e.kind);
        buckets.entry(key).or_default().push(eid);
    }
    let mut out = PauliWeb::empty();
    for (eid, e) in from.edges() {
        let (r, g) = web.value(eid);
        if !r && !g {
            continue;
        }
        let (ia, ib) = (iso[&e.a], iso[&e.b]);
        let key = (ia.min(ib), ia.max(ib), e.kind);
        let target = buckets
            .get_mut(&key)
            .and_then(|v| v.pop())
            .ok_or_else(|| Error::ContractViolation("isomorphism lost an edge".into()))?;
        let te = to.edge(target).unwrap();
        // re-anchor: the source value sits at e.a, i.e. at ia
        let val = if te.a == ia || e.kind == EdgeKind::Plain { (r, g) } else { (g, r) };
        out.set(target, val.0, val.1);
    }
    Ok(out)
}

fn finish(
    to: Flavor,
    source: &Diagram,
    pipeline: Pipeline,
    n_outer: usize,
    n_basis: usize,
    cells: Vec<(builders::CheckCell, OutcomeExpr)>,
    native: Diagram,
    native_meta: LatticeMeta,
) -> Result<Translation> {
    let iso = iso_map(&pipeline.work, &native)?;
    let mut basis_pairs = Vec::new();
    let source_basis = basis_webs(source)?.0;
    for (i, transported) in pipeline.webs.iter().take(n_basis).enumerate() {
        let on_native = push_web(transported, &pipeline.work, &native, &iso)?;
        basis_pairs.push(WebPair {
            outer: i < n_outer,
            source: source_basis[i].clone(),
            transported: transported.clone(),
            on_native: on_native.clone(),
            source_sign: source_basis[i].sign(source)?,
            result_sign: transported.sign(&pipeline.work)?,
            native_sign: on_native.sign(&native)?,
        });
    }
    let mut cell_pairs = Vec::new();
    for (i, (cell, source_constraint)) in cells.into_iter().enumerate() {
        let transported = &pipeline.webs[n_basis + i];
        let on_native = push_web(transported, &pipeline.work, &native, &iso)?;
        let native_expected = native_meta
            .cells
            .iter()
            .find(|c| c.kind == cell.kind && c.stab == cell.stab && c.round == cell.round)
            .map(|c| c.expected_vars.clone())
            .unwrap_or_default();
        let deep = native_meta
            .cells
            .iter()
            .find(|c| c.kind == cell.kind && c.stab == cell.stab && c.round == cell.round)
            .map(|c| c.deep)
            .unwrap_or(false);
        cell_pairs.push(CellPair {
            kind: cell.kind,
            stab: cell.stab,
            round: cell.round,
            deep,
            source_constraint,
            native_constraint: on_native.sign(&native)?,
            native_expected,
            on_native,
        });
    }
    Ok(Translation {
        to,
        source: source.clone(),
        result: pipeline.work,
        trace: pipeline.trace,
        native,
        native_meta,
        basis_pairs,
        cell_pairs,
    })
}

fn tracked_webs_and_cells(
    source: &Diagram,
    meta: &LatticeMeta,
) -> Result<(Vec<PauliWeb>, usize, usize, Vec<(builders::CheckCell, OutcomeExpr)>)> {
    let (mut webs, n_outer) = basis_webs(source)?;
    let n_basis = webs.len();
    let mut cells = Vec::new();
    for cell in &meta.cells {
        let web = source_cell_web(source, cell)?;
        let sign = web.sign(source)?;
        webs.push(web);
        cells.push((cell.clone(), sign));
    }
    Ok((webs, n_outer, n_basis, cells))
}

/// Duality: canonicalize the circuit lattice into the measurement-based
/// form.
pub fn cbqc_to_mbqc(source: &Diagram, meta: &LatticeMeta) -> Result<Translation> {
    let (webs, n_outer, n_basis, cells) = tracked_webs_and_cells(source, meta)?;
    let mut pipeline = Pipeline::new(source, meta, webs);
    let mut scratch = source.clone();
    let trace = rewrite::to_canonical(&mut scratch)?;
    pipeline.replay(trace)?;
    let spec = PatchSpec::new(meta.distance, meta.rounds);
    let (native, native_meta) = builders::mbqc(spec)?;
    finish(Flavor::Mbqc, source, pipeline, n_outer, n_basis, cells, native, native_meta)
}

/// Split every spider of the measurement-based lattice into resource rings
/// and materialize the fusions.
pub fn mbqc_to_fbqc(source: &Diagram, meta: &LatticeMeta) -> Result<Translation> {
    let (webs, n_outer, n_basis, cells) = tracked_webs_and_cells(source, meta)?;
    let mut pipeline = Pipeline::new(source, meta, webs);
    let splits = pipeline.split_lattice(|_, dir| ring_half(dir))?;
    for (i, (kept, _, edge)) in splits.iter().enumerate() {
        let (_, _, x, z) = splice_fusion(&mut pipeline.work, *edge, *kept, &format!("t{i}"))?;
        let new_edges: Vec<EdgeId> = pipeline
            .work
            .incident_edges(x)
            .iter()
            .chain(pipeline.work.incident_edges(z))
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        pipeline.extend_webs_over(*edge, &new_edges);
    }
    let spec = PatchSpec::new(meta.distance, meta.rounds);
    let (native, native_meta) = builders::fbqc(spec)?;
    finish(Flavor::Fbqc, source, pipeline, n_outer, n_basis, cells, native, native_meta)
}

/// Merge the circuit lattice's wire runs, split into diagonal chains, and
/// materialize the pair-measurement hubs.
pub fn cbqc_to_flobqc(source: &Diagram, meta: &LatticeMeta) -> Result<Translation> {
    let (webs, n_outer, n_basis, cells) = tracked_webs_and_cells(source, meta)?;
    let mut pipeline = Pipeline::new(source, meta, webs);
    let mut scratch = source.clone();
    let trace = rewrite::fuse_saturate(&mut scratch)?;
    pipeline.replay(trace)?;
    let splits = pipeline.split_lattice(chain_half)?;
    for (i, (kept, _, edge)) in splits.iter().enumerate() {
        let wire_kind = pipeline.work.spider(*kept).unwrap().kind;
        let hub_kind = wire_kind.flipped();
        let label = match wire_kind {
            SpiderKind::Z => format!("zz@t{i}"),
            SpiderKind::X => format!("xx@t{i}"),
        };
        let (_, hub) = splice_pair(&mut pipeline.work, *edge, hub_kind, &label)?;
        let new_edges: Vec<EdgeId> = pipeline.work.incident_edges(hub).to_vec();
        pipeline.extend_webs_over(*edge, &new_edges);
    }
    let spec = PatchSpec::new(meta.distance, meta.rounds);
    let (native, native_meta) = builders::flobqc(spec)?;
    finish(Flavor::Flobqc, source, pipeline, n_outer, n_basis, cells, native, native_meta)
}

// ---- correspondence ------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CellCount {
    pub kind: StabKind,
    pub stab: usize,
    pub round: u32,
    pub deep: bool,
    pub source_outcomes: usize,
    pub native_outcomes: usize,
    pub expected_match: bool,
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub rank_source: usize,
    pub rank_transported: usize,
    pub rank_native: usize,
    pub basis_size: usize,
    pub cell_table: Vec<CellCount>,
    pub failures: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify bijectivity of the web transport on basis spans, validity of
/// every transported web, and the per-cell outcome counts.
pub fn check_correspondence(t: &Translation) -> CorrespondenceReport {
    let mut failures = Vec::new();
    let sources: Vec<PauliWeb> = t.basis_pairs.iter().map(|p| p.source.clone()).collect();
    let transported: Vec<PauliWeb> = t.basis_pairs.iter().map(|p| p.transported.clone()).collect();
    let on_native: Vec<PauliWeb> = t.basis_pairs.iter().map(|p| p.on_native.clone()).collect();
    let rank_source = web::webs_rank(&t.source, &sources);
    let rank_transported = web::webs_rank(&t.result, &transported);
    let rank_native = web::webs_rank(&t.native, &on_native);
    if rank_source != sources.len() {
        failures.push(format!(
            "rank mismatch: source basis rank {rank_source} of {}",
            sources.len()
        ));
    }
    if rank_transported != sources.len() || rank_native != sources.len() {
        failures.push(format!(
            "rank mismatch: transported {rank_transported}, native {rank_native}, expected {}",
            sources.len()
        ));
    }
    for (i, p) in t.basis_pairs.iter().enumerate() {
        if !p.transported.is_valid(&t.result) {
            failures.push(format!("transported web {i} violates the web rules"));
        }
        if !p.on_native.is_valid(&t.native) {
            failures.push(format!("native web {i} violates the web rules"));
        }
    }
    let mut cell_table = Vec::new();
    for c in &t.cell_pairs {
        if !c.on_native.is_valid(&t.native) {
            failures.push(format!(
                "cell {:?}[{}]@r{} invalid on native diagram",
                c.kind, c.stab, c.round
            ));
        }
        if !c.on_native.outer_signature(&t.native).is_identity() {
            failures.push(format!(
                "cell {:?}[{}]@r{} has outer support on native diagram",
                c.kind, c.stab, c.round
            ));
        }
        let expected: std::collections::BTreeSet<VarId> =
            c.native_expected.iter().copied().collect();
        let got: std::collections::BTreeSet<VarId> = c.native_constraint.vars.clone();
        let expected_match = expected == got;
        if !expected_match {
            failures.push(format!(
                "cell {:?}[{}]@r{}: native outcomes {:?} != expected {:?}",
                c.kind, c.stab, c.round, got, expected
            ));
        }
        cell_table.push(CellCount {
            kind: c.kind,
            stab: c.stab,
            round: c.round,
            deep: c.deep,
            source_outcomes: c.source_constraint.vars.len(),
            native_outcomes: c.native_constraint.vars.len(),
            expected_match,
        });
    }
    CorrespondenceReport {
        rank_source,
        rank_transported,
        rank_native,
        basis_size: sources.len(),
        cell_table,
        failures,
    }
}
