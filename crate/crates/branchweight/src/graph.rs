//! Plain adjacency-list exports. Each line is `node: neighbour neighbour ...`,
//! nodes in sorted order, a neighbour repeated once per parallel edge.

use std::collections::BTreeMap;
use std::fmt::Write;

use branchweight_core::branched::{BranchedSurface, Endpoint, SheetId};
use branchweight_core::CarriedSurface;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdjacencyList {
    nodes: BTreeMap<String, Vec<String>>,
}

impl AdjacencyList {
    pub fn add_node(&mut self, n: impl Into<String>) {
        self.nodes.entry(n.into()).or_default();
    }

    pub fn add_edge(&mut self, a: &str, b: &str) {
        self.nodes.entry(a.to_string()).or_default().push(b.to_string());
        if a != b {
            self.nodes.entry(b.to_string()).or_default().push(a.to_string());
        }
    }

    pub fn neighbours(&self, n: &str) -> Option<&[String]> {
        self.nodes.get(n).map(Vec::as_slice)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (n, adj) in &self.nodes {
            let mut adj = adj.clone();
            adj.sort();
            out.push_str(n);
            out.push(':');
            for m in adj {
                out.push(' ');
                out.push_str(&m);
            }
            out.push('\n');
        }
        out
    }
}

fn endpoint_node(e: Endpoint, arc: usize) -> String {
    match e {
        Endpoint::Triple(t) => format!("t{t}"),
        Endpoint::Boundary(p) => format!("b{p}"),
        Endpoint::Closed => format!("c{arc}"),
    }
}

/// The branch locus: triple points `t*` and boundary points `b*` joined by
/// branch arcs. A closed arc appears as a node `c*` with a loop.
pub fn locus_graph(b: &BranchedSurface) -> AdjacencyList {
    let mut g = AdjacencyList::default();
    for t in 0..b.triple_points.len() {
        g.add_node(format!("t{t}"));
    }
    for p in 0..b.boundary_points {
        g.add_node(format!("b{p}"));
    }
    for (i, a) in b.branch_arcs.iter().enumerate() {
        g.add_edge(&endpoint_node(a.start, i), &endpoint_node(a.end, i));
    }
    g
}

/// Sectors `s*`, joined once per arc along which they meet.
pub fn sector_graph(b: &BranchedSurface) -> AdjacencyList {
    let mut g = AdjacencyList::default();
    for s in 0..b.sectors.len() {
        g.add_node(format!("s{s}"));
    }
    for (m, o, _) in b.sector_adjacency() {
        g.add_edge(&format!("s{m}"), &format!("s{o}"));
    }
    g
}

fn sheet(s: SheetId) -> String {
    format!("s{}.{}", s.sector, s.sheet)
}

/// Sheets `s<sector>.<sheet>` of a carried surface, joined along each gluing.
pub fn carried_graph(c: &CarriedSurface) -> AdjacencyList {
    let mut g = AdjacencyList::default();
    for (sector, &n) in c.weight.as_slice().iter().enumerate() {
        for k in 0..n as usize {
            g.add_node(sheet(SheetId { sector, sheet: k }));
        }
    }
    for &(a, b, _) in &c.gluings {
        g.add_edge(&sheet(a), &sheet(b));
    }
    g
}

/// Sections as `# title` headers followed by the adjacency lines.
pub fn render_sections(sections: &[(&str, &AdjacencyList)]) -> String {
    let mut out = String::new();
    for (title, g) in sections {
        let _ = writeln!(out, "# {title}");
        out.push_str(&g.render());
    }
    out
}
