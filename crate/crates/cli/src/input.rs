//! Graph arguments: a path to an edge-list file, or a family spec such as
//! `cycle:6`, `c6`, `hypercube3`, or `petal2`.

use std::fs;
use std::path::Path;

use zp_core::{families, Graph, PetalDescriptor};

#[derive(Debug)]
pub struct GraphInput {
    /// The argument as given, used in reports.
    pub name: String,
    pub graph: Graph,
    /// Present when the argument named a petal family; the walk policy needs
    /// the cycle map it carries.
    pub petal: Option<PetalDescriptor>,
}

pub fn load(arg: &str) -> Result<GraphInput, String> {
    if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
        let graph = Graph::from_edge_list(&text).map_err(|e| format!("{arg}: {e}"))?;
        return Ok(GraphInput {
            name: arg.to_string(),
            graph,
            petal: None,
        });
    }
    family(arg).ok_or_else(|| {
        format!(
            "{arg}: no such file, and not a family spec \
             (path:N, cycle:N, complete:N, hypercube:D, petal:K, \
             or the shorthands pN cN kN qN petalK)"
        )
    })
}

fn family(arg: &str) -> Option<GraphInput> {
    let digits = arg.find(|c: char| c == ':' || c.is_ascii_digit())?;
    let (head, tail) = arg.split_at(digits);
    let number: usize = tail.trim_start_matches(':').parse().ok()?;
    let mut petal = None;
    let graph = match head {
        "p" | "path" => families::path(number),
        "c" | "cycle" => families::cycle(number),
        "k" | "complete" => families::complete(number),
        "q" | "hypercube" => families::hypercube(number),
        "petal" => families::petal(number).map(|(graph, descriptor)| {
            petal = Some(descriptor);
            graph
        }),
        _ => return None,
    }
    .ok()?;
    Some(GraphInput {
        name: arg.to_string(),
        graph,
        petal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_and_colon_forms_agree() {
        let short = load("c6").unwrap();
        let long = load("cycle:6").unwrap();
        assert_eq!(short.graph.to_edge_list(), long.graph.to_edge_list());
        assert_eq!(short.graph.vertex_count(), 6);
    }

    #[test]
    fn hypercube_takes_the_dimension() {
        assert_eq!(load("hypercube3").unwrap().graph.vertex_count(), 8);
        assert_eq!(load("q4").unwrap().graph.vertex_count(), 16);
    }

    #[test]
    fn petal_spec_carries_its_descriptor() {
        let input = load("petal2").unwrap();
        assert_eq!(input.graph.vertex_count(), 33);
        assert_eq!(input.petal.unwrap().k, 2);
    }

    #[test]
    fn junk_is_rejected_with_both_readings() {
        let message = load("p2.el").unwrap_err();
        assert!(message.contains("no such file"));
        assert!(load("frobnicate9").is_err());
        assert!(load("cycle").is_err());
        assert!(load("cycle:2").is_err(), "a 2-cycle is not a graph here");
    }
}
