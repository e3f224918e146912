//! JSON network files.
//!
//! ```text
//! {
//!   "nodes":   [{"id": "S", "antennas": 1}, ...],
//!   "edges":   [{"from": "S", "from_ant": 0, "to": "D", "to_ant": 0, "coeff": [re, im]}, ...],
//!   "sources": ["S"],
//!   "sinks":   ["D"]
//! }
//! ```
//!
//! A missing `coeff` means the coefficient is absent. Lifted networks add a
//! top-level `p` and `q` and an integer `xi` on every edge. With
//! `"wireline": true` the edges are orthogonal links (`from`, `to`, optional
//! `coeff`) and the document is embedded into a wireless network on load.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AntennaRef, Edge, Link, ModelError, Network, SuperNode, Wireline};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("lift fields: {0}")]
    Lift(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    id: String,
    /// Ignored in wireline documents.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antennas: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    from_ant: Option<usize>,
    to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    to_ant: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeff: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    wireline: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
    nodes: Vec<RawNode>,
    edges: Vec<RawEdge>,
    #[serde(default)]
    sources: Vec<String>,
    #[serde(default)]
    sinks: Vec<String>,
}

/// Finite-field annotations carried by a lifted network file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftFields {
    pub p: u64,
    pub q: usize,
    pub xi: Vec<u64>,
}

/// A parsed file: the network plus optional lift annotations.
#[derive(Debug, Clone)]
pub struct Document {
    pub network: Network,
    pub lift: Option<LiftFields>,
}

fn to_complex(c: Option<[f64; 2]>) -> Option<Complex64> {
    c.map(|[re, im]| Complex64::new(re, im))
}

fn missing(field: &str, edge: usize) -> FormatError {
    FormatError::Syntax {
        line: 0,
        column: 0,
        message: format!("edge {edge}: missing field `{field}`"),
    }
}

/// Parse a network file, keeping any lift annotations.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let raw: RawDocument = serde_json::from_str(text)?;

    let network = if raw.wireline {
        let links = raw
            .edges
            .iter()
            .map(|e| Link::new(e.from.clone(), e.to.clone(), to_complex(e.coeff)))
            .collect();
        let wire = Wireline {
            nodes: raw.nodes.iter().map(|n| n.id.clone()).collect(),
            links,
            sources: raw.sources.clone(),
            sinks: raw.sinks.clone(),
        };
        wire.embed()?
    } else {
        let nodes = raw
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                n.antennas.map(|k| SuperNode::new(n.id.clone(), k)).ok_or_else(|| FormatError::Syntax {
                    line: 0,
                    column: 0,
                    message: format!("node {i}: missing field `antennas`"),
                })
            })
            .collect::<Result<_, _>>()?;
        let mut edges = Vec::with_capacity(raw.edges.len());
        for (i, e) in raw.edges.iter().enumerate() {
            let fa = e.from_ant.ok_or_else(|| missing("from_ant", i))?;
            let ta = e.to_ant.ok_or_else(|| missing("to_ant", i))?;
            edges.push(Edge::new(
                AntennaRef::new(e.from.clone(), fa),
                AntennaRef::new(e.to.clone(), ta),
                to_complex(e.coeff),
            ));
        }
        Network::new(nodes, edges, raw.sources.clone(), raw.sinks.clone())?
    };

    let xi: Vec<Option<u64>> = raw.edges.iter().map(|e| e.xi).collect();
    let lift = match (raw.p, raw.q) {
        (None, None) if xi.iter().all(Option::is_none) => None,
        (Some(p), Some(q)) => {
            let xi = xi
                .into_iter()
                .enumerate()
                .map(|(i, x)| x.ok_or_else(|| FormatError::Lift(format!("edge {i} has no `xi`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if xi.len() != network.edge_count() {
                return Err(FormatError::Lift("one `xi` per embedded edge required".into()));
            }
            Some(LiftFields { p, q, xi })
        }
        _ => return Err(FormatError::Lift("`p`, `q` and per-edge `xi` go together".into())),
    };

    Ok(Document { network, lift })
}

/// Parse a network file. Lift annotations, if any, are ignored.
pub fn parse_network(text: &str) -> Result<Network, FormatError> {
    parse_document(text).map(|d| d.network)
}

/// Canonical serialization: nodes and edges in declaration order.
pub fn to_json(net: &Network, lift: Option<&LiftFields>) -> String {
    let raw = RawDocument {
        wireline: false,
        p: lift.map(|l| l.p),
        q: lift.map(|l| l.q),
        nodes: net
            .nodes()
            .iter()
            .map(|n| RawNode {
                id: n.id.clone(),
                antennas: Some(n.antennas),
            })
            .collect(),
        edges: net
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| RawEdge {
                from: e.from.node.clone(),
                from_ant: Some(e.from.antenna),
                to: e.to.node.clone(),
                to_ant: Some(e.to.antenna),
                coeff: e.coeff.map(|c| [c.re, c.im]),
                xi: lift.map(|l| l.xi[i]),
            })
            .collect(),
        sources: net.sources().to_vec(),
        sinks: net.sinks().to_vec(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("network serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "nodes": [{"id": "S", "antennas": 1}, {"id": "D", "antennas": 1}],
        "edges": [{"from": "S", "from_ant": 0, "to": "D", "to_ant": 0, "coeff": [1.0, 0.0]}],
        "sources": ["S"], "sinks": ["D"]
    }"#;

    #[test]
    fn minimal_document() {
        let net = parse_network(MINIMAL).unwrap();
        assert_eq!(net.node_count(), 2);
        assert_eq!(net.edge_count(), 1);
        assert_eq!(net.edges()[0].coeff, Some(Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn zero_coefficient_is_rejected() {
        let text = MINIMAL.replace("[1.0, 0.0]", "[0.0, 0.0]");
        assert!(matches!(
            parse_network(&text),
            Err(FormatError::Model(ModelError::ZeroCoefficient { edge: 0 }))
        ));
    }

    #[test]
    fn antenna_out_of_range_is_a_reference_error() {
        let text = MINIMAL.replace("\"from_ant\": 0", "\"from_ant\": 2");
        assert!(matches!(
            parse_network(&text),
            Err(FormatError::Model(ModelError::AntennaOutOfRange { antenna: 2, .. }))
        ));
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_network("{\n  \"nodes\": [,]\n}").unwrap_err();
        match err {
            FormatError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn absent_coefficients_survive_a_round_trip() {
        let text = MINIMAL.replace(", \"coeff\": [1.0, 0.0]", "");
        let net = parse_network(&text).unwrap();
        assert_eq!(net.edges()[0].coeff, None);
        assert_eq!(parse_network(&to_json(&net, None)).unwrap(), net);
    }

    #[test]
    fn lift_fields_round_trip() {
        let net = parse_network(MINIMAL).unwrap();
        let lift = LiftFields {
            p: 3,
            q: 1,
            xi: vec![2],
        };
        let doc = parse_document(&to_json(&net, Some(&lift))).unwrap();
        assert_eq!(doc.lift, Some(lift));
        assert_eq!(doc.network, net);
    }

    #[test]
    fn partial_lift_fields_are_rejected() {
        let text = MINIMAL.replace("\"nodes\"", "\"p\": 3, \"nodes\"");
        assert!(matches!(parse_document(&text), Err(FormatError::Lift(_))));
    }
}
