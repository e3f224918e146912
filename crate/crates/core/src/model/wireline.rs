use num_complex::Complex64;

use super::{AntennaRef, Edge, ModelError, Network, SuperNode};

/// An orthogonal point-to-point link of a wireline network.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub from: String,
    pub to: String,
    pub coeff: Option<Complex64>,
}

impl Link {
    pub fn new(from: impl Into<String>, to: impl Into<String>, coeff: Option<Complex64>) -> Self {
        Self {
            from: from.into(),
            to: to.into(),
            coeff,
        }
    }
}

/// A network whose links do not interfere or broadcast.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Wireline {
    pub nodes: Vec<String>,
    pub links: Vec<Link>,
    pub sources: Vec<String>,
    pub sinks: Vec<String>,
}

impl Wireline {
    /// Embed into a wireless network by giving every link its own transmit
    /// antenna at the tail and its own receive antenna at the head.
    pub fn embed(&self) -> Result<Network, ModelError> {
        let pos = |id: &str, context: usize| {
            self.nodes
                .iter()
                .position(|n| n == id)
                .ok_or_else(|| ModelError::UnknownNode {
                    id: id.to_string(),
                    context: format!("link {context}"),
                })
        };
        let mut used = vec![0usize; self.nodes.len()];
        let mut edges = Vec::with_capacity(self.links.len());
        for (i, link) in self.links.iter().enumerate() {
            let tail = pos(&link.from, i)?;
            let head = pos(&link.to, i)?;
            let from = AntennaRef::new(link.from.clone(), used[tail]);
            used[tail] += 1;
            let to = AntennaRef::new(link.to.clone(), used[head]);
            used[head] += 1;
            edges.push(Edge::new(from, to, link.coeff));
        }
        let nodes = self
            .nodes
            .iter()
            .zip(&used)
            .map(|(id, &k)| SuperNode::new(id.clone(), k.max(1)))
            .collect();
        Network::new(nodes, edges, self.sources.clone(), self.sinks.clone())
    }
}

/// Natural embedding of a wireline network.
pub fn embed_wireline(wireline: &Wireline) -> Result<Network, ModelError> {
    wireline.embed()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_link_matches_single_antenna_network() {
        let w = Wireline {
            nodes: vec!["S".into(), "D".into()],
            links: vec![Link::new("S", "D", None)],
            sources: vec!["S".into()],
            sinks: vec!["D".into()],
        };
        let net = w.embed().unwrap();
        let direct = Network::new(
            vec![SuperNode::new("S", 1), SuperNode::new("D", 1)],
            vec![Edge::new(AntennaRef::new("S", 0), AntennaRef::new("D", 0), None)],
            vec!["S".into()],
            vec!["D".into()],
        )
        .unwrap();
        assert_eq!(net, direct);
    }

    #[test]
    fn relay_gets_one_antenna_per_link() {
        let w = Wireline {
            nodes: ["A", "B", "R", "C", "D"].map(String::from).to_vec(),
            links: vec![
                Link::new("A", "R", None),
                Link::new("B", "R", None),
                Link::new("R", "C", None),
                Link::new("R", "D", None),
            ],
            sources: vec![],
            sinks: vec![],
        };
        let net = w.embed().unwrap();
        let r = net.node_index("R").unwrap();
        assert_eq!(net.antennas(r), 4);
        let mut incident = vec![0; 4];
        for e in net.all_endpoints() {
            if e.tail == r {
                incident[e.tail_antenna] += 1;
            }
            if e.head == r {
                incident[e.head_antenna] += 1;
            }
        }
        assert_eq!(incident, vec![1, 1, 1, 1]);
    }
}
