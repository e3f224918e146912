use std::collections::HashSet;
use std::fmt;

use super::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationCode {
    DuplicateId,
    Reference,
    AntennaRange,
    ZeroCoefficient,
    SelfLoop,
    Acyclic,
    Unreachable,
    NoFlow,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DuplicateId => "duplicate_id",
            Self::Reference => "reference",
            Self::AntennaRange => "antenna_range",
            Self::ZeroCoefficient => "zero_coefficient",
            Self::SelfLoop => "self_loop",
            Self::Acyclic => "acyclic",
            Self::Unreachable => "unreachable",
            Self::NoFlow => "no_flow",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{} [{}]: {}", v.code, v.element, v.message)?;
        }
        Ok(())
    }
}

/// Check every network invariant plus per-flow reachability.
pub fn validate(net: &Network) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |code, message: String, element: String| {
        violations.push(Violation {
            code,
            message,
            element,
        })
    };

    let mut ids = HashSet::new();
    for n in net.nodes() {
        if !ids.insert(n.id.as_str()) {
            push(ViolationCode::DuplicateId, "node id declared twice".into(), n.id.clone());
        }
    }

    for (i, e) in net.edges().iter().enumerate() {
        let label = format!("edge {i} ({e})");
        for end in [&e.from, &e.to] {
            match net.node_index(&end.node) {
                None => push(
                    ViolationCode::Reference,
                    format!("unknown node `{}`", end.node),
                    label.clone(),
                ),
                Some(n) if end.antenna >= net.antennas(n) => push(
                    ViolationCode::AntennaRange,
                    format!("antenna {} but `{}` has {}", end.antenna, end.node, net.antennas(n)),
                    label.clone(),
                ),
                Some(_) => {}
            }
        }
        if let Some(c) = e.coeff {
            if c.norm_sqr() == 0.0 {
                push(ViolationCode::ZeroCoefficient, "coefficient is zero".into(), label.clone());
            }
        }
        if e.from.node == e.to.node {
            push(
                ViolationCode::SelfLoop,
                "both endpoints on the same super-node".into(),
                label,
            );
        }
    }

    for id in net.sources().iter().chain(net.sinks()) {
        if net.node_index(id).is_none() {
            push(ViolationCode::Reference, format!("unknown terminal `{id}`"), id.clone());
        }
    }

    let flows = net.flows();
    if flows.is_empty() {
        push(
            ViolationCode::NoFlow,
            "no (source, sink) pair declared".into(),
            String::new(),
        );
    }

    // Nodes that lie on some declared source-to-sink route.
    let n = net.node_count();
    let mut on_flow = vec![false; n];
    for (s, t) in &flows {
        let (Some(si), Some(ti)) = (net.node_index(s), net.node_index(t)) else {
            continue;
        };
        let fwd = net.reachable_from(si);
        if !fwd[ti] {
            push(
                ViolationCode::Unreachable,
                format!("sink `{t}` is not reachable from source `{s}`"),
                format!("{s}->{t}"),
            );
            continue;
        }
        let back = net.reaching(ti);
        for v in 0..n {
            on_flow[v] |= fwd[v] && back[v];
        }
    }
    if net.topological_order(&on_flow).is_none() {
        push(
            ViolationCode::Acyclic,
            "super-node graph restricted to the declared flows has a cycle".into(),
            String::new(),
        );
    }

    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}
