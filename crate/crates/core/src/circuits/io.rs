use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{CircuitError, NodeId, RectifierCircuit};

pub const CIRCUIT_FORMAT_VERSION: u64 = 1;

/// On-disk shape of a circuit. Field order is the serialized order.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitFile {
    version: u64,
    nodes: usize,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
    edges: Vec<[NodeId; 2]>,
}

impl RectifierCircuit {
    /// Compact single-line JSON with edges sorted by `(from, to)`, followed
    /// by one LF.
    pub fn to_json(&self) -> String {
        let file = CircuitFile {
            version: CIRCUIT_FORMAT_VERSION,
            nodes: self.nodes,
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        let mut s = serde_json::to_string(&file).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CircuitError> {
        let file: CircuitFile =
            serde_json::from_str(text).map_err(|e| CircuitError::Parse(e.to_string()))?;
        if file.version != CIRCUIT_FORMAT_VERSION {
            return Err(CircuitError::UnsupportedVersion(file.version));
        }
        RectifierCircuit::new(
            file.nodes,
            file.edges.into_iter().map(|[u, v]| (u, v)).collect(),
            file.inputs,
            file.outputs,
        )
    }

    /// Graphviz rendering: inputs as boxes, outputs as double circles,
    /// nodes that are both as diamonds. Export only.
    pub fn to_dot(&self) -> String {
        let mut role = vec![0u8; self.nodes];
        for &v in &self.inputs {
            role[v as usize] |= 1;
        }
        for &v in &self.outputs {
            role[v as usize] |= 2;
        }
        let mut s = String::from("digraph rectifier {\n  rankdir=LR;\n");
        for (v, r) in role.iter().enumerate() {
            let shape = match r {
                1 => "box",
                2 => "doublecircle",
                3 => "diamond",
                _ => "circle",
            };
            writeln!(s, "  n{v} [shape={shape}];").unwrap();
        }
        for (pos, &v) in self.inputs.iter().enumerate() {
            writeln!(s, "  n{v} [xlabel=\"in{pos}\"];").unwrap();
        }
        for (pos, &v) in self.outputs.iter().enumerate() {
            writeln!(s, "  n{v} [xlabel=\"out{pos}\"];").unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(s, "  n{u} -> n{v};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_json_layout() {
        let c = RectifierCircuit::new(3, vec![(1, 2), (0, 2)], vec![0, 1], vec![2]).unwrap();
        assert_eq!(
            c.to_json(),
            "{\"version\":1,\"nodes\":3,\"inputs\":[0,1],\"outputs\":[2],\"edges\":[[0,2],[1,2]]}\n"
        );
        assert_eq!(RectifierCircuit::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            RectifierCircuit::from_json(
                "{\"version\":2,\"nodes\":0,\"inputs\":[],\"outputs\":[],\"edges\":[]}"
            ),
            Err(CircuitError::UnsupportedVersion(2))
        ));
        assert!(matches!(
            RectifierCircuit::from_json("{\"version\":1,\"nodes\":2,\"inputs\":[0],\"outputs\":[1],\"edges\":[[0,1],[1,0]]}"),
            Err(CircuitError::Cyclic)
        ));
        assert!(matches!(
            RectifierCircuit::from_json("{\"version\":1}"),
            Err(CircuitError::Parse(_))
        ));
    }

    #[test]
    fn dot_marks_roles() {
        let c = RectifierCircuit::new(3, vec![(0, 1), (1, 2)], vec![0, 1], vec![1, 2]).unwrap();
        let dot = c.to_dot();
        assert!(dot.starts_with("digraph rectifier {"));
        assert!(dot.contains("n0 [shape=box];"));
        assert!(dot.contains("n1 [shape=diamond];"));
        assert!(dot.contains("n2 [shape=doublecircle];"));
        assert!(dot.contains("n1 -> n2;"));
    }
}
