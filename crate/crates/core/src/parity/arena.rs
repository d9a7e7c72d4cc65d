//! Explicit two-player arenas with vector priorities.

use serde::{Deserialize, Serialize};

use crate::error::SolverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Owner {
    Seeker,
    Spoiler,
}

/// A finite game graph. Every node has at least one successor and a priority
/// vector of the arena's width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    width: usize,
    initial: usize,
    owner: Vec<Owner>,
    names: Vec<String>,
    /// `[node * width + coordinate]`
    priority: Vec<u32>,
    succ: Vec<Vec<usize>>,
    labels: Vec<Vec<Option<u32>>>,
    pred: Vec<Vec<usize>>,
}

/// Incremental construction; [`ArenaBuilder::finish`] checks totality.
#[derive(Clone, Debug)]
pub struct ArenaBuilder {
    width: usize,
    owner: Vec<Owner>,
    names: Vec<String>,
    priority: Vec<u32>,
    succ: Vec<Vec<usize>>,
    labels: Vec<Vec<Option<u32>>>,
}

impl ArenaBuilder {
    pub fn new(width: usize) -> Self {
        ArenaBuilder {
            width,
            owner: Vec::new(),
            names: Vec::new(),
            priority: Vec::new(),
            succ: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn add_node(&mut self, owner: Owner, priorities: &[u32], name: impl Into<String>) -> usize {
        assert_eq!(priorities.len(), self.width, "priority vector width");
        self.owner.push(owner);
        self.names.push(name.into());
        self.priority.extend_from_slice(priorities);
        self.succ.push(Vec::new());
        self.labels.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: Option<u32>) {
        self.succ[from].push(to);
        self.labels[from].push(label);
    }

    pub fn finish(self, initial: usize) -> Result<Arena, SolverError> {
        let n = self.owner.len();
        if self.width == 0 {
            return Err(SolverError::Malformed("arena needs at least one priority coordinate".into()));
        }
        if initial >= n {
            return Err(SolverError::Malformed(format!("initial node {initial} out of range")));
        }
        let mut pred = vec![Vec::new(); n];
        for (v, succ) in self.succ.iter().enumerate() {
            if succ.is_empty() {
                return Err(SolverError::Malformed(format!("node {v} has no successor")));
            }
            for &w in succ {
                if w >= n {
                    return Err(SolverError::Malformed(format!("edge {v} -> {w} leaves the arena")));
                }
                pred[w].push(v);
            }
        }
        for p in &mut pred {
            p.sort_unstable();
            p.dedup();
        }
        Ok(Arena {
            width: self.width,
            initial,
            owner: self.owner,
            names: self.names,
            priority: self.priority,
            succ: self.succ,
            labels: self.labels,
            pred,
        })
    }
}

impl Arena {
    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn owner(&self, v: usize) -> Owner {
        self.owner[v]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn labels(&self, v: usize) -> &[Option<u32>] {
        &self.labels[v]
    }

    /// Label of the first edge `from -> to`.
    pub fn label(&self, from: usize, to: usize) -> Option<u32> {
        let i = self.succ[from].iter().position(|&w| w == to)?;
        self.labels[from][i]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn priority(&self, v: usize, coordinate: usize) -> u32 {
        self.priority[v * self.width + coordinate]
    }

    pub fn priorities(&self, v: usize) -> &[u32] {
        &self.priority[v * self.width..(v + 1) * self.width]
    }

    pub(crate) fn check_coordinate(&self, coordinate: usize) -> Result<(), SolverError> {
        if coordinate < self.width {
            Ok(())
        } else {
            Err(SolverError::Coordinate {
                coordinate,
                width: self.width,
            })
        }
    }

    /// The same graph with new priority vectors.
    pub fn with_priorities(&self, width: usize, priority: Vec<u32>) -> Arena {
        assert_eq!(priority.len(), width * self.len());
        Arena {
            width,
            priority,
            ..self.clone()
        }
    }

    /// Nodes reachable from the initial node, in breadth-first order.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = std::collections::VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn dump(&self) -> ArenaDump {
        ArenaDump {
            width: self.width,
            initial: self.initial,
            nodes: (0..self.len())
                .map(|v| DumpNode {
                    id: v,
                    name: self.names[v].clone(),
                    owner: self.owner[v],
                    priorities: self.priorities(v).to_vec(),
                    edges: self.succ[v]
                        .iter()
                        .zip(&self.labels[v])
                        .map(|(&to, &label)| DumpEdge { to, label })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Debug form of an arena: node list with owners, priorities and edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArenaDump {
    pub width: usize,
    pub initial: usize,
    pub nodes: Vec<DumpNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpNode {
    pub id: usize,
    pub name: String,
    pub owner: Owner,
    pub priorities: Vec<u32>,
    pub edges: Vec<DumpEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpEdge {
    pub to: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<u32>,
}

impl ArenaDump {
    pub fn to_arena(&self) -> Result<Arena, SolverError> {
        let mut b = ArenaBuilder::new(self.width);
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id != i {
                return Err(SolverError::Malformed(format!("node {} listed at position {i}", n.id)));
            }
            if n.priorities.len() != self.width {
                return Err(SolverError::Malformed(format!("node {i} has the wrong width")));
            }
            b.add_node(n.owner, &n.priorities, n.name.clone());
        }
        for n in &self.nodes {
            for e in &n.edges {
                b.add_edge(n.id, e.to, e.label);
            }
        }
        b.finish(self.initial)
    }
}

/// A node subset of an arena, stored as a membership vector.
pub(crate) type NodeSet = Vec<bool>;

/// Attractor of `target` for `player` inside the subgame `alive`, together
/// with the attracting move of each `player` node added outside `target`.
pub(crate) fn attractor(
    arena: &Arena,
    alive: &[bool],
    target: &[bool],
    player: Owner,
) -> (NodeSet, Vec<(usize, usize)>) {
    let n = arena.len();
    let mut attr = vec![false; n];
    let mut remaining: Vec<usize> = (0..n)
        .map(|v| {
            if alive[v] {
                arena.successors(v).iter().filter(|&&w| alive[w]).count()
            } else {
                0
            }
        })
        .collect();
    let mut queue = std::collections::VecDeque::new();
    for v in 0..n {
        if alive[v] && target[v] {
            attr[v] = true;
            queue.push_back(v);
        }
    }
    let mut moves = Vec::new();
    while let Some(w) = queue.pop_front() {
        for &v in arena.predecessors(w) {
            if !alive[v] || attr[v] {
                continue;
            }
            if arena.owner(v) == player {
                attr[v] = true;
                moves.push((v, w));
                queue.push_back(v);
            } else {
                // count each alive edge into the attractor once per distinct successor
                let hits = arena.successors(v).iter().filter(|&&x| x == w).count();
                remaining[v] -= hits;
                if remaining[v] == 0 {
                    attr[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    moves.sort_unstable();
    (attr, moves)
}

pub(crate) fn minus(a: &[bool], b: &[bool]) -> NodeSet {
    a.iter().zip(b).map(|(&x, &y)| x && !y).collect()
}

pub(crate) fn is_empty(a: &[bool]) -> bool {
    !a.iter().any(|&x| x)
}

pub(crate) fn opponent(o: Owner) -> Owner {
    match o {
        Owner::Seeker => Owner::Spoiler,
        Owner::Spoiler => Owner::Seeker,
    }
}
