//! Numerical simulation of forward and backward elementary transformations
//! of ℙ¹-bundles over a resolved surface.
//!
//! A [`ResolutionGraph`] lists the components of the pulled-back cokernel
//! divisor with their self-intersections, multiplicities and pairwise
//! intersection numbers. The simulator tracks only these numbers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("pullback consistency fails: {0:?}")]
    Inconsistent(Vec<Violation>),
    #[error("invariant of `{curve}` would drop below zero (at {invariant}, decrement {decrement})")]
    InvariantUnderflow {
        curve: String,
        invariant: i64,
        decrement: i64,
    },
    #[error("section space needs n ≥ 1, got {0}")]
    SectionDegree(i64),
    #[error("malformed graph: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    Exceptional,
    #[serde(alias = "strict")]
    StrictTransform,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveNode {
    pub label: String,
    pub self_int: i64,
    pub mult: u32,
    pub kind: CurveKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: String,
    pub b: String,
    pub count: u32,
}

/// Input document: `{"nodes": [...], "edges": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub nodes: Vec<CurveNode>,
    #[serde(default)]
    pub edges: Vec<Edge>,
}

/// Curves with a symmetric intersection table, indexed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    nodes: Vec<CurveNode>,
    meet: BTreeMap<(usize, usize), u32>,
}

impl ResolutionGraph {
    pub fn new(spec: GraphSpec) -> Result<Self, TransformError> {
        let mut seen = BTreeSet::new();
        for n in &spec.nodes {
            if !seen.insert(n.label.clone()) {
                return Err(TransformError::Malformed(format!("duplicate label `{}`", n.label)));
            }
        }
        let index = |l: &str| {
            spec.nodes
                .iter()
                .position(|n| n.label == l)
                .ok_or_else(|| TransformError::Malformed(format!("edge names unknown curve `{l}`")))
        };
        let mut meet = BTreeMap::new();
        for e in &spec.edges {
            let (i, j) = (index(&e.a)?, index(&e.b)?);
            if i == j {
                return Err(TransformError::Malformed(format!(
                    "self-edge on `{}`; use self_int",
                    e.a
                )));
            }
            let key = (i.min(j), i.max(j));
            *meet.entry(key).or_insert(0) += e.count;
        }
        meet.retain(|_, c| *c > 0);
        Ok(Self {
            nodes: spec.nodes,
            meet,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, TransformError> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| TransformError::Malformed(e.to_string()))?;
        Self::new(spec)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            nodes: self.nodes.clone(),
            edges: self
                .meet
                .iter()
                .map(|(&(i, j), &c)| Edge {
                    a: self.nodes[i].label.clone(),
                    b: self.nodes[j].label.clone(),
                    count: c,
                })
                .collect(),
        }
    }

    pub fn nodes(&self) -> &[CurveNode] {
        &self.nodes
    }

    pub fn node(&self, label: &str) -> Option<&CurveNode> {
        self.nodes.iter().find(|n| n.label == label)
    }

    /// Intersection number of two distinct curves, or the self-intersection.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return self.nodes[i].self_int;
        }
        i64::from(*self.meet.get(&(i.min(j), i.max(j))).unwrap_or(&0))
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.nodes.iter().map(|n| u64::from(n.mult)).sum()
    }

    fn with_mult(&self, label: &str, mult: u32) -> Self {
        let mut g = self.clone();
        for n in g.nodes.iter_mut() {
            if n.label == label {
                n.mult = mult;
            }
        }
        g
    }
}

/// Q = 2C for a single smooth rational curve with `C² = −d`.
pub fn two_c_graph(d: i64) -> ResolutionGraph {
    ResolutionGraph::new(GraphSpec {
        nodes: vec![CurveNode {
            label: "C".into(),
            self_int: -d,
            mult: 2,
            kind: CurveKind::StrictTransform,
        }],
        edges: vec![],
    })
    .expect("well formed")
}

/// Q = 2C on a surface of Picard number one, `C² = csq > 0`.
pub fn picard_one_graph(csq: i64) -> ResolutionGraph {
    ResolutionGraph::new(GraphSpec {
        nodes: vec![CurveNode {
            label: "C".into(),
            self_int: csq,
            mult: 2,
            kind: CurveKind::StrictTransform,
        }],
        edges: vec![],
    })
    .expect("well formed")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub curve: String,
    /// `Σ_D mult(D)·(D·E)` including `D = E`; zero when consistent.
    pub defect: i64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackIdentity {
    pub curve: String,
    /// `b·m_C`.
    pub lhs: i64,
    /// `Σ_{D≠C} mult(D)·(D·C)`.
    pub rhs: i64,
}

/// Check `Σ_D mult(D)·(D·E) = 0` on every exceptional curve E and, when it
/// holds, report the identity `b·m_E = Σ_{D≠E} mult(D)·(D·E)`.
pub fn validate_pullback(g: &ResolutionGraph) -> Result<Vec<PullbackIdentity>, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut identities = Vec::new();
    for (e, node) in g.nodes.iter().enumerate() {
        if node.kind != CurveKind::Exceptional {
            continue;
        }
        if node.self_int > -1 {
            violations.push(Violation {
                curve: node.label.clone(),
                defect: 0,
                reason: format!("exceptional curve with self-intersection {}", node.self_int),
            });
            continue;
        }
        let rhs: i64 = (0..g.nodes.len())
            .filter(|&dd| dd != e)
            .map(|dd| i64::from(g.nodes[dd].mult) * g.dot(dd, e))
            .sum();
        let lhs = -node.self_int * i64::from(node.mult);
        if rhs != lhs {
            violations.push(Violation {
                curve: node.label.clone(),
                defect: rhs - lhs,
                reason: "pullback is not numerically trivial on this curve".into(),
            });
        } else {
            identities.push(PullbackIdentity {
                curve: node.label.clone(),
                lhs,
                rhs,
            });
        }
    }
    if violations.is_empty() {
        Ok(identities)
    } else {
        Err(violations)
    }
}

fn require_valid(g: &ResolutionGraph) -> Result<(), TransformError> {
    validate_pullback(g).map(|_| ()).map_err(TransformError::Inconsistent)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Smallest label first.
    #[default]
    Lex,
    /// Largest remaining multiplicity first, ties by label.
    MaxMult,
}

fn pick(g: &ResolutionGraph, remaining: &[u32], among: &[usize], strategy: Strategy) -> Option<usize> {
    let live = among.iter().copied().filter(|&i| remaining[i] > 0);
    match strategy {
        Strategy::Lex => live.min_by(|&a, &b| g.nodes[a].label.cmp(&g.nodes[b].label)),
        Strategy::MaxMult => live.min_by(|&a, &b| {
            remaining[b]
                .cmp(&remaining[a])
                .then_with(|| g.nodes[a].label.cmp(&g.nodes[b].label))
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForwardStep {
    pub step: usize,
    pub component: String,
    pub action: String,
    pub n_before: u64,
    pub n_after: u64,
    pub multiplicities: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForwardTrace {
    pub n_trace: Vec<u64>,
    pub steps: Vec<ForwardStep>,
    pub final_multiplicities: BTreeMap<String, u32>,
    pub trivial_bundle: bool,
    pub stages: Vec<String>,
}

/// One elementary transformation per unit of multiplicity. Once a component is
/// picked it is transformed until its multiplicity is used up.
pub fn forward_run(g: &ResolutionGraph, strategy: Strategy) -> Result<ForwardTrace, TransformError> {
    require_valid(g)?;
    let all: Vec<usize> = (0..g.nodes.len()).collect();
    let mut remaining: Vec<u32> = g.nodes.iter().map(|n| n.mult).collect();
    let snapshot = |rem: &[u32]| -> BTreeMap<String, u32> {
        g.nodes.iter().zip(rem).map(|(n, &m)| (n.label.clone(), m)).collect()
    };
    let mut n = g.total_multiplicity();
    let mut n_trace = vec![n];
    let mut steps = Vec::new();
    while let Some(c) = pick(g, &remaining, &all, strategy) {
        while remaining[c] > 0 {
            remaining[c] -= 1;
            steps.push(ForwardStep {
                step: steps.len() + 1,
                component: g.nodes[c].label.clone(),
                action: "blow up the centre curve in the fibre surface, contract the old fibre surface".into(),
                n_before: n,
                n_after: n - 1,
                multiplicities: snapshot(&remaining),
            });
            n -= 1;
            n_trace.push(n);
        }
    }
    Ok(ForwardTrace {
        n_trace,
        steps,
        final_multiplicities: snapshot(&remaining),
        trivial_bundle: n == 0,
        stages: vec![
            "elementary transformations".into(),
            "disjoint linearly equivalent sections: trivial ℙ¹-bundle".into(),
            "relative lc model (named stage, not computed)".into(),
        ],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BackwardStep {
    pub step: usize,
    pub component: String,
    pub phase: String,
    /// Index j of this transformation on its component.
    pub j: u32,
    /// For exceptional components: a_j, the square of the tracked section.
    pub a_j: Option<i64>,
    pub invariants: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BackwardTrace {
    pub steps: Vec<BackwardStep>,
    /// a_1..a_m for each exceptional curve.
    pub own_phase: BTreeMap<String, Vec<i64>>,
    /// Invariant of the ruled surface over each exceptional curve, step by step.
    pub invariant_history: BTreeMap<String, Vec<i64>>,
    pub final_invariants: BTreeMap<String, i64>,
    /// Exceptional curves over which the bundle ends up trivial.
    pub product_over: Vec<String>,
}

/// Exceptional components first (each through its own m_C transformations),
/// then strict-transform components. A transformation along D lowers the
/// invariant over each exceptional C it meets by D·C; decrements reaching C
/// before its own phase has finished are applied when that phase ends.
pub fn backward_run(g: &ResolutionGraph, strategy: Strategy) -> Result<BackwardTrace, TransformError> {
    require_valid(g)?;
    let exc: Vec<usize> = (0..g.nodes.len())
        .filter(|&i| g.nodes[i].kind == CurveKind::Exceptional)
        .collect();
    let strict: Vec<usize> = (0..g.nodes.len())
        .filter(|&i| g.nodes[i].kind == CurveKind::StrictTransform)
        .collect();
    let mut remaining: Vec<u32> = g.nodes.iter().map(|n| n.mult).collect();
    let mut inv: BTreeMap<usize, i64> = exc.iter().map(|&i| (i, 0)).collect();
    let mut pending: BTreeMap<usize, i64> = BTreeMap::new();
    let mut finished: BTreeSet<usize> = exc.iter().copied().filter(|&i| g.nodes[i].mult == 0).collect();
    let mut own_phase: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    let mut history: BTreeMap<String, Vec<i64>> =
        exc.iter().map(|&i| (g.nodes[i].label.clone(), vec![0])).collect();
    let mut steps = Vec::new();

    let decrement = |c: usize, by: i64, inv: &mut BTreeMap<usize, i64>| -> Result<(), TransformError> {
        let cur = inv[&c];
        if by > cur {
            return Err(TransformError::InvariantUnderflow {
                curve: g.nodes[c].label.clone(),
                invariant: cur,
                decrement: by,
            });
        }
        inv.insert(c, cur - by);
        Ok(())
    };

    for phase in [&exc, &strict] {
        while let Some(c) = pick(g, &remaining, phase, strategy) {
            let total = g.nodes[c].mult;
            while remaining[c] > 0 {
                remaining[c] -= 1;
                let j = total - remaining[c];
                let mut a_j = None;
                if g.nodes[c].kind == CurveKind::Exceptional {
                    let b = -g.nodes[c].self_int;
                    let a = -b * i64::from(j);
                    a_j = Some(a);
                    own_phase.entry(g.nodes[c].label.clone()).or_default().push(a);
                    inv.insert(c, -a);
                    history.get_mut(&g.nodes[c].label).expect("exceptional").push(-a);
                }
                for &e in &exc {
                    if e == c {
                        continue;
                    }
                    let k = g.dot(c, e);
                    if k == 0 {
                        continue;
                    }
                    if finished.contains(&e) {
                        decrement(e, k, &mut inv)?;
                        history.get_mut(&g.nodes[e].label).expect("exceptional").push(inv[&e]);
                    } else {
                        *pending.entry(e).or_insert(0) += k;
                    }
                }
                if remaining[c] == 0 && g.nodes[c].kind == CurveKind::Exceptional {
                    finished.insert(c);
                    if let Some(p) = pending.remove(&c) {
                        decrement(c, p, &mut inv)?;
                        history.get_mut(&g.nodes[c].label).expect("exceptional").push(inv[&c]);
                    }
                }
                steps.push(BackwardStep {
                    step: steps.len() + 1,
                    component: g.nodes[c].label.clone(),
                    phase: match g.nodes[c].kind {
                        CurveKind::Exceptional => "exceptional".into(),
                        CurveKind::StrictTransform => "strict-transform".into(),
                    },
                    j,
                    a_j,
                    invariants: inv.iter().map(|(&i, &v)| (g.nodes[i].label.clone(), v)).collect(),
                });
            }
        }
    }
    // Curves with m_C = 0 never had an own phase; anything still pending
    // for them is an inconsistency.
    for (&c, &p) in &pending {
        decrement(c, p, &mut inv)?;
    }
    let final_invariants: BTreeMap<String, i64> =
        inv.iter().map(|(&i, &v)| (g.nodes[i].label.clone(), v)).collect();
    let product_over = final_invariants
        .iter()
        .filter(|(_, &v)| v == 0)
        .map(|(l, _)| l.clone())
        .collect();
    Ok(BackwardTrace {
        steps,
        own_phase,
        invariant_history: history,
        final_invariants,
        product_over,
    })
}

/// Square of the curve cut on the exceptional divisor by the strict transform
/// of the fibre surface, when blowing up a section of square `a` over a curve
/// of square `b`.
pub fn blowup_section_selfint(a: i64, b: i64) -> i64 {
    b - a
}

/// Invariant of the resulting ruled surface when it has two disjoint sections.
pub fn ruled_invariant(a: i64, b: i64) -> u64 {
    (a - b).unsigned_abs()
}

/// Dimension of the space of sections of 𝔽_n disjoint from the negative
/// section, optionally through a fixed point off it.
pub fn section_space_dim(n: i64, through_point: bool) -> Result<u64, TransformError> {
    if n < 1 {
        return Err(TransformError::SectionDegree(n));
    }
    let n = n as u64;
    Ok(if through_point { n } else { n + 1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChoiceEntry {
    pub step: String,
    pub description: String,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChoiceLedger {
    pub entries: Vec<ChoiceEntry>,
    pub total: u64,
    /// Set when a zero-invariant choice was counted, which the model does
    /// not settle.
    pub heuristic: bool,
}

/// Dimension of the choices made in the backward procedure: the fibre point,
/// then one section choice for each repeated transformation along a
/// strict-transform component. Choices above exceptional curves do not change
/// the resulting model and are not counted.
///
/// For a component S with `s = S²`, first centre of square
/// `c₁ = −Σ_E mult(E)·(E·S)`, the curve left on the j-th exceptional divisor
/// has square `a_j = j·s − c₁`. The next centre is a section disjoint from it:
/// unique when `a_j > 0`, a `section_space_dim(−a_j, …)` family when `a_j < 0`.
pub fn choice_dimension(g: &ResolutionGraph, strategy: Strategy) -> Result<ChoiceLedger, TransformError> {
    require_valid(g)?;
    let mut entries = Vec::new();
    let mut heuristic = false;
    if g.total_multiplicity() == 0 {
        return Ok(ChoiceLedger {
            entries,
            total: 0,
            heuristic,
        });
    }
    entries.push(ChoiceEntry {
        step: "fibre".into(),
        description: "point p ∈ ℙ¹ selecting the fibre".into(),
        dim: 1,
    });
    let strict: Vec<usize> = (0..g.nodes.len())
        .filter(|&i| g.nodes[i].kind == CurveKind::StrictTransform)
        .collect();
    let mut order = Vec::new();
    let mut rem: Vec<u32> = g.nodes.iter().map(|n| n.mult).collect();
    while let Some(c) = pick(g, &rem, &strict, strategy) {
        rem[c] = 0;
        order.push(c);
    }
    for c in order {
        let node = &g.nodes[c];
        let s = node.self_int;
        let c1: i64 = -(0..g.nodes.len())
            .filter(|&e| g.nodes[e].kind == CurveKind::Exceptional)
            .map(|e| i64::from(g.nodes[e].mult) * g.dot(e, c))
            .sum::<i64>();
        let through = strict.iter().any(|&o| o != c && g.dot(o, c) > 0);
        for j in 1..node.mult {
            let a_j = i64::from(j) * s - c1;
            let (dim, description) = match a_j.cmp(&0) {
                std::cmp::Ordering::Less => (
                    section_space_dim(-a_j, through)?,
                    format!(
                        "section of 𝔽_{} disjoint from the negative section{}",
                        -a_j,
                        if through { ", through a fixed point" } else { "" }
                    ),
                ),
                std::cmp::Ordering::Greater => {
                    (0, format!("unique negative section (curve square {a_j} > 0)"))
                }
                std::cmp::Ordering::Equal => {
                    heuristic = true;
                    (
                        u64::from(!through),
                        "section of ℙ¹×ℙ¹ disjoint from a fibre-direction section".into(),
                    )
                }
            };
            entries.push(ChoiceEntry {
                step: format!("{}#{}", node.label, j + 1),
                description,
                dim,
            });
        }
    }
    let total = entries.iter().map(|e| e.dim).sum();
    Ok(ChoiceLedger {
        entries,
        total,
        heuristic,
    })
}

/// A copy of `g` with one multiplicity shifted by `delta`, for negative controls.
pub fn perturb_multiplicity(g: &ResolutionGraph, label: &str, delta: i64) -> Option<ResolutionGraph> {
    let n = g.node(label)?;
    let m = i64::from(n.mult) + delta;
    (m >= 0).then(|| g.with_mult(label, m as u32))
}
