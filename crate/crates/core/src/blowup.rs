//! Point blow-ups of germs of foliations and the Seidenberg reduction driver.
//!
//! Chart 1 is `(x, t) ↦ (c₀ + x, c₁ + t·x)` with exceptional divisor `x = 0`;
//! chart 2 is `(s, y) ↦ (c₀ + s·y, c₁ + y)` with exceptional divisor `y = 0`.
//! In both charts the chart variables are numbered `(0, 1)`.

use std::collections::VecDeque;
use std::fmt;

use num_traits::Zero;

use crate::exactalg::{Poly, Rat, UniPoly};
use crate::foliation::{singular_points, FoliationError, GermFoliation, Window};
use crate::forms::{pullback, OneForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChartId {
    One,
    Two,
}

impl ChartId {
    pub fn index(self) -> u8 {
        match self {
            ChartId::One => 1,
            ChartId::Two => 2,
        }
    }

    /// Index of the chart variable cutting out the exceptional divisor.
    pub fn divisor_var(self) -> usize {
        match self {
            ChartId::One => 0,
            ChartId::Two => 1,
        }
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupChart {
    pub id: ChartId,
    pub center: [Rat; 2],
}

impl BlowupChart {
    pub fn new(id: ChartId, center: [Rat; 2]) -> Self {
        BlowupChart { id, center }
    }

    /// Images of the old coordinates in the chart coordinates.
    pub fn map(&self) -> [Poly; 2] {
        let u = Poly::var(2, 0);
        let v = Poly::var(2, 1);
        let c0 = Poly::constant(2, self.center[0].clone());
        let c1 = Poly::constant(2, self.center[1].clone());
        match self.id {
            ChartId::One => [c0 + &u, c1 + &v * &u],
            ChartId::Two => [c0 + &u * &v, c1 + v],
        }
    }

    /// Precomposes a map into some root chart with this blow-up.
    pub fn compose(&self, to_root: &[Poly; 2]) -> [Poly; 2] {
        let m = self.map();
        [
            to_root[0].substitute(&m).expect("two images"),
            to_root[1].substitute(&m).expect("two images"),
        ]
    }

    pub fn divisor(&self) -> Poly {
        Poly::var(2, self.id.divisor_var())
    }
}

/// `σ*ω = e^m · ω̃` where `e` is the divisor variable and `m` is maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictTransform {
    pub chart: BlowupChart,
    pub omega_tilde: OneForm,
    pub divided_power: u32,
    pub exceptional_invariant: bool,
}

pub fn blowup_once(g: &GermFoliation, chart: ChartId) -> StrictTransform {
    let chart = BlowupChart::new(chart, g.basepoint().clone());
    let v = chart.id.divisor_var();
    let pulled = pullback(&chart.map(), g.omega()).expect("two-variable map");
    let m = pulled
        .coeffs()
        .iter()
        .filter_map(|c| c.min_exp_in(v))
        .min()
        .expect("pullback of a nonzero form is nonzero");
    let omega_tilde = pulled.map(|c| c.div_var_power(v, m));
    // the coefficient of the differential along the divisor
    let along = omega_tilde.coeff(1 - v);
    let exceptional_invariant = along.is_zero() || along.min_exp_in(v).unwrap() >= 1;
    StrictTransform {
        chart,
        omega_tilde,
        divided_power: m,
        exceptional_invariant,
    }
}

/// Non-invariance of the first exceptional divisor.
pub fn is_first_level_dicritical(g: &GermFoliation) -> Result<bool, FoliationError> {
    if !g.is_singular() {
        return Err(FoliationError::NonSingularPoint);
    }
    let one = blowup_once(g, ChartId::One);
    let two = blowup_once(g, ChartId::Two);
    assert_eq!(
        one.exceptional_invariant, two.exceptional_invariant,
        "charts disagree on the exceptional divisor"
    );
    assert_eq!(one.divided_power, two.divided_power);
    Ok(!one.exceptional_invariant)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeOutcome {
    /// Singular with a reduced singularity.
    Reduced,
    /// Not a singular point (only possible at the root).
    Regular,
    BlownUp {
        order: u32,
        divided_power: u32,
        exceptional_invariant: bool,
        children: Vec<usize>,
        /// Eliminant of singular points on the divisor without rational
        /// coordinates.
        unresolved: Option<UniPoly>,
    },
    DepthExceeded,
    /// Skipped after an early exit.
    Unexplored,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub depth: u32,
    /// Chart of the parent blow-up containing this point; `None` at the root.
    pub chart: Option<ChartId>,
    pub germ: GermFoliation,
    /// Composite of the blow-up charts from this node's coordinates down to
    /// the root coordinates.
    pub to_root: [Poly; 2],
    pub outcome: NodeOutcome,
}

impl ReductionNode {
    pub fn center(&self) -> &[Rat; 2] {
        self.germ.basepoint()
    }

    /// The two chart maps of this node's blow-up, composed down to the root.
    pub fn chart_maps(&self) -> [(ChartId, [Poly; 2]); 2] {
        [ChartId::One, ChartId::Two].map(|id| {
            let chart = BlowupChart::new(id, self.center().clone());
            (id, chart.compose(&self.to_root))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStatus {
    Complete,
    DepthExceeded,
    NonRationalCenter(UniPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTree {
    pub nodes: Vec<ReductionNode>,
    pub status: ReductionStatus,
    /// Set when the walk stopped at the first non-invariant divisor.
    pub truncated: bool,
}

impl ReductionTree {
    pub fn root(&self) -> &ReductionNode {
        &self.nodes[0]
    }

    pub fn max_depth(&self) -> u32 {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn blown_up(&self) -> impl Iterator<Item = &ReductionNode> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.outcome, NodeOutcome::BlownUp { .. }))
    }

    /// First node whose exceptional divisor is not invariant.
    pub fn dicritical_witness(&self) -> Option<&ReductionNode> {
        self.nodes.iter().find(|n| {
            matches!(
                n.outcome,
                NodeOutcome::BlownUp {
                    exceptional_invariant: false,
                    ..
                }
            )
        })
    }

    pub fn leaves(&self) -> impl Iterator<Item = &ReductionNode> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.outcome, NodeOutcome::Reduced | NodeOutcome::Regular))
    }
}

pub fn reduce_singularities(g: &GermFoliation, max_depth: u32) -> ReductionTree {
    reduce_with(g, max_depth, false)
}

/// Breadth-first reduction. With `stop_at_dicritical` the walk ends at the
/// first blow-up whose exceptional divisor is not invariant.
pub fn reduce_with(g: &GermFoliation, max_depth: u32, stop_at_dicritical: bool) -> ReductionTree {
    let mut nodes = vec![ReductionNode {
        id: 0,
        parent: None,
        depth: 0,
        chart: None,
        germ: g.clone(),
        to_root: [Poly::var(2, 0), Poly::var(2, 1)],
        outcome: NodeOutcome::Unexplored,
    }];
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;

    while let Some(id) = queue.pop_front() {
        let node = &nodes[id];
        let germ = node.germ.clone();
        if !germ.is_singular() {
            nodes[id].outcome = NodeOutcome::Regular;
            continue;
        }
        if germ.is_reduced_singularity().expect("singular basepoint") {
            nodes[id].outcome = NodeOutcome::Reduced;
            continue;
        }
        if node.depth >= max_depth {
            nodes[id].outcome = NodeOutcome::DepthExceeded;
            continue;
        }
        let depth = node.depth;
        let to_root = node.to_root.clone();
        let order = germ.order();

        let one = blowup_once(&germ, ChartId::One);
        let two = blowup_once(&germ, ChartId::Two);
        assert_eq!(one.exceptional_invariant, two.exceptional_invariant);
        assert_eq!(one.divided_power, two.divided_power);

        let on_divisor = singular_points(&one.omega_tilde, &Window::Divisor { var: 0 })
            .expect("strict transform has coprime coefficients");
        let unresolved = (!on_divisor.complete).then(|| on_divisor.eliminants.0.clone());

        let mut centers: Vec<(ChartId, OneForm, [Rat; 2])> = on_divisor
            .rational_points
            .into_iter()
            .map(|p| (ChartId::One, one.omega_tilde.clone(), p))
            .collect();
        // the point t = ∞ is visible only in chart 2
        let origin = [Rat::zero(), Rat::zero()];
        if two
            .omega_tilde
            .coeffs()
            .iter()
            .all(|c| c.eval(&origin).is_zero())
        {
            centers.push((ChartId::Two, two.omega_tilde.clone(), origin));
        }

        let mut children = Vec::with_capacity(centers.len());
        for (chart, omega, center) in centers {
            let child_id = nodes.len();
            let map = BlowupChart::new(chart, germ.basepoint().clone());
            nodes.push(ReductionNode {
                id: child_id,
                parent: Some(id),
                depth: depth + 1,
                chart: Some(chart),
                germ: GermFoliation::new(omega, center).expect("coprime strict transform"),
                to_root: map.compose(&to_root),
                outcome: NodeOutcome::Unexplored,
            });
            children.push(child_id);
            queue.push_back(child_id);
        }
        let invariant = one.exceptional_invariant;
        nodes[id].outcome = NodeOutcome::BlownUp {
            order,
            divided_power: one.divided_power,
            exceptional_invariant: invariant,
            children,
            unresolved,
        };
        if stop_at_dicritical && !invariant {
            truncated = !queue.is_empty();
            break;
        }
    }

    let mut status = ReductionStatus::Complete;
    for n in &nodes {
        match &n.outcome {
            NodeOutcome::DepthExceeded => {
                status = ReductionStatus::DepthExceeded;
                break;
            }
            NodeOutcome::BlownUp {
                unresolved: Some(e),
                ..
            } => {
                status = ReductionStatus::NonRationalCenter(e.clone());
                break;
            }
            _ => {}
        }
    }
    ReductionTree {
        nodes,
        status,
        truncated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DicriticityVerdict {
    NonDicritical,
    /// The witness node's exceptional divisor is not invariant.
    Dicritical {
        node: usize,
        depth: u32,
    },
    Unknown(UnknownReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnknownReason {
    DepthExceeded,
    NonRationalCenter(UniPoly),
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknownReason::DepthExceeded => f.write_str("depth exceeded"),
            UnknownReason::NonRationalCenter(e) => write!(f, "non-rational center: {e}"),
        }
    }
}

impl fmt::Display for DicriticityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DicriticityVerdict::NonDicritical => f.write_str("NonDicritical"),
            DicriticityVerdict::Dicritical { .. } => f.write_str("Dicritical"),
            DicriticityVerdict::Unknown(_) => f.write_str("Unknown"),
        }
    }
}

pub fn verdict_of(tree: &ReductionTree) -> DicriticityVerdict {
    if let Some(w) = tree.dicritical_witness() {
        return DicriticityVerdict::Dicritical {
            node: w.id,
            depth: w.depth,
        };
    }
    match &tree.status {
        ReductionStatus::Complete => DicriticityVerdict::NonDicritical,
        ReductionStatus::DepthExceeded => DicriticityVerdict::Unknown(UnknownReason::DepthExceeded),
        ReductionStatus::NonRationalCenter(e) => {
            DicriticityVerdict::Unknown(UnknownReason::NonRationalCenter(e.clone()))
        }
    }
}

pub fn dicriticity(
    g: &GermFoliation,
    max_depth: u32,
) -> Result<DicriticityVerdict, FoliationError> {
    if !g.is_singular() {
        return Err(FoliationError::NonSingularPoint);
    }
    Ok(verdict_of(&reduce_with(g, max_depth, true)))
}
