//! Affine charts of Gr(d+2, 2(d+2)) around a submodule, the polynomial
//! equations for a chart point to be closed under the xᵢ, and a splitting
//! search that breaks the resulting locus into components with
//! smoothness and dimension certificates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::artinian::{
    gamma_kernel, kernel_of_pair, ArtinAlgebra, ArtinElement, GammaPoint, Submodule,
};
use crate::ratpoly::{
    eliminate_linear, jacobian_rank_at, Poly, PolySystem, RatMatrix, Rational, Substitution,
    VarContext,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassError {
    #[error("submodule has dimension {got}, chart needs {expected}")]
    WrongDimension { expected: usize, got: usize },
    #[error("a component needs at least one member")]
    NoComponents,
}

/// Names for `count` chart variables: single letters a, b, … (skipping `o`)
/// while they last, indexed names otherwise.
fn chart_var_names(rows: usize, cols: usize) -> Vec<String> {
    let count = rows * cols;
    let letters: Vec<char> = ('a'..='z').filter(|&c| c != 'o').collect();
    if count <= letters.len() {
        letters[..count].iter().map(|c| c.to_string()).collect()
    } else {
        (0..rows)
            .flat_map(|r| (0..cols).map(move |c| format!("p{r}_{c}")))
            .collect()
    }
}

/// Affine chart: rows are the echelon basis of the base submodule with a fresh
/// variable added in every non-pivot column.
#[derive(Debug, Clone)]
pub struct ChartFrame {
    algebra: ArtinAlgebra,
    base: Submodule,
    pivots: Vec<usize>,
    free_cols: Vec<usize>,
    ctx: VarContext,
    rows: Vec<Vec<Poly>>,
}

pub fn chart_at(m: &Submodule) -> Result<ChartFrame, GrassError> {
    let algebra = *m.algebra();
    let k = algebra.dim();
    if m.dim() != k {
        return Err(GrassError::WrongDimension {
            expected: k,
            got: m.dim(),
        });
    }
    let n = algebra.ambient_dim();
    let pivots = m.pivots();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let ctx = VarContext::new(chart_var_names(k, free_cols.len())).expect("distinct names");
    let rows = (0..k)
        .map(|r| {
            let mut row: Vec<Poly> = m
                .basis()
                .row(r)
                .iter()
                .map(|x| Poly::constant(&ctx, x.clone()))
                .collect();
            for (j, &c) in free_cols.iter().enumerate() {
                row[c] = &row[c] + &ctx.var_at(r * free_cols.len() + j);
            }
            row
        })
        .collect();
    Ok(ChartFrame {
        algebra,
        base: m.clone(),
        pivots,
        free_cols,
        ctx,
        rows,
    })
}

impl ChartFrame {
    pub fn algebra(&self) -> &ArtinAlgebra {
        &self.algebra
    }

    pub fn base(&self) -> &Submodule {
        &self.base
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_cols(&self) -> &[usize] {
        &self.free_cols
    }

    /// Chart rows with polynomial entries.
    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn num_vars(&self) -> usize {
        self.ctx.len()
    }

    /// The parameter variable at chart row `r`, non-pivot slot `j`.
    pub fn var_name(&self, r: usize, j: usize) -> &str {
        self.ctx.name(r * self.free_cols.len() + j)
    }

    pub fn base_point(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.ctx.len()]
    }

    /// The chart matrix at a parameter value.
    pub fn evaluate(&self, point: &[Rational]) -> RatMatrix {
        let n = self.algebra.ambient_dim();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point).expect("point length")).collect())
            .collect();
        RatMatrix::from_rows(rows, n)
    }

    /// Chart coordinates of a subspace given by any basis, when it lies in
    /// the chart (its pivot-column block is invertible).
    pub fn coordinates_of(&self, basis: &RatMatrix) -> Option<Vec<Rational>> {
        if basis.rows() != self.pivots.len() {
            return None;
        }
        let p = basis.select_cols(&self.pivots);
        let normalized = p.inverse()?.mul(basis);
        let mut out = Vec::with_capacity(self.ctx.len());
        for r in 0..normalized.rows() {
            for &c in &self.free_cols {
                out.push(normalized.get(r, c) - self.base.basis().get(r, c));
            }
        }
        Some(out)
    }
}

/// Closure conditions on a chart point, one polynomial per non-pivot column
/// for every pair (action, chart row).
#[derive(Debug, Clone)]
pub struct InvarianceSystem {
    pub frame: ChartFrame,
    pub system: PolySystem,
}

pub fn invariance_system(frame: &ChartFrame, actions: &[RatMatrix]) -> InvarianceSystem {
    let ctx = &frame.ctx;
    let n = frame.algebra.ambient_dim();
    let mut gens = Vec::new();
    for x in actions {
        for row in &frame.rows {
            let mut w = vec![Poly::zero(ctx); n];
            for (k, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                for (c, wc) in w.iter_mut().enumerate() {
                    let a = x.get(k, c);
                    if !a.is_zero() {
                        *wc = &*wc + &entry.scale(a);
                    }
                }
            }
            // w must equal Σ w[pivot_r]·R_r; whatever is left is an obstruction.
            let mut residual = w.clone();
            for (r, &pc) in frame.pivots.iter().enumerate() {
                let coef = &w[pc];
                if coef.is_zero() {
                    continue;
                }
                for (c, res) in residual.iter_mut().enumerate() {
                    if !frame.rows[r][c].is_zero() {
                        *res = &*res - &(coef * &frame.rows[r][c]);
                    }
                }
            }
            for &c in &frame.free_cols {
                gens.push(residual[c].clone());
            }
        }
    }
    InvarianceSystem {
        frame: frame.clone(),
        system: PolySystem::new(ctx, gens).expect("same context"),
    }
}

impl InvarianceSystem {
    pub fn reduced(&self) -> (PolySystem, Substitution) {
        eliminate_linear(&self.system)
    }

    pub fn vanishes_at_base(&self) -> bool {
        self.system
            .vanishes_at(&self.frame.base_point())
            .expect("point length")
    }
}

/// The Γ point ((0:…:0:1), (0:1)), spanned by every (xᵢ,0) and (0,x_d).
pub fn base_gamma_point(algebra: &ArtinAlgebra) -> GammaPoint {
    let mut dir = vec![Rational::zero(); algebra.d() + 1];
    dir[algebra.d()] = Rational::one();
    GammaPoint::new(&dir, (Rational::zero(), Rational::one())).expect("nonzero")
}

/// Invariance system at the base Γ point for `R_d`.
pub fn base_invariance_system(d: usize) -> InvarianceSystem {
    let algebra = ArtinAlgebra::new(d);
    let m0 = gamma_kernel(&base_gamma_point(&algebra), &algebra).expect("matching length");
    let frame = chart_at(&m0).expect("Γ kernels have dimension d+2");
    invariance_system(&frame, &algebra.actions())
}

/// A branch of the invariance locus: the factors chosen along the way, and the
/// reduced description `substitution` + `residual` (empty when triangular).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub split_factors: Vec<Poly>,
    pub substitution: Substitution,
    pub residual: Vec<Poly>,
}

impl Component {
    pub fn is_triangular(&self) -> bool {
        self.residual.is_empty()
    }

    /// All defining equations: `v − value` for each binding, then the residual.
    pub fn equations(&self) -> Vec<Poly> {
        let mut eqs = self.substitution.equations();
        eqs.extend(self.residual.iter().cloned());
        eqs
    }

    /// Whether every equation of `self` vanishes on `other`. For a triangular
    /// `other` this is exact; otherwise it is a sufficient test via division.
    pub fn contains(&self, other: &Component) -> bool {
        self.equations().iter().all(|f| {
            let g = other.substitution.apply(f);
            if other.residual.is_empty() {
                g.is_zero()
            } else {
                g.reduce_by(&other.residual).is_zero()
            }
        })
    }

    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.equations()
            .iter()
            .all(|f| f.eval(point).map(|v| v.is_zero()).unwrap_or(false))
    }

    /// A point of a triangular component from values of its free variables.
    pub fn point_from_free(&self, free_values: &[Rational]) -> Option<Vec<Rational>> {
        if !self.is_triangular() {
            return None;
        }
        let ctx = self.substitution.context();
        let free = self.substitution.free_vars();
        if free.len() != free_values.len() {
            return None;
        }
        let mut point = vec![Rational::zero(); ctx.len()];
        for (&v, x) in free.iter().zip(free_values) {
            point[v] = x.clone();
        }
        for (v, p) in self.substitution.iter() {
            point[v] = p.eval(&point).expect("point length");
        }
        Some(point)
    }
}

#[derive(Debug, Clone)]
pub struct BranchOutcome {
    pub components: Vec<Component>,
    /// Leaves where no generator split and the residual is not triangular.
    pub inconclusive: Vec<usize>,
    pub states_explored: usize,
}

/// Ways to write `g` as a union of simpler zero sets.
fn splits_of(g: &Poly, pool: &[Poly]) -> Option<Vec<Poly>> {
    let ctx = g.context();
    let content = g.monomial_content();
    if !content.is_one() {
        let mut parts: Vec<Poly> = content
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, _)| ctx.var_at(v))
            .collect();
        let m = Poly::from_term(ctx, content, Rational::one());
        let rest = g.exact_divide(&m).expect("content divides");
        if !rest.is_constant() {
            parts.push(rest.monic());
        }
        return Some(parts);
    }
    for v in g.variables() {
        if g.degree_in(v) != 1 {
            continue;
        }
        let co = g.coefficients_in(v);
        let (b, a) = (&co[0], &co[1]);
        if a.is_constant() {
            continue;
        }
        if let Ok(c) = b.exact_divide(a) {
            return Some(vec![a.monic(), (&ctx.var_at(v) + &c).monic()]);
        }
    }
    let gm = g.monic();
    for f in pool {
        if f.total_degree() >= g.total_degree() || *f == gm {
            continue;
        }
        if let Ok(q) = g.exact_divide(f) {
            if !q.is_constant() {
                return Some(vec![f.clone(), q.monic()]);
            }
        }
    }
    None
}

/// Split the invariance locus into branches by exact factorizations of its
/// generators, recursing until every branch is triangular or unsplittable.
/// Duplicate branches and branches contained in another are dropped.
pub fn branch_components(sys: &InvarianceSystem) -> BranchOutcome {
    branch_system(&sys.system, 200_000)
}

/// Branching on an arbitrary system, with a cap on explored states.
pub fn branch_system(system: &PolySystem, max_states: usize) -> BranchOutcome {
    let ctx = system.context().clone();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut pool: Vec<Poly> = Vec::new();
    let mut leaves: Vec<(Component, bool)> = Vec::new();
    let mut stack: Vec<(Vec<Poly>, Vec<Poly>)> = vec![(system.generators().to_vec(), Vec::new())];
    let mut explored = 0;
    while let Some((eqs, factors)) = stack.pop() {
        if explored >= max_states {
            break;
        }
        let (red, subs) = eliminate_linear(&PolySystem::new(&ctx, eqs).expect("same context"));
        if red.is_inconsistent() {
            continue;
        }
        let key = format!("{:?}|{:?}", subs.to_string_map(), red.to_strings());
        if !seen.insert(key) {
            continue;
        }
        explored += 1;
        let residual = red.generators().to_vec();
        let split = residual.iter().find_map(|g| splits_of(g, &pool));
        match split {
            None => {
                let triangular = residual.is_empty();
                leaves.push((
                    Component {
                        split_factors: factors,
                        substitution: subs,
                        residual,
                    },
                    triangular,
                ));
            }
            Some(parts) => {
                for p in &parts {
                    if !p.is_constant() && !pool.contains(p) {
                        pool.push(p.clone());
                    }
                }
                let mut base = subs.equations();
                base.extend(residual);
                // Reverse so the first part is explored first.
                for p in parts.into_iter().rev() {
                    let mut eqs = base.clone();
                    eqs.push(p.clone());
                    let mut f = factors.clone();
                    f.push(p);
                    stack.push((eqs, f));
                }
            }
        }
    }
    let n = leaves.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !keep[j] || !keep[i] {
                continue;
            }
            // Drop i when contained in j; ties go to the earlier leaf.
            if leaves[j].0.contains(&leaves[i].0) && (!leaves[i].0.contains(&leaves[j].0) || j < i) {
                keep[i] = false;
            }
        }
    }
    let mut components = Vec::new();
    let mut inconclusive = Vec::new();
    for ((c, tri), k) in leaves.into_iter().zip(keep) {
        if k {
            if !tri {
                inconclusive.push(components.len());
            }
            components.push(c);
        }
    }
    BranchOutcome {
        components,
        inconclusive,
        states_explored: explored,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentCertificate {
    pub equations: Vec<Poly>,
    pub split_factors: Vec<Poly>,
    pub substitution: BTreeMap<String, String>,
    pub residual: Vec<Poly>,
    pub free_vars: Vec<String>,
    pub triangular: bool,
    pub jacobian_rank: usize,
    pub generator_count: usize,
    pub ambient_dim: usize,
    pub smooth: bool,
    pub dimension: usize,
    /// Free-variable count, for triangular components.
    pub free_var_dimension: Option<usize>,
}

/// Jacobian certificate at the chart base point.
///
/// For a triangular component the equations `v − q(free)` have independent
/// differentials, so the rank equals the generator count and the component is
/// a graph, hence smooth of dimension `#free`. In general the verdict is
/// smooth when the generators have independent differentials at the base
/// point, in which case the codimension equals their count.
pub fn certify_component(c: &Component, frame: &ChartFrame) -> ComponentCertificate {
    let ctx = frame.context();
    let eqs = c.equations();
    let sys = PolySystem::new(ctx, eqs.clone()).expect("same context");
    let (rank, _) = jacobian_rank_at(&sys, &frame.base_point()).expect("point length");
    let n = ctx.len();
    let generator_count = sys.len();
    let free: Vec<String> = c
        .substitution
        .free_vars()
        .into_iter()
        .map(|v| ctx.name(v).to_string())
        .collect();
    let triangular = c.is_triangular();
    let codim = if triangular { c.substitution.len() } else { generator_count };
    ComponentCertificate {
        equations: eqs,
        split_factors: c.split_factors.clone(),
        substitution: c.substitution.to_string_map(),
        residual: c.residual.clone(),
        free_var_dimension: triangular.then_some(free.len()),
        free_vars: free,
        triangular,
        jacobian_rank: rank,
        generator_count,
        ambient_dim: n,
        smooth: rank == generator_count && rank == codim,
        dimension: n - rank,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CoverVerdict {
    Covered,
    NotCovered {
        reason: String,
        #[serde(serialize_with = "crate::ratpoly::rat_serde::seq")]
        witness: Vec<Rational>,
    },
    Inconclusive {
        reason: String,
    },
}

/// Component equations pushed through the locus' own linear eliminations,
/// with zeros and polynomial multiples dropped.
fn relative_equations(c: &Component, subs: &Substitution) -> Vec<Poly> {
    let mut eqs: Vec<Poly> = c
        .equations()
        .iter()
        .map(|f| subs.apply(f).monic())
        .filter(|f| !f.is_zero())
        .collect();
    eqs.sort();
    eqs.dedup();
    let mut out: Vec<Poly> = Vec::new();
    for f in &eqs {
        if !eqs.iter().any(|g| g != f && !g.is_constant() && f.exact_divide(g).is_ok() && g.total_degree() <= f.total_degree()) {
            out.push(f.clone());
        }
    }
    out
}

/// Check that the locus is exactly the union of `components`: each component
/// lies in the locus, and every product of one equation per component lies in
/// the locus' ideal (tested by division, so a failure is only inconclusive
/// unless a sampled point of the locus escapes every component).
pub fn verify_union_cover(
    sys: &InvarianceSystem,
    components: &[Component],
) -> Result<CoverVerdict, GrassError> {
    verify_union_cover_system(&sys.system, components)
}

pub fn verify_union_cover_system(
    system: &PolySystem,
    components: &[Component],
) -> Result<CoverVerdict, GrassError> {
    if components.is_empty() {
        return Err(GrassError::NoComponents);
    }
    for (k, c) in components.iter().enumerate() {
        let inside = system.generators().iter().all(|g| {
            let h = c.substitution.apply(g);
            if c.residual.is_empty() {
                h.is_zero()
            } else {
                h.reduce_by(&c.residual).is_zero()
            }
        });
        if !inside {
            if c.is_triangular() {
                let free = vec![Rational::one(); c.substitution.free_vars().len()];
                let witness = c.point_from_free(&free).expect("triangular");
                return Ok(CoverVerdict::NotCovered {
                    reason: format!("component {k} is not contained in the locus"),
                    witness,
                });
            }
            return Ok(CoverVerdict::Inconclusive {
                reason: format!("containment of component {k} not decided by division"),
            });
        }
    }
    let (red, subs) = eliminate_linear(system);
    let lists: Vec<Vec<Poly>> = components.iter().map(|c| relative_equations(c, &subs)).collect();
    if lists.iter().any(Vec::is_empty) {
        return Ok(CoverVerdict::Covered);
    }
    let divisors: Vec<Poly> = red.generators().iter().map(Poly::monic).collect();
    let mut all_reduce = true;
    let mut idx = vec![0usize; lists.len()];
    'outer: loop {
        let ctx = system.context();
        let mut prod = Poly::one(ctx);
        for (l, &i) in lists.iter().zip(&idx) {
            prod = &prod * &l[i];
        }
        if !prod.reduce_by(&divisors).is_zero() {
            all_reduce = false;
            break 'outer;
        }
        for k in 0..idx.len() {
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    if all_reduce {
        return Ok(CoverVerdict::Covered);
    }
    // Look for a point of the locus outside every given component.
    let probe = branch_system(system, 50_000);
    for leaf in probe.components.iter().filter(|c| c.is_triangular()) {
        let nfree = leaf.substitution.free_vars().len();
        for s in 0..4 {
            let vals: Vec<Rational> = (0..nfree).map(|i| sample_value(s, i)).collect();
            let point = leaf.point_from_free(&vals).expect("triangular");
            if !system.vanishes_at(&point).expect("point length") {
                continue;
            }
            if components.iter().all(|c| !c.vanishes_at(&point)) {
                return Ok(CoverVerdict::NotCovered {
                    reason: "a point of the locus lies on no listed component".into(),
                    witness: point,
                });
            }
        }
    }
    Ok(CoverVerdict::Inconclusive {
        reason: "a product of component equations did not reduce to zero".into(),
    })
}

/// Deterministic nonzero small rationals for sampling.
fn sample_value(sample: usize, i: usize) -> Rational {
    let raw = ((sample * 31 + i * 17 + 7) % 23) as i64 - 11;
    let num = if raw == 0 { 5 } else { raw };
    Rational::new(num.into(), (((sample + 2 * i) % 3) as i64 + 1).into())
}

/// Chart coordinates of the quotient `R_d² → R_d, (p,q) ↦ pe + qh`, when the
/// kernel lies in the chart.
pub fn pair_chart_point(
    frame: &ChartFrame,
    e: &ArtinElement,
    h: &ArtinElement,
) -> Option<Vec<Rational>> {
    let (kernel, _) = kernel_of_pair(e, h, frame.algebra()).ok()?;
    frame.coordinates_of(kernel.basis())
}

/// Deterministic chart points of the locally free family: kernels of
/// `(e, h)` with `e, h` both units and generic nilpotent parts.
pub fn pair_family_samples(frame: &ChartFrame, count: usize) -> Vec<Vec<Rational>> {
    let alg = frame.algebra();
    let mut out = Vec::new();
    let mut s = 0;
    while out.len() < count && s < 50 * (count + 1) {
        let ec: Vec<Rational> = (0..alg.dim()).map(|i| sample_value(s, i)).collect();
        let hc: Vec<Rational> = (0..alg.dim()).map(|i| sample_value(s + 101, i + 3)).collect();
        s += 1;
        let (Ok(e), Ok(h)) = (alg.element(ec), alg.element(hc)) else {
            continue;
        };
        if let Some(p) = pair_chart_point(frame, &e, &h) {
            out.push(p);
        }
    }
    out
}

/// Index of the branch containing every sampled point of the locally free
/// family, if exactly one does.
pub fn locate_pair_family_branch(components: &[Component], frame: &ChartFrame) -> Option<usize> {
    let samples = pair_family_samples(frame, 6);
    let hits: Vec<usize> = components
        .iter()
        .enumerate()
        .filter(|(_, c)| samples.iter().all(|p| c.vanishes_at(p)))
        .map(|(i, _)| i)
        .collect();
    (hits.len() == 1).then(|| hits[0])
}

/// Full chart analysis at the base Γ point for one `d`.
#[derive(Debug, Clone, Serialize)]
pub struct ChartAnalysis {
    pub d: usize,
    pub base_point: String,
    pub chart_vars: Vec<String>,
    pub raw_generator_count: usize,
    pub reduced_system: Vec<Poly>,
    pub linear_substitution: BTreeMap<String, String>,
    pub components: Vec<LabelledCertificate>,
    pub pair_family_branch: Option<usize>,
    pub inconclusive_branches: Vec<usize>,
    pub cover: CoverVerdict,
    pub states_explored: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelledCertificate {
    pub label: String,
    #[serde(flatten)]
    pub certificate: ComponentCertificate,
}

pub const PAIR_FAMILY_LABEL: &str = "locally free family branch";
pub const OTHER_BRANCH_LABEL: &str = "invariance-locus component";

pub fn analyze_chart(d: usize) -> ChartAnalysis {
    let inv = base_invariance_system(d);
    let (red, subs) = inv.reduced();
    let outcome = branch_components(&inv);
    let mf = locate_pair_family_branch(&outcome.components, &inv.frame);
    let components = outcome
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| LabelledCertificate {
            label: if Some(i) == mf { PAIR_FAMILY_LABEL } else { OTHER_BRANCH_LABEL }.to_string(),
            certificate: certify_component(c, &inv.frame),
        })
        .collect();
    let cover = verify_union_cover(&inv, &outcome.components).expect("at least one component");
    ChartAnalysis {
        d,
        base_point: format!("Γ((0:…:0:1),(0:1)) for d={d}"),
        chart_vars: inv.frame.context().names().to_vec(),
        raw_generator_count: inv.system.len(),
        reduced_system: red.generators().to_vec(),
        linear_substitution: subs.to_string_map(),
        components,
        pair_family_branch: mf,
        inconclusive_branches: outcome.inconclusive,
        cover,
        states_explored: outcome.states_explored,
    }
}
