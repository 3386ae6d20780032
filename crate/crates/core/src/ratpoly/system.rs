use std::collections::BTreeMap;

use num_traits::Zero;

use super::{matrix_reduce, Poly, PolyError, RatMatrix, Rational, VarContext};

/// A finite list of polynomial equations `g = 0` over one context.
/// Generators are kept sorted with zeros and exact duplicates removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    ctx: VarContext,
    generators: Vec<Poly>,
}

impl PolySystem {
    pub fn new(ctx: &VarContext, generators: Vec<Poly>) -> Result<Self, PolyError> {
        if generators.iter().any(|g| g.context() != ctx) {
            return Err(PolyError::ContextMismatch);
        }
        let mut generators: Vec<Poly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        generators.sort();
        generators.dedup();
        Ok(Self {
            ctx: ctx.clone(),
            generators,
        })
    }

    pub fn empty(ctx: &VarContext) -> Self {
        Self {
            ctx: ctx.clone(),
            generators: Vec::new(),
        }
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when some generator is a nonzero constant.
    pub fn is_inconsistent(&self) -> bool {
        self.generators.iter().any(Poly::is_constant)
    }

    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool, PolyError> {
        for g in &self.generators {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn substitute(&self, subs: &Substitution) -> PolySystem {
        let gens = self.generators.iter().map(|g| subs.apply(g)).collect();
        PolySystem::new(&self.ctx, gens).expect("same context")
    }

    pub fn with(&self, extra: Vec<Poly>) -> Result<PolySystem, PolyError> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        PolySystem::new(&self.ctx, gens)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }
}

/// Triangular assignment `variable → polynomial`. Bound variables never occur
/// in any bound value: inserting a new binding rewrites the existing ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    ctx: VarContext,
    map: BTreeMap<usize, Poly>,
}

impl Substitution {
    pub fn new(ctx: &VarContext) -> Self {
        Self {
            ctx: ctx.clone(),
            map: BTreeMap::new(),
        }
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.map.contains_key(&var)
    }

    pub fn get(&self, name: &str) -> Option<&Poly> {
        self.ctx.index_of(name).and_then(|i| self.map.get(&i))
    }

    pub fn get_index(&self, var: usize) -> Option<&Poly> {
        self.map.get(&var)
    }

    /// Bindings in context order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.map.iter().map(|(&v, p)| (v, p))
    }

    pub fn as_index_map(&self) -> &BTreeMap<usize, Poly> {
        &self.map
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        p.substitute_indexed(&self.map)
    }

    /// Bind `var` to `value` (after rewriting `value` by the current map).
    /// Panics when `var` is already bound or occurs in the rewritten value.
    pub fn insert(&mut self, var: usize, value: Poly) {
        assert!(!self.map.contains_key(&var), "variable bound twice");
        let value = self.apply(&value);
        assert!(!value.contains_var(var), "binding is not triangular");
        let one: BTreeMap<usize, Poly> = [(var, value.clone())].into();
        for v in self.map.values_mut() {
            *v = v.substitute_indexed(&one);
        }
        self.map.insert(var, value);
    }

    /// Variables left unbound, in context order.
    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|v| !self.map.contains_key(v)).collect()
    }

    /// The equations `v − value` describing this substitution.
    pub fn equations(&self) -> Vec<Poly> {
        self.map
            .iter()
            .map(|(&v, p)| &self.ctx.var_at(v) - p)
            .collect()
    }

    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.map
            .iter()
            .map(|(&v, p)| (self.ctx.name(v).to_string(), p.to_string()))
            .collect()
    }
}

/// Jacobian `∂gᵢ/∂xⱼ` evaluated at `point`, and its rank.
pub fn jacobian_rank_at(
    sys: &PolySystem,
    point: &[Rational],
) -> Result<(usize, RatMatrix), PolyError> {
    let n = sys.ctx.len();
    if point.len() != n {
        return Err(PolyError::PointLength {
            expected: n,
            got: point.len(),
        });
    }
    let mut jac = RatMatrix::zeros(sys.len(), n);
    for (i, g) in sys.generators.iter().enumerate() {
        for v in g.variables() {
            jac.set(i, v, g.derivative(v).eval(point)?);
        }
    }
    Ok((matrix_reduce(&jac).rank, jac))
}

/// A pivot the eliminator can solve for: `var → value`.
fn solvable(g: &Poly) -> Option<(usize, Poly)> {
    let ctx = g.context();
    if g.num_terms() == 1 {
        // c·v^k = 0 forces v = 0.
        let (m, _) = g.leading_term()?;
        if let Some(v) = m.single_variable() {
            return Some((v, Poly::zero(ctx)));
        }
    }
    for v in g.variables().into_iter().rev() {
        if g.degree_in(v) != 1 {
            continue;
        }
        let co = g.coefficients_in(v);
        if let Some(c) = co[1].constant_value() {
            if !c.is_zero() {
                return Some((v, co[0].scale(&(-c.recip()))));
            }
        }
    }
    None
}

/// Remove generators that are polynomial multiples of another generator.
fn prune_multiples(gens: Vec<Poly>) -> (Vec<Poly>, bool) {
    let mut keep = vec![true; gens.len()];
    for j in 0..gens.len() {
        for i in 0..gens.len() {
            if i == j || !keep[i] || gens[i].is_constant() {
                continue;
            }
            if gens[j].total_degree() < gens[i].total_degree() {
                continue;
            }
            if gens[j].exact_divide(&gens[i]).is_ok() {
                keep[j] = false;
                break;
            }
        }
    }
    let pruned = keep.iter().any(|k| !k);
    let out = gens
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    (out, pruned)
}

/// Solve away variables until no generator admits a solvable pivot.
///
/// A generator `c·v + q` with constant `c ≠ 0` and `v ∉ q` binds `v`;
/// among several candidates the latest variable in context order is chosen.
/// A generator `c·v^k` binds `v → 0`. Generators that become polynomial
/// multiples of another are dropped. None of these steps changes the zero set.
/// A system on which no step applies is returned unchanged.
pub fn eliminate_linear(sys: &PolySystem) -> (PolySystem, Substitution) {
    let ctx = sys.context();
    let mut subs = Substitution::new(ctx);
    let mut gens: Vec<Poly> = sys.generators().to_vec();
    let mut changed = false;
    loop {
        if gens.iter().any(|g| g.is_constant()) {
            break;
        }
        let Some((v, val)) = gens.iter().find_map(solvable) else {
            let (pruned, did) = prune_multiples(gens.clone());
            if did {
                gens = pruned;
                changed = true;
                continue;
            }
            break;
        };
        changed = true;
        subs.insert(v, val);
        let one: BTreeMap<usize, Poly> = [(v, subs.get_index(v).unwrap().clone())].into();
        let mut next: Vec<Poly> = gens
            .iter()
            .map(|g| g.substitute_indexed(&one).monic())
            .filter(|g| !g.is_zero())
            .collect();
        next.sort();
        next.dedup();
        gens = next;
    }
    if !changed {
        return (sys.clone(), subs);
    }
    (PolySystem::new(ctx, gens).expect("same context"), subs)
}
