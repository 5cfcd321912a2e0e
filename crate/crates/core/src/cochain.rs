//! Normalized cochains of a finite group acting on a finite abelian group,
//! cohomology in degrees one and two, induced actions, and the connecting
//! maps between the cohomology groups of a group, a normal subgroup and the
//! quotient.
//!
//! Two engines compute cohomology. The linear engine rescales the cocycle
//! and coboundary conditions to the coefficient exponent and runs the Z/d
//! elimination from `zlin`; the enumeration engine lists every normalized
//! cochain and filters. The enumeration engine is the default below a size
//! threshold and doubles as the oracle for the linear one.

use crate::abelian::AbelianStructure;
use crate::error::{Error, Result};
use crate::group::{Group, Homomorphism, Subgroup};
use crate::par;
use crate::zlin::{self, Mat, SubgroupForm};
use crate::Bounds;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A finite abelian group with a left action of a finite acting group.
pub struct CoefficientModule {
    actor: Arc<Group>,
    coeffs: Arc<Group>,
    action: Vec<Vec<usize>>,
    structure: AbelianStructure,
}

impl fmt::Debug for CoefficientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CoefficientModule({} acting on {})",
            self.actor.name(),
            self.coeffs.name()
        )
    }
}

impl CoefficientModule {
    /// Validates that `action` assigns to every actor element an
    /// automorphism of the abelian group `coeffs`, homomorphically.
    pub fn new(
        actor: Arc<Group>,
        coeffs: Arc<Group>,
        action: Vec<Vec<usize>>,
    ) -> Result<Arc<CoefficientModule>> {
        let structure = AbelianStructure::new(coeffs.clone())?;
        if action.len() != actor.order() {
            return Err(Error::ElementOutOfRange(action.len(), actor.order()));
        }
        for (q, perm) in action.iter().enumerate() {
            if perm.len() != coeffs.order() || perm[0] != 0 {
                return Err(Error::NotWellDefined(q, 0));
            }
            let mut seen = vec![false; coeffs.order()];
            for &v in perm {
                if v >= coeffs.order() || seen[v] {
                    return Err(Error::NotWellDefined(q, v));
                }
                seen[v] = true;
            }
            for a in coeffs.elements() {
                for b in coeffs.elements() {
                    if perm[coeffs.mul(a, b)] != coeffs.mul(perm[a], perm[b]) {
                        return Err(Error::NotWellDefined(q, a));
                    }
                }
            }
        }
        if action[0] != (0..coeffs.order()).collect::<Vec<_>>() {
            return Err(Error::NotWellDefined(0, 0));
        }
        for q1 in actor.elements() {
            for q2 in actor.elements() {
                let composed: Vec<usize> = (0..coeffs.order())
                    .map(|x| action[q1][action[q2][x]])
                    .collect();
                if composed != action[actor.mul(q1, q2)] {
                    return Err(Error::NotWellDefined(q1, q2));
                }
            }
        }
        Ok(Arc::new(CoefficientModule {
            actor,
            coeffs,
            action,
            structure,
        }))
    }

    pub fn trivial(actor: Arc<Group>, coeffs: Arc<Group>) -> Result<Arc<CoefficientModule>> {
        let id: Vec<usize> = (0..coeffs.order()).collect();
        let action = vec![id; actor.order()];
        CoefficientModule::new(actor, coeffs, action)
    }

    pub fn actor(&self) -> &Arc<Group> {
        &self.actor
    }

    pub fn coeffs(&self) -> &Arc<Group> {
        &self.coeffs
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    #[inline]
    pub fn act(&self, q: usize, x: usize) -> usize {
        self.action[q][x]
    }

    /// Elements of the coefficient group fixed by every listed actor.
    pub fn fixed_by(&self, actors: &[usize]) -> Vec<usize> {
        self.coeffs
            .elements()
            .filter(|&x| actors.iter().all(|&q| self.action[q][x] == x))
            .collect()
    }

    pub fn compatible(&self, other: &CoefficientModule) -> bool {
        self.actor == other.actor && self.coeffs == other.coeffs && self.action == other.action
    }
}

/// A normalized cochain of degree 0, 1 or 2 with values in the coefficient
/// group of its module.
#[derive(Clone)]
pub struct Cochain {
    module: Arc<CoefficientModule>,
    degree: u8,
    values: Vec<usize>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(deg {}, {:?})", self.degree, self.values)
    }
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.values == other.values
    }
}
impl Eq for Cochain {}

fn expected_len(n: usize, degree: u8) -> usize {
    match degree {
        0 => 1,
        1 => n,
        2 => n * n,
        _ => 0,
    }
}

impl Cochain {
    pub fn zero(module: Arc<CoefficientModule>, degree: u8) -> Cochain {
        let n = module.actor().order();
        Cochain {
            module,
            degree,
            values: vec![0; expected_len(n, degree)],
        }
    }

    pub fn from_values(
        module: Arc<CoefficientModule>,
        degree: u8,
        values: Vec<usize>,
    ) -> Result<Cochain> {
        let n = module.actor().order();
        if degree > 2 || values.len() != expected_len(n, degree) {
            return Err(Error::CochainShape);
        }
        let c = Cochain {
            module,
            degree,
            values,
        };
        if !c.is_normalized() {
            return Err(Error::CochainShape);
        }
        for &v in &c.values {
            if v >= c.module.coeffs().order() {
                return Err(Error::CochainShape);
            }
        }
        Ok(c)
    }

    pub fn module(&self) -> &Arc<CoefficientModule> {
        &self.module
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Degree-0 value.
    pub fn scalar(&self) -> usize {
        self.values[0]
    }

    #[inline]
    pub fn at1(&self, q: usize) -> usize {
        self.values[q]
    }

    #[inline]
    pub fn at2(&self, a: usize, b: usize) -> usize {
        self.values[a * self.module.actor().order() + b]
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.module.actor().order();
        match self.degree {
            0 => true,
            1 => self.values[0] == 0,
            2 => (0..n).all(|a| self.at2(a, 0) == 0 && self.at2(0, a) == 0),
            _ => false,
        }
    }

    /// Pointwise product in the coefficient group.
    pub fn mul(&self, other: &Cochain) -> Cochain {
        debug_assert_eq!(self.degree, other.degree);
        let coeffs = self.module.coeffs();
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| coeffs.mul(a, b))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Cochain {
        let coeffs = self.module.coeffs();
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            values: self.values.iter().map(|&a| coeffs.inv(a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The normalized cocycle condition in degrees 1 and 2.
    pub fn is_cocycle(&self) -> bool {
        let m = &self.module;
        let actor = m.actor();
        let coeffs = m.coeffs();
        match self.degree {
            1 => actor.elements().all(|q1| {
                actor.elements().all(|q2| {
                    self.at1(actor.mul(q1, q2))
                        == coeffs.mul(self.at1(q1), m.act(q1, self.at1(q2)))
                })
            }),
            2 => actor.elements().all(|q1| {
                actor.elements().all(|q2| {
                    actor.elements().all(|q3| {
                        let lhs = coeffs.mul(self.at2(q1, q2), self.at2(actor.mul(q1, q2), q3));
                        let rhs = coeffs.mul(
                            m.act(q1, self.at2(q2, q3)),
                            self.at2(q1, actor.mul(q2, q3)),
                        );
                        lhs == rhs
                    })
                })
            }),
            _ => false,
        }
    }

    /// The coboundary of a degree 0 or degree 1 cochain.
    pub fn coboundary(&self) -> Result<Cochain> {
        let m = &self.module;
        let actor = m.actor();
        let coeffs = m.coeffs();
        match self.degree {
            0 => {
                let z0 = self.scalar();
                let values = actor
                    .elements()
                    .map(|q| coeffs.mul(coeffs.inv(z0), m.act(q, z0)))
                    .collect();
                Ok(Cochain {
                    module: m.clone(),
                    degree: 1,
                    values,
                })
            }
            1 => {
                let n = actor.order();
                let mut values = vec![0; n * n];
                for q1 in actor.elements() {
                    for q2 in actor.elements() {
                        let v = coeffs.mul(
                            coeffs.mul(self.at1(q1), m.act(q1, self.at1(q2))),
                            coeffs.inv(self.at1(actor.mul(q1, q2))),
                        );
                        values[q1 * n + q2] = v;
                    }
                }
                Ok(Cochain {
                    module: m.clone(),
                    degree: 2,
                    values,
                })
            }
            d => Err(Error::DegreeTooHigh(d)),
        }
    }
}

// position layout for the scaled vector encoding: degree 1 uses the
// nonidentity actor elements, degree 2 the pairs of nonidentity elements,
// degree 0 a single slot
fn position_count(n: usize, degree: u8) -> usize {
    match degree {
        0 => 1,
        1 => n - 1,
        2 => (n - 1) * (n - 1),
        _ => 0,
    }
}

fn cochain_space_size(module: &CoefficientModule, degree: u8) -> u128 {
    let m = position_count(module.actor().order(), degree) as u32;
    (module.coeffs().order() as u128).saturating_pow(m)
}

struct Encoding {
    k: usize,
    d: i64,
    positions: usize,
}

impl Encoding {
    fn new(module: &CoefficientModule, degree: u8) -> Encoding {
        Encoding {
            k: module.structure().rank(),
            d: module.structure().exponent(),
            positions: position_count(module.actor().order(), degree),
        }
    }

    fn dim(&self) -> usize {
        self.positions * self.k
    }

    fn slot(&self, pos: usize, coord: usize) -> usize {
        pos * self.k + coord
    }
}

// degree-1 position of actor element q (q != 0)
fn pos1(q: usize) -> usize {
    q - 1
}

// degree-2 position of the pair (a, b), both nonzero
fn pos2(n: usize, a: usize, b: usize) -> usize {
    (a - 1) * (n - 1) + (b - 1)
}

fn encode(module: &CoefficientModule, c: &Cochain) -> Vec<i64> {
    let enc = Encoding::new(module, c.degree);
    let st = module.structure();
    let n = module.actor().order();
    let mut v = vec![0i64; enc.dim()];
    let mut put = |pos: usize, elem: usize| {
        let sc = st.scaled_coords(elem);
        for j in 0..enc.k {
            v[enc.slot(pos, j)] = sc[j];
        }
    };
    match c.degree {
        0 => put(0, c.scalar()),
        1 => {
            for q in 1..n {
                put(pos1(q), c.at1(q));
            }
        }
        2 => {
            for a in 1..n {
                for b in 1..n {
                    put(pos2(n, a, b), c.at2(a, b));
                }
            }
        }
        _ => {}
    }
    v
}

fn decode(module: &Arc<CoefficientModule>, degree: u8, v: &[i64]) -> Option<Cochain> {
    let enc = Encoding::new(module, degree);
    let st = module.structure();
    let n = module.actor().order();
    let elem_at = |pos: usize| -> Option<usize> {
        let sc: Vec<i64> = (0..enc.k).map(|j| v[enc.slot(pos, j)]).collect();
        st.element_from_scaled(&sc)
    };
    let mut values = vec![0usize; expected_len(n, degree)];
    match degree {
        0 => values[0] = elem_at(0)?,
        1 => {
            for q in 1..n {
                values[q] = elem_at(pos1(q))?;
            }
        }
        2 => {
            for a in 1..n {
                for b in 1..n {
                    values[a * n + b] = elem_at(pos2(n, a, b))?;
                }
            }
        }
        _ => return None,
    }
    Some(Cochain {
        module: module.clone(),
        degree,
        values,
    })
}

/// Which engine computed a cohomology group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// enumeration below the threshold, linear algebra above
    Auto,
    /// brute-force enumeration of all normalized cochains
    Enumerate,
    /// rescaled congruence systems over Z/exponent
    Linear,
}

enum ClassLookup {
    Enumerated {
        class_of: HashMap<Vec<usize>, usize>,
    },
    Linear {
        qs: zlin::QuotientStructure,
        by_coords: HashMap<Vec<i64>, usize>,
    },
}

/// H^n for n = 1 or 2: canonical class representatives, the abelian group
/// structure on classes, and a decomposition routine for arbitrary cocycles.
pub struct CohomologyGroup {
    module: Arc<CoefficientModule>,
    degree: u8,
    reps: Vec<Cochain>,
    table: Arc<Group>,
    invariant_factors: Vec<i64>,
    engine_used: Engine,
    lookup: ClassLookup,
    boundary_matrix: Mat,
    prev_dim: usize,
    z_form: SubgroupForm,
    b_form: SubgroupForm,
}

impl fmt::Debug for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CohomologyGroup(H^{} of {:?}, {} classes)",
            self.degree,
            self.module,
            self.reps.len()
        )
    }
}

impl CohomologyGroup {
    pub fn module(&self) -> &Arc<CoefficientModule> {
        &self.module
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, class: usize) -> &Cochain {
        &self.reps[class]
    }

    pub fn reps(&self) -> &[Cochain] {
        &self.reps
    }

    /// The abelian group of classes; class 0 is the zero class.
    pub fn table(&self) -> &Arc<Group> {
        &self.table
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn engine_used(&self) -> Engine {
        self.engine_used
    }

    /// Class index of a cocycle.
    pub fn class_of(&self, c: &Cochain) -> Result<usize> {
        if !c.module().compatible(&self.module) || c.degree != self.degree {
            return Err(Error::CoefficientMismatch);
        }
        if !c.is_cocycle() {
            return Err(Error::NotACocycle);
        }
        match &self.lookup {
            ClassLookup::Enumerated { class_of } => {
                class_of.get(&c.values).copied().ok_or(Error::NotACocycle)
            }
            ClassLookup::Linear { qs, by_coords } => {
                let coords = qs
                    .class_coords(&encode(&self.module, c))
                    .ok_or(Error::NotACocycle)?;
                by_coords.get(&coords).copied().ok_or(Error::NotACocycle)
            }
        }
    }

    /// Expresses a cocycle as its class representative times a coboundary:
    /// returns (class, w) with input = rep(class) * coboundary(w).
    pub fn decompose(&self, c: &Cochain) -> Result<(usize, Cochain)> {
        let class = self.class_of(c)?;
        let diff = c.mul(&self.rep(class).inverse());
        let target = encode(&self.module, &diff);
        let d = self.module.structure().exponent();
        let sol = zlin::solve(&self.boundary_matrix, &target, self.prev_dim, d)
            .ok_or(Error::NotACocycle)?;
        let w = self.cochain_from_prev_coeffs(&sol);
        debug_assert_eq!(
            w.coboundary().expect("low degree").values,
            diff.values,
            "witness must bound the difference"
        );
        Ok((class, w))
    }

    // builds the degree-(n-1) cochain whose generator coefficients are `sol`
    fn cochain_from_prev_coeffs(&self, sol: &[i64]) -> Cochain {
        let st = self.module.structure();
        let coeffs = self.module.coeffs();
        let k = st.rank();
        let n = self.module.actor().order();
        let prev_degree = self.degree - 1;
        let mut values = vec![0usize; expected_len(n, prev_degree)];
        let positions = position_count(n, prev_degree);
        for pos in 0..positions {
            let mut elem = 0usize;
            for j in 0..k {
                let c = sol[pos * k + j].rem_euclid(st.orders()[j] as i64);
                let base = basis_element(st, j);
                for _ in 0..c {
                    elem = coeffs.mul(elem, base);
                }
            }
            let slot = match prev_degree {
                0 => 0,
                1 => pos + 1,
                _ => unreachable!("witness degree is 0 or 1"),
            };
            values[slot] = elem;
        }
        Cochain {
            module: self.module.clone(),
            degree: prev_degree,
            values,
        }
    }

    /// All cocycles in canonical (value-lexicographic) order.
    pub fn cocycles(&self, bounds: &Bounds) -> Result<Vec<Cochain>> {
        let size = self.z_form.order();
        if size > bounds.size_bound {
            return Err(Error::SizeBoundExceeded {
                size,
                bound: bounds.size_bound,
            });
        }
        let mut out: Vec<Cochain> = self
            .z_form
            .enumerate()
            .into_iter()
            .map(|v| decode(&self.module, self.degree, &v).expect("kernel vectors decode"))
            .collect();
        out.sort_by(|a, b| a.values.cmp(&b.values));
        out.dedup_by(|a, b| a.values == b.values);
        Ok(out)
    }

    /// All coboundaries in canonical order.
    pub fn coboundaries(&self, bounds: &Bounds) -> Result<Vec<Cochain>> {
        let size = self.b_form.order();
        if size > bounds.size_bound {
            return Err(Error::SizeBoundExceeded {
                size,
                bound: bounds.size_bound,
            });
        }
        let mut out: Vec<Cochain> = self
            .b_form
            .enumerate()
            .into_iter()
            .map(|v| decode(&self.module, self.degree, &v).expect("coboundary vectors decode"))
            .collect();
        out.sort_by(|a, b| a.values.cmp(&b.values));
        out.dedup_by(|a, b| a.values == b.values);
        Ok(out)
    }

    pub fn cocycle_count(&self) -> u128 {
        self.z_form.order()
    }

    pub fn coboundary_count(&self) -> u128 {
        self.b_form.order()
    }
}

fn basis_element(st: &AbelianStructure, j: usize) -> usize {
    // scaled unit vector for factor j decodes to the basis element
    let k = st.rank();
    let mut sc = vec![0i64; k];
    sc[j] = st.exponent() / st.orders()[j] as i64;
    st.element_from_scaled(&sc).expect("basis element")
}

/// Computes H^degree of the module, choosing the engine by size.
pub fn cohomology(
    degree: u8,
    module: &Arc<CoefficientModule>,
    bounds: &Bounds,
) -> Result<Arc<CohomologyGroup>> {
    cohomology_with_engine(degree, module, Engine::Auto, bounds)
}

pub fn cohomology_with_engine(
    degree: u8,
    module: &Arc<CoefficientModule>,
    engine: Engine,
    bounds: &Bounds,
) -> Result<Arc<CohomologyGroup>> {
    if degree != 1 && degree != 2 {
        return Err(Error::DegreeTooHigh(degree));
    }
    let space = cochain_space_size(module, degree);
    let use_enumeration = match engine {
        Engine::Enumerate => {
            if space > bounds.size_bound {
                return Err(Error::SizeBoundExceeded {
                    size: space,
                    bound: bounds.size_bound,
                });
            }
            true
        }
        Engine::Linear => false,
        Engine::Auto => space <= bounds.enumeration_threshold,
    };
    let built = if use_enumeration {
        build_enumerated(degree, module, bounds)?
    } else {
        build_linear(degree, module, bounds)?
    };
    Ok(Arc::new(built))
}

// shared scaffolding: boundary matrix, Z and B subgroup forms
struct LinearParts {
    boundary_matrix: Mat,
    prev_dim: usize,
    z_form: SubgroupForm,
    b_form: SubgroupForm,
    z_gens: Vec<Vec<i64>>,
    b_gens: Vec<Vec<i64>>,
    dim: usize,
}

fn linear_parts(degree: u8, module: &Arc<CoefficientModule>) -> LinearParts {
    let enc = Encoding::new(module, degree);
    let st = module.structure();
    let actor = module.actor();
    let n = actor.order();
    let k = enc.k;
    let d = enc.d;
    let dim = enc.dim();

    // coboundary images of the generator cochains of the previous degree
    let prev_degree = degree - 1;
    let prev_positions = position_count(n, prev_degree);
    let prev_dim = prev_positions * k;
    let mut b_gens: Vec<Vec<i64>> = Vec::with_capacity(prev_dim);
    let mut boundary_cols: Vec<Vec<i64>> = Vec::with_capacity(prev_dim);
    for pos in 0..prev_positions {
        for j in 0..k {
            let mut values = vec![0usize; expected_len(n, prev_degree)];
            let slot = match prev_degree {
                0 => 0,
                1 => pos + 1,
                _ => unreachable!(),
            };
            values[slot] = basis_element(st, j);
            let gen = Cochain {
                module: module.clone(),
                degree: prev_degree,
                values,
            };
            let image = encode(module, &gen.coboundary().expect("low degree"));
            b_gens.push(image.clone());
            boundary_cols.push(image);
        }
    }
    let boundary_matrix: Mat = (0..dim)
        .map(|r| boundary_cols.iter().map(|c| c[r]).collect())
        .collect();

    // condition rows: coordinate moduli plus the cocycle relations
    let mut rows: Mat = Vec::new();
    if dim > 0 && d > 1 {
        for pos in 0..enc.positions {
            for j in 0..k {
                let dj = st.orders()[j] as i64;
                if dj < d {
                    let mut row = vec![0i64; dim];
                    row[enc.slot(pos, j)] = dj;
                    rows.push(row);
                }
            }
        }
        let matrices: Vec<Mat> = actor
            .elements()
            .map(|q| st.action_matrix_scaled(&module.action()[q]))
            .collect();
        match degree {
            1 => {
                // c(q1 q2) - c(q1) - q1 . c(q2) = 0
                for q1 in 1..n {
                    for q2 in 1..n {
                        let q12 = actor.mul(q1, q2);
                        for i in 0..k {
                            let mut row = vec![0i64; dim];
                            if q12 != 0 {
                                row[enc.slot(pos1(q12), i)] += 1;
                            }
                            row[enc.slot(pos1(q1), i)] -= 1;
                            for j in 0..k {
                                row[enc.slot(pos1(q2), j)] -= matrices[q1][i][j];
                            }
                            for v in row.iter_mut() {
                                *v = v.rem_euclid(d);
                            }
                            if row.iter().any(|&v| v != 0) {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
            2 => {
                // c(q1,q2) + c(q1 q2, q3) - q1 . c(q2,q3) - c(q1, q2 q3) = 0
                for q1 in 1..n {
                    for q2 in 1..n {
                        for q3 in 1..n {
                            let q12 = actor.mul(q1, q2);
                            let q23 = actor.mul(q2, q3);
                            for i in 0..k {
                                let mut row = vec![0i64; dim];
                                row[enc.slot(pos2(n, q1, q2), i)] += 1;
                                if q12 != 0 {
                                    row[enc.slot(pos2(n, q12, q3), i)] += 1;
                                }
                                for j in 0..k {
                                    row[enc.slot(pos2(n, q2, q3), j)] -= matrices[q1][i][j];
                                }
                                if q23 != 0 {
                                    row[enc.slot(pos2(n, q1, q23), i)] -= 1;
                                }
                                for v in row.iter_mut() {
                                    *v = v.rem_euclid(d);
                                }
                                if row.iter().any(|&v| v != 0) {
                                    rows.push(row);
                                }
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    let z_gens = if dim == 0 {
        Vec::new()
    } else {
        zlin::kernel_gens(&rows, dim, d.max(2))
    };
    let z_form = zlin::subgroup_form(&z_gens, dim, d.max(2));
    let b_form = zlin::subgroup_form(&b_gens, dim, d.max(2));
    LinearParts {
        boundary_matrix,
        prev_dim,
        z_form,
        b_form,
        z_gens,
        b_gens,
        dim,
    }
}

fn class_table(
    module: &Arc<CoefficientModule>,
    reps: &[Cochain],
    class_of: impl Fn(&Cochain) -> usize,
) -> Result<Arc<Group>> {
    let m = reps.len();
    let mut table = vec![vec![0usize; m]; m];
    for a in 0..m {
        for b in 0..m {
            table[a][b] = class_of(&reps[a].mul(&reps[b]));
        }
    }
    Group::from_table(
        format!("H^{}({})", reps[0].degree, module.actor().name()),
        &table,
    )
}

fn build_linear(
    degree: u8,
    module: &Arc<CoefficientModule>,
    bounds: &Bounds,
) -> Result<CohomologyGroup> {
    let parts = linear_parts(degree, module);
    let d = module.structure().exponent().max(2);
    let qs = zlin::quotient_structure(&parts.z_gens, &parts.b_gens, parts.dim, d);
    let class_count = qs.order();
    if class_count > bounds.size_bound {
        return Err(Error::SizeBoundExceeded {
            size: class_count,
            bound: bounds.size_bound,
        });
    }
    // enumerate class coordinate tuples
    let mut coord_tuples: Vec<Vec<i64>> = vec![Vec::new()];
    for &o in &qs.orders {
        let mut next = Vec::with_capacity(coord_tuples.len() * o as usize);
        for t in &coord_tuples {
            for c in 0..o {
                let mut t2 = t.clone();
                t2.push(c);
                next.push(t2);
            }
        }
        coord_tuples = next;
    }
    let mut reps: Vec<Cochain> = coord_tuples
        .iter()
        .map(|t| decode(module, degree, &qs.vector_for(t)).expect("class vectors decode"))
        .collect();

    // canonical representative: least cocycle in each class, when the
    // coboundary enumeration fits in the budget
    let b_count = parts.b_form.order();
    if b_count.saturating_mul(class_count) <= bounds.size_bound {
        let b_elems: Vec<Cochain> = parts
            .b_form
            .enumerate()
            .into_iter()
            .map(|v| decode(module, degree, &v).expect("coboundary vectors decode"))
            .collect();
        reps = par::map_vec(reps, |rep| {
            b_elems
                .iter()
                .map(|b| rep.mul(b))
                .min_by(|a, b| a.values.cmp(&b.values))
                .expect("nonempty coset")
        });
    }
    reps.sort_by(|a, b| a.values.cmp(&b.values));

    let by_coords: HashMap<Vec<i64>, usize> = reps
        .iter()
        .enumerate()
        .map(|(i, r)| {
            (
                qs.class_coords(&encode(module, r)).expect("rep is a cocycle"),
                i,
            )
        })
        .collect();
    if by_coords.len() != reps.len() {
        return Err(Error::NotWellDefined(0, 0));
    }
    let invariant_factors = zlin::invariant_factors(&qs.orders);
    let lookup_fn = |c: &Cochain| -> usize {
        let coords = qs.class_coords(&encode(module, c)).expect("cocycle");
        by_coords[&coords]
    };
    let table = class_table(module, &reps, lookup_fn)?;
    Ok(CohomologyGroup {
        module: module.clone(),
        degree,
        reps,
        table,
        invariant_factors,
        engine_used: Engine::Linear,
        lookup: ClassLookup::Linear { qs, by_coords },
        boundary_matrix: parts.boundary_matrix,
        prev_dim: parts.prev_dim,
        z_form: parts.z_form,
        b_form: parts.b_form,
    })
}

fn enumerate_cochains(module: &Arc<CoefficientModule>, degree: u8) -> Vec<Cochain> {
    let n = module.actor().order();
    let positions = position_count(n, degree);
    let c = module.coeffs().order();
    let mut out = Vec::new();
    let mut tuple = vec![0usize; positions];
    loop {
        let mut values = vec![0usize; expected_len(n, degree)];
        match degree {
            0 => values[0] = tuple[0],
            1 => {
                for q in 1..n {
                    values[q] = tuple[pos1(q)];
                }
            }
            2 => {
                for a in 1..n {
                    for b in 1..n {
                        values[a * n + b] = tuple[pos2(n, a, b)];
                    }
                }
            }
            _ => {}
        }
        out.push(Cochain {
            module: module.clone(),
            degree,
            values,
        });
        // mixed-radix increment, rightmost fastest, so output is sorted by
        // the position tuple
        let mut i = positions;
        let mut done = positions == 0;
        while i > 0 {
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < c {
                break;
            }
            tuple[i] = 0;
            if i == 0 {
                done = true;
            }
        }
        if done {
            break;
        }
    }
    out
}

/// Kinds of connecting maps in the six-term sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Inflation,
    Restriction,
    Transgression,
    Reduction,
}

/// A map between cohomology class groups, recorded classwise. The domain is
/// the list of source classes the map is defined on (a subgroup of the
/// source class group).
pub struct ConnectingMap {
    pub kind: MapKind,
    pub source: Arc<CohomologyGroup>,
    pub target: Arc<CohomologyGroup>,
    pub domain: Vec<usize>,
    pub images: Vec<usize>,
}

impl fmt::Debug for ConnectingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} map on {} classes", self.kind, self.domain.len())
    }
}

impl ConnectingMap {
    pub fn image_of(&self, source_class: usize) -> Option<usize> {
        self.domain
            .iter()
            .position(|&c| c == source_class)
            .map(|i| self.images[i])
    }

    /// Checks m(a b) = m(a) m(b) over all pairs of domain classes.
    pub fn is_homomorphism(&self) -> bool {
        let st = self.source.table();
        let tt = self.target.table();
        for (i, &a) in self.domain.iter().enumerate() {
            for (j, &b) in self.domain.iter().enumerate() {
                let ab = st.mul(a, b);
                let Some(pos) = self.domain.iter().position(|&c| c == ab) else {
                    return false;
                };
                if self.images[pos] != tt.mul(self.images[i], self.images[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Domain classes mapping to the zero class.
    pub fn kernel_classes(&self) -> Vec<usize> {
        self.domain
            .iter()
            .zip(&self.images)
            .filter_map(|(&c, &im)| (im == 0).then_some(c))
            .collect()
    }

    /// Sorted distinct image classes.
    pub fn image_classes(&self) -> Vec<usize> {
        let mut im = self.images.clone();
        im.sort_unstable();
        im.dedup();
        im
    }
}

/// Restriction of a cochain along an inclusion of the acting group.
pub fn restrict_cochain(
    c: &Cochain,
    module_sub: &Arc<CoefficientModule>,
    incl: &Homomorphism,
) -> Cochain {
    let n = module_sub.actor().order();
    let mut values = vec![0usize; expected_len(n, c.degree())];
    match c.degree() {
        1 => {
            for p in 0..n {
                values[p] = c.at1(incl.apply(p));
            }
        }
        2 => {
            for a in 0..n {
                for b in 0..n {
                    values[a * n + b] = c.at2(incl.apply(a), incl.apply(b));
                }
            }
        }
        _ => values[0] = c.scalar(),
    }
    Cochain {
        module: module_sub.clone(),
        degree: c.degree(),
        values,
    }
}

/// Inflation of a cochain along a projection of acting groups, with the
/// coefficient inclusion applied to values.
pub fn inflate_cochain(
    c: &Cochain,
    module_big: &Arc<CoefficientModule>,
    proj: &Homomorphism,
    coeff_incl: &Homomorphism,
) -> Cochain {
    let n = module_big.actor().order();
    let mut values = vec![0usize; expected_len(n, c.degree())];
    match c.degree() {
        1 => {
            for q in 0..n {
                values[q] = coeff_incl.apply(c.at1(proj.apply(q)));
            }
        }
        2 => {
            for a in 0..n {
                for b in 0..n {
                    values[a * n + b] = coeff_incl.apply(c.at2(proj.apply(a), proj.apply(b)));
                }
            }
        }
        _ => values[0] = coeff_incl.apply(c.scalar()),
    }
    Cochain {
        module: module_big.clone(),
        degree: c.degree(),
        values,
    }
}

/// The class map induced by inflation: precomposition with `proj` plus the
/// coefficient inclusion.
pub fn inflation(
    source: &Arc<CohomologyGroup>,
    target: &Arc<CohomologyGroup>,
    proj: &Homomorphism,
    coeff_incl: &Homomorphism,
) -> Result<ConnectingMap> {
    if proj.source() != target.module().actor()
        || proj.target() != source.module().actor()
        || coeff_incl.source() != source.module().coeffs()
        || coeff_incl.target() != target.module().coeffs()
        || !coeff_incl.is_injective()
    {
        return Err(Error::CoefficientMismatch);
    }
    // the inclusion must intertwine the actions
    for q in target.module().actor().elements() {
        let r = proj.apply(q);
        for x in source.module().coeffs().elements() {
            if target.module().act(q, coeff_incl.apply(x))
                != coeff_incl.apply(source.module().act(r, x))
            {
                return Err(Error::CoefficientMismatch);
            }
        }
    }
    let domain: Vec<usize> = (0..source.class_count()).collect();
    let images = par::map_range(source.class_count(), |c| {
        let inflated = inflate_cochain(source.rep(c), target.module(), proj, coeff_incl);
        target.class_of(&inflated).expect("inflated cocycle")
    });
    Ok(ConnectingMap {
        kind: MapKind::Inflation,
        source: source.clone(),
        target: target.clone(),
        domain,
        images,
    })
}

/// The class map induced by restriction along `incl`.
pub fn restriction(
    source: &Arc<CohomologyGroup>,
    target: &Arc<CohomologyGroup>,
    incl: &Homomorphism,
) -> Result<ConnectingMap> {
    if incl.source() != target.module().actor()
        || incl.target() != source.module().actor()
        || source.module().coeffs() != target.module().coeffs()
    {
        return Err(Error::CoefficientMismatch);
    }
    for p in target.module().actor().elements() {
        let q = incl.apply(p);
        for x in source.module().coeffs().elements() {
            if target.module().act(p, x) != source.module().act(q, x) {
                return Err(Error::CoefficientMismatch);
            }
        }
    }
    let domain: Vec<usize> = (0..source.class_count()).collect();
    let images = par::map_range(source.class_count(), |c| {
        let restricted = restrict_cochain(source.rep(c), target.module(), incl);
        target.class_of(&restricted).expect("restricted cocycle")
    });
    Ok(ConnectingMap {
        kind: MapKind::Restriction,
        source: source.clone(),
        target: target.clone(),
        domain,
        images,
    })
}

/// The fixed data of a normal inclusion P -> Q with quotient R acting on a
/// coefficient group: the restricted module over P, the induced module of
/// the quotient on the fixed subgroup, and the canonical section of the
/// projection (least preimage per quotient element).
pub struct ActionTower {
    incl: Homomorphism,
    proj: Homomorphism,
    module_q: Arc<CoefficientModule>,
    module_p: Arc<CoefficientModule>,
    module_r: Arc<CoefficientModule>,
    fixed_incl: Homomorphism,
    fixed_index: Vec<Option<usize>>,
    section: Vec<usize>,
}

impl ActionTower {
    pub fn new(
        incl: Homomorphism,
        proj: Homomorphism,
        module_q: Arc<CoefficientModule>,
    ) -> Result<ActionTower> {
        if incl.target() != proj.source() || incl.target() != module_q.actor() {
            return Err(Error::KernelQuotientMismatch);
        }
        if !incl.is_injective() {
            return Err(Error::NotInjective);
        }
        if !proj.is_surjective() {
            return Err(Error::NotSurjective);
        }
        if proj.kernel().members() != incl.image().members() {
            return Err(Error::ExactnessFailure("kernel of projection"));
        }
        // restricted module over P
        let p_group = incl.source().clone();
        let p_action: Vec<Vec<usize>> = p_group
            .elements()
            .map(|p| module_q.action()[incl.apply(p)].clone())
            .collect();
        let module_p = CoefficientModule::new(p_group.clone(), module_q.coeffs().clone(), p_action)?;
        // fixed subgroup of the coefficients under P
        let p_images: Vec<usize> = p_group.elements().map(|p| incl.apply(p)).collect();
        let fixed_members = module_q.fixed_by(&p_images);
        let fixed_sub = Subgroup::new(module_q.coeffs().clone(), fixed_members)?;
        let (fixed_group, fixed_incl) = fixed_sub.as_group(format!(
            "{}^{}",
            module_q.coeffs().name(),
            p_group.name()
        ));
        let mut fixed_index = vec![None; module_q.coeffs().order()];
        for (i, &m) in fixed_incl.map().iter().enumerate() {
            fixed_index[m] = Some(i);
        }
        // induced action of R on the fixed subgroup; must not depend on the
        // choice of preimage
        let r_group = proj.target().clone();
        let mut r_action: Vec<Vec<usize>> = Vec::with_capacity(r_group.order());
        for r in r_group.elements() {
            let preimages = proj.preimages(r);
            let q0 = preimages[0];
            let perm: Vec<usize> = fixed_incl
                .map()
                .iter()
                .map(|&x| {
                    fixed_index[module_q.act(q0, x)].ok_or(Error::NotWellDefined(r, x))
                })
                .collect::<Result<_>>()?;
            for &q in &preimages[1..] {
                for (i, &x) in fixed_incl.map().iter().enumerate() {
                    if fixed_index[module_q.act(q, x)] != Some(perm[i]) {
                        return Err(Error::NotWellDefined(q0, q));
                    }
                }
            }
            r_action.push(perm);
        }
        let module_r = CoefficientModule::new(r_group.clone(), fixed_group, r_action)?;
        let section: Vec<usize> = r_group
            .elements()
            .map(|r| proj.least_preimage(r).expect("surjective"))
            .collect();
        Ok(ActionTower {
            incl,
            proj,
            module_q,
            module_p,
            module_r,
            fixed_incl,
            fixed_index,
            section,
        })
    }

    pub fn incl(&self) -> &Homomorphism {
        &self.incl
    }

    pub fn proj(&self) -> &Homomorphism {
        &self.proj
    }

    pub fn module_q(&self) -> &Arc<CoefficientModule> {
        &self.module_q
    }

    pub fn module_p(&self) -> &Arc<CoefficientModule> {
        &self.module_p
    }

    /// The induced module of the quotient acting on the fixed subgroup.
    pub fn module_r(&self) -> &Arc<CoefficientModule> {
        &self.module_r
    }

    /// Inclusion of the fixed subgroup into the full coefficient group.
    pub fn fixed_incl(&self) -> &Homomorphism {
        &self.fixed_incl
    }

    /// Canonical section of the projection: least preimage per element.
    pub fn section(&self) -> &[usize] {
        &self.section
    }

    /// A different section for choice-independence tests: the second-least
    /// preimage wherever one exists.
    pub fn second_section(&self) -> Vec<usize> {
        let r_group = self.proj.target();
        r_group
            .elements()
            .map(|r| {
                let pre = self.proj.preimages(r);
                if r == 0 {
                    pre[0] // sections stay normalized
                } else {
                    pre.get(1).copied().unwrap_or(pre[0])
                }
            })
            .collect()
    }

    /// The subgroup part of q = incl(p) * section(proj(q)).
    pub fn p_part_with(&self, q: usize, section: &[usize]) -> usize {
        let qg = self.module_q.actor();
        let r = self.proj.apply(q);
        let rest = qg.mul(q, qg.inv(section[r]));
        self.incl
            .least_preimage(rest)
            .expect("element of the kernel subgroup")
    }

    pub fn p_part(&self, q: usize) -> usize {
        self.p_part_with(q, &self.section)
    }

    /// q^-1 incl(p) q pulled back to the subgroup.
    pub fn conj_in_sub(&self, q: usize, p: usize) -> usize {
        let qg = self.module_q.actor();
        let conj = qg.mul(qg.mul(qg.inv(q), self.incl.apply(p)), q);
        self.incl
            .least_preimage(conj)
            .expect("the subgroup is normal")
    }

    /// The twisted cocycle q . c: p -> act(q, c(q^-1 p q)).
    pub fn act_on_z1(&self, c: &Cochain, q: usize) -> Cochain {
        debug_assert!(c.module().compatible(&self.module_p));
        let p_group = self.module_p.actor();
        let values: Vec<usize> = p_group
            .elements()
            .map(|p| self.module_q.act(q, c.at1(self.conj_in_sub(q, p))))
            .collect();
        Cochain {
            module: self.module_p.clone(),
            degree: 1,
            values,
        }
    }

    /// The quotient acting on the class group of H^1 of the subgroup,
    /// together with the fixed classes. Fails when the action is not
    /// independent of the preimage choice.
    pub fn h1_action(
        &self,
        h1p: &Arc<CohomologyGroup>,
    ) -> Result<(Arc<CoefficientModule>, Vec<usize>)> {
        let r_group = self.proj.target().clone();
        let classes = h1p.class_count();
        let mut action: Vec<Vec<usize>> = Vec::with_capacity(r_group.order());
        for r in r_group.elements() {
            let preimages = self.proj.preimages(r);
            let perm: Vec<usize> = (0..classes)
                .map(|c| {
                    let moved = self.act_on_z1(h1p.rep(c), preimages[0]);
                    h1p.class_of(&moved)
                })
                .collect::<Result<_>>()?;
            for &q in &preimages[1..] {
                for c in 0..classes {
                    let moved = self.act_on_z1(h1p.rep(c), q);
                    if h1p.class_of(&moved)? != perm[c] {
                        return Err(Error::NotWellDefined(preimages[0], q));
                    }
                }
            }
            action.push(perm);
        }
        let module = CoefficientModule::new(r_group, h1p.table().clone(), action)?;
        let fixed: Vec<usize> = (0..classes)
            .filter(|&c| module.action().iter().all(|perm| perm[c] == c))
            .collect();
        Ok((module, fixed))
    }

    /// Element of the fixed subgroup for a coefficient value, if fixed.
    pub fn fixed_element(&self, coeff_value: usize) -> Option<usize> {
        self.fixed_index[coeff_value]
    }
}

/// Solves the invariance equation for a class fixed under the quotient
/// action: returns z with (section(r) . lam) * lam^-1 = coboundary(z(r))
/// for every r. Fails with `NoInvarianceWitness` when the class moves.
pub fn invariance_witness(
    tower: &ActionTower,
    h1p: &Arc<CohomologyGroup>,
    lam: &Cochain,
    section: &[usize],
) -> Result<Vec<usize>> {
    let r_group = tower.module_r().actor().clone();
    let mut z = vec![0usize; r_group.order()];
    for r in r_group.elements() {
        let moved = tower.act_on_z1(lam, section[r]);
        let diff = moved.mul(&lam.inverse());
        let (class, w) = h1p.decompose(&diff)?;
        if class != 0 {
            return Err(Error::NoInvarianceWitness(r));
        }
        z[r] = w.scalar();
    }
    Ok(z)
}

/// The transgressed degree-two cocycle for an explicit choice of section
/// and invariance witness z; the class does not depend on either choice.
pub fn transgression_cocycle_with(
    tower: &ActionTower,
    lam: &Cochain,
    section: &[usize],
    z: &[usize],
) -> Result<Cochain> {
    let r_group = tower.module_r().actor().clone();
    let coeffs = tower.module_q().coeffs();
    let n = r_group.order();
    let mut values = vec![0usize; n * n];
    for r1 in r_group.elements() {
        for r2 in r_group.elements() {
            let r12 = r_group.mul(r1, r2);
            let qg = tower.module_q().actor();
            let defect = qg.mul(qg.inv(section[r12]), qg.mul(section[r1], section[r2]));
            let p0 = tower
                .incl()
                .least_preimage(defect)
                .expect("section defect lies in the subgroup");
            let mut v = coeffs.mul(z[r1], tower.module_q().act(section[r1], z[r2]));
            v = coeffs.mul(v, coeffs.inv(z[r12]));
            v = coeffs.mul(
                v,
                coeffs.inv(tower.module_q().act(section[r12], lam.at1(p0))),
            );
            let fixed = tower
                .fixed_element(v)
                .ok_or(Error::NoInvarianceWitness(r1))?;
            values[r1 * n + r2] = fixed;
        }
    }
    let out = Cochain {
        module: tower.module_r().clone(),
        degree: 2,
        values,
    };
    if !out.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    Ok(out)
}

/// The degree-two cocycle over the quotient produced by transgressing an
/// invariant degree-one class of the subgroup, for a given section.
pub fn transgression_cocycle(
    tower: &ActionTower,
    h1p: &Arc<CohomologyGroup>,
    lam: &Cochain,
    section: &[usize],
) -> Result<Cochain> {
    let z = invariance_witness(tower, h1p, lam, section)?;
    transgression_cocycle_with(tower, lam, section, &z)
}

/// The transgression map on the classes of H^1 of the subgroup fixed by the
/// quotient action.
pub fn transgression(
    tower: &ActionTower,
    h1p: &Arc<CohomologyGroup>,
    fixed_classes: &[usize],
    h2r: &Arc<CohomologyGroup>,
) -> Result<ConnectingMap> {
    let images = fixed_classes
        .iter()
        .map(|&c| {
            let d = transgression_cocycle(tower, h1p, h1p.rep(c), tower.section())?;
            h2r.class_of(&d)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConnectingMap {
        kind: MapKind::Transgression,
        source: h1p.clone(),
        target: h2r.clone(),
        domain: fixed_classes.to_vec(),
        images,
    })
}

/// The degree-one cocycle with values in H^1 of the subgroup obtained by
/// reducing a degree-two class that dies on the subgroup.
pub fn reduction_cocycle(
    tower: &ActionTower,
    e: &Cochain,
    h2p: &Arc<CohomologyGroup>,
    h1p: &Arc<CohomologyGroup>,
    h1_module: &Arc<CoefficientModule>,
) -> Result<Cochain> {
    let q_group = tower.module_q().actor().clone();
    let p_group = tower.module_p().actor().clone();
    let restricted = restrict_cochain(e, tower.module_p(), tower.incl());
    let (class, w0) = h2p.decompose(&restricted)?;
    if class != 0 {
        return Err(Error::NotInH2P);
    }
    // extend the bounding cochain to the whole group through the
    // set-theoretic retraction q -> p-part(q)
    let w_values: Vec<usize> = q_group
        .elements()
        .map(|q| w0.at1(tower.p_part(q)))
        .collect();
    let w = Cochain {
        module: tower.module_q().clone(),
        degree: 1,
        values: w_values,
    };
    let e_adjusted = e.mul(&w.coboundary()?.inverse());
    for p1 in p_group.elements() {
        for p2 in p_group.elements() {
            debug_assert_eq!(
                e_adjusted.at2(tower.incl().apply(p1), tower.incl().apply(p2)),
                0,
                "adjusted cocycle must vanish on the subgroup"
            );
        }
    }
    let r_group = tower.module_r().actor().clone();
    let coeffs = tower.module_q().coeffs();
    let mut gamma_values = vec![0usize; r_group.order()];
    for r in r_group.elements().skip(1) {
        let q = tower.section()[r];
        let values: Vec<usize> = p_group
            .elements()
            .map(|p| {
                let jp = tower.incl().apply(p);
                let conj = q_group.mul(q_group.mul(q_group.inv(q), jp), q);
                coeffs.mul(
                    e_adjusted.at2(q, conj),
                    coeffs.inv(e_adjusted.at2(jp, q)),
                )
            })
            .collect();
        let gamma_r = Cochain {
            module: tower.module_p().clone(),
            degree: 1,
            values,
        };
        if !gamma_r.is_cocycle() {
            return Err(Error::NotACocycle);
        }
        gamma_values[r] = h1p.class_of(&gamma_r)?;
    }
    let gamma = Cochain {
        module: h1_module.clone(),
        degree: 1,
        values: gamma_values,
    };
    if !gamma.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    Ok(gamma)
}

/// The reduction map on the classes of H^2 of the whole group that restrict
/// to zero on the subgroup.
pub fn reduction(
    tower: &ActionTower,
    h2q: &Arc<CohomologyGroup>,
    relative_kernel: &[usize],
    h2p: &Arc<CohomologyGroup>,
    h1p: &Arc<CohomologyGroup>,
    h1_module: &Arc<CoefficientModule>,
    target: &Arc<CohomologyGroup>,
) -> Result<ConnectingMap> {
    let images = relative_kernel
        .iter()
        .map(|&c| {
            let gamma = reduction_cocycle(tower, h2q.rep(c), h2p, h1p, h1_module)?;
            target.class_of(&gamma)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConnectingMap {
        kind: MapKind::Reduction,
        source: h2q.clone(),
        target: target.clone(),
        domain: relative_kernel.to_vec(),
        images,
    })
}

fn build_enumerated(
    degree: u8,
    module: &Arc<CoefficientModule>,
    bounds: &Bounds,
) -> Result<CohomologyGroup> {
    let parts = linear_parts(degree, module);
    let space = cochain_space_size(module, degree);
    let prev_space = cochain_space_size(module, degree - 1);
    if space > bounds.size_bound || prev_space > bounds.size_bound {
        return Err(Error::SizeBoundExceeded {
            size: space.max(prev_space),
            bound: bounds.size_bound,
        });
    }
    let candidates = enumerate_cochains(module, degree);
    let flags = par::map_vec(candidates, |c| {
        let keep = c.is_cocycle();
        (c, keep)
    });
    let cocycles: Vec<Cochain> = flags
        .into_iter()
        .filter_map(|(c, keep)| keep.then_some(c))
        .collect();

    let mut coboundaries: Vec<Vec<usize>> = enumerate_cochains(module, degree - 1)
        .into_iter()
        .map(|w| w.coboundary().expect("low degree").values)
        .collect();
    coboundaries.sort();
    coboundaries.dedup();

    let coeffs = module.coeffs();
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut reps: Vec<Cochain> = Vec::new();
    for z in &cocycles {
        if class_of.contains_key(&z.values) {
            continue;
        }
        let class = reps.len();
        reps.push(z.clone());
        for b in &coboundaries {
            let member: Vec<usize> = z
                .values
                .iter()
                .zip(b)
                .map(|(&a, &bb)| coeffs.mul(a, bb))
                .collect();
            class_of.insert(member, class);
        }
    }
    let lookup_fn = |c: &Cochain| -> usize { class_of[&c.values] };
    let table = class_table(module, &reps, lookup_fn)?;
    let invariant_factors = AbelianStructure::new(table.clone())?.invariant_factors();
    Ok(CohomologyGroup {
        module: module.clone(),
        degree,
        reps,
        table,
        invariant_factors,
        engine_used: Engine::Enumerate,
        lookup: ClassLookup::Enumerated { class_of },
        boundary_matrix: parts.boundary_matrix,
        prev_dim: parts.prev_dim,
        z_form: parts.z_form,
        b_form: parts.b_form,
    })
}
