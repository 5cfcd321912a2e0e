//! Finite groups as dense multiplication tables.
//!
//! Every group stores an `n x n` table of element indices with the identity
//! pinned at index 0, so all algebra is index arithmetic. Subgroups are sorted
//! index sets, homomorphisms are index arrays, and automorphism groups carry
//! their own composition table so they can be quotiented like any other group.

use crate::error::{Error, Result};
use crate::par;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A finite group on the index set `0..order` with identity 0.
#[derive(Clone)]
pub struct Group {
    name: String,
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}
impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order)
    }
}

impl Group {
    /// Validates the group axioms on `table` and returns the group.
    ///
    /// Errors name the first witness in row-major order: closure first, then
    /// identity at index 0, inverses, and finally associativity.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<Arc<Group>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotSquare {
                row: 0,
                len: 0,
                expected: 1,
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotClosed(a, b));
                }
                flat.push(v);
            }
        }
        for a in 0..n {
            if flat[a] != a || flat[a * n] != a {
                return Err(Error::NoIdentityAtZero(a));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if flat[a * n + b] == 0 && flat[b * n + a] == 0 {
                    found = Some(b);
                    break;
                }
            }
            match found {
                Some(b) => inv[a] = b,
                None => return Err(Error::NoInverse(a)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Arc::new(Group {
            name: name.into(),
            order: n,
            table: flat,
            inv,
        }))
    }

    pub fn trivial() -> Arc<Group> {
        Group::from_table("1", &[vec![0]]).expect("trivial table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// g x g^-1
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Multiset of element orders as sorted (order, count) pairs.
    pub fn order_census(&self) -> Vec<(usize, usize)> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for a in self.elements() {
            *counts.entry(self.element_order(a)).or_default() += 1;
        }
        let mut census: Vec<_> = counts.into_iter().collect();
        census.sort_unstable();
        census
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    /// Stable 64-bit FNV-1a hash of the multiplication table.
    pub fn table_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for &v in &self.table {
            for byte in (v as u64).to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        h
    }

    pub fn with_name(self: &Arc<Self>, name: impl Into<String>) -> Arc<Group> {
        Arc::new(Group {
            name: name.into(),
            order: self.order,
            table: self.table.clone(),
            inv: self.inv.clone(),
        })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A subgroup as a sorted set of element indices of its ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: Arc<Group>,
    members: Vec<usize>,
    position: Vec<usize>, // ambient index -> position in members, usize::MAX outside
}

impl Subgroup {
    pub fn new(ambient: Arc<Group>, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m >= ambient.order() {
                return Err(Error::ElementOutOfRange(m, ambient.order()));
            }
        }
        if members.first() != Some(&0) {
            return Err(Error::NotSubgroup(0));
        }
        let mut position = vec![usize::MAX; ambient.order()];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i;
        }
        for &a in &members {
            if position[ambient.inv(a)] == usize::MAX {
                return Err(Error::NotSubgroup(a));
            }
            for &b in &members {
                if position[ambient.mul(a, b)] == usize::MAX {
                    return Err(Error::NotSubgroup(ambient.mul(a, b)));
                }
            }
        }
        Ok(Subgroup {
            ambient,
            members,
            position,
        })
    }

    /// Least subgroup containing `gens`, by breadth-first closure.
    pub fn generated(ambient: Arc<Group>, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            if g >= ambient.order() {
                return Err(Error::ElementOutOfRange(g, ambient.order()));
            }
        }
        let mut seen = vec![false; ambient.order()];
        seen[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                for y in [ambient.mul(x, g), ambient.mul(g, x)] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        let members: Vec<usize> = (0..ambient.order()).filter(|&x| seen[x]).collect();
        Subgroup::new(ambient, members)
    }

    pub fn whole(ambient: Arc<Group>) -> Subgroup {
        let members = ambient.elements().collect();
        Subgroup::new(ambient, members).expect("whole group")
    }

    pub fn trivial(ambient: Arc<Group>) -> Subgroup {
        Subgroup::new(ambient, vec![0]).expect("trivial subgroup")
    }

    pub fn ambient(&self) -> &Arc<Group> {
        &self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.position.len() && self.position[x] != usize::MAX
    }

    /// Position of an ambient element in the sorted member list.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        if self.contains(x) {
            Some(self.position[x])
        } else {
            None
        }
    }

    pub fn is_normal(&self) -> bool {
        self.ambient
            .elements()
            .all(|g| self.members.iter().all(|&h| self.contains(self.ambient.conj(g, h))))
    }

    /// The subgroup as a group in its own right, with the inclusion map.
    pub fn as_group(&self, name: impl Into<String>) -> (Arc<Group>, Homomorphism) {
        let n = self.members.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = self.position[self.ambient.mul(self.members[a], self.members[b])];
            }
        }
        let group = Group::from_table(name, &table).expect("subgroup table");
        let incl = Homomorphism::new(group.clone(), self.ambient.clone(), self.members.clone())
            .expect("inclusion");
        (group, incl)
    }
}

/// The center of a group.
pub fn center(g: &Arc<Group>) -> Subgroup {
    let members: Vec<usize> = g
        .elements()
        .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup::new(g.clone(), members).expect("center")
}

/// A homomorphism between two table groups, stored as an index array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: Arc<Group>,
    target: Arc<Group>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: Arc<Group>, target: Arc<Group>, map: Vec<usize>) -> Result<Homomorphism> {
        if map.len() != source.order() {
            return Err(Error::ElementOutOfRange(map.len(), source.order()));
        }
        for &v in &map {
            if v >= target.order() {
                return Err(Error::ElementOutOfRange(v, target.order()));
            }
        }
        if map[0] != 0 {
            return Err(Error::IdentityNotPreserved);
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism(a, b));
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: Arc<Group>) -> Homomorphism {
        let map = g.elements().collect();
        Homomorphism {
            source: g.clone(),
            target: g,
            map,
        }
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// self after other: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Homomorphism) -> Homomorphism {
        debug_assert_eq!(other.target, self.source);
        Homomorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = self
            .source
            .elements()
            .filter(|&x| self.map[x] == 0)
            .collect();
        Subgroup::new(self.source.clone(), members).expect("kernel")
    }

    pub fn image(&self) -> Subgroup {
        let mut members = self.map.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup::new(self.target.clone(), members).expect("image")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    /// All preimages of `t`, ascending.
    pub fn preimages(&self, t: usize) -> Vec<usize> {
        self.source.elements().filter(|&x| self.map[x] == t).collect()
    }

    pub fn least_preimage(&self, t: usize) -> Option<usize> {
        self.source.elements().find(|&x| self.map[x] == t)
    }
}

/// A normalized set map between groups that need not be a homomorphism;
/// models sections, liftings and cochains-as-maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMap {
    source: Arc<Group>,
    target: Arc<Group>,
    map: Vec<usize>,
}

impl PartialMap {
    pub fn new(source: Arc<Group>, target: Arc<Group>, map: Vec<usize>) -> Result<PartialMap> {
        if map.len() != source.order() {
            return Err(Error::ElementOutOfRange(map.len(), source.order()));
        }
        for &v in &map {
            if v >= target.order() {
                return Err(Error::ElementOutOfRange(v, target.order()));
            }
        }
        if map[0] != 0 {
            return Err(Error::IdentityNotPreserved);
        }
        Ok(PartialMap {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }
}

/// Quotient of a group by a normal subgroup, with canonical coset
/// representatives (the least member of each coset).
#[derive(Clone, Debug)]
pub struct CosetQuotient {
    total: Arc<Group>,
    normal: Subgroup,
    reps: Vec<usize>,
    class_of: Vec<usize>,
    quotient: Arc<Group>,
    projection: Homomorphism,
}

impl CosetQuotient {
    pub fn new(total: Arc<Group>, normal: Subgroup) -> Result<CosetQuotient> {
        debug_assert_eq!(normal.ambient(), &total);
        if let Some(g) = total
            .elements()
            .find(|&g| normal.members().iter().any(|&h| !normal.contains(total.conj(g, h))))
        {
            return Err(Error::NotNormal(g));
        }
        let n = total.order();
        // rep_of[g] = least member of gN
        let mut rep_of = vec![usize::MAX; n];
        for g in 0..n {
            let rep = normal
                .members()
                .iter()
                .map(|&h| total.mul(g, h))
                .min()
                .expect("nonempty coset");
            rep_of[g] = rep;
        }
        let mut reps: Vec<usize> = rep_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let rep_index: HashMap<usize, usize> =
            reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let class_of: Vec<usize> = rep_of.iter().map(|&r| rep_index[&r]).collect();
        let m = reps.len();
        let mut table = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                table[a][b] = class_of[total.mul(reps[a], reps[b])];
            }
        }
        let quotient = Group::from_table(format!("{}/{}", total.name(), normal.order()), &table)?;
        let projection = Homomorphism::new(total.clone(), quotient.clone(), class_of.clone())?;
        if projection.kernel().members() != normal.members() {
            return Err(Error::KernelMismatch);
        }
        Ok(CosetQuotient {
            total,
            normal,
            reps,
            class_of,
            quotient,
            projection,
        })
    }

    pub fn total(&self) -> &Arc<Group> {
        &self.total
    }

    pub fn normal(&self) -> &Subgroup {
        &self.normal
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// Class index of a total-group element.
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Canonical representative (in the total group) of class `c`.
    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn quotient(&self) -> &Arc<Group> {
        &self.quotient
    }

    pub fn projection(&self) -> &Homomorphism {
        &self.projection
    }
}

/// Quotient by a normal subgroup as (group, projection).
pub fn quotient(g: &Arc<Group>, n: &Subgroup) -> Result<(Arc<Group>, Homomorphism)> {
    let q = CosetQuotient::new(g.clone(), n.clone())?;
    Ok((q.quotient.clone(), q.projection.clone()))
}

/// Composes permutations: (a ∘ b)(x) = a[b[x]], b applied first.
pub fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn invert_perm(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        out[v] = i;
    }
    out
}

pub fn identity_perm(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn is_automorphism(g: &Group, perm: &[usize]) -> bool {
    let n = g.order();
    if perm.len() != n || perm[0] != 0 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if perm[g.mul(a, b)] != g.mul(perm[a], perm[b]) {
                return false;
            }
        }
    }
    true
}

/// A group of automorphisms of `base`, closed under composition, with its own
/// composition table. Elements are sorted lexicographically as permutations,
/// which puts the identity first.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    base: Arc<Group>,
    elements: Vec<Vec<usize>>,
    table: Arc<Group>,
    index: HashMap<Vec<usize>, usize>,
}

impl AutomorphismGroup {
    pub fn from_permutations(base: Arc<Group>, mut perms: Vec<Vec<usize>>) -> Result<AutomorphismGroup> {
        perms.push(identity_perm(base.order()));
        perms.sort_unstable();
        perms.dedup();
        for p in &perms {
            if !is_automorphism(&base, p) {
                return Err(Error::NotHomomorphism(0, 0));
            }
        }
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let m = perms.len();
        let mut table = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                let c = compose_perm(&perms[a], &perms[b]);
                table[a][b] = *index.get(&c).ok_or(Error::NotSubgroup(a))?;
            }
        }
        let table = Group::from_table(format!("Aut({})", base.name()), &table)?;
        Ok(AutomorphismGroup {
            base,
            elements: perms,
            table,
            index,
        })
    }

    pub fn base(&self) -> &Arc<Group> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn perm(&self, i: usize) -> &[usize] {
        &self.elements[i]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// The composition table as a group (identity automorphism at index 0).
    pub fn table(&self) -> &Arc<Group> {
        &self.table
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    pub fn invert(&self, a: usize) -> usize {
        self.table.inv(a)
    }
}

/// Minimal-or-small generating set: exact search for one or two generators,
/// greedy extension by maximal-order elements beyond that.
pub fn generating_set(g: &Arc<Group>) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    for a in 1..n {
        if Subgroup::generated(g.clone(), &[a]).expect("closure").order() == n {
            return vec![a];
        }
    }
    for a in 1..n {
        for b in (a + 1)..n {
            if Subgroup::generated(g.clone(), &[a, b]).expect("closure").order() == n {
                return vec![a, b];
            }
        }
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut span = Subgroup::trivial(g.clone());
    while span.order() < n {
        let mut best: Option<(usize, usize)> = None; // (span size, element)
        for x in g.elements() {
            if span.contains(x) {
                continue;
            }
            let mut cand = gens.clone();
            cand.push(x);
            let size = Subgroup::generated(g.clone(), &cand).expect("closure").order();
            let better = match best {
                None => true,
                Some((s, _)) => size > s,
            };
            if better {
                best = Some((size, x));
            }
        }
        let (_, x) = best.expect("proper subgroup has an outside element");
        gens.push(x);
        span = Subgroup::generated(g.clone(), &gens).expect("closure");
    }
    gens
}

/// Extends `gens -> images` to a homomorphism by closure. Returns the full
/// map when consistent, or None when the images violate the relations.
fn close_partial_hom(
    source: &Group,
    target: &Group,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = source.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut frontier = vec![0usize];
    for (&g, &im) in gens.iter().zip(images) {
        if map[g] == usize::MAX {
            map[g] = im;
            frontier.push(g);
        } else if map[g] != im {
            return None;
        }
    }
    let mut known: Vec<usize> = frontier.clone();
    let mut head = 0;
    while head < frontier.len() {
        let x = frontier[head];
        head += 1;
        // products with every known element, both sides
        for i in 0..known.len() {
            let y = known[i];
            for (p, im) in [
                (source.mul(x, y), target.mul(map[x], map[y])),
                (source.mul(y, x), target.mul(map[y], map[x])),
            ] {
                if map[p] == usize::MAX {
                    map[p] = im;
                    frontier.push(p);
                    known.push(p);
                } else if map[p] != im {
                    return None;
                }
            }
        }
    }
    if map.iter().any(|&v| v == usize::MAX) {
        // gens do not generate; caller passes a true generating set
        return None;
    }
    Some(map)
}

/// Backtracking search for all isomorphisms source -> target whose generator
/// images satisfy `constraint`. With source == target and no constraint this
/// enumerates the automorphism group.
pub fn isomorphisms(
    source: &Arc<Group>,
    target: &Arc<Group>,
    constraint: &(dyn Fn(usize, usize) -> bool + Sync),
) -> Vec<Vec<usize>> {
    if source.order() != target.order() {
        return Vec::new();
    }
    let gens = generating_set(source);
    if gens.is_empty() {
        return vec![identity_perm(1)];
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let ord = source.element_order(g);
            target
                .elements()
                .filter(|&t| target.element_order(t) == ord && constraint(g, t))
                .collect()
        })
        .collect();

    fn extend(
        source: &Group,
        target: &Group,
        gens: &[usize],
        candidates: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let depth = chosen.len();
        if depth == gens.len() {
            if let Some(map) = close_partial_hom(source, target, gens, chosen) {
                let mut seen = vec![false; map.len()];
                if map.iter().all(|&v| {
                    let fresh = !seen[v];
                    seen[v] = true;
                    fresh
                }) {
                    out.push(map);
                }
            }
            return;
        }
        for &cand in &candidates[depth] {
            chosen.push(cand);
            // prune: partial images must stay consistent on the subgroup
            // generated so far
            if close_partial_hom_prefix(source, target, &gens[..=depth], chosen) {
                extend(source, target, gens, candidates, chosen, out);
            }
            chosen.pop();
        }
    }

    fn close_partial_hom_prefix(
        source: &Group,
        target: &Group,
        gens: &[usize],
        images: &[usize],
    ) -> bool {
        // consistency of the induced map on the subgroup generated by the
        // prefix; full closure on that subgroup
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut known = vec![0usize];
        for (&g, &im) in gens.iter().zip(images) {
            if map[g] == usize::MAX {
                map[g] = im;
                known.push(g);
            } else if map[g] != im {
                return false;
            }
        }
        let mut head = 0;
        while head < known.len() {
            let x = known[head];
            head += 1;
            for i in 0..known.len() {
                let y = known[i];
                for (p, im) in [
                    (source.mul(x, y), target.mul(map[x], map[y])),
                    (source.mul(y, x), target.mul(map[y], map[x])),
                ] {
                    if map[p] == usize::MAX {
                        map[p] = im;
                        known.push(p);
                    } else if map[p] != im {
                        return false;
                    }
                }
            }
        }
        true
    }

    // parallelize over the first generator's candidates, merge in candidate
    // order so the output is deterministic
    let first: Vec<usize> = candidates[0].clone();
    let branches: Vec<Vec<Vec<usize>>> = par::map_vec(first, |cand| {
        let mut chosen = vec![cand];
        let mut out = Vec::new();
        if close_partial_hom_prefix(source, target, &gens[..1], &chosen) {
            extend(source, target, &gens, &candidates, &mut chosen, &mut out);
        }
        out
    });
    let mut all: Vec<Vec<usize>> = branches.into_iter().flatten().collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// All automorphisms of `g`, by backtracking over generator images.
pub fn automorphism_group(g: &Arc<Group>, bound: usize) -> Result<AutomorphismGroup> {
    if g.order() > bound {
        return Err(Error::SearchBoundExceeded {
            bound,
            order: g.order(),
        });
    }
    let perms = isomorphisms(g, g, &|_, _| true);
    AutomorphismGroup::from_permutations(g.clone(), perms)
}

/// Inner automorphisms together with the conjugation homomorphism onto them.
pub fn inner_automorphisms(g: &Arc<Group>) -> (AutomorphismGroup, Homomorphism) {
    let perms: Vec<Vec<usize>> = g
        .elements()
        .map(|a| g.elements().map(|x| g.conj(a, x)).collect())
        .collect();
    let inner = AutomorphismGroup::from_permutations(g.clone(), perms.clone())
        .expect("conjugations are automorphisms");
    let map: Vec<usize> = perms
        .iter()
        .map(|p| inner.index_of(p).expect("own permutation"))
        .collect();
    let hom = Homomorphism::new(g.clone(), inner.table().clone(), map)
        .expect("conjugation is a homomorphism");
    (inner, hom)
}

/// The outer automorphism structure Aut(G)/Inn(G).
pub fn outer_automorphisms(g: &Arc<Group>, bound: usize) -> Result<(AutomorphismGroup, CosetQuotient)> {
    let aut = automorphism_group(g, bound)?;
    let (inner, _) = inner_automorphisms(g);
    let members: Vec<usize> = inner
        .perms()
        .iter()
        .map(|p| aut.index_of(p).expect("inner automorphism"))
        .collect();
    let inn_sub = Subgroup::new(aut.table().clone(), members)?;
    let quot = CosetQuotient::new(aut.table().clone(), inn_sub)?;
    Ok((aut, quot))
}

/// Automorphisms of `n` stabilizing the subgroup `k`, the conjugations by
/// elements of `k`, and the quotient of the former by the latter.
#[derive(Clone, Debug)]
pub struct RelativeAutomorphisms {
    pub aut: AutomorphismGroup,
    pub inner_by_sub: Subgroup,
    pub outer: CosetQuotient,
}

impl RelativeAutomorphisms {
    /// Index in `aut` of the conjugation by ambient element `g` (which must
    /// normalize the stabilized subgroup).
    pub fn conj_index(&self, g: usize) -> Option<usize> {
        let n = self.aut.base();
        let perm: Vec<usize> = n.elements().map(|x| n.conj(g, x)).collect();
        self.aut.index_of(&perm)
    }

    /// Canonical class in the outer quotient of the automorphism with index `a`.
    pub fn outer_class(&self, a: usize) -> usize {
        self.outer.class_of(a)
    }
}

/// Aut_K(N), the conjugations by K, and Out(N;K) = Aut_K(N) / these.
pub fn relative_automorphisms(
    n: &Arc<Group>,
    k: &Subgroup,
    bound: usize,
) -> Result<RelativeAutomorphisms> {
    if !k.is_normal() {
        let witness = n
            .elements()
            .find(|&g| k.members().iter().any(|&h| !k.contains(n.conj(g, h))))
            .unwrap_or(0);
        return Err(Error::NotNormal(witness));
    }
    let full = automorphism_group(n, bound)?;
    let stabilizing: Vec<Vec<usize>> = full
        .perms()
        .iter()
        .filter(|p| k.members().iter().all(|&x| k.contains(p[x])))
        .cloned()
        .collect();
    let aut = AutomorphismGroup::from_permutations(n.clone(), stabilizing)?;
    let conj_members: Vec<usize> = k
        .members()
        .iter()
        .map(|&kk| {
            let perm: Vec<usize> = n.elements().map(|x| n.conj(kk, x)).collect();
            aut.index_of(&perm).expect("conjugation by k stabilizes k")
        })
        .collect();
    let inner_by_sub = Subgroup::new(aut.table().clone(), conj_members)?;
    let outer = CosetQuotient::new(aut.table().clone(), inner_by_sub.clone())?;
    Ok(RelativeAutomorphisms {
        aut,
        inner_by_sub,
        outer,
    })
}

/// The effect of a K-stabilizing automorphism of N on K and on P = N/K,
/// both elementwise and on outer classes.
#[derive(Clone, Debug)]
pub struct InducedMaps {
    /// per Aut_K(N) element: the induced permutation of the subgroup group K
    pub on_sub: Vec<Vec<usize>>,
    /// per Aut_K(N) element: the induced permutation of the quotient P
    pub on_quot: Vec<Vec<usize>>,
    /// Out(N;K) class -> Out(K) class
    pub outer_on_sub: Vec<usize>,
    /// Out(N;K) class -> permutation of P
    pub outer_on_quot: Vec<Vec<usize>>,
}

/// Computes the canonical maps Aut_K(N) -> Aut(K) and Aut_K(N) -> Aut(P)
/// induced by restriction and by passage to the quotient, together with
/// their descents to Out(N;K). `proj` must be surjective with kernel `k`.
pub fn induced_maps(
    rel: &RelativeAutomorphisms,
    k: &Subgroup,
    proj: &Homomorphism,
    out_k: &CosetQuotient,
    aut_k: &AutomorphismGroup,
) -> Result<InducedMaps> {
    let n = rel.aut.base();
    if proj.kernel().members() != k.members() || !proj.is_surjective() {
        return Err(Error::KernelMismatch);
    }
    let p_order = proj.target().order();
    let mut on_sub = Vec::with_capacity(rel.aut.len());
    let mut on_quot = Vec::with_capacity(rel.aut.len());
    for perm in rel.aut.perms() {
        let sub_perm: Vec<usize> = k
            .members()
            .iter()
            .map(|&x| k.index_of(perm[x]).expect("stabilizes k"))
            .collect();
        on_sub.push(sub_perm);
        let mut quot_perm = vec![usize::MAX; p_order];
        for x in n.elements() {
            let p = proj.apply(x);
            let image = proj.apply(perm[x]);
            if quot_perm[p] == usize::MAX {
                quot_perm[p] = image;
            } else if quot_perm[p] != image {
                return Err(Error::NotWellDefined(p, x));
            }
        }
        on_quot.push(quot_perm);
    }
    let outer_on_sub: Vec<usize> = rel
        .outer
        .reps()
        .iter()
        .map(|&r| {
            let idx = aut_k
                .index_of(&on_sub[r])
                .expect("restriction is an automorphism of K");
            out_k.class_of(idx)
        })
        .collect();
    let outer_on_quot: Vec<Vec<usize>> = rel
        .outer
        .reps()
        .iter()
        .map(|&r| on_quot[r].clone())
        .collect();
    Ok(InducedMaps {
        on_sub,
        on_quot,
        outer_on_sub,
        outer_on_quot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_group_is_valid() {
        let g = Group::from_table("1", &[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn cyclic_four_is_valid() {
        let g = catalog::cyclic(4);
        assert_eq!(g.order(), 4);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(1), 3);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = Group::from_table("bad", &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::NoInverse(1));
    }

    #[test]
    fn broken_identity_is_reported() {
        let err = Group::from_table("bad", &[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::NoIdentityAtZero(1));
    }

    #[test]
    fn nonassociative_table_is_reported() {
        // closed, identity ok, inverses ok, but not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match Group::from_table("bad", &t) {
            Err(Error::NotAssociative(..)) => {}
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn subgroup_generated_by_two_in_c4() {
        let g = catalog::cyclic(4);
        let h = Subgroup::generated(g, &[2]).unwrap();
        assert_eq!(h.members(), &[0, 2]);
    }

    #[test]
    fn empty_generating_set_gives_trivial_subgroup() {
        let g = catalog::symmetric_3();
        let h = Subgroup::generated(g, &[]).unwrap();
        assert_eq!(h.members(), &[0]);
    }

    #[test]
    fn three_cycle_generates_a3() {
        let g = catalog::symmetric_3();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let h = Subgroup::generated(g, &[three_cycle]).unwrap();
        assert_eq!(h.order(), 3);
    }

    #[test]
    fn a3_is_normal_transposition_subgroup_is_not() {
        let g = catalog::symmetric_3();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let a3 = Subgroup::generated(g.clone(), &[three_cycle]).unwrap();
        assert!(a3.is_normal());
        let flip = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let h = Subgroup::generated(g.clone(), &[flip]).unwrap();
        assert!(!h.is_normal());
        assert!(Subgroup::trivial(g).is_normal());
    }

    #[test]
    fn quotient_of_c4_by_order_two() {
        let g = catalog::cyclic(4);
        let h = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let (q, proj) = quotient(&g, &h).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.map(), &[0, 1, 0, 1]);
    }

    #[test]
    fn quotient_by_trivial_is_identity() {
        let g = catalog::symmetric_3();
        let (q, proj) = quotient(&g, &Subgroup::trivial(g.clone())).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(proj.map(), &g.elements().collect::<Vec<_>>()[..]);
    }

    #[test]
    fn quotient_s3_by_a3() {
        let g = catalog::symmetric_3();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let a3 = Subgroup::generated(g.clone(), &[three_cycle]).unwrap();
        let (q, proj) = quotient(&g, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel().members(), a3.members());
    }

    #[test]
    fn centers() {
        assert_eq!(center(&catalog::cyclic(4)).order(), 4);
        assert_eq!(center(&catalog::symmetric_3()).order(), 1);
        assert_eq!(center(&catalog::quaternion_8()).order(), 2);
    }

    #[test]
    fn automorphisms_of_small_groups() {
        assert_eq!(automorphism_group(&catalog::cyclic(4), 64).unwrap().len(), 2);
        assert_eq!(automorphism_group(&Group::trivial(), 64).unwrap().len(), 1);
        assert_eq!(automorphism_group(&catalog::symmetric_3(), 64).unwrap().len(), 6);
        assert_eq!(
            automorphism_group(&catalog::product(&catalog::cyclic(2), &catalog::cyclic(2)), 64)
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn automorphism_group_closed_and_bounded() {
        let g = catalog::dihedral(4);
        let aut = automorphism_group(&g, 64).unwrap();
        assert_eq!(aut.len(), 8);
        for a in 0..aut.len() {
            for b in 0..aut.len() {
                let c = compose_perm(aut.perm(a), aut.perm(b));
                assert!(aut.index_of(&c).is_some());
            }
        }
        let err = automorphism_group(&g, 4).unwrap_err();
        assert!(matches!(err, Error::SearchBoundExceeded { .. }));
    }

    #[test]
    fn inner_automorphism_sizes() {
        let (inn, _) = inner_automorphisms(&catalog::cyclic(8));
        assert_eq!(inn.len(), 1);
        let (inn, hom) = inner_automorphisms(&catalog::symmetric_3());
        assert_eq!(inn.len(), 6);
        assert_eq!(hom.kernel().order(), 1);
        let (inn, hom) = inner_automorphisms(&catalog::quaternion_8());
        assert_eq!(inn.len(), 4);
        assert_eq!(hom.kernel().members(), center(&catalog::quaternion_8()).members());
    }

    #[test]
    fn inn_order_is_group_order_over_center_for_catalog() {
        for g in catalog::all() {
            let (inn, _) = inner_automorphisms(&g);
            assert_eq!(inn.len(), g.order() / center(&g).order(), "{}", g.name());
        }
    }

    #[test]
    fn relative_automorphisms_s3_a3() {
        let g = catalog::symmetric_3();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let a3 = Subgroup::generated(g.clone(), &[three_cycle]).unwrap();
        let rel = relative_automorphisms(&g, &a3, 64).unwrap();
        assert_eq!(rel.aut.len(), 6);
        assert_eq!(rel.inner_by_sub.order(), 3);
        assert_eq!(rel.outer.class_count(), 2);
    }

    #[test]
    fn relative_automorphisms_of_abelian_whole() {
        let g = catalog::cyclic(4);
        let whole = Subgroup::whole(g.clone());
        let rel = relative_automorphisms(&g, &whole, 64).unwrap();
        assert_eq!(rel.inner_by_sub.order(), 1);
        assert_eq!(rel.outer.class_count(), rel.aut.len());

        let k = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let rel = relative_automorphisms(&g, &k, 64).unwrap();
        assert_eq!(rel.outer.class_count(), 2);
    }

    #[test]
    fn induced_maps_on_s3_a3() {
        let g = catalog::symmetric_3();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let a3 = Subgroup::generated(g.clone(), &[three_cycle]).unwrap();
        let rel = relative_automorphisms(&g, &a3, 64).unwrap();
        let (_, proj) = quotient(&g, &a3).unwrap();
        let (a3g, _) = a3.as_group("A3");
        let aut_k = automorphism_group(&a3g, 64).unwrap();
        let (_, out_k) = outer_automorphisms(&a3g, 64).unwrap();
        let maps = induced_maps(&rel, &a3, &proj, &out_k, &aut_k).unwrap();
        // identity automorphism restricts to identity on K and P
        let id = rel.aut.index_of(&identity_perm(6)).unwrap();
        assert_eq!(maps.on_sub[id], identity_perm(3));
        assert_eq!(maps.on_quot[id], identity_perm(2));
        // conjugation by a transposition inverts A3
        let flip = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let conj = rel.conj_index(flip).unwrap();
        let inversion: Vec<usize> = a3g.elements().map(|x| a3g.inv(x)).collect();
        assert_eq!(maps.on_sub[conj], inversion);
        // conjugations by A3 elements induce the identity on P
        for &k in a3.members() {
            let c = rel.conj_index(k).unwrap();
            assert_eq!(maps.on_quot[c], identity_perm(2));
        }
        // NK and NP are homomorphisms
        for a in 0..rel.aut.len() {
            for b in 0..rel.aut.len() {
                let ab = rel.aut.compose(a, b);
                assert_eq!(
                    maps.on_sub[ab],
                    compose_perm(&maps.on_sub[a], &maps.on_sub[b])
                );
                assert_eq!(
                    maps.on_quot[ab],
                    compose_perm(&maps.on_quot[a], &maps.on_quot[b])
                );
            }
        }
    }

    #[test]
    fn canonical_representatives_are_deterministic() {
        let g = catalog::symmetric_3();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let a3 = Subgroup::generated(g.clone(), &[three_cycle]).unwrap();
        let r1 = relative_automorphisms(&g, &a3, 64).unwrap();
        let r2 = relative_automorphisms(&g, &a3, 64).unwrap();
        assert_eq!(r1.outer.reps(), r2.outer.reps());
        assert_eq!(r1.aut.perms(), r2.aut.perms());
    }
}
