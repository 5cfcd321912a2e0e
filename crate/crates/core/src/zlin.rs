//! Linear algebra over Z/d for subgroups of (Z/d)^n.
//!
//! Cocycle and coboundary conditions over a finite abelian coefficient group
//! reduce to systems of congruences once every condition row is rescaled to a
//! common modulus d. Everything here keeps entries reduced into [0, d), so
//! the elimination never grows integers: the transforms are products of
//! integer-unimodular elementary operations, hence invertible mod d, which is
//! all the kernel, solve and quotient computations need.

/// Dense row-major matrix with entries in [0, d).
pub type Mat = Vec<Vec<i64>>;

pub fn zero_mat(rows: usize, cols: usize) -> Mat {
    vec![vec![0; cols]; rows]
}

pub fn identity_mat(n: usize) -> Mat {
    let mut m = zero_mat(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn modd(x: i64, d: i64) -> i64 {
    x.rem_euclid(d)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Matrix-vector product mod d.
pub fn mat_vec(a: &Mat, x: &[i64], d: i64) -> Vec<i64> {
    a.iter()
        .map(|row| modd(row.iter().zip(x).map(|(&r, &v)| r * v).sum::<i64>(), d))
        .collect()
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

/// Outcome of diagonalizing `a` mod d: `s = u * a * v` with `u`, `v`
/// invertible mod d and `s` diagonal. `uinv` is the inverse of `u` mod d.
pub struct Diagonalized {
    pub u: Mat,
    pub uinv: Mat,
    pub v: Mat,
    pub diag: Vec<i64>,
    pub rows: usize,
    pub cols: usize,
}

/// Smith-style diagonalization over Z/d by integer-unimodular row/column
/// operations, entries reduced mod d after every step. The diagonal is not
/// divisibility-ordered; callers only consume gcd(diag, d).
pub fn diagonalize(a: &Mat, d: i64) -> Diagonalized {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Mat = a
        .iter()
        .map(|row| row.iter().map(|&x| modd(x, d)).collect())
        .collect();
    let mut u = identity_mat(rows);
    let mut uinv = identity_mat(rows);
    let mut v = identity_mat(cols);

    let mut k = 0;
    while k < rows && k < cols {
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if m[i][j] != 0 {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => m[i][j] < m[pi][pj],
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            m.swap(pi, k);
            u.swap(pi, k);
            for row in uinv.iter_mut() {
                row.swap(pi, k);
            }
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(pj, k);
            }
            for row in v.iter_mut() {
                row.swap(pj, k);
            }
        }
        loop {
            let mut clean = true;
            for i in (k + 1)..rows {
                if m[i][k] != 0 {
                    let q = m[i][k] / m[k][k];
                    if q != 0 {
                        for j in 0..cols {
                            m[i][j] = modd(m[i][j] - q * m[k][j], d);
                        }
                        for j in 0..rows {
                            u[i][j] = modd(u[i][j] - q * u[k][j], d);
                            uinv[j][k] = modd(uinv[j][k] + q * uinv[j][i], d);
                        }
                    }
                    if m[i][k] != 0 {
                        // remainder smaller than the pivot: swap up and retry
                        m.swap(i, k);
                        u.swap(i, k);
                        for row in uinv.iter_mut() {
                            row.swap(i, k);
                        }
                        clean = false;
                        break;
                    }
                }
            }
            if !clean {
                continue;
            }
            for j in (k + 1)..cols {
                if m[k][j] != 0 {
                    let q = m[k][j] / m[k][k];
                    if q != 0 {
                        for i in 0..rows {
                            m[i][j] = modd(m[i][j] - q * m[i][k], d);
                        }
                        for i in 0..cols {
                            v[i][j] = modd(v[i][j] - q * v[i][k], d);
                        }
                    }
                    if m[k][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(j, k);
                        }
                        for row in v.iter_mut() {
                            row.swap(j, k);
                        }
                        clean = false;
                        break;
                    }
                }
            }
            if clean {
                break;
            }
        }
        k += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| m[i][i]).collect();
    Diagonalized {
        u,
        uinv,
        v,
        diag,
        rows,
        cols,
    }
}

/// Generators of { x in (Z/d)^cols : a x = 0 mod d }.
pub fn kernel_gens(a: &Mat, cols: usize, d: i64) -> Vec<Vec<i64>> {
    if cols == 0 {
        return Vec::new();
    }
    if a.is_empty() {
        return identity_cols(cols);
    }
    let dg = diagonalize(a, d);
    let mut gens = Vec::new();
    for j in 0..cols {
        let scale = if j < dg.diag.len() {
            d / gcd(dg.diag[j], d)
        } else {
            1
        };
        if scale == d {
            continue; // only the zero multiple survives
        }
        let col: Vec<i64> = (0..cols).map(|i| modd(dg.v[i][j] * scale, d)).collect();
        if col.iter().any(|&x| x != 0) {
            gens.push(col);
        }
    }
    gens
}

fn identity_cols(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            e
        })
        .collect()
}

/// One solution of a x = b mod d, if any.
pub fn solve(a: &Mat, b: &[i64], cols: usize, d: i64) -> Option<Vec<i64>> {
    if a.is_empty() {
        return Some(vec![0; cols]);
    }
    let dg = diagonalize(a, d);
    let c = mat_vec(&dg.u, b, d);
    let mut y = vec![0i64; cols];
    for i in 0..dg.rows {
        let s = if i < dg.diag.len() { dg.diag[i] } else { 0 };
        if s == 0 {
            if modd(c[i], d) != 0 {
                return None;
            }
            continue;
        }
        // s != 0 implies i < diag.len() <= cols; solve s * y_i = c_i mod d
        let g = gcd(s, d);
        if c[i] % g != 0 {
            return None;
        }
        let dd = d / g;
        let inv = mod_inverse(modd(s / g, dd), dd)?;
        y[i] = modd((c[i] / g) * inv, dd);
    }
    Some(mat_vec(&dg.v, &y, d))
}

/// Triangular transversal form of the subgroup of (Z/d)^dim generated by
/// `gens`. Column i is zero above row i; `pivots[i] = gcd(cols[i][i], d)`
/// divides d, and a pivot of d marks a zero column. Members are exactly the
/// sums of t_i * cols[i] with t_i in [0, d / pivots[i]), each one reached
/// once.
#[derive(Clone, Debug)]
pub struct SubgroupForm {
    pub dim: usize,
    pub d: i64,
    pub cols: Vec<Vec<i64>>,
    pub pivots: Vec<i64>,
    /// inverse of cols[i][i]/pivots[i] modulo d/pivots[i], for coordinate
    /// extraction
    unit_inv: Vec<i64>,
}

pub fn subgroup_form(gens: &[Vec<i64>], dim: usize, d: i64) -> SubgroupForm {
    let mut work: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| modd(x, d)).collect())
        .filter(|g: &Vec<i64>| g.iter().any(|&x| x != 0))
        .collect();
    let mut cols = Vec::with_capacity(dim);
    let mut pivots = Vec::with_capacity(dim);
    let mut unit_inv = Vec::with_capacity(dim);
    for i in 0..dim {
        // gcd-combine columns until at most one has a nonzero entry in row i
        loop {
            let mut nz: Vec<usize> = (0..work.len()).filter(|&j| work[j][i] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&j| work[j][i]);
            let (ja, jb) = (nz[0], nz[1]);
            let q = work[jb][i] / work[ja][i];
            for r in 0..dim {
                work[jb][r] = modd(work[jb][r] - q * work[ja][r], d);
            }
            if work[jb].iter().all(|&x| x == 0) {
                work.swap_remove(jb);
            }
        }
        match (0..work.len()).find(|&j| work[j][i] != 0) {
            Some(j) => {
                let col = work.swap_remove(j);
                let p = gcd(col[i], d);
                // row-i values across the subgroup are multiples of p, and
                // col[i]/p is a unit mod d/p
                let inv = mod_inverse(modd(col[i] / p, d / p), d / p).expect("unit mod d/p");
                // (d/p) * col has row i = 0 but may be nonzero below; keep
                // it so later rows capture the spill-over
                let spill: Vec<i64> = col.iter().map(|&x| modd(x * (d / p), d)).collect();
                if spill.iter().any(|&x| x != 0) {
                    work.push(spill);
                }
                pivots.push(p);
                unit_inv.push(inv);
                cols.push(col);
            }
            None => {
                pivots.push(d);
                unit_inv.push(0);
                cols.push(vec![0; dim]);
            }
        }
    }
    SubgroupForm {
        dim,
        d,
        cols,
        pivots,
        unit_inv,
    }
}

impl SubgroupForm {
    pub fn order(&self) -> u128 {
        self.pivots.iter().map(|&p| (self.d / p) as u128).product()
    }

    /// Transversal coordinates of `x` over the columns, or None when `x` is
    /// not a member.
    pub fn coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        let mut r: Vec<i64> = x.iter().map(|&v| modd(v, self.d)).collect();
        let mut t = vec![0i64; self.dim];
        for i in 0..self.dim {
            if r[i] == 0 {
                continue;
            }
            if self.pivots[i] == self.d || r[i] % self.pivots[i] != 0 {
                return None;
            }
            let reps = self.d / self.pivots[i];
            let ti = modd((r[i] / self.pivots[i]) * self.unit_inv[i], reps);
            t[i] = ti;
            for j in 0..self.dim {
                r[j] = modd(r[j] - ti * self.cols[i][j], self.d);
            }
            if r[i] != 0 {
                return None;
            }
        }
        if r.iter().all(|&v| v == 0) {
            Some(t)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.coords(x).is_some()
    }

    /// All members, in deterministic transversal order.
    pub fn enumerate(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.dim]];
        for i in 0..self.dim {
            let reps = self.d / self.pivots[i];
            if reps == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * reps as usize);
            for base in &out {
                for t in 0..reps {
                    let mut v = base.clone();
                    for j in 0..self.dim {
                        v[j] = modd(v[j] + t * self.cols[i][j], self.d);
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Indices of columns with a nontrivial pivot, i.e. actual generators.
    pub fn generator_cols(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.pivots[i] != self.d).collect()
    }
}

/// Cyclic decomposition of the quotient of two nested subgroups of (Z/d)^dim.
pub struct QuotientStructure {
    /// generators of the quotient, as ambient vectors
    pub gens: Vec<Vec<i64>>,
    /// order of each generator's class; the quotient is the direct sum of
    /// the corresponding cyclic groups
    pub orders: Vec<i64>,
    numerator: SubgroupForm,
    z_gens: Vec<Vec<i64>>,
    u: Mat,
    gen_orders_full: Vec<i64>,
    kept: Vec<usize>,
}

/// Structure of span(z_gens)/span(b_gens) inside (Z/d)^dim. `b_gens` must
/// lie in the span of `z_gens`.
pub fn quotient_structure(
    z_gens: &[Vec<i64>],
    b_gens: &[Vec<i64>],
    dim: usize,
    d: i64,
) -> QuotientStructure {
    let zf = subgroup_form(z_gens, dim, d);
    let gen_cols = zf.generator_cols();
    let a = gen_cols.len();
    let zg: Vec<Vec<i64>> = gen_cols.iter().map(|&i| zf.cols[i].clone()).collect();

    // relations in z-generator coordinates: combinations of the generators
    // that land on zero, plus the coordinates of the b-generators
    let mut relations: Vec<Vec<i64>> = Vec::new();
    if a > 0 {
        let m: Mat = (0..dim)
            .map(|r| (0..a).map(|c| zg[c][r]).collect())
            .collect();
        relations.extend(kernel_gens(&m, a, d));
        for b in b_gens {
            if b.iter().all(|&x| x == 0) {
                continue;
            }
            let t = zf.coords(b).expect("b_gens must lie inside span(z_gens)");
            relations.push(gen_cols.iter().map(|&i| t[i]).collect());
        }
        relations.retain(|r| r.iter().any(|&x| modd(x, d) != 0));
    }

    let dg = if relations.is_empty() {
        diagonalize(&zero_mat(a, 1.max(a)), d)
    } else {
        let rel_mat: Mat = (0..a)
            .map(|r| relations.iter().map(|rel| rel[r]).collect())
            .collect();
        diagonalize(&rel_mat, d)
    };

    let mut gens = Vec::new();
    let mut orders = Vec::new();
    let mut gen_orders_full = Vec::new();
    let mut kept = Vec::new();
    for k in 0..a {
        let s = dg.diag.get(k).copied().unwrap_or(0);
        let o = gcd(s, d);
        gen_orders_full.push(o);
        if o <= 1 {
            continue;
        }
        let mut v = vec![0i64; dim];
        for i in 0..a {
            let c = dg.uinv[i][k];
            if c != 0 {
                for r in 0..dim {
                    v[r] = modd(v[r] + c * zg[i][r], d);
                }
            }
        }
        gens.push(v);
        orders.push(o);
        kept.push(k);
    }
    QuotientStructure {
        gens,
        orders,
        numerator: zf,
        z_gens: zg,
        u: dg.u,
        gen_orders_full,
        kept,
    }
}

impl QuotientStructure {
    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    pub fn numerator(&self) -> &SubgroupForm {
        &self.numerator
    }

    /// Class coordinates of `x` over `gens` (one entry per generator), or
    /// None when `x` is outside the numerator subgroup.
    pub fn class_coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        let t_full = self.numerator.coords(x)?;
        let t: Vec<i64> = self
            .numerator
            .generator_cols()
            .iter()
            .map(|&i| t_full[i])
            .collect();
        if self.z_gens.is_empty() {
            return Some(Vec::new());
        }
        let c = mat_vec(&self.u, &t, self.numerator.d);
        Some(
            self.kept
                .iter()
                .map(|&k| c[k].rem_euclid(self.gen_orders_full[k]))
                .collect(),
        )
    }

    /// The ambient vector for given class coordinates.
    pub fn vector_for(&self, coords: &[i64]) -> Vec<i64> {
        let dim = self.numerator.dim;
        let d = self.numerator.d;
        let mut v = vec![0i64; dim];
        for (g, &c) in self.gens.iter().zip(coords) {
            if c != 0 {
                for r in 0..dim {
                    v[r] = modd(v[r] + c * g[r], d);
                }
            }
        }
        v
    }
}

/// Merges a multiset of cyclic orders into canonical invariant factors
/// d_1 | d_2 | ... (ascending, each > 1).
pub fn invariant_factors(orders: &[i64]) -> Vec<i64> {
    use std::collections::HashMap;
    let mut by_prime: HashMap<i64, Vec<i64>> = HashMap::new();
    for &o in orders {
        let mut o = o;
        let mut p = 2;
        while p * p <= o {
            if o % p == 0 {
                let mut pk = 1;
                while o % p == 0 {
                    pk *= p;
                    o /= p;
                }
                by_prime.entry(p).or_default().push(pk);
            }
            p += 1;
        }
        if o > 1 {
            by_prime.entry(o).or_default().push(o);
        }
    }
    let slots = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1i64; slots];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, &pk) in powers.iter().enumerate() {
            factors[slot] *= pk;
        }
    }
    factors.reverse();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalize_is_a_congruence() {
        let a = vec![vec![2, 4], vec![6, 8]];
        let d = 12;
        let dg = diagonalize(&a, d);
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0i64;
                for k in 0..2 {
                    for l in 0..2 {
                        s += dg.u[i][k] * a[k][l] * dg.v[l][j];
                    }
                }
                let expect = if i == j { dg.diag[i] } else { 0 };
                assert_eq!(s.rem_euclid(d), expect.rem_euclid(d));
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0i64;
                for k in 0..2 {
                    s += dg.uinv[i][k] * dg.u[k][j];
                }
                assert_eq!(s.rem_euclid(d), i64::from(i == j));
            }
        }
    }

    #[test]
    fn kernel_of_doubling_mod_four() {
        let a = vec![vec![2]];
        let gens = kernel_gens(&a, 1, 4);
        let f = subgroup_form(&gens, 1, 4);
        assert_eq!(f.order(), 2);
        assert!(f.contains(&[2]));
        assert!(!f.contains(&[1]));
    }

    #[test]
    fn solve_congruences() {
        let a = vec![vec![2]];
        let x = solve(&a, &[2], 1, 4).unwrap();
        assert_eq!((2 * x[0]).rem_euclid(4), 2);
        assert!(solve(&a, &[1], 1, 4).is_none());
    }

    #[test]
    fn subgroup_form_enumerates_distinct_members() {
        let gens = vec![vec![2, 0, 1], vec![0, 2, 0]];
        let f = subgroup_form(&gens, 3, 4);
        let elems = f.enumerate();
        assert_eq!(elems.len() as u128, f.order());
        let mut sorted = elems.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), elems.len());
        for e in &elems {
            let t = f.coords(e).expect("member");
            // round-trip through coordinates
            let mut v = vec![0i64; 3];
            for i in 0..3 {
                for j in 0..3 {
                    v[j] = (v[j] + t[i] * f.cols[i][j]).rem_euclid(4);
                }
            }
            assert_eq!(&v, e);
        }
    }

    #[test]
    fn subgroup_form_with_nonunit_pivot_entry() {
        // single generator (8, 1) mod 12: order 12, pivot gcd(8,12) = 4
        let gens = vec![vec![8, 1]];
        let f = subgroup_form(&gens, 2, 12);
        assert_eq!(f.order(), 12);
        assert!(f.contains(&[8, 1]));
        assert!(f.contains(&[4, 2]));
        assert!(!f.contains(&[1, 0]));
    }

    #[test]
    fn subgroup_form_matches_brute_force_closure() {
        // exhaustive check against additive closure for several gen sets
        let cases: Vec<(Vec<Vec<i64>>, usize, i64)> = vec![
            (vec![vec![2, 1]], 2, 4),
            (vec![vec![2, 0, 1], vec![0, 2, 0]], 3, 4),
            (vec![vec![3, 2], vec![0, 4]], 2, 6),
            (vec![vec![8, 1]], 2, 12),
            (vec![vec![1, 1], vec![0, 2]], 2, 8),
        ];
        for (gens, dim, d) in cases {
            let f = subgroup_form(&gens, dim, d);
            // brute-force closure
            let mut seen: std::collections::BTreeSet<Vec<i64>> = Default::default();
            seen.insert(vec![0; dim]);
            let mut frontier: Vec<Vec<i64>> = vec![vec![0; dim]];
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y: Vec<i64> = x
                        .iter()
                        .zip(g)
                        .map(|(&a, &b)| (a + b).rem_euclid(d))
                        .collect();
                    if seen.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
            assert_eq!(f.order(), seen.len() as u128, "order for d={d}");
            for e in &seen {
                assert!(f.contains(e), "missing member {e:?} for d={d}");
            }
            let mut enumerated = f.enumerate();
            enumerated.sort();
            enumerated.dedup();
            assert_eq!(enumerated.len(), seen.len());
        }
    }

    #[test]
    fn quotient_of_z4_by_doubles() {
        let z = vec![vec![1]];
        let b = vec![vec![2]];
        let q = quotient_structure(&z, &b, 1, 4);
        assert_eq!(q.order(), 2);
        assert_eq!(q.orders, vec![2]);
        assert_eq!(q.class_coords(&[0]).unwrap(), vec![0]);
        let c1 = q.class_coords(&[1]).unwrap();
        let c3 = q.class_coords(&[3]).unwrap();
        assert_eq!(c1, c3);
        assert_ne!(c1, vec![0]);
    }

    #[test]
    fn quotient_with_free_part_mod_d() {
        // Z = (Z/6)^2, B = {0} x Z/6: quotient is Z/6
        let z = vec![vec![1, 0], vec![0, 1]];
        let b = vec![vec![0, 1]];
        let q = quotient_structure(&z, &b, 2, 6);
        assert_eq!(q.order(), 6);
        assert_eq!(invariant_factors(&q.orders), vec![6]);
    }

    #[test]
    fn invariant_factor_merge() {
        assert_eq!(invariant_factors(&[2, 4, 3]), vec![2, 12]);
        assert_eq!(invariant_factors(&[2, 2]), vec![2, 2]);
        assert_eq!(invariant_factors(&[6]), vec![6]);
        assert_eq!(invariant_factors(&[]), Vec::<i64>::new());
    }
}
