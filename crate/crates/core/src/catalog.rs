//! Built-in catalog of small groups used by the CLI and the test suite.
//!
//! Tables are generated from their defining presentations at startup and run
//! through full axiom validation, so a corrupted generator is caught
//! immediately.

use crate::group::Group;
use std::sync::Arc;

/// Z/n with addition, identity 0.
pub fn cyclic(n: usize) -> Arc<Group> {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    Group::from_table(format!("C{n}"), &table).expect("cyclic table")
}

/// Direct product with indices i = a * |B| + b.
pub fn product(g: &Arc<Group>, h: &Arc<Group>) -> Arc<Group> {
    let (n, m) = (g.order(), h.order());
    let table: Vec<Vec<usize>> = (0..n * m)
        .map(|x| {
            let (xa, xb) = (x / m, x % m);
            (0..n * m)
                .map(|y| {
                    let (ya, yb) = (y / m, y % m);
                    g.mul(xa, ya) * m + h.mul(xb, yb)
                })
                .collect()
        })
        .collect();
    Group::from_table(format!("{}x{}", g.name(), h.name()), &table).expect("product table")
}

/// Dihedral group of order 2n: rotations r^a and reflections r^a s,
/// indexed a + n*b for b in {0,1}, with s r s = r^-1.
pub fn dihedral(n: usize) -> Arc<Group> {
    let ord = 2 * n;
    let idx = |a: usize, b: usize| a % n + n * (b % 2);
    let table: Vec<Vec<usize>> = (0..ord)
        .map(|x| {
            let (xa, xb) = (x % n, x / n);
            (0..ord)
                .map(|y| {
                    let (ya, yb) = (y % n, y / n);
                    // (r^xa s^xb)(r^ya s^yb) = r^(xa + (-1)^xb ya) s^(xb+yb)
                    let a = if xb == 0 { xa + ya } else { xa + n - ya };
                    idx(a % n, xb + yb)
                })
                .collect()
        })
        .collect();
    Group::from_table(format!("D{n}"), &table).expect("dihedral table")
}

/// Quaternion group of order 8: indices 0..7 are 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion_8() -> Arc<Group> {
    // basis multiplication: e_a * e_b = sign * e_c over {1, i, j, k}
    let base = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (1, 1) | (2, 2) | (3, 3) => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let table: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            let (xs, xb) = (x % 2 == 1, x / 2);
            (0..8)
                .map(|y| {
                    let (ys, yb) = (y % 2 == 1, y / 2);
                    let (c, flip) = base(xb, yb);
                    let sign = xs ^ ys ^ flip;
                    2 * c + usize::from(sign)
                })
                .collect()
        })
        .collect();
    Group::from_table("Q8", &table).expect("quaternion table")
}

fn perm_group_table(name: &str, perms: &mut Vec<Vec<usize>>) -> Arc<Group> {
    perms.sort_unstable();
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index(&crate::group::compose_perm(a, b)))
                .collect()
        })
        .collect();
    Group::from_table(name, &table).expect("permutation table")
}

/// Symmetric group on three points, elements sorted lexicographically.
pub fn symmetric_3() -> Arc<Group> {
    let mut perms = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    perm_group_table("S3", &mut perms)
}

/// Alternating group on four points, elements sorted lexicographically.
pub fn alternating_4() -> Arc<Group> {
    fn parity(p: &[usize]) -> bool {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }
    let mut perms = Vec::new();
    let mut p = vec![0usize, 1, 2, 3];
    loop {
        if parity(&p) {
            perms.push(p.clone());
        }
        // next permutation
        let mut i = p.len() - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = p.len() - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    perm_group_table("A4", &mut perms)
}

/// A named catalog entry with its defining description.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub group: Arc<Group>,
}

/// All built-in groups, in catalog order.
pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "C2",
            description: "cyclic of order 2",
            group: cyclic(2),
        },
        CatalogEntry {
            name: "C4",
            description: "cyclic of order 4",
            group: cyclic(4),
        },
        CatalogEntry {
            name: "C8",
            description: "cyclic of order 8",
            group: cyclic(8),
        },
        CatalogEntry {
            name: "C2xC2",
            description: "Klein four-group",
            group: product(&cyclic(2), &cyclic(2)),
        },
        CatalogEntry {
            name: "C2xC4",
            description: "direct product C2 x C4",
            group: product(&cyclic(2), &cyclic(4)),
        },
        CatalogEntry {
            name: "S3",
            description: "symmetric group on 3 points",
            group: symmetric_3(),
        },
        CatalogEntry {
            name: "D4",
            description: "dihedral group of the square, order 8",
            group: dihedral(4),
        },
        CatalogEntry {
            name: "Q8",
            description: "quaternion group of order 8",
            group: quaternion_8(),
        },
        CatalogEntry {
            name: "A4",
            description: "alternating group on 4 points",
            group: alternating_4(),
        },
        CatalogEntry {
            name: "D6",
            description: "dihedral group of the hexagon, order 12",
            group: dihedral(6),
        },
    ]
}

pub fn by_name(name: &str) -> Option<Arc<Group>> {
    entries().into_iter().find(|e| e.name == name).map(|e| e.group)
}

/// The catalog groups themselves, for exhaustive test sweeps.
pub fn all() -> Vec<Arc<Group>> {
    entries().into_iter().map(|e| e.group).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::center;

    #[test]
    fn catalog_orders_and_abelianness() {
        let expected = [
            ("C2", 2, true),
            ("C4", 4, true),
            ("C8", 8, true),
            ("C2xC2", 4, true),
            ("C2xC4", 8, true),
            ("S3", 6, false),
            ("D4", 8, false),
            ("Q8", 8, false),
            ("A4", 12, false),
            ("D6", 12, false),
        ];
        let entries = entries();
        assert_eq!(entries.len(), expected.len());
        for (entry, (name, order, abelian)) in entries.iter().zip(expected) {
            assert_eq!(entry.name, name);
            assert_eq!(entry.group.order(), order, "{name}");
            assert_eq!(entry.group.is_abelian(), abelian, "{name}");
        }
    }

    #[test]
    fn quaternion_structure() {
        let q8 = quaternion_8();
        assert_eq!(center(&q8).order(), 2);
        // exactly one element of order 2
        assert_eq!(q8.order_census(), vec![(1, 1), (2, 1), (4, 6)]);
    }

    #[test]
    fn dihedral_structure() {
        let d4 = dihedral(4);
        assert_eq!(d4.order_census(), vec![(1, 1), (2, 5), (4, 2)]);
        assert_eq!(center(&d4).order(), 2);
    }

    #[test]
    fn a4_has_no_order_six_element() {
        let a4 = alternating_4();
        assert_eq!(a4.order_census(), vec![(1, 1), (2, 3), (3, 8)]);
    }
}
