//! Concrete finite groups: a dense multiplication table over integer element
//! indices, with exact validation of the group axioms.
//!
//! Everything downstream (word evaluation, graph construction, the subset
//! search) reduces to table lookups, so the representation is deliberately
//! flat: `table[a * order + b]` is the index of the product `a * b`.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Index of an element inside one particular [`Group`]. Only meaningful
/// relative to the group that produced it.
pub type ElementIndex = usize;

/// Hard ceiling on group orders for closure and product construction.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// Orders up to this bound get the full O(order^3) associativity check;
/// larger tables are probed with random triples instead.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 100_000;
const ASSOCIATIVITY_SAMPLE_SEED: u64 = 0x6772_7077_u64;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not a Latin square: {axis} {index} repeats element {value}")]
    NotLatinSquare {
        axis: &'static str,
        index: usize,
        value: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a permutation: {reason}")]
    NotAPermutation { index: usize, reason: String },
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
}

/// A finite group given by its full multiplication table.
///
/// Immutable after construction; shares freely across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    name: String,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
}

impl Group {
    /// Build a group from an explicit multiplication table.
    ///
    /// `rows[a][b]` must be the index of the product `a * b`. The table is
    /// fully validated: Latin square, two-sided identity, two-sided
    /// inverses, and associativity (exhaustive up to order 256, randomly
    /// sampled above that).
    pub fn from_cayley_table(
        rows: Vec<Vec<usize>>,
        name: impl Into<String>,
    ) -> Result<Group, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::MalformedTable("table is empty".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::MalformedTable(format!(
                    "row {r} has length {} but the table has {order} rows",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::MalformedTable(format!(
                        "entry ({r}, {c}) is {v}, outside 0..{order}"
                    )));
                }
                flat.push(v as u32);
            }
        }
        Group::from_flat_table(flat, order, name.into())
    }

    /// Close a set of permutations (image arrays on `points` points) under
    /// composition and return the generated group.
    ///
    /// Element 0 is the identity permutation; the remaining elements appear
    /// in breadth-first discovery order with the generators applied in list
    /// order, so the same generator list always yields the same table.
    pub fn from_permutation_generators(
        points: usize,
        generators: &[Vec<usize>],
        name: impl Into<String>,
    ) -> Result<Group, GroupError> {
        Group::from_permutation_generators_with_cap(points, generators, name, DEFAULT_ORDER_CAP)
    }

    /// As [`Group::from_permutation_generators`] with an explicit order cap.
    pub fn from_permutation_generators_with_cap(
        points: usize,
        generators: &[Vec<usize>],
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Group, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != points {
                return Err(GroupError::NotAPermutation {
                    index,
                    reason: format!("image array has length {}, expected {points}", g.len()),
                });
            }
            let mut seen = vec![false; points];
            for &img in g {
                if img >= points {
                    return Err(GroupError::NotAPermutation {
                        index,
                        reason: format!("image {img} is outside 0..{points}"),
                    });
                }
                if seen[img] {
                    return Err(GroupError::NotAPermutation {
                        index,
                        reason: format!("image {img} appears twice"),
                    });
                }
                seen[img] = true;
            }
        }

        let identity: Vec<usize> = (0..points).collect();
        let mut elements: Vec<Vec<usize>> = vec![identity.clone()];
        let mut index_of: HashMap<Vec<usize>, usize> = HashMap::new();
        index_of.insert(identity, 0);

        // Breadth-first closure: elements[i] is expanded by right-multiplying
        // each generator in list order.
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let product = compose(&elements[next], g);
                if !index_of.contains_key(&product) {
                    if elements.len() + 1 > cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    index_of.insert(product.clone(), elements.len());
                    elements.push(product);
                }
            }
            next += 1;
        }

        let order = elements.len();
        let mut flat = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let product = compose(&elements[a], &elements[b]);
                flat[a * order + b] = index_of[&product] as u32;
            }
        }
        Group::from_flat_table(flat, order, name.into())
    }

    /// Componentwise product of two groups. Pairs are ordered
    /// lexicographically by (left index, right index).
    pub fn direct_product(&self, other: &Group) -> Result<Group, GroupError> {
        let order = self
            .order
            .checked_mul(other.order)
            .filter(|&o| o <= DEFAULT_ORDER_CAP)
            .ok_or(GroupError::OrderCapExceeded {
                cap: DEFAULT_ORDER_CAP,
            })?;
        let (lo, ro) = (self.order, other.order);
        let mut flat = vec![0u32; order * order];
        for a1 in 0..lo {
            for b1 in 0..ro {
                let left = a1 * ro + b1;
                for a2 in 0..lo {
                    let la = self.multiply(a1, a2);
                    for b2 in 0..ro {
                        flat[left * order + (a2 * ro + b2)] =
                            (la * ro + other.multiply(b1, b2)) as u32;
                    }
                }
            }
        }
        Group::from_flat_table(flat, order, format!("{}x{}", self.name, other.name))
    }

    fn from_flat_table(table: Vec<u32>, order: usize, name: String) -> Result<Group, GroupError> {
        check_latin_square(&table, order)?;
        let identity = find_identity(&table, order)?;
        let inverse = find_inverses(&table, order, identity)?;
        check_associativity(&table, order)?;
        Ok(Group {
            name,
            order,
            table,
            identity,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementIndex {
        self.identity
    }

    /// Table lookup for `a * b`. Panics if either index is out of range.
    pub fn multiply(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        assert!(a < self.order && b < self.order, "element index out of range");
        self.table[a * self.order + b] as ElementIndex
    }

    /// Inverse of `a`. Panics if the index is out of range.
    pub fn inverse(&self, a: ElementIndex) -> ElementIndex {
        self.inverse[a] as ElementIndex
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.table[a * self.order + b] != self.table[b * self.order + a] {
                    return false;
                }
            }
        }
        true
    }

    /// Elements commuting with everything, in ascending index order.
    pub fn center(&self) -> Vec<ElementIndex> {
        (0..self.order)
            .filter(|&a| {
                (0..self.order)
                    .all(|b| self.table[a * self.order + b] == self.table[b * self.order + a])
            })
            .collect()
    }

    /// Re-run every axiom check against the stored fields.
    pub fn validate(&self) -> Result<(), GroupError> {
        check_latin_square(&self.table, self.order)?;
        let identity = find_identity(&self.table, self.order)?;
        if identity != self.identity {
            return Err(GroupError::NoIdentity);
        }
        let inverse = find_inverses(&self.table, self.order, identity)?;
        if inverse != self.inverse {
            return Err(GroupError::NoInverse { element: 0 });
        }
        check_associativity(&self.table, self.order)
    }

    /// The raw table as nested rows, mostly for serialization.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| {
                self.table[a * self.order..(a + 1) * self.order]
                    .iter()
                    .map(|&v| v as usize)
                    .collect()
            })
            .collect()
    }
}

/// `a` after `b`: the composite permutation maps `k` to `a[b[k]]`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&k| a[k]).collect()
}

fn check_latin_square(table: &[u32], order: usize) -> Result<(), GroupError> {
    let mut seen = vec![false; order];
    for r in 0..order {
        seen.fill(false);
        for c in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] {
                return Err(GroupError::NotLatinSquare {
                    axis: "row",
                    index: r,
                    value: v,
                });
            }
            seen[v] = true;
        }
    }
    for c in 0..order {
        seen.fill(false);
        for r in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] {
                return Err(GroupError::NotLatinSquare {
                    axis: "column",
                    index: c,
                    value: v,
                });
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn find_identity(table: &[u32], order: usize) -> Result<usize, GroupError> {
    'candidates: for e in 0..order {
        for a in 0..order {
            if table[e * order + a] as usize != a || table[a * order + e] as usize != a {
                continue 'candidates;
            }
        }
        return Ok(e);
    }
    Err(GroupError::NoIdentity)
}

fn find_inverses(table: &[u32], order: usize, identity: usize) -> Result<Vec<u32>, GroupError> {
    let mut inverse = vec![0u32; order];
    for a in 0..order {
        let b = (0..order)
            .find(|&b| table[a * order + b] as usize == identity)
            .ok_or(GroupError::NoInverse { element: a })?;
        if table[b * order + a] as usize != identity {
            return Err(GroupError::NoInverse { element: a });
        }
        inverse[a] = b as u32;
    }
    Ok(inverse)
}

fn check_associativity(table: &[u32], order: usize) -> Result<(), GroupError> {
    let at = |a: usize, b: usize| table[a * order + b] as usize;
    if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SAMPLE_SEED);
        for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
            let a = rng.gen_range(0..order);
            let b = rng.gen_range(0..order);
            let c = rng.gen_range(0..order);
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(GroupError::NotAssociative { a, b, c });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent closure oracle: repeated pairwise products until stable,
    /// elements kept in sorted order (identity sorts first).
    fn closure_oracle(points: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        set.insert((0..points).collect());
        for g in generators {
            set.insert(g.clone());
        }
        loop {
            let mut fresh = Vec::new();
            for a in &set {
                for b in &set {
                    let p = compose(a, b);
                    if !set.contains(&p) {
                        fresh.push(p);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            set.extend(fresh);
        }
        set.into_iter().collect()
    }

    fn oracle_table(points: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let elems = closure_oracle(points, generators);
        let index: HashMap<&Vec<usize>, usize> =
            elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect()
    }

    const S3_GENS: [[usize; 3]; 2] = [[1, 0, 2], [1, 2, 0]];

    fn s3_gens() -> Vec<Vec<usize>> {
        S3_GENS.iter().map(|g| g.to_vec()).collect()
    }

    fn s3() -> Group {
        Group::from_permutation_generators(3, &s3_gens(), "S3").unwrap()
    }

    fn cyclic(n: usize) -> Group {
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::from_cayley_table(rows, format!("Z{n}")).unwrap()
    }

    #[test]
    fn trivial_table() {
        let g = Group::from_cayley_table(vec![vec![0]], "Z1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        assert!(g.is_abelian());
    }

    #[test]
    fn s3_table_from_closure_oracle() {
        let g = Group::from_cayley_table(oracle_table(3, &s3_gens()), "S3").unwrap();
        assert_eq!(g.order(), 6);
        // The oracle sorts elements, and the identity permutation sorts first.
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
    }

    #[test]
    fn duplicate_row_entry_is_rejected() {
        let err = Group::from_cayley_table(vec![vec![0, 1], vec![1, 1]], "bad").unwrap_err();
        assert_eq!(
            err,
            GroupError::NotLatinSquare {
                axis: "row",
                index: 1,
                value: 1
            }
        );
    }

    #[test]
    fn column_duplicates_are_rejected() {
        // Rows are permutations but column 0 repeats 0.
        let err =
            Group::from_cayley_table(vec![vec![0, 1, 2], vec![0, 2, 1], vec![2, 1, 0]], "bad")
                .unwrap_err();
        assert!(matches!(err, GroupError::NotLatinSquare { axis: "column", .. }));
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            Group::from_cayley_table(vec![], "empty"),
            Err(GroupError::MalformedTable(_))
        ));
        assert!(matches!(
            Group::from_cayley_table(vec![vec![0, 1], vec![1]], "ragged"),
            Err(GroupError::MalformedTable(_))
        ));
        assert!(matches!(
            Group::from_cayley_table(vec![vec![0, 2], vec![2, 0]], "range"),
            Err(GroupError::MalformedTable(_))
        ));
    }

    #[test]
    fn latin_square_without_identity() {
        // Each row/column is a permutation but no element acts as identity.
        let rows = vec![vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]];
        assert_eq!(Group::from_cayley_table(rows, "loop").unwrap_err(), GroupError::NoIdentity);
    }

    #[test]
    fn nonassociative_loop_is_rejected() {
        // Order-5 loop: identity and inverses exist, associativity fails.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            Group::from_cayley_table(rows, "loop5"),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn closure_of_s3_generators() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        let oracle = closure_oracle(3, &s3_gens());
        assert_eq!(oracle.len(), 6);
    }

    #[test]
    fn closure_of_empty_generators_is_trivial() {
        let g = Group::from_permutation_generators(3, &[], "trivial").unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_of_one_transposition() {
        let g = Group::from_permutation_generators(2, &[vec![1, 0]], "Z2").unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn bad_generators_are_rejected() {
        assert!(matches!(
            Group::from_permutation_generators(2, &[vec![0, 0]], "bad"),
            Err(GroupError::NotAPermutation { index: 0, .. })
        ));
        assert!(matches!(
            Group::from_permutation_generators(2, &[vec![0, 1, 2]], "bad"),
            Err(GroupError::NotAPermutation { .. })
        ));
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err =
            Group::from_permutation_generators_with_cap(3, &s3_gens(), "S3", 5).unwrap_err();
        assert_eq!(err, GroupError::OrderCapExceeded { cap: 5 });
    }

    #[test]
    fn closure_is_deterministic() {
        let a = Group::from_permutation_generators(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], "S4")
            .unwrap();
        let b = Group::from_permutation_generators(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], "S4")
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), 24);
    }

    #[test]
    fn multiply_laws() {
        let g = s3();
        for a in 0..g.order() {
            assert_eq!(g.multiply(g.identity(), a), a);
            assert_eq!(g.multiply(a, g.identity()), a);
            assert_eq!(g.multiply(a, g.inverse(a)), g.identity());
            assert_eq!(g.multiply(g.inverse(a), a), g.identity());
        }
        // An involution squared: any non-identity element equal to its inverse.
        let t = (1..6).find(|&a| g.inverse(a) == a).unwrap();
        assert_eq!(g.multiply(t, t), g.identity());
    }

    #[test]
    fn abelian_checks() {
        assert!(cyclic(6).is_abelian());
        assert!(!s3().is_abelian());
        let klein = cyclic(2).direct_product(&cyclic(2)).unwrap();
        assert!(klein.is_abelian());
    }

    #[test]
    fn centers() {
        let z6 = cyclic(6);
        assert_eq!(z6.center().len(), 6);
        let g = s3();
        assert_eq!(g.center(), vec![0]);
        assert!(g.center().contains(&g.identity()));
    }

    #[test]
    fn direct_products() {
        let z2z3 = cyclic(2).direct_product(&cyclic(3)).unwrap();
        assert_eq!(z2z3.order(), 6);
        assert!(z2z3.is_abelian());

        let g = s3();
        let padded = g.direct_product(&cyclic(1)).unwrap();
        assert_eq!(padded.order(), 6);
        assert_eq!(padded.table_rows(), g.table_rows());
        assert_eq!(padded.is_abelian(), g.is_abelian());
    }

    #[test]
    fn product_cap_is_enforced() {
        let z200 = cyclic(200);
        assert!(matches!(
            z200.direct_product(&z200),
            Err(GroupError::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn center_size_divides_order() {
        let groups = vec![
            cyclic(12),
            s3(),
            Group::from_permutation_generators(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], "S4")
                .unwrap(),
        ];
        for g in &groups {
            let z = g.center().len();
            assert_eq!(g.order() % z, 0, "{}", g.name());
            assert_eq!(g.is_abelian(), z == g.order(), "{}", g.name());
            g.validate().unwrap();
        }
    }
}
