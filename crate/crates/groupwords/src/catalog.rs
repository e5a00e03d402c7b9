//! Built-in group families, the default sweep catalog, and group file I/O.
//!
//! Group files are JSON. A multiplication-table file looks like
//! `{"name": "...", "order": t, "table": [[...], ...]}` and a
//! permutation-generator file like
//! `{"name": "...", "points": k, "generators": [[...], ...]}`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Group, GroupError, DEFAULT_ORDER_CAP};
use crate::util::atomic_write;

#[derive(Error, Debug)]
pub enum CatalogError {
    #[error("unsupported family parameters: {0}")]
    UnsupportedParams(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid group file {path}: {detail}")]
    FileFormat { path: String, detail: String },
}

/// Constructor tag for a built-in group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    /// Symmetries of the regular n-gon, n >= 3; order 2n.
    Dihedral(usize),
    /// All permutations of k points, k <= 7.
    Symmetric(usize),
    /// Even permutations of k points, k <= 7.
    Alternating(usize),
    Quaternion8,
    /// Upper unitriangular 3x3 matrices over the field with p elements,
    /// p prime <= 7; order p^3.
    Heisenberg(usize),
    /// Direct power of a cyclic group of prime order: order p^k.
    ElementaryAbelian(usize, usize),
    Product(Box<Family>, Box<Family>),
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Cyclic(n) => format!("Z{n}"),
            Family::Dihedral(n) => format!("D{n}"),
            Family::Symmetric(k) => format!("S{k}"),
            Family::Alternating(k) => format!("A{k}"),
            Family::Quaternion8 => "Q8".into(),
            Family::Heisenberg(p) => format!("Heis{p}"),
            Family::ElementaryAbelian(p, k) => format!("Z{p}^{k}"),
            Family::Product(a, b) => format!("{}x{}", a.name(), b.name()),
        }
    }

    /// Order the constructed group will have, without building it.
    pub fn order(&self) -> u128 {
        match self {
            Family::Cyclic(n) => *n as u128,
            Family::Dihedral(n) => 2 * *n as u128,
            Family::Symmetric(k) => factorial(*k),
            Family::Alternating(k) => (factorial(*k) / 2).max(1),
            Family::Quaternion8 => 8,
            Family::Heisenberg(p) => (*p as u128).pow(3),
            Family::ElementaryAbelian(p, k) => (*p as u128).pow(*k as u32),
            Family::Product(a, b) => a.order() * b.order(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product::<u128>().max(1)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Deterministically construct a built-in group.
pub fn builtin(family: &Family) -> Result<Group, CatalogError> {
    let name = family.name();
    if family.order() > DEFAULT_ORDER_CAP as u128 {
        return Err(CatalogError::UnsupportedParams(format!(
            "{name} has order {} beyond the cap of {DEFAULT_ORDER_CAP}",
            family.order()
        )));
    }
    match family {
        Family::Cyclic(n) => {
            if *n < 1 {
                return Err(CatalogError::UnsupportedParams("cyclic needs n >= 1".into()));
            }
            let rows = (0..*n)
                .map(|a| (0..*n).map(|b| (a + b) % n).collect())
                .collect();
            Ok(Group::from_cayley_table(rows, name)?)
        }
        Family::Dihedral(n) => {
            if *n < 3 {
                return Err(CatalogError::UnsupportedParams(
                    "dihedral needs n >= 3 (an n-gon)".into(),
                ));
            }
            let rotation: Vec<usize> = (0..*n).map(|i| (i + 1) % n).collect();
            let reflection: Vec<usize> = (0..*n).map(|i| (n - i) % n).collect();
            Ok(Group::from_permutation_generators(
                *n,
                &[rotation, reflection],
                name,
            )?)
        }
        Family::Symmetric(k) => {
            if *k < 1 || *k > 7 {
                return Err(CatalogError::UnsupportedParams(
                    "symmetric supports 1 <= k <= 7".into(),
                ));
            }
            let generators = if *k == 1 {
                vec![]
            } else {
                let mut transposition: Vec<usize> = (0..*k).collect();
                transposition.swap(0, 1);
                let cycle: Vec<usize> = (0..*k).map(|i| (i + 1) % k).collect();
                vec![transposition, cycle]
            };
            Ok(Group::from_permutation_generators(*k, &generators, name)?)
        }
        Family::Alternating(k) => {
            if *k < 1 || *k > 7 {
                return Err(CatalogError::UnsupportedParams(
                    "alternating supports 1 <= k <= 7".into(),
                ));
            }
            // Consecutive 3-cycles (i, i+1, i+2) generate the even
            // permutations for k >= 3.
            let mut generators = Vec::new();
            for i in 0..k.saturating_sub(2) {
                let mut g: Vec<usize> = (0..*k).collect();
                g[i] = i + 1;
                g[i + 1] = i + 2;
                g[i + 2] = i;
                generators.push(g);
            }
            Ok(Group::from_permutation_generators(*k, &generators, name)?)
        }
        Family::Quaternion8 => {
            // Left multiplication by i and j on {1, -1, i, -i, j, -j, k, -k}.
            let mult_i = vec![2, 3, 1, 0, 6, 7, 5, 4];
            let mult_j = vec![4, 5, 7, 6, 1, 0, 2, 3];
            Ok(Group::from_permutation_generators(8, &[mult_i, mult_j], name)?)
        }
        Family::Heisenberg(p) => {
            if !is_prime(*p) || *p > 7 {
                return Err(CatalogError::UnsupportedParams(
                    "heisenberg supports primes p <= 7".into(),
                ));
            }
            // Left-regular action on triples (a, b, c) encoded a*p^2 + b*p + c,
            // with (a, b, c) * (a', b', c') = (a+a', b+b', c+c'+a*b').
            let p = *p;
            let pp = p * p;
            let points = pp * p;
            let gen_x: Vec<usize> = (0..points)
                .map(|i| {
                    let (a, b, c) = (i / pp, (i / p) % p, i % p);
                    ((a + 1) % p) * pp + b * p + (c + b) % p
                })
                .collect();
            let gen_y: Vec<usize> = (0..points)
                .map(|i| {
                    let (a, b, c) = (i / pp, (i / p) % p, i % p);
                    a * pp + ((b + 1) % p) * p + c
                })
                .collect();
            Ok(Group::from_permutation_generators(points, &[gen_x, gen_y], name)?)
        }
        Family::ElementaryAbelian(p, k) => {
            if !is_prime(*p) || *k < 1 {
                return Err(CatalogError::UnsupportedParams(
                    "elementary-abelian needs a prime p and k >= 1".into(),
                ));
            }
            let order = family.order() as usize;
            let add = |a: usize, b: usize| {
                let (mut a, mut b, mut sum, mut digit) = (a, b, 0usize, 1usize);
                for _ in 0..*k {
                    sum += ((a + b) % p) * digit;
                    a /= p;
                    b /= p;
                    digit *= p;
                }
                sum
            };
            let rows = (0..order)
                .map(|a| (0..order).map(|b| add(a, b)).collect())
                .collect();
            Ok(Group::from_cayley_table(rows, name)?)
        }
        Family::Product(a, b) => {
            let left = builtin(a)?;
            let right = builtin(b)?;
            Ok(left.direct_product(&right)?)
        }
    }
}

/// A named catalog member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub family: Family,
}

impl CatalogEntry {
    fn new(family: Family) -> CatalogEntry {
        CatalogEntry {
            name: family.name(),
            family,
        }
    }

    pub fn order(&self) -> u128 {
        self.family.order()
    }

    pub fn build(&self) -> Result<Group, CatalogError> {
        builtin(&self.family)
    }
}

/// The default group catalog up to `max_order`: cyclic and dihedral runs,
/// small symmetric and alternating groups, the quaternion group, Heisenberg
/// groups for p = 3 and 5, and pairwise products of a fixed seed list.
/// Sorted by (order, name); construction is deterministic.
pub fn default_catalog(max_order: usize) -> Vec<CatalogEntry> {
    let mut families = Vec::new();
    for n in 1..=max_order {
        families.push(Family::Cyclic(n));
    }
    for n in 3..=max_order / 2 {
        families.push(Family::Dihedral(n));
    }
    for k in 3..=5 {
        if factorial(k) <= max_order as u128 {
            families.push(Family::Symmetric(k));
        }
        if factorial(k) / 2 <= max_order as u128 {
            families.push(Family::Alternating(k));
        }
    }
    if max_order >= 8 {
        families.push(Family::Quaternion8);
    }
    for p in [3usize, 5] {
        if (p as u128).pow(3) <= max_order as u128 {
            families.push(Family::Heisenberg(p));
        }
    }
    let seeds = [
        Family::Symmetric(3),
        Family::Dihedral(4),
        Family::Quaternion8,
        Family::Cyclic(2),
        Family::Cyclic(3),
        Family::Cyclic(4),
    ];
    for i in 0..seeds.len() {
        for j in i..seeds.len() {
            let product = Family::Product(Box::new(seeds[i].clone()), Box::new(seeds[j].clone()));
            if product.order() <= max_order as u128 {
                families.push(product);
            }
        }
    }
    let mut entries: Vec<CatalogEntry> = families.into_iter().map(CatalogEntry::new).collect();
    entries.sort_by(|a, b| (a.order(), &a.name).cmp(&(b.order(), &b.name)));
    entries
}

#[derive(Serialize, Deserialize)]
struct CayleyFile {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct GeneratorFile {
    name: String,
    points: usize,
    generators: Vec<Vec<usize>>,
}

/// Load a group from a JSON file in either supported format, validating it
/// fully.
pub fn load_group(path: impl AsRef<Path>) -> Result<Group, CatalogError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: display.clone(),
        source,
    })?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|source| CatalogError::Parse {
            path: display.clone(),
            source,
        })?;
    let object = value.as_object().ok_or_else(|| CatalogError::FileFormat {
        path: display.clone(),
        detail: "expected a JSON object".into(),
    })?;
    if object.contains_key("table") {
        let file: CayleyFile =
            serde_json::from_value(value.clone()).map_err(|source| CatalogError::Parse {
                path: display.clone(),
                source,
            })?;
        if file.table.len() != file.order {
            return Err(CatalogError::FileFormat {
                path: display,
                detail: format!(
                    "order field says {} but the table has {} rows",
                    file.order,
                    file.table.len()
                ),
            });
        }
        Ok(Group::from_cayley_table(file.table, file.name)?)
    } else if object.contains_key("generators") {
        let file: GeneratorFile =
            serde_json::from_value(value.clone()).map_err(|source| CatalogError::Parse {
                path: display.clone(),
                source,
            })?;
        Ok(Group::from_permutation_generators(
            file.points,
            &file.generators,
            file.name,
        )?)
    } else {
        Err(CatalogError::FileFormat {
            path: display,
            detail: "expected a \"table\" or \"generators\" field".into(),
        })
    }
}

/// Write a group as a multiplication-table file (atomic: temp file plus
/// rename).
pub fn save_cayley_file(group: &Group, path: impl AsRef<Path>) -> Result<(), CatalogError> {
    let path = path.as_ref();
    let file = CayleyFile {
        name: group.name().to_string(),
        order: group.order(),
        table: group.table_rows(),
    };
    let text = serde_json::to_string(&file).expect("group file serializes");
    atomic_write(path, text.as_bytes()).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    #[test]
    fn builtin_examples() {
        assert_eq!(builtin(&Family::Cyclic(1)).unwrap().order(), 1);
        assert_eq!(builtin(&Family::Symmetric(3)).unwrap().order(), 6);
        let heis = builtin(&Family::Heisenberg(3)).unwrap();
        assert_eq!(heis.order(), 27);
        assert!(!heis.is_abelian());
        assert!(Word::named("engel2").unwrap().is_identity_in(&heis));
    }

    #[test]
    fn quaternion_group() {
        let q8 = builtin(&Family::Quaternion8).unwrap();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        assert_eq!(q8.center().len(), 2);
    }

    #[test]
    fn alternating_orders() {
        for (k, order) in [(1, 1), (2, 1), (3, 3), (4, 12), (5, 60)] {
            assert_eq!(builtin(&Family::Alternating(k)).unwrap().order(), order);
        }
    }

    #[test]
    fn elementary_abelian() {
        let g = builtin(&Family::ElementaryAbelian(2, 3)).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        for a in 0..8 {
            assert_eq!(g.multiply(a, a), g.identity());
        }
    }

    #[test]
    fn unsupported_parameters() {
        assert!(matches!(
            builtin(&Family::Dihedral(2)),
            Err(CatalogError::UnsupportedParams(_))
        ));
        assert!(matches!(
            builtin(&Family::Symmetric(8)),
            Err(CatalogError::UnsupportedParams(_))
        ));
        assert!(matches!(
            builtin(&Family::Heisenberg(4)),
            Err(CatalogError::UnsupportedParams(_))
        ));
        assert!(matches!(
            builtin(&Family::ElementaryAbelian(6, 2)),
            Err(CatalogError::UnsupportedParams(_))
        ));
    }

    #[test]
    fn catalog_contents() {
        let names = |max| {
            default_catalog(max)
                .into_iter()
                .map(|e| e.name)
                .collect::<Vec<_>>()
        };
        let six = names(6);
        for expected in ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "S3", "D3"] {
            assert!(six.contains(&expected.to_string()), "{expected} missing");
        }
        let eight = names(8);
        for expected in ["Q8", "D4", "Z2xZ2"] {
            assert!(eight.contains(&expected.to_string()), "{expected} missing");
        }
        let full = names(128);
        for expected in ["S5", "A5", "Heis3", "Heis5", "Q8xZ2", "D4xZ2"] {
            assert!(full.contains(&expected.to_string()), "{expected} missing");
        }
    }

    #[test]
    fn catalog_orders_match_family_formulas() {
        for entry in default_catalog(64) {
            let group = entry.build().unwrap();
            assert_eq!(group.order() as u128, entry.order(), "{}", entry.name);
            group.validate().unwrap();
        }
    }

    #[test]
    fn catalog_is_sorted_and_deterministic() {
        let a = default_catalog(32);
        let b = default_catalog(32);
        assert_eq!(a, b);
        for pair in a.windows(2) {
            assert!((pair[0].order(), &pair[0].name) <= (pair[1].order(), &pair[1].name));
        }
        let ga = a[20].build().unwrap();
        let gb = b[20].build().unwrap();
        assert_eq!(ga, gb);
    }

    #[test]
    fn non_abelian_catalog_members_are_exactly_the_expected_ones() {
        let mut non_abelian: Vec<String> = default_catalog(24)
            .into_iter()
            .filter_map(|e| {
                let g = e.build().unwrap();
                (!g.is_abelian()).then(|| e.name)
            })
            .collect();
        non_abelian.sort();
        let mut expected: Vec<String> = [
            "S3", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12", "S4", "A4",
            "Q8", "S3xZ2", "S3xZ3", "S3xZ4", "D4xZ2", "D4xZ3", "Q8xZ2", "Q8xZ3",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        expected.sort();
        assert_eq!(non_abelian, expected);
    }

    #[test]
    fn group_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s4.json");
        let original = builtin(&Family::Symmetric(4)).unwrap();
        save_cayley_file(&original, &path).unwrap();
        let loaded = load_group(&path).unwrap();
        assert_eq!(loaded, original);
    }

    #[test]
    fn generator_file_loads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.json");
        std::fs::write(
            &path,
            r#"{"name": "S3", "points": 3, "generators": [[1,0,2],[1,2,0]]}"#,
        )
        .unwrap();
        let g = load_group(&path).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();

        let bad_json = dir.path().join("bad.json");
        std::fs::write(&bad_json, "{\"name\": \"x\",\n  garbage").unwrap();
        let err = load_group(&bad_json).unwrap_err();
        assert!(err.to_string().contains("parse"), "{err}");
        assert!(format!("{:#}", anyhow::Error::from(err)).contains("line"));

        let bad_table = dir.path().join("bad_table.json");
        std::fs::write(
            &bad_table,
            r#"{"name": "bad", "order": 2, "table": [[0, 1], [1, 1]]}"#,
        )
        .unwrap();
        let err = load_group(&bad_table).unwrap_err();
        assert!(
            matches!(
                err,
                CatalogError::Group(GroupError::NotLatinSquare { axis: "row", index: 1, .. })
            ),
            "{err}"
        );

        let mismatched = dir.path().join("mismatch.json");
        std::fs::write(&mismatched, r#"{"name": "m", "order": 3, "table": [[0]]}"#).unwrap();
        assert!(matches!(
            load_group(&mismatched).unwrap_err(),
            CatalogError::FileFormat { .. }
        ));

        let neither = dir.path().join("neither.json");
        std::fs::write(&neither, r#"{"name": "n"}"#).unwrap();
        assert!(matches!(
            load_group(&neither).unwrap_err(),
            CatalogError::FileFormat { .. }
        ));
    }
}
