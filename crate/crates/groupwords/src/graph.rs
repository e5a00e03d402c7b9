//! The directed satisfaction graph of a word on a group: vertices are group
//! elements and an arc a -> b is present exactly when w(a, b) is not the
//! identity. Diagonal pairs (a, a) are included in the arc count.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bits::BitMatrix;
use crate::group::{ElementIndex, Group};
use crate::word::Word;

/// Directed graph over a group's elements with bit-matrix adjacency.
#[derive(Clone, Debug)]
pub struct WordGraph {
    adjacency: BitMatrix,
    arc_count: u64,
    group_name: String,
    word_source: String,
}

impl WordGraph {
    /// Evaluate `word` over every ordered pair of `group` and record the
    /// non-identity pairs as arcs.
    pub fn build(group: &Group, word: &Word) -> WordGraph {
        let t = group.order();
        let id = group.identity();
        let mut adjacency = BitMatrix::new(t, t);
        let mut arc_count = 0u64;
        for a in 0..t {
            for b in 0..t {
                if word.evaluate(group, a, b) != id {
                    adjacency.set(a, b);
                    arc_count += 1;
                }
            }
        }
        WordGraph {
            adjacency,
            arc_count,
            group_name: group.name().to_string(),
            word_source: word.source().to_string(),
        }
    }

    /// Build a graph from an explicit arc list; used for digraphs that do
    /// not come from a group. Duplicate arcs collapse. Panics on an endpoint
    /// out of range or `vertex_count == 0`.
    pub fn from_arcs(
        vertex_count: usize,
        arcs: &[(usize, usize)],
        group_name: &str,
        word_source: &str,
    ) -> WordGraph {
        assert!(vertex_count > 0, "graphs need at least one vertex");
        let mut adjacency = BitMatrix::new(vertex_count, vertex_count);
        for &(a, b) in arcs {
            assert!(a < vertex_count && b < vertex_count, "arc endpoint out of range");
            adjacency.set(a, b);
        }
        let arc_count = adjacency.count_ones();
        WordGraph {
            adjacency,
            arc_count,
            group_name: group_name.to_string(),
            word_source: word_source.to_string(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn arc_count(&self) -> u64 {
        self.arc_count
    }

    pub fn has_arc(&self, a: ElementIndex, b: ElementIndex) -> bool {
        self.adjacency.get(a, b)
    }

    /// Row `a` of the adjacency matrix as packed 64-bit words.
    pub fn out_neighborhood(&self, a: ElementIndex) -> &[u64] {
        self.adjacency.row(a)
    }

    pub fn out_degree(&self, a: ElementIndex) -> usize {
        crate::bits::popcount(self.adjacency.row(a))
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn word_source(&self) -> &str {
        &self.word_source
    }

    /// Fraction of ordered pairs on which the word evaluates to the
    /// identity, as a reduced exact rational: (t^2 - arcs) / t^2.
    pub fn satisfaction_probability(&self) -> BigRational {
        let t = BigInt::from(self.vertex_count());
        let pairs = &t * &t;
        BigRational::new(&pairs - BigInt::from(self.arc_count), pairs)
    }

    /// DOT text: one line per vertex, then one line per arc in row-major
    /// order.
    pub fn export_dot(&self) -> String {
        let label = escape_dot(&format!("{} | {}", self.group_name, self.word_source));
        let mut out = format!("digraph \"{label}\" {{\n");
        for v in 0..self.vertex_count() {
            out.push_str(&format!("  {v};\n"));
        }
        for a in 0..self.vertex_count() {
            for b in crate::bits::set_bits(self.out_neighborhood(a)) {
                out.push_str(&format!("  {a} -> {b};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
