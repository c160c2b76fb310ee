//! Deterministic table builders shared by the test suite and the CLI.
//!
//! Three standing tables are produced here, each with JSON, CSV and aligned
//! plain-text renderings whose bytes do not depend on run order, thread
//! count or hash seeds:
//!
//! * **Table 1** — dimensions of the spaces `(S^λ q_Γ)^{𝔖_Γ}` of invariant
//!   Schur-functor vectors, for the two subgraphs of `K_4` of cycle rank
//!   ≥ 2 and a fixed list of ten partitions.
//! * **Table 2** — the edge-sign character `ε_{E_Γ}` restricted to the
//!   stabilizer `𝔖_Γ`, for all ten isomorphism classes of subgraphs of
//!   `K_4` without isolated vertices, identified against named
//!   one-dimensional characters and re-verified element by element.
//! * **Table 3** — isotypic multiplicities of the graph-indexed multitors
//!   in the surface case (`d = 2`), for the five classes of positive cycle
//!   rank and every exterior degree `q` in range.
//!
//! All three are recomputed from first principles on every call; the pinned
//! constants in this module exist only so that comparisons against the
//! expected grids can be stated in one place.

use num::{ToPrimitive, Zero};
use serde::Serialize;

use crate::charlab::{isotypic_multiplicities, schur_from_power_traces, Partition};
use crate::graphlab::{edge_sign, EdgeRep, SimpleGraph};
use crate::koszul::DIM_X;
use crate::symgroup::Permutation;
use crate::{rat, Rat};

/// Current schema number stamped into every JSON report.
pub const SCHEMA: u32 = 1;

// ---------------------------------------------------------------------------
// Table 1: invariant Schur-functor dimensions
// ---------------------------------------------------------------------------

/// Column order of the Schur grid: partitions of 2, 3, 4 and 6.
pub const TABLE1_LAMBDAS: [&[usize]; 10] = [
    &[2],
    &[3],
    &[4],
    &[3, 1],
    &[2, 2],
    &[3, 1, 1],
    &[6],
    &[5, 1],
    &[4, 2],
    &[2, 2, 2],
];

/// Pinned reference grid for the acceptance comparison, rows `C4uL`, `K4`,
/// columns [`TABLE1_LAMBDAS`].
///
/// One cell is knowingly at odds with the computed table: the reference
/// lists `1` for `K4` at `λ = (3)`, while the computed dimension is `0`
/// (the cube of `q_{K4}` contains no trivial summand; see the
/// cube-decomposition pins in `charlab`).  The acceptance check compares
/// against this grid as given and reports that single cell as failing.
pub const TABLE1_REFERENCE: [[i64; 10]; 2] = [
    [2, 0, 3, 1, 1, 0, 4, 2, 2, 0],
    [1, 1, 2, 0, 1, 1, 3, 1, 2, 1],
];

/// Dimension of the `𝔖_Γ`-invariant subspace of `S^λ q_Γ`, computed by
/// averaging the Schur-functor character (from power traces of the
/// `q_Γ`-character) over the stabilizer.
pub fn schur_invariant_dim(graph: &SimpleGraph, lambda: &Partition) -> i64 {
    let rep = EdgeRep::on_stabilizer(graph.clone());
    let weight = lambda.weight().max(1);
    let mut total = Rat::zero();
    for sigma in rep.group.elements() {
        let p: Vec<Rat> = (1..=weight)
            .map(|k| rat(rep.q_character(&sigma.pow(k))))
            .collect();
        total += schur_from_power_traces(lambda, &p);
    }
    let avg = total / rat(rep.group.order() as i64);
    assert!(avg.is_integer(), "invariant dimension must be an integer");
    avg.to_integer().to_i64().expect("small dimension")
}

/// One row of the Schur grid: a graph class and its ten dimensions.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Table1Row {
    pub class: String,
    pub edges: String,
    pub values: Vec<i64>,
}

/// The full Schur-invariant dimension grid.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Table1Report {
    pub schema: u32,
    pub table: String,
    pub lambdas: Vec<String>,
    pub rows: Vec<Table1Row>,
}

/// Compute the Schur grid for `C4uL` (four-cycle with a chord) and `K4`.
pub fn table1() -> Table1Report {
    let graphs = [
        ("C4uL", SimpleGraph::c4_plus_chord()),
        ("K4", SimpleGraph::k4()),
    ];
    let lambdas: Vec<Partition> = TABLE1_LAMBDAS
        .iter()
        .map(|p| Partition::new(p.to_vec()))
        .collect();
    let rows = graphs
        .iter()
        .map(|(name, g)| Table1Row {
            class: (*name).to_string(),
            edges: g.label(),
            values: lambdas.iter().map(|l| schur_invariant_dim(g, l)).collect(),
        })
        .collect();
    Table1Report {
        schema: SCHEMA,
        table: "table1".to_string(),
        lambdas: lambdas.iter().map(|l| l.label()).collect(),
        rows,
    }
}

impl Table1Report {
    /// Pretty JSON, trailing newline included.
    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    /// Flat CSV, one line per grid cell.
    pub fn to_csv(&self) -> String {
        let mut lines = vec!["class,lambda,value".to_string()];
        for row in &self.rows {
            for (lam, v) in self.lambdas.iter().zip(&row.values) {
                lines.push(format!("{},{},{v}", csv_field(&row.class), csv_field(lam)));
            }
        }
        lines.join("\n") + "\n"
    }

    /// Aligned plain-text grid.
    pub fn to_text(&self) -> String {
        let mut grid = vec![{
            let mut h = vec!["class".to_string()];
            h.extend(self.lambdas.iter().cloned());
            h
        }];
        for row in &self.rows {
            let mut r = vec![row.class.clone()];
            r.extend(row.values.iter().map(|v| v.to_string()));
            grid.push(r);
        }
        render_grid(&grid)
    }

    /// Cells where the computed grid differs from [`TABLE1_REFERENCE`],
    /// as `(row, column)` pairs.
    pub fn mismatches(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.values.iter().enumerate() {
                if v != TABLE1_REFERENCE[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Table 2: edge-sign characters of all ten classes
// ---------------------------------------------------------------------------

/// One row of the edge-sign survey.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Table2Row {
    pub class: String,
    pub edges: String,
    pub stabilizer_order: usize,
    /// Name of the one-dimensional character that `ε_{E_Γ}` restricts to.
    pub character: String,
    /// Whether the named character matches `ε_{E_Γ}` on every stabilizer
    /// element (checked, not assumed).
    pub verified: bool,
}

/// The edge-sign character survey over all ten isomorphism classes.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Table2Report {
    pub schema: u32,
    pub table: String,
    pub rows: Vec<Table2Row>,
}

/// The ten isomorphism classes of nonempty subgraphs of `K_4` without
/// isolated vertices, in the standing order, with canonical representatives
/// and the named restriction of the edge-sign character.
fn table2_classes() -> Vec<(&'static str, SimpleGraph, &'static str)> {
    let g = |edges: Vec<(usize, usize)>| SimpleGraph::new(4, edges).expect("valid edges");
    vec![
        ("A1", g(vec![(0, 1)]), "1"),
        ("A2", g(vec![(0, 1), (1, 2)]), "eps"),
        ("B2", g(vec![(0, 1), (2, 3)]), "1x1xeps"),
        ("A3", g(vec![(0, 1), (1, 2), (2, 3)]), "eps"),
        ("B3", g(vec![(0, 1), (0, 2), (0, 3)]), "eps"),
        ("K3", SimpleGraph::k3(4), "eps"),
        ("K3uJ", SimpleGraph::k3_plus_edge(), "eps"),
        ("C4", SimpleGraph::c4(), "l(-1,1)"),
        ("C4uL", SimpleGraph::c4_plus_chord(), "1"),
        ("K4", SimpleGraph::k4(), "1"),
    ]
}

/// Expected value of the named character at `sigma`, for the canonical
/// representative of the class it is attached to.
fn named_character_value(name: &str, graph: &SimpleGraph, sigma: &Permutation) -> i64 {
    match name {
        // the trivial character
        "1" => 1,
        // the unique nontrivial ±1 character of the stabilizer; every
        // stabilizer carrying this name below is isomorphic to S_2 or
        // S_3, where it is −1 exactly on the order-2 elements
        "eps" => {
            if sigma.order() == 2 {
                -1
            } else {
                1
            }
        }
        // two disjoint edges: trivial on the flips of either edge, −1 on
        // the permutations exchanging the two edges
        "1x1xeps" => {
            let (a, b) = graph.edges()[0];
            let im = sigma.images();
            let keeps = {
                let (x, y) = (im[a].min(im[b]), im[a].max(im[b]));
                (x, y) == (a, b)
            };
            if keeps {
                1
            } else {
                -1
            }
        }
        // the four-cycle 0–1–2–3: −1 on the quarter-turns and on the
        // reflections through edge midpoints, +1 on the half-turn and the
        // reflections through opposite vertices; the kernel is the Klein
        // subgroup preserving both diagonals {0,2} and {1,3}
        "l(-1,1)" => {
            let im = sigma.images();
            let keeps = (im[0] == 0 || im[0] == 2) && (im[1] == 1 || im[1] == 3);
            if keeps {
                1
            } else {
                -1
            }
        }
        other => panic!("unknown character name {other}"),
    }
}

/// Compute the edge-sign survey, verifying every identification.
pub fn table2() -> Table2Report {
    let rows = table2_classes()
        .into_iter()
        .map(|(name, graph, character)| {
            let group = graph.stabilizer();
            let verified = group.elements().iter().all(|sigma| {
                edge_sign(&graph, sigma) == named_character_value(character, &graph, sigma)
            });
            Table2Row {
                class: name.to_string(),
                edges: graph.label(),
                stabilizer_order: group.order(),
                character: character.to_string(),
                verified,
            }
        })
        .collect();
    Table2Report {
        schema: SCHEMA,
        table: "table2".to_string(),
        rows,
    }
}

impl Table2Report {
    /// Pretty JSON, trailing newline included.
    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    /// CSV, one line per class.
    pub fn to_csv(&self) -> String {
        let mut lines = vec!["class,edges,stabilizer_order,character,verified".to_string()];
        for r in &self.rows {
            lines.push(format!(
                "{},{},{},{},{}",
                csv_field(&r.class),
                csv_field(&r.edges),
                r.stabilizer_order,
                csv_field(&r.character),
                r.verified
            ));
        }
        lines.join("\n") + "\n"
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let mut grid = vec![vec![
            "class".to_string(),
            "edges".to_string(),
            "order".to_string(),
            "character".to_string(),
            "verified".to_string(),
        ]];
        for r in &self.rows {
            grid.push(vec![
                r.class.clone(),
                r.edges.clone(),
                r.stabilizer_order.to_string(),
                r.character.clone(),
                r.verified.to_string(),
            ]);
        }
        render_grid(&grid)
    }

    /// Whether every identification checked out.
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.verified)
    }
}

// ---------------------------------------------------------------------------
// Table 3: isotypic multiplicities of the multitors (d = 2)
// ---------------------------------------------------------------------------

/// One `(class, q, λ)` cell of the isotypic table.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Table3Row {
    pub class: String,
    pub q: usize,
    pub lambda: String,
    pub multiplicity: i64,
}

/// The isotypic-multiplicity table over all five classes of positive cycle
/// rank, `d = 2`, every `q` in `1..=d·c`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Table3Report {
    pub schema: u32,
    pub table: String,
    pub d: usize,
    pub rows: Vec<Table3Row>,
}

/// Compute the isotypic table.  Partitions run over the `d × c` box in the
/// deterministic order supplied by `isotypic_multiplicities`.
pub fn table3() -> Table3Report {
    let classes = [
        ("K3", SimpleGraph::k3(4)),
        ("K3uJ", SimpleGraph::k3_plus_edge()),
        ("C4", SimpleGraph::c4()),
        ("C4uL", SimpleGraph::c4_plus_chord()),
        ("K4", SimpleGraph::k4()),
    ];
    let mut rows = Vec::new();
    for (name, g) in classes {
        let c = g.cycle_rank();
        for q in 1..=DIM_X * c {
            let iso = isotypic_multiplicities(&g, q, DIM_X).expect("in range");
            for (lam, m) in iso {
                rows.push(Table3Row {
                    class: name.to_string(),
                    q,
                    lambda: lam.label(),
                    multiplicity: m,
                });
            }
        }
    }
    Table3Report {
        schema: SCHEMA,
        table: "table3".to_string(),
        d: DIM_X,
        rows,
    }
}

impl Table3Report {
    /// Pretty JSON, trailing newline included.
    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    /// CSV, one line per `(class, q, λ)` cell.
    pub fn to_csv(&self) -> String {
        let mut lines = vec!["class,q,lambda,multiplicity".to_string()];
        for r in &self.rows {
            lines.push(format!(
                "{},{},{},{}",
                csv_field(&r.class),
                r.q,
                csv_field(&r.lambda),
                r.multiplicity
            ));
        }
        lines.join("\n") + "\n"
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let mut grid = vec![vec![
            "class".to_string(),
            "q".to_string(),
            "lambda".to_string(),
            "multiplicity".to_string(),
        ]];
        for r in &self.rows {
            grid.push(vec![
                r.class.clone(),
                r.q.to_string(),
                r.lambda.clone(),
                r.multiplicity.to_string(),
            ]);
        }
        render_grid(&grid)
    }

    /// The nonzero cells, in table order.
    pub fn nonzero(&self) -> Vec<&Table3Row> {
        self.rows.iter().filter(|r| r.multiplicity != 0).collect()
    }
}

// ---------------------------------------------------------------------------
// Shared rendering helpers
// ---------------------------------------------------------------------------

/// Pretty-printed JSON with a trailing newline; field order is declaration
/// order, so the bytes are stable.
fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Quote a CSV field if it contains a comma or a quote.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Left-aligned column rendering with two-space gutters.
pub fn render_grid(grid: &[Vec<String>]) -> String {
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in grid {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in grid {
        let mut line = String::new();
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if j + 1 < row.len() {
                for _ in cell.len()..widths[j] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_grid_and_known_mismatch() {
        let t = table1();
        assert_eq!(t.schema, 1);
        assert_eq!(t.lambdas[3], "(3,1)");
        assert_eq!(t.rows[0].class, "C4uL");
        assert_eq!(t.rows[0].values, vec![2, 0, 3, 1, 1, 0, 4, 2, 2, 0]);
        assert_eq!(t.rows[1].class, "K4");
        assert_eq!(t.rows[1].values, vec![1, 0, 2, 0, 1, 1, 3, 1, 2, 1]);
        // exactly one cell differs from the pinned reference: K4 at λ=(3)
        assert_eq!(t.mismatches(), vec![(1, 1)]);
        assert_eq!(TABLE1_REFERENCE[1][1], 1);
        assert_eq!(t.rows[1].values[1], 0);
    }

    #[test]
    fn table2_all_verified_with_pinned_orders() {
        let t = table2();
        assert!(t.all_verified());
        let orders: Vec<usize> = t.rows.iter().map(|r| r.stabilizer_order).collect();
        assert_eq!(orders, vec![4, 2, 8, 2, 6, 6, 2, 8, 4, 24]);
        let chars: Vec<&str> = t.rows.iter().map(|r| r.character.as_str()).collect();
        assert_eq!(
            chars,
            vec!["1", "eps", "1x1xeps", "eps", "eps", "eps", "eps", "l(-1,1)", "1", "1"]
        );
    }

    #[test]
    fn table2_misnamed_character_fails_verification() {
        // sanity: the verification is not a tautology
        let a2 = SimpleGraph::new(4, vec![(0, 1), (1, 2)]).unwrap();
        let group = a2.stabilizer();
        let ok = group
            .elements()
            .iter()
            .all(|s| edge_sign(&a2, s) == named_character_value("1", &a2, s));
        assert!(!ok);
    }

    #[test]
    fn table3_rows_and_nonzero_cells() {
        let t = table3();
        assert_eq!(t.d, 2);
        assert_eq!(t.rows.len(), 20);
        let nz: Vec<(String, usize, String, i64)> = t
            .nonzero()
            .iter()
            .map(|r| (r.class.clone(), r.q, r.lambda.clone(), r.multiplicity))
            .collect();
        assert_eq!(
            nz,
            vec![
                ("K3".to_string(), 1, "(1)".to_string(), 1),
                ("K3uJ".to_string(), 1, "(1)".to_string(), 1),
                ("C4uL".to_string(), 2, "(1,1)".to_string(), 2),
                ("C4uL".to_string(), 4, "(2,2)".to_string(), 1),
                ("K4".to_string(), 2, "(1,1)".to_string(), 1),
                ("K4".to_string(), 3, "(3)".to_string(), 1),
                ("K4".to_string(), 4, "(2,2)".to_string(), 1),
                ("K4".to_string(), 6, "(3,3)".to_string(), 1),
            ]
        );
    }

    #[test]
    fn renderings_are_stable_and_well_formed() {
        let t1 = table1();
        let t2 = table2();
        let t3 = table3();
        assert_eq!(t1.to_json(), table1().to_json());
        assert_eq!(t2.to_csv(), table2().to_csv());
        assert_eq!(t3.to_text(), table3().to_text());
        assert!(t1.to_json().starts_with("{\n  \"schema\": 1"));
        assert!(t1.to_csv().starts_with("class,lambda,value\nC4uL,(2),2\n"));
        assert!(t2.to_csv().contains("B2,12.34,8,1x1xeps,true"));
        assert!(t3.to_csv().contains("K4,6,\"(3,3)\",1"));
        let text = t1.to_text();
        assert!(text.lines().next().unwrap().starts_with("class"));
        // every JSON document parses back
        for s in [t1.to_json(), t2.to_json(), t3.to_json()] {
            serde_json::from_str::<serde_json::Value>(&s).unwrap();
        }
    }
}
