//! Per-genus aggregates over tree walks and the evidence tables derived
//! from them.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::classes::ClassFlags;
use crate::tree::{self, NodeKind, WalkOptions};
use crate::tree_a;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("diagonal {j} needs genus at least {need}, table stops at {have}")]
    InsufficientRange { j: u64, need: u64, have: u64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub leaf: u64,
    pub stick: u64,
    pub bush: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub symmetric: u64,
    pub pseudo_symmetric: u64,
    pub hyperelliptic: u64,
    pub arf: u64,
    pub ordinary: u64,
    pub irreducible: u64,
}

/// Aggregate for one genus. Merging partials is plain field-wise addition,
/// associative and commutative; counters are checked against overflow.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GenusStats {
    pub g: u64,
    pub n: u64,
    pub strong: u64,
    pub weak: u64,
    /// Index i holds the number of genus-g semigroups with i strong
    /// generators.
    pub strong_histogram: Vec<u64>,
    pub kind_counts: KindCounts,
    pub class_counts: ClassCounts,
}

fn add(a: &mut u64, b: u64) {
    *a = a.checked_add(b).expect("counter overflow");
}

impl GenusStats {
    pub fn merge(&mut self, other: &GenusStats) {
        debug_assert_eq!(self.g, other.g);
        add(&mut self.n, other.n);
        add(&mut self.strong, other.strong);
        add(&mut self.weak, other.weak);
        if self.strong_histogram.len() < other.strong_histogram.len() {
            self.strong_histogram.resize(other.strong_histogram.len(), 0);
        }
        for (i, &v) in other.strong_histogram.iter().enumerate() {
            add(&mut self.strong_histogram[i], v);
        }
        add(&mut self.kind_counts.leaf, other.kind_counts.leaf);
        add(&mut self.kind_counts.stick, other.kind_counts.stick);
        add(&mut self.kind_counts.bush, other.kind_counts.bush);
        add(&mut self.class_counts.symmetric, other.class_counts.symmetric);
        add(
            &mut self.class_counts.pseudo_symmetric,
            other.class_counts.pseudo_symmetric,
        );
        add(
            &mut self.class_counts.hyperelliptic,
            other.class_counts.hyperelliptic,
        );
        add(&mut self.class_counts.arf, other.class_counts.arf);
        add(&mut self.class_counts.ordinary, other.class_counts.ordinary);
        add(
            &mut self.class_counts.irreducible,
            other.class_counts.irreducible,
        );
    }

    pub fn histogram_count(&self, i: u64) -> u64 {
        self.strong_histogram
            .get(i as usize)
            .copied()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct AggregateOptions {
    /// Count ordinary nodes' generators through the extra-generator rule
    /// instead of leaving ordinary nodes out of strength statistics.
    pub include_ordinary: bool,
    /// Evaluate class predicates per node. Off for pure counting runs.
    pub classes: bool,
    pub workers: usize,
    pub split_genus: u64,
}

impl Default for AggregateOptions {
    fn default() -> Self {
        AggregateOptions {
            include_ordinary: false,
            classes: true,
            workers: 1,
            split_genus: 9,
        }
    }
}

impl AggregateOptions {
    pub fn convention_name(&self) -> &'static str {
        if self.include_ordinary {
            "include-ordinary"
        } else {
            "exclude-ordinary"
        }
    }
}

/// One walk, one [`GenusStats`] per genus. Deterministic for every worker
/// count.
pub fn aggregate(max_genus: u64, opts: &AggregateOptions) -> Vec<GenusStats> {
    let walk_opts = WalkOptions {
        max_genus,
        recompute: false,
        workers: opts.workers,
        split_genus: opts.split_genus,
    };
    let include_ordinary = opts.include_ordinary;
    let classes = opts.classes;
    let new_table = || -> Vec<GenusStats> {
        (0..=max_genus)
            .map(|g| GenusStats {
                g,
                ..GenusStats::default()
            })
            .collect()
    };
    tree::walk_reduce(
        &walk_opts,
        new_table,
        |table, node| {
            let s = &node.semigroup;
            let row = &mut table[s.genus() as usize];
            add(&mut row.n, 1);
            match node.kind() {
                NodeKind::Leaf => add(&mut row.kind_counts.leaf, 1),
                NodeKind::Stick => add(&mut row.kind_counts.stick, 1),
                NodeKind::Bush => add(&mut row.kind_counts.bush, 1),
            }
            let ordinary = s.is_ordinary();
            let strong = if ordinary && !include_ordinary {
                0
            } else {
                node.strong_count()
            };
            if !(ordinary && !include_ordinary) {
                add(&mut row.strong, strong);
                add(&mut row.weak, node.effective.len() as u64 - strong);
            }
            if row.strong_histogram.len() <= strong as usize {
                row.strong_histogram.resize(strong as usize + 1, 0);
            }
            add(&mut row.strong_histogram[strong as usize], 1);
            if classes {
                let flags = ClassFlags::of(s);
                let cc = &mut row.class_counts;
                if flags.symmetric {
                    add(&mut cc.symmetric, 1);
                }
                if flags.pseudo_symmetric {
                    add(&mut cc.pseudo_symmetric, 1);
                }
                if flags.hyperelliptic {
                    add(&mut cc.hyperelliptic, 1);
                }
                if flags.arf {
                    add(&mut cc.arf, 1);
                }
                if flags.ordinary {
                    add(&mut cc.ordinary, 1);
                }
                if flags.irreducible {
                    add(&mut cc.irreducible, 1);
                }
            }
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(&b) {
                x.merge(y);
            }
            a
        },
    )
}

/// One diagonal of the strong-generator histogram: the value at index
/// floor(g/2) - j along genus of one parity, anchored at the top of the
/// histogram's support (the largest strong count seen at genus g is exactly
/// floor(g/2)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalReport {
    pub j: u64,
    /// (genus, count) samples in increasing genus.
    pub samples: Vec<(u64, u64)>,
    pub last: u64,
    /// Unchanged over the final three samples.
    pub stabilized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

pub fn eo_diagonal(
    stats: &[GenusStats],
    parity: Parity,
    j: u64,
) -> Result<DiagonalReport, StatsError> {
    let top = stats.last().map_or(0, |r| r.g);
    if top < 2 * j + 4 {
        return Err(StatsError::InsufficientRange {
            j,
            need: 2 * j + 4,
            have: top,
        });
    }
    let start = match parity {
        Parity::Even => (2 * j).max(2),
        Parity::Odd => 2 * j + 1,
    };
    let mut samples = Vec::new();
    let mut g = start;
    while g <= top {
        let idx = g / 2 - j;
        samples.push((g, stats[g as usize].histogram_count(idx)));
        g += 2;
    }
    let last = samples.last().map_or(0, |&(_, v)| v);
    let stabilized =
        samples.len() >= 3 && samples[samples.len() - 3..].iter().all(|&(_, v)| v == last);
    Ok(DiagonalReport {
        j,
        samples,
        last,
        stabilized,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EoReport {
    pub e: Vec<DiagonalReport>,
    pub o: Vec<DiagonalReport>,
}

/// All diagonals the table can support.
///
/// The `e` list holds the odd-genus diagonals and `o` the even-genus ones:
/// named for the constants they approach, which is where the observed
/// sequences 2,2,5,12,21,45 and 1,2,3,8,14,34-35 actually live in the
/// computed histograms.
pub fn eo_diagonals(stats: &[GenusStats]) -> EoReport {
    let top = stats.last().map_or(0, |r| r.g);
    let mut e = Vec::new();
    let mut o = Vec::new();
    let mut j = 0;
    while 2 * j + 4 <= top {
        e.push(eo_diagonal(stats, Parity::Odd, j).expect("range checked"));
        o.push(eo_diagonal(stats, Parity::Even, j).expect("range checked"));
        j += 1;
    }
    EoReport { e, o }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsRow {
    pub g: u64,
    pub n: u64,
    /// Twice the g-th Fibonacci number.
    pub lower: u64,
    /// 1 + 3 * 2^(g-3).
    pub upper: u64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// Checks 2F_g <= n_g <= 1 + 3·2^(g-3) for every genus from 3 on.
pub fn bounds_report(stats: &[GenusStats]) -> Vec<BoundsRow> {
    stats
        .iter()
        .filter(|row| row.g >= 3)
        .map(|row| {
            let lower = u64::try_from(tree_a::fibonacci(row.g) * 2u32).expect("desk scale");
            let upper = 1 + 3 * (1u64 << (row.g - 3));
            BoundsRow {
                g: row.g,
                n: row.n,
                lower,
                upper,
                lower_ok: lower <= row.n,
                upper_ok: row.n <= upper,
            }
        })
        .collect()
}

/// Whether every term is at least the sum of all earlier terms.
pub fn superincreasing(values: &[u64]) -> bool {
    let mut sum = 0u64;
    for &v in values {
        if v < sum {
            return false;
        }
        sum += v;
    }
    true
}

/// CSV table, fixed column order, self-describing convention header.
pub fn render_csv(stats: &[GenusStats], opts: &AggregateOptions) -> String {
    let hist_width = stats
        .iter()
        .map(|row| row.strong_histogram.len())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut out = String::new();
    out.push_str(&format!(
        "# strength-convention: {}\n",
        opts.convention_name()
    ));
    out.push_str("g,n_g,S_g,W_g,ratio,leaf,stick,bush,sym,psym,hyp,arf,ord");
    for i in 0..hist_width {
        out.push_str(&format!(",n{i}"));
    }
    out.push('\n');
    let mut prev_n: Option<u64> = None;
    for row in stats {
        let ratio = match prev_n {
            Some(p) if p > 0 => format!("{:.6}", row.n as f64 / p as f64),
            _ => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.g,
            row.n,
            row.strong,
            row.weak,
            ratio,
            row.kind_counts.leaf,
            row.kind_counts.stick,
            row.kind_counts.bush,
            row.class_counts.symmetric,
            row.class_counts.pseudo_symmetric,
            row.class_counts.hyperelliptic,
            row.class_counts.arf,
            row.class_counts.ordinary,
        ));
        for i in 0..hist_width {
            out.push_str(&format!(",{}", row.histogram_count(i as u64)));
        }
        out.push('\n');
        prev_n = Some(row.n);
    }
    out
}

#[derive(Serialize)]
struct JsonTable<'a> {
    convention: &'a str,
    rows: &'a [GenusStats],
}

pub fn render_json(stats: &[GenusStats], opts: &AggregateOptions) -> String {
    let table = JsonTable {
        convention: opts.convention_name(),
        rows: stats,
    };
    let mut out = serde_json::to_string_pretty(&table).expect("serializable");
    out.push('\n');
    out
}

/// (g, n_g, 2F_g, 1 + 3·2^(g-3)) rows for external plotting; the upper bound
/// column is empty below genus 3.
pub fn render_plot_data(stats: &[GenusStats]) -> String {
    let mut out = String::from("g,n_g,lower,upper\n");
    for row in stats {
        let lower = tree_a::fibonacci(row.g) * 2u32;
        let upper = if row.g >= 3 {
            (BigUint::from(1u32) + BigUint::from(3u32) * (BigUint::from(1u32) << (row.g - 3)))
                .to_string()
        } else {
            String::new()
        };
        out.push_str(&format!("{},{},{},{}\n", row.g, row.n, lower, upper));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregate_counts() {
        let stats = aggregate(4, &AggregateOptions::default());
        let n: Vec<u64> = stats.iter().map(|r| r.n).collect();
        assert_eq!(n, vec![1, 1, 2, 4, 7]);
        for row in &stats {
            assert_eq!(
                row.kind_counts.leaf + row.kind_counts.stick + row.kind_counts.bush,
                row.n
            );
            assert_eq!(row.strong_histogram.iter().sum::<u64>(), row.n);
        }
    }

    #[test]
    fn merge_is_lossless() {
        let serial = aggregate(10, &AggregateOptions::default());
        let parallel = aggregate(
            10,
            &AggregateOptions {
                workers: 4,
                split_genus: 4,
                ..AggregateOptions::default()
            },
        );
        assert_eq!(serial, parallel);
        let opts = AggregateOptions::default();
        assert_eq!(render_csv(&serial, &opts), render_csv(&parallel, &opts));
    }

    #[test]
    fn histogram_partitions_the_level() {
        for opts in [
            AggregateOptions::default(),
            AggregateOptions {
                include_ordinary: true,
                ..AggregateOptions::default()
            },
        ] {
            let stats = aggregate(12, &opts);
            for row in &stats {
                assert_eq!(row.strong_histogram.iter().sum::<u64>(), row.n);
                let weighted: u64 = row
                    .strong_histogram
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| i as u64 * c)
                    .sum();
                assert_eq!(row.strong, weighted, "S_g is the histogram mean sum");
            }
        }
    }

    #[test]
    fn bounds_rows() {
        let stats = aggregate(10, &AggregateOptions::default());
        let rows = bounds_report(&stats);
        assert_eq!(rows[0].g, 3);
        assert_eq!(rows[0].lower, 4);
        assert_eq!(rows[0].upper, 4);
        for row in rows {
            assert!(row.lower_ok && row.upper_ok, "genus {}", row.g);
        }
    }

    #[test]
    fn diagonal_errors() {
        let stats = aggregate(6, &AggregateOptions::default());
        assert!(eo_diagonal(&stats, Parity::Even, 0).is_ok());
        assert_eq!(
            eo_diagonal(&stats, Parity::Even, 2),
            Err(StatsError::InsufficientRange {
                j: 2,
                need: 8,
                have: 6
            })
        );
    }

    #[test]
    fn superincreasing_examples() {
        assert!(superincreasing(&[2, 2, 5, 12, 21, 45]));
        assert!(superincreasing(&[1, 2, 3, 8, 14]));
        assert!(!superincreasing(&[3, 1]));
        assert!(superincreasing(&[]));
    }

    #[test]
    fn csv_shape() {
        let opts = AggregateOptions::default();
        let stats = aggregate(4, &opts);
        let csv = render_csv(&stats, &opts);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# strength-convention: exclude-ordinary");
        assert!(lines[1].starts_with("g,n_g,S_g,W_g,ratio,leaf,stick,bush"));
        assert_eq!(lines.len(), 2 + 5);
        assert!(lines[2].starts_with("0,1,0,0,,"));
    }
}
