#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use fracbrauer::relations::ideal_generators;
use fracbrauer::{io, Configuration, Path, Quiver};
use num_rational::Ratio;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load(id: &str) -> Configuration {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{id}.json"))).expect("corpus file");
    io::load_configuration(&text).expect("valid corpus document")
}

pub fn parse(text: &str) -> Configuration {
    io::parse_configuration(text).expect("valid document")
}

pub fn path(q: &Quiver, label: &str) -> Path {
    q.parse_label(label).unwrap_or_else(|| panic!("bad path label {label}"))
}

pub const TYPE_S: &[&str] = &["example0", "example1", "gs-example", "ex6-5", "ex6-5-bc", "ex7-6-m2"];
pub const ALL: &[&str] = &[
    "example0", "example1", "example2", "example3", "gs-example", "ex6-5", "ex6-5-bc", "ex7-6-m2",
];

type Row = BTreeMap<usize, Ratio<i64>>;

/// Rank of sparse rational rows by Gaussian elimination.
fn rank(mut rows: Vec<Row>) -> usize {
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    for mut r in rows.drain(..) {
        for (col, p) in &pivots {
            if let Some(&f) = r.get(col) {
                for (&k, &v) in p {
                    let e = r.entry(k).or_insert(Ratio::from_integer(0));
                    *e -= f * v;
                }
                r.retain(|_, v| *v != Ratio::from_integer(0));
            }
        }
        if let Some((&col, &lead)) = r.iter().next() {
            for v in r.values_mut() {
                *v /= lead;
            }
            for (_, p) in pivots.iter_mut() {
                if let Some(&f) = p.get(&col) {
                    for (&k, &v) in &r {
                        let e = p.entry(k).or_insert(Ratio::from_integer(0));
                        *e -= f * v;
                    }
                    p.retain(|_, v| *v != Ratio::from_integer(0));
                }
            }
            pivots.push((col, r));
        }
    }
    pivots.len()
}

/// `dim e_x Λ e_y` computed as the span of paths shorter than `N` modulo the
/// span of `p·r·q` for generators `r`, with all paths of length `≥ N` set to zero.
pub fn oracle_cartan(c: &Configuration) -> Vec<Vec<usize>> {
    let q = Quiver::from_config(c);
    let g = ideal_generators(c, &q);
    let bound = g.length_bound;
    let short: Vec<Path> = q.paths_up_to(bound - 1);
    let index: HashMap<&Path, usize> = short.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut generators: Vec<Vec<(Path, i64)>> = g.fr1.iter().map(|(u, v)| vec![(u.clone(), 1), (v.clone(), -1)]).collect();
    generators.extend(g.fr2.iter().chain(&g.fr3).map(|m| vec![(m.clone(), 1)]));

    let n = q.num_vertices();
    let mut rows: Vec<Vec<Vec<Row>>> = vec![vec![Vec::new(); n]; n];
    for r in &generators {
        let (s, t) = (r[0].0.source(), r[0].0.target());
        let shortest = r.iter().map(|(p, _)| p.len()).min().unwrap();
        for left in short.iter().filter(|p| p.target() == s && p.len() + shortest < bound) {
            let room = bound - left.len() - shortest;
            for right in short.iter().filter(|p| p.source() == t && p.len() < room) {
                let mut row = Row::new();
                for (term, coeff) in r {
                    let w = left.then(term).unwrap().then(right).unwrap();
                    if let Some(&i) = index.get(&w) {
                        *row.entry(i).or_insert(Ratio::from_integer(0)) += Ratio::from_integer(*coeff);
                    }
                }
                row.retain(|_, v| *v != Ratio::from_integer(0));
                if !row.is_empty() {
                    rows[left.source()][right.target()].push(row);
                }
            }
        }
    }
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let paths = short.iter().filter(|p| p.source() == x && p.target() == y).count();
                    paths - rank(std::mem::take(&mut rows[x][y]))
                })
                .collect()
        })
        .collect()
}
