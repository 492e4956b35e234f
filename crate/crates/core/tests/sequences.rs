mod common;

use std::collections::BTreeSet;

use common::{load, parse, path, ALL, TYPE_S};
use fracbrauer::relations::{fr1_template, fr1_via_complements, ideal_generators, relation_r};
use fracbrauer::seq::{enumerate_standard_sequences, is_realizable};
use fracbrauer::{Configuration, Path, PathKind, Quiver, SequenceIndex, StandardSequence};

fn single_fixed_angle() -> Configuration {
    parse(r#"{"angles":["e"],"P":[["e"]],"L":"trivial","d":{"e":1}}"#)
}

/// Angles `e` with `path` equal to the letters `L(e), L(g·e), …` read from `P(e)`.
fn brute_witnesses(c: &Configuration, p: &Path) -> Vec<usize> {
    c.angles()
        .filter(|&e| {
            c.polygon_of(e) == p.source()
                && p.arrows().iter().enumerate().all(|(i, &a)| c.block_of(c.act(e, i as i64)) == a)
        })
        .collect()
}

fn all_paths(c: &Configuration) -> (Quiver, Vec<Path>) {
    let q = Quiver::from_config(c);
    let paths = q.paths_up_to(c.length_bound());
    (q, paths)
}

#[test]
fn quiver_shapes() {
    let q = Quiver::from_config(&load("example0"));
    assert_eq!((q.num_vertices(), q.arrows.len()), (3, 6));
    for v in 0..3 {
        assert_eq!(q.out_arrows(v).count(), 2);
        let targets: BTreeSet<_> = q.out_arrows(v).map(|a| a.target).collect();
        assert_eq!(targets.len(), 1);
    }

    let q = Quiver::from_config(&load("example1"));
    assert_eq!((q.num_vertices(), q.arrows.len()), (4, 7));
    for id in ["3'", "4"] {
        let a = q.arrow_by_id(id).unwrap();
        assert_eq!(a.source, a.target, "L({id}) is a loop");
    }

    let q = Quiver::from_config(&load("gs-example"));
    assert_eq!((q.num_vertices(), q.arrows.len()), (2, 5));
    let loops: Vec<usize> = (0..2).map(|v| q.out_arrows(v).filter(|a| a.target == v).count()).collect();
    let mut sorted = loops.clone();
    sorted.sort();
    assert_eq!(sorted, [1, 2]);
}

#[test]
fn sequence_counts() {
    assert_eq!(enumerate_standard_sequences(&load("example0")).len(), 18);
    assert_eq!(enumerate_standard_sequences(&load("example2")).len(), 16);
    let c = single_fixed_angle();
    let seqs = enumerate_standard_sequences(&c);
    assert_eq!(seqs, [StandardSequence::new(0, 0), StandardSequence::new(0, 1)]);
    for id in ALL {
        let c = load(id);
        let expected: usize = c.angles().map(|e| c.degree(e) + 1).sum();
        assert_eq!(enumerate_standard_sequences(&c).len(), expected, "{id}");
    }
}

#[test]
fn complements() {
    let c = load("example0");
    let p = StandardSequence::new(c.lookup("1").unwrap(), 1);
    assert_eq!(p.left_complement(&c).render(&c), "(2)");
    assert_eq!(p.right_complement(&c).render(&c), "(3)");

    for id in ALL {
        let c = load(id);
        for p in enumerate_standard_sequences(&c) {
            let e = p.base;
            let d = c.degree(e);
            let left = p.left_complement(&c);
            let right = p.right_complement(&c);
            assert_eq!(left.len + p.len, d);
            assert_eq!(right.len + p.len, d);
            if p.is_full(&c) {
                assert_eq!(left, StandardSequence::new(c.act(e, d as i64), 0));
                assert_eq!(right, StandardSequence::new(e, 0));
            }
            // `^p·p` starts at `e`; `p·p^` starts at the base of `p^`.
            let lp = p.word(&c).then(&left.word(&c)).unwrap();
            assert_eq!(lp, StandardSequence::new(e, d).word(&c), "{id}");
            let pr = right.word(&c).then(&p.word(&c)).unwrap();
            assert_eq!(pr, StandardSequence::new(right.base, d).word(&c), "{id}");
            for w in [lp, pr] {
                let v = is_realizable(&c, &w);
                assert_eq!(v.kind, PathKind::E);
                assert!(v.witnesses.iter().any(|&h| c.degree(h) == w.len()));
            }
        }
    }
}

#[test]
fn realizability_examples() {
    let c = load("example0");
    let q = Quiver::from_config(&c);
    assert_eq!(is_realizable(&c, &path(&q, "L(2')L(1)")).kind, PathKind::B1);
    let v = is_realizable(&c, &path(&q, "L(2)L(1)"));
    assert_eq!(v.kind, PathKind::E);
    assert_eq!(v.witnesses, [c.lookup("1").unwrap()]);
    let v = is_realizable(&c, &path(&q, "L(1)L(3)L(2)"));
    assert_eq!(v.kind, PathKind::B2);
    assert_eq!(v.witnesses, [c.lookup("2").unwrap()]);
}

#[test]
fn realizability_matches_brute_force() {
    for id in ALL {
        let c = load(id);
        let (_, paths) = all_paths(&c);
        for p in &paths {
            let v = is_realizable(&c, p);
            if p.is_trivial() {
                assert_eq!(v.kind, PathKind::E);
                continue;
            }
            let brute = brute_witnesses(&c, p);
            assert_eq!(v.witnesses, brute, "{id}");
            let kinds: BTreeSet<_> = brute.iter().map(|&e| p.len().cmp(&c.degree(e))).collect();
            assert!(kinds.len() <= 1, "{id}: witnesses disagree on n versus d");
            let expected = match kinds.into_iter().next() {
                None => PathKind::B1,
                Some(std::cmp::Ordering::Greater) => PathKind::B2,
                Some(_) => PathKind::E,
            };
            assert_eq!(v.kind, expected, "{id}");
        }
    }
}

#[test]
fn path_kinds_partition_bounded_paths() {
    for id in ALL {
        let c = load(id);
        let (q, paths) = all_paths(&c);
        let g = ideal_generators(&c, &q);
        let idx = SequenceIndex::new(&c);
        for p in &paths {
            let kind = is_realizable(&c, p).kind;
            let b1_factor = g.fr2.iter().any(|m| p.contains_factor(m));
            let b2_factor = g.fr3.iter().any(|m| p.contains_factor(m));
            match kind {
                PathKind::E => {
                    assert!(idx.contains_word(p), "{id}");
                    assert!(!b1_factor && !b2_factor, "{id}");
                }
                PathKind::B1 => assert!(b1_factor && !idx.contains_word(p), "{id}"),
                PathKind::B2 => assert!(b2_factor && !b1_factor && !idx.contains_word(p), "{id}"),
            }
        }
    }
}

#[test]
fn generator_families_are_well_formed() {
    for id in ALL {
        let c = load(id);
        let q = Quiver::from_config(&c);
        let g = ideal_generators(&c, &q);
        assert_eq!(g.length_bound, c.max_degree() + 1);
        for m in &g.fr2 {
            assert!(brute_witnesses(&c, m).is_empty(), "{id}");
            assert!(m.len() > 1 && m.len() <= g.length_bound);
        }
        for m in &g.fr3 {
            let w = brute_witnesses(&c, m);
            assert!(!w.is_empty() && w.iter().all(|&e| m.len() > c.degree(e)), "{id}");
        }
        for (u, v) in &g.fr1 {
            assert!(u < v);
            assert_eq!((u.source(), u.target()), (v.source(), v.target()), "{id}");
        }
    }
}

#[test]
fn fr1_routes_agree() {
    for id in ALL {
        let c = load(id);
        let idx = SequenceIndex::new(&c);
        assert_eq!(fr1_template(&c), fr1_via_complements(&c, &idx), "{id}");
    }
}

#[test]
fn single_fixed_angle_generators() {
    let c = single_fixed_angle();
    let q = Quiver::from_config(&c);
    let g = ideal_generators(&c, &q);
    assert!(g.fr1.is_empty() && g.fr2.is_empty());
    assert_eq!(g.fr3, [path(&q, "L(e)L(e)")]);
}

#[test]
fn relation_r_examples() {
    let c = load("example0");
    let q = Quiver::from_config(&c);
    let r = relation_r(&c, &SequenceIndex::new(&c)).unwrap();
    assert!(r.related(&path(&q, "L(2)L(1)"), &path(&q, "L(2')L(1')")));

    let c = load("example1");
    let q = Quiver::from_config(&c);
    let r = relation_r(&c, &SequenceIndex::new(&c)).unwrap();
    assert!(r.related(&path(&q, "L(3')"), &path(&q, "L(2)L(1)L(3)")));

    for id in TYPE_S {
        let c = load(id);
        let r = relation_r(&c, &SequenceIndex::new(&c)).unwrap();
        for class in &r.classes {
            let ends: BTreeSet<_> = class.iter().map(|p| (p.source(), p.target())).collect();
            assert_eq!(ends.len(), 1, "{id}");
            if class[0].is_trivial() {
                assert_eq!(class.len(), 1, "{id}");
            }
            assert_eq!(&class[0], class.iter().min().unwrap());
        }
    }

    let c = load("example2");
    assert!(relation_r(&c, &SequenceIndex::new(&c)).is_err());
}

#[test]
fn sigma_is_a_quiver_automorphism() {
    for id in ALL {
        let c = load(id);
        let q = Quiver::from_config(&c);
        let nm = c.nakayama_map();
        let mut images = BTreeSet::new();
        for a in &q.arrows {
            let e = c.blocks()[a.index][0];
            let b = &q.arrows[c.block_of(c.sigma(e))];
            assert_eq!(b.source, nm.polygons[a.source], "{id}");
            assert_eq!(b.target, nm.polygons[a.target], "{id}");
            images.insert(b.index);
        }
        assert_eq!(images.len(), q.arrows.len(), "{id}");
    }
}
