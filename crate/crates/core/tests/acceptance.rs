use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use fracbrauer::algebra::{
    congruence_closure, cycle_notation, frobenius_check, loewy_diagrams, nakayama_consistency,
    type_s_basis,
};
use fracbrauer::gabriel::{
    check_conditions_dc, gabriel_presentation, presented_algebra, reconstruct_configuration,
    special_multiserial_check, verify_isomorphism, dims_agree,
};
use fracbrauer::random::{random_fbc, random_type_s, RandomParams};
use fracbrauer::relations::{ideal_generators, reduce_generators};
use fracbrauer::seq::{check_type_s, check_type_s_via_f7prime};
use fracbrauer::{classify, io, AlgebraTable, Configuration, Quiver, SequenceIndex};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

const TYPE_S_CORPUS: &[&str] = &["example0", "example1", "gs-example", "ex6-5", "ex6-5-bc", "ex7-6-m2"];

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(id: &str) -> Configuration {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{id}.json"))).expect("corpus file");
    io::load_configuration(&text).expect("valid corpus document")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(c: &Configuration) -> Result<AlgebraTable, String> {
    congruence_closure(c).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let r = classify(&load("example0"));
    ensure(r.is_fbc && r.is_type_ms && r.is_type_s && r.is_fms_bg, || format!("example0 flags {r:?}"))?;
    ensure(r.f_degrees.iter().all(|o| o.f_degree == (2, 3)), || "example0 f-degree".into())?;

    let r = classify(&load("example1"));
    ensure(r.is_type_s && !r.is_type_ms && r.is_fs_bg, || format!("example1 flags {r:?}"))?;
    ensure(r.f_degrees.iter().all(|o| o.f_degree == (1, 1)), || "example1 f-degree".into())?;

    for id in ["example2", "example3"] {
        let r = classify(&load(id));
        ensure(r.is_fbc && !r.is_type_s, || format!("{id} flags {r:?}"))?;
    }
    let r = classify(&load("gs-example"));
    ensure(r.is_bc, || "converted BC not recognised as BC".into())
}

fn rendered_generators(id: &str) -> BTreeSet<String> {
    let c = load(id);
    let q = Quiver::from_config(&c);
    let g = ideal_generators(&c, &q);
    reduce_generators(&q, &g.relations(), 2 * g.length_bound, 50_000)
        .iter()
        .map(|r| r.render(&q))
        .collect()
}

/// Binomials are compared with both orders of their terms.
fn same_generators(got: &BTreeSet<String>, printed: &[&str]) -> bool {
    let norm = |s: &str| -> String {
        match s.split_once(" - ") {
            Some((a, b)) if a > b => format!("{b} - {a}"),
            _ => s.to_string(),
        }
    };
    let a: BTreeSet<String> = got.iter().map(|s| norm(s)).collect();
    let b: BTreeSet<String> = printed.iter().map(|s| norm(s)).collect();
    a == b && got.len() == printed.len()
}

fn criterion_2() -> Outcome {
    let printed0 = [
        "L(2)L(1) - L(2')L(1')",
        "L(3)L(2) - L(3')L(2')",
        "L(1)L(3) - L(1')L(3')",
        "L(2')L(1)",
        "L(2)L(1')",
        "L(3')L(2)",
        "L(3)L(2')",
        "L(1')L(3)",
        "L(1)L(3')",
    ];
    let printed1 = [
        "L(3') - L(2)L(1)L(3)",
        "L(4) - L(2')L(1)L(4')",
        "L(3)L(2) - L(4')L(2')",
        "L(3')L(2)",
        "L(3)L(3')",
        "L(4)L(2')",
        "L(4')L(4)",
        "L(2)L(1)L(4')",
        "L(2')L(1)L(3)",
        "L(1)L(3)L(2)L(1)",
    ];
    let g0 = rendered_generators("example0");
    ensure(same_generators(&g0, &printed0), || format!("example0 generators {g0:?}"))?;
    let g1 = rendered_generators("example1");
    ensure(same_generators(&g1, &printed1), || format!("example1 generators {g1:?}"))
}

fn criterion_3() -> Outcome {
    let t = table(&load("example2"))?;
    ensure(t.total_dim() == 1, || format!("example2 total_dim {}", t.total_dim()))
}

/// Layers of `P_x` as sorted vertex ids.
fn layers(c: &Configuration, t: &AlgebraTable, vertex: &str) -> Vec<Vec<String>> {
    let q = Quiver::from_config(c);
    let x = q.vertex_index(vertex).expect("vertex");
    let d = loewy_diagrams(t).into_iter().find(|d| d.vertex == x).expect("diagram");
    d.layers
        .iter()
        .map(|l| {
            let mut ids: Vec<String> = l.iter().map(|&v| q.vertices[v].to_string()).collect();
            ids.sort();
            ids
        })
        .collect()
}

fn shape(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn dims(t: &AlgebraTable) -> Vec<usize> {
    loewy_diagrams(t).iter().map(|d| d.dim()).collect()
}

fn criterion_4() -> Outcome {
    let c = load("example0");
    let t = table(&c)?;
    for (x, y, z) in [("1", "2", "3"), ("2", "3", "1"), ("3", "1", "2")] {
        let want = shape(&[&[x], &[z, z], &[y]]);
        let got = layers(&c, &t, x);
        ensure(got == want, || format!("example0 P_{x} = {got:?}"))?;
    }

    let c = load("example1");
    let t = table(&c)?;
    ensure(dims(&t) == [5, 5, 4, 4], || format!("example1 dims {:?}", dims(&t)))?;
    ensure(layers(&c, &t, "3") == shape(&[&["3"], &["2"], &["1"], &["3"]]), || "example1 P_3".into())?;
    ensure(layers(&c, &t, "4") == shape(&[&["4"], &["2"], &["1"], &["4"]]), || "example1 P_4".into())?;

    let c = load("example3");
    let t = table(&c)?;
    ensure(dims(&t) == [5, 6, 3, 5, 6, 3], || format!("example3 dims {:?}", dims(&t)))?;
    ensure(layers(&c, &t, "3") == shape(&[&["3"], &["1"], &["5"]]), || "example3 P_3".into())?;
    ensure(layers(&c, &t, "6") == shape(&[&["6"], &["4"], &["2"]]), || "example3 P_6".into())?;

    let c = load("gs-example");
    let t = table(&c)?;
    ensure(dims(&t) == [7, 4], || format!("BCA dims {:?}", dims(&t)))
}

fn criterion_5() -> Outcome {
    let c = load("example0");
    let t = table(&c)?;
    let f = frobenius_check(&t, &c);
    let q = Quiver::from_config(&c);
    let nak = f.nakayama.clone().ok_or("example0 has no Nakayama permutation")?;
    let cycles = cycle_notation(&nak, |v| q.vertices[v].to_string());
    ensure(f.frobenius && cycles == "(1 3 2)" && !f.symmetric, || format!("example0 {cycles} {f:?}"))?;

    let c = load("example1");
    let f = frobenius_check(&table(&c)?, &c);
    ensure(f.frobenius && f.symmetric, || format!("example1 {f:?}"))?;

    let c = load("example3");
    let f = frobenius_check(&table(&c)?, &c);
    ensure(!f.self_injective, || "example3 reported self-injective".into())
}

fn engines_agree(c: &Configuration) -> Outcome {
    let a = congruence_closure(c).map_err(|e| e.to_string())?;
    let b = type_s_basis(c).map_err(|e| e.to_string())?;
    a.compare(&b)?;
    ensure(a.collapsed().is_empty(), || format!("collapsed paths {:?}", a.collapsed()))
}

fn criterion_6() -> Outcome {
    for id in TYPE_S_CORPUS {
        engines_agree(&load(id)).map_err(|e| format!("{id}: {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..200 {
        let c = random_type_s(&mut rng, RandomParams::default());
        engines_agree(&c).map_err(|e| format!("random #{i}: {e}\n{}", io::configuration_to_json(&c)))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let c = load("example1");
    let q = Quiver::from_config(&c);
    let p = gabriel_presentation(&c).map_err(|e| e.to_string())?;
    let mut lost: Vec<String> = p.arrows.reduced.iter().map(|&a| q.arrow(a).unwrap().id.to_string()).collect();
    lost.sort();
    ensure(lost == ["3'", "4"], || format!("example1 reduced arrows {lost:?}"))?;

    let p = gabriel_presentation(&load("example0")).map_err(|e| e.to_string())?;
    ensure(p.arrows.reduced.is_empty() && p.kept().len() == 6, || "example0 lost arrows".into())?;

    for id in TYPE_S_CORPUS {
        let c = load(id);
        let t = table(&c)?;
        let p = gabriel_presentation(&c).map_err(|e| e.to_string())?;
        dims_agree(&t, &presented_algebra(&p)).map_err(|(x, y)| format!("{id}: dim({x},{y}) differs"))?;
        ensure(p.admissible, || format!("{id}: {:?}", p.admissibility_witness))?;
    }
    Ok(())
}

fn multiserial(id: &str) -> Result<(bool, bool), String> {
    let c = load(id);
    let t = table(&c)?;
    let p = gabriel_presentation(&c).map_err(|e| e.to_string())?;
    let q = p.quiver.restrict(p.kept());
    let biserial = (0..q.num_vertices()).all(|v| q.out_arrows(v).count() <= 2 && q.in_arrows(v).count() <= 2);
    Ok((special_multiserial_check(&p, &t).holds, biserial))
}

fn criterion_8() -> Outcome {
    let (special, biserial) = multiserial("example0")?;
    ensure(special && biserial, || "example0 not special biserial".into())?;
    ensure(!multiserial("example1")?.0, || "example1 special multiserial".into())?;
    ensure(!multiserial("ex6-5")?.0, || "E' special multiserial".into())?;
    ensure(multiserial("ex6-5-bc")?.0, || "BC E not special multiserial".into())
}

fn criterion_9() -> Outcome {
    for id in TYPE_S_CORPUS {
        let c = load(id);
        let t = table(&c)?;
        let p = gabriel_presentation(&c).map_err(|e| e.to_string())?;
        let v = check_conditions_dc(&c, &p, &t).map_err(|e| e.to_string())?;
        ensure(v.d && v.c, || format!("{id}: {:?}", v.witness))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for id in ["example0", "example1", "ex6-5", "ex7-6-m2"] {
        let c = load(id);
        let t = table(&c)?;
        let p = gabriel_presentation(&c).map_err(|e| e.to_string())?;
        let rec = reconstruct_configuration(&t, &p).map_err(|e| format!("{id}: {e}"))?;
        let iso = verify_isomorphism(&t, &p, &rec);
        ensure(iso.isomorphic, || format!("{id}: {:?}", iso.failure))?;
        if id == "ex7-6-m2" {
            let r = &rec.config;
            let degrees: Vec<usize> = r.angles().map(|e| r.degree(e)).collect();
            ensure(degrees == [3, 3, 3, 3], || format!("degree profile {degrees:?}"))?;
            let fixed: Vec<_> = r.angles().filter(|&e| r.succ(e) == e).collect();
            ensure(
                fixed.len() == 1 && r.f_degree(r.orbit_of(fixed[0])) == Ratio::from_integer(3),
                || "fixed angle does not have f-degree 3".into(),
            )?;
        }
    }
    Ok(())
}

fn sigma_properties(c: &Configuration) -> Outcome {
    let nm = c.nakayama_map();
    let bijective = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
    ensure(bijective(&nm.angles) && bijective(&nm.polygons) && bijective(&nm.blocks), || "σ not bijective".into())?;
    let q = Quiver::from_config(c);
    for a in &q.arrows {
        let b = q.arrow(nm.blocks[a.index]).expect("arrow");
        ensure(b.source == nm.polygons[a.source] && b.target == nm.polygons[a.target], || {
            format!("σ does not map arrow {} compatibly", a.id)
        })?;
    }
    Ok(())
}

fn type_s_properties(c: &Configuration) -> Outcome {
    let t = table(c)?;
    let nm = c.nakayama_map();
    let n = t.num_vertices();
    for x in 0..n {
        for y in 0..n {
            ensure(t.dim(x, y) == t.dim(y, nm.polygons[x]), || format!("dim({x},{y}) ≠ dim({y},σ{x})"))?;
        }
    }
    let diagrams = loewy_diagrams(&t);
    for x in 0..n {
        let d = &diagrams[nm.polygons[x]];
        ensure(d.socle == [x], || format!("soc P_σ({x}) = {:?}", d.socle))?;
    }
    let f = frobenius_check(&t, c);
    nakayama_consistency(&t, c, &f).map_err(|e| e.to_string())?;
    t.check_associativity().map_err(|w| format!("associativity fails at {w:?}"))?;
    ensure(t.radical_nilpotency() <= c.length_bound(), || "radical nilpotency exceeds N".into())
}

fn general_properties(c: &Configuration) -> Outcome {
    let t = table(c)?;
    t.check_associativity().map_err(|w| format!("associativity fails at {w:?}"))?;
    ensure(t.radical_nilpotency() <= c.length_bound(), || "radical nilpotency exceeds N".into())?;
    let idx = SequenceIndex::new(c);
    ensure(check_type_s(c, &idx).is_ok() == check_type_s_via_f7prime(c, &idx).is_ok(), || {
        "(f7) and (f7') disagree".into()
    })
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let c = random_fbc(&mut rng, RandomParams::default());
        let dump = || io::configuration_to_json(&c);
        sigma_properties(&c).map_err(|e| format!("f-BC #{i}: {e}\n{}", dump()))?;
        general_properties(&c).map_err(|e| format!("f-BC #{i}: {e}\n{}", dump()))?;
    }
    for i in 0..500 {
        let c = random_type_s(&mut rng, RandomParams::default());
        type_s_properties(&c).map_err(|e| format!("type S #{i}: {e}\n{}", io::configuration_to_json(&c)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("classification golden set", criterion_1),
        ("relation lists", criterion_2),
        ("degenerate collapse", criterion_3),
        ("Loewy shapes", criterion_4),
        ("Frobenius suite", criterion_5),
        ("oracle equivalence", criterion_6),
        ("Gabriel reduction", criterion_7),
        ("multiserial verdicts", criterion_8),
        ("conditions (D)/(C)", criterion_9),
        ("round-trip reconstruction", criterion_10),
        ("property suites", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({took:.1?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
