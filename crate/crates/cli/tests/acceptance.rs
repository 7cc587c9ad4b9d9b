//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use relmod::classify::{decompose_translation, in_submodule_basis, precedes_one, separation_collisions};
use relmod::findim::{build_finite_dimensional, finite_dimensional_module};
use relmod::sample::random_realization;
use relmod::tableau::integer_difference;
use relmod::{presets, verify_axioms, Action, Arrow, Generator, RelationModule, ShiftVector, Vertex};

const PRNG_SEED: u64 = 20_240_517;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_str().expect("utf-8 path").to_owned()
}

fn relmod(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relmod"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn v(row: usize, col: usize) -> Vertex {
    Vertex::new(row, col)
}

fn arrow_of(json: &Value) -> Arrow {
    let p = |k: &str| v(json[k][0].as_u64().unwrap() as usize, json[k][1].as_u64().unwrap() as usize);
    Arrow::new(p("from"), p("to"))
}

fn classify_json(graph: &str, seed: &str) -> Result<Value, String> {
    let (code, out) = relmod(&["classify", "--graph", &corpus(graph), "--tableau", &corpus(seed), "--radius", "4", "--emit", "json"]);
    if code != 0 {
        return Err(format!("classify exited with {code}"));
    }
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn signatures_of(report: &Value) -> Vec<BTreeSet<Arrow>> {
    report["signatures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["edges"].as_array().unwrap().iter().map(arrow_of).collect())
        .collect()
}

/// `l_a - l_b` at `T(L + z)`, when integral.
fn entry_diff(m: &RelationModule, z: &ShiftVector, a: Vertex, b: Vertex) -> Option<i64> {
    let t = m.tableau(z);
    integer_difference(t.get(a), t.get(b))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome, String>) -> (Outcome, Duration) {
    let start = Instant::now();
    let out = f().unwrap_or_else(|e| check(false, e));
    let elapsed = start.elapsed();
    match limit {
        Some(l) if elapsed > l => (check(false, format!("{}; over the {:?} limit", out.detail, l)), elapsed),
        _ => (out, elapsed),
    }
}

/// Which of the four families the tableau falls in, read off the entry
/// differences `l21 - l31` and `l11 - l22`: 1 if both positive, 2 if only
/// `l22 >= l11`, 3 if only `l31 >= l21`, 4 if both reversed.
fn rank3_family(m: &RelationModule, z: &ShiftVector) -> usize {
    let a = entry_diff(m, z, v(2, 1), v(3, 1)).unwrap() > 0;
    let b = entry_diff(m, z, v(1, 1), v(2, 2)).unwrap() > 0;
    match (a, b) {
        (true, true) => 1,
        (true, false) => 2,
        (false, true) => 3,
        (false, false) => 4,
    }
}

fn rank3_classification() -> Result<Outcome, String> {
    let report = classify_json("rank3_graph.json", "rank3_seed.json")?;
    let sigs = signatures_of(&report);
    if sigs.len() != 4 {
        return Ok(check(false, format!("{} signatures", sigs.len())));
    }
    let b2 = Arrow::new(v(2, 2), v(1, 1));
    let b3 = Arrow::new(v(3, 1), v(2, 1));
    let expected: Vec<BTreeSet<Arrow>> = vec![
        BTreeSet::new(),
        [b2].into(),
        [b3].into(),
        [b2, b3].into(),
    ];
    for (i, e) in expected.iter().enumerate() {
        if !sigs.contains(e) {
            return Ok(check(false, format!("family B{} signature missing", i + 1)));
        }
    }
    // every window tableau carries the signature of its family
    let m = RelationModule::new(presets::rank3_graph(), presets::rank3_seed()).map_err(|e| e.to_string())?;
    let window = m.window(4);
    let mut counts = [0u64; 4];
    for z in &window {
        let fam = rank3_family(&m, z);
        counts[fam - 1] += 1;
        let sig: BTreeSet<Arrow> = m.signature(z).iter().copied().collect();
        if sig != expected[fam - 1] {
            return Ok(check(false, format!("[{z}] in B{fam} has signature {}", m.signature(z))));
        }
    }
    for (i, s) in sigs.iter().enumerate() {
        let fam = expected.iter().position(|e| e == s).unwrap();
        if report["signatures"][i]["count"].as_u64() != Some(counts[fam]) {
            return Ok(check(false, format!("count mismatch for B{}", fam + 1)));
        }
    }
    let idx = |fam: usize| Value::from(sigs.iter().position(|s| *s == expected[fam]).unwrap());
    let unique_max = report["maximal"].as_array().map(|a| a.as_slice() == [idx(3)]) == Some(true);
    let generators = report["generators"] == idx(0);
    Ok(check(
        unique_max && generators,
        format!(
            "4 signatures over {} tableaux; B4 unique maximum: {unique_max}; B1 empty: {generators}",
            window.len()
        ),
    ))
}

fn diamond_classification() -> Result<Outcome, String> {
    let report = classify_json("diamond_graph.json", "diamond_seed.json")?;
    let pairs: Vec<Arrow> = report["pairs"].as_array().unwrap().iter().map(arrow_of).collect();
    let expected_pairs: BTreeSet<Arrow> = [
        Arrow::new(v(4, 1), v(3, 1)),
        Arrow::new(v(4, 2), v(3, 2)),
        Arrow::new(v(4, 3), v(3, 2)),
        Arrow::new(v(4, 4), v(3, 3)),
    ]
    .into();
    if pairs.iter().copied().collect::<BTreeSet<_>>() != expected_pairs {
        return Ok(check(false, format!("varying pairs {pairs:?}")));
    }
    let achieved: HashSet<BTreeSet<Arrow>> = signatures_of(&report).into_iter().collect();
    let pairs: Vec<Arrow> = expected_pairs.into_iter().collect();
    let forced = |s: &BTreeSet<Arrow>| {
        s.contains(&Arrow::new(v(4, 3), v(3, 2))) && !s.contains(&Arrow::new(v(4, 2), v(3, 2)))
    };
    let mut missing = Vec::new();
    for mask in 0u32..16 {
        let s: BTreeSet<Arrow> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if !achieved.contains(&s) {
            missing.push(s);
        }
    }
    let all_forced = missing.iter().all(forced);
    Ok(check(
        achieved.len() == 12 && missing.len() == 4 && all_forced,
        format!(
            "{} of 16 patterns achieved; missing patterns all have (4,3)->(3,2) without (4,2)->(3,2): {all_forced}",
            achieved.len()
        ),
    ))
}

fn weyl_dimension(lambda: &[i64]) -> i64 {
    let mut d = Ratio::from_integer(1i64);
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            d *= Ratio::new(lambda[i] - lambda[j] + (j - i) as i64, (j - i) as i64);
        }
    }
    assert!(d.is_integer());
    d.to_integer()
}

fn dominant_weights(n: usize, spread: i64, last: i64) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, n: usize, lo: i64, hi: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            if prefix.last() == Some(&lo) {
                out.push(prefix.clone());
            }
            return;
        }
        let top = prefix.last().copied().unwrap_or(hi);
        for x in (lo..=top).rev() {
            prefix.push(x);
            rec(prefix, n, lo, hi, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for s in 0..=spread {
        rec(&mut Vec::new(), n, last, last + s, &mut out);
    }
    out.into_iter().filter(|l| l[0] - l[n - 1] <= spread).collect::<BTreeSet<_>>().into_iter().collect()
}

fn finite_dimensional_counts() -> Result<Outcome, String> {
    let mut checked = 0;
    for n in 2..=4 {
        for last in [-2, 0, 3] {
            for lambda in dominant_weights(n, 4, last) {
                let fd = build_finite_dimensional(&lambda).map_err(|e| e.to_string())?;
                let weyl = weyl_dimension(&lambda);
                if fd.dimension() as i64 != weyl {
                    return Ok(check(false, format!("{lambda:?}: {} tableaux, Weyl {weyl}", fd.dimension())));
                }
                checked += 1;
            }
        }
    }
    let l210 = build_finite_dimensional(&[2, 1, 0]).map_err(|e| e.to_string())?.dimension();
    Ok(check(l210 == 8, format!("{checked} weights agree with the Weyl formula; (2,1,0) -> {l210}")))
}

/// A module together with a window of its basis.
struct Sample {
    label: String,
    module: RelationModule,
    window: Vec<ShiftVector>,
}

fn family_samples() -> Result<Vec<Sample>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(PRNG_SEED);
    let mut out = Vec::new();
    for (name, g) in presets::family_graphs() {
        let seed = random_realization(&g, &mut rng, 3).map_err(|e| e.to_string())?;
        let module = RelationModule::new(g, seed).map_err(|e| e.to_string())?;
        let window = module.window(3);
        out.push(Sample {
            label: format!("{name} radius 3"),
            module,
            window,
        });
    }
    Ok(out)
}

fn finite_sample() -> Result<Sample, String> {
    let module = finite_dimensional_module(&[2, 1, 0]).map_err(|e| e.to_string())?;
    let basis = build_finite_dimensional(&[2, 1, 0]).map_err(|e| e.to_string())?.basis;
    let window = basis.iter().map(|t| module.locate(t)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    Ok(Sample {
        label: "L(2,1,0)".into(),
        module,
        window,
    })
}

fn module_axioms(samples: &[&Sample]) -> Result<Outcome, String> {
    let mut details = Vec::new();
    let mut pass = true;
    for s in samples {
        let report = verify_axioms(&s.module, &s.window).map_err(|e| e.to_string())?;
        pass &= report.is_clean() && report.tableaux == s.window.len();
        details.push(format!("{}: {} tableaux, {} failures", s.label, report.tableaux, report.failures.len()));
    }
    Ok(check(pass, details.join("; ")))
}

fn closure_and_reachability(samples: &[&Sample], pairs_per_module: usize) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(PRNG_SEED + 1);
    let mut pairs = 0;
    let mut image_checks = 0;
    let mut total_steps = 0;
    for s in samples {
        let m = &s.module;
        let n = m.n();
        let gens: Vec<Generator> = Generator::chevalley(n);
        for _ in 0..pairs_per_module {
            let r = s.window.choose(&mut rng).unwrap();
            let members: Vec<&ShiftVector> = s
                .window
                .iter()
                .filter(|q| *q != r && in_submodule_basis(m, q, r).unwrap())
                .collect();
            let Some(&target) = members.choose(&mut rng) else {
                continue;
            };
            // closure
            for &g in &gens {
                for (t, _) in m.basis_image(g, target).map_err(|e| e.to_string())? {
                    image_checks += 1;
                    if !in_submodule_basis(m, &t, r).map_err(|e| e.to_string())? {
                        return Ok(check(false, format!("{}: {g} moves [{target}] out of N([{r}])", s.label)));
                    }
                }
            }
            // reachability
            let steps = decompose_translation(m, r, &(target - r)).map_err(|e| format!("{}: {e}", s.label))?;
            let mut here = r.clone();
            total_steps += steps.len();
            for step in steps {
                let next = &here + &step.to_shift(n);
                let monotone = m.contains(&next) && in_submodule_basis(m, &next, &here).map_err(|e| e.to_string())?;
                if !monotone || !precedes_one(m, &here, &next).map_err(|e| e.to_string())? {
                    return Ok(check(false, format!("{}: step {step} from [{here}] toward [{target}]", s.label)));
                }
                here = next;
            }
            if &here != target {
                return Ok(check(false, format!("{}: steps end at [{here}], not [{target}]", s.label)));
            }
            pairs += 1;
        }
    }
    Ok(check(
        pairs >= 500,
        format!(
            "{pairs} sampled pairs reached in {total_steps} unit steps; {image_checks} generator images inside the submodule"
        ),
    ))
}

fn separation(samples: &[&Sample]) -> Result<Outcome, String> {
    let mut total = 0;
    let mut collisions = 0;
    for s in samples {
        total += s.window.len();
        collisions += separation_collisions(&s.module, &s.window);
    }
    Ok(check(collisions == 0, format!("{collisions} collisions among {total} tableaux in {} windows", samples.len())))
}

fn genericity(samples: &[&Sample]) -> Result<Outcome, String> {
    let mut total = 0;
    for s in samples {
        for z in &s.window {
            total += 1;
            if !s.module.graph_at(z).difference(s.module.closure()).is_generic() {
                return Ok(check(false, format!("{}: reduced graph at [{z}] has an adjoining pair", s.label)));
            }
        }
    }
    Ok(check(true, format!("{total} reduced graphs generic")))
}

fn maximal_chains() -> Result<Outcome, String> {
    let (code, out) = relmod(&[
        "chains",
        "--graph",
        &corpus("diamond_graph.json"),
        "--tableau",
        &corpus("diamond_seed.json"),
        "--z",
        "0,0,0,0|-1,-1,-1|1,-1|-1",
    ]);
    let expected = "graph chains:\n  {(2,1),(1,1),(2,2)}\n  {(2,1),(3,2),(2,2)}\n\
                    G(T) chains:\n  {(2,1),(1,1),(2,2)}\n  {(2,1),(3,2),(2,2)}\n  {(3,1)}\n  {(3,3)}\n";
    Ok(check(code == 0 && out == expected, "two graph chains; G(T) adds {(3,1)} and {(3,3)}"))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut results: Vec<(&str, Outcome, Duration)> = Vec::new();
    let mut record = |name, (o, d): (Outcome, Duration)| results.push((name, o, d));

    record("1 rank-3 classification", timed(secs(10), rank3_classification));
    record("2 diamond classification", timed(secs(30), diamond_classification));
    record("3 finite-dimensional counts", timed(secs(30), finite_dimensional_counts));

    let setup = Instant::now();
    let samples = (|| -> Result<(Sample, Vec<Sample>, Vec<Sample>), String> {
        let finite = finite_sample()?;
        let families = family_samples()?;
        let mut small = Vec::new();
        for (label, g, t, radius) in [
            ("rank-3 radius 4", presets::rank3_graph(), presets::rank3_seed(), 4),
            ("diamond radius 4", presets::diamond_graph(), presets::diamond_tableau(), 4),
            ("closure demo radius 2", presets::closure_demo_graph(), presets::closure_demo_tableau(), 2),
        ] {
            let module = RelationModule::new(g, t).map_err(|e| e.to_string())?;
            let window = module.window(radius);
            small.push(Sample {
                label: label.into(),
                module,
                window,
            });
        }
        Ok((finite, families, small))
    })();
    let setup = setup.elapsed();
    let (finite, families, small) = match samples {
        Ok(s) => s,
        Err(e) => {
            println!("FAIL  setup: {e}");
            return ExitCode::FAILURE;
        }
    };

    let mut axioms: Vec<&Sample> = vec![&finite];
    axioms.extend(families.iter());
    let (o, d) = timed(secs(60), || module_axioms(&axioms));
    record("4 module axioms", (o, d + setup));

    let mut submodules: Vec<&Sample> = small.iter().collect();
    submodules.extend(families.iter());
    record("5 submodule closure and reachability", timed(secs(60), || closure_and_reachability(&submodules, 100)));

    let mut all: Vec<&Sample> = vec![&finite];
    all.extend(families.iter());
    all.extend(small.iter());
    record("6 separation", timed(None, || separation(&all)));
    record("7 reduced-graph genericity", timed(None, || genericity(&all)));
    record("8 maximal chains", timed(None, maximal_chains));

    let mut ok = true;
    for (name, o, d) in &results {
        ok &= o.pass;
        println!(
            "{}  {name} ({:.2}s): {}",
            if o.pass { "PASS" } else { "FAIL" },
            d.as_secs_f64(),
            o.detail
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
