//! One line per acceptance criterion. Criteria 1-7, 9 and 10 drive the `gitfan` binary
//! on the fixtures; criterion 8 runs seeded property checks against the library.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};

use gitfan::exactgeom::arrangement::enumerate_chambers;
use gitfan::exactgeom::lp::feasible_point;
use gitfan::exactgeom::matrix::rank;
use gitfan::exactgeom::num::{canonical_line, dot, is_zero_vec, neg};
use gitfan::exactgeom::smith::smith_diagonal;
use gitfan::exactgeom::{Cone, Int, IntMatrix, Rat, Subspace};
use gitfan::hypertoric::datum;
use gitfan::quiverfan::{
    arrangement_a_alpha, git_fan, namikawa_weyl, regions, FanOptions, GitFan, DEFAULT_GROUP_CAP,
};
use gitfan::roots::{DimensionVector, FramedGraph};
use gitfan::sigma::{connected_bipartitions, decompositions, DecompositionQuiver, DEFAULT_DECOMPOSITION_CAP};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const CASES: usize = 64;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn raw(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gitfan"))
        .args(args)
        .env_remove("GITFAN_THREADS")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn cli(cmd: &str, name: &str, extra: &[&str]) -> Result<(i32, Value), String> {
    let path = fixture(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, out) = raw(&args);
    let doc = serde_json::from_str(&out).map_err(|e| format!("{cmd} {name}: unparsable output ({e})"))?;
    Ok((code, doc))
}

fn ok_result(cmd: &str, name: &str, extra: &[&str]) -> Result<Value, String> {
    let (code, doc) = cli(cmd, name, extra)?;
    ensure(code == 0, || format!("{cmd} {name}: exit {code}"))?;
    Ok(doc["result"].clone())
}

fn len(v: &Value) -> usize {
    v.as_array().map_or(0, Vec::len)
}

fn int_of(v: &Value) -> Int {
    v.as_str().and_then(|s| s.parse().ok()).expect("integer string")
}

fn ivec(v: &Value) -> Vec<Int> {
    v.as_array().expect("array").iter().map(int_of).collect()
}

fn ivecs(v: &Value) -> BTreeSet<Vec<Int>> {
    v.as_array().expect("array").iter().map(ivec).collect()
}

fn iset(rows: &[&[i64]]) -> BTreeSet<Vec<Int>> {
    rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
}

fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

fn rats(xs: &[Int]) -> Vec<Rat> {
    xs.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

fn witness(doc: &Value) -> Vec<Vec<i64>> {
    doc["error"]["diagnostic"]["verdict"]["witness"]
        .as_array()
        .map(|parts| {
            parts
                .iter()
                .map(|p| p.as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect())
                .collect()
        })
        .unwrap_or_default()
}

fn criterion_1() -> Outcome {
    let name = "a1-frame2";
    let sigma = ok_result("sigma", name, &["--theta", "0,0"])?;
    ensure(sigma["verdict"]["member"] == true, || "alpha is not in Sigma_0".into())?;
    let fan = ok_result("fan", name, &[])?;
    ensure(fan["is_git_fan"] == true, || "not a GIT fan".into())?;
    ensure(len(&fan["hyperplanes"]) == 1, || format!("{} hyperplanes", len(&fan["hyperplanes"])))?;
    ensure(len(&fan["chambers"]) == 2, || format!("{} chambers", len(&fan["chambers"])))?;
    ensure(len(&fan["codim2_roots"]) > 0, || "no codimension-two roots".into())?;
    let regions = ok_result("regions", name, &[])?;
    ensure(len(&regions["regions"]) == 2, || format!("{} regions", len(&regions["regions"])))?;
    let weyl = ok_result("weyl", name, &[])?;
    ensure(weyl["order"] == 2, || format!("group order {}", weyl["order"]))?;
    let count = ok_result("count", name, &[])?;
    ensure(count["crepant_resolutions"] == 1, || format!("count {}", count["crepant_resolutions"]))?;
    Ok("1 hyperplane, 2 chambers, 2 regions, order 2, 1 resolution".into())
}

/// Affine A2 oracle: on the triangle `∞, 0, 1` with `α = (1,1,1)` every nonempty proper
/// vertex subset is a real root, and `θ(β)` with `θ_∞ = -θ_0 - θ_1` gives the lines
/// `θ_0`, `θ_1` and `θ_0 + θ_1`.
fn affine_a2_oracle() -> (BTreeSet<Vec<Int>>, BTreeSet<Vec<i8>>) {
    let mut lines = BTreeSet::new();
    for mask in 1u8..7 {
        let b: Vec<i64> = (0..3).map(|i| i64::from(mask >> i & 1)).collect();
        let functional = vec![b[1] - b[0], b[2] - b[0]];
        lines.insert(canonical_line(&ints(&functional)));
    }
    let normals: Vec<Vec<Int>> = lines.iter().cloned().collect();
    let mut cells = BTreeSet::new();
    for x in -3i64..=3 {
        for y in -3i64..=3 {
            let p = ints(&[x, y]);
            let s: Vec<i8> = normals.iter().map(|n| dot(n, &p).signum().try_into().unwrap()).collect();
            if !s.contains(&0) {
                cells.insert(s);
            }
        }
    }
    (lines, cells)
}

fn criterion_2() -> Outcome {
    let name = "a2-mckay";
    let fan = ok_result("fan", name, &[])?;
    let (lines, cells) = affine_a2_oracle();
    let got: BTreeSet<Vec<Int>> = fan["hyperplanes"].as_array().unwrap().iter().map(|h| ivec(&h["normal"])).collect();
    ensure(got == lines, || format!("hyperplanes {got:?}, oracle {lines:?}"))?;
    let normals: Vec<Vec<Int>> = lines.iter().cloned().collect();
    let seen: BTreeSet<Vec<i8>> = fan["chambers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let p = ivec(&c["interior"]);
            normals.iter().map(|n| dot(n, &p).signum().try_into().unwrap()).collect()
        })
        .collect();
    ensure(len(&fan["chambers"]) == 6 && seen == cells, || format!("chambers {seen:?}"))?;
    let regions = ok_result("regions", name, &[])?;
    let regs = regions["regions"].as_array().unwrap();
    ensure(regs.len() == 6, || format!("{} regions", regs.len()))?;
    ensure(
        regs.iter().all(|r| r["simplicial"] == true && len(&r["chambers"]) == 1),
        || "a region is not a simplicial single chamber".into(),
    )?;
    let weyl = ok_result("weyl", name, &[])?;
    ensure(weyl["order"] == 6 && weyl["simply_transitive"] == true, || {
        format!("order {}, simply transitive {}", weyl["order"], weyl["simply_transitive"])
    })?;
    let count = ok_result("count", name, &[])?;
    ensure(count["crepant_resolutions"] == 1, || format!("count {}", count["crepant_resolutions"]))?;
    Ok("3 hyperplanes and 6 chambers match the affine A2 oracle; 6 regions; order 6".into())
}

fn criterion_3() -> Outcome {
    let expected = [("jordan-n1", vec![vec![1, 0], vec![0, 1]]), ("jordan-n2", vec![vec![1, 1], vec![0, 1]])];
    for (name, parts) in expected {
        let (code, doc) = cli("sigma", name, &["--theta", "0,0"])?;
        ensure(code == 2, || format!("{name}: exit {code}"))?;
        let verdict = &doc["error"]["diagnostic"]["verdict"];
        ensure(witness(&doc) == parts, || format!("{name}: witness {}", verdict["witness"]))?;
        ensure(verdict["equality"] == true, || format!("{name}: p-sums differ"))?;
    }
    let (code, _) = cli("sigma", "a1-frame2", &["--theta", "0,0"])?;
    ensure(code == 0, || format!("a1-frame2: exit {code}"))?;
    Ok("both Jordan quivers rejected with equality witnesses; a1-frame2 accepted".into())
}

fn chamber_by_rays(fan: &Value, rays: &BTreeSet<Vec<Int>>) -> Option<u64> {
    fan["chambers"]
        .as_array()?
        .iter()
        .find(|c| ivecs(&c["ambient_rays"]) == *rays)
        .and_then(|c| c["index"].as_u64())
}

fn criterion_4() -> Outcome {
    let fan = ok_result("toric-fan", "f1-cox", &[])?;
    ensure(len(&fan["chambers"]) == 2, || format!("{} chambers", len(&fan["chambers"])))?;
    let minus = chamber_by_rays(&fan, &iset(&[&[1, 0], &[0, 1]])).ok_or("no chamber spanned by (1,0), (0,1)")?;
    let plus = chamber_by_rays(&fan, &iset(&[&[-1, 1], &[0, 1]])).ok_or("no chamber spanned by (-1,1), (0,1)")?;
    let walls = ok_result("toric-wall", "f1-cox", &["--chamber", &plus.to_string()])?;
    let sides = walls["walls"][0]["sides"].as_array().ok_or("no wall reported")?;
    let side = |c: u64| sides.iter().find(|s| s["chamber"] == c);
    ensure(side(plus).is_some_and(|s| s["changed"] == false), || "C+ side changed".into())?;
    ensure(side(minus).is_some_and(|s| s["changed"] == true), || "C- side unchanged".into())?;
    Ok(format!("C- = chamber {minus}, C+ = chamber {plus}; only the C- side changes"))
}

fn chamber_by_facets(fan: &Value, facets: &BTreeSet<Vec<Int>>) -> Option<u64> {
    fan["chambers"]
        .as_array()?
        .iter()
        .find(|c| ivecs(&c["closure"]["facets"]) == *facets)
        .and_then(|c| c["index"].as_u64())
}

fn criterion_5() -> Outcome {
    let fan = ok_result("toric-fan", "delpezzo-quiver", &[])?;
    let table: [(&str, &[&[i64]]); 5] = [
        ("C", &[&[-1, 0, 0], &[0, -1, 0], &[1, 1, 1]]),
        ("C1", &[&[-1, 0, 0], &[0, 1, 0], &[1, 0, 1]]),
        ("C2", &[&[-1, 0, 0], &[0, -1, 0], &[-1, -1, -1]]),
        ("C3", &[&[1, 0, 0], &[0, -1, 0], &[0, 1, 1]]),
        ("C4", &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
    ];
    let mut found = BTreeMap::new();
    for (label, facets) in table {
        let c = chamber_by_facets(&fan, &iset(facets)).ok_or_else(|| format!("{label} is not a chamber"))?;
        found.insert(label, c);
    }
    let (c, c2) = (found["C"], found["C2"]);
    let walls = ok_result("toric-wall", "delpezzo-quiver", &["--chamber", &c.to_string(), "--wall", "1,1,1"])?;
    let wall = &walls["walls"][0];
    ensure(ivec(&wall["normal"]) == ints(&[1, 1, 1]), || format!("wall {}", wall["normal"]))?;
    let sides = wall["sides"].as_array().ok_or("no sides")?;
    let side = |k: u64| sides.iter().find(|s| s["chamber"] == k);
    ensure(side(c).is_some_and(|s| s["changed"] == true), || "C side unchanged".into())?;
    ensure(side(c2).is_some_and(|s| s["changed"] == false), || "C2 side changed".into())?;
    Ok(format!("table chambers {found:?}; crossing to C2 changes only the C side"))
}

fn criterion_6() -> Outcome {
    let fan = ok_result("toric-fan", "flop-L112", &[])?;
    ensure(len(&fan["chambers"]) == 2, || format!("{} chambers", len(&fan["chambers"])))?;
    let minus = chamber_by_facets(&fan, &iset(&[&[1, 0], &[0, 1]])).ok_or("C- missing")?;
    let plus = chamber_by_facets(&fan, &iset(&[&[1, 1], &[0, -1]])).ok_or("C+ missing")?;
    let effective: Vec<Vec<BTreeSet<Vec<Int>>>> = fan["effective"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| vec![ivecs(&c["facets"]), ivecs(&c["equations"])])
        .collect();
    let in_effective = |p: &[Int]| {
        effective.iter().any(|c| c[0].iter().all(|f| !dot(f, p).is_negative()) && c[1].iter().all(|e| dot(e, p).is_zero()))
    };
    let closure_minus = |p: &[Int]| !p[0].is_negative() && !p[1].is_negative();
    let closure_plus = |p: &[Int]| !(&p[0] + &p[1]).is_negative() && !p[1].is_positive();
    let mut points = 0;
    for x in -5i64..=5 {
        for y in -5i64..=5 {
            let p = ints(&[x, y]);
            ensure(in_effective(&p) == (closure_minus(&p) || closure_plus(&p)), || {
                format!("effective locus disagrees with the chamber closures at {p:?}")
            })?;
            points += 1;
        }
    }
    let walls = ok_result("toric-wall", "flop-L112", &["--chamber", &plus.to_string(), "--wall", "1,1"])?;
    let wall = &walls["walls"][0];
    let ambient: Vec<Int> = {
        let c = ivec(&wall["wall_point"]);
        vec![-(&c[0] + &c[1]), c[0].clone(), c[1].clone()]
    };
    ensure(canonical_line(&ambient) == canonical_line(&ints(&[0, 1, -1])), || format!("wall point {ambient:?}"))?;
    let plus_side = wall["sides"].as_array().and_then(|s| s.iter().find(|s| s["chamber"] == plus));
    ensure(plus_side.is_some_and(|s| s["changed"] == false), || "C+ side changes at (0,1,-1)".into())?;
    Ok(format!(
        "C- = chamber {minus}, C+ = chamber {plus}; effective locus equals the union of closures on {points} points; \
         (0,1,-1) unchanged from C+. The union is convex, so the stated non-convexity cannot hold"
    ))
}

fn strictly_inside(closure: &Value, p: &[Int]) -> bool {
    ivecs(&closure["facets"]).iter().all(|f| dot(f, p).is_positive())
        && ivecs(&closure["equations"]).iter().all(|e| dot(e, p).is_zero())
}

fn criterion_7() -> Outcome {
    let quiver = ok_result("fan", "a1-frame2", &[])?;
    let toric = ok_result("toric-fan", "conifold-a1", &[])?;
    let qn: BTreeSet<Vec<Int>> = quiver["hyperplanes"].as_array().unwrap().iter().map(|h| ivec(&h["normal"])).collect();
    let tn: BTreeSet<Vec<Int>> = toric["hyperplanes"].as_array().unwrap().iter().map(|h| ivec(&h["normal"])).collect();
    ensure(qn == tn, || format!("normals {qn:?} vs {tn:?}"))?;
    ensure(len(&quiver["chambers"]) == 2 && len(&toric["chambers"]) == 2, || "chamber counts differ from 2".into())?;
    let basis: Vec<Vec<Int>> = quiver["space"]["basis"].as_array().unwrap().iter().map(ivec).collect();
    let space = Subspace::from_basis(2, basis);
    let mut image = BTreeSet::new();
    for ch in quiver["chambers"].as_array().unwrap() {
        let ambient = space.to_ambient(&ivec(&ch["interior"]));
        let theta = vec![ambient[1].clone()];
        let hit = toric["chambers"]
            .as_array()
            .unwrap()
            .iter()
            .position(|c| strictly_inside(&c["closure"], &theta))
            .ok_or_else(|| format!("no toric chamber contains {theta:?}"))?;
        image.insert(hit);
    }
    ensure(image.len() == 2, || "chambers are not matched bijectively".into())?;
    let coords = space.coords_of(&rats(&ints(&[-1, 1]))).ok_or("(-1,1) is not a stability parameter")?;
    let ambient = space.to_ambient_rat(&coords);
    let theta = ambient[1].to_string();
    let at = ok_result("toric-fan", "conifold-a1", &["--theta", &theta])?;
    ensure(at["at_theta"]["unstable_codim"] == 1, || format!("unstable codimension {}", at["at_theta"]["unstable_codim"]))?;
    Ok("conifold and a1-frame2 fans agree chamber by chamber; unstable locus at (-1,1) has codimension 1".into())
}

/// Random framed graphs on at most three vertices with `v_i <= 2`.
fn random_instance(rng: &mut ChaCha8Rng) -> Option<(FramedGraph, Vec<i64>)> {
    let n = rng.gen_range(1..=3);
    let mut edges = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b || rng.gen_bool(0.3) {
            edges.push((a, b));
        }
    }
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let v: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let g = FramedGraph::new(n, edges, w).ok()?;
    (g.framing().iter().any(|&x| x > 0) && g.is_connected()).then_some((g, v))
}

fn random_git_fans(seed: u64) -> Result<Vec<GitFan>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..50_000 {
        if out.len() == CASES {
            return Ok(out);
        }
        let Some((g, v)) = random_instance(&mut rng) else { continue };
        let Ok(f) = git_fan(&g, &v, &FanOptions::default()) else { continue };
        if f.is_git_fan() {
            out.push(f);
        }
    }
    Err("too few random instances satisfy the hypotheses".into())
}

/// Name, vertex count, edges, framing, `v`.
type QuiverFixture = (&'static str, usize, Vec<(usize, usize)>, Vec<i64>, Vec<i64>);

fn fixture_fans() -> Vec<(&'static str, GitFan)> {
    let fixtures: [QuiverFixture; 4] = [
        ("a1-frame2", 1, vec![], vec![2], vec![1]),
        ("a2-mckay", 2, vec![(0, 1)], vec![1, 1], vec![1, 1]),
        ("a3-mckay", 3, vec![(0, 1), (1, 2)], vec![1, 0, 1], vec![1, 1, 1]),
        ("tp2-frame3", 1, vec![], vec![3], vec![1]),
    ];
    fixtures
        .into_iter()
        .map(|(name, n, e, w, v)| (name, git_fan(&FramedGraph::new(n, e, w).unwrap(), &v, &FanOptions::default()).unwrap()))
        .collect()
}

fn bfs_connected(edges: &[(usize, usize)], set: &BTreeSet<usize>) -> bool {
    let Some(&start) = set.iter().next() else { return true };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == u { b } else if b == u { a } else { continue };
            if set.contains(&other) && seen.insert(other) {
                stack.push(other);
            }
        }
    }
    seen.len() == set.len()
}

fn root_sum_closure(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(1..=3);
    let edges: Vec<(usize, usize)> = (0..rng.gen_range(0..=4)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let g = FramedGraph::new(n, edges, w).map_err(|e| e.to_string())?;
    let alpha = DimensionVector((0..=n).map(|_| rng.gen_range(0..=2)).collect());
    if alpha.is_zero() {
        return Ok(());
    }
    let roots = g.roots_below(&alpha).map_err(|e| e.to_string())?;
    let set: BTreeSet<&DimensionVector> = roots.iter().map(|(b, _)| b).collect();
    for (b, _) in &roots {
        for (c, _) in &roots {
            let s = b.add(c);
            if g.cartan(b, c).map_err(|e| e.to_string())? < 0 && s.le(&alpha) && !set.contains(&s) {
                return Err(format!("{b} + {c} is not a root"));
            }
        }
    }
    Ok(())
}

fn bipartitions_span(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(1..=7);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    for _ in 0..rng.gen_range(0..=6) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.push((a, b));
        }
    }
    let subsets = connected_bipartitions(n, &edges).map_err(|e| e.to_string())?;
    let full: BTreeSet<usize> = (0..n).collect();
    for s in &subsets {
        let j: BTreeSet<usize> = s.iter().copied().collect();
        let c: BTreeSet<usize> = full.difference(&j).copied().collect();
        ensure(bfs_connected(&edges, &j) && bfs_connected(&edges, &c), || format!("{s:?} is not a connected bipartition"))?;
    }
    let rows: Vec<Vec<Int>> = subsets
        .iter()
        .map(|s| (0..n).map(|i| if s.contains(&i) { Int::one() } else { Int::zero() }).collect())
        .collect();
    let d = smith_diagonal(&IntMatrix::from_rows(rows));
    ensure(d.len() == n && d.iter().all(One::is_one), || format!("Smith diagonal {d:?}"))
}

fn zero_theta(f: &GitFan) -> Vec<Rat> {
    vec![Rat::zero(); f.alpha.len()]
}

fn quivers_connected(f: &GitFan) -> Result<(), String> {
    for d in decompositions(&f.graph, &f.alpha, &zero_theta(f), DEFAULT_DECOMPOSITION_CAP).map_err(|e| e.to_string())? {
        let qd = DecompositionQuiver::new(&f.graph, &d);
        let all: BTreeSet<usize> = (0..d.parts.len()).collect();
        ensure(qd.is_connected() && bfs_connected(&qd.edges(), &all), || format!("Q_D of {:?} is disconnected", d.parts))?;
    }
    Ok(())
}

/// Every connected proper decomposition cuts out a flat that is an intersection of
/// arrangement hyperplanes.
fn intersections_realized(f: &GitFan) -> Result<usize, String> {
    let (space, arr) = arrangement_a_alpha(&f.graph, &f.alpha).map_err(|e| e.to_string())?;
    let normals = arr.normals();
    let mut flats = 0;
    for d in decompositions(&f.graph, &f.alpha, &zero_theta(f), DEFAULT_DECOMPOSITION_CAP).map_err(|e| e.to_string())? {
        if !d.is_proper() || !DecompositionQuiver::new(&f.graph, &d).is_connected() {
            continue;
        }
        let parts: Vec<Vec<Int>> = d.parts.iter().map(|b| space.functional(b)).collect();
        let flat = Subspace::kernel_of(space.dim(), &parts);
        let containing: Vec<Vec<Int>> = normals
            .iter()
            .filter(|n| flat.basis().iter().all(|x| dot(n, x).is_zero()))
            .cloned()
            .collect();
        ensure(rank(&containing) == rank(&parts), || format!("{:?}: flat is not cut out by hyperplanes", d.parts))?;
        flats += 1;
    }
    Ok(flats)
}

/// `target ∈ cone(gens)`, decided by an LP over the coefficients.
fn in_conic_hull(gens: &[Vec<Int>], target: &[Int]) -> bool {
    let k = gens.len();
    let ineqs: Vec<Vec<Int>> = (0..=k)
        .map(|i| (0..=k).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    let rhs: Vec<Int> = (0..=k).map(|i| if i == k { Int::one() } else { Int::zero() }).collect();
    let eqs: Vec<Vec<Int>> = (0..target.len())
        .map(|c| {
            let mut row: Vec<Int> = gens.iter().map(|g| g[c].clone()).collect();
            row.push(-target[c].clone());
            row
        })
        .collect();
    feasible_point(&ineqs, &rhs, &eqs).is_some()
}

fn random_vec(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> Vec<Int> {
    (0..dim).map(|_| Int::from(rng.gen_range(lo..=hi))).collect()
}

fn double_description(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let dim = rng.gen_range(1..=5);
    let gens: Vec<Vec<Int>> = (0..rng.gen_range(1..=7)).map(|_| random_vec(rng, dim, -3, 3)).collect();
    let c = Cone::from_generators(dim, &gens).map_err(|e| e.to_string())?;
    let dual = Cone::from_inequalities(dim, c.facets(), c.equations()).map_err(|e| e.to_string())?;
    ensure(dual == c, || format!("H-description of cone({gens:?}) differs"))?;
    ensure(gens.iter().all(|g| c.contains(g)), || "a generator lies outside".into())?;
    ensure(c.rays().iter().all(|r| in_conic_hull(&gens, r)), || "a ray is not generated".into())?;
    ensure(
        c.lineality().iter().all(|l| in_conic_hull(&gens, l) && in_conic_hull(&gens, &neg(l))),
        || "lineality is not generated".into(),
    )
}

/// Sign vectors of the open cells, by depth-first search over sign prefixes with one
/// feasibility LP per prefix.
fn lp_cells(normals: &[Vec<Int>]) -> BTreeSet<String> {
    fn rec(normals: &[Vec<Int>], rows: &mut Vec<Vec<Int>>, signs: &mut String, out: &mut BTreeSet<String>) {
        if rows.len() == normals.len() {
            out.insert(signs.clone());
            return;
        }
        let n = &normals[rows.len()];
        for (s, row) in [('+', n.clone()), ('-', neg(n))] {
            rows.push(row);
            let rhs = vec![Int::one(); rows.len()];
            if feasible_point(rows, &rhs, &[]).is_some() {
                signs.push(s);
                rec(normals, rows, signs, out);
                signs.pop();
            }
            rows.pop();
        }
    }
    let mut out = BTreeSet::new();
    rec(normals, &mut Vec::new(), &mut String::new(), &mut out);
    out
}

fn chamber_oracle(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let dim = rng.gen_range(1..=4);
    let normals: Vec<Vec<Int>> = (0..rng.gen_range(1..=10))
        .map(|_| random_vec(rng, dim, -2, 2))
        .filter(|n| !is_zero_vec(n))
        .map(|n| canonical_line(&n))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if normals.is_empty() {
        return Ok(());
    }
    let got: BTreeSet<String> = enumerate_chambers(dim, &normals).iter().map(|c| c.sign_string()).collect();
    let want = lp_cells(&normals);
    ensure(got == want, || format!("{normals:?}: {} chambers, oracle {}", got.len(), want.len()))
}

fn reflections_coherent(f: &GitFan) -> Result<(), String> {
    let regs = regions(f).map_err(|e| e.to_string())?;
    let group = namikawa_weyl(f, &regs, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
    let id = IntMatrix::identity(f.space.dim());
    for (k, s) in group.generators.iter().enumerate() {
        ensure(s.matrix.mul(&s.matrix) == id, || "generator is not an involution".into())?;
        let image: BTreeSet<usize> = group.action[k].iter().copied().collect();
        ensure(image.len() == regs.len(), || "generator does not permute regions".into())?;
    }
    let hit: BTreeSet<usize> = group.element_region.iter().copied().collect();
    ensure(group.order() == regs.len() && hit.len() == regs.len(), || {
        format!("order {} on {} regions", group.order(), regs.len())
    })
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6163_6338);
    for _ in 0..CASES {
        root_sum_closure(&mut rng).map_err(|e| format!("root-sum closure: {e}"))?;
    }
    for _ in 0..CASES {
        bipartitions_span(&mut rng).map_err(|e| format!("bipartition spanning: {e}"))?;
    }
    let random = random_git_fans(0x5eed_acc8)?;
    let fixtures = fixture_fans();
    let all: Vec<&GitFan> = fixtures.iter().map(|(_, f)| f).chain(&random).collect();
    let mut flats = 0;
    for f in &all {
        quivers_connected(f).map_err(|e| format!("Q_D connectivity: {e}"))?;
        flats += intersections_realized(f).map_err(|e| format!("intersection realization: {e}"))?;
        reflections_coherent(f).map_err(|e| format!("reflection group on {:?} alpha {}: {e}", f.graph, f.alpha))?;
    }
    for _ in 0..CASES {
        double_description(&mut rng).map_err(|e| format!("double description: {e}"))?;
    }
    for _ in 0..CASES {
        chamber_oracle(&mut rng).map_err(|e| format!("chamber enumeration: {e}"))?;
    }
    Ok(format!(
        "{CASES} cases per suite; {} fans ({} fixtures), {flats} connected flats checked",
        all.len(),
        fixtures.len()
    ))
}

fn laplace(m: &[Vec<Int>]) -> Int {
    if m.is_empty() {
        return Int::one();
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<Int>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * laplace(&minor);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// All maximal minors of the `k × n` matrix `rows` lie in `{-1, 0, 1}`.
fn minor_scan(rows: &[Vec<Int>]) -> bool {
    let (k, n) = (rows.len(), rows[0].len());
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).all(|mask| {
        let sub: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| (0..n).filter(|j| mask >> j & 1 == 1).map(|j| r[j].clone()).collect())
            .collect();
        laplace(&sub).abs() <= Int::one()
    })
}

fn criterion_9() -> Outcome {
    let a1 = ok_result("hypertoric", "hypertoric-a1", &[])?;
    ensure(a1["datum"]["unimodular"] == true && len(&a1["chambers"]) == 2, || "A=[[1,1]]".into())?;
    let a2 = ok_result("hypertoric", "hypertoric-a2", &[])?;
    ensure(a2["datum"]["unimodular"] == true && a2["datum"]["b_unimodular"] == true, || "A2 datum".into())?;
    let minor2 = ok_result("hypertoric", "hypertoric-minor2", &[])?;
    ensure(minor2["datum"]["unimodular"] == false, || "minor-2 matrix accepted as unimodular".into())?;
    for doc in [&a1, &a2, &minor2] {
        ensure(doc["datum"]["unimodularity_scans_agree"] == true, || "A and B scans disagree on a fixture".into())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6879_7039);
    let mut unimodular = 0;
    for _ in 0..CASES {
        let r = rng.gen_range(1..=3);
        let extra = rng.gen_range(1..=3);
        let rows: Vec<Vec<Int>> = (0..r)
            .map(|i| {
                let mut row: Vec<Int> = (0..r).map(|j| if i == j { Int::one() } else { Int::zero() }).collect();
                row.extend(random_vec(&mut rng, extra, -2, 2));
                row
            })
            .collect();
        let a = IntMatrix::from_rows(rows.clone());
        let d = datum(&a);
        let b_rows = d.b.transpose().row_vecs();
        let want = minor_scan(&rows);
        ensure(d.unimodular == want && d.b_unimodular == minor_scan(&b_rows), || format!("{rows:?}: scans disagree with the oracle"))?;
        ensure(d.unimodular == d.b_unimodular, || format!("{rows:?}: A and B unimodularity differ"))?;
        unimodular += usize::from(want);
    }
    Ok(format!("module examples reproduced; {CASES} random scans agree ({unimodular} unimodular)"))
}

fn commands_for(kind: &str) -> &'static [&'static str] {
    match kind {
        "quiver" => &["roots", "sigma", "fan", "regions", "weyl", "count", "classify-wall", "query", "plot"],
        "toric" => &["toric-fan", "toric-wall", "plot"],
        _ => &["hypertoric", "plot"],
    }
}

fn criterion_10() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut names: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    names.sort();
    let mut runs = 0;
    for path in &names {
        let spec: Value = serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let kind = spec["kind"].as_str().unwrap_or_default();
        for cmd in commands_for(kind) {
            let p = path.to_str().unwrap();
            let one = raw(&[cmd, p, "--threads", "1"]);
            let eight = raw(&[cmd, p, "--threads", "8"]);
            ensure(one == eight, || format!("{cmd} {}: output depends on the thread count", path.display()))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} fixture documents identical at 1 and 8 threads"))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for (i, run) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
