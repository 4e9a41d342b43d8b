//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::Parser;
use complicial::adapters::{pi_oracle, quasicat_e, th0};
use complicial::cli::{run, Cli};
use complicial::document::ComplexDocument;
use complicial::homotopy::{
    associativity_witness, find_inverses, tau0, tau_table, tau_table_with, MonoidTable, SpherePartition, TauContext,
};
use complicial::lifting::{verify_weak_complicial, Family, Witness};
use complicial::standard::{
    complicial_delta, complicial_horn, delta, delta_dprime, delta_prime, delta_t, horn_prime, StandardComplex,
};
use complicial::{SimplexId, StratifiedSSet};
use common::{corpus, kan_nerve, qcat_nerve, th0_nerve};
use serde_json::Value;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- oracle 1

/// All weakly increasing maps [m] -> [n], generated independently of the
/// library.
fn monotone(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, lo: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(len, v, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m + 1, 0, n, &mut Vec::new(), &mut out);
    out
}

fn injective(a: &[usize]) -> bool {
    a.windows(2).all(|w| w[0] < w[1])
}

fn image_contains(a: &[usize], vs: impl IntoIterator<Item = usize>) -> bool {
    vs.into_iter().all(|v| a.contains(&v))
}

fn complicial_window(k: usize, n: usize) -> Vec<usize> {
    [k as isize - 1, k as isize, k as isize + 1]
        .into_iter()
        .filter(|&v| v >= 0 && v <= n as isize)
        .map(|v| v as usize)
        .collect()
}

/// The horn: maps missing some vertex other than k.
fn in_horn(a: &[usize], k: usize, n: usize) -> bool {
    (0..=n).any(|i| i != k && !a.contains(&i))
}

/// (simplices, thin simplices) of a constructed complex, as value lists.
fn observed(c: &StandardComplex) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
    let mut all = BTreeSet::new();
    let mut thin = BTreeSet::new();
    for x in c.sset().all_simplices() {
        let v = c.map_of(x).values().to_vec();
        if c.complex().is_thin(x) {
            thin.insert(v.clone());
        }
        all.insert(v);
    }
    (all, thin)
}

/// Oracle sets for a predicate on maps into [n] up to dimension cap. Vertices
/// are never thin in a stratification, so the predicate is applied from
/// dimension 1 on.
fn expected(
    n: usize,
    cap: usize,
    member: impl Fn(&[usize]) -> bool,
    thin: impl Fn(&[usize]) -> bool,
) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
    let mut all = BTreeSet::new();
    let mut t = BTreeSet::new();
    for m in 0..=cap {
        for a in monotone(m, n) {
            if !member(&a) {
                continue;
            }
            if m > 0 && (!injective(&a) || thin(&a)) {
                t.insert(a.clone());
            }
            all.insert(a);
        }
    }
    (all, t)
}

fn ac1() -> Outcome {
    let mut compared = 0;
    let mut compare = |what: String, c: StandardComplex, exp: (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>)| {
        compared += 1;
        let got = observed(&c);
        check(got.0 == exp.0, || format!("{what}: simplices differ"))?;
        check(got.1 == exp.1, || format!("{what}: thin sets differ"))
    };
    for n in 0..=5usize {
        let cap = n + 1;
        compare(
            format!("delta_t({n})"),
            delta_t(n, cap).map_err(|e| e.to_string())?,
            expected(n, cap, |_| true, |a| n != 0 && a.len() == n + 1 && injective(a)),
        )?;
        for k in 0..=n {
            let w = complicial_window(k, n);
            let complicial = |a: &[usize]| image_contains(a, w.iter().copied());
            compare(
                format!("comp_delta({k},{n})"),
                complicial_delta(k, n, cap).map_err(|e| e.to_string())?,
                expected(n, cap, |_| true, complicial),
            )?;
            if n >= 1 {
                compare(
                    format!("comp_horn({k},{n})"),
                    complicial_horn(k, n, cap).map_err(|e| e.to_string())?.horn,
                    expected(n, cap, |a| in_horn(a, k, n), complicial),
                )?;
            }
            if n >= 2 {
                let top_face = |a: &[usize]| a.len() == n && injective(a);
                let horn_face = |a: &[usize]| top_face(a) && in_horn(a, k, n);
                compare(
                    format!("horn_prime({k},{n})"),
                    horn_prime(k, n, cap).map_err(|e| e.to_string())?,
                    expected(n, cap, |a| in_horn(a, k, n), |a| complicial(a) || top_face(a)),
                )?;
                compare(
                    format!("delta_dprime({k},{n})"),
                    delta_dprime(k, n, cap).map_err(|e| e.to_string())?,
                    expected(n, cap, |_| true, |a| complicial(a) || top_face(a)),
                )?;
                compare(
                    format!("delta_prime({k},{n})"),
                    delta_prime(k, n, cap).map_err(|e| e.to_string())?,
                    expected(n, cap, |_| true, |a| complicial(a) || horn_face(a)),
                )?;
            }
        }
    }
    Ok(format!("{compared} complexes match the monotone-map oracle"))
}

// ---------------------------------------------------------------- 2

fn failing_set(x: &Arc<StratifiedSSet>, bound: usize) -> Result<Vec<(Family, usize, usize, Vec<Witness>)>, String> {
    let r = verify_weak_complicial(x, bound).map_err(|e| e.to_string())?;
    Ok(r.failing().map(|e| (e.family, e.k, e.n, e.failures.clone())).collect())
}

fn ac2() -> Outcome {
    let d2 = delta(2, 2).map_err(|e| e.to_string())?.complex().clone();
    let first = failing_set(&d2, 2)?;
    let second = failing_set(&d2, 2)?;
    check(first == second, || "witnesses differ between runs".into())?;
    let keys: Vec<_> = first.iter().map(|f| (f.0, f.1, f.2)).collect();
    check(keys == vec![(Family::HornFilling, 1, 2)], || {
        format!("min_strat(Δ[2]) failing instances {keys:?}")
    })?;
    check(!first[0].3.is_empty(), || "no witness".into())?;
    let z2 = th0_nerve("cyclic:2", 4);
    check(failing_set(&z2, 3)?.is_empty(), || "th0(nerve Z/2) fails".into())?;
    let point = delta(0, 3).map_err(|e| e.to_string())?.complex().clone();
    check(failing_set(&point, 3)?.is_empty(), || "point fails".into())?;
    Ok(format!("Δ[2] fails only at (k,n)=(1,2) with {} witness(es); Z/2 and point pass", first[0].3.len()))
}

// ---------------------------------------------------------------- 3

fn tau_vs_oracle(name: &str, cap: usize, n: usize) -> Result<MonoidTable, String> {
    let k = kan_nerve(name, cap);
    let x = Arc::new(StratifiedSSet::max_strat(k.clone()));
    let ours = tau_table(&x, SimplexId::new(0, 0), n).map_err(|e| e.to_string())?;
    let theirs = pi_oracle(&k, 0, n).map_err(|e| e.to_string())?;
    check(ours.same_monoid(&theirs), || format!("{name} cap {cap} n={n}: tables differ"))?;
    Ok(ours)
}

fn ac3() -> Outcome {
    let mut sizes = Vec::new();
    for (name, cap, n) in [
        ("trivial", 3, 1),
        ("cyclic:2", 3, 1),
        ("cyclic:3", 3, 1),
        ("symmetric:3", 3, 1),
        ("cyclic:2", 4, 2),
    ] {
        let t = tau_vs_oracle(name, cap, n)?;
        sizes.push(format!("{name}/n={n}:{}", t.len()));
    }
    let p = delta(0, 3).map_err(|e| e.to_string())?;
    let ours = tau_table(p.complex(), SimplexId::new(0, 0), 1).map_err(|e| e.to_string())?;
    let theirs = pi_oracle(p.sset(), 0, 1).map_err(|e| e.to_string())?;
    check(ours.same_monoid(&theirs) && ours.len() == 1, || "point disagrees".into())?;
    let z2 = tau_vs_oracle("cyclic:2", 4, 2)?;
    check(z2.len() == 1, || "τ_2 of Z/2 is not trivial".into())?;
    Ok(format!("tables agree with the Kan oracle: point/n=1:1 {}", sizes.join(" ")))
}

// ---------------------------------------------------------------- CLI helpers

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_complicial")
}

fn cli(args: &[&str], stdin_file: Option<&Path>) -> Result<(i32, String), String> {
    let mut cmd = Command::new(bin());
    cmd.args(args);
    if let Some(f) = stdin_file {
        cmd.stdin(std::fs::File::open(f).map_err(|e| e.to_string())?);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).map_err(|e| e.to_string())?,
    ))
}

fn cli_to(dir: &Path, name: &str, args: &[&str], stdin_file: Option<&Path>) -> Result<std::path::PathBuf, String> {
    let (code, text) = cli(args, stdin_file)?;
    check(code == 0, || format!("{args:?} exited {code}"))?;
    let p = dir.join(name);
    std::fs::write(&p, text).map_err(|e| e.to_string())?;
    Ok(p)
}

fn rep_index(payload: &Value, label: &str) -> Option<usize> {
    payload["classes"]
        .as_array()?
        .iter()
        .position(|c| c["members"].as_array().is_some_and(|m| m.iter().any(|v| v == label)))
}

// ---------------------------------------------------------------- 4

fn ac4() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let n = cli_to(dir.path(), "n.json", &["build", "nerve", "--builtin", "cyclic:2", "--cap", "3"], None)?;
    let t = cli_to(dir.path(), "t.json", &["build", "th0"], Some(&n))?;
    let (code, out) = cli(&["tau", t.to_str().unwrap(), "--n", "1", "--vertex", "*"], None)?;
    check(code == 0, || format!("tau exited {code}"))?;
    let doc: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let p = &doc["payload"];
    let e = rep_index(p, "0").ok_or("no class for e")?;
    let a = rep_index(p, "1").ok_or("no class for a")?;
    check(p["classes"].as_array().unwrap().len() == 2 && e != a, || "not two classes".into())?;
    check(p["unit"] == e, || "unit is not [e]".into())?;
    check(p["table"][a][a] == e, || "[a][a] != [e]".into())?;
    check(p["is_group"] == true && p["associative"] == true, || "not an associative group".into())?;
    Ok("τ_1(th0(nerve Z/2)) = group of order 2, [a][a] = [e]".into())
}

// ---------------------------------------------------------------- 5

fn ac5() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mon = dir.path().join("bool.json");
    std::fs::write(&mon, r#"{"elements":["1","0"],"unit":"1","table":[["1","0"],["0","0"]]}"#)
        .map_err(|e| e.to_string())?;
    let n = cli_to(
        dir.path(),
        "n.json",
        &["build", "nerve", "--monoid", mon.to_str().unwrap(), "--cap", "3"],
        None,
    )?;
    let q = cli_to(dir.path(), "q.json", &["build", "qcat-e"], Some(&n))?;
    let (code, out) = cli(&["tau", q.to_str().unwrap(), "--n", "1", "--vertex", "*"], None)?;
    check(code == 0, || format!("tau exited {code}"))?;
    let doc: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let p = &doc["payload"];
    let one = rep_index(p, "1").ok_or("no class for 1")?;
    let zero = rep_index(p, "0").ok_or("no class for 0")?;
    check(p["classes"].as_array().unwrap().len() == 2, || "not two classes".into())?;
    check(p["unit"] == one, || "unit is not [1]".into())?;
    check(p["table"][zero][zero] == zero && p["table"][zero][one] == zero && p["table"][one][zero] == zero, || {
        "table is not the Boolean monoid".into()
    })?;
    check(p["is_group"] == false, || "reported as a group".into())?;
    check(p["inverses"][zero].is_null(), || "[0] has an inverse".into())?;
    Ok("τ_1(qcat-e(nerve Boolean)) = 2-element monoid, is_group = false, [0] has no inverse".into())
}

// ---------------------------------------------------------------- 6, 7, 9 over the corpus

/// Least m >= 1 such that every simplex of dimension >= m is thin.
fn thin_from(x: &StratifiedSSet) -> Option<usize> {
    let s = x.sset();
    (1..=s.cap()).find(|&m| (m..=s.cap()).all(|d| s.simplices(d).all(|y| x.is_thin(y))))
}

fn verified(x: &Arc<StratifiedSSet>) -> Result<bool, String> {
    Ok(verify_weak_complicial(x, x.cap()).map_err(|e| e.to_string())?.passed())
}

fn ac6() -> Outcome {
    let mut checked = Vec::new();
    for entry in corpus() {
        let x = &entry.complex;
        let Some(m) = thin_from(x) else { continue };
        if !verified(x)? {
            continue;
        }
        for n in m.max(1)..x.cap() {
            for v in x.sset().simplices(0) {
                let t = tau_table(x, v, n).map_err(|e| format!("{}: {e}", entry.name))?;
                let (_, is_group) = find_inverses(&t);
                check(is_group, || format!("{} n={n}: not a group", entry.name))?;
                checked.push(format!("{} n={n}", entry.name));
            }
        }
    }
    // the quasi-category case at n = 2
    let q = qcat_nerve("symmetric:3", 3);
    check(verified(&q)?, || "qcat-e(nerve S_3) fails verification".into())?;
    let t = tau_table(&q, SimplexId::new(0, 0), 2).map_err(|e| e.to_string())?;
    check(find_inverses(&t).1 && t.len() == 1, || "qcat-e(nerve S_3) τ_2 is not the trivial group".into())?;
    Ok(format!("{} (input, n, vertex) instances are groups", checked.len() + 1))
}

fn ac7() -> Outcome {
    let mut count = 0;
    for entry in corpus() {
        let x = &entry.complex;
        if !verified(x)? {
            continue;
        }
        let t0 = tau0(x).map_err(|e| e.to_string())?;
        check(!t0.relation.closure_needed, || format!("{}: τ_0 relation needed closure", entry.name))?;
        count += 1;
        for n in 1..=2usize {
            if x.cap() < n + 1 {
                continue;
            }
            for v in x.sset().simplices(0) {
                let ctx = TauContext::new(x.clone(), v, n).map_err(|e| e.to_string())?;
                let p = SpherePartition::compute(&ctx).map_err(|e| e.to_string())?;
                check(!p.relation.closure_needed, || {
                    format!("{} n={n}: homotopy relation needed closure", entry.name)
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} relations were already equivalences"))
}

// ---------------------------------------------------------------- 8

fn ac8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let n = cli_to(dir.path(), "n.json", &["build", "nerve", "--builtin", "symmetric:3", "--cap", "3"], None)?;
    let t = cli_to(dir.path(), "t.json", &["build", "th0"], Some(&n))?;
    let (code, out) = cli(
        &["tau", t.to_str().unwrap(), "--n", "1", "--vertex", "*", "--audit-well-defined"],
        None,
    )?;
    check(code == 0, || format!("tau exited {code}"))?;
    let doc: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let audit = &doc["payload"]["audit"];
    let cells = audit["cells"].as_array().ok_or("no audit")?;
    check(cells.len() == 36, || format!("{} cells audited", cells.len()))?;
    check(audit["consistent"] == true, || "inconsistent cell".into())?;
    let fillers: u64 = cells.iter().map(|c| c["fillers_tested"].as_u64().unwrap_or(0)).sum();
    check(cells.iter().all(|c| c["fillers_tested"].as_u64().unwrap_or(0) >= 1), || {
        "a cell was audited with no filler".into()
    })?;
    Ok(format!("36 cells consistent, {fillers} fillers tested"))
}

// ---------------------------------------------------------------- 9

fn ac9() -> Outcome {
    let mut tables = 0;
    for entry in corpus() {
        let x = &entry.complex;
        if !verified(x)? {
            continue;
        }
        for n in 1..x.cap() {
            for v in x.sset().simplices(0) {
                let t = tau_table(x, v, n).map_err(|e| e.to_string())?;
                check(t.associative && t.unit_law, || format!("{} n={n}: not a monoid", entry.name))?;
                tables += 1;
            }
        }
    }
    let x = th0_nerve("cyclic:2", 3);
    let ctx = TauContext::new(x.clone(), SimplexId::new(0, 0), 1).map_err(|e| e.to_string())?;
    let part = SpherePartition::compute(&ctx).map_err(|e| e.to_string())?;
    let table = tau_table_with(&ctx, &part).map_err(|e| e.to_string())?;
    let s = x.sset();
    let mut triples = 0;
    for &a in &part.elements {
        for &b in &part.elements {
            for &g in &part.elements {
                let w = associativity_witness(&ctx, a, b, g).map_err(|e| e.to_string())?;
                let cls = |y| table.class_of(y).ok_or(format!("{y} has no class"));
                let lhs = table.table[table.table[cls(a)?][cls(b)?]][cls(g)?];
                let rhs = table.table[cls(a)?][table.table[cls(b)?][cls(g)?]];
                check(cls(w.joined)? == lhs && lhs == rhs, || "d_n d_n u does not join both sides".into())?;
                let face = |y, i| s.face(y, i).map_err(|e| e.to_string());
                check(face(w.psi, 1)? == w.joined, || "d_n d_n u != d_n ψ".into())?;
                // d_n u fills (α, d_n φ): face 0 is α, face 2 is d_1 φ
                check(face(w.middle, 0)? == a && face(w.middle, 2)? == face(w.phi, 1)?, || {
                    "d_n u is not a filler for (α, βγ)".into()
                })?;
                triples += 1;
            }
        }
    }
    Ok(format!("{tables} tables associative; Λ^1[3] construction filled for {triples} triples"))
}

// ---------------------------------------------------------------- 10

fn run_cli(args: &[String]) -> Result<(i32, String), String> {
    let cli = Cli::try_parse_from(std::iter::once("complicial".to_string()).chain(args.iter().cloned()))
        .map_err(|e| e.to_string())?;
    match run(&cli) {
        Ok(out) => Ok((out.code, out.text)),
        Err(f) => Ok((f.code(), f.message().to_string())),
    }
}

fn ac10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut docs = 0;
    let mut runs = 0;
    let mut entries: Vec<(String, Arc<StratifiedSSet>)> =
        corpus().into_iter().map(|e| (e.name.to_string(), e.complex)).collect();
    let extra = [
        ("comp-horn 1 3", complicial_horn(1, 3, 3).map_err(|e| e.to_string())?.horn.complex().clone()),
        ("delta-prime 1 3", delta_prime(1, 3, 3).map_err(|e| e.to_string())?.complex().clone()),
        ("th0 Boolean", Arc::new(th0(&complicial::adapters::builtin("boolean").unwrap(), 3).unwrap())),
        (
            "qcat-e codiscrete(3)",
            Arc::new(quasicat_e(kan_nerve("codiscrete:3", 2), 2).map_err(|e| e.to_string())?),
        ),
    ];
    entries.extend(extra.into_iter().map(|(n, x)| (n.to_string(), x)));
    for (i, (name, x)) in entries.iter().enumerate() {
        let doc = ComplexDocument::from_complex(x, Some(name.clone()), None);
        let text = doc.to_json();
        let back = ComplexDocument::from_json(&text).map_err(|e| e.to_string())?;
        check(back == doc && back.to_json() == text, || format!("{name}: document round-trip"))?;
        check(back.to_complex().map_err(|e| e.to_string())? == **x, || format!("{name}: complex round-trip"))?;
        docs += 1;

        let path = dir.path().join(format!("c{i}.json"));
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        let p = path.to_str().unwrap().to_string();
        let v0 = x.sset().label(SimplexId::new(0, 0)).to_string();
        let mut commands: Vec<Vec<String>> = vec![vec!["verify".into(), p.clone()], vec!["tau0".into(), p.clone()]];
        if x.cap() >= 2 {
            commands.push(vec!["tau".into(), p.clone(), "--n".into(), "1".into(), "--vertex".into(), v0.clone()]);
            commands.push(vec!["homotopy".into(), p.clone(), "--from".into(), v0.clone(), "--to".into(), v0.clone()]);
        }
        for args in commands {
            let mut outputs = BTreeSet::new();
            for threads in ["1", "4", "1", "3"] {
                let mut a = args.clone();
                a.extend(["--threads".to_string(), threads.to_string()]);
                outputs.insert(run_cli(&a)?);
                runs += 1;
            }
            check(outputs.len() == 1, || format!("{name}: {args:?} output depends on run or thread count"))?;
        }
    }
    Ok(format!("{docs} documents round-trip; {runs} runs byte-identical per command"))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome, Duration); 10] = [
        ("AC1", "standard-complex oracle equivalence", ac1, Duration::from_secs(10)),
        ("AC2", "verifier soundness", ac2, Duration::from_secs(30)),
        ("AC3", "Kan agreement with the π_n oracle", ac3, Duration::from_secs(120)),
        ("AC4", "π_1 of the classifying space of Z/2", ac4, Duration::from_secs(10)),
        ("AC5", "non-group homotopy monoid", ac5, Duration::from_secs(10)),
        ("AC6", "all-thin inputs give groups", ac6, Duration::from_secs(120)),
        ("AC7", "relations are equivalences before closure", ac7, Duration::from_secs(60)),
        ("AC8", "well-definedness audit", ac8, Duration::from_secs(300)),
        ("AC9", "associativity", ac9, Duration::from_secs(60)),
        ("AC10", "determinism and round-trip", ac10, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (id, title, f, budget) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {took:.2?}, budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{id} {status} [{took:.2?}] {title}: {detail}");
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
