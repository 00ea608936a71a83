//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//!
//! Run with `cargo test -p triverify --test acceptance`.

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use triverify_core::arith::{euler_characteristic, p_part, parse_signed_expr, ppd, scan_psl2_even, OrderPair};
use triverify_core::catalog::{builtin, certify, resolve, CertifiedGroup};
use triverify_core::chartab::families::realized_table;
use triverify_core::chartab::{brute_force_row, brute_force_structure_constant};
use triverify_core::classify::tables::{load_rows, TableRow};
use triverify_core::classify::{verify_triple, verify_witness, Rule, SearchConfig, Status, Verdict};
use triverify_core::perm::{ClassData, DEFAULT_ELEMENT_BUDGET};
use triverify_core::spectrum::{independence_number, order_spectrum, prime_graph, sylow_cyclic, SpectrumMode};

type Check = Result<String, String>;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(name: &str) -> Result<CertifiedGroup, String> {
    resolve(name, None).map_err(|e| format!("{name}: {e}"))
}

fn verdict(g: &CertifiedGroup, m: u64, n: u64) -> Result<Verdict, String> {
    verify_triple(g, m, n, &SearchConfig::default()).map_err(|e| format!("{} {{{m},{n}}}: {e}", g.name()))
}

/// `q^6 (q^6 − 1)(q^2 − 1)`.
fn g2_order(q: u64) -> BigUint {
    let q = BigUint::from(q);
    q.pow(6) * (q.pow(6) - 1u32) * (q.pow(2) - 1u32)
}

/// `q^6 (q^2 − 1)(q^3 + 1)(q^4 − 1) / gcd(4, q + 1)`.
fn psu4_order(q: u64) -> BigUint {
    let d = gcd(4, (q + 1) as u128) as u32;
    let q = BigUint::from(q);
    q.pow(6) * (q.pow(2) - 1u32) * (q.pow(3) + 1u32) * (q.pow(4) - 1u32) / d
}

fn rows(file: &str) -> Result<Vec<TableRow>, String> {
    load_rows(root().join("data").join(file)).map_err(|e| format!("{file}: {e}"))
}

fn chi_replay() -> Check {
    let mut all = rows("table_rows.json")?;
    all.extend(rows("stretch_rows.json")?);
    let mut orders: HashMap<String, BigUint> = HashMap::new();
    orders.insert("G_2(3).2".into(), g2_order(3) * 2u32);
    orders.insert("PSU_4(3).2".into(), psu4_order(3) * 2u32);
    for r in &all {
        if !orders.contains_key(&r.group) {
            orders.insert(r.group.clone(), group(&r.group)?.group.order().clone());
        }
    }
    let start = Instant::now();
    let mut checked = 0;
    for r in all.iter().filter(|r| r.expected_chi.is_some()) {
        let e = r.expected_chi.as_deref().unwrap();
        let expected = parse_signed_expr(e).map_err(|err| err.to_string())?;
        let pair = OrderPair::new(r.m, r.n).map_err(|err| err.to_string())?;
        let got = euler_characteristic(&orders[&r.group], pair);
        ensure(got.chi_integer() == Some(expected.clone()), || {
            format!("{} {{{},{}}}: expected {e}, got {}", r.group, r.m, r.n, got.expr())
        })?;
        ensure(got.expr() == e || expected == BigInt::from(2), || {
            format!(
                "{} {{{},{}}}: printed form {} differs from {e}",
                r.group,
                r.m,
                r.n,
                got.expr()
            )
        })?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} rows in {elapsed:.2?}"))
}

fn positive_verdicts() -> Check {
    let cases: &[(&str, u64, u64)] = &[
        ("A_5", 3, 5),
        ("S_6", 5, 6),
        ("PSL_2(9).(C_2xC_2)", 4, 10),
        ("SL_3(3)", 4, 13),
        ("SL_3(3)", 13, 13),
        ("PSL_2(25).2", 6, 13),
        ("S_7", 10, 7),
        ("SU_4(2)", 5, 6),
        ("A_9", 10, 7),
        ("Sp_6(2)", 7, 10),
    ];
    let mut cache: HashMap<&str, CertifiedGroup> = HashMap::new();
    for &(name, m, n) in cases {
        if !cache.contains_key(name) {
            cache.insert(name, group(name)?);
        }
        let g = &cache[name];
        let v = verdict(g, m, n)?;
        ensure(v.status == Status::ProvenYes, || {
            format!("{name} {{{m},{n}}}: {:?}", v.status)
        })?;
        let w = v
            .witness
            .as_ref()
            .ok_or_else(|| format!("{name} {{{m},{n}}}: no witness"))?;
        let check = verify_witness(&g.group, m, n, w).map_err(|e| e.to_string())?;
        ensure(check.valid, || {
            format!("{name} {{{m},{n}}}: witness rejected: {check:?}")
        })?;
    }
    // Recorded, not asserted.
    let su42 = cache.get("SU_4(2)").unwrap();
    let v = verdict(su42, 5, 5)?;
    Ok(format!(
        "{} triples with verified witnesses; SU_4(2) {{5,5}} recorded as {:?} ({:?})",
        cases.len(),
        v.status,
        v.refutation_rule
    ))
}

fn negative_verdicts() -> Check {
    let cases: &[(&str, u64, u64, &[Rule])] = &[
        ("S_9", 10, 7, &[Rule::CycleBound]),
        ("S_9", 5, 14, &[Rule::CycleBound]),
        ("M_10", 4, 5, &[Rule::NonSplitOrder2, Rule::CosetParity]),
        ("SU_3(3)", 3, 7, &[Rule::ExhaustedSearch]),
        ("SU_3(3)", 4, 7, &[Rule::ExhaustedSearch]),
    ];
    let mut cache: HashMap<&str, CertifiedGroup> = HashMap::new();
    let mut seen = Vec::new();
    for &(name, m, n, rules) in cases {
        if !cache.contains_key(name) {
            cache.insert(name, group(name)?);
        }
        let v = verdict(&cache[name], m, n)?;
        ensure(v.status == Status::ProvenNo, || {
            format!("{name} {{{m},{n}}}: {:?}", v.status)
        })?;
        let rule = v
            .refutation_rule
            .ok_or_else(|| format!("{name} {{{m},{n}}}: no rule"))?;
        ensure(rules.contains(&rule), || {
            format!("{name} {{{m},{n}}}: refuted by {rule:?}")
        })?;
        seen.push(format!("{name} {{{m},{n}}} {rule:?}"));
    }
    Ok(seen.join(", "))
}

fn structure_constants() -> Check {
    let mut names: Vec<String> = (3..=7).map(|n| format!("S_{n}")).collect();
    names.extend((6..=40).step_by(2).map(|n| format!("D_{n}")));
    names.extend((2..=12).map(|n| format!("C_{n}")));
    names.extend([3, 5, 7, 9, 11, 13, 17, 19].map(|q| format!("PGL_2({q})")));
    let mut triples = 0u64;
    for name in &names {
        let rt = realized_table(name)
            .ok_or_else(|| format!("{name}: no table"))?
            .map_err(|e| e.to_string())?;
        let cg = certify(rt.entry.clone()).map_err(|e| e.to_string())?;
        let order = cg.group.order_u64().unwrap_or(u64::MAX);
        ensure(order <= 10_000, || format!("{name}: order {order}"))?;
        let classes = ClassData::compute(&cg.group, order).map_err(|e| e.to_string())?;
        let map = rt.class_map(&cg.group, &classes).map_err(|e| e.to_string())?;
        let r = rt.table.classes().len();
        for i in 0..r {
            for k in 0..r {
                let row = brute_force_row(&cg.group, &classes, map[i], map[k]);
                for j in 0..r {
                    let formula = rt
                        .table
                        .structure_constant(i, j, k)
                        .map_err(|e| format!("{name}: {e}"))?;
                    ensure(formula == row[map[j]], || {
                        format!("{name}: a({i},{j},{k}) formula {formula}, brute force {}", row[map[j]])
                    })?;
                    triples += 1;
                }
            }
        }
    }
    let rt = realized_table("PGL_2(13)").unwrap().map_err(|e| e.to_string())?;
    let cg = certify(rt.entry.clone()).map_err(|e| e.to_string())?;
    let classes = ClassData::compute(&cg.group, 10_000).map_err(|e| e.to_string())?;
    let map = rt.class_map(&cg.group, &classes).map_err(|e| e.to_string())?;
    let t = &rt.table;
    let idx = |l: &str| t.class_index(l).ok_or_else(|| format!("no class {l}"));
    let (outer, h, z) = (idx("b^7")?, idx("b^1")?, idx("13A")?);
    let count =
        brute_force_structure_constant(&cg.group, &classes, map[outer], map[h], map[z]).map_err(|e| e.to_string())?;
    ensure(count == 13, || format!("PGL_2(13) count {count}"))?;
    Ok(format!(
        "{triples} triples over {} groups; PGL_2(13) count {count}",
        names.len()
    ))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn zsigmondy() -> Check {
    let start = Instant::now();
    let mut none = Vec::new();
    for q in 2u64..=50 {
        for a in 2u32..=12 {
            let got = ppd(q, a).map_err(|e| e.to_string())?;
            let qq = q as u128;
            // a prime is primitive iff it divides q^a − 1 and none of q^i − 1, i < a
            let mut rest = qq.pow(a) - 1;
            for i in 1..a {
                loop {
                    let d = gcd(rest, qq.pow(i) - 1);
                    if d == 1 {
                        break;
                    }
                    rest /= d;
                }
            }
            ensure(got.is_some() == (rest > 1), || format!("q = {q}, a = {a}: {got:?}"))?;
            if let Some(r) = got {
                let r = r as u128;
                ensure((2..r).take_while(|d| d * d <= r).all(|d| !r.is_multiple_of(d)), || {
                    format!("{r} is not prime")
                })?;
                ensure(
                    (qq.pow(a) - 1) % r == 0 && (1..a).all(|i| (qq.pow(i) - 1) % r != 0),
                    || format!("q = {q}, a = {a}: {r} is not primitive"),
                )?;
            } else {
                none.push((q, a));
            }
            let expected_none = (q, a) == (2, 6) || (a == 2 && (q + 1).is_power_of_two());
            ensure(got.is_none() == expected_none, || format!("q = {q}, a = {a}: {got:?}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{} exceptions {none:?} in {elapsed:.2?}", none.len()))
}

fn brute_independence(adjacency: &[u64]) -> usize {
    let n = adjacency.len();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|v| s & (1 << v) == 0 || adjacency[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn adjacency(primes: &[u64], edges: &[(u64, u64)]) -> Vec<u64> {
    let pos = |p: u64| primes.iter().position(|&x| x == p);
    let mut adj = vec![0u64; primes.len()];
    for &(p, q) in edges {
        if let (Some(i), Some(j)) = (pos(p), pos(q)) {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    adj
}

fn prime_graphs() -> Check {
    let mut groups = 0;
    for entry in builtin::default_entries().map_err(|e| e.to_string())? {
        let g = certify(entry).map_err(|e| e.to_string())?;
        if !g.group.order_u64().is_some_and(|o| o <= DEFAULT_ELEMENT_BUDGET) {
            continue;
        }
        let name = g.name().to_string();
        let order = g.group.order();
        let spectrum: BTreeSet<u64> = order_spectrum(&g.group, SpectrumMode::ClassBased, DEFAULT_ELEMENT_BUDGET)
            .map_err(|e| format!("{name}: {e}"))?;
        let profile = prime_graph(&g.group, DEFAULT_ELEMENT_BUDGET).map_err(|e| format!("{name}: {e}"))?;
        for &p in &profile.pi {
            let (pp, _) = p_part(order, p).map_err(|e| e.to_string())?;
            let no_element = !u64::try_from(&pp).is_ok_and(|pp| spectrum.contains(&pp));
            let in_nc = profile.pi_nc.contains(&p);
            let not_cyclic = !sylow_cyclic(order, &spectrum, p).map_err(|e| e.to_string())?;
            ensure(in_nc == no_element && in_nc == not_cyclic, || {
                format!("{name}, p = {p}: pi_nc {in_nc}, no element {no_element}, not cyclic {not_cyclic}")
            })?;
        }
        let adj = adjacency(&profile.pi, &profile.edges);
        let adj_c = adjacency(&profile.pi_c, &profile.edges);
        ensure(
            profile.t == brute_independence(&adj) && independence_number(&adj) == profile.t,
            || format!("{name}: t = {}", profile.t),
        )?;
        ensure(profile.t_c == brute_independence(&adj_c), || {
            format!("{name}: t_c = {}", profile.t_c)
        })?;
        groups += 1;
    }
    Ok(format!("{groups} catalog groups"))
}

fn is_prime(n: &BigUint) -> bool {
    let n = u128::try_from(n).expect("odd part fits in u128");
    n >= 2 && (2u128..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn scan() -> Check {
    let rows = scan_psl2_even(20).map_err(|e| e.to_string())?;
    let mut flagged = Vec::new();
    for r in &rows {
        let q = BigInt::from(r.q.clone());
        let derived: BigInt = &q * &q - 4 * &q - 1;
        ensure(r.derived_poly == derived, || format!("x = {}: derived polynomial", r.x))?;
        ensure(r.printed_poly == &derived + 2, || {
            format!("x = {}: printed polynomial", r.x)
        })?;
        // the odd part of χ = −q(q² − 4q − 1)/2 is |q² − 4q − 1|
        let odd = derived.magnitude().clone();
        ensure(r.odd_part == odd, || format!("x = {}: odd part {}", r.x, r.odd_part))?;
        let prime = is_prime(&odd);
        ensure(r.flagged == Some(prime), || {
            format!("x = {}: flagged {:?}, prime {prime}", r.x, r.flagged)
        })?;
        if prime {
            flagged.push(format!("x={}:{}", r.x, odd));
        }
    }
    let x4 = rows.iter().find(|r| r.x == 4).ok_or("no row for x = 4")?;
    ensure(
        x4.printed_poly == BigInt::from(193) && is_prime(&BigUint::from(193u32)),
        || format!("x = 4: printed polynomial gives {}", x4.printed_poly),
    )?;
    let out = Command::new(env!("CARGO_BIN_EXE_triverify"))
        .args(["scan-psl2", "--xmax", "20"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(text.contains("q^2 - 4q - 1") && text.contains("q^2 - 4q + 1"), || {
        "report does not show both polynomials".into()
    })?;
    Ok(format!(
        "derived odd part prime at {}; x=4 printed 193, derived {}",
        flagged.join(" "),
        x4.derived_poly
    ))
}

fn determinism() -> Check {
    let rows = root().join("data/table_rows.json");
    let runs: [Vec<&str>; 3] = [
        vec!["verify", "--group", "PSU_3(8)", "--m", "7", "--n", "19"],
        vec!["verify", "--group", "SU_3(3)", "--m", "3", "--n", "7"],
        vec!["tables", "--rows", rows.to_str().unwrap()],
    ];
    for args in &runs {
        let once = || {
            Command::new(env!("CARGO_BIN_EXE_triverify"))
                .args(args)
                .env_remove("TRIVERIFY_BUDGET")
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (once()?, once()?);
        ensure(a.status.success(), || {
            format!("{args:?}: {}", String::from_utf8_lossy(&a.stderr))
        })?;
        ensure(a.stdout == b.stdout, || format!("{args:?}: outputs differ"))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 euler characteristic replay", chi_replay),
        ("2 positive verdicts", positive_verdicts),
        ("3 negative verdicts", negative_verdicts),
        ("4 structure constants", structure_constants),
        ("5 zsigmondy", zsigmondy),
        ("6 prime graph and sylow", prime_graphs),
        ("7 psl2 scan", scan),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{:.1?}]", start.elapsed());
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
