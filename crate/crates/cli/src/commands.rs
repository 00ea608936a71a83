use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigUint;
use serde::Serialize;
use triverify_core::arith::{euler_characteristic, ppd, scan_psl2_even, OrderPair, TwoPrimeForm};
use triverify_core::catalog::{builtin, entries_to_json, load_catalog, resolve, Catalog, CertifiedGroup};
use triverify_core::chartab::families::realized_table;
use triverify_core::chartab::{brute_force_structure_constant, load_table};
use triverify_core::classify::tables::{load_rows, rule_text, run_tables, status_text};
use triverify_core::classify::{replay, verify_triple, Status, Verdict};
use triverify_core::perm::ClassData;
use triverify_core::spectrum::prime_graph;

use crate::{Cli, Command, Expect, Format};

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let fmt = cli.format;
    match &cli.command {
        Command::Chi { order, m, n } => chi(fmt, order, *m, *n),
        Command::Ppd { q, a } => ppd_cmd(fmt, *q, *a),
        Command::Primegraph {
            group,
            catalog,
            element_budget,
        } => {
            let g = group_by_name(group, catalog.as_deref())?;
            let profile = prime_graph(&g.group, *element_budget)?;
            emit(
                fmt,
                &PrimeGraphRecord {
                    group: g.name(),
                    profile: &profile,
                },
                || {
                    let mut s = String::new();
                    let _ = writeln!(s, "group      {}", g.name());
                    let _ = writeln!(s, "order      {}", profile.group_order);
                    let _ = writeln!(s, "spectrum   {:?}", profile.spectrum);
                    let _ = writeln!(s, "pi         {:?}", profile.pi);
                    let _ = writeln!(s, "pi_c       {:?}", profile.pi_c);
                    let _ = writeln!(s, "pi_nc      {:?}", profile.pi_nc);
                    let _ = writeln!(s, "edges      {:?}", profile.edges);
                    let _ = writeln!(s, "t          {}", profile.t);
                    let _ = write!(s, "t_c        {}", profile.t_c);
                    s
                },
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            group,
            m,
            n,
            catalog,
            replay: replay_path,
            expect,
            search,
        } => {
            let cat = open_catalog(catalog.as_deref())?;
            if let Some(path) = replay_path {
                let recorded = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let r = replay(&recorded, |name| resolve(name, cat.as_ref()))?;
                let verdict: Verdict = serde_json::from_str(&r.rerun)?;
                emit(fmt, &verdict, || verdict_text(&verdict))?;
                if !r.identical {
                    eprintln!("replay differs from the recorded transcript");
                    return Ok(ExitCode::from(1));
                }
                return Ok(ExitCode::SUCCESS);
            }
            let (Some(group), Some(m), Some(n)) = (group, m, n) else {
                bail!("--group, --m and --n are required");
            };
            let g = resolve(group, cat.as_ref())?;
            let verdict = verify_triple(&g, *m, *n, &search.config())?;
            emit(fmt, &verdict, || verdict_text(&verdict))?;
            let wanted = expect.map(|e| match e {
                Expect::Yes => Status::ProvenYes,
                Expect::No => Status::ProvenNo,
            });
            Ok(match wanted {
                Some(w) if w != verdict.status => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Tables { rows, catalog, search } => {
            let cat = open_catalog(catalog.as_deref())?;
            let rows = load_rows(rows).with_context(|| format!("reading {}", rows.display()))?;
            let report = run_tables(&rows, &|name| resolve(name, cat.as_ref()), &search.config());
            emit(fmt, &report, || report.to_text().trim_end().to_string())?;
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::ScanPsl2 { xmax } => scan(fmt, *xmax),
        Command::Structconst {
            table,
            group,
            catalog,
            i,
            j,
            k,
            element_budget,
        } => structconst(
            fmt,
            table.as_deref(),
            group.as_deref(),
            catalog.as_deref(),
            [i, j, k],
            *element_budget,
        ),
        Command::Classes {
            group,
            catalog,
            element_budget,
        } => {
            let g = group_by_name(group, catalog.as_deref())?;
            let classes = ClassData::compute(&g.group, *element_budget)?;
            let record = ClassesRecord {
                group: g.name().to_string(),
                order: g.group.order().to_string(),
                classes: classes
                    .classes()
                    .iter()
                    .enumerate()
                    .map(|(index, c)| ClassRecord {
                        index,
                        element_order: c.element_order,
                        size: c.size,
                        representative: c.representative.to_string(),
                    })
                    .collect(),
            };
            emit(fmt, &record, || {
                let mut s = format!("{} (order {})\n", record.group, record.order);
                let _ = write!(s, "{:>5} {:>6} {:>10}  representative", "index", "order", "size");
                for c in &record.classes {
                    let _ = write!(
                        s,
                        "\n{:>5} {:>6} {:>10}  {}",
                        c.index, c.element_order, c.size, c.representative
                    );
                }
                s
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportCatalog { out } => {
            let entries = builtin::default_entries()?;
            fs::write(out, entries_to_json(&entries)? + "\n").with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportTable { group, out } => {
            let t = realized_table(group).ok_or_else(|| anyhow!("no generated character table for {group:?}"))??;
            fs::write(out, t.table.to_json()? + "\n").with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit<T: Serialize>(fmt: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let body = match fmt {
        Format::Json => serde_json::to_string_pretty(value)?,
        Format::Text => text(),
    };
    match writeln!(std::io::stdout().lock(), "{body}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn open_catalog(path: Option<&Path>) -> Result<Option<Catalog>> {
    path.map(|p| load_catalog(p).with_context(|| format!("loading catalog {}", p.display())))
        .transpose()
}

fn group_by_name(name: &str, catalog: Option<&Path>) -> Result<CertifiedGroup> {
    let cat = open_catalog(catalog)?;
    Ok(resolve(name, cat.as_ref())?)
}

#[derive(Serialize)]
struct ChiRecord {
    order: String,
    m: u64,
    n: u64,
    chi: String,
    integral: bool,
    expr: String,
    factorization: Option<Vec<(u64, u32)>>,
    unfactored: Option<String>,
    two_prime_form: Option<TwoPrimeForm>,
}

fn chi(fmt: Format, order: &str, m: u64, n: u64) -> Result<ExitCode> {
    let order: BigUint = order
        .trim()
        .parse()
        .map_err(|_| anyhow!("--order must be a positive integer, got {order:?}"))?;
    if order == BigUint::from(0u32) {
        bail!("--order must be positive");
    }
    let e = euler_characteristic(&order, OrderPair::new(m, n)?);
    let record = ChiRecord {
        order: order.to_string(),
        m,
        n,
        chi: e.chi.to_string(),
        integral: e.integral,
        expr: e.expr(),
        factorization: e.factorization.as_ref().map(|f| f.primes.clone()),
        unfactored: e
            .factorization
            .as_ref()
            .and_then(|f| f.unfactored.as_ref())
            .map(|u| u.to_string()),
        two_prime_form: e.two_prime_form,
    };
    emit(fmt, &record, || {
        if record.chi == record.expr {
            format!("chi = {}", record.chi)
        } else {
            format!("chi = {} = {}", record.chi, record.expr)
        }
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PpdRecord {
    q: u64,
    a: u32,
    ppd: Option<u64>,
    exception: bool,
}

fn ppd_cmd(fmt: Format, q: u64, a: u32) -> Result<ExitCode> {
    let p = ppd(q, a)?;
    let record = PpdRecord {
        q,
        a,
        ppd: p,
        exception: p.is_none(),
    };
    emit(fmt, &record, || match p {
        Some(r) => r.to_string(),
        None => "none (exception)".into(),
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PrimeGraphRecord<'a> {
    group: &'a str,
    #[serde(flatten)]
    profile: &'a triverify_core::spectrum::SpectrumProfile,
}

#[derive(Serialize)]
struct ScanRecord {
    x: u32,
    q: String,
    chi: String,
    derived_poly: String,
    printed_poly: String,
    odd_part: String,
    odd_part_expr: String,
    prime_power: Option<(u64, u32)>,
    flagged: Option<bool>,
    printed_poly_prime_power: Option<(u64, u32)>,
}

#[derive(Serialize)]
struct ScanReport {
    derived_polynomial: &'static str,
    printed_polynomial: &'static str,
    rows: Vec<ScanRecord>,
}

fn scan(fmt: Format, xmax: u32) -> Result<ExitCode> {
    let rows: Vec<ScanRecord> = scan_psl2_even(xmax)?
        .into_iter()
        .map(|r| ScanRecord {
            x: r.x,
            q: r.q.to_string(),
            chi: r.chi.to_string(),
            derived_poly: r.derived_poly.to_string(),
            printed_poly: r.printed_poly.to_string(),
            odd_part: r.odd_part.to_string(),
            odd_part_expr: r.odd_part_factorization.to_expr(),
            prime_power: r.prime_power,
            flagged: r.flagged,
            printed_poly_prime_power: r.printed_poly_prime_power,
        })
        .collect();
    let report = ScanReport {
        derived_polynomial: "q^2 - 4q - 1",
        printed_polynomial: "q^2 - 4q + 1",
        rows,
    };
    emit(fmt, &report, || {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>3} {:>22} {:>42} {:>42} {:>42}  {:<8} printed-poly prime power",
            "x", "q", "chi", "q^2-4q-1 (derived)", "q^2-4q+1 (printed)", "flagged"
        );
        for r in &report.rows {
            let flagged = match r.flagged {
                Some(true) => "yes",
                Some(false) => "no",
                None => "unknown",
            };
            let pp = r
                .printed_poly_prime_power
                .map(|(p, e)| format!("{p}^{e}"))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                s,
                "{:>3} {:>22} {:>42} {:>42} {:>42}  {:<8} {}",
                r.x, r.q, r.chi, r.derived_poly, r.printed_poly, flagged, pp
            );
        }
        s.trim_end().to_string()
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ClassRecord {
    index: usize,
    element_order: u64,
    size: u64,
    representative: String,
}

#[derive(Serialize)]
struct ClassesRecord {
    group: String,
    order: String,
    classes: Vec<ClassRecord>,
}

#[derive(Serialize)]
struct SlotRecord {
    index: usize,
    label: String,
    element_order: u64,
    size: String,
}

#[derive(Serialize)]
struct StructConstRecord {
    source: String,
    method: &'static str,
    i: SlotRecord,
    j: SlotRecord,
    k: SlotRecord,
    value: u64,
}

fn structconst(
    fmt: Format,
    table: Option<&Path>,
    group: Option<&str>,
    catalog: Option<&Path>,
    slots: [&String; 3],
    element_budget: u64,
) -> Result<ExitCode> {
    let record = if let Some(path) = table {
        let t = load_table(path).with_context(|| format!("loading table {}", path.display()))?;
        let find = |s: &str| -> Result<usize> {
            t.class_index(s)
                .or_else(|| s.parse::<usize>().ok().filter(|&x| x < t.classes().len()))
                .ok_or_else(|| anyhow!("{} has no class {s:?}", t.name()))
        };
        let idx = [find(slots[0])?, find(slots[1])?, find(slots[2])?];
        let slot = |x: usize| {
            let c = &t.classes()[x];
            SlotRecord {
                index: x,
                label: c.label.clone(),
                element_order: c.element_order,
                size: c.size.to_string(),
            }
        };
        StructConstRecord {
            source: t.name().to_string(),
            method: "character-formula",
            value: t.structure_constant(idx[0], idx[1], idx[2])?,
            i: slot(idx[0]),
            j: slot(idx[1]),
            k: slot(idx[2]),
        }
    } else {
        let name = group.ok_or_else(|| anyhow!("either --table or --group is required"))?;
        let g = group_by_name(name, catalog)?;
        let classes = ClassData::compute(&g.group, element_budget)?;
        let find = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .ok()
                .filter(|&x| x < classes.len())
                .ok_or_else(|| anyhow!("{} has {} classes; {s:?} is not a class index", g.name(), classes.len()))
        };
        let idx = [find(slots[0])?, find(slots[1])?, find(slots[2])?];
        let slot = |x: usize| {
            let c = classes.class(x);
            SlotRecord {
                index: x,
                label: x.to_string(),
                element_order: c.element_order,
                size: c.size.to_string(),
            }
        };
        StructConstRecord {
            source: g.name().to_string(),
            method: "brute-force",
            value: brute_force_structure_constant(&g.group, &classes, idx[0], idx[1], idx[2])?,
            i: slot(idx[0]),
            j: slot(idx[1]),
            k: slot(idx[2]),
        }
    };
    emit(fmt, &record, || record.value.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!(
        "{} {{{},{}}} chi={} {}",
        v.group,
        v.m,
        v.n,
        v.chi,
        status_text(v.status)
    );
    if let Some(r) = v.refutation_rule {
        let _ = write!(s, " ({})", rule_text(r));
    }
    if let Some(w) = &v.witness {
        let _ = write!(s, "\n  g = {}\n  h = {}", w.g, w.h);
    }
    s
}
