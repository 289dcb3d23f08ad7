//! Command-line front end: load an algebra file, run censuses and theorem
//! verifications, emit text, JSON (schema `taufold.v1`) or DOT.
//!
//! Exit codes: 0 success, 2 unusable input (parse error, unsupported
//! algebra class, band detected), 3 search guard exceeded, 4 a theorem
//! verification failed.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::sync::Arc;
use taufold_core::catalog::{build_catalog_seeded, IndecCatalog};
use taufold_core::hom::global_dimension;
use taufold_core::subcat::{members, ClassSide, Engine, Subcat};
use taufold_core::tau::{
    check_star, cok1, enumerate_tau_rigid, hasse_diagram, phi, progenerator_of_cok1,
    support_tau_tilting, two_fold_torsion_pair, verify_bijection,
    BijectionKind, TauRigidModule,
};
use taufold_core::{Error, Result};

#[derive(Parser)]
#[command(name = "taufold", version, about = "censuses of tau-rigid modules and iterated torsion classes over bound quiver algebras")]
struct Cli {
    /// Path to the algebra description file.
    algebra: std::path::PathBuf,

    /// Multiplicity bound for assembled-object searches.
    #[arg(long, default_value_t = 2)]
    mu: usize,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized isomorphism fallback.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Tors,
    Torf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    Air,
    Main,
    Hereditary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosureKind {
    Ke,
    Ce,
    Tf,
    Ts,
}

#[derive(Subcommand)]
enum Command {
    /// List the indecomposable modules with labels, dimension vectors and
    /// the Hom/Ext/tau tables.
    Indecs,
    /// List the basic tau-rigid modules.
    TauRigid,
    /// List the support tau-tilting modules with their torsion classes.
    Stautilt,
    /// Enumerate n-fold torsion(-free) classes.
    Tors {
        #[arg(long, default_value_t = 1)]
        fold: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Tors)]
        side: SideArg,
    },
    /// The cokernel chain cok_0 U, ..., cok_n U of a module.
    Cok {
        /// Summand labels joined by '+', e.g. P1+P2.
        #[arg(long)]
        u: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Tors)]
        side: SideArg,
    },
    /// Check condition (*) for a 2-fold torsion class.
    Star {
        #[arg(long)]
        subcat: String,
    },
    /// Verify one of the bijections end to end.
    Bijection {
        #[arg(long, value_enum)]
        which: WhichArg,
    },
    /// The 2-fold torsion pair attached to a tau-rigid module.
    Pair {
        #[arg(long)]
        u: String,
    },
    /// Closures of a subcategory: ke/ce (with the kernel-closure suite)
    /// or the n-fold torsion(-free) closure tf/ts.
    Closure {
        #[arg(long, value_enum)]
        kind: ClosureKind,
        #[arg(long, default_value_t = 1)]
        fold: usize,
        #[arg(long)]
        subcat: String,
    },
    /// The tau-rigid census against the 2-fold torsion classes, row by
    /// row, with the classes outside the image listed last.
    Table1,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("TAUFOLD_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {}
            _ => {
                eprintln!("error: TAUFOLD_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse { .. } | Error::UnsupportedAlgebra(_) | Error::BandDetected(_) => 2,
                Error::GuardExceeded(_) => 3,
                Error::IsoInconclusive(_)
                | Error::DecompositionFailed(_)
                | Error::VerificationFailed(_) => 4,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<String> {
    if cli.mu < 1 {
        return Err(Error::Parse { line: 0, msg: "--mu must be at least 1".to_string() });
    }
    if let Command::Tors { fold, .. } | Command::Closure { fold, .. } = &cli.command {
        if *fold < 1 {
            return Err(Error::Parse { line: 0, msg: "--fold must be at least 1".to_string() });
        }
    }
    let text = std::fs::read_to_string(&cli.algebra).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", cli.algebra.display()),
    })?;
    let alg = Arc::new(taufold_core::algebra::parse_algebra(&text)?);
    let cat = Arc::new(build_catalog_seeded(&alg, cli.seed)?);
    let engine = Engine::with_mu(cat.clone(), cli.mu);
    let side_of = |s: SideArg| match s {
        SideArg::Tors => ClassSide::Tors,
        SideArg::Torf => ClassSide::Torf,
    };
    match &cli.command {
        Command::Indecs => cmd_indecs(cli, &cat),
        Command::TauRigid => cmd_tau_rigid(cli, &engine),
        Command::Stautilt => cmd_stautilt(cli, &engine),
        Command::Tors { fold, side } => cmd_tors(cli, &engine, *fold, side_of(*side)),
        Command::Cok { u, n, side } => cmd_cok(cli, &engine, u, *n, side_of(*side)),
        Command::Star { subcat } => cmd_star(cli, &engine, subcat),
        Command::Bijection { which } => cmd_bijection(cli, &engine, *which),
        Command::Pair { u } => cmd_pair(cli, &engine, u),
        Command::Closure { kind, fold, subcat } => cmd_closure(cli, &engine, *kind, *fold, subcat),
        Command::Table1 => cmd_table1(cli, &engine),
    }
}

fn parse_labels(engine: &Engine, labels: &str) -> Result<u64> {
    if labels == "0" {
        return Ok(0);
    }
    let parts: Vec<&str> = labels.split('+').map(|s| s.trim()).collect();
    Ok(Subcat::from_labels(engine.cat.clone(), &parts)?.bits)
}

fn class_label(cat: &IndecCatalog, bits: u64) -> String {
    let ms = members(bits);
    if ms.is_empty() {
        return "0".to_string();
    }
    let mut labels: Vec<String> = ms.iter().map(|&i| cat.labels[i].clone()).collect();
    labels.sort();
    labels.join("+")
}

fn fmt_class(cat: &IndecCatalog, bits: u64) -> String {
    if bits == 0 {
        "{0}".to_string()
    } else {
        format!("add({})", class_label(cat, bits))
    }
}

fn json_header(cli: &Cli, command: &str) -> Value {
    json!({
        "schema": "taufold.v1",
        "algebra": cli.algebra.display().to_string(),
        "command": command,
        "mu": cli.mu,
        "seed": cli.seed,
    })
}

fn emit(cli: &Cli, mut body: Value, text: String) -> Result<String> {
    match cli.format {
        Format::Text => Ok(text),
        Format::Json => {
            let header = json_header(cli, body["command"].as_str().unwrap_or(""));
            if let (Some(h), Some(b)) = (header.as_object(), body.as_object_mut()) {
                for (k, v) in h {
                    b.entry(k.clone()).or_insert_with(|| v.clone());
                }
            }
            Ok(format!("{}\n", serde_json::to_string_pretty(&body).unwrap()))
        }
        Format::Dot => Err(Error::Parse {
            line: 0,
            msg: "this command has no DOT rendering; use --format text or json".to_string(),
        }),
    }
}

fn cmd_indecs(cli: &Cli, cat: &Arc<IndecCatalog>) -> Result<String> {
    let mut text = String::new();
    text.push_str(&format!(
        "{} indecomposable modules over a {}-dimensional algebra (field F_{})\n",
        cat.len(),
        cat.algebra.dim(),
        cat.algebra.modulus
    ));
    for i in 0..cat.len() {
        text.push_str(&format!(
            "{:>4} {:<6} dims {:?} string [{}] tau {}\n",
            i,
            cat.labels[i],
            cat.indecs[i].dims,
            cat.strings[i],
            match cat.tau_of[i] {
                None => "0".to_string(),
                Some(t) => cat.labels[t].clone(),
            }
        ));
    }
    text.push_str(&format!("global dimension: {}\n", match global_dimension(&cat.algebra) {
        Some(d) => d.to_string(),
        None => "not finite within the guard".to_string(),
    }));
    let body = json!({
        "command": "indecs",
        "count": cat.len(),
        "labels": cat.labels,
        "dims": cat.indecs.iter().map(|m| m.dims.clone()).collect::<Vec<_>>(),
        "strings": cat.strings,
        "hom": cat.hom,
        "ext1": cat.ext1,
        "tau_of": cat.tau_of,
    });
    emit(cli, body, text)
}

fn cmd_tau_rigid(cli: &Cli, e: &Engine) -> Result<String> {
    let list = enumerate_tau_rigid(e);
    let mut text = format!("{} basic tau-rigid modules\n", list.len());
    for u in &list {
        text.push_str(&format!("  {}\n", class_label(&e.cat, u.0)));
    }
    let body = json!({
        "command": "tau-rigid",
        "count": list.len(),
        "modules": list.iter().map(|u| u.0).collect::<Vec<_>>(),
        "labels": list.iter().map(|u| class_label(&e.cat, u.0)).collect::<Vec<_>>(),
    });
    emit(cli, body, text)
}

fn cmd_stautilt(cli: &Cli, e: &Engine) -> Result<String> {
    let list = support_tau_tilting(e)?;
    let mut text = format!("{} support tau-tilting modules\n", list.len());
    for u in &list {
        let fac = e.fac_closure(u.0);
        text.push_str(&format!(
            "  {:<16} |-> {}\n",
            class_label(&e.cat, u.0),
            fmt_class(&e.cat, fac)
        ));
    }
    let body = json!({
        "command": "stautilt",
        "count": list.len(),
        "pairs": list
            .iter()
            .map(|u| json!({"module": u.0, "torsion_class": e.fac_closure(u.0)}))
            .collect::<Vec<_>>(),
    });
    emit(cli, body, text)
}

fn cmd_tors(cli: &Cli, e: &Engine, fold: usize, side: ClassSide) -> Result<String> {
    let classes = e.enumerate_nfold(fold, side)?;
    if cli.format == Format::Dot {
        let mut dot = String::from("digraph hasse {\n  rankdir=BT;\n");
        for &c in &classes {
            dot.push_str(&format!("  \"add({})\";\n", class_label(&e.cat, c)));
        }
        for (i, j) in hasse_diagram(&classes) {
            dot.push_str(&format!(
                "  \"add({})\" -> \"add({})\";\n",
                class_label(&e.cat, classes[j]),
                class_label(&e.cat, classes[i])
            ));
        }
        dot.push_str("}\n");
        return Ok(dot);
    }
    let side_name = match side {
        ClassSide::Tors => "torsion",
        ClassSide::Torf => "torsion-free",
    };
    let mut text = format!(
        "{} {fold}-fold {side_name} classes (bound mu={})\n",
        classes.len(),
        e.mu
    );
    for &c in &classes {
        text.push_str(&format!("  {}\n", fmt_class(&e.cat, c)));
    }
    let body = json!({
        "command": "tors",
        "fold": fold,
        "side": side_name,
        "count": classes.len(),
        "classes": classes,
        "labels": classes.iter().map(|&c| class_label(&e.cat, c)).collect::<Vec<_>>(),
    });
    emit(cli, body, text)
}

fn cmd_cok(cli: &Cli, e: &Engine, u: &str, n: usize, side: ClassSide) -> Result<String> {
    let bits = parse_labels(e, u)?;
    let chain = e.cok_or_ker_chain(bits, n, side)?;
    let word = match side {
        ClassSide::Tors => "cok",
        ClassSide::Torf => "ker",
    };
    let mut text = String::new();
    for (j, &c) in chain.chain.iter().enumerate() {
        text.push_str(&format!("{word}_{j} = add({})", class_label(&e.cat, c)));
        if !chain.exact {
            text.push_str(&format!(" (bound mu={})", chain.mu));
        }
        text.push('\n');
    }
    let body = json!({
        "command": "cok",
        "module": bits,
        "side": word,
        "exact": chain.exact,
        "chain": chain.chain,
        "labels": chain.chain.iter().map(|&c| class_label(&e.cat, c)).collect::<Vec<_>>(),
    });
    emit(cli, body, text)
}

fn cmd_star(cli: &Cli, e: &Engine, subcat: &str) -> Result<String> {
    let bits = parse_labels(e, subcat)?;
    if !e.is_class_of(bits, e.smallest_tors(bits), ClassSide::Tors)? {
        return Err(Error::VerificationFailed(format!(
            "add({}) is not a 2-fold torsion class",
            class_label(&e.cat, bits)
        )));
    }
    let (star, witness) = check_star(e, bits)?;
    let mut text = format!(
        "condition (*) for add({}): {}\n",
        class_label(&e.cat, bits),
        star
    );
    if let Some((m, source)) = witness {
        text.push_str(&format!(
            "witness: the right minimal approximation {} -> {} has its source outside the class\n",
            class_label(&e.cat, source),
            e.cat.labels[m]
        ));
    }
    let body = json!({
        "command": "star",
        "subcat": bits,
        "satisfies_star": star,
        "witness": witness.map(|(m, s)| json!({
            "member": e.cat.labels[m],
            "approximation_source": class_label(&e.cat, s),
        })),
    });
    emit(cli, body, text)
}

fn cmd_bijection(cli: &Cli, e: &Engine, which: WhichArg) -> Result<String> {
    let kind = match which {
        WhichArg::Air => BijectionKind::Air,
        WhichArg::Main => BijectionKind::Main,
        WhichArg::Hereditary => BijectionKind::Hereditary,
    };
    let report = verify_bijection(e, kind)?;
    let mut text = format!(
        "{} <-> {}, {}",
        report.left_count,
        report.right_count,
        if report.ok() { "round-trips OK" } else { "FAILURES" }
    );

    if !report.excluded.is_empty() {
        let ex: Vec<String> = report
            .excluded
            .iter()
            .map(|&c| fmt_class(&e.cat, c))
            .collect();
        text.push_str(&format!(", excluded: {}", ex.join(", ")));
    }
    text.push('\n');
    for f in &report.failures {
        text.push_str(&format!("  failure: {f}\n"));
    }
    let body = json!({
        "command": "bijection",
        "which": format!("{kind:?}"),
        "left_count": report.left_count,
        "right_count": report.right_count,
        "pairs": report.pairs,
        "excluded": report.excluded,
        "failures": report.failures,
    });
    let rendered = emit(cli, body, text)?;
    if report.ok() {
        Ok(rendered)
    } else {
        print!("{rendered}");
        Err(Error::VerificationFailed(format!(
            "{} bijection identities failed",
            report.failures.len()
        )))
    }
}

fn cmd_pair(cli: &Cli, e: &Engine, u: &str) -> Result<String> {
    let bits = parse_labels(e, u)?;
    if !e.bits_tau_rigid(bits) {
        return Err(Error::VerificationFailed(format!(
            "{} is not tau-rigid",
            class_label(&e.cat, bits)
        )));
    }
    let (t2, t1, f2, f1) = two_fold_torsion_pair(e, TauRigidModule(bits))?;
    let progen = progenerator_of_cok1(e, TauRigidModule(bits))?;
    let completion = phi(e, t2)?;
    let text = format!(
        "2-fold torsion pair of {}:\n  T2 = add({})\n  T1 = add({})\n  F2 = add({})\n  F1 = add({})\n\
         Ext-progenerator of T2: {}\nPhi(T2) = {}\n",
        class_label(&e.cat, bits),
        class_label(&e.cat, t2),
        class_label(&e.cat, t1),
        class_label(&e.cat, f2),
        class_label(&e.cat, f1),
        class_label(&e.cat, progen),
        class_label(&e.cat, completion),
    );
    let body = json!({
        "command": "pair",
        "module": bits,
        "t2": t2, "t1": t1, "f2": f2, "f1": f1,
        "progenerator_of_t2": progen,
        "phi_of_t2": completion,
    });
    emit(cli, body, text)
}

fn cmd_closure(
    cli: &Cli,
    e: &Engine,
    kind: ClosureKind,
    fold: usize,
    subcat: &str,
) -> Result<String> {
    let bits = parse_labels(e, subcat)?;
    let (result, name, suite) = match kind {
        ClosureKind::Tf => (e.torsion_closure(bits, fold, ClassSide::Torf)?, format!("{fold}-fold torsion-free closure"), None),
        ClosureKind::Ts => (e.torsion_closure(bits, fold, ClassSide::Tors)?, format!("{fold}-fold torsion closure"), None),
        ClosureKind::Ke => (
            e.torsion_closure(bits, 2, ClassSide::Torf)?,
            "KE closure (= 2-fold torsion-free closure)".to_string(),
            Some(e.kernel_closure_suite(bits)?),
        ),
        ClosureKind::Ce => (
            e.torsion_closure(bits, 2, ClassSide::Tors)?,
            "CE closure (= 2-fold torsion closure)".to_string(),
            Some(e.cokernel_closure_suite(bits)?),
        ),
    };
    let mut text = format!(
        "{name} of add({}) = add({}) (bound mu={})\n",
        class_label(&e.cat, bits),
        class_label(&e.cat, result),
        e.mu
    );
    if let Some(s) = &suite {
        text.push_str(&format!(
            "closure suite: admissible add({}), family add({}), full add({}), all equal: {}\n",
            class_label(&e.cat, s.adm_closure),
            class_label(&e.cat, s.ker_family_closure),
            class_label(&e.cat, s.ker_closure),
            s.all_equal
        ));
    }
    let body = json!({
        "command": "closure",
        "input": bits,
        "result": result,
        "label": class_label(&e.cat, result),
        "suite": suite.map(|s| json!({
            "admissible": s.adm_closure,
            "family": s.ker_family_closure,
            "full": s.ker_closure,
            "all_equal": s.all_equal,
        })),
    });
    emit(cli, body, text)
}

fn cmd_table1(cli: &Cli, e: &Engine) -> Result<String> {
    let tau_rigid = enumerate_tau_rigid(e);
    let two_fold = e.enumerate_nfold(2, ClassSide::Tors)?;
    let mut rows: Vec<(String, String, u64, u64)> = Vec::new();
    let mut hit: std::collections::BTreeSet<u64> = std::collections::BTreeSet::new();
    for u in &tau_rigid {
        let c = cok1(e, *u)?;
        hit.insert(c);
        rows.push((
            class_label(&e.cat, u.0),
            fmt_class(&e.cat, c),
            u.0,
            c,
        ));
    }
    let extras: Vec<u64> = two_fold.iter().copied().filter(|c| !hit.contains(c)).collect();
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(8).max(8);
    let mut text = format!(
        "{:<width$} | 2-fold torsion class\n{}-+-{}\n",
        "tau-rigid",
        "-".repeat(width),
        "-".repeat(24)
    );
    for (l, r, _, _) in &rows {
        text.push_str(&format!("{l:<width$} | {r}\n"));
    }
    for &c in &extras {
        text.push_str(&format!("{:<width$} | {}\n", "", fmt_class(&e.cat, c)));
    }
    text.push_str(&format!(
        "{} tau-rigid modules, {} 2-fold torsion classes\n",
        rows.len(),
        two_fold.len()
    ));
    let body = json!({
        "command": "table1",
        "rows": rows.iter().map(|(l, r, u, c)| json!({
            "module_label": l, "class_label": r, "module": u, "class": c,
        })).collect::<Vec<_>>(),
        "extra_classes": extras,
        "tau_rigid_count": rows.len(),
        "two_fold_count": two_fold.len(),
    });
    emit(cli, body, text)
}
