use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use class_engine::{
    closure_basis, enumerate, parse_class_spec, simple_framework_of, ClassSpec, PropertyFamily,
};
use gf_engine::{fit_rational, growth_rate, Series};
use grid_geom::{
    decode, geom_member, lexmin_word, normal_form_automaton, parse_word, GridMatrix,
};
use perm_core::{
    antichain_element, oscillations, parallel_alternation_census, simple_permutations_up_to,
    substitution_decompose, Permutation,
};

use crate::config::{RunConfig, FACTORIAL_CAP};
use crate::output::{counts_json, emit, print_counts_table};
use crate::{Cli, Command, GeomOp};

pub fn run(cli: Cli) -> Result<(), String> {
    let cfg = RunConfig::load(cli.config.as_deref())?.finalize(cli.out, cli.csv, cli.workers)?;
    match cli.command {
        Command::Decompose { perm } => decompose_cmd(&cfg, &perm),
        Command::Simples { max_len, brute_force, list } => simples_cmd(&cfg, max_len, brute_force, list),
        Command::Geom { op } => geom_cmd(&cfg, op),
        Command::Enumerate { spec, n, members } => enumerate_cmd(&cfg, &spec, n, members),
        Command::Fit { series, max_deg, from_zero } => fit_cmd(&cfg, &series, max_deg, from_zero),
        Command::ClosureBasis { spec, max_len } => closure_basis_cmd(&cfg, &spec, max_len),
        Command::Frameworks { perm, basis, extended } => frameworks_cmd(&cfg, &perm, &basis, extended),
        Command::Oscillations { n } => oscillations_cmd(&cfg, n),
        Command::Antichain { k } => antichain_cmd(&cfg, k),
        Command::Report { spec, n, max_deg, basis_len } => report_cmd(&cfg, &spec, n, max_deg, basis_len),
    }
}

fn resolve(flag: Option<usize>, config: Option<usize>, default: usize) -> usize {
    flag.or(config).unwrap_or(default)
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn load_matrix(path: &Path) -> Result<GridMatrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    GridMatrix::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_spec(input: &str) -> Result<ClassSpec, String> {
    parse_class_spec(input, &mut |arg| {
        let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
        GridMatrix::parse(&text).map_err(|e| format!("{arg}: {e}"))
    })
    .map_err(|e| format!("{e}"))
}

fn decompose_cmd(cfg: &RunConfig, perm: &str) -> Result<(), String> {
    let pi = parse_perm(perm)?;
    let d = substitution_decompose(&pi).map_err(|e| e.to_string())?;
    println!("skeleton: {}", d.skeleton);
    println!("blocks:   {}", d.blocks.iter().map(Permutation::to_string).collect::<Vec<_>>().join(", "));
    let doc = json!({
        "format": "permclass-decompose-v1",
        "permutation": pi.to_string(),
        "skeleton": d.skeleton.to_string(),
        "blocks": d.blocks.iter().map(Permutation::to_string).collect::<Vec<_>>(),
    });
    emit(cfg, &doc)
}

fn simples_cmd(cfg: &RunConfig, max_len: usize, brute_force: bool, list: bool) -> Result<(), String> {
    if max_len > FACTORIAL_CAP {
        return Err(format!("max-len {max_len} exceeds the cap {FACTORIAL_CAP}"));
    }
    if max_len > 10 {
        return Err(format!("max-len {max_len} exceeds the simple-census cap 10"));
    }
    let by_len = simple_permutations_up_to(max_len);
    println!("{:>4}  {:>10}", "n", "simples");
    for (n, level) in by_len.iter().enumerate().skip(2) {
        println!("{:>4}  {:>10}", n, level.len());
        if list {
            for q in level {
                println!("      {q}");
            }
        }
    }
    if brute_force {
        let cap = max_len.min(8);
        for n in 2..=cap {
            let direct = count_simples_brute_force(n, cfg.workers.unwrap_or(1));
            if direct != by_len[n].len() as u64 {
                return Err(format!("census mismatch at length {n}: {direct} vs {}", by_len[n].len()));
            }
        }
        println!("brute-force cross-check to length {cap}: ok");
    }
    let doc = json!({
        "format": "permclass-simples-v1",
        "max_len": max_len,
        "counts": by_len.iter().map(|l| l.len()).collect::<Vec<_>>(),
    });
    emit(cfg, &doc)
}

/// Partition the factorial scan by first entry; the sum is independent of
/// the worker count.
fn count_simples_brute_force(n: usize, workers: usize) -> u64 {
    let workers = workers.clamp(1, n);
    let firsts: Vec<u32> = (1..=n as u32).collect();
    let chunks: Vec<&[u32]> = firsts.chunks(n.div_ceil(workers)).collect();
    let counts: Vec<u64> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut count = 0u64;
                    for &first in chunk {
                        let rest: Vec<u32> = (1..=n as u32).filter(|&v| v != first).collect();
                        let mut perm = Vec::with_capacity(n);
                        perm.push(first);
                        count += count_simples_rec(&mut perm, &rest);
                    }
                    count
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    counts.into_iter().sum()
}

fn count_simples_rec(perm: &mut Vec<u32>, remaining: &[u32]) -> u64 {
    if remaining.is_empty() {
        return u64::from(Permutation::new(perm.clone()).expect("permutation").is_simple());
    }
    let mut count = 0;
    for (i, &v) in remaining.iter().enumerate() {
        let mut rest = remaining.to_vec();
        rest.remove(i);
        perm.push(v);
        count += count_simples_rec(perm, &rest);
        perm.pop();
    }
    count
}

fn geom_cmd(cfg: &RunConfig, op: GeomOp) -> Result<(), String> {
    match op {
        GeomOp::Decode { matrix, word } => {
            let m = load_matrix(&matrix.matrix)?.ensure_signs().map_err(|e| e.to_string())?;
            let letters = parse_word(&word).map_err(|e| e.to_string())?;
            let (perm, psi) = decode(&m, &letters).map_err(|e| e.to_string())?;
            println!("{perm}");
            let doc = json!({
                "format": "permclass-decode-v1",
                "permutation": perm.to_string(),
                "psi": psi.as_slice(),
            });
            emit(cfg, &doc)
        }
        GeomOp::Encode { matrix, perm } => {
            let m = load_matrix(&matrix.matrix)?;
            let pi = parse_perm(&perm)?;
            match lexmin_word(&m, &pi).map_err(|e| e.to_string())? {
                Some(word) => {
                    let rendered = grid_geom::format_word(&word);
                    println!("{rendered}");
                    emit(cfg, &json!({
                        "format": "permclass-encode-v1",
                        "permutation": pi.to_string(),
                        "word": rendered,
                    }))
                }
                None => Err(format!("{pi} is not in the geometric grid class")),
            }
        }
        GeomOp::Member { matrix, perm } => {
            let m = load_matrix(&matrix.matrix)?;
            let pi = parse_perm(&perm)?;
            let inside = geom_member(&m, &pi);
            println!("{}", if inside { "member" } else { "non-member" });
            emit(cfg, &json!({
                "format": "permclass-member-v1",
                "permutation": pi.to_string(),
                "member": inside,
            }))
        }
        GeomOp::Automaton { matrix, cert_len } => {
            let cert_len = resolve(cert_len, cfg.cert_len, 7);
            if cert_len > 9 {
                return Err(format!("certification length {cert_len} exceeds the cap 9"));
            }
            let m = load_matrix(&matrix.matrix)?;
            let nf = normal_form_automaton(&m, cert_len).map_err(|e| e.to_string())?;
            let as_strings = nf.dfa.rename_letters(|l| l.to_string()).map_err(|e| e.to_string())?;
            print!("{}", lang_automata::format::serialize(&as_strings));
            println!("# certification: {} (length {})", nf.certification.label(), cert_len);
            let counts: Vec<String> =
                (0..=cert_len).map(|n| nf.dfa.count_words(n).to_string()).collect();
            emit(cfg, &json!({
                "format": "permclass-automaton-v1",
                "table": lang_automata::format::serialize(&as_strings),
                "certification": nf.certification.label(),
                "certified_len": nf.certification.certified_len(),
                "word_counts": counts,
            }))
        }
    }
}

fn enumerate_cmd(cfg: &RunConfig, spec: &str, n: Option<usize>, members: bool) -> Result<(), String> {
    let n = resolve(n, cfg.n_max, 7);
    cfg.validate_lengths(n, None)?;
    let class = parse_spec(spec)?;
    let e = enumerate(&class, n, members).map_err(|e| e.to_string())?;
    print_counts_table(e.positive_counts());
    let mut doc = json!({
        "format": "permclass-enumerate-v1",
        "spec": spec,
        "counts": counts_json(e.positive_counts()),
    });
    if let Some(levels) = &e.members {
        doc["members"] = Value::Array(
            levels
                .iter()
                .map(|level| Value::Array(level.iter().map(|q| Value::from(q.to_string())).collect()))
                .collect(),
        );
        for level in levels {
            for q in level {
                println!("  {q}");
            }
        }
    }
    emit(cfg, &doc)
}

fn fit_cmd(cfg: &RunConfig, series: &str, max_deg: Option<usize>, from_zero: bool) -> Result<(), String> {
    let max_deg = resolve(max_deg, cfg.max_deg, 3);
    let coeffs: Vec<BigInt> = series
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient {t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let s = if from_zero {
        Series::new(coeffs)
    } else {
        let mut v = vec![BigInt::from(0)];
        v.extend(coeffs);
        Series::new(v)
    };
    let fit = fit_rational(&s, max_deg).map_err(|e| e.to_string())?;
    match &fit {
        Some(gf) => println!("{gf}"),
        None => println!("no rational fit at denominator degree <= {max_deg}"),
    }
    emit(cfg, &json!({
        "format": "permclass-fit-v1",
        "series": s.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>(),
        "fit": fit_json(&fit, max_deg),
    }))
}

fn fit_json(fit: &Option<lang_automata::RationalGf>, max_deg: usize) -> Value {
    match fit {
        Some(gf) => json!({
            "status": "fit",
            "max_deg": max_deg,
            "numerator": gf.numerator().coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>(),
            "denominator": gf.denominator().coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>(),
            "display": gf.to_string(),
        }),
        None => json!({ "status": "no-rational-fit", "max_deg": max_deg }),
    }
}

fn closure_basis_cmd(cfg: &RunConfig, spec: &str, max_len: usize) -> Result<(), String> {
    let class = parse_spec(spec)?;
    let found = closure_basis(&class, max_len).map_err(|e| e.to_string())?;
    if found.basis.is_empty() {
        println!("no basis elements up to length {max_len}");
    }
    for q in &found.basis {
        println!("{q}");
    }
    println!("# parallel alternations among them: {}", found.parallel_alternations);
    emit(cfg, &json!({
        "format": "permclass-closure-basis-v1",
        "spec": spec,
        "searched_len": found.searched_len,
        "basis": found.basis.iter().map(Permutation::to_string).collect::<Vec<_>>(),
        "parallel_alternations": found.parallel_alternations,
    }))
}

fn frameworks_cmd(cfg: &RunConfig, perm: &str, basis: &str, extended: bool) -> Result<(), String> {
    let pi = parse_perm(perm)?;
    let basis: Vec<Permutation> = basis
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_perm(t.trim()))
        .collect::<Result<_, _>>()?;
    let fam = if extended { PropertyFamily::p_b_extended(&basis) } else { PropertyFamily::p_b(&basis) };
    let f = simple_framework_of(&pi, &fam).map_err(|e| e.to_string())?;
    println!("skeleton: {}", f.skeleton);
    for (i, cell) in f.cells.iter().enumerate() {
        println!("cell {}: {}", i + 1, fam.format_set(cell));
    }
    emit(cfg, &json!({
        "format": "permclass-framework-v1",
        "permutation": pi.to_string(),
        "skeleton": f.skeleton.to_string(),
        "cells": f.cells.iter().map(|c| fam.format_set(c)).collect::<Vec<_>>(),
    }))
}

fn oscillations_cmd(cfg: &RunConfig, n: usize) -> Result<(), String> {
    if n > 10 {
        return Err(format!("oscillation census capped at length 10, got {n}"));
    }
    let list = oscillations(n);
    let (pa_count, _) = parallel_alternation_census(n);
    println!("oscillations of length {n}: {}", list.len());
    for q in &list {
        println!("{q}");
    }
    println!("# simple parallel alternations of the same length: {pa_count}");
    emit(cfg, &json!({
        "format": "permclass-oscillations-v1",
        "n": n,
        "census": list.len(),
        "oscillations": list.iter().map(Permutation::to_string).collect::<Vec<_>>(),
    }))
}

fn antichain_cmd(cfg: &RunConfig, k: usize) -> Result<(), String> {
    if k == 0 || k > 40 {
        return Err("k must be between 1 and 40".into());
    }
    let q = antichain_element(k);
    println!("{q}");
    emit(cfg, &json!({
        "format": "permclass-antichain-v1",
        "k": k,
        "element": q.to_string(),
    }))
}

fn geom_leaves(spec: &ClassSpec, out: &mut Vec<GridMatrix>) {
    match spec {
        ClassSpec::Geom(m) => out.push(m.clone()),
        ClassSpec::Avoid(_) | ClassSpec::ExplicitDownset(_) => {}
        ClassSpec::Intersection(a, b) | ClassSpec::Union(a, b) | ClassSpec::Inflation(a, b) => {
            geom_leaves(a, out);
            geom_leaves(b, out);
        }
        ClassSpec::SubstClosure(c) | ClassSpec::IteratedInflation(c, _) => geom_leaves(c, out),
    }
}

fn report_cmd(
    cfg: &RunConfig,
    spec: &str,
    n: Option<usize>,
    max_deg: Option<usize>,
    basis_len: usize,
) -> Result<(), String> {
    let n = resolve(n, cfg.n_max, 10);
    let max_deg = resolve(max_deg, cfg.max_deg, 3);
    cfg.validate_lengths(n, cfg.cert_len)?;
    let class = parse_spec(spec)?;
    let mut sections: Vec<Value> = Vec::new();

    // counts
    let e = enumerate(&class, n, false).map_err(|e| e.to_string())?;
    let counts = e.positive_counts();
    println!("== counts (lengths 1..{n}) [oracle-verified] ==");
    print_counts_table(counts);
    sections.push(json!({ "name": "counts", "provenance": "oracle-verified" }));

    // rational fit
    let series = Series::from_positive_counts(counts);
    let fit = match fit_rational(&series, max_deg) {
        Ok(fit) => {
            match &fit {
                Some(gf) => println!("fit [heuristic]: {gf}"),
                None => println!("fit [heuristic]: no rational fit at denominator degree <= {max_deg}"),
            }
            sections.push(json!({ "name": "fit", "provenance": "heuristic" }));
            fit_json(&fit, max_deg)
        }
        Err(err) => {
            println!("fit: skipped ({err})");
            sections.push(json!({ "name": "fit", "provenance": "skipped" }));
            json!({ "status": "skipped", "reason": err.to_string() })
        }
    };

    // growth interval
    let growth = match growth_rate(&series) {
        Ok((lo, hi)) => {
            println!("growth interval [heuristic]: [{lo:.4}, {hi:.4}]");
            sections.push(json!({ "name": "growth", "provenance": "heuristic" }));
            json!({ "low": lo, "high": hi })
        }
        Err(err) => {
            println!("growth: skipped ({err})");
            sections.push(json!({ "name": "growth", "provenance": "skipped" }));
            json!({ "status": "skipped", "reason": err.to_string() })
        }
    };

    // closure basis
    let basis = closure_basis(&class, basis_len).map_err(|e| e.to_string())?;
    let shown: Vec<String> = basis.basis.iter().map(Permutation::to_string).collect();
    println!("closure basis up to length {} [oracle-verified]: {{{}}}", basis.searched_len, shown.join(", "));
    sections.push(json!({ "name": "closure-basis", "provenance": "oracle-verified" }));

    // certification statuses for geometric leaves
    let mut matrices = Vec::new();
    geom_leaves(&class, &mut matrices);
    let mut certifications: Vec<Value> = Vec::new();
    for m in &matrices {
        let cert_len = cfg.cert_len.unwrap_or(6).min(n);
        let nf = normal_form_automaton(m, cert_len).map_err(|e| e.to_string())?;
        let label = nf.certification.label();
        println!("geom leaf: encoding automaton {label} to length {cert_len}");
        certifications.push(json!({ "certification": label, "certified_len": cert_len }));
    }
    if !matrices.is_empty() {
        sections.push(json!({ "name": "certifications", "provenance": "automaton-certified" }));
    }

    let doc = json!({
        "format": "permclass-report-v1",
        "spec": spec,
        "n_max": n,
        "counts": counts_json(counts),
        "fit": fit,
        "growth": growth,
        "closure_basis": {
            "searched_len": basis.searched_len,
            "elements": shown,
            "parallel_alternations": basis.parallel_alternations,
        },
        "certifications": certifications,
        "sections": sections,
    });
    emit(cfg, &doc)
}
