use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use jumploci_core::alexander::AlexanderMatrix;
use jumploci_core::holonomy::{holonomy_from_threeform, lie_ranks_capped, QuadraticData};
use jumploci_core::laurent::{sample_characters, Character};
use jumploci_core::resonance::{
    classify_malcev_with, isotropy_lower_bound, r1_is_full_with, IsotropySearch, R1Config,
    ThreeForm,
};
use jumploci_core::seifert::{brieskorn_report, sweep_inputs, BrieskornInput, BrieskornReport};
use jumploci_core::Presentation;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::Report;
use crate::RunConfig;

pub fn alex(text: &str, ideals: &[usize], cfg: &RunConfig) -> Result<Report> {
    let p = Presentation::parse_any(text)?;
    let a = AlexanderMatrix::new(&p)?;
    let ab = a.abelianization();
    let matrix: Vec<Vec<String>> = a
        .entries()
        .iter()
        .map(|r| r.iter().map(|e| e.to_string()).collect())
        .collect();
    let delta = a.alexander_polynomial()?;
    let mut ideal_json = vec![];
    let mut rows = vec![];
    let mut text_out = format!("presentation: {p}\nb1: {}\n", ab.b1);
    let torsion: Vec<String> = ab.torsion.iter().map(|t| t.to_string()).collect();
    writeln!(text_out, "torsion: [{}]", torsion.join(", ")).unwrap();
    for &d in ideals {
        let e = a.elementary_ideal(d);
        let gens: Vec<String> = e.generators.iter().map(|g| g.to_string()).collect();
        writeln!(
            text_out,
            "E_{d}: {}{}",
            if gens.is_empty() {
                "(0)".to_string()
            } else {
                format!("({})", gens.join(", "))
            },
            if e.truncated { " [truncated]" } else { "" }
        )
        .unwrap();
        rows.push(vec![
            d.to_string(),
            e.generators.len().to_string(),
            e.is_zero_ideal().to_string(),
            e.is_unit_ideal().to_string(),
            e.truncated.to_string(),
            gens.join(" ; "),
        ]);
        ideal_json.push(json!({
            "d": d,
            "generators": gens,
            "zero": e.is_zero_ideal(),
            "unit": e.is_unit_ideal(),
            "truncated": e.truncated,
        }));
    }
    writeln!(text_out, "delta: {delta}").unwrap();
    let almost = if ab.b1 == 0 {
        Value::Null
    } else {
        let r = a.almost_principal_sampled(cfg.trials, cfg.seed)?;
        writeln!(
            text_out,
            "almost principal on {} sampled characters (seed {}): {}",
            r.trials,
            r.seed,
            r.consistent()
        )
        .unwrap();
        json!({
            "trials": r.trials,
            "seed": r.seed,
            "consistent": r.consistent(),
            "truncated": r.truncated,
            "counterexamples": r.counterexamples.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    };
    let json = json!({
        "presentation": p.to_string(),
        "b1": ab.b1,
        "torsion": torsion,
        "matrix": matrix,
        "ideals": ideal_json,
        "delta": delta.to_string(),
        "almost_principal": almost,
    });
    Ok(Report {
        json,
        header: vec![
            "d",
            "num_generators",
            "zero",
            "unit",
            "truncated",
            "generators",
        ],
        rows,
        text: text_out,
        failed: false,
    })
}

pub fn charvar(text: &str, characters: &[String], d: usize, cfg: &RunConfig) -> Result<Report> {
    let p = Presentation::parse_any(text)?;
    let a = AlexanderMatrix::new(&p)?;
    let b1 = a.num_vars();
    if b1 == 0 {
        bail!("the abelianization is finite; there are no torsion characters of Z^b1 to test");
    }
    let (chars, sampled) = if characters.is_empty() {
        let c = sample_characters(b1, cfg.trials, cfg.seed);
        (c, json!({ "seed": cfg.seed, "trials": cfg.trials }))
    } else {
        let c = characters
            .iter()
            .map(|s| Character::parse(s).with_context(|| format!("character {s:?}")))
            .collect::<Result<Vec<_>>>()?;
        (c, Value::Null)
    };
    let ideal = a.elementary_ideal(d);
    let mut results = vec![];
    let mut rows = vec![];
    let mut text_out = format!("V_{d} membership for {p}\n");
    let mut disagreements = 0;
    for chi in &chars {
        let h1 = a
            .twisted_h1_dim(chi)
            .with_context(|| format!("character {chi}"))?;
        let by_rank = h1 >= d;
        let by_ideal = ideal.vanishes_at(chi)?;
        let agree = by_rank == by_ideal;
        disagreements += usize::from(!agree);
        writeln!(
            text_out,
            "{chi}: dim H1 = {h1}, rank test {by_rank}, ideal test {by_ideal}{}",
            if agree { "" } else { "  DISAGREE" }
        )
        .unwrap();
        rows.push(vec![
            chi.to_string(),
            h1.to_string(),
            by_rank.to_string(),
            by_ideal.to_string(),
            agree.to_string(),
        ]);
        results.push(json!({
            "character": chi.to_string(),
            "twisted_h1_dim": h1,
            "rank_based": by_rank,
            "ideal_based": by_ideal,
            "agree": agree,
        }));
    }
    let json = json!({
        "presentation": p.to_string(),
        "d": d,
        "ideal_truncated": ideal.truncated,
        "sampled": sampled,
        "results": results,
        "all_agree": disagreements == 0,
    });
    Ok(Report {
        json,
        header: vec![
            "character",
            "twisted_h1_dim",
            "rank_based",
            "ideal_based",
            "agree",
        ],
        rows,
        text: text_out,
        failed: disagreements > 0,
    })
}

fn r1_config(cfg: &RunConfig) -> R1Config {
    R1Config {
        symbolic_max_n: cfg.symbolic_threshold,
        trials: cfg.trials,
        seed: cfg.seed,
    }
}

pub fn classify(text: &str, cfg: &RunConfig) -> Result<Report> {
    let eta = ThreeForm::from_json(text)?;
    let r1cfg = r1_config(cfg);
    let c = classify_malcev_with(&eta, &r1cfg);
    let r1 = r1_is_full_with(&eta, &r1cfg);
    let search = IsotropySearch {
        seed: cfg.seed,
        ..IsotropySearch::default()
    };
    let bound = isotropy_lower_bound(&eta, &search);
    let witness: Vec<Vec<String>> = bound
        .witness
        .basis()
        .iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect())
        .collect();
    let mut json = serde_json::to_value(&c)?;
    json["n"] = json!(eta.dim());
    json["r1"] = serde_json::to_value(&r1)?;
    json["isotropy_search"] = json!({
        "lower_bound": bound.dim,
        "witness": witness,
        "seed": search.seed,
        "restarts": search.restarts,
        "coordinate_search_complete": bound.coordinate_search_complete,
    });
    let fmt_opt = |o: Option<usize>| o.map_or_else(|| "-".to_string(), |v| v.to_string());
    let label = match &c.class {
        jumploci_core::MalcevClass::Trivial => "Trivial".to_string(),
        jumploci_core::MalcevClass::Free(n) => format!("Free({n})"),
        jumploci_core::MalcevClass::ZxSurface(g) => format!("ZxSurface({g})"),
        jumploci_core::MalcevClass::Obstructed(r) => format!("Obstructed({r})"),
    };
    let text_out = format!(
        "class: {label}\ncorank: {}\nisotropy index: {}\ndecided by: {}\nR1 full: {}\nisotropy search lower bound: {}\n",
        fmt_opt(c.class.corank()),
        fmt_opt(c.class.isotropy_index()),
        c.step.description(),
        r1.full,
        bound.dim
    );
    let rows = vec![vec![
        eta.dim().to_string(),
        c.class.tag().to_string(),
        label,
        fmt_opt(c.class.corank()),
        fmt_opt(c.class.isotropy_index()),
        c.step.description().to_string(),
        bound.dim.to_string(),
    ]];
    Ok(Report {
        json,
        header: vec![
            "n",
            "class",
            "label",
            "corank",
            "isotropy_index",
            "step",
            "isotropy_lower_bound",
        ],
        rows,
        text: text_out,
        failed: false,
    })
}

const BRIESKORN_HEADER: [&str; 13] = [
    "exponents",
    "status",
    "genus",
    "euler",
    "orbits",
    "torsion_order",
    "fiber_class_order",
    "alpha",
    "components",
    "dim",
    "translated",
    "one_formal",
    "tangent_cone_holds",
];

fn brieskorn_row(exps: &[u64], r: &std::result::Result<BrieskornReport, String>) -> Vec<String> {
    let e = exps
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    match r {
        Ok(r) => {
            let orbits = r
                .seifert
                .orbits()
                .iter()
                .map(|o| format!("{}x({}/{})", o.multiplicity, o.beta, o.alpha))
                .collect::<Vec<_>>()
                .join(" ");
            vec![
                e,
                "ok".into(),
                r.seifert.genus().to_string(),
                r.seifert.euler().to_string(),
                orbits,
                r.torsion.torsion_order.to_string(),
                r.torsion.fiber_class_order.to_string(),
                r.torsion.alpha.to_string(),
                r.components.positive_dim_count.to_string(),
                r.components.component_dim.to_string(),
                r.components.translated_count.to_string(),
                r.one_formal.to_string(),
                r.tangent_cone.formula_holds.to_string(),
            ]
        }
        Err(msg) => {
            let mut row = vec![e, format!("error: {msg}")];
            row.resize(BRIESKORN_HEADER.len(), String::new());
            row
        }
    }
}

fn brieskorn_text(r: &BrieskornReport) -> String {
    let mut s = String::new();
    let exps: Vec<String> = r.exponents.iter().map(|a| a.to_string()).collect();
    writeln!(s, "Sigma({})", exps.join(",")).unwrap();
    writeln!(
        s,
        "  genus {}, euler number {}",
        r.seifert.genus(),
        r.seifert.euler()
    )
    .unwrap();
    for o in r.seifert.orbits() {
        writeln!(s, "  orbit ({}, {}) x {}", o.alpha, o.beta, o.multiplicity).unwrap();
    }
    writeln!(
        s,
        "  |T| = {}, ord(h) = {}, alpha = {}",
        r.torsion.torsion_order, r.torsion.fiber_class_order, r.torsion.alpha
    )
    .unwrap();
    writeln!(
        s,
        "  {} positive-dimensional components of dimension {} ({} translated)",
        r.components.positive_dim_count, r.components.component_dim, r.components.translated_count
    )
    .unwrap();
    writeln!(
        s,
        "  1-formal: {}, tangent cone formula holds: {}",
        r.one_formal, r.tangent_cone.formula_holds
    )
    .unwrap();
    s
}

pub fn brieskorn(target: &str) -> Result<Report> {
    let input = BrieskornInput::parse(target)?;
    let r = brieskorn_report(&input)?;
    let row = brieskorn_row(input.exponents(), &Ok(r.clone()));
    Ok(Report {
        json: serde_json::to_value(&r)?,
        header: BRIESKORN_HEADER.to_vec(),
        rows: vec![row],
        text: brieskorn_text(&r),
        failed: false,
    })
}

pub fn sweep(max: u64, lengths: &[usize]) -> Result<Report> {
    if max < 2 {
        bail!("sweep needs --max >= 2");
    }
    let inputs: Vec<BrieskornInput> = lengths.iter().flat_map(|&n| sweep_inputs(max, n)).collect();
    // collect preserves input order, so the output is independent of scheduling
    let results: Vec<_> = inputs
        .par_iter()
        .map(|i| brieskorn_report(i).map_err(|e| e.to_string()))
        .collect();
    let mut rows = vec![];
    let mut items = vec![];
    let mut failures = 0;
    for (i, r) in inputs.iter().zip(&results) {
        rows.push(brieskorn_row(i.exponents(), r));
        match r {
            Ok(r) => items.push(serde_json::to_value(r)?),
            Err(msg) => {
                failures += 1;
                items.push(json!({ "exponents": i.exponents(), "error": msg }));
            }
        }
    }
    let text_out = format!(
        "{} inputs (max {max}, n in {lengths:?}), {failures} failures\n",
        inputs.len()
    );
    Ok(Report {
        json: json!({ "max": max, "n": lengths, "count": inputs.len(), "failures": failures, "results": items }),
        header: BRIESKORN_HEADER.to_vec(),
        rows,
        text: text_out,
        failed: failures > 0,
    })
}

pub fn holonomy(text: &str, cfg: &RunConfig) -> Result<Report> {
    let value: Value = serde_json::from_str(text).context("holonomy input must be JSON")?;
    let (source, q) = if value.get("relations").is_some() {
        ("relations", QuadraticData::from_json(text)?)
    } else {
        (
            "threeform",
            holonomy_from_threeform(&ThreeForm::from_json(text)?),
        )
    };
    let ranks = lie_ranks_capped(&q, cfg.degree, cfg.degree_cap)?;
    let rows = ranks
        .ranks
        .iter()
        .enumerate()
        .map(|(i, r)| vec![(i + 1).to_string(), r.to_string()])
        .collect();
    let text_out = ranks
        .ranks
        .iter()
        .enumerate()
        .map(|(i, r)| format!("degree {}: {r}\n", i + 1))
        .collect();
    Ok(Report {
        json: json!({
            "source": source,
            "n": q.num_generators(),
            "relations": q.relations().len(),
            "degree": cfg.degree,
            "ranks": ranks.ranks,
        }),
        header: vec!["degree", "rank"],
        rows,
        text: text_out,
        failed: false,
    })
}
