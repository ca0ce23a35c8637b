use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use subfields::config::Config;
use subfields::fieldsearch::{field_search, simulate_with_config, starting_group};
use subfields::perm::catalog::by_name;
use subfields::poly::parse::parse_poly;
use subfields::poly::IntPoly;
use subfields::{Error, Result};

use crate::args::{Args, Format, Mode};
use crate::report::{poly_input, read_report, search_report, simulation_report, starting_json, Report};

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Subfields => "subfields",
        Mode::GeneratingOnly => "generating-only",
        Mode::StartingGroup => "starting-group",
        Mode::Simulate => "simulate",
    }
}

fn read_poly(args: &Args) -> Result<IntPoly> {
    let text = match (&args.poly, &args.poly_file) {
        (Some(s), None) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
        _ => return Err(Error::Parse("give exactly one of --poly and --poly-file".into())),
    };
    parse_poly(&text)
}

fn ms(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn with_timings(mut rep: Report, phases: &[(&str, std::time::Duration)], keep: bool) -> Report {
    if keep {
        let map: BTreeMap<String, f64> = phases.iter().map(|(k, d)| (k.to_string(), ms(*d))).collect();
        rep.timings_ms = Some(map);
    }
    rep
}

/// Runs the selected mode and builds its report.
pub fn execute(args: &Args) -> Result<Report> {
    let config: Config = args.config();
    let mode = mode_name(args.mode);
    let keep = !args.no_timings;
    if args.mode == Mode::Simulate {
        let spec = args.group_spec.as_deref().ok_or_else(|| Error::Parse("--mode simulate needs --group-spec".into()))?;
        let g = by_name(spec)?;
        let start = Instant::now();
        let sim = simulate_with_config(&g, &config)?;
        let input = crate::report::Input {
            mode: mode.into(),
            seed: args.seed,
            group_spec: Some(spec.into()),
            ..Default::default()
        };
        return Ok(with_timings(simulation_report(input, &sim), &[("simulation", start.elapsed())], keep));
    }
    let f = read_poly(args)?;
    let input = poly_input(mode, args.seed, &f);
    match args.mode {
        Mode::StartingGroup => {
            let start = Instant::now();
            let sg = starting_group(&f, &config)?;
            let total = start.elapsed();
            let records = sg.search.all_subfields(&config)?;
            let mut rep = search_report(input, &sg.search, &records);
            rep.starting_group = Some(starting_json(&sg));
            let mut phases = sg.search.timings.clone();
            phases.push(("starting_group", total));
            Ok(with_timings(rep, &phases, keep))
        }
        Mode::Subfields | Mode::GeneratingOnly => {
            let out = field_search(&f, &config)?;
            let mut phases = out.timings.clone();
            let records = if args.mode == Mode::Subfields {
                let start = Instant::now();
                let all = out.all_subfields(&config)?;
                phases.push(("lattice", start.elapsed()));
                all
            } else {
                out.subfields.clone()
            };
            Ok(with_timings(search_report(input, &out, &records), &phases, keep))
        }
        Mode::Simulate => unreachable!(),
    }
}

/// Human-readable rendering of a report.
pub fn render_text(rep: &Report, verbose: bool) -> String {
    let mut s = String::new();
    if let Some(p) = &rep.input.poly {
        let _ = writeln!(s, "polynomial: {p}");
    }
    if let Some(g) = &rep.input.group_spec {
        let _ = writeln!(s, "group: {g}");
    }
    if let Some(ins) = &rep.inspection {
        let sizes: Vec<String> = ins.possible_block_sizes.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            "possible block sizes: {}; order divisor {}; parity {}; {} primes",
            if sizes.is_empty() { "none".into() } else { sizes.join(", ") },
            ins.order_divisor,
            ins.parity,
            ins.primes_sampled
        );
        if let (Some(l), Some(sp)) = (ins.lll_prime, ins.splitting_prime) {
            let _ = writeln!(s, "LLL prime {l}; splitting prime {sp}");
        }
    }
    if verbose {
        for t in &rep.trace {
            let _ = writeln!(
                s,
                "  f_{} (degree {}): {}, {}, precisions {:?}, |G| = {}",
                t.factor, t.factor_degree, t.verdict, t.outcome, t.precisions, t.group_order
            );
        }
    }
    if let Some(a) = &rep.final_adjust {
        let _ = writeln!(
            s,
            "final adjustment: {} index-2 subgroups, {} survivors, {}",
            a.subgroups,
            a.survivors,
            if a.found.is_some() { "one more subfield" } else { "nothing new" }
        );
    }
    if rep.simulation.is_none() {
        if rep.subfields.is_empty() {
            let _ = writeln!(s, "no subfields");
        }
        for r in &rep.subfields {
            let g = poly_from_strings(&r.g);
            let _ = writeln!(
                s,
                "degree {}{}: g = {}; h = {}",
                r.degree,
                if r.principal { " (principal)" } else { "" },
                g,
                rational_poly_text(&r.h)
            );
            if verbose {
                let _ = writeln!(s, "  blocks {:?}", r.blocks);
            }
        }
    }
    if let Some(gs) = &rep.generating_set {
        let _ = writeln!(s, "generating subfields: {} of degrees {:?}; LLL calls: {}", gs.count, gs.degrees, gs.lll_calls);
    }
    if let Some(g) = &rep.group {
        let _ = writeln!(s, "group order: {}", g.order);
        if verbose {
            let _ = writeln!(s, "  generators: {}", g.generators.join(", "));
        }
    }
    if let Some(st) = &rep.starting_group {
        let _ = writeln!(s, "starting group order: {} (wreath intersection {})", st.order, st.intersection_order);
        if verbose {
            let _ = writeln!(s, "  generators: {}", st.generators.join(", "));
        }
        for d in &st.descent {
            let _ = writeln!(s, "  degree {}: projected order {}, lower bound {}", d.degree, d.projected_order, d.lower_bound);
        }
    }
    if let Some(sim) = &rep.simulation {
        let _ = writeln!(
            s,
            "oracle calls: {}; block systems found {} of {}; frobenius {}",
            sim.oracle_calls, sim.found_systems, sim.true_systems, sim.frobenius
        );
    }
    if let Some(t) = &rep.timings_ms {
        for (k, v) in t {
            let _ = writeln!(s, "time {k}: {v} ms");
        }
    }
    s
}

fn poly_from_strings(c: &[String]) -> String {
    IntPoly::new(c.iter().map(|x| x.parse().unwrap_or_default()).collect()).to_string()
}

fn rational_poly_text(c: &[String]) -> String {
    let mut terms = Vec::new();
    for (k, a) in c.iter().enumerate().rev() {
        if a == "0" {
            continue;
        }
        terms.push(match k {
            0 => format!("({a})"),
            1 => format!("({a})*x"),
            _ => format!("({a})*x^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Output text and exit code for parsed arguments.
pub fn run(args: &Args) -> (String, i32) {
    if let Some(path) = &args.verify {
        let res = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
            .and_then(|t| read_report(&t));
        return match res {
            Ok((f, recs)) => (format!("{} subfield records of {f} verified\n", recs.len()), 0),
            Err(e) => (format!("error: {e}\n"), 1),
        };
    }
    match execute(args) {
        Ok(rep) => {
            let text = match args.format {
                Format::Json => serde_json::to_string_pretty(&rep).expect("report serializes") + "\n",
                Format::Text => render_text(&rep, args.verbose),
            };
            (text, 0)
        }
        Err(e) => (format!("error: {e}\n"), if e.is_budget() { 2 } else { 1 }),
    }
}
