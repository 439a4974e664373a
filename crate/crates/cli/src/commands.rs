use crate::{Cli, Command, CountingSense, EncodeWhat, Format, ScanKind, SpectraMode};
use anyhow::{Context, Result};
use num::ToPrimitive;
use serde_json::json;
use std::fmt::Write as _;
use sumfree_core::bitset::BitSet;
use sumfree_core::counting::{
    self, Budget, CountMode, JansonStats, PittelConstant,
};
use sumfree_core::encoding::{
    self, Certificate, CertificateMode, EncodingParams, EncodingResult,
};
use sumfree_core::extremal::{self, ScanMode};
use sumfree_core::group::GroupSpec;
use sumfree_core::hypergraph::{cayley_graph_star, SchurHypergraph, VertexMode};
use sumfree_core::spectral;
use sumfree_core::Error;

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::GroupInfo { spec } => group_info(cli, spec),
        Command::Sf0 { spec } => sf0(cli, spec),
        Command::Count { spec, m_range, mode } => count(cli, spec, m_range, *mode),
        Command::Encode { what } => encode(cli, what),
        Command::Decode { certificate, verify } => decode(cli, certificate, *verify),
        Command::Spectra { spec, set, mode, dense } => spectra(cli, spec, set, *mode, *dense),
        Command::Janson { graph, m } => janson(cli, graph, *m),
        Command::Blowup { t, part, d, spectrum } => blowup(cli, *t, *part, *d, *spectrum),
        Command::Stability {
            spec,
            min_size_fraction,
            mode,
            samples,
            sweep,
        } => stability(cli, spec, *min_size_fraction, *mode, *samples, *sweep),
        Command::Report { k_range } => report(cli, k_range),
    }
}

fn emit(cli: &Cli, content: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_index_set(text: &str, n: usize) -> Result<BitSet> {
    let mut set = BitSet::new(n);
    for tok in text.split(',').filter(|t| !t.trim().is_empty()) {
        let v: usize = tok
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad element index `{tok}`")))?;
        if v >= n {
            return Err(Error::domain(format!("element index {v} out of range 0..{n}")).into());
        }
        set.insert(v);
    }
    Ok(set)
}

/// Inclusive `a..b` range, or a single value.
fn parse_range(text: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.parse().map_err(|_| Error::parse(format!("bad range `{text}`")))?;
        let b: u64 = b.parse().map_err(|_| Error::parse(format!("bad range `{text}`")))?;
        Ok((a..=b).collect())
    } else {
        let v: u64 = text
            .parse()
            .map_err(|_| Error::parse(format!("bad range `{text}`")))?;
        Ok(vec![v])
    }
}

fn ratio_to_string(r: &num::rational::Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn group_info(cli: &Cli, spec: &str) -> Result<()> {
    let g = GroupSpec::parse(spec)?;
    let q = g.smallest_type_i_prime();
    let mu = q.map(|_| extremal::mu(&g).expect("Type I"));
    let order_q = q.map(|q| g.count_elements_of_order(q));
    let index2 = g.index_two_subgroups().len();
    match cli.format {
        Format::Json => {
            let obj = json!({
                "schema": 1,
                "group": g.display_name(),
                "order": g.order(),
                "factors": g.factors(),
                "type_i_prime": q,
                "mu": mu.map(|m| ratio_to_string(&m)),
                "mu_times_order": q.map(|_| extremal::mu_times_order(&g).expect("Type I")),
                "order_q_elements": order_q,
                "index_two_subgroups": index2,
            });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))
        }
        Format::Csv => {
            let mut out = String::from("# schema=1\nkey,value\n");
            writeln!(out, "group,{}", g.display_name())?;
            writeln!(out, "order,{}", g.order())?;
            match q {
                Some(q) => {
                    writeln!(out, "type_i_prime,{q}")?;
                    writeln!(out, "mu,{}", ratio_to_string(&mu.unwrap()))?;
                    writeln!(out, "mu_times_order,{}", extremal::mu_times_order(&g)?)?;
                    writeln!(out, "order_q_elements,{}", order_q.unwrap())?;
                }
                None => writeln!(out, "type_i_prime,not Type I")?,
            }
            writeln!(out, "index_two_subgroups,{index2}")?;
            emit(cli, &out)
        }
    }
}

fn sf0(cli: &Cli, spec: &str) -> Result<()> {
    let g = GroupSpec::parse(spec)?;
    let family = extremal::enumerate_sf0(&g)?;
    let cardinality = extremal::sf0_cardinality_check(&g)?;
    let intersections = extremal::pairwise_intersection_check(&family)?;
    match cli.format {
        Format::Json => {
            let obj = json!({
                "schema": 1,
                "group": g.display_name(),
                "member_size": family.member_size,
                "sets": family.sets,
                "cardinality": cardinality,
                "intersections": intersections,
            });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))
        }
        Format::Csv => {
            // one sorted index list per line
            let mut out = String::from("# schema=1\n");
            out.push_str(&family.to_text());
            emit(cli, &out)
        }
    }
}

fn count(cli: &Cli, spec: &str, m_range: &str, mode: CountingSense) -> Result<()> {
    let g = GroupSpec::parse(spec)?;
    let ms = parse_range(m_range)?;
    let sense = match mode {
        CountingSense::Group => CountMode::GroupSense,
        CountingSense::Hypergraph => CountMode::HypergraphSense,
    };
    let budget = Budget::new(cli.budget_nodes);
    let mut rows = Vec::new();
    let mut exhausted = false;
    for &m in &ms {
        let exact = counting::count_sum_free(&g, m as usize, sense, budget);
        let prediction = counting::sf_count_prediction(&g, m)?;
        let (exact_cell, ratio_cell) = match exact {
            Ok(v) => {
                let ratio = if prediction.leading == num::BigUint::ZERO {
                    String::new()
                } else {
                    let e = v.to_f64().unwrap_or(f64::INFINITY);
                    let l = prediction.leading.to_f64().unwrap_or(f64::INFINITY);
                    format!("{}", e / l)
                };
                (v.to_string(), ratio)
            }
            Err(Error::BudgetExhausted { .. }) => {
                exhausted = true;
                ("BUDGET_EXHAUSTED".to_string(), String::new())
            }
            Err(e) => return Err(e.into()),
        };
        rows.push(json!({
            "n": g.order(),
            "m": m,
            "exact": exact_cell,
            "leading": prediction.leading.to_string(),
            "lower_bonf": prediction.lower_bonferroni.to_string(),
            "upper_bonf": prediction.upper_bonferroni.to_string(),
            "ratio": ratio_cell,
        }));
    }
    match cli.format {
        Format::Json => {
            let obj = json!({ "schema": 1, "group": g.display_name(), "rows": rows });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))?;
        }
        Format::Csv => {
            let mut out = String::from("# schema=1\nn,m,exact,leading,lower_bonf,upper_bonf,ratio\n");
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r["n"],
                    r["m"],
                    r["exact"].as_str().unwrap(),
                    r["leading"].as_str().unwrap(),
                    r["lower_bonf"].as_str().unwrap(),
                    r["upper_bonf"].as_str().unwrap(),
                    r["ratio"].as_str().unwrap(),
                )?;
            }
            emit(cli, &out)?;
        }
    }
    if exhausted {
        return Err(Error::BudgetExhausted {
            visited: cli.budget_nodes,
            partial: num::BigUint::ZERO,
        }
        .into());
    }
    Ok(())
}

fn encode(cli: &Cli, what: &EncodeWhat) -> Result<()> {
    match what {
        EncodeWhat::Basic {
            group,
            cayley,
            set,
            stop_size,
        } => {
            let g = GroupSpec::parse(group)?;
            let n = g.order_usize();
            let s = parse_index_set(cayley, n)?;
            let i = parse_index_set(set, n)?;
            let graph = cayley_graph_star(&g, &s, VertexMode::Full)?;
            let res = encoding::basic_encode(&graph, &i, *stop_size)?;
            let cert = Certificate {
                mode: CertificateMode::Basic,
                params: vec![
                    ("group".into(), g.display_name()),
                    ("cayley".into(), join_indices(&s.to_vec(), ",")),
                    ("stop_size".into(), stop_size.to_string()),
                ],
                selected: res.selected.clone(),
            };
            emit(cli, &cert.to_text())
        }
        EncodeWhat::Main {
            group,
            set,
            alpha,
            beta,
            gamma,
            capital_c,
            d,
            verify,
        } => {
            let g = GroupSpec::parse(group)?;
            let n = g.order_usize();
            let i = parse_index_set(set, n)?;
            let m = i.len();
            let alpha = match alpha {
                Some(a) => *a,
                None => {
                    let mu = extremal::mu(&g)?;
                    *mu.numer() as f64 / *mu.denom() as f64
                }
            };
            let mut params =
                EncodingParams::new(0.5, alpha, (*beta).min(alpha), *gamma, *capital_c, n, m)?;
            if let Some(d) = d {
                params.d = *d;
                params.validate(m)?;
            }
            let h = SchurHypergraph::new(g.clone());
            let family = extremal::enumerate_sf0(&g)?;
            let res = encoding::main_encode(&h, &family, &i, &params)?;
            if *verify {
                let claims = encoding::verify_claims(&res, &params, n, m);
                if !claims.all_ok() {
                    return Err(Error::assertion(format!("claim check failed: {claims:?}")).into());
                }
            }
            let cert = main_certificate(&g, &params, m, &res);
            emit(cli, &cert.to_text())
        }
    }
}

fn join_indices(v: &[usize], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn main_certificate(
    g: &GroupSpec,
    params: &EncodingParams,
    m: usize,
    res: &EncodingResult,
) -> Certificate {
    Certificate {
        mode: CertificateMode::Main,
        params: vec![
            ("group".into(), g.display_name()),
            ("stop_fraction".into(), params.stop_fraction.to_string()),
            ("alpha".into(), params.alpha.to_string()),
            ("beta".into(), params.beta.to_string()),
            ("gamma".into(), params.gamma.to_string()),
            ("capital_c".into(), params.capital_c.to_string()),
            ("d".into(), params.d.to_string()),
            ("m".into(), m.to_string()),
        ],
        selected: res.selected.clone(),
    }
}

fn cert_param<'a>(cert: &'a Certificate, key: &str) -> Result<&'a str> {
    cert.get(key)
        .ok_or_else(|| Error::decode(format!("certificate is missing `{key}`")).into())
}

fn decode(cli: &Cli, path: &std::path::Path, verify: bool) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let cert = Certificate::parse(&text)?;
    let g = GroupSpec::parse(cert_param(&cert, "group")?)?;
    let n = g.order_usize();
    let available = match cert.mode {
        CertificateMode::Basic => {
            let s = parse_index_set(cert_param(&cert, "cayley")?, n)?;
            let stop: usize = cert_param(&cert, "stop_size")?
                .parse()
                .map_err(|_| Error::decode("bad stop_size"))?;
            let graph = cayley_graph_star(&g, &s, VertexMode::Full)?;
            encoding::basic_decode(&graph, &cert.selected, stop)?
        }
        CertificateMode::Main => {
            let f = |k: &str| -> Result<f64> {
                cert_param(&cert, k)?
                    .parse::<f64>()
                    .map_err(|_| Error::decode(format!("bad {k}")).into())
            };
            let params = EncodingParams {
                stop_fraction: f("stop_fraction")?,
                alpha: f("alpha")?,
                beta: f("beta")?,
                gamma: f("gamma")?,
                capital_c: f("capital_c")?,
                d: cert_param(&cert, "d")?
                    .parse()
                    .map_err(|_| Error::decode("bad d"))?,
            };
            let m: usize = cert_param(&cert, "m")?
                .parse()
                .map_err(|_| Error::decode("bad m"))?;
            let h = SchurHypergraph::new(g.clone());
            let family = extremal::enumerate_sf0(&g)?;
            let res = encoding::main_replay(&h, &family, &cert.selected, &params)?;
            if verify {
                let claims = encoding::verify_claims(&res, &params, n, m);
                if !claims.all_ok() {
                    return Err(Error::assertion(format!("claim check failed: {claims:?}")).into());
                }
            }
            res.available
        }
    };
    let list = join_indices(&available.to_vec(), " ");
    match cli.format {
        Format::Json => {
            let obj = json!({ "schema": 1, "available": available.to_vec() });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))
        }
        Format::Csv => emit(cli, &format!("# schema=1\n{list}\n")),
    }
}

fn spectra(cli: &Cli, spec: &str, set: &str, mode: SpectraMode, dense: bool) -> Result<()> {
    let g = GroupSpec::parse(spec)?;
    let n = g.order_usize();
    let s = parse_index_set(set, n)?;
    let spectrum = match mode {
        SpectraMode::Full => {
            let analytic = spectral::cayley_spectrum_analytic(&g, &s, true)?;
            if dense {
                let graph = cayley_graph_star(&g, &s, VertexMode::Full)?;
                let solver = spectral::dense_symmetric_spectrum(&graph)?;
                let dev = analytic.max_abs_deviation(&solver);
                if dev > 1e-8 {
                    return Err(Error::assertion(format!(
                        "analytic and dense spectra deviate by {dev}"
                    ))
                    .into());
                }
            }
            analytic
        }
        SpectraMode::ExcludeS => {
            let graph = cayley_graph_star(&g, &s, VertexMode::ExcludeS)?;
            spectral::dense_symmetric_spectrum(&graph)?
        }
    };
    let lambda = spectral::lambda_s(&g, &s)?;
    match cli.format {
        Format::Json => {
            let obj = json!({
                "schema": 1,
                "group": g.display_name(),
                "set": s.to_vec(),
                "lambda_s": lambda,
                "spectrum": spectrum,
            });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))
        }
        Format::Csv => {
            let mut out = String::from("# schema=1\n");
            out.push_str(&spectrum.to_csv());
            emit(cli, &out)
        }
    }
}

fn janson(cli: &Cli, graph: &str, m: u64) -> Result<()> {
    let g = crate::graphs::parse_graph(graph)?;
    let n = g.vertex_count() as u64;
    let family: Vec<BitSet> = g
        .edges()
        .iter()
        .map(|&(u, v)| BitSet::from_indices(n as usize, &[u, v]))
        .collect();
    let stats: JansonStats = counting::janson_stats(&family, m, n);
    let bounds = counting::janson_bounds(&stats, PittelConstant::SqrtM);
    let exact = counting::exact_no_ui_probability(&family, m, n).ok();
    let exact_f = exact
        .as_ref()
        .map(|r| r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap());
    if let (Some(e), true) = (exact_f, m >= 1) {
        if e > bounds.transferred_product + 1e-12 {
            return Err(Error::assertion(format!(
                "Janson transfer violated: exact {e} > bound {}",
                bounds.transferred_product
            ))
            .into());
        }
    }
    match cli.format {
        Format::Json => {
            let obj = json!({
                "schema": 1,
                "graph": graph,
                "stats": stats,
                "bounds": bounds,
                "exact": exact.map(|r| r.to_string()),
                "exact_float": exact_f,
            });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))
        }
        Format::Csv => {
            let mut out = String::from("# schema=1\nkey,value\n");
            writeln!(out, "n,{n}")?;
            writeln!(out, "m,{m}")?;
            writeln!(out, "mu,{}", stats.mu)?;
            writeln!(out, "delta,{}", stats.delta_sum)?;
            writeln!(out, "product_bound,{}", bounds.product_bound)?;
            writeln!(out, "max_form,{}", bounds.max_form)?;
            writeln!(out, "transfer_factor,{}", bounds.transfer_factor)?;
            writeln!(out, "transferred_product,{}", bounds.transferred_product)?;
            if let Some(e) = exact {
                writeln!(out, "exact,{e}")?;
            }
            emit(cli, &out)
        }
    }
}

fn blowup(cli: &Cli, t: usize, part: usize, d: usize, spectrum: bool) -> Result<()> {
    let g = spectral::blowup_graph(t, part, d, cli.seed)?;
    let spec = spectral::dense_symmetric_spectrum(&g)?;
    let target = -(d as f64) / t as f64;
    let present = spec.eigenvalues.iter().any(|e| (e - target).abs() < 1e-8);
    if !present {
        return Err(Error::assertion(format!(
            "expected eigenvalue {target} missing from the blow-up spectrum"
        ))
        .into());
    }
    match cli.format {
        Format::Json => {
            let obj = json!({
                "schema": 1,
                "t": t, "part": part, "d": d, "seed": cli.seed,
                "vertices": g.vertex_count(),
                "edges": g.edges(),
                "spectrum": spec,
                "minus_d_over_t_present": present,
            });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))
        }
        Format::Csv => {
            let mut out = String::from("# schema=1\n");
            if spectrum {
                out.push_str(&spec.to_csv());
            } else {
                out.push_str(&g.to_edge_list());
            }
            emit(cli, &out)
        }
    }
}

fn stability(
    cli: &Cli,
    spec: &str,
    min_size_fraction: f64,
    mode: ScanKind,
    samples: u64,
    sweep: bool,
) -> Result<()> {
    let g = GroupSpec::parse(spec)?;
    let h = SchurHypergraph::new(g.clone());
    let scan = match mode {
        ScanKind::Exhaustive => ScanMode::Exhaustive,
        ScanKind::Sample => ScanMode::Sample {
            count: samples,
            seed: cli.seed,
        },
    };
    let profile = extremal::stability_profile(&g, &h, min_size_fraction, scan)?;
    match cli.format {
        Format::Json => {
            let obj = json!({
                "schema": 1,
                "group": g.display_name(),
                "edges": profile.hypergraph_edges,
                "rows": profile.rows,
                "frontier": profile.frontier,
            });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))
        }
        Format::Csv => {
            let mut out = String::from("# schema=1\n");
            if sweep {
                out.push_str("gamma,max_beta\n");
                for k in 0..=20 {
                    let gamma = k as f64 / 20.0;
                    let beta = profile.max_beta_for_gamma(gamma);
                    let cell = if beta.is_finite() {
                        beta.to_string()
                    } else {
                        "unconstrained".to_string()
                    };
                    writeln!(out, "{gamma},{cell}")?;
                }
            } else {
                out.push_str(&profile.to_csv());
            }
            emit(cli, &out)
        }
    }
}

fn report(cli: &Cli, k_range: &str) -> Result<()> {
    let ks = parse_range(k_range)?;
    let budget = Budget::new(cli.budget_nodes);
    let mut out = String::from("# schema=1\nn,m,exact,leading,lower_bonf,upper_bonf,ratio\n");
    let mut rows = Vec::new();
    for &k in &ks {
        let g = GroupSpec::new(vec![2 * k])?;
        let by_size = counting::count_sum_free_by_size(&g, CountMode::GroupSense, budget)?;
        for m in k.div_ceil(2)..=k {
            let exact = &by_size[m as usize];
            let pred = counting::sf_count_prediction(&g, m)?;
            let ef = exact.to_f64().unwrap_or(f64::INFINITY);
            let lf = pred.leading.to_f64().unwrap_or(f64::INFINITY);
            let ratio = ef / lf;
            if ratio < 1.0 {
                return Err(Error::assertion(format!(
                    "Z{}: ratio {ratio} < 1 at m = {m}",
                    2 * k
                ))
                .into());
            }
            if m == k && ratio > 1.1 {
                return Err(Error::assertion(format!(
                    "Z{}: ratio {ratio} > 1.1 at m = k = {k}",
                    2 * k
                ))
                .into());
            }
            writeln!(
                out,
                "{},{m},{exact},{},{},{},{ratio}",
                2 * k,
                pred.leading,
                pred.lower_bonferroni,
                pred.upper_bonferroni
            )?;
            rows.push(json!({
                "n": 2 * k, "m": m,
                "exact": exact.to_string(),
                "leading": pred.leading.to_string(),
                "lower_bonf": pred.lower_bonferroni.to_string(),
                "upper_bonf": pred.upper_bonferroni.to_string(),
                "ratio": ratio,
            }));
        }
    }
    match cli.format {
        Format::Json => {
            let obj = json!({ "schema": 1, "rows": rows });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&obj)?))
        }
        Format::Csv => emit(cli, &out),
    }
}
