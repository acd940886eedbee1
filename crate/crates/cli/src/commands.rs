use std::fmt::Write as _;

use galois_core::cyclotomic::{power_sequence, primitive_root, roots_in_radicals, CyclotomicError};
use galois_core::exact::{factor_over_tower, factor_rational, QuadTower, TowerPoly, UniPoly};
use galois_core::perm::{composition_series, named_group, SeriesOutcome};
use galois_core::radical::{solve_in_radicals, SolveError, SolveReport};
use galois_core::resolvent::{identify_galois_group, ResolventError};
use galois_core::symmetric::{symmetric_reduce, SymmetricError};
use serde_json::json;

use crate::config::RunConfig;
use crate::parse::{parse_multivariate, parse_polynomial};
use crate::report::{sort_pairs, sort_roots, Envelope, Expression, Input, Outcome, EXIT_INCONCLUSIVE, EXIT_USAGE};

fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn resolvent_code(e: &ResolventError) -> i32 {
    match e {
        ResolventError::Inconclusive { .. } | ResolventError::NoSeparatingResolvent(_) | ResolventError::Numeric(_) => {
            EXIT_INCONCLUSIVE
        }
        _ => EXIT_USAGE,
    }
}

fn solve_code(e: &SolveError) -> i32 {
    match e {
        SolveError::VerificationFailed(_) | SolveError::Numeric(_) => EXIT_INCONCLUSIVE,
        SolveError::Resolvent(r) => resolvent_code(r),
        SolveError::Cyclotomic(CyclotomicError::SnapFailed { .. }) => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    }
}

/// Parses `source`, reporting syntax errors through the envelope.
fn parse_input(command: &'static str, source: &str, cfg: &RunConfig) -> Result<(UniPoly, Envelope), Box<Outcome>> {
    match parse_polynomial(source) {
        Ok(p) => Ok((p.clone(), Envelope::new(command, Input::poly(source, &p), cfg))),
        Err(e) => Err(Box::new(Outcome::fail(Envelope::new(command, Input::raw(source), cfg), EXIT_USAGE, e.to_string()))),
    }
}

/// Fills roots, expressions and residual from a solver report and renders
/// the root listing.
fn fill_roots(env: &mut Envelope, report: &SolveReport, text: &mut String) {
    if report.expressions.is_empty() {
        let mut roots = report.numeric_roots.roots.clone();
        sort_roots(&mut roots);
        for (i, r) in roots.iter().enumerate() {
            let _ = writeln!(text, "root {}: {r}", i + 1);
        }
        env.roots = roots;
        return;
    }
    for (i, (v, e)) in sort_pairs(&report.values, &report.expressions).into_iter().enumerate() {
        let _ = writeln!(text, "root {}: {v}\n  = {e}", i + 1);
        env.roots.push(v);
        env.expressions.push(Expression::radical(&e));
    }
    env.residual = report.max_residual;
    if let Some(r) = report.max_residual {
        let _ = writeln!(text, "max residual: {r:.3e}");
    }
}

pub fn cmd_solve(source: &str, cfg: &RunConfig) -> Outcome {
    let (p, mut env) = match parse_input("solve", source, cfg) {
        Ok(x) => x,
        Err(o) => return *o,
    };
    let n = p.deg().unwrap_or(0);
    if !(1..=5).contains(&n) {
        return Outcome::fail(env, EXIT_USAGE, format!("degree {n} is outside 1..=5"));
    }
    let p = if p.is_monic() {
        p
    } else {
        let m = p.monic();
        env.trace.push(json!({ "normalized": m.to_string() }));
        m
    };
    let report = match solve_in_radicals(&p, &cfg.solve_config()) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(env, solve_code(&e), e.to_string()),
    };
    env.verdict = to_value(&report.status).as_str().unwrap_or_default().to_string();
    let mut text = format!("input: {p}\nverdict: {}", env.verdict);
    if report.is_solved() {
        let _ = write!(text, " ({})", to_value(&report.method).as_str().unwrap_or_default());
    }
    text.push('\n');
    env.trace.push(json!({ "method": report.method }));
    if let Some(g) = &report.group {
        let _ = writeln!(text, "group: {} (order {})", g.name, g.order);
        if let Some(s) = &g.series_orders {
            let _ = writeln!(text, "series: {}", join(s, "|"));
        }
        env.group = Some(to_value(g));
    }
    fill_roots(&mut env, &report, &mut text);
    if let Some(c) = &report.cosine_form {
        let _ = writeln!(text, "all roots real: {}", c.formula);
        env.trace.push(json!({ "cosine_form": c }));
    }
    for note in &report.notes {
        let _ = writeln!(text, "note: {note}");
        env.trace.push(json!({ "note": note }));
    }
    Outcome::ok(env, text)
}

pub fn cmd_galois(source: &str, cfg: &RunConfig) -> Outcome {
    let (p, mut env) = match parse_input("galois", source, cfg) {
        Ok(x) => x,
        Err(o) => return *o,
    };
    let n = p.deg().unwrap_or(0);
    if !(2..=5).contains(&n) {
        return Outcome::fail(env, EXIT_USAGE, format!("degree {n} is outside 2..=5"));
    }
    if !p.is_squarefree() {
        let hint = p.squarefree_part().map(|s| s.monic().to_string()).unwrap_or_default();
        return Outcome::fail(env, EXIT_USAGE, format!("polynomial is not square-free; its square-free part is {hint}"));
    }
    match factor_rational(&p) {
        Ok(f) if f.len() > 1 => {
            let shown: Vec<String> = f.iter().map(|g| format!("({g})")).collect();
            return Outcome::fail(env, EXIT_USAGE, format!("polynomial is reducible over Q: {}", shown.join("*")));
        }
        Ok(_) => {}
        Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
    }
    let q = match p.to_monic_integer() {
        Ok((q, _)) => q,
        Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
    };
    if q != p {
        env.trace.push(json!({ "normalized": q.to_string() }));
    }
    let id = match identify_galois_group(&q, &cfg.membership()) {
        Ok(id) => id,
        Err(e) => {
            let code = resolvent_code(&e);
            if let ResolventError::Inconclusive { trace, .. } = &e {
                env.trace.extend(trace.iter().map(to_value));
            }
            return Outcome::fail(env, code, e.to_string());
        }
    };
    let solvable = composition_series(&id.group).map(|s| s.is_solvable()).ok();
    env.verdict = "identified".into();
    env.group = Some(json!({ "name": id.name, "order": id.order, "solvable": solvable }));
    env.trace.extend(id.trace.iter().map(to_value));
    let mut text = format!("group: {} (order {})\n", id.name, id.order);
    for t in &id.trace {
        let _ = writeln!(
            text,
            "  {:<4} {:<14} max deviation {:.3e}, error {:.1e}",
            t.candidate_group,
            to_value(&t.verdict).as_str().unwrap_or_default(),
            t.max_deviation_from_integer,
            t.max_error
        );
    }
    Outcome::ok(env, text)
}

pub fn cmd_symmetrize(source: &str, vars: Option<usize>, cfg: &RunConfig) -> Outcome {
    let mut env = Envelope::new("symmetrize", Input::raw(source), cfg);
    let f = match parse_multivariate(source, vars) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
    };
    env.input.parsed = Some(f.to_string());
    let d = match symmetric_reduce(&f) {
        Ok(d) => d,
        Err(SymmetricError::NotSymmetric) => return Outcome::fail(env, EXIT_USAGE, "not symmetric"),
        Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
    };
    let result = d.result_string();
    env.verdict = "symmetric".into();
    env.expressions.push(Expression::plain(&result));
    let mut text = format!("{result}\n");
    for (i, q) in d.trace.iter().enumerate() {
        let _ = writeln!(text, "  f{} = {q}", i + 1);
        env.trace.push(json!({ "quotient": q.to_string() }));
    }
    Outcome::ok(env, text)
}

pub fn cmd_cyclotomic(p: u32, cfg: &RunConfig) -> Outcome {
    let mut env = Envelope::new("cyclotomic", Input::raw(&p.to_string()), cfg);
    let seq = match primitive_root(p).and_then(|g| Ok((g, power_sequence(p, g)?))) {
        Ok(x) => x,
        Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
    };
    let report = match roots_in_radicals(p, cfg.precision) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(env, solve_code(&e), e.to_string()),
    };
    env.input.parsed = Some(report.input.to_string());
    env.verdict = "solved".into();
    env.group = Some(json!({ "prime": p, "primitive_root": seq.0, "sequence": seq.1 }));
    let mut text = format!("p = {p}, g = {}\nsequence: {}\n", seq.0, join(&seq.1, " "));
    fill_roots(&mut env, &report, &mut text);
    Outcome::ok(env, text)
}

pub fn cmd_series(name: &str, degree: Option<usize>, cfg: &RunConfig) -> Outcome {
    let mut env = Envelope::new("series", Input::raw(name), cfg);
    let g = match named_group(name) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
    };
    if let Some(d) = degree.filter(|&d| d != g.degree()) {
        return Outcome::fail(env, EXIT_USAGE, format!("{name} acts on {} points, not {d}", g.degree()));
    }
    let outcome = match composition_series(&g) {
        Ok(o) => o,
        Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
    };
    let label = g.label();
    let text = match outcome {
        SeriesOutcome::Solvable(s) => {
            env.verdict = "solvable".into();
            env.group = Some(json!({
                "name": label,
                "order": g.order(),
                "series_orders": s.orders(),
                "quotients": s.quotient_orders(),
            }));
            format!("{label}: orders {}, quotients [{}]\n", join(&s.orders(), "|"), join(&s.quotient_orders(), ", "))
        }
        SeriesOutcome::NotSolvable(w) => {
            env.verdict = "not solvable".into();
            let mut text = format!("{label}: not solvable\n");
            for s in &w.scans {
                let _ = writeln!(text, "  order {}: normal subgroups of orders {}", s.order, join(&s.normal_subgroup_orders, ", "));
            }
            env.group = Some(json!({ "name": label, "order": g.order(), "witness": w }));
            text
        }
    };
    Outcome::ok(env, text)
}

pub fn cmd_factor(source: &str, adjoin: &[i64], cfg: &RunConfig) -> Outcome {
    let (p, mut env) = match parse_input("factor", source, cfg) {
        Ok(x) => x,
        Err(o) => return *o,
    };
    if p.deg().unwrap_or(0) == 0 {
        return Outcome::fail(env, EXIT_USAGE, "cannot factor a constant");
    }
    let (lead, factors): (String, Vec<String>) = if adjoin.is_empty() {
        match factor_rational(&p) {
            Ok(f) => (p.leading_coeff().expect("nonzero").to_string(), f.iter().map(|g| g.to_string()).collect()),
            Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
        }
    } else {
        let tower = match QuadTower::from_ints(adjoin) {
            Ok(t) => t,
            Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
        };
        let fz = match factor_over_tower(&p, &tower) {
            Ok(f) => f,
            Err(e) => return Outcome::fail(env, EXIT_USAGE, e.to_string()),
        };
        let reconstructs = fz.product() == TowerPoly::from_unipoly(&tower, &p);
        env.trace.push(json!({ "field": field_name(adjoin), "product_reconstructs_input": reconstructs }));
        (fz.leading.to_string(), fz.factors.iter().map(|g| g.to_string()).collect())
    };
    env.verdict = if factors.len() == 1 { "irreducible" } else { "factored" }.into();
    let mut shown: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
    if lead != "1" {
        shown.insert(0, lead);
    }
    let field = if adjoin.is_empty() { "Q".to_string() } else { field_name(adjoin) };
    let text = format!("over {field}: {}\n", shown.join("*"));
    env.expressions = factors.into_iter().map(Expression::plain).collect();
    Outcome::ok(env, text)
}

fn field_name(adjoin: &[i64]) -> String {
    let parts: Vec<String> = adjoin.iter().map(|d| format!("sqrt({d})")).collect();
    format!("Q({})", parts.join(", "))
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::EXIT_OK;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn solve_quadratic_roots() {
        let o = cmd_solve("x^2 - 3*x + 2", &cfg());
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(o.envelope.verdict, "solved");
        let re: Vec<f64> = o.envelope.roots.iter().map(|z| z.re()).collect();
        assert!((re[0] - 1.0).abs() < 1e-12 && (re[1] - 2.0).abs() < 1e-12);
        assert!(o.envelope.expressions.iter().all(|e| e.tree.is_some()));
    }

    #[test]
    fn solve_classifies_quintics() {
        let o = cmd_solve("x^5 - x + 1", &cfg());
        assert_eq!((o.code, o.envelope.verdict.as_str()), (EXIT_OK, "unsolvable"));
        let g = o.envelope.group.unwrap();
        assert!(g["series_orders"].is_null());
        assert_eq!(g["name"], "S5");
        let o = cmd_solve("x^5 - 10*x^3 + 20*x + 1", &cfg());
        assert_eq!(o.envelope.verdict, "solved");
        assert!(o.text.contains("cos("));
    }

    #[test]
    fn solve_errors() {
        assert_eq!(cmd_solve("x^-1", &cfg()).code, EXIT_USAGE);
        assert_eq!(cmd_solve("x^6 + 1", &cfg()).code, EXIT_USAGE);
        let o = cmd_solve("x^5 - 1", &cfg());
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.text.contains("reducible"));
        // non-monic input is normalized
        assert_eq!(cmd_solve("2*x^2 - 4", &cfg()).code, EXIT_OK);
    }

    #[test]
    fn galois_groups() {
        for (src, name, order) in [("x^4 - 10*x^2 + 1", "V4", 4), ("x^5 - 2", "F20", 20), ("x^2 - 2", "S2", 2)] {
            let o = cmd_galois(src, &cfg());
            assert_eq!(o.code, EXIT_OK, "{src}: {}", o.text);
            let g = o.envelope.group.unwrap();
            assert_eq!((g["name"].as_str().unwrap(), g["order"].as_u64().unwrap()), (name, order));
        }
        let o = cmd_galois("(x^2 - 2)*(x^2 - 3)", &cfg());
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.text.contains("(x^2 - 2)"));
        assert_eq!(cmd_galois("(x - 1)^2*(x + 3)", &cfg()).code, EXIT_USAGE);
    }

    #[test]
    fn symmetrize_examples() {
        let o = cmd_symmetrize("r1^4 + r2^4", None, &cfg());
        assert_eq!(o.envelope.expressions[0].text, "s1^4 - 4*s1^2*s2 + 2*s2^2");
        assert_eq!(cmd_symmetrize("r1 + r2 + r3", None, &cfg()).envelope.expressions[0].text, "s1");
        let o = cmd_symmetrize("r1 - r2", None, &cfg());
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.text.contains("not symmetric"));
    }

    #[test]
    fn cyclotomic_and_series() {
        let o = cmd_cyclotomic(11, &cfg());
        assert_eq!(o.code, EXIT_OK);
        let g = o.envelope.group.unwrap();
        assert_eq!(g["primitive_root"], 2);
        assert_eq!(g["sequence"], json!([1, 2, 4, 8, 5, 10, 9, 7, 3, 6]));
        assert_eq!(cmd_cyclotomic(19, &cfg()).code, EXIT_USAGE);
        assert_eq!(cmd_cyclotomic(9, &cfg()).code, EXIT_USAGE);

        let o = cmd_series("S4", None, &cfg());
        assert!(o.text.contains("1|2|4|12|24"));
        assert_eq!(o.envelope.group.unwrap()["quotients"], json!([2, 2, 3, 2]));
        let o = cmd_series("S5", None, &cfg());
        assert_eq!((o.code, o.envelope.verdict.as_str()), (EXIT_OK, "not solvable"));
        assert_eq!(cmd_series("Q8", None, &cfg()).code, EXIT_USAGE);
        assert_eq!(cmd_series("S4", Some(5), &cfg()).code, EXIT_USAGE);
    }

    #[test]
    fn factor_over_extensions() {
        let o = cmd_factor("x^4 - 10*x^2 + 1", &[2], &cfg());
        assert_eq!(o.envelope.verdict, "factored");
        assert_eq!(o.envelope.expressions.len(), 2);
        assert_eq!(o.envelope.trace[0]["product_reconstructs_input"], true);
        let o = cmd_factor("x^4 - 10*x^2 + 1", &[2, 3], &cfg());
        assert_eq!(o.envelope.expressions.len(), 4);
        let o = cmd_factor("x^4 - 10*x^2 + 1", &[], &cfg());
        assert_eq!(o.envelope.verdict, "irreducible");
        assert_eq!(cmd_factor("x^2 - 2", &[2, 8], &cfg()).code, EXIT_USAGE);
    }
}
