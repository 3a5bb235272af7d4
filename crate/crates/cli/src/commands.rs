use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use tra_core::algebra::Carrier;
use tra_core::limits::Limits;
use tra_core::search::Case;
use tra_core::termlang::{
    check_equation, check_quasi, falsifiers, parse_equation, parse_quasi, revalidate, Assignment, QuasiEquation, Verdict,
};
use tra_core::theorems::{
    build_counterexample, decompose_small, principal_ultraproduct, sigma_holds_small, verify_h_escape,
    verify_relativization, Coverage, PairMode, SigmaSmallReport, UltraproductReport,
};

use crate::invocation::{Formula, Invocation, Mode};
use crate::report::{pass_fail, yes_no, Counts, Details, Outcome, RunReport, Witness};
use crate::spec::AlgebraSpec;
use crate::CliError;

/// Dimensions accepted by `sigma-demo`.
pub const SIGMA_DEMO_DIMS: std::ops::RangeInclusive<usize> = 2..=6;
/// Largest dimension for which `sigma-demo` also checks the homomorphic image.
pub const H_ESCAPE_MAX_DIM: usize = 4;
/// Falsifiers listed in a failing exhaustive `check` report.
pub const MAX_LISTED_FALSIFIERS: usize = 8;

struct Body {
    outcome: Outcome,
    witness: Option<Witness>,
    counts: Counts,
    details: Details,
}

/// Runs one resolved invocation.
pub fn execute(inv: &Invocation, mode: &Mode, limits: &Limits) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let body = match inv {
        Invocation::SigmaDemo { n, all_perm_pairs } => sigma_demo(*n, *all_perm_pairs, mode, limits)?,
        Invocation::Check { spec, formula } => check(spec, formula, mode, limits)?,
        Invocation::VerifyRelativization { big, sub } => relativization(big, sub, mode, limits)?,
        Invocation::Decompose { n, k } => decompose(*n, *k, mode, limits)?,
        Invocation::Closure { spec } => closure(spec, limits)?,
        Invocation::Ultraproduct { specs, i0 } => ultraproduct(specs, *i0, mode, limits)?,
    };
    Ok(RunReport {
        command: inv.name().to_string(),
        inputs: inv.clone(),
        mode: mode.clone(),
        outcome: body.outcome,
        witness: body.witness,
        counts: body.counts,
        details: body.details.0,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Reruns a report from its echoed inputs and mode.
pub fn replay(report: &RunReport, limits: &Limits) -> Result<RunReport, CliError> {
    execute(&report.inputs, &report.mode, limits)
}

/// Re-checks a witness from scratch through the reference evaluator.
pub fn revalidate_witness(w: &Witness, limits: &Limits) -> Result<bool, CliError> {
    let d = w.carrier.build(limits)?;
    let qe = parse_quasi(&w.formula)?;
    let mut assignment = Assignment::new();
    for (var, seqs) in &w.assignment {
        let seqs = seqs.iter().map(|s| tra_core::seqspace::Seq::new(s.clone())).collect::<Vec<_>>();
        assignment.insert(var.clone(), d.elem_from_seqs(&seqs)?);
    }
    Ok(revalidate(&d, &qe, &assignment)?)
}

fn cases(v: &Verdict) -> u64 {
    match v {
        Verdict::HoldsExhaustive { assignments } => *assignments,
        Verdict::HoldsSampled { trials, .. } => *trials,
        Verdict::Fails { case, .. } => match case {
            Case::Index(i) | Case::Trial(i) => i + 1,
        },
    }
}

fn coverage(c: &Option<Coverage>) -> String {
    match c {
        Some(Coverage::Exhaustive { cases }) => format!("exhaustive, {cases} cases"),
        Some(Coverage::Sampled { trials, seed }) => format!("sampled, {trials} trials, seed {seed:#x}"),
        None => "stopped at violation".to_string(),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::HoldsExhaustive { assignments } => format!("holds (exhaustive, {assignments} assignments)"),
        Verdict::HoldsSampled { trials, seed, generator } => {
            format!("holds ({trials} {generator} samples, seed {seed:#x})")
        }
        Verdict::Fails { case, .. } => match case {
            Case::Index(i) => format!("fails (assignment #{i})"),
            Case::Trial(t) => format!("fails (trial #{t})"),
        },
    }
}

fn witness_of(d: &Carrier, formula: String, assignment: &Assignment) -> Result<Witness, CliError> {
    let mut out = BTreeMap::new();
    for (var, x) in assignment {
        out.insert(var.clone(), d.seqs_of(x)?.into_iter().map(|s| s.into_entries()).collect());
    }
    Ok(Witness {
        carrier: AlgebraSpec::of_carrier(d),
        formula,
        assignment: out,
    })
}

fn small_rows(details: &mut Details, label: &str, r: &SigmaSmallReport) {
    details.push(format!("σ in {label}: pairs"), r.pairs);
    details.push(
        format!("σ in {label}: constant-map certificate"),
        if r.certificate.carrier_empty {
            "holds (empty carrier)".to_string()
        } else {
            format!(
                "{} ({} constant members)",
                if r.certificate.holds() { "holds" } else { "does not apply" },
                r.certificate.constants.len()
            )
        },
    );
    let brute = match r.brute_force_holds() {
        None => "over budget, not run".to_string(),
        Some(true) => {
            let first = r.brute_force.as_ref().and_then(|v| v.first()).map(|p| verdict_text(&p.verdict));
            format!("holds for every pair ({})", first.unwrap_or_default())
        }
        Some(false) => {
            let p = r.first_failure().expect("a failing pair");
            format!("fails for f={} g={}", p.f, p.g)
        }
    };
    details.push(format!("σ in {label}: search"), brute);
    details.push(format!("σ in {label}: agree"), yes_no(r.agree()));
}

fn small_cases(r: &SigmaSmallReport) -> u64 {
    r.brute_force
        .iter()
        .flatten()
        .map(|p| cases(&p.verdict))
        .sum()
}

fn sigma_demo(n: usize, all_pairs: bool, mode: &Mode, limits: &Limits) -> Result<Body, CliError> {
    if !SIGMA_DEMO_DIMS.contains(&n) {
        return Err(CliError::Usage(format!(
            "sigma-demo needs {} ≤ n ≤ {}, got {n}",
            SIGMA_DEMO_DIMS.start(),
            SIGMA_DEMO_DIMS.end()
        )));
    }
    let config = mode.config();
    let mut details = Details::default();
    let mut counts = Counts::default();

    let cex = build_counterexample(n, limits)?;
    let g = &*cex.g_carrier;
    details.push("G", g.display_elem(&g.one()));
    details.push("X", g.display_elem(&cex.x));
    details.push("f", &cex.f);
    details.push("g", &cex.g);
    details.push("S_f X", g.display_elem(&cex.subst_f));
    details.push("S_g X", g.display_elem(&cex.subst_g));
    details.push("S_f X ∪ S_g X", g.display_elem(&cex.union));
    details.push("∼X", g.display_elem(&cex.complement));
    details.push("union = ∼X", yes_no(cex.checks.union_is_complement));
    details.push("σ", &cex.sigma);
    details.push("σ in ℘(G)", verdict_text(&cex.verdict));
    details.push("falsifiers in ℘(G)", cex.falsifiers);
    details.push("X among falsifiers", yes_no(cex.checks.x_among_falsifiers));
    details.push("witnesses revalidate", yes_no(cex.checks.witness_revalidates && cex.checks.named_witness_violates));
    counts.assignments_tested += 1u64 << g.len();
    counts.elements_tested += 1u64 << g.len();
    let mut pass = cex.passed();

    if n <= H_ESCAPE_MAX_DIM {
        let h = verify_h_escape(n, &config, limits)?;
        let label = format!("℘(^{n} {n})");
        details.push(format!("h: {label} → ℘(G) homomorphism"), pass_fail(h.homomorphism.passed()));
        details.push("h surjective", yes_no(h.surjective));
        small_rows(&mut details, &label, &h.sigma_big);
        details.push("σ in ℘(G) (image)", verdict_text(&h.sigma_sub));
        details.push("closed under H", yes_no(!h.variety_closure_fails()));
        counts.elements_tested += h.homomorphism.elements_tested();
        counts.assignments_tested += small_cases(&h.sigma_big) + cases(&h.sigma_sub);
        pass &= h.variety_closure_fails();
    }

    let pair_mode = if all_pairs { PairMode::All } else { PairMode::cycles(n) };
    let small = sigma_holds_small(n, 2, &pair_mode, &config, limits)?;
    small_rows(&mut details, &format!("A_{{{n},2}}"), &small);
    counts.assignments_tested += small_cases(&small);
    pass &= small.holds() && small.agree();

    let named: Assignment = [("x".to_string(), cex.x.clone())].into();
    Ok(Body {
        outcome: Outcome::from_pass(pass),
        witness: Some(witness_of(g, cex.sigma.to_string(), &named)?),
        counts,
        details,
    })
}

fn check(spec: &AlgebraSpec, formula: &Formula, mode: &Mode, limits: &Limits) -> Result<Body, CliError> {
    let d = spec.build(limits)?;
    let config = mode.config();
    let (qe, verdict) = match formula {
        Formula::Eq(text) => {
            let eq = parse_equation(text)?;
            let verdict = check_equation(&d, &eq, &config, limits)?;
            (QuasiEquation::from(eq), verdict)
        }
        Formula::Quasi(text) => {
            let qe = parse_quasi(text)?;
            let verdict = check_quasi(&d, &qe, &config, limits)?;
            (qe, verdict)
        }
    };
    let vars = qe.vars().len() as u64;
    let mut details = Details::default();
    details.push("carrier", format!("{} sequences in ^{} {}", d.len(), d.dim(), d.base()));
    details.push("formula", &qe);
    details.push("verdict", verdict_text(&verdict));
    let witness = match verdict.witness() {
        Some(w) => {
            let revalidated = revalidate(&d, &qe, w)?;
            details.push("witness revalidates", yes_no(revalidated));
            if let Verdict::Fails { case: Case::Index(_), .. } = verdict {
                let all = falsifiers(&d, &qe, limits)?;
                details.push("falsifiers", all.len());
                for (i, f) in all.iter().take(MAX_LISTED_FALSIFIERS).enumerate() {
                    let parts: Vec<String> = f.iter().map(|(v, x)| format!("{v} = {}", d.display_elem(x))).collect();
                    details.push(format!("falsifier {i}"), parts.join(", "));
                }
            }
            Some(witness_of(&d, qe.to_string(), w)?)
        }
        None => None,
    };
    let n = cases(&verdict);
    Ok(Body {
        outcome: Outcome::from_pass(verdict.holds()),
        witness,
        counts: Counts {
            elements_tested: n * vars,
            assignments_tested: n,
        },
        details,
    })
}

fn relativization(big: &AlgebraSpec, sub: &AlgebraSpec, mode: &Mode, limits: &Limits) -> Result<Body, CliError> {
    let e = big.build(limits)?;
    let g = sub.build(limits)?;
    if !e.contains_carrier(&g) {
        return Err(CliError::Usage("G is not a subset of E".into()));
    }
    if !g.is_permutable() {
        return Err(CliError::Usage("G not permutable".into()));
    }
    let r = verify_relativization(&e, &g, &mode.config(), limits)?;
    let mut details = Details::default();
    details.push("|E|", r.big_len);
    details.push("|G|", r.sub_len);
    details.push("operations", r.operations.join(" "));
    details.push("unary checks", coverage(&r.unary));
    details.push("binary checks", coverage(&r.binary));
    if let Some(v) = &r.violation {
        details.push("violation", &v.operation);
        details.push("x", e.display_elem(&v.x));
        if let Some(y) = &v.y {
            details.push("y", e.display_elem(y));
        }
    }
    let assignments = r.unary.map_or(0, |c| c.cases()) + r.binary.map_or(0, |c| c.cases());
    Ok(Body {
        outcome: Outcome::from_pass(r.passed()),
        witness: None,
        counts: Counts {
            elements_tested: r.elements_tested(),
            assignments_tested: assignments,
        },
        details,
    })
}

fn decompose(n: usize, k: usize, mode: &Mode, limits: &Limits) -> Result<Body, CliError> {
    let d = decompose_small(n, k, &mode.config(), limits)?;
    let mut details = Details::default();
    details.push("atoms", d.records.len());
    for r in &d.records {
        let q = r.witness.as_ref().map_or_else(|| "(none)".to_string(), ToString::to_string);
        let range: Vec<String> = r.range.iter().map(usize::to_string).collect();
        let nonzero = r.image_nonzero.map_or("n/a", yes_no);
        details.push(
            format!("atom {q}"),
            format!("range {{{}}}, k_a = {}, target {}, h_a(a) ≠ 0: {nonzero}", range.join(","), r.k_a, r.target),
        );
    }
    details.push("homomorphisms", d.homs().len());
    details.push("hom checks", coverage(&d.separation.hom_coverage));
    if let Some(f) = &d.separation.hom_failure {
        details.push("hom failure", f);
    }
    details.push("separation checks", coverage(&d.separation.coverage));
    details.push("separation", pass_fail(d.separation.separated()));
    if let Some((x, y)) = &d.separation.unseparated {
        details.push("unseparated", format!("{} vs {}", d.source.display_elem(x), d.source.display_elem(y)));
    }
    let elements = d.separation.hom_coverage.map_or(0, |c| c.cases());
    Ok(Body {
        outcome: Outcome::from_pass(d.passed()),
        witness: None,
        counts: Counts {
            elements_tested: elements,
            assignments_tested: elements + d.separation.coverage.map_or(0, |c| c.cases()),
        },
        details,
    })
}

fn closure(spec: &AlgebraSpec, limits: &Limits) -> Result<Body, CliError> {
    let d = spec.build(limits)?;
    let closed = d.permutable_closure_capped(limits.max_carrier)?;
    let mut details = Details::default();
    details.push("input", closed_display(&d));
    details.push("input permutable", yes_no(d.is_permutable()));
    details.push("carrier", closed_display(&closed));
    details.push("size", closed.len());
    details.push("added", closed.len() - d.len());
    details.push("permutable", yes_no(closed.is_permutable()));
    Ok(Body {
        outcome: Outcome::from_pass(closed.is_permutable() && closed.contains_carrier(&d)),
        witness: None,
        counts: Counts {
            elements_tested: closed.len() as u64,
            assignments_tested: 0,
        },
        details,
    })
}

fn closed_display(d: &Carrier) -> String {
    d.display_elem(&d.one())
}

fn ultraproduct(specs: &[AlgebraSpec], i0: usize, mode: &Mode, limits: &Limits) -> Result<Body, CliError> {
    if specs.is_empty() {
        return Err(CliError::Usage("ultraproduct needs at least one factor".into()));
    }
    let factors = specs
        .iter()
        .map(|s| s.build(limits).map(Arc::new))
        .collect::<Result<Vec<_>, _>>()?;
    let r = principal_ultraproduct(factors, i0, &mode.config(), limits)?;
    let mut details = Details::default();
    details.push("factors", r.bases.iter().map(|b| format!("℘(^{} {b})", r.dim)).collect::<Vec<_>>().join(" × "));
    details.push("ultrafilter", format!("principal at {i0}"));
    details.push("representatives per class", r.representatives);
    details.push("class checks", coverage(&r.classes));
    details.push("pair checks", coverage(&r.pairs));
    details.push("ψ = projection, injective homomorphism", pass_fail(r.passed()));
    if let Some(v) = &r.violation {
        details.push("violation", v);
    }
    details.push("scope", UltraproductReport::NON_PRINCIPAL_NOTE);
    let classes = r.classes.map_or(0, |c| c.cases());
    Ok(Body {
        outcome: Outcome::from_pass(r.passed()),
        witness: None,
        counts: Counts {
            elements_tested: classes * r.representatives as u64,
            assignments_tested: classes + r.pairs.map_or(0, |c| c.cases()),
        },
        details,
    })
}
