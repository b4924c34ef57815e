use aslk_core::classify::{
    even_collapse_classes, framing_classes, FramingCount, KnotDescriptor,
};
use aslk_core::framed_gauss::{vassiliev_defect, GaussCode};
use aslk_core::loop_calculus::{
    decompose_power, delta, delta_aslk, delta_aslk_tilde, path_delta_aslk, path_delta_aslk_tilde, t_value,
    verify_identity, ContextFlags, DiscriminantCrossing, EvaluationContext, IdentityVerdict, LoopWord, MapValue,
    PathRecord,
};
use aslk_core::manifold_groups::{centralizer_semidirect, GroupElement, ManifoldGroup, SemidirectElement, Summand};
use aslk_core::words::{
    centralizer_free_product, cyclic_exponent, enumerate_words, CentralizerDescription, GroupKind, GroupWord,
};
use serde_json::{json, Value};

use crate::{CliError, Manifest, Outcome, Report};

fn map_value(v: MapValue) -> Value {
    match v {
        MapValue::Defined(n) => json!(n),
        MapValue::Unavailable(reason) => json!({ "unavailable": reason.to_string() }),
    }
}

fn flags(m: &Manifest) -> ContextFlags {
    ContextFlags { in_irreducible_summand: m.context.in_irreducible_summand, fiber_slide: m.context.fiber_slide }
}

/// The evaluation context, when the manifest names a knot class.
fn context(m: &Manifest) -> Result<Option<EvaluationContext>, CliError> {
    let Some(class) = &m.knot.class else { return Ok(None) };
    let group = m.manifold.fundamental_group()?;
    let knot = group.parse(class)?;
    let trivial = knot.is_identity();
    let mut ctx = EvaluationContext::new(group, knot, trivial)?
        .with_flags(flags(m))?
        .with_spheres(m.context.spheres.unwrap_or_else(|| m.default_spheres()));
    if let Some(alpha) = &m.context.alpha_squared {
        let value = ctx.group().parse(alpha)?;
        ctx = ctx.with_alpha_squared(value)?;
    }
    Ok(Some(ctx))
}

fn is_s3(m: &Manifest) -> bool {
    m.manifold.orientable
        && m.manifold.summands.iter().all(|s| matches!(s, Summand::S3 | Summand::Lens { p: 1, .. }))
}

pub fn eval(m: &Manifest) -> Result<Outcome, CliError> {
    if m.loop_word.is_none() && m.path.is_none() && m.knot.gauss.is_none() && m.alpha_trace.is_none() {
        return Err(CliError::Input("manifest has no loop, path, knot.gauss or alpha_trace section".into()));
    }
    let ctx = context(m)?;
    let mut report = Report::new("eval");
    let mut failed = false;

    if let Some(text) = &m.loop_word {
        let word = LoopWord::parse(text)?;
        if let Some(ctx) = &ctx {
            ctx.check_word(&word)?;
        }
        let identity = verify_identity(&word, &flags(m))?;
        failed |= matches!(identity.verdict, IdentityVerdict::Fails { .. });
        let mut section = json!({
            "word": word.to_string(),
            "cyclic_normal_form": identity.word,
            "delta": delta(&word)?,
            "aslk": map_value(delta_aslk(&word)?),
            "aslk_tilde": map_value(delta_aslk_tilde(&word, &flags(m))?),
            "identity": serde_json::to_value(&identity.verdict).expect("serializable"),
        });
        if let Some(ctx) = &ctx {
            section["t_value"] = json!(t_value(&word, ctx)?.to_string());
        }
        report.insert("loop", section);
    }

    if let Some(entries) = &m.path {
        let group = match &ctx {
            Some(ctx) => ctx.group().clone(),
            None => m.manifold.fundamental_group()?,
        };
        let crossings = entries
            .iter()
            .map(|e| Ok(DiscriminantCrossing { sign: e.sign, loop_class: group.parse(&e.loop_word)? }))
            .collect::<Result<Vec<_>, CliError>>()?;
        let rec = PathRecord { crossings };
        report.insert(
            "path",
            json!({
                "crossings": rec.crossings.len(),
                "aslk": path_delta_aslk(&rec)?,
                "aslk_tilde": path_delta_aslk_tilde(&rec, &group)?,
            }),
        );
    }

    if let Some(text) = &m.knot.gauss {
        if !is_s3(m) {
            return Err(CliError::Input("knot.gauss describes a knot in S3; the manifold is not S3".into()));
        }
        let code = GaussCode::parse(text)?;
        let mut section = json!({
            "code": code.to_string(),
            "writhe": code.writhe(),
            "framing": code.framing(),
        });
        if code.is_singular() {
            section["double_points"] = json!(code.double_points().len());
            section["slk_defect"] = json!(vassiliev_defect(|c: &GaussCode| c.slk(), &code)?);
        } else {
            section["slk"] = json!(code.slk()?);
        }
        report.insert("gauss", section);
    }

    if let Some(text) = &m.alpha_trace {
        let ctx = ctx.as_ref().ok_or_else(|| CliError::Input("alpha_trace needs knot.class".into()))?;
        let t = ctx.group().parse(text)?;
        let d = decompose_power(&t, ctx)?;
        report.insert("decomposition", json!({ "i": d.i, "j": d.j, "k": d.k }));
    }
    Ok(Outcome { report, failed })
}

pub fn centralizer(m: &Manifest, oracle: Option<usize>) -> Result<Outcome, CliError> {
    let class = m.knot.class.as_ref().ok_or_else(|| CliError::Input("centralizer needs knot.class".into()))?;
    let group = m.manifold.fundamental_group()?;
    let knot = group.parse(class)?;
    if knot.is_identity() {
        return Err(CliError::Input("the trivial class is central; its centralizer is the whole group".into()));
    }
    let mut report = Report::new("centralizer");
    report.insert("element", knot.to_string());
    let mut failed = false;
    match (&group, &knot) {
        (ManifoldGroup::Presented(g), GroupElement::Word(w)) => {
            if g.kind() == GroupKind::FiberExtension {
                return Err(CliError::Unsupported("centralizers in fiber extensions".into()));
            }
            report.insert("group", g.to_string());
            let desc = centralizer_free_product(w)?;
            report.insert("centralizer", serde_json::to_value(desc.summary(g)).expect("serializable"));
            report.insert("certificate", certificate(&desc, w)?);
            if let Some(radius) = oracle {
                let words = enumerate_words(g, radius, 2)?;
                let mut commuting = 0usize;
                let mut disagreements = Vec::new();
                for h in &words {
                    let commutes = h.commutes_with(w)?;
                    commuting += usize::from(commutes);
                    if commutes != desc.contains(h)? {
                        disagreements.push(h.to_string());
                    }
                }
                failed = !disagreements.is_empty();
                report.insert(
                    "oracle",
                    json!({
                        "radius": radius,
                        "enumerated": words.len(),
                        "commuting": commuting,
                        "verdict": if failed { "oracle disagrees" } else { "oracle agrees" },
                        "disagreements": disagreements,
                    }),
                );
            }
        }
        (ManifoldGroup::TorusBundle(d), GroupElement::Semidirect(k)) => {
            report.insert("group", format!("Z2 x| Z, monodromy {:?}", d.entries));
            let cent = centralizer_semidirect(k, d)?;
            report.insert("centralizer", serde_json::to_value(&cent).expect("serializable"));
            if let Some(radius) = oracle {
                let r = i64::try_from(radius).unwrap_or(i64::MAX).min(1000);
                let (mut enumerated, mut commuting) = (0usize, 0usize);
                let mut disagreements = Vec::new();
                for x in -r..=r {
                    for y in -r..=r {
                        for q in -r..=r {
                            let h = SemidirectElement::new([x, y], q);
                            let commutes = group.commutes(&GroupElement::Semidirect(h), &knot)?;
                            enumerated += 1;
                            commuting += usize::from(commutes);
                            if commutes != cent.admits(&h) {
                                disagreements.push(h.to_string());
                            }
                        }
                    }
                }
                failed = !disagreements.is_empty();
                report.insert(
                    "oracle",
                    json!({
                        "radius": radius,
                        "enumerated": enumerated,
                        "commuting": commuting,
                        "verdict": if failed { "oracle disagrees" } else { "oracle agrees" },
                        "disagreements": disagreements,
                    }),
                );
            }
        }
        _ => unreachable!("parse returns elements of the group it was called on"),
    }
    Ok(Outcome { report, failed })
}

fn certificate(desc: &CentralizerDescription, w: &GroupWord) -> Result<Value, CliError> {
    Ok(match desc {
        CentralizerDescription::InfiniteCyclic { root } => {
            let e = cyclic_exponent(root, w)?.ok_or_else(|| CliError::Input("element outside its centralizer".into()))?;
            json!(format!("element = ({root})^{e}"))
        }
        CentralizerDescription::ConjugatedFactor { conjugator, .. } => {
            let inner = conjugator.inverse().multiply(w)?.multiply(conjugator)?;
            json!(format!("({conjugator})^-1 element ({conjugator}) = {inner}"))
        }
        CentralizerDescription::WholeGroup => json!("cyclic group"),
    })
}

pub fn classify(m: &Manifest) -> Result<Outcome, CliError> {
    let class = match (&m.knot.class, m.manifold.fundamental_group()) {
        (Some(text), Ok(group)) => Some(group.parse(text)?),
        _ => None,
    };
    let knot = KnotDescriptor {
        class,
        crosses_nonseparating_sphere_once: m.knot.crosses_nonseparating_sphere_once,
        orientation_reversing: m.knot.orientation_reversing,
    };
    let verdict = framing_classes(&m.manifold, &knot)?;
    let mut report = Report::new("classify");
    report.insert("count", verdict.count.to_string());
    report.insert("rule", serde_json::to_value(verdict.rule).expect("serializable"));
    report.insert("justification", verdict.justification);
    if verdict.count == FramingCount::Exactly2 {
        // Twists collapse in steps of two and parity separates the rest.
        let classes = even_collapse_classes(&[-2, -1, 0, 1, 2, 3]);
        report.insert("classes", json!(classes));
    }
    Ok(Outcome::ok(report))
}
