//! Table, JSON and CSV renderings. JSON output is stable: no timestamps, no
//! map types with nondeterministic order.

use serde_json::json;

use toeplitz_sharp_core::bounds::{BoundOutcome, Side};
use toeplitz_sharp_core::classes::{self, CtcBase, ExtremalId, FamilySpec};
use toeplitz_sharp_core::oracle::{OracleReport, ScanConfig};
use toeplitz_sharp_core::series::TruncatedSeries;
use toeplitz_sharp_core::toeplitz;

use crate::Format;

fn family_meta(family: &FamilySpec) -> serde_json::Value {
    match family {
        FamilySpec::Starlike(phi) | FamilySpec::Convex(phi) => json!({
            "label": family.label(),
            "kind": family.kind_name(),
            "b1": phi.b1(),
            "b2": phi.b2(),
            "b3": phi.b3(),
        }),
        FamilySpec::CloseToConvex(g) => json!({
            "label": family.label(),
            "kind": family.kind_name(),
            "b2": [g.b2().re, g.b2().im],
            "b3": [g.b3().re, g.b3().im],
        }),
    }
}

fn family_headline(family: &FamilySpec) -> String {
    match family {
        FamilySpec::Starlike(phi) | FamilySpec::Convex(phi) => {
            format!(
                "family: {}  B1={}  B2={}",
                family.label(),
                phi.b1(),
                phi.b2()
            )
        }
        FamilySpec::CloseToConvex(g) => {
            format!("family: {}  b2={}  b3={}", family.label(), g.b2(), g.b3())
        }
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Lower => "lower",
        Side::Upper => "upper",
    }
}

fn quantity_name(q: toeplitz_sharp_core::bounds::Quantity) -> &'static str {
    match q {
        toeplitz_sharp_core::bounds::Quantity::T21 => "T21",
        toeplitz_sharp_core::bounds::Quantity::T31 => "T31",
        toeplitz_sharp_core::bounds::Quantity::AbsT22 => "ABS_T22",
    }
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn bounds(format: Format, family: &FamilySpec, outcomes: &[BoundOutcome]) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "family": family_meta(family),
                "reports": outcomes,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Csv => {
            let mut out =
                String::from("quantity,side,status,value,case,mu_or_sigma,sharp,extremal,notes\n");
            for outcome in outcomes {
                match outcome {
                    BoundOutcome::Applicable(r) => {
                        out.push_str(&format!(
                            "{},{},applicable,{},{},{},{},{},{}\n",
                            quantity_name(r.quantity),
                            side_name(r.side),
                            r.value,
                            csv_field(&r.case),
                            r.mu_or_sigma.map(|m| m.to_string()).unwrap_or_default(),
                            r.sharp,
                            r.extremal.clone().unwrap_or_default(),
                            csv_field(r.notes.as_deref().unwrap_or("")),
                        ));
                    }
                    BoundOutcome::Inapplicable(na) => {
                        out.push_str(&format!(
                            "{},{},inapplicable,,,,,,{}\n",
                            quantity_name(na.quantity),
                            side_name(na.side),
                            csv_field(&na.reason),
                        ));
                    }
                }
            }
            out
        }
        Format::Table => {
            let mut out = format!("{}\n", family_headline(family));
            out.push_str(&format!(
                "{:<8} {:<6} {:<22} {:<22} {:<6} {:<9} preconditions\n",
                "quantity", "side", "value", "case", "sharp", "extremal"
            ));
            for outcome in outcomes {
                match outcome {
                    BoundOutcome::Applicable(r) => {
                        let pre: Vec<String> = r
                            .preconditions
                            .iter()
                            .map(|p| format!("{}{}", if p.ok { "" } else { "!" }, p.name))
                            .collect();
                        let case = match r.mu_or_sigma {
                            Some(m) => format!("{} ({m:.6})", r.case),
                            None => r.case.clone(),
                        };
                        out.push_str(&format!(
                            "{:<8} {:<6} {:<22} {:<22} {:<6} {:<9} {}\n",
                            quantity_name(r.quantity),
                            side_name(r.side),
                            r.value,
                            case,
                            if r.sharp { "yes" } else { "no" },
                            r.extremal.as_deref().unwrap_or("-"),
                            pre.join(" "),
                        ));
                        if let Some(notes) = &r.notes {
                            out.push_str(&format!("{:>15} note: {notes}\n", ""));
                        }
                    }
                    BoundOutcome::Inapplicable(na) => {
                        out.push_str(&format!(
                            "{:<8} {:<6} inapplicable: {}\n",
                            quantity_name(na.quantity),
                            side_name(na.side),
                            na.reason
                        ));
                    }
                }
            }
            out
        }
    }
}

pub fn verify(
    format: Format,
    cfg: &ScanConfig,
    outcomes: &[BoundOutcome],
    report: &OracleReport,
) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "config": cfg,
                "bounds": outcomes,
                "report": report,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Csv => {
            let mut out = String::from("family,samples,violations,emp_min,emp_max,passed\n");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&report.family),
                report.samples,
                report.violations_total,
                report.emp_min,
                report.emp_max,
                report.passed(),
            ));
            out
        }
        Format::Table => {
            let mut out = format!("family: {}\n", report.family);
            out.push_str(&format!(
                "config: grid={}x{}x{} random={} seed={} tolerance={}\n",
                cfg.grid_p1,
                cfg.grid_zeta_radius,
                cfg.grid_zeta_phase,
                cfg.random_samples,
                cfg.seed,
                cfg.tolerance
            ));
            out.push_str(&format!("samples: {}\n", report.samples));
            out.push_str("bounds checked:\n");
            for outcome in outcomes {
                match outcome {
                    BoundOutcome::Applicable(r) => {
                        let rel = match r.side {
                            Side::Lower => ">=",
                            Side::Upper => "<=",
                        };
                        let flags: Vec<&str> = r
                            .preconditions
                            .iter()
                            .filter(|p| !p.ok)
                            .map(|p| p.name.as_str())
                            .collect();
                        let suffix = if flags.is_empty() {
                            String::new()
                        } else {
                            format!("  [unchecked: fails {}]", flags.join(", "))
                        };
                        out.push_str(&format!(
                            "  {} {rel} {}  ({}{})\n",
                            quantity_name(r.quantity),
                            r.value,
                            r.case,
                            suffix
                        ));
                    }
                    BoundOutcome::Inapplicable(na) => {
                        out.push_str(&format!(
                            "  {} {}: inapplicable ({})\n",
                            quantity_name(na.quantity),
                            side_name(na.side),
                            na.reason
                        ));
                    }
                }
            }
            out.push_str(&format!(
                "det T31 empirical range: [{}, {}]\n",
                report.emp_min, report.emp_max
            ));
            out.push_str(&format!(
                "  min at p1={} zeta={}\n  max at p1={} zeta={}\n",
                report.argmin.p1, report.argmin.zeta, report.argmax.p1, report.argmax.zeta
            ));
            if !report.sharp_gaps.is_empty() {
                out.push_str("sharpness gaps |det(extremal) - bound|:\n");
                for (key, gap) in &report.sharp_gaps {
                    out.push_str(&format!("  {key} = {gap}\n"));
                }
            }
            out.push_str(&format!("violations: {}\n", report.violations_total));
            for v in &report.violations {
                out.push_str(&format!(
                    "  {} {} bound {} violated by {} at p1={} zeta={}\n",
                    quantity_name(v.quantity),
                    side_name(v.side),
                    v.bound,
                    v.value,
                    v.sample.p1,
                    v.sample.zeta
                ));
            }
            out.push_str(&format!(
                "result: {}\n",
                if report.passed() { "PASS" } else { "FAIL" }
            ));
            out
        }
    }
}

pub fn extremal(
    format: Format,
    id: ExtremalId,
    family: &FamilySpec,
    f: &TruncatedSeries,
) -> String {
    let a2 = f.coeff(2);
    let a3 = f.coeff(3);
    let det21 = toeplitz::det_t21(a2);
    let det31 = toeplitz::det_t31(a2, a3);
    let det22 = toeplitz::det_t22(a2, a3);
    match format {
        Format::Json => {
            let coeffs: Vec<serde_json::Value> = (2..=5)
                .map(|k| json!({ "degree": k, "re": f.coeff(k).re, "im": f.coeff(k).im }))
                .collect();
            let doc = json!({
                "extremal": id.to_string(),
                "family": family_meta(family),
                "coefficients": coeffs,
                "det_t21": det21,
                "det_t31": det31,
                "det_t22": [det22.re, det22.im],
                "abs_det_t22": det22.norm(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Csv => {
            let mut out = String::from("coefficient,re,im\n");
            for k in 2..=5 {
                out.push_str(&format!("a{k},{},{}\n", f.coeff(k).re, f.coeff(k).im));
            }
            out.push_str(&format!("det_t21,{det21},\n"));
            out.push_str(&format!("det_t31,{det31},\n"));
            out.push_str(&format!("det_t22,{},{}\n", det22.re, det22.im));
            out.push_str(&format!("abs_det_t22,{},\n", det22.norm()));
            out
        }
        Format::Table => {
            let mut out = format!("extremal {id} over {}\n", family.label());
            out.push_str(&format!("{:<6} {:<24} im\n", "coeff", "re"));
            for k in 2..=5 {
                out.push_str(&format!(
                    "a{k:<5} {:<24} {}\n",
                    f.coeff(k).re,
                    f.coeff(k).im
                ));
            }
            out.push_str(&format!("det T21   = {det21}\n"));
            out.push_str(&format!("det T31   = {det31}\n"));
            out.push_str(&format!("det T22   = {det22}\n"));
            out.push_str(&format!("|det T22| = {}\n", det22.norm()));
            out
        }
    }
}

pub fn classes_list(format: Format) -> String {
    let registry = classes::registry();
    match format {
        Format::Json => {
            let generators: Vec<serde_json::Value> = registry
                .iter()
                .map(|e| json!({ "name": e.name, "params": e.params, "generator": e.generator }))
                .collect();
            let doc = json!({
                "generators": generators,
                "custom_generator": "--phi-file <json series [[re,im],...]>",
                "bases": CtcBase::base_names(),
                "base_alias": { "koebe": "f3-base" },
                "custom_base": "--g-file <json series>",
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Csv => {
            let mut out = String::from("name,params,generator\n");
            for e in registry {
                out.push_str(&format!(
                    "{},{},{}\n",
                    e.name,
                    csv_field(e.params),
                    csv_field(e.generator)
                ));
            }
            out
        }
        Format::Table => {
            let mut out = String::from("starlike/convex generators (--phi name[:params]):\n");
            out.push_str(&format!("  {:<12} {:<28} generator\n", "name", "params"));
            for e in registry {
                let params = if e.params.is_empty() { "-" } else { e.params };
                out.push_str(&format!(
                    "  {:<12} {:<28} {}\n",
                    e.name, params, e.generator
                ));
            }
            out.push_str("  custom: --phi-file <json series [[re,im],...]>\n");
            out.push_str(&format!(
                "close-to-convex bases (--g): {} (alias: koebe = f3-base)\n",
                CtcBase::base_names().join(", ")
            ));
            out.push_str("  custom: --g-file <json series>\n");
            out
        }
    }
}
