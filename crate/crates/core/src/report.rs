//! JSON views of engine results. Words are rendered in the canonical text
//! form of the alphabet.

use serde_json::{json, Value};

use crate::dynamics::{GrowthClass, GrowthReport, LimitResult, ParabolicReport, SplittingCheck, Verdict};
use crate::graph::limit_point_json;
use crate::matrix::IntMatrix;
use crate::word::Alphabet;

pub fn limit_result_json(r: &LimitResult, a: &Alphabet) -> Value {
    match r {
        LimitResult::FixedElement(w) => json!({
            "kind": "fixed-element",
            "element": a.format(w),
        }),
        LimitResult::Boundary {
            point,
            iterations,
            prefix_length,
        } => {
            let mut v = limit_point_json(point, a);
            v["iterations"] = json!(iterations);
            v["prefix_length"] = json!(prefix_length);
            v
        }
        LimitResult::NotConverged { best_prefix, diagnostics } => json!({
            "kind": "not-converged",
            "best_prefix": a.format(best_prefix),
            "best_prefix_length": best_prefix.len(),
            "iterations": diagnostics.iterations,
            "last_length": diagnostics.last_length,
            "reason": diagnostics.reason,
        }),
    }
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Parabolic(_) => "parabolic",
        Verdict::NotParabolic(_) => "not-parabolic",
        Verdict::Inconclusive { .. } => "inconclusive",
    }
}

pub fn parabolic_report_json(r: &ParabolicReport, a: &Alphabet) -> Value {
    let mut v = json!({
        "seed": a.format(&r.seed),
        "verdict": verdict_name(&r.verdict),
        "forward": limit_result_json(&r.forward, a),
        "backward": limit_result_json(&r.backward, a),
    });
    match &r.verdict {
        Verdict::Parabolic(x) => {
            v["point"] = json!({
                "head": a.format(x.head()),
                "period": a.format(x.period()),
                "text": x.format(a),
            });
            v["certification"] = json!("exact");
        }
        Verdict::NotParabolic(reason) => v["reason"] = json!(reason),
        Verdict::Inconclusive { reason, prefix_agreement } => {
            v["reason"] = json!(reason);
            v["prefix_agreement"] = json!(prefix_agreement);
        }
    }
    v
}

pub fn growth_report_json(r: &GrowthReport) -> Value {
    let class = match r.class {
        GrowthClass::Bounded => json!({"class": "bounded"}),
        GrowthClass::Polynomial { degree } => json!({"class": "polynomial", "degree": degree}),
        GrowthClass::Exponential { rate } => json!({"class": "exponential", "rate": rate}),
    };
    let mut v = class;
    v["polynomial_residual"] = json!(r.polynomial_residual);
    v["exponential_residual"] = json!(r.exponential_residual);
    v["truncated"] = json!(r.truncated);
    v["samples"] = json!(r.samples);
    v
}

pub fn splitting_json(c: &SplittingCheck) -> Value {
    match c {
        SplittingCheck::Holds { p_max } => json!({"holds": true, "p_max": p_max}),
        SplittingCheck::Fails { p, junction } => json!({"holds": false, "p": p, "junction": junction}),
    }
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    json!({ "dim": m.dim(), "rows": m.rows() })
}
