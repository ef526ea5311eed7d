//! Human-readable rendering. Floating approximations are marked `≈`.

use std::fmt::Write;

use multstrata::rational::q_to_f64;
use multstrata::{BoundCheckResult, ClassificationReport, InstabilityCertificate, StratumLabel, VerifySummary, Q};

fn approx(x: &Q) -> String {
    format!("{x} (≈ {:.6})", q_to_f64(x))
}

pub fn certificate(c: &InstabilityCertificate) -> String {
    let mut s = String::new();
    writeln!(s, "nearest point q = {}", c.q).unwrap();
    writeln!(s, "w = q − ξ      = {}", c.w).unwrap();
    writeln!(s, "δ²             = {}", approx(&c.delta_sq)).unwrap();
    match (&c.lambda, &c.scale) {
        (Some(l), Some(k)) => {
            writeln!(s, "λ              = {l}  (λ = {k}·w, class {})", l.class_rep()).unwrap();
        }
        _ => writeln!(s, "torus-semistable: ξ lies in the Newton polytope").unwrap(),
    }
    for h in &c.hull_weights {
        writeln!(s, "  weight {} on {:?}", h.weight, h.point.0).unwrap();
    }
    s
}

pub fn classification(r: &ClassificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "r = {}, d = {}, N = {} (threshold {})", r.r, r.d, r.n, r.threshold_used).unwrap();
    match r.m_band {
        Some(m) => writeln!(s, "band multiplicity   m_band   = {m}").unwrap(),
        None => writeln!(s, "band multiplicity   m_band   = none (matches: {:?})", r.matches).unwrap(),
    }
    writeln!(s, "direct multiplicity m_direct = {}", r.m_direct).unwrap();
    writeln!(s, "agreed: {}", r.agreed).unwrap();
    writeln!(s, "nearest point q = {}, δ² = {}", r.cert.q, approx(&r.cert.delta_sq)).unwrap();
    if let Some(diag) = &r.diagnostics {
        for b in diag {
            writeln!(s, "  band m={}: l² = {}, contains q: {}", b.m, b.l_sq, b.contained).unwrap();
        }
    }
    s
}

pub fn verify(v: &VerifySummary) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "r = {}, d = {}, N = {} (threshold {}), seed {}: {}/{} agreed",
        v.r, v.d, v.n, v.threshold, v.seed, v.agreed, v.total
    )
    .unwrap();
    for f in &v.failures {
        writeln!(s, "FAILED m={} #{}: m_band={:?}\n{}", f.m, f.index, f.report.m_band, f.form).unwrap();
    }
    s
}

pub fn bound(label: &StratumLabel, r: &BoundCheckResult) -> String {
    let mut s = String::new();
    writeln!(s, "label: [λ] = {}, δ² = {}, scale = {}", label.lambda_rep, approx(&label.delta_sq), label.scale).unwrap();
    writeln!(s, "{} ≤ {} ≤ {}: {}", approx(&r.lower), r.max_mult, approx(&r.upper), r.within).unwrap();
    s
}
