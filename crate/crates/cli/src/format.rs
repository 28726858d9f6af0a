use serde_json::{json, Value};
use wordflow::pregroup::ReductionDiagram;

/// Like C's `%g` with `digits` significant digits.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, e) = s.split_once('e').expect("scientific form");
        format!("{}e{}", trim_zeros(mantissa), e)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn text_vector(values: &[f64]) -> String {
    values.iter().map(|&v| sig(v, 6)).collect::<Vec<_>>().join(" ")
}

/// JSON array of numbers at 17 significant digits, which read back exactly.
pub fn json_vector(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|v| format!("{v:.16e}")).collect();
    format!("[{}]", items.join(","))
}

pub fn diagram_json(d: &ReductionDiagram) -> Value {
    json!({
        "links": d.links().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "through": d.through(),
    })
}

/// Serializes `object` and splices `"vector": <raw>` in as its last member.
pub fn with_raw_vector(object: Value, raw_vector: &str) -> String {
    let text = object.to_string();
    let body = text.strip_suffix('}').expect("JSON object");
    if body.len() > 1 {
        format!("{body},\"vector\":{raw_vector}}}")
    } else {
        format!("{{\"vector\":{raw_vector}}}")
    }
}
