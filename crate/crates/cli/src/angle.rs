//! Angle arguments: plain reals or multiples of pi such as `pi/2`, `-3pi/4`, `2*pi`.

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s = text.trim();
    if let Ok(v) = s.parse::<f64>() {
        return finite(v, text);
    }
    let lower = s.to_ascii_lowercase();
    let Some(pos) = lower.find("pi") else {
        return Err(format!("`{text}` is not an angle"));
    };
    let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| format!("`{text}` is not an angle"))?,
    };
    let denom = match tail {
        "" => 1.0,
        t => t
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(|| format!("`{text}` is not an angle"))?,
    };
    finite(coeff * PI / denom, text)
}

fn finite(v: f64, text: &str) -> Result<f64, String> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{text}` is not finite"))
    }
}
