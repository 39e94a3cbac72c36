//! `START:END:COUNT` grids.

use gencoef::gates::Angle;

use crate::Failure;

/// `count` evenly spaced points from `start` to `end`, both included.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![start],
        _ => (0..count).map(|i| start + (end - start) * i as f64 / (count - 1) as f64).collect(),
    }
}

/// Parses `START:END:COUNT`; endpoints may be angles such as `2pi`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, end, count] = parts.as_slice() else {
        return Err(Failure::Input(format!("grid {spec:?} is not START:END:COUNT")));
    };
    let point = |s: &str| Angle::parse(s).map(|a| a.radians).map_err(Failure::from);
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("grid count {count:?} is not a non-negative integer")))?;
    Ok(linspace(point(start)?, point(end)?, count))
}
