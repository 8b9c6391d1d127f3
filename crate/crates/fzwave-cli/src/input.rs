//! Initial-data CSV: `#` comments, a header naming `x`, `u0` and optionally
//! `v0`, then rows on a uniform grid.

use fzwave::cauchy::{InitialData, Profile};

use crate::CliError;

const BUMP: &str = include_str!("../data/bump.csv");

/// The bundled unit-mass bump.
pub fn bundled_bump() -> InitialData {
    parse_initial_data(BUMP).expect("bundled data is well formed")
}

pub fn parse_initial_data(text: &str) -> Result<InitialData, CliError> {
    let bad = |m: String| CliError::Flag(format!("initial data: {m}"));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty file".into()))?.split(',').map(str::trim).collect();
    let col = |name: &str| header.iter().position(|h| *h == name);
    let (ix, iu) = match (col("x"), col("u0")) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(bad(format!("header needs x and u0, got {header:?}"))),
    };
    let iv = col("v0");

    let (mut xs, mut us, mut vs) = (Vec::new(), Vec::new(), Vec::new());
    for (n, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != header.len() {
            return Err(bad(format!("row {} has {} cells, expected {}", n + 1, cells.len(), header.len())));
        }
        let num = |k: usize| cells[k].parse::<f64>().map_err(|e| bad(format!("row {}: {e}", n + 1)));
        xs.push(num(ix)?);
        us.push(num(iu)?);
        if let Some(k) = iv {
            vs.push(num(k)?);
        }
    }
    if xs.len() < 2 {
        return Err(bad("need at least two rows".into()));
    }
    let step = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    for (i, &x) in xs.iter().enumerate() {
        if (x - (xs[0] + i as f64 * step)).abs() > 1e-9 * step.abs().max(1.0) {
            return Err(bad(format!("x is not uniformly spaced at row {}", i + 1)));
        }
    }
    let to_flag = |e: fzwave::Error| bad(e.to_string());
    let u0 = Profile::new(xs[0], step, us).map_err(to_flag)?;
    let v0 = match iv {
        Some(_) => Some(Profile::new(xs[0], step, vs).map_err(to_flag)?),
        None => None,
    };
    Ok(InitialData { u0, v0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_is_unit_mass() {
        let d = bundled_bump();
        assert!((d.u0.integral() - 1.0).abs() < 1e-12);
        assert!(d.v0.is_none());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_initial_data("x,u0\n0,1\n0.1,2\n0.3,1\n").is_err());
        assert!(parse_initial_data("x,w\n0,1\n1,1\n").is_err());
        assert!(parse_initial_data("x,u0\n0,1\n").is_err());
        let d = parse_initial_data("# c\nx,u0,v0\n0,1,2\n0.5,0,1\n1,0,0\n").unwrap();
        assert_eq!(d.v0.unwrap().samples, vec![2.0, 1.0, 0.0]);
    }
}
