//! Real-valued curve samples for plotting the two models. Only used for
//! pictures; nothing here feeds back into the exact checks.

use std::fmt::Write as _;
use std::str::FromStr;

use super::Example;
use crate::error::{Error, Result};

/// `start:end:step`, inclusive of `end` up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl FromStr for FigureRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedRange(s.to_string());
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let [start, end, step] = parts[..] else { return Err(bad()) };
        if !(start.is_finite() && end.is_finite() && step.is_finite()) || step <= 0.0 {
            return Err(bad());
        }
        Ok(FigureRange { start, end, step })
    }
}

impl FigureRange {
    pub fn samples(&self) -> Vec<f64> {
        if self.start > self.end {
            return Vec::new();
        }
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

fn num(x: f64) -> String {
    let s = format!("{:.6}", x);
    // avoid "-0.000000"
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".into()
    } else {
        s
    }
}

/// CSV rows `curve_id,param,x,y` (dual) or `curve_id,param,x,y,z` (ternion).
///
/// Dual: `C: y = t x²`, its shear image `C_nu: y = t x² + x + 1`, and the
/// translate `C_tau` of `C` that traces the same parabola.
/// Ternion: a grid of rulings of the saddle `z = t x y` (`row*` with `x`
/// fixed, `col*` with `y` fixed) and the parabola `C` over the diagonal.
pub fn export_figure_data(example: Example, t: f64, range: &FigureRange) -> Result<String> {
    if !t.is_finite() {
        return Err(Error::MalformedRange(format!("t = {t}")));
    }
    if t == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let xs = range.samples();
    let mut out = String::new();
    match example {
        Example::Dual => {
            out.push_str("curve_id,param,x,y\n");
            let (l1, l2) = (1.0, 1.0);
            let (dx, dy) = (-l1 / (2.0 * t), l2 - l1 * l1 / (4.0 * t));
            for &x in &xs {
                writeln!(out, "C,{},{},{}", num(x), num(x), num(t * x * x)).unwrap();
            }
            for &x in &xs {
                let y = t * x * x + l1 * x + l2;
                writeln!(out, "C_nu,{},{},{}", num(x), num(x), num(y)).unwrap();
            }
            for &s in &xs {
                writeln!(out, "C_tau,{},{},{}", num(s), num(s + dx), num(t * s * s + dy)).unwrap();
            }
        }
        Example::Ternion => {
            out.push_str("curve_id,param,x,y,z\n");
            for (i, &x) in xs.iter().enumerate() {
                for &y in &xs {
                    writeln!(out, "row{i},{},{},{},{}", num(y), num(x), num(y), num(t * x * y)).unwrap();
                }
            }
            for (j, &y) in xs.iter().enumerate() {
                for &x in &xs {
                    writeln!(out, "col{j},{},{},{},{}", num(x), num(x), num(y), num(t * x * y)).unwrap();
                }
            }
            for &s in &xs {
                writeln!(out, "C,{},{},{},{}", num(s), num(s), num(s), num(t * s * s)).unwrap();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(csv: &str, id: &str) -> Vec<Vec<f64>> {
        csv.lines()
            .skip(1)
            .filter(|l| l.split(',').next() == Some(id))
            .map(|l| l.split(',').skip(1).map(|v| v.parse().unwrap()).collect())
            .collect()
    }

    #[test]
    fn range_parsing() {
        let r: FigureRange = "-1:1:0.5".parse().unwrap();
        assert_eq!(r.samples(), [-1.0, -0.5, 0.0, 0.5, 1.0]);
        for bad in ["1:2", "a:1:1", "0:1:0", "0:1:-1", "0:inf:1", "0:1:1:1"] {
            assert!(matches!(bad.parse::<FigureRange>(), Err(Error::MalformedRange(_))), "{bad}");
        }
        assert!("0:0.3:0.1".parse::<FigureRange>().unwrap().samples().len() == 4);
    }

    #[test]
    fn empty_range_gives_header_only() {
        let r: FigureRange = "1:0:0.1".parse().unwrap();
        assert_eq!(export_figure_data(Example::Dual, 1.0, &r).unwrap(), "curve_id,param,x,y\n");
        assert_eq!(export_figure_data(Example::Ternion, 1.0, &r).unwrap(), "curve_id,param,x,y,z\n");
    }

    #[test]
    fn dual_curves_lie_on_their_parabolas() {
        let r: FigureRange = "-2:2:0.25".parse().unwrap();
        let t = 0.5;
        let csv = export_figure_data(Example::Dual, t, &r).unwrap();
        let nu_y = |x: f64| t * x * x + x + 1.0;
        for row in rows(&csv, "C_tau") {
            assert!((row[2] - nu_y(row[1])).abs() < 1e-5);
        }
        for row in rows(&csv, "C") {
            assert!((row[2] - t * row[1] * row[1]).abs() < 1e-5);
        }
        assert_eq!(rows(&csv, "C_nu").len(), 17);
        assert!(matches!(export_figure_data(Example::Dual, 0.0, &r), Err(Error::ZeroParameter)));
    }

    #[test]
    fn ternion_grid_is_on_the_saddle() {
        let r: FigureRange = "-1:1:0.5".parse().unwrap();
        let csv = export_figure_data(Example::Ternion, 2.0, &r).unwrap();
        assert_eq!(csv.lines().count(), 1 + 25 + 25 + 5);
        for line in csv.lines().skip(1) {
            let v: Vec<f64> = line.split(',').skip(2).map(|x| x.parse().unwrap()).collect();
            assert!((v[2] - 2.0 * v[0] * v[1]).abs() < 1e-5);
        }
    }
}
