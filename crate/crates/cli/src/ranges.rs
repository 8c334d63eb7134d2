//! `min:max:count` axes for `--grid` and `param=min:max:count` sweeps.

use std::str::FromStr;

use nonclassical::states::SweepParam;

/// Evenly spaced samples with both endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|k| if k + 1 == self.count { self.max } else { self.min + k as f64 * step }).collect()
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("expected min:max:count, got '{s}'"));
        };
        let num = |t: &str| match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(format!("'{t}' is not a finite number")),
        };
        let (min, max) = (num(min)?, num(max)?);
        let count: usize = count.parse().map_err(|_| format!("'{count}' is not a positive integer"))?;
        if count == 0 {
            return Err("count must be at least 1".into());
        }
        if count == 1 && min != max {
            return Err("a single sample needs min == max".into());
        }
        if count > 1 && min >= max {
            return Err(format!("need min < max, got {min} >= {max}"));
        }
        Ok(Axis { min, max, count })
    }
}

/// Grid axis: at least two samples.
pub fn parse_grid_axis(s: &str) -> Result<Axis, String> {
    let axis: Axis = s.parse()?;
    if axis.count < 2 {
        return Err("a grid axis needs at least 2 samples".into());
    }
    Ok(axis)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub axis: Axis,
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, range) = s.split_once('=').ok_or_else(|| format!("expected param=min:max:count, got '{s}'"))?;
        let param = match name {
            "alpha" => SweepParam::Alpha,
            "x" => SweepParam::X,
            "m" => SweepParam::M,
            _ => return Err(format!("unknown sweep parameter '{name}', expected alpha, x or m")),
        };
        Ok(Sweep { param, axis: range.parse()? })
    }
}
