use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The closed-form depth bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundFormula {
    /// Halving from distance `d`: `⌈log d⌉`.
    MT1,
    /// Two cycles `C_n`, `C_m`: `⌈log n⌉ + 1`.
    CnCm,
    /// Defining `C_n`: `log n + 3`, strict.
    DefCn,
    /// Tree with layout by diameter: `log diam + log Δ + 12`, strict.
    TreeLayout,
    /// Tree with layout by fineness: `3 log r + log Δ + 18`.
    MainLemma1,
    /// Rooted yuppie game: `max{log r, log Δ} + 7`, strict.
    Yuppie,
    /// `3 D(facing) + 2 log f + 2 log r + 5`, strict.
    MainLemma2,
    /// `2 log f + 2 log r + 9`, strict.
    MainLemma2A,
    /// `3 D(facing pair) + 2 log f + 2 log r + 5`, strict.
    MainLemma2B,
    /// `11 log r + 5 log Δ + 59`.
    Theorem1,
}

pub const ALL_FORMULAS: [BoundFormula; 10] = [
    BoundFormula::MT1,
    BoundFormula::CnCm,
    BoundFormula::DefCn,
    BoundFormula::TreeLayout,
    BoundFormula::MainLemma1,
    BoundFormula::Yuppie,
    BoundFormula::MainLemma2,
    BoundFormula::MainLemma2A,
    BoundFormula::MainLemma2B,
    BoundFormula::Theorem1,
];

/// A bound value; `strict` means the depth is strictly below `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    pub value: f64,
    pub strict: bool,
}

impl Bound {
    /// Whether a depth respects the bound.
    pub fn admits(&self, depth: usize) -> bool {
        let d = depth as f64;
        if self.strict {
            d < self.value
        } else {
            d <= self.value
        }
    }

    /// The largest integer depth the bound admits.
    pub fn max_depth(&self) -> usize {
        let floor = self.value.floor();
        let d = if self.strict && floor == self.value { floor - 1.0 } else { floor };
        d.max(0.0) as usize
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:.4}", if self.strict { "<" } else { "<=" }, self.value)
    }
}

impl BoundFormula {
    pub fn name(self) -> &'static str {
        match self {
            BoundFormula::MT1 => "MT1",
            BoundFormula::CnCm => "CnCm",
            BoundFormula::DefCn => "DefCn",
            BoundFormula::TreeLayout => "TreeLayout",
            BoundFormula::MainLemma1 => "MainLemma1",
            BoundFormula::Yuppie => "Yuppie",
            BoundFormula::MainLemma2 => "MainLemma2",
            BoundFormula::MainLemma2A => "MainLemma2A",
            BoundFormula::MainLemma2B => "MainLemma2B",
            BoundFormula::Theorem1 => "Theorem1",
        }
    }

    /// Parameter names, in the order `evaluate_bound` expects them.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            BoundFormula::MT1 => &["d"],
            BoundFormula::CnCm | BoundFormula::DefCn => &["n"],
            BoundFormula::TreeLayout => &["diam", "delta"],
            BoundFormula::MainLemma1 | BoundFormula::Yuppie | BoundFormula::Theorem1 => &["r", "delta"],
            BoundFormula::MainLemma2 | BoundFormula::MainLemma2B => &["depth", "f", "r"],
            BoundFormula::MainLemma2A => &["f", "r"],
        }
    }
}

impl fmt::Display for BoundFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_FORMULAS
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFormula(s.to_string()))
    }
}

fn lg(name: &'static str, value: f64) -> Result<f64> {
    if value >= 1.0 {
        Ok(value.log2())
    } else {
        Err(Error::BoundArgument { name, value })
    }
}

pub fn evaluate_bound(formula: BoundFormula, params: &[f64]) -> Result<Bound> {
    let names = formula.params();
    if params.len() != names.len() {
        return Err(Error::Config(format!(
            "{formula} expects ({}), got {} values",
            names.join(", "),
            params.len()
        )));
    }
    let p = |i: usize| lg(names[i], params[i]);
    let depth = |i: usize| -> Result<f64> {
        if params[i] >= 0.0 {
            Ok(params[i])
        } else {
            Err(Error::BoundArgument { name: names[i], value: params[i] })
        }
    };
    use BoundFormula::*;
    let (value, strict) = match formula {
        MT1 => (p(0)?.ceil(), false),
        CnCm => (p(0)?.ceil() + 1.0, false),
        DefCn => (p(0)? + 3.0, true),
        TreeLayout => (p(0)? + p(1)? + 12.0, true),
        MainLemma1 => (3.0 * p(0)? + p(1)? + 18.0, false),
        Yuppie => (p(0)?.max(p(1)?) + 7.0, true),
        MainLemma2 | MainLemma2B => (3.0 * depth(0)? + 2.0 * p(1)? + 2.0 * p(2)? + 5.0, true),
        MainLemma2A => (2.0 * p(0)? + 2.0 * p(1)? + 9.0, true),
        Theorem1 => (11.0 * p(0)? + 5.0 * p(1)? + 59.0, false),
    };
    Ok(Bound { value, strict })
}
