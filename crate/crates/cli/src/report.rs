use std::collections::BTreeMap;

use anyhow::{anyhow, Result};
use endoscopy_core::multiplicity::Rational;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub fn from_rational(r: &Rational) -> Result<Fraction> {
        // BigRational is kept reduced with a positive denominator.
        let num = r.numer().to_i64().ok_or_else(|| anyhow!("numerator of {r} does not fit in i64"))?;
        let den = r.denom().to_i64().ok_or_else(|| anyhow!("denominator of {r} does not fit in i64"))?;
        Ok(Fraction { num, den })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloatValue {
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Infeasible,
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub exact_values: BTreeMap<String, Fraction>,
    pub float_values: BTreeMap<String, FloatValue>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Report {
        Report {
            command: command.to_string(),
            inputs,
            results: Value::Null,
            exact_values: BTreeMap::new(),
            float_values: BTreeMap::new(),
            status: Status::Ok,
        }
    }

    pub fn exact(&mut self, key: &str, r: &Rational) -> Result<()> {
        self.exact_values.insert(key.to_string(), Fraction::from_rational(r)?);
        Ok(())
    }

    pub fn float(&mut self, key: &str, value: f64, tolerance: f64) {
        self.float_values.insert(key.to_string(), FloatValue { value, tolerance });
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
