//! JSON description of a candidate theory on an arbitrary finite group:
//!
//! ```json
//! {
//!   "multiplication": [[0, 1], [1, 0]],
//!   "parts": [[0], [1]],
//!   "characters": [[1, 1], [1, -1]]
//! }
//! ```
//!
//! `characters[i][k]` is the value of the `i`-th character on part `k`: an
//! integer, a string `"a/b"`, or `{"m": 4, "coeffs": [[0, 1], [1, 1]]}` for
//! `Σ_j (a_j/b_j) ζ_m^j`.

use std::path::Path;

use num::BigInt;
use serde::Deserialize;
use superchar::arith::{CyclotomicNumber, Rational};
use superchar::sct::{ClassFunction, FiniteGroupTable, Partition, SuperTheory};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryFile {
    pub multiplication: Vec<Vec<usize>>,
    pub parts: Vec<Vec<usize>>,
    pub characters: Vec<Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
    Cyclotomic { m: u32, coeffs: Vec<[i64; 2]> },
}

impl Value {
    fn to_cyclotomic(&self) -> Result<CyclotomicNumber, CliError> {
        match self {
            Value::Int(v) => Ok(CyclotomicNumber::from_int(1, *v)),
            Value::Text(s) => {
                let r: Rational = s.trim().parse().map_err(|_| CliError::Usage(format!("bad rational {s:?}")))?;
                Ok(CyclotomicNumber::from_rational(1, r))
            }
            Value::Cyclotomic { m, coeffs } => {
                if *m == 0 || coeffs.iter().any(|c| c[1] == 0) {
                    return Err(CliError::Usage("cyclotomic values need m ≥ 1 and nonzero denominators".into()));
                }
                let mut acc = CyclotomicNumber::zero(*m);
                for (k, [a, b]) in coeffs.iter().enumerate() {
                    let c = Rational::new(BigInt::from(*a), BigInt::from(*b));
                    acc += &CyclotomicNumber::zeta_power(*m, k as i64).scale(&c);
                }
                Ok(acc)
            }
        }
    }
}

impl TheoryFile {
    pub fn read(path: &Path) -> Result<TheoryFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("theory {}: {e}", path.display())))
    }

    pub fn build(&self) -> Result<(FiniteGroupTable, SuperTheory), CliError> {
        let order = self.multiplication.len();
        if self.multiplication.iter().any(|row| row.len() != order || row.iter().any(|&g| g >= order)) {
            return Err(CliError::Usage(format!("the multiplication table must be {order} × {order} with entries below {order}")));
        }
        let table = FiniteGroupTable::from_fn(order, |a, b| self.multiplication[a][b])?;
        let partition = Partition::new(order, self.parts.clone())?;
        let mut characters = Vec::with_capacity(self.characters.len());
        for row in &self.characters {
            if row.len() != partition.len() {
                return Err(CliError::Usage(format!("each character needs {} part values", partition.len())));
            }
            let vals = row.iter().map(Value::to_cyclotomic).collect::<Result<Vec<_>, _>>()?;
            characters.push(ClassFunction::from_parts(&partition, &vals));
        }
        Ok((table, SuperTheory::new(partition, characters)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_theory_builds_and_verifies() {
        let f: TheoryFile = serde_json::from_str(
            r#"{"multiplication": [[0, 1], [1, 0]], "parts": [[0], [1]], "characters": [[1, "1"], [1, {"m": 2, "coeffs": [[-1, 1]]}]]}"#,
        )
        .unwrap();
        let (t, th) = f.build().unwrap();
        assert!(th.verify(t.identity()).passed());
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let f: TheoryFile =
            serde_json::from_str(r#"{"multiplication": [[0, 1], [1, 0]], "parts": [[0], [1]], "characters": [[1]]}"#).unwrap();
        assert!(f.build().is_err());
    }
}
