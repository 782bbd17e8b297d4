//! Browser bindings: supercharacter tables and NS / NPS operations as JSON
//! strings. The `*_json` functions are plain Rust so they can be tested
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use superchar::combinatorics::{RiggedPartition, SetPartition};
use superchar::groups::Limits;
use superchar::hopf::{nps_coproduct, nps_product, GradedElement};
use superchar::tri::TriTheory;
use superchar::ut::UtTheory;
use wasm_bindgen::prelude::*;

/// Groups larger than this are refused to keep the page responsive.
pub const WEB_SIZE_CAP: u64 = 20_000;

fn limits() -> Limits {
    Limits { max_order: WEB_SIZE_CAP }
}

pub fn ut_table_json(n: usize, p: u32) -> Result<String, String> {
    let t = UtTheory::new(n, p, limits()).map_err(|e| e.to_string())?;
    Ok(t.table().to_json())
}

pub fn t_table_json(n: usize, p: u32) -> Result<String, String> {
    let t = TriTheory::new(n, p, limits()).map_err(|e| e.to_string())?;
    Ok(t.table().to_json())
}

/// `op` is `"mult"` (product of all labels, left to right) or `"coprod"`
/// (coproduct of the single label). `algebra` is `"ns"` or `"nps"`; NPS uses
/// rigging labels `1..=y`.
pub fn hopf_json(op: &str, algebra: &str, labels: &[String], y: u32) -> Result<String, String> {
    let err = |e: superchar::Error| e.to_string();
    let value = match (op, algebra) {
        ("mult", "ns") => {
            let mut acc = GradedElement::<SetPartition>::one();
            for l in labels {
                acc = acc.mul(&GradedElement::basis(l.parse().map_err(err)?));
            }
            serde_json::to_value(acc)
        }
        ("mult", "nps") => {
            let mut acc = GradedElement::<RiggedPartition>::one();
            for l in labels {
                acc = nps_product(&acc, &GradedElement::basis(l.parse().map_err(err)?), y).map_err(err)?;
            }
            serde_json::to_value(acc)
        }
        ("coprod", alg) => {
            let [label] = labels else {
                return Err("the coproduct takes exactly one label".into());
            };
            match alg {
                "ns" => serde_json::to_value(GradedElement::<SetPartition>::basis(label.parse().map_err(err)?).coproduct()),
                "nps" => serde_json::to_value(nps_coproduct(&GradedElement::basis(label.parse().map_err(err)?), y).map_err(err)?),
                other => return Err(format!("unknown algebra {other:?}")),
            }
        }
        (op, alg) => return Err(format!("unknown operation {op:?} on {alg:?}")),
    };
    Ok(value.expect("terms serialize").to_string())
}

#[wasm_bindgen(js_name = utTable)]
pub fn ut_table(n: usize, p: u32) -> Result<String, JsError> {
    ut_table_json(n, p).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = tTable)]
pub fn t_table(n: usize, p: u32) -> Result<String, JsError> {
    t_table_json(n, p).map_err(|e| JsError::new(&e))
}

/// `labels` are separated by whitespace, e.g. `"12|3 1"`.
#[wasm_bindgen(js_name = hopf)]
pub fn hopf(op: &str, algebra: &str, labels: &str, y: u32) -> Result<String, JsError> {
    let labels: Vec<String> = labels.split_whitespace().map(str::to_string).collect();
    hopf_json(op, algebra, &labels, y).map_err(|e| JsError::new(&e))
}
