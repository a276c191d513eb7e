use num_rational::BigRational;
use serde_json::{json, Map, Value};

use super::poly::MPoly;
use super::ratfunc::RatFunc;

fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serializes a polynomial as a list of terms in descending canonical order:
/// `{exponents: {var: int}, re: "p/q", im: "p/q"}` with zero exponents
/// omitted. The ordering makes the output byte-deterministic.
pub fn mpoly_to_json(p: &MPoly) -> Value {
    let terms: Vec<Value> = p
        .iter_desc()
        .map(|(m, c)| {
            let mut exps = Map::new();
            for (v, e) in m.vars() {
                exps.insert(v.name().to_string(), json!(e));
            }
            json!({
                "exponents": Value::Object(exps),
                "re": rational_string(&c.re),
                "im": rational_string(&c.im),
            })
        })
        .collect();
    Value::Array(terms)
}

/// Serializes a rational function as `{num, den}` term lists with the
/// denominator materialized and sign-normalized.
pub fn ratfunc_to_json(r: &RatFunc) -> Value {
    let (num, den) = r.num_den();
    json!({
        "num": mpoly_to_json(&num),
        "den": mpoly_to_json(&den),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gaussian::GaussianRational;
    use crate::arith::mono::Mono;
    use crate::arith::var::Var;

    #[test]
    fn schema_shape() {
        let p = MPoly::from_terms([
            (Mono::var(Var::A, 2), GaussianRational::from_int(1)),
            (Mono::var(Var::Q, -1), GaussianRational::from_frac(-1, 2)),
        ]);
        let v = mpoly_to_json(&p);
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[0]["exponents"]["a"], json!(2));
        assert_eq!(arr[0]["re"], json!("1/1"));
        assert_eq!(arr[1]["exponents"]["q"], json!(-1));
        assert_eq!(arr[1]["re"], json!("-1/2"));
        assert_eq!(arr[1]["im"], json!("0/1"));
    }

    #[test]
    fn ratfunc_schema() {
        let r = RatFunc::from_num_den(
            MPoly::var(Var::A),
            MPoly::one().sub(&MPoly::var(Var::Q)),
        )
        .unwrap();
        let v = ratfunc_to_json(&r);
        assert!(v["num"].is_array());
        assert!(v["den"].is_array());
        let s1 = serde_json::to_string(&v).unwrap();
        let s2 = serde_json::to_string(&ratfunc_to_json(&r)).unwrap();
        assert_eq!(s1, s2);
    }
}
