//! On-disk cache of Ψ series, keyed by Cartan matrix, θ, depth and crate version.
//!
//! Entries are lossless JSON: every scalar is stored as its numerator and denominator term lists.

use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use qtrace::intertwine::PsiSeries;
use qtrace::{LambdaPoly, Mat, QScalar, RootSystem, Q};
use serde_json::{json, Value};

pub const ENV_VAR: &str = "QTRACE_CACHE_DIR";

pub struct PsiCache {
    dir: PathBuf,
}

impl PsiCache {
    /// The cache named by `QTRACE_CACHE_DIR`, if set and nonempty.
    pub fn from_env() -> Option<Self> {
        let dir = std::env::var_os(ENV_VAR).filter(|d| !d.is_empty())?;
        Some(PsiCache { dir: PathBuf::from(dir) })
    }

    pub fn path(&self, rs: &RootSystem, theta: &[i64], depth: usize) -> PathBuf {
        let cartan: Vec<String> = rs.cartan.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")).collect();
        let theta: Vec<String> = theta.iter().map(|x| x.to_string()).collect();
        let name = format!("psi_c{}_t{}_d{}_v{}.json", cartan.join("_"), theta.join("."), depth, env!("CARGO_PKG_VERSION"));
        self.dir.join(name)
    }

    /// A cached series, or None when absent or unreadable.
    pub fn load(&self, rs: &RootSystem, theta: &[i64], depth: usize) -> Option<PsiSeries> {
        let text = fs::read_to_string(self.path(rs, theta, depth)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        let psi = decode_psi(rs, &v)?;
        (psi.depth == depth).then_some(psi)
    }

    pub fn store(&self, theta: &[i64], psi: &PsiSeries) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&psi.rs, theta, psi.depth);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&encode_psi(psi))?)?;
        fs::rename(&tmp, &path)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

fn encode_terms(t: Vec<(Q, BigRational)>) -> Value {
    Value::Array(t.into_iter().map(|(e, c)| json!([e.to_string(), c.to_string()])).collect())
}

fn encode_scalar(c: &QScalar) -> Value {
    json!({"num": encode_terms(c.num_terms()), "den": encode_terms(c.den_terms())})
}

fn encode_poly(p: &LambdaPoly) -> Value {
    Value::Array(p.terms().iter().map(|(e, c)| json!([strings(e), encode_scalar(c)])).collect())
}

fn strings(w: &[Q]) -> Vec<String> {
    w.iter().map(|x| x.to_string()).collect()
}

pub fn encode_psi(psi: &PsiSeries) -> Value {
    let terms: Vec<Value> = psi
        .terms
        .iter()
        .map(|(mu, b)| {
            let rows: Vec<Vec<Value>> = (0..b.rows).map(|i| b.row(i).iter().map(encode_poly).collect()).collect();
            json!({"mu": mu, "B": rows})
        })
        .collect();
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "cartan": psi.rs.cartan,
        "theta": strings(&psi.theta),
        "k": psi.k,
        "Theta": psi.big_theta,
        "chi": encode_poly(&psi.chi),
        "dim0": psi.dim0,
        "depth": psi.depth,
        "terms": terms,
    })
}

fn decode_terms(v: &Value) -> Option<QScalar> {
    let mut acc = QScalar::zero();
    for t in v.as_array()? {
        let e: Q = t.get(0)?.as_str()?.parse().ok()?;
        let c: BigRational = t.get(1)?.as_str()?.parse().ok()?;
        acc = &acc + &QScalar::mono(c, e);
    }
    Some(acc)
}

fn decode_scalar(v: &Value) -> Option<QScalar> {
    let den = decode_terms(v.get("den")?)?;
    if den.is_zero() {
        return None;
    }
    Some(&decode_terms(v.get("num")?)? / &den)
}

fn decode_wt(v: &Value) -> Option<Vec<Q>> {
    v.as_array()?.iter().map(|x| x.as_str()?.parse().ok()).collect()
}

fn decode_ints(v: &Value) -> Option<Vec<i64>> {
    v.as_array()?.iter().map(Value::as_i64).collect()
}

fn decode_poly(v: &Value) -> Option<LambdaPoly> {
    let mut terms = Vec::new();
    for t in v.as_array()? {
        terms.push((decode_wt(t.get(0)?)?, decode_scalar(t.get(1)?)?));
    }
    Some(LambdaPoly::from_terms(terms))
}

fn decode_psi(rs: &RootSystem, v: &Value) -> Option<PsiSeries> {
    if v.get("version")?.as_str()? != env!("CARGO_PKG_VERSION") {
        return None;
    }
    let cartan: Vec<Vec<i64>> = v.get("cartan")?.as_array()?.iter().map(decode_ints).collect::<Option<_>>()?;
    if cartan != rs.cartan {
        return None;
    }
    let mut terms = std::collections::BTreeMap::new();
    for t in v.get("terms")?.as_array()? {
        let rows: Vec<Vec<LambdaPoly>> =
            t.get("B")?.as_array()?.iter().map(|r| r.as_array()?.iter().map(decode_poly).collect::<Option<Vec<_>>>()).collect::<Option<_>>()?;
        terms.insert(decode_ints(t.get("mu")?)?, Mat::from_rows(rows));
    }
    Some(PsiSeries {
        rs: rs.clone(),
        theta: decode_wt(v.get("theta")?)?,
        k: decode_ints(v.get("k")?)?,
        big_theta: decode_ints(v.get("Theta")?)?,
        chi: decode_poly(v.get("chi")?)?,
        dim0: v.get("dim0")?.as_u64()? as usize,
        depth: v.get("depth")?.as_u64()? as usize,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_round_trip() {
        let q = |e: i64| QScalar::q_pow(Q::from_integer(e));
        let x = &(&q(3) - &QScalar::q_integer(3, 1)) / &(&q(1) + &QScalar::q_pow(Q::new(-1, 2)));
        assert_eq!(decode_scalar(&encode_scalar(&x)), Some(x));
    }
}
