//! Conversions between JSON documents and library types.

use std::str::FromStr;

use demkit::magnus::FreeWord;
use demkit::symplectic::{GramForm, Subspace};
use demkit::{LocalRing, Matrix};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

/// Failure surfaced to the user: malformed input (exit 2) or a library error (exit 1).
#[derive(Debug)]
pub enum CliError {
    Malformed { code: &'static str, message: String },
    Domain(demkit::Error),
}

impl From<demkit::Error> for CliError {
    fn from(e: demkit::Error) -> Self {
        CliError::Domain(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn malformed(message: impl Into<String>) -> CliError {
    CliError::Malformed { code: "MalformedInput", message: message.into() }
}

pub fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

pub fn rows(m: &Matrix) -> Value {
    json!(m.to_rows())
}

pub fn ring_value(r: LocalRing) -> Value {
    json!({"p": r.p(), "k": r.k()})
}

pub fn field<'a>(doc: &'a Value, key: &str) -> CliResult<&'a Value> {
    doc.get(key).ok_or_else(|| malformed(format!("missing field `{key}`")))
}

pub fn as_u64(v: &Value, what: &str) -> CliResult<u64> {
    v.as_u64().ok_or_else(|| malformed(format!("`{what}` must be a nonnegative integer")))
}

pub fn as_bigint(v: &Value, what: &str) -> CliResult<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| malformed(format!("`{what}` must be an integer"))),
        _ => Err(malformed(format!("`{what}` must be an integer"))),
    }
}

pub fn opt_u64(doc: &Value, key: &str) -> CliResult<Option<u64>> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => as_u64(v, key).map(Some),
    }
}

fn int_rows(v: &Value, what: &str) -> CliResult<Vec<Vec<BigInt>>> {
    let outer = v.as_array().ok_or_else(|| malformed(format!("`{what}` must be an array of arrays")))?;
    outer
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| malformed(format!("`{what}` must be an array of arrays")))?
                .iter()
                .map(|x| as_bigint(x, what))
                .collect()
        })
        .collect()
}

/// Vectors of residues in `ring`, with arbitrary integers reduced.
pub fn vectors(v: &Value, ring: LocalRing, what: &str) -> CliResult<Vec<Vec<u64>>> {
    Ok(int_rows(v, what)?.iter().map(|r| r.iter().map(|x| ring.reduce_big(x)).collect()).collect())
}

pub fn vector(v: &Value, ring: LocalRing, what: &str) -> CliResult<Vec<u64>> {
    let items = v.as_array().ok_or_else(|| malformed(format!("`{what}` must be an array")))?;
    items.iter().map(|x| Ok(ring.reduce_big(&as_bigint(x, what)?))).collect()
}

/// Ring from the document's `ring` object, else from the global flags.
pub fn ring_of(doc: &Value, p: Option<u64>, k: Option<u32>) -> CliResult<LocalRing> {
    let (p, k) = match doc.get("ring") {
        Some(r) => {
            let p = as_u64(field(r, "p")?, "ring.p")?;
            let k = match r.get("k") {
                Some(k) => as_u64(k, "ring.k")?,
                None => 1,
            };
            (p, u32::try_from(k).map_err(|_| malformed("`ring.k` out of range"))?)
        }
        None => (p.ok_or_else(|| malformed("no ring: supply `ring` or --p"))?, k.unwrap_or(1)),
    };
    Ok(LocalRing::new(p, k)?)
}

pub fn matrix_of(doc: &Value, key: &str, ring: LocalRing) -> CliResult<Matrix> {
    let rows = int_rows(field(doc, key)?, key)?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != rows.first().map_or(0, Vec::len)) {
        return Err(malformed(format!("`{key}` rows have different lengths")));
    }
    let mut m = Matrix::zeros(ring, n, rows.first().map_or(0, Vec::len));
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m.set(i, j, ring.reduce_big(x));
        }
    }
    Ok(m)
}

pub fn form_of(doc: &Value, p: Option<u64>, k: Option<u32>) -> CliResult<GramForm> {
    let ring = ring_of(doc, p, k)?;
    Ok(GramForm::new(matrix_of(doc, "matrix", ring)?)?)
}

pub fn subspace_of(v: &Value, field: LocalRing, n: usize) -> CliResult<Subspace> {
    Ok(Subspace::new(field, n, vectors(v, field, "subspace")?)?)
}

pub fn alphabet_of(doc: &Value) -> CliResult<Vec<String>> {
    let names = field(doc, "alphabet")?.as_array().ok_or_else(|| malformed("`alphabet` must be an array"))?;
    let names: Vec<String> = names
        .iter()
        .map(|n| n.as_str().map(str::to_owned).ok_or_else(|| malformed("alphabet entries must be strings")))
        .collect::<CliResult<_>>()?;
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != names.len() {
        return Err(malformed("alphabet has repeated names"));
    }
    Ok(names)
}

/// Word from `[[name, exponent], …]` over the given alphabet.
pub fn word_of(v: &Value, alphabet: &[String]) -> CliResult<FreeWord> {
    let items = v.as_array().ok_or_else(|| malformed("`word` must be an array of [name, exponent] pairs"))?;
    let mut syllables = Vec::with_capacity(items.len());
    for item in items {
        let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| malformed("word entries must be [name, exponent]"))?;
        let name = pair[0].as_str().ok_or_else(|| malformed("letter names must be strings"))?;
        let g = alphabet
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| malformed(format!("letter `{name}` is not in the alphabet")))?;
        syllables.push((g, as_bigint(&pair[1], "exponent")?));
    }
    Ok(FreeWord::new(alphabet.len(), syllables)?)
}

pub fn word_value(w: &FreeWord, alphabet: &[String]) -> Value {
    Value::Array(w.syllables().iter().map(|(g, e)| json!([alphabet[*g], big(e)])).collect())
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_owned(), v)).collect::<Map<_, _>>())
}
