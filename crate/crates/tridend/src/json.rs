//! JSON forms of trees, surjections, series, matrix sequences and the
//! conventions ledger. Rationals are strings `"p/q"` or `"p"`.

use std::fmt::Display;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use tridend_core::linalg::Q;
use tridend_core::magnus::{ConventionLedger, Conventions, LedgerStatus, SignRule};
use tridend_core::sequence::GradedSeq;
use tridend_core::series::TriBasis;
use tridend_core::{DescentOrientation, LevelOrientation, MatSeq, Matrix, Surjection, TOrientation, Tree, TriSeries};

pub fn rational(q: &Q) -> Value {
    Value::String(q.to_string())
}

pub fn parse_rational(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => s.trim().parse::<Q>().map_err(|e| anyhow!("bad rational {s:?}: {e}")),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Q::from_integer(i.into()))
            .ok_or_else(|| anyhow!("non-integer number {n}; write rationals as \"p/q\"")),
        other => bail!("expected a rational, got {other}"),
    }
}

pub fn trees(degree: usize, trees: &[Tree]) -> Value {
    json!({ "degree": degree, "trees": trees.iter().map(Tree::encode).collect::<Vec<_>>() })
}

pub fn surjections(n: usize, list: &[Surjection]) -> Value {
    json!({ "n": n, "surjections": list.iter().map(Surjection::encode).collect::<Vec<_>>() })
}

/// `{"truncation": n, "scalar": "c", "<basis>": "c", …}`, terms in basis order.
pub fn series<B: TriBasis>(x: &TriSeries<B>) -> Value {
    let mut m = Map::new();
    m.insert("truncation".into(), json!(x.truncation()));
    m.insert("scalar".into(), rational(x.scalar()));
    for (b, c) in x.terms() {
        m.insert(b.to_string(), rational(c));
    }
    Value::Object(m)
}

pub fn parse_series<B>(v: &Value) -> Result<TriSeries<B>>
where
    B: TriBasis + FromStr,
    B::Err: Display,
{
    let obj = v.as_object().ok_or_else(|| anyhow!("a series is a JSON object"))?;
    let truncation = obj
        .get("truncation")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("missing integer field \"truncation\""))? as usize;
    let scalar = match obj.get("scalar") {
        Some(s) => parse_rational(s)?,
        None => Q::from_integer(0.into()),
    };
    let mut terms = Vec::new();
    for (k, c) in obj {
        if k == "truncation" || k == "scalar" {
            continue;
        }
        let b: B = k.parse().map_err(|e| anyhow!("bad basis element {k:?}: {e}"))?;
        terms.push((b, parse_rational(c)?));
    }
    Ok(TriSeries::from_terms(scalar, terms, truncation))
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.rows().map(|r| Value::Array(r.iter().map(rational).collect())).collect())
}

pub fn parse_matrix(v: &Value) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| anyhow!("a matrix is a list of rows"))?;
    let rows = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| anyhow!("a row is a list of rationals"))?.iter().map(parse_rational).collect())
        .collect::<Result<Vec<Vec<Q>>>>()?;
    Ok(Matrix::from_rows(rows)?)
}

/// `{"dim": d, "entries": [a(0), a(1), …]}`.
pub fn matseq(a: &MatSeq) -> Value {
    json!({ "dim": a.dim(), "entries": a.values().iter().map(matrix).collect::<Vec<_>>() })
}

pub fn parse_matseq(v: &Value) -> Result<MatSeq> {
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| anyhow!("missing integer field \"dim\""))? as usize;
    let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| anyhow!("missing list \"entries\""))?;
    let values = entries
        .iter()
        .enumerate()
        .map(|(k, m)| parse_matrix(m).with_context(|| format!("entries[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatSeq::new(dim, values)?)
}

/// A sequence as the list of its values indexed by `N`.
pub fn sequence(a: &MatSeq) -> Value {
    Value::Array(a.values().iter().map(matrix).collect())
}

/// `{"scalar": c, "degrees": {"1": [values by N], …}}`.
pub fn graded(g: &GradedSeq) -> Value {
    let mut degrees = Map::new();
    for (i, c) in g.components().iter().enumerate() {
        degrees.insert((i + 1).to_string(), sequence(c));
    }
    json!({ "dim": g.dim(), "scalar": rational(g.scalar()), "degrees": degrees })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerFile {
    pub descent_orientation: String,
    pub sign_rule: String,
    pub t_orientation: String,
    pub level_orientation: String,
    pub status: String,
    pub evidence_degrees: Vec<usize>,
}

pub fn descent_name(o: DescentOrientation) -> &'static str {
    match o {
        DescentOrientation::AsPrinted => "as-printed",
        DescentOrientation::Mirrored => "mirrored",
    }
}

pub fn sign_name(s: SignRule) -> &'static str {
    match s {
        SignRule::Direct => "direct",
        SignRule::Complement => "complement",
    }
}

pub fn t_name(o: TOrientation) -> &'static str {
    match o {
        TOrientation::NonInverted => "non-inverted",
        TOrientation::Inverted => "inverted",
    }
}

pub fn level_name(o: LevelOrientation) -> &'static str {
    match o {
        LevelOrientation::RootDeepest => "root-deepest",
        LevelOrientation::RootTop => "root-top",
    }
}

fn lookup<T: Copy>(all: &[T], name: &str, field: &str, namer: fn(T) -> &'static str) -> Result<T> {
    all.iter()
        .copied()
        .find(|&x| namer(x) == name)
        .ok_or_else(|| anyhow!("unknown {field} {name:?}"))
}

impl From<&ConventionLedger> for LedgerFile {
    fn from(l: &ConventionLedger) -> Self {
        let c = l.conventions;
        LedgerFile {
            descent_orientation: descent_name(c.descent).into(),
            sign_rule: sign_name(c.sign).into(),
            t_orientation: t_name(c.t_orientation).into(),
            level_orientation: level_name(c.level).into(),
            status: match l.status {
                LedgerStatus::Frozen => "frozen".into(),
                LedgerStatus::Unresolved => "unresolved".into(),
            },
            evidence_degrees: l.evidence_degrees.clone(),
        }
    }
}

impl TryFrom<LedgerFile> for ConventionLedger {
    type Error = anyhow::Error;

    fn try_from(f: LedgerFile) -> Result<Self> {
        let conventions = Conventions {
            descent: lookup(&DescentOrientation::ALL, &f.descent_orientation, "descent orientation", descent_name)?,
            sign: lookup(&SignRule::ALL, &f.sign_rule, "sign rule", sign_name)?,
            t_orientation: lookup(&TOrientation::ALL, &f.t_orientation, "T orientation", t_name)?,
            level: lookup(&LevelOrientation::ALL, &f.level_orientation, "level orientation", level_name)?,
        };
        let status = match f.status.as_str() {
            "frozen" => LedgerStatus::Frozen,
            "unresolved" => LedgerStatus::Unresolved,
            other => bail!("unknown ledger status {other:?}"),
        };
        Ok(ConventionLedger { conventions, status, evidence_degrees: f.evidence_degrees })
    }
}

pub fn ledger(l: &ConventionLedger) -> Value {
    serde_json::to_value(LedgerFile::from(l)).expect("plain strings and integers")
}

pub fn parse_ledger(v: Value) -> Result<ConventionLedger> {
    let f: LedgerFile = serde_json::from_value(v).context("malformed conventions ledger")?;
    f.try_into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use tridend_core::linalg::q;

    #[test]
    fn series_round_trip() {
        let x = TriSeries::from_terms(q(1, 3), [("(|,(|,|))".parse::<Tree>().unwrap(), q(-1, 2)), (Tree::y(), q(2, 1))], 3);
        let v = series(&x);
        assert_eq!(v.to_string(), r#"{"truncation":3,"scalar":"1/3","(|,(|,|))":"-1/2","(|,|)":"2"}"#);
        assert_eq!(parse_series::<Tree>(&v).unwrap(), x);
        let s = TriSeries::<Surjection>::generator(2);
        assert_eq!(parse_series::<Surjection>(&series(&s)).unwrap(), s);
    }

    #[test]
    fn matseq_round_trip() {
        let v: Value = serde_json::from_str(r#"{"dim": 2, "entries": [[["1/2","0"],["1","3/7"]], [[1, 2], ["-4/6", 0]]]}"#).unwrap();
        let a = parse_matseq(&v).unwrap();
        assert_eq!(a.horizon(), 2);
        assert_eq!(a.at(1).unwrap().get(1, 0), &q(-2, 3));
        assert_eq!(parse_matseq(&matseq(&a)).unwrap(), a);
        assert!(parse_matseq(&json!({"dim": 3, "entries": [[["1"]]]})).is_err());
        assert!(parse_rational(&json!(0.5)).is_err());
    }

    #[test]
    fn ledger_round_trip() {
        let c = Conventions::all()[5];
        let l = ConventionLedger::frozen(c, vec![2, 3]);
        assert_eq!(parse_ledger(ledger(&l)).unwrap(), l);
        let mut bad = ledger(&l);
        bad["sign_rule"] = json!("sideways");
        assert!(parse_ledger(bad).is_err());
    }
}
