//! Statement execution against bindings, plus text and JSON rendering.

use std::collections::HashMap;

use serde_json::{json, Value as Json};

use mpv_core::fields::{seeded_rng, ChaCha8Rng, FieldSpec};
use mpv_core::polyring::parse_poly;
use mpv_core::{
    make_map, MPoly, MultiGradedRing, MultiProjVariety, MultiRationalMap, MultidegreePoly,
    RationalPoint,
};

use crate::script::{Expr, FieldChoice, Statement, Stmt};

#[derive(Clone)]
pub enum Value {
    Space(MultiGradedRing),
    Variety(MultiProjVariety),
    Map(MultiRationalMap),
    Point(RationalPoint),
    Pair(Box<Value>, Box<Value>),
    Int(i128),
    Bool(bool),
    List(Vec<i128>),
    Multideg(MultidegreePoly),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Space(_) => "space",
            Value::Variety(_) => "variety",
            Value::Map(_) => "map",
            Value::Point(_) => "point",
            Value::Pair(..) => "pair",
            Value::Int(_) => "integer",
            Value::Bool(_) => "boolean",
            Value::List(_) => "list",
            Value::Multideg(_) => "multidegree",
        }
    }
}

/// One emitted output: the `o<N>` text payload and the JSON record.
pub struct Record {
    pub n: usize,
    pub text: String,
    pub json: Json,
}

pub struct RunError {
    pub line: usize,
    pub msg: String,
    pub assert_failure: bool,
}

pub struct Session {
    field: FieldSpec,
    field_override: bool,
    bindings: HashMap<String, Value>,
    rng: ChaCha8Rng,
    count: usize,
}

impl Session {
    pub fn new(seed: u64, field_override: Option<FieldSpec>) -> Session {
        Session {
            field: field_override.unwrap_or_else(FieldSpec::rationals),
            field_override: field_override.is_some(),
            bindings: HashMap::new(),
            rng: seeded_rng(seed),
            count: 0,
        }
    }

    /// Runs one statement; `print`, `describe`, and `assert` yield a record.
    pub fn execute(&mut self, st: &Statement) -> Result<Option<Record>, RunError> {
        self.count += 1;
        let n = self.count;
        let fail = |msg: String| RunError { line: st.line, msg, assert_failure: false };
        match &st.stmt {
            Stmt::Field(choice) => {
                if !self.bindings.is_empty() {
                    return Err(fail("field must be chosen before any binding".into()));
                }
                let picked = match choice {
                    FieldChoice::Rationals => FieldSpec::rationals(),
                    FieldChoice::Prime(p) => {
                        FieldSpec::prime_field(*p).map_err(|e| fail(e.to_string()))?
                    }
                };
                if !self.field_override {
                    self.field = picked;
                }
                Ok(None)
            }
            Stmt::Space { name, dims, vars } => {
                let ring = MultiGradedRing::make_ring(self.field, dims, vars)
                    .map_err(|e| fail(e.to_string()))?;
                self.bindings.insert(name.clone(), Value::Space(ring));
                Ok(None)
            }
            Stmt::Variety { name, space, polys } => {
                let ring = match self.lookup(space).map_err(fail)? {
                    Value::Space(r) => r.clone(),
                    v => return Err(fail(format!("'{}' is a {}, not a space", space, v.kind()))),
                };
                let gens = self.parse_polys(&ring, polys).map_err(fail)?;
                let x = MultiProjVariety::make_variety(&ring, gens)
                    .map_err(|e| fail(e.to_string()))?;
                self.bindings.insert(name.clone(), Value::Variety(x));
                Ok(None)
            }
            Stmt::Map { name, source, dims, forms } => {
                let src = self.variety_binding(source).map_err(fail)?;
                let entries = self.parse_polys(src.ring(), forms).map_err(fail)?;
                let target_ring = MultiGradedRing::make_ring(self.field, dims, &[])
                    .map_err(|e| fail(e.to_string()))?;
                let target = MultiProjVariety::ambient(&target_ring);
                let m = make_map(&src, &target, &[entries]).map_err(|e| fail(e.to_string()))?;
                self.bindings.insert(name.clone(), Value::Map(m));
                Ok(None)
            }
            Stmt::MMap { name, parts } => {
                let mut maps = Vec::new();
                for p in parts {
                    match self.lookup(p).map_err(fail)? {
                        Value::Map(m) => maps.push(m.clone()),
                        v => return Err(fail(format!("'{}' is a {}, not a map", p, v.kind()))),
                    }
                }
                let m = combine(&maps).map_err(fail)?;
                self.bindings.insert(name.clone(), Value::Map(m));
                Ok(None)
            }
            Stmt::Let { names, expr } => {
                let v = self.eval(expr).map_err(fail)?;
                match (names.len(), v) {
                    (1, v) => {
                        self.bindings.insert(names[0].clone(), v);
                    }
                    (2, Value::Pair(a, b)) => {
                        self.bindings.insert(names[0].clone(), *a);
                        self.bindings.insert(names[1].clone(), *b);
                    }
                    (_, v) => {
                        return Err(fail(format!(
                            "cannot unpack a {} into {} names",
                            v.kind(),
                            names.len()
                        )))
                    }
                }
                Ok(None)
            }
            Stmt::Print(exprs) => {
                let vals: Vec<Value> =
                    exprs.iter().map(|e| self.eval(e)).collect::<Result<_, _>>().map_err(fail)?;
                let (text, json) = if vals.len() == 1 {
                    (render(&vals[0]), to_json(&vals[0]).map_err(fail)?)
                } else {
                    let texts: Vec<String> = vals.iter().map(render).collect();
                    let jsons: Vec<Json> =
                        vals.iter().map(to_json).collect::<Result<_, _>>().map_err(fail)?;
                    (format!("({})", texts.join(", ")), Json::Array(jsons))
                };
                let name = exprs.iter().find_map(bare_name);
                Ok(Some(record(st.line, n, "print", name, text, json)))
            }
            Stmt::Describe(expr) => {
                let v = self.eval(expr).map_err(fail)?;
                let x = match &v {
                    Value::Variety(x) => x.clone(),
                    Value::Point(p) => p.to_variety().map_err(|e| fail(e.to_string()))?,
                    v => {
                        return Err(fail(format!("describe expects a variety, got a {}", v.kind())))
                    }
                };
                let text = x.describe().map_err(|e| fail(e.to_string()))?;
                let json = describe_json(&x).map_err(|e| fail(e.to_string()))?;
                Ok(Some(record(st.line, n, "describe", bare_name(expr), text, json)))
            }
            Stmt::Assert(lhs, rhs) => {
                let a = self.eval(lhs).map_err(fail)?;
                let b = self.eval(rhs).map_err(fail)?;
                let ok = values_equal(&a, &b).map_err(fail)?;
                if !ok {
                    return Err(RunError {
                        line: st.line,
                        msg: format!("assertion failed: {} != {}", render(&a), render(&b)),
                        assert_failure: true,
                    });
                }
                Ok(Some(record(st.line, n, "assert", None, "true".into(), json!(true))))
            }
        }
    }

    fn lookup(&self, name: &str) -> Result<&Value, String> {
        self.bindings.get(name).ok_or_else(|| format!("'{}' is not bound", name))
    }

    /// A variety, with spaces standing in for their ambient variety.
    fn variety_binding(&self, name: &str) -> Result<MultiProjVariety, String> {
        match self.lookup(name)? {
            Value::Space(r) => Ok(MultiProjVariety::ambient(r)),
            Value::Variety(x) => Ok(x.clone()),
            v => Err(format!("'{}' is a {}, not a space or variety", name, v.kind())),
        }
    }

    fn parse_polys(&self, ring: &MultiGradedRing, polys: &[String]) -> Result<Vec<MPoly>, String> {
        polys.iter().map(|s| parse_poly(ring, s).map_err(|e| e.to_string())).collect()
    }

    fn eval(&mut self, e: &Expr) -> Result<Value, String> {
        match e {
            Expr::Int(n) => Ok(Value::Int(*n)),
            Expr::Name(name) => self.lookup(name).cloned(),
            Expr::Eq(a, b) => {
                let lhs = self.eval(a)?;
                let rhs = self.eval(b)?;
                Ok(Value::Bool(values_equal(&lhs, &rhs)?))
            }
            Expr::Call(func, args) => self.call(func, args),
        }
    }

    fn call(&mut self, func: &str, args: &[Expr]) -> Result<Value, String> {
        let vals: Vec<Value> = args.iter().map(|a| self.eval(a)).collect::<Result<_, _>>()?;
        let argc = |n: usize| -> Result<(), String> {
            if vals.len() == n {
                Ok(())
            } else {
                Err(format!("{} takes {} argument(s), got {}", func, n, vals.len()))
            }
        };
        let err = |e: mpv_core::Error| e.to_string();
        match func {
            "restrict" => {
                argc(2)?;
                Ok(Value::Map(as_map(&vals[0])?.restrict(&as_variety(&vals[1])?).map_err(err)?))
            }
            "graph" => {
                argc(1)?;
                let g = as_map(&vals[0])?.graph().map_err(err)?;
                Ok(Value::Pair(
                    Box::new(Value::Map(g.proj1().clone())),
                    Box::new(Value::Map(g.proj2().clone())),
                ))
            }
            "inverse" => {
                argc(1)?;
                Ok(Value::Map(as_map(&vals[0])?.inverse().map_err(err)?))
            }
            "compose" => {
                argc(2)?;
                Ok(Value::Map(as_map(&vals[0])?.compose(as_map(&vals[1])?).map_err(err)?))
            }
            "image" => {
                argc(1)?;
                Ok(Value::Variety(as_map(&vals[0])?.image().map_err(err)?))
            }
            "baselocus" => {
                argc(1)?;
                Ok(Value::Variety(as_map(&vals[0])?.base_locus().map_err(err)?))
            }
            "preimage" => {
                argc(2)?;
                let w = as_variety(&vals[1])?;
                Ok(Value::Variety(as_map(&vals[0])?.inverse_image(&w).map_err(err)?))
            }
            "pushforward" => {
                argc(2)?;
                let z = as_variety(&vals[1])?;
                Ok(Value::Variety(as_map(&vals[0])?.direct_image(&z).map_err(err)?))
            }
            "basechange" => {
                argc(2)?;
                let p = as_int(&vals[1])?;
                if p <= 0 {
                    return Err("basechange needs a positive characteristic".into());
                }
                Ok(Value::Map(as_map(&vals[0])?.base_change(p as u64).map_err(err)?))
            }
            "point" => {
                argc(1)?;
                let x = as_variety(&vals[0])?;
                Ok(Value::Point(x.sample_point(&mut self.rng).map_err(err)?))
            }
            "fiber" => {
                argc(2)?;
                let m = as_map(&vals[0])?;
                let p = as_point(&vals[1])?;
                let image = m.evaluate(&p).map_err(err)?.to_variety().map_err(err)?;
                Ok(Value::Variety(m.inverse_image(&image).map_err(err)?))
            }
            "dim" => {
                argc(1)?;
                Ok(Value::Int(as_variety(&vals[0])?.dim().map_err(err)? as i128))
            }
            "degree" => {
                argc(1)?;
                match &vals[0] {
                    Value::Map(m) => Ok(Value::Int(m.map_degree().map_err(err)?)),
                    v => Ok(Value::Int(as_variety(v)?.segre_degree().map_err(err)?)),
                }
            }
            "multidegree" => {
                argc(1)?;
                Ok(Value::Multideg(as_variety(&vals[0])?.multidegree().map_err(err)?.clone()))
            }
            "projdegrees" => {
                argc(1)?;
                Ok(Value::List(as_map(&vals[0])?.projective_degrees().map_err(err)?))
            }
            "mapdegree" => {
                argc(1)?;
                Ok(Value::Int(as_map(&vals[0])?.map_degree().map_err(err)?))
            }
            "ismorphism" => {
                argc(1)?;
                Ok(Value::Bool(as_map(&vals[0])?.is_morphism().map_err(err)?))
            }
            "isisomorphism" => {
                argc(1)?;
                Ok(Value::Bool(as_map(&vals[0])?.is_isomorphism().map_err(err)?))
            }
            "source" => {
                argc(1)?;
                Ok(Value::Variety(as_map(&vals[0])?.source().clone()))
            }
            "target" => {
                argc(1)?;
                Ok(Value::Variety(as_map(&vals[0])?.target().clone()))
            }
            other => Err(format!("unknown function '{}'", other)),
        }
    }
}

/// Single-target maps with a common source fused into one multi-map.
fn combine(maps: &[MultiRationalMap]) -> Result<MultiRationalMap, String> {
    if maps.is_empty() {
        return Err("mmap needs at least one map".into());
    }
    let source = maps[0].source().clone();
    let mut dims = Vec::new();
    let mut forms = Vec::new();
    for m in maps {
        for comp in m.components() {
            dims.push(comp.target_dim());
            forms.push(comp.first_rep().components().to_vec());
        }
    }
    let field = *source.ring().field();
    let target_ring =
        MultiGradedRing::make_ring(field, &dims, &[]).map_err(|e| e.to_string())?;
    let target = MultiProjVariety::ambient(&target_ring);
    make_map(&source, &target, &forms).map_err(|e| e.to_string())
}

fn as_map(v: &Value) -> Result<&MultiRationalMap, String> {
    match v {
        Value::Map(m) => Ok(m),
        v => Err(format!("expected a map, got a {}", v.kind())),
    }
}

fn as_variety(v: &Value) -> Result<MultiProjVariety, String> {
    match v {
        Value::Variety(x) => Ok(x.clone()),
        Value::Space(r) => Ok(MultiProjVariety::ambient(r)),
        Value::Point(p) => p.to_variety().map_err(|e| e.to_string()),
        v => Err(format!("expected a variety, got a {}", v.kind())),
    }
}

fn as_point(v: &Value) -> Result<RationalPoint, String> {
    match v {
        Value::Point(p) => Ok(p.clone()),
        v => Err(format!("expected a point, got a {}", v.kind())),
    }
}

fn as_int(v: &Value) -> Result<i128, String> {
    match v {
        Value::Int(n) => Ok(*n),
        v => Err(format!("expected an integer, got a {}", v.kind())),
    }
}

fn values_equal(a: &Value, b: &Value) -> Result<bool, String> {
    let err = |e: mpv_core::Error| e.to_string();
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Ok(x == y),
        (Value::Bool(x), Value::Bool(y)) => Ok(x == y),
        (Value::List(x), Value::List(y)) => Ok(x == y),
        (Value::Map(x), Value::Map(y)) => x.maps_equal(y).map_err(err),
        (Value::Multideg(x), Value::Multideg(y)) => Ok(x.terms() == y.terms()),
        (Value::Variety(_) | Value::Point(_) | Value::Space(_), _)
            if matches!(b, Value::Variety(_) | Value::Point(_) | Value::Space(_)) =>
        {
            as_variety(a)?.equals(&as_variety(b)?).map_err(err)
        }
        _ => Err(format!("cannot compare a {} with a {}", a.kind(), b.kind())),
    }
}

fn bare_name(e: &Expr) -> Option<String> {
    match e {
        Expr::Name(n) => Some(n.clone()),
        _ => None,
    }
}

fn record(
    line: usize,
    n: usize,
    kind: &'static str,
    name: Option<String>,
    text: String,
    value: Json,
) -> Record {
    let mut json = json!({ "line": line, "kind": kind, "value": value });
    if let Some(name) = name {
        json["name"] = json!(name);
    }
    Record { n, text, json }
}

pub fn render(v: &Value) -> String {
    match v {
        Value::Space(r) => MultiProjVariety::ambient(r).ambient_string(),
        Value::Variety(x) => x.summary().unwrap_or_else(|e| format!("<{}>", e)),
        Value::Map(m) => m.summary().unwrap_or_else(|e| format!("<{}>", e)),
        Value::Point(p) => p.render(),
        Value::Pair(a, b) => format!("({}, {})", render(a), render(b)),
        Value::Int(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::List(l) => format!("{:?}", l),
        Value::Multideg(m) => m.render(),
    }
}

fn to_json(v: &Value) -> Result<Json, String> {
    Ok(match v {
        Value::Int(n) => {
            Json::from(i64::try_from(*n).map_err(|_| "integer too large for JSON".to_string())?)
        }
        Value::Bool(b) => Json::from(*b),
        Value::List(l) => {
            let nums: Result<Vec<i64>, _> = l.iter().map(|&x| i64::try_from(x)).collect();
            Json::from(nums.map_err(|_| "degree too large for JSON".to_string())?)
        }
        Value::Pair(a, b) => Json::Array(vec![to_json(a)?, to_json(b)?]),
        Value::Multideg(m) => multideg_json(m)?,
        other => Json::from(render(other)),
    })
}

fn multideg_json(m: &MultidegreePoly) -> Result<Json, String> {
    let terms: Vec<Json> = m
        .terms()
        .iter()
        .map(|(e, c)| {
            Ok(json!({
                "exps": e,
                "coeff": i64::try_from(*c).map_err(|_| "coefficient too large".to_string())?,
            }))
        })
        .collect::<Result<_, String>>()?;
    Ok(json!({ "codim": m.codim(), "terms": terms }))
}

fn describe_json(x: &MultiProjVariety) -> mpv_core::Result<Json> {
    let mut out = json!({ "ambient": x.ambient_string() });
    if x.is_empty()? {
        out["dim"] = json!(-1);
        return Ok(out);
    }
    out["dim"] = json!(x.dim()?);
    out["codim"] = json!(x.codim()?);
    out["degree"] = json!(x.segre_degree()? as i64);
    out["multidegree"] = multideg_json(x.multidegree()?)
        .map_err(|m| mpv_core::Error::ShapeMismatch(m))?;
    out["generators"] = json!(x.generator_tally()?);
    out["purity"] = json!("not computed");
    out["dim sing. l."] = json!(x.dim_singular_locus()?);
    Ok(out)
}
