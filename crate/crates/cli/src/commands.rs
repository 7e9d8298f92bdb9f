use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use padic_beta::beta::{BetaContext, ExpansionRecord, Verdict};
use padic_beta::classify::{beta_digits, classify, MinPoly};
use padic_beta::newton::{newton_polygon, root_valuations, ValuatedPolynomial};
use padic_beta::padic::{format_ap, format_digit_window, padic_digits};
use padic_beta::rational::parse_rational_list;
use padic_beta::srs::{
    d0_test, fin_certify, orbit, raster_d20, write_pgm, FinFailure, FinVerdict, Orbit,
    RasterBox, SrsCaps, SrsMap, SrsParameter, SrsStatus, SrsVerdict, Witness,
};
use padic_beta::{Prime, QRational};
use serde_json::{json, Map, Value};

use crate::args::{Command, MapKind};

/// Default budgets, overridable through `PADIC_BETA_DEFAULT_CAPS`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Defaults {
    pub orbit: usize,
    pub witness: usize,
    pub steps: usize,
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults { orbit: 100_000, witness: 1_000_000, steps: 10_000 }
    }
}

impl Defaults {
    /// Parses `"orbit,witness,steps"`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [orbit, witness, steps] = parts.as_slice() else {
            return Err(format!("expected \"orbit,witness,steps\", got {s:?}"));
        };
        let num = |x: &str| -> Result<usize, String> {
            match x.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(format!("cap must be a positive integer, got {x:?}")),
            }
        };
        Ok(Defaults { orbit: num(orbit)?, witness: num(witness)?, steps: num(steps)? })
    }
}

pub enum Outcome {
    Decided,
    Undecided,
}

pub struct Report {
    pub body: Value,
    pub outcome: Outcome,
}

type CmdResult = Result<Report, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Canonical command line: every flag spelled out with its effective value.
struct Argv(Vec<String>);

impl Argv {
    fn new(sub: &str) -> Self {
        Argv(vec![sub.to_owned()])
    }

    fn flag(mut self, name: &str, value: impl ToString) -> Self {
        self.0.push(format!("--{name}"));
        self.0.push(value.to_string());
        self
    }
}

fn list(xs: &[QRational]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn ints(xs: &[i64]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn report(argv: Argv, fields: Value, outcome: Outcome) -> Report {
    let mut body = Map::new();
    body.insert("inputs".into(), json!({ "argv": argv.0 }));
    if let Value::Object(m) = fields {
        body.extend(m);
    }
    Report { body: Value::Object(body), outcome }
}

fn strs(xs: &[QRational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn run(cmd: Command, defaults: Defaults) -> CmdResult {
    match cmd {
        Command::Np { p, coeffs } => np(p, &coeffs),
        Command::Classify { p, a } => classify_cmd(p, &a),
        Command::Digits { p, a, precision } => digits(p, &a, precision),
        Command::Expand { p, a, element, max_steps, verify } => {
            expand(p, &a, &element, max_steps.unwrap_or(defaults.steps), verify)
        }
        Command::SrsOrbit { r, z, map, cap } => srs_orbit(&r, &z, map, cap.unwrap_or(defaults.orbit)),
        Command::SrsD0 { r, witness_cap, orbit_cap } => srs_d0(
            &r,
            SrsCaps {
                witness: witness_cap.unwrap_or(defaults.witness),
                orbit: orbit_cap.unwrap_or(defaults.orbit),
            },
        ),
        Command::FinCheck { p, a, witness_cap, orbit_cap } => fin_check(
            p,
            &a,
            SrsCaps {
                witness: witness_cap.unwrap_or(defaults.witness),
                orbit: orbit_cap.unwrap_or(defaults.orbit),
            },
        ),
        Command::Raster { out, width, height, bounds, witness_cap, orbit_cap } => raster(
            &out,
            width,
            height,
            &bounds,
            SrsCaps {
                witness: witness_cap.unwrap_or(defaults.witness),
                orbit: orbit_cap.unwrap_or(defaults.orbit),
            },
        ),
    }
}

fn minpoly(p: u64, a: &str) -> Result<MinPoly, String> {
    let p = Prime::new(p).map_err(err)?;
    MinPoly::new(p, parse_rational_list(a).map_err(err)?).map_err(err)
}

fn np(p: u64, coeffs: &str) -> CmdResult {
    let prime = Prime::new(p).map_err(err)?;
    let c = parse_rational_list(coeffs).map_err(err)?;
    let f = ValuatedPolynomial::new(prime, c.clone()).map_err(err)?;
    let polygon = newton_polygon(&f).map_err(err)?;
    let segments: Vec<Value> = polygon
        .segments
        .iter()
        .map(|s| json!({ "slope": s.slope.to_string(), "length": s.length }))
        .collect();
    let vertices: Vec<Value> = polygon.vertices.iter().map(|&(i, v)| json!([i, v])).collect();
    let roots: Vec<Value> = root_valuations(&f)
        .map_err(err)?
        .iter()
        .map(|(v, m)| json!({ "valuation": v.to_string(), "multiplicity": m }))
        .collect();
    let argv = Argv::new("np").flag("p", p).flag("coeffs", list(&c));
    Ok(report(
        argv,
        json!({ "segments": segments, "vertices": vertices, "root_valuations": roots }),
        Outcome::Decided,
    ))
}

fn classify_cmd(p: u64, a: &str) -> CmdResult {
    let m = minpoly(p, a)?;
    let v = classify(&m).map_err(err)?;
    let size = v.digit_set_size(m.p()).map(|s| s.to_string());
    let argv = Argv::new("classify").flag("p", p).flag("a", list(m.a()));
    Ok(report(
        argv,
        json!({
            "class": v.class.label(),
            "vp_beta": v.vp_beta,
            "digit_set_size": size,
            "certified": v.stability.certified,
            "archimedean": format!("{:?}", v.stability.region).to_lowercase(),
            "minimal_polynomial": m.poly().to_string(),
            "notes": v.notes,
        }),
        Outcome::Decided,
    ))
}

fn digits(p: u64, a: &str, precision: u32) -> CmdResult {
    let m = minpoly(p, a)?;
    if precision == 0 {
        return Err("precision must be positive".into());
    }
    let b = beta_digits(&m, precision).map_err(err)?;
    let e = -m.vp_a1().expect_finite();
    let d = padic_digits(&b, m.p(), -e, precision as i64 - 1).map_err(err)?;
    let argv = Argv::new("digits").flag("p", p).flag("a", list(m.a())).flag("precision", precision);
    Ok(report(
        argv,
        json!({
            "digits": format_digit_window(&d, -e, true),
            "value": format_ap(&b, m.p()),
            "vp_beta": -e,
            "precision": precision,
        }),
        Outcome::Decided,
    ))
}

fn expansion_fields(ctx: &BetaContext, rec: &ExpansionRecord) -> Map<String, Value> {
    let fmt = strs;
    let (preperiod, period, length) = match rec.verdict {
        Verdict::Finite { length } => (Value::Null, Value::Null, json!(length)),
        Verdict::EventuallyPeriodic { preperiod, period } => {
            (json!(preperiod), json!(period), Value::Null)
        }
        Verdict::BudgetExceeded { .. } => (Value::Null, Value::Null, Value::Null),
    };
    let v = json!({
        "class": ctx.class().label(),
        "verdict": rec.verdict.label(),
        "length": length,
        "preperiod": preperiod,
        "period": period,
        "scale": rec.scale,
        "prepoint_digits": fmt(&rec.prepoint_digits),
        "digits": fmt(&rec.digits),
        "steps": rec.digits.len() + rec.prepoint_digits.len(),
    });
    match v {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

fn expand(p: u64, a: &str, element: &str, max_steps: usize, verify: Option<usize>) -> CmdResult {
    let m = minpoly(p, a)?;
    let ctx = BetaContext::new(m.clone()).map_err(err)?;
    let z = ctx.element(parse_rational_list(element).map_err(err)?).map_err(err)?;
    let rec = ctx.expand(&z, max_steps);
    let mut fields = expansion_fields(&ctx, &rec);
    let mut argv = Argv::new("expand")
        .flag("p", p)
        .flag("a", list(m.a()))
        .flag("element", list(z.coords()))
        .flag("max-steps", max_steps);
    if let Some(k) = verify {
        argv = argv.flag("verify", k);
        match ctx.verify_expansion(&rec, k) {
            Ok(()) => {
                fields.insert("verified".into(), json!(k));
            }
            Err(mismatch) => return Err(mismatch.to_string()),
        }
    }
    let outcome = match rec.verdict {
        Verdict::BudgetExceeded { .. } => Outcome::Undecided,
        _ => Outcome::Decided,
    };
    Ok(report(argv, Value::Object(fields), outcome))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim().replace('\u{2212}', "-");
            t.parse::<i64>().map_err(|_| format!("invalid integer {t:?}"))
        })
        .collect()
}

fn srs_orbit(r: &str, z: &str, map: MapKind, cap: usize) -> CmdResult {
    let param = SrsParameter::new(parse_rational_list(r).map_err(err)?).map_err(err)?;
    let z = parse_ints(z)?;
    let srs_map = match map {
        MapKind::Tilde => SrsMap::Tilde,
        MapKind::Ceil => SrsMap::Ceil,
    };
    let result = orbit(srs_map, &param, &z, cap).map_err(err)?;
    let argv = Argv::new("srs-orbit")
        .flag("r", list(param.r()))
        .flag("z", ints(&z))
        .flag("map", map.name())
        .flag("cap", cap);
    let (fields, outcome) = match result {
        Orbit::ReachesZero(k) => (json!({ "result": "reaches_zero", "steps": k }), Outcome::Decided),
        Orbit::Cycle { entry, length, states } => (
            json!({ "result": "cycle", "entry": entry, "length": length, "cycle": states }),
            Outcome::Decided,
        ),
        Orbit::CapExceeded => (json!({ "result": "cap_exceeded", "steps": cap }), Outcome::Undecided),
    };
    Ok(report(argv, fields, outcome))
}

fn witness_json(w: &Witness) -> Map<String, Value> {
    let v = match w {
        Witness::Cycle { start, cycle } => json!({
            "witness_kind": "cycle",
            "witness_start": start,
            "witness": cycle,
        }),
        Witness::Divergent { start, steps, state } => json!({
            "witness_kind": "divergent",
            "witness_start": start,
            "witness": [start, state],
            "divergence_steps": steps,
        }),
    };
    match v {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

fn verdict_json(v: &SrsVerdict) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("status".into(), json!(v.status.label()));
    match &v.witness {
        Some(w) => m.extend(witness_json(w)),
        None => {
            m.insert("witness".into(), Value::Null);
        }
    }
    m.insert("witness_set_size".into(), json!(v.stats.witness_set_size));
    m.insert("max_orbit_length".into(), json!(v.stats.max_orbit_length));
    m
}

fn srs_d0(r: &str, caps: SrsCaps) -> CmdResult {
    let param = SrsParameter::new(parse_rational_list(r).map_err(err)?).map_err(err)?;
    let v = d0_test(&param, caps.witness, caps.orbit);
    let argv = Argv::new("srs-d0")
        .flag("r", list(param.r()))
        .flag("witness-cap", caps.witness)
        .flag("orbit-cap", caps.orbit);
    let outcome = match v.status {
        SrsStatus::Unknown => Outcome::Undecided,
        _ => Outcome::Decided,
    };
    Ok(report(argv, Value::Object(verdict_json(&v)), outcome))
}

fn fin_check(p: u64, a: &str, caps: SrsCaps) -> CmdResult {
    let m = minpoly(p, a)?;
    let verdict = fin_certify(&m, caps).map_err(err)?;
    let argv = Argv::new("fin-check")
        .flag("p", p)
        .flag("a", list(m.a()))
        .flag("witness-cap", caps.witness)
        .flag("orbit-cap", caps.orbit);
    let (reason, witness) = match &verdict {
        FinVerdict::Holds => (Value::Null, Value::Null),
        FinVerdict::Fails(f) => {
            let w = match f {
                FinFailure::NotPc(class) => json!({ "class": class.label() }),
                FinFailure::Valuation { index } => json!({ "index": index }),
                FinFailure::Srs { witness: Witness::Cycle { start, cycle }, element } => json!({
                    "kind": "cycle",
                    "start": start,
                    "cycle": cycle,
                    "element": strs(element.coords()),
                }),
                FinFailure::Srs { witness: Witness::Divergent { start, steps, state }, element } => {
                    json!({
                        "kind": "divergent",
                        "start": start,
                        "steps": steps,
                        "state": state,
                        "element": strs(element.coords()),
                    })
                }
            };
            (json!(f.label()), w)
        }
        FinVerdict::Unknown(v) => (json!("srs_undecided"), Value::Object(verdict_json(v))),
    };
    let outcome = match verdict {
        FinVerdict::Unknown(_) => Outcome::Undecided,
        _ => Outcome::Decided,
    };
    Ok(report(
        argv,
        json!({ "status": verdict.label(), "reason": reason, "witness": witness }),
        outcome,
    ))
}

fn raster(out: &Path, width: usize, height: usize, bounds: &str, caps: SrsCaps) -> CmdResult {
    let b = parse_rational_list(bounds).map_err(err)?;
    let [x0, x1, y0, y1] = <[QRational; 4]>::try_from(b)
        .map_err(|_| "--box expects x0,x1,y0,y1".to_string())?;
    if x0 >= x1 || y0 >= y1 {
        return Err("--box needs x0 < x1 and y0 < y1".into());
    }
    let bx = RasterBox { x0, x1, y0, y1 };
    let grid = raster_d20(&bx, width, height, caps).map_err(err)?;
    let file = File::create(out).map_err(|e| format!("{}: {e}", out.display()))?;
    write_pgm(&mut BufWriter::new(file), &grid).map_err(|e| format!("{}: {e}", out.display()))?;
    let count = |s: SrsStatus| grid.iter().flatten().filter(|&&x| x == s).count();
    let argv = Argv::new("raster")
        .flag("out", out.display())
        .flag("width", width)
        .flag("height", height)
        .flag("box", list(&[bx.x0.clone(), bx.x1.clone(), bx.y0.clone(), bx.y1.clone()]))
        .flag("witness-cap", caps.witness)
        .flag("orbit-cap", caps.orbit);
    Ok(report(
        argv,
        json!({
            "out": out.display().to_string(),
            "width": width,
            "height": height,
            "member": count(SrsStatus::Member),
            "non_member": count(SrsStatus::NonMember),
            "unknown": count(SrsStatus::Unknown),
        }),
        Outcome::Decided,
    ))
}
