//! Library side of the `wreathk` command: group specs, reports and the
//! subcommand implementations, plus the acceptance suite.

pub mod accept;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book {}

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use wreathk_core::burnside::{alpha_beta_solve, vanishing_product, TableOfMarks};
use wreathk_core::groups::{named, FiniteGroup, Permutation};
use wreathk_core::gsets::GSetSpec;
use wreathk_core::izumi::{CertificateJson, Izumi, IzumiCertificate};
use wreathk_core::ktheory::{
    semisimple_decompose, sl_completion, wreath_decompose, wreath_decompose_infinite_cyclic,
    wreath_decompose_subgroup_form, DimVector,
};
use wreathk_core::{Caps, Error, Result};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A group named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    /// Dihedral of order `2k`.
    Dihedral(usize),
    Klein,
    /// Generators given as products of cycles on 0-based points.
    Explicit(Vec<Vec<Vec<usize>>>),
    InfiniteCyclic,
}

impl GroupSpec {
    /// Grammar: `C<k>`, `S<k>`, `D<k>`, `V4`, `Z`, `perm:(a b c),(d e)`.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let t = text.trim();
        let lead = text.len() - text.trim_start().len();
        match t {
            "V4" => return Ok(GroupSpec::Klein),
            "Z" => return Ok(GroupSpec::InfiniteCyclic),
            _ => {}
        }
        if let Some(body) = t.strip_prefix("perm:") {
            return parse_perm(body, lead + 5).map(GroupSpec::Explicit);
        }
        let mut chars = t.chars();
        let kind = chars.next().ok_or_else(|| parse_error(lead, "empty group spec"))?;
        let digits = chars.as_str();
        let k: usize = digits
            .parse()
            .map_err(|_| parse_error(lead + 1, &format!("expected a number after `{kind}`")))?;
        if k == 0 {
            return Err(parse_error(lead + 1, "parameter must be positive"));
        }
        match kind {
            'C' => Ok(GroupSpec::Cyclic(k)),
            'S' => Ok(GroupSpec::Symmetric(k)),
            'D' => Ok(GroupSpec::Dihedral(k)),
            _ => Err(parse_error(lead, &format!("unknown group kind `{kind}`"))),
        }
    }

    /// The finite group, closed under its generators.
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(k) => named::cyclic(*k),
            GroupSpec::Symmetric(k) => named::symmetric(*k),
            GroupSpec::Dihedral(k) => named::dihedral(*k),
            GroupSpec::Klein => named::klein(),
            GroupSpec::Explicit(gens) => {
                let degree = gens.iter().flatten().flatten().max().map_or(1, |m| m + 1);
                let perms = gens
                    .iter()
                    .map(|cycles| Permutation::from_cycles(degree, cycles))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::generate(degree, perms)
            }
            GroupSpec::InfiniteCyclic => Err(Error::UnsupportedLeaf(
                "the infinite cyclic group has no finite element table".into(),
            )),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "C{k}"),
            GroupSpec::Symmetric(k) => write!(f, "S{k}"),
            GroupSpec::Dihedral(k) => write!(f, "D{k}"),
            GroupSpec::Klein => write!(f, "V4"),
            GroupSpec::InfiniteCyclic => write!(f, "Z"),
            GroupSpec::Explicit(gens) => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|cycles| {
                        if cycles.is_empty() {
                            return "()".to_string();
                        }
                        cycles
                            .iter()
                            .map(|c| {
                                let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                                format!("({})", pts.join(" "))
                            })
                            .collect()
                    })
                    .collect();
                write!(f, "perm:{}", parts.join(","))
            }
        }
    }
}

fn parse_error(pos: usize, msg: &str) -> Error {
    Error::Parse {
        pos,
        msg: msg.to_string(),
    }
}

/// `(0 1 2)(3 4),(0 1)`: generators separated by commas, each a product of
/// parenthesized cycles.
fn parse_perm(body: &str, offset: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let bytes = body.as_bytes();
    let mut gens = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        let mut cycles = Vec::new();
        skip_ws(&mut i);
        if i >= bytes.len() || bytes[i] != b'(' {
            return Err(parse_error(offset + i, "expected `(`"));
        }
        while i < bytes.len() && bytes[i] == b'(' {
            i += 1;
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut i);
                if i >= bytes.len() {
                    return Err(parse_error(offset + i, "unterminated cycle"));
                }
                if bytes[i] == b')' {
                    i += 1;
                    break;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(parse_error(offset + i, "expected a point index"));
                }
                let point = body[start..i]
                    .parse()
                    .map_err(|_| parse_error(offset + start, "point index too large"))?;
                cycle.push(point);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            skip_ws(&mut i);
        }
        gens.push(cycles);
        if i == bytes.len() {
            return Ok(gens);
        }
        if bytes[i] != b',' {
            return Err(parse_error(offset + i, "expected `,` between generators"));
        }
        i += 1;
    }
}

/// Parses `a,b,c` into a dimension vector.
pub fn parse_dims(text: &str) -> Result<DimVector> {
    let mut dims = Vec::new();
    let mut pos = 0;
    for part in text.split(',') {
        let value = part
            .trim()
            .parse::<u64>()
            .map_err(|_| parse_error(pos, &format!("invalid dimension `{part}`")))?;
        dims.push(value);
        pos += part.len() + 1;
    }
    DimVector::new(dims)
}

/// Everything a subcommand prints.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub caps: Caps,
    pub engine_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    /// Whether every assertion the command makes held.
    pub ok: bool,
}

impl Report {
    fn new(command: &str, inputs: Value, outputs: Value, ok: bool, started: Instant, deterministic: bool) -> Report {
        Report {
            command: command.to_string(),
            inputs,
            outputs,
            caps: Caps::current(),
            engine_version: ENGINE_VERSION,
            wall_time_ms: (!deterministic).then(|| started.elapsed().as_millis() as u64),
            ok,
        }
    }

    pub fn render(&self, pretty: bool) -> String {
        let out = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        };
        out.expect("reports serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Orbits,
    Subgroups,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// `decompose --h H --g G [--form orbits|subgroups] [--rank] [--bound N]`.
pub fn cmd_decompose(
    h: &GroupSpec,
    g: &GroupSpec,
    form: Form,
    rank: bool,
    bound: Option<usize>,
    deterministic: bool,
) -> Result<Report> {
    let started = Instant::now();
    let hg = h.build()?;
    let decomposition = match g {
        GroupSpec::InfiniteCyclic => {
            let bound = bound.ok_or_else(|| parse_error(0, "--g Z needs --bound"))?;
            wreath_decompose_infinite_cyclic(&hg, bound)?
        }
        _ => {
            if bound.is_some() {
                return Err(parse_error(0, "--bound only applies to --g Z"));
            }
            let gg = g.build()?;
            match form {
                Form::Orbits => wreath_decompose(&hg, &gg, true)?,
                Form::Subgroups => wreath_decompose_subgroup_form(&hg, &gg)?,
            }
        }
    };
    let inputs = json!({
        "h": h.to_string(),
        "g": g.to_string(),
        "form": match form { Form::Orbits => "orbits", Form::Subgroups => "subgroups" },
        "rank": rank,
        "bound": bound,
    });
    let outputs = to_value(&decomposition.to_json(rank)?);
    Ok(Report::new("decompose", inputs, outputs, true, started, deterministic))
}

/// `semisimple --dims a,b,c --g G --zspec Z --bound N`.
pub fn cmd_semisimple(
    dims: &DimVector,
    g: &GroupSpec,
    zspec: &GSetSpec,
    bound: usize,
    deterministic: bool,
) -> Result<Report> {
    let started = Instant::now();
    let gg = g.build()?;
    let z = zspec.build(&gg)?;
    let d = semisimple_decompose(dims, &z, bound)?;
    let inputs = json!({
        "dims": dims.dims(),
        "g": g.to_string(),
        "zspec": zspec.to_string(),
        "bound": bound,
    });
    let mut outputs = to_value(&d.to_json(false)?);
    outputs["gcd"] = json!(dims.gcd());
    Ok(Report::new("semisimple", inputs, outputs, true, started, deterministic))
}

/// `izumi --g G --z Z [--emit FILE] [--check FILE]`.
///
/// Without `--check` the certificate is computed and verified; with it, the
/// certificate read from the file is validated and verified instead.
pub fn cmd_izumi(
    g: &GroupSpec,
    zspec: &GSetSpec,
    emit: Option<&std::path::Path>,
    check: Option<&std::path::Path>,
    deterministic: bool,
) -> Result<Report> {
    let started = Instant::now();
    let gg = g.build()?;
    let iz = Izumi::new(zspec.build(&gg)?)?;
    let certificate = match check {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
            let json: CertificateJson = serde_json::from_str(&text)
                .map_err(|e| parse_error(e.column(), &format!("certificate JSON: {e}")))?;
            let c = IzumiCertificate::from_json(&json);
            iz.check_terms(&c)?;
            c
        }
        None => iz.run_expansion()?,
    };
    let verification = iz.verify_certificate(&certificate)?;
    let json = certificate.to_json();
    if let Some(path) = emit {
        let text = serde_json::to_string_pretty(&json).expect("certificate serializes");
        std::fs::write(path, text + "\n").map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
    }
    let inputs = json!({
        "g": g.to_string(),
        "z": zspec.to_string(),
        "checked_file": check.map(|p| p.display().to_string()),
    });
    let outputs = json!({
        "certificate": json,
        "p_plus_size": certificate.p_plus.total(),
        "p_minus_size": certificate.p_minus.total(),
        "verified": verification.ok,
        "surplus": verification.surplus.to_string(),
        "deficit": verification.deficit.to_string(),
    });
    Ok(Report::new("izumi", inputs, outputs, verification.ok, started, deterministic))
}

/// `burnside --g G --n N --z Z`.
pub fn cmd_burnside(g: &GroupSpec, n: usize, zspec: &GSetSpec, deterministic: bool) -> Result<Report> {
    let started = Instant::now();
    let gg = g.build()?;
    let z = zspec.build(&gg)?;
    let table = TableOfMarks::new(&gg)?;
    let ab = alpha_beta_solve(&table, n, &z)?;
    let one = table.one();
    let nn = num_bigint::BigInt::from(n);
    let vanishes = n == 1 || vanishing_product(&table, n, &z, &ab.bernoulli)?.is_zero();
    let alpha_ok = ab.bernoulli.pow(ab.l)? == ab.alpha.scale(&nn) && ab.alpha.is_effective();
    let beta_ok = ab.bernoulli.multiply(&ab.beta)? == one.scale(&nn.pow(ab.r));
    let coeffs = |x: &wreathk_core::burnside::BurnsideElement| -> Vec<String> {
        x.coeffs().iter().map(|c| c.to_string()).collect()
    };
    let inputs = json!({ "g": g.to_string(), "n": n, "z": zspec.to_string() });
    let outputs = json!({
        "table_of_marks": table.export(),
        "bernoulli": ab.bernoulli.to_string(),
        "bernoulli_coeffs": coeffs(&ab.bernoulli),
        "route": ab.route,
        "alpha": ab.alpha.to_string(),
        "alpha_coeffs": coeffs(&ab.alpha),
        "l": ab.l,
        "beta": ab.beta.to_string(),
        "beta_coeffs": coeffs(&ab.beta),
        "r": ab.r,
        "vanishing_product_zero": vanishes,
        "alpha_identity": alpha_ok,
        "beta_identity": beta_ok,
    });
    Ok(Report::new(
        "burnside",
        inputs,
        outputs,
        vanishes && alpha_ok && beta_ok,
        started,
        deterministic,
    ))
}

/// `slmat --dims a,b,c`.
pub fn cmd_slmat(dims: &DimVector, deterministic: bool) -> Result<Report> {
    let started = Instant::now();
    let x = sl_completion(dims)?;
    let inputs = json!({ "dims": dims.dims() });
    let outputs = json!({ "matrix": x, "gcd": dims.gcd() });
    Ok(Report::new("slmat", inputs, outputs, true, started, deterministic))
}

/// `accept`: the full acceptance suite.
pub fn cmd_accept(deterministic: bool) -> Report {
    let started = Instant::now();
    let results = accept::run_suite();
    let ok = results.iter().all(|r| r.passed);
    let outputs = json!({
        "criteria": results
            .iter()
            .map(|r| json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "elapsed_ms": (!deterministic).then_some(r.elapsed.as_millis() as u64),
            }))
            .collect::<Vec<_>>(),
    });
    Report::new("accept", json!({}), outputs, ok, started, deterministic)
}
