use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use catcohom::andre::{check_consistency, e2_page, E2Options, E2Report, Mode, DEFAULT_COMMA_GUARD};
use catcohom::exactalg::{DegreeResult, Ring};
use catcohom::fibcl::{cartan_leray, grothendieck, is_local, load_action, CartanLerayReport, RawStrictAction, StrictAction};
use catcohom::fincat::json::{base_dir, load_category, load_functor, parse_str, resolve_functor, RawCategory, RawFunctor};
use catcohom::fincat::{default_size_guard, FinCat};
use catcohom::homcalc::{
    bw_cohomology_range, bw_homology_range, hochschild_cohomology_range, hochschild_homology_range, module_cohomology_range,
    module_homology_range, Degrees, Report,
};
use catcohom::natsys::json::{
    coefficient_category, load_bimodule, load_module, load_natural_system, RawBimodule, RawModule, RawNaturalSystem,
};
use catcohom::natsys::{zc_bimodule, Bimodule, Module, NaturalSystem};
use catcohom::{Error, Result};

use crate::{Coefficients, Command, Global, ModeArg, Outcome, Range};

struct Guards {
    load: usize,
    comma: usize,
}

impl Guards {
    fn new(g: &Global) -> Self {
        Guards { load: g.size_guard.unwrap_or_else(default_size_guard), comma: g.size_guard.unwrap_or(DEFAULT_COMMA_GUARD) }
    }
}

pub fn run(cmd: &Command, global: &Global) -> Result<Outcome> {
    let guards = Guards::new(global);
    match cmd {
        Command::Validate { file, cat } => validate(file, cat.as_deref(), &guards),
        Command::Cohomology { coeff, range } => {
            let d = natural_system(coeff, Ring::Int, &guards)?;
            let r = bw_cohomology_range(&d, degrees(range)?)?;
            report("BW", d.ring(), &r)
        }
        Command::Homology { coeff, range } => {
            let d = natural_system(coeff, Ring::Int, &guards)?;
            let r = bw_homology_range(&d, degrees(range)?)?;
            report("BW", d.ring(), &r)
        }
        Command::Limit { coeff, range } => {
            let m = module(coeff, &guards)?;
            report("lim", m.ring(), &module_cohomology_range(&m, degrees(range)?)?)
        }
        Command::Colimit { coeff, range } => {
            let m = module(coeff, &guards)?;
            report("colim", m.ring(), &module_homology_range(&m, degrees(range)?)?)
        }
        Command::Hochschild { coeff, range, mode } => {
            let m = bimodule(coeff, &guards)?;
            let r = match mode {
                ModeArg::Cohomology => hochschild_cohomology_range(&m, degrees(range)?)?,
                ModeArg::Homology => hochschild_homology_range(&m, degrees(range)?)?,
            };
            report("HM", m.ring(), &r)
        }
        Command::E2 { functor, natsys, ring, max_total, mode, truncated, normalized } => {
            at_least_one(*max_total)?;
            let u = load_functor(functor, guards.load)?;
            let d = coefficients_on(natsys.as_deref(), ring.as_deref(), u.source(), &guards)?;
            let mode = match mode {
                ModeArg::Cohomology => Mode::Cohomology,
                ModeArg::Homology => Mode::Homology,
            };
            let opts = E2Options { mode, normalized: *normalized, comma_guard: guards.comma };
            let mut page = e2_page(&u, &d, *max_total, &opts)?;
            if *truncated {
                let deg = Degrees { max: *max_total, truncated: true, normalized: *normalized };
                let r = match mode {
                    Mode::Cohomology => bw_cohomology_range(&d, deg)?,
                    Mode::Homology => bw_homology_range(&d, deg)?,
                };
                page.abutment = r.into_iter().map(|x| x.group).collect();
            }
            let verdict = check_consistency(&page);
            Ok(Outcome { json: crate::to_value(&E2Report::new(&page, &verdict))?, passed: verdict.passed() })
        }
        Command::CartanLeray { action, natsys, ring, max_total } => {
            at_least_one(*max_total)?;
            let action = load_action(action, guards.load)?;
            let fib = grothendieck(&action)?;
            let d = coefficients_on(natsys.as_deref(), ring.as_deref(), &fib.total, &guards)?;
            let cl = cartan_leray(&action, &d, *max_total)?;
            let passed = check_consistency(&cl.page).passed();
            Ok(Outcome { json: crate::to_value(&CartanLerayReport::new(&cl))?, passed })
        }
        Command::Locality { action, natsys, ring, max_degree } => {
            let action = load_action(action, guards.load)?;
            let fib = grothendieck(&action)?;
            let d = coefficients_on(natsys.as_deref(), ring.as_deref(), &fib.total, &guards)?;
            Outcome::ok(&is_local(&fib, &d, *max_degree)?.to_json(&fib))
        }
        Command::Grothendieck { action } => {
            let fib = grothendieck(&load_action(action, guards.load)?)?;
            Outcome::ok(&fib.u.to_raw())
        }
        Command::Example { .. } => unreachable!("handled by the corpus"),
    }
}

fn at_least_one(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("the maximal degree must be at least 1".into()));
    }
    Ok(())
}

fn degrees(r: &Range) -> Result<Degrees> {
    at_least_one(r.max_degree)?;
    Ok(Degrees { max: r.max_degree, truncated: r.truncated, normalized: r.normalized })
}

fn report(theory: &str, ring: Ring, results: &[DegreeResult]) -> Result<Outcome> {
    Outcome::ok(&Report::new(theory, ring, results))
}

fn parse_ring(s: Option<&str>) -> Result<Option<Ring>> {
    s.map(str::parse).transpose()
}

fn check_ring(requested: Option<Ring>, actual: Ring) -> Result<()> {
    match requested {
        Some(r) if r != actual => Err(Error::RingMismatch(format!("--ring {r} but the coefficients are over {actual}"))),
        _ => Ok(()),
    }
}

fn category(coeff: &Coefficients, g: &Guards) -> Result<Option<Arc<FinCat>>> {
    coeff.cat.as_deref().map(|p| load_category(p, g.load).map(Arc::new)).transpose()
}

fn require_category(cat: Option<Arc<FinCat>>) -> Result<Arc<FinCat>> {
    cat.ok_or_else(|| Error::InvalidArgument("--cat is required without a coefficient file".into()))
}

fn natural_system(coeff: &Coefficients, default: Ring, g: &Guards) -> Result<NaturalSystem> {
    let ring = parse_ring(coeff.ring.as_deref())?;
    let cat = category(coeff, g)?;
    let d = if let Some(p) = &coeff.natsys {
        load_natural_system(p, cat, g.load)?
    } else if let Some(p) = &coeff.module {
        NaturalSystem::from_module(&load_module(p, cat, g.load)?)?
    } else if let Some(p) = &coeff.bimodule {
        NaturalSystem::from_bimodule(&load_bimodule(p, cat, g.load)?)?
    } else {
        return NaturalSystem::trivial(require_category(cat)?, ring.unwrap_or(default), 1);
    };
    check_ring(ring, d.ring())?;
    Ok(d)
}

fn module(coeff: &Coefficients, g: &Guards) -> Result<Module> {
    if coeff.natsys.is_some() || coeff.bimodule.is_some() {
        return Err(Error::InvalidArgument("limits and colimits take --module".into()));
    }
    let ring = parse_ring(coeff.ring.as_deref())?;
    let cat = category(coeff, g)?;
    match &coeff.module {
        Some(p) => {
            let m = load_module(p, cat, g.load)?;
            check_ring(ring, m.ring())?;
            Ok(m)
        }
        None => Module::constant(require_category(cat)?, ring.unwrap_or(Ring::Int), 1),
    }
}

fn bimodule(coeff: &Coefficients, g: &Guards) -> Result<Bimodule> {
    if coeff.natsys.is_some() || coeff.module.is_some() {
        return Err(Error::InvalidArgument("Hochschild-Mitchell cohomology takes --bimodule".into()));
    }
    let ring = parse_ring(coeff.ring.as_deref())?;
    let cat = category(coeff, g)?;
    match &coeff.bimodule {
        Some(p) => {
            let m = load_bimodule(p, cat, g.load)?;
            check_ring(ring, m.ring())?;
            Ok(m)
        }
        None => zc_bimodule(require_category(cat)?, ring.unwrap_or(Ring::Int)),
    }
}

/// A natural system on `cat`: from a file, or trivial over the requested ring (F_2 by default).
fn coefficients_on(path: Option<&Path>, ring: Option<&str>, cat: &Arc<FinCat>, g: &Guards) -> Result<NaturalSystem> {
    let ring = parse_ring(ring)?;
    match path {
        Some(p) => {
            let d = load_natural_system(p, Some(cat.clone()), g.load)?;
            check_ring(ring, d.ring())?;
            Ok(d)
        }
        None => NaturalSystem::trivial(cat.clone(), ring.unwrap_or(Ring::ModP(2)), 1),
    }
}

#[derive(Serialize)]
struct ValidateReport {
    file: String,
    kind: &'static str,
    valid: bool,
    roundtrip: bool,
    summary: Value,
}

/// Guesses the file kind from its top-level keys; `deny_unknown_fields` then rejects
/// anything that does not fit.
fn detect_kind(v: &Value) -> Result<&'static str> {
    let obj = v.as_object().ok_or_else(|| Error::InvalidArgument("expected a JSON object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    Ok(if has("fibers") {
        "action"
    } else if has("object_map") || has("source") {
        "functor"
    } else if has("dims") {
        "natural-system"
    } else if has("values") {
        if obj["values"].is_array() {
            "bimodule"
        } else {
            "module"
        }
    } else if has("objects") || has("composition") {
        "category"
    } else {
        return Err(Error::InvalidArgument("cannot tell what kind of file this is".into()));
    })
}

fn reparse<T: Serialize + serde::de::DeserializeOwned + PartialEq>(raw: &T) -> Result<bool> {
    let text = serde_json::to_string(raw).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(parse_str::<T>(&text)? == *raw)
}

fn validate(file: &PathBuf, cat: Option<&Path>, g: &Guards) -> Result<Outcome> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
    let value: Value = parse_str(&text)?;
    let kind = detect_kind(&value)?;
    let dir = base_dir(file);
    let fallback = cat.map(|p| load_category(p, g.load).map(Arc::new)).transpose()?;
    let (roundtrip, summary) = match kind {
        "category" => {
            let raw: RawCategory = parse_str(&text)?;
            let c = FinCat::from_raw(&raw, g.load)?;
            let again = FinCat::from_raw(&c.to_raw(), g.load)?;
            let summary = serde_json::json!({"objects": c.num_objects(), "morphisms": c.num_morphisms()});
            (reparse(&raw)? && again == c, summary)
        }
        "functor" => {
            let raw: RawFunctor = parse_str(&text)?;
            let u = resolve_functor(&raw, &dir, g.load)?;
            let again = resolve_functor(&u.to_raw(), &dir, g.load)?;
            let summary = serde_json::json!({
                "source_morphisms": u.source().num_morphisms(),
                "target_morphisms": u.target().num_morphisms(),
            });
            (reparse(&raw)? && again == u, summary)
        }
        "natural-system" => {
            let raw: RawNaturalSystem = parse_str(&text)?;
            let c = coefficient_category(raw.category.as_ref(), &dir, fallback, g.load)?;
            let d = NaturalSystem::from_raw(&raw, c.clone())?;
            let again = NaturalSystem::from_raw(&d.to_raw(false), c)?;
            let summary = serde_json::json!({"ring": d.ring().to_string(), "total_dim": d.dims().iter().sum::<usize>()});
            (reparse(&raw)? && again == d, summary)
        }
        "module" => {
            let raw: RawModule = parse_str(&text)?;
            let c = coefficient_category(raw.category.as_ref(), &dir, fallback, g.load)?;
            let m = Module::from_raw(&raw, c.clone())?;
            let again = Module::from_raw(&m.to_raw(false), c)?;
            let summary = serde_json::json!({"ring": m.ring().to_string(), "total_dim": m.dims().iter().sum::<usize>()});
            (reparse(&raw)? && again == m, summary)
        }
        "bimodule" => {
            let raw: RawBimodule = parse_str(&text)?;
            let c = coefficient_category(raw.category.as_ref(), &dir, fallback, g.load)?;
            let m = Bimodule::from_raw(&raw, c.clone())?;
            let again = Bimodule::from_raw(&m.to_raw(false), c)?;
            let summary = serde_json::json!({"ring": m.ring().to_string()});
            (reparse(&raw)? && again == m, summary)
        }
        _ => {
            let raw: RawStrictAction = parse_str(&text)?;
            let a = StrictAction::from_raw(&raw, &dir, g.load)?;
            let again = StrictAction::from_raw(&a.to_raw(), &dir, g.load)?;
            let summary = serde_json::json!({
                "base_objects": a.base().num_objects(),
                "base_morphisms": a.base().num_morphisms(),
            });
            (reparse(&raw)? && again == a, summary)
        }
    };
    let report = ValidateReport { file: file.display().to_string(), kind, valid: true, roundtrip, summary };
    Ok(Outcome { json: crate::to_value(&report)?, passed: roundtrip })
}
