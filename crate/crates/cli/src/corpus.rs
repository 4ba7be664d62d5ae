//! The bundled example corpus. Coefficient and functor files refer to their categories
//! by relative path, so a directory written by `example` is self-contained.

use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{Map, Value};

use catcohom::andre::random_instance;
use catcohom::exactalg::Ring;
use catcohom::fibcl::{
    grothendieck, non_inverting_fixture, nonlocal_fixture, swap_action, trivial_group_action, StrictAction,
};
use catcohom::fincat::json::CatRef;
use catcohom::fincat::{arrow, standard_example, terminal, FinCat, FinFunctor, FIXTURE_NAMES};
use catcohom::natsys::NaturalSystem;
use catcohom::{Error, Result};

use crate::Outcome;

const ACTION_EXAMPLES: &[&str] = &["swap-action", "trivial-action", "product-fibration", "nonlocal", "non-inverting"];

#[derive(Debug)]
struct Files(Vec<(String, Value)>);

impl Files {
    fn add<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        self.0.push((name.to_string(), crate::to_value(value)?));
        Ok(())
    }

    fn category(&mut self, name: &str, c: &FinCat) -> Result<()> {
        self.add(name, &c.to_raw())
    }

    fn functor(&mut self, name: &str, u: &FinFunctor, source: &str, target: &str) -> Result<()> {
        let mut raw = u.to_raw();
        raw.source = CatRef::Path(source.into());
        raw.target = CatRef::Path(target.into());
        self.add(name, &raw)
    }

    fn natsys(&mut self, name: &str, d: &NaturalSystem, category: &str) -> Result<()> {
        let mut raw = d.to_raw(false);
        raw.category = Some(CatRef::Path(category.into()));
        self.add(name, &raw)
    }
}

fn category_example(name: &str) -> Result<Files> {
    let c = Arc::new(standard_example(name)?);
    let file = format!("{name}.json");
    let mut files = Files(Vec::new());
    files.category(&file, &c)?;
    let point = if name == "terminal" { file.clone() } else { "point.json".to_string() };
    if name != "terminal" {
        files.category(&point, &terminal())?;
    }
    files.natsys("trivial_f2.json", &NaturalSystem::trivial(c.clone(), Ring::ModP(2), 1)?, &file)?;
    files.natsys("trivial_z.json", &NaturalSystem::trivial(c.clone(), Ring::Int, 1)?, &file)?;
    files.functor("identity_u.json", &FinFunctor::identity(c.clone()), &file, &file)?;
    let collapse = FinFunctor::to_terminal(c, Arc::new(terminal()))?;
    files.functor("collapse_u.json", &collapse, &file, &point)?;
    Ok(files)
}

fn action_example(stem: &str, action: &StrictAction, d: Option<&NaturalSystem>) -> Result<Files> {
    let fib = grothendieck(action)?;
    let mut files = Files(Vec::new());
    files.add("action.json", &action.to_raw())?;
    files.category("base.json", action.base())?;
    files.category("total.json", &fib.total)?;
    files.functor(&format!("{stem}_u.json"), &fib.u, "total.json", "base.json")?;
    files.natsys("trivial_f2.json", &NaturalSystem::trivial(fib.total.clone(), Ring::ModP(2), 1)?, "total.json")?;
    if let Some(d) = d {
        files.natsys("natsys.json", d, "total.json")?;
    }
    Ok(files)
}

fn build(name: &str, seed: u64) -> Result<Files> {
    match name {
        "swap-action" => action_example("swap", &swap_action()?, None),
        "trivial-action" => action_example("trivial", &trivial_group_action(2, Arc::new(terminal()))?, None),
        "product-fibration" => {
            action_example("product", &StrictAction::constant(Arc::new(arrow()), Arc::new(arrow())), None)
        }
        "nonlocal" => {
            let (action, d) = nonlocal_fixture()?;
            action_example("nonlocal", &action, Some(&d))
        }
        "non-inverting" => {
            let (action, d) = non_inverting_fixture()?;
            action_example("non_inverting", &action, Some(&d))
        }
        "random" => {
            let (u, d) = random_instance(seed, 12)?;
            let mut files = Files(Vec::new());
            files.category("source.json", u.source())?;
            files.category("target.json", u.target())?;
            files.functor("u.json", &u, "source.json", "target.json")?;
            files.natsys("natsys.json", &d, "source.json")?;
            Ok(files)
        }
        _ if FIXTURE_NAMES.contains(&name) => category_example(name),
        _ => Err(Error::UnknownFixture(format!("{name} (known: {})", names().join(", ")))),
    }
}

/// Every name `example` accepts.
fn names() -> Vec<&'static str> {
    let mut all: Vec<&str> = FIXTURE_NAMES.to_vec();
    all.extend_from_slice(ACTION_EXAMPLES);
    all.push("random");
    all
}

pub fn run(name: &str, seed: u64, out: Option<&Path>, pretty: bool) -> Result<Outcome> {
    let files = build(name, seed)?;
    let json = match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            for (file, value) in &files.0 {
                let mut text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) }
                    .expect("serializable");
                text.push('\n');
                let path = dir.join(file);
                std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            let written: Vec<Value> = files.0.iter().map(|(f, _)| Value::String(f.clone())).collect();
            serde_json::json!({"example": name, "written": written})
        }
        None => {
            let bundle: Map<String, Value> = files.0.into_iter().collect();
            serde_json::json!({"example": name, "files": bundle})
        }
    };
    Ok(Outcome { json, passed: true })
}
