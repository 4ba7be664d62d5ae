#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

pub fn catcohom(args: &[&str]) -> Run {
    catcohom_env(args, &[])
}

pub fn catcohom_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_catcohom"));
    cmd.args(args).env_remove("CATCOHOM_SIZE_GUARD");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("run catcohom");
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).expect("utf-8") }
}

/// Writes example `name` into `dir/name` and returns that directory.
pub fn example(dir: &Path, name: &str) -> PathBuf {
    let target = dir.join(name);
    let run = catcohom(&["example", name, "--out", target.to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    target
}

pub fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// e∘x = x, a∘a = e, a∘b = a, b∘a = a, b∘b = e: (b∘a)∘a = e but b∘(a∘a) = b.
pub const BROKEN_ASSOCIATIVITY: &str = r#"{
  "objects": ["*"],
  "morphisms": [{"name": "e", "src": "*", "tgt": "*"}, {"name": "a", "src": "*", "tgt": "*"}, {"name": "b", "src": "*", "tgt": "*"}],
  "identities": {"*": "e"},
  "composition": [["a", "a", "e"], ["a", "b", "a"], ["b", "a", "a"], ["b", "b", "e"]]
}"#;

/// g_* = 2 on BZ/2 over F_5, so (g∘g)_* = 1 ≠ 4 = g_*∘g_*.
pub const NON_FUNCTORIAL: &str = r#"{
  "category": {
    "objects": ["*"],
    "morphisms": [{"name": "e", "src": "*", "tgt": "*"}, {"name": "g", "src": "*", "tgt": "*"}],
    "identities": {"*": "e"},
    "composition": [["g", "g", "e"]]
  },
  "ring": "Fp:5",
  "dims": {"e": 1, "g": 1},
  "right": [{"f": "e", "alpha": "g", "matrix": [["1"]]}, {"f": "g", "alpha": "g", "matrix": [["1"]]}],
  "left": [{"f": "e", "beta": "g", "matrix": [["2"]]}, {"f": "g", "beta": "g", "matrix": [["2"]]}]
}"#;

/// ℤ/3 with g acting by the swap and g² by the identity.
pub const NON_STRICT: &str = r#"{
  "base": {
    "objects": ["*"],
    "morphisms": [{"name": "e", "src": "*", "tgt": "*"}, {"name": "g", "src": "*", "tgt": "*"}, {"name": "g^2", "src": "*", "tgt": "*"}],
    "identities": {"*": "e"},
    "composition": [["g", "g", "g^2"], ["g", "g^2", "e"], ["g^2", "g", "e"], ["g^2", "g^2", "g"]]
  },
  "fibers": {"*": {
    "objects": ["0", "1"],
    "morphisms": [{"name": "id_0", "src": "0", "tgt": "0"}, {"name": "id_1", "src": "1", "tgt": "1"}],
    "identities": {"0": "id_0", "1": "id_1"},
    "composition": []
  }},
  "maps": [
    {"beta": "g", "functor": {"object_map": {"0": "1", "1": "0"}, "morphism_map": {"id_0": "id_1", "id_1": "id_0"}}},
    {"beta": "g^2", "functor": {"object_map": {"0": "0", "1": "1"}, "morphism_map": {"id_0": "id_0", "id_1": "id_1"}}}
  ]
}"#;
