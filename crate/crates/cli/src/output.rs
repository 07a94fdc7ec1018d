use crate::failure::Failure;
use quditc_core::circuit_ir::json::to_canonical_string;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Collects parameters, input digests and emitted files for one invocation,
/// and writes `manifest.json` next to the outputs.
pub struct Run {
    command: &'static str,
    out: Option<PathBuf>,
    parameters: Map<String, Value>,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

impl Run {
    pub fn new(command: &'static str, out: Option<&Path>) -> Result<Self, Failure> {
        if let Some(dir) = out {
            fs::create_dir_all(dir).map_err(|e| Failure::invalid(format!("cannot create {}: {e}", dir.display())))?;
        }
        Ok(Self {
            command,
            out: out.map(Path::to_path_buf),
            parameters: Map::new(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        })
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    /// Reads an input file and records its digest under its file name.
    pub fn read_input(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
        let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        self.inputs.insert(name, sha256_hex(&bytes));
        String::from_utf8(bytes).map_err(|_| Failure::invalid(format!("{} is not UTF-8", path.display())))
    }

    /// Writes `contents` as `name` in the output directory, if one was given.
    pub fn emit(&mut self, name: &str, contents: &str) -> Result<(), Failure> {
        if let Some(dir) = &self.out {
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))?;
            self.outputs.insert(name.to_string(), sha256_hex(contents.as_bytes()));
        }
        Ok(())
    }

    pub fn emit_json(&mut self, name: &str, value: &Value) -> Result<(), Failure> {
        self.emit(name, &to_canonical_string(value))
    }

    pub fn manifest(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "tool_version": concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")),
            "inputs": self.inputs,
            "outputs": self.outputs,
        })
    }

    /// Writes the manifest (when an output directory is set) and prints `text` to stdout.
    pub fn finish_text(self, text: &str) -> Result<(), Failure> {
        if let Some(dir) = &self.out {
            let path = dir.join("manifest.json");
            fs::write(&path, to_canonical_string(&self.manifest()))
                .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))?;
        }
        print!("{text}");
        Ok(())
    }

    pub fn finish(self, summary: &Value) -> Result<(), Failure> {
        self.finish_text(&to_canonical_string(summary))
    }
}
