use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use kspec::fixtures::{
    b2, boolean_signature, c2, c3, left_zero_band, semilattice_signature,
};
use kspec::{spec, trivial_algebra, FiniteAlgebra, Spectrum, SpectrumContext};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};
use crate::format::{emit, parse_entry, Entry};

// The squares are built from bitwise tables rather than `product`, so that
// startup never trips a resource guard lowered through the environment. Bit 1
// is the first coordinate, matching the product encoding.

fn c2_squared() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(semilattice_signature(), 4, |_, x| x[0] & x[1]).expect("valid table")
}

fn b2_squared() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(boolean_signature(), 4, |op, x| match op {
        0 => x[0] | x[1],
        1 => x[0] & x[1],
        2 => x[0] ^ 3,
        3 => 0,
        _ => 3,
    })
    .expect("valid table")
}

/// Named algebras and classes, with spectra cached by content.
#[derive(Debug, Default)]
pub struct Workspace {
    algebras: BTreeMap<String, FiniteAlgebra>,
    classes: BTreeMap<String, Vec<String>>,
    cache: RefCell<HashMap<String, Spectrum>>,
    hits: Cell<usize>,
}

/// A resolved class: its display name and members in order.
#[derive(Debug, Clone)]
pub struct Class {
    pub name: String,
    pub members: Vec<String>,
    pub algebras: Vec<FiniteAlgebra>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// The built-in fixtures: `C2`, `C3`, `C2xC2`, `T` (trivial semilattice),
    /// `LZ2` (left-zero band), `B2`, `B2xB2`, `TB` (trivial Boolean algebra),
    /// and the classes `K2 = {C2}`, `K23 = {C2, C3}`, `KB2 = {B2}`.
    pub fn with_builtins() -> Self {
        let mut ws = Self::new();
        let algebras = [
            ("C2", c2()),
            ("C3", c3()),
            ("C2xC2", c2_squared()),
            ("T", trivial_algebra(&semilattice_signature())),
            ("LZ2", left_zero_band()),
            ("B2", b2()),
            ("B2xB2", b2_squared()),
            ("TB", trivial_algebra(&boolean_signature())),
        ];
        for (name, alg) in algebras {
            ws.insert_algebra(name, alg).expect("distinct builtin names");
        }
        for (name, members) in [("K2", &["C2"][..]), ("K23", &["C2", "C3"]), ("KB2", &["B2"])] {
            ws.insert_class(name, members.iter().map(|m| m.to_string()).collect())
                .expect("distinct builtin names");
        }
        ws
    }

    pub fn insert_algebra(&mut self, name: &str, alg: FiniteAlgebra) -> Result<()> {
        if self.algebras.contains_key(name) || self.classes.contains_key(name) {
            return Err(CliError::Duplicate(name.to_string()));
        }
        self.algebras.insert(name.to_string(), alg);
        Ok(())
    }

    pub fn insert_class(&mut self, name: &str, members: Vec<String>) -> Result<()> {
        if self.algebras.contains_key(name) || self.classes.contains_key(name) {
            return Err(CliError::Duplicate(name.to_string()));
        }
        if let Some(m) = members.iter().find(|m| !self.algebras.contains_key(*m)) {
            return Err(CliError::UnknownAlgebra(m.clone()));
        }
        self.classes.insert(name.to_string(), members);
        Ok(())
    }

    /// Registers the file's algebra, or its class under the file stem.
    /// Returns the registered name.
    pub fn load(&mut self, path: &Path) -> Result<String> {
        let label = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: label.clone(),
            source,
        })?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| CliError::schema(&label, "file name is not valid UTF-8"))?;
        self.load_str(&label, stem, &text)
    }

    pub fn load_str(&mut self, label: &str, class_name: &str, text: &str) -> Result<String> {
        match parse_entry(label, text)? {
            Entry::Algebra(name, alg) => {
                self.insert_algebra(&name, alg)?;
                Ok(name)
            }
            Entry::Class(members) => {
                self.insert_class(class_name, members)?;
                Ok(class_name.to_string())
            }
        }
    }

    pub fn algebra(&self, name: &str) -> Result<&FiniteAlgebra> {
        self.algebras
            .get(name)
            .ok_or_else(|| CliError::UnknownAlgebra(name.to_string()))
    }

    pub fn algebra_names(&self) -> impl Iterator<Item = &str> {
        self.algebras.keys().map(String::as_str)
    }

    pub fn class_names(&self) -> impl Iterator<Item = &str> {
        self.classes.keys().map(String::as_str)
    }

    /// A registered class name, or a comma-separated list of algebra names.
    pub fn class(&self, spec: &str) -> Result<Class> {
        let members: Vec<String> = match self.classes.get(spec) {
            Some(m) => m.clone(),
            None if spec.contains(',') || self.algebras.contains_key(spec) => {
                spec.split(',').map(|s| s.trim().to_string()).collect()
            }
            None => return Err(CliError::UnknownClass(spec.to_string())),
        };
        let algebras = members
            .iter()
            .map(|m| self.algebra(m).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(Class {
            name: spec.to_string(),
            members,
            algebras,
        })
    }

    /// SHA-256 over the emitted tables of the algebra and each class member,
    /// ignoring names.
    pub fn content_key(alg: &FiniteAlgebra, class: &[FiniteAlgebra]) -> String {
        let mut h = Sha256::new();
        h.update(emit("", alg));
        for b in class {
            h.update([0u8]);
            h.update(emit("", b));
        }
        hex::encode(h.finalize())
    }

    pub fn spectrum_of(&self, alg: &FiniteAlgebra, class: &[FiniteAlgebra]) -> Result<Spectrum> {
        let key = Self::content_key(alg, class);
        if let Some(s) = self.cache.borrow().get(&key) {
            self.hits.set(self.hits.get() + 1);
            return Ok(s.clone());
        }
        let s = spec(&SpectrumContext::new(alg.clone(), class.to_vec())?)?;
        self.cache.borrow_mut().insert(key, s.clone());
        Ok(s)
    }

    pub fn spectrum(&self, alg: &str, class: &Class) -> Result<Spectrum> {
        self.spectrum_of(self.algebra(alg)?, &class.algebras)
    }

    pub fn cache_hits(&self) -> usize {
        self.hits.get()
    }

    pub fn cached(&self) -> usize {
        self.cache.borrow().len()
    }
}
