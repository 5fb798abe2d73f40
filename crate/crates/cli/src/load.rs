use std::path::Path;

use anyhow::{bail, Context, Result};
use lpspec::spec::{read_spec, EvaluatedSpec, Spec};
use lpspec::syntax::universe::DEFAULT_CAP;
use lpspec::syntax::{parse_program, GroundUniverse, Program};

/// Depth used when neither the command line nor a specification file gives one.
pub const DEFAULT_DEPTH: usize = 3;

pub fn read_program(path: &Path) -> Result<Program> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_program(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_spec(path: &Path) -> Result<Spec> {
    read_spec(path).with_context(|| format!("reading specification {}", path.display()))
}

/// Program, specification and the universe they are checked in.
pub struct Loaded {
    pub program: Program,
    pub spec: Option<Spec>,
    pub universe: GroundUniverse,
}

impl Loaded {
    pub fn new(program: &Path, spec: Option<&Path>, depth: Option<usize>) -> Result<Self> {
        let program = read_program(program)?;
        let spec = spec.map(load_spec).transpose()?;
        let depth = depth
            .or_else(|| spec.as_ref().and_then(|s| s.depth))
            .unwrap_or(DEFAULT_DEPTH);
        if depth == 0 {
            bail!("depth must be at least 1");
        }
        let universe = match &spec {
            Some(s) => s.universe_for(&program, depth, DEFAULT_CAP)?,
            None => GroundUniverse::for_program(&program, depth),
        };
        Ok(Loaded {
            program,
            spec,
            universe,
        })
    }

    pub fn depth(&self) -> usize {
        self.universe.depth()
    }

    pub fn spec(&self) -> Result<&Spec> {
        self.spec
            .as_ref()
            .context("this command needs a specification")
    }

    pub fn evaluate(&self) -> Result<EvaluatedSpec> {
        Ok(self.spec()?.evaluate(&self.universe)?)
    }

    /// The same inputs one level deeper.
    pub fn deeper(&self) -> Result<Loaded> {
        let depth = self.depth() + 1;
        let universe = match &self.spec {
            Some(s) => s.universe_for(&self.program, depth, DEFAULT_CAP)?,
            None => GroundUniverse::for_program(&self.program, depth),
        };
        Ok(Loaded {
            program: self.program.clone(),
            spec: self.spec.clone(),
            universe,
        })
    }
}
