//! Coordinate charts: named coordinates plus formal exponential generators.
//!
//! A chart fixes the symbol universe for every expression in the engine.
//! Symbols are indexed densely: coordinates first (in declaration order),
//! generators after them.

use num::BigRational;
use num::Zero;
use thiserror::Error;

/// A formal transcendental `exp(rate * coordinate)` adjoined to the
/// polynomial coefficient ring. Its only special behaviour is the
/// derivation rule d/d(coordinate) = rate * generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpGenerator {
    pub name: String,
    /// Index of the base coordinate.
    pub base: usize,
    pub rate: BigRational,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("duplicate symbol name `{0}`")]
    DuplicateName(String),
    #[error("generator `{0}` refers to unknown coordinate `{1}`")]
    UnknownBaseCoordinate(String, String),
    #[error("generator `{0}` has zero rate")]
    ZeroRate(String),
    #[error("generators `{0}` and `{1}` denote the same exponential")]
    DuplicateGenerator(String, String),
    #[error("symbol name `{0}` is not a valid identifier")]
    InvalidName(String),
}

/// Symbol table of a coordinate chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    coordinates: Vec<String>,
    generators: Vec<ExpGenerator>,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    /// Builds a chart from coordinate names and `(name, base coordinate, rate)`
    /// generator declarations.
    pub fn new<S: Into<String>>(
        coordinates: Vec<S>,
        generators: Vec<(S, S, BigRational)>,
    ) -> Result<Chart, ChartError> {
        let coordinates: Vec<String> = coordinates.into_iter().map(Into::into).collect();
        let mut seen: Vec<&str> = Vec::new();
        for name in &coordinates {
            if !valid_identifier(name) {
                return Err(ChartError::InvalidName(name.clone()));
            }
            if seen.contains(&name.as_str()) {
                return Err(ChartError::DuplicateName(name.clone()));
            }
            seen.push(name);
        }
        let mut gens = Vec::new();
        for (name, base, rate) in generators {
            let name: String = name.into();
            let base: String = base.into();
            if !valid_identifier(&name) {
                return Err(ChartError::InvalidName(name.clone()));
            }
            if coordinates.iter().any(|c| *c == name)
                || gens.iter().any(|g: &ExpGenerator| g.name == name)
            {
                return Err(ChartError::DuplicateName(name));
            }
            let base_idx = coordinates
                .iter()
                .position(|c| *c == base)
                .ok_or_else(|| ChartError::UnknownBaseCoordinate(name.clone(), base.clone()))?;
            if rate.is_zero() {
                return Err(ChartError::ZeroRate(name));
            }
            if let Some(other) = gens
                .iter()
                .find(|g: &&ExpGenerator| g.base == base_idx && g.rate == rate)
            {
                return Err(ChartError::DuplicateGenerator(other.name.clone(), name));
            }
            gens.push(ExpGenerator {
                name,
                base: base_idx,
                rate,
            });
        }
        Ok(Chart {
            coordinates,
            generators: gens,
        })
    }

    /// Chart dimension (number of coordinates).
    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    /// Total number of symbols, coordinates plus generators.
    pub fn num_symbols(&self) -> usize {
        self.coordinates.len() + self.generators.len()
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn generators(&self) -> &[ExpGenerator] {
        &self.generators
    }

    pub fn is_coordinate(&self, sym: usize) -> bool {
        sym < self.coordinates.len()
    }

    /// Generator metadata for a symbol index, if it names a generator.
    pub fn generator(&self, sym: usize) -> Option<&ExpGenerator> {
        sym.checked_sub(self.coordinates.len())
            .and_then(|i| self.generators.get(i))
    }

    pub fn symbol_name(&self, sym: usize) -> &str {
        if sym < self.coordinates.len() {
            &self.coordinates[sym]
        } else {
            &self.generators[sym - self.coordinates.len()].name
        }
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.coordinates.iter().position(|c| c == name) {
            return Some(i);
        }
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i + self.coordinates.len())
    }
}
