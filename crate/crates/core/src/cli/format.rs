//! The configuration file format.
//!
//! ```text
//! # comments run to the end of the line
//! name: S1
//! ZIII
//! IXII
//!
//! name: S2
//! ...
//! ```
//!
//! One context per block, blocks separated by blank lines, one observable
//! word per line. An optional `name:` line may open a block.

use std::fmt;

use crate::error::Error;
use crate::magic::{Context, MagicConfiguration};
use crate::pauli::PauliObservable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextBlock {
    pub name: Option<String>,
    pub observables: Vec<PauliObservable>,
    /// 1-based line of the block's first entry, for diagnostics.
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConfigFile {
    pub contexts: Vec<ContextBlock>,
}

/// A structural problem in one block of an otherwise well-formed file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockError {
    pub index: usize,
    pub name: Option<String>,
    pub line: usize,
    pub error: Error,
}

impl fmt::Display for BlockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "context {}", self.index + 1)?;
        if let Some(name) = &self.name {
            write!(f, " ({name})")?;
        }
        write!(f, " at line {}: {}", self.line, self.error)
    }
}

impl std::error::Error for BlockError {}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut contexts = Vec::new();
        let mut current: Option<ContextBlock> = None;
        let mut qubits: Option<usize> = None;

        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            if raw.trim().is_empty() {
                if let Some(block) = current.take() {
                    contexts.push(block);
                }
                continue;
            }
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let column = content.find(trimmed).unwrap_or(0) + 1;

            if let Some(name) = trimmed.strip_prefix("name:") {
                if current.as_ref().is_some_and(|b| !b.observables.is_empty()) {
                    return Err(ParseError {
                        line: line_no,
                        column,
                        message: "name: must open a block".into(),
                    });
                }
                if current.as_ref().is_some_and(|b| b.name.is_some()) {
                    return Err(ParseError {
                        line: line_no,
                        column,
                        message: "block already has a name".into(),
                    });
                }
                let block = current.get_or_insert_with(|| ContextBlock {
                    name: None,
                    observables: Vec::new(),
                    line: line_no,
                });
                block.name = Some(name.trim().to_string());
                continue;
            }

            if trimmed.contains(char::is_whitespace) {
                let at = trimmed.find(char::is_whitespace).unwrap();
                return Err(ParseError {
                    line: line_no,
                    column: column + trimmed[..at].chars().count(),
                    message: "one observable word per line".into(),
                });
            }
            let obs: PauliObservable = trimmed.parse().map_err(|e| {
                let offset = match e {
                    Error::InvalidCharacter { position, .. } => position,
                    _ => 0,
                };
                ParseError {
                    line: line_no,
                    column: column + offset,
                    message: e.to_string(),
                }
            })?;
            match qubits {
                None => qubits = Some(obs.qubits()),
                Some(n) if n != obs.qubits() => {
                    return Err(ParseError {
                        line: line_no,
                        column,
                        message: format!("expected {n} qubits, got {}", obs.qubits()),
                    })
                }
                Some(_) => {}
            }
            current
                .get_or_insert_with(|| ContextBlock {
                    name: None,
                    observables: Vec::new(),
                    line: line_no,
                })
                .observables
                .push(obs);
        }
        if let Some(block) = current.take() {
            contexts.push(block);
        }
        if let Some(empty) = contexts.iter().find(|b| b.observables.is_empty()) {
            return Err(ParseError {
                line: empty.line,
                column: 1,
                message: "block has a name but no observables".into(),
            });
        }
        if contexts.is_empty() {
            return Err(ParseError {
                line: text.lines().count().max(1),
                column: 1,
                message: "no contexts in file".into(),
            });
        }
        Ok(Self { contexts })
    }

    pub fn to_configuration(&self) -> Result<MagicConfiguration, BlockError> {
        let contexts = self
            .contexts
            .iter()
            .enumerate()
            .map(|(index, block)| {
                let ctx = Context::new(block.observables.clone(), None).map_err(|error| BlockError {
                    index,
                    name: block.name.clone(),
                    line: block.line,
                    error,
                })?;
                Ok(match &block.name {
                    Some(n) => ctx.named(n.clone()),
                    None => ctx,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        MagicConfiguration::new(contexts).map_err(|error| BlockError {
            index: 0,
            name: None,
            line: 1,
            error,
        })
    }

    /// Observables in canonical point order; context order is kept.
    pub fn from_configuration(m: &MagicConfiguration) -> Self {
        Self {
            contexts: m
                .contexts()
                .iter()
                .map(|c| ContextBlock {
                    name: c.name().map(str::to_string),
                    observables: c.canonical_observables(),
                    line: 0,
                })
                .collect(),
        }
    }
}

impl fmt::Display for ConfigFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.contexts.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            if let Some(name) = &block.name {
                writeln!(f, "name: {name}")?;
            }
            for o in &block.observables {
                writeln!(f, "{o}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parses_blocks_names_and_comments() {
        let text = "# rectangle\nname: S1\nZIII  # first\nIXII\n\n\nname: S2\n-ZXII\nZXII # dup point fine here\n";
        let file = ConfigFile::parse(text).unwrap();
        assert_eq!(file.contexts.len(), 2);
        assert_eq!(file.contexts[0].name.as_deref(), Some("S1"));
        assert_eq!(file.contexts[0].observables.len(), 2);
        assert_eq!(file.contexts[1].observables[0].to_string(), "-ZXII");
        assert_eq!(file.contexts[1].line, 7);
    }

    #[test]
    fn comment_lines_do_not_split_blocks() {
        let file = ConfigFile::parse("ZI\n# note\nIZ\n").unwrap();
        assert_eq!(file.contexts.len(), 1);
    }

    #[test]
    fn positions_in_errors() {
        let err = ConfigFile::parse("ZIII\n  IXAI\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
        let err = ConfigFile::parse("ZIII IXII\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        let err = ConfigFile::parse("ZIII\nZII\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = ConfigFile::parse("ZIII\nname: late\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(ConfigFile::parse("# nothing\n\n").is_err());
        assert!(ConfigFile::parse("name: lonely\n").is_err());
    }

    #[test]
    fn structural_errors_name_the_block() {
        let file = ConfigFile::parse("name: bad\nZIII\nXIII\n").unwrap();
        let err = file.to_configuration().unwrap_err();
        assert_eq!(err.index, 0);
        assert!(err.to_string().contains("ZIII and XIII anticommute"), "{err}");
    }

    #[test]
    fn emitted_file_parses_back() {
        let hc = catalog::hc_rectangle();
        let file = ConfigFile::from_configuration(&hc);
        let text = file.to_string();
        let again = ConfigFile::parse(&text).unwrap();
        assert_eq!(again.to_string(), text);
        assert_eq!(again.to_configuration().unwrap().canonical_key(), hc.canonical_key());
    }
}
