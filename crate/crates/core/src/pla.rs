//! Two-level sum-of-products specifications in the Berkeley `.pla` format.
//!
//! Accepted subset:
//!
//! ```text
//! # comment
//! .i 3
//! .o 1
//! .ilb a b c      (optional)
//! .ob f           (optional)
//! .p 2            (optional, must match the row count)
//! 1-0 1
//! 011 1
//! .e              (optional, ends the document)
//! ```
//!
//! Input cubes use `0`, `1` and `-`. Output columns must be `0` or `1`; only
//! the on-set is read, so don't-care outputs are rejected.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubeBit {
    Zero,
    One,
    DontCare,
}

impl CubeBit {
    fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(CubeBit::Zero),
            '1' => Some(CubeBit::One),
            '-' => Some(CubeBit::DontCare),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            CubeBit::Zero => '0',
            CubeBit::One => '1',
            CubeBit::DontCare => '-',
        }
    }

    pub fn matches(self, bit: bool) -> bool {
        match self {
            CubeBit::Zero => !bit,
            CubeBit::One => bit,
            CubeBit::DontCare => true,
        }
    }
}

/// One row of the PLA: an input cube and the outputs it drives high.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cube {
    pub inputs: Vec<CubeBit>,
    pub outputs: Vec<bool>,
}

impl Cube {
    pub fn new(inputs: &str, outputs: &str) -> Option<Self> {
        Some(Cube {
            inputs: inputs
                .chars()
                .map(CubeBit::from_char)
                .collect::<Option<_>>()?,
            outputs: outputs
                .chars()
                .map(|c| match c {
                    '0' => Some(false),
                    '1' => Some(true),
                    _ => None,
                })
                .collect::<Option<_>>()?,
        })
    }

    /// True if the input vector (input 0 first) lies in this cube.
    pub fn covers(&self, input: &[bool]) -> bool {
        self.inputs.iter().zip(input).all(|(c, &b)| c.matches(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaSpec {
    pub n: usize,
    pub m: usize,
    pub cubes: Vec<Cube>,
    pub input_labels: Option<Vec<String>>,
    pub output_labels: Option<Vec<String>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("a PLA needs at least one input and one output (got .i {n}, .o {m})")]
    Empty { n: usize, m: usize },
    #[error("cube {index} has {inputs} inputs and {outputs} outputs, expected {n} and {m}")]
    CubeShape {
        index: usize,
        inputs: usize,
        outputs: usize,
        n: usize,
        m: usize,
    },
    #[error("{what} label count {found} does not match {expected}")]
    LabelCount {
        what: &'static str,
        found: usize,
        expected: usize,
    },
}

impl PlaSpec {
    pub fn new(n: usize, m: usize, cubes: Vec<Cube>) -> Result<Self, SpecError> {
        let spec = PlaSpec {
            n,
            m,
            cubes,
            input_labels: None,
            output_labels: None,
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn check(&self) -> Result<(), SpecError> {
        if self.n == 0 || self.m == 0 {
            return Err(SpecError::Empty {
                n: self.n,
                m: self.m,
            });
        }
        for (index, cube) in self.cubes.iter().enumerate() {
            if cube.inputs.len() != self.n || cube.outputs.len() != self.m {
                return Err(SpecError::CubeShape {
                    index,
                    inputs: cube.inputs.len(),
                    outputs: cube.outputs.len(),
                    n: self.n,
                    m: self.m,
                });
            }
        }
        if let Some(labels) = &self.input_labels {
            if labels.len() != self.n {
                return Err(SpecError::LabelCount {
                    what: "input",
                    found: labels.len(),
                    expected: self.n,
                });
            }
        }
        if let Some(labels) = &self.output_labels {
            if labels.len() != self.m {
                return Err(SpecError::LabelCount {
                    what: "output",
                    found: labels.len(),
                    expected: self.m,
                });
            }
        }
        Ok(())
    }

    /// Single-output spec whose on-set is exactly `minterms`.
    pub fn from_minterms(n: usize, minterms: &[usize]) -> Result<Self, SpecError> {
        let cubes = minterms
            .iter()
            .map(|&mt| Cube {
                inputs: (0..n)
                    .map(|i| {
                        if (mt >> (n - 1 - i)) & 1 == 1 {
                            CubeBit::One
                        } else {
                            CubeBit::Zero
                        }
                    })
                    .collect(),
                outputs: vec![true],
            })
            .collect();
        PlaSpec::new(n, 1, cubes)
    }
}

impl fmt::Display for PlaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, ".i {}", self.n)?;
        writeln!(f, ".o {}", self.m)?;
        if let Some(labels) = &self.input_labels {
            writeln!(f, ".ilb {}", labels.join(" "))?;
        }
        if let Some(labels) = &self.output_labels {
            writeln!(f, ".ob {}", labels.join(" "))?;
        }
        writeln!(f, ".p {}", self.cubes.len())?;
        for cube in &self.cubes {
            let inputs: String = cube.inputs.iter().map(|b| b.as_char()).collect();
            let outputs: String = cube
                .outputs
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            writeln!(f, "{inputs} {outputs}")?;
        }
        writeln!(f, ".e")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct PlaError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn error(line: usize, column: usize, message: impl Into<String>) -> PlaError {
    PlaError {
        line,
        column,
        message: message.into(),
    }
}

/// Byte offset of `token` inside `line`, as a 1-based column.
fn column_of(line: &str, token: &str) -> usize {
    token.as_ptr() as usize - line.as_ptr() as usize + 1
}

pub fn parse_pla(text: &str) -> Result<PlaSpec, PlaError> {
    let mut n: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut p: Option<(usize, usize)> = None;
    let mut input_labels: Option<(usize, Vec<String>)> = None;
    let mut output_labels: Option<(usize, Vec<String>)> = None;
    let mut cubes = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(first) = tokens.next() else {
            continue;
        };
        let rest: Vec<&str> = tokens.collect();

        if let Some(directive) = first.strip_prefix('.') {
            let count = |slot: &Option<usize>| -> Result<usize, PlaError> {
                if slot.is_some() {
                    return Err(error(
                        line_no,
                        column_of(raw, first),
                        format!("duplicate .{directive}"),
                    ));
                }
                match rest.as_slice() {
                    [value] => value.parse::<usize>().map_err(|_| {
                        error(
                            line_no,
                            column_of(raw, value),
                            format!("expected a count after .{directive}, found `{value}`"),
                        )
                    }),
                    _ => Err(error(
                        line_no,
                        column_of(raw, first),
                        format!(".{directive} takes exactly one count"),
                    )),
                }
            };
            match directive {
                "i" => n = Some(count(&n)?),
                "o" => m = Some(count(&m)?),
                "p" => p = Some((count(&p.map(|(v, _)| v))?, line_no)),
                "ilb" => {
                    input_labels = Some((line_no, rest.iter().map(|s| s.to_string()).collect()))
                }
                "ob" => {
                    output_labels = Some((line_no, rest.iter().map(|s| s.to_string()).collect()))
                }
                "e" | "end" => break,
                _ => {
                    return Err(error(
                        line_no,
                        column_of(raw, first),
                        format!("unsupported directive `{first}`"),
                    ))
                }
            }
            continue;
        }

        let (Some(n), Some(m)) = (n, m) else {
            let missing = if n.is_none() { ".i" } else { ".o" };
            return Err(error(
                line_no,
                column_of(raw, first),
                format!("product row before {missing}"),
            ));
        };
        let outputs_token = match rest.as_slice() {
            [out] => *out,
            [] => {
                return Err(error(
                    line_no,
                    column_of(raw, first) + first.len(),
                    "row is missing its output part",
                ))
            }
            [_, extra, ..] => {
                return Err(error(
                    line_no,
                    column_of(raw, extra),
                    "row has more than an input and an output part",
                ))
            }
        };
        let base = column_of(raw, first);
        let mut inputs = Vec::with_capacity(n);
        for (off, c) in first.chars().enumerate() {
            inputs.push(CubeBit::from_char(c).ok_or_else(|| {
                error(
                    line_no,
                    base + off,
                    format!("illegal input character `{c}`"),
                )
            })?);
        }
        if inputs.len() != n {
            return Err(error(
                line_no,
                base,
                format!("input part has width {}, expected {n}", inputs.len()),
            ));
        }
        let base = column_of(raw, outputs_token);
        let mut outputs = Vec::with_capacity(m);
        for (off, c) in outputs_token.chars().enumerate() {
            outputs.push(match c {
                '0' => false,
                '1' => true,
                '-' | '~' => {
                    return Err(error(
                        line_no,
                        base + off,
                        "don't-care outputs are not supported",
                    ))
                }
                _ => {
                    return Err(error(
                        line_no,
                        base + off,
                        format!("illegal output character `{c}`"),
                    ))
                }
            });
        }
        if outputs.len() != m {
            return Err(error(
                line_no,
                base,
                format!("output part has width {}, expected {m}", outputs.len()),
            ));
        }
        cubes.push(Cube { inputs, outputs });
    }

    let n = n.ok_or_else(|| error(last_line.max(1), 1, "missing .i declaration"))?;
    let m = m.ok_or_else(|| error(last_line.max(1), 1, "missing .o declaration"))?;
    if n == 0 || m == 0 {
        return Err(error(1, 1, ".i and .o must be at least 1"));
    }
    if let Some((expected, line)) = p {
        if expected != cubes.len() {
            return Err(error(
                line,
                1,
                format!(".p declares {expected} rows, found {}", cubes.len()),
            ));
        }
    }
    let input_labels = match input_labels {
        Some((line, labels)) if labels.len() != n => {
            return Err(error(
                line,
                1,
                format!(".ilb names {} inputs, expected {n}", labels.len()),
            ))
        }
        other => other.map(|(_, l)| l),
    };
    let output_labels = match output_labels {
        Some((line, labels)) if labels.len() != m => {
            return Err(error(
                line,
                1,
                format!(".ob names {} outputs, expected {m}", labels.len()),
            ))
        }
        other => other.map(|(_, l)| l),
    };
    Ok(PlaSpec {
        n,
        m,
        cubes,
        input_labels,
        output_labels,
    })
}

impl FromStr for PlaSpec {
    type Err = PlaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pla(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let spec = parse_pla(".i 3\n.o 1\n1-0 1\n.e").unwrap();
        assert_eq!((spec.n, spec.m), (3, 1));
        assert_eq!(spec.cubes, [Cube::new("1-0", "1").unwrap()]);
    }

    #[test]
    fn parity_document() {
        let spec = parse_pla(".i 3\n.o 1\n001 1\n010 1\n100 1\n111 1\n.e").unwrap();
        assert_eq!(spec, PlaSpec::from_minterms(3, &[1, 2, 4, 7]).unwrap());
    }

    #[test]
    fn comments_labels_and_blank_lines() {
        let text = "# parity\n\n.i 2\n.o 2 # two outputs\n.ilb x y\n.ob f g\n.p 1\n-1 10\n.e\ngarbage after end\n";
        let spec = parse_pla(text).unwrap();
        assert_eq!(
            spec.input_labels.as_deref(),
            Some(&["x".to_string(), "y".to_string()][..])
        );
        assert_eq!(spec.output_labels.as_ref().unwrap()[1], "g");
        assert_eq!(spec.cubes.len(), 1);
    }

    #[test]
    fn width_mismatch_reports_line() {
        let err = parse_pla(".i 3\n.o 1\n10 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("width 2"), "{err}");
    }

    #[test]
    fn illegal_character_reports_column() {
        let err = parse_pla(".i 3\n.o 1\n1x0 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 2));
        let err = parse_pla(".i 3\n.o 2\n  100 1-\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 8));
        assert!(err.message.contains("don't-care"));
    }

    #[test]
    fn missing_headers() {
        assert!(parse_pla(".o 1\n").unwrap_err().message.contains(".i"));
        assert!(parse_pla(".i 1\n").unwrap_err().message.contains(".o"));
        let err = parse_pla(".i 2\n01 1\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn rejects_bad_directives() {
        assert_eq!(parse_pla(".i 2\n.i 2\n.o 1\n").unwrap_err().line, 2);
        assert!(parse_pla(".i 2\n.o 1\n.type fr\n").is_err());
        assert!(parse_pla(".i two\n.o 1\n").is_err());
        assert!(parse_pla(".i 2\n.o 1\n.p 3\n11 1\n").is_err());
        assert!(parse_pla(".i 2\n.o 1\n.ilb a\n").is_err());
        assert!(parse_pla(".i 0\n.o 1\n").is_err());
        assert!(parse_pla(".i 2\n.o 1\n11 1 1\n").is_err());
        assert!(parse_pla(".i 2\n.o 1\n11\n").is_err());
    }

    #[test]
    fn printed_form_reparses() {
        let spec = parse_pla(".i 2\n.o 2\n.ilb x y\n-1 10\n0- 11\n").unwrap();
        assert_eq!(parse_pla(&spec.to_string()).unwrap(), spec);
    }

    #[test]
    fn spec_shape_checks() {
        assert!(PlaSpec::new(0, 1, vec![]).is_err());
        assert!(PlaSpec::new(2, 1, vec![Cube::new("1", "1").unwrap()]).is_err());
        assert!(PlaSpec::new(2, 1, vec![]).is_ok());
    }
}
