//! Reader and writer for the RevLib `.real` netlist format (version 2.0
//! headers, positive-control `t<k>` gates only).

use std::collections::HashMap;
use std::fmt;

use crate::circuit::{Circuit, ToffoliGate};
use crate::error::{Error, Result};

/// A parsed `.real` document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealDocument {
    pub version: String,
    pub numvars: usize,
    pub variables: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// One of `-`, `0`, `1` per line.
    pub constants: Vec<char>,
    /// One of `-`, `1` per line.
    pub garbage: Vec<char>,
    pub gates: Vec<ToffoliGate>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn unsupported(line: usize, feature: impl Into<String>) -> Error {
    Error::Unsupported {
        line,
        feature: feature.into(),
    }
}

#[derive(PartialEq)]
enum Section {
    Header,
    Body,
    Done,
}

impl RealDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut version = String::from("2.0");
        let mut numvars: Option<usize> = None;
        let mut variables: Option<Vec<String>> = None;
        let mut inputs = None;
        let mut outputs = None;
        let mut constants = None;
        let mut garbage = None;
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut gates = Vec::new();
        let mut section = Section::Header;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let head = tokens.next().expect("non-empty line has a token");
            let args: Vec<&str> = tokens.collect();

            if section == Section::Done {
                return Err(parse_err(lineno, format!("content after .end: {head}")));
            }

            if let Some(directive) = head.strip_prefix('.') {
                let need_vars = |what: &str| -> Result<usize> {
                    numvars.ok_or_else(|| parse_err(lineno, format!(".{what} before .numvars")))
                };
                match directive {
                    "version" => {
                        version = args.first().copied().unwrap_or("").to_string();
                    }
                    "numvars" => {
                        let n = match args.as_slice() {
                            [n] => n.parse::<usize>().map_err(|_| {
                                parse_err(lineno, format!("bad .numvars value {n:?}"))
                            })?,
                            _ => return Err(parse_err(lineno, ".numvars takes one value")),
                        };
                        if n == 0 || n > crate::bits::MAX_LINES {
                            return Err(parse_err(lineno, format!(".numvars {n} out of range")));
                        }
                        numvars = Some(n);
                    }
                    "variables" => {
                        let n = need_vars("variables")?;
                        if args.len() != n {
                            return Err(parse_err(
                                lineno,
                                format!(".variables lists {} names for {n} lines", args.len()),
                            ));
                        }
                        for (i, name) in args.iter().enumerate() {
                            if name.starts_with('-') {
                                return Err(parse_err(
                                    lineno,
                                    format!("bad variable name {name:?}"),
                                ));
                            }
                            if index.insert(name.to_string(), i).is_some() {
                                return Err(parse_err(
                                    lineno,
                                    format!("duplicate variable {name}"),
                                ));
                            }
                        }
                        variables = Some(args.iter().map(|s| s.to_string()).collect());
                    }
                    "inputs" | "outputs" => {
                        let n = need_vars(directive)?;
                        if args.len() != n {
                            return Err(parse_err(
                                lineno,
                                format!(".{directive} lists {} names for {n} lines", args.len()),
                            ));
                        }
                        let names = Some(args.iter().map(|s| s.to_string()).collect::<Vec<_>>());
                        if directive == "inputs" {
                            inputs = names;
                        } else {
                            outputs = names;
                        }
                    }
                    "constants" => {
                        let n = need_vars("constants")?;
                        let spec: Vec<char> = args.concat().chars().collect();
                        if spec.len() != n || spec.iter().any(|c| !matches!(c, '-' | '0' | '1')) {
                            return Err(parse_err(
                                lineno,
                                format!("bad .constants {:?}", args.concat()),
                            ));
                        }
                        constants = Some(spec);
                    }
                    "garbage" => {
                        let n = need_vars("garbage")?;
                        let spec: Vec<char> = args.concat().chars().collect();
                        if spec.len() != n || spec.iter().any(|c| !matches!(c, '-' | '1')) {
                            return Err(parse_err(
                                lineno,
                                format!("bad .garbage {:?}", args.concat()),
                            ));
                        }
                        garbage = Some(spec);
                    }
                    "begin" => {
                        if section != Section::Header {
                            return Err(parse_err(lineno, "duplicate .begin"));
                        }
                        need_vars("begin")?;
                        if variables.is_none() {
                            return Err(parse_err(lineno, ".begin before .variables"));
                        }
                        section = Section::Body;
                    }
                    "end" => {
                        if section != Section::Body {
                            return Err(parse_err(lineno, ".end without .begin"));
                        }
                        section = Section::Done;
                    }
                    "inputbus" | "outputbus" | "state" | "module" | "define" | "enddefine" => {
                        return Err(unsupported(lineno, format!(".{directive}")));
                    }
                    other => return Err(parse_err(lineno, format!("unknown directive .{other}"))),
                }
                continue;
            }

            if section != Section::Body {
                return Err(parse_err(
                    lineno,
                    format!("gate {head:?} outside .begin/.end"),
                ));
            }
            gates.push(parse_gate(lineno, head, &args, &index)?);
        }

        if section != Section::Done {
            return Err(parse_err(text.lines().count(), "missing .end"));
        }
        let numvars = numvars.expect("checked at .begin");
        let variables = variables.expect("checked at .begin");
        Ok(Self {
            version,
            numvars,
            inputs: inputs.unwrap_or_else(|| variables.clone()),
            outputs: outputs.unwrap_or_else(|| variables.clone()),
            variables,
            constants: constants.unwrap_or_else(|| vec!['-'; numvars]),
            garbage: garbage.unwrap_or_else(|| vec!['-'; numvars]),
            gates,
        })
    }

    pub fn to_circuit(&self) -> Result<Circuit> {
        Circuit::new(self.numvars, self.gates.clone())?
            .with_line_names(self.variables.clone())?
            .with_constants(
                self.constants
                    .iter()
                    .map(|c| match c {
                        '0' => Some(false),
                        '1' => Some(true),
                        _ => None,
                    })
                    .collect(),
            )?
            .with_garbage(self.garbage.iter().map(|&g| g == '1').collect())
    }

    pub fn from_circuit(c: &Circuit) -> Self {
        Self {
            version: "2.0".into(),
            numvars: c.lines(),
            variables: c.line_names().to_vec(),
            inputs: c.line_names().to_vec(),
            outputs: c.line_names().to_vec(),
            constants: c
                .constants()
                .iter()
                .map(|k| match k {
                    None => '-',
                    Some(false) => '0',
                    Some(true) => '1',
                })
                .collect(),
            garbage: c
                .garbage()
                .iter()
                .map(|&g| if g { '1' } else { '-' })
                .collect(),
            gates: c.gates().to_vec(),
        }
    }
}

fn parse_gate(
    lineno: usize,
    head: &str,
    args: &[&str],
    index: &HashMap<String, usize>,
) -> Result<ToffoliGate> {
    let (kind, size) = head.split_at(
        head.find(|c: char| c.is_ascii_digit())
            .unwrap_or(head.len()),
    );
    match kind {
        "t" => {}
        "f" | "p" | "v" | "v+" => return Err(unsupported(lineno, format!("gate kind {head}"))),
        _ => return Err(parse_err(lineno, format!("unknown gate {head:?}"))),
    }
    let expected: usize = size
        .parse()
        .map_err(|_| parse_err(lineno, format!("gate {head:?} has no size")))?;
    if expected == 0 {
        return Err(parse_err(lineno, "gate size must be at least 1"));
    }
    if args.len() != expected {
        return Err(Error::Arity {
            line: lineno,
            gate: head.to_string(),
            expected,
            found: args.len(),
        });
    }
    let mut lines = Vec::with_capacity(args.len());
    for name in args {
        if name.starts_with('-') {
            return Err(unsupported(lineno, format!("negative control {name}")));
        }
        let line = *index
            .get(*name)
            .ok_or_else(|| parse_err(lineno, format!("undeclared variable {name}")))?;
        lines.push(line);
    }
    let target = lines.pop().expect("size >= 1");
    let mut sorted = lines.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != lines.len() {
        return Err(Error::MalformedGate(format!(
            "line {lineno}: repeated control in {head}"
        )));
    }
    ToffoliGate::new(lines, target).map_err(|e| match e {
        Error::MalformedGate(m) => Error::MalformedGate(format!("line {lineno}: {m}")),
        other => other,
    })
}

impl fmt::Display for RealDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, ".version {}", self.version)?;
        writeln!(f, ".numvars {}", self.numvars)?;
        writeln!(f, ".variables {}", self.variables.join(" "))?;
        writeln!(f, ".inputs {}", self.inputs.join(" "))?;
        writeln!(f, ".outputs {}", self.outputs.join(" "))?;
        writeln!(
            f,
            ".constants {}",
            self.constants.iter().collect::<String>()
        )?;
        writeln!(f, ".garbage {}", self.garbage.iter().collect::<String>())?;
        writeln!(f, ".begin")?;
        for g in &self.gates {
            write!(f, "t{}", g.size())?;
            for &c in g.controls() {
                write!(f, " {}", self.variables[c])?;
            }
            writeln!(f, " {}", self.variables[g.target()])?;
        }
        writeln!(f, ".end")
    }
}

/// Parses a `.real` document into a circuit.
pub fn parse_real(text: &str) -> Result<Circuit> {
    RealDocument::parse(text)?.to_circuit()
}

/// Serializes a circuit as a `.real` document.
pub fn write_real(c: &Circuit) -> String {
    RealDocument::from_circuit(c).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::equivalent;
    use crate::random::random_circuit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const NOT_DOC: &str = ".numvars 1\n.variables a\n.begin\nt1 a\n.end\n";

    #[test]
    fn minimal_document() {
        let c = parse_real(NOT_DOC).unwrap();
        assert_eq!(c.lines(), 1);
        assert_eq!(c.gates(), &[ToffoliGate::not(0)]);
        assert_eq!(c.ancillary_count(), 0);
        assert_eq!(c.garbage_count(), 0);
    }

    #[test]
    fn last_operand_is_target() {
        let doc = ".version 2.0\n.numvars 3\n.variables a b c\n.begin\nt3 a b c\n.end\n";
        let c = parse_real(doc).unwrap();
        assert_eq!(c.gates(), &[ToffoliGate::new([0, 1], 2).unwrap()]);
    }

    #[test]
    fn comments_and_metadata() {
        let doc = "# header comment\n.version 2.0\n.numvars 3\n.variables x y a\n\
                   .inputs x y 0\n.outputs s c g\n.constants --0\n.garbage --1\n\
                   .begin\n  t3 x y a  # carry\n\nt2 x y\n.end\n";
        let c = parse_real(doc).unwrap();
        assert_eq!(c.gate_count(), 2);
        assert_eq!(c.constants(), &[None, None, Some(false)]);
        assert_eq!(c.garbage(), &[false, false, true]);
        assert_eq!(c.line_names(), &["x", "y", "a"]);
    }

    #[test]
    fn writer_output() {
        let c = Circuit::empty(2).unwrap();
        let text = write_real(&c);
        assert!(text.starts_with(".version 2.0\n.numvars 2\n"));
        assert!(text.contains(".begin\n.end\n"));
        let c = Circuit::new(1, vec![ToffoliGate::not(0)]).unwrap();
        let text = write_real(&c);
        let body: Vec<&str> = text
            .lines()
            .skip_while(|l| *l != ".begin")
            .skip(1)
            .take_while(|l| *l != ".end")
            .collect();
        assert_eq!(body, vec!["t1 a"]);
    }

    #[test]
    fn error_classes() {
        let hdr = ".numvars 3\n.variables a b c\n.begin\n";
        type Check = fn(&Error) -> bool;
        let cases: Vec<(String, Check)> = vec![
            (format!("{hdr}t2 -a b\n.end\n"), |e| {
                matches!(e, Error::Unsupported { line: 4, .. })
            }),
            (format!("{hdr}f3 a b c\n.end\n"), |e| {
                matches!(e, Error::Unsupported { line: 4, .. })
            }),
            (format!("{hdr}t2 a a\n.end\n"), |e| {
                matches!(e, Error::MalformedGate(_))
            }),
            (format!("{hdr}t3 a b\n.end\n"), |e| {
                matches!(
                    e,
                    Error::Arity {
                        line: 4,
                        expected: 3,
                        found: 2,
                        ..
                    }
                )
            }),
            (format!("{hdr}t2 a z\n.end\n"), |e| {
                matches!(e, Error::Parse { line: 4, .. })
            }),
            (".numvars 3\n.wat\n".to_string(), |e| {
                matches!(e, Error::Parse { line: 2, .. })
            }),
            (".numvars 1\n.variables a\n.inputbus a\n".to_string(), |e| {
                matches!(e, Error::Unsupported { line: 3, .. })
            }),
            (format!("{hdr}t1 a\n"), |e| matches!(e, Error::Parse { .. })),
            (".numvars 2\n.variables a\n".to_string(), |e| {
                matches!(e, Error::Parse { line: 2, .. })
            }),
            (format!("t1 a\n{hdr}"), |e| {
                matches!(e, Error::Parse { line: 1, .. })
            }),
        ];
        for (doc, check) in cases {
            let err = parse_real(&doc).unwrap_err();
            assert!(check(&err), "unexpected error {err:?} for\n{doc}");
        }
    }

    #[test]
    fn round_trip_is_gate_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for i in 0..100 {
            let c = random_circuit(&mut rng, 1 + i % 10, i % 17);
            let back = parse_real(&write_real(&c)).unwrap();
            assert_eq!(back.gates(), c.gates());
            assert!(equivalent(&back, &c).unwrap());
        }
    }
}
