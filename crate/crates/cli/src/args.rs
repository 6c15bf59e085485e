//! Command-line argument parsing.

use std::fmt;

/// How results are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A parsed invocation: one subcommand, its positional arguments and the
/// flags that apply to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandRequest {
    pub subcommand: String,
    pub positional: Vec<String>,
    pub cap: Option<u64>,
    pub emit: Option<String>,
    pub field: Option<String>,
    pub range: Option<(i64, i64)>,
    pub jobs: Option<usize>,
    pub format: Format,
    pub help: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn number<T: std::str::FromStr>(flag: &str, v: &str) -> Result<T, UsageError> {
    v.parse()
        .map_err(|_| usage(format!("{flag} expects a number, got {v:?}")))
}

/// Parses `a..b` with optional signs.
pub fn parse_range(v: &str) -> Result<(i64, i64), UsageError> {
    let (a, b) = v
        .split_once("..")
        .ok_or_else(|| usage(format!("--range expects a..b, got {v:?}")))?;
    let (a, b) = (number("--range", a.trim())?, number("--range", b.trim())?);
    if a > b {
        return Err(usage(format!("--range {v} is empty")));
    }
    Ok((a, b))
}

/// Arguments starting with `--` are flags; anything else, including
/// polynomials such as `-x^2+1`, is positional.
pub fn parse_args(args: &[String]) -> Result<CommandRequest, UsageError> {
    let mut req = CommandRequest {
        subcommand: String::new(),
        positional: Vec::new(),
        cap: None,
        emit: None,
        field: None,
        range: None,
        jobs: None,
        format: Format::Text,
        help: false,
    };
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "-h" || a == "--help" {
            req.help = true;
            continue;
        }
        let Some(flag) = a.strip_prefix("--") else {
            if req.subcommand.is_empty() {
                req.subcommand = a.clone();
            } else {
                req.positional.push(a.clone());
            }
            continue;
        };
        let (name, inline) = match flag.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (flag, None),
        };
        let mut value = || {
            inline
                .clone()
                .or_else(|| it.next().cloned())
                .ok_or_else(|| usage(format!("--{name} needs a value")))
        };
        match name {
            "cap" => req.cap = Some(number("--cap", &value()?)?),
            "emit" => req.emit = Some(value()?),
            "in" => req.field = Some(value()?),
            "range" => req.range = Some(parse_range(&value()?)?),
            "jobs" => {
                let n: usize = number("--jobs", &value()?)?;
                if n == 0 {
                    return Err(usage("--jobs must be at least 1"));
                }
                req.jobs = Some(n);
            }
            "format" => {
                req.format = match value()?.as_str() {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    other => return Err(usage(format!("unknown format {other:?}"))),
                }
            }
            "json" => req.format = Format::Json,
            _ => return Err(usage(format!("unknown flag --{name}"))),
        }
    }
    Ok(req)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(v: &[&str]) -> Result<CommandRequest, UsageError> {
        parse_args(&v.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    }

    #[test]
    fn flags_and_positionals() {
        let r = parse(&["member", "x^2-2", "--in", "x^4-2"]).unwrap();
        assert_eq!(r.subcommand, "member");
        assert_eq!(r.positional, ["x^2-2"]);
        assert_eq!(r.field.as_deref(), Some("x^4-2"));
        let r = parse(&["specialize", "y^2-x", "--range=-3..5", "--jobs", "4"]).unwrap();
        assert_eq!(r.range, Some((-3, 5)));
        assert_eq!(r.jobs, Some(4));
        let r = parse(&["sturm", "-x^2+1", "--format", "json"]).unwrap();
        assert_eq!(r.positional, ["-x^2+1"]);
        assert_eq!(r.format, Format::Json);
    }

    #[test]
    fn bad_flags() {
        assert!(parse(&["factor", "--cap"]).is_err());
        assert!(parse(&["factor", "--cap", "x"]).is_err());
        assert!(parse(&["factor", "--bogus"]).is_err());
        assert!(parse(&["specialize", "--range", "5..1"]).is_err());
        assert!(parse(&["specialize", "--range", "5"]).is_err());
        assert!(parse(&["specialize", "--jobs", "0"]).is_err());
        assert!(parse(&["x", "--format", "xml"]).is_err());
    }
}
