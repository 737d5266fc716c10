use std::collections::BTreeMap;

use crate::dbracket::DEFAULT_DEGREE_BOUND;
use crate::freealg::{NCPoly, Names, Rational, Transposition};
use crate::gradient::Family;
use crate::repspace::TensorConvention;

use super::expr::parse_poly;
use super::{ParseError, SessionSpec};

/// Word-length bound for `check antisym` and `check swap-commuting`.
pub const DEFAULT_CHECK_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YbeAction {
    /// Print `r`, both CYBE defects and the entry brackets.
    Show,
    /// Fail when the CYBE defect is nonzero.
    Check,
    /// Fail when the entry brackets violate Jacobi.
    EntryJacobi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YbeSource {
    Standard(usize),
    Casimir(usize),
    Jordanian,
    /// A sparse listing, see [`crate::ybe::MatTensor2::parse`].
    File(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradientAction {
    Classify { bound: usize },
    Bracket,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    CheckAntisym { degree: usize },
    CheckSwapCommuting { degree: usize },
    CheckPoisson { degree: usize },
    CheckWeakPoisson { sigma: Transposition, sigma_prime: Transposition, degree: usize },
    Jacobiator([NCPoly; 3]),
    RepInduce(usize),
    RepJacobi(usize),
    RepTraceBracket { n: usize, a: NCPoly, b: NCPoly },
    RepTensor { n: usize, convention: TensorConvention, a: NCPoly, b: NCPoly },
    Ybe { action: YbeAction, source: YbeSource },
    Gradient { action: GradientAction, family: Family },
}

/// Polynomials as whitespace-free arguments.
fn arg(p: &NCPoly, names: &Names) -> String {
    names.poly(p).replace(' ', "")
}

fn convention_name(c: TensorConvention) -> &'static str {
    match c {
        TensorConvention::Vdb => "vdb",
        TensorConvention::Tensor => "tensor",
    }
}

impl YbeSource {
    fn render(&self) -> String {
        match self {
            YbeSource::Standard(n) => format!("standard {n}"),
            YbeSource::Casimir(n) => format!("casimir {n}"),
            YbeSource::Jordanian => "jordanian".into(),
            YbeSource::File(p) => format!("file {p}"),
        }
    }
}

impl Command {
    /// Canonical text, parsed back by [`parse_command`].
    pub fn render(&self, names: &Names) -> String {
        match self {
            Command::CheckAntisym { degree } => format!("check antisym --degree {degree}"),
            Command::CheckSwapCommuting { degree } => format!("check swap-commuting --degree {degree}"),
            Command::CheckPoisson { degree } => format!("check poisson --degree {degree}"),
            Command::CheckWeakPoisson { sigma, sigma_prime, degree } => {
                format!("check weak-poisson --sigma {sigma} --sigma-prime {sigma_prime} --degree {degree}")
            }
            Command::Jacobiator([a, b, c]) => {
                format!("jacobiator {} {} {}", arg(a, names), arg(b, names), arg(c, names))
            }
            Command::RepInduce(n) => format!("rep induce {n}"),
            Command::RepJacobi(n) => format!("rep jacobi {n}"),
            Command::RepTraceBracket { n, a, b } => {
                format!("rep trace-bracket {n} {} {}", arg(a, names), arg(b, names))
            }
            Command::RepTensor { n, convention, a, b } => format!(
                "rep tensor {n} --convention {} {} {}",
                convention_name(*convention),
                arg(a, names),
                arg(b, names)
            ),
            Command::Ybe { action, source } => {
                let a = match action {
                    YbeAction::Show => "show",
                    YbeAction::Check => "check",
                    YbeAction::EntryJacobi => "entry-jacobi",
                };
                format!("ybe {a} {}", source.render())
            }
            Command::Gradient { action, family } => {
                let target = match family {
                    Family::Monomial(j, d) => format!("--family monomial --gen {} --degree {d}", j + 1),
                    Family::SumPower(d) => format!("--family sum-power --degree {d}"),
                    Family::Linear(z) => format!(
                        "--family linear --zeta {}",
                        z.iter().map(Rational::to_string).collect::<Vec<_>>().join(",")
                    ),
                    Family::Custom(f) => format!("--poly {}", arg(f, &Names::indexed(3))),
                };
                match action {
                    GradientAction::Classify { bound } => format!("gradient classify {target} --bound {bound}"),
                    GradientAction::Bracket => format!("gradient bracket {target}"),
                }
            }
        }
    }

    /// Commands that evaluate the declared bracket.
    pub fn needs_bracket(&self) -> bool {
        !matches!(self, Command::CheckSwapCommuting { .. } | Command::Ybe { .. } | Command::Gradient { .. })
    }
}

/// A whitespace-separated word and its one-based column.
#[derive(Clone, Copy)]
struct W<'a> {
    col: usize,
    text: &'a str,
}

fn split_words(text: &str, col0: usize) -> Vec<W<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(W { col: col0 + text[..s].chars().count(), text: &text[s..i] });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

struct Args<'a> {
    line: usize,
    end_col: usize,
    /// Words after the command name.
    pos: Vec<W<'a>>,
    flags: BTreeMap<&'a str, W<'a>>,
    name: String,
}

impl<'a> Args<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, col, msg)
    }

    /// Splits `--flag value` pairs from positionals; only `allowed` flags are accepted.
    fn new(line: usize, end_col: usize, name: String, words: &[W<'a>], allowed: &[&str]) -> Result<Self, ParseError> {
        let mut a = Args { line, end_col, pos: Vec::new(), flags: BTreeMap::new(), name };
        let mut it = words.iter();
        while let Some(w) = it.next() {
            if let Some(flag) = w.text.strip_prefix("--") {
                if !allowed.contains(&flag) {
                    return Err(a.err(w.col, format!("`{}` does not take `--{flag}`", a.name)));
                }
                let v = it.next().ok_or_else(|| a.err(a.end_col, format!("`--{flag}` needs a value")))?;
                if a.flags.insert(flag, *v).is_some() {
                    return Err(a.err(w.col, format!("`--{flag}` given twice")));
                }
            } else {
                a.pos.push(*w);
            }
        }
        Ok(a)
    }

    fn positionals(&self, n: usize, what: &str) -> Result<&[W<'a>], ParseError> {
        match self.pos.len() {
            k if k == n => Ok(&self.pos),
            k if k < n => Err(self.err(self.end_col, format!("`{}` expects {what}", self.name))),
            _ => Err(self.err(self.pos[n].col, format!("unexpected argument `{}`", self.pos[n].text))),
        }
    }

    fn number(&self, w: W, what: &str, min: usize) -> Result<usize, ParseError> {
        w.text
            .parse::<usize>()
            .ok()
            .filter(|&v| v >= min)
            .ok_or_else(|| self.err(w.col, format!("{what} must be an integer at least {min}, got `{}`", w.text)))
    }

    fn flag_number(&self, flag: &str, default: Option<usize>, min: usize) -> Result<usize, ParseError> {
        match (self.flags.get(flag), default) {
            (Some(w), _) => self.number(*w, &format!("`--{flag}`"), min),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(self.err(self.end_col, format!("`{}` needs `--{flag}`", self.name))),
        }
    }

    fn transposition(&self, flag: &str) -> Result<Transposition, ParseError> {
        let w = self.flags.get(flag).ok_or_else(|| self.err(self.end_col, format!("`{}` needs `--{flag}`", self.name)))?;
        w.text
            .parse()
            .map_err(|_| self.err(w.col, format!("`--{flag}` must be one of 12, 13, 23, got `{}`", w.text)))
    }

    fn poly(&self, w: W, names: &Names) -> Result<NCPoly, ParseError> {
        parse_poly(w.text, names, self.line, w.col)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    s.parse::<Rational>().ok()
}

/// Parses one command line. `col` is the column of its first character.
pub fn parse_command(text: &str, line: usize, col: usize, spec: &SessionSpec) -> Result<Command, ParseError> {
    let words = split_words(text, col);
    let end_col = col + text.chars().count();
    let head = |k: usize| words.get(k).map(|w| w.text);
    let names = spec.names();
    let (sub, rest_from) = match head(0) {
        Some("check" | "rep" | "ybe" | "gradient") => match head(1) {
            Some(s) => (format!("{} {s}", words[0].text), 2),
            None => return Err(ParseError::new(line, end_col, format!("`{}` needs a subcommand", words[0].text))),
        },
        Some(s) => (s.to_string(), 1),
        None => return Err(ParseError::new(line, col, "empty command")),
    };
    let rest = &words[rest_from..];
    let args = |allowed: &[&str]| Args::new(line, end_col, sub.clone(), rest, allowed);
    let command = match sub.as_str() {
        "check antisym" => {
            let a = args(&["degree"])?;
            a.positionals(0, "no arguments")?;
            Command::CheckAntisym { degree: a.flag_number("degree", Some(DEFAULT_CHECK_DEGREE), 1)? }
        }
        "check swap-commuting" => {
            let a = args(&["degree"])?;
            a.positionals(0, "no arguments")?;
            Command::CheckSwapCommuting { degree: a.flag_number("degree", Some(DEFAULT_CHECK_DEGREE), 0)? }
        }
        "check poisson" => {
            let a = args(&["degree"])?;
            a.positionals(0, "no arguments")?;
            Command::CheckPoisson { degree: a.flag_number("degree", Some(DEFAULT_DEGREE_BOUND), 1)? }
        }
        "check weak-poisson" => {
            let a = args(&["sigma", "sigma-prime", "degree"])?;
            a.positionals(0, "no arguments")?;
            Command::CheckWeakPoisson {
                sigma: a.transposition("sigma")?,
                sigma_prime: a.transposition("sigma-prime")?,
                degree: a.flag_number("degree", Some(DEFAULT_DEGREE_BOUND), 1)?,
            }
        }
        "jacobiator" => {
            let a = args(&[])?;
            let p = a.positionals(3, "three polynomials")?;
            Command::Jacobiator([a.poly(p[0], &names)?, a.poly(p[1], &names)?, a.poly(p[2], &names)?])
        }
        "rep induce" | "rep jacobi" => {
            let a = args(&[])?;
            let p = a.positionals(1, "a matrix size")?;
            let n = a.number(p[0], "the matrix size", 1)?;
            if sub == "rep induce" {
                Command::RepInduce(n)
            } else {
                Command::RepJacobi(n)
            }
        }
        "rep trace-bracket" => {
            let a = args(&[])?;
            let p = a.positionals(3, "a matrix size and two polynomials")?;
            Command::RepTraceBracket {
                n: a.number(p[0], "the matrix size", 1)?,
                a: a.poly(p[1], &names)?,
                b: a.poly(p[2], &names)?,
            }
        }
        "rep tensor" => {
            let a = args(&["convention"])?;
            let p = a.positionals(3, "a matrix size and two polynomials")?;
            let convention = match a.flags.get("convention") {
                None => TensorConvention::Vdb,
                Some(w) if w.text == "vdb" => TensorConvention::Vdb,
                Some(w) if w.text == "tensor" => TensorConvention::Tensor,
                Some(w) => return Err(a.err(w.col, format!("unknown convention `{}`, use vdb or tensor", w.text))),
            };
            Command::RepTensor {
                n: a.number(p[0], "the matrix size", 1)?,
                convention,
                a: a.poly(p[1], &names)?,
                b: a.poly(p[2], &names)?,
            }
        }
        "ybe standard" | "ybe casimir" | "ybe jordanian" => {
            // Shorthand for `ybe show <source>`.
            let source = ybe_source(&words[1..], line, end_col)?;
            Command::Ybe { action: YbeAction::Show, source }
        }
        "ybe show" | "ybe check" | "ybe entry-jacobi" => {
            let action = match sub.as_str() {
                "ybe show" => YbeAction::Show,
                "ybe check" => YbeAction::Check,
                _ => YbeAction::EntryJacobi,
            };
            Command::Ybe { action, source: ybe_source(rest, line, end_col)? }
        }
        "gradient classify" | "gradient bracket" => {
            let a = args(&["family", "gen", "degree", "zeta", "poly", "bound"])?;
            a.positionals(0, "only flags")?;
            let family = gradient_family(&a)?;
            let action = if sub == "gradient classify" {
                GradientAction::Classify { bound: a.flag_number("bound", Some(DEFAULT_DEGREE_BOUND), 1)? }
            } else {
                if let Some(w) = a.flags.get("bound") {
                    return Err(a.err(w.col, "`gradient bracket` does not take `--bound`"));
                }
                GradientAction::Bracket
            };
            Command::Gradient { action, family }
        }
        _ => {
            let w = if rest_from == 2 { words[1] } else { words[0] };
            return Err(ParseError::new(line, w.col, format!("unknown command `{sub}`")));
        }
    };
    if command.needs_bracket() && spec.bracket.is_none() {
        return Err(ParseError::new(line, col, format!("`{sub}` needs a bracket declaration before it")));
    }
    if matches!(command, Command::CheckSwapCommuting { .. }) && spec.gens.is_none() {
        return Err(ParseError::new(line, col, "`check swap-commuting` needs an algebra declaration before it"));
    }
    Ok(command)
}

fn ybe_source(words: &[W], line: usize, end_col: usize) -> Result<YbeSource, ParseError> {
    let err = |col, msg: String| ParseError::new(line, col, msg);
    let Some(first) = words.first() else {
        return Err(err(end_col, "expected `standard N`, `casimir N`, `jordanian` or a file".into()));
    };
    let size = |k: usize| -> Result<usize, ParseError> {
        let w = words.get(k).ok_or_else(|| err(end_col, format!("`{}` needs a size", first.text)))?;
        w.text
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| err(w.col, format!("size must be an integer at least 1, got `{}`", w.text)))
    };
    let (source, used) = match first.text {
        "standard" => (YbeSource::Standard(size(1)?), 2),
        "casimir" => (YbeSource::Casimir(size(1)?), 2),
        "jordanian" => (YbeSource::Jordanian, 1),
        "file" => match words.get(1) {
            Some(w) => (YbeSource::File(w.text.to_string()), 2),
            None => return Err(err(end_col, "`file` needs a path".into())),
        },
        path => (YbeSource::File(path.to_string()), 1),
    };
    if let Some(extra) = words.get(used) {
        return Err(err(extra.col, format!("unexpected argument `{}`", extra.text)));
    }
    Ok(source)
}

fn gradient_family(a: &Args) -> Result<Family, ParseError> {
    let reject = |flags: &[&str]| -> Result<(), ParseError> {
        for f in flags {
            if let Some(w) = a.flags.get(f) {
                return Err(a.err(w.col, format!("`--{f}` does not apply here")));
            }
        }
        Ok(())
    };
    if let Some(w) = a.flags.get("poly") {
        reject(&["family", "gen", "degree", "zeta"])?;
        return Ok(Family::Custom(parse_poly(w.text, &Names::indexed(3), a.line, w.col)?));
    }
    let fam = a.flags.get("family").ok_or_else(|| a.err(a.end_col, format!("`{}` needs `--family` or `--poly`", a.name)))?;
    let degree = |a: &Args| -> Result<u32, ParseError> {
        let d = a.flag_number("degree", None, 0)?;
        u32::try_from(d).map_err(|_| a.err(a.end_col, "degree too large"))
    };
    match fam.text {
        "monomial" => {
            reject(&["zeta"])?;
            let j = a.flag_number("gen", Some(1), 1)?;
            if j > 3 {
                return Err(a.err(a.flags["gen"].col, "`--gen` must be 1, 2 or 3"));
            }
            Ok(Family::Monomial(j - 1, degree(a)?))
        }
        "sum-power" => {
            reject(&["gen", "zeta"])?;
            Ok(Family::SumPower(degree(a)?))
        }
        "linear" => {
            reject(&["gen", "degree"])?;
            let w = a.flags.get("zeta").ok_or_else(|| a.err(a.end_col, "`--family linear` needs `--zeta z0,z1,z2,z3`"))?;
            let z: Vec<Rational> = w
                .text
                .split(',')
                .map(parse_rational)
                .collect::<Option<_>>()
                .filter(|z: &Vec<Rational>| z.len() == 4)
                .ok_or_else(|| a.err(w.col, format!("`--zeta` needs four rationals separated by commas, got `{}`", w.text)))?;
            Ok(Family::Linear(z.try_into().expect("four entries")))
        }
        other => Err(a.err(fam.col, format!("unknown family `{other}`, use monomial, sum-power or linear"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_session;
    use crate::freealg::{frac, gen, q};

    fn spec() -> SessionSpec {
        parse_session("algebra { gens: x, y }\nbracket { <x,y> = 1 (x) 1 }\n").unwrap()
    }

    fn cmd(s: &str) -> Result<Command, ParseError> {
        parse_command(s, 7, 1, &spec())
    }

    #[test]
    fn check_commands() {
        assert_eq!(cmd("check poisson").unwrap(), Command::CheckPoisson { degree: DEFAULT_DEGREE_BOUND });
        assert_eq!(cmd("check poisson --degree 2").unwrap(), Command::CheckPoisson { degree: 2 });
        assert_eq!(
            cmd("check weak-poisson --sigma 12 --sigma-prime 13").unwrap(),
            Command::CheckWeakPoisson {
                sigma: Transposition::T12,
                sigma_prime: Transposition::T13,
                degree: DEFAULT_DEGREE_BOUND
            }
        );
        assert!(cmd("check weak-poisson --sigma 12").unwrap_err().msg.contains("--sigma-prime"));
        assert!(cmd("check weak-poisson --sigma 123 --sigma-prime 12").is_err());
        assert!(cmd("check poisson --degree").unwrap_err().msg.contains("needs a value"));
        assert!(cmd("check poisson --depth 3").is_err());
        assert!(cmd("check poisson extra").is_err());
        assert!(cmd("check").is_err());
    }

    #[test]
    fn polynomial_arguments() {
        let c = cmd("jacobiator x x y^2").unwrap();
        assert_eq!(c, Command::Jacobiator([gen(0), gen(0), &gen(1) * &gen(1)]));
        let e = cmd("jacobiator x x z").unwrap_err();
        assert_eq!((e.line, e.col), (7, 16));
        assert!(cmd("jacobiator x y").is_err());
        assert_eq!(
            cmd("rep tensor 2 --convention tensor x y").unwrap(),
            Command::RepTensor { n: 2, convention: TensorConvention::Tensor, a: gen(0), b: gen(1) }
        );
        assert!(cmd("rep induce 0").is_err());
    }

    #[test]
    fn ybe_and_gradient() {
        assert_eq!(
            cmd("ybe standard 3").unwrap(),
            Command::Ybe { action: YbeAction::Show, source: YbeSource::Standard(3) }
        );
        assert_eq!(
            cmd("ybe check r.txt").unwrap(),
            Command::Ybe { action: YbeAction::Check, source: YbeSource::File("r.txt".into()) }
        );
        assert_eq!(
            cmd("gradient classify --family sum-power --degree 4").unwrap(),
            Command::Gradient { action: GradientAction::Classify { bound: DEFAULT_DEGREE_BOUND }, family: Family::SumPower(4) }
        );
        assert_eq!(
            cmd("gradient bracket --family linear --zeta 0,1,-1/2,3").unwrap(),
            Command::Gradient { action: GradientAction::Bracket, family: Family::Linear([q(0), q(1), frac(-1, 2), q(3)]) }
        );
        assert!(cmd("gradient classify --family monomial --gen 4 --degree 2").is_err());
        assert!(cmd("gradient classify --family sum-power").is_err());
        assert!(cmd("gradient classify --poly x1*x2 --degree 3").is_err());
    }

    #[test]
    fn bracket_commands_need_a_bracket() {
        let empty = SessionSpec::default();
        assert!(parse_command("check poisson", 1, 1, &empty).is_err());
        assert!(parse_command("ybe standard 2", 1, 1, &empty).is_ok());
    }

    #[test]
    fn rendering_is_canonical() {
        let names = spec().names();
        for line in [
            "check antisym --degree 3",
            "check weak-poisson --sigma 12 --sigma-prime 13 --degree 4",
            "jacobiator x*y-1/2 x y^2",
            "rep trace-bracket 2 x*y y",
            "rep tensor 3 --convention vdb x y",
            "ybe entry-jacobi file r.txt",
            "ybe check casimir 2",
            "gradient classify --family monomial --gen 2 --degree 3 --bound 3",
            "gradient bracket --poly x1*x2+x2*x1",
        ] {
            let c = cmd(line).unwrap();
            let again = cmd(&c.render(&names)).unwrap();
            assert_eq!(again, c, "{line}");
        }
    }
}
