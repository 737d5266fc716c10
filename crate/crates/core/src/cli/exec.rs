use std::fmt::Write as _;
use std::str::FromStr;

use crate::bimodule::check_swap_commuting;
use crate::commpoly::CPoly;
use crate::dbracket::{is_poisson, is_weak_poisson, jacobiator, DoubleBracket, JacVerdict};
use crate::freealg::{Gen, Names, Necklace, Rational, Word};
use crate::gradient::{classify, gradient_bracket};
use crate::repspace::{
    express_in_traces, induce, matrix_tensor_bracket, render_cpoly, render_rep, trace_bracket, RepError,
    DEFAULT_TRACE_WORD_BOUND,
};
use crate::ybe::{
    casimir, check_entry_jacobi, classical_cybe_defect, cybe_defect, entry_bracket, jordanian_r, standard_r,
    MatTensor2, MatTensor3,
};

use super::{parse_session, Command, GradientAction, SessionSpec, YbeAction, YbeSource};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Random cases added to the exhaustive part of `check swap-commuting`.
const SWAP_TRIALS: usize = 32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    /// `> command` then `key: value` lines.
    #[default]
    Plain,
    /// `key=value` lines, one block per command.
    Kv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Format::Plain),
            "kv" => Ok(Format::Kv),
            _ => Err(format!("unknown format `{s}`, use plain or kv")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Block {
    fields: Vec<(&'static str, String)>,
    failed: bool,
}

impl Block {
    fn new() -> Self {
        Block { fields: Vec::new(), failed: false }
    }

    fn put(&mut self, key: &'static str, value: impl ToString) {
        self.fields.push((key, value.to_string()));
    }
}

fn write_block(out: &mut String, format: Format, command: &str, b: &Block) {
    if !out.is_empty() {
        out.push('\n');
    }
    match format {
        Format::Plain => {
            writeln!(out, "> {command}").expect("string write");
            for (k, v) in &b.fields {
                writeln!(out, "{k}: {v}").expect("string write");
            }
        }
        Format::Kv => {
            writeln!(out, "command={command}").expect("string write");
            for (k, v) in &b.fields {
                writeln!(out, "{k}={v}").expect("string write");
            }
            writeln!(out, "status={}", if b.failed { "counterexample" } else { "ok" }).expect("string write");
        }
    }
}

/// Parses and runs a session; parse errors exit with [`EXIT_ERROR`].
pub fn run_text(text: &str, format: Format) -> Outcome {
    match parse_session(text) {
        Ok(spec) => run(&spec, format),
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_ERROR },
    }
}

/// Runs the commands in order, stopping at the first error.
pub fn run(spec: &SessionSpec, format: Format) -> Outcome {
    let names = spec.names();
    let db = match spec.double_bracket() {
        Ok(db) => db,
        Err(e) => return Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_ERROR },
    };
    let mut stdout = String::new();
    let mut code = EXIT_OK;
    for c in &spec.commands {
        let text = c.command.render(&names);
        match execute(&c.command, spec, db.as_ref(), &names) {
            Ok(block) => {
                if block.failed {
                    code = EXIT_COUNTEREXAMPLE;
                }
                write_block(&mut stdout, format, &text, &block);
            }
            Err(msg) => {
                return Outcome { stdout, stderr: format!("error: line {}: {msg}\n", c.pos.line), code: EXIT_ERROR }
            }
        }
    }
    Outcome { stdout, stderr: String::new(), code }
}

fn triple(w: &[Word; 3], names: &Names) -> String {
    format!("({}, {}, {})", names.word(&w[0]), names.word(&w[1]), names.word(&w[2]))
}

fn verdict_fields(b: &mut Block, v: &JacVerdict, names: &Names) {
    match v {
        JacVerdict::NotPoisson { witness, defect } => {
            b.put("verdict", "NotPoisson");
            b.put("witness", triple(witness, names));
            b.put("defect", names.tensor(defect));
            b.failed = true;
        }
        other => b.put("verdict", other.render(names)),
    }
}

fn render_mat3(t: &MatTensor3) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (&[i, j, k, l, p, q], c)) in t.entries().iter().enumerate() {
        let neg = c < &Rational::from_integer(0.into());
        out.push_str(match (n, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mag = if neg { -c.clone() } else { c.clone() };
        if mag != Rational::from_integer(1.into()) {
            write!(out, "{mag}*").expect("string write");
        }
        write!(out, "e[{},{}] (x) e[{},{}] (x) e[{},{}]", i + 1, j + 1, k + 1, l + 1, p + 1, q + 1)
            .expect("string write");
    }
    out
}

fn render_traces(p: &CPoly<Necklace>, names: &Names) -> String {
    render_cpoly(p, |n| format!("tr({})", names.word(n.word())))
}

fn load_r(source: &YbeSource) -> Result<MatTensor2, String> {
    Ok(match source {
        YbeSource::Standard(n) => standard_r(*n),
        YbeSource::Casimir(n) => casimir(*n),
        YbeSource::Jordanian => jordanian_r(),
        YbeSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))?;
            MatTensor2::parse(&text).map_err(|e| format!("{path}: {e}"))?
        }
    })
}

fn execute(command: &Command, spec: &SessionSpec, db: Option<&DoubleBracket>, names: &Names) -> Result<Block, String> {
    let mut b = Block::new();
    let bracket = || db.ok_or_else(|| "this command needs a bracket declaration".to_string());
    let rep_err = |e: RepError| e.to_string();
    match command {
        Command::CheckAntisym { degree } => {
            let db = bracket()?;
            b.put("degree", degree);
            match db.antisymmetry_witness(*degree) {
                None => b.put("result", "holds"),
                Some((u, v, got, expected)) => {
                    b.put("result", "fails");
                    b.put("witness", format!("({}, {})", names.word(&u), names.word(&v)));
                    b.put("value", names.tensor(&got));
                    b.put("expected", names.tensor(&expected));
                    b.failed = true;
                }
            }
        }
        Command::CheckSwapCommuting { degree } => {
            let m = spec.bimodule();
            let r = check_swap_commuting(&m, spec.ngens(), *degree, SWAP_TRIALS, 0);
            b.put("bimodule", m.describe(names));
            b.put("degree", degree);
            b.put("cases", r.cases_checked);
            match &r.witness {
                None => b.put("result", "holds"),
                Some(w) => {
                    b.put("result", "fails");
                    for (k, p) in [("a1", &w.a1), ("a2", &w.a2), ("b1", &w.b1), ("b2", &w.b2)] {
                        b.put(k, names.poly(p));
                    }
                    b.put("d", names.tensor(&w.d));
                    b.put("lhs", names.tensor(&w.lhs));
                    b.put("rhs", names.tensor(&w.rhs));
                    b.failed = true;
                }
            }
        }
        Command::CheckPoisson { degree } => {
            verdict_fields(&mut b, &is_poisson(bracket()?, *degree), names);
        }
        Command::CheckWeakPoisson { sigma, sigma_prime, degree } => {
            verdict_fields(&mut b, &is_weak_poisson(bracket()?, *sigma, *sigma_prime, *degree), names);
        }
        Command::Jacobiator([x, y, z]) => {
            b.put("value", names.tensor(&jacobiator(bracket()?, x, y, z)));
        }
        Command::RepInduce(n) => {
            let ps = induce(bracket()?, *n).map_err(rep_err)?;
            b.put("dim", n);
            b.put("gens", ps.ngens());
            b.put("kind", ps.kind());
            b.put("twisted", if ps.is_untwisted() { "no" } else { "yes" });
            let vars = ps.vars();
            let mut nonzero = 0;
            for (k, v) in vars.iter().enumerate() {
                for w in &vars[k + 1..] {
                    let p = ps.table(v, w);
                    if !p.is_zero() {
                        nonzero += 1;
                        b.put("bracket", format!("{{{}, {}}} = {}", v.render(names), w.render(names), render_rep(&p, names)));
                    }
                }
            }
            b.put("nonzero", nonzero);
        }
        Command::RepJacobi(n) => {
            let ps = induce(bracket()?, *n).map_err(rep_err)?;
            let r = ps.jacobi_sweep().map_err(rep_err)?;
            b.put("dim", r.n);
            b.put("gens", r.ngens);
            b.put("tuples_checked", r.tuples_checked);
            match &r.witness {
                None => b.put("defect", 0),
                Some(([u, v, w], d)) => {
                    b.put("witness", format!("({}, {}, {})", u.render(names), v.render(names), w.render(names)));
                    b.put("defect", render_rep(d, names));
                    b.failed = true;
                }
            }
        }
        Command::RepTraceBracket { n, a, b: c } => {
            let ps = induce(bracket()?, *n).map_err(rep_err)?;
            let value = trace_bracket(&ps, a, c);
            b.put("dim", n);
            b.put("value", render_rep(&value, names));
            match express_in_traces(&value, ps.ngens(), *n, DEFAULT_TRACE_WORD_BOUND) {
                Ok(s) => b.put("in_traces", render_traces(&s, names)),
                Err(RepError::NotInTraceRing { degree, bound }) => {
                    b.put("in_traces", format!("none with words of length <= {bound} (degree {degree})"))
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        Command::RepTensor { n, convention, a, b: c } => {
            let ps = induce(bracket()?, *n).map_err(rep_err)?;
            let t = matrix_tensor_bracket(&ps, *convention, a, c);
            b.put("dim", n);
            let mut nonzero = 0;
            for p in 0..*n {
                for q in 0..*n {
                    for r in 0..*n {
                        for s in 0..*n {
                            let e = t.get(p, q, r, s);
                            if !e.is_zero() {
                                nonzero += 1;
                                b.put(
                                    "entry",
                                    format!("E[{},{}] (x) E[{},{}] = {}", p + 1, q + 1, r + 1, s + 1, render_rep(e, names)),
                                );
                            }
                        }
                    }
                }
            }
            b.put("nonzero", nonzero);
        }
        Command::Ybe { action, source } => {
            let r = load_r(source)?;
            let n = r.dim();
            b.put("dim", n);
            match action {
                YbeAction::Show | YbeAction::Check => {
                    if *action == YbeAction::Show {
                        for (&[i, j, k, l], c) in r.entries() {
                            b.put("r", format!("{} {} {} {} {c}", i + 1, j + 1, k + 1, l + 1));
                        }
                    }
                    let d = cybe_defect(&r);
                    b.put("cybe_defect", render_mat3(&d));
                    b.put("classical_cybe_defect", render_mat3(&classical_cybe_defect(&r)));
                    if *action == YbeAction::Check {
                        b.failed = !d.is_zero();
                    } else {
                        let eb = entry_bracket(&r);
                        for a in 0..n * n {
                            for c in a + 1..n * n {
                                let (i, j, k, l) = (a / n, a % n, c / n, c % n);
                                if !eb.get(i, j, k, l).is_zero() {
                                    b.put(
                                        "bracket",
                                        format!("{{v[{},{}], v[{},{}]}} = {}", i + 1, j + 1, k + 1, l + 1, eb.render(i, j, k, l)),
                                    );
                                }
                            }
                        }
                    }
                }
                YbeAction::EntryJacobi => {
                    let rep = check_entry_jacobi(&entry_bracket(&r));
                    let vnames = Names::new(vec!["v".into()]);
                    b.put("tuples_checked", rep.tuples_checked);
                    match &rep.witness {
                        None => b.put("defect", 0),
                        Some(([u, v, w], d)) => {
                            b.put("witness", format!("({}, {}, {})", u.render(&vnames), v.render(&vnames), w.render(&vnames)));
                            b.put("defect", render_rep(d, &vnames));
                            b.failed = true;
                        }
                    }
                }
            }
        }
        Command::Gradient { action, family } => {
            let gnames = Names::indexed(3);
            match action {
                GradientAction::Classify { bound } => {
                    let c = classify(family, *bound).map_err(|e| e.to_string())?;
                    b.put("potential", gnames.poly(&c.potential));
                    verdict_fields(&mut b, &c.verdict, &gnames);
                    if c.casimir_holds() {
                        b.put("casimir", "holds");
                    } else {
                        b.put("casimir", "fails");
                        for (k, t) in c.casimir.iter().enumerate() {
                            b.put("casimir_value", format!("<f,x{}> = {}", k + 1, gnames.tensor(t)));
                        }
                    }
                }
                GradientAction::Bracket => {
                    let f = family.polynomial().map_err(|e| e.to_string())?;
                    let db = gradient_bracket(&f).map_err(|e| e.to_string())?;
                    b.put("potential", gnames.poly(&f));
                    for i in 0..3 {
                        for j in i + 1..3 {
                            b.put(
                                "bracket",
                                format!("<x{},x{}> = {}", i + 1, j + 1, gnames.tensor(&db.eval_words(
                                    &Word::letter(Gen(i as u16)),
                                    &Word::letter(Gen(j as u16)),
                                ))),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWISTED: &str = "algebra { gens: x, y }
bimodule { kind: outer ; alpha: x -> y, y -> x ; beta: x -> y, y -> x }
bracket {
  <x,x> = y (x) 1 - 1 (x) y
  <y,y> = x (x) 1 - 1 (x) x
}
check poisson
";

    #[test]
    fn twisted_session_fails_with_its_witness() {
        let o = run_text(TWISTED, Format::Plain);
        assert_eq!(o.code, EXIT_COUNTEREXAMPLE, "{}", o.stderr);
        assert!(o.stdout.contains("witness: (x, y, y)"), "{}", o.stdout);
        assert!(o.stdout.contains("defect: y (x) 1 (x) 1 - 1 (x) y (x) 1"), "{}", o.stdout);
    }

    #[test]
    fn kv_format_reports_status() {
        let o = run_text(TWISTED, Format::Kv);
        assert!(o.stdout.starts_with("command=check poisson --degree 4\nverdict=NotPoisson\n"));
        assert!(o.stdout.ends_with("status=counterexample\n"));
    }

    #[test]
    fn runtime_errors_exit_two() {
        let text = "algebra { gens: x, y }
bimodule { kind: outer ; alpha: x -> y, y -> x }
bracket { <x,y> = 1 (x) 1 }
rep jacobi 2
";
        let o = run_text(text, Format::Plain);
        assert_eq!(o.code, EXIT_ERROR);
        assert!(o.stderr.starts_with("error: line 4:"), "{}", o.stderr);
        let o = run_text("ybe check /nonexistent/r.txt\n", Format::Plain);
        assert_eq!(o.code, EXIT_ERROR);
    }

    #[test]
    fn mat3_rendering() {
        let mut r = MatTensor2::zero(2);
        r.add([0, 1, 0, 1], Rational::from_integer(1.into()));
        assert_eq!(render_mat3(&cybe_defect(&r)), "0");
        let d = cybe_defect(&standard_r(2));
        assert!(render_mat3(&d).contains("e[1,1] (x) e[1,2] (x) e[2,1]"), "{}", render_mat3(&d));
    }
}
