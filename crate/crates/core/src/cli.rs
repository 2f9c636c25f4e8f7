//! Command-line front end.
//!
//! Exit codes: 0 success or valid, 1 negative result, 2 input error,
//! 3 resource cap exceeded.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::inference::{
    aristotelian_mood, check_validity, classify, enumerate_valid_with_cap, mood_and_figure, normalize_chain, Family,
    Syllogism, DEFAULT_ENUMERATION_CAP,
};
use crate::model::{ChainDiagram, TermVariable, Word};
use crate::polygraph::{critical_pairs_with_cap, normalize_word, termination_audit, RuleSet, Strategy, DEFAULT_CRITICAL_PAIR_CAP};
use crate::semantics::{audit_soundness, default_universe, find_countermodel_with_cap, DEFAULT_VARIABLE_CAP};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "syllogistic", version, about = "Chain-diagram calculus of n-term syllogisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide validity of `premises |= conclusion`.
    Check {
        /// Syllogism text, or `-` for stdin.
        input: String,
        #[command(flatten)]
        out: Output,
        /// Print the deletion steps.
        #[arg(long)]
        trace: bool,
        /// Search for a countermodel when invalid.
        #[arg(long)]
        countermodel: bool,
        #[arg(long)]
        max_universe: Option<usize>,
    },
    /// Rewrite a word to normal form.
    Normalize {
        input: String,
        #[command(flatten)]
        out: Output,
        /// Accepted for symmetry with `check`; the derivation is always printed.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Seed for the random strategy (implies it when no strategy is given).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List every valid n-term syllogism.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Match a premise chain (or word) against the reducible shapes.
    Classify {
        input: String,
        #[command(flatten)]
        out: Output,
    },
    /// Critical-pair analysis of the rewriting system.
    CriticalPairs {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value_t = DEFAULT_CRITICAL_PAIR_CAP)]
        cap: usize,
    },
    /// Search for a finite countermodel.
    Countermodel {
        input: String,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        max_universe: Option<usize>,
        /// Largest number of term-variables searched.
        #[arg(long, default_value_t = DEFAULT_VARIABLE_CAP)]
        cap: usize,
    },
    /// Termination and bounded soundness audits.
    Audit {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        max_universe: Option<usize>,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Draw the chain of a word or syllogism.
    Render {
        input: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    LeftmostInnermost,
    Rightmost,
    Random,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let mut io = Io { stdin, out: stdout, err: stderr };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(io.err, "error: {}", failure.message);
            if let Some((text, offset)) = failure.caret {
                let _ = writeln!(io.err, "  {text}\n  {}^", " ".repeat(offset));
            }
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
    caret: Option<(String, usize)>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into(), caret: None }
    }

    fn from_error(e: Error, text: &str) -> Self {
        let code = match e {
            Error::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        let caret = match &e {
            Error::Parse(p) => Some((text.to_string(), p.offset)),
            _ => None,
        };
        Failure { code, message: e.to_string(), caret }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(format!("i/o: {e}"))
    }
}

impl From<crate::ResourceError> for Failure {
    fn from(e: crate::ResourceError) -> Self {
        Failure { code: EXIT_RESOURCE, message: e.to_string(), caret: None }
    }
}

type Outcome = Result<i32, Failure>;

fn read_input(input: &str, io: &mut Io) -> Result<String, Failure> {
    if input == "-" {
        let mut text = String::new();
        io.stdin.read_to_string(&mut text)?;
        Ok(text.trim().to_string())
    } else {
        Ok(input.to_string())
    }
}

fn emit_json(io: &mut Io, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::input(e.to_string()))?;
    writeln!(io.out, "{text}")?;
    Ok(())
}

fn exit(positive: bool) -> i32 {
    if positive {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Check { input, out, trace, countermodel, max_universe } => {
            cmd_check(&read_input(&input, io)?, out.json, trace, countermodel, max_universe, io)
        }
        Command::Normalize { input, out, trace: _, strategy, seed } => {
            let strategy = match (strategy, seed) {
                (Some(StrategyArg::LeftmostInnermost), _) => Strategy::LeftmostInnermost,
                (Some(StrategyArg::Rightmost), _) => Strategy::Rightmost,
                (Some(StrategyArg::Random), seed) | (None, seed @ Some(_)) => Strategy::Random(seed.unwrap_or(0)),
                (None, None) => Strategy::default(),
            };
            cmd_normalize(&read_input(&input, io)?, out.json, strategy, io)
        }
        Command::Enumerate { n, out, cap } => cmd_enumerate(n, cap, out.json, io),
        Command::Classify { input, out } => cmd_classify(&read_input(&input, io)?, out.json, io),
        Command::CriticalPairs { n, out, cap } => cmd_critical_pairs(n, cap, out.json, io),
        Command::Countermodel { input, out, max_universe, cap } => {
            cmd_countermodel(&read_input(&input, io)?, max_universe, cap, out.json, io)
        }
        Command::Audit { n, out, max_universe, cap } => cmd_audit(n, cap, max_universe, out.json, io),
        Command::Render { input, out } => cmd_render(&read_input(&input, io)?, out.json, io),
    }
}

fn parse_syllogism(text: &str) -> Result<Syllogism, Failure> {
    Syllogism::parse(text).map_err(|e| Failure::from_error(e, text))
}

fn parse_word(text: &str) -> Result<Word, Failure> {
    text.parse::<Word>().map_err(|e| Failure::from_error(e, text))
}

fn cmd_check(
    text: &str,
    json: bool,
    trace: bool,
    countermodel: bool,
    max_universe: Option<usize>,
    io: &mut Io,
) -> Outcome {
    let s = parse_syllogism(text)?;
    let verdict = check_validity(&s);
    let mood_figure = mood_and_figure(&s);
    let model = if countermodel && !verdict.valid {
        let bound = max_universe.unwrap_or_else(|| default_universe(s.n()));
        Some((bound, find_countermodel_with_cap(&s, bound, DEFAULT_VARIABLE_CAP)?))
    } else {
        None
    };

    if json {
        let mut value = json!({
            "syllogism": s.to_string(),
            "valid": verdict.valid,
            "reason": verdict.reason,
            "premise_chain": verdict.premise_chain,
            "normal_form": verdict.normal_form,
            "conclusion_chain": verdict.conclusion_chain,
            "case": verdict.matched_case,
            "mood_figure": mood_figure,
        });
        if trace {
            value["derivation"] = json!(verdict.derivation);
        }
        if let Some((bound, model)) = &model {
            value["max_universe"] = json!(bound);
            value["countermodel"] = json!(model);
        }
        emit_json(io, &value)?;
        return Ok(exit(verdict.valid));
    }

    match &verdict.reason {
        None => writeln!(io.out, "VALID")?,
        Some(reason) => writeln!(io.out, "INVALID: {reason}")?,
    }
    writeln!(io.out, "   {}", verdict.premise_chain)?;
    writeln!(io.out, "|= {}", verdict.conclusion_chain)?;
    if !verdict.valid {
        writeln!(io.out, "normal form: {}", verdict.normal_form)?;
    }
    if verdict.matched_case.is_matched() {
        writeln!(io.out, "case {}", verdict.matched_case)?;
    }
    if let Some(mf) = mood_figure {
        writeln!(io.out, "{mf}")?;
    }
    if trace {
        writeln!(io.out, "deletions:")?;
        let mut chain = verdict.premise_chain.clone();
        for step in &verdict.derivation {
            let next = crate::inference::reduce_at(&chain, step.position).expect("recorded deletions apply");
            writeln!(io.out, "  delete {} at {}: {}", step.variable, step.position, next)?;
            chain = next;
        }
    }
    if let Some((bound, model)) = model {
        match model {
            Some(m) => writeln!(io.out, "countermodel: {m}")?,
            None => writeln!(io.out, "countermodel: none within bound (universe <= {bound})")?,
        }
    }
    Ok(exit(verdict.valid))
}

/// Renames named variables `a1..an` by chain position; canonical words are
/// kept as given.
fn canonical(word: Word) -> (Word, Vec<(TermVariable, TermVariable)>) {
    if word.is_canonical() {
        (word, Vec::new())
    } else {
        word.canonicalize()
    }
}

fn cmd_normalize(text: &str, json: bool, strategy: Strategy, io: &mut Io) -> Outcome {
    let (word, mapping) = canonical(parse_word(text)?);
    let rules = RuleSet::for_word(&word);
    let (nf, derivation) = normalize_word(&word, &rules, strategy);
    let trace = derivation.trace();
    if json {
        let mapping: Vec<_> = mapping.iter().map(|(from, to)| json!({"from": from, "to": to})).collect();
        emit_json(
            io,
            &json!({
                "input": word,
                "mapping": mapping,
                "strategy": strategy.to_string(),
                "normal_form": nf,
                "trace": trace,
            }),
        )?;
        return Ok(EXIT_OK);
    }
    if !mapping.is_empty() {
        let pairs: Vec<String> = mapping.iter().map(|(from, to)| format!("{from} -> {to}")).collect();
        writeln!(io.out, "renamed: {}", pairs.join(", "))?;
        writeln!(io.out, "word: {word}")?;
    }
    writeln!(io.out, "normal form: {nf}")?;
    writeln!(io.out, "derivation ({} steps, {strategy}):", trace.len())?;
    for (k, step) in trace.iter().enumerate() {
        let indices: Vec<String> = step.indices.iter().map(u32::to_string).collect();
        writeln!(
            io.out,
            "  {}. {}({}) at {}: {} => {}",
            k + 1,
            step.rule_family,
            indices.join(","),
            step.position,
            step.before,
            step.after
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(n: usize, cap: usize, json: bool, io: &mut Io) -> Outcome {
    if n == 0 {
        return Err(Failure::input("--n must be at least 1"));
    }
    let e = enumerate_valid_with_cap(n, cap)?;
    if json {
        emit_json(io, &e)?;
        return Ok(EXIT_OK);
    }
    for family in Family::ALL {
        let members: Vec<_> = e.family(family).collect();
        if members.is_empty() {
            continue;
        }
        writeln!(io.out, "[{:>2}] {}  ({})", family.row(), family.description(), members.len())?;
        for s in members {
            match &s.mood_figure {
                Some(mf) => writeln!(io.out, "     {} |= {}    {mf}", s.premises, s.conclusion)?,
                None => writeln!(io.out, "     {} |= {}", s.premises, s.conclusion)?,
            }
        }
    }
    writeln!(io.out, "total: {}", e.total)?;
    Ok(EXIT_OK)
}

fn cmd_classify(text: &str, json: bool, io: &mut Io) -> Outcome {
    let chain = if text.contains("->") || text.contains("<-") || !text.contains('(') {
        text.parse::<ChainDiagram>().map_err(|e| Failure::input(e.to_string()))?
    } else {
        parse_word(text)?.chain()
    };
    let case = classify(&chain);
    let (nf, _) = normalize_chain(&chain);
    let mood = aristotelian_mood(&nf);
    if json {
        emit_json(
            io,
            &json!({"chain": chain, "case": case, "normal_form": nf, "mood": mood}),
        )?;
    } else {
        writeln!(io.out, "chain: {chain}")?;
        writeln!(io.out, "case: {case}")?;
        match mood {
            Some(m) => writeln!(io.out, "normal form: {nf}  ({m})")?,
            None => writeln!(io.out, "normal form: {nf}  (not Aristotelian)")?,
        }
    }
    Ok(exit(case.is_matched()))
}

fn cmd_critical_pairs(n: usize, cap: usize, json: bool, io: &mut Io) -> Outcome {
    if n < 2 {
        return Err(Failure::input("--n must be at least 2"));
    }
    let report = critical_pairs_with_cap(n, cap)?;
    if json {
        let pairs: Vec<_> = report.families.iter().flat_map(|f| &f.pairs).collect();
        emit_json(io, &pairs)?;
        return Ok(exit(report.all_joinable()));
    }
    writeln!(
        io.out,
        "n = {n}: {} overlap families, {} critical pairs, {} joinable up to renaming",
        report.families.len(),
        report.pair_count,
        report.joinable_count
    )?;
    for family in &report.families {
        let mark = if family.joinable { "joinable" } else { "NOT JOINABLE" };
        writeln!(io.out, "  {}  [{mark}]", family.peak)?;
        for pair in family.pairs.iter().filter(|p| !p.joinable_up_to_renaming) {
            writeln!(
                io.out,
                "    {} via {}: {}\n    {} via {}: {}",
                pair.peak, pair.left.rule.family, pair.left_nf, pair.peak, pair.right.rule.family, pair.right_nf
            )?;
            if pair.joinable_only_non_monotone {
                writeln!(io.out, "    (equal only under a non-monotone renaming)")?;
            }
        }
    }
    if n >= 5 {
        writeln!(io.out, "peaks not embedding an n = 4 peak: {}", report.not_embedded.len())?;
    }
    Ok(exit(report.all_joinable()))
}

fn cmd_countermodel(text: &str, max_universe: Option<usize>, cap: usize, json: bool, io: &mut Io) -> Outcome {
    let s = parse_syllogism(text)?;
    let bound = max_universe.unwrap_or_else(|| default_universe(s.n()));
    let model = find_countermodel_with_cap(&s, bound, cap)?;
    if json {
        emit_json(io, &model)?;
    } else {
        match &model {
            Some(m) => writeln!(io.out, "{m}")?,
            None => writeln!(io.out, "none within bound (universe <= {bound})")?,
        }
    }
    Ok(exit(model.is_some()))
}

fn cmd_audit(n: usize, cap: usize, max_universe: Option<usize>, json: bool, io: &mut Io) -> Outcome {
    if n == 0 {
        return Err(Failure::input("--n must be at least 1"));
    }
    if n > cap {
        return Err(crate::ResourceError { what: "n", value: n, cap }.into());
    }
    let bound = max_universe.unwrap_or_else(|| default_universe(n));
    let termination = termination_audit(n);
    let soundness = audit_soundness(n, bound)?;
    let ok = termination.passed()
        && soundness.unsound_rules.is_empty()
        && soundness.accepted_with_countermodel.is_empty()
        && soundness.all_divergences_explained();
    if json {
        emit_json(io, &json!({"termination": termination, "soundness": soundness}))?;
        return Ok(exit(ok));
    }
    writeln!(io.out, "termination (n = {n}): {} violations", termination.violations.len())?;
    for f in &termination.families {
        writeln!(
            io.out,
            "  {:<20} {:>3} instances  dlength {:>2}  ddual {:>2}",
            f.family, f.instances, f.delta_length, f.delta_dual
        )?;
    }
    for v in &termination.violations {
        writeln!(io.out, "  violation: {v}")?;
    }
    writeln!(io.out, "soundness (universe <= {bound}):")?;
    writeln!(io.out, "  rules: {} checked, {} unsound", soundness.rules_checked, soundness.unsound_rules.len())?;
    for r in &soundness.unsound_rules {
        writeln!(io.out, "    unsound: {r}")?;
    }
    writeln!(
        io.out,
        "  accepted: {}, with countermodel: {}",
        soundness.accepted,
        soundness.accepted_with_countermodel.len()
    )?;
    writeln!(
        io.out,
        "  rejected: {}, with countermodel: {}",
        soundness.rejected, soundness.rejected_with_countermodel
    )?;
    for d in &soundness.divergences {
        let class = serde_json::to_value(d.class).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        writeln!(io.out, "    no countermodel [{class}]: {}", d.syllogism)?;
    }
    Ok(exit(ok))
}

fn cmd_render(text: &str, json: bool, io: &mut Io) -> Outcome {
    if text.contains("|=") {
        let s = parse_syllogism(text)?;
        let (premises, conclusion) = (s.premises().chain(), s.conclusion().chain());
        if json {
            emit_json(io, &json!({"premise_chain": premises, "conclusion_chain": conclusion}))?;
        } else {
            writeln!(io.out, "   {premises}\n|= {conclusion}")?;
        }
    } else {
        let chain = parse_word(text)?.chain();
        if json {
            emit_json(io, &json!({"chain": chain}))?;
        } else {
            writeln!(io.out, "{chain}")?;
        }
    }
    Ok(EXIT_OK)
}
