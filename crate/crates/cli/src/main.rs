use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use shuffle_core::algebraic::{alg_guess_minpoly, dfao_from_kernel, kernel_closure, Dfao, KernelBasis, DEFAULT_MAX_DIM};
use shuffle_core::json::{
    self, DfaoJson, KernelJson, LinRepJson, NcSeriesJson, RankJson, RationalJson, RelationJson, SeriesJson,
};
use shuffle_core::noncomm::{
    linrep_expand, nc_closure_rank, nc_exp_shriek, nc_log_shriek, nc_shuffle, rho, RankEstimate,
};
use shuffle_core::rational::{exp_rational, log_rational, rat_expand, rat_norm, rat_recognize, DEFAULT_CAP};
use shuffle_core::text::{
    parse_nc, parse_rational, parse_series, render_coeff_list, render_elem, render_nc, render_rational,
    render_relation, render_series,
};
use shuffle_core::{AlgebraicRelation, Error, Field, NcSeries, RationalFunction, Series, Word};

/// Shuffle algebra of truncated power series over finite fields.
///
/// Payloads are polynomial or rational expressions in `x` (and `t` for extension
/// fields), bare coefficient lists, or JSON objects. A missing payload is read from
/// `--in FILE` or standard input.
#[derive(Parser, Debug)]
#[command(name = "shuffle", version)]
struct Cli {
    /// Field: `p`, `p^e`, or `p^e:c0,c1,...` with an explicit modulus.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Number of coefficients used when expanding expressions.
    #[arg(long, global = true, default_value_t = 32, value_parser = positive)]
    order: usize,
    #[arg(long, global = true, value_parser = positive)]
    budget: Option<usize>,
    /// Largest norm tried by exp-rat.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = positive)]
    cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM, value_parser = positive)]
    max_dim: usize,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Alphabet size for non-commutative text input.
    #[arg(long, global = true, default_value_t = 2, value_parser = positive)]
    letters: usize,
    /// Word-length truncation for non-commutative text input.
    #[arg(long, global = true, default_value_t = 6)]
    degree: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug, Clone)]
enum Cmd {
    Shuffle { a: Option<String>, b: Option<String> },
    Tau { a: Option<String> },
    /// Coefficients at `k + n p^f`.
    Section { a: String, k: usize, f: u32 },
    Frobenius { a: Option<String> },
    /// n-fold shuffle power.
    Pow { a: String, n: u64 },
    Inv { a: Option<String> },
    Exp { a: Option<String> },
    Log { b: Option<String> },
    Mu { a: Option<String> },
    RatExpand { r: String, #[arg(value_parser = positive)] n: usize },
    RatRecognize { a: String, #[arg(value_parser = positive)] b: Option<usize> },
    /// max(1 + deg f, deg g) for a reduced f/g.
    RatNorm { r: Option<String> },
    ExpRat { r: Option<String> },
    LogRat { r: Option<String> },
    Kernel { a: Option<String> },
    Dfao { a: Option<String> },
    Minpoly { a: String, dx: usize, #[arg(value_parser = positive)] dy: usize },
    /// Coefficients of exp_!(x/(1-x)).
    Bell { #[arg(value_parser = positive)] n: usize },
    NcShuffle { a: Option<String>, b: Option<String> },
    /// rho(t)A for a word t such as `1,2`.
    NcRho { t: String, a: Option<String> },
    NcRank { a: String, l: usize },
    NcExp { a: Option<String> },
    NcLog { b: Option<String> },
    /// Expand a JSON linear representation to `--degree`.
    NcLinrepExpand { rep: Option<String> },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Ctx {
    field: Field,
    cli: Cli,
    stdin_used: bool,
}

impl Ctx {
    fn payload(&mut self, arg: Option<&str>) -> Outcome<String> {
        if let Some(a) = arg.filter(|a| *a != "-") {
            return Ok(a.to_string());
        }
        if self.stdin_used {
            return Err(Failure::Usage("only one payload may come from --in or standard input".into()));
        }
        self.stdin_used = true;
        let text = match (&self.cli.input, arg) {
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
                s
            }
        };
        Ok(text.trim().to_string())
    }

    fn series(&mut self, arg: Option<&str>) -> Outcome<Series> {
        let s = self.payload(arg)?;
        if s.starts_with('{') {
            return Ok(json::from_str::<SeriesJson>(&s)?.to_series(Some(&self.field))?);
        }
        Ok(parse_series(&self.field, &s, self.cli.order)?)
    }

    fn rational(&mut self, arg: Option<&str>) -> Outcome<RationalFunction> {
        let s = self.payload(arg)?;
        if s.starts_with('{') {
            return Ok(json::from_str::<RationalJson>(&s)?.to_rational(Some(&self.field))?);
        }
        Ok(parse_rational(&self.field, &s)?)
    }

    fn nc(&mut self, arg: Option<&str>) -> Outcome<NcSeries> {
        let s = self.payload(arg)?;
        if s.starts_with('{') {
            return Ok(json::from_str::<NcSeriesJson>(&s)?.to_nc(Some(&self.field))?);
        }
        Ok(parse_nc(&self.field, self.cli.letters, self.cli.degree, &s)?)
    }

    fn emit_series(json: bool, s: &Series) -> String {
        if json {
            json::to_string(&SeriesJson::from_series(s))
        } else {
            render_series(s)
        }
    }

    fn emit_coeffs(json: bool, s: &Series) -> String {
        if json {
            json::to_string(&SeriesJson::from_series(s))
        } else {
            render_coeff_list(s)
        }
    }

    fn emit_rational(json: bool, r: &RationalFunction) -> String {
        if json {
            json::to_string(&RationalJson::from_rational(r))
        } else {
            render_rational(r)
        }
    }

    fn emit_nc(json: bool, s: &NcSeries) -> String {
        if json {
            json::to_string(&NcSeriesJson::from_nc(s))
        } else {
            render_nc(s)
        }
    }
}

fn parse_word(t: &str, letters: usize) -> Outcome<Word> {
    let inner = t.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<usize>() {
            Ok(i) if (1..=letters).contains(&i) => Ok(i - 1),
            _ => Err(Failure::Usage(format!("letter {s:?} not in 1..={letters}"))),
        })
        .collect()
}

fn render_kernel(k: &KernelBasis) -> String {
    let f = k.field();
    let mut out = format!("dim {}, verified to order {}", k.dim(), k.verified_order);
    for (j, row) in k.sections.iter().enumerate() {
        let parts: Vec<String> = row
            .iter()
            .map(|c| c.iter().map(|&x| render_elem(f, x)).collect::<Vec<_>>().join(" "))
            .collect();
        out.push_str(&format!("\ne{j}: [{}]", parts.join("] [")));
    }
    out
}

fn render_dfao(d: &Dfao) -> String {
    let mut out = format!("states {}, base {}, initial 0, digits least significant first", d.states(), d.base());
    for (s, next) in d.delta.iter().enumerate() {
        let next: Vec<String> = next.iter().map(usize::to_string).collect();
        out.push_str(&format!("\n{s}: out {}, next {}", render_elem(&d.field, d.output[s]), next.join(" ")));
    }
    out
}

fn render_rank(r: &RankEstimate) -> String {
    format!("rank {} (L = {}, words up to length {})", r.rank, r.l, r.column_length)
}

fn relation(ctx: &Ctx, r: Option<AlgebraicRelation>, dx: usize, dy: usize) -> Outcome<String> {
    let r = r.ok_or_else(|| Failure::Domain(format!("no relation with deg_x <= {dx}, deg_y <= {dy}")))?;
    Ok(if ctx.cli.json { json::to_string(&RelationJson::from_relation(&r)) } else { render_relation(&r) })
}

fn run(cli: Cli) -> Outcome<String> {
    let spec = cli.field.clone().ok_or_else(|| Failure::Usage("--field is required".into()))?;
    let field = Field::parse(&spec)?;
    let cmd = cli.cmd.clone();
    let js = cli.json;
    let mut ctx = Ctx { field, cli, stdin_used: false };
    let f = ctx.field.clone();
    let out = match cmd {
        Cmd::Shuffle { a, b } => {
            let a = ctx.series(a.as_deref())?;
            let b = ctx.series(b.as_deref())?;
            Ctx::emit_series(js, &a.shuffle(&b)?)
        }
        Cmd::Tau { a } => Ctx::emit_series(js, &ctx.series(a.as_deref())?.tau()?),
        Cmd::Section { a, k, f } => Ctx::emit_series(js, &ctx.series(Some(&a))?.section(k, f)?),
        Cmd::Frobenius { a } => Ctx::emit_series(js, &ctx.series(a.as_deref())?.frobenius_subst()),
        Cmd::Pow { a, n } => Ctx::emit_series(js, &ctx.series(Some(&a))?.shuffle_pow(n)),
        Cmd::Inv { a } => Ctx::emit_series(js, &ctx.series(a.as_deref())?.shuffle_inv()?),
        Cmd::Exp { a } => Ctx::emit_series(js, &ctx.series(a.as_deref())?.exp_shriek()?),
        Cmd::Log { b } => Ctx::emit_series(js, &ctx.series(b.as_deref())?.log_shriek()?),
        Cmd::Mu { a } => Ctx::emit_series(js, &ctx.series(a.as_deref())?.mu_p()?),
        Cmd::RatExpand { r, n } => Ctx::emit_coeffs(js, &rat_expand(&ctx.rational(Some(&r))?, n)?),
        Cmd::RatRecognize { a, b } => {
            let budget = b.or(ctx.cli.budget).ok_or_else(|| Failure::Usage("a budget is required".into()))?;
            let s = ctx.series(Some(&a))?;
            let r = rat_recognize(&s, budget)?.ok_or(Error::BudgetExhausted(budget))?;
            Ctx::emit_rational(js, &r)
        }
        Cmd::RatNorm { r } => {
            let n = rat_norm(&ctx.rational(r.as_deref())?);
            if js { format!("{{\"norm\":{n}}}") } else { n.to_string() }
        }
        Cmd::ExpRat { r } => Ctx::emit_rational(js, &exp_rational(&ctx.rational(r.as_deref())?, ctx.cli.cap)?),
        Cmd::LogRat { r } => Ctx::emit_rational(js, &log_rational(&ctx.rational(r.as_deref())?)?),
        Cmd::Kernel { a } => {
            let k = kernel_closure(&ctx.series(a.as_deref())?, ctx.cli.max_dim)?;
            if ctx.cli.json { json::to_string(&KernelJson::from_kernel(&k)) } else { render_kernel(&k) }
        }
        Cmd::Dfao { a } => {
            let k = kernel_closure(&ctx.series(a.as_deref())?, ctx.cli.max_dim)?;
            let d = dfao_from_kernel(&k)?;
            if ctx.cli.json { json::to_string(&DfaoJson::from_dfao(&d)) } else { render_dfao(&d) }
        }
        Cmd::Minpoly { a, dx, dy } => {
            let s = ctx.series(Some(&a))?;
            relation(&ctx, alg_guess_minpoly(&s, dx, dy)?, dx, dy)?
        }
        Cmd::Bell { n } => {
            let a = RationalFunction::from_ints(&f, &[0, 1], &[1, -1])?;
            Ctx::emit_coeffs(js, &rat_expand(&a, n)?.exp_shriek()?)
        }
        Cmd::NcShuffle { a, b } => {
            let a = ctx.nc(a.as_deref())?;
            let b = ctx.nc(b.as_deref())?;
            Ctx::emit_nc(js, &nc_shuffle(&a, &b)?)
        }
        Cmd::NcRho { t, a } => {
            let a = ctx.nc(a.as_deref())?;
            let t = parse_word(&t, a.letters())?;
            Ctx::emit_nc(js, &rho(&t, &a)?)
        }
        Cmd::NcRank { a, l } => {
            let r = nc_closure_rank(&ctx.nc(Some(&a))?, l)?;
            if ctx.cli.json { json::to_string(&RankJson::from(r)) } else { render_rank(&r) }
        }
        Cmd::NcExp { a } => Ctx::emit_nc(js, &nc_exp_shriek(&ctx.nc(a.as_deref())?)?),
        Cmd::NcLog { b } => Ctx::emit_nc(js, &nc_log_shriek(&ctx.nc(b.as_deref())?)?),
        Cmd::NcLinrepExpand { rep } => {
            let s = ctx.payload(rep.as_deref())?;
            let rep = json::from_str::<LinRepJson>(&s)?.to_linrep(Some(&f))?;
            Ctx::emit_nc(js, &linrep_expand(&rep, ctx.cli.degree)?)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
