use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use freealg::certify::{certify_elements, CertifyOptions, FreenessReport, ModelId, WordKind};
use freealg::group::{apply_group_involution, build_group_element, group_bindings, GroupInvolutionSpec, NSeriesSpec};
use freealg::involutions::spec::verify_transform;
use freealg::involutions::{
    canonical_transform, check_involution, classify_involution, verify_symmetric_in, InvolutionSpec,
};
use freealg::lie::{audit_pair, find_invariant_heisenberg, free_nilpotent, validate_lie, LieSC};
use freealg::pbw::build_element;
use freealg::scalars::format_rat;
use freealg::series::{IterPrec, Window};
use freealg::subfield::{group_fraction_leading, pbw_fraction_leading, standard_bindings, with_star, Frame};
use freealg::{Error, GradingSpec};

#[derive(Parser)]
#[command(
    name = "freealg",
    version,
    about = "Free subalgebras of division rings: certification and structure experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify ℚ-linear independence of words in two generators.
    Certify(CertifyArgs),
    #[command(subcommand)]
    Involution(InvolutionCmd),
    #[command(subcommand)]
    Lie(LieCmd),
    #[command(subcommand)]
    Group(GroupCmd),
    #[command(subcommand)]
    Valuation(ValuationCmd),
}

#[derive(Args)]
struct CertifyArgs {
    /// Comma-separated catalog names, e.g. `S,T` or `1+S1^2,1+T1^2`; for `fga`, sums like `g+g^-1`.
    #[arg(long, value_delimiter = ',', required = true)]
    elements: Vec<String>,
    #[arg(long, default_value = "weyl")]
    model: ModelId,
    #[arg(long, default_value = "free-group")]
    kind: WordKind,
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    #[arg(long, default_value_t = -16, allow_hyphen_values = true)]
    window_low: i64,
    #[arg(long, default_value_t = 48)]
    window_high: i64,
    /// Truncation caps `x,y,z` of the `iter` model.
    #[arg(long, value_delimiter = ',', default_values_t = [4, 8, 8])]
    caps: Vec<i64>,
    /// Base point for the sampled engine.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    no_parallel: bool,
    #[arg(long)]
    no_retry: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MatrixSource {
    /// JSON file holding a 3×3 matrix whose rows are the images of x, y, z.
    #[arg(long, conflicts_with = "canonical")]
    matrix_file: Option<PathBuf>,
    /// eta1, eta2 or eta3.
    #[arg(long)]
    canonical: Option<String>,
}

#[derive(Subcommand)]
enum InvolutionCmd {
    /// Whether the matrix defines an involution of the Heisenberg algebra.
    Check(MatrixSource),
    /// Family and canonical form (eta1, eta2 or eta3).
    Classify(MatrixSource),
    /// Change of basis carrying the involution to its canonical form.
    Transform(MatrixSource),
    /// Whether a catalog element is fixed by the involution.
    Symmetric {
        #[arg(long)]
        element: String,
        #[command(flatten)]
        source: MatrixSource,
    },
}

#[derive(Args)]
struct AlgebraFile {
    #[arg(long)]
    algebra: PathBuf,
}

#[derive(Subcommand)]
enum LieCmd {
    /// Antisymmetry, Jacobi identity and involution axioms.
    Validate(AlgebraFile),
    /// Lower central series dimensions and nilpotency class.
    Series(AlgebraFile),
    /// Search for an involution-invariant Heisenberg subalgebra.
    FindHeisenberg(AlgebraFile),
    /// Free nilpotent algebra with the principal involution.
    Generate {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        class: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Canonical valuation of the leading form.
    Valuation(GroupArgs),
    /// Leading form of a group algebra element.
    Leading(GroupArgs),
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    element: String,
    #[arg(long, default_value = "series1")]
    nseries: NSeriesSpec,
    /// Multiply by the image under main1, main2 or main3 first.
    #[arg(long)]
    times_star: Option<GroupInvolutionSpec>,
}

#[derive(Subcommand)]
enum ValuationCmd {
    /// Degree and homogeneity of a catalog element.
    Degree {
        #[arg(long)]
        element: String,
        #[arg(long, default_value = "a")]
        grading: GradingSpec,
    },
}

#[derive(Serialize)]
struct RunConfig {
    command: String,
    elements: Vec<String>,
    model: Option<String>,
    grading: Option<String>,
    involution: Option<String>,
    max_len: Option<usize>,
    window: Option<Window>,
    output: Option<PathBuf>,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct CertifyOutput<'a> {
    #[serde(flatten)]
    report: &'a FreenessReport,
    config: RunConfig,
}

fn read_json(path: &Path) -> Result<serde_json::Value, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => match writeln!(std::io::stdout(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Parse(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn load_involution(src: &MatrixSource) -> Result<InvolutionSpec, Error> {
    match (&src.matrix_file, &src.canonical) {
        (Some(p), _) => InvolutionSpec::from_json(&read_json(p)?),
        (None, Some(name)) => InvolutionSpec::canonical(name),
        (None, None) => Err(Error::Parse("give --matrix-file or --canonical".into())),
    }
}

fn load_algebra(a: &AlgebraFile) -> Result<LieSC, Error> {
    LieSC::from_json(&read_json(&a.algebra)?)
}

fn show_matrix(m: &[Vec<freealg::Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(format_rat).collect()).collect()
}

fn run_certify(a: &CertifyArgs) -> Result<i32, Error> {
    let window = Window::new(a.window_low, a.window_high);
    let [x, y, z] = a.caps[..] else {
        return Err(Error::Parse("--caps takes three values x,y,z".into()));
    };
    let caps = IterPrec { x, y, z };
    let mut opts = CertifyOptions { window, parallel: !a.no_parallel, retry: !a.no_retry, caps, ..Default::default() };
    if let Some(s) = a.seed {
        opts.t0 = s;
    }
    let els: Vec<&str> = a.elements.iter().map(String::as_str).collect();
    let report = certify_elements(&els, a.model, a.kind, a.max_len, &opts)?;
    let out = CertifyOutput {
        report: &report,
        config: RunConfig {
            command: "certify".into(),
            elements: a.elements.clone(),
            model: Some(a.model.to_string()),
            grading: None,
            involution: None,
            max_len: Some(a.max_len),
            window: matches!(a.model, ModelId::Weyl | ModelId::Solvable).then_some(window),
            output: a.output.clone(),
            seed: a.seed,
        },
    };
    let text = serde_json::to_string_pretty(&out).expect("report serializes");
    write_or_print(a.output.as_deref(), &text)?;
    eprintln!("{report}");
    Ok(report.status.exit_code())
}

fn run_involution(c: &InvolutionCmd) -> Result<i32, Error> {
    match c {
        InvolutionCmd::Check(src) => {
            let s = load_involution(src)?;
            let chk = check_involution(&s);
            println!("{s}");
            if chk.ok {
                println!("involution: ok (τ² = id, τ[u, v] = [τv, τu] on basis pairs)");
                Ok(0)
            } else {
                for f in &chk.failures {
                    println!("failed: {f}");
                }
                Ok(1)
            }
        }
        InvolutionCmd::Classify(src) => {
            let fam = classify_involution(&load_involution(src)?)?;
            println!("{}", fam.tag());
            println!("{fam}");
            Ok(0)
        }
        InvolutionCmd::Transform(src) => {
            let s = load_involution(src)?;
            let t = canonical_transform(&s)?;
            verify_transform(&s, &t)?;
            let out = json!({
                "phi": show_matrix(&t.phi),
                "canonical": t.canonical.family.as_ref().map(|f| f.tag()),
                "case": t.case,
                "checks": ["[Y, X] = Z", "φ·τ·φ⁻¹ is canonical"],
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            Ok(0)
        }
        InvolutionCmd::Symmetric { element, source } => {
            let s = load_involution(source)?;
            let e = build_element(element)?;
            let r = verify_symmetric_in(&e, &s, &Frame::standard())?;
            println!("{}", r.symmetric);
            println!("form:  {}", r.form);
            println!("image: {}", r.star_form);
            Ok(0)
        }
    }
}

fn run_lie(c: &LieCmd) -> Result<i32, Error> {
    match c {
        LieCmd::Validate(a) => {
            let r = validate_lie(&load_algebra(a)?);
            println!("{}", serde_json::to_string_pretty(&r).expect("serializes"));
            Ok(if r.valid { 0 } else { 1 })
        }
        LieCmd::Series(a) => {
            let l = load_algebra(a)?;
            let dims: Vec<usize> = l.lower_central_series().iter().map(Vec::len).collect();
            let out = json!({
                "lower_central_dims": dims,
                "class": l.nilpotency_class(),
                "center_dim": l.center().len(),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            Ok(0)
        }
        LieCmd::FindHeisenberg(a) => {
            let l = load_algebra(a)?;
            let p = find_invariant_heisenberg(&l)?;
            audit_pair(&l, &p.xv, &p.yv, &p.case)?;
            println!("x = {}", l.show(&p.xv));
            println!("y = {}", l.show(&p.yv));
            println!("z = [y, x] = {}", l.show(&l.bracket(&p.yv, &p.xv)));
            println!("case: {}", p.case);
            println!("{}", serde_json::to_string_pretty(&p).expect("serializes"));
            Ok(0)
        }
        LieCmd::Generate { generators, class, output } => {
            let l = free_nilpotent(*generators, *class)?;
            write_or_print(output.as_deref(), &serde_json::to_string_pretty(&l.to_json()).expect("serializes"))?;
            Ok(0)
        }
    }
}

fn run_group(c: &GroupCmd) -> Result<i32, Error> {
    let (GroupCmd::Valuation(a) | GroupCmd::Leading(a)) = c;
    let mut e = build_group_element(&a.element)?;
    let mut b = group_bindings();
    if let Some(inv) = &a.times_star {
        let (es, bs) = with_star(&e, &b, &|f| Ok(apply_group_involution(f, inv)))?;
        e = e.mul(&es);
        b = bs;
    }
    let v = group_fraction_leading(&e, &b, a.nseries)?;
    match c {
        GroupCmd::Valuation(_) => println!("{}", v.degree()?),
        GroupCmd::Leading(_) => {
            println!("{}", v.form);
            println!("degree {}", v.degree()?);
        }
    }
    Ok(0)
}

fn run_valuation(c: &ValuationCmd) -> Result<i32, Error> {
    let ValuationCmd::Degree { element, grading } = c;
    let v = pbw_fraction_leading(&build_element(element)?, &standard_bindings(), *grading)?;
    println!("{}", v.degree()?);
    println!("homogeneous: {}", v.homogeneous);
    println!("leading form: {}", v.form);
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Certify(a) => run_certify(a),
        Command::Involution(c) => run_involution(c),
        Command::Lie(c) => run_lie(c),
        Command::Group(c) => run_group(c),
        Command::Valuation(c) => run_valuation(c),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
