//! Command-line front end: field queries, patch generation, polygon
//! construction, X-ray demos, and the counterexample pipeline.
//!
//! All outputs are deterministic JSON (struct field order is fixed); SVG
//! outputs are identical across runs modulo the leading version comment.
//! Exit codes: 0 success, 2 validation error, 3 inconclusive search budget.

mod svg;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cyclopoly::tomography::demo_patch;
use cyclopoly::{
    admissible_m, build_counterexample, classify_phi_half, construct_polygon_in_field,
    determination_bruteforce, edge_directions, exists_affinely_regular, inflate_into_model_set,
    intersection_conductor, is_sophie_germain, k_field_equal, k_field_subset, min_k_bound,
    phi, real_subfield_equal, real_subfield_subset, verify_affinely_regular, witness_bound,
    xray, CycError, CyclotomicNumber, Determination, Direction, ModelSetDescriptor, Patch,
    Polygon, Rational,
};

const FINITE_PATCH_SEMANTICS: &str = "all X-ray statements are relative to the finite patch; \
a collision certifies non-determination, its absence certifies nothing beyond the patch";

#[derive(Parser)]
#[command(name = "cyclopoly", version, about = "Affinely regular polygons in cyclotomic model sets and their discrete X-rays")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Field-inclusion predicates for cyclotomic fields and real subfields.
    Fields(FieldsArgs),
    /// Generate a finite patch of a cyclotomic model set.
    Patch(PatchArgs),
    /// Decide existence of, and construct, affinely regular polygons.
    Polygon(PolygonArgs),
    /// Discrete parallel X-rays of a point set inside a patch.
    Xray(XrayArgs),
    /// Two distinct convex subsets of a patch with identical X-rays.
    Counterexample(CounterArgs),
    /// The direction-count lower bound for a conductor, with a certificate.
    Bound(BoundArgs),
    /// Patch summary, admissible polygons and a seeded X-ray sample.
    Demo(DemoArgs),
}

#[derive(Args)]
struct FieldsArgs {
    #[command(subcommand)]
    predicate: FieldsPredicate,
}

#[derive(Subcommand)]
enum FieldsPredicate {
    /// Q(zeta_m) subset of Q(zeta_n)?
    KSubset(MN),
    /// Q(zeta_m) = Q(zeta_n)?
    KEqual(MN),
    /// Real subfield k_m subset of k_n?
    RealSubset(MN),
    /// Real subfield k_m = k_n?
    RealEqual(MN),
    /// Conductor of Q(zeta_m) intersect Q(zeta_n).
    Intersection(MN),
    /// Classify phi(n)/2 as one, prime or composite.
    Classify {
        #[arg(long)]
        n: u64,
    },
    /// Is p a Sophie Germain prime?
    SophieGermain {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Args)]
struct MN {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
}

#[derive(Args)]
struct PatchArgs {
    #[arg(long)]
    n: u64,
    /// Region radius, as an integer or "p/q".
    #[arg(long)]
    radius: String,
    /// Force the lattice descriptor (default for crystallographic n).
    #[arg(long)]
    lattice: bool,
    /// Window circumradius override, as "p/q".
    #[arg(long)]
    window_circumradius: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct PolygonArgs {
    #[command(subcommand)]
    action: PolygonAction,
}

#[derive(Subcommand)]
enum PolygonAction {
    /// Does an affinely regular m-gon exist in a model set over O_n?
    Exists(MN),
    /// Construct one, with its exact affine-regularity certificate.
    Construct {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// Also place an integer-homothety copy inside a generated patch.
        #[arg(long)]
        inflate: bool,
        #[arg(long, default_value = "6")]
        patch_radius: String,
        #[arg(long)]
        window_circumradius: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_scale: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Args)]
struct XrayArgs {
    /// Patch JSON, as emitted by `patch`.
    #[arg(long)]
    patch: PathBuf,
    /// Point-set JSON {"n": N, "points": [["p/q", ...], ...]}; defaults to
    /// the whole patch.
    #[arg(long)]
    set: Option<PathBuf>,
    /// Direction as comma-separated integer coefficients, repeatable.
    #[arg(long = "dir", required = true)]
    dirs: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CounterArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    radius: String,
    #[arg(long)]
    window_circumradius: Option<String>,
    #[arg(long, default_value_t = 8)]
    max_scale: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 3)]
    radius: i64,
    #[arg(long, default_value_t = 8)]
    max_scale: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, default_value_t = 8)]
    n: u64,
    #[arg(long, default_value_t = 3)]
    radius: i64,
    /// Seed for the sampled subset whose X-rays are reported.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    sample_size: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

/// Point-set interchange format shared by `xray` and `counterexample`.
#[derive(Serialize, Deserialize)]
struct PointSetJson {
    n: u64,
    points: Vec<Vec<String>>,
}

impl PointSetJson {
    fn from_points(n: u64, points: &[CyclotomicNumber]) -> Self {
        PointSetJson {
            n,
            points: points
                .iter()
                .map(|p| p.coeffs().iter().map(cyclopoly::cyclotomic::rational_to_string).collect())
                .collect(),
        }
    }

    fn to_points(&self) -> Result<Vec<CyclotomicNumber>, CycError> {
        self.points
            .iter()
            .map(|row| {
                let coeffs = row
                    .iter()
                    .map(|c| {
                        cyclopoly::cyclotomic::parse_rational(c)
                            .ok_or_else(|| CycError::Serialization(format!("bad rational {c:?}")))
                    })
                    .collect::<Result<Vec<Rational>, _>>()?;
                CyclotomicNumber::from_coeffs(self.n, coeffs)
            })
            .collect()
    }
}

/// Parses argv and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(CliError::Inconclusive) => {
            eprintln!("error: search budget exhausted before a verdict (raise CYCLOPOLY_BUDGET)");
            3
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

enum CliError {
    Validation(String),
    Inconclusive,
}

impl From<CycError> for CliError {
    fn from(e: CycError) -> Self {
        match e {
            CycError::Inconclusive => CliError::Inconclusive,
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn parse_radius(s: &str) -> Result<Rational, CliError> {
    cyclopoly::cyclotomic::parse_rational(s)
        .ok_or_else(|| CliError::Validation(format!("bad rational radius {s:?}")))
}

fn parse_direction(n: u64, s: &str) -> Result<Direction, CliError> {
    let coeffs = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<i64>, _>>()
        .map_err(|_| CliError::Validation(format!("bad direction {s:?}")))?;
    Ok(Direction::from_integer_coeffs(n, &coeffs)?)
}

fn descriptor_for(
    n: u64,
    lattice: bool,
    window_circumradius: &Option<String>,
) -> Result<ModelSetDescriptor, CliError> {
    let mut d = if lattice { ModelSetDescriptor::lattice(n)? } else { ModelSetDescriptor::new(n)? };
    if let Some(r) = window_circumradius {
        d = d.with_window_circumradius(parse_radius(r)?)?;
    }
    Ok(d)
}

fn emit(value: &Value, out: &Option<PathBuf>) -> Result<(), CliError> {
    let text = format!("{}\n", serde_json::to_string_pretty(value)?);
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dispatch(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Fields(a) => run_fields(a),
        Cmd::Patch(a) => run_patch(a),
        Cmd::Polygon(a) => match a.action {
            PolygonAction::Exists(mn) => run_polygon_exists(mn),
            PolygonAction::Construct {
                m,
                n,
                inflate,
                patch_radius,
                window_circumradius,
                max_scale,
                out,
                svg,
            } => run_polygon_construct(
                m,
                n,
                inflate,
                &patch_radius,
                &window_circumradius,
                max_scale,
                &out,
                &svg,
            ),
        },
        Cmd::Xray(a) => run_xray(a),
        Cmd::Counterexample(a) => run_counterexample(a),
        Cmd::Bound(a) => run_bound(a),
        Cmd::Demo(a) => run_demo(a),
    }
}

fn run_fields(a: FieldsArgs) -> Result<(), CliError> {
    let out = match a.predicate {
        FieldsPredicate::KSubset(MN { m, n }) => {
            let result = k_field_subset(m, n);
            // constructive witness: zeta_m written on the power basis of K_n.
            let witness = if result {
                use num_integer::Integer;
                let z = CyclotomicNumber::root_of_unity(m)?.lift(m.lcm(&n))?;
                let lowered = z.try_lower(n)?.expect("subset implies lowering succeeds");
                Value::from(PointSetJson::from_points(n, &[lowered]).points.remove(0))
            } else {
                Value::Null
            };
            json!({
                "query": {"predicate": "k-subset", "m": m, "n": n},
                "result": result,
                "witness": witness,
            })
        }
        FieldsPredicate::KEqual(MN { m, n }) => json!({
            "query": {"predicate": "k-equal", "m": m, "n": n},
            "result": k_field_equal(m, n),
            "witness": Value::Null,
        }),
        FieldsPredicate::RealSubset(MN { m, n }) => json!({
            "query": {"predicate": "real-subset", "m": m, "n": n},
            "result": real_subfield_subset(m, n)?,
            "witness": Value::Null,
        }),
        FieldsPredicate::RealEqual(MN { m, n }) => json!({
            "query": {"predicate": "real-equal", "m": m, "n": n},
            "result": real_subfield_equal(m, n)?,
            "witness": Value::Null,
        }),
        FieldsPredicate::Intersection(MN { m, n }) => json!({
            "query": {"predicate": "intersection", "m": m, "n": n},
            "result": intersection_conductor(m, n)?,
            "witness": Value::Null,
        }),
        FieldsPredicate::Classify { n } => {
            let c = classify_phi_half(n)?;
            json!({
                "query": {"predicate": "classify-phi-half", "n": n},
                "result": c.kind,
                "witness": {"phi_half": c.witness},
            })
        }
        FieldsPredicate::SophieGermain { p } => json!({
            "query": {"predicate": "sophie-germain", "p": p},
            "result": is_sophie_germain(p),
            "witness": if is_sophie_germain(p) { json!({"safe_prime": 2 * p + 1}) } else { Value::Null },
        }),
    };
    emit(&out, &None)
}

fn run_patch(a: PatchArgs) -> Result<(), CliError> {
    let d = descriptor_for(a.n, a.lattice, &a.window_circumradius)?;
    let patch = Patch::generate(&d, parse_radius(&a.radius)?)?;
    if let Some(path) = &a.svg {
        fs::write(path, svg::patch_figure(&patch)?)?;
    }
    emit(&serde_json::to_value(&patch)?, &a.out)
}

fn run_polygon_exists(MN { m, n }: MN) -> Result<(), CliError> {
    let out = json!({
        "query": {"m": m, "n": n},
        "exists": exists_affinely_regular(m, n)?,
        "admissible_m_up_to_2n": admissible_m(n, 2 * n.max(3))?,
    });
    emit(&out, &None)
}

#[allow(clippy::too_many_arguments)]
fn run_polygon_construct(
    m: u64,
    n: u64,
    inflate: bool,
    patch_radius: &str,
    window_circumradius: &Option<String>,
    max_scale: u64,
    out: &Option<PathBuf>,
    svg_path: &Option<PathBuf>,
) -> Result<(), CliError> {
    let p = construct_polygon_in_field(m, n)?;
    let w = verify_affinely_regular(&p)?
        .ok_or_else(|| CliError::Validation("constructed polygon failed verification".into()))?;
    let mut doc = json!({
        "query": {"m": m, "n": n},
        "polygon": serde_json::to_value(&p)?,
        "witness": serde_json::to_value(&w)?,
        "inflation": Value::Null,
    });
    let mut placed: Option<(Patch, Polygon)> = None;
    if inflate {
        let d = descriptor_for(n, false, window_circumradius)?;
        let patch = Patch::generate(&d, parse_radius(patch_radius)?)?;
        let inf = inflate_into_model_set(&p, &patch, max_scale)?;
        doc["inflation"] = json!({
            "scale": inf.scale,
            "translate": PointSetJson::from_points(n, &[inf.translate.clone()]).points.remove(0),
            "polygon": serde_json::to_value(&inf.polygon)?,
        });
        placed = Some((patch, inf.polygon));
    }
    if let Some(path) = svg_path {
        let figure = match &placed {
            Some((patch, q)) => svg::polygon_in_patch_figure(patch, q)?,
            None => svg::polygon_figure(&p)?,
        };
        fs::write(path, figure)?;
    }
    emit(&doc, out)
}

fn run_xray(a: XrayArgs) -> Result<(), CliError> {
    let patch: Patch = serde_json::from_str(&fs::read_to_string(&a.patch)?)?;
    let n = patch.descriptor().conductor();
    let set: Vec<CyclotomicNumber> = match &a.set {
        Some(path) => {
            let ps: PointSetJson = serde_json::from_str(&fs::read_to_string(path)?)?;
            if ps.n != n {
                return Err(CliError::Validation(format!(
                    "set conductor {} does not match patch conductor {n}",
                    ps.n
                )));
            }
            let pts = ps.to_points()?;
            for z in &pts {
                if !patch.contains(z) {
                    return Err(CliError::Validation(format!("{z} is not a patch point")));
                }
            }
            pts
        }
        None => patch.points().to_vec(),
    };
    let dirs = a
        .dirs
        .iter()
        .map(|s| parse_direction(n, s))
        .collect::<Result<Vec<Direction>, _>>()?;
    let tables = dirs.iter().map(|u| xray(&set, u)).collect::<Result<Vec<_>, _>>()?;
    let out = json!({
        "finite_patch_semantics": FINITE_PATCH_SEMANTICS,
        "n": n,
        "set_size": set.len(),
        "xrays": serde_json::to_value(&tables)?,
    });
    emit(&out, &a.out)
}

fn run_counterexample(a: CounterArgs) -> Result<(), CliError> {
    let d = descriptor_for(a.n, false, &a.window_circumradius)?;
    let patch = Patch::generate(&d, parse_radius(&a.radius)?)?;
    let p = construct_polygon_in_field(a.m, a.n)?;
    let inf = inflate_into_model_set(&p, &patch, a.max_scale)?;
    let us = edge_directions(&inf.polygon)?;
    let (f, fp) = build_counterexample(&inf.polygon, &patch, &us)?;
    let xrays_f = us.iter().map(|u| xray(&f, u)).collect::<Result<Vec<_>, _>>()?;
    let xrays_fp = us.iter().map(|u| xray(&fp, u)).collect::<Result<Vec<_>, _>>()?;
    let doc = json!({
        "finite_patch_semantics": FINITE_PATCH_SEMANTICS,
        "query": {"n": a.n, "m": a.m, "radius": a.radius},
        "U": serde_json::to_value(&us)?,
        "F": serde_json::to_value(&PointSetJson::from_points(a.n, &f))?,
        "Fprime": serde_json::to_value(&PointSetJson::from_points(a.n, &fp))?,
        "xrays": {
            "F": serde_json::to_value(&xrays_f)?,
            "Fprime": serde_json::to_value(&xrays_fp)?,
        },
    });
    if let Some(path) = &a.svg {
        fs::write(path, svg::counterexample_figure(&patch, &inf.polygon, &f, &fp)?)?;
    }
    emit(&doc, &a.out)
}

fn run_bound(a: BoundArgs) -> Result<(), CliError> {
    let bound = min_k_bound(a.n)?;
    let patch = demo_patch(a.n, a.radius)?;
    let (us, p) = witness_bound(a.n, &patch, a.max_scale)?;
    let doc = json!({
        "finite_patch_semantics": FINITE_PATCH_SEMANTICS,
        "n": a.n,
        "min_k_bound": bound,
        "statement": format!(
            "no set of at most {bound} pairwise non-parallel O_{}-directions determines the convex subsets",
            a.n
        ),
        "witness": {
            "directions": serde_json::to_value(&us)?,
            "u_polygon": serde_json::to_value(&p)?,
        },
    });
    emit(&doc, &a.out)
}

fn run_demo(a: DemoArgs) -> Result<(), CliError> {
    let patch = demo_patch(a.n, a.radius)?;
    let diag = patch.delone_diagnostics()?;
    // deterministic sample: a seeded linear congruential walk over the
    // canonically sorted points.
    let mut state = a.seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < a.sample_size.min(patch.len()) {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        picked.insert((state >> 33) as usize % patch.len());
    }
    let sample: Vec<CyclotomicNumber> =
        picked.iter().map(|&i| patch.points()[i].clone()).collect();
    let ph = phi(a.n)? as usize;
    let mut axis = vec![0i64; ph];
    axis[0] = 1;
    let mut dirs = vec![Direction::from_integer_coeffs(a.n, &axis)?];
    if ph > 1 {
        axis[0] = 0;
        axis[1] = 1;
        dirs.push(Direction::from_integer_coeffs(a.n, &axis)?);
    }
    let tables = dirs.iter().map(|u| xray(&sample, u)).collect::<Result<Vec<_>, _>>()?;
    let probe = determination_bruteforce(&patch, &dirs, 3.min(patch.len()));
    let probe_value = match probe {
        Ok(Determination::NoCollision) => json!("no collision at size cap 3"),
        Ok(Determination::Collision(f, fp)) => json!({
            "F": serde_json::to_value(&PointSetJson::from_points(a.n, &f))?,
            "Fprime": serde_json::to_value(&PointSetJson::from_points(a.n, &fp))?,
        }),
        Err(CycError::Inconclusive) => json!("inconclusive within budget"),
        Err(e) => return Err(e.into()),
    };
    let doc = json!({
        "finite_patch_semantics": FINITE_PATCH_SEMANTICS,
        "n": a.n,
        "patch": {
            "points": patch.len(),
            "region_radius": a.radius,
            "min_distance": diag.min_distance,
            "covering_radius_estimate": diag.covering_radius_estimate,
        },
        "admissible_m_up_to_2n": admissible_m(a.n, 2 * a.n.max(3))?,
        "min_k_bound": min_k_bound(a.n)?,
        "sample": {
            "seed": a.seed,
            "points": serde_json::to_value(&PointSetJson::from_points(a.n, &sample))?,
            "xrays": serde_json::to_value(&tables)?,
        },
        "axis_probe": probe_value,
    });
    if let Some(path) = &a.svg {
        fs::write(path, svg::patch_figure(&patch)?)?;
    }
    emit(&doc, &a.out)
}
