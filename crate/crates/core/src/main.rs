//! Command-line front door: parse inputs, dispatch to the library, emit
//! tables or JSON with full reproducibility metadata (seed, eps, caps).
//!
//! Exit codes: 0 success, 1 domain/validation/parse errors, 2 resource-cap
//! errors. In JSON mode errors go to stderr as {"error": {...}}.

use clap::{Args, Parser, Subcommand};
use ffheights::config::Caps;
use ffheights::dynamics::{self, RationalMap};
use ffheights::elliptic::{self, EPoint, EllipticCurve};
use ffheights::error::{FfhError, Result};
use ffheights::ffield::{ConstExt, GroundField};
use ffheights::lattice::{self, KodairaType};
use ffheights::projheights::{self, ProjPoint};
use ffheights::rat::{rat_from_str, rat_to_string, Rat};
use ffheights::rigidity;
use ffheights::wire::{self, CurveWire, DivisorWire, FhInput, FieldSpec, ModelWire};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ffheights",
    about = "Exact heights, canonical dynamical heights and intersection pairings over F_q(t)",
    version
)]
struct Cli {
    /// Print the JSON input schemas and exit.
    #[arg(long)]
    emit_schema: bool,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Args, Clone)]
struct Common {
    /// Constant field of K, e.g. F2, F4, F25 or {"p":5,"m":1}.
    #[arg(long, default_value = "F2")]
    field: String,
    /// Output format.
    #[arg(long, default_value = "table", value_parser = ["table", "json"])]
    format: String,
    /// Certified error target, a rational like 1/1000.
    #[arg(long, default_value = "1/1000")]
    eps: String,
    /// Seed for the randomized factorization splitting.
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration cap (points); env FFH_ENUM_CAP overrides the default.
    #[arg(long)]
    enum_cap: Option<u64>,
    /// Iteration cap for certified limits; env FFH_ITER_CAP overrides.
    #[arg(long)]
    iter_cap: Option<u32>,
    /// Worker threads (0 = automatic).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Naive Weil height of a point of P^1(F_{q^m}(t)).
    Height {
        #[command(flatten)]
        common: Common,
        /// Point literal "[a : b]" or JSON ["a","b","m"].
        #[arg(long)]
        point: String,
        /// Constant-extension index m.
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Local height decomposition of a point.
    LocalHeights {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Canonical dynamical height with certified error.
    Canheight {
        #[command(flatten)]
        common: Common,
        /// Map literal in z, e.g. "(z^2+t)/z".
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Exact preperiodicity decision for one point.
    Prep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// All preperiodic points up to a coordinate-degree bound.
    PrepScan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// Coordinate-degree bound over F_{q^m}.
        #[arg(long)]
        max_height: u32,
    },
    /// Neron-Tate height of a point on an elliptic curve.
    NtHeight {
        #[command(flatten)]
        common: Common,
        /// Curve JSON {"a1":...,"a6":...} or @file.
        #[arg(long)]
        curve: String,
        /// Point JSON {"x":..,"y":..} or "O" or @file.
        #[arg(long)]
        point: String,
    },
    /// Neron-Tate pairing of two points.
    NtPair {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Exact torsion decision.
    Torsion {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        point: String,
    },
    /// Gram matrix of Neron-Tate pairings.
    Gram {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        curve: String,
        /// JSON array of points, or @file.
        #[arg(long)]
        points: String,
    },
    /// Local Hodge index check of a fiber configuration.
    FiberCheck {
        #[command(flatten)]
        common: Common,
        /// A Kodaira type name like I3 or IV*.
        #[arg(long, value_name = "TYPE")]
        r#type: Option<String>,
        /// Explicit {"matrix":[[..]],"mult":[..],"identity":0} or @file.
        #[arg(long)]
        config: Option<String>,
    },
    /// Flat vertical correction of a degree-0 divisor.
    Flatten {
        #[command(flatten)]
        common: Common,
        /// Model JSON or @file.
        #[arg(long)]
        model: String,
        /// Divisor JSON or @file.
        #[arg(long)]
        divisor: String,
    },
    /// Flat-corrected model intersection pairing of two divisors.
    Pair {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        model: String,
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        divisor2: String,
    },
    /// Faltings-Hriljac cross-check: model self-pairing vs -2 h_NT.
    FhCheck {
        #[command(flatten)]
        common: Common,
        /// Combined input {"field","model","divisor","curve","class"} or @file.
        #[arg(long)]
        input: String,
    },
    /// Compare preperiodic sets of two maps over a scan window.
    Rigidity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long)]
        map2: String,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        #[arg(long)]
        max_height: u32,
        /// Also profile canonical-height differences on the first N
        /// enumerated points.
        #[arg(long)]
        profile: Option<usize>,
    },
    /// Polarization independence: O(d)-height vs d times the O(1)-height.
    Polarization {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long)]
        degree: u32,
        /// JSON array of point literals, or @file; defaults to a small
        /// enumerated sample.
        #[arg(long)]
        points: Option<String>,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
}

fn main() {
    let cli = Cli::parse();
    if cli.emit_schema {
        println!(
            "{}",
            serde_json::to_string_pretty(&wire::schemas()).unwrap()
        );
        return;
    }
    let Some(cmd) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        std::process::exit(1);
    };
    let common = command_common(&cmd).clone();
    match run(cmd, &common) {
        Ok(value) => {
            if common.format == "json" {
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                print_table(&value, 0);
            }
        }
        Err(e) => {
            if common.format == "json" {
                let obj = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
                eprintln!("{}", serde_json::to_string(&obj).unwrap());
            } else {
                eprintln!("error: {e}");
            }
            std::process::exit(e.exit_code());
        }
    }
}

fn command_common(cmd: &Cmd) -> &Common {
    match cmd {
        Cmd::Height { common, .. }
        | Cmd::LocalHeights { common, .. }
        | Cmd::Canheight { common, .. }
        | Cmd::Prep { common, .. }
        | Cmd::PrepScan { common, .. }
        | Cmd::NtHeight { common, .. }
        | Cmd::NtPair { common, .. }
        | Cmd::Torsion { common, .. }
        | Cmd::Gram { common, .. }
        | Cmd::FiberCheck { common, .. }
        | Cmd::Flatten { common, .. }
        | Cmd::Pair { common, .. }
        | Cmd::FhCheck { common, .. }
        | Cmd::Rigidity { common, .. }
        | Cmd::Polarization { common, .. } => common,
    }
}

struct Ctx {
    base: GroundField,
    eps: Rat,
    caps: Caps,
    threads: usize,
}

impl Ctx {
    fn new(common: &Common) -> Result<Ctx> {
        let spec: FieldSpec = if common.field.trim_start().starts_with('{') {
            serde_json::from_str(&common.field)
                .map_err(|e| FfhError::parse(format!("bad field descriptor: {e}")))?
        } else {
            FieldSpec::Compact(common.field.clone())
        };
        let base = spec.to_field()?;
        let eps = rat_from_str(&common.eps)?;
        if eps <= ffheights::rat::rat_zero() {
            return Err(FfhError::validation("eps must be positive"));
        }
        let mut caps = Caps::default();
        if let Ok(v) = std::env::var("FFH_ENUM_CAP") {
            caps.enum_cap = v.parse().map_err(|_| FfhError::parse("bad FFH_ENUM_CAP"))?;
        }
        if let Ok(v) = std::env::var("FFH_ITER_CAP") {
            caps.iter_cap = v.parse().map_err(|_| FfhError::parse("bad FFH_ITER_CAP"))?;
        }
        if let Some(c) = common.enum_cap {
            caps.enum_cap = c;
        }
        if let Some(c) = common.iter_cap {
            caps.iter_cap = c;
        }
        if let Some(s) = common.seed {
            caps.seed = s;
        }
        if common.threads > 0 {
            // ignore the error if a global pool already exists
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(common.threads)
                .build_global();
        }
        Ok(Ctx {
            base,
            eps,
            caps,
            threads: common.threads,
        })
    }

    /// Active field for extension index m, with the embedding data.
    fn ext(&self, m: u32) -> Result<ConstExt> {
        ConstExt::new(&self.base, m)
    }

    fn meta(&self) -> Value {
        wire::caps_to_json(&self.caps, &self.eps, self.threads)
    }
}

/// Arguments beginning with '@' are read from the named file.
fn arg_or_file(s: &str) -> Result<String> {
    if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| FfhError::parse(format!("cannot read {path:?}: {e}")))
    } else {
        Ok(s.to_string())
    }
}

fn parse_point_arg(s: &str, m: u32, k: &GroundField) -> Result<ProjPoint> {
    let text = arg_or_file(s)?;
    let trimmed = text.trim();
    if trimmed.starts_with('[') && trimmed.contains(':') {
        return ProjPoint::parse(trimmed, m, k);
    }
    let v: Value = serde_json::from_str(trimmed)
        .map_err(|e| FfhError::parse(format!("bad point JSON: {e}")))?;
    wire::point_from_json(&v, k)
}

fn parse_curve_arg(s: &str, k: &GroundField) -> Result<EllipticCurve> {
    let text = arg_or_file(s)?;
    let wire: CurveWire =
        serde_json::from_str(&text).map_err(|e| FfhError::parse(format!("bad curve JSON: {e}")))?;
    wire.to_curve(k)
}

fn parse_epoint_arg(s: &str, k: &GroundField) -> Result<EPoint> {
    let text = arg_or_file(s)?;
    let trimmed = text.trim();
    if trimmed == "O" {
        return Ok(EPoint::Zero);
    }
    let v: Value = serde_json::from_str(trimmed)
        .map_err(|e| FfhError::parse(format!("bad elliptic point JSON: {e}")))?;
    wire::epoint_from_json(&v, k)
}

fn parse_map_arg(s: &str, ext: &ConstExt) -> Result<RationalMap> {
    let text = arg_or_file(s)?;
    let trimmed = text.trim();
    let map = if trimmed.starts_with('{') {
        let w: wire::MapWire = serde_json::from_str(trimmed)
            .map_err(|e| FfhError::parse(format!("bad map JSON: {e}")))?;
        w.to_map(ext.base())?
    } else {
        RationalMap::parse(trimmed, ext.base())?
    };
    Ok(map.base_change(ext))
}

fn run(cmd: Cmd, common: &Common) -> Result<Value> {
    let ctx = Ctx::new(common)?;
    match cmd {
        Cmd::Height { point, ext, .. } => {
            let e = ctx.ext(ext)?;
            let k = e.field();
            let x = parse_point_arg(&point, ext, k)?;
            Ok(json!({
                "op": "height",
                "point": x.to_string_t(k),
                "height": rat_to_string(&projheights::height(&x)),
                "exact": true,
                "config": ctx.meta(),
            }))
        }
        Cmd::LocalHeights { point, ext, .. } => {
            let e = ctx.ext(ext)?;
            let k = e.field();
            let x = parse_point_arg(&point, ext, k)?;
            let prof = projheights::local_heights(&x, k)?;
            Ok(json!({
                "op": "local-heights",
                "point": x.to_string_t(k),
                "profile": wire::profile_to_json(&prof, k),
                "config": ctx.meta(),
            }))
        }
        Cmd::Canheight {
            map, point, ext, ..
        } => {
            let e = ctx.ext(ext)?;
            let k = e.field();
            let f = parse_map_arg(&map, &e)?;
            let x = parse_point_arg(&point, ext, k)?;
            let est = dynamics::canonical_height(&f, &x, &ctx.eps, &ctx.caps)?;
            Ok(json!({
                "op": "canheight",
                "map": f.to_string_z(),
                "point": x.to_string_t(k),
                "estimate": wire::estimate_to_json(&est),
                "gap_constant": rat_to_string(&f.gap_constant()),
                "config": ctx.meta(),
            }))
        }
        Cmd::Prep {
            map, point, ext, ..
        } => {
            let e = ctx.ext(ext)?;
            let k = e.field();
            let f = parse_map_arg(&map, &e)?;
            let x = parse_point_arg(&point, ext, k)?;
            let pre = dynamics::is_preperiodic(&f, &x);
            Ok(json!({
                "op": "prep",
                "map": f.to_string_z(),
                "point": x.to_string_t(k),
                "preperiodic": pre,
                "cutoff": rat_to_string(&f.prep_cutoff()),
                "config": ctx.meta(),
            }))
        }
        Cmd::PrepScan {
            map,
            ext,
            max_height,
            ..
        } => {
            let e = ctx.ext(ext)?;
            let k = e.field();
            let f = parse_map_arg(&map, &e)?;
            let pts = dynamics::prep_set(&f, ext, max_height, &ctx.caps)?;
            Ok(json!({
                "op": "prep-scan",
                "map": f.to_string_z(),
                "ext": ext,
                "max_height": max_height,
                "count": pts.len(),
                "points": pts.iter().map(|p| p.to_string_t(k)).collect::<Vec<_>>(),
                "config": ctx.meta(),
            }))
        }
        Cmd::NtHeight { curve, point, .. } => {
            let k = &ctx.base;
            let e = parse_curve_arg(&curve, k)?;
            let p = parse_epoint_arg(&point, k)?;
            let est = elliptic::nt_height(&e, &p, &ctx.eps, &ctx.caps)?;
            Ok(json!({
                "op": "nt-height",
                "point": p.to_string_t(k),
                "estimate": wire::estimate_to_json(&est),
                "isotrivial": e.is_isotrivial(),
                "dup_gap_constant": rat_to_string(&e.dup_gap_constant()),
                "config": ctx.meta(),
            }))
        }
        Cmd::NtPair { curve, p, q, .. } => {
            let k = &ctx.base;
            let e = parse_curve_arg(&curve, k)?;
            let pp = parse_epoint_arg(&p, k)?;
            let qq = parse_epoint_arg(&q, k)?;
            let est = elliptic::nt_pairing(&e, &pp, &qq, &ctx.eps, &ctx.caps)?;
            Ok(json!({
                "op": "nt-pair",
                "p": pp.to_string_t(k),
                "q": qq.to_string_t(k),
                "estimate": wire::estimate_to_json(&est),
                "config": ctx.meta(),
            }))
        }
        Cmd::Torsion { curve, point, .. } => {
            let k = &ctx.base;
            let e = parse_curve_arg(&curve, k)?;
            let p = parse_epoint_arg(&point, k)?;
            let t = elliptic::is_torsion(&e, &p)?;
            Ok(json!({
                "op": "torsion",
                "point": p.to_string_t(k),
                "torsion": t,
                "config": ctx.meta(),
            }))
        }
        Cmd::Gram { curve, points, .. } => {
            let k = &ctx.base;
            let e = parse_curve_arg(&curve, k)?;
            let text = arg_or_file(&points)?;
            let arr: Vec<Value> = serde_json::from_str(&text)
                .map_err(|er| FfhError::parse(format!("bad points array: {er}")))?;
            let pts: Vec<EPoint> = arr
                .iter()
                .map(|v| wire::epoint_from_json(v, k))
                .collect::<Result<_>>()?;
            let g = elliptic::gram_matrix(&e, &pts, &ctx.eps, &ctx.caps)?;
            let diag_ok = (0..pts.len()).all(|i| g[i][i].value >= -(ctx.eps.clone()));
            let trace_kernel = if e.has_constant_coefficients() {
                let flags = elliptic::trace_kernel_check(&e, &pts)?;
                Some(flags)
            } else {
                None
            };
            Ok(json!({
                "op": "gram",
                "points": pts.iter().map(|p| p.to_string_t(k)).collect::<Vec<_>>(),
                "matrix": g.iter().map(|row| {
                    row.iter().map(wire::estimate_to_json).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
                "diagonal_nonnegative_within_eps": diag_ok,
                "trace_kernel_torsion": trace_kernel,
                "config": ctx.meta(),
            }))
        }
        Cmd::FiberCheck {
            r#type,
            config: cfg,
            ..
        } => {
            let config = match (r#type, cfg) {
                (Some(name), None) => KodairaType::parse(&name)?.template(),
                (None, Some(c)) => {
                    let text = arg_or_file(&c)?;
                    #[derive(serde::Deserialize)]
                    struct Raw {
                        matrix: Vec<Vec<i64>>,
                        mult: Vec<i64>,
                        #[serde(default)]
                        identity: usize,
                    }
                    let raw: Raw = serde_json::from_str(&text)
                        .map_err(|e| FfhError::parse(format!("bad fiber config: {e}")))?;
                    lattice::FiberConfig::new(raw.matrix, raw.mult, raw.identity)?
                }
                _ => {
                    return Err(FfhError::validation(
                        "fiber-check needs exactly one of --type or --config",
                    ))
                }
            };
            let rep = lattice::check_local_hodge(&config);
            Ok(json!({
                "op": "fiber-check",
                "components": config.components(),
                "mult": config.mult(),
                "report": wire::hodge_report_to_json(&rep),
                "config": ctx.meta(),
            }))
        }
        Cmd::Flatten { model, divisor, .. } => {
            let k = &ctx.base;
            let mw: ModelWire = serde_json::from_str(&arg_or_file(&model)?)
                .map_err(|e| FfhError::parse(format!("bad model JSON: {e}")))?;
            let dw: DivisorWire = serde_json::from_str(&arg_or_file(&divisor)?)
                .map_err(|e| FfhError::parse(format!("bad divisor JSON: {e}")))?;
            let m = mw.to_model(k)?;
            let d = dw.to_divisor(k)?;
            let corrected = lattice::flat_correction(&m, &d)?;
            Ok(json!({
                "op": "flatten",
                "phi": corrected.vertical.iter().map(|(place, comp, c)| json!({
                    "place": place, "component": comp, "coeff": rat_to_string(c),
                })).collect::<Vec<_>>(),
                "config": ctx.meta(),
            }))
        }
        Cmd::Pair {
            model,
            divisor,
            divisor2,
            ..
        } => {
            let k = &ctx.base;
            let mw: ModelWire = serde_json::from_str(&arg_or_file(&model)?)
                .map_err(|e| FfhError::parse(format!("bad model JSON: {e}")))?;
            let m = mw.to_model(k)?;
            let d1 = serde_json::from_str::<DivisorWire>(&arg_or_file(&divisor)?)
                .map_err(|e| FfhError::parse(format!("bad divisor JSON: {e}")))?
                .to_divisor(k)?;
            let d2 = serde_json::from_str::<DivisorWire>(&arg_or_file(&divisor2)?)
                .map_err(|e| FfhError::parse(format!("bad divisor JSON: {e}")))?
                .to_divisor(k)?;
            let v = lattice::model_pairing(&m, &d1, &d2)?;
            Ok(json!({
                "op": "pair",
                "pairing": rat_to_string(&v),
                "exact": true,
                "config": ctx.meta(),
            }))
        }
        Cmd::FhCheck { input, .. } => {
            let text = arg_or_file(&input)?;
            let fh: FhInput = serde_json::from_str(&text)
                .map_err(|e| FfhError::parse(format!("bad fh-check input: {e}")))?;
            let (_k, model, divisor, class) = fh.load()?;
            let rep = lattice::faltings_hriljac_check(
                &model,
                &divisor,
                class.as_ref().map(|(c, p)| (c, p)),
                &ctx.eps,
                &ctx.caps,
            )?;
            Ok(json!({
                "op": "fh-check",
                "report": wire::fh_report_to_json(&rep),
                "config": ctx.meta(),
            }))
        }
        Cmd::Rigidity {
            map,
            map2,
            ext,
            max_height,
            profile,
            ..
        } => {
            let e = ctx.ext(ext)?;
            let k = e.field();
            let f = parse_map_arg(&map, &e)?;
            let g = parse_map_arg(&map2, &e)?;
            let rep = rigidity::common_prep_scan(&f, &g, ext, max_height, &ctx.caps)?;
            let mut out = json!({
                "op": "rigidity",
                "f": f.to_string_z(),
                "g": g.to_string_z(),
                "report": wire::comparison_report_to_json(&rep, k),
                "config": ctx.meta(),
            });
            if let Some(n) = profile {
                let pts = projheights::enumerate_points(k, ext, max_height, &ctx.caps)?;
                let sample: Vec<ProjPoint> = pts.into_iter().take(n).collect();
                let prof =
                    rigidity::height_difference_profile(&f, &g, &sample, &ctx.eps, &ctx.caps)?;
                out["profile"] = wire::difference_profile_to_json(&prof, k);
            }
            Ok(out)
        }
        Cmd::Polarization {
            map,
            degree,
            points,
            ext,
            ..
        } => {
            let e = ctx.ext(ext)?;
            let k = e.field();
            let f = parse_map_arg(&map, &e)?;
            let sample: Vec<ProjPoint> = match points {
                Some(s) => {
                    let text = arg_or_file(&s)?;
                    let arr: Vec<Value> = serde_json::from_str(&text)
                        .map_err(|er| FfhError::parse(format!("bad points array: {er}")))?;
                    arr.iter()
                        .map(|v| wire::point_from_json(v, k))
                        .collect::<Result<_>>()?
                }
                None => projheights::enumerate_points(k, ext, 1, &ctx.caps)?
                    .into_iter()
                    .take(16)
                    .collect(),
            };
            let rep = rigidity::polarization_independence_check(
                &f, degree, &sample, &ctx.eps, &ctx.caps,
            )?;
            Ok(json!({
                "op": "polarization",
                "map": f.to_string_z(),
                "report": wire::polarization_report_to_json(&rep, k),
                "config": ctx.meta(),
            }))
        }
    }
}

/// Plain aligned text rendering of the JSON output; same data as JSON mode.
fn print_table(v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}{k}:");
                        print_table(val, indent + 1);
                    }
                    _ => println!("{pad}{k:width$}  {}", scalar(val)),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}-");
                        print_table(item, indent + 1);
                    }
                    _ => println!("{pad}- {}", scalar(item)),
                }
            }
        }
        _ => println!("{pad}{}", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
