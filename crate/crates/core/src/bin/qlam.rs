//! Command-line surface over the lamination library: angle queries, atlas
//! lifecycle, verification sweeps, and SVG rendering.
//!
//! Output is a machine-readable record stream (`key=value` fields, one record
//! per line) unless `--pretty` is given. Exit codes: 0 ok, 1 a verification
//! sweep found counterexamples, 2 error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use qlam::angle::{kneading_sequence, Angle};
use qlam::atlas::{component_record, internal_address, Atlas, ComponentKind, LabelledAddress};
use qlam::leaf::{
    bundle_collisions, labelled_address_collisions, lu_discrepancy_report,
    nonperiodic_bound_check, unlabelled_address_collision,
};
use qlam::portrait::{realize_portrait, rigidity_sweep, PortraitKind};
use qlam::render::{render_portrait, render_wakes};
use qlam::solenoid::{probe_points, rho, shift_inversion_relation, SolenoidPoint};

#[derive(Parser)]
#[command(name = "qlam", version, about = "Exact combinatorics of quadratic laminations")]
struct Cli {
    /// Human-readable output instead of machine records.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AtlasPath {
    /// Atlas file path.
    #[arg(long, env = "QLAM_ATLAS")]
    atlas: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Forward orbit of an angle under doubling.
    Orbit {
        /// Angle as "num/den".
        #[arg(long)]
        angle: String,
    },
    /// Kneading sequence and internal address of a periodic angle.
    Address {
        #[arg(long)]
        angle: String,
    },
    /// Realize the orbit portrait rooted at a pair of angles.
    Portrait {
        /// Characteristic arc endpoints as "a/b,c/d".
        #[arg(long)]
        angles: String,
    },
    /// Build, query, or summarize an atlas of hyperbolic components.
    Atlas {
        #[command(subcommand)]
        command: AtlasCommand,
    },
    /// Run every verification sweep up to a period bound.
    Verify {
        #[arg(long)]
        max_period: u32,
        /// Solenoid truncation depth; defaults to twice the period bound.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Emit SVG diagrams.
    Render {
        #[command(subcommand)]
        command: RenderCommand,
    },
}

#[derive(Subcommand)]
enum AtlasCommand {
    /// Enumerate all components up to a period bound and save them.
    Build {
        #[arg(long)]
        max_period: u32,
        #[command(flatten)]
        path: AtlasPath,
    },
    /// Look up a component by root angle or by internal address.
    Query {
        #[command(flatten)]
        path: AtlasPath,
        /// Root angle, or any angle when combined with --enclosing.
        #[arg(long)]
        angle: Option<String>,
        /// Internal address, either "1,2,3" or labelled "1-(1/2)->2->3".
        #[arg(long)]
        address: Option<String>,
        /// Return the innermost wake strictly containing --angle.
        #[arg(long)]
        enclosing: bool,
    },
    /// Per-period component counts of a saved atlas.
    Info {
        #[command(flatten)]
        path: AtlasPath,
    },
}

#[derive(Subcommand)]
enum RenderCommand {
    /// Chord diagram of one orbit portrait.
    Portrait {
        #[arg(long)]
        angles: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Nested wake chords of every component up to a period bound.
    Wakes {
        #[arg(long)]
        max_period: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Status {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::from(0),
        Ok(Status::Violation) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            println!("status=error");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Status, String> {
    match &cli.command {
        Command::Orbit { angle } => cmd_orbit(angle, cli.pretty),
        Command::Address { angle } => cmd_address(angle, cli.pretty),
        Command::Portrait { angles } => cmd_portrait(angles, cli.pretty),
        Command::Atlas { command } => match command {
            AtlasCommand::Build { max_period, path } => {
                cmd_atlas_build(*max_period, &path.atlas, cli.pretty)
            }
            AtlasCommand::Query {
                path,
                angle,
                address,
                enclosing,
            } => cmd_atlas_query(
                &path.atlas,
                angle.as_deref(),
                address.as_deref(),
                *enclosing,
                cli.pretty,
            ),
            AtlasCommand::Info { path } => cmd_atlas_info(&path.atlas, cli.pretty),
        },
        Command::Verify { max_period, depth } => cmd_verify(*max_period, *depth, cli.pretty),
        Command::Render { command } => match command {
            RenderCommand::Portrait { angles, out } => cmd_render_portrait(angles, out),
            RenderCommand::Wakes { max_period, out } => cmd_render_wakes(*max_period, out),
        },
    }
}

fn parse_angle(s: &str) -> Result<Angle, String> {
    s.parse().map_err(|e| format!("angle `{s}`: {e}"))
}

fn parse_angle_pair(s: &str) -> Result<(Angle, Angle), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two angles `a/b,c/d`, got `{s}`"))?;
    Ok((parse_angle(a.trim())?, parse_angle(b.trim())?))
}

fn join<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn cmd_orbit(angle: &str, pretty: bool) -> Result<Status, String> {
    let theta = parse_angle(angle)?;
    let orbit = theta.orbit();
    if pretty {
        println!("orbit of {theta}");
        println!("  preperiod {}  period {}", orbit.prefix.len(), orbit.cycle.len());
        println!("  prefix [{}]", join(&orbit.prefix, ", "));
        println!("  cycle  [{}]", join(&orbit.cycle, ", "));
    } else {
        println!("status=ok");
        println!(
            "angle={theta} preperiod={} period={} prefix={} cycle={}",
            orbit.prefix.len(),
            orbit.cycle.len(),
            join(&orbit.prefix, ","),
            join(&orbit.cycle, ",")
        );
    }
    Ok(Status::Ok)
}

fn cmd_address(angle: &str, pretty: bool) -> Result<Status, String> {
    let theta = parse_angle(angle)?;
    let kneading = kneading_sequence(&theta).map_err(|e| e.to_string())?;
    let address = internal_address(&theta).map_err(|e| e.to_string())?;
    if pretty {
        println!("angle {theta}");
        println!("  kneading sequence {kneading}");
        println!("  internal address  {}", join(&address, " -> "));
    } else {
        println!("status=ok");
        println!(
            "angle={theta} kneading={kneading} address={}",
            join(&address, ",")
        );
    }
    Ok(Status::Ok)
}

fn portrait_kind_name(kind: PortraitKind) -> &'static str {
    match kind {
        PortraitKind::Trivial => "trivial",
        PortraitKind::Satellite => "satellite",
        PortraitKind::Primitive => "primitive",
    }
}

fn cmd_portrait(angles: &str, pretty: bool) -> Result<Status, String> {
    let (t1, t2) = parse_angle_pair(angles)?;
    let portrait = realize_portrait(&t1, &t2).map_err(|e| e.to_string())?;
    let chr = portrait.characteristic_arc().map_err(|e| e.to_string())?;
    let crit = portrait.critical_arc().map_err(|e| e.to_string())?;
    let rotation = portrait
        .rotation_number()
        .map(|r| format!("{}/{}", r.numer(), r.denom()))
        .unwrap_or_else(|_| "-".to_string());
    let classes = portrait
        .classes()
        .iter()
        .map(|c| join(c, ","))
        .collect::<Vec<_>>()
        .join(";");
    if pretty {
        println!("portrait rooted at ({t1}, {t2})");
        println!("  kind {}", portrait_kind_name(portrait.kind()));
        println!(
            "  point period {}  ray period {}  valence {}  rotation {rotation}",
            portrait.point_period(),
            portrait.ray_period(),
            portrait.valence()
        );
        println!("  characteristic arc ({} -> {})", chr.start(), chr.end());
        println!("  critical arc       ({} -> {})", crit.start(), crit.end());
        println!("  classes {portrait}");
    } else {
        println!("status=ok");
        println!(
            "theta1={t1} theta2={t2} kind={} point_period={} ray_period={} valence={} \
             rotation={rotation} characteristic={}->{} critical={}->{} classes={classes}",
            portrait_kind_name(portrait.kind()),
            portrait.point_period(),
            portrait.ray_period(),
            portrait.valence(),
            chr.start(),
            chr.end(),
            crit.start(),
            crit.end()
        );
    }
    Ok(Status::Ok)
}

fn print_counts(atlas: &Atlas, pretty: bool) {
    for (period, count) in atlas.per_period_counts() {
        if pretty {
            println!("  period {period}: {count} component{}", if count == 1 { "" } else { "s" });
        } else {
            println!("period={period} count={count}");
        }
    }
}

fn cmd_atlas_build(max_period: u32, path: &PathBuf, pretty: bool) -> Result<Status, String> {
    let atlas = Atlas::build(max_period).map_err(|e| e.to_string())?;
    atlas.save(path).map_err(|e| e.to_string())?;
    if pretty {
        println!(
            "built atlas of {} components up to period {max_period} at {}",
            atlas.components().len(),
            path.display()
        );
    } else {
        println!("status=ok");
        println!(
            "max_period={max_period} components={} path={}",
            atlas.components().len(),
            path.display()
        );
    }
    print_counts(&atlas, pretty);
    Ok(Status::Ok)
}

fn print_component(c: &qlam::atlas::HyperbolicComponent, pretty: bool) {
    if pretty {
        let rotation = c
            .rotation
            .map(|r| format!("{}/{}", r.numer(), r.denom()))
            .unwrap_or_else(|| "-".to_string());
        println!(
            "period {}  root ({}, {})  {}  rotation {rotation}  address {}",
            c.period, c.root_pair.0, c.root_pair.1, c.kind, c.address
        );
    } else {
        println!("{}", component_record(c));
    }
}

fn cmd_atlas_query(
    path: &PathBuf,
    angle: Option<&str>,
    address: Option<&str>,
    enclosing: bool,
    pretty: bool,
) -> Result<Status, String> {
    let atlas = Atlas::load(path).map_err(|e| e.to_string())?;
    if !pretty {
        println!("status=ok");
    }
    match (angle, address) {
        (Some(a), None) => {
            let theta = parse_angle(a)?;
            let component = if enclosing {
                atlas
                    .enclosing_component(&theta)
                    .ok_or_else(|| format!("no wake strictly contains {theta}"))?
            } else {
                atlas
                    .find_by_root_angle(&theta)
                    .ok_or_else(|| format!("no component has root angle {theta}"))?
            };
            print_component(component, pretty);
        }
        (None, Some(s)) => {
            if s.contains('-') {
                let addr: LabelledAddress = s.parse()?;
                let component = atlas
                    .find_by_labelled_address(&addr)
                    .ok_or_else(|| format!("no component has address {addr}"))?;
                print_component(component, pretty);
            } else {
                let periods: Vec<u32> = s
                    .split(',')
                    .map(|p| p.trim().parse().map_err(|_| format!("bad period `{p}`")))
                    .collect::<Result<_, _>>()?;
                let matches = atlas.find_by_address(&periods);
                if matches.is_empty() {
                    return Err(format!("no component has address {s}"));
                }
                for component in matches {
                    print_component(component, pretty);
                }
            }
        }
        _ => return Err("query needs exactly one of --angle or --address".to_string()),
    }
    Ok(Status::Ok)
}

fn cmd_atlas_info(path: &PathBuf, pretty: bool) -> Result<Status, String> {
    let atlas = Atlas::load(path).map_err(|e| e.to_string())?;
    if pretty {
        println!(
            "atlas up to period {}: {} components",
            atlas.max_period(),
            atlas.components().len()
        );
    } else {
        println!("status=ok");
        println!(
            "max_period={} components={}",
            atlas.max_period(),
            atlas.components().len()
        );
    }
    print_counts(&atlas, pretty);
    Ok(Status::Ok)
}

struct CheckLog {
    pretty: bool,
    failures: usize,
}

impl CheckLog {
    fn report(&mut self, name: &str, detail: &str, pass: bool) {
        if !pass {
            self.failures += 1;
        }
        let result = if pass { "pass" } else { "fail" };
        if self.pretty {
            println!("{result}  {name} ({detail})");
        } else {
            println!("check={name} {detail} result={result}");
        }
    }

    fn info(&mut self, name: &str, detail: &str) {
        if self.pretty {
            println!("info  {name} ({detail})");
        } else {
            println!("check={name} {detail} result=info");
        }
    }
}

fn cmd_verify(max_period: u32, depth: Option<usize>, pretty: bool) -> Result<Status, String> {
    if max_period < 2 {
        return Err("--max-period must be at least 2".to_string());
    }
    let depth = depth.unwrap_or(2 * max_period as usize);
    if depth < 2 * max_period as usize {
        return Err(format!(
            "--depth must be at least twice --max-period ({})",
            2 * max_period
        ));
    }
    let mut log = CheckLog { pretty, failures: 0 };

    let atlas = Atlas::build(max_period).map_err(|e| e.to_string())?;
    let components = atlas.components().len();

    let rigidity = rigidity_sweep(max_period);
    log.report(
        "rotation_rigidity",
        &format!(
            "portraits={} counterexamples={}",
            rigidity.portraits_checked,
            rigidity.counterexamples.len()
        ),
        rigidity.counterexamples.is_empty(),
    );

    let address_collisions = labelled_address_collisions(&atlas);
    log.report(
        "labelled_address_injectivity",
        &format!("components={components} collisions={}", address_collisions.len()),
        address_collisions.is_empty(),
    );

    let bundle = bundle_collisions(&atlas).map_err(|e| e.to_string())?;
    log.report(
        "bundle_injectivity",
        &format!("components={components} collisions={}", bundle.len()),
        bundle.is_empty(),
    );

    match unlabelled_address_collision(&atlas) {
        Some((i, j)) => {
            let (a, b) = (&atlas.components()[i], &atlas.components()[j]);
            log.report(
                "unlabelled_address_witness",
                &format!(
                    "pair={},{} address={}",
                    a.root_pair.0,
                    b.root_pair.0,
                    join(&a.address.periods(), ",")
                ),
                true,
            );
        }
        None => log.report(
            "unlabelled_address_witness",
            "pair=none",
            max_period < 5,
        ),
    }

    verify_solenoid(depth, &mut log)?;

    let mut leaf_disagreements = 0usize;
    let mut off_pattern = 0usize;
    let mut unbounded_disagreements = 0usize;
    for c in atlas.components() {
        if c.kind == ComponentKind::MainCardioid {
            continue;
        }
        for step in lu_discrepancy_report(c, &atlas).map_err(|e| e.to_string())? {
            if !step.unbounded_agree() {
                unbounded_disagreements += 1;
            }
            if !step.leaf_count_agree() {
                leaf_disagreements += 1;
                if step.step_kind != ComponentKind::Satellite {
                    off_pattern += 1;
                }
            }
        }
    }
    log.report(
        "lu_unbounded_agreement",
        &format!("disagreements={unbounded_disagreements}"),
        unbounded_disagreements == 0,
    );
    log.info(
        "lu_leaf_count_discrepancies",
        &format!("satellite_steps={leaf_disagreements} other_steps={off_pattern}"),
    );

    let bounds = nonperiodic_bound_check(&atlas, max_period).map_err(|e| e.to_string())?;
    log.report(
        "valence_bound",
        &format!(
            "components={} violations={}",
            bounds.components_checked,
            bounds.violations.len()
        ),
        bounds.violations.is_empty(),
    );

    let status = if log.failures == 0 { "ok" } else { "violation" };
    if pretty {
        println!("{status}: {components} components checked, {} failing sweep(s)", log.failures);
    } else {
        println!("status={status} components={components} failures={}", log.failures);
    }
    Ok(if log.failures == 0 { Status::Ok } else { Status::Violation })
}

fn verify_solenoid(depth: usize, log: &mut CheckLog) -> Result<(), String> {
    let probes = probe_points(depth);
    let unit = SolenoidPoint::unit(depth);

    let mut group_ok = true;
    for x in &probes {
        let inv = x.inverse();
        group_ok &= x.group_mul(&unit).map_err(|e| e.to_string())? == *x;
        group_ok &= x.group_mul(&inv).map_err(|e| e.to_string())? == unit;
        for y in &probes {
            let xy = x.group_mul(y).map_err(|e| e.to_string())?;
            for z in &probes {
                let yz = y.group_mul(z).map_err(|e| e.to_string())?;
                group_ok &= xy.group_mul(z).map_err(|e| e.to_string())?
                    == x.group_mul(&yz).map_err(|e| e.to_string())?;
            }
        }
    }
    log.report(
        "solenoid_group_axioms",
        &format!("depth={depth} probes={}", probes.len()),
        group_ok,
    );

    let mut rho_ok = true;
    let samples: Vec<BigRational> = (-6i64..=6)
        .flat_map(|n| (1i64..=4).map(move |d| BigRational::new(BigInt::from(n), BigInt::from(d))))
        .collect();
    for s in &samples {
        for t in &samples {
            let sum = rho(&(s + t), depth);
            let product = rho(s, depth)
                .group_mul(&rho(t, depth))
                .map_err(|e| e.to_string())?;
            rho_ok &= sum == product;
        }
    }
    log.report(
        "rho_homomorphism",
        &format!("depth={depth} samples={}", samples.len()),
        rho_ok,
    );

    let mut shift_ok = true;
    for x in &probes {
        // unshift consumes one coordinate, so compare at the shallower depth.
        shift_ok &= x.shift().unshift().map_err(|e| e.to_string())?
            == x.truncate(depth.saturating_sub(1));
        for y in &probes {
            let xy = x.group_mul(y).map_err(|e| e.to_string())?;
            shift_ok &= xy.shift()
                == x.shift().group_mul(&y.shift()).map_err(|e| e.to_string())?;
        }
    }
    log.report(
        "shift_automorphism",
        &format!("depth={depth} probes={}", probes.len()),
        shift_ok,
    );

    let mut point = unit.clone();
    let mut order_ok = true;
    for step in 1u64..=(1 << depth) {
        point = point.adding_machine();
        if point == unit {
            order_ok = step == 1 << depth;
            break;
        }
    }
    order_ok &= point == unit;
    log.report(
        "adding_machine_order",
        &format!("depth={depth} order=2^{depth}"),
        order_ok,
    );

    let relation = shift_inversion_relation(depth).map_err(|e| e.to_string())?;
    log.info(
        "shift_inversion_relation",
        &format!("commute={} dihedral={}", relation.commute, relation.dihedral),
    );
    Ok(())
}

fn cmd_render_portrait(angles: &str, out: &PathBuf) -> Result<Status, String> {
    let (t1, t2) = parse_angle_pair(angles)?;
    let portrait = realize_portrait(&t1, &t2).map_err(|e| e.to_string())?;
    let svg = render_portrait(&portrait);
    let chords = svg.matches("<line").count();
    std::fs::write(out, &svg).map_err(|e| e.to_string())?;
    println!("status=ok");
    println!("out={} chords={chords}", out.display());
    Ok(Status::Ok)
}

fn cmd_render_wakes(max_period: u32, out: &PathBuf) -> Result<Status, String> {
    let atlas = Atlas::build(max_period).map_err(|e| e.to_string())?;
    let (svg, chords) = render_wakes(&atlas, max_period);
    std::fs::write(out, &svg).map_err(|e| e.to_string())?;
    println!("status=ok");
    println!("out={} chords={chords}", out.display());
    Ok(Status::Ok)
}
