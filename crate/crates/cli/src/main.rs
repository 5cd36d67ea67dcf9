//! Command-line driver for the chronopack solver stack.
//!
//! Exit codes: 0 success/feasible, 1 infeasible, 2 input error,
//! 3 validation failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chronopack::format::{
    emit_boxes_csv, emit_gantt_csv, emit_instance, emit_schedule, parse_instance, parse_schedule,
};
use chronopack::generator::{generate_instance, GenMode, GenParams};
use chronopack::geometry::ItemId;
use chronopack::num::format_scalar;
use chronopack::optimizer::{solve, SolveError, SolveOptions};
use chronopack::oracle::{
    grid_pack_oracle, time_grid_schedule_oracle, IntegerInstance, OracleLimits,
};
use chronopack::packer::{pack_decision, PackError, PackItem};
use chronopack::scheduler::{
    greedy_schedule, split_oversize, validate_schedule, BakeItem, SchedError, Schedule,
};
use chronopack::{Instance, Scalar};

const EXIT_OK: u8 = 0;
const EXIT_INFEASIBLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INVALID: u8 = 3;

/// Environment variable overriding the default item-count guard of `solve`.
const GUARD_ENV: &str = "CHRONOPACK_GUARD_N";

#[derive(Parser)]
#[command(
    name = "chronopack",
    version,
    about = "Exact space-time packing and scheduling for cuboid items"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether all items of an instance fit the container at once
    Pack {
        /// Instance file
        file: PathBuf,
        /// Drop items that fit in no orientation instead of failing
        #[arg(long)]
        drop_oversize: bool,
    },
    /// Greedy beat-wise schedule, baking items in the order of the file
    Schedule {
        /// Instance file
        file: PathBuf,
        /// Baking order; only `as-given` (the file order) is supported
        #[arg(long, default_value = "as-given")]
        order: String,
        /// Drop items that fit in no orientation instead of failing
        #[arg(long)]
        drop_oversize: bool,
        /// Write a Gantt CSV (id,start,end) here
        #[arg(long, value_name = "PATH")]
        gantt: Option<PathBuf>,
        /// Write per-beat box geometry CSV here
        #[arg(long, value_name = "PATH")]
        boxes: Option<PathBuf>,
    },
    /// Minimize the makespan exactly over all baking orders
    Solve {
        /// Instance file
        file: PathBuf,
        /// Stop once a schedule meets the volume/time lower bound
        #[arg(long)]
        prune: bool,
        /// Worker threads; the result is identical for any count
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Ignore the item-count guard
        #[arg(long)]
        force: bool,
        /// Drop items that fit in no orientation instead of failing
        #[arg(long)]
        drop_oversize: bool,
        /// Write a Gantt CSV (id,start,end) here
        #[arg(long, value_name = "PATH")]
        gantt: Option<PathBuf>,
        /// Write per-beat box geometry CSV here
        #[arg(long, value_name = "PATH")]
        boxes: Option<PathBuf>,
    },
    /// Check a schedule file against its instance
    Validate {
        /// Instance file
        instance: PathBuf,
        /// Schedule file
        schedule: PathBuf,
        /// Also require starts to be non-decreasing along the declared order
        #[arg(long)]
        ordered: bool,
    },
    /// Generate an instance file from a seed
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of items
        #[arg(long)]
        items: usize,
        /// Container extents L W H
        #[arg(long, num_args = 3, value_names = ["L", "W", "H"])]
        container: Vec<u32>,
        /// Item dimension range (inclusive)
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [1u32, 3])]
        dims: Vec<u32>,
        /// Bake time range (inclusive)
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [1u32, 3])]
        bake: Vec<u32>,
        /// random: independent draws; feasible-by-cuts: guillotine cuts of
        /// the container, so the whole set packs
        #[arg(long, value_enum, default_value_t = ModeArg::Random)]
        mode: ModeArg,
        /// Output file
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the brute-force oracles (all-integer instances only)
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive integer-position packing check
    Pack {
        /// Instance file (bake times ignored)
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_items: usize,
    },
    /// Exhaustive integer-start-time schedule minimum
    Schedule {
        /// Instance file
        file: PathBuf,
        /// Constrain starts to be non-decreasing along the file order
        #[arg(long)]
        ordered: bool,
        #[arg(long, default_value_t = 4)]
        max_items: usize,
        #[arg(long, default_value_t = 8)]
        max_total_time: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Random,
    FeasibleByCuts,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    ExitCode::from(run(Cli::parse()))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Pack {
            file,
            drop_oversize,
        } => cmd_pack(&file, drop_oversize),
        Command::Schedule {
            file,
            order,
            drop_oversize,
            gantt,
            boxes,
        } => cmd_schedule(
            &file,
            &order,
            drop_oversize,
            gantt.as_deref(),
            boxes.as_deref(),
        ),
        Command::Solve {
            file,
            prune,
            workers,
            force,
            drop_oversize,
            gantt,
            boxes,
        } => cmd_solve(
            &file,
            prune,
            workers,
            force,
            drop_oversize,
            gantt.as_deref(),
            boxes.as_deref(),
        ),
        Command::Validate {
            instance,
            schedule,
            ordered,
        } => cmd_validate(&instance, &schedule, ordered),
        Command::Gen {
            seed,
            items,
            container,
            dims,
            bake,
            mode,
            output,
        } => cmd_gen(seed, items, &container, &dims, &bake, mode, &output),
        Command::Oracle { command } => match command {
            OracleCommand::Pack { file, max_items } => cmd_oracle_pack(&file, max_items),
            OracleCommand::Schedule {
                file,
                ordered,
                max_items,
                max_total_time,
            } => cmd_oracle_schedule(&file, ordered, max_items, max_total_time),
        },
    }
}

fn fail(message: impl std::fmt::Display, code: u8) -> u8 {
    eprintln!("error: {message}");
    code
}

fn read_instance(path: &Path) -> Result<Instance, u8> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(format_args!("{}: {e}", path.display()), EXIT_INPUT))?;
    parse_instance(&text).map_err(|e| fail(format_args!("{}: {e}", path.display()), EXIT_INPUT))
}

/// Applies --drop-oversize, echoing dropped ids to stderr.
fn drop_or_keep(instance: &Instance, drop_oversize: bool) -> Vec<BakeItem> {
    if !drop_oversize {
        return instance.items.clone();
    }
    let (fitting, dropped) = split_oversize(&instance.container, &instance.items);
    for id in &dropped {
        eprintln!("dropped oversize item {id}");
    }
    fitting
}

fn write_file(path: &Path, contents: &str) -> Result<(), u8> {
    fs::write(path, contents).map_err(|e| fail(format_args!("{}: {e}", path.display()), EXIT_INPUT))
}

/// Validates a schedule the tool itself produced; a violation here is a bug,
/// reported as a validation failure rather than silently written out.
fn emit_checked(
    instance: &Instance,
    items: &[BakeItem],
    schedule: &Schedule,
    gantt: Option<&Path>,
    boxes: Option<&Path>,
) -> Result<(), u8> {
    let report = validate_schedule(&instance.container, items, schedule, true);
    if !report.ok() {
        for v in &report.violations {
            eprintln!("internal: {v}");
        }
        return Err(EXIT_INVALID);
    }
    if let Some(path) = gantt {
        write_file(path, &emit_gantt_csv(schedule))?;
    }
    if let Some(path) = boxes {
        write_file(path, &emit_boxes_csv(schedule))?;
    }
    print!("{}", emit_schedule(schedule));
    Ok(())
}

fn cmd_pack(file: &Path, drop_oversize: bool) -> u8 {
    let instance = match read_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let items = drop_or_keep(&instance, drop_oversize);
    let pack_items: Vec<PackItem<Scalar>> = items
        .iter()
        .map(|i| PackItem::new(i.id.clone(), i.dims.clone()))
        .collect();
    match pack_decision(&instance.container, &pack_items) {
        Ok(Some(layout)) => {
            println!("FEASIBLE");
            for placed in layout.items() {
                println!(
                    "place {} {} {} {} {}",
                    placed.id,
                    format_scalar(&placed.placement.x),
                    format_scalar(&placed.placement.y),
                    format_scalar(&placed.placement.z),
                    placed.placement.orient.code(),
                );
            }
            EXIT_OK
        }
        Ok(None) => {
            println!("INFEASIBLE");
            EXIT_INFEASIBLE
        }
        Err(e @ PackError::ItemCannotFit { .. }) => {
            println!("INFEASIBLE");
            eprintln!("{e}");
            EXIT_INFEASIBLE
        }
        Err(e) => fail(e, EXIT_INPUT),
    }
}

fn cmd_schedule(
    file: &Path,
    order: &str,
    drop_oversize: bool,
    gantt: Option<&Path>,
    boxes: Option<&Path>,
) -> u8 {
    if order != "as-given" {
        return fail(
            format_args!("unsupported order `{order}`; only `as-given` exists"),
            EXIT_INPUT,
        );
    }
    let instance = match read_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let items = drop_or_keep(&instance, drop_oversize);
    match greedy_schedule(&instance.container, &items) {
        Ok(schedule) => match emit_checked(&instance, &items, &schedule, gantt, boxes) {
            Ok(()) => EXIT_OK,
            Err(code) => code,
        },
        Err(e @ SchedError::ItemCannotFit { .. }) => {
            println!("INFEASIBLE");
            eprintln!("{e}");
            EXIT_INFEASIBLE
        }
        Err(e) => fail(e, EXIT_INPUT),
    }
}

fn cmd_solve(
    file: &Path,
    prune: bool,
    workers: usize,
    force: bool,
    drop_oversize: bool,
    gantt: Option<&Path>,
    boxes: Option<&Path>,
) -> u8 {
    if workers == 0 {
        return fail("--workers must be at least 1", EXIT_INPUT);
    }
    let mut options = SolveOptions {
        prune,
        workers,
        force,
        ..SolveOptions::default()
    };
    if let Ok(raw) = std::env::var(GUARD_ENV) {
        match raw.parse::<usize>() {
            Ok(guard) => options.guard = guard,
            Err(_) => {
                return fail(
                    format_args!("{GUARD_ENV}=`{raw}` is not a number"),
                    EXIT_INPUT,
                )
            }
        }
    }
    let instance = match read_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let items = drop_or_keep(&instance, drop_oversize);
    let solvable = Instance {
        container: instance.container.clone(),
        items,
    };
    match solve(&solvable, &options) {
        Ok(result) => {
            println!("lower_bound {}", format_scalar(&result.lower_bound));
            println!("evaluated {}", result.permutations_evaluated);
            println!("pruned {}", result.permutations_pruned);
            match emit_checked(&instance, &solvable.items, &result.best, gantt, boxes) {
                Ok(()) => EXIT_OK,
                Err(code) => code,
            }
        }
        Err(SolveError::Sched(e @ SchedError::ItemCannotFit { .. })) => {
            println!("INFEASIBLE");
            eprintln!("{e}");
            EXIT_INFEASIBLE
        }
        Err(e) => fail(e, EXIT_INPUT),
    }
}

fn cmd_validate(instance_path: &Path, schedule_path: &Path, ordered: bool) -> u8 {
    let instance = match read_instance(instance_path) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let text = match fs::read_to_string(schedule_path) {
        Ok(t) => t,
        Err(e) => return fail(format_args!("{}: {e}", schedule_path.display()), EXIT_INPUT),
    };
    let schedule = match parse_schedule(&text, &instance) {
        Ok(s) => s,
        Err(e) => return fail(format_args!("{}: {e}", schedule_path.display()), EXIT_INPUT),
    };
    let report = validate_schedule(&instance.container, &instance.items, &schedule, ordered);
    if report.ok() {
        println!("OK");
        EXIT_OK
    } else {
        for v in &report.violations {
            println!("{v}");
        }
        EXIT_INVALID
    }
}

fn cmd_gen(
    seed: u64,
    items: usize,
    container: &[u32],
    dims: &[u32],
    bake: &[u32],
    mode: ModeArg,
    output: &Path,
) -> u8 {
    let params = GenParams {
        seed,
        items,
        container: [container[0], container[1], container[2]],
        dim_range: (dims[0], dims[1]),
        bake_range: (bake[0], bake[1]),
        mode: match mode {
            ModeArg::Random => GenMode::Random,
            ModeArg::FeasibleByCuts => GenMode::FeasibleByCuts,
        },
    };
    match generate_instance(&params) {
        Ok(instance) => match write_file(output, &emit_instance(&instance)) {
            Ok(()) => EXIT_OK,
            Err(code) => code,
        },
        Err(e) => fail(e, EXIT_INPUT),
    }
}

fn integer_instance(path: &Path, max_items: usize) -> Result<IntegerInstance, u8> {
    let instance = read_instance(path)?;
    if instance.items.len() > max_items {
        return Err(fail(
            format_args!(
                "instance has {} items, above the oracle cap of {max_items}",
                instance.items.len()
            ),
            EXIT_INPUT,
        ));
    }
    IntegerInstance::from_instance(&instance).map_err(|e| fail(e, EXIT_INPUT))
}

fn cmd_oracle_pack(file: &Path, max_items: usize) -> u8 {
    let integer = match integer_instance(file, max_items) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let dims: Vec<[i64; 3]> = integer.items().iter().map(|i| i.dims).collect();
    if grid_pack_oracle(integer.container(), &dims, true) {
        println!("FEASIBLE");
        EXIT_OK
    } else {
        println!("INFEASIBLE");
        EXIT_INFEASIBLE
    }
}

fn cmd_oracle_schedule(file: &Path, ordered: bool, max_items: usize, max_total_time: i64) -> u8 {
    let integer = match integer_instance(file, max_items) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let limits = OracleLimits {
        max_items,
        max_total_time,
    };
    let order: Vec<ItemId> = integer.items().iter().map(|i| i.id.clone()).collect();
    match time_grid_schedule_oracle(&integer, ordered.then_some(order.as_slice()), &limits) {
        Ok(Some(makespan)) => {
            println!("makespan {makespan}");
            EXIT_OK
        }
        Ok(None) => {
            println!("INFEASIBLE");
            EXIT_INFEASIBLE
        }
        Err(e) => fail(e, EXIT_INPUT),
    }
}
