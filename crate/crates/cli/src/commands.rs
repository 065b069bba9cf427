//! Command implementations. Each returns the exact stdout text plus any
//! warnings; the binary decides exit codes.

use std::path::{Path, PathBuf};

use serde_json::json;

use hodgez_core::hodge::{profile_to_json, CohomologyProfile, RPlusForm};
use hodgez_core::motivic::{
    blowup_profiles, cell_decomposition_class, h_vir, kunneth_product_profile,
};
use hodgez_core::verify::{run_suite, SuiteOutcome};

use crate::error::CliError;
use crate::expr::parse_class_expr;
use crate::library::{load_profile_file, ProfileLibrary};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Default)]
pub struct CommandOutput {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub verification_failed: bool,
}

impl CommandOutput {
    fn text(stdout: String) -> CommandOutput {
        CommandOutput {
            stdout,
            ..CommandOutput::default()
        }
    }
}

fn json_line(value: serde_json::Value) -> String {
    format!("{value}\n")
}

/// Build a library from the built-ins plus any `--profiles` files.
pub fn build_library(
    paths: &[PathBuf],
    strict: bool,
) -> Result<(ProfileLibrary, Vec<String>), CliError> {
    let mut library = ProfileLibrary::with_builtins();
    let mut warnings = Vec::new();
    for path in paths {
        warnings.extend(library.load_file(path, strict)?);
    }
    Ok((library, warnings))
}

fn resolve<'a>(library: &'a ProfileLibrary, name: &str) -> Result<&'a CohomologyProfile, CliError> {
    library
        .get(name)
        .ok_or_else(|| CliError::input(format!("unknown profile {name:?}")))
}

pub fn run_hz(path: &Path, strict: bool, format: OutputFormat) -> Result<CommandOutput, CliError> {
    let (profile, warnings) = load_profile_file(path, strict)?;
    let hz = profile.integral_hodge();
    let stdout = match format {
        OutputFormat::Text => format!("{hz}\n"),
        OutputFormat::Json => json_line(json!({
            "name": profile.name(),
            "dim": profile.dim(),
            "hz": hz.to_string(),
        })),
    };
    Ok(CommandOutput {
        stdout,
        warnings,
        verification_failed: false,
    })
}

pub fn run_product(
    library: &ProfileLibrary,
    x: &str,
    y: &str,
    format: OutputFormat,
) -> Result<CommandOutput, CliError> {
    let product = kunneth_product_profile(resolve(library, x)?, resolve(library, y)?);
    let stdout = match format {
        OutputFormat::Text => format!("{product}\nH_Z = {}\n", product.integral_hodge()),
        OutputFormat::Json => json_line(profile_to_json(&product)),
    };
    Ok(CommandOutput::text(stdout))
}

pub fn run_blowup(
    library: &ProfileLibrary,
    x: &str,
    z: &str,
    codim: u32,
    format: OutputFormat,
) -> Result<CommandOutput, CliError> {
    let (bl, e) = blowup_profiles(resolve(library, x)?, resolve(library, z)?, codim)
        .map_err(|err| CliError::domain(err.to_string()))?;
    let stdout = match format {
        OutputFormat::Text => format!("{bl}\n{e}\n"),
        OutputFormat::Json => json_line(json!({
            "blowup": profile_to_json(&bl),
            "exceptional": profile_to_json(&e),
        })),
    };
    Ok(CommandOutput::text(stdout))
}

pub fn run_reconstruct(
    library: &ProfileLibrary,
    expr: &str,
    degree: Option<u32>,
    format: OutputFormat,
) -> Result<CommandOutput, CliError> {
    let class = parse_class_expr(expr, library)?;
    let value = h_vir(&class);
    if value.denom_exp() > 0 {
        return Err(CliError::domain(format!(
            "not in R+: class carries a denominator (u*v)^{}; reconstruction needs a polynomial class",
            value.denom_exp()
        )));
    }
    let form =
        RPlusForm::extract(value.numerator()).map_err(|err| CliError::domain(err.to_string()))?;
    let degrees: Vec<u32> = match degree {
        Some(i) => vec![i],
        None => (0..=form.max_degree().unwrap_or(0)).collect(),
    };
    let mut groups = Vec::new();
    for i in degrees {
        let group = form
            .group_in_degree(i)
            .map_err(|err| CliError::domain(err.to_string()))?;
        groups.push((i, group));
    }
    let stdout = match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for (i, group) in &groups {
                out.push_str(&format!("H^{i} = {group}\n"));
            }
            out
        }
        OutputFormat::Json => json_line(json!({
            "expr": expr,
            "groups": groups
                .iter()
                .map(|(i, g)| json!([i, g.to_string()]))
                .collect::<Vec<_>>(),
        })),
    };
    Ok(CommandOutput::text(stdout))
}

pub fn run_cells(dims: &[u32], format: OutputFormat) -> Result<CommandOutput, CliError> {
    let value = h_vir(&cell_decomposition_class(dims));
    debug_assert_eq!(value.denom_exp(), 0);
    let stdout = match format {
        OutputFormat::Text => format!("{}\n", value.numerator()),
        OutputFormat::Json => json_line(json!({
            "cells": dims,
            "h_vir": value.numerator().to_string(),
        })),
    };
    Ok(CommandOutput::text(stdout))
}

pub fn run_degree(
    library: &ProfileLibrary,
    expr: &str,
    format: OutputFormat,
) -> Result<CommandOutput, CliError> {
    let class = parse_class_expr(expr, library)?;
    let degree = h_vir(&class).degree();
    let stdout = match format {
        OutputFormat::Text => match degree {
            Some(d) => format!("{d}\n"),
            None => "-inf\n".to_string(),
        },
        OutputFormat::Json => json_line(json!({ "expr": expr, "degree": degree })),
    };
    Ok(CommandOutput::text(stdout))
}

pub fn render_suite_report(outcome: &SuiteOutcome, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = format!(
                "verify {}: seed={} cases={}\npassed={} failed={}\n",
                outcome.suite, outcome.seed, outcome.cases, outcome.passed, outcome.failed
            );
            if let Some(counterexample) = &outcome.first_counterexample {
                out.push_str("first counterexample:\n");
                out.push_str(counterexample);
                out.push('\n');
            }
            out.push_str(if outcome.ok() { "PASS\n" } else { "FAIL\n" });
            out
        }
        OutputFormat::Json => {
            let mut value = serde_json::to_value(outcome).expect("outcome serializes");
            value["ok"] = json!(outcome.ok());
            json_line(value)
        }
    }
}

pub fn run_verify(
    suite: &str,
    seed: u64,
    cases: u64,
    format: OutputFormat,
) -> Result<CommandOutput, CliError> {
    let outcome = run_suite(suite, seed, cases)
        .ok_or_else(|| CliError::input(format!("unknown suite {suite:?}")))?;
    Ok(CommandOutput {
        stdout: render_suite_report(&outcome, format),
        warnings: Vec::new(),
        verification_failed: !outcome.ok(),
    })
}
