//! Named profiles available to class expressions.

use std::collections::BTreeMap;
use std::path::Path;

use hodgez_core::hodge::{parse_profile_json, realizability_lints, CohomologyProfile};

use crate::error::CliError;

pub const MAX_BUILTIN_PROJECTIVE_SPACE: u32 = 16;

/// A name-to-profile map seeded with `point`, `P0`..`P16`, and the
/// reserved Lefschetz atom `L`. Built-ins cannot be overridden and names
/// must be unique across all loaded files.
pub struct ProfileLibrary {
    profiles: BTreeMap<String, CohomologyProfile>,
}

impl ProfileLibrary {
    pub fn with_builtins() -> ProfileLibrary {
        let mut profiles = BTreeMap::new();
        let point = CohomologyProfile::point();
        profiles.insert(point.name().to_string(), point);
        for n in 0..=MAX_BUILTIN_PROJECTIVE_SPACE {
            let p = CohomologyProfile::projective_space(n);
            profiles.insert(p.name().to_string(), p);
        }
        ProfileLibrary { profiles }
    }

    pub fn is_reserved(name: &str) -> bool {
        if name == "L" || name == "point" {
            return true;
        }
        name.strip_prefix('P')
            .and_then(|rest| rest.parse::<u32>().ok())
            .is_some_and(|n| n <= MAX_BUILTIN_PROJECTIVE_SPACE)
    }

    pub fn get(&self, name: &str) -> Option<&CohomologyProfile> {
        self.profiles.get(name)
    }

    pub fn insert(&mut self, profile: CohomologyProfile) -> Result<(), CliError> {
        let name = profile.name().to_string();
        if Self::is_reserved(&name) {
            return Err(CliError::input(format!(
                "profile name {name:?} is reserved for a built-in"
            )));
        }
        if self.profiles.contains_key(&name) {
            return Err(CliError::input(format!("duplicate profile name {name:?}")));
        }
        self.profiles.insert(name, profile);
        Ok(())
    }

    /// Load one profile document. In strict mode realizability lints are
    /// hard errors; otherwise they are returned as warnings.
    pub fn load_file(&mut self, path: &Path, strict: bool) -> Result<Vec<String>, CliError> {
        let (profile, warnings) = load_profile_file(path, strict)?;
        self.insert(profile)?;
        Ok(warnings)
    }
}

/// Parse and validate a profile file without inserting it anywhere.
pub fn load_profile_file(
    path: &Path,
    strict: bool,
) -> Result<(CohomologyProfile, Vec<String>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let profile = parse_profile_json(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let lints = realizability_lints(&profile);
    if strict && !lints.is_empty() {
        return Err(CliError::input(format!(
            "{}: profile {:?} fails realizability lints:\n  {}",
            path.display(),
            profile.name(),
            lints.join("\n  ")
        )));
    }
    let warnings = lints
        .into_iter()
        .map(|l| format!("{}: profile {:?}: {l}", path.display(), profile.name()))
        .collect();
    Ok((profile, warnings))
}
