//! Locating the `galrep` executable from a test binary.

use std::path::{Path, PathBuf};
use std::process::Command;

/// The profile directory (`target/debug`, `target/release`) that holds the
/// running test executable.
fn profile_dir() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?;
    let dir = if deps.file_name()? == "deps" { deps.parent()? } else { deps };
    Some(dir.to_path_buf())
}

/// Path to the `galrep` binary built alongside the current test executable,
/// building it with the same profile if it is missing.
pub fn galrep_binary() -> Result<PathBuf, String> {
    let dir = profile_dir().ok_or("cannot locate the target directory")?;
    let bin = dir.join(format!("galrep{}", std::env::consts::EXE_SUFFIX));
    if bin.exists() {
        return Ok(bin);
    }
    build(&dir)?;
    if bin.exists() {
        Ok(bin)
    } else {
        Err(format!("{} was not produced", bin.display()))
    }
}

fn build(profile_dir: &Path) -> Result<(), String> {
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let mut cmd = Command::new(cargo);
    cmd.args(["build", "--quiet", "-p", "galrep-tool", "--bin", "galrep"]);
    if let Some(target) = profile_dir.parent() {
        cmd.arg("--target-dir").arg(target);
    }
    if profile_dir.file_name().is_some_and(|p| p == "release") {
        cmd.arg("--release");
    }
    let status = cmd.status().map_err(|e| e.to_string())?;
    if status.success() {
        Ok(())
    } else {
        Err(format!("building galrep failed with {status}"))
    }
}
