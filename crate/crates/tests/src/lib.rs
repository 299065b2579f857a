//! Helpers shared by the acceptance suite.

use std::path::PathBuf;
use std::time::Duration;

/// One acceptance line: `PASS [id] name: detail`.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// The `eiwe` binary next to the running test executable, if it was built.
pub fn eiwe_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let bin = dir.join(format!("eiwe{}", std::env::consts::EXE_SUFFIX));
    bin.is_file().then_some(bin)
}
