//! All-or-nothing output: every file is staged next to its target and only
//! persisted once all of them were written.

use std::fs;
use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

pub fn write_all(dir: &Path, files: &[(String, String)]) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::output(dir, e))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::output(dir, e))?;
        tmp.write_all(contents.as_bytes())
            .and_then(|_| tmp.as_file().sync_all())
            .map_err(|e| CliError::output(&dir.join(name), e))?;
        staged.push((tmp, dir.join(name)));
    }
    // temp files not yet persisted are removed on drop
    for (tmp, target) in staged {
        tmp.persist(&target).map_err(|e| CliError::output(&target, e.error))?;
    }
    Ok(())
}
