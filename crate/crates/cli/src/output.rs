use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

/// Destination of a command's primary output. Files are written to a
/// sibling temporary and renamed into place on [`Sink::commit`].
pub enum Sink<'a> {
    Stream(&'a mut dyn Write),
    File { path: PathBuf, tmp: PathBuf, w: BufWriter<File> },
}

fn tmp_path(path: &Path) -> PathBuf {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!(".{}.{}.tmp", name, std::process::id()))
}

impl<'a> Sink<'a> {
    pub fn open(out: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Self> {
        match out {
            None => Ok(Sink::Stream(stdout)),
            Some(path) => {
                let tmp = tmp_path(path);
                let f = File::create(&tmp).map_err(|source| CliError::Io { path: tmp.clone(), source })?;
                Ok(Sink::File { path: path.to_path_buf(), tmp, w: BufWriter::new(f) })
            }
        }
    }

    pub fn writer(&mut self) -> &mut dyn Write {
        match self {
            Sink::Stream(w) => *w,
            Sink::File { w, .. } => w,
        }
    }

    fn path(&self) -> PathBuf {
        match self {
            Sink::Stream(_) => PathBuf::from("<stdout>"),
            Sink::File { path, .. } => path.clone(),
        }
    }

    pub fn io_error(&self, source: io::Error) -> CliError {
        CliError::Io { path: self.path(), source }
    }

    pub fn commit(self) -> Result<()> {
        match self {
            Sink::Stream(w) => w.flush().map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
            Sink::File { path, tmp, w } => {
                let f = w.into_inner().map_err(|e| CliError::Io { path: tmp.clone(), source: e.into_error() })?;
                f.sync_all().map_err(|source| CliError::Io { path: tmp.clone(), source })?;
                fs::rename(&tmp, &path).map_err(|source| CliError::Io { path, source })
            }
        }
    }

    /// Remove the temporary file of an abandoned write.
    pub fn abort(self) {
        if let Sink::File { tmp, w, .. } = self {
            drop(w);
            let _ = fs::remove_file(tmp);
        }
    }
}

/// Write `text` (plus a trailing newline) in one go.
pub fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    let mut sink = Sink::open(out, stdout)?;
    if let Err(e) = writeln!(sink.writer(), "{}", text) {
        let err = sink.io_error(e);
        sink.abort();
        return Err(err);
    }
    sink.commit()
}
