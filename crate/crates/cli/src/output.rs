//! Output sinks and the JSON/CSV encodings.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use rmgen_core::{Matrix, Quaternion, RingMatrix, Scalar};
use serde::Serialize;

use crate::error::CliError;

/// Where a command's primary and sidecar outputs go. With `--out -` the
/// primary output is stdout and the sidecar goes to stderr.
pub struct Sinks<'a> {
    pub stdout: &'a mut (dyn Write + Send),
    pub stderr: &'a mut (dyn Write + Send),
}

pub enum Target<'s, 'a> {
    Borrowed(&'s mut (dyn Write + Send + 'a)),
    File(BufWriter<File>),
}

impl Write for Target<'_, '_> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Target::Borrowed(w) => w.write(buf),
            Target::File(f) => f.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Target::Borrowed(w) => w.flush(),
            Target::File(f) => f.flush(),
        }
    }
}

impl<'a> Sinks<'a> {
    pub fn primary<'s>(&'s mut self, path: &str) -> Result<Target<'s, 'a>, CliError> {
        if path == "-" {
            Ok(Target::Borrowed(self.stdout))
        } else {
            Ok(Target::File(BufWriter::new(File::create(path)?)))
        }
    }

    /// `<out>.json` next to a file output, stderr for stdout output.
    pub fn sidecar<'s>(&'s mut self, path: &str) -> Result<Target<'s, 'a>, CliError> {
        if path == "-" {
            Ok(Target::Borrowed(self.stderr))
        } else {
            Ok(Target::File(BufWriter::new(File::create(format!("{path}.json"))?)))
        }
    }
}

/// Matrix entries as nested row-major arrays: reals as numbers, complex
/// numbers as `[re, im]`, quaternions as `[a, b, c, d]`.
#[derive(Serialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Real(Vec<Vec<f64>>),
    Complex(Vec<Vec<[f64; 2]>>),
    Quaternion(Vec<Vec<[f64; 4]>>),
}

fn rows<S: Scalar, E>(m: &Matrix<S>, f: impl Fn(S) -> E) -> Vec<Vec<E>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&x| f(x)).collect()).collect()
}

impl From<&RingMatrix<f64>> for MatrixJson {
    fn from(m: &RingMatrix<f64>) -> Self {
        match m {
            RingMatrix::Real(m) => MatrixJson::Real(rows(m, |x| x)),
            RingMatrix::Complex(m) => MatrixJson::Complex(rows(m, |z| [z.re, z.im])),
            RingMatrix::Quaternion(m) => {
                MatrixJson::Quaternion(rows(m, |q: Quaternion<f64>| [q.a, q.b, q.c, q.d]))
            }
        }
    }
}

/// CSV header columns for the coefficients of one entry.
pub fn coefficient_columns(m: &RingMatrix<f64>) -> &'static str {
    match m {
        RingMatrix::Real(_) => "value",
        RingMatrix::Complex(_) => "re,im",
        RingMatrix::Quaternion(_) => "a,b,c,d",
    }
}

/// One CSV line per entry: `index,row,col,<coefficients>`.
pub fn write_matrix_csv(w: &mut dyn Write, index: u64, m: &RingMatrix<f64>) -> io::Result<()> {
    fn emit<S: Scalar<Real = f64>>(w: &mut dyn Write, index: u64, m: &Matrix<S>) -> io::Result<()> {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let coeffs: Vec<String> = m[(r, c)].coeffs().iter().map(|x| format!("{x:?}")).collect();
                writeln!(w, "{index},{r},{c},{}", coeffs.join(","))?;
            }
        }
        Ok(())
    }
    match m {
        RingMatrix::Real(m) => emit(w, index, m),
        RingMatrix::Complex(m) => emit(w, index, m),
        RingMatrix::Quaternion(m) => emit(w, index, m),
    }
}

/// Shortest round-trip decimal, as in the JSON output.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
