//! Reference data: the table of standard zero divisors, the curvature
//! quartic and the two Gram certificates. The files are compiled in; the
//! `SEDGEO_GOLDEN_DIR` environment variable points at a replacement
//! directory.

use std::borrow::Cow;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const GOLDEN_DIR_ENV: &str = "SEDGEO_GOLDEN_DIR";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GoldenFile {
    Table1,
    FrPoly,
    CertR0,
    CertR49,
}

impl GoldenFile {
    pub const ALL: [GoldenFile; 4] = [Self::Table1, Self::FrPoly, Self::CertR0, Self::CertR49];

    pub fn file_name(self) -> &'static str {
        match self {
            Self::Table1 => "table1.txt",
            Self::FrPoly => "fr_poly.txt",
            Self::CertR0 => "cert_r0.txt",
            Self::CertR49 => "cert_r49.txt",
        }
    }

    pub fn embedded(self) -> &'static str {
        match self {
            Self::Table1 => include_str!("../golden/table1.txt"),
            Self::FrPoly => include_str!("../golden/fr_poly.txt"),
            Self::CertR0 => include_str!("../golden/cert_r0.txt"),
            Self::CertR49 => include_str!("../golden/cert_r49.txt"),
        }
    }

    /// SHA-256 of the compiled-in file.
    pub fn embedded_sha256(self) -> &'static str {
        match self {
            Self::Table1 => "b067943b1646440937889de8cc96fb384c341814d6ce310b514d9a6e0ed1b96b",
            Self::FrPoly => "b00b282d79d8dddd4b2d9f871e08a6aec6cf7a6e85eeba8dc79bb6ff80b88179",
            Self::CertR0 => "9daf922cad265a75f168bf6b35b841a621b34e30fd976591a78cb18868adc9ae",
            Self::CertR49 => "273f1463546a779309bdfb9c60e309d89d22b85109fababaf9c23d19efb35436",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GoldenSource {
    Embedded,
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct Golden {
    pub file: GoldenFile,
    pub text: Cow<'static, str>,
    pub source: GoldenSource,
}

impl Golden {
    pub fn sha256(&self) -> String {
        sha256_hex(&self.text)
    }

    /// Whether the contents equal the compiled-in reference.
    pub fn matches_embedded(&self) -> bool {
        self.sha256() == self.file.embedded_sha256()
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Override directory from the environment, if set and nonempty.
pub fn golden_dir() -> Option<PathBuf> {
    std::env::var_os(GOLDEN_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Loads a golden file, honouring the override directory.
pub fn load(file: GoldenFile) -> Result<Golden> {
    match golden_dir() {
        None => {
            let g = Golden {
                file,
                text: Cow::Borrowed(file.embedded()),
                source: GoldenSource::Embedded,
            };
            if !g.matches_embedded() {
                return Err(Error::Golden(format!(
                    "checksum mismatch in embedded {}",
                    file.file_name()
                )));
            }
            Ok(g)
        }
        Some(dir) => load_from(file, dir),
    }
}

pub fn load_from(file: GoldenFile, dir: PathBuf) -> Result<Golden> {
    let path = dir.join(file.file_name());
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Golden(format!("{}: {e}", path.display())))?;
    Ok(Golden {
        file,
        text: Cow::Owned(text),
        source: GoldenSource::File(path),
    })
}
