//! Content-addressed store of reduced Groebner bases.
//!
//! One JSON file per (generators, order), named by the SHA-256 of a canonical
//! rendering of both. Files are written to a temporary name in the same
//! directory and renamed into place, so readers never observe partial
//! entries. A hit is re-verified through [`QIdeal::insert_basis`]; anything
//! unreadable or inconsistent is reported, recomputed and overwritten.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use schubert_core::groebner::{GroebnerBasis, TermOrder};
use schubert_core::{QIdeal, QPoly, Rational};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

const SCHEMA: &str = "schubert-gb-cache/1";

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: String,
    universe: String,
    order: String,
    generators: Vec<String>,
    basis: Vec<String>,
    checksum: String,
}

#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    Corrupt(String),
}

pub struct GbCache {
    dir: PathBuf,
}

fn sha256_hex(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

fn canonical_generators(ideal: &QIdeal) -> Vec<String> {
    let mut gens: Vec<String> = ideal.gens().iter().map(ToString::to_string).collect();
    gens.sort();
    gens
}

impl GbCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|source| CliError::CacheDir {
            path: dir.clone(),
            source,
        })?;
        Ok(GbCache { dir })
    }

    pub fn key(ideal: &QIdeal, order: &TermOrder) -> String {
        let mut text = format!("{SCHEMA}\n{:?}\n{order}\n", ideal.universe());
        for g in canonical_generators(ideal) {
            text.push_str(&g);
            text.push('\n');
        }
        sha256_hex(&text)
    }

    pub fn path(&self, ideal: &QIdeal, order: &TermOrder) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(ideal, order)))
    }

    /// Seeds `ideal` with the stored basis under `order`, if there is a valid one.
    pub fn load(&self, ideal: &QIdeal, order: &TermOrder) -> Lookup {
        let path = self.path(ideal, order);
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match self.check(ideal, order, &bytes) {
            Ok(()) => Lookup::Hit,
            Err(reason) => Lookup::Corrupt(reason),
        }
    }

    fn check(&self, ideal: &QIdeal, order: &TermOrder, bytes: &[u8]) -> Result<(), String> {
        let entry: Entry = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
        if entry.schema != SCHEMA {
            return Err(format!("unknown schema {:?}", entry.schema));
        }
        if entry.universe != format!("{:?}", ideal.universe())
            || entry.order != order.to_string()
            || entry.generators != canonical_generators(ideal)
        {
            return Err("entry belongs to a different ideal or order".into());
        }
        if entry.checksum != sha256_hex(&entry.basis.join("\n")) {
            return Err("checksum mismatch".into());
        }
        let polys = entry
            .basis
            .iter()
            .map(|s| QPoly::parse(ideal.universe(), s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        ideal.insert_basis(order, &polys).map_err(|e| e.to_string())
    }

    pub fn store(&self, ideal: &QIdeal, order: &TermOrder, gb: &GroebnerBasis<Rational>) -> std::io::Result<()> {
        let basis: Vec<String> = gb.polys().iter().map(ToString::to_string).collect();
        let entry = Entry {
            schema: SCHEMA.into(),
            universe: format!("{:?}", ideal.universe()),
            order: order.to_string(),
            generators: canonical_generators(ideal),
            checksum: sha256_hex(&basis.join("\n")),
            basis,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(ideal, order)).map_err(|e| e.error)?;
        Ok(())
    }

    /// The reduced basis of `ideal` under `order`, from the cache when possible.
    pub fn groebner_basis(&self, ideal: &QIdeal, order: &TermOrder) -> Arc<GroebnerBasis<Rational>> {
        match self.load(ideal, order) {
            Lookup::Hit => return ideal.groebner_basis(order),
            Lookup::Miss => {}
            Lookup::Corrupt(reason) => eprintln!(
                "warning: corrupt cache entry {}: {reason}; recomputing",
                self.path(ideal, order).display()
            ),
        }
        let gb = ideal.groebner_basis(order);
        if let Err(e) = self.store(ideal, order, &gb) {
            eprintln!("warning: cannot write cache entry in {}: {e}", self.dir.display());
        }
        gb
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use schubert_core::Permutation;

    fn schubert(w: &str) -> QIdeal {
        QIdeal::schubert(&w.parse::<Permutation>().unwrap())
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GbCache::open(dir.path()).unwrap();
        let order = TermOrder::diagonal_lex(4);
        assert_eq!(cache.load(&schubert("2143"), &order), Lookup::Miss);

        let fresh = schubert("2143");
        let gb = cache.groebner_basis(&fresh, &order);
        let warm = schubert("2143");
        assert_eq!(cache.load(&warm, &order), Lookup::Hit);
        assert_eq!(warm.groebner_basis(&order).polys(), gb.polys());

        let path = cache.path(&warm, &order);
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, &text[..text.len() / 2]).unwrap();
        assert!(matches!(cache.load(&schubert("2143"), &order), Lookup::Corrupt(_)));

        // A well-formed entry whose basis was tampered with fails the checksum.
        let mut entry: Entry = serde_json::from_str(&text).unwrap();
        entry.basis[0] = "1".into();
        std::fs::write(&path, serde_json::to_string(&entry).unwrap()).unwrap();
        assert!(matches!(cache.load(&schubert("2143"), &order), Lookup::Corrupt(_)));

        let again = cache.groebner_basis(&schubert("2143"), &order);
        assert_eq!(again.polys(), gb.polys());
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    }

    #[test]
    fn key_ignores_generator_order() {
        let order = TermOrder::antidiagonal_lex(3);
        let gens = schubert("321").gens().to_vec();
        let mut rev = gens.clone();
        rev.reverse();
        let a = QIdeal::new(schubert_core::poly::Universe::Z { n: 3 }, gens).unwrap();
        let b = QIdeal::new(schubert_core::poly::Universe::Z { n: 3 }, rev).unwrap();
        assert_eq!(GbCache::key(&a, &order), GbCache::key(&b, &order));
        assert_ne!(GbCache::key(&a, &order), GbCache::key(&a, &TermOrder::diagonal_lex(3)));
    }
}
