//! Binary verdict cache used by `classify --resume`.
//!
//! Layout (little endian):
//!
//! ```text
//! magic    8 bytes  "CLUTVRDC"
//! version  u16      FORMAT_VERSION
//! field    u8       0 = rational, 1 = gf2
//! entries  repeated until end of file:
//!   len    u8       canonical key length
//!   key    len bytes
//!   flags  u16      see the FLAG_* constants
//!   sphere i8       top-skeleton sphere dimension, NO_SPHERE if none
//! ```
//!
//! A torn final entry (an interrupted write) is dropped on load and
//! overwritten by the next append.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use clutter_core::classify::{ClassificationRecord, ObstructionClass};
use clutter_core::homology::{Coefficients, SphereSignature};
use clutter_core::notation::{format_clutter, format_complex, LabeledGround};
use clutter_core::CanonicalKey;

pub const MAGIC: &[u8; 8] = b"CLUTVRDC";
pub const FORMAT_VERSION: u16 = 1;
const HEADER_LEN: u64 = 11;
const NO_SPHERE: i8 = i8::MIN;

const FLAG_CHORDAL: u16 = 1 << 0;
const FLAG_FORBIDDEN_MINOR: u16 = 1 << 1;
const FLAG_FORBIDDEN_SUBCLUTTER: u16 = 1 << 2;
const FLAG_C5_ONLY: u16 = 1 << 3;
const FLAG_ONLY_C5_MINORS: u16 = 1 << 4;
const FLAG_SHELLABLE: u16 = 1 << 5;
const FLAG_SCM: u16 = 1 << 6;
const FLAG_D: u16 = 1 << 7;
const FLAG_C: u16 = 1 << 8;
const FLAG_DC: u16 = 1 << 9;
const FLAG_H_NEGATIVE: u16 = 1 << 10;

/// Everything in a record that is not recomputable from the key alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    flags: u16,
    sphere: i8,
}

impl Verdict {
    /// `None` for undecided records, which are never cached.
    pub fn of(r: &ClassificationRecord) -> Option<Verdict> {
        let shellable = r.shellable?;
        let bits = [
            (r.chordal, FLAG_CHORDAL),
            (r.forbidden_minor_to_chordality, FLAG_FORBIDDEN_MINOR),
            (r.forbidden_subclutter, FLAG_FORBIDDEN_SUBCLUTTER),
            (r.c5_only_nonchordal_minor, FLAG_C5_ONLY),
            (r.only_c5_nonchordal_minors, FLAG_ONLY_C5_MINORS),
            (shellable, FLAG_SHELLABLE),
            (r.sequentially_cm, FLAG_SCM),
            (r.obstruction_class.d, FLAG_D),
            (r.obstruction_class.c, FLAG_C),
            (r.obstruction_class.dc, FLAG_DC),
            (r.h_negative, FLAG_H_NEGATIVE),
        ];
        let flags = bits.iter().filter(|(on, _)| *on).fold(0, |acc, (_, f)| acc | f);
        let sphere = match r.top_skeleton_profile {
            SphereSignature::Sphere(k) => i8::try_from(k).ok()?,
            SphereSignature::NotASphere => NO_SPHERE,
        };
        Some(Verdict { flags, sphere })
    }

    pub fn to_record(self, key: &CanonicalKey) -> ClassificationRecord {
        let c = key.clutter();
        let labels = LabeledGround::numbered(c.n());
        let on = |f: u16| self.flags & f != 0;
        ClassificationRecord {
            key: key.to_hex(),
            n: c.n(),
            circuits: format_clutter(&c, &labels),
            facets: format_complex(&c.independence_complex(), &labels),
            covers_ground: c.covers_ground(),
            chordal: on(FLAG_CHORDAL),
            forbidden_minor_to_chordality: on(FLAG_FORBIDDEN_MINOR),
            forbidden_subclutter: on(FLAG_FORBIDDEN_SUBCLUTTER),
            c5_only_nonchordal_minor: on(FLAG_C5_ONLY),
            only_c5_nonchordal_minors: on(FLAG_ONLY_C5_MINORS),
            shellable: Some(on(FLAG_SHELLABLE)),
            sequentially_cm: on(FLAG_SCM),
            obstruction_class: ObstructionClass {
                d: on(FLAG_D),
                c: on(FLAG_C),
                dc: on(FLAG_DC),
            },
            top_skeleton_profile: match self.sphere {
                NO_SPHERE => SphereSignature::NotASphere,
                k => SphereSignature::Sphere(k as i32),
            },
            h_negative: on(FLAG_H_NEGATIVE),
        }
    }
}

fn field_byte(c: Coefficients) -> u8 {
    match c {
        Coefficients::Rational => 0,
        Coefficients::Gf2 => 1,
    }
}

fn header(coefficients: Coefficients) -> Vec<u8> {
    let mut h = MAGIC.to_vec();
    h.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    h.push(field_byte(coefficients));
    h
}

/// Entries of a cache file plus the byte length of its valid prefix. `None`
/// when the file is missing, foreign, another version, or for other
/// coefficients.
pub fn load(path: &Path, coefficients: Coefficients) -> io::Result<Option<(HashMap<CanonicalKey, Verdict>, u64)>> {
    let mut bytes = Vec::new();
    match File::open(path) {
        Ok(mut f) => f.read_to_end(&mut bytes)?,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    if bytes.len() < HEADER_LEN as usize || bytes[..HEADER_LEN as usize] != header(coefficients)[..] {
        return Ok(None);
    }
    let mut map = HashMap::new();
    let mut pos = HEADER_LEN as usize;
    while pos < bytes.len() {
        let len = bytes[pos] as usize;
        let end = pos + 1 + len + 3;
        if end > bytes.len() {
            break;
        }
        let Ok(key) = CanonicalKey::from_bytes(&bytes[pos + 1..pos + 1 + len]) else {
            break;
        };
        let flags = u16::from_le_bytes([bytes[end - 3], bytes[end - 2]]);
        let sphere = bytes[end - 1] as i8;
        map.insert(key, Verdict { flags, sphere });
        pos = end;
    }
    Ok(Some((map, pos as u64)))
}

pub struct CacheWriter {
    out: BufWriter<File>,
}

impl CacheWriter {
    /// Starts a fresh cache file.
    pub fn create(path: &Path, coefficients: Coefficients) -> io::Result<Self> {
        let mut f = File::create(path)?;
        f.write_all(&header(coefficients))?;
        Ok(CacheWriter { out: BufWriter::new(f) })
    }

    /// Reopens a cache whose first `valid_len` bytes were loaded, discarding
    /// anything after them.
    pub fn append(path: &Path, valid_len: u64) -> io::Result<Self> {
        let mut f = OpenOptions::new().write(true).open(path)?;
        f.set_len(valid_len)?;
        f.seek(SeekFrom::End(0))?;
        Ok(CacheWriter { out: BufWriter::new(f) })
    }

    pub fn write(&mut self, key: &CanonicalKey, v: Verdict) -> io::Result<()> {
        let bytes = key.as_bytes();
        let len = u8::try_from(bytes.len()).map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "key too long"))?;
        self.out.write_all(&[len])?;
        self.out.write_all(bytes)?;
        self.out.write_all(&v.flags.to_le_bytes())?;
        self.out.write_all(&[v.sphere as u8])
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}
