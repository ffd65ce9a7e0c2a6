//! On-disk cache of enumerated flag spaces.
//!
//! Layout (little endian): magic `FHFS`, schema version, `p`, `n`, number
//! of parts, the parts, number of flags, then for every flag and member the
//! member dimension followed by its echelon rows, one byte per entry.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use itertools::Itertools;

use super::{member_dims, Flag, FlagSpace};
use crate::combinat::Composition;
use crate::finlin::rref;
use crate::Result;

pub const CACHE_SCHEMA_VERSION: u32 = 1;
const MAGIC: &[u8; 4] = b"FHFS";

fn file_name(c: &Composition, p: u32) -> String {
    format!("flags-v{CACHE_SCHEMA_VERSION}-p{p}-n{}-c{}.bin", c.n(), c.parts().iter().join("_"))
}

/// The flag space of type `c` over `F_p`, read from `dir` when a valid
/// cache file exists and written there otherwise. With `dir = None` the
/// space is always enumerated.
pub fn load_or_build(c: &Composition, p: u32, dir: Option<&Path>) -> Result<FlagSpace> {
    let Some(dir) = dir else {
        return FlagSpace::new(c, p);
    };
    let path = dir.join(file_name(c, p));
    if let Ok(bytes) = fs::read(&path) {
        if let Some(space) = decode(&bytes, c, p) {
            return Ok(space);
        }
    }
    let space = FlagSpace::new(c, p)?;
    fs::create_dir_all(dir)?;
    let tmp: PathBuf = path.with_extension(format!("tmp{}", std::process::id()));
    fs::File::create(&tmp)?.write_all(&encode(&space))?;
    fs::rename(&tmp, &path)?;
    Ok(space)
}

fn encode(space: &FlagSpace) -> Vec<u8> {
    let mut out = Vec::new();
    let put = |x: u32, out: &mut Vec<u8>| out.extend_from_slice(&x.to_le_bytes());
    out.extend_from_slice(MAGIC);
    put(CACHE_SCHEMA_VERSION, &mut out);
    put(space.p, &mut out);
    put(space.n() as u32, &mut out);
    put(space.shape.len() as u32, &mut out);
    for &x in space.shape.parts() {
        put(x as u32, &mut out);
    }
    out.extend_from_slice(&(space.len() as u64).to_le_bytes());
    for f in &space.flags {
        for m in f.members() {
            put(m.dim() as u32, &mut out);
            for row in m.basis() {
                out.extend(row.iter().map(|&x| x as u8));
            }
        }
    }
    out
}

fn decode(bytes: &[u8], c: &Composition, p: u32) -> Option<FlagSpace> {
    let mut r = bytes;
    let mut word = || -> Option<u32> {
        let mut b = [0u8; 4];
        r.read_exact(&mut b).ok()?;
        Some(u32::from_le_bytes(b))
    };
    let mut magic = [0u8; 4];
    magic.copy_from_slice(bytes.get(..4)?);
    if &magic != MAGIC {
        return None;
    }
    let _ = word()?;
    if word()? != CACHE_SCHEMA_VERSION || word()? != p || word()? as usize != c.n() {
        return None;
    }
    let len = word()? as usize;
    let parts = (0..len).map(|_| word().map(|x| x as usize)).collect::<Option<Vec<_>>>()?;
    if parts != c.parts() {
        return None;
    }
    let mut rest = &bytes[4 * (5 + len)..];
    let mut count = [0u8; 8];
    rest.read_exact(&mut count).ok()?;
    let count = u64::from_le_bytes(count) as usize;
    let n = c.n();
    let dims = member_dims(c);
    let mut flags = Vec::with_capacity(count);
    for _ in 0..count {
        let mut members = Vec::with_capacity(dims.len());
        for &d in &dims {
            let mut b = [0u8; 4];
            rest.read_exact(&mut b).ok()?;
            if u32::from_le_bytes(b) as usize != d {
                return None;
            }
            let mut raw = vec![0u8; d * n];
            rest.read_exact(&mut raw).ok()?;
            let rows = raw.chunks(n.max(1)).take(d).map(|r| r.iter().map(|&x| x as u32).collect_vec()).collect_vec();
            let s = rref(p, n, &rows);
            if s.basis() != rows.as_slice() {
                return None;
            }
            members.push(s);
        }
        flags.push(Flag::new(c.clone(), members, p).ok()?);
    }
    rest.is_empty().then(|| FlagSpace::from_flags(c, p, flags))
}
