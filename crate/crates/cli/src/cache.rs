//! On-disk cache of r-polynomial tables.
//!
//! A cache file is the line `BHLCACHE v1` followed by one JSON document
//! holding the Cartan type, a fingerprint of the group (order and length
//! histogram) and every table entry. Anything that does not match the group
//! being built is ignored and the table is recomputed.

use bhl_core::coxeter::CoxeterGroup;
use bhl_core::polyring::{LaurentPoly, RationalFn, Root};
use bhl_core::rpoly::RTable;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

const HEADER: &str = "BHLCACHE v1";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    cartan_type: String,
    order: usize,
    length_histogram: Vec<usize>,
    entries: Vec<Entry>,
}

/// `num` terms are `(coefficient, q degree, x degrees)`; `den` pairs a root
/// with its multiplicity.
#[derive(Serialize, Deserialize)]
struct Entry {
    num: Vec<(String, i32, Vec<i32>)>,
    den: Vec<(Vec<i32>, u32)>,
}

pub fn path_for(dir: &Path, group: &CoxeterGroup) -> PathBuf {
    dir.join(format!("{}.rtable", group.cartan_type()))
}

fn encode(r: &RationalFn) -> Entry {
    Entry {
        num: r
            .numerator()
            .terms()
            .map(|(e, c)| (c.to_string(), e.q_degree, e.x_degrees.to_vec()))
            .collect(),
        den: r.denominator().iter().map(|(b, &m)| (b.coords().to_vec(), m)).collect(),
    }
}

fn decode(arity: usize, e: &Entry) -> Option<RationalFn> {
    let mut num = LaurentPoly::zero(arity);
    for (c, q, x) in &e.num {
        if x.len() != arity {
            return None;
        }
        let c: BigInt = c.parse().ok()?;
        num += &LaurentPoly::monomial(arity, c, *q, x);
    }
    let mut den = Vec::new();
    for (coords, m) in &e.den {
        if coords.len() != arity {
            return None;
        }
        den.extend(std::iter::repeat_n(Root::new(coords), *m as usize));
    }
    Some(RationalFn::new(num, den))
}

/// Why a cache file was not used.
#[derive(Debug, thiserror::Error)]
pub enum Miss {
    #[error("no cache file")]
    Absent,
    #[error("unreadable: {0}")]
    Io(#[from] io::Error),
    #[error("bad header")]
    Header,
    #[error("malformed payload: {0}")]
    Json(#[from] serde_json::Error),
    #[error("fingerprint does not match {0}")]
    Fingerprint(String),
    #[error("malformed table entry")]
    Entry,
}

pub fn load(path: &Path, group: &CoxeterGroup) -> Result<RTable, Miss> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(Miss::Absent),
        Err(e) => return Err(e.into()),
    };
    let (header, body) = text.split_once('\n').ok_or(Miss::Header)?;
    if header.trim_end() != HEADER {
        return Err(Miss::Header);
    }
    let file: CacheFile = serde_json::from_str(body)?;
    let n = group.order();
    if file.cartan_type != group.cartan_type().to_string()
        || file.order != n
        || file.length_histogram != group.length_histogram()
        || file.entries.len() != n * n
    {
        return Err(Miss::Fingerprint(group.cartan_type().to_string()));
    }
    let values = file
        .entries
        .iter()
        .map(|e| decode(group.rank(), e))
        .collect::<Option<Vec<_>>>()
        .ok_or(Miss::Entry)?;
    RTable::from_entries(n, values).ok_or(Miss::Entry)
}

/// Writes through a temporary file so a crash never leaves half a cache.
pub fn store(path: &Path, group: &CoxeterGroup, table: &RTable) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let file = CacheFile {
        cartan_type: group.cartan_type().to_string(),
        order: group.order(),
        length_histogram: group.length_histogram(),
        entries: table.entries().iter().map(encode).collect(),
    };
    let mut text = String::from(HEADER);
    text.push('\n');
    text.push_str(&serde_json::to_string(&file).map_err(io::Error::other)?);
    text.push('\n');
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}
