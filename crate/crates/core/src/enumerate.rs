//! Exhaustive generators for every object family.
//!
//! Triangle-backed kinds are emitted in lexicographic order of the triangle
//! read row by row, top to bottom. Square sign matrices are emitted in
//! row-major lexicographic order of their entries (`-1 < 0 < 1`). Boolean
//! triangles are emitted in lexicographic order of their rows with `0 < 1`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::triangle_rows_to_matrix;
use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::triangle::{row_start, BooleanTriangle, MagogTriangle, TriangularArray};
use crate::validate::validate_asm;

pub const DEFAULT_CEILING: usize = 8;
pub const CEILING_ENV: &str = "MAGOGLAB_CEILING_OVERRIDE";
pub const THREADS_ENV: &str = "MAGOGLAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectKind {
    MagogTriangle,
    MagogMatrix,
    SquareSign,
    Asm,
    BooleanTriangle,
    /// Matrices that are both magog matrices and ASMs.
    Gapless,
}

impl ObjectKind {
    pub const ALL: [ObjectKind; 6] = [
        ObjectKind::MagogTriangle,
        ObjectKind::MagogMatrix,
        ObjectKind::SquareSign,
        ObjectKind::Asm,
        ObjectKind::BooleanTriangle,
        ObjectKind::Gapless,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObjectKind::MagogTriangle => "magog-triangle",
            ObjectKind::MagogMatrix => "magog-matrix",
            ObjectKind::SquareSign => "square-sign",
            ObjectKind::Asm => "asm",
            ObjectKind::BooleanTriangle => "boolean-triangle",
            ObjectKind::Gapless => "gapless",
        }
    }
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ObjectKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('_', "-");
        match s.as_str() {
            "magog" => return Ok(ObjectKind::MagogMatrix),
            "square-sign-matrix" => return Ok(ObjectKind::SquareSign),
            _ => {}
        }
        ObjectKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown object kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Object {
    Matrix(SignMatrix),
    MagogTriangle(MagogTriangle),
    BooleanTriangle(BooleanTriangle),
}

/// The largest order accepted by the generators. Reads the override
/// variable: a number replaces the default, any other non-empty value lifts
/// the ceiling entirely.
pub fn ceiling() -> usize {
    match std::env::var(CEILING_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().unwrap_or(usize::MAX),
        _ => DEFAULT_CEILING,
    }
}

pub(crate) fn guard(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Shape("order must be at least 1".into()));
    }
    let ceiling = ceiling();
    if n > ceiling {
        return Err(Error::ResourceLimit { n, ceiling });
    }
    if n > u8::MAX as usize {
        return Err(Error::ResourceLimit { n, ceiling: u8::MAX as usize });
    }
    Ok(())
}

/// Runs `f` on a pool sized by the thread-count variable when it is set,
/// otherwise on the global pool.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    let pool = POOL.get_or_init(|| {
        let threads: usize = std::env::var(THREADS_ENV).ok()?.trim().parse().ok()?;
        rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().ok()
    });
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Chain {
    Magog,
    SquareSign,
    Monotone,
}

/// A partial triangle: rows `1..=depth` stored flat.
#[derive(Clone, Debug)]
pub(crate) struct Partial {
    pub(crate) depth: usize,
    pub(crate) entries: Vec<u8>,
}

impl Partial {
    fn last_row(&self) -> &[u8] {
        &self.entries[row_start(self.depth - 1)..]
    }
}

/// All strictly increasing sequences with `lo[k] <= x[k] <= hi[k]`, in lex order.
fn increasing_sequences(lo: &[u8], hi: &[u8], out: &mut Vec<Vec<u8>>) {
    fn rec(k: usize, floor: u8, lo: &[u8], hi: &[u8], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == lo.len() {
            out.push(cur.clone());
            return;
        }
        let remaining = (lo.len() - k - 1) as u8;
        let start = lo[k].max(floor);
        let mut top = hi[k];
        // leave room for the strictly larger entries still to come
        if let Some(&last_hi) = hi.last() {
            top = top.min(last_hi.saturating_sub(remaining));
        }
        let mut v = start;
        while v <= top {
            cur.push(v);
            rec(k + 1, v + 1, lo, hi, cur, out);
            cur.pop();
            v += 1;
        }
    }
    rec(0, 1, lo, hi, &mut Vec::with_capacity(lo.len()), out);
}

impl Chain {
    fn root(self, n: usize) -> Vec<Partial> {
        let mut rows = Vec::new();
        increasing_sequences(&[1], &[n as u8], &mut rows);
        self.wrap(&Partial { depth: 0, entries: Vec::new() }, rows, n)
    }

    fn wrap(self, parent: &Partial, mut rows: Vec<Vec<u8>>, n: usize) -> Vec<Partial> {
        if self == Chain::SquareSign {
            // order children by the matrix row they produce
            let prev = if parent.depth == 0 { &[][..] } else { parent.last_row() };
            rows.sort_by_cached_key(|r| matrix_row(prev, r, n));
        }
        rows.into_iter()
            .map(|r| {
                let mut entries = Vec::with_capacity(row_start(parent.depth + 1));
                entries.extend_from_slice(&parent.entries);
                entries.extend_from_slice(&r);
                Partial { depth: parent.depth + 1, entries }
            })
            .collect()
    }

    fn children(self, p: &Partial, n: usize) -> Vec<Partial> {
        let prev = p.last_row();
        let m = prev.len() + 1;
        let nn = n as u8;
        let mut lo = vec![1u8; m];
        let mut hi = vec![nn; m];
        match self {
            Chain::Magog => {
                for k in 0..m - 1 {
                    hi[k + 1] = (prev[k] + 1).min(nn);
                }
            }
            Chain::SquareSign => {
                hi[..m - 1].copy_from_slice(prev);
            }
            Chain::Monotone => {
                hi[..m - 1].copy_from_slice(prev);
                lo[1..].copy_from_slice(prev);
            }
        }
        let mut rows = Vec::new();
        increasing_sequences(&lo, &hi, &mut rows);
        self.wrap(p, rows, n)
    }
}

/// Row of the sign matrix obtained from consecutive triangle rows, shifted to
/// `0..=2` so that byte order matches `-1 < 0 < 1`.
fn matrix_row(prev: &[u8], cur: &[u8], n: usize) -> Vec<u8> {
    let mut row = vec![1u8; n];
    for &c in cur {
        row[c as usize - 1] += 1;
    }
    for &c in prev {
        row[c as usize - 1] -= 1;
    }
    row
}

/// Depth-first stream of complete triangles below a set of starting nodes.
pub(crate) struct ChainStream {
    chain: Chain,
    n: usize,
    stack: Vec<std::vec::IntoIter<Partial>>,
}

impl ChainStream {
    pub(crate) fn new(chain: Chain, n: usize) -> Self {
        Self::from_nodes(chain, n, chain.root(n))
    }

    fn from_nodes(chain: Chain, n: usize, nodes: Vec<Partial>) -> Self {
        ChainStream { chain, n, stack: vec![nodes.into_iter()] }
    }
}

impl Iterator for ChainStream {
    type Item = Partial;

    fn next(&mut self) -> Option<Partial> {
        loop {
            let top = self.stack.last_mut()?;
            match top.next() {
                None => {
                    self.stack.pop();
                }
                Some(p) if p.depth == self.n => return Some(p),
                Some(p) => {
                    let kids = self.chain.children(&p, self.n);
                    self.stack.push(kids.into_iter());
                }
            }
        }
    }
}

fn to_matrix(n: usize, p: &Partial) -> SignMatrix {
    triangle_rows_to_matrix(n, (0..n).map(|r| &p.entries[row_start(r)..row_start(r + 1)]))
}

pub fn magog_triangles(n: usize) -> Result<impl Iterator<Item = MagogTriangle>> {
    guard(n)?;
    Ok(ChainStream::new(Chain::Magog, n).map(move |p| MagogTriangle::from_raw(n, p.entries)))
}

/// Magog matrices, produced from magog triangles.
pub fn magog_matrices(n: usize) -> Result<impl Iterator<Item = SignMatrix>> {
    guard(n)?;
    Ok(ChainStream::new(Chain::Magog, n).map(move |p| to_matrix(n, &p)))
}

/// Alternating sign matrices, produced from monotone triangles.
pub fn asms(n: usize) -> Result<impl Iterator<Item = SignMatrix>> {
    guard(n)?;
    Ok(ChainStream::new(Chain::Monotone, n).map(move |p| to_matrix(n, &p)))
}

pub fn square_sign_matrices(n: usize) -> Result<impl Iterator<Item = SignMatrix>> {
    guard(n)?;
    Ok(ChainStream::new(Chain::SquareSign, n).map(move |p| to_matrix(n, &p)))
}

pub fn gapless_matrices(n: usize) -> Result<impl Iterator<Item = SignMatrix>> {
    Ok(magog_matrices(n)?.filter(|m| validate_asm(m).is_valid()))
}

/// Partial boolean triangle: rows so far plus running column sums.
#[derive(Clone)]
struct BoolPartial {
    depth: usize,
    bits: Vec<u8>,
    sums: Vec<i32>,
}

fn bool_children(p: &BoolPartial, n: usize) -> Vec<BoolPartial> {
    let i = p.depth + 1;
    let first = n - i;
    let mut out = Vec::new();
    // row read left to right is the most significant bit first
    for mask in 0u32..(1 << i) {
        let mut sums = p.sums.clone();
        let mut row = Vec::with_capacity(i);
        for k in 0..i {
            let bit = ((mask >> (i - 1 - k)) & 1) as u8;
            row.push(bit);
            sums[first + k] += bit as i32;
        }
        let ok = (first + 1..n).filter(|&c| c >= 2).all(|c| sums[c] - sums[c - 1] <= 1);
        if ok {
            let mut bits = p.bits.clone();
            bits.extend_from_slice(&row);
            out.push(BoolPartial { depth: i, bits, sums });
        }
    }
    out
}

struct BoolStream {
    n: usize,
    stack: Vec<std::vec::IntoIter<BoolPartial>>,
}

impl Iterator for BoolStream {
    type Item = BooleanTriangle;

    fn next(&mut self) -> Option<BooleanTriangle> {
        loop {
            let top = self.stack.last_mut()?;
            match top.next() {
                None => {
                    self.stack.pop();
                }
                Some(p) if p.depth + 1 == self.n => {
                    let array = TriangularArray::from_flat(self.n, p.bits).expect("complete triangle");
                    return Some(BooleanTriangle::from_array_unchecked(array));
                }
                Some(p) => {
                    let kids = bool_children(&p, self.n);
                    self.stack.push(kids.into_iter());
                }
            }
        }
    }
}

fn bool_root(n: usize) -> BoolPartial {
    BoolPartial { depth: 0, bits: Vec::new(), sums: vec![0; n] }
}

pub fn boolean_triangles(n: usize) -> Result<impl Iterator<Item = BooleanTriangle>> {
    guard(n)?;
    Ok(BoolStream { n, stack: vec![vec![bool_root(n)].into_iter()] })
}

/// Generic stream over any kind.
pub fn enumerate(kind: ObjectKind, n: usize) -> Result<Box<dyn Iterator<Item = Object> + Send>> {
    Ok(match kind {
        ObjectKind::MagogTriangle => Box::new(magog_triangles(n)?.map(Object::MagogTriangle)),
        ObjectKind::MagogMatrix => Box::new(magog_matrices(n)?.map(Object::Matrix)),
        ObjectKind::SquareSign => Box::new(square_sign_matrices(n)?.map(Object::Matrix)),
        ObjectKind::Asm => Box::new(asms(n)?.map(Object::Matrix)),
        ObjectKind::BooleanTriangle => Box::new(boolean_triangles(n)?.map(Object::BooleanTriangle)),
        ObjectKind::Gapless => Box::new(gapless_matrices(n)?.map(Object::Matrix)),
    })
}

/// Splits the search on the top entry and folds each subtree in parallel.
/// `fold` sees every complete matrix of the family.
pub fn par_fold_matrices<T, F, R>(kind: ObjectKind, n: usize, identity: impl Fn() -> T + Sync + Send, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    F: Fn(T, &SignMatrix) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    guard(n)?;
    let (chain, asm_filter) = match kind {
        ObjectKind::MagogMatrix | ObjectKind::MagogTriangle => (Chain::Magog, false),
        ObjectKind::SquareSign => (Chain::SquareSign, false),
        ObjectKind::Asm => (Chain::Monotone, false),
        ObjectKind::Gapless => (Chain::Magog, true),
        ObjectKind::BooleanTriangle => {
            return Err(Error::Shape("boolean triangles are not matrices".into()));
        }
    };
    let roots = chain.root(n);
    let result = install(|| {
        roots
            .into_par_iter()
            .map(|root| {
                ChainStream::from_nodes(chain, n, vec![root]).fold(identity(), |acc, p| {
                    let m = to_matrix(n, &p);
                    if asm_filter && !validate_asm(&m).is_valid() {
                        acc
                    } else {
                        fold(acc, &m)
                    }
                })
            })
            .reduce(&identity, &reduce)
    });
    Ok(result)
}

/// Number of objects of the family, counted in parallel.
pub fn count(kind: ObjectKind, n: usize) -> Result<u64> {
    guard(n)?;
    match kind {
        ObjectKind::BooleanTriangle => {
            if n == 1 {
                return Ok(1);
            }
            let roots = bool_children(&bool_root(n), n);
            Ok(install(|| {
                roots
                    .into_par_iter()
                    .map(|r| BoolStream { n, stack: vec![vec![r].into_iter()] }.count() as u64)
                    .sum()
            }))
        }
        ObjectKind::Gapless => par_fold_matrices(kind, n, || 0u64, |a, _| a + 1, |a, b| a + b),
        _ => {
            let chain = match kind {
                ObjectKind::SquareSign => Chain::SquareSign,
                ObjectKind::Asm => Chain::Monotone,
                _ => Chain::Magog,
            };
            let roots = chain.root(n);
            Ok(install(|| {
                roots
                    .into_par_iter()
                    .map(|r| ChainStream::from_nodes(chain, n, vec![r]).count() as u64)
                    .sum()
            }))
        }
    }
}
