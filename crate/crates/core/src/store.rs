//! File-backed hierarchical store indexed by nested intervals.
//!
//! Records live in a `BTreeMap` keyed by their interval endpoints `(lo, hi)`.
//! Descendant queries are a range scan over that map; ancestor queries walk
//! [`parent`] arithmetically and only do point lookups.
//!
//! The store does no internal locking: callers hold `&mut` for writes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::ops::Bound;
use std::path::Path as FsPath;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::encoding::{
    child, concat, is_ancestor_by_interval, matrix_to_interval, matrix_to_path, parent,
    path_to_matrix, relative, EncodingError, MobiusMatrix, NestedInterval, Path,
};
use crate::exactmath::{parse_natural, Ratio};

/// First line of every store file.
pub const FILE_HEADER: &str = "mobius-tree v1";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error("node not found: {0}")]
    NotFound(String),
    #[error("slot already occupied: {0}")]
    Occupied(String),
    #[error("cannot move {0} under its own subtree")]
    Cycle(String),
    #[error("store integrity violated: {0}")]
    Integrity(String),
    #[error("line {line}: {msg}")]
    Load { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, StoreError>;

/// A stored node: its matrix plus an opaque payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord {
    matrix: MobiusMatrix,
    payload: String,
}

impl NodeRecord {
    pub fn matrix(&self) -> &MobiusMatrix {
        &self.matrix
    }

    pub fn payload(&self) -> &str {
        &self.payload
    }

    pub fn path(&self) -> Path {
        matrix_to_path(&self.matrix).expect("stored matrices are valid")
    }

    /// `a/c`. Records are never the root, so this always exists.
    pub fn label(&self) -> Ratio {
        self.matrix
            .label()
            .expect("stored records are not the root")
    }

    pub fn interval(&self) -> NestedInterval {
        matrix_to_interval(&self.matrix)
    }
}

/// Addresses a node, or the virtual root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeRef {
    Root,
    Path(Path),
    Matrix(MobiusMatrix),
}

impl From<Path> for NodeRef {
    fn from(p: Path) -> Self {
        NodeRef::Path(p)
    }
}

impl From<&Path> for NodeRef {
    fn from(p: &Path) -> Self {
        NodeRef::Path(p.clone())
    }
}

impl From<MobiusMatrix> for NodeRef {
    fn from(m: MobiusMatrix) -> Self {
        NodeRef::Matrix(m)
    }
}

impl From<&MobiusMatrix> for NodeRef {
    fn from(m: &MobiusMatrix) -> Self {
        NodeRef::Matrix(m.clone())
    }
}

impl From<&NodeRecord> for NodeRef {
    fn from(r: &NodeRecord) -> Self {
        NodeRef::Matrix(r.matrix.clone())
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::Root => f.write_str("root"),
            NodeRef::Path(p) if p.is_empty() => f.write_str("root"),
            NodeRef::Path(p) => write!(f, "{p}"),
            NodeRef::Matrix(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct IntervalKey {
    lo: Ratio,
    hi: Ratio,
}

impl IntervalKey {
    fn of(m: &MobiusMatrix) -> Self {
        let iv = matrix_to_interval(m);
        IntervalKey {
            lo: iv.lo().clone(),
            hi: iv.hi().clone(),
        }
    }

    /// Sorts before every real key whose low end is `lo`.
    fn floor(lo: &Ratio) -> Self {
        IntervalKey {
            lo: lo.clone(),
            hi: lo.clone(),
        }
    }
}

/// Aggregates reported by [`TreeStore::stats`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StoreStats {
    pub nodes: usize,
    pub max_depth: usize,
    pub max_numerator: BigUint,
    pub max_numerator_bits: u64,
    /// Largest total of minimal big-endian byte lengths of the four interval
    /// endpoint integers of a record.
    pub max_key_bytes: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeStore {
    records: BTreeMap<IntervalKey, NodeRecord>,
}

impl TreeStore {
    pub fn new() -> Self {
        TreeStore::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// All records ordered by interval `(lo, hi)`.
    pub fn records(&self) -> impl Iterator<Item = &NodeRecord> {
        self.records.values()
    }

    pub fn get(&self, m: &MobiusMatrix) -> Option<&NodeRecord> {
        if m.is_identity() {
            return None;
        }
        self.records.get(&IntervalKey::of(m))
    }

    pub fn contains(&self, m: &MobiusMatrix) -> bool {
        self.get(m).is_some()
    }

    pub fn resolve(&self, path: &Path) -> Result<&NodeRecord> {
        self.get(&path_to_matrix(path))
            .ok_or_else(|| StoreError::NotFound(path.to_string()))
    }

    /// Matrix of a present node, or the identity for the root.
    pub fn locate(&self, node: &NodeRef) -> Result<MobiusMatrix> {
        let m = match node {
            NodeRef::Root => return Ok(MobiusMatrix::identity()),
            NodeRef::Path(p) => path_to_matrix(p),
            NodeRef::Matrix(m) => m.clone(),
        };
        if m.is_identity() || self.contains(&m) {
            Ok(m)
        } else {
            Err(StoreError::NotFound(node.to_string()))
        }
    }

    fn require(&self, node: &NodeRef) -> Result<MobiusMatrix> {
        let m = self.locate(node)?;
        if m.is_identity() {
            return Err(StoreError::NotFound(format!(
                "{node} (the root is not a record)"
            )));
        }
        Ok(m)
    }

    /// Records strictly inside `m`'s interval, ordered by interval.
    fn subtree_of(&self, m: &MobiusMatrix) -> Vec<&NodeRecord> {
        let iv = matrix_to_interval(m);
        let range = (
            Bound::Included(IntervalKey::floor(iv.lo())),
            Bound::Excluded(IntervalKey::floor(iv.hi())),
        );
        self.records
            .range(range)
            .map(|(_, r)| r)
            .filter(|r| is_ancestor_by_interval(m, &r.matrix))
            .collect()
    }

    /// Largest child index in use under `m`, if any.
    ///
    /// Children `n = 1, 2, ...` approach the open end `a/c` of the parent
    /// interval as `n` grows, so the stored descendant nearest that end sits
    /// in the subtree of the largest child.
    fn max_child_index(&self, m: &MobiusMatrix) -> Option<BigUint> {
        let iv = matrix_to_interval(m);
        let is_desc = |r: &&NodeRecord| is_ancestor_by_interval(m, &r.matrix);
        let nearest = if m.is_decreasing() {
            // Open end is lo.
            self.records
                .range((
                    Bound::Included(IntervalKey::floor(iv.lo())),
                    Bound::Unbounded,
                ))
                .map(|(_, r)| r)
                .take_while(|r| r.interval().lo() < iv.hi())
                .find(is_desc)
        } else {
            self.records
                .range((
                    Bound::Unbounded,
                    Bound::Excluded(IntervalKey::floor(iv.hi())),
                ))
                .rev()
                .map(|(_, r)| r)
                .take_while(|r| r.interval().lo() >= iv.lo())
                .find(is_desc)
        }?;
        let fragment = relative(m, &nearest.matrix).expect("interval containment implies descent");
        let path = matrix_to_path(&fragment).expect("relative yields a path matrix");
        path.components().first().cloned()
    }

    fn next_slot(&self, parent_m: &MobiusMatrix, index: Option<BigUint>) -> Result<BigUint> {
        match index {
            Some(n) if n.is_zero() => {
                Err(EncodingError::Parse("child index must be >= 1".into()).into())
            }
            Some(n) => Ok(n),
            None => Ok(self
                .max_child_index(parent_m)
                .map_or_else(BigUint::one, |n| n + 1u32)),
        }
    }

    /// Inserts a new child under `parent`. Existing records are untouched.
    ///
    /// Without an explicit `index` the child goes one past the largest index
    /// currently in use under that parent.
    pub fn add_child(
        &mut self,
        parent_ref: impl Into<NodeRef>,
        payload: impl Into<String>,
        index: Option<BigUint>,
    ) -> Result<NodeRecord> {
        let parent_m = self.locate(&parent_ref.into())?;
        let n = self.next_slot(&parent_m, index)?;
        let m = child(&parent_m, &n)?;
        let key = IntervalKey::of(&m);
        if self.records.contains_key(&key) {
            return Err(StoreError::Occupied(matrix_to_path(&m)?.to_string()));
        }
        let record = NodeRecord {
            matrix: m,
            payload: payload.into(),
        };
        self.records.insert(key, record.clone());
        Ok(record)
    }

    /// Every record strictly below `node`, ordered by interval low end.
    pub fn descendants(&self, node: impl Into<NodeRef>) -> Result<Vec<NodeRecord>> {
        let m = self.locate(&node.into())?;
        Ok(self.subtree_of(&m).into_iter().cloned().collect())
    }

    /// Direct children of `node` (or of the root), ordered by interval.
    pub fn children(&self, node: impl Into<NodeRef>) -> Result<Vec<NodeRecord>> {
        let m = self.locate(&node.into())?;
        Ok(self
            .subtree_of(&m)
            .into_iter()
            .filter(|r| parent(&r.matrix).as_ref() == Some(&m))
            .cloned()
            .collect())
    }

    /// Ancestor chain from the top level down to the node's parent.
    pub fn ancestors(&self, node: impl Into<NodeRef>) -> Result<Vec<NodeRecord>> {
        let m = self.require(&node.into())?;
        let mut chain = Vec::new();
        let mut cur = parent(&m);
        while let Some(p) = cur.filter(|p| !p.is_identity()) {
            let rec = self
                .get(&p)
                .ok_or_else(|| StoreError::Integrity(format!("ancestor {p} of {m} is missing")))?;
            chain.push(rec.clone());
            cur = parent(&p);
        }
        chain.reverse();
        Ok(chain)
    }

    /// Re-roots `src` and its subtree as a child of `new_parent`.
    ///
    /// Each record `D` of the subtree keeps its fragment `relative(src, D)`
    /// and is re-keyed to `child(new_parent, n) · fragment`. Returns the
    /// number of re-keyed records.
    pub fn move_subtree(
        &mut self,
        src: impl Into<NodeRef>,
        new_parent: impl Into<NodeRef>,
        index: Option<BigUint>,
    ) -> Result<usize> {
        let src_ref = src.into();
        let src_m = self.require(&src_ref)?;
        let np_ref = new_parent.into();
        let np_m = self.locate(&np_ref)?;
        if np_m == src_m || is_ancestor_by_interval(&src_m, &np_m) {
            return Err(StoreError::Cycle(src_ref.to_string()));
        }
        let n = self.next_slot(&np_m, index)?;
        let new_root = child(&np_m, &n)?;
        if new_root != src_m && self.contains(&new_root) {
            return Err(StoreError::Occupied(matrix_to_path(&new_root)?.to_string()));
        }

        let mut moved: Vec<NodeRecord> = vec![self.get(&src_m).expect("checked").clone()];
        moved.extend(self.subtree_of(&src_m).into_iter().cloned());
        let mut rekeyed = Vec::with_capacity(moved.len());
        for rec in &moved {
            let fragment = relative(&src_m, &rec.matrix)?;
            rekeyed.push(NodeRecord {
                matrix: concat(&new_root, &fragment),
                payload: rec.payload.clone(),
            });
        }
        for rec in &moved {
            self.records.remove(&IntervalKey::of(&rec.matrix));
        }
        let count = rekeyed.len();
        for rec in rekeyed {
            self.records.insert(IntervalKey::of(&rec.matrix), rec);
        }
        Ok(count)
    }

    /// Removes `node` and its descendants; returns how many were removed.
    pub fn delete_subtree(&mut self, node: impl Into<NodeRef>) -> Result<usize> {
        let m = self.require(&node.into())?;
        let mut doomed: Vec<IntervalKey> = self
            .subtree_of(&m)
            .into_iter()
            .map(|r| IntervalKey::of(&r.matrix))
            .collect();
        doomed.push(IntervalKey::of(&m));
        for key in &doomed {
            self.records.remove(key);
        }
        Ok(doomed.len())
    }

    pub fn stats(&self) -> StoreStats {
        let mut s = StoreStats {
            nodes: self.records.len(),
            ..StoreStats::default()
        };
        for (key, rec) in &self.records {
            let depth = matrix_to_path(&rec.matrix).map(|p| p.len()).unwrap_or(0);
            s.max_depth = s.max_depth.max(depth);
            if rec.matrix.a() > &s.max_numerator {
                s.max_numerator = rec.matrix.a().clone();
            }
            let key_bytes: usize = [
                key.lo.numer(),
                key.lo.denom(),
                key.hi.numer(),
                key.hi.denom(),
            ]
            .iter()
            .map(|v| v.to_bytes_be().len())
            .sum();
            s.max_key_bytes = s.max_key_bytes.max(key_bytes);
        }
        s.max_numerator_bits = s.max_numerator.bits();
        s
    }

    /// Every record's parent is the root or another record.
    pub fn check_integrity(&self) -> Result<()> {
        for rec in self.records.values() {
            let p = parent(&rec.matrix).expect("records are not the root");
            if !p.is_identity() && !self.contains(&p) {
                return Err(StoreError::Integrity(format!(
                    "parent of {} is missing",
                    rec.path()
                )));
            }
        }
        Ok(())
    }

    /// Writes the text format: header line, then `a\tb\tc\td\tpayload` per
    /// record in interval order.
    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{FILE_HEADER}")?;
        for rec in self.records.values() {
            let m = &rec.matrix;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                m.a(),
                m.b(),
                m.c(),
                m.d(),
                escape_payload(&rec.payload)
            )?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn load<R: Read>(mut input: R) -> Result<Self> {
        let mut text = String::new();
        input
            .read_to_string(&mut text)
            .map_err(|e| StoreError::Load {
                line: 0,
                msg: format!("unreadable input: {e}"),
            })?;
        let mut lines = text
            .split('\n')
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .peekable();
        match lines.next() {
            Some((_, FILE_HEADER)) => {}
            _ => {
                return Err(StoreError::Load {
                    line: 1,
                    msg: format!("expected header {FILE_HEADER:?}"),
                })
            }
        }
        let mut store = TreeStore::new();
        let mut line_of: HashMap<MobiusMatrix, usize> = HashMap::new();
        while let Some((line, content)) = lines.next() {
            if content.is_empty() && lines.peek().is_none() {
                break;
            }
            let err = |msg: String| StoreError::Load { line, msg };
            let fields: Vec<&str> = content.split('\t').collect();
            let [a, b, c, d, payload] = fields.as_slice() else {
                return Err(err(format!(
                    "expected 5 tab-separated fields, got {}",
                    fields.len()
                )));
            };
            let mut entries = Vec::with_capacity(4);
            for f in [a, b, c, d] {
                entries
                    .push(parse_natural(f).map_err(|_| err(format!("non-integer field {f:?}")))?);
            }
            let [a, b, c, d]: [BigUint; 4] = entries.try_into().expect("four entries");
            let m = MobiusMatrix::new(a, b, c, d).map_err(|e| err(e.to_string()))?;
            if m.is_identity() {
                return Err(err("the root cannot be stored".into()));
            }
            let payload = unescape_payload(payload).map_err(err)?;
            let key = IntervalKey::of(&m);
            if store.records.contains_key(&key) {
                return Err(err(format!("duplicate matrix {m}")));
            }
            line_of.insert(m.clone(), line);
            store.records.insert(key, NodeRecord { matrix: m, payload });
        }
        for rec in store.records.values() {
            let p = parent(&rec.matrix).expect("not the root");
            if !p.is_identity() && !store.contains(&p) {
                return Err(StoreError::Load {
                    line: line_of[&rec.matrix],
                    msg: format!("parent of {} is missing", rec.path()),
                });
            }
        }
        Ok(store)
    }

    /// Replaces the file at `path` atomically (temp file, then rename).
    pub fn save_file(&self, path: impl AsRef<FsPath>) -> Result<()> {
        let path = path.as_ref();
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => FsPath::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        self.save(io::BufWriter::new(tmp.as_file_mut()))?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| StoreError::Io(e.error))?;
        Ok(())
    }

    pub fn load_file(path: impl AsRef<FsPath>) -> Result<Self> {
        TreeStore::load(fs::File::open(path)?)
    }
}

/// Escapes `\`, tab and newline so a payload fits in one TSV field.
pub fn escape_payload(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

pub fn unescape_payload(s: &str) -> std::result::Result<String, String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(ch) = chars.next() {
        if ch != '\\' {
            out.push(ch);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some(other) => return Err(format!("unknown escape \\{other}")),
            None => return Err("dangling backslash".into()),
        }
    }
    Ok(out)
}
