use std::fmt;
use std::path::Path as FsPath;

use mobius_tree::{
    interval_to_matrix, path_to_matrix, ratio_to_matrix, EncodingError, MobiusMatrix,
    NestedInterval, NodeRef, Path, Ratio, StoreError, TreeStore,
};
use num_bigint::BigUint;

use crate::report;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Encoding(EncodingError),
    Store(StoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Encoding(_) => 3,
            CliError::Store(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Encoding(e) => write!(f, "{e}"),
            CliError::Store(e) => write!(f, "{e}"),
        }
    }
}

impl From<EncodingError> for CliError {
    fn from(e: EncodingError) -> Self {
        CliError::Encoding(e)
    }
}

impl From<StoreError> for CliError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::Encoding(inner) => CliError::Encoding(inner),
            other => CliError::Store(other),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// `root`, a dotted path, or a row-major matrix.
fn parse_node(s: &str) -> Result<NodeRef> {
    let s = s.trim();
    if s.is_empty() || s == "root" {
        Ok(NodeRef::Root)
    } else if s.contains(',') {
        Ok(NodeRef::Matrix(s.parse()?))
    } else {
        Ok(NodeRef::Path(s.parse()?))
    }
}

fn parse_index(s: Option<&str>) -> Result<Option<BigUint>> {
    let Some(s) = s else { return Ok(None) };
    let bad = || CliError::Usage(format!("--index must be a positive integer, got {s:?}"));
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigUint = s.parse().map_err(|_| bad())?;
    if n == BigUint::from(0u32) {
        return Err(bad());
    }
    Ok(Some(n))
}

fn load(file: &FsPath) -> Result<TreeStore> {
    Ok(TreeStore::load_file(file)?)
}

pub fn encode(path: Option<&str>, ratio: Option<&str>, matrix: Option<&str>) -> Result<String> {
    let m: MobiusMatrix = match (path, ratio, matrix) {
        (Some(p), None, None) => {
            let p = p.trim();
            let p: Path = if p == "root" {
                Path::root()
            } else {
                p.parse()?
            };
            path_to_matrix(&p)
        }
        (None, Some(r), None) => {
            let r: Ratio = r.parse().map_err(EncodingError::from)?;
            ratio_to_matrix(&r)?
        }
        (None, None, Some(m)) => m.parse()?,
        _ => {
            return Err(CliError::Usage(
                "exactly one of --path, --ratio, --matrix is required".into(),
            ))
        }
    };
    Ok(report::node_report(&m))
}

pub fn decode(interval: &str) -> Result<String> {
    let iv: NestedInterval = interval.parse()?;
    Ok(report::node_report(&interval_to_matrix(&iv)?))
}

pub fn init(file: &FsPath) -> Result<String> {
    if file.exists() {
        return Err(CliError::Store(StoreError::Io(std::io::Error::new(
            std::io::ErrorKind::AlreadyExists,
            format!("{} already exists", file.display()),
        ))));
    }
    TreeStore::new().save_file(file)?;
    Ok(String::new())
}

pub fn add(file: &FsPath, parent: &str, index: Option<&str>, payload: &str) -> Result<String> {
    let mut store = load(file)?;
    let rec = store.add_child(parse_node(parent)?, payload, parse_index(index)?)?;
    store.save_file(file)?;
    Ok(report::record_line(&rec))
}

pub fn mv(file: &FsPath, node: &str, to: &str, index: Option<&str>) -> Result<String> {
    let mut store = load(file)?;
    let count = store.move_subtree(parse_node(node)?, parse_node(to)?, parse_index(index)?)?;
    store.save_file(file)?;
    Ok(format!("moved {count}\n"))
}

pub fn rm(file: &FsPath, node: &str) -> Result<String> {
    let mut store = load(file)?;
    let count = store.delete_subtree(parse_node(node)?)?;
    store.save_file(file)?;
    Ok(format!("removed {count}\n"))
}

pub fn ls(file: &FsPath, node: &str) -> Result<String> {
    let store = load(file)?;
    Ok(report::record_lines(&store.children(parse_node(node)?)?))
}

pub fn tree(file: &FsPath) -> Result<String> {
    let store = load(file)?;
    Ok(report::tree_text(store.records()))
}

pub fn ancestors(file: &FsPath, node: &str) -> Result<String> {
    let store = load(file)?;
    Ok(report::record_lines(&store.ancestors(parse_node(node)?)?))
}

pub fn descendants(file: &FsPath, node: &str) -> Result<String> {
    let store = load(file)?;
    Ok(report::record_lines(&store.descendants(parse_node(node)?)?))
}

pub fn stats(file: &FsPath) -> Result<String> {
    let store = load(file)?;
    Ok(report::stats_text(&store.stats()))
}
