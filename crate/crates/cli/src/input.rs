use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::io::Read;
use std::sync::Arc;
use wfr_core::trees::{LexTree, MorphismFlags, TreeArrow, TreeData};

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl InputError {
    pub fn new(msg: impl std::fmt::Display) -> Self {
        InputError(msg.to_string())
    }
}

pub type Res<T> = Result<T, InputError>;

pub fn read_text(path: &str) -> Res<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| InputError::new(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError::new(format!("{path}: {e}")))
    }
}

/// Parse `text`; errors carry the line and column serde stopped at.
pub fn parse<T: DeserializeOwned>(name: &str, text: &str) -> Res<T> {
    serde_json::from_str(text).map_err(|e| {
        let what = match e.classify() {
            serde_json::error::Category::Syntax | serde_json::error::Category::Eof => "malformed JSON",
            _ => "unexpected JSON shape",
        };
        InputError::new(format!("{name}: {what}: {e}"))
    })
}

pub fn read<T: DeserializeOwned>(path: &str) -> Res<T> {
    parse(path, &read_text(path)?)
}

pub fn tree(data: &TreeData) -> Res<(Arc<LexTree>, BTreeMap<u64, usize>)> {
    let (t, ids) = LexTree::from_data(data).map_err(InputError::new)?;
    Ok((Arc::new(t), ids.into_iter().collect()))
}

/// Node ids to node ids, either as an object or as a list indexed by the
/// source ids `0, 1, ...`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum IdMap {
    List(Vec<u64>),
    Pairs(BTreeMap<String, u64>),
}

#[derive(Debug, Deserialize)]
pub struct ArrowData {
    pub dom: TreeData,
    pub cod: TreeData,
    pub map: IdMap,
}

pub fn tree_arrow(a: &ArrowData, flags: MorphismFlags) -> Res<TreeArrow> {
    let (dom, din) = tree(&a.dom)?;
    let (cod, cin) = tree(&a.cod)?;
    let pairs: Vec<(u64, u64)> = match &a.map {
        IdMap::List(v) => v.iter().enumerate().map(|(i, &c)| (i as u64, c)).collect(),
        IdMap::Pairs(m) => m
            .iter()
            .map(|(d, &c)| d.parse().map(|d| (d, c)).map_err(|_| InputError::new(format!("map: bad source id {d:?}"))))
            .collect::<Res<_>>()?,
    };
    let mut map = vec![None; dom.len()];
    for (d, c) in pairs {
        let i = *din.get(&d).ok_or_else(|| InputError::new(format!("map: unknown source id {d}")))?;
        let j = *cin.get(&c).ok_or_else(|| InputError::new(format!("map: unknown target id {c}")))?;
        map[i] = Some(j);
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| InputError::new(format!("map: source node {i} has no image"))))
        .collect::<Res<Vec<usize>>>()?;
    TreeArrow::new(dom, cod, map, flags).map_err(|e| InputError::new(format!("not an embedding: {e}")))
}
