use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::io::{Read, Write};

use super::arrangement::{Arrangement, FlatId, BOTTOM};
use super::word::Word;
use crate::coxeter::check_guard;
use crate::error::{Error, Result};

/// Rooted DAG whose rooted paths spell exactly the broken-circuit basis
/// words. Node 0 is the root (label 0); edges go to strictly larger labels
/// and the children of a node carry distinct labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisGraph {
    type_name: String,
    order: Vec<usize>,
    labels: Vec<u16>,
    /// Sorted by child label.
    children: Vec<Vec<u32>>,
}

/// Where tracing a word through the graph stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trace {
    /// The whole word is a rooted path ending at this node.
    Accepted(u32),
    /// The prefix of this length is a rooted path; the next letter is not.
    Rejected(usize),
}

impl BasisGraph {
    /// Stage-free construction: every basis word is determined up to
    /// continuation by the flat it spans, so the trie is first folded onto
    /// flats and then identical subgraphs are merged bottom-up.
    pub fn build(arr: &Arrangement, guard: u128) -> Result<Self> {
        check_guard(arr.root_system().group_order(), guard)?;
        let n = arr.len() as u16;

        // flats reachable as spans of basis words, with their extensions
        let mut index: HashMap<FlatId, usize> = HashMap::from([(BOTTOM, 0)]);
        let mut flats = vec![BOTTOM];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let f = flats[k];
            let top = arr.flat_max(f);
            for m in top + 1..=n {
                if arr.flat_contains(f, m) {
                    continue;
                }
                let g = arr.join(f, m);
                if arr.flat_max(g) != m {
                    continue;
                }
                let j = *index.entry(g).or_insert_with(|| {
                    flats.push(g);
                    succ.push(Vec::new());
                    queue.push_back(flats.len() - 1);
                    flats.len() - 1
                });
                succ[k].push(j);
            }
        }
        let label = |k: usize| arr.flat_max(flats[k]);

        // merge nodes with equal label and equal child classes, leaves first
        let mut by_rank: Vec<usize> = (0..flats.len()).collect();
        by_rank.sort_by_key(|&k| std::cmp::Reverse(arr.flat_rank(flats[k])));
        let mut class = vec![usize::MAX; flats.len()];
        let mut signatures: HashMap<(u16, Vec<usize>), usize> = HashMap::new();
        let mut class_succ: Vec<(u16, Vec<usize>)> = Vec::new();
        for &k in &by_rank {
            let mut kids: Vec<usize> = succ[k].iter().map(|&j| class[j]).collect();
            kids.sort_unstable();
            let sig = (label(k), kids);
            class[k] = *signatures.entry(sig.clone()).or_insert_with(|| {
                class_succ.push(sig);
                class_succ.len() - 1
            });
        }

        // renumber breadth-first from the root, children in label order
        let root = class[0];
        let mut id = vec![u32::MAX; class_succ.len()];
        let mut order = vec![root];
        id[root] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            let mut kids = class_succ[c].1.clone();
            kids.sort_by_key(|&d| class_succ[d].0);
            for d in kids {
                if id[d] == u32::MAX {
                    id[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let labels = order.iter().map(|&c| class_succ[c].0).collect();
        let children = order
            .iter()
            .map(|&c| {
                let mut kids: Vec<u32> = class_succ[c].1.iter().map(|&d| id[d]).collect();
                kids.sort_by_key(|&d| class_succ[order[d as usize]].0);
                kids
            })
            .collect();
        let g = BasisGraph {
            type_name: arr.root_system().coxeter_type().to_string(),
            order: arr.order().as_permutation(),
            labels,
            children,
        };
        log::debug!(
            "basis graph {}: {} flats folded to {} nodes",
            g.type_name,
            flats.len(),
            g.node_count()
        );
        Ok(g)
    }

    pub fn type_name(&self) -> &str {
        &self.type_name
    }

    /// 1-based root indices by position, as in the reflection order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn num_letters(&self) -> usize {
        self.order.len()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn label(&self, node: u32) -> u16 {
        self.labels[node as usize]
    }

    pub fn children(&self, node: u32) -> &[u32] {
        &self.children[node as usize]
    }

    /// Child of `node` with the given label.
    pub fn step(&self, node: u32, letter: u16) -> Option<u32> {
        let kids = &self.children[node as usize];
        kids.binary_search_by_key(&letter, |&c| self.labels[c as usize])
            .ok()
            .map(|i| kids[i])
    }

    pub fn trace(&self, word: &[u16]) -> Trace {
        let mut node = 0;
        for (k, &x) in word.iter().enumerate() {
            match self.step(node, x) {
                Some(c) => node = c,
                None => return Trace::Rejected(k),
            }
        }
        Trace::Accepted(node)
    }

    /// Whether an increasing word is a basis word.
    pub fn contains(&self, word: &Word) -> Result<bool> {
        word.require_increasing()?;
        Ok(matches!(self.trace(word.letters()), Trace::Accepted(_)))
    }

    /// Number of basis words through each node, counted from that node.
    fn suffix_counts(&self) -> Vec<u128> {
        let mut ids: Vec<usize> = (0..self.node_count()).collect();
        ids.sort_by_key(|&v| std::cmp::Reverse(self.labels[v]));
        let mut count = vec![0u128; self.node_count()];
        for v in ids {
            count[v] = 1 + self.children[v].iter().map(|&c| count[c as usize]).sum::<u128>();
        }
        count
    }

    /// Number of rooted paths, the empty one included.
    pub fn path_count(&self) -> u128 {
        self.suffix_counts()[0]
    }

    /// Number of basis words of each length.
    pub fn degree_counts(&self) -> Vec<u128> {
        let mut ids: Vec<usize> = (0..self.node_count()).collect();
        ids.sort_by_key(|&v| self.labels[v]);
        let mut at: Vec<Vec<u128>> = vec![Vec::new(); self.node_count()];
        at[0] = vec![1];
        let mut total: Vec<u128> = Vec::new();
        for v in ids {
            let here = std::mem::take(&mut at[v]);
            for &c in &self.children[v] {
                let dst = &mut at[c as usize];
                if dst.len() < here.len() + 1 {
                    dst.resize(here.len() + 1, 0);
                }
                for (p, &x) in here.iter().enumerate() {
                    dst[p + 1] += x;
                }
            }
            if total.len() < here.len() {
                total.resize(here.len(), 0);
            }
            for (p, &x) in here.iter().enumerate() {
                total[p] += x;
            }
        }
        total
    }

    /// Basis words in lexicographic order, optionally only those of length `p`.
    pub fn enumerate(&self, degree: Option<usize>) -> BasisWords<'_> {
        BasisWords {
            graph: self,
            stack: vec![(0, 0)],
            word: Word::empty(),
            degree,
            entered: true,
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gamma {\n");
        for (v, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{v} [label=\"{l}\"];");
        }
        for (v, kids) in self.children.iter().enumerate() {
            for c in kids {
                let _ = writeln!(out, "  n{v} -> n{c};");
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        let mut buf = Vec::new();
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        put_u32(&mut buf, self.type_name.len() as u32);
        buf.extend_from_slice(self.type_name.as_bytes());
        put_u32(&mut buf, self.order.len() as u32);
        for &p in &self.order {
            put_u32(&mut buf, p as u32);
        }
        put_u32(&mut buf, self.node_count() as u32);
        buf.extend_from_slice(&(self.edge_count() as u64).to_le_bytes());
        for (l, kids) in self.labels.iter().zip(&self.children) {
            buf.extend_from_slice(&l.to_le_bytes());
            put_u32(&mut buf, kids.len() as u32);
            for &c in kids {
                put_u32(&mut buf, c);
            }
        }
        let crc = crc32fast::hash(&buf);
        put_u32(&mut buf, crc);
        out.write_all(&buf)?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let mut buf = Vec::new();
        input.read_to_end(&mut buf)?;
        if buf.len() < MAGIC.len() + 8 || &buf[..MAGIC.len()] != MAGIC {
            return Err(Error::Cache("not a basis graph file".into()));
        }
        let (body, tail) = buf.split_at(buf.len() - 4);
        if crc32fast::hash(body) != u32::from_le_bytes(tail.try_into().unwrap()) {
            return Err(Error::Cache("checksum mismatch".into()));
        }
        let mut r = Reader {
            buf: body,
            pos: MAGIC.len(),
        };
        let version = r.u32()?;
        if version != FORMAT_VERSION {
            return Err(Error::Cache(format!(
                "format version {version}, expected {FORMAT_VERSION}"
            )));
        }
        let len = r.u32()? as usize;
        let type_name = String::from_utf8(r.bytes(len)?.to_vec())
            .map_err(|_| Error::Cache("type name is not UTF-8".into()))?;
        let n = r.u32()? as usize;
        let order = (0..n).map(|_| r.u32().map(|p| p as usize)).collect::<Result<_>>()?;
        let nodes = r.u32()? as usize;
        let edges = u64::from_le_bytes(r.bytes(8)?.try_into().unwrap()) as usize;
        let mut labels = Vec::with_capacity(nodes);
        let mut children = Vec::with_capacity(nodes);
        for _ in 0..nodes {
            labels.push(u16::from_le_bytes(r.bytes(2)?.try_into().unwrap()));
            let k = r.u32()? as usize;
            children.push((0..k).map(|_| r.u32()).collect::<Result<Vec<_>>>()?);
        }
        if r.pos != body.len() {
            return Err(Error::Cache("trailing bytes".into()));
        }
        let g = BasisGraph {
            type_name,
            order,
            labels,
            children,
        };
        if g.edge_count() != edges {
            return Err(Error::Cache("edge count mismatch".into()));
        }
        if g.children.iter().flatten().any(|&c| c as usize >= nodes) {
            return Err(Error::Cache("dangling edge".into()));
        }
        Ok(g)
    }
}

const MAGIC: &[u8; 8] = b"OSCXGAMA";
pub const FORMAT_VERSION: u32 = 1;

fn put_u32(buf: &mut Vec<u8>, x: u32) {
    buf.extend_from_slice(&x.to_le_bytes());
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Cache("truncated file".into()))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.bytes(4)?.try_into().unwrap()))
    }
}

/// Depth-first preorder walk; yields words in lexicographic order.
pub struct BasisWords<'a> {
    graph: &'a BasisGraph,
    /// (node, index of the next child to visit)
    stack: Vec<(u32, usize)>,
    word: Word,
    degree: Option<usize>,
    entered: bool,
}

impl Iterator for BasisWords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if std::mem::take(&mut self.entered)
                && self.degree.is_none_or(|p| p == self.word.len())
            {
                return Some(self.word.clone());
            }
            let top = self.stack.last_mut()?;
            let kids = self.graph.children(top.0);
            if top.1 < kids.len() && self.degree.is_none_or(|p| self.word.len() < p) {
                let c = kids[top.1];
                top.1 += 1;
                self.stack.push((c, 0));
                self.word.push(self.graph.label(c));
                self.entered = true;
            } else {
                self.stack.pop();
                if !self.word.is_empty() {
                    self.word = self.word.prefix(self.word.len() - 1);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{RootSystem, DEFAULT_GUARD};
    use crate::matroid::ReflectionOrder;
    use std::sync::Arc;

    fn gamma(t: &str, order: &str) -> BasisGraph {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()));
        let order = ReflectionOrder::parse(&rs, order).unwrap();
        BasisGraph::build(&Arrangement::new(rs, order), DEFAULT_GUARD).unwrap()
    }

    #[test]
    fn a3_reference_order() {
        let g = gamma("A3", "reference-a3");
        assert_eq!(g.node_count(), 9);
        assert_eq!(g.path_count(), 24);
        assert_eq!(g.degree_counts(), vec![1, 6, 11, 6]);
        for w in ["2", "24", "246", "()"] {
            assert!(g.contains(&w.parse().unwrap()).unwrap(), "{w}");
        }
        assert!(!g.contains(&Word::from([2, 4, 5])).unwrap());
        assert_eq!(g.trace(&[2, 4, 5]), Trace::Rejected(2));
        assert!(g.contains(&Word::from([4, 2])).is_err());
    }

    #[test]
    fn a2_words() {
        let g = gamma("A2", "default");
        let deg2: Vec<Word> = g.enumerate(Some(2)).collect();
        assert_eq!(deg2, vec![Word::from([1, 3]), Word::from([2, 3])]);
        assert_eq!(g.enumerate(Some(0)).collect::<Vec<_>>(), vec![Word::empty()]);
        let all: Vec<Word> = g.enumerate(None).collect();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_matches_degree_counts() {
        let g = gamma("B3", "default");
        let counts = g.degree_counts();
        for (p, &c) in counts.iter().enumerate() {
            assert_eq!(g.enumerate(Some(p)).count() as u128, c);
        }
        assert_eq!(g.enumerate(None).count(), 48);
    }

    #[test]
    fn serialization_round_trip() {
        let g = gamma("A3", "reference-a3");
        let mut bytes = Vec::new();
        g.write_to(&mut bytes).unwrap();
        let back = BasisGraph::read_from(&bytes[..]).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.node_count(), 9);

        let mut bad = bytes.clone();
        bad[9] ^= 1;
        assert!(BasisGraph::read_from(&bad[..]).is_err());
        assert!(BasisGraph::read_from(&bytes[..10]).is_err());
        assert!(BasisGraph::read_from(&b"garbage!!!!!!!"[..]).is_err());
    }

    #[test]
    fn dot_lists_every_node() {
        let g = gamma("A3", "reference-a3");
        let dot = g.to_dot();
        assert_eq!(dot.matches("[label=").count(), 9);
        assert_eq!(dot.matches("->").count(), g.edge_count());
    }
}
