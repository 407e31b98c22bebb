//! Strongly connected components and reachability on adjacency closures.

use super::VertexId;

/// Partition of `0..n` into strongly connected components. Components are
/// numbered in order of their smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPartition {
    pub comp: Vec<u32>,
    pub members: Vec<Vec<VertexId>>,
}

impl SccPartition {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, v: VertexId) -> u32 {
        self.comp[v as usize]
    }

    pub fn largest(&self) -> usize {
        self.members.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Iterative Tarjan over the digraph on `0..n` whose successors of `v` are
/// produced by `succ(v)`.
pub fn tarjan_scc<F, I>(n: usize, succ: F) -> SccPartition
where
    F: Fn(u32) -> I,
    I: IntoIterator<Item = u32>,
{
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut raw = vec![UNSEEN; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut ncomp = 0u32;
    let mut call: Vec<(u32, I::IntoIter)> = Vec::new();

    for root in 0..n as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        call.push((root, succ(root).into_iter()));
        while let Some((v, it)) = call.last_mut() {
            let v = *v;
            if let Some(w) = it.next() {
                if index[w as usize] == UNSEEN {
                    index[w as usize] = next_index;
                    low[w as usize] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, succ(w).into_iter()));
                } else if on_stack[w as usize] {
                    low[v as usize] = low[v as usize].min(index[w as usize]);
                }
                continue;
            }
            call.pop();
            if let Some((p, _)) = call.last() {
                low[*p as usize] = low[*p as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w as usize] = false;
                    raw[w as usize] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }

    let mut renum = vec![UNSEEN; ncomp as usize];
    let mut comp = vec![0u32; n];
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        let r = raw[v] as usize;
        if renum[r] == UNSEEN {
            renum[r] = members.len() as u32;
            members.push(Vec::new());
        }
        comp[v] = renum[r];
        members[renum[r] as usize].push(v as VertexId);
    }
    SccPartition { comp, members }
}

/// Marks every vertex reachable from `sources` along `succ`.
pub fn reach_mask<F, I>(n: usize, succ: F, sources: impl IntoIterator<Item = u32>) -> Vec<bool>
where
    F: Fn(u32) -> I,
    I: IntoIterator<Item = u32>,
{
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    for s in sources {
        if !seen[s as usize] {
            seen[s as usize] = true;
            stack.push(s);
        }
    }
    while let Some(v) = stack.pop() {
        for w in succ(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    seen
}
