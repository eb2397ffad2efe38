// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exhaustive backtracking over a conflict graph of elements with colour
//! lists. Shared by the oracles and the auxiliary-order search.

use std::collections::BTreeMap;

use crate::colouring::Colour;
use crate::error::{Error, Result};

/// Elements to colour, each with a list and a set of conflicting elements.
#[derive(Debug, Clone, Default)]
pub(crate) struct ConflictSearch {
    lists: Vec<Vec<Colour>>,
    conflicts: Vec<Vec<usize>>,
    /// All elements share one list of interchangeable colours; only the
    /// smallest never-used colour is tried at each branch.
    symmetric: bool,
}

struct State {
    // blocked[e][c]: coloured conflict-neighbours of e holding colour index c
    blocked: Vec<Vec<u32>>,
    assigned: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
    used_prefix: usize,
}

impl ConflictSearch {
    pub(crate) fn new(lists: Vec<Vec<Colour>>) -> Self {
        let n = lists.len();
        ConflictSearch {
            lists,
            conflicts: vec![Vec::new(); n],
            symmetric: false,
        }
    }

    pub(crate) fn symmetric(mut self) -> Self {
        self.symmetric = true;
        self
    }

    pub(crate) fn add_conflict(&mut self, a: usize, b: usize) {
        self.conflicts[a].push(b);
        self.conflicts[b].push(a);
    }

    /// First solution in the canonical search order, `None` if infeasible.
    pub(crate) fn solve(&self, budget: u64) -> Result<Option<Vec<Colour>>> {
        let palette: Vec<Colour> = {
            let mut all: Vec<Colour> = self.lists.iter().flatten().copied().collect();
            all.sort_unstable();
            all.dedup();
            all
        };
        let index: BTreeMap<Colour, usize> =
            palette.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let lists: Vec<Vec<usize>> = self
            .lists
            .iter()
            .map(|l| {
                let mut v: Vec<usize> = l.iter().map(|c| index[c]).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let n = lists.len();
        let mut st = State {
            blocked: vec![vec![0; palette.len()]; n],
            assigned: vec![None; n],
            nodes: 0,
            budget,
            used_prefix: 0,
        };
        if self.descend(&lists, &mut st)? {
            Ok(Some(
                st.assigned
                    .iter()
                    .map(|c| palette[c.expect("complete")])
                    .collect(),
            ))
        } else {
            Ok(None)
        }
    }

    fn descend(&self, lists: &[Vec<usize>], st: &mut State) -> Result<bool> {
        // Most constrained element first; ties by index.
        let mut pick: Option<(usize, usize)> = None;
        for (e, list) in lists.iter().enumerate() {
            if st.assigned[e].is_some() {
                continue;
            }
            let free = list.iter().filter(|&&c| st.blocked[e][c] == 0).count();
            if free == 0 {
                return Ok(false);
            }
            if pick.is_none_or(|(f, _)| free < f) {
                pick = Some((free, e));
            }
        }
        let Some((_, e)) = pick else {
            return Ok(true);
        };
        for &c in &lists[e] {
            if st.blocked[e][c] != 0 {
                continue;
            }
            if self.symmetric && c > st.used_prefix {
                break;
            }
            st.nodes += 1;
            if st.nodes > st.budget {
                return Err(Error::BudgetExceeded { limit: st.budget });
            }
            let saved_prefix = st.used_prefix;
            st.used_prefix = st.used_prefix.max(c + 1);
            st.assigned[e] = Some(c);
            for &f in &self.conflicts[e] {
                st.blocked[f][c] += 1;
            }
            if self.descend(lists, st)? {
                return Ok(true);
            }
            for &f in &self.conflicts[e] {
                st.blocked[f][c] -= 1;
            }
            st.assigned[e] = None;
            st.used_prefix = saved_prefix;
        }
        Ok(false)
    }
}
