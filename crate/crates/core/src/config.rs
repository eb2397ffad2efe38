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

use crate::choosability::DEFAULT_SEARCH_BUDGET;
use crate::error::{Error, Result};
use crate::oracles::OracleCaps;

/// Knobs shared by the solvers and the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    /// Node budget for each auxiliary-colouring search.
    pub search_budget: u64,
    pub caps: OracleCaps,
    /// Replaces `ceil((k+3)^2 / 2)` as the list-size threshold.
    pub threshold_override: Option<usize>,
    pub trace: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            search_budget: DEFAULT_SEARCH_BUDGET,
            caps: OracleCaps::default(),
            threshold_override: None,
            trace: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let caps = &self.caps;
        if self.search_budget == 0
            || caps.edge_list_edges == 0
            || caps.total_elements == 0
            || caps.choosable_edges == 0
            || caps.choosable_universe == 0
            || self.threshold_override == Some(0)
        {
            return Err(Error::pre("configuration values must be positive"));
        }
        Ok(())
    }
}
