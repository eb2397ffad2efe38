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

//! Constructive list edge colouring and total colouring for graphs of
//! bounded treewidth.
//!
//! Both solvers peel edges whose endpoint degrees are small, find a
//! structural witness `(U, W, x)` in what remains, shrink the graph around
//! it and then colour everything back in reverse order. Exhaustive oracles
//! and validators in [`oracles`] certify results on small instances.

pub mod choosability;
pub mod cli;
pub mod colouring;
pub mod config;
pub mod edge_solver;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracles;
mod search;
pub mod total_solver;
pub mod treewidth;

pub use colouring::{Colour, EdgeColouring, ListAssignment, TotalColouring};
pub use error::{Error, GraphError, Result};
pub use graph::{BipartiteGraph, Edge, Graph};
pub use treewidth::{RootedDecomposition, StructuralWitness, TreeDecomposition};
