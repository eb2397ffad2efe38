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

use thiserror::Error;

use crate::graph::Edge;

/// Errors raised while constructing a simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}")]
    Duplicate(Edge),
    #[error("endpoint {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is on both sides of the bipartition")]
    SideOverlap(usize),
    #[error("edge {0} does not cross the bipartition")]
    NotCrossing(Edge),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An input does not satisfy the documented precondition of an operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    /// A step that the underlying proof guarantees has failed. Always a bug.
    #[error("internal assertion failed: {0}")]
    Internal(String),

    /// One of the executable claims checked inside the total-colouring
    /// augmentation did not hold.
    #[error("augmentation claim failed: {0}")]
    ClaimFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Graph(_) | Error::Parse { .. } | Error::Io(_) => 1,
            Error::Precondition(_) | Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => 2,
            Error::Internal(_) | Error::ClaimFailed(_) => 3,
        }
    }
}
