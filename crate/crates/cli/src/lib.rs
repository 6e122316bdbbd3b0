//! Library half of the `visrank` command: the experiment runner.

pub mod experiment;
