//! placeholder
pub struct RunResult;
pub struct SimConfig;
