//! Group homology, the map into Hochschild homology, the multitrace and the Dennis trace.

mod bar;
mod dennis;
mod multitrace;

pub use bar::{bar_complex, group_homology, group_to_hh, normalized_bar_complex};
pub use dennis::{
    dennis_trace_homology, dennis_trace_homology_with, dennis_trace_k1, k1_trace_chain, DennisTraceK1,
    DennisTraceMap, TraceLimits,
};
pub use multitrace::{morita_map, multitrace, multitrace_apply, MoritaMap};
