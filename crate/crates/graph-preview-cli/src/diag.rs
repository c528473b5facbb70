//! Diagnostics on stderr: graph sizes and per-phase timings. Never
//! touches stdout. The GRAPH_PREVIEW_DIAG environment variable overrides
//! the --emit-timings flag: 0 silences, anything else enables.

use std::time::Instant;

use graph_preview::{EntityGraph, SchemaGraph};

pub struct Timings {
    enabled: bool,
    lines: Vec<String>,
}

pub fn enabled(flag: bool) -> bool {
    match std::env::var("GRAPH_PREVIEW_DIAG") {
        Ok(v) => v != "0",
        Err(_) => flag,
    }
}

impl Timings {
    pub fn new(flag: bool) -> Self {
        Self {
            enabled: enabled(flag),
            lines: Vec::new(),
        }
    }

    pub fn record(&mut self, phase: &str, start: Instant) {
        if self.enabled {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            self.lines.push(format!("timing: {phase}={ms:.3}ms"));
        }
    }

    pub fn sizes(&mut self, g: &EntityGraph, s: &SchemaGraph) {
        if self.enabled {
            self.lines.push(format!(
                "diag: entities={} edges={} types={} rel_types={}",
                g.entity_count(),
                g.edge_count(),
                s.type_count(),
                s.rel_type_count()
            ));
        }
    }

    pub fn flush(&self) {
        for line in &self.lines {
            eprintln!("{line}");
        }
    }
}
