mod fraisse;
mod monoid;
mod order;
mod ramsey;
mod tree;

use crate::input::InputError;
use crate::{BackendArg, Cli, Cmd, MillikenCmd, Run};
use crate::report::{Outcome, Report};
use serde_json::json;
use wfr_core::trees::milliken_witness_search;

pub fn run(cli: &Cli) -> Run {
    let o = &cli.opts;
    match &cli.cmd {
        Cmd::Monoid(c) => monoid::run(c, o),
        Cmd::Order(c) => order::run(c, o),
        Cmd::Tree(c) => tree::run(c, o),
        Cmd::Ramsey(c) => ramsey::run(c, o),
        Cmd::Milliken(MillikenCmd::Search { m, a, b, n_max, max_nodes, sequential }) => {
            let n = milliken_witness_search(*m, *a, *b, o.colors, *n_max, *max_nodes, !sequential);
            let params = json!({"m": m, "a": a, "b": b, "colors": o.colors, "n_max": n_max});
            Ok(match n {
                Ok(Some(n)) => Report::new(Outcome::Yes, json!({"params": params, "n": n})).line(format!("N = {n}")),
                Ok(None) => Report::new(Outcome::Unknown, json!({"params": params, "n": null}))
                    .line(format!("no height up to {n_max} works")),
                Err(wfr_core::trees::MillikenError::Exhausted { height, nodes }) => {
                    Report::new(Outcome::Unknown, json!({"params": params, "exhausted_at": height, "nodes": nodes}))
                        .line(format!("coloring search gave up at height {height} after {nodes} nodes"))
                }
                Err(e) => return Err(InputError::new(e)),
            })
        }
        Cmd::Fraisse(c) => fraisse::run(c, o),
    }
}

/// Name of a backend in reports.
pub fn backend_name(b: BackendArg) -> &'static str {
    match b {
        BackendArg::Lo => "lo",
        BackendArg::Alo => "alo",
        BackendArg::Tree => "tree",
    }
}

/// Run `$body` with `$c` bound to the category selected by `$backend`.
macro_rules! with_category {
    ($backend:expr, $m:expr, $variant:expr, |$c:ident| $body:expr) => {
        match $backend {
            $crate::BackendArg::Lo => {
                let $c = &wfr_core::orders::LinearOrders;
                $body
            }
            $crate::BackendArg::Alo => {
                let $c = &wfr_core::orders::AlmostLinearOrders;
                $body
            }
            $crate::BackendArg::Tree => {
                let cat = wfr_core::trees::TreeCategory::new($m, $variant).map_err($crate::input::InputError::new)?;
                let $c = &cat;
                $body
            }
        }
    };
}
pub(crate) use with_category;
