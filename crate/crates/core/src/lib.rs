//! Anytime motion planning on large dense roadmaps.
//!
//! The library builds roadmaps over low-dispersion Halton samples of the unit
//! hypercube, grows them in batches (adding vertices, edges, or both), and
//! searches them lazily: edges are only collision-checked when a candidate
//! path demands it.  Evaluations feed a k-nearest-neighbour belief model over
//! the configuration space, which later searches use to trade path length
//! against collision probability on a Pareto sweep.
//!
//! Module map:
//! - [`halton`]: deterministic low-dispersion sampling and dispersion bounds
//! - [`world`]: axis-aligned box obstacles, the collision detector, scenario
//!   generation and (de)serialization
//! - [`roadmap`]: r-disk graphs with a persistent evaluate-once edge cache
//! - [`belief`]: weighted k-NN estimate of collision probability and the
//!   edge-measure bookkeeping that keeps it cheap to query
//! - [`search`]: lazy anytime planners (Pareto sweep and a pure length-driven
//!   baseline) over the roadmap
//! - [`densify`]: batch schedules, informed-set pruning, the batched planning
//!   loop, and the analytic effort/quality simulator
//! - [`trace`]: anytime result traces and their CSV serialization

pub mod belief;
pub mod densify;
pub mod error;
pub mod geom;
pub mod halton;
pub mod roadmap;
pub mod search;
pub mod spatial;
pub mod trace;
pub mod world;

pub use error::{Error, Result};
pub use geom::Config;
