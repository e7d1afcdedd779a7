//! Synchronizing automata toolkit.
//!
//! * [`automaton`]: automata, words, digraphs and colorings; [`testas`] reads
//!   and writes the TESTAS table format.
//! * [`graph`]: strongly connected components, cycle gcd, AGW test.
//! * [`sync`]: synchronizability and greedy reset words; [`exact`]: minimal
//!   reset words.
//! * [`semigroup`]: the transition semigroup as an elements × generators table.
//! * [`coloring`]: synchronizing and k-synchronizing road colorings.
//! * [`layout`]: cyclic SVG layout.
//!
//! ```
//! use synchro::{exact::minimal_sync_word, Automaton};
//!
//! let c4 = Automaton::cerny(4);
//! assert_eq!(minimal_sync_word(&c4).unwrap().len(), 9);
//! ```

pub mod automaton;
pub mod coloring;
pub mod error;
pub mod exact;
pub mod graph;
pub mod layout;
pub mod semigroup;
pub mod stateset;
pub mod sync;
pub mod testas;

pub use automaton::{Automaton, Coloring, Digraph, Word};
pub use error::{Error, Result};
pub use stateset::StateSet;
