//! The matroid of the reflection arrangement and its broken-circuit basis.

mod arrangement;
mod gamma;
mod word;

pub use arrangement::{Arrangement, Flat, FlatId, ReflSet, ReflectionOrder, BOTTOM};
pub use gamma::{BasisGraph, BasisWords, Trace, FORMAT_VERSION};
pub use word::{normalize_word, Word};
