//! Categories enriched in cubical sets, presented by generators whose faces
//! are words, with truncated mapping spaces and their homotopy categories.

mod extend;
mod hcat;
mod james;
mod mapping;
mod presentation;

pub use extend::{extend_inverse, ExtensionReport, InverseWitness, SearchStatus};
pub use hcat::{homotopy_category, HomotopyCategory};
pub use james::{james, james_cubical, JAMES_LIMIT};
pub use mapping::{
    mapping_space, mapping_space_with, space_of_words, truncated_words, MappingSpaceTruncation, TruncationOptions,
    MAX_LETTERS, WORD_LIMIT,
};
pub use presentation::{
    build_e, build_h, build_p, empty, free_on_graph, glue, interval, interval_tilde, localize, morphism_by_names, point,
    Attachment, EnrichedPresentation, Generator, PresentationMorphism, Word, WordRef,
};
