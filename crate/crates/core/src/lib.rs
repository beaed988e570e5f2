//! Pattern-driven ontology construction.
//!
//! Ontologies are built from a small OWL subset ([`model`]) by pattern
//! functions ([`patterns`]) or by a textual front-end ([`dsl`]), rendered
//! as Manchester syntax ([`serializer`]) or JSON Lines ([`dump`]), and
//! classified over the facet fragment ([`classifier`]). [`exemplar`] builds
//! the amino-acid ontology.

pub mod classifier;
pub mod dsl;
pub mod dump;
pub mod exemplar;
pub mod model;
pub mod patterns;
pub mod serializer;

pub use classifier::{check_against_oracle, classify, Classifier, ClassifierError, SubsumptionDag};
pub use model::{Axiom, ClassExpression, Entity, EntityKind, Iri, ModelError, Ontology};
pub use patterns::{FacetRegistry, PatternError};
pub use serializer::{render, RenderOptions};
