//! Dynamic realization: order-preserving embeddings into the rationals,
//! piecewise-linear actions, and compression to the negative ray.

mod compress;
mod embed;
mod engine;
mod plmap;

pub use compress::{compress_to_negative_ray, phi, phi_inv, CompressedMap};
pub use embed::{build_embedding_t, Embedding};
pub use engine::{
    build_pl_action, check_realization, realize, GermOrbit, Realization, RealizationChecks,
};
pub use plmap::PlMap;
