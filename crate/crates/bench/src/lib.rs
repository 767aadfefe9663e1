//! Empty by design: this crate only exists to host the criterion
//! benches under benches/.
