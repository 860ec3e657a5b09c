//! Acceptance suite for the workspace. The criteria live in `tests/acceptance.rs`
//! and run with `cargo test -p coxdim-validation --test acceptance`.
