//! Host crate for the acceptance suite in `tests/acceptance.rs`, which prints
//! one PASS or FAIL line per acceptance criterion. Run it with
//! `cargo test -p projrigid-validation --test acceptance`.
