//! Holds the `acceptance` test target. Run it with
//! `cargo test -p knot-clasp-validation --test acceptance`.
