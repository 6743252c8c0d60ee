//! Holds the `acceptance` test target, which checks every acceptance
//! criterion against the `evocount` library and prints one line per
//! criterion. Run it with `cargo test -p evocount-validation --test acceptance`.
