//! Holds the `acceptance` test target; run it with
//! `cargo test -p decotree-suite --test acceptance`.
