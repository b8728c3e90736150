//! Benchmark helpers live in the bench targets; the library is empty.
