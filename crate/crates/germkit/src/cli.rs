//! Command-line front end. Placeholder while the geometry modules land.

pub fn run_from_args() -> i32 {
    eprintln!("germkit: CLI wiring pending");
    2
}
