#![no_main]

use libfuzzer_sys::fuzz_target;
use siegel::characters::{kronecker, MAX_ARGUMENT};

fuzz_target!(|input: (i64, u64, u64)| {
    let (d, m, n) = input;
    match kronecker(d, m) {
        Ok(v) => assert!((-1..=1).contains(&v)),
        Err(_) => return,
    }
    let (m, n) = (m % 100_000 + 1, n % 100_000 + 1);
    if d.unsigned_abs() <= MAX_ARGUMENT {
        if let (Ok(a), Ok(b), Ok(ab)) = (kronecker(d, m), kronecker(d, n), kronecker(d, m * n)) {
            assert_eq!(ab, a * b);
        }
    }
});
