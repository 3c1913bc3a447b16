#![no_main]

use libfuzzer_sys::fuzz_target;
use siegel::characters::{is_fundamental_discriminant, Character, QuadraticCharacter};

fuzz_target!(|input: (i64, u32)| {
    // |d| is clamped so value() stays cheap
    let d = input.0 % 1_000_000_007;
    let n = u64::from(input.1);
    match QuadraticCharacter::new(d) {
        Ok(chi) => {
            assert!(is_fundamental_discriminant(d));
            let v = chi.value(n);
            assert!((-1..=1).contains(&v));
            assert_eq!(chi.value(n + chi.modulus()), v);
            assert_eq!(Character::discriminant(&chi), d);
        }
        Err(_) => assert!(!is_fundamental_discriminant(d)),
    }
});
