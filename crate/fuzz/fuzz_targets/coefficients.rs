#![no_main]

use libfuzzer_sys::fuzz_target;
use siegel::characters::QuadraticCharacter;
use siegel::coeffs::coefficients_of_f;

fuzz_target!(|input: (i16, i16, u16)| {
    let (Ok(a), Ok(b)) = (
        QuadraticCharacter::new(input.0.into()),
        QuadraticCharacter::new(input.1.into()),
    ) else {
        return;
    };
    let n = usize::from(input.2 % 4096);
    match coefficients_of_f(a, b, n) {
        Ok(t) => {
            assert_eq!(t.get(1), Some(1));
            assert!(t.values().iter().all(|&v| v >= 0));
        }
        Err(_) => assert_eq!(n, 0),
    }
});
