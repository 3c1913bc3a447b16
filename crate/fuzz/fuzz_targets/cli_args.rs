#![no_main]

use libfuzzer_sys::fuzz_target;

// NUL-separated argv; only parsing and validation run, never a computation.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let argv = std::iter::once("siegel").chain(text.split('\0'));
    if let Ok(cli) = siegel::cli::parse(argv) {
        let _ = cli.validate();
    }
});
