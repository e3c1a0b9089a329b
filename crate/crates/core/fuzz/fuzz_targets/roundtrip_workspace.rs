#![no_main]

use decotree::dsl::{parse, print_workspace};
use libfuzzer_sys::fuzz_target;

// Whatever parses must print to text that parses back to the same workspace.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(ws) = parse(src) else { return };
    let printed = print_workspace(&ws);
    let again = parse(&printed).expect("printed workspace reparses");
    assert_eq!(ws, again);
    assert_eq!(printed, print_workspace(&again));
});
