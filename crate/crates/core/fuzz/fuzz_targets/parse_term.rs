#![no_main]

use decotree::dsl::parse_lincomb;
use decotree::dsl::printer::format_lincomb;
use decotree::dsl::Style;
use libfuzzer_sys::fuzz_target;

// The first byte picks a preset signature, the rest is a linear combination.
fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(src) = std::str::from_utf8(rest) else { return };
    let ws = decotree::presets::workspace().expect("presets load");
    let sig = &ws.signatures[pick as usize % ws.signatures.len()];
    if let Ok(l) = parse_lincomb(sig, src) {
        for style in [Style::Machine, Style::Human] {
            let text = format_lincomb(&l, sig.mode, style);
            assert_eq!(parse_lincomb(sig, &text).expect("printed combination reparses"), l);
        }
    }
});
