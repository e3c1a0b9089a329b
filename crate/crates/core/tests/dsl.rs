mod common;

use common::*;
use decotree::dsl::printer::{format_lincomb, print_algebra};
use decotree::dsl::{parse, parse_lincomb, print_workspace, Style};
use decotree::presets;
use decotree::splitting::{split_signature, SplitMode};
use decotree::{Error, Mode};
use proptest::prelude::*;

#[test]
fn presets_round_trip() {
    let ws = presets::workspace().unwrap();
    let printed = print_workspace(&ws);
    let again = parse(&printed).unwrap();
    assert_eq!(ws, again);
    assert_eq!(printed, print_workspace(&again));
}

#[test]
fn errors_carry_positions() {
    let src = "signature s {\n  op f : 2;\n}\nidentity a over s : f(x1, x1) = 0;\n";
    match parse(src) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
        other => panic!("expected a parse error, got {other:?}"),
    }
    match parse("signature s { op f 2; }") {
        Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (1, 20)),
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(parse("identity a over nowhere : x1 = 0;").is_err());
    assert!(parse("signature s { op f : 2; op f : 3; }").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lincomb_round_trip(seed in any::<u64>(), n in 1..=4usize, k in 0..6usize, pre in any::<bool>()) {
        let mut r = rng(seed);
        let mode = if pre { SplitMode::Pre } else { SplitMode::Post };
        let sig = split_signature(&fg(), mode).unwrap();
        let l = random_lincomb(&sig, n, k, &mut r);
        for style in [Style::Machine, Style::Human] {
            let text = format_lincomb(&l, sig.mode, style);
            prop_assert_eq!(&parse_lincomb(&sig, &text).unwrap(), &l, "{}", text);
        }
        let plain = random_lincomb(&fg(), n, k, &mut r);
        let text = format_lincomb(&plain, Mode::Plain, Style::Machine);
        prop_assert_eq!(parse_lincomb(&fg(), &text).unwrap(), plain);
    }

    #[test]
    fn algebra_round_trip(seed in any::<u64>(), dim in 1..=3usize) {
        let mut r = rng(seed);
        let a = random_algebra("A", &fg(), dim, &mut r);
        let src = format!("signature fg {{ op f : 2; op g : 2; }}\n{}", print_algebra(&a));
        let ws = parse(&src).unwrap();
        prop_assert_eq!(&ws.algebra("A").unwrap().tables, &a.tables);
    }

    /// Arbitrary input never panics the parser.
    #[test]
    fn parser_total(src in "\\PC{0,80}") {
        let _ = parse(&src);
    }
}
