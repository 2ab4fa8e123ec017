//! Pattern files bundled with the crate (`patterns/`).
//!
//! None of these are transcriptions: the highway and cone seeds came out of
//! random seed search, and the two widget sets were split out of searched
//! family members (see [`crate::infer`]).

use antlab_core::{Pattern, Pos};

use crate::family::WidgetSet;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        /// `(name, file text)` for every bundled pattern.
        pub const FILES: &[(&str, &str)] = &[$(($name, include_str!(concat!("../patterns/", $name, ".ant")))),*];
    };
}

bundled!(
    "zeta_main",
    "zeta_link",
    "zeta_bouncer",
    "gamma_main",
    "gamma_link",
    "gamma_bouncer",
    "llrlrll_h208",
    "llrlrll_h232",
    "llrlrll_cone",
    "llrrrl_h800",
    "llrrrl_h992",
);

/// Bundled pattern by file stem.
pub fn pattern(name: &str) -> Option<Pattern> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| crate::io::parse_checked(text).expect("bundled patterns are valid"))
}

fn widgets(prefix: &str, step: Pos) -> WidgetSet {
    let get = |part: &str| pattern(&format!("{prefix}_{part}")).expect("bundled widget");
    WidgetSet { name: prefix.into(), main: get("main"), link: get("link"), bouncer: get("bouncer"), step }
}

/// LLRLRLL family: `P(k)` is a highway of period `208 + 24k`, drift (−2,−2).
pub fn zeta() -> WidgetSet {
    widgets("zeta", Pos::new(2, 0))
}

/// LLRRRL family: `P(k)` is a highway of period `800 + 96k`, drift (4,4).
pub fn gamma() -> WidgetSet {
    widgets("gamma", Pos::new(-2, 0))
}
