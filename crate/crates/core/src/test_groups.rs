//! Corpus groups shared by the unit tests.

use crate::pcgroup::Group;

use std::sync::OnceLock;

/// Each group is parsed once per test binary and cloned out of the cache.
macro_rules! corpus_group {
    ($fn_name:ident, $file:literal) => {
        pub fn $fn_name() -> Group {
            static CACHE: OnceLock<Group> = OnceLock::new();
            CACHE
                .get_or_init(|| Group::parse(include_str!(concat!("../../../corpus/", $file))).expect($file))
                .clone()
        }
    };
}

corpus_group!(es27, "es27.pc");
corpus_group!(w81, "w81.pc");
corpus_group!(e27, "e27.pc");
corpus_group!(e9, "e9.pc");
corpus_group!(m625, "m625.pc");
corpus_group!(m243, "m243.pc");
corpus_group!(t729, "t729.pc");

pub fn c3() -> Group {
    Group::parse("group C3\nprime 3\nngens 1\n").unwrap()
}

/// Shipped corpus groups small enough for every exhaustive check; `t729` is
/// exercised separately.
pub fn corpus_groups() -> Vec<Group> {
    vec![es27(), w81(), e27(), e9(), m243(), m625()]
}
