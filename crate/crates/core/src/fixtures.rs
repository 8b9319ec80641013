//! Input files bundled into the binary, looked up by file name.

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        /// `(file name, contents)` for every bundled fixture.
        pub const ALL: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../../fixtures/", $name))),)*
        ];
    };
}

bundle!(
    "cusp_b_kernel.grp",
    "f1536.grp",
    "g_z4.aff",
    "g_z4.grp",
    "gamma_picard.grp",
    "holzapfel.arr",
    "hprime.aff",
    "hprime.grp",
    "hprime.sub",
    "hprime_cover.aff",
    "hprime_cover.grp",
    "hprime_cover.sub",
    "z2.grp",
    "z2_abelian.arr",
    "z2_abelian.pipeline",
    "z2_bielliptic.pipeline",
    "z2_phi.aff",
    "z4.grp",
    "z4_abelian.arr",
    "z4_abelian.pipeline",
    "z4_bielliptic.pipeline",
    "z4_phi.aff",
);

/// Contents of the bundled file `name`, if there is one.
pub fn get(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
