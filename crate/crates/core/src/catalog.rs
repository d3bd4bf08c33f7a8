//! Built-in configurations: the Harvey-Chryssanthacopoulos four-qubit
//! rectangle, its twin, and the two-qubit Mermin square.

use crate::magic::{Context, MagicConfiguration};

pub const HC_RECTANGLE: [(&str, &[&str]); 5] = [
    ("S1", &["ZIII", "IXII", "IIZI", "IIIX", "ZXZX"]),
    ("S2", &["ZIII", "IXII", "IIXI", "IIIZ", "ZXXZ"]),
    ("S3", &["XIII", "IXII", "IIZI", "IIIZ", "XXZZ"]),
    ("S4", &["XIII", "IXII", "IIXI", "IIIX", "XXXX"]),
    ("S5", &["ZXZX", "ZXXZ", "XXZZ", "XXXX"]),
];

pub const HC_TWIN: [(&str, &[&str]); 5] = [
    ("S1'", &["IXII", "ZXII", "IXZI", "IXIX", "ZIZX"]),
    ("S2'", &["IXII", "ZXII", "IXIZ", "IXXI", "ZIXZ"]),
    ("S3'", &["IXII", "IXZI", "IXIZ", "XXII", "XIZZ"]),
    ("S4'", &["IXII", "IXIX", "IXXI", "XXII", "XIXX"]),
    ("S5'", &["ZIZX", "ZIXZ", "XIZZ", "XIXX"]),
];

/// The four maximal totally isotropic subspaces spanned by S1..S4, as point lists.
pub const HC_GENERATORS: [&[&str]; 4] = [
    &[
        "ZIII", "IXII", "IIZI", "IIIX", "ZXZX", "ZXII", "ZIZI", "ZIIX", "IXZX", "IXZI", "IXIX",
        "ZIZX", "IIZX", "ZXIX", "ZXZI",
    ],
    &[
        "ZIII", "IXII", "IIXI", "IIIZ", "ZXXZ", "ZXII", "ZIXI", "ZIIZ", "IXXZ", "IXXI", "IXIZ",
        "ZIXZ", "IIXZ", "ZXIZ", "ZXXI",
    ],
    &[
        "XIII", "IXII", "IIZI", "IIIZ", "XXZZ", "XXII", "XIZI", "XIIZ", "IXZZ", "IXZI", "IXIZ",
        "XIZZ", "IIZZ", "XXIZ", "XXZI",
    ],
    &[
        "XIII", "IXII", "IIXI", "IIIX", "XXXX", "XXII", "XIXI", "XIIX", "IXXX", "IXXI", "IXIX",
        "XIXX", "IIXX", "XXIX", "XXXI",
    ],
];

pub const HC_FANO_PLANE: [&str; 7] = ["ZXZX", "ZXXZ", "XXZZ", "XXXX", "IIYY", "YIIY", "YIYI"];

pub const HC_DIAGONAL_LINE: [&str; 3] = ["IIYY", "YIIY", "YIYI"];

/// Pairwise intersections of the four generators, keyed by 1-based indices.
pub const HC_LINES: [((usize, usize), [&str; 3]); 6] = [
    ((1, 2), ["IXII", "ZIII", "ZXII"]),
    ((1, 3), ["IXII", "IIZI", "IXZI"]),
    ((1, 4), ["IXII", "IIIX", "IXIX"]),
    ((2, 3), ["IXII", "IIIZ", "IXIZ"]),
    ((2, 4), ["IXII", "IIXI", "IXXI"]),
    ((3, 4), ["IXII", "XIII", "XXII"]),
];

pub const HC_PERSPECTIVITY_POINT: &str = "IXII";

pub const MERMIN_SQUARE_ROWS: [[&str; 3]; 3] = [
    ["XI", "IX", "XX"],
    ["IZ", "ZI", "ZZ"],
    ["XZ", "ZX", "YY"],
];

fn build(table: &[(&str, &[&str])]) -> MagicConfiguration {
    let contexts = table
        .iter()
        .map(|(name, words)| {
            Context::from_words(words)
                .expect("built-in context is valid")
                .named(*name)
        })
        .collect();
    MagicConfiguration::new(contexts).expect("built-in configuration is valid")
}

pub fn hc_rectangle() -> MagicConfiguration {
    build(&HC_RECTANGLE)
}

pub fn hc_twin() -> MagicConfiguration {
    build(&HC_TWIN)
}

/// Rows then columns of the standard Mermin square.
pub fn mermin_square() -> MagicConfiguration {
    let rows = MERMIN_SQUARE_ROWS;
    let mut table: Vec<(String, Vec<&str>)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        table.push((format!("R{}", i + 1), row.to_vec()));
    }
    for j in 0..3 {
        table.push((format!("C{}", j + 1), rows.iter().map(|r| r[j]).collect()));
    }
    let contexts = table
        .iter()
        .map(|(name, words)| Context::from_words(words).expect("valid").named(name.clone()))
        .collect();
    MagicConfiguration::new(contexts).expect("valid")
}
