//! Affine-class representatives in 8 variables with their expected values.

/// (id, ANF, add_3, dt_3) for the 31 cubic classes, in increasing order of dt_3.
pub(super) const DEGREE3: [(&str, &str, &str, &str); 31] = [
    ("f_2", "x1x2x3", "0.337275", "0.328125"),
    ("f_3", "x1x2x5 + x3x4x5", "0.421594", "0.410156"),
    ("f_7", "x1x2x7 + x3x4x7 + x5x6x7", "0.442674", "0.430664"),
    ("f_4", "x1x2x3 + x4x5x6", "0.453213", "0.440918"),
    ("f_5", "x1x2x3 + x2x4x5 + x3x4x6", "0.463753", "0.451172"),
    (
        "f_6",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6",
        "0.474293",
        "0.461426",
    ),
    ("f_8", "x1x2x3 + x4x5x6 + x1x4x7", "0.474293", "0.461426"),
    ("f_13", "x1x2x3 + x4x5x6 + x1x7x8", "0.482198", "0.469116"),
    (
        "f_9",
        "x1x2x3 + x2x4x5 + x3x4x6 + x1x4x7",
        "0.484833",
        "0.471680",
    ),
    (
        "f_10",
        "x1x2x3 + x4x5x6 + x1x4x7 + x2x5x7",
        "0.484833",
        "0.471680",
    ),
    (
        "f_16",
        "x1x2x3 + x2x4x5 + x3x4x6 + x3x7x8",
        "0.484833",
        "0.471680",
    ),
    (
        "f_12",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x2x4x7",
        "0.490103",
        "0.476807",
    ),
    (
        "f_14",
        "x1x2x3 + x4x5x6 + x1x7x8 + x4x7x8",
        "0.490103",
        "0.476807",
    ),
    (
        "f_29",
        "x1x2x3 + x4x5x6 + x1x4x7 + x3x6x8",
        "0.490103",
        "0.476807",
    ),
    (
        "f_15",
        "x1x2x3 + x2x4x5 + x6x7x8 + x1x4x7",
        "0.492738",
        "0.479370",
    ),
    (
        "f_11",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7",
        "0.495373",
        "0.481934",
    ),
    (
        "f_17",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x7x8",
        "0.495373",
        "0.481934",
    ),
    (
        "f_24",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x5x6x8",
        "0.495373",
        "0.481934",
    ),
    (
        "f_28",
        "x1x2x7 + x3x4x7 + x5x6x7 + x2x5x8 + x3x6x8",
        "0.495373",
        "0.481934",
    ),
    (
        "f_31",
        "x1x2x3 + x4x5x6 + x1x4x7 + x3x6x8 + x4x7x8 + x5x6x8",
        "0.495373",
        "0.481934",
    ),
    (
        "f_18",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x2x3x8",
        "0.498008",
        "0.484497",
    ),
    (
        "f_19",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x5x8 + x2x3x7 + x6x7x8",
        "0.498008",
        "0.484497",
    ),
    (
        "f_26",
        "x1x2x3 + x4x5x6 + x1x4x7 + x2x5x7 + x2x6x8 + x2x7x8 + x3x4x8",
        "0.498008",
        "0.484497",
    ),
    (
        "f_30",
        "x1x2x3 + x4x5x6 + x1x4x7 + x3x6x8 + x5x7x8",
        "0.498008",
        "0.484497",
    ),
    (
        "f_22",
        "x1x2x3 + x2x3x4 + x3x4x5 + x4x5x6 + x5x6x7 + x6x7x8 \
         + x1x2x8 + x2x3x8 + x3x4x8 + x4x5x8 + x5x6x8 + x1x7x8",
        "0.499326",
        "0.485779",
    ),
    (
        "f_21",
        "x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x2x7x8 + x3x4x7 + x1x6x8 \
         + x2x3x7 + x1x4x7",
        "0.500643",
        "0.487061",
    ),
    (
        "f_23",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x5x7x8",
        "0.500643",
        "0.487061",
    ),
    (
        "f_25",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x3x4x8",
        "0.500643",
        "0.487061",
    ),
    (
        "f_32",
        "x1x2x3 + x4x5x6 + x1x4x7 + x1x6x8 + x2x5x8 + x3x4x8",
        "0.500643",
        "0.487061",
    ),
    (
        "f_20",
        "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x2x7x8 + x3x4x7 + x1x6x8",
        "0.501960",
        "0.488342",
    ),
    (
        "f_27",
        "x1x2x3 + x4x5x6 + x1x4x7 + x2x5x7 + x1x6x8 + x1x7x8 + x2x4x8 + x3x5x8",
        "0.503278",
        "0.489624",
    ),
];

/// (id, ANF, dt_2) for the four quadratic classes.
pub(super) const DEGREE2: [(&str, &str, &str); 4] = [
    ("q_1", "x1x2", "0.375000"),
    ("q_2", "x1x2 + x3x4", "0.468750"),
    ("q_3", "x1x2 + x3x4 + x5x6", "0.492188"),
    ("q_4", "x1x2 + x3x4 + x5x6 + x7x8", "0.498047"),
];

/// The single affine class of degree one.
pub(super) const DEGREE1: [(&str, &str, &str); 1] = [("f", "x1", "0.500000")];
