// Published table of the quadratic family: total ON cells U_m at
// generation n_m = m * 2^k for m = 1, 3, 5, 7 and k = 0..=8. Copied from the
// source table with thousands separators removed. Never regenerate these
// from the implementation.

pub const TABLE1_MULTIPLIERS: [u64; 4] = [1, 3, 5, 7];

/// `TABLE1[k][i] = (n_m, U_m)` for `m = TABLE1_MULTIPLIERS[i]`.
pub const TABLE1: [[(u64, u64); 4]; 9] = [
    [(1, 1), (3, 9), (5, 25), (7, 49)],
    [(2, 5), (6, 37), (10, 101), (14, 197)],
    [(4, 21), (12, 149), (20, 405), (28, 789)],
    [(8, 85), (24, 597), (40, 1621), (56, 3157)],
    [(16, 341), (48, 2389), (80, 6485), (112, 12629)],
    [(32, 1365), (96, 9557), (160, 25941), (224, 50517)],
    [(64, 5461), (192, 38229), (320, 103765), (448, 202069)],
    [(128, 21845), (384, 152917), (640, 415061), (896, 808277)],
    [
        (256, 87381),
        (768, 611669),
        (1280, 1660245),
        (1792, 3233109),
    ],
];
