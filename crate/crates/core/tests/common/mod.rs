//! Published reference values of the four design tables, verbatim.
#![allow(dead_code)]

#[derive(Debug, Clone, Copy)]
pub enum P {
    Three([f64; 3]),
    /// `p1` and the combined `p2 + p3` of two indistinguishable alternatives.
    Merged(f64, f64),
}

#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub k: usize,
    pub d: [usize; 3],
    pub z: Option<[f64; 2]>,
    pub p: P,
    pub crit: f64,
    pub eff: f64,
    pub bold: bool,
}

use P::*;

/// `(K, z*, Phi(z*))`.
pub const TABLE1: [(usize, f64, f64); 7] = [
    (1, 1.138, 0.872),
    (2, 0.938, 0.826),
    (4, 0.732, 0.768),
    (8, 0.549, 0.708),
    (10, 0.497, 0.690),
    (50, 0.232, 0.592),
    (100, 0.165, 0.566),
];

/// Dependent utilities at indifference.
#[rustfmt::skip]
pub const TABLE2: [Row; 29] = [
    Row { k: 2, d: [2, 2, 0], z: None, p: Merged(0.500, 0.500), crit: 2.546, eff: 0.610, bold: false },
    Row { k: 2, d: [2, 1, 1], z: None, p: Three([0.375, 0.375, 0.250]), crit: 4.171, eff: 1.000, bold: true },
    Row { k: 3, d: [3, 3, 0], z: None, p: Merged(0.500, 0.500), crit: 2.546, eff: 0.593, bold: false },
    Row { k: 3, d: [3, 2, 1], z: None, p: Three([0.402, 0.348, 0.250]), crit: 4.154, eff: 0.967, bold: false },
    Row { k: 3, d: [2, 2, 2], z: None, p: Three([0.333, 0.333, 0.333]), crit: 4.297, eff: 1.000, bold: true },
    Row { k: 4, d: [4, 4, 0], z: None, p: Merged(0.500, 0.500), crit: 2.546, eff: 0.595, bold: false },
    Row { k: 4, d: [4, 3, 1], z: None, p: Three([0.417, 0.333, 0.250]), crit: 4.131, eff: 0.966, bold: false },
    Row { k: 4, d: [4, 2, 2], z: None, p: Three([0.375, 0.375, 0.250]), crit: 4.171, eff: 0.975, bold: false },
    Row { k: 4, d: [3, 3, 2], z: None, p: Three([0.366, 0.317, 0.317]), crit: 4.278, eff: 1.000, bold: true },
    Row { k: 5, d: [5, 5, 0], z: None, p: Merged(0.500, 0.500), crit: 2.546, eff: 0.595, bold: false },
    Row { k: 5, d: [5, 4, 1], z: None, p: Three([0.426, 0.324, 0.250]), crit: 4.111, eff: 0.960, bold: false },
    Row { k: 5, d: [5, 3, 2], z: None, p: Three([0.391, 0.359, 0.250]), crit: 4.165, eff: 0.973, bold: false },
    Row { k: 5, d: [4, 4, 2], z: None, p: Three([0.385, 0.308, 0.308]), crit: 4.249, eff: 0.992, bold: false },
    Row { k: 5, d: [4, 3, 3], z: None, p: Three([0.348, 0.348, 0.304]), crit: 4.282, eff: 1.000, bold: true },
    Row { k: 6, d: [6, 6, 0], z: None, p: Merged(0.500, 0.500), crit: 2.546, eff: 0.593, bold: false },
    Row { k: 6, d: [6, 5, 1], z: None, p: Three([0.433, 0.317, 0.250]), crit: 4.094, eff: 0.953, bold: false },
    Row { k: 6, d: [6, 4, 2], z: None, p: Three([0.402, 0.348, 0.250]), crit: 4.154, eff: 0.967, bold: false },
    Row { k: 6, d: [6, 3, 3], z: None, p: Three([0.375, 0.375, 0.250]), crit: 4.171, eff: 0.971, bold: false },
    Row { k: 6, d: [5, 5, 2], z: None, p: Three([0.398, 0.301, 0.301]), crit: 4.223, eff: 0.983, bold: false },
    Row { k: 6, d: [5, 4, 3], z: None, p: Three([0.367, 0.336, 0.297]), crit: 4.267, eff: 0.993, bold: false },
    Row { k: 6, d: [4, 4, 4], z: None, p: Three([0.333, 0.333, 0.333]), crit: 4.297, eff: 1.000, bold: true },
    Row { k: 7, d: [7, 7, 0], z: None, p: Merged(0.500, 0.500), crit: 2.546, eff: 0.594, bold: false },
    Row { k: 7, d: [7, 6, 1], z: None, p: Three([0.438, 0.312, 0.250]), crit: 4.079, eff: 0.951, bold: false },
    Row { k: 7, d: [7, 5, 2], z: None, p: Three([0.410, 0.340, 0.250]), crit: 4.143, eff: 0.966, bold: false },
    Row { k: 7, d: [7, 4, 3], z: None, p: Three([0.386, 0.364, 0.250]), crit: 4.168, eff: 0.972, bold: false },
    Row { k: 7, d: [6, 6, 2], z: None, p: Three([0.407, 0.297, 0.297]), crit: 4.201, eff: 0.979, bold: false },
    Row { k: 7, d: [6, 5, 3], z: None, p: Three([0.380, 0.328, 0.292]), crit: 4.249, eff: 0.990, bold: false },
    Row { k: 7, d: [6, 4, 4], z: None, p: Three([0.355, 0.355, 0.290]), crit: 4.263, eff: 0.994, bold: false },
    Row { k: 7, d: [5, 5, 4], z: None, p: Three([0.352, 0.324, 0.324]), crit: 4.291, eff: 1.000, bold: true },
];

/// Independent utilities with a quantitative attribute.
#[rustfmt::skip]
pub const TABLE3: [Row; 30] = [
    Row { k: 1, d: [1, 1, 0], z: Some([1.26, 0.00]), p: Three([0.827, 0.087, 0.087]), crit: 1.344, eff: 1.000, bold: true },
    Row { k: 2, d: [2, 2, 0], z: Some([1.07, 0.00]), p: Three([0.769, 0.116, 0.116]), crit: 1.609, eff: 1.000, bold: true },
    Row { k: 2, d: [2, 1, 1], z: Some([1.33, 0.55]), p: Three([0.741, 0.199, 0.060]), crit: 1.504, eff: 0.935, bold: false },
    Row { k: 3, d: [3, 3, 0], z: Some([0.96, 0.00]), p: Three([0.731, 0.134, 0.134]), crit: 1.801, eff: 1.000, bold: true },
    Row { k: 3, d: [3, 2, 1], z: Some([1.21, 0.55]), p: Three([0.698, 0.231, 0.071]), crit: 1.720, eff: 0.955, bold: false },
    Row { k: 3, d: [2, 2, 2], z: Some([0.88, 0.00]), p: Three([0.702, 0.149, 0.149]), crit: 1.547, eff: 0.859, bold: false },
    Row { k: 4, d: [4, 4, 0], z: Some([0.88, 0.00]), p: Three([0.702, 0.149, 0.149]), crit: 1.947, eff: 1.000, bold: true },
    Row { k: 4, d: [4, 3, 1], z: Some([1.12, 0.54]), p: Three([0.667, 0.252, 0.081]), crit: 1.881, eff: 0.966, bold: false },
    Row { k: 4, d: [4, 2, 2], z: Some([1.19, 0.75]), p: Three([0.632, 0.305, 0.063]), crit: 1.848, eff: 0.949, bold: false },
    Row { k: 4, d: [3, 3, 2], z: Some([0.82, 0.00]), p: Three([0.679, 0.161, 0.161]), crit: 1.740, eff: 0.894, bold: false },
    Row { k: 5, d: [5, 5, 0], z: Some([0.83, 0.00]), p: Three([0.681, 0.159, 0.159]), crit: 2.060, eff: 1.000, bold: true },
    Row { k: 5, d: [5, 4, 1], z: Some([1.06, 0.54]), p: Three([0.643, 0.269, 0.088]), crit: 2.006, eff: 0.973, bold: false },
    Row { k: 5, d: [5, 3, 2], z: Some([1.12, 0.75]), p: Three([0.603, 0.327, 0.069]), crit: 1.978, eff: 0.960, bold: false },
    Row { k: 5, d: [4, 4, 2], z: Some([0.77, 0.00]), p: Three([0.659, 0.170, 0.170]), crit: 1.886, eff: 0.915, bold: false },
    Row { k: 5, d: [4, 3, 3], z: Some([0.92, 0.39]), p: Three([0.628, 0.256, 0.116]), crit: 1.823, eff: 0.885, bold: false },
    Row { k: 6, d: [6, 6, 0], z: Some([0.78, 0.00]), p: Three([0.663, 0.168, 0.168]), crit: 2.152, eff: 1.000, bold: true },
    Row { k: 6, d: [6, 5, 1], z: Some([1.01, 0.53]), p: Three([0.626, 0.280, 0.094]), crit: 2.105, eff: 0.978, bold: false },
    Row { k: 6, d: [6, 4, 2], z: Some([1.07, 0.74]), p: Three([0.586, 0.340, 0.074]), crit: 2.081, eff: 0.967, bold: false },
    Row { k: 6, d: [6, 3, 3], z: Some([1.05, 0.93]), p: Three([0.514, 0.422, 0.064]), crit: 2.069, eff: 0.962, bold: false },
    Row { k: 6, d: [5, 5, 2], z: Some([0.73, 0.00]), p: Three([0.643, 0.178, 0.178]), crit: 2.001, eff: 0.930, bold: false },
    Row { k: 6, d: [5, 4, 3], z: Some([0.88, 0.38]), p: Three([0.614, 0.263, 0.122]), crit: 1.947, eff: 0.905, bold: false },
    Row { k: 6, d: [4, 4, 4], z: Some([0.67, 0.00]), p: Three([0.618, 0.191, 0.191]), crit: 1.857, eff: 0.863, bold: false },
    Row { k: 7, d: [7, 7, 0], z: Some([0.75, 0.00]), p: Three([0.651, 0.174, 0.174]), crit: 2.227, eff: 1.000, bold: true },
    Row { k: 7, d: [7, 6, 1], z: Some([0.97, 0.52]), p: Three([0.612, 0.288, 0.100]), crit: 2.185, eff: 0.981, bold: false },
    Row { k: 7, d: [7, 5, 2], z: Some([1.02, 0.72]), p: Three([0.572, 0.348, 0.080]), crit: 2.165, eff: 0.972, bold: false },
    Row { k: 7, d: [7, 4, 3], z: Some([1.02, 0.87]), p: Three([0.522, 0.408, 0.070]), crit: 2.154, eff: 0.967, bold: false },
    Row { k: 7, d: [6, 6, 2], z: Some([0.70, 0.00]), p: Three([0.631, 0.185, 0.185]), crit: 2.095, eff: 0.941, bold: false },
    Row { k: 7, d: [6, 5, 3], z: Some([0.85, 0.37]), p: Three([0.605, 0.268, 0.127]), crit: 2.047, eff: 0.919, bold: false },
    Row { k: 7, d: [6, 4, 4], z: Some([0.90, 0.62]), p: Three([0.553, 0.347, 0.100]), crit: 2.023, eff: 0.908, bold: false },
    Row { k: 7, d: [5, 5, 4], z: Some([0.65, 0.00]), p: Three([0.610, 0.195, 0.195]), crit: 1.968, eff: 0.884, bold: false },
];

/// Dependent utilities with a sharp quantitative attribute.
#[rustfmt::skip]
pub const TABLE4: [Row; 30] = [
    Row { k: 1, d: [1, 1, 0], z: Some([-1.14, 0.00]), p: Merged(0.127, 0.873), crit: 0.891, eff: 1.000, bold: true },
    Row { k: 2, d: [2, 2, 0], z: Some([-0.94, 0.00]), p: Merged(0.174, 0.826), crit: 1.109, eff: 0.540, bold: false },
    Row { k: 2, d: [2, 1, 1], z: Some([-0.72, 0.00]), p: Three([0.142, 0.142, 0.715]), crit: 2.054, eff: 1.000, bold: true },
    Row { k: 3, d: [3, 3, 0], z: Some([-0.82, 0.00]), p: Merged(0.206, 0.794), crit: 1.272, eff: 0.546, bold: false },
    Row { k: 3, d: [3, 2, 1], z: Some([-0.77, -0.49]), p: Three([0.159, 0.178, 0.663]), crit: 2.328, eff: 1.000, bold: true },
    Row { k: 3, d: [2, 2, 2], z: Some([-0.72, -0.72]), p: Three([0.149, 0.149, 0.702]), crit: 2.097, eff: 0.901, bold: false },
    Row { k: 4, d: [4, 4, 0], z: Some([-0.73, 0.00]), p: Merged(0.233, 0.767), crit: 1.398, eff: 0.551, bold: false },
    Row { k: 4, d: [4, 3, 1], z: Some([-0.78, -0.37]), p: Three([0.168, 0.203, 0.629]), crit: 2.537, eff: 1.000, bold: true },
    Row { k: 4, d: [4, 2, 2], z: Some([-0.58, -0.58]), p: Three([0.185, 0.185, 0.630]), crit: 2.536, eff: 1.000, bold: false },
    Row { k: 4, d: [3, 3, 2], z: Some([-0.74, -0.52]), p: Three([0.158, 0.185, 0.657]), crit: 2.364, eff: 0.932, bold: false },
    Row { k: 5, d: [5, 5, 0], z: Some([-0.67, 0.00]), p: Merged(0.251, 0.749), crit: 1.500, eff: 0.555, bold: false },
    Row { k: 5, d: [5, 4, 1], z: Some([-0.77, -0.29]), p: Three([0.178, 0.225, 0.597]), crit: 2.702, eff: 1.000, bold: true },
    Row { k: 5, d: [5, 3, 2], z: Some([-0.62, -0.46]), p: Three([0.189, 0.206, 0.604]), crit: 2.701, eff: 1.000, bold: false },
    Row { k: 5, d: [4, 4, 2], z: Some([-0.75, -0.39]), p: Three([0.162, 0.218, 0.620]), crit: 2.566, eff: 0.950, bold: false },
    Row { k: 5, d: [4, 3, 3], z: Some([-0.57, -0.58]), p: Three([0.188, 0.184, 0.628]), crit: 2.572, eff: 0.952, bold: false },
    Row { k: 6, d: [6, 6, 0], z: Some([-0.62, 0.00]), p: Merged(0.268, 0.732), crit: 1.583, eff: 0.558, bold: false },
    Row { k: 6, d: [6, 5, 1], z: Some([-0.77, -0.23]), p: Three([0.181, 0.247, 0.571]), crit: 2.837, eff: 1.000, bold: true },
    Row { k: 6, d: [6, 4, 2], z: Some([-0.63, -0.38]), p: Three([0.197, 0.222, 0.581]), crit: 2.835, eff: 0.999, bold: false },
    Row { k: 6, d: [6, 3, 3], z: Some([-0.51, -0.51]), p: Three([0.208, 0.208, 0.585]), crit: 2.835, eff: 0.999, bold: false },
    Row { k: 6, d: [5, 5, 2], z: Some([-0.75, -0.30]), p: Three([0.166, 0.245, 0.588]), crit: 2.727, eff: 0.961, bold: false },
    Row { k: 6, d: [5, 4, 3], z: Some([-0.60, -0.46]), p: Three([0.189, 0.210, 0.601]), crit: 2.733, eff: 0.963, bold: false },
    Row { k: 6, d: [4, 4, 4], z: Some([-0.55, -0.55]), p: Three([0.620, 0.190, 0.190]), crit: 2.629, eff: 0.927, bold: false },
    Row { k: 7, d: [7, 7, 0], z: Some([-0.58, 0.00]), p: Merged(0.281, 0.719), crit: 1.652, eff: 0.560, bold: false },
    Row { k: 7, d: [7, 6, 1], z: Some([-0.76, -0.19]), p: Three([0.187, 0.263, 0.550]), crit: 2.948, eff: 1.000, bold: true },
    Row { k: 7, d: [7, 5, 2], z: Some([-0.64, -0.32]), p: Three([0.200, 0.237, 0.563]), crit: 2.946, eff: 0.999, bold: false },
    Row { k: 7, d: [7, 4, 3], z: Some([-0.54, -0.43]), p: Three([0.209, 0.223, 0.568]), crit: 2.945, eff: 0.999, bold: false },
    Row { k: 7, d: [6, 6, 2], z: Some([-0.75, -0.23]), p: Three([0.168, 0.272, 0.559]), crit: 2.858, eff: 0.969, bold: false },
    Row { k: 7, d: [6, 5, 3], z: Some([-0.62, -0.38]), p: Three([0.190, 0.229, 0.581]), crit: 2.863, eff: 0.971, bold: false },
    Row { k: 7, d: [6, 4, 4], z: Some([-0.50, -0.50]), p: Three([0.208, 0.208, 0.583]), crit: 2.864, eff: 0.972, bold: false },
    Row { k: 7, d: [5, 5, 4], z: Some([-0.58, -0.44]), p: Three([0.187, 0.218, 0.595]), crit: 2.777, eff: 0.942, bold: false },
];
