//! Reference dataset: ten paired observations with a strong positive,
//! not quite linear, association. Used throughout the tests and handy for
//! trying out the CLI.

use crate::sample::BivariateSample;

pub const TABLE1_X: [f64; 10] = [6.0, 7.0, 12.0, 14.0, 23.0, 41.0, 53.0, 60.0, 69.0, 72.0];
pub const TABLE1_Y: [f64; 10] = [2.5, 1.1, 6.3, 2.1, 2.9, 15.3, 20.7, 18.4, 22.0, 33.0];

pub fn table1() -> BivariateSample {
    BivariateSample::new(TABLE1_X.to_vec(), TABLE1_Y.to_vec()).expect("reference data is valid")
}
