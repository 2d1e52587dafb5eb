//! Worked examples shared by the unit tests (0-based indices).

use crate::data::DataMatrix;
use crate::pcm::Ipcm;

pub fn consistent_counts() -> DataMatrix {
    data(&[
        (0, 1, 1.0, 2.0),
        (0, 2, 1.0, 2.0),
        (0, 3, 1.0, 1.0),
        (1, 2, 1.0, 1.0),
        (1, 3, 2.0, 1.0),
        (2, 3, 2.0, 1.0),
    ])
}

pub fn modified_probabilities() -> DataMatrix {
    data(&[
        (0, 1, 0.562, 0.438),
        (0, 2, 0.679, 0.321),
        (0, 3, 0.852, 0.148),
        (1, 2, 0.622, 0.378),
        (1, 3, 0.818, 0.182),
        (2, 3, 0.531, 0.469),
    ])
}

pub fn modified_probabilities_incomplete() -> DataMatrix {
    data(&[
        (0, 1, 0.562, 0.438),
        (0, 2, 0.679, 0.321),
        (0, 3, 0.852, 0.148),
        (2, 3, 0.531, 0.469),
    ])
}

/// Printed three-decimal matrix of the modified example.
pub fn complete_pcm() -> Ipcm {
    pcm(&[
        (0, 1, 0.779),
        (0, 2, 0.472),
        (0, 3, 0.174),
        (1, 2, 0.607),
        (1, 3, 0.223),
        (2, 3, 0.883),
    ])
}

pub fn incomplete_pcm() -> Ipcm {
    pcm(&[(0, 1, 0.779), (0, 2, 0.472), (0, 3, 0.174), (2, 3, 0.883)])
}

fn data(rows: &[(usize, usize, f64, f64)]) -> DataMatrix {
    let mut d = DataMatrix::new(4);
    for &(i, j, w, b) in rows {
        d.insert(i, j, w, b).unwrap();
    }
    d
}

fn pcm(cells: &[(usize, usize, f64)]) -> Ipcm {
    let mut a = Ipcm::new(4);
    for &(i, j, v) in cells {
        a.set(i, j, v).unwrap();
    }
    a
}
