use super::dword::DoubleWord;

/// Running sum kept in double-word precision.
///
/// The error of the rounded result is within one ulp of the exact sum for any
/// practical number of terms, so alternating series with heavy cancellation
/// lose accuracy only through the terms themselves.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    acc: DoubleWord,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        self.acc = self.acc.add_f64(x);
    }

    #[inline]
    pub fn add_dw(&mut self, x: DoubleWord) {
        self.acc += x;
    }

    pub fn value(&self) -> f64 {
        self.acc.to_f64()
    }

    pub fn value_dw(&self) -> DoubleWord {
        self.acc
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Sums `terms` with a double-word accumulator.
pub fn compensated_sum<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut s = CompensatedSum::new();
    s.extend(terms);
    s.value()
}
