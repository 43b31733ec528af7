use num_traits::Float;

/// Mean and standard error of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats<T> {
    pub count: usize,
    pub mean: T,
    /// Sample standard deviation over `sqrt(count)`; zero for fewer than
    /// two observations.
    pub std_error: T,
}

impl<T: Float> SampleStats<T> {
    pub fn from_samples<I>(samples: I) -> Option<Self>
    where
        I: IntoIterator<Item = T>,
    {
        let xs: Vec<T> = samples.into_iter().collect();
        let count = xs.len();
        if count == 0 {
            return None;
        }
        let k = T::from(count).unwrap();
        let mean = xs.iter().fold(T::zero(), |a, &x| a + x) / k;
        let std_error = if count < 2 {
            T::zero()
        } else {
            let ss = xs
                .iter()
                .fold(T::zero(), |a, &x| a + (x - mean) * (x - mean));
            (ss / (k - T::one())).sqrt() / k.sqrt()
        };
        Some(SampleStats {
            count,
            mean,
            std_error,
        })
    }

    /// `mean <= limit + sigmas * std_error`.
    pub fn mean_within(&self, limit: T, sigmas: T) -> bool {
        self.mean <= limit + sigmas * self.std_error
    }
}
