use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Exact coefficient fields. Everything above the polynomial layer relies on
/// exact zero tests, so floating point types deliberately do not implement
/// this trait.
pub trait Field: Num + Signed + Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Hash + From<i64> + Display + Debug + Send + Sync + 'static,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from(n))
    }
}

pub fn factorial<C: Field>(n: usize) -> C {
    let mut acc = C::one();
    for k in 2..=n {
        acc = acc * C::from_i64(k as i64);
    }
    acc
}

/// (-1)^k as a field element.
pub fn sign<C: Field>(odd: bool) -> C {
    if odd {
        -C::one()
    } else {
        C::one()
    }
}
