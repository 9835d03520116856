//! Exact Bernoulli numbers and the float coefficient tables derived from them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Largest `n_max` accepted by [`bernoulli_numbers`] (up to `B_{2·cap}`).
pub const BERNOULLI_CAP: usize = 1000;

/// Exact `B_0 ..= B_{2·n_max}` with the `B_1 = -1/2` convention.
pub fn bernoulli_numbers(n_max: usize) -> Result<Vec<Rational>> {
    if n_max > BERNOULLI_CAP {
        return Err(Error::CapExceeded {
            requested: n_max,
            cap: BERNOULLI_CAP,
        });
    }
    let even = even_bernoulli(n_max);
    let mut out = Vec::with_capacity(2 * n_max + 1);
    for n in 0..=2 * n_max {
        let b = match n {
            0 => Rational::from(1),
            1 => Rational::from((-1, 2)),
            _ if n % 2 == 1 => Rational::new(),
            _ => even[n / 2].clone(),
        };
        out.push(b);
    }
    Ok(out)
}

/// `B_0, B_2, …, B_{2·n_max}`, extended on demand and cached process-wide.
fn even_bernoulli(n_max: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut guard = cache.lock().expect("bernoulli cache poisoned");
    if guard.len() <= n_max {
        // regenerate: the tangent-number table is O(n²) integer work either way
        let target = (n_max + 1).max(2 * guard.len());
        *guard = tangent_bernoulli(target.min(BERNOULLI_CAP + 1));
    }
    guard[..=n_max].to_vec()
}

/// Even Bernoulli numbers from tangent numbers:
/// `B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))`, where `T_k` are generated by
/// the integer recurrence of Brent and Harvey.
fn tangent_bernoulli(count: usize) -> Vec<Rational> {
    let n = count.saturating_sub(1);
    let mut out = Vec::with_capacity(count);
    out.push(Rational::from(1));
    if n == 0 {
        return out;
    }
    // t[k] = (k-1)!, then in-place sweeps
    let mut t = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u32 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u32);
            let b = Integer::from(&t[j] * (j - k + 2) as u32);
            t[j] = a + b;
        }
    }
    for (k, tk) in t.iter().enumerate().skip(1) {
        let four_k = Integer::from(1) << (2 * k) as u32;
        let den = &four_k * Integer::from(&four_k - 1u32);
        let mut num = Integer::from(tk * (2 * k) as u32);
        if k % 2 == 0 {
            num = -num;
        }
        out.push(Rational::from((num, den)));
    }
    out
}

type FloatTable = Arc<Vec<Float>>;

fn float_table(
    cache: &'static OnceLock<Mutex<HashMap<u32, FloatTable>>>,
    prec: u32,
    len: usize,
    make: impl Fn(usize, &Rational) -> Rational,
) -> Result<FloatTable> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = map.lock().expect("coefficient cache poisoned");
        if let Some(t) = guard.get(&prec) {
            if t.len() >= len {
                return Ok(t.clone());
            }
        }
    }
    let want = len.max(16).next_power_of_two().min(BERNOULLI_CAP.max(len));
    if want > BERNOULLI_CAP {
        return Err(Error::CapExceeded {
            requested: want,
            cap: BERNOULLI_CAP,
        });
    }
    let even = even_bernoulli(want);
    let table: Vec<Float> = (0..=want)
        .map(|k| {
            Float::with_val(
                prec,
                if k == 0 {
                    Rational::new()
                } else {
                    make(k, &even[k])
                },
            )
        })
        .collect();
    let table = Arc::new(table);
    map.lock()
        .expect("coefficient cache poisoned")
        .insert(prec, table.clone());
    Ok(table)
}

/// `c[k] = B_{2k} / (2k)!` for `k = 1..len` (index 0 unused), at `prec` bits.
pub(crate) fn em_coefficients(prec: u32, len: usize) -> Result<FloatTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, FloatTable>>> = OnceLock::new();
    float_table(&CACHE, prec, len, |k, b| {
        let fact = Integer::from(Integer::factorial(2 * k as u32));
        Rational::from(b / fact)
    })
}

/// `c[k] = B_{2k} / (2k (2k-1))` for `k = 1..len`, the Stirling series weights.
pub(crate) fn stirling_coefficients(prec: u32, len: usize) -> Result<FloatTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, FloatTable>>> = OnceLock::new();
    float_table(&CACHE, prec, len, |k, b| {
        let k = k as u32;
        Rational::from(b / (Integer::from(2 * k) * (2 * k - 1)))
    })
}
