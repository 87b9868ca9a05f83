use super::sieve::SieveTable;
use crate::error::{Error, Result};
use crate::region::{ConvexRegion, RegionKind};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt;
use std::sync::Arc;

type RuleFn = Arc<dyn Fn(u64, u32) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum Rule {
    One,
    Moebius,
    Liouville,
    NtPower(f64),
    Character { modulus: u64, table: Vec<Complex64> },
    Random { points: Vec<Complex64>, rng: ChaCha8Rng },
    MinusOneAbove(u64),
    Wintner,
    Custom(RuleFn),
}

/// A multiplicative f with |f| ≤ 1, given by its values on prime powers.
#[derive(Clone)]
pub struct MultiplicativeSpec {
    rule: Rule,
    complete: bool,
    source: Value,
}

impl fmt::Debug for MultiplicativeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiplicativeSpec({})", self.source)
    }
}

impl MultiplicativeSpec {
    fn preset(rule: Rule, complete: bool, source: Value) -> Self {
        MultiplicativeSpec { rule, complete, source }
    }

    pub fn one() -> Self {
        Self::preset(Rule::One, true, json!({"preset": "one"}))
    }

    pub fn moebius() -> Self {
        Self::preset(Rule::Moebius, false, json!({"preset": "moebius"}))
    }

    pub fn liouville() -> Self {
        Self::preset(Rule::Liouville, true, json!({"preset": "liouville"}))
    }

    /// f(pᵏ) = p^{ikα}.
    pub fn nt_power(alpha: f64) -> Self {
        Self::preset(Rule::NtPower(alpha), true, json!({"preset": "nt_power", "alpha": alpha}))
    }

    /// Completely multiplicative with f(p) = table[p mod q].
    pub fn character(modulus: u64, table: Vec<Complex64>) -> Result<Self> {
        if modulus == 0 || table.len() as u64 != modulus {
            return Err(Error::Invalid("character table needs one value per residue".into()));
        }
        check_values(&table)?;
        let source = json!({"preset": "character", "modulus": modulus,
            "values": table.iter().map(|v| [v.re, v.im]).collect::<Vec<_>>()});
        Ok(Self::preset(Rule::Character { modulus, table }, true, source))
    }

    /// Completely multiplicative with f(p) drawn independently from the sample points of `region`.
    pub fn random_in_region(region: &ConvexRegion, seed: u64) -> Self {
        let source = json!({"preset": "random_in_region",
            "region": serde_json::from_str::<Value>(&region.to_json()).unwrap(), "seed": seed});
        Self::preset(
            Rule::Random { points: region.sample_points(), rng: ChaCha8Rng::seed_from_u64(seed) },
            true,
            source,
        )
    }

    /// Completely multiplicative, f(p) = 1 for p ≤ y and −1 above.
    pub fn minus_one_above(y: u64) -> Self {
        Self::preset(Rule::MinusOneAbove(y), true, json!({"preset": "minus_one_above", "y": y}))
    }

    /// Completely multiplicative with f(p) = 1 − 1/p.
    pub fn wintner() -> Self {
        Self::preset(Rule::Wintner, true, json!({"preset": "wintner"}))
    }

    /// Arbitrary rule (p, k) ↦ f(pᵏ). When `complete`, only k = 1 is consulted.
    pub fn custom<F>(rule: F, complete: bool, label: &str) -> Self
    where
        F: Fn(u64, u32) -> Complex64 + Send + Sync + 'static,
    {
        Self::preset(Rule::Custom(Arc::new(rule)), complete, json!({"custom": label}))
    }

    /// g with g(p) = 1 for p ≤ y and g(p) = f(p) above, completely multiplicative.
    pub fn trivial_below(&self, y: u64) -> Self {
        let base = self.clone();
        let label = json!({"trivial_below": y, "base": self.source});
        let mut g = Self::custom(move |p, _| if p <= y { Complex64::new(1.0, 0.0) } else { base.at_prime_power(p, 1) }, true, "");
        g.source = label;
        g
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn to_json(&self) -> Value {
        self.source.clone()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(&serde_json::from_str(text)?)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let preset = v
            .get("preset")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Invalid("f spec needs a \"preset\"".into()))?;
        let num = |key: &str| {
            v.get(key)
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Invalid(format!("preset {preset} needs numeric \"{key}\"")))
        };
        let int = |key: &str| {
            v.get(key)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Invalid(format!("preset {preset} needs integer \"{key}\"")))
        };
        Ok(match preset {
            "one" => Self::one(),
            "moebius" => Self::moebius(),
            "liouville" => Self::liouville(),
            "nt_power" => Self::nt_power(num("alpha")?),
            "character" => {
                let table: Vec<[f64; 2]> = serde_json::from_value(v.get("values").cloned().unwrap_or(Value::Null))?;
                Self::character(int("modulus")?, table.iter().map(|a| Complex64::new(a[0], a[1])).collect())?
            }
            "random_in_region" => {
                let kind: RegionKind = serde_json::from_value(
                    v.get("region").cloned().ok_or_else(|| Error::Invalid("random_in_region needs region".into()))?,
                )?;
                Self::random_in_region(&ConvexRegion::new(kind)?, int("seed")?)
            }
            "minus_one_above" => Self::minus_one_above(int("y")?),
            "wintner" => Self::wintner(),
            other => return Err(Error::Invalid(format!("unknown f preset {other:?}"))),
        })
    }

    fn at_prime(&self, p: u64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match &self.rule {
            Rule::One => one,
            Rule::Moebius | Rule::Liouville => -one,
            Rule::NtPower(a) => Complex64::from_polar(1.0, a * (p as f64).ln()),
            Rule::Character { modulus, table } => table[(p % modulus) as usize],
            Rule::Random { points, rng } => {
                let mut r = rng.clone();
                r.set_word_pos(2 * p as u128);
                points[r.gen_range(0..points.len())]
            }
            Rule::MinusOneAbove(y) => {
                if p <= *y {
                    one
                } else {
                    -one
                }
            }
            Rule::Wintner => Complex64::new(1.0 - 1.0 / p as f64, 0.0),
            Rule::Custom(f) => f(p, 1),
        }
    }

    /// f(pᵏ) for prime p and k ≥ 1.
    pub fn at_prime_power(&self, p: u64, k: u32) -> Complex64 {
        if k == 0 {
            return Complex64::new(1.0, 0.0);
        }
        if self.complete {
            return self.at_prime(p).powu(k);
        }
        match &self.rule {
            Rule::Moebius => {
                if k == 1 {
                    -Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Rule::Custom(f) => f(p, k),
            _ => self.at_prime(p).powu(k),
        }
    }

    /// f(n) from the factorisation of n.
    pub fn eval(&self, sieve: &SieveTable, n: u64) -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        let mut m = n;
        while m > 1 {
            let p = sieve.spf(m) as u64;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            v *= self.at_prime_power(p, k);
        }
        v
    }
}

fn check_values(v: &[Complex64]) -> Result<()> {
    if v.iter().any(|z| !(z.norm() <= 1.0 + 1e-12)) {
        return Err(Error::Invalid("values of f must lie in the closed unit disc".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_sieve;

    #[test]
    fn presets_small_values() {
        let s = build_sieve(100).unwrap();
        let mu: Vec<f64> = (1..=10).map(|n| MultiplicativeSpec::moebius().eval(&s, n).re).collect();
        assert_eq!(mu, vec![1.0, -1.0, -1.0, 0.0, -1.0, 1.0, -1.0, 0.0, 0.0, 1.0]);
        let la: Vec<f64> = (1..=10).map(|n| MultiplicativeSpec::liouville().eval(&s, n).re).collect();
        assert_eq!(la, vec![1.0, -1.0, -1.0, 1.0, -1.0, 1.0, -1.0, -1.0, 1.0, 1.0]);
        let nt = MultiplicativeSpec::nt_power(2.0).eval(&s, 12);
        assert!((nt - Complex64::from_polar(1.0, 2.0 * 12f64.ln())).norm() < 1e-14);
    }

    #[test]
    fn random_preset_is_reproducible_and_in_region() {
        let r = ConvexRegion::disc(0.5).unwrap();
        let a = MultiplicativeSpec::random_in_region(&r, 42);
        let b = MultiplicativeSpec::from_value(&a.to_json()).unwrap();
        for p in [2u64, 3, 5, 7, 97, 9973] {
            assert_eq!(a.at_prime_power(p, 1), b.at_prime_power(p, 1));
            assert!(r.contains(a.at_prime_power(p, 1), 1e-12));
        }
        let c = MultiplicativeSpec::random_in_region(&r, 43);
        assert!((2..200u64).any(|p| a.at_prime_power(p, 1) != c.at_prime_power(p, 1)));
    }

    #[test]
    fn json_round_trip() {
        for text in [
            r#"{"preset":"liouville"}"#,
            r#"{"preset":"nt_power","alpha":2.0}"#,
            r#"{"preset":"random_in_region","region":{"kind":"disc","r":0.7},"seed":42}"#,
            r#"{"preset":"character","modulus":3,"values":[[0,0],[1,0],[-1,0]]}"#,
        ] {
            let f = MultiplicativeSpec::from_json(text).unwrap();
            let g = MultiplicativeSpec::from_value(&f.to_json()).unwrap();
            assert_eq!(f.at_prime_power(7, 2), g.at_prime_power(7, 2));
        }
        assert!(MultiplicativeSpec::from_json(r#"{"preset":"zeta"}"#).is_err());
    }
}
