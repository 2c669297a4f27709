//! Exact rational gradings and their text form (`p` or `p/q`).

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn parse_q(s: &str) -> Result<Q, String> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    if t.is_empty() {
        return Err("empty rational".into());
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: i64 = num.parse().map_err(|_| format!("bad rational `{s}`"))?;
    let d: i64 = den.parse().map_err(|_| format!("bad rational `{s}`"))?;
    if d == 0 {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Integer value of `x`, if it is one.
pub fn as_int(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer())
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    *x - Q::from_integer(x.floor().to_integer())
}

/// Whether `a - b` is an even integer.
pub fn same_coset2(a: &Q, b: &Q) -> bool {
    as_int(&(*a - *b)).is_some_and(|k| k.is_even())
}

pub fn is_even_int(x: &Q) -> bool {
    as_int(x).is_some_and(|k| k.is_even())
}

pub fn abs(x: &Q) -> Q {
    if x.is_negative() {
        -*x
    } else if x.is_zero() {
        Q::zero()
    } else {
        *x
    }
}

pub(crate) mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_q_vec {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(fmt_q).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
