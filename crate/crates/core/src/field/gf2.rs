//! Polynomials over F_2 packed into machine words, used to pick and test
//! field moduli.

/// Degree of a packed F_2 polynomial; `None` for zero.
pub fn degree(p: u128) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(127 - p.leading_zeros())
    }
}

fn rem(mut a: u128, b: u128) -> u128 {
    let db = degree(b).expect("division by zero polynomial");
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

fn mulmod(a: u128, b: u128, modulus: u128) -> u128 {
    let dm = degree(modulus).unwrap();
    let mut acc = 0u128;
    let mut a = rem(a, modulus);
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> dm & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// x^(2^k) mod f.
fn frob_power_of_x(k: u32, f: u128) -> u128 {
    let mut h = rem(2, f);
    for _ in 0..k {
        h = mulmod(h, h, f);
    }
    h
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: u128) -> bool {
    let Some(n) = degree(f) else { return false };
    // moduli must have a nonzero constant term, which also rules out `x`
    if n == 0 || f & 1 == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if frob_power_of_x(n, f) != rem(2, f) {
        return false;
    }
    prime_factors(n).into_iter().all(|p| {
        let h = frob_power_of_x(n / p, f) ^ 2;
        degree(gcd(f, h)) == Some(0)
    })
}

/// The irreducible polynomial of degree `m` whose bit pattern, read as an
/// integer, is smallest.
pub fn smallest_irreducible(m: u32) -> u128 {
    assert!((1..=127).contains(&m));
    let top = 1u128 << m;
    (0..top)
        .map(|low| top | low)
        .find(|&f| is_irreducible(f))
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn factor_integer(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
