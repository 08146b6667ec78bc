//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use num_integer::Integer;

fn prod(terms: impl Iterator<Item = u128>) -> u128 {
    terms.product()
}

/// Classical order formulas, evaluated directly from (n, q).
pub fn classical_order(family: &str, n: u32, q: u128) -> u128 {
    let qn = |e: u32| q.pow(e);
    let gl = qn(n * (n - 1) / 2) * prod((1..=n).map(|i| qn(i) - 1));
    match family {
        "GL" => gl,
        "SL" | "PGL" => gl / (q - 1),
        "PSL" => gl / (q - 1) / (n as u128).gcd(&(q - 1)),
        "SU" | "PSU" => {
            let su = qn(n * (n - 1) / 2)
                * prod((2..=n).map(|i| if i % 2 == 0 { qn(i) - 1 } else { qn(i) + 1 }));
            if family == "SU" {
                su
            } else {
                su / (n as u128).gcd(&(q + 1))
            }
        }
        "Sp" | "PSp" => {
            let m = n / 2;
            let sp = qn(m * m) * prod((1..=m).map(|i| qn(2 * i) - 1));
            if family == "Sp" {
                sp
            } else {
                sp / 2u128.gcd(&(q - 1))
            }
        }
        "OmegaPlus" | "OmegaMinus" => {
            let m = n / 2;
            let sign_term = if family == "OmegaPlus" { qn(m) - 1 } else { qn(m) + 1 };
            qn(m * (m - 1)) * sign_term * prod((1..m).map(|i| qn(2 * i) - 1)) / 2u128.gcd(&(q - 1))
        }
        "Omega" => {
            let m = (n - 1) / 2;
            qn(m * m) * prod((1..=m).map(|i| qn(2 * i) - 1)) / 2
        }
        other => panic!("no formula for {other}"),
    }
}
