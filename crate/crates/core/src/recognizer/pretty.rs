use std::collections::BTreeSet;

use super::ProductForm;

/// Smallest period `m ≤ n/2` with `k ∈ set ⇔ ((k−1) mod m) + 1 ∈ set` on `1..=n`.
fn period(set: &BTreeSet<usize>, n: usize) -> Option<usize> {
    (1..=n / 2).find(|&m| {
        set.iter().any(|&k| k <= m) && (1..=n).all(|k| set.contains(&k) == set.contains(&((k - 1) % m + 1)))
    })
}

fn power(e: i64) -> String {
    if e == 1 {
        String::new()
    } else {
        format!("^{e}")
    }
}

/// Pochhammer-style rendering: every arithmetic progression of equal
/// exponents becomes one `(q^a, q^b; q^m)_inf^e` group, anything without a
/// visible period is listed factor by factor.
pub fn pretty(form: &ProductForm) -> String {
    let n = form.max_order;
    let mut groups = Vec::new();
    let comps: [(&str, fn(&super::Triple) -> i64); 3] =
        [("", |t| t.one), ("w", |t| t.omega), ("wb", |t| t.omega_bar)];
    for (prefix, get) in comps {
        let mut values: Vec<i64> = Vec::new();
        for (_, t) in form.entries() {
            let e = get(&t);
            if e != 0 && !values.contains(&e) {
                values.push(e);
            }
        }
        for e in values {
            let set: BTreeSet<usize> = form.entries().filter(|(_, t)| get(t) == e).map(|(k, _)| k).collect();
            match period(&set, n) {
                Some(m) => {
                    let heads: Vec<String> =
                        set.iter().take_while(|&&k| k <= m).map(|k| format!("{prefix}q^{k}")).collect();
                    groups.push(format!("({}; q^{m})_inf{}", heads.join(", "), power(e)));
                }
                None => {
                    for k in set {
                        groups.push(format!("(1 - {prefix}q^{k}){}", power(e)));
                    }
                }
            }
        }
    }
    if groups.is_empty() {
        "1".to_string()
    } else {
        groups.join(" ")
    }
}
