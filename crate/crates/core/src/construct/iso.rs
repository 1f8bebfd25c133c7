use serde::{Deserialize, Serialize};

use crate::brace::{permute_table, FiniteBrace};
use crate::canon::Algebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub isomorphic: bool,
    /// `forward[x]` is the image in the second brace of element `x` of the first.
    pub forward: Option<Vec<usize>>,
}

/// Searches bijections fixing 0 by extending images of a minimal generating
/// tuple, restricted to targets with the same additive and multiplicative
/// orders; any map found is re-verified against both tables.
pub fn is_isomorphic(b1: &FiniteBrace, b2: &FiniteBrace) -> IsoCertificate {
    let no = IsoCertificate {
        isomorphic: false,
        forward: None,
    };
    if b1.order() != b2.order() {
        return no;
    }
    let t1 = b1.flat_tables();
    let t2 = b2.flat_tables();
    let a1 = Algebra {
        n: b1.order(),
        tables: &t1,
    };
    let a2 = Algebra {
        n: b2.order(),
        tables: &t2,
    };
    let Some(f) = a1.homomorphic_bijections(&a2, true).into_iter().next() else {
        return no;
    };
    let n = b1.order();
    let ok = (0..n).all(|x| {
        (0..n)
            .all(|y| f[b1.add(x, y)] == b2.add(f[x], f[y]) && f[b1.mul(x, y)] == b2.mul(f[x], f[y]))
    });
    if ok {
        IsoCertificate {
            isomorphic: true,
            forward: Some(f),
        }
    } else {
        no
    }
}

/// Canonical tables (an isomorphism invariant) together with the brace
/// relabelled into that canonical form.
pub(crate) fn canonical_key(b: &FiniteBrace) -> (Vec<u8>, FiniteBrace) {
    let t = b.flat_tables();
    let alg = Algebra {
        n: b.order(),
        tables: &t,
    };
    let (key, list) = alg.canonical_form();
    let n = b.order();
    // list[new] = old; the relabelling sends old ↦ new
    let mut perm = vec![0usize; n];
    for (new, &old) in list.iter().enumerate() {
        perm[old] = new;
    }
    let add = permute_table(n, t[0], &perm);
    let mul = permute_table(n, t[1], &perm);
    let c = FiniteBrace::from_flat_unchecked(n, add, mul, b.name().map(str::to_string));
    (key, c)
}

/// The brace relabelled into its canonical form: isomorphic braces give
/// identical tables.
pub fn canonical_form(b: &FiniteBrace) -> FiniteBrace {
    canonical_key(b).1
}
