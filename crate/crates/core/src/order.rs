use std::cmp::Ordering;

/// Monomial orders on exponent vectors; variable 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Two degrevlex blocks: variables `0..k` and `k..n`. Any monomial involving the
    /// first block is larger than every monomial in the second block alone.
    Block(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                match degrevlex(&a[..k], &b[..k]) {
                    Ordering::Equal => degrevlex(&a[k..], &b[k..]),
                    o => o,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        // x*z^0 vs y^2 in (x, y, z): degree decides
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 2, 0]), Ordering::Less);
        // x*z vs y^2: smaller power of last variable wins
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 1, 0], &[0, 0, 1]), Ordering::Greater);
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::DegRevLex),
            (0usize..4).prop_map(MonomialOrder::Block),
        ]
    }

    proptest! {
        #[test]
        fn compatible_with_multiplication(
            o in arb_order(),
            a in prop::collection::vec(0u32..5, 3),
            b in prop::collection::vec(0u32..5, 3),
            c in prop::collection::vec(0u32..5, 3),
        ) {
            let ac: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let bc: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&ac, &bc));
            prop_assert_ne!(o.cmp(&ac, &a), Ordering::Less);
        }
    }
}
