//! Subset helpers on `u32` bitmasks. Vertex `i` (1-based in text) is bit `i - 1`.

pub type Mask = u32;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 32;

pub fn full(m: usize) -> Mask {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

#[inline]
pub fn size(s: Mask) -> usize {
    s.count_ones() as usize
}

/// Bit positions of `s`, ascending.
pub fn elements(s: Mask) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(b)
        }
    })
}

/// All submasks of `s`, in decreasing numeric order, ending with 0.
pub fn submasks(s: Mask) -> impl Iterator<Item = Mask> {
    let mut cur = Some(s);
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 { None } else { Some((c - 1) & s) };
        Some(c)
    })
}

/// Number of elements of `s` strictly below bit `k`.
#[inline]
pub fn rank_below(s: Mask, k: usize) -> usize {
    if k >= 32 {
        size(s)
    } else {
        size(s & ((1u32 << k) - 1))
    }
}

/// Elements of `s` strictly above bit `k`.
#[inline]
pub fn above(s: Mask, k: usize) -> Mask {
    if k >= 31 {
        0
    } else {
        s & !((1u32 << (k + 1)) - 1)
    }
}

/// Sign of the permutation sorting the concatenation of the ascending lists `a` and `b`:
/// (-1)^{#{(x,y) : x in a, y in b, x > y}}. Zero overlap is assumed by callers.
pub fn shuffle_sign(a: Mask, b: Mask) -> i64 {
    let mut inv = 0usize;
    for y in elements(b) {
        inv += size(above(a, y));
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Text form of a subset with 1-based vertices, e.g. `{1,3}`.
pub fn show(s: Mask) -> String {
    let items: Vec<String> = elements(s).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn from_vertices(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |acc, &v| acc | (1 << (v - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sign(a: Mask, b: Mask) -> i64 {
        let mut seq: Vec<usize> = elements(a).chain(elements(b)).collect();
        let mut sign = 1;
        for i in 0..seq.len() {
            for j in 0..seq.len() - 1 - i {
                if seq[j] > seq[j + 1] {
                    seq.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        sign
    }

    #[test]
    fn shuffle_sign_matches_bubble_sort() {
        for a in 0..64u32 {
            for b in 0..64u32 {
                if a & b == 0 {
                    assert_eq!(shuffle_sign(a, b), brute_sign(a, b), "{a} {b}");
                }
            }
        }
        assert_eq!(shuffle_sign(from_vertices(&[1, 3]), from_vertices(&[2])), -1);
    }

    #[test]
    fn submask_enumeration_is_complete() {
        let s = 0b1011;
        let mut v: Vec<Mask> = submasks(s).collect();
        v.sort();
        assert_eq!(v, vec![0, 1, 2, 3, 8, 9, 10, 11]);
    }
}
