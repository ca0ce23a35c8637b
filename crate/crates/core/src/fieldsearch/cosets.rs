use crate::perm::Perm;

/// Number of partitions of the points into blocks of size `k` that `sigma`
/// maps to themselves, by exhaustive enumeration. Zero when `k` does not
/// divide the degree.
pub fn count_short_cosets(sigma: &Perm, k: usize) -> u64 {
    let n = sigma.degree();
    if k == 0 || n % k != 0 {
        return 0;
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    place(sigma, k, &mut label, 0, &mut count);
    count
}

fn place(sigma: &Perm, k: usize, label: &mut Vec<usize>, blocks: usize, count: &mut u64) {
    let Some(first) = label.iter().position(|&l| l == usize::MAX) else {
        if preserved(sigma, label, blocks) {
            *count += 1;
        }
        return;
    };
    label[first] = blocks;
    choose(sigma, k, label, blocks, first + 1, k - 1, count);
    label[first] = usize::MAX;
}

fn choose(sigma: &Perm, k: usize, label: &mut Vec<usize>, b: usize, from: usize, left: usize, count: &mut u64) {
    if left == 0 {
        place(sigma, k, label, b + 1, count);
        return;
    }
    for i in from..label.len() {
        if label[i] == usize::MAX {
            label[i] = b;
            choose(sigma, k, label, b, i + 1, left - 1, count);
            label[i] = usize::MAX;
        }
    }
}

fn preserved(sigma: &Perm, label: &[usize], blocks: usize) -> bool {
    let mut img = vec![usize::MAX; blocks];
    label.iter().enumerate().all(|(i, &b)| {
        let t = label[sigma.apply(i)];
        if img[b] == usize::MAX {
            img[b] = t;
        }
        img[b] == t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_short_cosets(&Perm::cycle(4), 2), 1);
        let s = Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(count_short_cosets(&s, 2), 3);
        assert_eq!(count_short_cosets(&Perm::identity(4), 2), 3);
        assert_eq!(count_short_cosets(&Perm::cycle(6), 2), 1);
        assert_eq!(count_short_cosets(&Perm::cycle(6), 3), 1);
        assert_eq!(count_short_cosets(&Perm::identity(6), 3), 10);
        assert_eq!(count_short_cosets(&Perm::cycle(5), 2), 0);
    }
}
