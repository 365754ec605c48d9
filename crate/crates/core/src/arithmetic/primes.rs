/// Primes `≤ limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

pub fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_agrees_with_trial_division() {
        let sieve = primes_up_to(1000);
        let trial: Vec<u64> = (0..=1000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, trial);
        assert_eq!(sieve.len(), 168);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn squarefree_and_primorials() {
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(0));
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
    }
}
