"""Independent derivation of the constants frozen into the C++ tests.

Everything here is brute force over explicit strings or direct formula
evaluation with mpmath at 40 digits; nothing imports the C++ library.
Run: python3 tests/oracles/derive_values.py
"""

from fractions import Fraction
from itertools import product
from math import comb, factorial

from mpmath import mp, mpf, log, sqrt, exp

mp.dps = 40


def theorem(n, k, m):
    alpha = sqrt(mpf(2 * k) / sqrt(n) * ((1 + 2 * k) / sqrt(n) + 1))
    delta = alpha * log(mpf(m) ** k / alpha)
    tail = k * exp(-mpf(n) / k * delta) * (mpf(n) / k + 1) ** (2 * m**k) * log(n)
    return alpha, delta, 2 * delta + tail


def to_mpf(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def kl(p, q):
    return sum(to_mpf(pi) * log(to_mpf(pi) / to_mpf(qi)) for pi, qi in zip(p, q) if pi > 0)


def entropy(p):
    return -sum(to_mpf(x) * log(to_mpf(x)) for x in p if x > 0)


def cond_block_law(counts, k):
    """Law of the first k symbols of a uniformly random arrangement, by
    enumerating every arrangement of the multiset (small n only)."""
    n = sum(counts)
    m = len(counts)
    seq = [a for a in range(m) for _ in range(counts[a])]
    from itertools import permutations

    tally = {}
    total = 0
    for perm in set(permutations(seq)):
        key = perm[:k]
        tally[key] = tally.get(key, 0) + 1
        total += 1
    return [Fraction(tally.get(s, 0), total) for s in product(range(m), repeat=k)]


def hypergeom_block_law(counts, k):
    n = sum(counts)
    out = []
    for s in product(range(len(counts)), repeat=k):
        used = [0] * len(counts)
        p = Fraction(1)
        for i, a in enumerate(s):
            p *= Fraction(max(counts[a] - used[a], 0), n - i)
            used[a] += 1
        out.append(p)
    return out


def conditional_mean_bruteforce(counts, k):
    """E[D(type of l uniform blocks || Q^k) | average marginal = Q] by listing
    every sequence of l blocks."""
    m = len(counts)
    n = sum(counts)
    l = n // k
    blocks = list(product(range(m), repeat=k))
    q = [Fraction(c, n) for c in counts]
    qk = []
    for b in blocks:
        p = Fraction(1)
        for a in b:
            p *= q[a]
        qk.append(p)
    num = mpf(0)
    den = 0
    for seq in product(range(len(blocks)), repeat=l):
        sym = [0] * m
        for bi in seq:
            for a in blocks[bi]:
                sym[a] += 1
        if sym != list(counts):
            continue
        w = [Fraction(seq.count(i), l) for i in range(len(blocks))]
        num += kl(w, qk)
        den += 1
    return num / den, den


if __name__ == "__main__":
    for n, k, m in [(100, 1, 2), (800, 2, 2), (802, 2, 2)]:
        a, d, e = theorem(n, k, m)
        print(f"theorem({n},{k},{m}): alpha={mp.nstr(a, 15)} delta={mp.nstr(d, 15)} eps={mp.nstr(e, 15)}")
    print("H(3/4,1/4) =", mp.nstr(entropy([0.75, 0.25]), 15))
    print("pinsker gap (3/4,1/4)||(1/2,1/2) =", mp.nstr(kl([0.75, 0.25], [0.5, 0.5]) - mpf(1) / 8, 15))
    print("pinsker gap (1,0)||(1/2,1/2) =", mp.nstr(log(2) - mpf(1) / 2, 15))
    for l, k in [(100, 2), (400, 2), (10**6, 2)]:
        print(f"M({l},{k}) =", mp.nstr(sqrt(mpf(2) / l + mpf(4 * k) / l + 2 * sqrt(mpf(k) / l)), 15))
    print("continuity(1/4,4) =", mp.nstr(-mpf(1) / 4 * log(mpf(1) / 16), 15))
    print("continuity(0.4,2) =", mp.nstr(-mpf("0.4") * log(mpf("0.2")), 15))
    print("binary ref (800,2) =", mp.nstr(20 * log(800) / 798, 15))
    print("binary ref (100,1) =", mp.nstr(5 * log(100) / 99, 15))

    # Gibbs: conditional law of two draws without replacement from (n/2, n/2).
    for counts in [(2, 2), (8, 8), (32, 32), (128, 128), (200, 200)]:
        law = hypergeom_block_law(list(counts), 2)
        print(f"gibbs (1/2,1/2) n={sum(counts)}: D =", mp.nstr(kl(law, [Fraction(1, 4)] * 4), 15))
    assert cond_block_law([2, 2], 2) == hypergeom_block_law([2, 2], 2)
    for counts in [(4, 2), (16, 8), (64, 32), (256, 128)]:
        n = sum(counts)
        target = [Fraction(2, 3), Fraction(1, 3)]
        qk = [a * b for a in target for b in target]
        law = hypergeom_block_law(list(counts), 2)
        print(f"gibbs (2/3,1/3) n={n}: D =", mp.nstr(kl(law, qk), 15))

    # Conditional mean divergence, m=2, k=2, l=2, Q=(2,2).
    value, count = conditional_mean_bruteforce([2, 2], 2)
    print("conditional mean (2,2),k=2:", mp.nstr(value, 15), "over", count, "block sequences")

    # Convexity chain for the fair-coin law at n=4, k=2.
    n, k = 4, 2
    types = [(c, n - c) for c in range(n + 1)]
    mu = [Fraction(comb(n, c), 2**n) for c, _ in types]
    pk = [sum(w * p for w, p in zip(mu, col)) for col in zip(*[hypergeom_block_law(list(t), k) for t in types])]
    mk = []
    for s in product(range(2), repeat=k):
        tot = Fraction(0)
        for w, t in zip(mu, types):
            p = Fraction(1)
            for a in s:
                p *= Fraction(t[a], n)
            tot += w * p
        mk.append(tot)
    stage1 = kl(pk, mk)
    stage2 = mpf(0)
    stage3 = mpf(0)
    for w, t in zip(mu, types):
        law = hypergeom_block_law(list(t), k)
        qk = [Fraction(t[a], n) * Fraction(t[b], n) for a in range(2) for b in range(2)]
        stage2 += w * kl(law, qk)
        stage3 += w * conditional_mean_bruteforce(list(t), k)[0]
    print("chain fair coin n=4,k=2:", mp.nstr(stage1, 15), mp.nstr(stage2, 15), mp.nstr(stage3, 15))
