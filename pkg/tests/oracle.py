"""Brute-force reference computations for the metric tests.

Deliberately naive: n-grams are enumerated as list windows and matched by
linear scans, and the textbook formulas are used as written.
"""

import math


def windows(seq, n):
    return [tuple(seq[i:i + n]) for i in range(len(seq) - n + 1)]


def clipped_matches(hyp_grams, ref_grams):
    pool = list(ref_grams)
    hits = 0
    for g in hyp_grams:
        for j, r in enumerate(pool):
            if r == g:
                hits += 1
                del pool[j]
                break
    return hits


def bleu(pairs, smoothing="none", effective_order=False, max_n=4):
    matches = [0] * max_n
    totals = [0] * max_n
    hyp_len = ref_len = 0
    for hyp, ref in pairs:
        h, r = hyp.split(), ref.split()
        hyp_len += len(h)
        ref_len += len(r)
        for n in range(1, max_n + 1):
            hg, rg = windows(h, n), windows(r, n)
            matches[n - 1] += clipped_matches(hg, rg)
            totals[n - 1] += len(hg)
    if sum(matches) == 0:
        return 0.0
    precisions = []
    doubling = 1
    for n in range(max_n):
        if totals[n] == 0:
            if effective_order:
                break
            return 0.0
        if matches[n]:
            precisions.append(matches[n] / totals[n])
        elif smoothing == "exp":
            doubling *= 2
            precisions.append(1 / (doubling * totals[n]))
        else:
            return 0.0
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len)
    prod = 1.0
    for p in precisions:
        prod *= p
    return 100 * bp * prod ** (1 / len(precisions))


def chrf(pairs, beta=2.0, max_n=6):
    per_order = [[0, 0, 0] for _ in range(max_n)]
    for hyp, ref in pairs:
        h = [c for c in hyp if not c.isspace()]
        r = [c for c in ref if not c.isspace()]
        for n in range(1, max_n + 1):
            hg, rg = windows(h, n), windows(r, n)
            per_order[n - 1][0] += len(hg)
            per_order[n - 1][1] += len(rg)
            per_order[n - 1][2] += clipped_matches(hg, rg)
    ps, rs = [], []
    for nh, nr, m in per_order:
        if nh and nr:
            ps.append(m / nh)
            rs.append(m / nr)
    if not ps:
        return 0.0
    P, R = sum(ps) / len(ps), sum(rs) / len(rs)
    if P + R == 0:
        return 0.0
    b2 = beta ** 2
    return 100 * (1 + b2) * P * R / (b2 * P + R)
