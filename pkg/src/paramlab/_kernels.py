"""Compiled inner loops.

The EA kernels work in the canonical (all-zero mask) frame and are exact in
distribution: iterations that cannot change the fitness are skipped with
geometric waiting times instead of being simulated one by one.
"""

import math

import numpy as np
from numba import njit

NO_HIT = -1


@njit(cache=True)
def _fill_checkpoints(cps, out, ptr, before, value):
    # checkpoints strictly earlier than ``before`` see ``value``
    while ptr < cps.shape[0] and cps[ptr] < before:
        out[ptr] = value
        ptr += 1
    return ptr


@njit(cache=True)
def lo_run(y, q, kappa, rng, cps, cp_out):
    """(1+1) EA with standard bit mutation on LeadingOnes.

    Bits behind the first zero are only touched by accepted steps, each of
    which flips every such bit independently with probability ``q``.  They are
    materialised lazily: a bit that has seen ``s`` such steps since it was
    last looked at is flipped with probability ``(1 - (1 - 2q)^s) / 2``.
    """
    n = y.shape[0]
    k = 0
    while k < n and y[k] == 1:
        k += 1
    last_seen = np.zeros(n, dtype=np.int64)
    steps = 0  # accepted steps that re-randomise the suffix
    t = 0
    last_impr = 0
    hit = NO_HIT
    ptr = 0
    if k == n:
        hit = 0
    one_minus_2q = 1.0 - 2.0 * q
    while k < n and t < kappa:
        p_keep_prefix = (1.0 - q) ** k
        p_imp = q * p_keep_prefix
        if p_imp <= 0.0:
            break
        wait = rng.geometric(p_imp)
        if t + wait > kappa:
            break
        if wait > 1 and p_imp < 1.0:
            # among failed iterations, neutral ones leave the first k+1 bits alone
            p_neutral = p_keep_prefix * (1.0 - q) / (1.0 - p_imp)
            if p_neutral > 1.0:
                p_neutral = 1.0
            steps += rng.binomial(wait - 1, p_neutral)
        ptr = _fill_checkpoints(cps, cp_out, ptr, t + wait, k)
        t += wait
        steps += 1
        y[k] = 1
        j = k + 1
        while j < n:
            s = steps - last_seen[j]
            if s > 0:
                p_odd = 0.5 * (1.0 - one_minus_2q ** s)
                if rng.random() < p_odd:
                    y[j] ^= 1
                last_seen[j] = steps
            if y[j] == 1:
                j += 1
            else:
                break
        k = j
        last_impr = t
        if k == n:
            hit = t
    if hit == NO_HIT:
        t = kappa
    ptr = _fill_checkpoints(cps, cp_out, ptr, np.iinfo(np.int64).max, k)
    return k, last_impr, hit, t


@njit(cache=True)
def _ridge_value(y):
    n = y.shape[0]
    k = 0
    while k < n and y[k] == 1:
        k += 1
    ones = k
    for j in range(k, n):
        ones += y[j]
    if ones == k:
        return n + k
    return n - ones


@njit(cache=True)
def ridge_run(y, q, kappa, rng, cps, cp_out):
    """(1+1) EA with standard bit mutation on Ridge."""
    n = y.shape[0]
    fit = _ridge_value(y)
    t = 0
    last_impr = 0
    hit = NO_HIT
    ptr = 0
    if fit == 2 * n:
        hit = 0
    perm = np.arange(n)
    child = y.copy()
    p_any = 1.0 - (1.0 - q) ** n
    # off the ridge: literal mutate-and-select, skipping zero-flip iterations
    while fit < n and t < kappa:
        wait = rng.geometric(p_any)
        if t + wait > kappa:
            break
        flips = 0
        while flips == 0:
            flips = rng.binomial(n, q)
        for j in range(n):
            child[j] = y[j]
        for i in range(flips):
            r = i + rng.integers(0, n - i)
            tmp = perm[i]
            perm[i] = perm[r]
            perm[r] = tmp
            child[perm[i]] ^= 1
        t += wait
        cfit = _ridge_value(child)
        if cfit >= fit:
            for j in range(n):
                y[j] = child[j]
            if cfit > fit:
                ptr = _fill_checkpoints(cps, cp_out, ptr, t, fit)
                fit = cfit
                last_impr = t
                if fit == 2 * n:
                    hit = t
    # on the ridge at 1^k 0^(n-k): only the jumps 1^(k+i) 0^(n-k-i) are accepted
    k = fit - n
    ratio = q / (1.0 - q) if q < 1.0 else np.inf
    while fit >= n and k < n and t < kappa:
        total = 0.0
        w = q * (1.0 - q) ** (n - 1)
        for i in range(1, n - k + 1):
            if q >= 1.0:
                w = 1.0 if (i == n and k == 0) else 0.0
            elif i > 1:
                w *= ratio
            total += w
            if ratio < 1.0 and w < 1e-18 * total:
                break
        if total <= 0.0:
            break
        if total > 1.0:
            total = 1.0
        wait = rng.geometric(total)
        if t + wait > kappa:
            break
        u = rng.random() * total
        acc = 0.0
        jump = 1
        w = q * (1.0 - q) ** (n - 1)
        for i in range(1, n - k + 1):
            if q >= 1.0:
                w = 1.0 if (i == n and k == 0) else 0.0
            elif i > 1:
                w *= ratio
            acc += w
            jump = i
            if u < acc:
                break
        ptr = _fill_checkpoints(cps, cp_out, ptr, t + wait, fit)
        t += wait
        k += jump
        fit = n + k
        last_impr = t
        if k == n:
            hit = t
    if hit == NO_HIT:
        t = kappa
    ptr = _fill_checkpoints(cps, cp_out, ptr, np.iinfo(np.int64).max, fit)
    return fit, last_impr, hit, t


@njit(cache=True)
def recurrence_curves(chi, psi, n_periods, c_lower, c_upper):
    c_lower[0] = 0.0
    c_upper[0] = 0.0
    for i in range(n_periods):
        c_upper[i + 1] = c_upper[i] + 2.0 * chi / (psi * math.exp(chi * c_upper[i]))
        c_lower[i + 1] = c_lower[i] + 2.0 * chi / (psi * math.exp(chi * c_upper[i + 1]))


@njit(cache=True)
def landscape_scan(chis, psi, max_periods, peak, overlaps):
    """Per period i, certify neighbour orderings on [c_l(i), c_u(i+1)].

    ``peak[i]`` is the grid index of the unique optimum or -1, ``overlaps[i]``
    the number of neighbouring pairs whose intervals intersect.
    """
    m = chis.shape[0]
    cl = np.zeros(m)
    cu = np.zeros(m)
    cl_next = np.empty(m)
    cu_next = np.empty(m)
    for i in range(max_periods + 1):
        for k in range(m):
            c = chis[k]
            cu_next[k] = cu[k] + 2.0 * c / (psi * math.exp(c * cu[k]))
            cl_next[k] = cl[k] + 2.0 * c / (psi * math.exp(c * cu_next[k]))
        n_overlap = 0
        valleys = 0
        descending = False
        top = m - 1
        for k in range(m - 1):
            if cl[k + 1] > cu_next[k]:
                if descending:
                    valleys += 1
            elif cl[k] > cu_next[k + 1]:
                if not descending:
                    descending = True
                    top = k
            else:
                n_overlap += 1
        overlaps[i] = n_overlap
        peak[i] = top if (n_overlap == 0 and valleys == 0) else -1
        for k in range(m):
            cu[k] = cu_next[k]
            cl[k] = cl_next[k]


@njit(cache=True, error_model="numpy")
def finishes_first_scan(chis, psi, start, pair_a, pair_b, epsilon, horizon,
                        q_out, q_period, bad_period):
    """Stream all recurrences once and evaluate the remains-ahead quantity.

    For pair p the leader's terminal period is the last i with c_u(a, i) < 1.
    Intervals [c_l(i), c_u(i+1)] must be disjoint (leader ahead) on every
    period from ``min(start, terminal)`` to ``terminal``; the quantity is
    evaluated at the terminal period.
    """
    m = chis.shape[0]
    n_pairs = pair_a.shape[0]
    cl = np.zeros(m)
    cu = np.zeros(m)
    cl_next = np.empty(m)
    cu_next = np.empty(m)
    terminal = np.full(m, -1, dtype=np.int64)
    pending = n_pairs
    for i in range(horizon + 1):
        for k in range(m):
            c = chis[k]
            cu_next[k] = cu[k] + 2.0 * c / (psi * math.exp(c * cu[k]))
            cl_next[k] = cl[k] + 2.0 * c / (psi * math.exp(c * cu_next[k]))
            if terminal[k] < 0 and cu_next[k] >= 1.0:
                terminal[k] = i
        for p in range(n_pairs):
            if q_period[p] >= 0:
                continue
            a = pair_a[p]
            b = pair_b[p]
            if i < start and terminal[a] != i:
                continue
            if bad_period[p] < 0 and not (cl[a] > cu_next[b] and cl[a] > cu[b]):
                bad_period[p] = i
            if terminal[a] == i:
                ca = chis[a]
                cb = chis[b]
                num = 2.0 * cb / ((cl[a] - cu[b]) * math.exp(cb * cl[b])) + epsilon
                den = 2.0 * ca / ((1.0 - cl[a]) * math.exp(ca))
                q_out[p] = num / den
                q_period[p] = i
                pending -= 1
        if pending == 0:
            return i
        for k in range(m):
            cu[k] = cu_next[k]
            cl[k] = cl_next[k]
    return horizon
