"""Pure-Python peeling kernels (fallback for the compiled ``_peel`` module).

The witness structure is in CSR form: for element ``a`` the candidate pairs
``(pj[t], pk[t])`` for ``offs[a] <= t < offs[a+1]`` satisfy
``elem[pk] = elem[a] * elem[pj]^-1 * elem[a]``; ``a`` is non-extremal in a set
``S`` iff some pair has both members in ``S``.  ``deps[doffs[x]:doffs[x+1]]``
lists the elements whose pairs mention ``x``.
"""

from collections import deque


def _lists(*arrays):
    return [a.tolist() if hasattr(a, "tolist") else list(a) for a in arrays]


def _peel(offs, pj, pk, doffs, deps, alive, seeds):
    queue = deque()
    inq = [False] * len(alive)
    for s in seeds:
        if alive[s] and not inq[s]:
            inq[s] = True
            queue.append(s)
    while queue:
        a = queue.popleft()
        inq[a] = False
        if not alive[a]:
            continue
        extremal = True
        for t in range(offs[a], offs[a + 1]):
            if alive[pj[t]] and alive[pk[t]]:
                extremal = False
                break
        if extremal:
            alive[a] = 0
            for t in range(doffs[a], doffs[a + 1]):
                d = deps[t]
                if alive[d] and not inq[d]:
                    inq[d] = True
                    queue.append(d)
    return sum(alive)


def peel(offs, pj, pk, doffs, deps, alive, seeds):
    """Remove extremal points from ``alive`` (modified in place); return the survivor count."""
    offs, pj, pk, doffs, deps, seeds = _lists(offs, pj, pk, doffs, deps, seeds)
    work = alive.tolist() if hasattr(alive, "tolist") else alive
    count = _peel(offs, pj, pk, doffs, deps, work, seeds)
    if work is not alive:
        alive[:] = work
    return count


def min_peel(offs, pj, pk, doffs, deps, alive, order):
    """Shrink the ravel ``alive`` to a deletion-minimal one, scanning ``order``.

    Returns the number of successful deletions (one per recursion level).
    """
    offs, pj, pk, doffs, deps, order = _lists(offs, pj, pk, doffs, deps, order)
    cur = alive.tolist() if hasattr(alive, "tolist") else list(alive)
    levels = 0
    progress = True
    while progress:
        progress = False
        for a in order:
            if not cur[a]:
                continue
            trial = cur[:]
            trial[a] = 0
            seeds = deps[doffs[a]:doffs[a + 1]]
            if _peel(offs, pj, pk, doffs, deps, trial, seeds):
                cur = trial
                levels += 1
                progress = True
                break
    alive[:] = cur
    return levels


def _normalize(m, p, projective):
    if projective:
        for e in m:
            if e:
                if e > p // 2:
                    return tuple((p - x) % p for x in m)
                break
    return m


def _mul(x, y, p, m):
    return tuple(sum(x[i * m + k] * y[k * m + j] for k in range(m)) % p
                 for i in range(m) for j in range(m))


def witness_candidates(img, inv, p, projective):
    """Triples ``(i, j, k)``, ``j != i``, with ``img[i] inv[j] img[i] == img[k]`` mod p.

    Rows are m x m matrices flattened row-major; with ``projective`` the match is
    up to sign.  Returns three integer lists.
    """
    img = [tuple(r) for r in (img.tolist() if hasattr(img, "tolist") else img)]
    inv = [tuple(r) for r in (inv.tolist() if hasattr(inv, "tolist") else inv)]
    m = int(round(len(img[0]) ** 0.5)) if img else 0
    table = {}
    for k, row in enumerate(img):
        table.setdefault(_normalize(row, p, projective), []).append(k)
    I, J, K = [], [], []
    for i, a in enumerate(img):
        for j, b in enumerate(inv):
            if j == i:
                continue
            hits = table.get(_normalize(_mul(_mul(a, b, p, m), a, p, m), p, projective))
            if hits:
                for k in hits:
                    I.append(i)
                    J.append(j)
                    K.append(k)
    return I, J, K
