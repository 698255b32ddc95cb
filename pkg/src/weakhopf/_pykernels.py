"""numpy implementations of the mod-p kernels (fallback for _ckernels)."""
import numpy as np

_LIMIT = 2**62


def matmul_mod(a, b, p):
    """(a @ b) mod p for int64 arrays with entries in [0, p)."""
    k = a.shape[1]
    if k == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, _LIMIT // max(1, (p - 1) ** 2))
    if k <= step:
        return (a @ b) % p
    # chunk the contraction so partial sums stay below 2**62
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, step):
        out = (out + (a[:, s:s + step] @ b[s:s + step]) % p) % p
    return out


def rref_mod(m, p):
    """Gauss-Jordan over F_p, first nonzero entry as pivot. Returns (R, pivots)."""
    r = np.array(m, dtype=np.int64) % p
    rows, cols = r.shape
    pivots = []
    row = 0
    for c in range(cols):
        if row == rows:
            break
        nz = np.flatnonzero(r[row:, c])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, c]), -1, p)
        r[row] = (r[row] * inv) % p
        col = r[:, c].copy()
        col[row] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            r[hit] = (r[hit] - np.outer(col[hit], r[row])) % p
        pivots.append(c)
        row += 1
    return r, pivots
