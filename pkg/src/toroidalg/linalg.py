"""Exact dense/sparse linear algebra over the cyclotomic scalars.

Matrices are lists of row lists; vectors over an algebra basis are sparse
dicts index -> scalar.  Everything reduces to fraction-exact Gaussian
elimination, which is all the sizes in this project need (dim <= ~40 for
the dense paths, a few hundred pivots for the sparse span tracker).
"""

from .cycfield import Cyc

ZERO = Cyc.rational(0)


def vec_add(a, b, coeff=None):
    out = dict(a)
    for k, v in b.items():
        w = v if coeff is None else coeff * v
        s = out.get(k, ZERO) + w
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(a, c):
    if c.is_zero():
        return {}
    return {k: c * v for k, v in a.items()}


def vec_is_zero(a):
    return all(v.is_zero() for v in a.values())


def mat_vec(m, x):
    """m given dense (rows), x dense list."""
    return [sum((row[j] * x[j] for j in range(len(x))), ZERO) for row in m]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[ZERO for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for l in range(k):
            c = a[i][l]
            if c.is_zero():
                continue
            for j in range(m):
                if not b[l][j].is_zero():
                    out[i][j] = out[i][j] + c * b[l][j]
    return out


def identity(n):
    return [[Cyc.rational(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rref(mat):
    """Row-reduce in place a copy; returns (reduced rows, pivot column list)."""
    rows = [list(r) for r in mat]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(mat):
    return len(rref(mat)[0])


def kernel(mat):
    """Basis of the right kernel of a dense matrix (list of dense vectors)."""
    if not mat:
        return []
    ncols = len(mat[0])
    rows, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = Cyc.rational(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One exact solution of mat @ x = rhs, or None if inconsistent."""
    n = len(mat)
    aug = [list(mat[i]) + [rhs[i]] for i in range(n)]
    rows, pivots = rref(aug)
    ncols = len(mat[0]) if mat else 0
    for r, pc in zip(rows, pivots):
        if pc == ncols:
            return None
    x = [ZERO] * ncols
    for r, pc in zip(rows, pivots):
        x[pc] = r[ncols]
    return x


def mat_inv(mat):
    n = len(mat)
    aug = [list(mat[i]) + list(identity(n)[i]) for i in range(n)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in rows]


class SparseSpan:
    """Incremental span of sparse vectors, with membership testing.

    Keeps an echelonized family keyed by pivot; keys may be arbitrary
    hashable objects with a deterministic order given by first insertion.
    """

    def __init__(self):
        self.pivots = {}   # pivot key -> reduced sparse vector with that pivot = 1
        self._order = {}   # key -> insertion rank, to pick pivots deterministically

    def _reduce(self, vec):
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        changed = True
        while changed:
            changed = False
            for k in list(vec.keys()):
                if k in self.pivots:
                    c = vec[k]
                    row = self.pivots[k]
                    for kk, vv in row.items():
                        s = vec.get(kk, ZERO) - c * vv
                        if s.is_zero():
                            vec.pop(kk, None)
                        else:
                            vec[kk] = s
                    changed = True
                    break
        return vec

    def add(self, vec):
        """Insert; returns True if the span grew."""
        for k in vec:
            if k not in self._order:
                self._order[k] = len(self._order)
        red = self._reduce(vec)
        if not red:
            return False
        pk = min(red.keys(), key=lambda k: self._order[k])
        inv = red[pk].inv()
        self.pivots[pk] = {k: inv * v for k, v in red.items()}
        return True

    def contains(self, vec):
        return not self._reduce(vec)

    @property
    def dim(self):
        return len(self.pivots)
