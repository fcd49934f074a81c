"""Finite-dimensional Lie algebras over cyclotomic scalars.

The algebras are orthogonal algebras so(U) built from an explicit index
set, with basis e_ij (i < j) acting by e_ij(v_k) = d_jk v_i - d_ik v_j.
Structure constants come from the matrix realization, the invariant form
is the trace form scaled so long roots have squared length 2, and the
machinery below covers sign automorphisms, simultaneous eigenspace
gradings, exponentials exp(2 pi i t ad h) with integral ad-spectrum, and
the search for a Cartan subalgebra invariant under a family of commuting
automorphisms (fixed-point reduction, then centralizer, recursively).
"""

import random
from fractions import Fraction

from .cycfield import Cyc
from .linalg import (
    SparseSpan, identity, kernel, mat_eq, mat_inv, mat_mul, mat_vec, rank,
    rref, solve, vec_add, vec_is_zero, vec_scale,
)

ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


class LieShapeError(ValueError):
    pass


class CartanSearchError(RuntimeError):
    pass


class StructLie:
    """Labeled basis + sparse structure constants + invariant form."""

    def __init__(self, basis_labels, sc, form, dual_coxeter, meta=None):
        self.basis_labels = list(basis_labels)
        self.dim = len(self.basis_labels)
        self.sc = sc                    # (i, j) -> {k: Cyc}, stored for i < j
        self.form = form                # dense symmetric matrix of Cyc
        self.dual_coxeter = Fraction(dual_coxeter)
        self.meta = meta or {}

    def bracket_basis(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self.sc.get((i, j), {})
        return {k: -v for k, v in self.sc.get((j, i), {}).items()}

    def bracket(self, x, y):
        """Bracket of sparse coefficient vectors."""
        out = {}
        for i, xi in x.items():
            if xi.is_zero():
                continue
            for j, yj in y.items():
                if yj.is_zero():
                    continue
                c = xi * yj
                for k, s in self.bracket_basis(i, j).items():
                    t = out.get(k, ZERO) + c * s
                    if t.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = t
        return out

    def pair(self, x, y):
        """Normalized invariant form (x|y)."""
        out = ZERO
        for i, xi in x.items():
            for j, yj in y.items():
                f = self.form[i][j]
                if not f.is_zero():
                    out = out + xi * yj * f
        return out

    def ad(self, x):
        """Dense matrix of ad x."""
        cols = []
        for j in range(self.dim):
            img = self.bracket(x, {j: ONE})
            cols.append([img.get(i, ZERO) for i in range(self.dim)])
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def to_json(self):
        trips = []
        for (i, j), row in sorted(self.sc.items()):
            for k in sorted(row):
                trips.append([i, j, k, row[k].to_json()])
        return {
            "basis_labels": [list(l) if isinstance(l, tuple) else l
                             for l in self.basis_labels],
            "structure_constants": trips,
            "form": [[x.to_json() for x in row] for row in self.form],
            "dual_coxeter": f"{self.dual_coxeter.numerator}/{self.dual_coxeter.denominator}",
        }


class LieAut:
    """Automorphism stored as a full matrix in the algebra basis."""

    def __init__(self, matrix, order):
        self.matrix = matrix
        self.order = order

    def apply(self, vec):
        out = {}
        for j, vj in vec.items():
            if vj.is_zero():
                continue
            for i in range(len(self.matrix)):
                m = self.matrix[i][j]
                if m.is_zero():
                    continue
                t = out.get(i, ZERO) + m * vj
                if t.is_zero():
                    out.pop(i, None)
                else:
                    out[i] = t
        return out

    def compose(self, other):
        from math import lcm
        return LieAut(mat_mul(self.matrix, other.matrix),
                      lcm(self.order, other.order))

    def __eq__(self, other):
        return isinstance(other, LieAut) and mat_eq(self.matrix, other.matrix)


class Grading:
    """Simultaneous eigenspace decomposition for commuting automorphisms."""

    def __init__(self, lattice_orders, components):
        self.lattice_orders = tuple(lattice_orders)
        self.components = components    # coset tuple -> list of sparse vectors

    def dims(self):
        return {s: len(b) for s, b in self.components.items()}

    def coset_add(self, s, t):
        return tuple((a + b) % m for a, b, m in
                     zip(s, t, self.lattice_orders))


# ---------------------------------------------------------------------------
# so(U) construction
# ---------------------------------------------------------------------------

def _so_matrix(n, i, j):
    m = [[ZERO] * n for _ in range(n)]
    m[i][j] = ONE
    m[j][i] = -ONE
    return m


def _commutator(a, b):
    n = len(a)
    ab = mat_mul(a, b)
    ba = mat_mul(b, a)
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]


def _standard_cartan_positions(n):
    return [(2 * a, 2 * a + 1) for a in range(n // 2)]


def _int_eigenspaces(mat, bound=8):
    """Eigenspaces of a matrix with (assumed) integer spectrum.

    Returns {k: basis}, erroring if the kernels do not exhaust the space.
    """
    n = len(mat)
    spaces = {}
    total = 0
    for k in range(-bound, bound + 1):
        shifted = [[mat[i][j] - (ONE * k if i == j else ZERO)
                    for j in range(n)] for i in range(n)]
        ker = kernel(shifted)
        if ker:
            spaces[k] = ker
            total += len(ker)
    if total != n:
        raise LieShapeError(
            f"matrix does not have integral spectrum within [-{bound},{bound}]")
    return spaces


def build_so(index_set):
    """so_n over the labeled orthonormal basis, n = |index_set| >= 3."""
    index_set = list(index_set)
    n = len(index_set)
    if n < 3:
        raise LieShapeError("need at least 3 indices for an orthogonal algebra")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pair_pos = {p: a for a, p in enumerate(pairs)}
    mats = [_so_matrix(n, i, j) for (i, j) in pairs]

    sc = {}
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            comm = _commutator(mats[a], mats[b])
            row = {}
            for (i, j) in pairs:
                c = comm[i][j]
                if not c.is_zero():
                    row[pair_pos[(i, j)]] = c
            if row:
                sc[(a, b)] = row

    labels = [(index_set[i], index_set[j]) for (i, j) in pairs]
    meta = {"n": n, "index_set": index_set, "pairs": pairs,
            "pair_pos": pair_pos}
    lie = StructLie(labels, sc, None, Fraction(n - 2), meta)

    # trace form in this basis is -2 * identity; scale so the longest root
    # constructed from the standard Cartan has squared length 2
    scale = _long_root_scale(lie)
    form = [[(-2 * scale if i == j else Fraction(0)) * ONE
             for j in range(lie.dim)] for i in range(lie.dim)]
    lie.form = form
    return lie


def so_pair_vec(lie, i_label, j_label):
    """e_{ij} by labels, as a sparse vector (antisymmetric in the labels)."""
    idx = lie.meta["index_set"]
    i, j = idx.index(i_label), idx.index(j_label)
    if i == j:
        return {}
    if i < j:
        return {lie.meta["pair_pos"][(i, j)]: ONE}
    return {lie.meta["pair_pos"][(j, i)]: -ONE}


def standard_cartan(lie):
    """Cartan basis i*e_{2a-1,2a} of the standard realization."""
    i = Cyc.zeta(4)
    out = []
    for (p, q) in _standard_cartan_positions(lie.meta["n"]):
        out.append({lie.meta["pair_pos"][(p, q)]: i})
    return out


def joint_int_eigenspaces(lie, elements, bound=4):
    """Simultaneous integer ad-eigenspaces of commuting Cartan elements.

    Returns a sorted list of (eigenvalue tuple, basis of sparse vectors).
    """
    blocks = [(tuple(), [{i: ONE} for i in range(lie.dim)])]
    for h in elements:
        adh = lie.ad(h)
        grouped = {}
        for key, basis in blocks:
            images = []
            for v in basis:
                dense = [v.get(t, ZERO) for t in range(lie.dim)]
                images.append(mat_vec(adh, dense))
            found = 0
            for k in range(-bound, bound + 1):
                stacked = [[images[c][i] - (ONE * k) * basis[c].get(i, ZERO)
                            for c in range(len(basis))]
                           for i in range(lie.dim)]
                for kv in kernel(stacked):
                    w = {}
                    for c, coef in enumerate(kv):
                        if not coef.is_zero():
                            w = vec_add(w, basis[c], coef)
                    if w:
                        grouped.setdefault(key + (k,), []).append(w)
                        found += 1
            if found != len(basis):
                raise LieShapeError(
                    "ad spectrum is not integral within the scan bound")
        blocks = sorted(grouped.items())
    return blocks


def _long_root_scale(lie):
    """Scalar s with (x|y) = s * Tr(xy) making long roots have norm 2."""
    cartan = standard_cartan(lie)
    rk = len(cartan)
    blocks = joint_int_eigenspaces(lie, cartan)
    # root norms under the trace form tr(xy) = -2 sum coords
    tr_gram = [[-2 * sum((x.get(t, ZERO) * y.get(t, ZERO) for t in range(lie.dim)),
                         ZERO) for y in cartan] for x in cartan]
    best = None
    for key, basis in blocks:
        if all(k == 0 for k in key):
            continue
        alpha = [ONE * k for k in key]
        x = solve(tr_gram, alpha)
        norm = sum((alpha[a] * x[a] for a in range(rk)), ZERO)
        nf = norm.as_fraction()
        if best is None or nf > best:
            best = nf
    if best is None or best <= 0:
        raise LieShapeError("could not locate a root of positive length")
    # dual norms scale inversely: (alpha|alpha) under s*Tr is (1/s) * trace norm
    return best / Fraction(2, 1)


# ---------------------------------------------------------------------------
# automorphisms and gradings
# ---------------------------------------------------------------------------

def conj_automorphism(lie, diag_signs):
    """Conjugation by diag(signs) on so(U): e_ij -> s_i s_j e_ij."""
    n = lie.meta["n"]
    if len(diag_signs) != n:
        raise LieShapeError(
            f"need {n} signs, got {len(diag_signs)}")
    if any(s not in (1, -1) for s in diag_signs):
        raise LieShapeError("signs must be +1 or -1")
    m = [[ZERO] * lie.dim for _ in range(lie.dim)]
    for a, (i, j) in enumerate(lie.meta["pairs"]):
        m[a][a] = ONE * (diag_signs[i] * diag_signs[j])
    order = 2 if any(m[a][a] == -1 for a in range(lie.dim)) else 1
    return LieAut(m, order)


def is_inner_sign_aut(diag_signs):
    """Parity rule: inner iff an even number of -1's or an even number of +1's."""
    minus = sum(1 for s in diag_signs if s == -1)
    plus = len(diag_signs) - minus
    return minus % 2 == 0 or plus % 2 == 0


def check_commuting(autos):
    for a in range(len(autos)):
        for b in range(a + 1, len(autos)):
            if not mat_eq(mat_mul(autos[a].matrix, autos[b].matrix),
                          mat_mul(autos[b].matrix, autos[a].matrix)):
                return False
    return True


def simultaneous_grading(lie, autos, roots):
    """Joint eigenspace decomposition g_s = {x | sigma_i x = xi_i^{s_i} x}."""
    if not check_commuting(autos):
        raise LieShapeError("automorphisms do not commute")
    orders = [a.order for a in autos]
    components = {}
    total = 0
    from itertools import product as iproduct
    for coset in iproduct(*[range(m) for m in orders]):
        stacked = []
        for a, s in zip(range(len(autos)), coset):
            lam = roots[a] ** coset[a]
            m = autos[a].matrix
            for i in range(lie.dim):
                stacked.append([m[i][j] - (lam if i == j else ZERO)
                                for j in range(lie.dim)])
        if not stacked:
            stacked = [[ZERO] * lie.dim]
        ker = kernel(stacked)
        basis = []
        for kv in ker:
            v = {i: c for i, c in enumerate(kv) if not c.is_zero()}
            basis.append(v)
        if basis:
            components[tuple(coset)] = basis
        total += len(basis)
    if total != lie.dim:
        raise LieShapeError(
            f"grading components sum to {total}, expected {lie.dim}")
    if not components and lie.dim == 0:
        components[tuple(0 for _ in orders)] = []
    g = Grading(orders, components)
    return g


# ---------------------------------------------------------------------------
# Cartan machinery
# ---------------------------------------------------------------------------

class _SubView:
    """A subalgebra presented by a basis of ambient sparse vectors."""

    def __init__(self, lie, basis):
        self.lie = lie
        self.basis = basis
        self.dim = len(basis)
        self._bmat = [[basis[c].get(i, ZERO) for c in range(self.dim)]
                      for i in range(lie.dim)]

    def coords(self, ambient_vec):
        rhs = [ambient_vec.get(i, ZERO) for i in range(self.lie.dim)]
        x = solve(self._bmat, rhs)
        if x is None:
            raise LieShapeError("vector not in subalgebra")
        return x

    def bracket(self, xc, yc):
        xa = {}
        for c, v in enumerate(xc):
            if not v.is_zero():
                xa = vec_add(xa, self.basis[c], v)
        ya = {}
        for c, v in enumerate(yc):
            if not v.is_zero():
                ya = vec_add(ya, self.basis[c], v)
        return self.coords(self.lie.bracket(xa, ya))

    def restrict_aut(self, aut):
        cols = []
        for b in self.basis:
            cols.append(self.coords(aut.apply(b)))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]


def _sub_ad(view, xc):
    cols = [view.bracket(xc, [ONE if c == j else ZERO for c in range(view.dim)])
            for j in range(view.dim)]
    return [[cols[j][i] for j in range(view.dim)] for i in range(view.dim)]


def _centralizer_in_view(view, vectors_coords):
    stacked = []
    for vc in vectors_coords:
        adv = _sub_ad(view, vc)
        stacked.extend(adv)
    if not stacked:
        return [[ONE if i == j else ZERO for j in range(view.dim)]
                for i in range(view.dim)]
    return kernel(stacked)


def _certify_cartan(view, h_coords):
    for a in range(len(h_coords)):
        for b in range(a + 1, len(h_coords)):
            if any(not v.is_zero() for v in view.bracket(h_coords[a], h_coords[b])):
                return False
    cent = _centralizer_in_view(view, h_coords)
    return len(cent) == len(h_coords)


def _cartan_of_view(view, rng, budget=32):
    """Cartan subalgebra of a reductive subalgebra by regular-element sampling."""
    for attempt in range(2):
        tries = budget * (attempt + 1)
        best = None
        for _ in range(tries):
            xc = [ONE * rng.randint(-9, 9) for _ in range(view.dim)]
            adx = _sub_ad(view, xc)
            ker = kernel(adx)
            if best is None or len(ker) < len(best):
                best = ker
        if best is not None and _certify_cartan(view, best):
            return best
    raise CartanSearchError(
        "failed to certify a Cartan subalgebra within the sampling budget")


def _fixed_subalgebra(view, aut_matrix):
    n = view.dim
    shifted = [[aut_matrix[i][j] - (ONE if i == j else ZERO)
                for j in range(n)] for i in range(n)]
    return kernel(shifted)


def invariant_cartan(lie, autos, seed=2718):
    """Cartan subalgebra setwise invariant under commuting finite-order autos.

    Implements the fixed-point induction: take an invariant Cartan of the
    fixed algebra of the first automorphism, then centralize in the whole
    algebra; recurses over the remaining automorphisms.
    """
    if autos and not check_commuting(autos):
        raise LieShapeError("automorphisms do not commute")
    rng = random.Random(seed)
    view = _SubView(lie, [{i: ONE} for i in range(lie.dim)])
    h_coords = _invariant_cartan_view(view, [a.matrix for a in autos], rng)
    out = []
    for hc in h_coords:
        v = {}
        for c, coef in enumerate(hc):
            if not coef.is_zero():
                v = vec_add(v, view.basis[c], coef)
        out.append(v)
    # exact certification in the ambient algebra
    for a in range(len(out)):
        for b in range(a + 1, len(out)):
            if lie.bracket(out[a], out[b]):
                raise CartanSearchError("output is not abelian")
    for aut in autos:
        span = SparseSpan()
        for v in out:
            span.add(v)
        for v in out:
            if not span.contains(aut.apply(v)):
                raise CartanSearchError("output is not invariant")
    return out


def _invariant_cartan_view(view, aut_mats, rng):
    nontrivial = [m for m in aut_mats
                  if not mat_eq(m, identity(view.dim))]
    if not nontrivial:
        return _cartan_of_view(view, rng)
    first, rest = nontrivial[0], nontrivial[1:]
    fix = _fixed_subalgebra(view, first)
    fix_basis = []
    for kv in fix:
        v = {}
        for c, coef in enumerate(kv):
            if not coef.is_zero():
                v = vec_add(v, view.basis[c], coef)
        fix_basis.append(v)
    subview = _SubView(view.lie, fix_basis)
    rest_in_sub = [subview.restrict_aut(_aut_from_view(view, m)) for m in rest]
    h_sub = _invariant_cartan_view(subview, rest_in_sub, rng)
    h_amb_coords = []
    for hc in h_sub:
        v = {}
        for c, coef in enumerate(hc):
            if not coef.is_zero():
                v = vec_add(v, subview.basis[c], coef)
        h_amb_coords.append(view.coords(v))
    cent = _centralizer_in_view(view, h_amb_coords)
    if not _certify_cartan(view, cent):
        raise CartanSearchError("centralizer step did not produce a Cartan")
    return cent


def _aut_from_view(view, matrix_in_view):
    """Ambient automorphism from its matrix in view coordinates."""

    class _Applied:
        def apply(self, vec):
            xc = view.coords(vec)
            yc = mat_vec(matrix_in_view, xc)
            out = {}
            for c, coef in enumerate(yc):
                if not coef.is_zero():
                    out = vec_add(out, view.basis[c], coef)
            return out

    return _Applied()


def centralizer(lie, vectors):
    """Basis of the centralizer of a set of sparse vectors."""
    stacked = []
    for v in vectors:
        stacked.extend(lie.ad(v))
    ker = kernel(stacked) if stacked else \
        [[ONE if i == j else ZERO for j in range(lie.dim)] for i in range(lie.dim)]
    return [{i: c for i, c in enumerate(kv) if not c.is_zero()} for kv in ker]


def exp_ad_rational(lie, h, t):
    """exp(2 pi i t ad h) for rational t, via exact eigenspace scalars.

    Requires ad h to be diagonalizable with integer eigenvalues; the
    automorphism multiplies the eigenvalue-k space by the root of unity
    e^{2 pi i t k}, never by a power series.
    """
    t = Fraction(t)
    adh = lie.ad(h)
    try:
        spaces = _int_eigenspaces(adh)
    except LieShapeError as exc:
        raise LieShapeError(f"ad h is not integrally diagonalizable: {exc}")
    q = t.denominator
    cols = []
    scalars = []
    for k in sorted(spaces):
        lam = Cyc.zeta(q, (t.numerator * k) % q) if q > 1 else Cyc.rational(1)
        for v in spaces[k]:
            cols.append(v)
            scalars.append(lam)
    p_mat = [[cols[c][i] for c in range(lie.dim)] for i in range(lie.dim)]
    p_inv = mat_inv(p_mat)
    scaled = [[scalars[c] * p_inv[c][j] for j in range(lie.dim)]
              for c in range(lie.dim)]
    m = mat_mul(p_mat, scaled)
    from math import gcd, lcm
    order = 1
    for k in spaces:
        if k and t.numerator:
            kk = (t.numerator * k) % q
            if kk:
                order = lcm(order, q // gcd(q, kk))
    return LieAut(m, order)


def aut_preserves_bracket(lie, aut):
    for i in range(lie.dim):
        for j in range(i + 1, lie.dim):
            lhs = aut.apply(lie.bracket_basis(i, j))
            rhs = lie.bracket(aut.apply({i: ONE}), aut.apply({j: ONE}))
            diff = vec_add(lhs, rhs, ONE * -1)
            if diff:
                return False
    return True
