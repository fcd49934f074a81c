"""The two packaged orthogonal-algebra examples.

"baby": so_5 with sign automorphisms diag(1,1,1,1,-1), diag(1,1,1,-1,1)
coming from the three-coset Clifford torus; "full": so_6 with
diag(1,1,1,1,-1,-1), diag(1,1,1,-1,1,-1) from the full coset lattice.
Coroots and simple root vectors are fixed explicitly (entries in Q(i)) so
that downstream golden computations are pinned to concrete matrices.
"""

from fractions import Fraction

from .cycfield import Cyc
from .liestruct import build_so, conj_automorphism, so_pair_vec
from .linalg import vec_add, vec_scale

I = Cyc.zeta(4)
HALF = Cyc.rational(Fraction(1, 2))


def _combo(lie, terms):
    out = {}
    for coeff, (a, b) in terms:
        out = vec_add(out, so_pair_vec(lie, a, b), coeff)
    return out


def baby_example():
    """so_5 data for the three-coset torus; index order (1,2,3,(0,1),(1,0))."""
    labels = [1, 2, 3, "c01", "c10"]
    lie = build_so(labels)
    sigma0 = conj_automorphism(lie, [1, 1, 1, 1, -1])
    sigma1 = conj_automorphism(lie, [1, 1, 1, -1, 1])

    h1 = _combo(lie, [(2 * I, (3, "c01"))])
    h2 = _combo(lie, [(I, (1, 2)), (-I, (3, "c01"))])
    e1 = _combo(lie, [(-Cyc.rational(1), (3, "c10")), (I, ("c01", "c10"))])
    f1 = _combo(lie, [(Cyc.rational(1), (3, "c10")), (I, ("c01", "c10"))])
    e2 = _combo(lie, [(HALF, (1, 3)), (HALF * I, (1, "c01")),
                      (-HALF * I, (2, 3)), (HALF, (2, "c01"))])
    f2 = _combo(lie, [(-HALF, (1, 3)), (HALF * I, (1, "c01")),
                      (-HALF * I, (2, 3)), (-HALF, (2, "c01"))])

    return {
        "name": "baby",
        "lie": lie,
        "labels": labels,
        "signs": ([1, 1, 1, 1, -1], [1, 1, 1, -1, 1]),
        "sigma0": sigma0,
        "sigma1": sigma1,
        "cartan": [h1, h2],
        "e": [e1, e2],
        "f": [f1, f2],
        "cartan_matrix": [[2, -2], [-1, 2]],
        # sigma0 = exp(2 pi i * t * ad h) with:
        "exp_h": h2,
        "exp_t": Fraction(1, 2),
        "rank": 2,
        "m0": 2,
        "cosets": [(0, 0), (0, 1), (1, 0)],
    }


def full_example():
    """so_6 data for the full coset lattice; index order (1,2,3,(0,1),(1,0),(1,1))."""
    labels = [1, 2, 3, "c01", "c10", "c11"]
    lie = build_so(labels)
    sigma0 = conj_automorphism(lie, [1, 1, 1, 1, -1, -1])
    sigma1 = conj_automorphism(lie, [1, 1, 1, -1, 1, -1])

    h1 = _combo(lie, [(I, (3, "c01")), (I, ("c10", "c11"))])
    h2 = _combo(lie, [(I, (1, 2)), (-I, (3, "c01"))])
    h3 = _combo(lie, [(I, (3, "c01")), (-I, ("c10", "c11"))])
    e1 = _combo(lie, [(HALF, (3, "c10")), (-HALF * I, (3, "c11")),
                      (-HALF * I, ("c01", "c10")), (-HALF, ("c01", "c11"))])
    f1 = _combo(lie, [(-HALF, (3, "c10")), (-HALF * I, (3, "c11")),
                      (-HALF * I, ("c01", "c10")), (HALF, ("c01", "c11"))])
    e2 = _combo(lie, [(HALF, (1, 3)), (HALF * I, (1, "c01")),
                      (-HALF * I, (2, 3)), (HALF, (2, "c01"))])
    f2 = _combo(lie, [(-HALF, (1, 3)), (HALF * I, (1, "c01")),
                      (-HALF * I, (2, 3)), (-HALF, (2, "c01"))])
    e3 = _combo(lie, [(HALF, (3, "c10")), (HALF * I, (3, "c11")),
                      (-HALF * I, ("c01", "c10")), (HALF, ("c01", "c11"))])
    f3 = _combo(lie, [(-HALF, (3, "c10")), (HALF * I, (3, "c11")),
                      (-HALF * I, ("c01", "c10")), (-HALF, ("c01", "c11"))])

    hdiff = vec_add(h1, h3, Cyc.rational(-1))
    return {
        "name": "full",
        "lie": lie,
        "labels": labels,
        "signs": ([1, 1, 1, 1, -1, -1], [1, 1, 1, -1, 1, -1]),
        "sigma0": sigma0,
        "sigma1": sigma1,
        "cartan": [h1, h2, h3],
        "e": [e1, e2, e3],
        "f": [f1, f2, f3],
        "cartan_matrix": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
        "exp_h": hdiff,
        "exp_t": Fraction(1, 4),
        "rank": 3,
        "m0": 2,
        "cosets": [(0, 0), (0, 1), (1, 0), (1, 1)],
    }


EXAMPLES = {"baby": baby_example, "full": full_example}
