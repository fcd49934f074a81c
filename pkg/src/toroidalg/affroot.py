"""Affine root systems for the packaged orthogonal algebras, the untwisting
degree-shift isomorphism for inner twists, the induced action of lifted
automorphisms on simple roots, factorization through the affine Weyl group
and diagram automorphisms, and the thin-covering shape decision.

Roots live in the lattice spanned by the affine simple roots; the null
root is sum(marks[i] * alpha_i), so no separate delta coordinate is
carried.  Weyl words are produced by greedy height descent and are only
required to reproduce the action, not any particular letter sequence.
"""

from fractions import Fraction
from itertools import permutations

from .cycfield import Cyc
from .liestruct import joint_int_eigenspaces
from .linalg import solve, vec_add

ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


class RootActionError(ValueError):
    pass


class FactorizationError(RuntimeError):
    def __init__(self, msg, needs_chevalley_involution=False):
        super().__init__(msg)
        self.needs_chevalley_involution = needs_chevalley_involution


# ---------------------------------------------------------------------------
# finite root data from an explicit Cartan + Chevalley generators
# ---------------------------------------------------------------------------

class FiniteRootData:
    def __init__(self, lie, cartan, cartan_matrix, simple_e=None, simple_f=None):
        self.lie = lie
        self.cartan = cartan
        self.rank = len(cartan)
        self.A = cartan_matrix
        blocks = joint_int_eigenspaces(lie, cartan)
        self.root_vectors = {}     # value tuple -> basis vector of the root space
        self.zero_space = []
        for key, basis in blocks:
            if all(k == 0 for k in key):
                self.zero_space = basis
            else:
                if len(basis) != 1:
                    raise RootActionError(
                        f"root space at {key} is not one-dimensional")
                self.root_vectors[key] = basis[0]
        # prefer explicitly given Chevalley generators as representatives
        for given, sign in ((simple_e, 1), (simple_f, -1)):
            if not given:
                continue
            for j, vec in enumerate(given):
                key = tuple(sign * self.A[i][j] for i in range(self.rank))
                if key not in self.root_vectors:
                    raise RootActionError(
                        f"given generator {j} does not sit in a root space")
                self.root_vectors[key] = vec
        # coordinates of each root over the simple roots: key = A . c
        amat = [[ONE * self.A[i][j] for j in range(self.rank)]
                for i in range(self.rank)]
        self.coords = {}
        for key in self.root_vectors:
            c = solve(amat, [ONE * k for k in key])
            coords = tuple(int(x.as_fraction()) for x in c)
            if any(x.as_fraction().denominator != 1 for x in c):
                raise RootActionError(f"root {key} has fractional coordinates")
            self.coords[key] = coords
        self.by_coords = {v: k for k, v in self.coords.items()}
        # normalized-form gram on the coroot basis and pairings of roots
        self.gram = [[lie.pair(ha, hb) for hb in cartan] for ha in cartan]

    def root_pair(self, key1, key2):
        """(alpha|beta) through the invariant form."""
        x = solve(self.gram, [ONE * k for k in key2])
        out = ZERO
        for i, k in enumerate(key1):
            out = out + (ONE * k) * x[i]
        return out.as_fraction()

    def highest_root(self):
        best = None
        for key, c in self.coords.items():
            h = sum(c)
            if best is None or h > best[0]:
                best = (h, key)
        return best[1]

    def identify_root_vector(self, vec):
        """(key, ok): the root whose space contains vec, requiring a pure
        root vector (simultaneous eigenvector of the Cartan)."""
        vals = []
        for h in self.cartan:
            w = self.lie.bracket(h, vec)
            lam = None
            for idx, coeff in vec.items():
                if not coeff.is_zero():
                    lam = w.get(idx, ZERO) / coeff
                    break
            if lam is None:
                return None
            if vec_add(w, vec, -lam):
                return None
            if not lam.is_rational():
                return None
            f = lam.as_fraction()
            if f.denominator != 1:
                return None
            vals.append(int(f))
        key = tuple(vals)
        return key if key in self.root_vectors else None


# ---------------------------------------------------------------------------
# the affine root system
# ---------------------------------------------------------------------------

class AffineRootSystem:
    def __init__(self, finite):
        self.finite = finite
        l = finite.rank
        theta = finite.highest_root()
        self.theta = theta
        tt = finite.root_pair(theta, theta)
        a = [[0] * (l + 1) for _ in range(l + 1)]
        for i in range(l):
            for j in range(l):
                a[i + 1][j + 1] = finite.A[i][j]
        simple_keys = [tuple(finite.A[i][j] for i in range(l))
                       for j in range(l)]
        for j in range(l):
            aj = simple_keys[j]
            a[0][j + 1] = int(Fraction(-2) * finite.root_pair(theta, aj) / tt)
            jj = finite.root_pair(aj, aj)
            a[j + 1][0] = int(Fraction(-2) * finite.root_pair(aj, theta) / jj)
        a[0][0] = 2
        self.cartan = a
        marks = [1] + list(finite.coords[theta])
        self.marks = marks
        self.rank = l + 1
        self.labels = [f"alpha{i}" for i in range(l + 1)]
        # null vector sanity: A . marks = 0
        for i in range(l + 1):
            if sum(a[i][j] * marks[j] for j in range(l + 1)) != 0:
                raise RootActionError("marks vector is not a null vector")
        # affine gram (alpha_0 pairs like -theta; delta is isotropic)
        b = [[Fraction(0)] * (l + 1) for _ in range(l + 1)]
        for i in range(l):
            for j in range(l):
                b[i + 1][j + 1] = finite.root_pair(simple_keys[i], simple_keys[j])
        for j in range(l):
            v = -finite.root_pair(theta, simple_keys[j])
            b[0][j + 1] = v
            b[j + 1][0] = v
        b[0][0] = tt
        self.gram = b

    def reflection_matrix(self, i):
        l1 = self.rank
        m = [[1 if r == c else 0 for c in range(l1)] for r in range(l1)]
        for j in range(l1):
            m[i][j] -= self.cartan[i][j]
        return m

    def diagram_automorphisms(self):
        l1 = self.rank
        auts = []
        for perm in permutations(range(l1)):
            if all(self.cartan[perm[i]][perm[j]] == self.cartan[i][j]
                   for i in range(l1) for j in range(l1)):
                auts.append(perm)
        return auts

    @staticmethod
    def perm_matrix(perm):
        n = len(perm)
        m = [[0] * n for _ in range(n)]
        for j in range(n):
            m[perm[j]][j] = 1
        return m


def mat_mul_int(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec_int(m, v):
    return [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m))]


class RootAut:
    """Integer matrix in the affine simple-root basis (columns = images)."""

    def __init__(self, rs, matrix):
        self.rs = rs
        self.matrix = matrix

    @classmethod
    def from_images(cls, rs, images):
        n = rs.rank
        m = [[images[j][i] for j in range(n)] for i in range(n)]
        return cls(rs, m)

    def image(self, j):
        return tuple(self.matrix[i][j] for i in range(self.rs.rank))

    def fixes_delta(self):
        return mat_vec_int(self.matrix, self.rs.marks) == list(self.rs.marks)

    def preserves_form(self):
        b = self.rs.gram
        n = self.rs.rank
        mt = self.matrix
        for i in range(n):
            for j in range(n):
                lhs = sum(mt[r][i] * b[r][c] * mt[c][j]
                          for r in range(n) for c in range(n))
                if lhs != b[i][j]:
                    return False
        return True

    def compose(self, other):
        return RootAut(self.rs, mat_mul_int(self.matrix, other.matrix))

    def __eq__(self, other):
        return self.matrix == other.matrix


def word_action(rs, word, diagram_perm=None):
    """Matrix of r_{word[0]} o r_{word[1]} o ... o diagram_perm."""
    n = rs.rank
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if diagram_perm is not None:
        m = rs.perm_matrix(diagram_perm)
    for i in reversed(word):
        m = mat_mul_int(rs.reflection_matrix(i), m)
    return RootAut(rs, m)


def factorize_aut(rs, f, max_steps=1000):
    """f = (Weyl word) o (diagram automorphism), verified by recomposition.

    The word comes from greedy descent: repeatedly peel a simple reflection
    whose simple root is sent negative.  It need not match any particular
    printed word, only the action.
    """
    if not f.fixes_delta():
        raise FactorizationError("automorphism does not fix the null root")
    n = rs.rank
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for perm in rs.diagram_automorphisms():
        inv = [0] * n
        for j, p in enumerate(perm):
            inv[p] = j
        g = mat_mul_int(f.matrix, rs.perm_matrix(tuple(inv)))
        letters = []
        ok = True
        for _ in range(max_steps):
            if g == ident:
                break
            pick = None
            for i in range(n):
                col = [g[r][i] for r in range(n)]
                if all(x <= 0 for x in col) and any(x < 0 for x in col):
                    pick = i
                    break
            if pick is None:
                ok = False
                break
            g = mat_mul_int(g, rs.reflection_matrix(pick))
            letters.append(pick)
        else:
            ok = False
        if ok and g == ident:
            word = list(reversed(letters))
            cand = word_action(rs, word, perm)
            if cand == f:
                return word, perm
            raise FactorizationError("recomposition failed after descent")
    raise FactorizationError(
        "no Weyl-word factorization; the automorphism may need the "
        "Chevalley involution", needs_chevalley_involution=True)


def thin_covering_shape(rs, diagram_perm, labels):
    """TWO_COPIES when the diagram automorphism moves the weight labels."""
    if len(labels) != rs.rank:
        raise RootActionError(f"need {rs.rank} weight labels")
    if any(x < 0 for x in labels):
        raise RootActionError("weight labels must be dominant (nonnegative)")
    permuted = [0] * rs.rank
    for i in range(rs.rank):
        permuted[diagram_perm[i]] = labels[i]
    return "TWO_COPIES" if permuted != list(labels) else "EIGENSPLIT"


# ---------------------------------------------------------------------------
# untwisting and the induced action
# ---------------------------------------------------------------------------

class UntwistTheta:
    """Degree-shift isomorphism onto the inner-twisted loop algebra.

    Built from sigma_0 = exp(2 pi i t ad h): a root vector of root beta
    shifts its t0 exponent (scaled by m0) by m0 * t * beta(h); Cartan
    elements pick up the delta_{j,0} * t * alpha(h) central correction, and
    the canonical central element is fixed.
    """

    def __init__(self, finite, h_vec, t, m0):
        self.finite = finite
        self.h = h_vec
        self.t = Fraction(t)
        self.m0 = m0
        self._shift_cache = {}

    def scaled_shift(self, root_key):
        if root_key not in self._shift_cache:
            val = ZERO
            vec = self.finite.root_vectors[root_key]
            w = self.finite.lie.bracket(self.h, vec)
            for idx, coeff in vec.items():
                if not coeff.is_zero():
                    val = w.get(idx, ZERO) / coeff
                    break
            f = val.as_fraction()
            s = self.m0 * self.t * f
            if s.denominator != 1:
                raise RootActionError(
                    f"shift {s} for root {root_key} is not integral at scale {self.m0}")
            self._shift_cache[root_key] = int(s)
        return self._shift_cache[root_key]

    def apply_root_vector(self, j_scaled, root_key):
        return j_scaled + self.scaled_shift(root_key)

    def unapply_root_vector(self, j_scaled, root_key):
        return j_scaled - self.scaled_shift(root_key)

    def cartan_correction(self, j_scaled, alpha_key):
        """C_aff coefficient added to t0^j h_alpha (nonzero only at j = 0)."""
        if j_scaled != 0:
            return Fraction(0)
        vec = self.finite.root_vectors[alpha_key]
        w = self.finite.lie.bracket(self.h, vec)
        for idx, coeff in vec.items():
            if not coeff.is_zero():
                return self.t * (w.get(idx, ZERO) / coeff).as_fraction()
        return Fraction(0)


def induced_root_action(rs, theta, sigma):
    """theta^{-1} sigma theta on the affine Chevalley generators.

    Returns (RootAut, chevalley images) where the images record, for each
    affine node, the scaled t0 exponent and the g-vector of the image.
    """
    finite = rs.finite
    lie = finite.lie
    # the Cartan must be normalized by sigma
    from .linalg import SparseSpan
    span = SparseSpan()
    for h in finite.cartan:
        span.add(h)
    for h in finite.cartan:
        if not span.contains(sigma.apply(h)):
            raise RootActionError("automorphism does not normalize the Cartan")

    l = finite.rank
    simple_keys = [tuple(finite.A[i][j] for i in range(l)) for j in range(l)]
    theta_key = finite.highest_root()
    minus_theta = tuple(-k for k in theta_key)
    gens = [(theta.m0, finite.root_vectors[minus_theta], minus_theta)]
    for j in range(l):
        gens.append((0, finite.root_vectors[simple_keys[j]], simple_keys[j]))

    images = []
    chev = []
    for node, (j0, vec, key) in enumerate(gens):
        j1 = theta.apply_root_vector(j0, key)
        w = sigma.apply(vec)
        key2 = finite.identify_root_vector(w)
        if key2 is None:
            raise RootActionError(
                f"image of node {node} is not a pure root vector")
        j2 = theta.unapply_root_vector(j1, key2)
        if j2 % theta.m0 != 0:
            raise RootActionError(
                f"image of node {node} has fractional loop degree {j2}/{theta.m0}")
        nd = j2 // theta.m0
        coords = [nd * m for m in rs.marks]
        fin = finite.coords[key2]
        for i in range(l):
            coords[i + 1] += fin[i]
        images.append(tuple(coords))
        chev.append({"node": node, "t0_scaled": j2, "vector": w})
    aut = RootAut.from_images(rs, images)
    if not aut.fixes_delta():
        raise RootActionError("induced action does not fix the null root")
    return aut, chev


def identity_root_aut(rs):
    n = rs.rank
    return RootAut(rs, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def example_affine_pipeline(name):
    """Full wiring for one of the packaged examples.

    Certifies the inner exponential realization first, then computes the
    conjugated action on the affine generators and its factorization.
    """
    from .liestruct import exp_ad_rational
    from .so_examples import EXAMPLES

    ex = EXAMPLES[name]()
    lie = ex["lie"]
    realized = exp_ad_rational(lie, ex["exp_h"], ex["exp_t"])
    if realized != ex["sigma0"]:
        raise RootActionError(
            "exponential realization does not reproduce the sign automorphism")
    finite = FiniteRootData(lie, ex["cartan"], ex["cartan_matrix"],
                            simple_e=ex["e"], simple_f=ex["f"])
    rs = AffineRootSystem(finite)
    theta = UntwistTheta(finite, ex["exp_h"], ex["exp_t"], ex["m0"])
    aut, chev = induced_root_action(rs, theta, ex["sigma1"])
    word, perm = factorize_aut(rs, aut)
    return {
        "example": ex,
        "finite": finite,
        "rs": rs,
        "theta": theta,
        "aut": aut,
        "chevalley_images": chev,
        "word": word,
        "diagram_perm": perm,
    }
