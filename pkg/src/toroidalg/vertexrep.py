"""Degree-truncated realization of the toroidal module: lattice-Fock
operators, the twisted affine factor, the matrix-loop/Virasoro factor, and
the exact commutator-versus-bracket verifier.

The module is a sparse span of keys (q exponent, u multiset, v multiset,
affine-factor monomial, matrix-loop-factor monomial).  Every Lie-algebra
monomial t0^j t^r (payload) is represented by one mode of an explicit
field; the mode of a field of conformal weight h at z-power e shifts the
scaled energy by exactly e + h*m0, so a term at loop degree j shifts
energy by exactly -j and window bookkeeping is a per-term range check.
z-powers are scaled integers (denominator m0), as are all mode indices of
the twisted factor.  Normal ordering splits a twisted field at its coset
representative in [0, 1); untwisted fields split at zero.
"""

from fractions import Fraction

from .cycfield import Cyc
from .glvirmod import (
    GlVirAlgebra, SlVirAlgebra, TruncModule, TruncationOverflow,
    eala_charges, toroidal_charges,
)
from .linalg import SparseSpan, solve
from .toroidal import ALG, D, K, add_into, elt_add, elt_scale, validate

ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


class AssemblyError(RuntimeError):
    pass


def _rat(x):
    return Cyc.rational(Fraction(x))


class AffineModes:
    """Mode algebra of the twisted affine factor at a fixed level."""

    def __init__(self, torctx, level_c):
        self.ctx = torctx
        self.c = Fraction(level_c)
        self.m0 = torctx.m0

    def energy(self, g):
        return -g[2]

    def coset0(self, gidx):
        return self.ctx.gcoset[gidx][0]

    def creation_gens(self, e):
        out = []
        for gidx in range(len(self.ctx.gbasis)):
            if (-e) % self.m0 == self.coset0(gidx) % self.m0:
                out.append(("w", gidx, -e))
        return out

    def bracket(self, g1, g2):
        _, i1, n1 = g1
        _, i2, n2 = g2
        terms = [(("w", idx, n1 + n2), coeff)
                 for idx, coeff in self.ctx.gb_bracket(i1, i2)]
        scalar = ZERO
        if n1 + n2 == 0:
            pairing = self.ctx.gb_pair(i1, i2)
            if not pairing.is_zero():
                scalar = _rat(Fraction(n1, self.m0) * self.c) * pairing
        return terms, scalar

    def vacuum(self, g):
        return ZERO


def fock_weight(ms):
    return sum(j for (_p, j) in ms)


def ms_add(ms, extra):
    return tuple(sorted(ms + extra))


def ms_remove(ms, sub):
    """Remove a multiset; returns (remaining, falling-factorial count)."""
    items = list(ms)
    count = 1
    for x in sub:
        n = items.count(x)
        if n == 0:
            return None, 0
        count *= n
        items.remove(x)
    return tuple(items), count


def _multisets_of_weight(nvars, weight, max_part=None):
    """All multisets of pairs (p, j), p in 1..nvars, sum of j = weight."""
    if max_part is None:
        max_part = weight
    if weight == 0:
        return [()]
    out = []
    for j in range(min(weight, max_part), 0, -1):
        for p in range(1, nvars + 1):
            for rest in _multisets_of_weight(nvars, weight - j, j):
                cand = ((p, j),) + rest
                if all(cand[k] >= cand[k + 1] for k in range(len(cand) - 1)):
                    out.append(cand)
    return [tuple(sorted(m)) for m in set(out)]


class RepContext:
    """Everything needed to act: the Lie side, both engine factors, charges,
    the depth window, and the assembly flavour."""

    def __init__(self, torctx, level_c, depth, assembly="toroidal",
                 shape="TWO_COPIES", hw_affine=None, hw_gl=None, margin=3):
        self.ctx = torctx
        self.c = Fraction(level_c)
        if self.c == 0 or self.c == -torctx.lie.dual_coxeter:
            raise AssemblyError("level must be nonzero and non-critical")
        self.depth = depth
        self.m0 = torctx.m0
        self.N = torctx.nvars - 1
        self.assembly = assembly
        self.shape = shape
        self.hard = (depth + margin) * self.m0
        self.wmod = TruncModule(AffineModes(torctx, level_c), self.hard)
        dim_g = torctx.lie.dim
        hd = torctx.lie.dual_coxeter
        if assembly == "toroidal":
            charges = toroidal_charges(self.N, level_c, torctx.mu, torctx.nu,
                                       dim_g, hd)
            alg = GlVirAlgebra(self.N, charges, hw_gl or {})
        elif assembly == "eala":
            charges = eala_charges(self.N, level_c, torctx.mu, dim_g, hd)
            alg = SlVirAlgebra(self.N, charges, hw_gl or {})
        else:
            raise AssemblyError(f"unknown assembly {assembly!r}")
        self.charges = charges
        self.glmod = TruncModule(alg, depth + margin)
        self.hw_gl = hw_gl or {}
        self._duals = None
        self._psi1 = {}

    # -- keys ---------------------------------------------------------------

    def vacuum_key(self):
        return (tuple([0] * self.N), (), (), (), ())

    def key_energy(self, key):
        _q, u, v, w, gl = key
        return self.m0 * (fock_weight(u) + fock_weight(v)) \
            + self.wmod.mono_depth(w) + self.m0 * self.glmod.mono_depth(gl)

    def wsign(self, key):
        """Sign of the order-2 grading automorphism on the affine factor."""
        s = 1
        for (_w, gidx, _n) in key[3]:
            if self.ctx.gcoset[gidx][1] % 2:
                s = -s
        return s

    def key_valid(self, key):
        if self.key_energy(key) > self.depth * self.m0:
            return False
        if self.assembly == "eala" or self.shape == "TWO_COPIES":
            return True
        return self.wsign(key) == (1 if key[0][0] % 2 == 0 else -1)

    # -- dual bases for the twisted Sugawara ---------------------------------

    def dual_pairs(self):
        """List of (idx, [(dual idx, coeff)], scaled coset representative)."""
        if self._duals is not None:
            return self._duals
        ctx = self.ctx
        out = []
        cosets = sorted({c for c in ctx.gcoset})
        for coset in cosets:
            neg = tuple((-x) % m for x, m in zip(coset, ctx.grading.lattice_orders))
            block = [i for i, c in enumerate(ctx.gcoset) if c == coset]
            oblock = [i for i, c in enumerate(ctx.gcoset) if c == neg]
            gram = [[ctx.gb_pair(a, b) for b in oblock] for a in block]
            from .linalg import mat_inv
            ginv = mat_inv(gram)
            for col, a in enumerate(block):
                dual = [(oblock[rowi], ginv[rowi][col])
                        for rowi in range(len(oblock))
                        if not ginv[rowi][col].is_zero()]
                out.append((a, dual, coset[0] % self.m0))
        self._duals = out
        return out

    def psi1_terms(self, p, l):
        """Traceless projection of a matrix unit over the reduced basis."""
        if (p, l) in self._psi1:
            return self._psi1[(p, l)]
        alg = self.glmod.alg
        mat = {(p, l): Fraction(1)}
        if p == l:
            for q in range(1, self.N + 1):
                mat[(q, q)] = mat.get((q, q), Fraction(0)) - Fraction(1, self.N)
        mat = {k: v for k, v in mat.items() if v}
        if not mat:
            terms = []
        else:
            sol = alg._expand_sl(mat)
            terms = [(a, coeff) for a, coeff in enumerate(sol)
                     if not coeff.is_zero()]
        self._psi1[(p, l)] = terms
        return terms

    # -- primitive mode actions on a single key -------------------------------

    def _prim(self, prim, key, coeff, out):
        kind = prim[0]
        q, u, v, w, gl = key
        if kind == "k0":
            _, r, e = prim
            if e % self.m0:
                return
            self._k0(r, e // self.m0, key, coeff, out)
        elif kind == "ka":
            _, a, e = prim
            if e % self.m0:
                return
            eu = e // self.m0
            if eu >= 0:
                j = eu + 1
                add_into(out, (q, ms_add(u, ((a, j),)), v, w, gl),
                         coeff * _rat(j))
            elif eu <= -2:
                j = -eu - 1
                rest, cnt = ms_remove(v, ((a, j),))
                if cnt:
                    add_into(out, (q, u, rest, w, gl), coeff * _rat(cnt))
        elif kind == "da":
            _, a, e = prim
            if e % self.m0:
                return
            eu = e // self.m0
            if eu >= 0:
                j = eu + 1
                add_into(out, (q, u, ms_add(v, ((a, j),)), w, gl),
                         coeff * _rat(j))
            elif eu == -1:
                if q[a - 1]:
                    add_into(out, key, coeff * _rat(q[a - 1]))
            else:
                j = -eu - 1
                rest, cnt = ms_remove(u, ((a, j),))
                if cnt:
                    add_into(out, (q, rest, v, w, gl), coeff * _rat(cnt))
        elif kind == "w":
            _, gidx, n = prim
            for m2, c2 in self.wmod.act(("w", gidx, n), w).items():
                add_into(out, (q, u, v, m2, gl), coeff * c2)
        elif kind == "gl":
            _, gen = prim
            for m2, c2 in self.glmod.act(gen, gl).items():
                add_into(out, (q, u, v, w, m2), coeff * c2)
        elif kind == "id":
            add_into(out, key, coeff)
        else:
            raise AssemblyError(f"unknown primitive {prim!r}")

    def _k0(self, r, eu, key, coeff, out):
        """[z^eu] of the lattice vertex operator for q^r (unscaled power)."""
        q, u, v, w, gl = key
        if all(x == 0 for x in r):
            if eu == 0:
                add_into(out, key, coeff)
            return
        newq = tuple(a + b for a, b in zip(q, r))
        budget = self.hard // self.m0 - (self.key_energy(key) // self.m0)
        # v-derivative multisets drawn from what the key carries
        for bsub in _submultisets(v):
            b = fock_weight(bsub)
            a = eu + b
            if a < 0:
                continue
            rest_v, cnt = ms_remove(v, bsub)
            cv = _rat(cnt)
            for (p, j) in bsub:
                cv = cv * _rat(Fraction(-r[p - 1], j))
            cv = cv / _rat(_ms_factorial(bsub))
            if cv.is_zero():
                continue
            if a - b > budget:
                raise TruncationOverflow("lattice operator exceeds the window")
            for asub in _multisets_of_weight(self.N, a):
                ca = ONE
                for (p, j) in asub:
                    ca = ca * _rat(r[p - 1])
                ca = ca / _rat(_ms_factorial(asub))
                if ca.is_zero():
                    continue
                add_into(out, (newq, ms_add(u, asub), rest_v, w, gl),
                         coeff * cv * ca)

    def apply_chain(self, chain, vec):
        """Compose primitives right-to-left over a sparse vector."""
        cur = vec
        for prim in reversed(chain):
            nxt = {}
            for key, coeff in cur.items():
                self._prim(prim, key, coeff, nxt)
            cur = nxt
            if not cur:
                break
        return cur

    def apply_terms(self, terms, vec):
        out = {}
        for coeff, chain in terms:
            if coeff.is_zero():
                continue
            for key, val in self.apply_chain(chain, vec).items():
                add_into(out, key, coeff * val)
        return out


def _submultisets(ms):
    if not ms:
        return [()]
    # group equal entries to avoid duplicates
    from collections import Counter
    items = sorted(Counter(ms).items())

    def rec(i):
        if i == len(items):
            return [()]
        x, n = items[i]
        tails = rec(i + 1)
        out = []
        for k in range(n + 1):
            for t in tails:
                out.append(((x,) * k) + t)
        return out

    return [tuple(sorted(m)) for m in rec(0)]


def _ms_factorial(ms):
    from collections import Counter
    from math import factorial
    out = 1
    for _x, n in Counter(ms).items():
        out *= factorial(n)
    return out


# ---------------------------------------------------------------------------
# field mode terms: list of (coeff, [primitive chain]) per z-power
# ---------------------------------------------------------------------------

def _erange(rc, weight):
    """Scaled z-powers a single factor can need inside the hard window."""
    lo = -(rc.hard + weight * rc.m0 + rc.m0)
    hi = rc.hard + rc.m0
    return range(lo, hi + 1)


def mode_K0(rc, r, e):
    return [(ONE, [("k0", r, e)])]


def mode_Ka(rc, a, r, e):
    out = []
    for e1 in _erange(rc, 1):
        e2 = e - e1
        if e1 % rc.m0 or e2 % rc.m0:
            continue
        if e1 // rc.m0 == -1:
            continue
        out.append((ONE, [("ka", a, e1), ("k0", r, e2)]))
    return out


def mode_X(rc, gidx, r, e):
    a0 = rc.ctx.gcoset[gidx][0] % rc.m0
    out = []
    for e1 in _erange(rc, 1):
        if (e1 + a0 + rc.m0) % rc.m0:
            continue
        e2 = e - e1
        if e2 % rc.m0:
            continue
        n1 = -e1 - rc.m0
        out.append((ONE, [("w", gidx, n1), ("k0", r, e2)]))
    return out


def mode_DaK0(rc, a, r, e):
    out = []
    for e1 in _erange(rc, 1):
        e2 = e - e1
        if e1 % rc.m0 or e2 % rc.m0:
            continue
        if e1 >= 0:
            out.append((ONE, [("da", a, e1), ("k0", r, e2)]))
        else:
            out.append((ONE, [("k0", r, e2), ("da", a, e1)]))
    return out


def mode_EK0(rc, i, j, r, e):
    out = []
    for e1 in _erange(rc, 1):
        e2 = e - e1
        if e1 % rc.m0 or e2 % rc.m0:
            continue
        n = -e1 // rc.m0 - 1
        out.append((ONE, [("gl", ("E", i, j, n)), ("k0", r, e2)]))
    return out


def mode_omega_hyp(rc, e):
    out = []
    for p in range(1, rc.N + 1):
        for e1 in _erange(rc, 1):
            e2 = e - e1
            if e1 % rc.m0 or e2 % rc.m0:
                continue
            if e1 >= 0:
                out.append((ONE, [("ka", p, e1), ("da", p, e2)]))
            else:
                out.append((ONE, [("da", p, e2), ("ka", p, e1)]))
    return out


def mode_omega_gl(rc, e):
    if e % rc.m0:
        return []
    n = -e // rc.m0 - 2
    return [(ONE, [("gl", ("L", n))])]


def mode_sugawara(rc, e):
    """The twisted affine Virasoro field, written with homogeneous dual
    bases, the coset-representative linear correction, and the scalar
    binomial term."""
    pref = _rat(1 / (2 * (rc.c + rc.ctx.lie.dual_coxeter)))
    out = []
    for idx, dual, a0 in rc.dual_pairs():
        for e1 in _erange(rc, 1):
            if (e1 + a0 + rc.m0) % rc.m0:
                continue
            e2 = e - e1
            n1 = -e1 - rc.m0
            for didx, dcoeff in dual:
                if (e2 + (rc.ctx.gcoset[didx][0] % rc.m0) + rc.m0) % rc.m0:
                    continue
                n2 = -e2 - rc.m0
                if e1 >= -a0:
                    chain = [("w", idx, n1), ("w", didx, n2)]
                else:
                    chain = [("w", didx, n2), ("w", idx, n1)]
                out.append((pref * dcoeff, chain))
        # - sum_i alpha_i z^{-1} Y([x_i, x^i], z): a weight-1 field shifted
        if a0:
            alpha = Fraction(a0, rc.m0)
            for didx, dcoeff in dual:
                for bidx, bcoeff in rc.ctx.gb_bracket(idx, didx):
                    n = -(e + rc.m0) - rc.m0
                    if n % rc.m0 == rc.ctx.gcoset[bidx][0] % rc.m0:
                        out.append((-pref * _rat(alpha) * dcoeff * bcoeff,
                                    [("w", bidx, n)]))
            # - c sum_i binom(alpha_i, 2) z^{-2}
            if e == -2 * rc.m0:
                binom = alpha * (alpha - 1) / 2
                out.append((-pref * _rat(rc.c * binom), [("id",)]))
    return out


def mode_omega_sum(rc, r, e):
    """:(omega_Hyp + Y_W(omega_aff) + omega_gl) K0(r, z): at one z-power."""
    out = []
    for e1 in _erange(rc, 2):
        if e1 % rc.m0:
            continue
        e2 = e - e1
        if e2 % rc.m0:
            continue
        parts = mode_omega_hyp(rc, e1) + mode_sugawara(rc, e1) + \
            mode_omega_gl(rc, e1)
        for coeff, chain in parts:
            if e1 >= 0:
                out.append((coeff, chain + [("k0", r, e2)]))
            else:
                out.append((coeff, [("k0", r, e2)] + chain))
    return out


def mode_dKpK0(rc, p, r, e):
    out = []
    for e1 in _erange(rc, 1):
        e2 = e - e1
        if e1 % rc.m0 or e2 % rc.m0:
            continue
        factor = Fraction(e1, rc.m0) + 1
        if factor == 0 or (e1 + rc.m0) // rc.m0 == -1:
            continue
        out.append((_rat(factor), [("ka", p, e1 + rc.m0), ("k0", r, e2)]))
    return out


def mode_KEK0(rc, r, e):
    out = []
    for i in range(1, rc.N + 1):
        if r[i - 1] == 0:
            continue
        ri = _rat(r[i - 1])
        for j in range(1, rc.N + 1):
            for e1 in _erange(rc, 1):
                if e1 % rc.m0 or e1 // rc.m0 == -1:
                    continue
                for e2 in _erange(rc, 1):
                    if e2 % rc.m0:
                        continue
                    e3 = e - e1 - e2
                    if e3 % rc.m0:
                        continue
                    n = -e2 // rc.m0 - 1
                    out.append((ri, [("ka", j, e1),
                                     ("gl", ("E", i, j, n)),
                                     ("k0", r, e3)]))
    return out


def mode_dtilde_a(rc, a, r, e):
    out = list(mode_DaK0(rc, a, r, e))
    for p in range(1, rc.N + 1):
        if r[p - 1]:
            out += [(c * _rat(r[p - 1]), chain)
                    for c, chain in mode_EK0(rc, p, a, r, e)]
    return out


def mode_dtilde_0(rc, r, e):
    out = list(mode_omega_sum(rc, r, e))
    out += mode_KEK0(rc, r, e)
    muc1 = rc.ctx.mu * rc.c - 1
    if muc1:
        for p in range(1, rc.N + 1):
            if r[p - 1]:
                out += [(c * _rat(muc1 * r[p - 1]), chain)
                        for c, chain in mode_dKpK0(rc, p, r, e)]
    return out


# --- the divergence-zero field modes ----------------------------------------

def mode_psi1K(rc, p, l, s, e, weight_one=True):
    """psi_1(E_{pl})(z) K_l-or-K0(s, z) building block (reduced factor)."""
    out = []
    for a, coeff in rc.psi1_terms(p, l):
        for e1 in _erange(rc, 1):
            if e1 % rc.m0:
                continue
            e2 = e - e1
            if e2 % rc.m0:
                continue
            n = -e1 // rc.m0 - 1
            out.append((coeff, [("gl", ("S", a, n)), ("k0", s, e2)]))
    return out


def mode_psi1KaK0(rc, p, l, s, e):
    out = []
    for a, coeff in rc.psi1_terms(p, l):
        for e1 in _erange(rc, 1):
            if e1 % rc.m0 or e1 // rc.m0 == -1:
                continue
            for e2 in _erange(rc, 1):
                if e2 % rc.m0:
                    continue
                e3 = e - e1 - e2
                if e3 % rc.m0:
                    continue
                n = -e2 // rc.m0 - 1
                out.append((coeff, [("ka", l, e1),
                                    ("gl", ("S", a, n)),
                                    ("k0", s, e3)]))
    return out


def mode_dd(rc, s, a, b, e):
    out = [(c * _rat(s[b - 1]), chain) for c, chain in mode_DaK0(rc, a, s, e)]
    out += [(-c * _rat(s[a - 1]), chain) for c, chain in mode_DaK0(rc, b, s, e)]
    for p in range(1, rc.N + 1):
        if p != a and s[p - 1]:
            out += [(c * _rat(Fraction(s[b - 1]) * s[p - 1]), chain)
                    for c, chain in mode_EK0(rc, p, a, s, e)]
        if p != b and s[p - 1]:
            out += [(-c * _rat(Fraction(s[a - 1]) * s[p - 1]), chain)
                    for c, chain in mode_EK0(rc, p, b, s, e)]
    sab = Fraction(s[a - 1]) * s[b - 1]
    if sab:
        out += [(c * _rat(sab), chain)
                for c, chain in mode_EK0(rc, a, a, s, e)]
        out += [(-c * _rat(sab), chain)
                for c, chain in mode_EK0(rc, b, b, s, e)]
    return out


def mode_omega_sum_sl(rc, s, e):
    """:(omega_Hyp + omega_slVir + Y_W omega_aff) K0(s,z): -- identical to
    the full-assembly sum; the reduced engine only changes which loop
    generators exist."""
    return mode_omega_sum(rc, s, e)


def mode_dhat(rc, s, a, e):
    sa = Fraction(s[a - 1])
    out = []
    if sa:
        out += [(c * _rat(sa), chain)
                for c, chain in mode_omega_sum_sl(rc, s, e)]
        for p in range(1, rc.N + 1):
            if s[p - 1]:
                for l in range(1, rc.N + 1):
                    out += [(c * _rat(sa * s[p - 1]), chain)
                            for c, chain in mode_psi1KaK0(rc, p, l, s, e)]
        muc1 = rc.ctx.mu * rc.c - 1
        if muc1:
            for p in range(1, rc.N + 1):
                if s[p - 1]:
                    out += [(c * _rat(sa * muc1 * s[p - 1]), chain)
                            for c, chain in mode_dKpK0(rc, p, s, e)]
    # -(z^{-1} + d/dz) applied to :D_a K0: + sum_p s_p psi_1(E_pa) K0
    shift = e + rc.m0
    factor = -(1 + (Fraction(e, rc.m0) + 2))
    inner = list(mode_DaK0(rc, a, s, shift))
    for p in range(1, rc.N + 1):
        if s[p - 1]:
            inner += [(c * _rat(s[p - 1]), chain)
                      for c, chain in mode_psi1K(rc, p, a, s, shift)]
    out += [(c * _rat(factor + 0), chain) for c, chain in inner]
    return out
