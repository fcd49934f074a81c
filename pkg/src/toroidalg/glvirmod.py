"""The twisted gl_N-Virasoro algebra, its traceless-part subalgebra, and
truncated highest weight modules with prescribed central character.

Generators are mode keys: ("L", n) for the Virasoro part, ("E", i, j, n)
for matrix loops, ("S", a, n) for a fixed traceless basis in the reduced
variant, and ("C", tag) for the four central elements.  Modules are
Verma-type: PBW monomials in strictly negative modes applied to a highest
weight line on which mode zero acts by a character (diagonal matrix
entries all equal, off-diagonal zero -- the character must kill brackets
of mode-zero elements, which forces exactly that shape).  Relations are
applied on the fly by straightening, so every bracket identity holds on
the truncation by construction; the irreducible quotient is never formed.
"""

from fractions import Fraction

from .cycfield import Cyc

ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


class TruncationOverflow(RuntimeError):
    """A creation operator pushed past the configured depth window."""


def _rat(x):
    return Cyc.rational(Fraction(x))


# ---------------------------------------------------------------------------
# brackets of the mode algebras
# ---------------------------------------------------------------------------

def glvir_bracket(k1, k2, nmat):
    """Formal bracket; central generators appear as ("C", tag) terms."""
    out = {}

    def add(key, val):
        if not val.is_zero():
            s = out.get(key, ZERO) + val
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s

    t1, t2 = k1[0], k2[0]
    if t1 == "C" or t2 == "C":
        return out
    if t1 == "L" and t2 == "L":
        n, m = k1[1], k2[1]
        add(("L", n + m), _rat(n - m))
        if n + m == 0:
            add(("C", "vir"), _rat(Fraction(n ** 3 - n, 12)))
    elif t1 == "L" and t2 == "E":
        n, (i, j, m) = k1[1], k2[1:]
        add(("E", i, j, n + m), _rat(-m))
        if n + m == 0 and i == j:
            add(("C", "vh"), _rat(-Fraction(n * n + n, nmat)))
    elif t1 == "E" and t2 == "L":
        for key, val in glvir_bracket(k2, k1, nmat).items():
            add(key, -val)
    else:
        i, j, n = k1[1:]
        k, l, m = k2[1:]
        if j == k:
            add(("E", i, l, n + m), ONE)
        if l == i:
            add(("E", k, j, n + m), -ONE)
        if n + m == 0 and n != 0:
            tr_psi1 = Fraction(int(j == k) * int(i == l)) \
                - Fraction(int(i == j) * int(k == l), nmat)
            psi2 = Fraction(int(i == j) * int(k == l), nmat * nmat)
            add(("C", "sl"), _rat(n * tr_psi1))
            add(("C", "heis"), _rat(n * psi2))
    return out


class GlVirAlgebra:
    """Mode algebra for the full matrix-loop + Virasoro extension."""

    def __init__(self, nmat, charges, hw):
        self.nmat = nmat
        self.charges = dict(charges)    # tags sl, heis, vir, vh -> Cyc
        self.hw = dict(hw)              # "L0", "E0" -> Cyc

    def energy(self, g):
        """Grade raise of the generator: positive for creation modes."""
        return -g[-1]

    def creation_gens(self, e):
        gens = [("L", -e)]
        for i in range(1, self.nmat + 1):
            for j in range(1, self.nmat + 1):
                gens.append(("E", i, j, -e))
        return gens

    def bracket(self, g1, g2):
        terms = []
        scalar = ZERO
        for key, val in glvir_bracket(g1, g2, self.nmat).items():
            if key[0] == "C":
                scalar = scalar + val * self.charges[key[1]]
            else:
                terms.append((key, val))
        return terms, scalar

    def vacuum(self, g):
        if g[0] == "L":
            return self.hw.get("L0", ZERO)
        _, i, j, _n = g
        return self.hw.get("E0", ZERO) if i == j else ZERO


class SlVirAlgebra:
    """Virasoro + traceless matrix loops; the trace-coupled centres drop out."""

    def __init__(self, nmat, charges, hw, sl_basis=None):
        self.nmat = nmat
        self.charges = dict(charges)    # tags sl, vir
        self.hw = dict(hw)
        if sl_basis is None:
            sl_basis = []
            for i in range(1, nmat + 1):
                for j in range(1, nmat + 1):
                    if i != j:
                        sl_basis.append({(i, j): Fraction(1)})
            for i in range(1, nmat):
                sl_basis.append({(i, i): Fraction(1), (i + 1, i + 1): Fraction(-1)})
        self.sl_basis = sl_basis

    def energy(self, g):
        return -g[-1]

    def creation_gens(self, e):
        gens = [("L", -e)]
        for a in range(len(self.sl_basis)):
            gens.append(("S", a, -e))
        return gens

    def _mat_mul(self, u, v):
        out = {}
        for (i, j), a in u.items():
            for (k, l), b in v.items():
                if j == k:
                    out[(i, l)] = out.get((i, l), Fraction(0)) + a * b
        return {k: v for k, v in out.items() if v}

    def _expand_sl(self, mat):
        """Coefficients of a traceless matrix over the chosen basis."""
        entries = sorted({k for b in self.sl_basis for k in b} | set(mat))
        rows = [[Cyc.rational(b.get(e, Fraction(0))) for b in self.sl_basis]
                for e in entries]
        rhs = [Cyc.rational(mat.get(e, Fraction(0))) for e in entries]
        from .linalg import solve
        sol = solve(rows, rhs)
        if sol is None:
            raise ValueError("matrix is not in the traceless span")
        return sol

    def bracket(self, g1, g2):
        if g1[0] == "L" and g2[0] == "L":
            n, m = g1[1], g2[1]
            scalar = ZERO
            if n + m == 0:
                scalar = _rat(Fraction(n ** 3 - n, 12)) * self.charges["vir"]
            return [(("L", n + m), _rat(n - m))], scalar
        if g1[0] == "L" and g2[0] == "S":
            n, (a, m) = g1[1], g2[1:]
            return [(("S", a, n + m), _rat(-m))], ZERO
        if g1[0] == "S" and g2[0] == "L":
            terms, scalar = self.bracket(g2, g1)
            return [(k, -v) for k, v in terms], -scalar
        a, n = g1[1:]
        b, m = g2[1:]
        u, v = self.sl_basis[a], self.sl_basis[b]
        comm = {}
        for k, val in self._mat_mul(u, v).items():
            comm[k] = comm.get(k, Fraction(0)) + val
        for k, val in self._mat_mul(v, u).items():
            comm[k] = comm.get(k, Fraction(0)) - val
        comm = {k: v for k, v in comm.items() if v}
        terms = []
        if comm:
            sol = self._expand_sl(comm)
            for c, coeff in enumerate(sol):
                if not coeff.is_zero():
                    terms.append((("S", c, n + m), coeff))
        scalar = ZERO
        if n + m == 0 and n != 0:
            tr = Fraction(0)
            for (i, j), x in self._mat_mul(u, v).items():
                if i == j:
                    tr += x
            scalar = _rat(n * tr) * self.charges["sl"]
        return terms, scalar

    def vacuum(self, g):
        if g[0] == "L":
            return self.hw.get("L0", ZERO)
        return ZERO


# ---------------------------------------------------------------------------
# the truncated Verma engine
# ---------------------------------------------------------------------------

class TruncModule:
    """PBW monomials in negative modes up to a depth bound, with the mode
    algebra's relations applied during every action."""

    def __init__(self, modelie, depth):
        self.alg = modelie
        self.depth = depth
        self._memo = {}

    def mono_depth(self, mono):
        return sum(self.alg.energy(g) for g in mono)

    def act(self, g, mono):
        key = (g, mono)
        if key in self._memo:
            return self._memo[key]
        e = self.alg.energy(g)
        if e > 0 and self.mono_depth(mono) + e > self.depth:
            raise TruncationOverflow(
                f"depth {self.mono_depth(mono) + e} exceeds window {self.depth}")
        if not mono:
            if e > 0:
                out = {(g,): ONE}
            elif e < 0:
                out = {}
            else:
                c = self.alg.vacuum(g)
                out = {(): c} if not c.is_zero() else {}
            self._memo[key] = out
            return out
        h, rest = mono[0], mono[1:]
        if e > 0 and g <= h:
            out = {(g,) + mono: ONE}
            self._memo[key] = out
            return out
        out = {}
        for m2, c2 in self.act(g, rest).items():
            for m3, c3 in self.act(h, m2).items():
                self._add(out, m3, c2 * c3)
        terms, scalar = self.alg.bracket(g, h)
        for b, cb in terms:
            for m3, c3 in self.act(b, rest).items():
                self._add(out, m3, cb * c3)
        if not scalar.is_zero():
            self._add(out, rest, scalar)
        self._memo[key] = out
        return out

    @staticmethod
    def _add(acc, k, v):
        if v.is_zero():
            return
        s = acc.get(k, ZERO) + v
        if s.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = s

    def apply(self, g, vec):
        out = {}
        for mono, c in vec.items():
            for m2, c2 in self.act(g, mono).items():
                self._add(out, m2, c * c2)
        return out

    def basis(self, depth=None):
        """All PBW monomials with depth <= bound, lexicographically stable."""
        bound = self.depth if depth is None else depth
        result = [()]

        def extend(prefix, min_gen, remaining):
            for e in range(1, remaining + 1):
                for g in sorted(self.alg.creation_gens(e)):
                    if min_gen is not None and g < min_gen:
                        continue
                    mono = prefix + (g,)
                    result.append(mono)
                    extend(mono, g, remaining - e)

        extend((), None, bound)
        return sorted(set(result), key=lambda m: (self.mono_depth(m), m))


def toroidal_charges(nmat, c, mu, nu, dim_g, h_dual):
    """Central character of the full toroidal module construction."""
    c, mu, nu = Fraction(c), Fraction(mu), Fraction(nu)
    return {
        "sl": _rat(1 - mu * c),
        "heis": _rat(nmat * (1 - mu * c) - nmat * nmat * nu * c),
        "vh": _rat(nmat * (Fraction(1, 2) - nu * c)),
        "vir": _rat(12 * c * (mu + nu) - 2 * nmat
                    - c * dim_g / (c + Fraction(h_dual))),
    }


def eala_charges(nmat, c, mu, dim_g, h_dual):
    """Central character of the divergence-zero (EALA) construction."""
    c, mu = Fraction(c), Fraction(mu)
    return {
        "sl": _rat(1 - mu * c),
        "vir": _rat(12 * (1 - Fraction(1, nmat))
                    + 12 * mu * c * (1 + Fraction(1, nmat))
                    - 2 * nmat - c * dim_g / (c + Fraction(h_dual))),
    }


def build_hw_module(hw, charges, depth, nmat=1, reduced=False):
    alg = SlVirAlgebra(nmat, charges, hw) if reduced else \
        GlVirAlgebra(nmat, charges, hw)
    return TruncModule(alg, depth)
