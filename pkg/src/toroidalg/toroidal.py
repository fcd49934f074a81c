"""The twisted multiloop algebra with its universal central extension and
derivation algebra, as exact graded elements.

Degrees are (N+1)-tuples: the t0 exponent is stored as an integer scaled
by m0 (so t0^(s0/m0) has key s0), the remaining exponents are plain
integers.  Payloads are ALG (a vector of the graded basis of g), K (the
1-forms k_p = t_p^{-1} dt_p), or D (the derivations d_a = t_a d/dt_a).
K-parts are kept in canonical form modulo exact differentials, pivoting
on the smallest index with nonzero degree coefficient.  The bracket
implements the four clauses: loop x loop with the Kassel central term,
derivation actions on loops and on 1-forms, and derivation x derivation
twisted by tau = mu tau_1 + nu tau_2 evaluated through the Jacobian
recipe.
"""

from fractions import Fraction

from .cycfield import Cyc
from .linalg import solve, vec_add

ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)

ALG = "a"
K = "k"
D = "d"


class ToroidalMemberError(ValueError):
    pass


class ToroidalContext:
    """Fixes the algebra, its grading, lattice orders, and the cocycle."""

    def __init__(self, lie, grading, mu=0, nu=0):
        self.lie = lie
        self.grading = grading
        self.orders = grading.lattice_orders      # (m0, m1, ..., mN)
        self.m0 = self.orders[0]
        self.nvars = len(self.orders)             # N + 1
        self.mu = Fraction(mu)
        self.nu = Fraction(nu)
        # flat graded basis: list of (coset, sparse vector); diagonal sign
        # automorphisms make these single e_ij lines
        self.gbasis = []
        self.gcoset = []
        for coset in sorted(grading.components):
            for v in grading.components[coset]:
                self.gbasis.append(v)
                self.gcoset.append(coset)
        self._expand_cache = {}
        self._pair_cache = {}
        self._bracket_cache = {}

    # -- degree helpers ------------------------------------------------------

    def degree_coset(self, deg):
        t0, r = deg
        return (t0 % self.m0,) + tuple(
            r[a] % self.orders[a + 1] for a in range(self.nvars - 1))

    def in_lambda(self, deg):
        return all(c == 0 for c in self.degree_coset(deg))

    def unscaled_exponents(self, deg):
        """Actual exponents (d_p eigenvalues) as Fractions, p = 0..N."""
        t0, r = deg
        return [Fraction(t0, self.m0)] + [Fraction(x) for x in r]

    def deg_add(self, d1, d2):
        return (d1[0] + d2[0], tuple(a + b for a, b in zip(d1[1], d2[1])))

    # -- graded basis helpers --------------------------------------------------

    def expand(self, vec, coset):
        """Coefficients of a g-vector over the gbasis slice of one coset."""
        idxs = [i for i, c in enumerate(self.gcoset) if c == coset]
        key = (tuple((k, v.n, v.c) for k, v in sorted(vec.items())), coset)
        if key in self._expand_cache:
            return self._expand_cache[key]
        cols = [self.gbasis[i] for i in idxs]
        dim = self.lie.dim
        mat = [[cols[c].get(i, ZERO) for c in range(len(cols))]
               for i in range(dim)]
        rhs = [vec.get(i, ZERO) for i in range(dim)]
        x = solve(mat, rhs)
        if x is None:
            raise ToroidalMemberError("vector does not lie in the stated coset")
        out = [(idxs[c], x[c]) for c in range(len(cols)) if not x[c].is_zero()]
        self._expand_cache[key] = out
        return out

    def gb_bracket(self, i, j):
        """[gbasis_i, gbasis_j] expanded over the gbasis (cached)."""
        if (i, j) in self._bracket_cache:
            return self._bracket_cache[(i, j)]
        v = self.lie.bracket(self.gbasis[i], self.gbasis[j])
        coset = self.grading.coset_add(self.gcoset[i], self.gcoset[j])
        out = self.expand(v, coset) if v else []
        self._bracket_cache[(i, j)] = out
        return out

    def gb_pair(self, i, j):
        if (i, j) not in self._pair_cache:
            self._pair_cache[(i, j)] = self.lie.pair(self.gbasis[i],
                                                     self.gbasis[j])
        return self._pair_cache[(i, j)]


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

def term(deg, kind, idx, coeff=ONE):
    return {(deg, kind, idx): coeff if isinstance(coeff, Cyc)
            else Cyc.rational(coeff)}


def add_into(acc, key, coeff):
    if coeff.is_zero():
        return
    s = acc.get(key, ZERO) + coeff
    if s.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = s


def elt_add(x, y, c=None):
    out = dict(x)
    for k, v in y.items():
        add_into(out, k, v if c is None else c * v)
    return out


def elt_scale(x, c):
    return {k: c * v for k, v in x.items() if not (c * v).is_zero()}


def validate(ctx, elt):
    for (deg, kind, idx), coeff in elt.items():
        if kind == ALG:
            if ctx.gcoset[idx] != ctx.degree_coset(deg):
                raise ToroidalMemberError(
                    f"loop term at degree {deg} with basis coset "
                    f"{ctx.gcoset[idx]} is not equivariant")
        else:
            if not ctx.in_lambda(deg):
                raise ToroidalMemberError(
                    f"{kind!r} payload at degree {deg} outside the sublattice")
            if not 0 <= idx < ctx.nvars:
                raise ToroidalMemberError(f"payload index {idx} out of range")
    return True


def reduce_kahler(ctx, elt):
    """Canonical form of the K-part modulo exact differentials.

    At each nonzero degree the single relation sum_p c_p k_p = 0 (c_p the
    unscaled exponents) eliminates the smallest-index k with c != 0.
    Idempotent; degree-zero terms and non-K terms pass through.
    """
    out = {}
    kparts = {}
    for key, coeff in elt.items():
        deg, kind, idx = key
        if kind != K:
            add_into(out, key, coeff)
            continue
        kparts.setdefault(deg, {})
        kparts[deg][idx] = kparts[deg].get(idx, ZERO) + coeff
    for deg, comp in kparts.items():
        c = ctx.unscaled_exponents(deg)
        pivot = next((p for p in range(ctx.nvars) if c[p] != 0), None)
        if pivot is not None and comp.get(pivot, ZERO) and not comp[pivot].is_zero():
            f = comp[pivot] / Cyc.rational(c[pivot])
            for p in range(ctx.nvars):
                if c[p]:
                    comp[p] = comp.get(p, ZERO) - f * Cyc.rational(c[p])
        for idx, coeff in comp.items():
            add_into(out, (deg, K, idx), coeff)
    return out


def differential(ctx, deg, coeff=ONE):
    """d(t^deg) = sum_p c_p t^deg k_p with unscaled exponents c."""
    out = {}
    for p, c in enumerate(ctx.unscaled_exponents(deg)):
        if c:
            add_into(out, (deg, K, p), coeff * Cyc.rational(c))
    return out


def divergence(ctx, elt):
    """Tr of the Jacobian of the derivation part, as {degree: scalar}."""
    out = {}
    for (deg, kind, idx), coeff in elt.items():
        if kind != D:
            continue
        c = ctx.unscaled_exponents(deg)[idx]
        if c:
            s = out.get(deg, ZERO) + coeff * Cyc.rational(c)
            if s.is_zero():
                out.pop(deg, None)
            else:
                out[deg] = s
    return out


def cocycle_tau(ctx, v, w):
    """mu tau_1 + nu tau_2 on pure derivation elements, reduced.

    For monomial fields f1 d_a, f2 d_b with unscaled exponent vectors u, w:
    tau_1 = u_b w_a sum_p w_p t^(u+w) k_p, tau_2 = u_a w_b sum_p w_p ....
    """
    for elt in (v, w):
        for (_, kind, _idx) in elt:
            if kind != D:
                raise ToroidalMemberError("cocycle arguments must be derivations")
    out = {}
    for (dv, _, a), cv in v.items():
        u = ctx.unscaled_exponents(dv)
        for (dw, _, b), cw in w.items():
            ww = ctx.unscaled_exponents(dw)
            scale = cv * cw
            dsum = ctx.deg_add(dv, dw)
            weight1 = ctx.mu * u[b] * ww[a]
            weight2 = ctx.nu * u[a] * ww[b]
            weight = weight1 + weight2
            if weight:
                for p in range(ctx.nvars):
                    if ww[p]:
                        add_into(out, (dsum, K, p),
                                 scale * Cyc.rational(weight * ww[p]))
    return reduce_kahler(ctx, out)


def toroidal_bracket(ctx, x, y, check=True):
    """Full bracket on loop + centre + derivations, K-part canonicalized."""
    if check:
        validate(ctx, x)
        validate(ctx, y)
    out = {}
    for (d1, k1, i1), c1 in x.items():
        u1 = ctx.unscaled_exponents(d1)
        for (d2, k2, i2), c2 in y.items():
            c = c1 * c2
            dsum = ctx.deg_add(d1, d2)
            if k1 == ALG and k2 == ALG:
                for idx, s in ctx.gb_bracket(i1, i2):
                    add_into(out, (dsum, ALG, idx), c * s)
                pairing = ctx.gb_pair(i1, i2)
                if not pairing.is_zero():
                    # (x|y) f2 d(f1)
                    for p, cp in enumerate(u1):
                        if cp:
                            add_into(out, (dsum, K, p),
                                     c * pairing * Cyc.rational(cp))
            elif k1 == D and k2 == ALG:
                u2 = ctx.unscaled_exponents(d2)
                if u2[i1]:
                    add_into(out, (dsum, ALG, i2), c * Cyc.rational(u2[i1]))
            elif k1 == ALG and k2 == D:
                if u1[i2]:
                    add_into(out, (dsum, ALG, i1), -c * Cyc.rational(u1[i2]))
            elif k1 == D and k2 == K:
                u2 = ctx.unscaled_exponents(d2)
                if u2[i1]:
                    add_into(out, (dsum, K, i2), c * Cyc.rational(u2[i1]))
                if i1 == i2:
                    for p, cp in enumerate(u1):
                        if cp:
                            add_into(out, (dsum, K, p), c * Cyc.rational(cp))
            elif k1 == K and k2 == D:
                if u1[i2]:
                    add_into(out, (dsum, K, i1), -c * Cyc.rational(u1[i2]))
                if i1 == i2:
                    u2 = ctx.unscaled_exponents(d2)
                    for p, cp in enumerate(u2):
                        if cp:
                            add_into(out, (dsum, K, p), -c * Cyc.rational(cp))
            elif k1 == D and k2 == D:
                u2 = ctx.unscaled_exponents(d2)
                if u2[i1]:
                    add_into(out, (dsum, D, i2), c * Cyc.rational(u2[i1]))
                if u1[i2]:
                    add_into(out, (dsum, D, i1), -c * Cyc.rational(u1[i2]))
                # cocycle
                weight = ctx.mu * u1[i2] * u2[i1] + ctx.nu * u1[i1] * u2[i2]
                if weight:
                    for p, cp in enumerate(u2):
                        if cp:
                            add_into(out, (dsum, K, p),
                                     c * Cyc.rational(weight * cp))
            # K x K and K x ALG / ALG x K vanish
    return reduce_kahler(ctx, out)


def loop_part(elt):
    return {k: v for k, v in elt.items() if k[1] == ALG}


# ---------------------------------------------------------------------------
# divergence-zero spanning elements
# ---------------------------------------------------------------------------

def eala_dd(ctx, s, a, b, j_scaled):
    """Moment of the field with modes s_b t0^j t^s d_a - s_a t0^j t^s d_b."""
    if not (1 <= a <= ctx.nvars - 1 and 1 <= b <= ctx.nvars - 1):
        raise ToroidalMemberError(f"derivation indices {a},{b} out of range")
    deg = (j_scaled, tuple(s))
    if not ctx.in_lambda(deg):
        raise ToroidalMemberError("degree outside the sublattice")
    out = {}
    add_into(out, (deg, D, a), Cyc.rational(s[b - 1]))
    add_into(out, (deg, D, b), Cyc.rational(-s[a - 1]))
    return out


def eala_d0tilde(ctx, deg):
    """Mode of the corrected zero-variable field at the given degree.

    This is the z-coefficient of the field itself: -(t0^j t^s d_0) +
    (mu+nu)(j + 1/2) t0^j t^s k_0, with j the unscaled t0 exponent.
    """
    j = ctx.unscaled_exponents(deg)[0]
    out = {}
    add_into(out, (deg, D, 0), Cyc.rational(-1))
    add_into(out, (deg, K, 0),
             Cyc.rational((ctx.mu + ctx.nu) * (j + Fraction(1, 2))))
    return out


def eala_dhat(ctx, s, a, j_scaled, level_c):
    """Moment of the divergence-zero field mixing d_a with the corrected d_0.

    j t0^j t^s d_a + s_a (corrected d0 mode) + s_a/(2cN) (N-1+mu c) t0^j t^s k_0.
    """
    if not 1 <= a <= ctx.nvars - 1:
        raise ToroidalMemberError(f"derivation index {a} out of range")
    deg = (j_scaled, tuple(s))
    if not ctx.in_lambda(deg):
        raise ToroidalMemberError("degree outside the sublattice")
    j = ctx.unscaled_exponents(deg)[0]
    n_small = ctx.nvars - 1
    sa = Fraction(s[a - 1])
    out = {}
    add_into(out, (deg, D, a), Cyc.rational(j))
    out = elt_add(out, elt_scale(eala_d0tilde(ctx, deg), Cyc.rational(sa)))
    if sa:
        cc = Fraction(level_c)
        coeff = sa / (2 * cc * n_small) * (n_small - 1 + ctx.mu * cc)
        add_into(out, (deg, K, 0), Cyc.rational(coeff))
    return out


def eala_basis(ctx, s, kind, j_scaled=0, level_c=1):
    """Spanning element of the divergence-zero subalgebra at degree (j, s)."""
    tag, *indices = kind
    if tag == "dd":
        return eala_dd(ctx, s, indices[0], indices[1], j_scaled)
    if tag == "dhat":
        return eala_dhat(ctx, s, indices[0], j_scaled, level_c)
    raise ToroidalMemberError(f"unknown spanning kind {kind!r}")
