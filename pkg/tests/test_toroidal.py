import random
from fractions import Fraction

import pytest

from toroidalg.cycfield import Cyc
from toroidalg.liestruct import conj_automorphism, simultaneous_grading
from toroidalg.so_examples import baby_example
from toroidalg.toroidal import (
    ALG, D, K, ToroidalContext, ToroidalMemberError, cocycle_tau, differential,
    divergence, eala_basis, elt_add, elt_scale, reduce_kahler, term,
    toroidal_bracket, validate,
)

ONE = Cyc.rational(1)
MINUS = Cyc.rational(-1)


def make_ctx(n_extra_trivial=0, mu=0, nu=0):
    """Baby so_5 context: orders (2, 2) plus optional trivial directions."""
    ex = baby_example()
    autos = [ex["sigma0"], ex["sigma1"]]
    roots = [MINUS, MINUS]
    for _ in range(n_extra_trivial):
        autos.append(conj_automorphism(ex["lie"], [1] * 5))
        roots.append(ONE)
    g = simultaneous_grading(ex["lie"], autos, roots)
    return ToroidalContext(ex["lie"], g, mu=mu, nu=nu)


def deg(ctx, t0, *r):
    return (t0, tuple(r))


# --- Kahler reduction ---------------------------------------------------------

def test_exact_differentials_vanish():
    ctx = make_ctx()
    m1 = ctx.orders[1]
    d = differential(ctx, (0, (m1,)))
    assert reduce_kahler(ctx, d) == {}


def test_degree_zero_classes_survive():
    ctx = make_ctx()
    for p in range(2):
        e = term((0, (0,)), K, p)
        assert reduce_kahler(ctx, e) == e


def test_reduction_eliminates_smallest_index():
    ctx = make_ctx()
    m1 = ctx.orders[1]
    degree = (ctx.m0, (m1,))    # t0^1 t1^(m1): relation k0 + m1 k1 = 0
    e = elt_add(term(degree, K, 0), term(degree, K, 1, 2))
    red = reduce_kahler(ctx, e)
    assert (degree, K, 0) not in red
    expected = Cyc.rational(2 - m1)
    assert red.get((degree, K, 1), Cyc.rational(0)) == expected
    # same relation with a coefficient that survives the elimination
    e5 = elt_add(term(degree, K, 0), term(degree, K, 1, 5))
    red5 = reduce_kahler(ctx, e5)
    assert red5 == {(degree, K, 1): Cyc.rational(5 - m1)}
    # idempotent
    assert reduce_kahler(ctx, red) == red
    # adding any multiple of the relation does not change the normal form
    rel = differential(ctx, degree, Cyc.rational(Fraction(5, 3)))
    assert reduce_kahler(ctx, elt_add(e, rel)) == red


# --- cocycle goldens ----------------------------------------------------------

def test_tau_of_constant_field_vanishes():
    ctx = make_ctx(mu=1, nu=1)
    v = term((0, (0,)), D, 0)
    w = term((ctx.m0, (0,)), D, 1)
    assert cocycle_tau(ctx, v, w) == {}


def test_tau1_tau2_golden():
    # tau_1(t0 d0, t0^-1 d0) = tau_2(...) = k0, by the Jacobian recipe:
    # v^J has single entry d0(t0) = t0, w^J has d0(t0^-1) = -t0^-1, and
    # Tr(v^J d(w^J)) = t0 * d(-t0^-1) = t0 * t0^-1 k0 = k0.
    ctx1 = make_ctx(mu=1, nu=0)
    ctx2 = make_ctx(mu=0, nu=1)
    v = term((2, (0,)), D, 0)      # t0^1 (scaled by m0 = 2)
    w = term((-2, (0,)), D, 0)
    expected = term((0, (0,)), K, 0)
    assert cocycle_tau(ctx1, v, w) == expected
    assert cocycle_tau(ctx2, v, w) == expected


def test_tau_rejects_non_derivations():
    ctx = make_ctx(mu=1)
    with pytest.raises(ToroidalMemberError):
        cocycle_tau(ctx, term((0, (0,)), K, 0), term((0, (0,)), D, 0))


# --- bracket clauses ----------------------------------------------------------

def test_loop_loop_degree_zero_has_no_center():
    ctx = make_ctx()
    z = [i for i, c in enumerate(ctx.gcoset) if c == (0, 0)]
    x = term((0, (0,)), ALG, z[0])
    y = term((0, (0,)), ALG, z[1])
    out = toroidal_bracket(ctx, x, y)
    assert all(kind == ALG for (_, kind, _i) in out)


def test_derivation_on_loop_clause():
    ctx = make_ctx()
    z = [i for i, c in enumerate(ctx.gcoset) if c == (0, 0)]
    m1 = ctx.orders[1]
    f1d = term((0, (m1,)), D, 1)            # t1^m1 d_1
    f2x = term((2, (0,)), ALG, z[0])        # t0^1 x, fixed part
    # d_1 sees no t1 exponent in f2, so this bracket must vanish
    assert toroidal_bracket(ctx, f1d, f2x) == {}
    f2y = term((0, (m1,)), ALG, z[0])       # t1^m1 y
    out2 = toroidal_bracket(ctx, f1d, f2y)
    assert out2 == {((0, (2 * m1,)), ALG, z[0]): Cyc.rational(m1)}


def test_witt_bracket_with_cocycle_golden():
    # [t0 d0, t0^-1 d0] = -2 d0 + tau; with mu=1, nu=0 the central term is k0
    ctx = make_ctx(mu=1, nu=0)
    v = term((2, (0,)), D, 0)
    w = term((-2, (0,)), D, 0)
    out = toroidal_bracket(ctx, v, w)
    assert out[((0, (0,)), D, 0)] == Cyc.rational(-2)
    assert out[((0, (0,)), K, 0)] == Cyc.rational(1)
    assert len(out) == 2


def test_central_within_loop_and_center():
    ctx = make_ctx()
    z = [i for i, c in enumerate(ctx.gcoset) if c == (0, 0)]
    kterm = term((0, (2,)), K, 1)
    x = term((0, (0,)), ALG, z[0])
    assert toroidal_bracket(ctx, kterm, x) == {}
    assert toroidal_bracket(ctx, kterm, term((0, (0,)), K, 0)) == {}


def test_membership_error_names_term():
    ctx = make_ctx()
    z = [i for i, c in enumerate(ctx.gcoset) if c == (0, 1)]
    bad = term((0, (0,)), ALG, z[0])
    with pytest.raises(ToroidalMemberError):
        validate(ctx, bad)


# --- divergence-zero elements -------------------------------------------------

def test_dd_antisymmetric_in_ab():
    ctx = make_ctx(n_extra_trivial=1)
    assert eala_basis(ctx, (2, 0), ("dd", 1, 1), 0) == {}


def test_dd_pattern_and_divergence():
    ctx = make_ctx(n_extra_trivial=1)            # orders (2, 2, 1)
    m1 = ctx.orders[1]
    e = eala_basis(ctx, (m1, 0), ("dd", 1, 2), 0)
    # s = (m1, 0): s_2 = 0 kills the d_1 term, leaving -s_1 t^s d_2
    assert e == {((0, (m1, 0)), D, 2): Cyc.rational(-m1)}
    assert divergence(ctx, e) == {}


def test_dhat_divergence_zero():
    ctx = make_ctx(mu=1)
    m1 = ctx.orders[1]
    for j in (-2, 0, 2):
        e = eala_basis(ctx, (m1,), ("dhat", 1), j, level_c=1)
        assert divergence(ctx, e) == {}


# --- properties: Jacobi, antisymmetry, closure ---------------------------------

def _random_term(ctx, rng, box=3):
    kind = rng.choice([ALG, ALG, K, D])
    if kind == ALG:
        idx = rng.randrange(len(ctx.gbasis))
        coset = ctx.gcoset[idx]
        t0 = rng.randint(-box, box) * ctx.m0 + coset[0]
        r = tuple(rng.randint(-box, box) * ctx.orders[a + 1] + coset[a + 1]
                  for a in range(ctx.nvars - 1))
    else:
        idx = rng.randrange(ctx.nvars)
        t0 = rng.randint(-box, box) * ctx.m0
        r = tuple(rng.randint(-box, box) * ctx.orders[a + 1]
                  for a in range(ctx.nvars - 1))
    coeff = Cyc.rational(rng.randint(1, 4))
    return term((t0, r), kind, idx, coeff)


@pytest.mark.parametrize("mu,nu", [(0, 0), (1, 0), (0, 1), (1, 1)])
@pytest.mark.parametrize("extra", [0, 1])
def test_jacobi_random_sweep(mu, nu, extra):
    ctx = make_ctx(n_extra_trivial=extra, mu=mu, nu=nu)
    rng = random.Random(90125 + mu * 2 + nu + extra * 7)
    count = 0
    for _ in range(55):
        x, y, z = (_random_term(ctx, rng) for _ in range(3))
        j1 = toroidal_bracket(ctx, toroidal_bracket(ctx, x, y), z, check=False)
        j2 = toroidal_bracket(ctx, toroidal_bracket(ctx, y, z), x, check=False)
        j3 = toroidal_bracket(ctx, toroidal_bracket(ctx, z, x), y, check=False)
        total = elt_add(elt_add(j1, j2), j3)
        assert total == {}, (x, y, z)
        count += 1
    assert count >= 55


def test_antisymmetry_and_bilinearity_random():
    ctx = make_ctx(mu=1, nu=1)
    rng = random.Random(4242)
    for _ in range(40):
        x, y = _random_term(ctx, rng), _random_term(ctx, rng)
        xy = toroidal_bracket(ctx, x, y)
        yx = toroidal_bracket(ctx, y, x)
        assert elt_add(xy, yx) == {}
        c = Cyc.rational(Fraction(rng.randint(1, 5), rng.randint(1, 3)))
        assert toroidal_bracket(ctx, elt_scale(x, c), y) == elt_scale(xy, c)


def test_twisted_closure():
    ctx = make_ctx(mu=1)
    rng = random.Random(1001)
    for _ in range(40):
        x, y = _random_term(ctx, rng), _random_term(ctx, rng)
        out = toroidal_bracket(ctx, x, y)
        validate(ctx, out)
