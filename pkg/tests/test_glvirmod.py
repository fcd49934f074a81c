from fractions import Fraction
from itertools import product as iproduct

import pytest

from toroidalg.cycfield import Cyc
from toroidalg.glvirmod import (
    GlVirAlgebra, SlVirAlgebra, TruncModule, TruncationOverflow,
    build_hw_module, eala_charges, glvir_bracket, toroidal_charges,
)

ONE = Cyc.rational(1)
ZERO = Cyc.rational(0)


def rat(x):
    return Cyc.rational(Fraction(x))


# --- formal brackets -----------------------------------------------------------

def test_virasoro_bracket_golden():
    out = glvir_bracket(("L", 2), ("L", -2), 1)
    assert out[("L", 0)] == rat(4)
    assert out[("C", "vir")] == rat(Fraction(1, 2))


def test_centrals_are_central():
    assert glvir_bracket(("L", 3), ("C", "vir"), 1) == {}
    assert glvir_bracket(("C", "heis"), ("E", 1, 1, 2), 1) == {}


def test_heisenberg_central_term_n2():
    # psi_1(E11) = E11 - I/2 has Tr psi_1^2 = 1/2; psi_2(E11)^2 = 1/4
    out = glvir_bracket(("E", 1, 1, 1), ("E", 1, 1, -1), 2)
    assert out == {("C", "sl"): rat(Fraction(1, 2)),
                   ("C", "heis"): rat(Fraction(1, 4))}


def test_l_e_bracket():
    out = glvir_bracket(("L", 2), ("E", 1, 2, -1), 2)
    assert out == {("E", 1, 2, 1): rat(1)}
    out = glvir_bracket(("L", 1), ("E", 1, 1, -1), 2)
    assert out[("E", 1, 1, 0)] == rat(1)
    assert out[("C", "vh")] == rat(-1)     # -(n^2+n) psi_2 = -2 * 1/2


def test_formal_antisymmetry_and_jacobi():
    gens = [("L", n) for n in range(-2, 3)] + \
           [("E", i, j, n) for i in (1, 2) for j in (1, 2) for n in range(-2, 3)]
    charges = {"sl": rat(3), "heis": rat(5), "vir": rat(7), "vh": rat(11)}

    def full(k1, k2):
        out = glvir_bracket(k1, k2, 2)
        gen_part = {k: v for k, v in out.items() if k[0] != "C"}
        scalar = ZERO
        for k, v in out.items():
            if k[0] == "C":
                scalar = scalar + v * charges[k[1]]
        return gen_part, scalar

    for a in gens:
        for b in gens:
            gp1, s1 = full(a, b)
            gp2, s2 = full(b, a)
            merged = dict(gp1)
            for k, v in gp2.items():
                t = merged.get(k, ZERO) + v
                if t.is_zero():
                    merged.pop(k, None)
                else:
                    merged[k] = t
            assert merged == {} and (s1 + s2).is_zero(), (a, b)


# --- truncated modules -----------------------------------------------------------

def charges_example():
    return toroidal_charges(1, 1, 0, 0, 10, 3)


def test_depth_zero_module():
    m = build_hw_module({"L0": rat(Fraction(3, 2)), "E0": rat(0)},
                        charges_example(), 0, nmat=1)
    assert m.basis() == [()]
    out = m.apply(("L", 0), {(): ONE})
    assert out == {(): rat(Fraction(3, 2))}


def test_depth_two_virasoro_sector():
    m = build_hw_module({"L0": rat(1), "E0": rat(0)}, charges_example(), 2,
                        nmat=1)
    pure_l = [mono for mono in m.basis()
              if all(g[0] == "L" for g in mono)]
    assert len(pure_l) == 4        # 1, L(-1), L(-2), L(-1)^2


def test_sl2_style_lowering_weight():
    hw = {"L0": rat(Fraction(5, 4)), "E0": rat(0)}
    m = build_hw_module(hw, charges_example(), 3, nmat=1)
    v = {(): ONE}
    down = m.apply(("L", -1), v)
    up = m.apply(("L", 1), down)
    # [L(1), L(-1)] = 2 L(0) on the highest weight line
    assert up == {(): rat(Fraction(5, 2))}


def test_truncation_overflow_is_loud():
    m = build_hw_module({"L0": rat(0), "E0": rat(0)}, charges_example(), 2,
                        nmat=1)
    with pytest.raises(TruncationOverflow):
        m.apply(("L", -3), {(): ONE})


@pytest.mark.parametrize("nmat", [1, 2])
def test_module_commutators_reproduce_bracket(nmat):
    charges = toroidal_charges(nmat, 1, 1, 0, 10, 3)
    hw = {"L0": rat(Fraction(1, 3)), "E0": rat(Fraction(2, 5))}
    depth = 3
    m = build_hw_module(hw, charges, depth, nmat=nmat)
    alg = m.alg
    gens = [("L", n) for n in range(-3, 4)]
    for i in range(1, nmat + 1):
        for j in range(1, nmat + 1):
            gens += [("E", i, j, n) for n in range(-3, 4)]
    probes = [(), (("L", -1),)]
    if nmat >= 1:
        probes.append((("E", 1, 1, -1),))
    for g1 in gens:
        for g2 in gens:
            for mono in probes:
                base = m.mono_depth(mono)
                if base + max(alg.energy(g1), 0) + max(alg.energy(g2), 0) > depth:
                    continue
                if base + alg.energy(g2) < 0 or base + alg.energy(g1) < 0:
                    pass
                v = {mono: ONE}
                lhs = m.apply(g1, m.apply(g2, v))
                rhs = m.apply(g2, m.apply(g1, v))
                for k, val in rhs.items():
                    t = lhs.get(k, ZERO) - val
                    if t.is_zero():
                        lhs.pop(k, None)
                    else:
                        lhs[k] = t
                terms, scalar = alg.bracket(g1, g2)
                expect = {}
                for b, cb in terms:
                    for k, val in m.apply(b, v).items():
                        t = expect.get(k, ZERO) + cb * val
                        if t.is_zero():
                            expect.pop(k, None)
                        else:
                            expect[k] = t
                if not scalar.is_zero():
                    expect[mono] = expect.get(mono, ZERO) + scalar
                    if expect[mono].is_zero():
                        expect.pop(mono)
                assert lhs == expect, (g1, g2, mono)


def test_slvir_variant_n1_is_pure_virasoro():
    charges = eala_charges(1, 1, 0, 10, 3)
    m = build_hw_module({"L0": rat(0)}, charges, 2, nmat=1, reduced=True)
    assert all(all(g[0] == "L" for g in mono) for mono in m.basis())
    assert isinstance(m.alg, SlVirAlgebra)


def test_slvir_n2_bracket_closure():
    charges = eala_charges(2, 1, 1, 10, 3)
    alg = SlVirAlgebra(2, charges, {"L0": rat(0)})
    gens = [("L", n) for n in range(-2, 3)] + \
           [("S", a, n) for a in range(3) for n in range(-2, 3)]
    for g1 in gens:
        for g2 in gens:
            terms, scalar = alg.bracket(g1, g2)
            back_terms, back_scalar = alg.bracket(g2, g1)
            merged = {}
            for k, v in terms + back_terms:
                t = merged.get(k, ZERO) + v
                if t.is_zero():
                    merged.pop(k, None)
                else:
                    merged[k] = t
            assert merged == {} and (scalar + back_scalar).is_zero()


# --- central characters -----------------------------------------------------------

def test_toroidal_charge_values():
    ch = toroidal_charges(1, 1, 0, 0, 10, 3)
    assert ch["sl"] == rat(1)
    assert ch["heis"] == rat(1)
    assert ch["vh"] == rat(Fraction(1, 2))
    assert ch["vir"] == rat(Fraction(-9, 2))      # -2 - 10/4
    ch2 = toroidal_charges(1, 1, 1, 0, 10, 3)
    assert ch2["vir"] == rat(Fraction(15, 2))     # 12 - 2 - 10/4


def test_eala_charge_values():
    ch = eala_charges(1, 1, 0, 10, 3)
    assert ch["sl"] == rat(1)
    assert ch["vir"] == rat(Fraction(-9, 2))      # the printed worked value
    ch2 = eala_charges(2, 1, Fraction(1, 2), 10, 3)
    assert ch2["vir"] == rat(6 + 9 - 4 - Fraction(5, 2))
