import random
from fractions import Fraction

import pytest

from wcoset.errors import AsymmetricPairing, NonEnumerable, UnpairedFermionHalf
from wcoset.fock import (Species, boson_pair, enumerate_basis, fermion_pair,
                         graded_dimension, heis, normal_form, register_system,
                         state_str)


def bc_heis2(p11=Fraction(3), p12=Fraction(1), p22=Fraction(-2)):
    b, c = fermion_pair("b", "c")
    return register_system(
        [b, c, heis("x1"), heis("x2")],
        [[p11, p12], [p12, p22]])


def test_register_gl11_like():
    sys = bc_heis2()
    assert sys.species[0].name == "b"
    assert sys.pairing_of(2, 3) == 1


def test_register_lattice():
    sys = register_system([heis("x"), heis("y")],
                          [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]],
                          lattice_indices=(0, 1),
                          lattice_gram=[[1, 0], [0, -1]])
    mu = sys.lattice_momentum((2, 2))
    assert mu.values == (Fraction(2), Fraction(-2))
    assert sys.momentum_parity(mu) == 0
    assert sys.momentum_parity(sys.lattice_momentum((1, 0))) == 1


def test_unpaired_half():
    b = Species("b", "odd", "fermion-pair-half", 1, "c")
    with pytest.raises(UnpairedFermionHalf):
        register_system([b, heis("x")], [[Fraction(1)]])


def test_asymmetric_pairing():
    with pytest.raises(AsymmetricPairing):
        register_system([heis("x"), heis("y")],
                        [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(1)]])


def test_normal_form_swap():
    sys = bc_heis2()
    mu = sys.zero_momentum()
    # c(-1) b(-1) -> -b(-1) c(-1)
    st = normal_form(sys, mu, [(1, 1), (0, 1)])
    assert st.modes == ((0, 1), (1, 1))
    assert st.sign == -1
    # fermionic square is zero
    assert normal_form(sys, mu, [(0, 1), (0, 1)]) is None
    # bosons commute: x1(-2) x1(-1) stays with sign +1
    st = normal_form(sys, mu, [(2, 1), (2, 2)])
    assert st.modes == ((2, 2), (2, 1))
    assert st.sign == 1


def test_normal_form_permutation_consistency():
    sys = bc_heis2()
    mu = sys.zero_momentum()
    modes = [(0, 2), (1, 3), (1, 1), (2, 1), (3, 2)]
    rng = random.Random(3)
    ref = None
    for _ in range(20):
        perm = modes[:]
        sign = 1
        # track the parity of the permutation restricted to odd modes
        for _ in range(10):
            i = rng.randrange(len(perm) - 1)
            a, b = perm[i], perm[i + 1]
            if sys.species[a[0]].odd and sys.species[b[0]].odd:
                sign = -sign
            perm[i], perm[i + 1] = b, a
        st = normal_form(sys, mu, perm, sign)
        if ref is None:
            ref = st
        assert st == ref


def test_enumerate_bc_degree2():
    sys = register_system(list(fermion_pair("b", "c")), [])
    mu = sys.zero_momentum()
    basis = enumerate_basis(sys, mu, 2)
    names = {state_str(sys, s) for s in basis}
    assert names == {"b(-2)|mu=()>", "b(-2)c(-1)|mu=()>", "b(-1)c(-2)|mu=()>",
                     "b(-1)c(-2)c(-1)|mu=()>", "c(-3)|mu=()>", "c(-3)c(-1)|mu=()>"}
    assert len(basis) == 6


def test_rank2_heisenberg_degree2():
    sys = register_system([heis("a"), heis("b")],
                          [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(2)]])
    assert graded_dimension(sys, sys.zero_momentum(), range(7)) == [1, 2, 5, 10, 20, 36, 65]


def test_rank1_partition_numbers():
    sys = register_system([heis("a")], [[Fraction(2)]])
    assert graded_dimension(sys, sys.zero_momentum(), range(7)) == [1, 1, 2, 3, 5, 7, 11]


def test_bc_heis2_character():
    sys = bc_heis2()
    assert graded_dimension(sys, sys.zero_momentum(), range(4)) == [2, 8, 24, 64]


def test_degree0_vacuum_only():
    sys = register_system([heis("a"), heis("b")],
                          [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(2)]])
    basis = enumerate_basis(sys, sys.zero_momentum(), 0)
    assert len(basis) == 1 and basis[0].modes == ()


def test_weight0_boson_not_enumerable():
    beta, gamma = boson_pair("beta", "gamma")
    sys = register_system([beta, gamma], [])
    with pytest.raises(NonEnumerable):
        enumerate_basis(sys, sys.zero_momentum(), 0)


def test_no_repeated_fermionic_modes():
    sys = bc_heis2()
    for d in range(6):
        for st in enumerate_basis(sys, sys.zero_momentum(), d):
            ferm = [m for m in st.modes if sys.species[m[0]].odd]
            assert len(ferm) == len(set(ferm))
            assert sum(dd - 1 + sys.species[s].engine_weight for s, dd in st.modes) == d


def test_deterministic_order():
    sys = bc_heis2()
    a = enumerate_basis(sys, sys.zero_momentum(), 3)
    b = enumerate_basis(sys, sys.zero_momentum(), 3)
    assert a == b
    assert a == sorted(a, key=lambda s: s.modes)
