import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from cmreg.basis import Ideal, colon_saturate_maximal
from cmreg.degree import (
    NotGCMError,
    UnsupportedError,
    as_module,
    cm_deviation,
    graded_length,
    hdeg,
    hdeg_gcm,
    module_dimension,
    multiplicity,
)
from cmreg.poly import Polynomial, PolynomialRing
from cmreg.resolution import GradedModulePresentation, depth_from_betti, free_resolution

R = PolynomialRing(names=("x", "y"))
R3 = PolynomialRing(names=("x", "y", "z"))


@pytest.mark.parametrize("r", range(1, 8))
def test_family_hdeg(r):
    A = Ideal(R, ["x^2", f"x*y^{r}"])
    rep = hdeg(A)
    assert (rep.dim, rep.e, rep.hdeg) == (1, 1, r + 1)
    assert rep.gcm and rep.local_lengths == {0: r}
    assert hdeg_gcm(A) == r + 1
    assert cm_deviation(A) == r


def test_cohen_macaulay_examples():
    assert hdeg(Ideal(R3, [])).hdeg == 1
    assert hdeg(Ideal(R3, ["x^2*y + z^3"])).hdeg == 3
    assert hdeg(Ideal(R3, ["x^2", "y^2", "z^2"])).hdeg == 8
    assert hdeg(Ideal(R3, ["x*y", "y*z", "x*z"])).hdeg == 3


def test_line_and_plane_is_not_gcm():
    A = Ideal(R3, ["x*y", "x*z"])
    rep = hdeg(A)
    assert (rep.dim, rep.e, rep.hdeg) == (2, 1, 2)
    assert not rep.gcm and rep.local_lengths[1] == math.inf
    with pytest.raises(NotGCMError, match="not gCM"):
        hdeg_gcm(A)


def test_dimension_multiplicity_length():
    A = Ideal(R3, ["x^2", "y^3", "z"])
    assert module_dimension(A) == 0
    assert multiplicity(A) == 6 == graded_length(A)
    assert graded_length(Ideal(R3, ["x"])) == math.inf
    zero = GradedModulePresentation.from_matrix(R3, (0,), [[R3.one()]])
    assert module_dimension(zero) == -1 and graded_length(zero) == 0
    with pytest.raises(ValueError):
        multiplicity(zero)
    assert hdeg(zero).hdeg == 0


def test_non_homogeneous_input_is_unsupported():
    with pytest.raises(UnsupportedError, match="supply D"):
        hdeg(Ideal(R, ["x^2 - y^5", "x*y^2"]))


def test_free_module_of_rank_two():
    M = GradedModulePresentation.free(R, (0, 1))
    assert hdeg(M).hdeg == 2


# --- properties --------------------------------------------------------------------------

exp3 = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)).filter(lambda e: sum(e) > 0)


def binomial3(t):
    a, b, c = t
    if sum(a) != sum(b) or a == b:
        return Polynomial(R3, {a: 1})
    return Polynomial(R3, {a: 1, b: -c})


graded_ideals = st.one_of(
    st.lists(exp3, min_size=1, max_size=4).map(lambda es: Ideal(R3, [Polynomial(R3, {e: 1}) for e in es])),
    st.lists(st.tuples(exp3, exp3, st.integers(1, 5)).map(binomial3), min_size=1, max_size=3).map(
        lambda gs: Ideal(R3, gs)
    ),
)


@settings(max_examples=25)
@given(graded_ideals)
def test_hdeg_dominates_multiplicity(J):
    rep = hdeg(J)
    assert rep.hdeg >= rep.e
    if rep.gcm and rep.dim >= 0:
        assert hdeg_gcm(J) == rep.hdeg


@settings(max_examples=25)
@given(graded_ideals)
def test_cohen_macaulay_means_hdeg_is_e(J):
    rep = hdeg(J)
    depth = depth_from_betti(free_resolution(as_module(J)))
    assert (rep.hdeg == rep.e) == (depth == rep.dim)


@settings(max_examples=25)
@given(graded_ideals)
def test_hdeg_splits_off_finite_length_part(J):
    assume(module_dimension(J) >= 1)
    sat, length = colon_saturate_maximal(J)
    assert hdeg(J).hdeg == hdeg(sat).hdeg + length


# Deg(M) >= Deg(M/hM) only for generic h; a single random form may be special,
# so the spot-check asks that one of three independent forms behaves generically.
@settings(max_examples=20)
@given(graded_ideals, st.randoms(use_true_random=False))
def test_generic_hyperplane_section_does_not_raise_hdeg(J, rnd):
    assume(module_dimension(J) >= 1)
    sat, length = colon_saturate_maximal(J)
    assume(length == 0)
    top = hdeg(J).hdeg
    cuts = []
    for _ in range(3):
        h = Polynomial(R3, {(1, 0, 0): rnd.randint(1, 32002), (0, 1, 0): rnd.randint(1, 32002), (0, 0, 1): 1})
        cuts.append(hdeg(Ideal(R3, list(J.gens) + [h])).hdeg)
    assert min(cuts) <= top, (cuts, top)
