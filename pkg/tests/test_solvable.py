import random

import fixtures as fx
from multifilt import exactlin as el
from multifilt.filtration import Grading, grade, is_exhaustive, is_regular, is_separated, normalize
from multifilt.ordered_group import cone_close, quadrant, whole_lattice, zero_cone
from multifilt.solvable import WeightData, borel_weights, embed, graded_rep, rep_multifilt, weight_cone


def test_trivial_radical_gives_zero_cone():
    assert weight_cone(fx.WEIGHTS_TRIVIAL) == zero_cone(1)


def test_opposite_weights_give_whole_lattice():
    assert weight_cone(fx.WEIGHTS_PM) == whole_lattice(1)


def test_borel_cone_is_simple_root_cone():
    for n in (2, 3, 4):
        W, basis = borel_weights(n)
        C = weight_cone(W)
        assert C == quadrant(n - 1)
        simple = sorted(tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1))
        assert sorted(embed(basis, g) for g in C.generators) == simple


def test_trivial_radical_values_are_pieces():
    V = fx.rep_example()
    F = rep_multifilt(fx.WEIGHTS_TRIVIAL, V)
    for w, S in V.pieces:
        assert F.value(w) == S
    assert F.value((1,)).is_zero()


def test_whole_lattice_values_are_everything():
    F = rep_multifilt(fx.WEIGHTS_PM, fx.rep_example())
    assert all(F.value((m,)).is_full() for m in range(-3, 4))
    _, G = normalize(F)
    g = grade(G)
    assert isinstance(g, Grading) and g.pieces[0][1].is_full()


def test_random_representations_are_graded():
    rng = random.Random(8)
    for _ in range(20):
        r = rng.randint(1, 3)
        W = WeightData(r, tuple(tuple(rng.randint(-1, 1) for _ in range(r)) for _ in range(rng.randint(0, 3))))
        d = rng.randint(1, 4)
        G = fx.random_grading(rng, cone_close(r, generators=[]), d, span=2)
        V = graded_rep(d, G.pieces)
        F = rep_multifilt(W, V)
        _, N = normalize(F)
        assert is_exhaustive(N).verdict
        assert is_separated(N).verdict
        assert is_regular(N).verdict
        assert isinstance(grade(N), Grading)


def test_weights_outside_cone_span():
    W = WeightData(2, ((1, 0),))
    V = graded_rep(2, [((0, 0), [[1, 0]]), ((0, 1), [[0, 1]])])
    F = rep_multifilt(W, V)
    assert F.value((-3, 0)) == el.subspace_from_vectors(2, [[1, 0]])
    assert is_separated(F).verdict
