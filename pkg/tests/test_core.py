import random
from fractions import Fraction

import pytest

from grouphopf.core import GeneratorSymbol, GradedElement, koszul_sign, render_element
from grouphopf.rewriting import AlgebraPresentation, NonTerminating


def test_koszul_sign_values():
    assert koszul_sign([1], [1]) == -1
    assert koszul_sign([0], [1]) == 1
    assert koszul_sign([1, 1], [1]) == 1
    assert koszul_sign([3], [1]) == -1
    assert koszul_sign([2], [5]) == 1


def test_element_arithmetic_exact():
    a = GradedElement({(0,): Fraction(1, 3)})
    b = GradedElement({(0,): Fraction(2, 3), (1,): Fraction(1)})
    s = a + b
    assert s.coefficient((0,)) == 1
    assert s.coefficient((1,)) == 1
    assert (s - s).is_zero()
    assert not (a - a)
    assert a.scale(3).coefficient((0,)) == 1


def exterior_one_generator():
    p = AlgebraPresentation("ext1")
    p.add_generator(GeneratorSymbol("c", 1, sort="form"))
    p.add_rule(0, 0, GradedElement.zero())
    return p.freeze()


def test_odd_generator_squares_to_zero():
    p = exterior_one_generator()
    assert p.normal_form_word((0, 0)).is_zero()
    assert p.normal_form_word((0,)) == GradedElement.word((0,))
    rep = p.check_local_confluence()
    assert rep.ok and rep.overlaps_checked == 1


def ce_heis3():
    """Exterior algebra of the dual of the three dimensional nilpotent
    Lie algebra with delta acting as the cohomology differential."""
    p = AlgebraPresentation("ce-heis3")
    for n in ("c^x", "c^y", "c^z"):
        p.add_generator(GeneratorSymbol(n, 1, sort="form"))
    p.add_generator(GeneratorSymbol("d", 1, sort="delta"))
    for i in range(3):
        p.add_rule(i, i, GradedElement.zero())
        for j in range(i):
            p.add_rule(i, j, GradedElement.word((j, i), -1))
    p.add_rule(3, 3, GradedElement.zero())
    # d c^x = -c^x d, d c^y = -c^y d, d c^z = -c^z d - c^x c^y
    p.add_rule(3, 0, GradedElement.word((0, 3), -1))
    p.add_rule(3, 1, GradedElement.word((1, 3), -1))
    p.add_rule(3, 2, GradedElement({(2, 3): Fraction(-1), (0, 1): Fraction(-1)}))
    return p.freeze()


def test_ce_heis3_rewrite_and_confluence():
    p = ce_heis3()
    # quotes the anticommutator relation {d, c^z} = -c^x c^y
    got = p.normal_form_word((3, 2))
    assert got == GradedElement({(2, 3): Fraction(-1), (0, 1): Fraction(-1)})
    rep = p.check_local_confluence()
    assert rep.ok, [m.describe(p) for m in rep.mismatches]


def test_ce_corrupted_constants_fail_confluence():
    # structure constants [x,y] = z, [y,z] = y violate the Jacobi identity,
    # so the square-zero overlap d·d·c^z cannot resolve
    p = AlgebraPresentation("ce-bad")
    for n in ("c^x", "c^y", "c^z"):
        p.add_generator(GeneratorSymbol(n, 1, sort="form"))
    p.add_generator(GeneratorSymbol("d", 1, sort="delta"))
    for i in range(3):
        p.add_rule(i, i, GradedElement.zero())
        for j in range(i):
            p.add_rule(i, j, GradedElement.word((j, i), -1))
    p.add_rule(3, 3, GradedElement.zero())
    p.add_rule(3, 0, GradedElement.word((0, 3), -1))
    p.add_rule(3, 1, GradedElement({(1, 3): Fraction(-1), (1, 2): Fraction(-1)}))
    p.add_rule(3, 2, GradedElement({(2, 3): Fraction(-1), (0, 1): Fraction(-1)}))
    p.freeze()
    rep = p.check_local_confluence()
    assert not rep.ok
    assert any(m.word == (3, 3, 2) for m in rep.mismatches)


def test_normal_form_idempotent_linear_multiplicative():
    p = ce_heis3()
    rng = random.Random(7)
    for _ in range(200):
        a = p.random_element(rng, 4)
        b = p.random_element(rng, 4)
        nfa = p.normal_form(a)
        assert p.normal_form(nfa) == nfa
        assert p.normal_form(a + b) == p.normal_form(a) + p.normal_form(b)
        assert p.multiply(a, b) == p.multiply(nfa, p.normal_form(b))


def test_multiplication_associative_on_random_triples():
    p = ce_heis3()
    rng = random.Random(11)
    for _ in range(100):
        a, b, c = (p.random_element(rng, 3) for _ in range(3))
        assert p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c))


def test_degrees_weights_additive_and_preserved():
    p = ce_heis3()
    rng = random.Random(3)
    for _ in range(50):
        w1 = p.random_word(rng, 3)
        w2 = p.random_word(rng, 3)
        prod = p.normal_form_word(w1 + w2)
        d = p.degree(w1) + p.degree(w2)
        for w, _ in prod.items():
            assert p.degree(w) == d


def test_nonterminating_detection():
    p = AlgebraPresentation("loop")
    p.add_generator(GeneratorSymbol("a", 0))
    p.add_generator(GeneratorSymbol("b", 0))
    # a·b -> b·a and b·a -> a·b cycles forever
    p.add_rule(0, 1, GradedElement.word((1, 0)))
    p.add_rule(1, 0, GradedElement.word((0, 1)))
    p.freeze()
    p.max_steps_per_word = 10_000
    with pytest.raises(NonTerminating):
        p.normal_form_word((0, 1))


def test_rendering_stable():
    p = ce_heis3()
    e = GradedElement({(0, 1): Fraction(3, 2), (3,): Fraction(-1)})
    assert p.render(e) == "-d + 3/2·c^x·c^y"
    assert render_element(GradedElement(), p.names()) == "0"
