import random

import pytest

from squarelike.consistency import local_solve, satisfiable_szmielew, weighted_profiles
from squarelike.core import OMEGA, PrimeComponent, SzmielewDescriptor, atom
from squarelike.evaluator import delta_value, eval_atom
from squarelike.parser import parse_sentence

from support import ExhaustiveOracle, atoms_grid, random_atom


def C(text):
    s = parse_sentence(text)
    return getattr(s, "children", (s,))


def test_contradictory_pairs():
    assert satisfiable_szmielew(C("Phi(2,0)=1 & Phi(2,0)>1")) is None
    assert satisfiable_szmielew(C("Theta(2,0)=1 & Theta(2,1)=2")) is None
    assert satisfiable_szmielew(C("Delta(2,0)=2 & Delta(3,0)=3")) is None
    assert satisfiable_szmielew(C("Delta(2,0)=4 & Theta(3,0)>0")) is None


def test_least_witnesses():
    assert satisfiable_szmielew(()) == SzmielewDescriptor()
    assert satisfiable_szmielew(C("Theta(2,0)=1")) == SzmielewDescriptor({2: PrimeComponent({0: 1})})
    assert satisfiable_szmielew(C("Delta(2,0)=6")) == SzmielewDescriptor(
        {2: PrimeComponent({0: 1}), 3: PrimeComponent({0: 1})}
    )
    assert satisfiable_szmielew(C("Delta(2,1)=6")) == SzmielewDescriptor(
        {2: PrimeComponent({1: 1}), 3: PrimeComponent({0: 1})}
    )


def test_delta_gt_is_met_with_a_torsion_free_summand():
    W = satisfiable_szmielew(C("Delta(3,2)>5 & Phi(2,0)=0"))
    assert W.nu == 1 and delta_value(W, 3, 2) is OMEGA


def test_lower_levels_are_free_under_an_exact_order():
    # 2 Z(2)^omega = 0, so Delta(2,1)=1 tolerates any amount at level 0
    W = satisfiable_szmielew(C("Delta(2,1)=1 & Phi(2,0)>3"))
    assert W.component(2).kappa_at(0) is OMEGA


def test_local_solve_prefers_small_invariants():
    # values range over {0..K, omega} with K the largest bound, highest level first
    c = local_solve(2, (atom("Gamma", 2, 0, ">", 1),))
    assert c == PrimeComponent({0: OMEGA})
    c = local_solve(2, (atom("Gamma", 2, 0, ">", 1), atom("Phi", 2, 2, "=", 3)))
    assert c == PrimeComponent({2: 3})
    assert local_solve(2, (atom("Theta", 2, 0, "=", 0), atom("Phi", 2, 1, ">", 0))) is None


def test_weighted_profiles():
    got = sorted(sorted(d.items()) for d in weighted_profiles(4, [(0, 1), (1, 2)]))
    assert got == [[(0, 0 + 2), (1, 1)], [(0, 4)], [(1, 2)]]
    assert list(weighted_profiles(0, [])) == [{}]
    assert list(weighted_profiles(3, [])) == []


def test_witnesses_satisfy_random_conjunctions():
    rng = random.Random(7)
    for _ in range(2000):
        c = [random_atom(rng, max_k=4) for _ in range(rng.randint(1, 4))]
        W = satisfiable_szmielew(c)
        if W is not None:
            assert all(eval_atom(a, W) for a in c), (c, W)


@pytest.fixture(scope="module")
def grid():
    # every 2-component with levels <= 2, values {0,1,2,omega}, tails {0,1}
    return ExhaustiveOracle(atoms_grid((2,), 2, 4), primes=(2,), discriminating_only=False)


def test_bounded_completeness(grid):
    rng = random.Random(11)
    checked = 0
    for _ in range(20000):
        c = rng.sample(grid.atoms, rng.randint(1, 4))
        if grid.satisfiable(c):
            checked += 1
            assert satisfiable_szmielew(c) is not None, c
        elif satisfiable_szmielew(c) is None:
            assert not grid.satisfiable(c)
    assert checked > 1000


def test_grid_examples_really_satisfy(grid):
    rng = random.Random(5)
    for _ in range(2000):
        c = rng.sample(grid.atoms, rng.randint(1, 3))
        ex = grid.example(c)
        if ex is not None:
            A = SzmielewDescriptor(*ex)
            assert all(eval_atom(a, A) for a in c)


def test_monotone_weakening():
    rng = random.Random(3)
    for _ in range(1000):
        c = [random_atom(rng, primes=(2, 3), max_level=2) for _ in range(rng.randint(2, 4))]
        sat = satisfiable_szmielew(c) is not None
        for i in range(len(c)):
            weaker = c[:i] + c[i + 1 :]
            if sat:
                assert satisfiable_szmielew(weaker) is not None
