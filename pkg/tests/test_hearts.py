import pytest

from tilting_atlas import fundamental_domain, group, heart_key, parse_quiver
from tilting_atlas.hearts import FundHeart, HeartCalculus, HeartError

COUNTS = {("A1", 3): 2, ("A1", 4): 3, ("A2", 3): 5, ("A2", 4): 12, ("A3", 3): 14, ("D4", 3): 50}


def calc(name, N):
    return HeartCalculus(parse_quiver(name), N)


def test_standard_hearts():
    H = calc("A2", 3)
    h = H.standard_heart()
    G = group("A2")
    assert heart_key(h) == (((0, 1), 0), ((1, 0), 0))
    assert dict(zip(h.simples, h.decoration)) == {
        H.C.simple(0): G.generator(1),
        H.C.simple(1): G.generator(2),
    }
    assert len(calc("D4", 2).standard_heart().simples) == 4
    assert H.heart_json(h)["simples"][1] == {"root": [1, 0], "shift": 0, "braid": "b1"}


def test_tilt_examples():
    H = calc("A2", 3)
    G = H.G
    h = H.standard_heart()
    S1, S2 = H.C.simple(0), H.C.simple(1)
    r = H.simple_tilt(h, S1, "left")
    assert r.stays and r.braid_factor is None
    assert dict(zip(r.heart.simples, r.heart.decoration)) == {
        S1.shifted(-1): G.generator(1),
        H.C.obj((1, 1)): G.from_word("b1 b2 b1^-1"),
    }
    r = H.simple_tilt(h, S2, "left")
    assert r.stays
    assert dict(zip(r.heart.simples, r.heart.decoration)) == {S2.shifted(-1): G.generator(2), S1: G.generator(1)}


def test_a1_leaves_domain():
    H = calc("A1", 3)
    s = H.C.simple(0)
    bottom = H.simple_tilt(H.standard_heart(), s, "left").heart
    assert bottom.simples == (s.shifted(-1),)
    r = H.simple_tilt(bottom, s.shifted(-1), "left")
    assert not r.stays
    assert r.heart.simples == (s,)
    assert r.braid_factor == H.G.generator(1)


def test_bad_tilts():
    H = calc("A2", 3)
    with pytest.raises(HeartError):
        H.simple_tilt(H.standard_heart(), H.C.obj((1, 1)), "left")
    with pytest.raises((HeartError, ValueError)):
        H.simple_tilt(H.standard_heart(), H.C.simple(0), "up")


def test_keys():
    H = calc("A1", 3)
    dom = fundamental_domain("A1", 3)
    assert len({heart_key(h) for h in dom.hearts}) == 2
    h = H.standard_heart()
    swapped = FundHeart(tuple(reversed(h.simples)), tuple(reversed(h.decoration)))
    assert heart_key(swapped) == heart_key(h)


@pytest.mark.parametrize("name,N", sorted(COUNTS))
def test_domain(name, N):
    dom = fundamental_domain(name, N)
    assert len(dom) == COUNTS[(name, N)]
    assert dom.violations == []
    assert dom.tilt_inverse_violations() == []
    for h in dom.hearts:
        assert dom.calc.heart_violations(h) == []
        assert all(2 - N <= s.shift <= 0 for s in h.simples)


def test_n2_domain():
    # at N = 2 the fundamental domain is just the standard heart
    dom = fundamental_domain("A2", 2)
    assert len(dom) == 1 and dom.violations == []
