import random

import pytest

from adjanrabin.freebasis import (
    check_nielsen_conditions,
    evaluate_expression,
    is_free_basis,
    nielsen_reduce,
    order_key,
    replay_nielsen,
)
from adjanrabin.words import Word, concat, invert, parse_word

from conftest import random_word


def ws(*texts, alphabet="abcd"):
    return [parse_word(t, alphabet) for t in texts]


# -- Stallings folding: an independent rank oracle used only in tests ---------


def folded_rank(words):
    """Rank of the subgroup generated by ``words`` via Stallings folding (E - V + 1)."""
    edges = set()  # (u, label, v) for positive letters
    nxt = 1
    for w in words:
        if not w:
            continue
        cur = 0
        for k, (g, s) in enumerate(w.letters):
            end = 0 if k == len(w) - 1 else nxt
            if end:
                nxt += 1
            edges.add((cur, g, end) if s > 0 else (end, g, cur))
            cur = end
    changed = True
    while changed:
        changed = False
        seen = {}
        for u, g, v in sorted(edges):
            for key, other in (((u, g, 1), v), ((v, g, -1), u)):
                if key in seen and seen[key] != other:
                    a, b = sorted((seen[key], other))
                    edges = {(a if x == b else x, h, a if y == b else y) for x, h, y in edges}
                    changed = True
                    break
                seen[key] = other
            if changed:
                break
    vertices = {0} | {x for x, _, _ in edges} | {y for _, _, y in edges}
    return len(edges) - len(vertices) + 1


def test_folding_oracle_sanity():
    assert folded_rank(ws("a", "b")) == 2
    assert folded_rank(ws("b", "b^2")) == 1
    assert folded_rank(ws("a b", "b^-1 c", "c^-1 a^-1")) == 2


@pytest.mark.parametrize(
    "texts, basis, rank",
    [
        (("b", "b^2"), False, 1),
        (("a", "b"), True, 2),
        (("a b", "b a"), True, 2),
        (("",), False, 0),
        (("a", "a^-1"), False, 1),
        (("a b", "b^-1 c", "c^-1 a^-1"), False, 2),
        (("a^2", "a^3"), False, 1),
        (("a b a^-1", "a b^2 a^-1"), False, 1),
        (("a b", "a c", "a d"), True, 3),
    ],
)
def test_examples(texts, basis, rank):
    r = nielsen_reduce(ws(*texts))
    assert (r.is_basis, r.rank) == (basis, rank)
    assert is_free_basis(ws(*texts)) == basis


def test_standard_basis_has_empty_log():
    r = nielsen_reduce(ws("a", "b"))
    assert r.reduction_log == ()


def test_n1_only_set_needs_order_reduction():
    # N1 holds but the product of all three is trivial
    S = ws("a b", "b^-1 c", "c^-1 a^-1")
    assert concat(concat(S[0], S[1]), S[2]) == Word()
    assert not check_nielsen_conditions(S)
    assert not is_free_basis(S)


def test_order_key_inversion_invariant():
    for t in ["a b c", "a^-1 b", "a b a^-1", "c d^2"]:
        w = parse_word(t, "abcd")
        assert order_key(w) == order_key(invert(w))


def _random_basis(rng, moves):
    S = ws("a", "b", "c")
    for _ in range(moves):
        i, j = rng.sample(range(3), 2)
        uj = S[j] if rng.random() < 0.5 else invert(S[j])
        S[i] = concat(uj, S[i]) if rng.random() < 0.5 else concat(S[i], uj)
        if rng.random() < 0.2:
            S[i] = invert(S[i])
    return S


def test_random_bases_recognised():
    rng = random.Random(3)
    for _ in range(200):
        S = _random_basis(rng, rng.randint(0, 12))
        assert is_free_basis(S)


def test_proper_powers_rejected():
    rng = random.Random(4)
    for _ in range(100):
        u = random_word(rng, "ab", 6)
        if not u:
            continue
        v = random_word(rng, "abc", 5)
        k = rng.randint(2, 4)
        S = [v, u, u**k] if v else [u, u**k]
        rng.shuffle(S)
        assert not is_free_basis(S)


def test_agrees_with_folding_oracle():
    rng = random.Random(5)
    for _ in range(300):
        S = [random_word(rng, "abc", 5) for _ in range(rng.randint(1, 4))]
        r = nielsen_reduce(S)
        assert r.rank == folded_rank(S)
        assert r.is_basis == (all(S) and folded_rank(S) == len(S))


def test_log_replay_and_expressions():
    rng = random.Random(6)
    for _ in range(150):
        S = [random_word(rng, "abc", 6) for _ in range(rng.randint(1, 4))]
        r = nielsen_reduce(S)
        assert replay_nielsen(S, r.reduction_log) == r.reduced_set
        assert check_nielsen_conditions(r.reduced_set)
        for original, expr in zip(S, r.expressions):
            assert evaluate_expression(expr, r.reduced_set) == original
