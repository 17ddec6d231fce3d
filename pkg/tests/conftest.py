import random
from itertools import permutations, product

import pytest

from adjanrabin.presentations import parse_presentation
from adjanrabin.words import Word, concat, invert, free_reduce

C2C3_TEXT = "gens: x1 x2\nrel: x1^2\nrel: x2^3\n"


@pytest.fixture
def c2c3():
    return parse_presentation(C2C3_TEXT)


def random_letters(rng, alphabet, length):
    return [(rng.choice(alphabet), rng.choice((1, -1))) for _ in range(length)]


def random_word(rng, alphabet, max_len):
    return free_reduce(random_letters(rng, alphabet, rng.randint(0, max_len)))


def random_trivial_c2c3(rng, max_len=12):
    """Products of conjugates of x1^2 and x2^3, kept at most ``max_len`` long."""
    rels = [Word.gen("x1", 2), Word.gen("x2", 3), Word.gen("x1", -2), Word.gen("x2", -3)]
    while True:
        w = Word.identity()
        for _ in range(rng.randint(1, 2)):
            v = random_word(rng, ["x1", "x2"], 3)
            w = concat(w, concat(concat(v, rng.choice(rels)), invert(v)))
        if 0 < len(w) <= max_len:
            return w


# -- brute-force permutation oracles (independent of adjanrabin.quotients) ----


def perm_mul(p, q):
    """Apply p then q."""
    return tuple(q[i] for i in p)


def perm_inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_eval(word, images, degree):
    x = tuple(range(degree))
    for g, s in word.letters:
        y = images[g] if s > 0 else perm_inv(images[g])
        x = perm_mul(x, y)
    return x


def sign(p):
    s = 1
    seen = set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def perm_group(name):
    name = name.upper()
    degree = {"S3": 3, "A4": 4, "S4": 4, "S5": 5}[name]
    elems = list(permutations(range(degree)))
    if name == "A4":
        elems = [p for p in elems if sign(p) == 1]
    return elems, degree


def brute_hom_count(P, name):
    elems, degree = perm_group(name)
    ident = tuple(range(degree))
    count = 0
    for imgs in product(elems, repeat=P.n):
        images = dict(zip(P.generators, imgs))
        if all(perm_eval(r, images, degree) == ident for r in P.relators):
            count += 1
    return count


def closure_order(gens):
    """Order of the permutation group generated by ``gens`` (BFS)."""
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


@pytest.fixture
def rng():
    return random.Random(20261019)


# -- acceptance summary: one PASS/FAIL line per criterion ----------------------

_CRITERIA: dict[int, str] = {}


def pytest_runtest_logreport(report):
    for key, value in report.user_properties:
        if key == "criterion" and (report.when == "call" or report.failed):
            number, title, seconds = value
            status = "PASS" if report.passed else "FAIL"
            _CRITERIA[number] = f"criterion {number:2d} {status}  {title}  ({seconds:.2f} s)"


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
