import random

import pytest
from hypothesis import strategies as st

from ogs.groups import Cyclic, Dihedral, Product, group_order

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    def _record(criterion, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}")
        return ok
    return _record


def _atoms(budget):
    opts = [st.builds(Cyclic, st.integers(1, budget))]
    if budget >= 6:
        opts.append(st.builds(Dihedral, st.integers(3, budget // 2)))
    return st.one_of(opts)


@st.composite
def group_exprs(draw, max_order=2000, depth=3):
    """Random group expression of order at most ``max_order``."""
    if depth == 0 or max_order < 4 or draw(st.booleans()):
        return draw(_atoms(max_order))
    left = draw(group_exprs(max_order=max_order // 2, depth=depth - 1))
    right = draw(group_exprs(max_order=max_order // group_order(left), depth=depth - 1))
    return Product(left, right)


def random_expr(rng: random.Random, max_order: int, depth: int = 3):
    """Plain-``random`` twin of :func:`group_exprs` for fixed-count corpora."""
    if depth == 0 or max_order < 4 or rng.random() < 0.4:
        if max_order >= 6 and rng.random() < 0.5:
            return Dihedral(rng.randint(3, max_order // 2))
        return Cyclic(rng.randint(1, max_order))
    left = random_expr(rng, max_order // 2, depth - 1)
    right = random_expr(rng, max_order // group_order(left), depth - 1)
    return Product(left, right)


def corpus(max_order=5000):
    """Fixed test corpus of group expressions."""
    out = [Cyclic(n) for n in range(1, 61)]
    out += [Dihedral(n) for n in range(3, 61)]
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        out.append(Product(Dihedral(p), Dihedral(p)))
    small = [Cyclic(2), Cyclic(4), Cyclic(6), Dihedral(3), Dihedral(4), Dihedral(6), Cyclic(9)]
    for a in small:
        for b in small:
            out.append(Product(a, b))
            for c in small[:3]:
                out.append(Product(Product(a, b), c))
    rng = random.Random(20261015)
    out += [random_expr(rng, max_order) for _ in range(60)]
    return [e for e in out if group_order(e) <= max_order]
